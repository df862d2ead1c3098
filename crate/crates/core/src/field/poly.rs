//! Univariate polynomials over a [`Field`] and their factorization
//! (square-free decomposition, distinct-degree, then Cantor–Zassenhaus).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Fe, Field};
use crate::error::{Error, Result};

const EDF_SEED: u64 = 0x5eed_b10c;

/// Coefficients lowest degree first; never has trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Fe::ONE] }
    }

    pub fn x() -> Poly {
        Poly {
            coeffs: vec![Fe::ZERO, Fe::ONE],
        }
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, f: &Field, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg();
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Fe::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, f: &Field, divisor: &Poly) -> Poly {
        self.divrem(f, divisor).1
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.leading()).expect("nonzero"))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, f: &Field, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = Poly::one().rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        acc
    }

    /// Ordering key: coefficients read as base-q digits, lowest degree in the lowest place.
    pub fn encoding(&self, f: &Field) -> u128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, c| acc * f.q() as u128 + c.0 as u128)
    }

    pub fn display(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let cs = f.fmt_elem(c);
                let cs = if f.d() > 1 && cs.contains('+') { format!("({cs})") } else { cs };
                match i {
                    0 => cs,
                    _ => {
                        let var = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                        if c == Fe::ONE {
                            var
                        } else {
                            format!("{cs}{var}")
                        }
                    }
                }
            })
            .collect();
        terms.join(" + ")
    }
}

pub fn gcd(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(f, &b);
        a = b;
        b = r;
    }
    a.monic(f)
}

/// Inverse of `a` modulo `m`, if coprime.
pub fn inverse_mod(f: &Field, a: &Poly, m: &Poly) -> Option<Poly> {
    let (mut r0, mut r1) = (m.clone(), a.rem(f, m));
    let (mut s0, mut s1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(f, &r1);
        let s = s0.sub(f, &q.mul(f, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let c = f.inv(r0.leading()).ok()?;
    Some(s0.scale(f, c).rem(f, m))
}

/// Rabin-style test: no factor of degree ≤ deg/2 and `x^(q^n) ≡ x`.
pub fn is_irreducible(f: &Field, poly: &Poly) -> bool {
    let n = match poly.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let m = poly.monic(f);
    let q = f.q() as u64;
    let x = Poly::x();
    let mut h = x.clone();
    for i in 1..=n {
        h = h.pow_mod(f, q, &m);
        if i <= n / 2 && !gcd(f, &m, &h.sub(f, &x)).is_one() {
            return false;
        }
    }
    h == x.rem(f, &m)
}

/// Monic irreducible of degree `d` over the prime field `f` with the least encoding.
pub fn least_irreducible(f: &Field, d: usize) -> Result<Poly> {
    if f.d() != 1 {
        return Err(Error::Input("least_irreducible works over a prime field".into()));
    }
    if d == 0 {
        return Err(Error::Input("degree must be positive".into()));
    }
    let p = f.p() as u128;
    let count = p.checked_pow(d as u32).ok_or(Error::FieldTooLarge { p: f.p(), d: d as u32 })?;
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut c = code;
        for _ in 0..d {
            coeffs.push(Fe((c % p) as u32));
            c /= p;
        }
        coeffs.push(Fe::ONE);
        let poly = Poly::from_coeffs(coeffs);
        if is_irreducible(f, &poly) {
            return Ok(poly);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Square-free decomposition: pairs `(g, m)` with `f = lc · Π g^m`, each g square-free.
pub fn squarefree_decomposition(f: &Field, poly: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let poly = poly.monic(f);
    if poly.deg() == 0 {
        return out;
    }
    let d = poly.derivative(f);
    let mut c = gcd(f, &poly, &d);
    let mut w = poly.divrem(f, &c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = gcd(f, &w, &c);
        let fac = w.divrem(f, &y).0;
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.divrem(f, &w).0;
        i += 1;
    }
    if !c.is_one() {
        // c is now a p-th power.
        let p = f.p() as usize;
        let root = Poly::from_coeffs(
            (0..=c.deg() / p)
                .map(|k| f.pth_root(c.coeff(k * p)))
                .collect(),
        );
        for (g, m) in squarefree_decomposition(f, &root) {
            out.push((g, m * f.p()));
        }
    }
    out
}

/// Splits a monic square-free polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(f: &Field, poly: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = poly.monic(f);
    let x = Poly::x();
    let mut h = x.clone();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(f, f.q() as u64, &rest);
        let g = gcd(f, &rest, &h.sub(f, &x));
        if !g.is_one() {
            rest = rest.divrem(f, &g).0;
            h = h.rem(f, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &Field, poly: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = poly.deg();
    if n == d {
        return vec![poly.clone()];
    }
    let q = f.q() as u64;
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| Fe(rng.gen_range(0..f.q()))).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if f.p() == 2 {
            // absolute trace to GF(2): Σ_{i < k d} a^(2^i), q = 2^k
            let mut t = a.rem(f, poly);
            let mut acc = t.clone();
            for _ in 1..(f.d() as usize * d) {
                t = t.mul(f, &t).rem(f, poly);
                acc = acc.add(f, &t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (Π_{i<d} a^(q^i))^((q-1)/2)
            let mut t = a.rem(f, poly);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(f, q, poly);
                norm = norm.mul(f, &t).rem(f, poly);
            }
            norm.pow_mod(f, (q - 1) / 2, poly).sub(f, &Poly::one())
        };
        let g = gcd(f, poly, &b);
        if g.deg() > 0 && g.deg() < n {
            let h = poly.divrem(f, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h.monic(f), d, rng));
            return out;
        }
    }
}

/// Factorization into monic irreducibles with multiplicities, sorted by (degree, encoding).
/// The leading coefficient is dropped. The zero polynomial has no factorization.
pub fn factor(f: &Field, poly: &Poly) -> Result<Vec<(Poly, u32)>> {
    if poly.is_zero() {
        return Err(Error::Input("cannot factor the zero polynomial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    for (sqf, m) in squarefree_decomposition(f, poly) {
        for (g, d) in distinct_degree(f, &sqf) {
            for irr in equal_degree(f, &g, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by_key(|(g, m)| (g.deg(), g.encoding(f), *m));
    Ok(out)
}
