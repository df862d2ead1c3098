//! Finite fields GF(p^d), polynomials over them, and dense linear algebra.
//!
//! Elements are stored as the integer `Σ c_i p^i` of their coefficient
//! vector in the polynomial basis `1, x, ..., x^(d-1)`; the prime subfield is
//! therefore encoded by `0..p`. Multiplication in proper extensions goes
//! through discrete log tables built at construction time.

mod linalg;
mod poly;

pub use linalg::Matrix;
pub use poly::{
    distinct_degree, equal_degree, factor, gcd, inverse_mod, is_irreducible, least_irreducible,
    squarefree_decomposition, Poly,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order we build tables for.
const MAX_ORDER: u64 = 1 << 20;

/// An element of a [`Field`]. Meaningless without its field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field GF(p^d) with a fixed defining polynomial.
#[derive(Clone)]
pub struct Field {
    p: u32,
    d: u32,
    q: u32,
    /// Monic defining polynomial over GF(p), lowest degree first. `[0, 1]` for d = 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.d)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p as u64 > MAX_ORDER {
            return Err(Error::FieldTooLarge { p, d: 1 });
        }
        Ok(Field {
            p,
            d: 1,
            q: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
        })
    }

    /// GF(p^d) defined by the least irreducible polynomial of degree d.
    pub fn new(p: u32, d: u32) -> Result<Field> {
        let base = Field::prime(p)?;
        if d == 0 {
            return Err(Error::Input("field degree must be positive".into()));
        }
        if d == 1 {
            return Ok(base);
        }
        let modulus = least_irreducible(&base, d as usize)?;
        Field::with_modulus(p, &modulus.coeffs().iter().map(|c| c.0).collect::<Vec<_>>())
    }

    /// GF(p^d) for an explicit monic modulus of degree d (lowest coefficient first).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        let base = Field::prime(p)?;
        let d = modulus.len().saturating_sub(1) as u32;
        if d == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Input("modulus must be monic with residues in [0, p)".into()));
        }
        if d == 1 {
            return Ok(base);
        }
        let order = (p as u64).checked_pow(d).filter(|&q| q <= MAX_ORDER);
        let q = order.ok_or(Error::FieldTooLarge { p, d })? as u32;
        let poly = Poly::from_coeffs(modulus.iter().map(|&c| Fe(c)).collect());
        if !is_irreducible(&base, &poly) {
            return Err(Error::Input(format!("modulus {} is reducible", poly.display(&base))));
        }
        let mut field = Field {
            p,
            d,
            q,
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        for g in 2..q as u32 {
            let mut exp = Vec::with_capacity(q - 1);
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = self.raw_mul(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == q - 1 {
                let mut log = vec![0u32; q];
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    /// Schoolbook product of encoded elements modulo the defining polynomial.
    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        let d = self.d as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(Fe(a)), self.digits(Fe(b)));
        let mut prod = vec![0u64; 2 * d - 1];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..d {
                    let sub = c * self.modulus[i] as u64 % p;
                    prod[k - d + i] = (prod[k - d + i] + p - sub) % p;
                }
                prod[k] = 0;
            }
        }
        self.from_digits(&prod[..d].iter().map(|&c| c as u32).collect::<Vec<_>>()).0
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Field order p^d.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    /// The class of the polynomial variable `x` (a generator over the prime field).
    pub fn generator(&self) -> Fe {
        if self.d == 1 {
            Fe::ONE
        } else {
            Fe(self.p)
        }
    }

    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0;
        (0..self.d)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        Fe(digits.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.d == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.d == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.d == 1 {
            return Fe((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let n = self.q - 1;
        let l = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        Fe(self.exp[l as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.d == 1 {
            return Ok(self.pow(a, (self.p - 2) as u64));
        }
        let n = self.q - 1;
        Ok(Fe(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut base, mut acc) = (a, Fe::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// a ↦ a^p.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// The unique b with b^p = a.
    pub fn pth_root(&self, a: Fe) -> Fe {
        self.pow(a, (self.q / self.p) as u64)
    }

    pub fn fmt_elem(&self, a: Fe) -> String {
        if self.d == 1 {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .digits(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Multiplicative order of `p` modulo `m` (m coprime to p, m ≥ 1).
pub fn multiplicative_order(p: u64, m: u64) -> u64 {
    if m <= 1 {
        return 1;
    }
    let (mut x, mut k) = (p % m, 1);
    while x != 1 {
        x = x * p % m;
        k += 1;
    }
    k
}
