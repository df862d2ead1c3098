//! Primitive idempotents of commutative algebras over finite fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CentralAlgebra;
use crate::error::{invariant, Error, Result};
use crate::field::{factor, inverse_mod, Fe, Field, Matrix, Poly};

/// Default bound on the size of the brute-force search space.
pub const DEFAULT_ORACLE_BOUND: u128 = 1 << 20;

const SPLIT_SEED: u64 = 0xb10c_5eed;
const RANDOM_TRIES: usize = 64;

/// Minimal polynomial of `a` in the algebra `unit · A` (with identity `unit`).
pub fn min_poly_in(f: &Field, alg: &CentralAlgebra, a: &[Fe], unit: &[Fe]) -> Poly {
    let mut powers = vec![unit.to_vec()];
    loop {
        let next = alg.mul(f, powers.last().unwrap(), a);
        let m = Matrix::from_columns(&powers);
        if let Ok(c) = m.solve(f, &next) {
            let mut coeffs: Vec<Fe> = c.iter().map(|&x| f.neg(x)).collect();
            coeffs.push(Fe::ONE);
            return Poly::from_coeffs(coeffs);
        }
        powers.push(next);
    }
}

/// Minimal polynomial of `a` over the whole algebra.
pub fn min_poly(f: &Field, alg: &CentralAlgebra, a: &[Fe]) -> Poly {
    min_poly_in(f, alg, a, &alg.one())
}

fn eval_in(f: &Field, alg: &CentralAlgebra, poly: &Poly, x: &[Fe], unit: &[Fe]) -> Vec<Fe> {
    let mut acc = alg.zero();
    for &c in poly.coeffs().iter().rev() {
        acc = alg.mul(f, &acc, x);
        for (a, &u) in acc.iter_mut().zip(unit) {
            *a = f.add(*a, f.mul(c, u));
        }
    }
    acc
}

/// Basis of the stable image of `a ↦ a^q`, the maximal semisimple subalgebra.
pub fn semisimple_part(f: &Field, alg: &CentralAlgebra) -> Vec<Vec<Fe>> {
    let q = f.q() as u64;
    let cols: Vec<Vec<Fe>> = (0..alg.dim()).map(|i| alg.pow(f, &alg.basis(i), q)).collect();
    Matrix::from_columns(&cols).stable_image(f)
}

/// The complete set of primitive idempotents, sorted by coordinates.
///
/// Components of the semisimple part are split by factoring minimal
/// polynomials; a component is accepted as primitive once it is shown to be a
/// field, i.e. some element has an irreducible minimal polynomial whose degree
/// equals the component's dimension.
pub fn primitive_idempotents(f: &Field, alg: &CentralAlgebra) -> Result<Vec<Vec<Fe>>> {
    let semisimple = semisimple_part(f, alg);
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut todo = vec![alg.one()];
    let mut done = Vec::new();
    'component: while let Some(e) = todo.pop() {
        let span: Vec<Vec<Fe>> = semisimple.iter().map(|s| alg.mul(f, &e, s)).collect();
        let basis = if span.is_empty() { Vec::new() } else { Matrix::from_columns(&span).image_basis(f) };
        if basis.len() <= 1 {
            done.push(e);
            continue;
        }
        let random = (0..RANDOM_TRIES).map(|_| {
            basis.iter().fold(alg.zero(), |acc, v| {
                let c = Fe(rng.gen_range(0..f.q()));
                acc.iter().zip(v).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect()
            })
        });
        let candidates: Vec<Vec<Fe>> = basis.clone().into_iter().chain(random).collect();
        for x in candidates {
            let mp = min_poly_in(f, alg, &x, &e);
            let facs = factor(f, &mp)?;
            if let Some((g, _)) = facs.iter().find(|(_, m)| *m > 1) {
                return Err(invariant(
                    "semisimplicity",
                    format!("repeated factor {} in a semisimple component", g.display(f)),
                ));
            }
            if facs.len() > 1 {
                for (fj, _) in &facs {
                    let cofactor = mp.divrem(f, fj).0;
                    let inv = inverse_mod(f, &cofactor, fj)
                        .ok_or_else(|| invariant("coprime factors", fj.display(f)))?;
                    let u = cofactor.mul(f, &inv).rem(f, &mp);
                    todo.push(eval_in(f, alg, &u, &x, &e));
                }
                continue 'component;
            }
            if mp.degree() == Some(basis.len()) {
                done.push(e);
                continue 'component;
            }
        }
        return Err(invariant("idempotent splitting", "component neither split nor certified"));
    }
    done.sort();
    Ok(done)
}

/// Exhaustive oracle: every element tested for `e² = e`, then the minimal
/// nonzero idempotents kept.
pub fn brute_force_central_idempotents(
    f: &Field,
    alg: &CentralAlgebra,
    bound: u128,
) -> Result<Vec<Vec<Fe>>> {
    let q = f.q() as u128;
    let size = (0..alg.dim()).try_fold(1u128, |acc, _| acc.checked_mul(q));
    let size = match size {
        Some(s) if s <= bound => s,
        _ => {
            return Err(Error::OracleBound {
                size: size.unwrap_or(u128::MAX),
                bound,
            })
        }
    };
    let mut idempotents = Vec::new();
    let mut v = alg.zero();
    for _ in 1..size {
        // odometer increment
        for c in v.iter_mut() {
            c.0 += 1;
            if c.0 < f.q() {
                break;
            }
            c.0 = 0;
        }
        if alg.mul(f, &v, &v) == v {
            idempotents.push(v.clone());
        }
    }
    let mut primitive: Vec<Vec<Fe>> = idempotents
        .iter()
        .filter(|e| {
            !idempotents
                .iter()
                .any(|g| g != *e && alg.mul(f, e, g) == *g)
        })
        .cloned()
        .collect();
    primitive.sort();
    Ok(primitive)
}
