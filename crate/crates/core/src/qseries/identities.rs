//! The q-combinatorial identities used throughout, each checked by
//! comparing an exact closed form with a brute-force sum.

use itertools::Itertools;
use num_bigint::BigInt;

use super::{qbinom, qfact, qint, qdiff, LaurentPoly, QScalar};
use crate::Result;

/// `[ℓ][d-ℓ] (q - q^{-1}) = Σ_{u<ℓ} (q^{d-1-2u} - q^{-d+1+2u})`.
pub fn product_identity(d: i64, ell: i64) -> bool {
    let lhs = &(&qint(ell) * &qint(d - ell)) * &qdiff();
    let rhs: QScalar = (0..ell).map(|u| &QScalar::q_pow(d - 1 - 2 * u) - &QScalar::q_pow(-d + 1 + 2 * u)).sum();
    lhs == rhs
}

fn inversions(p: &[usize]) -> i64 {
    let mut c = 0;
    for j in 0..p.len() {
        for i in 0..j {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// `Σ_{σ ∈ S_n} q^{-2 inv(σ)} = q^{-C(n,2)} [n]!`, summing over all `n!` permutations.
pub fn inversion_identity(n: usize) -> Result<bool> {
    let lhs: QScalar = (0..n).permutations(n).map(|p| QScalar::q_pow(-2 * inversions(&p))).sum();
    let ni = n as i64;
    Ok(lhs == &QScalar::q_pow(-ni * (ni - 1) / 2) * &qfact(ni)?)
}

/// `Σ_{r_1 < ... < r_k} q^{-2 Σ_j (r_j - j)} = q^{-k(n-k)} [n choose k]`.
pub fn subset_identity(n: usize, k: usize) -> Result<bool> {
    let lhs: QScalar = (1..=n as i64)
        .combinations(k)
        .map(|r| QScalar::q_pow(-2 * r.iter().enumerate().map(|(j, &rj)| rj - (j as i64 + 1)).sum::<i64>()))
        .sum();
    let (n, k) = (n as i64, k as i64);
    Ok(lhs == &QScalar::q_pow(-k * (n - k)) * &qbinom(n, k)?)
}

/// `Σ_m [n choose m] (-1)^m q^{mβ} = q^{nβ/2} ∏_{s<n} (q^{(n-1-β)/2 - s} - q^{(β+1-n)/2 + s})`.
///
/// Both sides are compared as Laurent polynomials in `p = q^{1/2}`.
pub fn alternating_identity(n: i64, beta: i64) -> Result<bool> {
    let p = |e: i64| LaurentPoly::q_pow(e);
    let mut lhs = LaurentPoly::zero();
    for m in 0..=n {
        let b = qbinom(n, m)?;
        let b = b.as_laurent().expect("q-binomials are Laurent polynomials").dilate(2);
        let sign = if m % 2 == 0 { 1 } else { -1 };
        lhs = &lhs + &(&b.scale(&BigInt::from(sign)) * &p(2 * m * beta));
    }
    let mut rhs = p(n * beta);
    for s in 0..n {
        rhs = &rhs * &(&p(n - 1 - beta - 2 * s) - &p(beta + 1 - n + 2 * s));
    }
    Ok(lhs == rhs)
}

/// Whether `[n choose k]` reduces to a Laurent polynomial.
pub fn qbinom_is_laurent(n: i64, k: i64) -> Result<bool> {
    Ok(qbinom(n, k)?.is_laurent())
}
