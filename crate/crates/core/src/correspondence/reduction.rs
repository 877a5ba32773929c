//! Reduction of the loop integrals `φ_l` to the hypercube integrals `ρ̃_m`.
//!
//! Cutting every loop at its marked point turns the `l_i` loops around `x_i`
//! into paths from `x_0` to `x_i`, at the cost of the factor
//! `q^{C(l_i,2)} ∏_{t=1}^{l_i} (q^{d_i-t} - q^{t-d_i})`. Each such path is then
//! split at `x_1, ..., x_{i-1}`; a variable of group `i` that ends up in the
//! interval `(x_{j-1}, x_j)` picks up `q^{d_k-1}` for every marked point
//! `x_k`, `j <= k < i`, it passes below, and every pair of variables whose
//! order is reversed by the choice picks up `q^{-2}`.

use std::collections::BTreeMap;

use crate::coulomb::ScreeningConfig;
use crate::qseries::{qmultinom, QScalar};
use crate::Result;

/// Coefficients `C^m` with `φ_l = Σ_m C^m ρ̃_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTable {
    pub dims: Vec<usize>,
    pub l: ScreeningConfig,
    pub entries: BTreeMap<Vec<usize>, QScalar>,
}

/// `q^{C(l,2)} ∏_{t=1}^{l} (q^{d-t} - q^{t-d})`, zero when `l >= d`.
pub fn loop_cut_factor(d: usize, l: usize) -> QScalar {
    let (d, l) = (d as i64, l as i64);
    let mut f = QScalar::q_pow(l * (l - 1) / 2);
    for t in 1..=l {
        f = &f * &(&QScalar::q_pow(d - t) - &QScalar::q_pow(t - d));
    }
    f
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

pub fn reduction_coeffs(dims: &[usize], l: &ScreeningConfig) -> Result<ReductionTable> {
    let n = dims.len();
    if l.0.len() != n {
        return Err(crate::Error::InvalidArgument("screening counts and dims differ in length".into()));
    }
    let mut entries = BTreeMap::new();
    let cut: QScalar = (0..n).map(|i| loop_cut_factor(dims[i], l.0[i])).product();
    if cut.is_zero() {
        return Ok(ReductionTable { dims: dims.to_vec(), l: l.clone(), entries });
    }
    // per group i: the compositions k^{(i)} of l_i over intervals 1..=i
    let choices: Vec<Vec<Vec<usize>>> = (0..n).map(|i| compositions(l.0[i], i + 1)).collect();
    let mut pick = vec![0usize; n];
    loop {
        let ks: Vec<&Vec<usize>> = (0..n).map(|i| &choices[i][pick[i]]).collect();
        let mut coeff = cut.clone();
        let mut e: i64 = 0;
        for i in 0..n {
            let k = ks[i];
            let parts: Vec<i64> = k.iter().map(|&x| x as i64).collect();
            coeff = &coeff * &qmultinom(l.0[i] as i64, &parts)?;
            for j in 0..k.len() {
                for jp in 0..j {
                    e -= (k[j] * k[jp]) as i64;
                }
            }
            for ip in i + 1..n {
                let kp = ks[ip];
                for j in 0..k.len() {
                    for jp in 0..j {
                        e -= 2 * (k[j] * kp[jp]) as i64;
                    }
                }
                let below: usize = kp[..=i].iter().sum();
                e += (dims[i] as i64 - 1) * below as i64;
            }
        }
        let mut m = vec![0usize; n];
        for k in &ks {
            for (j, &x) in k.iter().enumerate() {
                m[j] += x;
            }
        }
        let term = &coeff * &QScalar::q_pow(e);
        let slot = entries.entry(m).or_insert_with(QScalar::zero);
        *slot = &*slot + &term;
        // next combination
        let mut i = 0;
        while i < n {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    entries.retain(|_, c| !c.is_zero());
    Ok(ReductionTable { dims: dims.to_vec(), l: l.clone(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{qbinom, qdiff, qfact};

    #[test]
    fn one_point_closed_form() {
        for d in 1..=5 {
            for ell in 0..=5 {
                let t = reduction_coeffs(&[d], &ScreeningConfig(vec![ell])).unwrap();
                if ell >= d {
                    assert!(t.entries.is_empty());
                    continue;
                }
                let expect = &QScalar::q_pow((ell * ell.saturating_sub(1) / 2) as i64)
                    * &(&qdiff().pow(ell as i32)
                        * &(&qfact(d as i64 - 1).unwrap() / &qfact((d - 1 - ell) as i64).unwrap()));
                assert_eq!(t.entries.len(), 1);
                assert_eq!(t.entries[&vec![ell]], expect);
            }
        }
    }

    #[test]
    fn two_point_closed_form() {
        for d1 in 1..=4usize {
            for d2 in 1..=4usize {
                for l1 in 0..d1 {
                    for l2 in 0..d2 {
                        let t = reduction_coeffs(&[d1, d2], &ScreeningConfig(vec![l1, l2])).unwrap();
                        let f = |x: usize| qfact(x as i64).unwrap();
                        let c2 = |x: usize| (x * x.saturating_sub(1) / 2) as i64;
                        let front = &(&QScalar::q_pow(c2(l1) + c2(l2)) * &qdiff().pow((l1 + l2) as i32))
                            * &(&(&f(d1 - 1) * &f(d2 - 1)) / &(&f(d1 - l1 - 1) * &f(d2 - l2 - 1)));
                        for m in 0..=l2 {
                            let e = m as i64 * (m as i64 - l2 as i64 + d1 as i64 - 1);
                            let expect = &front * &(&QScalar::q_pow(e) * &qbinom(l2 as i64, m as i64).unwrap());
                            assert_eq!(t.entries.get(&vec![l1 + m, l2 - m]).cloned().unwrap_or_default(), expect);
                        }
                        assert!(t.entries.len() <= l2 + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn support_is_triangular() {
        let l = ScreeningConfig(vec![0, 1, 2]);
        let t = reduction_coeffs(&[2, 3, 3], &l).unwrap();
        for m in t.entries.keys() {
            let mut sl = 0;
            let mut sm = 0;
            for j in 0..3 {
                sl += l.0[j];
                sm += m[j];
                assert!(sl <= sm);
            }
            assert_eq!(sm, 3);
        }
    }
}
