//! Clebsch–Gordan data for `M_{d2} ⊗ M_{d1}` and the projections onto its summands.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::linalg::{inverse, Matrix};
use super::tensor::{Gen, TensorSpace, TensorVector};
use crate::qseries::{qdiff, qfact, QScalar};
use crate::{Error, Result};

/// Dimensions `d1 + d2 - 1 - 2m`, `m = 0, ..., min(d1, d2) - 1`, of the summands of `M_{d2} ⊗ M_{d1}`.
pub fn decomposition(d1: usize, d2: usize) -> Vec<usize> {
    (0..d1.min(d2)).map(|m| d1 + d2 - 1 - 2 * m).collect()
}

/// The index `m` of the summand of dimension `d`, if present.
pub fn summand_index(d1: usize, d2: usize, d: usize) -> Result<usize> {
    decomposition(d1, d2)
        .iter()
        .position(|&x| x == d)
        .ok_or(Error::NotInDecomposition { d })
}

/// Coefficient of `e_{l2} ⊗ e_{l1}` in the highest weight vector of the `m`-th summand.
pub fn hwv_coeff(d1: usize, d2: usize, m: usize, l1: usize, l2: usize) -> QScalar {
    if l1 + l2 != m || l1 >= d1 || l2 >= d2 {
        return QScalar::zero();
    }
    let f = |n: usize| qfact(n as i64).expect("nonnegative");
    let num = &f(d1 - 1 - l1) * &f(d2 - 1 - l2);
    let den = &(&f(l1) * &f(d1 - 1)) * &(&f(l2) * &f(d2 - 1));
    let sign = if l1.is_multiple_of(2) { 1 } else { -1 };
    let phase = QScalar::q_pow((l1 * (d1 - l1)) as i64);
    let c = &(&num / &den) * &phase;
    &(&c * &QScalar::from_int(sign)) / &qdiff().pow(m as i32)
}

/// `τ_0^{(d; d1, d2)}` with `d = d1 + d2 - 1 - 2m`.
pub fn hwv_pair(d1: usize, d2: usize, m: usize) -> Result<TensorVector> {
    if d1 == 0 || d2 == 0 || m >= d1.min(d2) {
        return Err(Error::InvalidArgument(format!("hwv_pair({d1},{d2},{m}) out of range")));
    }
    let space = TensorSpace::new(vec![d1, d2])?;
    let terms = (0..=m).map(|l1| (vec![l1, m - l1], hwv_coeff(d1, d2, m, l1, m - l1)));
    TensorVector::from_terms(space, terms)
}

/// `τ_l = F^l τ_0` in the `m`-th summand.
pub fn submodule_vector(d1: usize, d2: usize, m: usize, l: usize) -> Result<TensorVector> {
    let tau = hwv_pair(d1, d2, m)?;
    let d = d1 + d2 - 1 - 2 * m;
    if l >= d {
        return Err(Error::InvalidArgument(format!("l = {l} out of range for summand of dimension {d}")));
    }
    Ok(super::tensor::act_pow(Gen::F, &tau, l))
}

/// Change of basis from `e_{l2} ⊗ e_{l1}` to the `τ_l^{(d')}` vectors.
struct CgTable {
    /// `(d', l)` labels of the τ basis, in column order.
    labels: Vec<(usize, usize)>,
    /// `inv[r][a + d1 * b]`: coordinate on `labels[r]` of `e_b ⊗ e_a`.
    inv: Matrix,
    /// `tau[r]`: the vector `τ` for `labels[r]`.
    tau: Vec<TensorVector>,
}

fn cg_table(d1: usize, d2: usize) -> Result<Arc<CgTable>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<CgTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(d1, d2)) {
        return Ok(t.clone());
    }
    let mut labels = Vec::new();
    let mut tau = Vec::new();
    for (m, &d) in decomposition(d1, d2).iter().enumerate() {
        for l in 0..d {
            labels.push((d, l));
            tau.push(submodule_vector(d1, d2, m, l)?);
        }
    }
    let n = d1 * d2;
    // columns are τ vectors expressed in the e-basis
    let mut a: Matrix = vec![vec![QScalar::zero(); n]; n];
    for (c, t) in tau.iter().enumerate() {
        for (idx, x) in t.iter() {
            a[idx[0] + d1 * idx[1]][c] = x.clone();
        }
    }
    let inv = inverse(&a)?;
    let table = Arc::new(CgTable { labels, inv, tau });
    cache.lock().unwrap().insert((d1, d2), table.clone());
    Ok(table)
}

/// Projection onto the summand of dimension `d` in positions `(j, j+1)` (1-based).
///
/// Returns `(π(v), π̂(v))`: the projection in the original space, and its
/// image in the space where `M_{d_{j+1}} ⊗ M_{d_j}` is replaced by `M_d`.
pub fn project(v: &TensorVector, j: usize, d: usize) -> Result<(TensorVector, TensorVector)> {
    let dims = v.dims().to_vec();
    if j == 0 || j >= dims.len() {
        return Err(Error::InvalidArgument(format!("position {j} invalid for {} factors", dims.len())));
    }
    let (d1, d2) = (dims[j - 1], dims[j]);
    summand_index(d1, d2, d)?;
    let table = cg_table(d1, d2)?;
    let mut hat_dims = dims[..j - 1].to_vec();
    hat_dims.push(d);
    hat_dims.extend_from_slice(&dims[j + 1..]);
    let mut pi = TensorVector::zero(v.space().clone());
    let mut hat = TensorVector::zero(TensorSpace::new(hat_dims)?);
    for (idx, c) in v.iter() {
        let col = idx[j - 1] + d1 * idx[j];
        for (r, &(dd, l)) in table.labels.iter().enumerate() {
            if dd != d || table.inv[r][col].is_zero() {
                continue;
            }
            let x = c * &table.inv[r][col];
            let mut h = idx[..j - 1].to_vec();
            h.push(l);
            h.extend_from_slice(&idx[j + 1..]);
            hat.add_term(h, &x);
            for (pair, y) in table.tau[r].iter() {
                let mut k = idx.clone();
                k[j - 1] = pair[0];
                k[j] = pair[1];
                pi.add_term(k, &(&x * y));
            }
        }
    }
    Ok((pi, hat))
}

/// Replaces slot `j` (1-based) of `v_hat` by a block of factors: the basis vector
/// `e_l` there becomes `images[l]`, a vector in `M_{sub_dims}`.
pub fn substitute(v_hat: &TensorVector, j: usize, images: &[TensorVector]) -> Result<TensorVector> {
    let dims = v_hat.dims();
    if j == 0 || j > dims.len() || images.len() != dims[j - 1] {
        return Err(Error::InvalidArgument("substitute: slot or image count mismatch".into()));
    }
    let sub = images[0].dims().to_vec();
    if images.iter().any(|w| w.dims() != sub.as_slice()) {
        return Err(Error::InvalidArgument("substitute: images live in different spaces".into()));
    }
    let mut new_dims = dims[..j - 1].to_vec();
    new_dims.extend_from_slice(&sub);
    new_dims.extend_from_slice(&dims[j..]);
    let mut out = TensorVector::zero(TensorSpace::new(new_dims)?);
    for (idx, c) in v_hat.iter() {
        for (s, y) in images[idx[j - 1]].iter() {
            let mut k = idx[..j - 1].to_vec();
            k.extend_from_slice(s);
            k.extend_from_slice(&idx[j..]);
            out.add_term(k, &(c * y));
        }
    }
    Ok(out)
}

/// The embedding `ι`: inverse of `π̂` on the summand of dimension `d` at positions `(j, j+1)`.
pub fn embed(v_hat: &TensorVector, j: usize, d1: usize, d2: usize) -> Result<TensorVector> {
    let d = v_hat.dims().get(j.wrapping_sub(1)).copied().unwrap_or(0);
    let m = summand_index(d1, d2, d)?;
    let images = (0..d).map(|l| submodule_vector(d1, d2, m, l)).collect::<Result<Vec<_>>>()?;
    substitute(v_hat, j, &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqsl2::act;

    fn sp(d: &[usize]) -> TensorSpace {
        TensorSpace::new(d.to_vec()).unwrap()
    }

    #[test]
    fn hwv_pair_examples() {
        assert_eq!(hwv_pair(2, 2, 0).unwrap(), TensorVector::basis(sp(&[2, 2]), vec![0, 0]).unwrap());
        let c = qdiff().inv().unwrap();
        let expect = TensorVector::from_terms(
            sp(&[2, 2]),
            [(vec![0, 1], c.clone()), (vec![1, 0], -&(&c * &QScalar::q_pow(1)))],
        )
        .unwrap();
        assert_eq!(hwv_pair(2, 2, 1).unwrap(), expect);
        assert!(hwv_pair(2, 2, 2).is_err());
    }

    #[test]
    fn submodule_examples() {
        assert_eq!(submodule_vector(2, 2, 1, 0).unwrap(), hwv_pair(2, 2, 1).unwrap());
        let expect = TensorVector::from_terms(
            sp(&[2, 2]),
            [(vec![0, 1], QScalar::one()), (vec![1, 0], QScalar::q_pow(-1))],
        )
        .unwrap();
        assert_eq!(submodule_vector(2, 2, 0, 1).unwrap(), expect);
        assert!(submodule_vector(2, 2, 1, 1).is_err());
        assert!(act(Gen::F, &hwv_pair(2, 2, 1).unwrap()).is_zero());
    }

    #[test]
    fn project_examples() {
        let t = hwv_pair(2, 2, 1).unwrap();
        let (pi, hat) = project(&t, 1, 1).unwrap();
        assert_eq!(pi, t);
        assert_eq!(hat, TensorVector::basis(sp(&[1]), vec![0]).unwrap());
        let (pi, hat) = project(&t, 1, 3).unwrap();
        assert!(pi.is_zero() && hat.is_zero());
        let e00 = TensorVector::basis(sp(&[2, 2]), vec![0, 0]).unwrap();
        let (pi, hat) = project(&e00, 1, 3).unwrap();
        assert_eq!(pi, e00);
        assert_eq!(hat, TensorVector::basis(sp(&[3]), vec![0]).unwrap());
        assert!(matches!(project(&e00, 1, 2), Err(Error::NotInDecomposition { d: 2 })));
        assert_eq!(embed(&hat, 1, 2, 2).unwrap(), e00);
    }
}
