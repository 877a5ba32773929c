//! The isomorphisms `R±` between the trivial subrepresentation and highest
//! weight spaces with one tensorand removed, and the cyclic maps built from them.

use super::hwv::{hwv_space_basis, is_hwv, is_trivial};
use super::tensor::{act, Gen, TensorSpace, TensorVector};
use crate::qseries::QScalar;
use crate::{Error, Result};

/// Splits `v` by the index in position `pos` (0-based) into the remaining-factor components.
fn components(v: &TensorVector, pos: usize) -> Result<Vec<TensorVector>> {
    let dims = v.dims();
    let mut rest = dims.to_vec();
    let d = rest.remove(pos);
    let space = TensorSpace::new(rest)?;
    let mut out = vec![TensorVector::zero(space); d];
    for (idx, c) in v.iter() {
        let mut k = idx.clone();
        let l = k.remove(pos);
        out[l].add_term(k, c);
    }
    Ok(out)
}

/// Assembles `Σ_l (component l) at position `pos`.
fn assemble(parts: &[TensorVector], pos: usize) -> Result<TensorVector> {
    let mut dims = parts[0].dims().to_vec();
    dims.insert(pos, parts.len());
    let mut out = TensorVector::zero(TensorSpace::new(dims)?);
    for (l, w) in parts.iter().enumerate() {
        for (idx, c) in w.iter() {
            let mut k = idx.clone();
            k.insert(pos, l);
            out.add_term(k, c);
        }
    }
    Ok(out)
}

fn require_trivial(v: &TensorVector) -> Result<()> {
    if v.dims().len() < 2 || !is_trivial(v) {
        return Err(Error::NotTrivial);
    }
    Ok(())
}

/// Writes `v = Σ_l e_l ⊗ u_l` with `e_l` in `M_{d_n}` and returns `u_{d_n - 1}`.
pub fn r_plus(v: &TensorVector) -> Result<TensorVector> {
    require_trivial(v)?;
    let n = v.dims().len();
    let mut parts = components(v, n - 1)?;
    Ok(parts.pop().expect("d_n >= 1"))
}

/// Writes `v = Σ_l w_l ⊗ e_l` with `e_l` in `M_{d_1}` and returns `w_{d_1 - 1}`.
pub fn r_minus(v: &TensorVector) -> Result<TensorVector> {
    require_trivial(v)?;
    let mut parts = components(v, 0)?;
    Ok(parts.pop().expect("d_1 >= 1"))
}

/// Inverse of [`r_plus`]: rebuilds the trivial vector with a new leftmost factor `M_d`
/// from a highest weight vector `tau` of dimension `d`.
pub fn r_plus_inv(tau: &TensorVector, d: usize) -> Result<TensorVector> {
    if !is_hwv(tau, d) {
        return Err(Error::NotHighestWeight);
    }
    let mut parts = vec![tau.clone(); d];
    for l in (1..d).rev() {
        let f = act(Gen::F, &parts[l]);
        parts[l - 1] = f.scale(&-QScalar::q_pow(1 - d as i64 + 2 * l as i64));
    }
    assemble(&parts, tau.dims().len())
}

/// Inverse of [`r_minus`]: rebuilds the trivial vector with a new rightmost factor `M_d`.
pub fn r_minus_inv(tau: &TensorVector, d: usize) -> Result<TensorVector> {
    if !is_hwv(tau, d) {
        return Err(Error::NotHighestWeight);
    }
    let mut parts = vec![tau.clone(); d];
    for l in (1..d).rev() {
        let f = act(Gen::F, &parts[l]);
        parts[l - 1] = f.scale(&-QScalar::q_pow(-(d as i64 + 1 - 2 * l as i64)));
    }
    assemble(&parts, 0)
}

/// `S = R_-^{-1} ∘ R_+`: moves the leftmost tensorand `M_{d_n}` to the rightmost position.
pub fn s_operator(v: &TensorVector) -> Result<TensorVector> {
    let d_n = *v.dims().last().ok_or(Error::NotTrivial)?;
    r_minus_inv(&r_plus(v)?, d_n)
}

/// The scalar `c` with `S^n = c · id` on `H_1` of `space`.
pub fn cyclic_constant(space: &TensorSpace) -> Result<QScalar> {
    let basis = hwv_space_basis(space, 1)?;
    if basis.is_empty() {
        return Err(Error::InvalidArgument(format!("trivial subrepresentation of {:?} is zero", space.dims())));
    }
    let mut constant: Option<QScalar> = None;
    for v in &basis {
        let mut w = v.clone();
        for _ in 0..space.len() {
            w = s_operator(&w)?;
        }
        let c = w
            .ratio_to(v)
            .ok_or_else(|| Error::Invariant("cyclic composite is not a multiple of the basis vector".into()))?;
        match &constant {
            None => constant = Some(c),
            Some(c0) if *c0 == c => {}
            Some(_) => return Err(Error::Invariant("cyclic composite is not a multiple of the identity".into())),
        }
    }
    Ok(constant.expect("nonempty basis"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::qdiff;
    use crate::uqsl2::hwv_pair;

    #[test]
    fn r_plus_of_singlet() {
        let v = hwv_pair(2, 2, 1).unwrap();
        let tau = r_plus(&v).unwrap();
        let expect = TensorVector::basis(TensorSpace::new(vec![2]).unwrap(), vec![0])
            .unwrap()
            .scale(&qdiff().inv().unwrap());
        assert_eq!(tau, expect);
        assert_eq!(r_plus_inv(&tau, 2).unwrap(), v);
        assert_eq!(r_minus_inv(&r_minus(&v).unwrap(), 2).unwrap(), v);
        let e00 = TensorVector::basis(TensorSpace::new(vec![2, 2]).unwrap(), vec![0, 0]).unwrap();
        assert_eq!(r_plus(&e00), Err(Error::NotTrivial));
    }

    #[test]
    fn four_point_round_trips() {
        let s = TensorSpace::new(vec![2; 4]).unwrap();
        for v in hwv_space_basis(&s, 1).unwrap() {
            assert_eq!(r_minus_inv(&r_minus(&v).unwrap(), 2).unwrap(), v);
            assert_eq!(r_plus_inv(&r_plus(&v).unwrap(), 2).unwrap(), v);
            let sv = s_operator(&v).unwrap();
            assert!(is_trivial(&sv));
        }
        let c = cyclic_constant(&s).unwrap();
        assert!(!c.is_zero());
    }
}
