use super::linalg::{nullspace, Matrix};
use super::tensor::{act, Gen, TensorSpace, TensorVector};
use crate::qseries::QScalar;
use crate::Result;

/// Basis of `{v : E.v = 0, K.v = q^{d-1} v}`.
///
/// Each vector is scaled so that its first nonzero coefficient, in the
/// lexicographic order of `(l_1, ..., l_n)`, equals 1.
pub fn hwv_space_basis(space: &TensorSpace, d: usize) -> Result<Vec<TensorVector>> {
    if d == 0 {
        return Ok(vec![]);
    }
    let target = d as i64 - 1;
    let all = space.indices();
    let source: Vec<Vec<usize>> = all.iter().filter(|i| space.weight(i) == target).cloned().collect();
    let image: Vec<Vec<usize>> = all.iter().filter(|i| space.weight(i) == target + 2).cloned().collect();
    if source.is_empty() {
        return Ok(vec![]);
    }
    let mut a: Matrix = vec![vec![QScalar::zero(); source.len()]; image.len()];
    for (c, s) in source.iter().enumerate() {
        let ev = act(Gen::E, &TensorVector::basis(space.clone(), s.clone())?);
        for (k, x) in ev.iter() {
            let r = image.binary_search(k).expect("E raises the weight by 2");
            a[r][c] = x.clone();
        }
    }
    let mut out = Vec::new();
    for x in nullspace(&a, source.len()) {
        let lead = x.iter().find(|c| !c.is_zero()).expect("null vectors are nonzero").inv()?;
        let terms = source.iter().cloned().zip(x.iter().map(|c| c * &lead));
        out.push(TensorVector::from_terms(space.clone(), terms)?);
    }
    Ok(out)
}

/// Whether `v` is a highest weight vector of dimension `d` (`E.v = 0`, `K.v = q^{d-1} v`).
pub fn is_hwv(v: &TensorVector, d: usize) -> bool {
    d >= 1
        && v.iter().all(|(k, _)| v.space().weight(k) == d as i64 - 1)
        && act(Gen::E, v).is_zero()
}

/// Whether `v` lies in the trivial subrepresentation `H_1`.
pub fn is_trivial(v: &TensorVector) -> bool {
    is_hwv(v, 1)
}

/// The Catalan numbers, for dimension checks.
pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqsl2::hwv_pair;

    #[test]
    fn two_factor_singlet() {
        let s = TensorSpace::new(vec![2, 2]).unwrap();
        let b = hwv_space_basis(&s, 1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].ratio_to(&hwv_pair(2, 2, 1).unwrap()).is_some());
        assert!(hwv_space_basis(&s, 2).unwrap().is_empty());
    }

    #[test]
    fn catalan_dimensions() {
        assert_eq!((0..5).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14]);
        for n in 1..=3 {
            let s = TensorSpace::new(vec![2; 2 * n]).unwrap();
            let b = hwv_space_basis(&s, 1).unwrap();
            assert_eq!(b.len() as u64, catalan(n as u64));
            for v in &b {
                assert!(is_trivial(v));
                assert!(act(Gen::F, v).is_zero());
                assert_eq!(&act(Gen::K, v), v);
            }
        }
    }
}
