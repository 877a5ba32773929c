//! The correspondence `v ↦ F[v]`: loop basis functions `φ`, their linear
//! extension to tensors, mixed functions `α`, collision asymptotics and the
//! limits at infinity.

mod limits;
mod reduction;

pub use limits::{
    asymptotics_check, general_asymptotics_check, infinity_constant, infinity_limit, AsymptoticsReport, InfinityReport,
    Side,
};
pub use reduction::{loop_cut_factor, reduction_coeffs, ReductionTable};

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::coulomb::{check_convergent, rho, tilde_rho, tilde_rho_prefactor, ChamberPoint, Estimate, QuadratureSpec, ScreeningConfig};
use crate::qseries::{KappaParams, QScalar};
use crate::uqsl2::{act, embed, Gen, TensorSpace, TensorVector};
use crate::{Error, Result};

fn check_arity(dims: &[usize], c: &ChamberPoint) -> Result<()> {
    if dims.len() != c.n() {
        return Err(Error::InvalidArgument(format!("{} factors but {} points", dims.len(), c.n())));
    }
    Ok(())
}

/// The loop integral `φ_l`, through its reduction to hypercube integrals.
pub fn phi(c: &ChamberPoint, dims: &[usize], l: &ScreeningConfig, kappa: f64, quad: &QuadratureSpec) -> Result<Estimate<Complex64>> {
    check_arity(dims, c)?;
    check_convergent(dims, kappa)?;
    let params = KappaParams::new(kappa)?;
    let table = reduction_coeffs(dims, l)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (m, coeff) in &table.entries {
        let cm = coeff.eval(&params)?;
        let r = tilde_rho(c, dims, &ScreeningConfig(m.clone()), kappa, quad)?;
        value += cm * r.value;
        err += cm.norm() * r.err;
    }
    Ok(Estimate { value, err })
}

/// Exact coefficients of the real integrals `ρ_m` in `F[v]`.
///
/// Collecting everything symbolically first means cancellations between
/// basis functions (for instance of all `ρ_m` with `m_1 > 0` when `v` is a
/// highest weight vector) happen exactly rather than in floating point.
pub fn rho_coefficients(v: &TensorVector) -> Result<BTreeMap<Vec<usize>, QScalar>> {
    let dims = v.dims();
    let mut out: BTreeMap<Vec<usize>, QScalar> = BTreeMap::new();
    for (l, c) in v.iter() {
        let table = reduction_coeffs(dims, &ScreeningConfig(l.clone()))?;
        for (m, cm) in &table.entries {
            let slot = out.entry(m.clone()).or_insert_with(QScalar::zero);
            *slot = &*slot + &(c * cm);
        }
    }
    for (m, c) in out.iter_mut() {
        *c = &*c * &tilde_rho_prefactor(&ScreeningConfig(m.clone()));
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `F^{(x_0)}[v]`, the linear extension of `e_l ↦ φ_l` with anchor `c.x0`.
pub fn f_anchor(v: &TensorVector, c: &ChamberPoint, kappa: f64, quad: &QuadratureSpec) -> Result<Estimate<Complex64>> {
    check_arity(v.dims(), c)?;
    check_convergent(v.dims(), kappa)?;
    let params = KappaParams::new(kappa)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (m, coeff) in rho_coefficients(v)? {
        let cm = coeff.eval(&params)?;
        let r = rho(c, v.dims(), &ScreeningConfig(m), kappa, quad)?;
        value += cm * r.value;
        err += cm.norm() * r.err;
    }
    Ok(Estimate { value, err })
}

fn require_hwv(v: &TensorVector) -> Result<()> {
    if !act(Gen::E, v).is_zero() {
        return Err(Error::NotHighestWeight);
    }
    Ok(())
}

/// `F[v]` for a highest weight vector, with the default anchor `x_1 - (x_n - x_1)`.
pub fn f_hwv(v: &TensorVector, xs: &[f64], kappa: f64, quad: &QuadratureSpec) -> Result<Estimate<Complex64>> {
    require_hwv(v)?;
    let c = ChamberPoint::with_default_anchor(xs.to_vec())?;
    f_anchor(v, &c, kappa, quad)
}

/// [`f_hwv`] evaluated at two anchors, failing if they differ by more than `rel_tol`.
pub fn f_hwv_cross_checked(
    v: &TensorVector,
    xs: &[f64],
    anchors: [f64; 2],
    rel_tol: f64,
    kappa: f64,
    quad: &QuadratureSpec,
) -> Result<Estimate<Complex64>> {
    require_hwv(v)?;
    let a = f_anchor(v, &ChamberPoint::new(anchors[0], xs.to_vec())?, kappa, quad)?;
    let b = f_anchor(v, &ChamberPoint::new(anchors[1], xs.to_vec())?, kappa, quad)?;
    let scale = a.value.norm().max(b.value.norm());
    if (a.value - b.value).norm() > rel_tol * scale {
        return Err(Error::Invariant(format!(
            "anchors {anchors:?} give {} and {}",
            a.value, b.value
        )));
    }
    Ok(a)
}

/// The mixed function `α`: `F^{(x_0)}` of `ι(e_{l̂})`, where `ι` embeds `M_d` into
/// `M_{d_{j+1}} ⊗ M_{d_j}` and `l_hat` has `n - 1` entries with the `M_d` slot at `j`.
///
/// Sums `T · φ_l` term by term over the embedded vector.
pub fn alpha_mixed(
    c: &ChamberPoint,
    dims: &[usize],
    j: usize,
    d: usize,
    l_hat: &ScreeningConfig,
    kappa: f64,
    quad: &QuadratureSpec,
) -> Result<Estimate<Complex64>> {
    let e = embedded_basis(dims, j, d, l_hat)?;
    let params = KappaParams::new(kappa)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (l, t) in e.iter() {
        let tv = t.eval(&params)?;
        let p = phi(c, dims, &ScreeningConfig(l.clone()), kappa, quad)?;
        value += tv * p.value;
        err += tv.norm() * p.err;
    }
    Ok(Estimate { value, err })
}

/// `ι(e_{l̂})` in the full space with factors `dims`.
pub fn embedded_basis(dims: &[usize], j: usize, d: usize, l_hat: &ScreeningConfig) -> Result<TensorVector> {
    if j == 0 || j >= dims.len() || l_hat.0.len() + 1 != dims.len() {
        return Err(Error::InvalidArgument(format!("position {j} invalid for dims {dims:?} and {l_hat:?}")));
    }
    let mut hat_dims = dims[..j - 1].to_vec();
    hat_dims.push(d);
    hat_dims.extend_from_slice(&dims[j + 1..]);
    let e = TensorVector::basis(TensorSpace::new(hat_dims)?, l_hat.0.clone())?;
    embed(&e, j, dims[j - 1], dims[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coulomb::{b_const, contour_phi_oracle, OracleSpec};
    use crate::uqsl2::{hwv_pair, hwv_space_basis};

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn one_point_value() {
        let c = ChamberPoint::new(0.0, vec![1.0]).unwrap();
        let p = phi(&c, &[2], &ScreeningConfig(vec![1]), 8.0, &quad()).unwrap();
        assert!(rel(p.value, Complex64::new(0.0, 4.0)) < 1e-12, "{p:?}");
        let p = phi(&c, &[3], &ScreeningConfig(vec![2]), 10.0, &quad()).unwrap();
        let o = contour_phi_oracle(&c, &[3], &ScreeningConfig(vec![2]), 10.0, &OracleSpec::default()).unwrap();
        assert!(rel(p.value, o.value.value) < 1e-6, "{p:?} {o:?}");
    }

    #[test]
    fn matches_oracle_two_points() {
        let c = ChamberPoint::new(-0.7, vec![0.0, 1.3]).unwrap();
        for (dims, l) in [([2, 2], [1, 1]), ([3, 2], [0, 1]), ([2, 3], [1, 1]), ([3, 3], [0, 2])] {
            let l = ScreeningConfig(l.to_vec());
            let p = phi(&c, &dims, &l, 10.0, &quad()).unwrap();
            let o = contour_phi_oracle(&c, &dims, &l, 10.0, &OracleSpec::default()).unwrap();
            assert!(rel(p.value, o.value.value) < 1e-6, "{dims:?} {l:?} {p:?} {o:?}");
        }
    }

    #[test]
    fn hwv_drops_anchor_integrals() {
        let sp = TensorSpace::new(vec![2, 3, 2]).unwrap();
        for d in [2, 4] {
            for v in hwv_space_basis(&sp, d).unwrap() {
                assert!(rho_coefficients(&v).unwrap().keys().all(|m| m[0] == 0));
            }
        }
    }

    #[test]
    fn two_point_hwv_closed_form() {
        let v = hwv_pair(2, 2, 1).unwrap();
        let f = f_hwv_cross_checked(&v, &[1.0, 3.0], [0.0, -9.0], 1e-10, 8.0, &quad()).unwrap();
        let expect = std::f64::consts::PI * 2f64.powf(0.25);
        assert!(rel(f.value, expect.into()) < 1e-10, "{f:?}");
    }

    #[test]
    fn rejects_non_hwv() {
        let v = TensorVector::basis(TensorSpace::new(vec![2, 2]).unwrap(), vec![1, 0]).unwrap();
        assert_eq!(f_hwv(&v, &[0.0, 1.0], 8.0, &quad()), Err(Error::NotHighestWeight));
    }

    #[test]
    fn alpha_routes_agree() {
        let c = ChamberPoint::new(-1.0, vec![0.0, 0.8, 2.0]).unwrap();
        let dims = [2, 2, 3];
        let l_hat = ScreeningConfig(vec![0, 1]);
        let a = alpha_mixed(&c, &dims, 1, 1, &l_hat, 10.0, &quad()).unwrap();
        let b = f_anchor(&embedded_basis(&dims, 1, 1, &l_hat).unwrap(), &c, 10.0, &quad()).unwrap();
        assert!(rel(a.value, b.value) < 1e-9, "{a:?} {b:?}");
    }

    #[test]
    fn alpha_two_point_base_case() {
        let c = ChamberPoint::new(-1.0, vec![0.0, 1.0]).unwrap();
        let a = alpha_mixed(&c, &[2, 2], 1, 1, &ScreeningConfig(vec![0]), 8.0, &quad()).unwrap();
        let b = b_const(1, 2, 2, 8.0, &quad()).unwrap();
        assert!(rel(a.value, b.value.into()) < 1e-10);
    }
}
