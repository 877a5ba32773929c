//! Collision asymptotics and limits at infinity, measured numerically.

use num_complex::Complex64;

use super::{f_anchor, f_hwv};
use crate::coulomb::{b_const, delta_fusion, h_weight, ChamberPoint, QuadratureSpec};
use crate::qseries::{qfact, KappaParams, QScalar};
use crate::uqsl2::{act_pow, is_hwv, is_trivial, project, r_minus, r_plus, substitute, Gen, TensorVector};
use crate::{Error, Result};

/// Values of `F` as a group of points collapses, against the predicted limit.
#[derive(Clone, Debug)]
pub struct AsymptoticsReport {
    pub separations: Vec<f64>,
    pub values: Vec<Complex64>,
    pub exponent_expected: f64,
    /// Log-log slope of `|F|` between the two smallest separations.
    pub exponent_fit: f64,
    /// `F / ε^Δ` at each separation.
    pub ratios: Vec<Complex64>,
    pub reference: Complex64,
    /// `|ratio - reference| / |reference|` at each separation.
    pub deviations: Vec<f64>,
}

impl AsymptoticsReport {
    fn new(separations: &[f64], values: Vec<Complex64>, delta: f64, reference: Complex64) -> Self {
        let ratios: Vec<Complex64> = separations.iter().zip(&values).map(|(&e, &f)| f / e.powf(delta)).collect();
        let deviations = ratios.iter().map(|r| (r - reference).norm() / reference.norm()).collect();
        let (mut a, mut b) = (0, 0);
        for (i, &e) in separations.iter().enumerate() {
            if e < separations[a] {
                b = a;
                a = i;
            } else if a == b || e < separations[b] {
                b = i;
            }
        }
        let exponent_fit = (values[a].norm() / values[b].norm()).ln() / (separations[a] / separations[b]).ln();
        AsymptoticsReport { separations: separations.to_vec(), values, exponent_expected: delta, exponent_fit, ratios, reference, deviations }
    }
}

fn check_separations(seps: &[f64]) -> Result<()> {
    if seps.len() < 2 || seps.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidArgument(format!("need at least two positive separations, got {seps:?}")));
    }
    Ok(())
}

/// Collides `x_j` and `x_{j+1}` for `v` in the `d`-dimensional summand there.
///
/// `collapsed` holds the anchor and the `n - 1` points after the collision;
/// the pair sits at `ξ = collapsed.xs[j - 1]` and `ξ + ε`.
pub fn asymptotics_check(
    v: &TensorVector,
    j: usize,
    d: usize,
    collapsed: &ChamberPoint,
    kappa: f64,
    quad: &QuadratureSpec,
    separations: &[f64],
) -> Result<AsymptoticsReport> {
    check_separations(separations)?;
    let dims = v.dims().to_vec();
    let (pi, hat) = project(v, j, d)?;
    if &pi != v {
        return Err(Error::InvalidArgument(format!("vector is not in the d = {d} summand at position {j}")));
    }
    if collapsed.n() + 1 != dims.len() {
        return Err(Error::InvalidArgument("collapsed point has the wrong arity".into()));
    }
    let (d1, d2) = (dims[j - 1], dims[j]);
    let reference = b_const(d, d1, d2, kappa, quad)?.value * f_anchor(&hat, collapsed, kappa, quad)?.value;
    let xi = collapsed.xs[j - 1];
    let values = separations
        .iter()
        .map(|&e| {
            let mut xs = collapsed.xs.clone();
            xs.insert(j, xi + e);
            f_anchor(v, &ChamberPoint::new(collapsed.x0, xs)?, kappa, quad).map(|f| f.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticsReport::new(separations, values, delta_fusion(d, d1, d2, kappa), reference))
}

/// Collides the block of points replacing slot `j` of `v_hat`, where
/// `v = v_hat` with `e_l ↦ F^l τ_0` in that slot and `τ_0` is a highest
/// weight vector of dimension `d = v_hat.dims()[j - 1]`.
///
/// The block sits at `ξ + ε η_i` with `η_0 = 0 < ... < η_last = 1`, and the
/// limit of `F[v] / ε^Δ` is compared with `F[τ_0](η) F[v_hat]`.
#[allow(clippy::too_many_arguments)]
pub fn general_asymptotics_check(
    v_hat: &TensorVector,
    j: usize,
    tau0: &TensorVector,
    eta: &[f64],
    collapsed: &ChamberPoint,
    kappa: f64,
    quad: &QuadratureSpec,
    separations: &[f64],
) -> Result<AsymptoticsReport> {
    check_separations(separations)?;
    let hat_dims = v_hat.dims();
    if j == 0 || j > hat_dims.len() || collapsed.n() != hat_dims.len() {
        return Err(Error::InvalidArgument(format!("slot {j} invalid for {hat_dims:?}")));
    }
    let d = hat_dims[j - 1];
    if !is_hwv(tau0, d) {
        return Err(Error::NotHighestWeight);
    }
    let sub = tau0.dims();
    let eta_ok = eta.len() == sub.len()
        && eta.first() == Some(&0.0)
        && eta.last() == Some(&1.0)
        && eta.windows(2).all(|w| w[0] < w[1]);
    if !eta_ok {
        return Err(Error::InvalidArgument(format!("ratios {eta:?} must rise from 0 to 1 over {} points", sub.len())));
    }
    let images: Vec<TensorVector> = (0..d).map(|l| act_pow(Gen::F, tau0, l)).collect();
    let v = substitute(v_hat, j, &images)?;
    let delta = h_weight(d, kappa) - sub.iter().map(|&di| h_weight(di, kappa)).sum::<f64>();
    let reference = f_hwv(tau0, eta, kappa, quad)?.value * f_anchor(v_hat, collapsed, kappa, quad)?.value;
    let xi = collapsed.xs[j - 1];
    let values = separations
        .iter()
        .map(|&e| {
            let mut xs = collapsed.xs[..j - 1].to_vec();
            xs.extend(eta.iter().map(|&t| xi + e * t));
            xs.extend_from_slice(&collapsed.xs[j..]);
            f_anchor(&v, &ChamberPoint::new(collapsed.x0, xs)?, kappa, quad).map(|f| f.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticsReport::new(separations, values, delta, reference))
}

/// Which end of the chamber is sent to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x_n → +∞`.
    Plus,
    /// `x_1 → -∞`.
    Minus,
}

/// `C_+ = (q - q^{-1})^{d-1} [d-1]!² B_1^{d,d}`, or `C_-` with `q^{-2} - 1` in place of `q - q^{-1}`.
pub fn infinity_constant(side: Side, d: usize, kappa: f64, quad: &QuadratureSpec) -> Result<Complex64> {
    let base = match side {
        Side::Plus => &QScalar::q_pow(1) - &QScalar::q_pow(-1),
        Side::Minus => &QScalar::q_pow(-2) - &QScalar::one(),
    };
    let f = qfact(d as i64 - 1)?;
    let c = &base.pow(d as i32 - 1) * &(&f * &f);
    Ok(c.eval(&KappaParams::new(kappa)?)? * b_const(1, d, d, kappa, quad)?.value)
}

/// `|s|^{2h} F[v]` as one endpoint moves off to infinity, against `C_± F[R_±(v)]`.
#[derive(Clone, Debug)]
pub struct InfinityReport {
    pub s_values: Vec<f64>,
    pub scaled: Vec<Complex64>,
    pub reference: Complex64,
    pub deviations: Vec<f64>,
}

/// Sends `x_n` to `+s` (or `x_1` to `-s`) with the remaining points `rest` fixed.
pub fn infinity_limit(
    v: &TensorVector,
    side: Side,
    rest: &[f64],
    kappa: f64,
    quad: &QuadratureSpec,
    s_values: &[f64],
) -> Result<InfinityReport> {
    if v.dims().len() < 2 || !is_trivial(v) {
        return Err(Error::NotTrivial);
    }
    let dims = v.dims();
    if rest.len() + 1 != dims.len() {
        return Err(Error::InvalidArgument("wrong number of fixed points".into()));
    }
    let (d, reduced) = match side {
        Side::Plus => (*dims.last().unwrap(), r_plus(v)?),
        Side::Minus => (dims[0], r_minus(v)?),
    };
    let reference = infinity_constant(side, d, kappa, quad)? * f_hwv(&reduced, rest, kappa, quad)?.value;
    let exponent = 2.0 * h_weight(d, kappa);
    let scaled = s_values
        .iter()
        .map(|&s| {
            let xs: Vec<f64> = match side {
                Side::Plus => rest.iter().copied().chain([s]).collect(),
                Side::Minus => [-s].into_iter().chain(rest.iter().copied()).collect(),
            };
            Ok(s.powf(exponent) * f_hwv(v, &xs, kappa, quad)?.value)
        })
        .collect::<Result<Vec<_>>>()?;
    let deviations = scaled.iter().map(|z| (z - reference).norm() / reference.norm()).collect();
    Ok(InfinityReport { s_values: s_values.to_vec(), scaled, reference, deviations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqsl2::{hwv_pair, hwv_space_basis, TensorSpace};

    const SEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

    #[test]
    fn two_point_pure_powers() {
        let q = QuadratureSpec::default();
        let c = ChamberPoint::new(-1.0, vec![0.0]).unwrap();
        for (m, d) in [(1, 1), (0, 3)] {
            let v = hwv_pair(2, 2, m).unwrap();
            let r = asymptotics_check(&v, 1, d, &c, 10.0, &q, &SEPS).unwrap();
            assert!((r.exponent_fit - r.exponent_expected).abs() < 1e-8, "{r:?}");
            assert!(r.deviations.iter().all(|&x| x < 1e-8), "{r:?}");
        }
    }

    #[test]
    fn infinity_two_point() {
        let q = QuadratureSpec::default();
        let v = hwv_pair(2, 2, 1).unwrap();
        for side in [Side::Plus, Side::Minus] {
            let r = infinity_limit(&v, side, &[0.0], 8.0, &q, &[1e2, 1e3, 1e4]).unwrap();
            assert!(r.deviations[2] < 0.02, "{side:?} {r:?}");
        }
    }

    #[test]
    fn three_point_block() {
        let q = QuadratureSpec::default();
        let sp = TensorSpace::new(vec![2, 2, 2]).unwrap();
        let tau0 = hwv_space_basis(&sp, 2).unwrap().remove(0);
        let v_hat = TensorVector::basis(TensorSpace::new(vec![2]).unwrap(), vec![0]).unwrap();
        let c = ChamberPoint::new(-1.0, vec![0.0]).unwrap();
        let r = general_asymptotics_check(&v_hat, 1, &tau0, &[0.0, 0.4, 1.0], &c, 10.0, &q, &SEPS).unwrap();
        assert!((r.exponent_fit - r.exponent_expected).abs() < 1e-3, "{r:?}");
        assert!(r.deviations[1] < 0.02, "{r:?}");
    }
}
