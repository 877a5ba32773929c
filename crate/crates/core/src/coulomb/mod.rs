//! Coulomb gas integrals: the real simplex integrals `ρ`, their rephased
//! versions `ρ̃`, the constants `B`, conformal exponents, and a direct
//! contour-integration oracle for the loop integrals.

mod contour;
pub mod de;
mod simplex;

pub use contour::{branch_continue, contour_phi_oracle, ContourPath, OracleSpec};
pub use simplex::{b1_gamma_ratio, b_const, rho, selberg_oracle, tilde_rho, tilde_rho_prefactor};

use crate::{Error, Result};

/// Anchor `x_0` and marked points `x_1 < ... < x_n`, with `x_0 < x_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChamberPoint {
    pub x0: f64,
    pub xs: Vec<f64>,
}

impl ChamberPoint {
    pub fn new(x0: f64, xs: Vec<f64>) -> Result<Self> {
        let ok = !xs.is_empty()
            && std::iter::once(&x0).chain(&xs).all(|x| x.is_finite())
            && x0 < xs[0]
            && xs.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::InvalidArgument(format!("points must satisfy x0 < x1 < ... < xn, got {x0}, {xs:?}")));
        }
        Ok(ChamberPoint { x0, xs })
    }

    /// Uses the default anchor `x_1 - (x_n - x_1)`, or `x_1 - 1` for a single point.
    pub fn with_default_anchor(xs: Vec<f64>) -> Result<Self> {
        let first = *xs.first().ok_or_else(|| Error::InvalidArgument("no points".into()))?;
        let span = xs.last().unwrap() - first;
        let margin = if span > 0.0 { span } else { 1.0 };
        ChamberPoint::new(first - margin, xs)
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    /// `(x_0, x_1, ..., x_n)`.
    pub fn full(&self) -> Vec<f64> {
        std::iter::once(self.x0).chain(self.xs.iter().copied()).collect()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        ChamberPoint::new(f(self.x0), self.xs.iter().map(|&x| f(x)).collect())
    }
}

/// Numbers of screening variables per interval (or per loop group).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScreeningConfig(pub Vec<usize>);

impl ScreeningConfig {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }
}

/// Settings for the simplex quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Inverse step `1/h` of the tanh-sinh rule.
    pub nodes_per_panel: usize,
    /// How many times the step may be halved while the estimate exceeds `rel_tol`.
    pub max_subdivisions: usize,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { nodes_per_panel: 16, max_subdivisions: 0, rel_tol: 1e-8 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_panel < 4 || !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!("bad quadrature settings {self:?}")));
        }
        Ok(())
    }
}

/// A value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub err: f64,
}

pub(crate) fn check_convergent(dims: &[usize], kappa: f64) -> Result<()> {
    let dmax = dims.iter().copied().max().unwrap_or(1);
    let bound = 4.0 * (dmax as f64 - 1.0);
    if !(kappa > bound) {
        return Err(Error::Divergent { kappa, bound });
    }
    Ok(())
}

/// `∏_{i<j} (x_j - x_i)^{2(d_i-1)(d_j-1)/κ}`.
pub fn pair_prefactor(xs: &[f64], dims: &[usize], kappa: f64) -> f64 {
    let mut log = 0.0;
    for j in 0..xs.len() {
        for i in 0..j {
            let e = 2.0 * (dims[i] as f64 - 1.0) * (dims[j] as f64 - 1.0) / kappa;
            if e != 0.0 {
                log += e * (xs[j] - xs[i]).ln();
            }
        }
    }
    log.exp()
}

/// The real integrand at screening points `w`, each strictly inside `(x_0, x_n)`.
pub fn integrand_real(c: &ChamberPoint, dims: &[usize], w: &[f64], kappa: f64) -> Result<f64> {
    if dims.len() != c.n() {
        return Err(Error::InvalidArgument("dims and points differ in length".into()));
    }
    let xn = *c.xs.last().unwrap();
    for (r, &wr) in w.iter().enumerate() {
        if !(wr > c.x0 && wr < xn) || c.xs.contains(&wr) || w[..r].contains(&wr) {
            return Err(Error::InvalidArgument(format!("screening point {wr} coincides or lies outside the chamber")));
        }
    }
    let mut log = pair_prefactor(&c.xs, dims, kappa).ln();
    for &wr in w {
        for (&x, &d) in c.xs.iter().zip(dims) {
            if d > 1 {
                log += -4.0 * (d as f64 - 1.0) / kappa * (wr - x).abs().ln();
            }
        }
    }
    for s in 0..w.len() {
        for r in 0..s {
            log += 8.0 / kappa * (w[s] - w[r]).abs().ln();
        }
    }
    Ok(log.exp())
}

/// Kac weight `h_{1,d} = (d-1)(2(d+1)-κ)/(2κ)`.
pub fn h_weight(d: usize, kappa: f64) -> f64 {
    let d = d as f64;
    (d - 1.0) * (2.0 * (d + 1.0) - kappa) / (2.0 * kappa)
}

/// Fusion exponent `Δ_d^{d1,d2}`.
pub fn delta_fusion(d: usize, d1: usize, d2: usize, kappa: f64) -> f64 {
    let (d, d1, d2) = (d as f64, d1 as f64, d2 as f64);
    (2.0 * (1.0 + d * d - d1 * d1 - d2 * d2) + kappa * (d1 + d2 - d - 1.0)) / (2.0 * kappa)
}

/// Homogeneity degree of the loop integrals with `ℓ` screening variables.
pub fn delta_scaling(ell: usize, dims: &[usize], kappa: f64) -> f64 {
    let l = ell as f64;
    let s: f64 = dims.iter().map(|&d| d as f64 - 1.0).sum();
    let mut pairs = 0.0;
    for j in 0..dims.len() {
        for i in 0..j {
            pairs += (dims[i] as f64 - 1.0) * (dims[j] as f64 - 1.0);
        }
    }
    2.0 / kappa * pairs - 4.0 / kappa * l * s + 8.0 / kappa * l * (l - 1.0) / 2.0 + l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrand_examples() {
        let c = ChamberPoint::new(-1.0, vec![0.0, 1.0]).unwrap();
        assert_eq!(integrand_real(&c, &[2, 2], &[], 8.0).unwrap(), 1.0);
        let c = ChamberPoint::new(-1.0, vec![0.0, 2.0]).unwrap();
        assert!((integrand_real(&c, &[2, 2], &[], 8.0).unwrap() - 2f64.powf(0.25)).abs() < 1e-15);
        assert!(integrand_real(&c, &[2, 2], &[0.0], 8.0).is_err());
        let a = integrand_real(&c, &[2, 1], &[0.5], 8.0).unwrap();
        let c2 = ChamberPoint::new(-1.0, vec![0.0, 3.0]).unwrap();
        assert_eq!(a, integrand_real(&c2, &[2, 1], &[0.5], 8.0).unwrap());
    }

    #[test]
    fn exponents() {
        let k = 7.3;
        assert_eq!(h_weight(1, k), 0.0);
        assert!((h_weight(2, k) - (6.0 - k) / (2.0 * k)).abs() < 1e-15);
        assert!((delta_fusion(1, 2, 2, k) - (k - 6.0) / k).abs() < 1e-15);
        assert!((delta_fusion(3, 2, 2, k) - 2.0 / k).abs() < 1e-15);
        for dims in [vec![2, 2], vec![2, 3, 4], vec![3, 3, 1, 2]] {
            let tot: usize = dims.iter().map(|d| d - 1).sum();
            for ell in 0..=tot / 2 {
                let d = dims.iter().sum::<usize>() - dims.len() + 1 - 2 * ell;
                let kac = h_weight(d, k) - dims.iter().map(|&di| h_weight(di, k)).sum::<f64>();
                assert!((delta_scaling(ell, &dims, k) - kac).abs() < 1e-12);
            }
        }
        for (d1, d2) in [(2, 2), (2, 3), (3, 4)] {
            for ell in 0..d1.min(d2) {
                let d = d1 + d2 - 1 - 2 * ell;
                assert!((delta_scaling(ell, &[d1, d2], k) - delta_fusion(d, d1, d2, k)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn chamber_validation() {
        assert!(ChamberPoint::new(0.0, vec![1.0, 1.0]).is_err());
        assert!(ChamberPoint::new(1.0, vec![1.0]).is_err());
        let c = ChamberPoint::with_default_anchor(vec![1.0, 3.0]).unwrap();
        assert_eq!(c.x0, -1.0);
    }
}
