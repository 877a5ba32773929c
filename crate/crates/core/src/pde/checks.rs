use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_chains, Evaluator, FdScheme, FirstOrder, Residual};
use crate::coulomb::{h_weight, QuadratureSpec};
use crate::correspondence::f_hwv;
use crate::uqsl2::{is_trivial, TensorVector};
use crate::{Error, Result};

/// The second order equation for points of dimension 2, written directly:
/// `(κ/2) ∂_j² + Σ_{i≠j} (2/(x_i - x_j) ∂_i - 2h_{1,2}/(x_i - x_j)²)`, `j` 1-based.
pub fn sle_pde_check(f: &Evaluator, x: &[f64], kappa: f64, j: usize, scheme: &FdScheme) -> Result<Residual> {
    if j == 0 || j > x.len() {
        return Err(Error::InvalidArgument(format!("position {j} invalid for {} points", x.len())));
    }
    let j = j - 1;
    let h = h_weight(2, kappa);
    let partials: Vec<FirstOrder> = (0..x.len()).map(FirstOrder::partial).collect();
    let unit = unit();
    let mut terms: Vec<(f64, Vec<&FirstOrder>)> = vec![(kappa / 2.0, vec![&partials[j], &partials[j]])];
    for i in (0..x.len()).filter(|&i| i != j) {
        let r = x[i] - x[j];
        terms.push((2.0 / r, vec![&partials[i]]));
        terms.push((-2.0 * h / (r * r), vec![&unit]));
    }
    apply_chains(&terms, f, x, scheme)
}

fn unit() -> FirstOrder {
    FirstOrder { field: Box::new(|y| vec![0.0; y.len()]), mult: Box::new(|_| 1.0) }
}

/// `Σ_i ∂_i f`, with each `∂_i f` counted separately in the scale.
pub fn translation_check(f: &Evaluator, x: &[f64], scheme: &FdScheme) -> Result<Residual> {
    let partials: Vec<FirstOrder> = (0..x.len()).map(FirstOrder::partial).collect();
    let terms: Vec<(f64, Vec<&FirstOrder>)> = partials.iter().map(|p| (1.0, vec![p])).collect();
    apply_chains(&terms, f, x, scheme)
}

/// `(Σ_i x_i ∂_i + Σ_i h_{1,d_i} - h_{1,d}) f`, zero when `f = F[v]` and `K.v = q^{d-1} v`.
pub fn euler_check(f: &Evaluator, x: &[f64], dims: &[usize], d: usize, kappa: f64, scheme: &FdScheme) -> Result<Residual> {
    let shift = dims.iter().map(|&di| h_weight(di, kappa)).sum::<f64>() - h_weight(d, kappa);
    let partials: Vec<FirstOrder> = (0..x.len()).map(FirstOrder::partial).collect();
    let one = unit();
    let mut terms: Vec<(f64, Vec<&FirstOrder>)> = partials.iter().zip(x).map(|(p, &xi)| (xi, vec![p])).collect();
    terms.push((shift, vec![&one]));
    apply_chains(&terms, f, x, scheme)
}

/// `z ↦ (a z + b)/(c z + d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn translation(t: f64) -> Self {
        Mobius { a: 1.0, b: t, c: 0.0, d: 1.0 }
    }

    pub fn scaling(lambda: f64) -> Self {
        Mobius { a: lambda, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// `z ↦ z / (1 + a z)`.
    pub fn special_conformal(a: f64) -> Self {
        Mobius { a: 1.0, b: 0.0, c: a, d: 1.0 }
    }

    pub fn apply(&self, z: f64) -> f64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn derivative(&self, z: f64) -> f64 {
        let den = self.c * z + self.d;
        (self.a * self.d - self.b * self.c) / (den * den)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MobiusReport {
    /// `∏ μ'(x_i)^{h_{1,d_i}} F[v](μ(x))`.
    pub transformed: Complex64,
    pub original: Complex64,
    pub deviation: f64,
}

/// Compares both sides of Möbius covariance for `v` in the trivial subrepresentation.
pub fn mobius_check(v: &TensorVector, mu: &Mobius, xs: &[f64], kappa: f64, quad: &QuadratureSpec) -> Result<MobiusReport> {
    if !is_trivial(v) {
        return Err(Error::NotTrivial);
    }
    if mu.a * mu.d - mu.b * mu.c <= 0.0 {
        return Err(Error::InvalidArgument(format!("{mu:?} does not preserve the upper half-plane")));
    }
    let ys: Vec<f64> = xs.iter().map(|&x| mu.apply(x)).collect();
    let pole_between = mu.c != 0.0 && {
        let p = -mu.d / mu.c;
        p >= xs[0] && p <= xs[xs.len() - 1]
    };
    if pole_between || ys.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(format!("{mu:?} does not preserve the order of {xs:?}")));
    }
    let jac: f64 = xs
        .iter()
        .zip(v.dims())
        .map(|(&x, &d)| mu.derivative(x).powf(h_weight(d, kappa)))
        .product();
    let transformed = jac * f_hwv(v, &ys, kappa, quad)?.value;
    let original = f_hwv(v, xs, kappa, quad)?.value;
    let deviation = (transformed - original).norm() / original.norm();
    Ok(MobiusReport { transformed, original, deviation })
}

/// Largest value, relative to the size of its terms, of
/// `Σ_r G_r (Σ_j (d_j-1)/(w_r-x_j) - 2Σ_{u≠r} 1/(w_r-w_u)) - 2Σ_r w_r + Σ_i (d_i-1) x_i`
/// with `G_r = (1 + perturb) ∏_i (w_r-x_i)^{d_i-1} ∏_{s≠r} (w_r-w_s)^{-2}`, over random
/// real points. The number of `w` is `ℓ = Σ(d_i-1)/2`.
pub fn special_conformal_identity_check(dims: &[usize], samples: usize, seed: u64, perturb: f64) -> Result<f64> {
    let total: usize = dims.iter().map(|&d| d.saturating_sub(1)).sum();
    if dims.contains(&0) || !total.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("Σ(d_i - 1) must be even for {dims:?}")));
    }
    let ell = total / 2;
    let n = dims.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < samples {
        let pts: Vec<f64> = (0..n + ell).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let separated = (0..pts.len()).all(|a| (0..a).all(|b| (pts[a] - pts[b]).abs() > 1e-2));
        if !separated {
            continue;
        }
        done += 1;
        let (x, w) = pts.split_at(n);
        let mut terms = Vec::with_capacity(ell + 2);
        for r in 0..ell {
            let mut g = 1.0 + perturb;
            let mut bracket = 0.0;
            for (i, &d) in dims.iter().enumerate() {
                g *= (w[r] - x[i]).powi(d as i32 - 1);
                bracket += (d as f64 - 1.0) / (w[r] - x[i]);
            }
            for s in (0..ell).filter(|&s| s != r) {
                g /= (w[r] - w[s]).powi(2);
                bracket -= 2.0 / (w[r] - w[s]);
            }
            terms.push(g * bracket);
        }
        terms.push(-2.0 * w.iter().sum::<f64>());
        terms.push(dims.iter().zip(x).map(|(&d, &xi)| (d as f64 - 1.0) * xi).sum());
        let value: f64 = terms.iter().sum();
        let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
        worst = worst.max(value.abs() / scale);
    }
    Ok(worst)
}
