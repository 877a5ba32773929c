//! Finite-difference checks of the differential equations satisfied by `F[v]`:
//! the Benoit–Saint-Aubin equations, covariance, and a rational identity
//! behind special conformal covariance.

mod checks;

pub use checks::{
    euler_check, mobius_check, sle_pde_check, special_conformal_identity_check, translation_check, Mobius, MobiusReport,
};

use num_complex::Complex64;

use crate::coulomb::h_weight;
use crate::{Error, Result};

/// A function on the chamber, given only as an evaluator.
pub type Evaluator<'a> = dyn Fn(&[f64]) -> Result<Complex64> + Sync + 'a;

/// Finite-difference settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdScheme {
    /// Largest coordinate displacement per derivative, as a fraction of the
    /// smallest gap between points.
    pub step: f64,
    /// Accuracy order of the central stencils: 2 or 4.
    pub stencil_order: usize,
    /// Number of step sizes `h, h/2, ...` combined by Richardson extrapolation.
    pub levels: usize,
}

impl Default for FdScheme {
    fn default() -> Self {
        FdScheme { step: 1e-2, stencil_order: 4, levels: 2 }
    }
}

impl FdScheme {
    fn validate(&self, order: usize) -> Result<()> {
        let ok = self.step > 0.0
            && self.step.is_finite()
            && self.levels >= 1
            && (self.stencil_order == 4 || (self.stencil_order == 2 && order < 3));
        if !ok {
            return Err(Error::InvalidArgument(format!("bad scheme {self:?} for an operator of order {order}")));
        }
        Ok(())
    }

    fn stencil(&self) -> &'static [(f64, f64)] {
        match self.stencil_order {
            2 => &[(1.0, 0.5), (-1.0, -0.5)],
            _ => &[(2.0, -1.0 / 12.0), (1.0, 8.0 / 12.0), (-1.0, -8.0 / 12.0), (-2.0, 1.0 / 12.0)],
        }
    }

    fn reach(&self) -> f64 {
        if self.stencil_order == 2 {
            1.0
        } else {
            2.0
        }
    }
}

/// A residual together with the size of the terms that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub value: Complex64,
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.norm()
        } else {
            self.value.norm() / self.scale
        }
    }
}

/// `g ↦ Σ_i V_i(x) ∂_i g + c(x) g`.
pub struct FirstOrder {
    pub field: Box<dyn Fn(&[f64]) -> Vec<f64> + Sync>,
    pub mult: Box<dyn Fn(&[f64]) -> f64 + Sync>,
}

impl FirstOrder {
    /// `∂_i` (0-based).
    pub fn partial(i: usize) -> Self {
        FirstOrder {
            field: Box::new(move |x| {
                let mut v = vec![0.0; x.len()];
                v[i] = 1.0;
                v
            }),
            mult: Box::new(|_| 0.0),
        }
    }

    /// `L_{-k}^{(j)} = -Σ_{i≠j} ((x_i - x_j)^{1-k} ∂_i + (1-k) h_{1,d_i} (x_i - x_j)^{-k})`, `j` 0-based.
    pub fn virasoro(k: usize, j: usize, dims: &[usize], kappa: f64) -> Self {
        let k = k as i32;
        let h: Vec<f64> = dims.iter().map(|&d| h_weight(d, kappa)).collect();
        FirstOrder {
            field: Box::new(move |x| {
                (0..x.len()).map(|i| if i == j { 0.0 } else { -(x[i] - x[j]).powi(1 - k) }).collect()
            }),
            mult: Box::new(move |x| {
                -(0..x.len())
                    .filter(|&i| i != j)
                    .map(|i| (1 - k) as f64 * h[i] * (x[i] - x[j]).powi(-k))
                    .sum::<f64>()
            }),
        }
    }
}

fn min_gap(x: &[f64]) -> f64 {
    x.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

fn check_clearance(x: &[f64], scheme: &FdScheme, order: usize) -> Result<f64> {
    if x.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(format!("points {x:?} are not increasing")));
    }
    let gap = if x.len() < 2 { 1.0 } else { min_gap(x) };
    let h = scheme.step * gap;
    if x.len() >= 2 && 2.0 * scheme.reach() * order as f64 * h * 2.0 >= gap {
        return Err(Error::Clearance(format!("step {h} too large for gap {gap} and order {order}")));
    }
    Ok(h)
}

/// `ops[0] ∘ ops[1] ∘ ... ∘ f` at `x`, with displacement `h` per derivative.
fn chain(ops: &[&FirstOrder], f: &Evaluator, x: &[f64], h: f64, scheme: &FdScheme) -> Result<Complex64> {
    let Some((op, rest)) = ops.split_first() else {
        return f(x);
    };
    let v = (op.field)(x);
    let vmax = v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let mut out = Complex64::new(0.0, 0.0);
    if vmax > 0.0 {
        let tau = h / vmax;
        let mut d = Complex64::new(0.0, 0.0);
        for &(s, w) in scheme.stencil() {
            let y: Vec<f64> = x.iter().zip(&v).map(|(xi, vi)| xi + s * tau * vi).collect();
            d += w * chain(rest, f, &y, h, scheme)?;
        }
        out += d / tau;
    }
    let c = (op.mult)(x);
    if c != 0.0 {
        out += c * chain(rest, f, x, h, scheme)?;
    }
    Ok(out)
}

/// Richardson extrapolation of `a(h)` over `h, h/2, ...`, error series in `h^p, h^{p+2}, ...`.
fn richardson(a: impl Fn(f64) -> Result<Complex64>, h: f64, scheme: &FdScheme) -> Result<Complex64> {
    let mut row: Vec<Complex64> = (0..scheme.levels).map(|k| a(h / 2f64.powi(k as i32))).collect::<Result<_>>()?;
    let mut p = scheme.stencil_order as i32;
    while row.len() > 1 {
        let f = 2f64.powi(p);
        row = row.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
        p += 2;
    }
    Ok(row[0])
}

/// Applies a weighted sum of operator chains. The scale is the largest single
/// term, or `|f(x)| / gap^order` if that is larger.
pub fn apply_chains(
    terms: &[(f64, Vec<&FirstOrder>)],
    f: &Evaluator,
    x: &[f64],
    scheme: &FdScheme,
) -> Result<Residual> {
    let order = terms.iter().map(|(_, t)| t.len()).max().unwrap_or(0);
    scheme.validate(order)?;
    let h = check_clearance(x, scheme, order)?;
    let mut value = Complex64::new(0.0, 0.0);
    let gap = if x.len() < 2 { 1.0 } else { min_gap(x) };
    let mut scale = f(x)?.norm() / gap.powi(order as i32);
    for (c, ops) in terms {
        let t = *c * richardson(|hh| chain(ops, f, x, hh, scheme), h, scheme)?;
        value += t;
        scale = scale.max(t.norm());
    }
    Ok(Residual { value, scale })
}

/// The Benoit–Saint-Aubin operator at point `j` (1-based) as a sum over
/// compositions `(n_1, ..., n_k)` of `d_j` of `c · L_{-n_1} ... L_{-n_k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BsaOperator {
    pub j: usize,
    pub dims: Vec<usize>,
    pub kappa: f64,
    pub terms: Vec<(Vec<usize>, f64)>,
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Coefficient `(-4/κ)^{d-k} (d-1)!² / ∏_{t<k} (n_1+...+n_t)(n_{t+1}+...+n_k)`.
pub fn build_bsa(j: usize, dims: &[usize], kappa: f64) -> Result<BsaOperator> {
    if j == 0 || j > dims.len() || dims.contains(&0) {
        return Err(Error::InvalidArgument(format!("position {j} invalid for dims {dims:?}")));
    }
    let d = dims[j - 1];
    let fact: f64 = (1..d).map(|i| i as f64).product();
    let terms = compositions(d)
        .into_iter()
        .map(|ns| {
            let k = ns.len();
            let mut denom = 1.0;
            let mut left = 0;
            for &n in &ns[..k - 1] {
                left += n;
                denom *= (left * (d - left)) as f64;
            }
            let c = (-4.0 / kappa).powi((d - k) as i32) * fact * fact / denom;
            (ns, c)
        })
        .collect();
    Ok(BsaOperator { j, dims: dims.to_vec(), kappa, terms })
}

/// `D^{(j)} f` at `x` by nested central differences.
pub fn apply_bsa(op: &BsaOperator, f: &Evaluator, x: &[f64], scheme: &FdScheme) -> Result<Residual> {
    if x.len() != op.dims.len() {
        return Err(Error::InvalidArgument("point and operator arity differ".into()));
    }
    let d = op.dims[op.j - 1];
    let ls: Vec<FirstOrder> = (1..=d).map(|k| FirstOrder::virasoro(k, op.j - 1, &op.dims, op.kappa)).collect();
    let terms: Vec<(f64, Vec<&FirstOrder>)> =
        op.terms.iter().map(|(ns, c)| (*c, ns.iter().map(|&n| &ls[n - 1]).collect())).collect();
    apply_chains(&terms, f, x, scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coulomb::pair_prefactor;

    #[test]
    fn compositions_and_coefficients() {
        for d in 1..=6 {
            let op = build_bsa(1, &[d, 2], 7.0).unwrap();
            assert_eq!(op.terms.len(), 1 << (d - 1));
        }
        let op = build_bsa(2, &[2, 2], 8.0).unwrap();
        assert_eq!(op.terms, vec![(vec![1, 1], 1.0), (vec![2], -0.5)]);
        let op = build_bsa(1, &[3], 8.0).unwrap();
        let c: Vec<f64> = op.terms.iter().map(|t| t.1).collect();
        assert_eq!(c, vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn vertex_correlator_is_null() {
        let kappa = 10.0;
        let x = [0.0, 0.7, 1.9, 3.0];
        for dims in [[2, 2, 3, 1], [3, 3, 2, 2], [1, 3, 3, 3]] {
            let f = move |y: &[f64]| Ok(Complex64::from(pair_prefactor(y, &dims, kappa)));
            for j in 1..=4 {
                let op = build_bsa(j, &dims, kappa).unwrap();
                let r = apply_bsa(&op, &f, &x, &FdScheme::default()).unwrap();
                assert!(r.relative() < 1e-6, "{dims:?} {j} {r:?}");
            }
        }
    }

    #[test]
    fn wrong_exponent_is_not_null() {
        let kappa = 10.0;
        let dims = [2, 2, 2];
        let f = move |y: &[f64]| Ok(Complex64::from(pair_prefactor(y, &dims, 7.0)));
        let op = build_bsa(2, &dims, kappa).unwrap();
        let r = apply_bsa(&op, &f, &[0.0, 1.0, 2.5], &FdScheme::default()).unwrap();
        assert!(r.relative() > 1e-2, "{r:?}");
    }

    #[test]
    fn clearance_is_enforced() {
        let f = |_: &[f64]| Ok(Complex64::new(1.0, 0.0));
        let op = build_bsa(1, &[2, 2], 8.0).unwrap();
        let s = FdScheme { step: 0.2, ..FdScheme::default() };
        assert!(matches!(apply_bsa(&op, &f, &[0.0, 1.0], &s), Err(Error::Clearance(_))));
        let s = FdScheme { stencil_order: 2, ..FdScheme::default() };
        assert!(build_bsa(1, &[3, 2], 8.0).and_then(|op| apply_bsa(&op, &f, &[0.0, 1.0], &s)).is_err());
    }
}
