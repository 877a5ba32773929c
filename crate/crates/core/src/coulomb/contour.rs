//! Direct integration over families of nested loops, with the branch of the
//! multivalued integrand tracked by continuation of its logarithm.

use num_complex::Complex64;
use rayon::prelude::*;

use super::de::DeRule;
use super::{check_convergent, pair_prefactor, ChamberPoint, Estimate, ScreeningConfig};
use crate::{Error, Result};

/// A polygonal path of configurations `(w_1, ..., w_ℓ)`: all variables move
/// along straight segments between consecutive vertices.
#[derive(Clone, Debug)]
pub struct ContourPath {
    pub vertices: Vec<Vec<Complex64>>,
    /// Minimum allowed distance from marked points and between variables.
    pub clearance: f64,
}

/// Distance from 0 to the segment `[z0, z1]`.
fn segment_min_abs(z0: Complex64, z1: Complex64) -> f64 {
    let d = z1 - z0;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return z0.norm();
    }
    let t = (-(z0.conj() * d).re / len2).clamp(0.0, 1.0);
    (z0 + d * t).norm()
}

/// Continues the integrand from `start` (its value at the first vertex) to the
/// last vertex, integrating `d log f` exactly on each straight piece.
pub fn branch_continue(c: &ChamberPoint, dims: &[usize], kappa: f64, path: &ContourPath, start: Complex64) -> Result<Complex64> {
    if dims.len() != c.n() {
        return Err(Error::InvalidArgument("dims and points differ in length".into()));
    }
    let ell = path.vertices.first().map_or(0, |v| v.len());
    if path.vertices.iter().any(|v| v.len() != ell) {
        return Err(Error::InvalidArgument("path vertices have different arity".into()));
    }
    let mut dlog = Complex64::new(0.0, 0.0);
    for pair in path.vertices.windows(2) {
        let (p, q) = (&pair[0], &pair[1]);
        for r in 0..ell {
            for (&x, &d) in c.xs.iter().zip(dims) {
                let (z0, z1) = (p[r] - x, q[r] - x);
                if segment_min_abs(z0, z1) < path.clearance {
                    return Err(Error::Clearance(format!("variable {r} passes within clearance of {x}")));
                }
                if d > 1 {
                    dlog += -4.0 * (d as f64 - 1.0) / kappa * (z1 / z0).ln();
                }
            }
            for s in r + 1..ell {
                let (z0, z1) = (p[s] - p[r], q[s] - q[r]);
                if segment_min_abs(z0, z1) < path.clearance {
                    return Err(Error::Clearance(format!("variables {r} and {s} come within clearance")));
                }
                dlog += 8.0 / kappa * (z1 / z0).ln();
            }
        }
    }
    Ok(start * dlog.exp())
}

/// Resolution of the loop-integral oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleSpec {
    /// Inverse tanh-sinh step per polygon side.
    pub nodes_per_unit: usize,
    /// Largest accepted `|I_h - I_{2h}|` relative to `∫|f||dw|`.
    pub tol: f64,
}

impl Default for OracleSpec {
    fn default() -> Self {
        OracleSpec { nodes_per_unit: 32, tol: 1e-6 }
    }
}

/// Nodes along one loop, in path order.
struct Loop {
    pos: Vec<Complex64>,
    /// `dw` weights; zero at polygon vertices.
    wt: Vec<Complex64>,
    coarse: Vec<bool>,
    reference: usize,
}

fn build_loop(vertices: &[Complex64], ref_vertex: usize, rule: &DeRule) -> Loop {
    let mut lp = Loop { pos: vec![], wt: vec![], coarse: vec![], reference: 0 };
    for j in 0..vertices.len() - 1 {
        let (a, b) = (vertices[j], vertices[j + 1]);
        if j > 0 {
            if j == ref_vertex {
                lp.reference = lp.pos.len();
            }
            lp.pos.push(a);
            lp.wt.push(Complex64::new(0.0, 0.0));
            lp.coarse.push(true);
        }
        let last = j + 2 == vertices.len();
        for k in 0..rule.len() {
            // nodes numerically at the anchor would make coincident variables
            if (j == 0 && rule.left[k] < 1e-12) || (last && rule.right[k] < 1e-12) {
                continue;
            }
            lp.pos.push(a + (b - a) * rule.left[k]);
            lp.wt.push((b - a) * rule.weight[k]);
            lp.coarse.push(rule.coarse[k]);
        }
    }
    lp
}

/// Vertices of the loop of a variable in group `i` (1-based) with nesting
/// index `k` among `count` loops, and the index of its reference vertex.
///
/// Groups with larger `i` run deeper below the real axis; within a group,
/// outer loops leave the anchor more steeply and return more shallowly.
fn loop_vertices(full: &[f64], i: usize, k: usize, count: usize) -> Vec<Complex64> {
    let gap = full.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let x0 = full[0];
    let xi = full[i];
    let xh = x0 + (full[1] - x0) / 2.0;
    let side = gap * (k + 1) as f64 / (2.0 * (count + 1) as f64);
    let band = gap * (0.2 + 0.7 * (i - 1) as f64);
    let step = 0.5 * gap / (2.0 * (count + 1) as f64);
    let ret = band + (count - k) as f64 * step;
    let out = band + (count + 1 + k) as f64 * step;
    vec![
        c(x0, 0.0),
        c(xh, -out),
        c(xi + side, -out),
        c(xi + side, 0.0),
        c(xi + side, side),
        c(xi - side, side),
        c(xi - side, -ret),
        c(xh, -ret),
        c(x0, 0.0),
    ]
}

const REF_VERTEX: usize = 3;

/// Loop-integral value with its estimated error and the scale `∫|f||dw|`.
#[derive(Clone, Copy, Debug)]
pub struct OracleValue {
    pub value: Estimate<Complex64>,
    pub scale: f64,
}

/// The loop integral `φ_l` computed directly: variable group `i` runs over
/// nested loops from `x_0` around `x_i`, and the integrand is the branch that
/// is positive when every variable sits where its loop crosses `(x_i, x_{i+1})`.
pub fn contour_phi_oracle(
    c: &ChamberPoint,
    dims: &[usize],
    l: &ScreeningConfig,
    kappa: f64,
    spec: &OracleSpec,
) -> Result<OracleValue> {
    if dims.len() != c.n() || l.0.len() != c.n() {
        return Err(Error::InvalidArgument("dims, points and screening counts differ in length".into()));
    }
    check_convergent(dims, kappa)?;
    let full = c.full();
    let pref = pair_prefactor(&c.xs, dims, kappa);
    let rule = DeRule::new(1.0 / spec.nodes_per_unit as f64, 4.0);
    let mut loops = Vec::new();
    for i in 1..=c.n() {
        for k in 0..l.0[i - 1] {
            loops.push(build_loop(&loop_vertices(&full, i, k, l.0[i - 1]), REF_VERTEX, &rule));
        }
    }
    let ell = loops.len();
    if ell == 0 {
        return Ok(OracleValue { value: Estimate { value: pref.into(), err: 0.0 }, scale: pref });
    }
    let alphas: Vec<(f64, f64)> = c
        .xs
        .iter()
        .zip(dims)
        .filter(|(_, &d)| d > 1)
        .map(|(&x, &d)| (x, -4.0 * (d as f64 - 1.0) / kappa))
        .collect();
    let beta = 8.0 / kappa;

    // single-variable logarithms, continued from the reference node
    let single: Vec<Vec<Complex64>> = loops
        .iter()
        .map(|lp| {
            let f = |w: Complex64| alphas.iter().map(|&(x, a)| a * (w - x).norm().ln()).sum::<f64>();
            let step = |w0: Complex64, w1: Complex64| {
                alphas.iter().map(|&(x, a)| a * ((w1 - x) / (w0 - x)).ln()).sum::<Complex64>()
            };
            sweep(&lp.pos, lp.reference, f(lp.pos[lp.reference]).into(), step)
        })
        .collect();

    // pair logarithms β log(w_s - w_r), continued from both reference nodes
    let mut pairs = vec![vec![Vec::new(); ell]; ell];
    for s in 0..ell {
        for r in 0..s {
            let (lr, ls) = (&loops[r], &loops[s]);
            let wr_ref = lr.pos[lr.reference];
            let z_ref = ls.pos[ls.reference] - wr_ref;
            let column = sweep(&ls.pos, ls.reference, z_ref.ln(), |a, b| ((b - wr_ref) / (a - wr_ref)).ln());
            let table: Vec<Vec<Complex64>> = (0..ls.pos.len())
                .into_par_iter()
                .map(|ks| {
                    let ws = ls.pos[ks];
                    sweep(&lr.pos, lr.reference, column[ks], |a, b| ((ws - b) / (ws - a)).ln())
                        .into_iter()
                        .map(|z| beta * z)
                        .collect()
                })
                .collect();
            pairs[s][r] = table;
        }
    }

    let active: Vec<Vec<usize>> = loops
        .iter()
        .map(|lp| (0..lp.pos.len()).filter(|&k| lp.wt[k] != Complex64::new(0.0, 0.0)).collect())
        .collect();
    let ctx = Ctx { loops: &loops, single: &single, pairs: &pairs, active: &active };
    let parts: Vec<(Complex64, Complex64, f64)> = active[0]
        .par_iter()
        .map(|&k0| {
            let mut idx = vec![0usize; ell];
            idx[0] = k0;
            let lp = &loops[0];
            let cw = if lp.coarse[k0] { 2.0 * lp.wt[k0] } else { 0.0.into() };
            ctx.level(1, &mut idx, single[0][k0], lp.wt[k0], cw)
        })
        .collect();
    let (mut fine, mut coarse, mut scale) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0.0);
    for (f, c, s) in parts {
        fine += f;
        coarse += c;
        scale += s;
    }
    let err = (fine - coarse).norm() * pref;
    let out = OracleValue { value: Estimate { value: fine * pref, err }, scale: scale * pref };
    if !(err <= spec.tol * out.scale) {
        return Err(Error::Quadrature(format!(
            "loop integral not resolved: error {err:.3e} vs scale {:.3e}",
            out.scale
        )));
    }
    Ok(out)
}

struct Ctx<'a> {
    loops: &'a [Loop],
    single: &'a [Vec<Complex64>],
    pairs: &'a [Vec<Vec<Vec<Complex64>>>],
    active: &'a [Vec<usize>],
}

impl Ctx<'_> {
    /// Returns (fine sum, coarse sum, absolute sum) over variables `r..`.
    fn level(&self, r: usize, idx: &mut Vec<usize>, log: Complex64, w: Complex64, cw: Complex64) -> (Complex64, Complex64, f64) {
        if r == self.loops.len() {
            let f = log.exp();
            return (f * w, f * cw, f.norm() * w.norm());
        }
        let lp = &self.loops[r];
        let mut acc = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0.0);
        for &k in &self.active[r] {
            idx[r] = k;
            let mut lg = log + self.single[r][k];
            for s in 0..r {
                lg += self.pairs[r][s][k][idx[s]];
            }
            let cwk = if lp.coarse[k] { cw * 2.0 * lp.wt[k] } else { 0.0.into() };
            let (a, b, c) = self.level(r + 1, idx, lg, w * lp.wt[k], cwk);
            acc.0 += a;
            acc.1 += b;
            acc.2 += c;
        }
        acc
    }
}

/// Continues a logarithm along consecutive nodes in both directions from `start`,
/// adding `step(previous, next)` at each move.
fn sweep(
    pos: &[Complex64],
    start: usize,
    value: Complex64,
    step: impl Fn(Complex64, Complex64) -> Complex64,
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); pos.len()];
    out[start] = value;
    for k in start + 1..pos.len() {
        out[k] = out[k - 1] + step(pos[k - 1], pos[k]);
    }
    for k in (0..start).rev() {
        out[k] = out[k + 1] + step(pos[k + 1], pos[k]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square_around(x: f64, r: f64, start_right: bool) -> Vec<Vec<Complex64>> {
        let pts = [c(x + r, 0.0), c(x + r, r), c(x - r, r), c(x - r, -r), c(x + r, -r), c(x + r, 0.0)];
        let v: Vec<Vec<Complex64>> = pts.iter().map(|&p| vec![p]).collect();
        if start_right {
            v
        } else {
            v.into_iter().rev().collect()
        }
    }

    #[test]
    fn monodromy_of_full_loop() {
        let cp = ChamberPoint::new(-1.0, vec![0.0, 2.0]).unwrap();
        let kappa = 10.0;
        let q = Complex64::from_polar(1.0, 4.0 * PI / kappa);
        let path = ContourPath { vertices: square_around(0.0, 0.5, true), clearance: 0.1 };
        let v = branch_continue(&cp, &[3, 2], kappa, &path, 1.0.into()).unwrap();
        assert!((v - q.powi(-4)).norm() < 1e-12);
        // reversed loop is contractible back onto itself around nothing else
        let contractible = ContourPath {
            vertices: vec![vec![c(0.5, 0.0)], vec![c(0.5, 0.4)], vec![c(1.5, 0.4)], vec![c(1.5, -0.3)], vec![c(0.5, 0.0)]],
            clearance: 0.1,
        };
        let v = branch_continue(&cp, &[3, 2], kappa, &contractible, c(0.3, 0.7)).unwrap();
        assert!((v - c(0.3, 0.7)).norm() < 1e-12);
    }

    #[test]
    fn half_turn_below() {
        let cp = ChamberPoint::new(-1.0, vec![0.0]).unwrap();
        let kappa = 8.0;
        let q = Complex64::from_polar(1.0, 4.0 * PI / kappa);
        let path = ContourPath {
            vertices: vec![vec![c(0.5, 0.0)], vec![c(0.5, -0.5)], vec![c(-0.5, -0.5)], vec![c(-0.5, 0.0)]],
            clearance: 0.1,
        };
        let v = branch_continue(&cp, &[2], kappa, &path, 1.0.into()).unwrap();
        // |w - x|^{-1/2} has the same modulus at both ends
        assert!((v - q).norm() < 1e-12, "{v}");
        let bad = ContourPath { vertices: vec![vec![c(0.5, 0.0)], vec![c(-0.5, 0.0)]], clearance: 0.1 };
        assert!(matches!(branch_continue(&cp, &[2], kappa, &bad, 1.0.into()), Err(Error::Clearance(_))));
    }

    #[test]
    fn single_loop_closed_form() {
        let cp = ChamberPoint::new(0.0, vec![1.0]).unwrap();
        let o = contour_phi_oracle(&cp, &[2], &ScreeningConfig(vec![1]), 8.0, &OracleSpec::default()).unwrap();
        assert!((o.value.value - c(0.0, 4.0)).norm() < 1e-8, "{o:?}");
        let o = contour_phi_oracle(&cp, &[2], &ScreeningConfig(vec![2]), 10.0, &OracleSpec::default()).unwrap();
        assert!(o.value.value.norm() < 1e-8 * o.scale, "{o:?}");
    }
}
