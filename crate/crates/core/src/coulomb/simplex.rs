//! Nested tanh-sinh quadrature over products of ordered simplices.

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use super::de::DeRule;
use super::{check_convergent, pair_prefactor, ChamberPoint, Estimate, QuadratureSpec, ScreeningConfig};
use crate::qseries::{qfact, KappaParams, QScalar};
use crate::{Error, Result};

/// One screening variable: its interval `(x_{i-1}, x_i)` and whether it is the
/// lowest variable there.
struct Var {
    interval: usize,
    first: bool,
    /// For each marked point `k`: `(exponent, fixed offset, measured from left?)`.
    x_terms: Vec<(f64, f64, bool)>,
}

struct Problem<'a> {
    full: Vec<f64>,
    vars: Vec<Var>,
    beta: f64,
    rule: &'a DeRule,
}

#[derive(Clone, Copy, Default)]
struct State {
    a: f64,
    b: f64,
}

impl Problem<'_> {
    fn new<'r>(c: &ChamberPoint, dims: &[usize], m: &[usize], kappa: f64, rule: &'r DeRule) -> Problem<'r> {
        let full = c.full();
        let n = dims.len();
        let mut vars = Vec::new();
        for i in 1..=n {
            for t in 0..m[i - 1] {
                let mut x_terms = Vec::new();
                for k in 1..=n {
                    let e = -4.0 * (dims[k - 1] as f64 - 1.0) / kappa;
                    if e == 0.0 {
                        continue;
                    }
                    if k < i {
                        x_terms.push((e, full[i - 1] - full[k], true));
                    } else {
                        x_terms.push((e, full[k] - full[i], false));
                    }
                }
                vars.push(Var { interval: i, first: t == 0, x_terms });
            }
        }
        Problem { full, vars, beta: 8.0 / kappa, rule }
    }

    fn level(&self, r: usize, st: &mut Vec<State>, log_acc: f64, coarse: bool) -> f64 {
        if r == self.vars.len() {
            return log_acc.exp();
        }
        let v = &self.vars[r];
        let (len, a0) = if v.first {
            (self.full[v.interval] - self.full[v.interval - 1], 0.0)
        } else {
            (st[r - 1].b, st[r - 1].a)
        };
        let rule = self.rule;
        let mut sum = 0.0;
        for k in 0..rule.len() {
            if coarse && !rule.coarse[k] {
                continue;
            }
            let step = len * rule.left[k];
            let a = a0 + step;
            let b = len * rule.right[k];
            if step == 0.0 || b == 0.0 {
                continue;
            }
            let mut lg = log_acc;
            for &(e, off, from_left) in &v.x_terms {
                lg += e * (off + if from_left { a } else { b }).ln();
            }
            for s in 0..r {
                let vs = &self.vars[s];
                let dist = if vs.interval == v.interval {
                    if s + 1 == r {
                        step
                    } else {
                        a - st[s].a
                    }
                } else {
                    st[s].b + (self.full[v.interval - 1] - self.full[vs.interval]) + a
                };
                lg += self.beta * dist.ln();
            }
            st[r] = State { a, b };
            let w = if coarse { 2.0 * rule.weight[k] } else { rule.weight[k] };
            sum += len * w * self.level(r + 1, st, lg, coarse);
        }
        sum
    }

    fn integrate(&self, coarse: bool) -> f64 {
        if self.vars.is_empty() {
            return 1.0;
        }
        let ell = self.vars.len();
        // split the outermost variable across threads; sum in a fixed order
        let v = &self.vars[0];
        let len = self.full[v.interval] - self.full[v.interval - 1];
        let rule = self.rule;
        let parts: Vec<f64> = (0..rule.len())
            .into_par_iter()
            .map(|k| {
                if coarse && !rule.coarse[k] {
                    return 0.0;
                }
                let a = len * rule.left[k];
                let b = len * rule.right[k];
                if a == 0.0 || b == 0.0 {
                    return 0.0;
                }
                let mut lg = 0.0;
                for &(e, off, from_left) in &v.x_terms {
                    lg += e * (off + if from_left { a } else { b }).ln();
                }
                let mut st = vec![State::default(); ell];
                st[0] = State { a, b };
                let w = if coarse { 2.0 * rule.weight[k] } else { rule.weight[k] };
                len * w * self.level(1, &mut st, lg, coarse)
            })
            .collect();
        parts.iter().sum()
    }
}

fn min_exponent(dims: &[usize], kappa: f64) -> f64 {
    dims.iter().map(|&d| -4.0 * (d as f64 - 1.0) / kappa).fold(0.0, f64::min)
}

/// `ρ_m`: the integral of the real integrand over the ordered simplices with
/// `m_i` variables in `(x_{i-1}, x_i)`.
pub fn rho(c: &ChamberPoint, dims: &[usize], m: &ScreeningConfig, kappa: f64, quad: &QuadratureSpec) -> Result<Estimate<f64>> {
    quad.validate()?;
    if dims.len() != c.n() || m.0.len() != c.n() {
        return Err(Error::InvalidArgument("dims, points and screening counts differ in length".into()));
    }
    check_convergent(dims, kappa)?;
    let pref = pair_prefactor(&c.xs, dims, kappa);
    if m.total() == 0 {
        return Ok(Estimate { value: pref, err: 0.0 });
    }
    let alpha = min_exponent(dims, kappa);
    let mut h = 1.0 / quad.nodes_per_panel as f64;
    let mut subdiv = 0;
    let mut coarse_value: Option<f64> = None;
    loop {
        let rule = DeRule::for_exponent(h, alpha);
        let p = Problem::new(c, dims, &m.0, kappa, &rule);
        let fine = p.integrate(false);
        let coarse = coarse_value.unwrap_or_else(|| p.integrate(true));
        let err = (fine - coarse).abs();
        if !fine.is_finite() {
            return Err(Error::Quadrature(format!("non-finite value for m = {:?}", m.0)));
        }
        if err <= quad.rel_tol * fine.abs() || subdiv >= quad.max_subdivisions {
            return Ok(Estimate { value: pref * fine, err: pref * err });
        }
        subdiv += 1;
        h /= 2.0;
        coarse_value = Some(fine);
    }
}

/// `∏_i q^{-C(m_i,2)} [m_i]!`, relating `ρ̃` to `ρ`.
pub fn tilde_rho_prefactor(m: &ScreeningConfig) -> QScalar {
    m.0.iter()
        .map(|&mi| {
            let mi = mi as i64;
            &QScalar::q_pow(-mi * (mi - 1) / 2) * &qfact(mi).expect("nonnegative")
        })
        .product()
}

/// `ρ̃_m`, defined as the exact q-prefactor times `ρ_m`.
pub fn tilde_rho(
    c: &ChamberPoint,
    dims: &[usize],
    m: &ScreeningConfig,
    kappa: f64,
    quad: &QuadratureSpec,
) -> Result<Estimate<Complex64>> {
    let p = tilde_rho_prefactor(m).eval(&KappaParams::new(kappa)?)?;
    let r = rho(c, dims, m, kappa, quad)?;
    Ok(Estimate { value: p * r.value, err: p.norm() * r.err })
}

/// The constant `B_d^{d1,d2}`: an ordered-simplex integral over `[0, 1]` with
/// `m = (d1 + d2 - 1 - d)/2` variables.
pub fn b_const(d: usize, d1: usize, d2: usize, kappa: f64, quad: &QuadratureSpec) -> Result<Estimate<f64>> {
    let m = crate::uqsl2::summand_index(d1, d2, d)?;
    let c = ChamberPoint::new(-1.0, vec![0.0, 1.0])?;
    rho(&c, &[d1, d2], &ScreeningConfig(vec![0, m]), kappa, quad)
}

fn gamma_checked(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.round() {
        return Err(Error::InvalidArgument(format!("Gamma has a pole at {x}")));
    }
    Ok(gamma(x))
}

/// Closed form of `B` for one screening variable:
/// `Γ(1 - 4(d1-1)/κ) Γ(1 - 4(d2-1)/κ) / Γ(2 - 4(d1+d2-2)/κ)`.
pub fn b1_gamma_ratio(d1: usize, d2: usize, kappa: f64) -> Result<f64> {
    let a = 1.0 - 4.0 * (d1 as f64 - 1.0) / kappa;
    let b = 1.0 - 4.0 * (d2 as f64 - 1.0) / kappa;
    Ok(gamma_checked(a)? * gamma_checked(b)? / gamma_checked(a + b)?)
}

/// Selberg's product formula for
/// `∫_{[0,1]^ℓ} ∏ t^{α-1} (1-t)^{β-1} ∏_{r<s} |t_r - t_s|^{2γ}`.
pub fn selberg_oracle(ell: usize, alpha: f64, beta: f64, gamma_: f64) -> Result<f64> {
    let mut v = 1.0;
    for j in 0..ell {
        let j = j as f64;
        let l = ell as f64;
        v *= gamma_checked(alpha + j * gamma_)? * gamma_checked(beta + j * gamma_)? * gamma_checked(1.0 + (j + 1.0) * gamma_)?
            / (gamma_checked(alpha + beta + (l + j - 1.0) * gamma_)? * gamma_checked(1.0 + gamma_)?);
    }
    Ok(v)
}
