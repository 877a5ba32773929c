//! Double exponential (tanh-sinh) nodes on `[0, 1]`.
//!
//! Each node carries its distance to both endpoints as separate fractions, so
//! callers never recover a small distance by subtracting nearby coordinates.

use std::f64::consts::FRAC_PI_2;

#[derive(Clone, Debug)]
pub struct DeRule {
    /// Distance of each node from 0.
    pub left: Vec<f64>,
    /// Distance of each node from 1.
    pub right: Vec<f64>,
    /// Trapezoid weights in the original variable.
    pub weight: Vec<f64>,
    /// Whether the node also belongs to the rule with twice the step.
    pub coarse: Vec<bool>,
}

/// Largest `|u|` kept, so that `e^{-2u}` stays far from underflow.
const U_MAX: f64 = 300.0;

impl DeRule {
    /// Nodes `t = k h` for `|t| <= t_max`.
    pub fn new(h: f64, t_max: f64) -> Self {
        let kmax = (t_max / h).ceil() as i64;
        let mut rule = DeRule { left: vec![], right: vec![], weight: vec![], coarse: vec![] };
        for k in -kmax..=kmax {
            let t = k as f64 * h;
            let u = FRAC_PI_2 * t.sinh();
            if u.abs() > U_MAX {
                continue;
            }
            let e = (-2.0 * u.abs()).exp();
            // 1/(1+e^{-2u}) and 1/(1+e^{2u}) without overflow
            let (small, big) = (e / (1.0 + e), 1.0 / (1.0 + e));
            let (left, right) = if u >= 0.0 { (big, small) } else { (small, big) };
            let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
            let w = h * FRAC_PI_2 * t.cosh() * sech2 / 2.0;
            if w == 0.0 || left == 0.0 || right == 0.0 {
                continue;
            }
            rule.left.push(left);
            rule.right.push(right);
            rule.weight.push(w);
            rule.coarse.push(k % 2 == 0);
        }
        rule
    }

    /// A rule resolving endpoint singularities `s^alpha` down to `alpha = alpha_min`.
    pub fn for_exponent(h: f64, alpha_min: f64) -> Self {
        let decay = (1.0 + alpha_min.min(0.0)).max(0.05);
        let u = (21.0 / decay).min(U_MAX);
        let t_max = (u / FRAC_PI_2).asinh().max(3.5);
        DeRule::new(h, t_max)
    }

    pub fn len(&self) -> usize {
        self.weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weight.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_endpoint_singularity() {
        let r = DeRule::for_exponent(1.0 / 16.0, -0.8);
        // ∫_0^1 s^{-0.8} (1-s)^{-0.5} ds = B(0.2, 0.5)
        let v: f64 = (0..r.len()).map(|k| r.weight[k] * r.left[k].powf(-0.8) * r.right[k].powf(-0.5)).sum();
        let exact = beta_02_05();
        assert!((v - exact).abs() < 1e-12 * exact, "{v} {exact}");
    }

    fn beta_02_05() -> f64 {
        use statrs::function::gamma::gamma;
        gamma(0.2) * gamma(0.5) / gamma(0.7)
    }

    #[test]
    fn coarse_subset_is_every_other_node() {
        let r = DeRule::new(0.25, 3.0);
        assert_eq!(r.coarse.iter().filter(|&&c| c).count() * 2 - 1, r.len());
        let full: f64 = r.weight.iter().sum();
        assert!((full - 1.0).abs() < 1e-12);
    }
}
