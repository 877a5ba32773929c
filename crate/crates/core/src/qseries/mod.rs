//! Exact arithmetic in the deformation variable `q`: Laurent polynomials,
//! their fractions, and the q-integers, factorials and binomials.

pub mod identities;
mod laurent;
mod scalar;

use num_complex::Complex64;

pub use laurent::LaurentPoly;
pub use scalar::{parse_laurent, QScalar};

use crate::{Error, Result};

/// The deformation parameter κ and the derived numeric `q = exp(4πi/κ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaParams {
    pub kappa: f64,
    pub q: Complex64,
}

impl KappaParams {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidArgument(format!("kappa must be positive, got {kappa}")));
        }
        let theta = 4.0 * std::f64::consts::PI / kappa;
        Ok(KappaParams { kappa, q: Complex64::from_polar(1.0, theta) })
    }
}

/// `[m] = (q^m - q^{-m}) / (q - q^{-1})`, a Laurent polynomial for every integer `m`.
pub fn qint(m: i64) -> QScalar {
    if m < 0 {
        return -qint(-m);
    }
    let terms = (0..m).map(|k| (m - 1 - 2 * k, 1.into()));
    QScalar::from_poly(LaurentPoly::from_terms(terms))
}

/// `[n]! = [1][2]...[n]`.
pub fn qfact(n: i64) -> Result<QScalar> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("qfact of negative {n}")));
    }
    Ok((1..=n).map(qint).product())
}

/// `[n choose k]`, computed by exact division of q-factorials.
pub fn qbinom(n: i64, k: i64) -> Result<QScalar> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::InvalidArgument(format!("qbinom({n},{k}) out of range")));
    }
    Ok(&qfact(n)? / &(&qfact(k)? * &qfact(n - k)?))
}

/// `[total; parts...] = [total]! / prod [part]!`.
pub fn qmultinom(total: i64, parts: &[i64]) -> Result<QScalar> {
    if parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != total {
        return Err(Error::InvalidArgument(format!("parts {parts:?} do not sum to {total}")));
    }
    let den: QScalar = parts.iter().map(|&p| qfact(p)).collect::<Result<Vec<_>>>()?.into_iter().product();
    Ok(&qfact(total)? / &den)
}

/// `q - q^{-1}`.
pub fn qdiff() -> QScalar {
    &QScalar::q_pow(1) - &QScalar::q_pow(-1)
}

/// Numeric evaluation at `q = exp(4πi/κ)`.
pub fn eval_q(s: &QScalar, params: &KappaParams) -> Result<Complex64> {
    s.eval(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_numbers() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(2).to_string(), "q + q^-1");
        assert_eq!(qint(-1), QScalar::from_int(-1));
        assert_eq!(qfact(0).unwrap(), QScalar::one());
        assert!(qfact(-1).is_err());
        assert_eq!(qbinom(4, 2).unwrap().to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
        assert!(qbinom(3, 4).is_err());
        assert_eq!(qmultinom(3, &[1, 1, 1]).unwrap(), qfact(3).unwrap());
        assert!(qmultinom(3, &[1, 1]).is_err());
    }

    #[test]
    fn kappa_eight_gives_i() {
        let kp = KappaParams::new(8.0).unwrap();
        assert!((kp.q - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((eval_q(&qdiff(), &kp).unwrap() - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert!(eval_q(&qint(2), &kp).unwrap().norm() < 1e-15);
        assert!(KappaParams::new(-1.0).is_err());
    }
}
