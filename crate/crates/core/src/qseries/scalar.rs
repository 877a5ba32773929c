use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{zpoly, LaurentPoly};
use super::KappaParams;
use crate::{Error, Result};

/// Exact element of `Q(q)`: a reduced ratio of Laurent polynomials.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero,
/// positive constant term; numerator and denominator share no polynomial
/// factor and no integer content. Two equal values are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        QScalar { num: p, den: LaurentPoly::one() }
    }

    /// `num / den`, reduced. Errors on a zero denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = num.low() - den.low();
        let n = num.coeffs().to_vec();
        let d = den.coeffs().to_vec();
        let (mut n, mut d) = if d.len() == 1 {
            (n, d)
        } else {
            let g = zpoly::gcd(&n, &d);
            if g.len() > 1 {
                (zpoly::div_exact(&n, &g), zpoly::div_exact(&d, &g))
            } else {
                (n, d)
            }
        };
        let c = n.iter().chain(d.iter()).fold(BigInt::zero(), |g, x| g.gcd(x));
        let c = if d[0].is_negative() { -c } else { c };
        if !c.is_one() {
            for x in n.iter_mut().chain(d.iter_mut()) {
                *x = &*x / &c;
            }
        }
        QScalar { num: LaurentPoly::from_parts(shift, n), den: LaurentPoly::from_parts(0, d) }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inv().expect("inverse of zero") } else { self.clone() };
        let k = n.unsigned_abs();
        Self::reduce(base.num.pow(k), base.den.pow(k))
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self::reduce(self.num.bar(), self.den.bar())
    }

    /// Evaluates at `q = exp(4πi/κ)`.
    pub fn eval(&self, params: &KappaParams) -> Result<Complex64> {
        self.eval_at(params.q, params.kappa)
    }

    /// Evaluates at an arbitrary complex `q`; `kappa` is used for diagnostics.
    pub fn eval_at(&self, q: Complex64, kappa: f64) -> Result<Complex64> {
        let n = self.num.eval(q);
        if self.den.is_one() {
            return Ok(n);
        }
        let d = self.den.eval(q);
        let scale = self.den.abs_sum() * q.norm().max(1.0).powi(self.den.high() as i32);
        if d.norm() < 1e-12 * scale {
            return Err(Error::NonGenericKappa { kappa });
        }
        Ok(n / d)
    }

    /// Parses the form produced by `Display`: a Laurent polynomial, or
    /// `(p)/(r)` with Laurent polynomials `p`, `r`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let close = matching_paren(rest).ok_or_else(|| Error::Parse(format!("unbalanced '{s}'")))?;
            let num = parse_laurent(&rest[..close])?;
            let tail = rest[close + 1..].trim();
            if tail.is_empty() {
                return Ok(Self::from_poly(num));
            }
            let den_src = tail
                .strip_prefix('/')
                .ok_or_else(|| Error::Parse(format!("expected '/' in '{s}'")))?
                .trim();
            let den_src = den_src
                .strip_prefix('(')
                .and_then(|d| d.strip_suffix(')'))
                .unwrap_or(den_src);
            return Self::new(num, parse_laurent(den_src)?);
        }
        Ok(Self::from_poly(parse_laurent(s)?))
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(k);
                }
            }
            _ => {}
        }
    }
    None
}

/// Parses `c*q^e` terms joined by `+`/`-`, e.g. `q^2 - 3*q^-1 + 5`.
pub fn parse_laurent(s: &str) -> Result<LaurentPoly> {
    let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = src.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    let mut k = 1;
    while k <= bytes.len() {
        let at_end = k == bytes.len();
        let split = !at_end && (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^';
        if at_end || split {
            terms.push(parse_term(&src[start..k])?);
            start = k;
        }
        k += 1;
    }
    Ok(LaurentPoly::from_terms(terms))
}

fn parse_term(t: &str) -> Result<(i64, BigInt)> {
    let bad = || Error::Parse(format!("bad term '{t}'"));
    let (sign, body) = match t.as_bytes().first() {
        Some(b'-') => (-1, &t[1..]),
        Some(b'+') => (1, &t[1..]),
        _ => (1, t),
    };
    let (coef, qpart) = match body.find('q') {
        None => (body, ""),
        Some(p) => {
            let c = body[..p].trim_end_matches('*');
            (c, &body[p..])
        }
    };
    let c: BigInt = if coef.is_empty() { BigInt::one() } else { coef.parse().map_err(|_| bad())? };
    let e: i64 = if qpart.is_empty() {
        0
    } else if qpart == "q" {
        1
    } else {
        qpart.strip_prefix("q^").ok_or_else(bad)?.parse().map_err(|_| bad())?
    };
    Ok((e, c * sign))
}

impl From<LaurentPoly> for QScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QScalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        QScalar::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar::from_poly(&self.num * &rhs.num);
        }
        QScalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        assert!(!rhs.is_zero(), "division by zero QScalar");
        QScalar::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for QScalar {
    fn product<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::one(), |a, b| &a * &b)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q_pow(1)
    }

    #[test]
    fn reduction_is_canonical() {
        let a = &(&q() * &q()) - &QScalar::one();
        let b = &q() - &QScalar::one();
        let r = &a / &b;
        assert_eq!(r, &q() + &QScalar::one());
        assert!(r.is_laurent());
        let s = &QScalar::one() / &(&QScalar::from_int(-2) * &q());
        assert_eq!(s.to_string(), "(-q^-1)/(2)");
        assert!(s.denominator().coeffs()[0] > BigInt::zero());
    }

    #[test]
    fn parse_round_trip() {
        let x = &(&q() + &QScalar::from_int(3)) / &(&q().pow(2) - &QScalar::q_pow(-1));
        let y = QScalar::parse(&x.to_string()).unwrap();
        assert_eq!(x, y);
        let z = QScalar::parse("q^4 + q^2 + 2 + q^-2 + q^-4").unwrap();
        assert_eq!(z.to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
        assert_eq!(QScalar::parse("-3*q^-1").unwrap(), &QScalar::from_int(-3) * &QScalar::q_pow(-1));
    }

    #[test]
    fn eval_detects_root_of_unity() {
        let kp = KappaParams::new(8.0).unwrap();
        let den = &q().pow(2) + &QScalar::one();
        let bad = &QScalar::one() / &den;
        assert!(matches!(bad.eval(&kp), Err(Error::NonGenericKappa { .. })));
    }
}
