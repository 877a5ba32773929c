use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Laurent polynomial in `q` with arbitrary-precision integer coefficients.
///
/// Stored densely: `coeffs[k]` multiplies `q^(low + k)`. The zero polynomial
/// has no coefficients; otherwise the first and last stored coefficients are
/// nonzero, so structural equality is coefficient-wise equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        Self::from_parts(e, vec![c])
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    /// Builds from a lowest exponent and ascending coefficients, trimming zeros.
    pub fn from_parts(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_parts(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True when the polynomial is `c * q^e` for a single term.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let k = e - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        LaurentPoly { low: -self.high(), coeffs: c }
    }

    /// Substitutes `q -> q^k` for `k > 0`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k > 0, "dilation factor must be positive");
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Gcd of the integer coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact_int(&self, c: &BigInt) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, q: Complex64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * q + big_to_f64(c);
        }
        acc * q.powi(self.low as i32)
    }

    /// Sum of absolute values of the coefficients, as a float.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| big_to_f64(c).abs()).sum()
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.high().max(rhs.high());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - lo) as usize + k] += c;
        }
        LaurentPoly::from_parts(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_parts(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let terms: Vec<(i64, &BigInt)> = self.terms().collect();
        for (e, c) in terms.into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write_qpow(f, e)?,
                (_, false) => {
                    write!(f, "{mag}*")?;
                    write_qpow(f, e)?;
                }
            }
        }
        Ok(())
    }
}

fn write_qpow(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    if e == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{e}")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Ascending-coefficient polynomial helpers over `Z[q]` used for gcd reduction.
pub(crate) mod zpoly {
    use super::*;

    fn trim(p: &mut Vec<BigInt>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    fn content(p: &[BigInt]) -> BigInt {
        p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive(p: &[BigInt]) -> Vec<BigInt> {
        let c = content(p);
        if c.is_zero() || c.is_one() {
            return p.to_vec();
        }
        p.iter().map(|x| x / &c).collect()
    }

    /// Pseudo-remainder of `a` by `b` (`b` nonzero).
    fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = &b[db];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (k, bc) in b.iter().enumerate() {
                r[dr - db + k] -= &lr * bc;
            }
            trim(&mut r);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        if x.is_empty() {
            return normalize_sign(primitive(&y));
        }
        if y.is_empty() {
            return normalize_sign(primitive(&x));
        }
        let cg = content(&x).gcd(&content(&y));
        x = primitive(&x);
        y = primitive(&y);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            if y.len() == 1 {
                return vec![cg];
            }
            let r = prem(&x, &y);
            x = y;
            y = primitive(&r);
        }
        let g = normalize_sign(x);
        g.iter().map(|c| c * &cg).collect()
    }

    fn normalize_sign(p: Vec<BigInt>) -> Vec<BigInt> {
        if p.last().is_some_and(|c| c.is_negative()) {
            p.into_iter().map(|c| -c).collect()
        } else {
            p
        }
    }

    /// Exact quotient `a / b`; panics if the division leaves a remainder.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            assert!(r.is_empty(), "inexact polynomial division");
            return vec![];
        }
        let mut quot = vec![BigInt::zero(); r.len() - db];
        let lb = &b[db];
        while r.len() > db {
            let dr = r.len() - 1;
            let (qc, rem) = r[dr].div_rem(lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (k, bc) in b.iter().enumerate() {
                r[dr - db + k] -= &qc * bc;
            }
            quot[dr - db] = qc;
            trim(&mut r);
        }
        assert!(r.is_empty(), "inexact polynomial division");
        quot
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn canonical_trim() {
        let p = LaurentPoly::from_parts(-2, vec![0.into(), 1.into(), 0.into()]);
        assert_eq!(p, LaurentPoly::q_pow(-1));
        assert!(lp(&[(3, 1), (3, -1)]).is_zero());
    }

    #[test]
    fn product_and_display() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = &a * &a;
        assert_eq!(b, lp(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(b.to_string(), "q^2 + 2 + q^-2");
        assert_eq!(lp(&[(1, -3), (0, 1)]).to_string(), "-3*q + 1");
    }

    #[test]
    fn bar_reverses_exponents() {
        let a = lp(&[(3, 2), (-1, 5)]);
        assert_eq!(a.bar(), lp(&[(-3, 2), (1, 5)]));
    }

    #[test]
    fn gcd_of_products() {
        let x = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        // (1 + q)(2 - q) and (1 + q)(3 + q^2)
        let a = x(&[2, 1, -1]);
        let b = x(&[3, 3, 1, 1]);
        assert_eq!(zpoly::gcd(&a, &b), x(&[1, 1]));
        assert_eq!(zpoly::div_exact(&b, &x(&[1, 1])), x(&[3, 0, 1]));
    }

    #[test]
    fn eval_at_i() {
        let q = Complex64::new(0.0, 1.0);
        let v = lp(&[(1, 1), (-1, 1)]).eval(q);
        assert!(v.norm() < 1e-15);
        let v = lp(&[(1, 1), (-1, -1)]).eval(q);
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-15);
    }
}
