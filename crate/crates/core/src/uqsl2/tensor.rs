use std::collections::BTreeMap;
use std::fmt;

use crate::qseries::{qint, QScalar};
use crate::{Error, Result};

/// A tensor product `M_{d_n} ⊗ ... ⊗ M_{d_1}`; `dims[i]` is `d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorSpace {
    dims: Vec<usize>,
}

impl TensorSpace {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidArgument(format!("bad tensor dims {dims:?}")));
        }
        Ok(TensorSpace { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// All multi-indices, in lexicographic order of `(l_1, ..., l_n)`.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for &d in &self.dims {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |l| {
                        let mut q = p.clone();
                        q.push(l);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// The K-weight exponent `Σ (d_i - 1 - 2 l_i)` of a basis vector.
    pub fn weight(&self, idx: &[usize]) -> i64 {
        self.dims.iter().zip(idx).map(|(&d, &l)| d as i64 - 1 - 2 * l as i64).sum()
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.dims.len() || idx.iter().zip(&self.dims).any(|(&l, &d)| l >= d) {
            return Err(Error::InvalidArgument(format!("index {idx:?} out of range for {:?}", self.dims)));
        }
        Ok(())
    }
}

/// The generators of the quantum group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E,
    F,
    K,
    Kinv,
}

/// A sparse vector in a [`TensorSpace`], keyed by `(l_1, ..., l_n)`.
#[derive(Clone, PartialEq)]
pub struct TensorVector {
    space: TensorSpace,
    coeffs: BTreeMap<Vec<usize>, QScalar>,
}

impl TensorVector {
    pub fn zero(space: TensorSpace) -> Self {
        TensorVector { space, coeffs: BTreeMap::new() }
    }

    pub fn basis(space: TensorSpace, idx: Vec<usize>) -> Result<Self> {
        space.check_index(&idx)?;
        let mut v = TensorVector::zero(space);
        v.coeffs.insert(idx, QScalar::one());
        Ok(v)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, QScalar)>>(space: TensorSpace, terms: I) -> Result<Self> {
        let mut v = TensorVector::zero(space);
        for (idx, c) in terms {
            v.space.check_index(&idx)?;
            v.add_term(idx, &c);
        }
        Ok(v)
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn dims(&self) -> &[usize] {
        &self.space.dims
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: &[usize]) -> QScalar {
        self.coeffs.get(idx).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &QScalar)> {
        self.coeffs.iter()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    /// Adds `c · e_idx`, dropping the entry if it cancels.
    pub(crate) fn add_term(&mut self, idx: Vec<usize>, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return TensorVector::zero(self.space.clone());
        }
        let coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        TensorVector { space: self.space.clone(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::InvalidArgument(format!(
                "space mismatch {:?} vs {:?}",
                self.space.dims, other.space.dims
            )));
        }
        Ok(())
    }

    /// If `self = c · other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<QScalar> {
        if self.space != other.space || self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        if other.is_zero() {
            return Some(QScalar::zero());
        }
        let (k0, c0) = other.coeffs.iter().next()?;
        let c = self.coeffs.get(k0)? / c0;
        (self == &other.scale(&c)).then_some(c)
    }

    /// Parses the text form produced by `Display`, e.g.
    /// `(q) * e_1⊗e_0 + (-1) * e_0⊗e_1`.
    pub fn parse(space: TensorSpace, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = TensorVector::zero(space);
        if s == "0" {
            return Ok(v);
        }
        let mut rest = s;
        loop {
            rest = rest.trim_start();
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' at {rest:?}")));
            }
            let close = matching_paren(rest).ok_or_else(|| Error::Parse("unbalanced parentheses".into()))?;
            let c = QScalar::parse(&rest[1..close])?;
            rest = rest[close + 1..].trim_start();
            rest = rest.strip_prefix('*').ok_or_else(|| Error::Parse(format!("expected '*' at {rest:?}")))?;
            let end = rest.find('+').unwrap_or(rest.len());
            let mut idx: Vec<usize> = rest[..end]
                .split('⊗')
                .map(|f| {
                    let f = f.trim();
                    let body = f.strip_prefix("e_").ok_or_else(|| Error::Parse(format!("bad factor {f:?}")))?;
                    let body = body.trim_start_matches('{').trim_end_matches('}');
                    body.parse::<usize>().map_err(|e| Error::Parse(format!("bad index {body:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            idx.reverse();
            v.space.check_index(&idx).map_err(|e| Error::Parse(e.to_string()))?;
            v.add_term(idx, &c);
            if end == rest.len() {
                break;
            }
            rest = &rest[end + 1..];
        }
        Ok(v)
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (idx, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) * ")?;
            let factors: Vec<String> = idx
                .iter()
                .rev()
                .map(|&l| if l < 10 { format!("e_{l}") } else { format!("e_{{{l}}}") })
                .collect();
            write!(f, "{}", factors.join("⊗"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.space.dims, self)
    }
}

/// Applies the iterated coproduct of `gen` to `v`.
///
/// `E` on factor `i` carries `K` on all factors `k < i`; `F` on factor `i`
/// carries `K^{-1}` on all factors `k > i`.
pub fn act(gen: Gen, v: &TensorVector) -> TensorVector {
    let dims = v.space.dims.clone();
    let n = dims.len();
    let mut out = TensorVector::zero(v.space.clone());
    for (idx, c) in &v.coeffs {
        let w: Vec<i64> = dims.iter().zip(idx).map(|(&d, &l)| d as i64 - 1 - 2 * l as i64).collect();
        match gen {
            Gen::K | Gen::Kinv => {
                let total: i64 = w.iter().sum();
                let e = if gen == Gen::K { total } else { -total };
                out.add_term(idx.clone(), &(c * &QScalar::q_pow(e)));
            }
            Gen::E => {
                let mut below = 0i64;
                for i in 0..n {
                    let l = idx[i];
                    if l > 0 {
                        let f = &(&qint(l as i64) * &qint((dims[i] - l) as i64)) * &QScalar::q_pow(below);
                        let mut k = idx.clone();
                        k[i] -= 1;
                        out.add_term(k, &(c * &f));
                    }
                    below += w[i];
                }
            }
            Gen::F => {
                let mut above: i64 = w.iter().sum();
                for i in 0..n {
                    above -= w[i];
                    if idx[i] + 1 < dims[i] {
                        let mut k = idx.clone();
                        k[i] += 1;
                        out.add_term(k, &(c * &QScalar::q_pow(-above)));
                    }
                }
            }
        }
    }
    out
}

/// Applies `gen` `times` times.
pub fn act_pow(gen: Gen, v: &TensorVector, times: usize) -> TensorVector {
    (0..times).fold(v.clone(), |acc, _| act(gen, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(d: &[usize]) -> TensorSpace {
        TensorSpace::new(d.to_vec()).unwrap()
    }

    #[test]
    fn single_factor_actions() {
        let e0 = TensorVector::basis(sp(&[2]), vec![0]).unwrap();
        assert_eq!(act(Gen::K, &e0), e0.scale(&QScalar::q_pow(1)));
        assert!(act(Gen::E, &e0).is_zero());
    }

    #[test]
    fn coproduct_of_e() {
        // e_1⊗e_0 has l_2 = 1, l_1 = 0
        let v = TensorVector::basis(sp(&[2, 2]), vec![0, 1]).unwrap();
        let expect = TensorVector::basis(sp(&[2, 2]), vec![0, 0]).unwrap().scale(&QScalar::q_pow(1));
        assert_eq!(act(Gen::E, &v), expect);
    }

    #[test]
    fn text_round_trip() {
        let s = sp(&[2, 3]);
        let v = TensorVector::from_terms(
            s.clone(),
            [(vec![1, 2], QScalar::q_pow(1)), (vec![0, 0], QScalar::parse("(1)/(q^2 + 1)").unwrap())],
        )
        .unwrap();
        let text = v.to_string();
        assert!(text.contains("e_2⊗e_1"));
        assert_eq!(TensorVector::parse(s.clone(), &text).unwrap(), v);
        assert!(TensorVector::parse(s.clone(), "0").unwrap().is_zero());
        assert!(TensorVector::parse(s, "(1) * e_3⊗e_0").is_err());
    }
}
