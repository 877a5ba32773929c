//! Vector specifications accepted on the command line.
//!
//! - `basis:l_1,...,l_n` is the basis vector with `l_i` at point `i`;
//! - `hwv-pair:m` is the highest weight vector of `M_{d_2} ⊗ M_{d_1}` with `m` screenings;
//! - `hwv:d:k` is the `k`-th normalized highest weight vector of dimension `d`;
//! - `trivial:k` is `hwv:1:k`;
//! - anything else is read in the text form `(c) * e_1⊗e_0 + ...`.

use qcg::uqsl2::{hwv_pair, hwv_space_basis, TensorSpace, TensorVector};

pub fn parse_vector(spec: &str, dims: &[usize]) -> Result<TensorVector, String> {
    let space = TensorSpace::new(dims.to_vec()).map_err(|e| e.to_string())?;
    let err = |e: qcg::Error| e.to_string();
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad integer '{s}' in vector '{spec}'"));
    if let Some(rest) = spec.strip_prefix("basis:") {
        let l = rest.split(',').map(int).collect::<Result<Vec<_>, _>>()?;
        return TensorVector::basis(space, l).map_err(err);
    }
    if let Some(rest) = spec.strip_prefix("hwv-pair:") {
        if dims.len() != 2 {
            return Err("hwv-pair needs exactly two dims".into());
        }
        return hwv_pair(dims[0], dims[1], int(rest)?).map_err(err);
    }
    let pick = |d: usize, k: usize| -> Result<TensorVector, String> {
        let basis = hwv_space_basis(&space, d).map_err(err)?;
        let n = basis.len();
        basis.into_iter().nth(k).ok_or_else(|| format!("only {n} highest weight vectors of dimension {d}"))
    };
    if let Some(rest) = spec.strip_prefix("hwv:") {
        let (d, k) = rest.split_once(':').ok_or_else(|| format!("expected hwv:d:k, got '{spec}'"))?;
        return pick(int(d)?, int(k)?);
    }
    if let Some(rest) = spec.strip_prefix("trivial:") {
        return pick(1, int(rest)?);
    }
    TensorVector::parse(space, spec).map_err(err)
}
