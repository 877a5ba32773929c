//! Exact dense linear algebra over `QScalar`.

use crate::qseries::QScalar;
use crate::{Error, Result};

pub type Matrix = Vec<Vec<QScalar>>;

/// Reduces `a` in place to reduced row echelon form and returns the pivot columns.
pub fn rref(a: &mut Matrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..cols {
                if !a[r][k].is_zero() {
                    let t = &f * &a[r][k];
                    a[i][k] = &a[i][k] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space of `a` (`cols` columns), one vector per free column.
pub fn nullspace(a: &Matrix, cols: usize) -> Vec<Vec<QScalar>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![QScalar::zero(); cols];
        x[f] = QScalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -&m[i][f];
        }
        out.push(x);
    }
    out
}

/// Inverse of a square matrix.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|k| if k == i { QScalar::one() } else { QScalar::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Invariant("singular matrix".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: i64) -> QScalar {
        QScalar::from_int(c)
    }

    #[test]
    fn inverse_round_trip() {
        let q = QScalar::q_pow(1);
        let a = vec![vec![q.clone(), s(1)], vec![s(1), q.clone()]];
        let inv = inverse(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e: QScalar = (0..2).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(e, if i == j { s(1) } else { s(0) });
            }
        }
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for x in ns {
            let r: QScalar = (0..3).map(|k| &a[0][k] * &x[k]).sum();
            assert!(r.is_zero());
        }
    }
}
