//! Small dense linear algebra over `F_q`.

use crate::field::{Elem, FieldSpec};

pub type Vector = Vec<Elem>;
pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(f: &FieldSpec, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c];
                for j in 0..cols {
                    let t = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &FieldSpec, m: &Matrix) -> usize {
    let mut m = m.clone();
    row_reduce(f, &mut m).len()
}

/// Basis of `{x : m x = 0}`, where `m` has `cols` columns.
pub fn kernel(f: &FieldSpec, m: &Matrix, cols: usize) -> Vec<Vector> {
    let mut m = m.clone();
    let pivots = row_reduce(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; cols];
            v[fc] = Elem::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[row][fc]);
            }
            v
        })
        .collect()
}

/// Dimension of the span of `vectors`.
pub fn span_dim(f: &FieldSpec, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(f, &vectors.to_vec())
}

/// Standard basis vectors completing `basis` (assumed independent) to a basis
/// of `F_q^dim`, chosen greedily in index order.
pub fn complement(f: &FieldSpec, basis: &[Vector], dim: usize) -> Vec<Vector> {
    let mut current: Vec<Vector> = basis.to_vec();
    let mut added = Vec::new();
    for i in 0..dim {
        if current.len() == dim {
            break;
        }
        let mut e = vec![Elem::ZERO; dim];
        e[i] = Elem::ONE;
        current.push(e.clone());
        if span_dim(f, &current) == current.len() {
            added.push(e);
        } else {
            current.pop();
        }
    }
    added
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(f: &FieldSpec, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }));
            r
        })
        .collect();
    let pivots = row_reduce(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(f: &FieldSpec, m: &Matrix, v: &[Elem]) -> Vector {
    m.iter().map(|row| f.dot(row, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn kernel_of_rank_one() {
        let f = make_field(3, 1).unwrap();
        let m = vec![vec![Elem::ONE, f.from_int(2), Elem::ZERO]];
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&f, &m, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = make_field(5, 1).unwrap();
        let m = vec![
            vec![f.from_int(1), f.from_int(2)],
            vec![f.from_int(3), f.from_int(4)],
        ];
        let inv = inverse(&f, &m).unwrap();
        for i in 0..2 {
            let col: Vec<Elem> = (0..2).map(|k| inv[k][i]).collect();
            let e = mat_vec(&f, &m, &col);
            for (j, x) in e.iter().enumerate() {
                assert_eq!(*x, if i == j { Elem::ONE } else { Elem::ZERO });
            }
        }
        let singular = vec![vec![Elem::ONE, Elem::ONE], vec![Elem::ONE, Elem::ONE]];
        assert!(inverse(&f, &singular).is_none());
    }

    #[test]
    fn complement_completes_basis() {
        let f = make_field(2, 1).unwrap();
        let b = vec![vec![Elem::ONE, Elem::ONE, Elem::ZERO]];
        let c = complement(&f, &b, 3);
        assert_eq!(c.len(), 2);
        let mut all = b.clone();
        all.extend(c);
        assert_eq!(span_dim(&f, &all), 3);
    }
}
