//! Dense Gaussian elimination over a field.

use crate::scalar::Scalar;

/// Row-reduced echelon form of a dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<S> {
    pub rows: Vec<Vec<S>>,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

/// Reduces `rows` (each of length `ncols`) to reduced row-echelon form.
pub fn rref<S: Scalar>(mut rows: Vec<Vec<S>>, ncols: usize) -> Rref<S> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, found);
        let inv = S::one() / rows[top][col].clone();
        for v in rows[top].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    Rref { rows, pivots, ncols }
}

pub fn rank<S: Scalar>(rows: Vec<Vec<S>>, ncols: usize) -> usize {
    rref(rows, ncols).pivots.len()
}

/// Basis of `{v : A v = 0}`, one vector per free column, each with a 1 in its
/// free column.
pub fn nullspace<S: Scalar>(rows: Vec<Vec<S>>, ncols: usize) -> Vec<Vec<S>> {
    let red = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !red.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (row, &p) in red.rows.iter().zip(&red.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<S: Scalar>(a: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = a.len();
    let rows = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let red = rref(rows, 2 * n);
    if red.pivots.len() < n || red.pivots[n - 1] >= n {
        return None;
    }
    Some(red.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(a.clone(), 3), 2);
        let ns = nullspace(a.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert_eq!(dot, int(0));
        }
    }

    #[test]
    fn empty_system_is_all_free() {
        assert_eq!(nullspace::<Rational>(Vec::new(), 3).len(), 3);
    }

    #[test]
    fn inverse_exact() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(inverse(&[vec![int(3)]]).unwrap(), vec![vec![rat(1, 3)]]);
    }
}
