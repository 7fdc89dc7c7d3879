//! Dense rational matrices with plain Gauss-Jordan elimination.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Row = Vec<BigRational>;

/// Reduced row echelon form of the given rows; returns the pivot columns.
pub fn rref(rows: &mut Vec<Row>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = BigRational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of the span of `vectors`, each of length `ncols`.
pub fn rank(vectors: &[Row], ncols: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows, ncols).len()
}

/// `matrix` has `nrows` rows of length `ncols`; returns a basis of its null space.
pub fn null_space(matrix: &[Row], ncols: usize) -> Vec<Row> {
    let mut rows = matrix.to_vec();
    let pivots = rref(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// `A v` for `A` given by rows.
pub fn apply(matrix: &[Row], v: &[BigRational]) -> Row {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Matrix (as rows) whose columns are `cols`, each of length `nrows`.
pub fn from_columns(cols: &[Row], nrows: usize) -> Vec<Row> {
    (0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Row {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[0, 1, 1])];
        assert_eq!(rank(&m, 3), 2);
        let k = null_space(&m, 3);
        assert_eq!(k.len(), 1);
        assert!(apply(&m, &k[0]).iter().all(|x| x.is_zero()));
    }
}
