//! Small dense matrix helpers over the exact scalar field.

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = Scalar::one();
    }
    m
}

pub fn matmul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![Scalar::zero(); p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&aik.mul(&b[k][j]));
            }
        }
    }
    out
}

pub fn mat_vec(a: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            let mut acc = Scalar::zero();
            for (x, y) in row.iter().zip(v) {
                acc = acc.add(&x.mul(y));
            }
            acc
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` for singular input.
pub fn invert(a: &[Vec<Scalar>]) -> Option<Matrix> {
    let n = a.len();
    let mut work: Matrix = a.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pinv = work[col][col].inverse().unwrap();
        for j in 0..n {
            work[col][j] = work[col][j].mul(&pinv);
            inv[col][j] = inv[col][j].mul(&pinv);
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let f = work[r][col].clone();
            for j in 0..n {
                work[r][j] = work[r][j].sub(&f.mul(&work[col][j]));
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Some(inv)
}

/// Solves `a x = rhs` for square `a`; `None` when singular.
pub fn solve(a: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let inv = invert(a)?;
    Some(mat_vec(&inv, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_round_trip() {
        let a = vec![
            vec![Scalar::from_int(2), Scalar::i()],
            vec![Scalar::zero(), Scalar::from_ratio(1, 3)],
        ];
        let inv = invert(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(2));
        let singular = vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), Scalar::one()],
        ];
        assert!(invert(&singular).is_none());
    }
}
