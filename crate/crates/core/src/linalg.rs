//! Exact Gaussian elimination over ℚ(i, √2).

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

pub type Matrix = Vec<Vec<ExactScalar>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (0..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let t = &f * &pivot_row[j];
                row[j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r.max(0));
    pivots
}

pub fn rank(rows: &Matrix, ncols: usize) -> usize {
    let mut m = rows.clone();
    rref(&mut m, ncols).len()
}

/// Basis of {x : A x = 0} for A given by rows.
pub fn nullspace(rows: &Matrix, ncols: usize) -> Vec<Vec<ExactScalar>> {
    let mut m: Matrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ExactScalar::zero(); ncols];
            v[f] = ExactScalar::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[pc] = -&row[f];
                }
            }
            v
        })
        .collect()
}

/// Solve the square system A x = b (A given by rows).
pub fn solve(a: &Matrix, b: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::Failed("singular linear system".into()));
    }
    Ok(aug.iter().map(|r| r[n].clone()).collect())
}

/// Coefficients expressing `v` in terms of `basis` (columns), if it lies in their span.
pub fn express_in_span(basis: &[Vec<ExactScalar>], v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let k = basis.len();
    let dim = v.len();
    let mut aug: Matrix = (0..dim)
        .map(|r| {
            let mut row: Vec<ExactScalar> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut coeffs = vec![ExactScalar::zero(); k];
    for (row, &p) in aug.iter().zip(&pivots) {
        coeffs[p] = row[k].clone();
    }
    Some(coeffs)
}

/// Rank of a family of vectors.
pub fn rank_of_vectors(vs: &[Vec<ExactScalar>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&vs.to_vec(), vs[0].len())
}

/// A maximal linearly independent subfamily, preserving order.
pub fn independent_subset(vs: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
    let mut out: Vec<Vec<ExactScalar>> = Vec::new();
    for v in vs {
        let mut cand = out.clone();
        cand.push(v.clone());
        if rank_of_vectors(&cand) == cand.len() {
            out = cand;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = &(&s(1) * &v[0] + &s(2) * &v[1]) + &(&s(3) * &v[2]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_complex_system() {
        let i = ExactScalar::i();
        let a = vec![vec![s(1), i.clone()], vec![-&i, s(2)]];
        let b = vec![s(1), s(0)];
        let x = solve(&a, &b).unwrap();
        // [[1,i],[-i,2]]^{-1} = [[2,-i],[i,1]]
        assert_eq!(x, vec![s(2), i]);
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![s(1), s(0), s(1)], vec![s(0), s(1), s(1)]];
        assert_eq!(express_in_span(&basis, &[s(2), s(3), s(5)]), Some(vec![s(2), s(3)]));
        assert_eq!(express_in_span(&basis, &[s(1), s(0), s(0)]), None);
    }
}
