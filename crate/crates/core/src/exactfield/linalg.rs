//! Exact Gaussian elimination over Q.

use num_traits::Zero;

use super::qpoly::Q;

/// Solves `sum_j x_j * columns[j] = target`. Returns one solution (free
/// variables set to zero) or `None` when `target` is outside the span.
pub fn solve_in_span(columns: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let rows = target.len();
    let cols = columns.len();
    // augmented matrix, row-major
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut().skip(c) {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Rank of a list of vectors of equal length.
pub fn rank(vectors: &[Vec<Q>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let n = first.len();
    let mut m: Vec<Vec<Q>> = vectors.to_vec();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in (r + 1)..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..n {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::qpoly::q;

    #[test]
    fn solves_consistent_system() {
        let cols = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let x = solve_in_span(&cols, &[q(2), q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q(2), q(3)]);
        assert!(solve_in_span(&cols, &[q(2), q(3), q(6)]).is_none());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let v = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]];
        assert_eq!(rank(&v), 2);
        assert_eq!(rank(&v[..2]), 1);
    }
}
