//! Phase-one simplex over `Q` with Bland's rule.

use num_traits::{Signed, Zero};

use crate::linalg::{q, Matrix, Q};

/// Some `y` with `G y >= 1` componentwise, or `None` if no such `y` exists.
/// Deterministic: Bland's rule fixes the pivot sequence.
pub fn strictly_feasible(g: &Matrix) -> Option<Vec<Q>> {
    feasible(g, &vec![q(1); g.rows])
}

/// Some `y` with `G y >= b`, or `None`.
pub fn feasible(g: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(b.len(), g.rows);
    let m = g.rows;
    let k = g.cols;
    if m == 0 {
        return Some(vec![Q::zero(); k]);
    }
    // Columns: y+ (k), y- (k), surplus (m), artificial (m), rhs.
    let ncols = 2 * k + 2 * m;
    let art = 2 * k + m;
    let mut t = vec![vec![Q::zero(); ncols + 1]; m];
    for i in 0..m {
        let sign = if b[i].is_negative() { q(-1) } else { q(1) };
        for j in 0..k {
            t[i][j] = &g.data[i][j] * &sign;
            t[i][k + j] = -&t[i][j];
        }
        t[i][2 * k + i] = -sign;
        t[i][art + i] = q(1);
        t[i][ncols] = b[i].abs();
    }
    let mut basis: Vec<usize> = (art..art + m).collect();
    let mut obj = vec![Q::zero(); ncols + 1];
    for row in &t {
        for j in 0..art {
            obj[j] -= &row[j];
        }
        obj[ncols] -= &row[ncols];
    }

    loop {
        let Some(enter) = (0..ncols).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][ncols] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (p, _) = leave.expect("phase-one objective is bounded");
        let inv = t[p][enter].recip();
        for v in t[p].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (v, pv) in obj.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        basis[p] = enter;
    }

    if !obj[ncols].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &b) in basis.iter().enumerate() {
        x[b] = t[i][ncols].clone();
    }
    Some((0..k).map(|j| &x[j] - &x[k + j]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasible_cone() {
        // y1 - y2 >= 1, y2 >= 1
        let g = Matrix::from_i64(2, 2, &[vec![1, -1], vec![0, 1]]);
        let y = strictly_feasible(&g).unwrap();
        for v in g.apply(&y) {
            assert!(v >= q(1));
        }
    }

    #[test]
    fn infeasible_cone() {
        // y >= 1 and -y >= 1
        let g = Matrix::from_i64(2, 1, &[vec![1], vec![-1]]);
        assert!(strictly_feasible(&g).is_none());
        // x - y > 0, y - x > 0
        let g = Matrix::from_i64(2, 2, &[vec![1, -1], vec![-1, 1]]);
        assert!(strictly_feasible(&g).is_none());
    }

    #[test]
    fn mixed_signs() {
        // y1 >= -2, -y1 >= 1  =>  y1 <= -1
        let g = Matrix::from_i64(2, 1, &[vec![1], vec![-1]]);
        let y = feasible(&g, &[q(-2), q(1)]).unwrap();
        assert!(y[0] >= q(-2) && y[0] <= q(-1));
        assert!(feasible(&g, &[q(0), q(1)]).is_none());
    }

    #[test]
    fn deterministic() {
        let g = Matrix::from_i64(3, 3, &[vec![1, 2, -1], vec![0, 1, 3], vec![2, -1, 1]]);
        assert_eq!(strictly_feasible(&g), strictly_feasible(&g));
    }
}
