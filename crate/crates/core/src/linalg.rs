//! Dense Gaussian elimination, generic over the float type.

#![allow(clippy::needless_range_loop)]

use num_traits::Float;

/// Numerical rank with partial pivoting. A pivot counts when its magnitude
/// exceeds `rel_tol` times the largest entry of the input.
pub fn rank<T: Float>(mut m: Vec<Vec<T>>, rel_tol: T) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let scale = m.iter().flatten().fold(T::zero(), |acc, &x| acc.max(x.abs()));
    if scale == T::zero() {
        return 0;
    }
    let tol = scale * rel_tol;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (p, best) = (r..rows).map(|i| (i, m[i][c].abs())).fold((r, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= tol {
            continue;
        }
        m.swap(r, p);
        for i in r + 1..rows {
            let f = m[i][c] / m[r][c];
            if f == T::zero() {
                continue;
            }
            for k in c..cols {
                let t = m[r][k];
                m[i][k] = m[i][k] - f * t;
            }
        }
        r += 1;
    }
    r
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve<T: Float>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap_or(std::cmp::Ordering::Equal))?;
        if !a[p][c].is_normal() {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            if f == T::zero() {
                continue;
            }
            for k in c..n {
                let t = a[c][k];
                a[i][k] = a[i][k] - f * t;
            }
            let t = b[c];
            b[i] = b[i] - f * t;
        }
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s = s - a[i][k] * x[k];
        }
        x[i] = s / a[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(vec![vec![1.0f64, 2.0], vec![2.0, 4.0]], 1e-8), 1);
        assert_eq!(rank(vec![vec![1.0f64, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]], 1e-8), 2);
        assert_eq!(rank(vec![vec![0.0f32; 3]; 2], 1e-6), 0);
    }

    #[test]
    fn solves_systems() {
        let x = solve(vec![vec![2.0f64, 1.0], vec![1.0, 3.0]], vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve(vec![vec![1.0f64, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
        let y = solve(vec![vec![4.0f32]], vec![2.0]).unwrap();
        assert_eq!(y, vec![0.5]);
    }
}
