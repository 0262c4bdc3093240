//! Small dense linear-algebra helpers.
//!
//! Factorizations (SVD, Cholesky) are delegated to nalgebra; everything else
//! in the crate works on ndarray types, so this module also holds the
//! conversions between the two.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{MestError, Result};

pub(crate) fn to_na(a: ArrayView2<'_, f64>) -> nalgebra::DMatrix<f64> {
    let (r, c) = a.dim();
    nalgebra::DMatrix::from_fn(r, c, |i, j| a[[i, j]])
}

pub(crate) fn from_na(m: &nalgebra::DMatrix<f64>) -> Array2<f64> {
    Array2::from_shape_fn((m.nrows(), m.ncols()), |(i, j)| m[(i, j)])
}

/// Singular values of a dense matrix, descending.
pub fn singular_values(a: ArrayView2<'_, f64>) -> Vec<f64> {
    let mut sv: Vec<f64> = to_na(a).singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Thin SVD `A = U diag(s) V^T` with singular values descending.
pub fn svd(a: ArrayView2<'_, f64>) -> (Array2<f64>, Array1<f64>, Array2<f64>) {
    let svd = to_na(a).svd(true, true);
    let u = svd.u.expect("svd requested u");
    let vt = svd.v_t.expect("svd requested v_t");
    let s = svd.singular_values;

    // nalgebra does not guarantee ordering; sort triplets by descending value.
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&i, &j| s[j].partial_cmp(&s[i]).unwrap());

    let ua = from_na(&u);
    let vta = from_na(&vt);
    let mut u_sorted = Array2::zeros(ua.dim());
    let mut vt_sorted = Array2::zeros(vta.dim());
    let mut s_sorted = Array1::zeros(s.len());
    for (new, &old) in order.iter().enumerate() {
        u_sorted.column_mut(new).assign(&ua.column(old));
        vt_sorted.row_mut(new).assign(&vta.row(old));
        s_sorted[new] = s[old];
    }
    (u_sorted, s_sorted, vt_sorted)
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky_lower(a: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
    let chol = nalgebra::Cholesky::new(to_na(a)).ok_or(MestError::NotPositiveDefinite)?;
    Ok(from_na(&chol.l()))
}

/// Solves `A x = b` for symmetric positive definite `A` (test oracles, small systems).
pub fn solve_spd(a: ArrayView2<'_, f64>, b: ArrayView1<'_, f64>) -> Result<Array1<f64>> {
    let chol = nalgebra::Cholesky::new(to_na(a)).ok_or(MestError::NotPositiveDefinite)?;
    let rhs = nalgebra::DVector::from_iterator(b.len(), b.iter().copied());
    let x = chol.solve(&rhs);
    Ok(Array1::from_iter(x.iter().copied()))
}

/// Largest singular value of `A` by power iteration on `A^T A`.
///
/// Deterministic: starts from a fixed dense vector. Accurate to ~1e-10
/// relative for the spectral gaps that arise here; callers that need exact
/// values at degenerate spectra use the SVD directly.
pub fn operator_norm_power(a: ArrayView2<'_, f64>) -> f64 {
    let (n, m) = a.dim();
    if n == 0 || m == 0 {
        return 0.0;
    }
    let mut v = Array1::from_elem(m, 1.0 / (m as f64).sqrt());
    // Deterministic perturbation so we are not orthogonal to the top vector.
    for j in 0..m {
        v[j] += 1e-3 * ((j as f64 * 0.7381).sin());
    }
    let mut sigma = 0.0f64;
    for _ in 0..500 {
        let av = a.dot(&v);
        let atav = a.t().dot(&av);
        let norm = atav.dot(&atav).sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let v_next = atav / norm;
        let sigma_next = a.dot(&v_next).dot(&a.dot(&v_next)).sqrt();
        let done = (sigma_next - sigma).abs() <= 1e-13 * sigma_next.max(1.0);
        v = v_next;
        sigma = sigma_next;
        if done {
            break;
        }
    }
    sigma
}

/// Euclidean projection of `v` onto the l1 ball of the given radius
/// (sort-based, O(m log m)).
pub fn project_l1_ball(v: ArrayView1<'_, f64>, radius: f64) -> Array1<f64> {
    assert!(radius >= 0.0, "l1-ball radius must be nonnegative");
    let l1: f64 = v.iter().map(|x| x.abs()).sum();
    if l1 <= radius {
        return v.to_owned();
    }
    if radius == 0.0 {
        return Array1::zeros(v.len());
    }
    let mut mags: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, &m) in mags.iter().enumerate() {
        cumsum += m;
        let candidate = (cumsum - radius) / (k as f64 + 1.0);
        if m - candidate > 0.0 {
            theta = candidate;
        } else {
            break;
        }
    }
    v.mapv(|x| x.signum() * (x.abs() - theta).max(0.0))
}

/// Reshapes a row-major vector of length `rows*cols` into a matrix view copy.
pub fn vec_as_matrix(v: ArrayView1<'_, f64>, rows: usize, cols: usize) -> Result<Array2<f64>> {
    crate::error::check_dim("matrix reshape", rows * cols, v.len())?;
    Ok(Array2::from_shape_vec((rows, cols), v.to_vec()).expect("shape checked"))
}

/// Flattens a matrix into a row-major vector.
pub fn matrix_as_vec(m: &Array2<f64>) -> Array1<f64> {
    Array1::from_iter(m.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn svd_of_diagonal() {
        let a = array![[2.0, 0.0], [0.0, 3.0]];
        let sv = singular_values(a.view());
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn svd_reconstructs() {
        let a = array![[1.0, 2.0, 0.5], [3.0, 4.0, -1.0]];
        let (u, s, vt) = svd(a.view());
        let mut rec = Array2::zeros((2, 3));
        for k in 0..s.len() {
            for i in 0..2 {
                for j in 0..3 {
                    rec[[i, j]] += s[k] * u[[i, k]] * vt[[k, j]];
                }
            }
        }
        for (x, y) in a.iter().zip(rec.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn power_iteration_matches_svd() {
        let a = array![
            [1.0, 0.3, -0.2],
            [0.5, 2.0, 0.7],
            [0.0, -1.0, 0.4],
            [0.2, 0.1, 0.9]
        ];
        let sv = singular_values(a.view());
        let p = operator_norm_power(a.view());
        assert!((p - sv[0]).abs() < 1e-8 * sv[0]);
    }

    #[test]
    fn l1_projection_properties() {
        let v = array![3.0, -1.0, 0.5, 0.0];
        let p = project_l1_ball(v.view(), 2.0);
        let l1: f64 = p.iter().map(|x| x.abs()).sum();
        assert!((l1 - 2.0).abs() < 1e-12);
        // Inside the ball: identity.
        let q = project_l1_ball(v.view(), 10.0);
        assert_eq!(q, v);
        // Projection is the closest point: compare against a fine grid on a
        // small instance.
        let v2 = array![1.0, 0.6];
        let p2 = project_l1_ball(v2.view(), 1.0);
        let mut best = (f64::INFINITY, (0.0, 0.0));
        let steps = 400;
        for i in 0..=steps {
            for j in 0..=steps {
                let x = -1.2 + 2.4 * i as f64 / steps as f64;
                let y = -1.2 + 2.4 * j as f64 / steps as f64;
                if x.abs() + y.abs() <= 1.0 + 1e-12 {
                    let d = (x - v2[0]).powi(2) + (y - v2[1]).powi(2);
                    if d < best.0 {
                        best = (d, (x, y));
                    }
                }
            }
        }
        assert!((p2[0] - best.1 .0).abs() < 2e-2);
        assert!((p2[1] - best.1 .1).abs() < 2e-2);
    }

    #[test]
    fn cholesky_solve() {
        let a = array![[4.0, 1.0], [1.0, 3.0]];
        let b = array![1.0, 2.0];
        let x = solve_spd(a.view(), b.view()).unwrap();
        let r0 = 4.0 * x[0] + x[1] - 1.0;
        let r1 = x[0] + 3.0 * x[1] - 2.0;
        assert!(r0.abs() < 1e-12 && r1.abs() < 1e-12);
    }
}
