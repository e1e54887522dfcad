//! Cyclic Jacobi eigensolver for Hermitian matrices, plus the SVD-derived
//! quantities built on it (singular values, spectral condition number, rank).

use num_complex::Complex64 as Cplx;

use super::{Mat, Tolerances};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 60;

fn off_diagonal_norm(a: &Mat) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues (ascending, real) and a unitary eigenvector matrix of a
/// Hermitian matrix. The input must be Hermitian within 1e-9 * ||a||_F.
pub fn eig_hermitian(a: &Mat) -> Result<(Vec<f64>, Mat)> {
    if !a.is_square() {
        return Err(Error::Dimension("eig_hermitian needs a square matrix".into()));
    }
    let scale = a.frobenius_norm();
    if a.sub(&a.conj_transpose()).frobenius_norm() > 1e-9 * scale.max(1.0) {
        return Err(Error::NotHermitian);
    }
    // work on the Hermitian part so rounding in the input cannot leak through
    let mut h = a.add(&a.conj_transpose()).scale(Cplx::new(0.5, 0.0));
    let n = h.rows();
    let mut v = Mat::identity(n);
    let stop = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&h) <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = h[(p, q)];
                let gn = g.norm();
                if gn <= stop * 1e-2 {
                    continue;
                }
                let u = g / gn;
                let app = h[(p, p)].re;
                let aqq = h[(q, q)].re;
                let tau = (aqq - app) / (2.0 * gn);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let su = u * s;
                // rotation R: R[p][p]=c, R[p][q]=s*u, R[q][p]=-s*conj(u), R[q][q]=c
                // H <- R^* H R, V <- V R
                for i in 0..n {
                    let hip = h[(i, p)];
                    let hiq = h[(i, q)];
                    h[(i, p)] = hip * c - hiq * su.conj();
                    h[(i, q)] = hip * su + hiq * c;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * su.conj();
                    v[(i, q)] = vip * su + viq * c;
                }
                for j in 0..n {
                    let hpj = h[(p, j)];
                    let hqj = h[(q, j)];
                    h[(p, j)] = hpj * c - hqj * su;
                    h[(q, j)] = hpj * su.conj() + hqj * c;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[(i, i)].re.partial_cmp(&h[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| h[(i, i)].re).collect();
    let vectors = Mat::from_columns(&order.iter().map(|&i| v.column(i)).collect::<Vec<_>>());
    Ok((values, vectors))
}

/// Singular values in descending order, by one-sided Jacobi. Unlike the
/// Gram-matrix route this keeps full absolute accuracy for tiny singular
/// values, which rank detection depends on.
pub fn svd_values(a: &Mat) -> Vec<f64> {
    let mut m = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.conj_transpose()
    };
    let (rows, n) = (m.rows(), m.cols());
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut g = Cplx::new(0.0, 0.0);
                for i in 0..rows {
                    app += m[(i, p)].norm_sqr();
                    aqq += m[(i, q)].norm_sqr();
                    g += m[(i, p)].conj() * m[(i, q)];
                }
                let gn = g.norm();
                if gn <= f64::EPSILON * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let u = g / gn;
                let tau = (aqq - app) / (2.0 * gn);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let su = u * s;
                for i in 0..rows {
                    let mp = m[(i, p)];
                    let mq = m[(i, q)];
                    m[(i, p)] = mp * c - mq * su.conj();
                    m[(i, q)] = mp * su + mq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n)
        .map(|j| (0..rows).map(|i| m[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Ratio of largest to smallest singular value.
pub fn spectral_condition(a: &Mat) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Dimension("condition number needs a square matrix".into()));
    }
    let tol = Tolerances::default();
    let sv = svd_values(a);
    let (smax, smin) = (sv[0], sv[sv.len() - 1]);
    if smin <= tol.tol_rank * smax {
        return Err(Error::SingularMatrix);
    }
    Ok(smax / smin)
}

/// Number of singular values above tol_rank * sigma_max.
pub fn rank_tol(a: &Mat, tol: &Tolerances) -> usize {
    let sv = svd_values(a);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol.tol_rank * smax).count()
}
