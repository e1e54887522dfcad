//! LU factorization with partial pivoting for complex matrices.

use num_complex::Complex64 as Cplx;

use super::Mat;
use crate::{Error, Result};

struct Lu {
    lu: Mat,
    perm: Vec<usize>,
    sign_swaps: usize,
}

/// Factors `a` in place. `pivot_floor` replaces exactly-collapsed pivots so
/// that inverse iteration can solve against nearly singular shifts; pass 0.0
/// to reject singular input instead.
fn factor(a: &Mat, pivot_floor: f64) -> Result<Lu> {
    assert!(a.is_square());
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0usize;
    let scale = a.max_abs().max(1.0);
    for k in 0..n {
        let (mut p, mut best) = (k, lu[(k, k)].norm());
        for i in (k + 1)..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            perm.swap(k, p);
            swaps += 1;
        }
        if best <= f64::EPSILON * scale * (n as f64) {
            if pivot_floor > 0.0 {
                lu[(k, k)] = Cplx::new(pivot_floor * scale, 0.0);
            } else {
                return Err(Error::SingularMatrix);
            }
        }
        let pivot = lu[(k, k)];
        for i in (k + 1)..n {
            let m = lu[(i, k)] / pivot;
            lu[(i, k)] = m;
            for j in (k + 1)..n {
                let sub = m * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
        }
    }
    Ok(Lu {
        lu,
        perm,
        sign_swaps: swaps,
    })
}

fn back_substitute(f: &Lu, b: &Mat) -> Mat {
    let n = f.lu.rows();
    let m = b.cols();
    let mut x = Mat::zeros(n, m);
    for c in 0..m {
        // forward: Ly = Pb
        let mut y = vec![Cplx::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = b[(f.perm[i], c)];
            for j in 0..i {
                s -= f.lu[(i, j)] * y[j];
            }
            y[i] = s;
        }
        // backward: Ux = y
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in (i + 1)..n {
                s -= f.lu[(i, j)] * x[(j, c)];
            }
            x[(i, c)] = s / f.lu[(i, i)];
        }
    }
    x
}

/// Solves a x = b by partial-pivoted elimination.
pub fn solve(a: &Mat, b: &Mat) -> Result<Mat> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(Error::Dimension("solve shape mismatch".into()));
    }
    let f = factor(a, 0.0)?;
    Ok(back_substitute(&f, b))
}

/// Like `solve`, but floors collapsed pivots instead of failing. Used by
/// inverse iteration where (A - lambda I) is singular by design.
pub(crate) fn solve_floored(a: &Mat, b: &Mat) -> Mat {
    let f = factor(a, f64::EPSILON).expect("floored factorization cannot fail");
    back_substitute(&f, b)
}

pub fn inverse(a: &Mat) -> Result<Mat> {
    solve(a, &Mat::identity(a.rows()))
}

pub fn determinant(a: &Mat) -> Result<Cplx> {
    assert!(a.is_square());
    let f = match factor(a, 0.0) {
        Ok(f) => f,
        Err(Error::SingularMatrix) => return Ok(Cplx::new(0.0, 0.0)),
        Err(e) => return Err(e),
    };
    let mut det = if f.sign_swaps % 2 == 0 {
        Cplx::new(1.0, 0.0)
    } else {
        Cplx::new(-1.0, 0.0)
    };
    for i in 0..a.rows() {
        det *= f.lu[(i, i)];
    }
    Ok(det)
}
