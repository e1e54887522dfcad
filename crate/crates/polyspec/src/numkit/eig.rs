//! Dense nonsymmetric complex eigensolver: Householder reduction to upper
//! Hessenberg form, explicitly shifted QR with Wilkinson shifts and
//! deflation, eigenvectors by inverse iteration on the original matrix.
//! Also hosts the unitary diagonalization of (pairs of commuting) normal
//! matrices built on top of it.

use num_complex::Complex64 as Cplx;

use super::jacobi::eig_hermitian;
use super::lu::solve_floored;
use super::{cluster_indices, vec_dot, vec_norm, Mat, Tolerances};
use crate::{Error, Result};

/// Eigenvalues, unit-norm eigenvector columns and per-pair residuals
/// ||A v_i - lambda_i v_i||_2 / ||A||_F.
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    pub values: Vec<Cplx>,
    pub vectors: Mat,
    pub residuals: Vec<f64>,
}

fn hessenberg(a: &Mat) -> Mat {
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let mut x: Vec<Cplx> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            Cplx::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;
        x[0] -= alpha;
        let vnorm = vec_norm(&x);
        if vnorm == 0.0 {
            continue;
        }
        let v: Vec<Cplx> = x.iter().map(|z| z / vnorm).collect();
        // H <- (I - 2 v v^*) H, acting on rows k+1..n
        for j in 0..n {
            let dot: Cplx = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                let upd = v[i] * dot * 2.0;
                h[(k + 1 + i, j)] -= upd;
            }
        }
        // H <- H (I - 2 v v^*), acting on cols k+1..n
        for i in 0..n {
            let dot: Cplx = (0..v.len()).map(|j| h[(i, k + 1 + j)] * v[j]).sum();
            for j in 0..v.len() {
                let upd = dot * v[j].conj() * 2.0;
                h[(i, k + 1 + j)] -= upd;
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = Cplx::new(0.0, 0.0);
        }
    }
    h
}

fn givens(a: Cplx, b: Cplx) -> (f64, Cplx) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Cplx::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, Cplx::new(1.0, 0.0));
    }
    let r = (an * an + bn * bn).sqrt();
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

fn wilkinson_shift(h: &Mat, lo: usize, hi: usize) -> Cplx {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr2 = (a + d) * 0.5;
    let disc = (tr2 * tr2 - (a * d - b * c)).sqrt();
    let e1 = tr2 + disc;
    let e2 = tr2 - disc;
    let _ = lo;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// One explicit shifted QR sweep on the Hessenberg block lo..=hi.
fn qr_step(h: &mut Mat, lo: usize, hi: usize, shift: Cplx) {
    let m = hi - lo + 1;
    if m < 2 {
        return;
    }
    let mut rotations: Vec<(f64, Cplx)> = Vec::with_capacity(m - 1);
    // left rotations annihilating the subdiagonal of H - shift*I
    let mut x = h[(lo, lo)] - shift;
    for k in lo..hi {
        let y = h[(k + 1, k)];
        let (c, s) = givens(x, y);
        rotations.push((c, s));
        for j in k..=hi {
            let shift_term = |i: usize, jj: usize| -> Cplx {
                if i == jj {
                    h[(i, jj)] - shift
                } else {
                    h[(i, jj)]
                }
            };
            let top = shift_term(k, j);
            let bot = shift_term(k + 1, j);
            let new_top = top * c + bot * s;
            let new_bot = -top * s.conj() + bot * c;
            h[(k, j)] = if k == j { new_top + shift } else { new_top };
            h[(k + 1, j)] = if k + 1 == j { new_bot + shift } else { new_bot };
        }
        x = h[(k + 1, k + 1)] - shift;
    }
    // right multiplication by Q^H = product of G_k^H
    for (k, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + k;
        let top_row = lo;
        for i in top_row..=(k + 1).min(hi) {
            let shift_term = |ii: usize, jj: usize| -> Cplx {
                if ii == jj {
                    h[(ii, jj)] - shift
                } else {
                    h[(ii, jj)]
                }
            };
            let left = shift_term(i, k);
            let right = shift_term(i, k + 1);
            let new_left = left * c + right * s.conj();
            let new_right = -left * s + right * c;
            h[(i, k)] = if i == k { new_left + shift } else { new_left };
            h[(i, k + 1)] = if i == k + 1 { new_right + shift } else { new_right };
        }
    }
}

fn qr_eigenvalues(a: &Mat) -> Result<Vec<Cplx>> {
    let n = a.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut h = hessenberg(a);
    let cap = 100 * n * n;
    let mut total_iters = 0usize;
    let mut hi = n - 1;
    let mut since_deflation = 0usize;
    let mut values = Vec::with_capacity(n);
    loop {
        // deflate tiny subdiagonals
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= f64::EPSILON * (local + scale * 1e-3) {
                h[(lo, lo - 1)] = Cplx::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            values.push(h[(hi, hi)]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        let shift = if since_deflation > 0 && since_deflation % 12 == 0 {
            // exceptional shift to break symmetric stalls
            let t = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + Cplx::new(0.75 * t, 0.1 * t)
        } else {
            wilkinson_shift(&h, lo, hi)
        };
        qr_step(&mut h, lo, hi, shift);
        total_iters += 1;
        since_deflation += 1;
        if total_iters > cap {
            return Err(Error::NoConvergence);
        }
    }
    values.reverse();
    Ok(values)
}

fn inverse_iteration(a: &Mat, lambda: Cplx, start: &[Cplx], steps: usize) -> (Vec<Cplx>, f64) {
    let shifted = a.shift(lambda);
    let norm_a = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut v: Vec<Cplx> = start.to_vec();
    let vn = vec_norm(&v);
    if vn > 0.0 {
        v.iter_mut().for_each(|z| *z /= vn);
    }
    let mut best = v.clone();
    let mut best_res = residual(a, lambda, &v) / norm_a;
    for _ in 0..steps {
        let rhs = Mat::from_columns(&[v.clone()]);
        let w = solve_floored(&shifted, &rhs).column(0);
        let wn = vec_norm(&w);
        if wn == 0.0 || !wn.is_finite() {
            break;
        }
        v = w.iter().map(|z| z / wn).collect();
        let r = residual(a, lambda, &v) / norm_a;
        if r < best_res {
            best_res = r;
            best = v.clone();
        }
    }
    (best, best_res)
}

fn residual(a: &Mat, lambda: Cplx, v: &[Cplx]) -> f64 {
    let av = a.matvec(v);
    av.iter()
        .zip(v)
        .map(|(x, y)| (x - y * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Orthonormal basis candidates for the numerical nullspace of `b`,
/// as the eigenvectors of b^H b with smallest eigenvalues.
fn smallest_singular_vectors(b: &Mat, count: usize) -> Vec<Vec<Cplx>> {
    let gram = b.conj_transpose().matmul(b);
    let (_, vecs) = eig_hermitian(&gram).expect("Gram matrix is Hermitian");
    (0..count.min(b.cols())).map(|j| vecs.column(j)).collect()
}

/// Full eigendecomposition of a square complex matrix.
///
/// Eigenvalues come from shifted QR on the Hessenberg form; eigenvectors are
/// obtained per eigenvalue cluster by inverse iteration on the original
/// matrix, seeded from the small singular vectors of A - lambda I. For a
/// defective cluster the independent directions run out; the remaining
/// columns repeat the converged ones so the residual contract still holds
/// for every column (rank queries, not eigenvectors, decide multiplicity).
pub fn eig_dense(a: &Mat, tol: &Tolerances) -> Result<EigenDecomp> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::Dimension("eig_dense needs a nonempty square matrix".into()));
    }
    let n = a.rows();
    let norm_a = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let values = qr_eigenvalues(a)?;
    let radius = tol.tol_cluster * norm_a.max(1.0);
    let clusters = cluster_indices(&values, radius);
    let mut vectors = Mat::zeros(n, n);
    let mut residuals = vec![0.0; n];
    for members in &clusters {
        let k = members.len();
        let mean: Cplx = members.iter().map(|&i| values[i]).sum::<Cplx>() / (k as f64);
        let seeds: Vec<Vec<Cplx>> = if k == 1 {
            vec![vec![Cplx::new(1.0, 0.0); n]]
        } else {
            smallest_singular_vectors(&a.shift(mean), k)
        };
        let mut refined: Vec<(Vec<Cplx>, f64)> = seeds
            .iter()
            .map(|s| inverse_iteration(a, mean, s, 3))
            .collect();
        // orthonormalize within the cluster; keep directions that remain
        // eigenvectors after projection
        let mut basis: Vec<Vec<Cplx>> = Vec::new();
        refined.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
        for (v, _) in &refined {
            let mut w = v.clone();
            for b in &basis {
                let coeff = vec_dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= coeff * bi;
                }
            }
            let wn = vec_norm(&w);
            if wn < 1e-6 {
                continue;
            }
            w.iter_mut().for_each(|z| *z /= wn);
            if residual(a, mean, &w) / norm_a <= tol.tol_eig {
                basis.push(w);
            }
        }
        if basis.is_empty() {
            basis.push(refined[0].0.clone());
        }
        for (slot, &idx) in members.iter().enumerate() {
            let v = &basis[slot % basis.len()];
            vectors.set_column(idx, v);
            residuals[idx] = residual(a, values[idx], v) / norm_a;
        }
    }
    Ok(EigenDecomp {
        values,
        vectors,
        residuals,
    })
}

/// Unitary diagonalization of a normal matrix: returns (w, d) with
/// w a w^* = diag(d) and w unitary. Columns of w^* are the eigenvectors,
/// grouped by eigenvalue cluster.
pub fn unitary_diagonalize_normal(a: &Mat, tol: &Tolerances) -> Result<(Mat, Vec<Cplx>)> {
    let n = a.rows();
    let scale = a.frobenius_norm().max(1.0);
    if a.commutator_norm_normality() > tol.tol_verify * (scale * scale + 1.0) {
        return Err(Error::NotNormal);
    }
    let decomp = eig_dense(a, tol)?;
    let radius = tol.tol_cluster * a.frobenius_norm().max(1.0);
    let clusters = cluster_indices(&decomp.values, radius);
    let mut columns: Vec<Vec<Cplx>> = Vec::with_capacity(n);
    for members in &clusters {
        let k = members.len();
        let mean: Cplx = members.iter().map(|&i| decomp.values[i]).sum::<Cplx>() / (k as f64);
        let basis = if k == 1 {
            vec![decomp.vectors.column(members[0])]
        } else {
            // seed from the numerical nullspace, then polish each direction;
            // inverse iteration stays inside the eigenspace so the seeds'
            // independence survives
            smallest_singular_vectors(&a.shift(mean), k)
                .iter()
                .map(|s| inverse_iteration(a, mean, s, 2).0)
                .collect()
        };
        columns.extend(basis);
    }
    // for a normal matrix the eigenspaces are orthogonal; one modified
    // Gram-Schmidt pass removes residual coupling
    let mut ortho: Vec<Vec<Cplx>> = Vec::with_capacity(n);
    for mut w in columns {
        for b in &ortho {
            let coeff = vec_dot(b, &w);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= coeff * bi;
            }
        }
        let wn = vec_norm(&w);
        if wn < 1e-8 {
            return Err(Error::NotNormal);
        }
        w.iter_mut().for_each(|z| *z /= wn);
        ortho.push(w);
    }
    let x = Mat::from_columns(&ortho);
    let w = x.conj_transpose();
    let d = w.matmul(a).matmul(&x);
    let diag: Vec<Cplx> = (0..n).map(|i| d[(i, i)]).collect();
    Ok((w, diag))
}

impl Mat {
    fn commutator_norm_normality(&self) -> f64 {
        let ah = self.conj_transpose();
        self.matmul(&ah).sub(&ah.matmul(self)).frobenius_norm()
    }
}

/// Simultaneous unitary diagonalization of a commuting normal pair:
/// w a w^* and w b w^* are diagonal. Diagonalizes `a` first, then the
/// compressed blocks of `b` inside each eigenvalue cluster of `a`.
pub fn simultaneous_diag_commuting_normal(
    a: &Mat,
    b: &Mat,
    tol: &Tolerances,
) -> Result<(Mat, Vec<Cplx>, Vec<Cplx>)> {
    if !a.is_square() || a.rows() != b.rows() || !b.is_square() {
        return Err(Error::Dimension("pair must be square of equal size".into()));
    }
    let n = a.rows();
    let (sa, sb) = (a.frobenius_norm().max(1.0), b.frobenius_norm().max(1.0));
    if a.commutator_norm_normality() > tol.tol_verify * (sa * sa + 1.0)
        || b.commutator_norm_normality() > tol.tol_verify * (sb * sb + 1.0)
    {
        return Err(Error::NotNormal);
    }
    if a.commutator_norm(b) > tol.tol_verify * (sa * sb + 1.0) {
        return Err(Error::NotCommuting);
    }
    let (w1, d_a) = unitary_diagonalize_normal(a, tol)?;
    let x1 = w1.conj_transpose();
    let b1 = w1.matmul(b).matmul(&x1);
    // clusters of a's diagonal are contiguous by construction
    let radius = tol.tol_cluster * a.frobenius_norm().max(1.0);
    let clusters = cluster_indices(&d_a, radius);
    let mut w2 = Mat::identity(n);
    for members in &clusters {
        let k = members.len();
        if k == 1 {
            continue;
        }
        let start = *members.iter().min().unwrap();
        debug_assert!(members.windows(2).all(|p| p[1] == p[0] + 1));
        let block = b1.block(start, start, k, k);
        let (wb, _) = unitary_diagonalize_normal(&block, tol)?;
        w2.set_block(start, start, &wb.conj_transpose());
    }
    let x = x1.matmul(&w2); // columns are the common eigenvectors
    let w = x.conj_transpose();
    let da_m = w.matmul(a).matmul(&x);
    let db_m = w.matmul(b).matmul(&x);
    let d_a: Vec<Cplx> = (0..n).map(|i| da_m[(i, i)]).collect();
    let d_b: Vec<Cplx> = (0..n).map(|i| db_m[(i, i)]).collect();
    Ok((w, d_a, d_b))
}
