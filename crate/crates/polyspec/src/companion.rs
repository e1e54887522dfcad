//! Block companion construction, eigenvector lifting, solvent verification,
//! block Vandermonde assembly, constructive diagonalization for commuting
//! unitary quadratics, and general diagonalizability testing.

use num_complex::Complex64 as Cplx;

use crate::matpoly::{classify, CoefficientClass, MatrixPolynomial};
use crate::numkit::{self, cluster_indices, Mat, Tolerances};
use crate::{Error, Result};

/// The mn x mn block companion linearization of a monic matrix polynomial.
#[derive(Debug, Clone)]
pub struct CompanionMatrix {
    inner: Mat,
    n: usize,
    m: usize,
}

impl CompanionMatrix {
    pub fn inner(&self) -> &Mat {
        &self.inner
    }

    pub fn block_size(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.m
    }
}

/// Builds the block companion matrix of a monic polynomial. The 0/1 shift
/// structure is exact; the bottom block row holds -A_0 .. -A_{m-1}.
pub fn build_companion(p_monic: &MatrixPolynomial) -> Result<CompanionMatrix> {
    if !p_monic.is_monic() {
        return Err(Error::NotMonic);
    }
    let (n, m) = (p_monic.size(), p_monic.degree());
    let mut c = Mat::zeros(m * n, m * n);
    for b in 0..(m - 1) {
        c.set_block(b * n, (b + 1) * n, &Mat::identity(n));
    }
    for (b, coeff) in p_monic.coeffs()[..m].iter().enumerate() {
        c.set_block((m - 1) * n, b * n, &coeff.scale(Cplx::new(-1.0, 0.0)));
    }
    Ok(CompanionMatrix { inner: c, n, m })
}

/// Stacks [v; z v; ...; z^{m-1} v]: the companion eigenvector induced by a
/// polynomial eigenpair (z, v).
pub fn lift_eigenvector(v: &[Cplx], lambda0: Cplx, m: usize) -> Result<Vec<Cplx>> {
    if v.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::ZeroVector);
    }
    let mut out = Vec::with_capacity(v.len() * m);
    let mut power = Cplx::new(1.0, 0.0);
    for _ in 0..m {
        out.extend(v.iter().map(|z| z * power));
        power *= lambda0;
    }
    Ok(out)
}

/// Frobenius norm of X^m + A_{m-1} X^{m-1} + ... + A_1 X + A_0.
pub fn solvent_residual(x: &Mat, p_monic: &MatrixPolynomial) -> f64 {
    let m = p_monic.degree();
    let mut acc = x.add(&p_monic.coeffs()[m - 1]);
    for k in (0..m - 1).rev() {
        acc = acc.matmul(x).add(&p_monic.coeffs()[k]);
    }
    acc.frobenius_norm()
}

/// A set of right solvents together with their equation residuals.
#[derive(Debug, Clone)]
pub struct SolventSet {
    pub solvents: Vec<Mat>,
    pub residuals: Vec<f64>,
}

impl SolventSet {
    pub fn verify(solvents: Vec<Mat>, p_monic: &MatrixPolynomial, tol: &Tolerances) -> Result<Self> {
        let residuals: Vec<f64> = solvents
            .iter()
            .map(|x| solvent_residual(x, p_monic))
            .collect();
        let scale = p_monic.scale().max(1.0);
        if residuals.iter().any(|&r| r > tol.tol_verify * scale) {
            return Err(Error::InvalidSpec("solvent residual exceeds tolerance".into()));
        }
        Ok(SolventSet { solvents, residuals })
    }
}

/// Output of the constructive diagonalization of a commuting-unitary
/// quadratic: diagonal solvent pair, block Vandermonde, the full
/// diagonalizer of the companion matrix, and the similarity certificate.
#[derive(Debug, Clone)]
pub struct VandermondeDiagonalization {
    /// Block Vandermonde [[I, I], [X1, X2]].
    pub v: Mat,
    pub x1: Mat,
    pub x2: Mat,
    /// ||C X - X blockdiag(X1, X2)||_F for the companion C and full
    /// diagonalizer X.
    pub similarity_residual: f64,
    pub kappa_v: f64,
    /// X = (W^* ⊕ W^*) V; kappa(X) = kappa(V) by unitary invariance.
    pub diagonalizer: Mat,
}

/// Roots of z^2 + a z + b with the stable branch (avoids cancellation when
/// |a| ~ |disc|).
pub fn quadratic_roots(a: Cplx, b: Cplx) -> (Cplx, Cplx) {
    let disc = (a * a - b * 4.0).sqrt();
    // pick the sign that adds magnitudes
    let s = if (a.conj() * disc).re >= 0.0 { 1.0 } else { -1.0 };
    let big = -(a + disc * s) * 0.5;
    if big.norm() == 0.0 {
        (Cplx::new(0.0, 0.0), Cplx::new(0.0, 0.0))
    } else {
        (big, b / big)
    }
}

/// Constructive diagonalization for a monic quadratic with commuting
/// unitary coefficients: simultaneously diagonalize the coefficients, solve
/// the scalar quadratics on the diagonal, and assemble the block
/// Vandermonde similarity.
pub fn diagonalize_commuting_unitary_quadratic(
    p: &MatrixPolynomial,
    tol: &Tolerances,
) -> Result<VandermondeDiagonalization> {
    if p.degree() != 2 || !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.size();
    let u0 = &p.coeffs()[0];
    let u1 = &p.coeffs()[1];
    let cls = classify(p, tol);
    for k in &cls.classes[..2] {
        if !matches!(k, CoefficientClass::Unitary | CoefficientClass::Permutation | CoefficientClass::Diagonal) {
            // diagonal coefficients are admitted only when unimodular
            return Err(Error::NotUnitary);
        }
    }
    let scale = u0.frobenius_norm().max(1.0);
    if u0
        .conj_transpose()
        .matmul(u0)
        .sub(&Mat::identity(n))
        .frobenius_norm()
        > tol.tol_verify * scale
        || u1
            .conj_transpose()
            .matmul(u1)
            .sub(&Mat::identity(n))
            .frobenius_norm()
            > tol.tol_verify * scale
    {
        return Err(Error::NotUnitary);
    }
    if u0.commutator_norm(u1) > tol.tol_verify * (u0.frobenius_norm() * u1.frobenius_norm() + 1.0) {
        return Err(Error::NotCommuting);
    }
    let (w, d1, d0) = numkit::simultaneous_diag_commuting_normal(u1, u0, tol)?;
    let mut lambdas = Vec::with_capacity(n);
    let mut mus = Vec::with_capacity(n);
    for i in 0..n {
        let (l, m) = quadratic_roots(d1[i], d0[i]);
        // unimodular a_ii, b_ii force |l - m|^2 >= 3; anything close to
        // coincidence signals a numerical breakdown
        if (l - m).norm() < 1.0 {
            return Err(Error::DegenerateRoots);
        }
        lambdas.push(l);
        mus.push(m);
    }
    let x1 = Mat::diag(&lambdas);
    let x2 = Mat::diag(&mus);
    let mut v = Mat::zeros(2 * n, 2 * n);
    v.set_block(0, 0, &Mat::identity(n));
    v.set_block(0, n, &Mat::identity(n));
    v.set_block(n, 0, &x1);
    v.set_block(n, n, &x2);
    let wh = w.conj_transpose();
    let mut u = Mat::zeros(2 * n, 2 * n);
    u.set_block(0, 0, &wh);
    u.set_block(n, n, &wh);
    let diagonalizer = u.matmul(&v);
    let c = build_companion(p)?;
    let mut block_diag = Mat::zeros(2 * n, 2 * n);
    block_diag.set_block(0, 0, &x1);
    block_diag.set_block(n, n, &x2);
    let similarity_residual = c
        .inner
        .matmul(&diagonalizer)
        .sub(&diagonalizer.matmul(&block_diag))
        .frobenius_norm();
    let kappa_v = numkit::spectral_condition(&v)?;
    Ok(VandermondeDiagonalization {
        v,
        x1,
        x2,
        similarity_residual,
        kappa_v,
        diagonalizer,
    })
}

/// One eigenvalue cluster in a diagonalizability report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ClusterReport {
    pub value: Cplx,
    pub algebraic: usize,
    pub geometric: usize,
}

/// Eigenvalue clusters with algebraic vs geometric multiplicities, plus an
/// eigenvector certificate when the matrix is diagonalizable.
#[derive(Debug, Clone)]
pub struct DiagonalizabilityReport {
    pub diagonalizable: bool,
    pub clusters: Vec<ClusterReport>,
    /// Eigenvector matrix and its spectral condition number; present only
    /// when diagonalizable.
    pub certificate: Option<(Mat, f64)>,
}

pub fn diagonalizability_report(a: &Mat, tol: &Tolerances) -> Result<DiagonalizabilityReport> {
    if !a.is_square() {
        return Err(Error::Dimension("diagonalizability needs a square matrix".into()));
    }
    let n = a.rows();
    let decomp = numkit::eig_dense(a, tol)?;
    let radius = tol.tol_cluster * a.frobenius_norm().max(1.0);
    let groups = cluster_indices(&decomp.values, radius);
    let mut clusters = Vec::with_capacity(groups.len());
    let mut diagonalizable = true;
    for members in &groups {
        let k = members.len();
        let mean: Cplx = members.iter().map(|&i| decomp.values[i]).sum::<Cplx>() / (k as f64);
        let geometric = n - numkit::rank_tol(&a.shift(mean), tol);
        if geometric < k {
            diagonalizable = false;
        }
        clusters.push(ClusterReport {
            value: mean,
            algebraic: k,
            geometric,
        });
    }
    let certificate = if diagonalizable {
        let kappa = numkit::spectral_condition(&decomp.vectors)?;
        Some((decomp.vectors, kappa))
    } else {
        None
    };
    Ok(DiagonalizabilityReport {
        diagonalizable,
        clusters,
        certificate,
    })
}

/// Closed-form companion matrix of the 2x2 doubly stochastic linear pencil
/// with A_1 = [[a,1-a],[1-a,a]], A_0 = [[b,1-b],[1-b,b]]: a real symmetric
/// matrix, hence diagonalizable.
pub fn ds_2x2_linear_companion(a: f64, b: f64) -> Result<Mat> {
    let tol = Tolerances::default();
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
        return Err(Error::InvalidSpec("parameters must lie in [0,1]".into()));
    }
    let denom = 2.0 * a - 1.0;
    if denom.abs() <= tol.tol_rank {
        return Err(Error::SingularLeading);
    }
    let d = -(a + b - 1.0) / denom;
    let o = -(a - b) / denom;
    Ok(Mat::from_real_rows(&[&[d, o], &[o, d]]))
}

/// Spectrum of the monic 2x2 quadratic with doubly stochastic symmetric
/// coefficients B_1 = [[a,1-a],[1-a,a]], B_0 = [[b,1-b],[1-b,b]]: the
/// determinant factors as (z^2+z+1)(z^2+(2a-1)z+(2b-1)).
///
/// Output order: the z^2+z+1 pair first (by increasing imaginary part),
/// then the parameter-dependent pair (same ordering).
pub fn ds_2x2_quadratic_spectrum(a: f64, b: f64) -> Result<Vec<Cplx>> {
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
        return Err(Error::InvalidSpec("parameters must lie in [0,1]".into()));
    }
    let one = Cplx::new(1.0, 0.0);
    let (r1, r2) = quadratic_roots(one, one);
    let (s1, s2) = quadratic_roots(Cplx::new(2.0 * a - 1.0, 0.0), Cplx::new(2.0 * b - 1.0, 0.0));
    let sort_pair = |x: Cplx, y: Cplx| -> (Cplx, Cplx) {
        if (x.im, x.re) <= (y.im, y.re) {
            (x, y)
        } else {
            (y, x)
        }
    };
    let (r1, r2) = sort_pair(r1, r2);
    let (s1, s2) = sort_pair(s1, s2);
    Ok(vec![r1, r2, s1, s2])
}
