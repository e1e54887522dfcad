//! Matrix polynomial representation, coefficient-class predicates,
//! monicization, evaluation, reversal and eigenvalue extraction with
//! annulus-bound checks.

use num_complex::Complex64 as Cplx;

use crate::numkit::{self, Mat, Tolerances};
use crate::{Error, Result};

/// P(z) = sum A_i z^i with square coefficients and nonsingular leading
/// coefficient. Coefficients are stored constant-term first.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    n: usize,
    m: usize,
    coeffs: Vec<Mat>,
}

impl MatrixPolynomial {
    /// Builds a polynomial from coefficients A_0..A_m. The leading
    /// coefficient must be numerically nonsingular.
    pub fn new(coeffs: Vec<Mat>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Dimension("need degree >= 1".into()));
        }
        let n = coeffs[0].rows();
        if coeffs.iter().any(|c| c.rows() != n || c.cols() != n) {
            return Err(Error::Dimension("coefficients must be square of equal size".into()));
        }
        let tol = Tolerances::default();
        let lead = coeffs.last().unwrap();
        let sv = numkit::svd_values(lead);
        if sv[sv.len() - 1] <= tol.tol_rank * sv[0] {
            return Err(Error::SingularLeading);
        }
        let m = coeffs.len() - 1;
        Ok(MatrixPolynomial { n, m, coeffs })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Coefficients A_0..A_m.
    pub fn coeffs(&self) -> &[Mat] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Mat {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading()
            .sub(&Mat::identity(self.n))
            .frobenius_norm()
            == 0.0
    }

    /// Largest coefficient Frobenius norm; the natural scale of the problem.
    pub fn scale(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.frobenius_norm())
            .fold(0.0, f64::max)
    }
}

/// Structural class of a single coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CoefficientClass {
    Unitary,
    DoublyStochastic,
    Permutation,
    Diagonal,
    PositiveSemidefinite,
    PositiveDefinite,
    Normal,
    UpperTriangular,
    General,
}

/// Per-coefficient classes plus whether the whole family commutes pairwise.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Classification {
    pub classes: Vec<CoefficientClass>,
    pub commuting_family: bool,
}

fn is_unitary(a: &Mat, tol: f64) -> bool {
    a.conj_transpose()
        .matmul(a)
        .sub(&Mat::identity(a.rows()))
        .frobenius_norm()
        <= tol
}

fn is_doubly_stochastic(a: &Mat, entry_tol: f64, sum_tol: f64) -> bool {
    let n = a.rows();
    for z in a.data() {
        if z.im.abs() > entry_tol || z.re < -entry_tol {
            return false;
        }
    }
    for i in 0..n {
        let row: f64 = (0..n).map(|j| a[(i, j)].re).sum();
        let col: f64 = (0..n).map(|j| a[(j, i)].re).sum();
        if (row - 1.0).abs() > sum_tol || (col - 1.0).abs() > sum_tol {
            return false;
        }
    }
    true
}

fn is_permutation(a: &Mat, tol: f64) -> bool {
    is_doubly_stochastic(a, 1e-12, 1e-9)
        && a.data()
            .iter()
            .all(|z| z.re.abs() <= tol || (z.re - 1.0).abs() <= tol)
}

fn is_diagonal(a: &Mat, tol: f64) -> bool {
    let n = a.rows();
    (0..n).all(|i| (0..n).all(|j| i == j || a[(i, j)].norm() <= tol))
}

fn is_upper_triangular(a: &Mat, tol: f64) -> bool {
    let n = a.rows();
    (0..n).all(|i| (0..i).all(|j| a[(i, j)].norm() <= tol))
}

fn is_hermitian(a: &Mat, tol: f64) -> bool {
    a.sub(&a.conj_transpose()).frobenius_norm() <= tol
}

fn is_normal(a: &Mat, tol: f64) -> bool {
    let ah = a.conj_transpose();
    a.matmul(&ah).sub(&ah.matmul(a)).frobenius_norm() <= tol
}

/// Classifies a single coefficient. The most specific matching class wins.
pub fn classify_matrix(a: &Mat, tol: &Tolerances) -> CoefficientClass {
    let scale = a.frobenius_norm().max(1.0);
    let t = tol.tol_verify * scale;
    if is_permutation(a, tol.tol_verify) {
        return CoefficientClass::Permutation;
    }
    if is_doubly_stochastic(a, 1e-12, 1e-9) {
        return CoefficientClass::DoublyStochastic;
    }
    if is_diagonal(a, t) {
        return CoefficientClass::Diagonal;
    }
    if is_unitary(a, t) {
        return CoefficientClass::Unitary;
    }
    if is_hermitian(a, t) {
        let evals = numkit::eig_hermitian(a).map(|(v, _)| v).unwrap_or_default();
        if evals.iter().all(|&l| l > tol.tol_rank * scale) {
            return CoefficientClass::PositiveDefinite;
        }
        if evals.iter().all(|&l| l >= -t) {
            return CoefficientClass::PositiveSemidefinite;
        }
    }
    if is_normal(a, t * scale) {
        return CoefficientClass::Normal;
    }
    if is_upper_triangular(a, t) {
        return CoefficientClass::UpperTriangular;
    }
    CoefficientClass::General
}

/// Classifies every coefficient and checks pairwise commutativity.
pub fn classify(p: &MatrixPolynomial, tol: &Tolerances) -> Classification {
    let classes = p.coeffs().iter().map(|c| classify_matrix(c, tol)).collect();
    let scale = p.scale().max(1.0);
    let mut commuting = true;
    for i in 0..p.coeffs().len() {
        for j in (i + 1)..p.coeffs().len() {
            if p.coeffs()[i].commutator_norm(&p.coeffs()[j]) > tol.tol_verify * scale * scale {
                commuting = false;
            }
        }
    }
    Classification {
        classes,
        commuting_family: commuting,
    }
}

/// Left-multiplies by the inverse of the leading coefficient: the result is
/// monic with coefficients A_m^{-1} A_i and the same eigenvalues.
pub fn monicize(p: &MatrixPolynomial) -> Result<MatrixPolynomial> {
    if p.is_monic() {
        return Ok(p.clone());
    }
    let lead = p.leading();
    let mut coeffs: Vec<Mat> = p.coeffs[..p.m]
        .iter()
        .map(|c| numkit::solve(lead, c))
        .collect::<Result<_>>()?;
    coeffs.push(Mat::identity(p.n));
    MatrixPolynomial::new(coeffs)
}

/// Horner evaluation of P at z.
pub fn eval(p: &MatrixPolynomial, z: Cplx) -> Mat {
    let mut acc = p.leading().clone();
    for c in p.coeffs[..p.m].iter().rev() {
        acc = acc.scale(z).add(c);
    }
    acc
}

/// Reversed coefficient sequence A_m..A_0. The result may violate the
/// nonsingular-leading-coefficient invariant (that is the point: 0 is an
/// eigenvalue of the reverse polynomial iff infinity is one of `p`), so it
/// is returned as a raw sequence with a validity flag.
pub struct ReversedPolynomial {
    pub coeffs: Vec<Mat>,
    /// True when the reversed leading coefficient is numerically nonsingular.
    pub leading_nonsingular: bool,
}

pub fn reverse(p: &MatrixPolynomial) -> ReversedPolynomial {
    let coeffs: Vec<Mat> = p.coeffs.iter().rev().cloned().collect();
    let tol = Tolerances::default();
    let sv = numkit::svd_values(coeffs.last().unwrap());
    ReversedPolynomial {
        leading_nonsingular: sv[sv.len() - 1] > tol.tol_rank * sv[0],
        coeffs,
    }
}

/// Eigenvalues of the polynomial via its block companion linearization.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PolyEigenResult {
    pub values: Vec<Cplx>,
    /// True when every modulus lies strictly inside (1/2, 2) with
    /// tol_verify margin. Meaningful as a theorem check only when the
    /// coefficient hypotheses hold (all unitary, or permutation ends with
    /// doubly stochastic middles).
    pub annulus_ok: bool,
    /// True when some modulus touches the annulus boundary within margin.
    pub marginal: bool,
    pub min_modulus: f64,
    pub max_modulus: f64,
}

pub fn polyeig(p: &MatrixPolynomial, tol: &Tolerances) -> Result<PolyEigenResult> {
    let monic = monicize(p)?;
    let companion = crate::companion::build_companion(&monic)?;
    let decomp = numkit::eig_dense(companion.inner(), tol)?;
    let values = decomp.values;
    let min_modulus = values.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    let max_modulus = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let annulus_ok = min_modulus > 0.5 + tol.tol_verify && max_modulus < 2.0 - tol.tol_verify;
    let marginal = !annulus_ok
        && min_modulus > 0.5 - tol.tol_verify
        && max_modulus < 2.0 + tol.tol_verify;
    Ok(PolyEigenResult {
        values,
        annulus_ok,
        marginal,
        min_modulus,
        max_modulus,
    })
}

/// True when the polynomial satisfies the hypotheses under which the
/// annulus bound is a theorem: all coefficients unitary, or leading and
/// constant coefficients permutations with doubly stochastic middles.
pub fn annulus_hypotheses_hold(c: &Classification) -> bool {
    let all_unitary = c
        .classes
        .iter()
        .all(|k| matches!(k, CoefficientClass::Unitary | CoefficientClass::Permutation));
    let ds_form = matches!(c.classes[0], CoefficientClass::Permutation)
        && matches!(c.classes[c.classes.len() - 1], CoefficientClass::Permutation)
        && c.classes[1..c.classes.len() - 1]
            .iter()
            .all(|k| matches!(k, CoefficientClass::DoublyStochastic | CoefficientClass::Permutation));
    all_unitary || ds_form
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic(a0: Mat, a1: Mat, a2: Mat) -> MatrixPolynomial {
        MatrixPolynomial::new(vec![a0, a1, a2]).unwrap()
    }

    #[test]
    fn classify_identity_and_flip() {
        let tol = Tolerances::default();
        let p = MatrixPolynomial::new(vec![Mat::flip2(), Mat::identity(2)]).unwrap();
        let c = classify(&p, &tol);
        assert_eq!(c.classes, vec![CoefficientClass::Permutation; 2]);
        assert!(c.commuting_family);
    }

    #[test]
    fn classify_ds_not_permutation() {
        let tol = Tolerances::default();
        let a = Mat::from_real_rows(&[&[0.25, 0.75], &[0.75, 0.25]]);
        assert_eq!(classify_matrix(&a, &tol), CoefficientClass::DoublyStochastic);
    }

    #[test]
    fn classify_noncommuting_unitaries() {
        let tol = Tolerances::default();
        let s3 = 3.0_f64.sqrt() / 2.0;
        let u0 = Mat::from_real_rows(&[&[-0.5, -s3], &[s3, -0.5]]);
        let u1 = Mat::from_real_rows(&[&[-1.0, 0.0], &[0.0, 1.0]]);
        let p = quadratic(u0, u1, Mat::identity(2));
        let c = classify(&p, &tol);
        assert!(matches!(
            c.classes[0],
            CoefficientClass::Unitary | CoefficientClass::Normal
        ));
        assert!(!c.commuting_family);
    }

    #[test]
    fn monicize_already_monic_is_identity_op() {
        let p = quadratic(Mat::flip2(), Mat::identity(2), Mat::identity(2));
        let q = monicize(&p).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn monicize_linear_example() {
        let a1 = Mat::from_real_rows(&[&[2.0, 0.0], &[0.0, -2.0]]);
        let a0 = Mat::from_real_rows(&[&[2.0, 2.0], &[2.0, -14.0]]);
        let p = MatrixPolynomial::new(vec![a0, a1]).unwrap();
        let u0 = monicize(&p).unwrap().coeffs()[0].clone();
        let expected = Mat::from_real_rows(&[&[1.0, 1.0], &[-1.0, 7.0]]);
        assert!(u0.sub(&expected).frobenius_norm() < 1e-12);
    }

    #[test]
    fn monicize_permutation_ends_keeps_classes() {
        let tol = Tolerances::default();
        // A_2 = flip, A_1 doubly stochastic, A_0 = I
        let a1 = Mat::from_real_rows(&[&[0.3, 0.7], &[0.7, 0.3]]);
        let p = quadratic(Mat::identity(2), a1, Mat::flip2());
        let monic = monicize(&p).unwrap();
        let c = classify(&monic, &tol);
        assert_eq!(c.classes[1], CoefficientClass::DoublyStochastic);
        assert_eq!(c.classes[0], CoefficientClass::Permutation);
    }

    #[test]
    fn eval_at_zero_is_constant_term() {
        let p = quadratic(Mat::flip2(), Mat::identity(2), Mat::identity(2));
        let v = eval(&p, Cplx::new(0.0, 0.0));
        assert!(v.sub(&Mat::flip2()).frobenius_norm() == 0.0);
    }

    #[test]
    fn eval_root_of_unity_annihilates_iii() {
        let i2 = Mat::identity(2);
        let p = quadratic(i2.clone(), i2.clone(), i2);
        let z = Cplx::new(-0.5, 3.0_f64.sqrt() / 2.0);
        assert!(eval(&p, z).frobenius_norm() < 1e-15);
    }

    #[test]
    fn eval_matches_power_sum_oracle() {
        let a0 = Mat::from_real_rows(&[&[1.0, -2.0], &[0.5, 3.0]]);
        let a1 = Mat::from_real_rows(&[&[0.0, 1.0], &[-1.0, 2.0]]);
        let a2 = Mat::from_real_rows(&[&[2.0, 0.5], &[1.5, -1.0]]);
        let p = quadratic(a0.clone(), a1.clone(), a2.clone());
        let z = Cplx::new(0.7, -1.3);
        let direct = a0.add(&a1.scale(z)).add(&a2.scale(z * z));
        assert!(eval(&p, z).sub(&direct).frobenius_norm() < 1e-13);
    }

    #[test]
    fn reverse_swaps_ends() {
        let a1 = Mat::from_real_rows(&[&[2.0, 0.0], &[0.0, 1.0]]);
        let a0 = Mat::flip2();
        let p = MatrixPolynomial::new(vec![a0.clone(), a1.clone()]).unwrap();
        let r = reverse(&p);
        assert!(r.coeffs[0].sub(&a1).frobenius_norm() == 0.0);
        assert!(r.coeffs[1].sub(&a0).frobenius_norm() == 0.0);
        assert!(r.leading_nonsingular);
    }

    #[test]
    fn reverse_flags_singular_constant_term() {
        let a0 = Mat::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let p = MatrixPolynomial::new(vec![a0, Mat::identity(2)]).unwrap();
        let r = reverse(&p);
        assert!(!r.leading_nonsingular);
    }

    #[test]
    fn palindromic_reverse_identical() {
        let mid = Mat::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let p = quadratic(Mat::identity(2), mid, Mat::identity(2));
        let r = reverse(&p);
        for (c, rc) in p.coeffs().iter().zip(&r.coeffs) {
            assert!(c.sub(rc).frobenius_norm() == 0.0);
        }
    }

    #[test]
    fn polyeig_unitary_in_annulus() {
        let tol = Tolerances::default();
        let s = 1.0 / 2.0_f64.sqrt();
        let u1 = Mat::from_real_rows(&[&[s, s], &[s, -s]]);
        let s41 = 1.0 / 41.0_f64.sqrt();
        let u0 = Mat::from_real_rows(&[&[4.0 * s41, 5.0 * s41], &[5.0 * s41, -4.0 * s41]]);
        let p = quadratic(u0, u1, Mat::identity(2));
        let r = polyeig(&p, &tol).unwrap();
        assert!(r.annulus_ok, "moduli [{}, {}]", r.min_modulus, r.max_modulus);
    }

    #[test]
    fn polyeig_ds_violation_below_half() {
        let tol = Tolerances::default();
        let a1 = Mat::from_real_rows(&[&[0.25, 0.75], &[0.75, 0.25]]);
        let a0 = Mat::from_real_rows(&[&[1.0 / 3.0, 2.0 / 3.0], &[2.0 / 3.0, 1.0 / 3.0]]);
        let p = quadratic(a0, a1, Mat::identity(2));
        let r = polyeig(&p, &tol).unwrap();
        let target = (3.0 - 57.0_f64.sqrt()) / 12.0;
        assert!(r
            .values
            .iter()
            .any(|z| (z - Cplx::new(target, 0.0)).norm() < 1e-9));
        assert!(r.min_modulus < 0.5 && !r.annulus_ok);
    }

    #[test]
    fn polyeig_ds_violation_above_two() {
        let tol = Tolerances::default();
        let a2 = Mat::from_real_rows(&[&[1.0 / 3.0, 2.0 / 3.0], &[2.0 / 3.0, 1.0 / 3.0]]);
        let a1 = Mat::from_real_rows(&[&[0.25, 0.75], &[0.75, 0.25]]);
        let p = quadratic(Mat::identity(2), a1, a2);
        let r = polyeig(&p, &tol).unwrap();
        let s57 = 57.0_f64.sqrt();
        let expected = [
            Cplx::new(-0.5, 3.0_f64.sqrt() / 2.0),
            Cplx::new(-0.5, -(3.0_f64.sqrt()) / 2.0),
            Cplx::new((-3.0 + s57) / 4.0, 0.0),
            Cplx::new((-3.0 - s57) / 4.0, 0.0),
        ];
        for e in &expected {
            assert!(r.values.iter().any(|z| (z - e).norm() < 1e-9));
        }
        assert!((r.max_modulus - (3.0 + s57) / 4.0).abs() < 1e-9);
        assert!(r.max_modulus > 2.0);
    }

    #[test]
    fn det_vanishes_at_reported_eigenvalues() {
        let tol = Tolerances::default();
        let a0 = Mat::from_real_rows(&[&[0.4, 0.6], &[0.6, 0.4]]);
        let a1 = Mat::from_real_rows(&[&[0.9, 0.1], &[0.1, 0.9]]);
        let p = quadratic(a0, a1, Mat::identity(2));
        let r = polyeig(&p, &tol).unwrap();
        for z in &r.values {
            let d = numkit::determinant(&eval(&p, *z)).unwrap();
            assert!(d.norm() <= 1e-8 * p.scale().powi(p.size() as i32));
        }
    }
}
