//! Self-contained dense complex linear algebra: norms, decompositions,
//! eigensolvers and rank. Everything downstream modules consume.

mod eig;
mod jacobi;
mod lu;

pub use eig::{eig_dense, simultaneous_diag_commuting_normal, unitary_diagonalize_normal, EigenDecomp};
pub use jacobi::{eig_hermitian, rank_tol, spectral_condition, svd_values};
pub use lu::{determinant, inverse, solve};

use num_complex::Complex64;

use crate::{Error, Result};

/// Complex scalar used throughout.
pub type Cplx = Complex64;

/// Numerical thresholds used by every verdict in the library.
///
/// The underlying theory is exact; floating point requires explicit slack.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Eigen residual bound, relative to the Frobenius norm.
    pub tol_eig: f64,
    /// Eigenvalue-coincidence radius for multiplicity clustering.
    pub tol_cluster: f64,
    /// Singular-value cutoff relative to the largest singular value.
    pub tol_rank: f64,
    /// Slack applied to inequality verdicts.
    pub tol_verify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_eig: 1e-9,
            tol_cluster: 1e-7,
            tol_rank: 1e-10,
            tol_verify: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if self.tol_eig <= 0.0 || self.tol_cluster <= 0.0 || self.tol_rank <= 0.0 || self.tol_verify <= 0.0 {
            return Err(Error::InvalidSpec("tolerances must be strictly positive".into()));
        }
        if self.tol_cluster <= self.tol_eig {
            return Err(Error::InvalidSpec("tol_cluster must exceed tol_eig".into()));
        }
        Ok(())
    }
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Cplx>,
}

impl Mat {
    /// Builds a matrix from row-major data. Rejects nonfinite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Cplx>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "data length {} != {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Cplx::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cplx::new(1.0, 0.0);
        }
        m
    }

    /// 2x2 flip matrix [[0,1],[1,0]].
    pub fn flip2() -> Self {
        Mat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn from_rows(rows: &[Vec<Cplx>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Mat::new(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Cplx::new(x, 0.0)))
            .collect();
        Mat::new(r, c, data).expect("real literal matrix")
    }

    pub fn diag(entries: &[Cplx]) -> Self {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Cplx] {
        &self.data
    }

    pub fn conj_transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: Cplx) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// self - z*I for square matrices.
    pub fn shift(&self, z: Cplx) -> Mat {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] -= z;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Cplx> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Cplx]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn from_columns(cols: &[Vec<Cplx>]) -> Mat {
        let n = cols.first().map_or(0, |c| c.len());
        let mut m = Mat::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_column(j, c);
        }
        m
    }

    /// Writes `block` with its top-left corner at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Cplx]) -> Vec<Cplx> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)] * v[j])
                    .sum::<Cplx>()
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of AB - BA.
    pub fn commutator_norm(&self, other: &Mat) -> f64 {
        self.matmul(other).sub(&other.matmul(self)).frobenius_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Cplx;
    fn index(&self, (i, j): (usize, usize)) -> &Cplx {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cplx {
        &mut self.data[i * self.cols + j]
    }
}

/// Frobenius norm of a matrix.
pub fn frobenius_norm(a: &Mat) -> f64 {
    a.frobenius_norm()
}

pub(crate) fn vec_norm(v: &[Cplx]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn vec_dot(a: &[Cplx], b: &[Cplx]) -> Cplx {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Groups values into clusters of pairwise distance <= radius (union-find,
/// order independent). Returns, per cluster, the member indices.
pub fn cluster_indices(values: &[Cplx], radius: f64) -> Vec<Vec<usize>> {
    let k = values.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if (values[i] - values[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..k {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}
