//! On-disk JSON schema for polynomials and matrices: complex entries are
//! [re, im] pairs, coefficient index 0 is the constant term, and the schema
//! version is pinned.

use num_complex::Complex64 as Cplx;
use serde::{Deserialize, Serialize};

use crate::matpoly::MatrixPolynomial;
use crate::numkit::Mat;
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

type EntryRows = Vec<Vec<[f64; 2]>>;

fn mat_to_rows(m: &Mat) -> EntryRows {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn rows_to_mat(rows: &EntryRows, n: usize) -> Result<Mat> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("expected {}x{} entries", n, n)));
    }
    let data: Vec<Cplx> = rows
        .iter()
        .flatten()
        .map(|&[re, im]| Cplx::new(re, im))
        .collect();
    Mat::new(n, n, data)
}

/// Serialized matrix polynomial. coeffs has length m+1; coeffs[0] is the
/// constant term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyDocument {
    pub schema_version: String,
    pub n: usize,
    pub m: usize,
    pub coeffs: Vec<EntryRows>,
}

impl PolyDocument {
    pub fn from_poly(p: &MatrixPolynomial) -> Self {
        PolyDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            n: p.size(),
            m: p.degree(),
            coeffs: p.coeffs().iter().map(mat_to_rows).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MatrixPolynomial> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidSpec(format!(
                "unsupported schema_version {:?}",
                self.schema_version
            )));
        }
        if self.coeffs.len() != self.m + 1 {
            return Err(Error::Dimension(format!(
                "degree {} needs {} coefficients, got {}",
                self.m,
                self.m + 1,
                self.coeffs.len()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| rows_to_mat(c, self.n))
            .collect::<Result<Vec<_>>>()?;
        MatrixPolynomial::new(coeffs)
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization")
    }
}

/// Serialized single square matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatDocument {
    pub schema_version: String,
    pub n: usize,
    pub entries: EntryRows,
}

impl MatDocument {
    pub fn from_mat(m: &Mat) -> Self {
        MatDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            n: m.rows(),
            entries: mat_to_rows(m),
        }
    }

    pub fn to_mat(&self) -> Result<Mat> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidSpec(format!(
                "unsupported schema_version {:?}",
                self.schema_version
            )));
        }
        rows_to_mat(&self.entries, self.n)
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization")
    }
}
