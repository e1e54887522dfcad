//! Seeded generators for every coefficient ensemble the verdicts quantify
//! over, plus the built-in reference fixture library (F1..F13).

use num_complex::Complex64 as Cplx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matpoly::MatrixPolynomial;
use crate::numkit::Mat;
use crate::{Error, Result};

/// Coefficient ensembles mirroring the hypothesis classes of the verified
/// statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum EnsembleKind {
    UnitaryHaarLike,
    CommutingUnitaryPair,
    DoublyStochasticBirkhoff,
    Permutation,
    PositiveDefinite,
    Diagonal,
    CommutingPermutationFamily,
    Ginibre,
}

/// A fully determined sampling request: same spec, bit-identical output.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    pub seed: u64,
    /// Birkhoff terms / family size; ignored by single-matrix kinds.
    pub terms: usize,
}

#[derive(Debug, Clone)]
pub enum Sample {
    Single(Mat),
    Pair(Mat, Mat),
    Family(Vec<Mat>),
}

impl Sample {
    pub fn single(self) -> Mat {
        match self {
            Sample::Single(m) => m,
            _ => panic!("sample is not a single matrix"),
        }
    }

    pub fn pair(self) -> (Mat, Mat) {
        match self {
            Sample::Pair(a, b) => (a, b),
            _ => panic!("sample is not a pair"),
        }
    }

    pub fn family(self) -> Vec<Mat> {
        match self {
            Sample::Family(f) => f,
            Sample::Pair(a, b) => vec![a, b],
            Sample::Single(m) => vec![m],
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = loop {
        let u = rng.gen::<f64>();
        if u > 0.0 {
            break u;
        }
    };
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn ginibre(n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = Cplx::new(gaussian(rng), gaussian(rng));
        }
    }
    g
}

/// Modified Gram-Schmidt, applied twice for orthogonality at working
/// precision.
fn orthonormalize(g: &Mat) -> Mat {
    let n = g.rows();
    let mut cols: Vec<Vec<Cplx>> = (0..n).map(|j| g.column(j)).collect();
    for _ in 0..2 {
        for j in 0..n {
            for k in 0..j {
                let proj: Cplx = cols[k]
                    .iter()
                    .zip(&cols[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for i in 0..n {
                    let correction = proj * cols[k][i];
                    cols[j][i] -= correction;
                }
            }
            let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
    }
    Mat::from_columns(&cols)
}

fn haar_like_unitary(n: usize, rng: &mut ChaCha8Rng) -> Mat {
    orthonormalize(&ginibre(n, rng))
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

fn permutation_matrix(p: &[usize]) -> Mat {
    let n = p.len();
    let mut m = Mat::zeros(n, n);
    for (i, &j) in p.iter().enumerate() {
        m[(i, j)] = Cplx::new(1.0, 0.0);
    }
    m
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}

fn unimodular_diag(n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let entries: Vec<Cplx> = (0..n)
        .map(|_| Cplx::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    Mat::diag(&entries)
}

/// Draws from the requested ensemble. Deterministic for a fixed `EnsembleSpec`.
pub fn sample(spec: &EnsembleSpec) -> Result<Sample> {
    if spec.n == 0 {
        return Err(Error::InvalidSpec("ensemble size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    Ok(match spec.kind {
        EnsembleKind::UnitaryHaarLike => Sample::Single(haar_like_unitary(n, &mut rng)),
        EnsembleKind::CommutingUnitaryPair => {
            let w = haar_like_unitary(n, &mut rng);
            let wh = w.conj_transpose();
            let u0 = w.matmul(&unimodular_diag(n, &mut rng)).matmul(&wh);
            let u1 = w.matmul(&unimodular_diag(n, &mut rng)).matmul(&wh);
            Sample::Pair(u0, u1)
        }
        EnsembleKind::DoublyStochasticBirkhoff => {
            let terms = spec.terms.max(1);
            // exponential draws normalized to a uniform simplex point
            let raw: Vec<f64> = (0..terms).map(|_| -rng.gen::<f64>().max(f64::MIN_POSITIVE).ln()).collect();
            let total: f64 = raw.iter().sum();
            let mut acc = Mat::zeros(n, n);
            for w in raw {
                let p = permutation_matrix(&random_permutation(n, &mut rng));
                acc = acc.add(&p.scale(Cplx::new(w / total, 0.0)));
            }
            Sample::Single(acc)
        }
        EnsembleKind::Permutation => {
            Sample::Single(permutation_matrix(&random_permutation(n, &mut rng)))
        }
        EnsembleKind::PositiveDefinite => {
            let g = ginibre(n, &mut rng);
            Sample::Single(
                g.conj_transpose()
                    .matmul(&g)
                    .add(&Mat::identity(n).scale(Cplx::new(1e-3, 0.0))),
            )
        }
        EnsembleKind::Diagonal => {
            let entries: Vec<Cplx> = (0..n)
                .map(|_| Cplx::new(gaussian(&mut rng), gaussian(&mut rng)))
                .collect();
            Sample::Single(Mat::diag(&entries))
        }
        EnsembleKind::CommutingPermutationFamily => {
            let terms = spec.terms.max(2);
            let base = random_permutation(n, &mut rng);
            let mut family = Vec::with_capacity(terms);
            let mut cur = base.clone();
            for _ in 0..terms {
                family.push(permutation_matrix(&cur));
                cur = compose(&cur, &base);
            }
            Sample::Family(family)
        }
        EnsembleKind::Ginibre => Sample::Single(ginibre(n, &mut rng)),
    })
}

/// What a fixture is expected to exhibit, with exact reference values.
#[derive(Debug, Clone)]
pub enum Expectation {
    /// Optimal matching cost between the two companion spectra; when
    /// all_permutations, the worst cost coincides too.
    MatchingCost { cost: f64, all_permutations: bool },
    /// Optimal matching cost is at least this (strict counterexample).
    MatchingCostAtLeast(f64),
    /// Squared Frobenius norm of the companion difference.
    FrobSq(f64),
    /// Companion diagonalizability verdict (first polynomial).
    Diagonalizable(bool),
    /// Eigenvalue clusters of the companion: (value, algebraic, geometric).
    Clusters(Vec<(Cplx, usize, usize)>),
    /// Some companion eigenvalue lies within 1e-6 of this value.
    ContainsEigenvalue(Cplx),
    /// The full companion spectrum, up to ordering.
    EigenvalueSet(Vec<Cplx>),
    /// The inequality chain of the pair regime: plain bound fails, the
    /// condition-number bound holds with kappa^2 below the given cap.
    KappaBoundWithCap(f64),
}

/// A named reference problem with its documented expected outcomes.
#[derive(Debug, Clone)]
pub struct ReferenceFixture {
    pub id: &'static str,
    /// One polynomial (diagonalizability/eigenvalue fixtures) or two (pair
    /// inequality fixtures); F9 carries two independent single-poly cases.
    pub polys: Vec<MatrixPolynomial>,
    /// True when the fixture is a (P, Q) inequality pair rather than a list
    /// of independent cases.
    pub is_pair: bool,
    pub expected: Vec<Expectation>,
}

fn poly(coeffs: Vec<Mat>) -> MatrixPolynomial {
    MatrixPolynomial::new(coeffs).expect("fixture polynomial")
}

fn rr(rows: &[&[f64]]) -> Mat {
    Mat::from_real_rows(rows)
}

/// The complete built-in fixture library, F1..F13.
pub fn fixtures() -> Vec<ReferenceFixture> {
    let omega = Cplx::new(-0.5, 3.0_f64.sqrt() / 2.0);
    let s57 = 57.0_f64.sqrt();
    let i2 = Mat::identity(2);
    let i3 = Mat::identity(3);
    let s2 = 1.0 / 2.0_f64.sqrt();
    let s41 = 41.0_f64.sqrt();
    let s3h = 3.0_f64.sqrt() / 2.0;
    let ds14 = rr(&[&[0.25, 0.75], &[0.75, 0.25]]);
    let ds13 = rr(&[&[1.0 / 3.0, 2.0 / 3.0], &[2.0 / 3.0, 1.0 / 3.0]]);

    vec![
        // linear pair: every matching costs 48, squared distance 27
        ReferenceFixture {
            id: "F1",
            polys: vec![
                poly(vec![rr(&[&[2.0, 2.0], &[2.0, -14.0]]), rr(&[&[2.0, 0.0], &[0.0, -2.0]])]),
                poly(vec![
                    rr(&[&[2.0, 5.0], &[5.0, -30.0 / 4.0]]),
                    rr(&[&[1.0, 0.0], &[0.0, -5.0 / 4.0]]),
                ]),
            ],
            is_pair: true,
            expected: vec![
                Expectation::MatchingCost { cost: 48.0, all_permutations: true },
                Expectation::FrobSq(27.0),
                Expectation::KappaBoundWithCap(f64::INFINITY),
            ],
        },
        // unitary quadratic pair: cost >= 4.5102 > 4 = squared distance
        ReferenceFixture {
            id: "F2",
            polys: vec![
                poly(vec![
                    rr(&[&[4.0 / s41, 5.0 / s41], &[5.0 / s41, -4.0 / s41]]),
                    rr(&[&[s2, s2], &[s2, -s2]]),
                    i2.clone(),
                ]),
                poly(vec![
                    rr(&[&[-0.5, s3h], &[-s3h, -0.5]]),
                    rr(&[&[s2, s2], &[s2, -s2]]),
                    i2.clone(),
                ]),
            ],
            is_pair: true,
            expected: vec![
                Expectation::MatchingCostAtLeast(4.5102),
                Expectation::FrobSq(4.0),
                Expectation::KappaBoundWithCap(4.0),
            ],
        },
        // non-commuting unitary quadratic: eigenvalues +/-1, defective
        ReferenceFixture {
            id: "F3",
            polys: vec![poly(vec![
                rr(&[&[-0.5, -s3h], &[s3h, -0.5]]),
                rr(&[&[-1.0, 0.0], &[0.0, 1.0]]),
                i2.clone(),
            ])],
            is_pair: false,
            expected: vec![
                Expectation::Diagonalizable(false),
                Expectation::Clusters(vec![
                    (Cplx::new(1.0, 0.0), 2, 1),
                    (Cplx::new(-1.0, 0.0), 2, 1),
                ]),
            ],
        },
        // non-commuting 3x3 permutation coefficients: defective
        ReferenceFixture {
            id: "F4",
            polys: vec![poly(vec![
                rr(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]]),
                rr(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0]]),
                i3.clone(),
            ])],
            is_pair: false,
            expected: vec![Expectation::Diagonalizable(false)],
        },
        // cubic with commuting +/-I coefficients: defective
        ReferenceFixture {
            id: "F5",
            polys: vec![poly(vec![
                i2.clone(),
                i2.scale(Cplx::new(-1.0, 0.0)),
                i2.scale(Cplx::new(-1.0, 0.0)),
                i2.clone(),
            ])],
            is_pair: false,
            expected: vec![Expectation::Diagonalizable(false)],
        },
        // diagonal quadratic with a double root on one diagonal entry
        ReferenceFixture {
            id: "F6",
            polys: vec![poly(vec![
                rr(&[&[1.0, 0.0], &[0.0, 2.0]]),
                i2.scale(Cplx::new(2.0, 0.0)),
                i2.clone(),
            ])],
            is_pair: false,
            expected: vec![Expectation::Diagonalizable(false)],
        },
        // doubly stochastic middle/constant: eigenvalue below 1/2 in modulus
        ReferenceFixture {
            id: "F7",
            polys: vec![poly(vec![ds13.clone(), ds14.clone(), i2.clone()])],
            is_pair: false,
            expected: vec![Expectation::ContainsEigenvalue(Cplx::new((3.0 - s57) / 12.0, 0.0))],
        },
        // doubly stochastic leading: eigenvalue beyond 2 in modulus
        ReferenceFixture {
            id: "F8",
            polys: vec![poly(vec![i2.clone(), ds14.clone(), ds13.clone()])],
            is_pair: false,
            expected: vec![Expectation::EigenvalueSet(vec![
                omega,
                omega.conj(),
                Cplx::new((-3.0 + s57) / 4.0, 0.0),
                Cplx::new((-3.0 - s57) / 4.0, 0.0),
            ])],
        },
        // both doubly-stochastic-not-permutation quadratics: defective
        ReferenceFixture {
            id: "F9",
            polys: vec![
                poly(vec![
                    rr(&[&[1.0 / 8.0, 7.0 / 8.0], &[7.0 / 8.0, 1.0 / 8.0]]),
                    ds14.clone(),
                    rr(&[&[11.0 / 24.0, 13.0 / 24.0], &[13.0 / 24.0, 11.0 / 24.0]]),
                ]),
                poly(vec![
                    rr(&[&[0.5, 0.5], &[0.5, 0.5]]),
                    rr(&[&[0.5, 0.5], &[0.5, 0.5]]),
                    i2.clone(),
                ]),
            ],
            is_pair: false,
            expected: vec![Expectation::Diagonalizable(false)],
        },
        // commuting 3x3 with a doubly stochastic middle: defective
        ReferenceFixture {
            id: "F10",
            polys: vec![poly(vec![
                i3.clone(),
                rr(&[
                    &[5.0 / 12.0, 5.0 / 12.0, 1.0 / 6.0],
                    &[0.25, 0.25, 0.5],
                    &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
                ]),
                i3.clone(),
            ])],
            is_pair: false,
            expected: vec![Expectation::Diagonalizable(false)],
        },
        // commuting permutation cubic: defective
        ReferenceFixture {
            id: "F11",
            polys: vec![poly(vec![
                i2.clone(),
                Mat::flip2(),
                Mat::flip2(),
                i2.clone(),
            ])],
            is_pair: false,
            expected: vec![Expectation::Diagonalizable(false)],
        },
        // 3x3 linear with a non-permutation doubly stochastic term: defective
        ReferenceFixture {
            id: "F12",
            polys: vec![poly(vec![
                rr(&[
                    &[1.0 / 8.0, 0.5, 3.0 / 8.0],
                    &[0.25, 3.0 / 8.0, 3.0 / 8.0],
                    &[5.0 / 8.0, 1.0 / 8.0, 0.25],
                ]),
                i3.clone(),
            ])],
            is_pair: false,
            expected: vec![Expectation::Diagonalizable(false)],
        },
        // identity quadratic: two doubled eigenvalues, diagonalizable
        ReferenceFixture {
            id: "F13",
            polys: vec![poly(vec![i2.clone(), i2.clone(), i2.clone()])],
            is_pair: false,
            expected: vec![
                Expectation::Diagonalizable(true),
                Expectation::Clusters(vec![(omega, 2, 2), (omega.conj(), 2, 2)]),
            ],
        },
    ]
}
