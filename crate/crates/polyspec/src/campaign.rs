//! Randomized verification campaigns over the hypothesis ensembles, and
//! the fixture reproduction driver.

use num_complex::Complex64 as Cplx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::companion::{
    build_companion, diagonalizability_report, diagonalize_commuting_unitary_quadratic,
    ds_2x2_linear_companion, ds_2x2_quadratic_spectrum,
};
use crate::gen::{self, EnsembleKind, EnsembleSpec, Expectation, ReferenceFixture};
use crate::hoffman::{self, kappa_v_closed_form};
use crate::matpoly::{monicize, polyeig, MatrixPolynomial};
use crate::numkit::{self, Mat, Tolerances};
use crate::{Error, Result};

/// Identifiers of the verifiable statements a campaign can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TheoremId {
    Eq1Equality,
    HwClassical,
    HwTypeUnitary,
    HwTypeLinear,
    HwTypeDs,
    AnnulusUnitary,
    AnnulusDs,
    DiagUnitary,
    DiagDsLinear,
    DiagDsQuadratic,
    KappaV,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Eq1Equality,
        TheoremId::HwClassical,
        TheoremId::HwTypeUnitary,
        TheoremId::HwTypeLinear,
        TheoremId::HwTypeDs,
        TheoremId::AnnulusUnitary,
        TheoremId::AnnulusDs,
        TheoremId::DiagUnitary,
        TheoremId::DiagDsLinear,
        TheoremId::DiagDsQuadratic,
        TheoremId::KappaV,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Eq1Equality => "eq1-equality",
            TheoremId::HwClassical => "hw-classical",
            TheoremId::HwTypeUnitary => "hw-type-unitary",
            TheoremId::HwTypeLinear => "hw-type-linear",
            TheoremId::HwTypeDs => "hw-type-ds",
            TheoremId::AnnulusUnitary => "annulus-unitary",
            TheoremId::AnnulusDs => "annulus-ds",
            TheoremId::DiagUnitary => "diag-unitary",
            TheoremId::DiagDsLinear => "diag-ds-linear",
            TheoremId::DiagDsQuadratic => "diag-ds-quadratic",
            TheoremId::KappaV => "kappa-v",
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown theorem id {:?}", s)))
    }
}

/// A campaign request: which statement, how many trials, from which seed.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CampaignConfig {
    pub theorem: TheoremId,
    pub trials: usize,
    pub seed: u64,
    /// Coefficient size; theorem-specific constraints (2x2 statements
    /// override this).
    pub n: usize,
    pub tolerances: Tolerances,
    /// Run a hypothesis-violating ensemble where the checked property is
    /// allowed (and expected) to fail; failures are counted, not fatal.
    pub expect_violations: bool,
}

impl CampaignConfig {
    pub fn new(theorem: TheoremId, trials: usize, seed: u64, n: usize) -> Self {
        CampaignConfig {
            theorem,
            trials,
            seed,
            n,
            tolerances: Tolerances::default(),
            expect_violations: false,
        }
    }
}

/// Aggregated campaign outcome; reproducible bit-for-bit from the config.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CampaignSummary {
    pub theorem: &'static str,
    pub trials: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub expect_violations: bool,
    /// Failures of the checked property. Must be 0 for guarantee-backed
    /// campaigns; in expect_violations mode this is informational.
    pub counterexamples: usize,
    /// Per-trial seeds of every counterexample, for replay.
    pub counterexample_seeds: Vec<u64>,
    pub min_modulus: Option<f64>,
    pub max_modulus: Option<f64>,
    pub max_kappa: Option<f64>,
}

fn trial_seeds(master: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..trials).map(|_| rng.gen()).collect()
}

fn spec(kind: EnsembleKind, n: usize, seed: u64, terms: usize) -> EnsembleSpec {
    EnsembleSpec { kind, n, seed, terms }
}

/// a = W D W* for a fresh haar-like W and random complex diagonal: a dense
/// normal matrix.
fn random_normal(n: usize, rng: &mut ChaCha8Rng) -> Result<Mat> {
    let w = gen::sample(&spec(EnsembleKind::UnitaryHaarLike, n, rng.gen(), 0))?.single();
    let d = gen::sample(&spec(EnsembleKind::Diagonal, n, rng.gen(), 0))?.single();
    Ok(w.matmul(&d).matmul(&w.conj_transpose()))
}

/// Commuting normal pair sharing one eigenbasis.
fn commuting_normal_pair(n: usize, rng: &mut ChaCha8Rng) -> Result<(Mat, Mat)> {
    let w = gen::sample(&spec(EnsembleKind::UnitaryHaarLike, n, rng.gen(), 0))?.single();
    let d1 = gen::sample(&spec(EnsembleKind::Diagonal, n, rng.gen(), 0))?.single();
    let d2 = gen::sample(&spec(EnsembleKind::Diagonal, n, rng.gen(), 0))?.single();
    let wh = w.conj_transpose();
    Ok((w.matmul(&d1).matmul(&wh), w.matmul(&d2).matmul(&wh)))
}

fn random_monic_quadratic(n: usize, rng: &mut ChaCha8Rng) -> Result<MatrixPolynomial> {
    let a0 = gen::sample(&spec(EnsembleKind::Ginibre, n, rng.gen(), 0))?.single();
    let a1 = gen::sample(&spec(EnsembleKind::Ginibre, n, rng.gen(), 0))?.single();
    MatrixPolynomial::new(vec![a0, a1, Mat::identity(n)])
}

fn commuting_unitary_quadratic(n: usize, seed: u64) -> Result<MatrixPolynomial> {
    let (u0, u1) = gen::sample(&spec(EnsembleKind::CommutingUnitaryPair, n, seed, 0))?.pair();
    MatrixPolynomial::new(vec![u0, u1, Mat::identity(n)])
}

/// Outcome of one trial: pass/fail plus the extremes it observed.
struct TrialOutcome {
    ok: bool,
    min_modulus: Option<f64>,
    max_modulus: Option<f64>,
    kappa: Option<f64>,
}

impl TrialOutcome {
    fn pass() -> Self {
        TrialOutcome { ok: true, min_modulus: None, max_modulus: None, kappa: None }
    }

    fn verdict(ok: bool) -> Self {
        TrialOutcome { ok, ..TrialOutcome::pass() }
    }
}

fn moduli_outcome(values: &[Cplx], ok: bool) -> TrialOutcome {
    let min = values.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    let max = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    TrialOutcome { ok, min_modulus: Some(min), max_modulus: Some(max), kappa: None }
}

fn run_trial(config: &CampaignConfig, seed: u64) -> Result<TrialOutcome> {
    let tol = &config.tolerances;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = config.n.max(2);
    match config.theorem {
        TheoremId::Eq1Equality => {
            let (a, b) = commuting_normal_pair(n, &mut rng)?;
            let rep = hoffman::hw_equality_check(&a, &b, tol)?;
            let scale = rep.frob_sq.max(1.0);
            let paired_equal = rep
                .paired_cost
                .map(|p| (p - rep.frob_sq).abs() <= tol.tol_verify * scale)
                .unwrap_or(false);
            Ok(TrialOutcome::verdict(
                rep.commuting_normal == Some(true) && paired_equal && rep.holds_plain,
            ))
        }
        TheoremId::HwClassical => {
            let a = random_normal(n, &mut rng)?;
            let b = random_normal(n, &mut rng)?;
            let rep = hoffman::hw_equality_check(&a, &b, tol)?;
            Ok(TrialOutcome::verdict(rep.holds_plain))
        }
        TheoremId::HwTypeUnitary => {
            let p = commuting_unitary_quadratic(n, rng.gen())?;
            let q = random_monic_quadratic(n, &mut rng)?;
            let c = build_companion(&p)?;
            let d = build_companion(&q)?;
            let diag = diagonalize_commuting_unitary_quadratic(&p, tol)?;
            let rep = hoffman::hw_type_check(c.inner(), d.inner(), Some(&diag.diagonalizer), tol)?;
            Ok(TrialOutcome {
                ok: rep.holds_kappa && !rep.anomaly,
                kappa: Some(rep.kappa_sq.sqrt()),
                ..TrialOutcome::pass()
            })
        }
        TheoremId::HwTypeLinear => {
            let a1 = gen::sample(&spec(EnsembleKind::PositiveDefinite, n, rng.gen(), 0))?.single();
            let a0 = gen::sample(&spec(EnsembleKind::PositiveDefinite, n, rng.gen(), 0))?.single();
            let p = monicize(&MatrixPolynomial::new(vec![a0, a1])?)?;
            let q0 = gen::sample(&spec(EnsembleKind::Ginibre, n, rng.gen(), 0))?.single();
            let q = MatrixPolynomial::new(vec![q0, Mat::identity(n)])?;
            let c = build_companion(&p)?;
            let d = build_companion(&q)?;
            let rep = hoffman::hw_type_check(c.inner(), d.inner(), None, tol)?;
            Ok(TrialOutcome {
                ok: rep.holds_kappa && !rep.anomaly,
                kappa: Some(rep.kappa_sq.sqrt()),
                ..TrialOutcome::pass()
            })
        }
        TheoremId::HwTypeDs => {
            let a2 = gen::sample(&spec(EnsembleKind::Permutation, 2, rng.gen(), 0))?.single();
            let a1 = gen::sample(&spec(EnsembleKind::DoublyStochasticBirkhoff, 2, rng.gen(), 2))?.single();
            let a0 = gen::sample(&spec(EnsembleKind::Permutation, 2, rng.gen(), 0))?.single();
            let p = monicize(&MatrixPolynomial::new(vec![a0, a1, a2])?)?;
            let q = random_monic_quadratic(2, &mut rng)?;
            let c = build_companion(&p)?;
            let d = build_companion(&q)?;
            let rep = hoffman::hw_type_check(c.inner(), d.inner(), None, tol)?;
            Ok(TrialOutcome {
                ok: rep.holds_kappa && !rep.anomaly,
                kappa: Some(rep.kappa_sq.sqrt()),
                ..TrialOutcome::pass()
            })
        }
        TheoremId::AnnulusUnitary => {
            let m = rng.gen_range(1..=3usize);
            let coeffs: Vec<Mat> = (0..=m)
                .map(|_| {
                    gen::sample(&spec(EnsembleKind::UnitaryHaarLike, n, rng.gen(), 0))
                        .map(Sampled::single)
                })
                .collect::<Result<_>>()?;
            let p = MatrixPolynomial::new(coeffs)?;
            let result = polyeig(&monicize(&p)?, tol)?;
            let inside = result
                .values
                .iter()
                .all(|z| z.norm() > 0.5 - tol.tol_verify && z.norm() < 2.0 + tol.tol_verify);
            Ok(moduli_outcome(&result.values, inside))
        }
        TheoremId::AnnulusDs => {
            let m = rng.gen_range(1..=3usize);
            // hypothesis-conforming: permutation ends; violating: Birkhoff ends
            let end_kind = if config.expect_violations {
                EnsembleKind::DoublyStochasticBirkhoff
            } else {
                EnsembleKind::Permutation
            };
            let mut coeffs = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let kind = if k == 0 || k == m {
                    end_kind
                } else {
                    EnsembleKind::DoublyStochasticBirkhoff
                };
                coeffs.push(gen::sample(&spec(kind, n, rng.gen(), 3))?.single());
            }
            let p = MatrixPolynomial::new(coeffs)?;
            let result = polyeig(&monicize(&p)?, tol)?;
            let inside = result
                .values
                .iter()
                .all(|z| z.norm() > 0.5 - tol.tol_verify && z.norm() < 2.0 + tol.tol_verify);
            Ok(moduli_outcome(&result.values, inside))
        }
        TheoremId::DiagUnitary => {
            let p = commuting_unitary_quadratic(n, rng.gen())?;
            let c = build_companion(&p)?;
            let diag = diagonalize_commuting_unitary_quadratic(&p, tol)?;
            let ok = diag.similarity_residual <= tol.tol_verify * c.inner().frobenius_norm().max(1.0);
            Ok(TrialOutcome { ok, kappa: Some(diag.kappa_v), ..TrialOutcome::pass() })
        }
        TheoremId::DiagDsLinear => {
            let a: f64 = rng.gen_range(0.0..=1.0);
            let b: f64 = rng.gen_range(0.0..=1.0);
            if (2.0 * a - 1.0).abs() <= 1e-6 {
                return Ok(TrialOutcome::pass()); // singular leading excluded by hypothesis
            }
            let c = ds_2x2_linear_companion(a, b)?;
            let rep = diagonalizability_report(&c, tol)?;
            Ok(TrialOutcome::verdict(rep.diagonalizable))
        }
        TheoremId::DiagDsQuadratic => {
            let a2 = gen::sample(&spec(EnsembleKind::Permutation, 2, rng.gen(), 0))?.single();
            let a0 = gen::sample(&spec(EnsembleKind::Permutation, 2, rng.gen(), 0))?.single();
            let aa: f64 = rng.gen_range(0.0..=1.0);
            let a1 = Mat::from_real_rows(&[&[aa, 1.0 - aa], &[1.0 - aa, aa]]);
            let p = monicize(&MatrixPolynomial::new(vec![a0, a1, a2])?)?;
            let c = build_companion(&p)?;
            let rep = diagonalizability_report(c.inner(), tol)?;
            // cross-check the spectrum against the closed factorization
            let a_m = p.coeffs()[1][(0, 0)].re;
            let b_m = p.coeffs()[0][(0, 0)].re;
            let closed = ds_2x2_quadratic_spectrum(a_m.clamp(0.0, 1.0), b_m.clamp(0.0, 1.0))?;
            let spectrum = numkit::eig_dense(c.inner(), tol)?.values;
            let matched = hoffman::best_matching(&spectrum, &closed)?.cost.sqrt() <= 1e-7;
            Ok(moduli_outcome(&spectrum, rep.diagonalizable && matched))
        }
        TheoremId::KappaV => {
            let p = commuting_unitary_quadratic(n, rng.gen())?;
            let diag = diagonalize_commuting_unitary_quadratic(&p, tol)?;
            let x1: Vec<Cplx> = (0..n).map(|i| diag.x1[(i, i)]).collect();
            let x2: Vec<Cplx> = (0..n).map(|i| diag.x2[(i, i)]).collect();
            let bound = kappa_v_closed_form(&x1, &x2)?;
            let ok = diag.kappa_v < 2.0
                && bound.kappa < 2.0
                && (diag.kappa_v - bound.kappa).abs() <= 1e-8 * bound.kappa.max(1.0);
            Ok(TrialOutcome { ok, kappa: Some(diag.kappa_v), ..TrialOutcome::pass() })
        }
    }
}

// small helper so the closure above can use a method reference
use crate::gen::Sample as Sampled;

/// Runs all trials of a campaign; deterministic in the config.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignSummary> {
    if config.trials == 0 {
        return Err(Error::InvalidSpec("trials must be >= 1".into()));
    }
    config.tolerances.validate()?;
    let seeds = trial_seeds(config.seed, config.trials);
    let mut counterexample_seeds = Vec::new();
    let mut min_modulus: Option<f64> = None;
    let mut max_modulus: Option<f64> = None;
    let mut max_kappa: Option<f64> = None;
    for &s in &seeds {
        let out = run_trial(config, s)?;
        if !out.ok {
            counterexample_seeds.push(s);
        }
        if let Some(v) = out.min_modulus {
            min_modulus = Some(min_modulus.map_or(v, |m| m.min(v)));
        }
        if let Some(v) = out.max_modulus {
            max_modulus = Some(max_modulus.map_or(v, |m| m.max(v)));
        }
        if let Some(v) = out.kappa {
            max_kappa = Some(max_kappa.map_or(v, |m| m.max(v)));
        }
    }
    Ok(CampaignSummary {
        theorem: config.theorem.as_str(),
        trials: config.trials,
        seed: config.seed,
        tolerances: config.tolerances,
        expect_violations: config.expect_violations,
        counterexamples: counterexample_seeds.len(),
        counterexample_seeds,
        min_modulus,
        max_modulus,
        max_kappa,
    })
}

/// One verified claim of a fixture run.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of reproducing one fixture.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FixtureReport {
    pub id: &'static str,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

fn check(label: &str, pass: bool, detail: String) -> CheckResult {
    CheckResult { label: label.to_string(), pass, detail }
}

fn fixture_companions(f: &ReferenceFixture) -> Result<Vec<Mat>> {
    f.polys
        .iter()
        .map(|p| Ok(build_companion(&monicize(p)?)?.inner().clone()))
        .collect()
}

fn run_fixture(f: &ReferenceFixture, tol: &Tolerances) -> FixtureReport {
    let mut checks = Vec::new();
    match fixture_companions(f) {
        Err(e) => checks.push(check("setup", false, format!("{}", e))),
        Ok(companions) => {
            for exp in &f.expected {
                checks.push(run_expectation(&companions, exp, tol));
            }
        }
    }
    FixtureReport {
        id: f.id,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

fn run_expectation(
    companions: &[Mat],
    exp: &Expectation,
    tol: &Tolerances,
) -> CheckResult {
    let result = (|| -> Result<CheckResult> {
        match exp {
            Expectation::MatchingCost { cost, all_permutations } => {
                let a = numkit::eig_dense(&companions[0], tol)?.values;
                let b = numkit::eig_dense(&companions[1], tol)?.values;
                let best = hoffman::best_matching(&a, &b)?;
                let worst = hoffman::worst_matching(&a, &b)?;
                let ok = (best.cost - cost).abs() <= 1e-6
                    && (!all_permutations || (worst.cost - cost).abs() <= 1e-6);
                Ok(check(
                    "matching-cost",
                    ok,
                    format!("best {:.6} worst {:.6} expected {}", best.cost, worst.cost, cost),
                ))
            }
            Expectation::MatchingCostAtLeast(lo) => {
                let a = numkit::eig_dense(&companions[0], tol)?.values;
                let b = numkit::eig_dense(&companions[1], tol)?.values;
                let best = hoffman::best_matching(&a, &b)?;
                Ok(check(
                    "matching-cost-at-least",
                    best.cost >= lo - 1e-3,
                    format!("best {:.6} >= {}", best.cost, lo),
                ))
            }
            Expectation::FrobSq(v) => {
                let d = companions[0].sub(&companions[1]).frobenius_norm();
                Ok(check(
                    "frob-sq",
                    (d * d - v).abs() <= 1e-9,
                    format!("{:.12} expected {}", d * d, v),
                ))
            }
            Expectation::KappaBoundWithCap(cap) => {
                let rep = hoffman::hw_type_check(&companions[0], &companions[1], None, tol)?;
                let ok = rep.holds_kappa && !rep.holds_plain && !rep.anomaly && rep.kappa_sq < *cap;
                Ok(check(
                    "kappa-bound",
                    ok,
                    format!(
                        "cost {:.4} frob_sq {:.4} kappa_sq {:.4} cap {}",
                        rep.best.cost, rep.frob_sq, rep.kappa_sq, cap
                    ),
                ))
            }
            Expectation::Diagonalizable(want) => {
                let mut ok = true;
                let mut verdicts = Vec::new();
                for c in companions {
                    let rep = diagonalizability_report(c, tol)?;
                    verdicts.push(rep.diagonalizable.to_string());
                    ok &= rep.diagonalizable == *want;
                }
                Ok(check(
                    "diagonalizable",
                    ok,
                    format!("got [{}] expected {}", verdicts.join(", "), want),
                ))
            }
            Expectation::Clusters(expected) => {
                let rep = diagonalizability_report(&companions[0], tol)?;
                let mut ok = rep.clusters.len() == expected.len();
                for (value, alg, geo) in expected {
                    let found = rep.clusters.iter().any(|c| {
                        (c.value - value).norm() <= 1e-6 && c.algebraic == *alg && c.geometric == *geo
                    });
                    ok &= found;
                }
                Ok(check(
                    "clusters",
                    ok,
                    format!("{} clusters: {:?}", rep.clusters.len(), rep.clusters),
                ))
            }
            Expectation::ContainsEigenvalue(z) => {
                let values = numkit::eig_dense(&companions[0], tol)?.values;
                let best = values
                    .iter()
                    .map(|w| (w - z).norm())
                    .fold(f64::INFINITY, f64::min);
                Ok(check(
                    "contains-eigenvalue",
                    best <= 1e-6,
                    format!("nearest distance {:.3e} to {}", best, z),
                ))
            }
            Expectation::EigenvalueSet(set) => {
                let values = numkit::eig_dense(&companions[0], tol)?.values;
                let mut ok = values.len() == set.len();
                for z in set {
                    ok &= values.iter().any(|w| (w - z).norm() <= 1e-6);
                }
                Ok(check("eigenvalue-set", ok, format!("computed {:?}", values)))
            }
        }
    })();
    result.unwrap_or_else(|e| check("error", false, format!("{}", e)))
}

/// Reproduces the built-in fixtures, optionally restricted to one id.
pub fn reproduce(only: Option<&str>, tol: &Tolerances) -> Result<Vec<FixtureReport>> {
    let all = gen::fixtures();
    let selected: Vec<&ReferenceFixture> = match only {
        Some(id) => {
            let hit: Vec<&ReferenceFixture> = all.iter().filter(|f| f.id == id).collect();
            if hit.is_empty() {
                return Err(Error::InvalidSpec(format!("unknown fixture id {:?}", id)));
            }
            hit
        }
        None => all.iter().collect(),
    };
    Ok(selected.into_iter().map(|f| run_fixture(f, tol)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            let parsed: TheoremId = t.as_str().parse().unwrap();
            assert_eq!(parsed, t);
        }
        assert!("no-such-id".parse::<TheoremId>().is_err());
    }

    #[test]
    fn all_fixtures_reproduce() {
        let tol = Tolerances::default();
        let reports = reproduce(None, &tol).unwrap();
        assert_eq!(reports.len(), 13);
        for r in &reports {
            assert!(r.pass, "{} failed: {:?}", r.id, r.checks);
        }
    }

    #[test]
    fn reproduce_filter_and_unknown_id() {
        let tol = Tolerances::default();
        let one = reproduce(Some("F7"), &tol).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].id, "F7");
        assert!(reproduce(Some("F99"), &tol).is_err());
    }

    #[test]
    fn tight_tolerances_fail_not_crash() {
        let tol = Tolerances {
            tol_verify: 1e-15,
            tol_eig: 1e-16,
            tol_cluster: 1e-15,
            tol_rank: 1e-16,
        };
        // some fixtures will numerically FAIL at this tolerance; the runner
        // must still return reports for all of them
        let reports = reproduce(None, &tol).unwrap();
        assert_eq!(reports.len(), 13);
    }

    #[test]
    fn campaign_summaries_reproducible() {
        let config = CampaignConfig::new(TheoremId::KappaV, 5, 7, 3);
        let a = run_campaign(&config).unwrap();
        let b = run_campaign(&config).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.counterexamples, 0);
        assert!(a.max_kappa.unwrap() < 2.0);
    }

    #[test]
    fn guarantee_backed_campaigns_clean() {
        for (theorem, n) in [
            (TheoremId::Eq1Equality, 3),
            (TheoremId::HwClassical, 3),
            (TheoremId::HwTypeUnitary, 2),
            (TheoremId::HwTypeLinear, 3),
            (TheoremId::HwTypeDs, 2),
            (TheoremId::AnnulusUnitary, 3),
            (TheoremId::AnnulusDs, 3),
            (TheoremId::DiagUnitary, 3),
            (TheoremId::DiagDsLinear, 2),
            (TheoremId::DiagDsQuadratic, 2),
            (TheoremId::KappaV, 3),
        ] {
            let config = CampaignConfig::new(theorem, 25, 12345, n);
            let summary = run_campaign(&config).unwrap();
            assert_eq!(
                summary.counterexamples, 0,
                "{} seeds {:?}",
                theorem.as_str(),
                summary.counterexample_seeds
            );
        }
    }

    #[test]
    fn annulus_ds_violating_ensemble_finds_escapes() {
        let mut config = CampaignConfig::new(TheoremId::AnnulusDs, 200, 2024, 2);
        config.expect_violations = true;
        let summary = run_campaign(&config).unwrap();
        // with doubly stochastic (non-permutation) ends, escapes from the
        // annulus exist and must be counted rather than fatal
        assert!(summary.counterexamples > 0);
        assert!(summary.min_modulus.unwrap() < 0.5 || summary.max_modulus.unwrap() > 2.0);
    }

    #[test]
    fn zero_trials_rejected() {
        let config = CampaignConfig::new(TheoremId::KappaV, 0, 1, 2);
        assert!(run_campaign(&config).is_err());
    }
}
