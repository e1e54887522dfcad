//! Acceptance gate: one test per numbered criterion, each printing a
//! single PASS/FAIL line.

use std::time::Instant;

use polyspec::campaign::{self, CampaignConfig, TheoremId};
use polyspec::companion::{
    build_companion, diagonalizability_report, diagonalize_commuting_unitary_quadratic,
};
use polyspec::gen::{self, EnsembleKind, EnsembleSpec, Expectation};
use polyspec::hoffman;
use polyspec::matpoly::{monicize, polyeig, MatrixPolynomial};
use polyspec::numkit;
use polyspec::{Cplx, Mat, Tolerances};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: &str, ok: bool, detail: &str) {
    println!("criterion {:02}: {} — {}", id.parse::<u32>().unwrap(), if ok { "PASS" } else { "FAIL" }, detail);
    assert!(ok, "criterion {} failed: {}", id, detail);
}

fn fixture(id: &str) -> gen::ReferenceFixture {
    gen::fixtures().into_iter().find(|f| f.id == id).unwrap()
}

fn companions_of(f: &gen::ReferenceFixture) -> Vec<Mat> {
    f.polys
        .iter()
        .map(|p| build_companion(&monicize(p).unwrap()).unwrap().inner().clone())
        .collect()
}

#[test]
fn criterion_01_linear_pair_cost_and_norm() {
    let started = Instant::now();
    let tol = Tolerances::default();
    let f = fixture("F1");
    let cs = companions_of(&f);
    let a = numkit::eig_dense(&cs[0], &tol).unwrap().values;
    let b = numkit::eig_dense(&cs[1], &tol).unwrap().values;
    // both permutations of a 2-element matching, enumerated explicitly
    let ident: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let swap: f64 = (a[0] - b[1]).norm_sqr() + (a[1] - b[0]).norm_sqr();
    let d = cs[0].sub(&cs[1]).frobenius_norm();
    let rep = hoffman::hw_type_check(&cs[0], &cs[1], None, &tol).unwrap();
    let ok = (ident - 48.0).abs() <= 1e-9
        && (swap - 48.0).abs() <= 1e-9
        && (d * d - 27.0).abs() <= 1e-9
        && !rep.holds_plain
        && rep.holds_kappa
        && started.elapsed().as_secs_f64() < 1.0;
    verdict(
        "1",
        ok,
        &format!(
            "identity {:.9}, swap {:.9}, frob_sq {:.9}, holds_plain {}, holds_kappa {}, {:.3}s",
            ident, swap, d * d, rep.holds_plain, rep.holds_kappa,
            started.elapsed().as_secs_f64()
        ),
    );
}

#[test]
fn criterion_02_unitary_quadratic_counterexample() {
    let tol = Tolerances::default();
    let f = fixture("F2");
    let cs = companions_of(&f);
    let d = cs[0].sub(&cs[1]).frobenius_norm();
    let rep = hoffman::hw_type_check(&cs[0], &cs[1], None, &tol).unwrap();
    let ok = (d * d - 4.0).abs() <= 1e-9
        && rep.best.cost >= 4.5102 - 1e-3
        && rep.kappa_sq < 4.0
        && rep.holds_kappa;
    verdict(
        "2",
        ok,
        &format!(
            "frob_sq {:.9}, cost {:.5}, kappa_sq {:.5}, holds_kappa {}",
            d * d, rep.best.cost, rep.kappa_sq, rep.holds_kappa
        ),
    );
}

#[test]
fn criterion_03_defective_fixtures() {
    let tol = Tolerances::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for id in ["F3", "F4", "F5", "F6", "F10", "F11", "F12"] {
        for c in companions_of(&fixture(id)) {
            let rep = diagonalizability_report(&c, &tol).unwrap();
            ok &= !rep.diagonalizable;
            notes.push(format!("{}={}", id, rep.diagonalizable));
        }
    }
    // F3 eigenvalue structure: +/-1 with algebraic 2, geometric 1
    let rep3 = diagonalizability_report(&companions_of(&fixture("F3"))[0], &tol).unwrap();
    for want in [1.0, -1.0] {
        let hit = rep3.clusters.iter().any(|c| {
            (c.value - Cplx::new(want, 0.0)).norm() <= tol.tol_cluster
                && c.algebraic == 2
                && c.geometric == 1
        });
        ok &= hit;
    }
    verdict("3", ok, &format!("diagonalizable flags [{}], F3 clusters {:?}", notes.join(" "), rep3.clusters));
}

#[test]
fn criterion_04_annulus_violating_fixtures() {
    let tol = Tolerances::default();
    let f7 = &fixture("F7").polys[0];
    let r7 = polyeig(f7, &tol).unwrap();
    let target = Cplx::new((3.0 - 57.0_f64.sqrt()) / 12.0, 0.0);
    let near7 = r7.values.iter().map(|z| (z - target).norm()).fold(f64::INFINITY, f64::min);
    let mut ok = near7 <= 1e-6 && target.norm() < 0.5;

    let f8 = fixture("F8");
    let r8 = polyeig(&f8.polys[0], &tol).unwrap();
    let expected8: Vec<Cplx> = match &f8.expected[0] {
        Expectation::EigenvalueSet(set) => set.clone(),
        _ => unreachable!(),
    };
    for z in &expected8 {
        ok &= r8.values.iter().any(|w| (w - z).norm() <= 1e-6);
    }
    let max8 = r8.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    ok &= (max8 - (3.0 + 57.0_f64.sqrt()) / 4.0).abs() <= 1e-6 && max8 > 2.0;
    verdict("4", ok, &format!("F7 nearest {:.2e}, F8 max modulus {:.5}", near7, max8));
}

/// Shared sample set for criteria 5-7: 100 commuting-unitary quadratics per
/// size n in 2..=6.
fn unitary_samples() -> Vec<MatrixPolynomial> {
    let mut out = Vec::new();
    for n in 2..=6usize {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + n as u64);
        for _ in 0..100 {
            let (u0, u1) = gen::sample(&EnsembleSpec {
                kind: EnsembleKind::CommutingUnitaryPair,
                n,
                seed: rng.gen(),
                terms: 0,
            })
            .unwrap()
            .pair();
            out.push(MatrixPolynomial::new(vec![u0, u1, Mat::identity(n)]).unwrap());
        }
    }
    out
}

#[test]
fn criterion_05_constructive_diagonalization_campaign() {
    let started = Instant::now();
    let tol = Tolerances::default();
    let mut ok = true;
    let mut worst = 0.0_f64;
    for p in unitary_samples() {
        let c = build_companion(&p).unwrap();
        let d = diagonalize_commuting_unitary_quadratic(&p, &tol).unwrap();
        let rel = d.similarity_residual / c.inner().frobenius_norm();
        worst = worst.max(rel);
        ok &= rel <= 1e-8;
    }
    let secs = started.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    verdict("5", ok, &format!("500 trials, worst relative residual {:.3e}, {:.1}s", worst, secs));
}

#[test]
fn criterion_06_kappa_v_closed_forms() {
    let tol = Tolerances::default();
    let mut ok = true;
    let mut max_kappa = 0.0_f64;
    for p in unitary_samples() {
        let n = p.size();
        let d = diagonalize_commuting_unitary_quadratic(&p, &tol).unwrap();
        let x1: Vec<Cplx> = (0..n).map(|i| d.x1[(i, i)]).collect();
        let x2: Vec<Cplx> = (0..n).map(|i| d.x2[(i, i)]).collect();
        let bound = hoffman::kappa_v_closed_form(&x1, &x2).unwrap();
        ok &= bound.s.iter().all(|&s| (2.0 - 1e-9..=3.0 + 1e-9).contains(&s));
        ok &= bound.kappa < 2.0 && d.kappa_v < 2.0;
        ok &= (bound.kappa - d.kappa_v).abs() <= 1e-8 * bound.kappa;
        // closed forms against the independently computed Gram spectrum
        let gram = d.v.matmul(&d.v.conj_transpose());
        let (evals, _) = numkit::eig_hermitian(&gram).unwrap();
        let mut closed: Vec<f64> = bound
            .alphas_closed
            .iter()
            .chain(&bound.betas_closed)
            .copied()
            .collect();
        closed.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (e, c) in evals.iter().zip(&closed) {
            ok &= (e - c).abs() <= 1e-8 * c.max(1.0);
        }
        max_kappa = max_kappa.max(bound.kappa);
    }
    verdict("6", ok, &format!("500 trials, max kappa(V) {:.6} < 2", max_kappa));
}

#[test]
fn criterion_07_hw_type_unitary_campaign() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut ok = true;
    for p in unitary_samples() {
        let n = p.size();
        let q0 = gen::sample(&EnsembleSpec { kind: EnsembleKind::Ginibre, n, seed: rng.gen(), terms: 0 })
            .unwrap()
            .single();
        let q1 = gen::sample(&EnsembleSpec { kind: EnsembleKind::Ginibre, n, seed: rng.gen(), terms: 0 })
            .unwrap()
            .single();
        let q = MatrixPolynomial::new(vec![q0, q1, Mat::identity(n)]).unwrap();
        let c = build_companion(&p).unwrap();
        let d = build_companion(&q).unwrap();
        let x = diagonalize_commuting_unitary_quadratic(&p, &tol).unwrap();
        let rep = hoffman::hw_type_check(c.inner(), d.inner(), Some(&x.diagonalizer), &tol).unwrap();
        ok &= rep.holds_kappa && !rep.anomaly;
    }
    verdict("7", ok, "500 pairs, holds_kappa in every trial");
}

#[test]
fn criterion_08_ds_quadratic_campaign() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(888);
    let mut ok = true;
    let mut worst = 0.0_f64;
    for _ in 0..500 {
        let a2 = gen::sample(&EnsembleSpec { kind: EnsembleKind::Permutation, n: 2, seed: rng.gen(), terms: 0 })
            .unwrap()
            .single();
        let a0 = gen::sample(&EnsembleSpec { kind: EnsembleKind::Permutation, n: 2, seed: rng.gen(), terms: 0 })
            .unwrap()
            .single();
        let a: f64 = rng.gen_range(0.0..=1.0);
        let a1 = Mat::from_real_rows(&[&[a, 1.0 - a], &[1.0 - a, a]]);
        let p = monicize(&MatrixPolynomial::new(vec![a0, a1, a2]).unwrap()).unwrap();
        let c = build_companion(&p).unwrap();
        let rep = diagonalizability_report(c.inner(), &tol).unwrap();
        ok &= rep.diagonalizable;
        let am = p.coeffs()[1][(0, 0)].re.clamp(0.0, 1.0);
        let bm = p.coeffs()[0][(0, 0)].re.clamp(0.0, 1.0);
        let closed = polyspec::companion::ds_2x2_quadratic_spectrum(am, bm).unwrap();
        let spectrum = numkit::eig_dense(c.inner(), &tol).unwrap().values;
        ok &= spectrum.len() == 4;
        // distinct unless the monic form collapses to (a, b) = (1, 1)
        if !((am - 1.0).abs() < 1e-12 && (bm - 1.0).abs() < 1e-12) {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    ok &= (closed[i] - closed[j]).norm() > 1e-9;
                }
            }
        }
        for z in &closed {
            let near = spectrum.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(near);
            ok &= near <= 1e-8;
        }
    }
    verdict("8", ok, &format!("500 trials, worst spectrum deviation {:.3e}", worst));
}

#[test]
fn criterion_09_annulus_campaigns() {
    let tol = Tolerances::default();
    let mut ok = true;
    let mut global_min = f64::INFINITY;
    let mut global_max = 0.0_f64;
    let mut rng = ChaCha8Rng::seed_from_u64(999);
    for kind in ["unitary", "ds"] {
        for trial in 0..500 {
            let n = 2 + (trial % 4); // 2..=5
            let m = 1 + (trial % 3); // 1..=3
            let mut coeffs = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let ens = if kind == "unitary" {
                    EnsembleKind::UnitaryHaarLike
                } else if k == 0 || k == m {
                    EnsembleKind::Permutation
                } else {
                    EnsembleKind::DoublyStochasticBirkhoff
                };
                coeffs.push(
                    gen::sample(&EnsembleSpec { kind: ens, n, seed: rng.gen(), terms: 3 })
                        .unwrap()
                        .single(),
                );
            }
            let p = MatrixPolynomial::new(coeffs).unwrap();
            let result = polyeig(&monicize(&p).unwrap(), &tol).unwrap();
            for z in &result.values {
                let r = z.norm();
                global_min = global_min.min(r);
                global_max = global_max.max(r);
                ok &= r > 0.5 && r < 2.0;
            }
        }
    }
    verdict(
        "9",
        ok,
        &format!("1000 polynomials, empirical moduli in [{:.5}, {:.5}] ⊂ (0.5, 2)", global_min, global_max),
    );
}

#[test]
fn criterion_10_matching_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut ok = true;
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let k = rng.gen_range(1..=8);
        let a: Vec<Cplx> = (0..k)
            .map(|_| Cplx::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let b: Vec<Cplx> = (0..k)
            .map(|_| Cplx::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let fast = hoffman::best_matching(&a, &b).unwrap();
        let slow = hoffman::brute_matching(&a, &b).unwrap();
        let gap = (fast.cost - slow.cost).abs();
        worst = worst.max(gap);
        ok &= gap <= 1e-12;
    }
    verdict("10", ok, &format!("1000 instances k<=8, worst cost gap {:.3e}", worst));
}

#[test]
fn criterion_11_eigensolver_property_suite() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let mut ok = true;
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=16);
        let a = gen::sample(&EnsembleSpec { kind: EnsembleKind::Ginibre, n, seed: rng.gen(), terms: 0 })
            .unwrap()
            .single();
        let decomp = numkit::eig_dense(&a, &tol).unwrap();
        for &r in &decomp.residuals {
            worst = worst.max(r);
            ok &= r <= 1e-9;
        }
    }
    // triangular-spectrum oracle: eigenvalues of a triangular matrix are
    // its diagonal entries
    let mut worst_tri = 0.0_f64;
    for _ in 0..100 {
        let n = rng.gen_range(2..=10);
        let mut t = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                t[(i, j)] = Cplx::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            }
        }
        let values = numkit::eig_dense(&t, &tol).unwrap().values;
        let diag: Vec<Cplx> = (0..n).map(|i| t[(i, i)]).collect();
        let cost = hoffman::best_matching(&values, &diag).unwrap().cost.sqrt();
        worst_tri = worst_tri.max(cost);
        ok &= cost <= 1e-9 * t.frobenius_norm().max(1.0) * (n as f64);
    }
    verdict(
        "11",
        ok,
        &format!("worst residual {:.3e} over 1000 matrices; triangular oracle deviation {:.3e}", worst, worst_tri),
    );
}

#[test]
fn criterion_12_equality_regime_campaign() {
    // the equality of the commuting-normal regime is attained by the
    // shared-eigenbasis pairing; the optimal matching can only be cheaper
    let config = CampaignConfig::new(TheoremId::Eq1Equality, 500, 1212, 4);
    let summary = campaign::run_campaign(&config).unwrap();
    let ok = summary.counterexamples == 0;
    verdict(
        "12",
        ok,
        &format!(
            "500 commuting normal pairs, {} equality violations (paired cost vs squared norm at 1e-8)",
            summary.counterexamples
        ),
    );
}
