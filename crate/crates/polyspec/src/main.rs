use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use polyspec::campaign::{self, CampaignConfig, TheoremId};
use polyspec::companion::{
    build_companion, diagonalizability_report, diagonalize_commuting_unitary_quadratic,
};
use polyspec::doc::{MatDocument, PolyDocument};
use polyspec::hoffman;
use polyspec::matpoly::{annulus_hypotheses_hold, classify, monicize, polyeig};
use polyspec::{Error, Mat, Tolerances};

#[derive(Parser)]
#[command(name = "polyspec", version, about = "Block companion analysis, diagonalizability verdicts and eigenvalue-distance inequality checks for matrix polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    tols: TolArgs,
    /// Output JSON (default for analyze/hw/campaign).
    #[arg(long, global = true)]
    json: bool,
    /// Output plain text (default for reproduce).
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
}

#[derive(Args)]
struct TolArgs {
    #[arg(long, global = true)]
    tol_eig: Option<f64>,
    #[arg(long, global = true)]
    tol_cluster: Option<f64>,
    #[arg(long, global = true)]
    tol_rank: Option<f64>,
    #[arg(long, global = true)]
    tol_verify: Option<f64>,
}

impl TolArgs {
    fn resolve(&self) -> Result<Tolerances, Error> {
        let mut t = Tolerances::default();
        if let Some(v) = self.tol_eig {
            t.tol_eig = v;
        }
        if let Some(v) = self.tol_cluster {
            t.tol_cluster = v;
        }
        if let Some(v) = self.tol_rank {
            t.tol_rank = v;
        }
        if let Some(v) = self.tol_verify {
            t.tol_verify = v;
        }
        t.validate()?;
        Ok(t)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum XFrom {
    /// Eigenvector certificate of the first companion matrix.
    Certificate,
    /// Explicit similarity built for commuting-unitary quadratics.
    Construction,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a polynomial, compute its companion spectrum, annulus and
    /// diagonalizability verdicts.
    Analyze { input: PathBuf },
    /// Check the eigenvalue-distance inequality for a pair of inputs
    /// (polynomial documents or plain matrices).
    Hw {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "certificate")]
        x_from: XFrom,
    },
    /// Re-run the built-in reference fixtures F1..F13.
    Reproduce {
        /// Restrict to a single fixture id.
        #[arg(long)]
        only: Option<String>,
    },
    /// Run a randomized verification campaign.
    Campaign {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Falls back to POLYSPEC_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Coefficient size.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Sample a hypothesis-violating ensemble; property failures are
        /// counted instead of fatal.
        #[arg(long)]
        expect_violations: bool,
    },
}

const EXIT_FIXTURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_ANOMALY: u8 = 4;

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::InvalidSpec(_) | Error::Dimension(_) => EXIT_PARSE,
        _ => EXIT_NUMERIC,
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(code)
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidSpec(format!("{}: {}", path.display(), e)))
}

/// A pair input is either a polynomial document (taken to its companion
/// matrix) or a plain matrix document.
fn load_companion_or_matrix(path: &PathBuf) -> Result<Mat, Error> {
    let raw = read_file(path)?;
    if let Ok(doc) = PolyDocument::parse(&raw) {
        if let Ok(p) = doc.to_poly() {
            return Ok(build_companion(&monicize(&p)?)?.inner().clone());
        }
    }
    MatDocument::parse(&raw)?.to_mat()
}

fn cplx_pairs(values: &[polyspec::Cplx]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

fn cmd_analyze(input: &PathBuf, tol: &Tolerances, as_text: bool) -> Result<(), Error> {
    let p = PolyDocument::parse(&read_file(input)?)?.to_poly()?;
    let classification = classify(&p, tol);
    let monic = monicize(&p)?;
    let c = build_companion(&monic)?;
    let eig = polyeig(&p, tol)?;
    let report = diagonalizability_report(c.inner(), tol)?;
    let vandermonde = diagonalize_commuting_unitary_quadratic(&monic, tol).ok();
    let out = json!({
        "tolerances": tol,
        "classification": classification,
        "annulus": {
            "hypotheses_hold": annulus_hypotheses_hold(&classification),
            "result": eig,
        },
        "eigenvalues": cplx_pairs(&eig.values),
        "diagonalizable": report.diagonalizable,
        "clusters": report.clusters,
        "certificate_kappa": report.certificate.as_ref().map(|(_, k)| k),
        "vandermonde": vandermonde.as_ref().map(|v| json!({
            "kappa_v": v.kappa_v,
            "similarity_residual": v.similarity_residual,
        })),
    });
    if as_text {
        println!(
            "classes: {:?}; diagonalizable: {}; annulus ok: {}",
            classification.classes, report.diagonalizable, eig.annulus_ok
        );
    } else {
        println!("{}", serde_json::to_string_pretty(&out).expect("report"));
    }
    Ok(())
}

fn cmd_hw(
    first: &PathBuf,
    second: &PathBuf,
    x_from: XFrom,
    tol: &Tolerances,
    as_text: bool,
) -> Result<u8, Error> {
    let c = load_companion_or_matrix(first)?;
    let d = load_companion_or_matrix(second)?;
    let constructed;
    let x = match x_from {
        XFrom::Certificate => None,
        XFrom::Construction => {
            let p = PolyDocument::parse(&read_file(first)?)?.to_poly()?;
            constructed = diagonalize_commuting_unitary_quadratic(&monicize(&p)?, tol)?;
            Some(&constructed.diagonalizer)
        }
    };
    let rep = hoffman::hw_type_check(&c, &d, x, tol)?;
    if as_text {
        println!(
            "cost {:.6} frob_sq {:.6} kappa_sq {:.6} holds_plain {} holds_kappa {}",
            rep.best.cost, rep.frob_sq, rep.kappa_sq, rep.holds_plain, rep.holds_kappa
        );
    } else {
        let out = json!({ "tolerances": tol, "report": rep });
        println!("{}", serde_json::to_string_pretty(&out).expect("report"));
    }
    Ok(if rep.anomaly { EXIT_ANOMALY } else { 0 })
}

fn cmd_reproduce(only: Option<&str>, tol: &Tolerances, as_json: bool) -> Result<u8, Error> {
    let reports = campaign::reproduce(only, tol)?;
    if as_json {
        let out = json!({ "tolerances": tol, "fixtures": reports });
        println!("{}", serde_json::to_string_pretty(&out).expect("report"));
    } else {
        for r in &reports {
            println!("{}  {}", r.id, if r.pass { "PASS" } else { "FAIL" });
            for c in &r.checks {
                if !c.pass {
                    println!("    {}: {}", c.label, c.detail);
                }
            }
        }
    }
    let failing: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if failing.is_empty() {
        Ok(0)
    } else {
        eprintln!("failing fixtures: {}", failing.join(", "));
        Ok(EXIT_FIXTURE)
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("POLYSPEC_SEED").ok()?.parse().ok()
}

fn cmd_campaign(
    theorem: &str,
    trials: usize,
    seed: Option<u64>,
    n: usize,
    expect_violations: bool,
    tol: &Tolerances,
    as_text: bool,
) -> Result<u8, Error> {
    let theorem: TheoremId = theorem.parse()?;
    let mut config = CampaignConfig::new(theorem, trials, seed.or_else(env_seed).unwrap_or(0), n);
    config.tolerances = *tol;
    config.expect_violations = expect_violations;
    let summary = campaign::run_campaign(&config)?;
    if as_text {
        println!(
            "{}: {} trials, {} counterexamples",
            summary.theorem, summary.trials, summary.counterexamples
        );
    } else {
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary"));
    }
    if summary.counterexamples > 0 && !expect_violations {
        Ok(EXIT_ANOMALY)
    } else {
        Ok(0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match cli.tols.resolve() {
        Ok(t) => t,
        Err(e) => return fail(EXIT_PARSE, e),
    };
    let result = match &cli.cmd {
        Cmd::Analyze { input } => cmd_analyze(input, &tol, cli.text).map(|_| 0),
        Cmd::Hw { first, second, x_from } => cmd_hw(first, second, *x_from, &tol, cli.text),
        Cmd::Reproduce { only } => cmd_reproduce(only.as_deref(), &tol, cli.json),
        Cmd::Campaign { theorem, trials, seed, n, expect_violations } => {
            cmd_campaign(theorem, *trials, *seed, *n, *expect_violations, &tol, cli.text)
        }
    };
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(exit_for(&e), e),
    }
}
