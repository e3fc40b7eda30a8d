//! Command-line interface: compute single polynomials, run verification
//! suites, and print root-system data.  All reports are deterministic; wall
//! time is only ever written to stderr, and only on request.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use maclab::cache;
use maclab::poly::{build_doc, doc_to_json, doc_to_text, method_name};
use maclab::report::{OutputFormat, Report};
use maclab::select::{fund_coords, parse_k_range, parse_type, parse_types, parse_weight};
use maclab::suites::{build_suite, run_cases, SuiteParams, SUITE_NAMES};
use maclab_core::macpoly::Method;
use maclab_core::rootsys::KParam;

#[derive(Parser)]
#[command(
    name = "maclab",
    version,
    about = "Exact verification of root-system polynomial identities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Gram,
    Eigen,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Gram => Method::Gram,
            MethodArg::Eigen => Method::Eigen,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutArg {
    Text,
    Json,
}

impl From<OutArg> for OutputFormat {
    fn from(o: OutArg) -> OutputFormat {
        match o {
            OutArg::Text => OutputFormat::Text,
            OutArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Args)]
struct CommonVerify {
    /// Comma-separated root-system labels, e.g. `A1,B2`.
    #[arg(long = "type", default_value = "A1,A2")]
    types: String,
    /// Multiplicity value or inclusive range, e.g. `2` or `1..3`.
    #[arg(long, default_value = "1..2")]
    k: String,
    /// Cap on the sum of fundamental coordinates of visited weights.
    #[arg(long, default_value_t = 3)]
    maxheight: i64,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Worker threads; the report is identical for any value.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = OutArg::Text)]
    out: OutArg,
    /// Variable count for the rational-coefficient operator checks.
    #[arg(long, default_value_t = 4)]
    vars: usize,
    /// Total-degree cap for the rational-coefficient operator checks.
    #[arg(long, default_value_t = 6)]
    degree: u32,
    /// Print elapsed wall time to stderr (never part of the report).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one polynomial, report its coefficients and norm verdict.
    Poly {
        /// Root-system label, e.g. `B2`.
        #[arg(long = "type")]
        type_: String,
        /// Multiplicity for every root length.
        #[arg(long, default_value_t = 1)]
        k: i64,
        /// Override for long roots.
        #[arg(long)]
        klong: Option<i64>,
        /// Override for short roots.
        #[arg(long)]
        kshort: Option<i64>,
        /// Dominant weight in fundamental coordinates, e.g. `1,0`.
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = OutArg::Text)]
        out: OutArg,
        /// Directory for cached results (falls back to MACLAB_CACHE_DIR).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Print elapsed wall time to stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Run one verification suite and print its report.
    Verify {
        /// Suite name: norm, ct, daha-relations, shift, dunkl, adjoint, antisym.
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        common: CommonVerify,
    },
    /// Constant-term identities (shorthand for `verify --suite ct`).
    Ct {
        #[command(flatten)]
        common: CommonVerify,
    },
    /// Rational-coefficient operator checks (shorthand for `verify --suite dunkl`).
    Dunkl {
        #[command(flatten)]
        common: CommonVerify,
    },
    /// Print the exact data of one root system.
    Info {
        #[arg(long = "type")]
        type_: String,
        #[arg(long, value_enum, default_value_t = OutArg::Text)]
        out: OutArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Poly {
            type_,
            k,
            klong,
            kshort,
            weight,
            method,
            out,
            cache_dir,
            timings,
        } => cmd_poly(
            &type_, k, klong, kshort, &weight, method, out, cache_dir, timings,
        ),
        Cmd::Verify { suite, common } => cmd_verify(&suite, &common),
        Cmd::Ct { common } => cmd_verify("ct", &common),
        Cmd::Dunkl { common } => cmd_verify("dunkl", &common),
        Cmd::Info { type_, out } => cmd_info(&type_, out),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Writes to stdout, tolerating a closed pipe (e.g. `maclab info | head`).
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(s.as_bytes());
}

#[allow(clippy::too_many_arguments)]
fn cmd_poly(
    type_: &str,
    k: i64,
    klong: Option<i64>,
    kshort: Option<i64>,
    weight: &str,
    method: MethodArg,
    out: OutArg,
    cache_dir: Option<PathBuf>,
    timings: bool,
) -> ExitCode {
    let started = Instant::now();
    let sel = match parse_type(type_) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let rs = sel.build();
    let kp = KParam {
        k_long: klong.unwrap_or(k),
        k_short: kshort.unwrap_or(k),
    };
    if kp.k_long < 0 || kp.k_short < 0 {
        return usage_error("multiplicities must be non-negative");
    }
    let lambda = match parse_weight(&rs, weight) {
        Ok(w) => w,
        Err(e) => return usage_error(&e),
    };
    let dir = cache::resolve_dir(cache_dir.as_deref());
    let path = dir
        .as_ref()
        .map(|d| cache::entry_path(d, &sel.label, &kp, &fund_coords(&rs, &lambda)));
    let mut cached = false;
    let doc = match path.as_ref().and_then(|p| cache::load(p, &rs, &kp)) {
        Some(doc) => {
            cached = true;
            doc
        }
        None => {
            let doc = build_doc(&rs, &sel.label, &kp, &lambda, method.into());
            if let Some(p) = &path {
                cache::store(p, &doc);
            }
            doc
        }
    };
    match out {
        OutArg::Text => emit(&doc_to_text(&doc)),
        OutArg::Json => emit(&doc_to_json(&doc)),
    }
    if timings {
        eprintln!(
            "# {} in {:.3}s (method {}, cached: {cached})",
            doc.verdict,
            started.elapsed().as_secs_f64(),
            method_name(method.into()),
        );
    }
    if doc.verdict == "PASS" {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_verify(suite: &str, common: &CommonVerify) -> ExitCode {
    let started = Instant::now();
    let types = match parse_types(&common.types) {
        Ok(t) => t,
        Err(e) => return usage_error(&e),
    };
    let (k_lo, k_hi) = match parse_k_range(&common.k) {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    if !SUITE_NAMES.contains(&suite) {
        return usage_error(&format!(
            "unknown suite `{suite}` (expected one of: {})",
            SUITE_NAMES.join(", ")
        ));
    }
    let params = SuiteParams {
        types,
        k_lo,
        k_hi,
        maxheight: common.maxheight,
        method: common.method.into(),
        dunkl_vars: common.vars,
        dunkl_degree: common.degree,
    };
    let cases = match build_suite(suite, &params) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let total = cases.len();
    let records = run_cases(common.jobs, cases);
    let report = Report::new(suite, records);
    emit(&report.render(common.out.into()));
    if common.timings {
        eprintln!(
            "# {total} cases in {:.3}s on {} worker(s)",
            started.elapsed().as_secs_f64(),
            common.jobs.max(1)
        );
    }
    ExitCode::from(report.exit_code() as u8)
}

fn cmd_info(type_: &str, out: OutArg) -> ExitCode {
    let sel = match parse_type(type_) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let rs = sel.build();
    let roots: Vec<Vec<i64>> = rs.positive_roots.iter().map(|r| r.coords.clone()).collect();
    let half_len: Vec<i64> = rs.positive_roots.iter().map(|r| r.half_len_sq).collect();
    let fund: Vec<Vec<i64>> = (0..rs.rank)
        .map(|i| rs.to_exp(&rs.fund_weights[i]).expect("lattice weight"))
        .collect();
    let minuscule: Vec<Vec<i64>> = rs
        .minuscule_coweights_nonzero()
        .iter()
        .map(|w| rs.to_exp(w).expect("minuscule pairings are integral"))
        .collect();
    let theta = rs.positive_roots[rs.theta].coords.clone();
    match out {
        OutArg::Json => {
            let doc = serde_json::json!({
                "family": sel.label,
                "rank": rs.rank,
                "q_denominator": rs.q_denominator,
                "weyl_order": rs.weyl_order(),
                "positive_roots": roots,
                "half_length_squares": half_len,
                "highest_root": theta,
                "fundamental_weights_doubled": fund,
                "minuscule_coweights_doubled": minuscule,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("info serializes");
            s.push('\n');
            emit(&s);
        }
        OutArg::Text => {
            let mut s = String::new();
            s.push_str(&format!("# root system {}\n", sel.label));
            s.push_str(&format!("rank: {}\n", rs.rank));
            s.push_str(&format!("q = u^D with D = {}\n", rs.q_denominator));
            s.push_str(&format!("Weyl group order: {}\n", rs.weyl_order()));
            s.push_str(&format!(
                "positive roots (root-lattice coords): {}\n",
                fmt_vecs(&roots)
            ));
            s.push_str(&format!(
                "half squared lengths (long roots have 2): {}\n",
                half_len
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            s.push_str(&format!("highest root: {}\n", fmt_vec(&theta)));
            s.push_str(&format!(
                "fundamental weights (doubled coords): {}\n",
                fmt_vecs(&fund)
            ));
            s.push_str(&format!(
                "nonzero minuscule coweights (doubled coords): {}\n",
                if minuscule.is_empty() {
                    "none".to_string()
                } else {
                    fmt_vecs(&minuscule)
                }
            ));
            emit(&s);
        }
    }
    ExitCode::SUCCESS
}

fn fmt_vec(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(","))
}

fn fmt_vecs(vs: &[Vec<i64>]) -> String {
    vs.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join(" ")
}
