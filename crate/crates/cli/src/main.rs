//! Command-line front end: every library operation behind a subcommand,
//! JSON on stdout, diagnostics on stderr. Exit codes: 0 decided (either
//! way), 2 unknown / budget exhausted, 3 input error.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sl3ext_core::classes::{classify, se2_sym_check, stable_range_flags, wsu2_check, Guards, RingClass};
use sl3ext_core::error::Error;
use sl3ext_core::extend::companion::companion_test_matrix;
use sl3ext_core::extend::ex11::ex11_certificate;
use sl3ext_core::extend::lift::lift_det_zero;
use sl3ext_core::extend::nonfull::nonfull_decompose;
use sl3ext_core::extend::nu::nu_enumerate;
use sl3ext_core::extend::pell::pell_simple_extendable;
use sl3ext_core::extend::pr5::simple_extension_pr5;
use sl3ext_core::extend::reduction::extend_via_reduction;
use sl3ext_core::extend::smith::{simple_extension_snf, smith2};
use sl3ext_core::extend::{find_simple_extension_search, fullness_certificate};
use sl3ext_core::matrix::Mat2;
use sl3ext_core::report;
use sl3ext_core::ring::parse::parse_ring;
use sl3ext_core::ring::RingSpec;
use sl3ext_core::statements::witnesses::{
    c14_witness, c9_extension, cr3_statement3_witness, cr3_witness, th2_2_witness,
    th5_8_witness,
};
use sl3ext_core::statements::{
    check_all_statements, check_statement, verify_th8_chain, Budget, ChainSample, Status,
};
use sl3ext_core::verify::run_acceptance;

#[derive(Parser)]
#[command(
    name = "sl3ext",
    about = "SL3-extensions of unimodular 2x2 matrices over commutative rings",
    version
)]
struct Cli {
    /// Worker count (accepted for interface compatibility; execution is
    /// the sequential reference scan, which the output contract equals)
    #[arg(long, global = true, default_value_t = 1)]
    workers: u32,
    /// JSON output (always on; accepted for interface compatibility)
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an SL3-extension (or simple extension) of a unimodular matrix
    Extend {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        /// Require the (3,3) entry to be 0
        #[arg(long)]
        simple: bool,
        /// Construction route: snf, pr5, reduction, search, or nonfull
        #[arg(long, default_value = "auto")]
        route: String,
        #[arg(long, default_value_t = 25)]
        budget: i64,
    },
    /// Decide the ten statements for a matrix, or verify the implication
    /// chain over a finite ring with --chain
    Statements {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: Option<String>,
        /// Single statement index 1..10
        #[arg(long)]
        k: Option<u8>,
        /// Run the chain verifier over the whole ring
        #[arg(long)]
        chain: bool,
        /// Sample size for --chain (default: exhaustive)
        #[arg(long)]
        sample: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        budget: i64,
    },
    /// Enumerate nu values with bounded witnesses
    Nu {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 25)]
        bound: i64,
    },
    /// t-adic determinant lifting sequence
    Lift {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        t: i64,
        #[arg(long, default_value_t = 4)]
        steps: u32,
    },
    /// Classify a finite ring against the ring classes
    Classify {
        /// Single ring, e.g. "Z/12"; or use --sweep
        #[arg(long, default_value = "Z/2")]
        ring: String,
        /// Sweep Z/n over an inclusive range, e.g. "2..16"
        #[arg(long)]
        sweep: Option<String>,
        /// Comma-separated class list (default: all)
        #[arg(long)]
        classes: Option<String>,
        /// Also run the stable-range flags
        #[arg(long)]
        stable_range: bool,
        /// CSV summary instead of JSON
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 16)]
        guard_matrix: u64,
        #[arg(long, default_value_t = 6)]
        guard_j21: u64,
    },
    /// Companion test matrix data and universal-matrix consistency
    Companion {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
    },
    /// Pell-type witness search for symmetric det-0 matrices
    Pell {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 64)]
        budget: i64,
    },
    /// Solve one of the named witness equations
    Witness {
        /// One of th5-8, cr3-2, cr3-3, c14, c9, th2-2, ex11
        #[arg(long)]
        tag: String,
        /// Comma-separated integer arguments (tag-dependent)
        #[arg(long)]
        args: Option<String>,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 25)]
        budget: i64,
    },
    /// Replay the canned worked examples as a regression suite
    VerifyPaper {
        /// Restrict to one criterion tag (sec5, nu, snf, chain, lift,
        /// ex11, symbolic, witness, pell, classes)
        #[arg(long)]
        only: Option<String>,
    },
}

/// 0 decided, 2 unknown/budget, 3 input error.
struct Outcome {
    payload: Value,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = (cli.workers, cli.json);
    let started = Instant::now();
    let (name, result) = dispatch(cli.command);
    let wall = started.elapsed().as_millis();
    match result {
        Ok(Outcome { payload, exit }) => {
            let doc = json!({
                "schema": report::SCHEMA,
                "subcommand": name,
                "outcome": payload,
                "exit_code": exit,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            eprintln!("{name}: exit {exit} in {wall} ms");
            ExitCode::from(exit)
        }
        Err(e) => {
            // budget exhaustion and undecided outcomes are exit 2, not
            // input errors
            let exit = match &e {
                Error::BudgetExhausted(_) | Error::Undecided(_) => 2u8,
                _ => 3u8,
            };
            let doc = json!({
                "schema": report::SCHEMA,
                "subcommand": name,
                "error": e.to_string(),
                "exit_code": exit,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            eprintln!("{name}: error: {e}");
            ExitCode::from(exit)
        }
    }
}

fn dispatch(cmd: Command) -> (&'static str, Result<Outcome, Error>) {
    match cmd {
        Command::Extend { ring, matrix, simple, route, budget } => {
            ("extend", cmd_extend(&ring, &matrix, simple, &route, budget))
        }
        Command::Statements { ring, matrix, k, chain, sample, seed, budget } => {
            ("statements", cmd_statements(&ring, matrix.as_deref(), k, chain, sample, seed, budget))
        }
        Command::Nu { ring, matrix, bound } => ("nu", cmd_nu(&ring, &matrix, bound)),
        Command::Lift { ring, matrix, t, steps } => ("lift", cmd_lift(&ring, &matrix, t, steps)),
        Command::Classify { ring, sweep, classes, stable_range, csv, guard_matrix, guard_j21 } => (
            "classify",
            cmd_classify(
                &ring,
                sweep.as_deref(),
                classes.as_deref(),
                stable_range,
                csv,
                guard_matrix,
                guard_j21,
            ),
        ),
        Command::Companion { ring, matrix } => ("companion", cmd_companion(&ring, &matrix)),
        Command::Pell { ring, matrix, budget } => ("pell", cmd_pell(&ring, &matrix, budget)),
        Command::Witness { tag, args, ring, matrix, budget } => (
            "witness",
            cmd_witness(&tag, args.as_deref(), ring.as_deref(), matrix.as_deref(), budget),
        ),
        Command::VerifyPaper { only } => ("verify-paper", cmd_verify_paper(only.as_deref())),
    }
}

fn parse_mat(ring: &RingSpec, text: &str) -> Result<Mat2, Error> {
    Mat2::parse(ring, text)
}

fn cmd_extend(
    ring_s: &str,
    matrix_s: &str,
    simple: bool,
    route: &str,
    budget: i64,
) -> Result<Outcome, Error> {
    let ring = parse_ring(ring_s)?;
    let a = parse_mat(&ring, matrix_s)?;
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let effective_route = match (route, &ring) {
        ("auto", RingSpec::Quadratic(_)) => "search",
        ("auto", RingSpec::Product(_, _)) => "search",
        ("auto", RingSpec::ModN(_)) => "snf",
        ("auto", _) if simple => "snf",
        ("auto", _) => "reduction",
        (r, _) => r,
    };
    let mut payload = json!({
        "ring": ring.to_string(),
        "matrix": report::mat2(&a),
        "simple_requested": simple,
        "route": effective_route,
    });
    let obj = payload.as_object_mut().unwrap();
    match effective_route {
        "snf" => {
            let w = simple_extension_snf(&a)?;
            obj.insert("witness".into(), report::ext_witness(&w));
            obj.insert("snf".into(), {
                let s = smith2(&a)?;
                json!({
                    "M": report::mat2(&s.m), "N": report::mat2(&s.n),
                    "d1": report::elem(&s.d1), "d2": report::elem(&s.d2),
                })
            });
            Ok(Outcome { payload, exit: 0 })
        }
        "pr5" => {
            let data = simple_extension_pr5(&a, budget)?;
            obj.insert("witness".into(), report::ext_witness(&data.witness));
            obj.insert(
                "pr5".into(),
                json!({
                    "g": data.g.to_string(), "h": data.h.to_string(),
                    "l": data.l.to_string(), "m": data.m.to_string(),
                    "w": data.w.to_string(), "v": data.v.to_string(),
                    "branch": format!("{:?}", data.branch),
                }),
            );
            Ok(Outcome { payload, exit: 0 })
        }
        "reduction" => {
            if simple {
                let w = simple_extension_snf(&a)?;
                obj.insert("witness".into(), report::ext_witness(&w));
            } else {
                let ext = extend_via_reduction(&a)?;
                obj.insert("extension".into(), report::mat3(&ext));
            }
            Ok(Outcome { payload, exit: 0 })
        }
        "nonfull" => {
            let nf = nonfull_decompose(&a)?;
            obj.insert("nonfull".into(), report::nonfull(&nf));
            // border the factorization with Bezout pairs of column and row
            let ce = ring
                .unimodular_certificate(&[nf.col.0.clone(), nf.col.1.clone()])?
                .ok_or(Error::NotUnimodular)?;
            let rs = ring
                .unimodular_certificate(&[nf.row.0.clone(), nf.row.1.clone()])?
                .ok_or(Error::NotUnimodular)?;
            let w = sl3ext_core::extend::ExtWitness::from_parts(
                &a,
                ce[0].clone(),
                ce[1].clone(),
                rs[0].clone(),
                rs[1].clone(),
                ring.zero(),
            )?;
            obj.insert("witness".into(), report::ext_witness(&w));
            Ok(Outcome { payload, exit: 0 })
        }
        "search" => match find_simple_extension_search(&a, budget)? {
            Some(w) => {
                obj.insert("witness".into(), report::ext_witness(&w));
                Ok(Outcome { payload, exit: 0 })
            }
            None => {
                obj.insert("witness".into(), Value::Null);
                obj.insert("budget".into(), json!(budget));
                if matches!(&ring, RingSpec::Quadratic(_)) && ring.is_zero(&a.det()?)? {
                    if let Some(cert) = fullness_certificate(&a)? {
                        obj.insert("fullness_certificate".into(), report::fullness(&cert));
                        obj.insert(
                            "note".into(),
                            json!(
                                "matrix is full: no simple extension exists \
                                 (irreducible entry divides neither partner)"
                            ),
                        );
                    }
                }
                Ok(Outcome { payload, exit: 2 })
            }
        },
        other => Err(Error::Parse(format!("unknown route {other:?}"))),
    }
}

fn cmd_statements(
    ring_s: &str,
    matrix_s: Option<&str>,
    k: Option<u8>,
    chain: bool,
    sample: Option<u32>,
    seed: u64,
    budget: i64,
) -> Result<Outcome, Error> {
    let ring = parse_ring(ring_s)?;
    if chain {
        let sample = match sample {
            None => ChainSample::All,
            Some(count) => ChainSample::Random { count, seed },
        };
        let rep = verify_th8_chain(&ring, sample)?;
        // a chain report is a decided outcome either way; violations are
        // visible in the payload
        return Ok(Outcome { payload: report::chain_report(&rep), exit: 0 });
    }
    let matrix_s = matrix_s.ok_or_else(|| Error::Parse("--matrix required".into()))?;
    let a = parse_mat(&ring, matrix_s)?;
    let budget = Budget { box_bound: budget, ..Budget::default() };
    match k {
        Some(k) => {
            let st = check_statement(&a, k, &budget)?;
            let exit = match &st {
                Status::Unknown { .. } => 2,
                _ => 0,
            };
            let payload = json!({
                "ring": ring.to_string(),
                "matrix": report::mat2(&a),
                "k": k,
                "result": report::status(&st),
            });
            Ok(Outcome { payload, exit })
        }
        None => {
            let rep = check_all_statements(&a, &budget)?;
            rep.revalidate()?;
            let exit = if rep
                .statements
                .values()
                .any(|s| matches!(s, Status::Unknown { .. }))
            {
                2
            } else {
                0
            };
            Ok(Outcome { payload: report::statement_report(&rep), exit })
        }
    }
}

fn cmd_nu(ring_s: &str, matrix_s: &str, bound: i64) -> Result<Outcome, Error> {
    let ring = parse_ring(ring_s)?;
    if ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("nu runs over Z".into()));
    }
    let a = parse_mat(&ring, matrix_s)?;
    let nus = nu_enumerate(&a, bound)?;
    Ok(Outcome { payload: report::nu_sample(&nus), exit: 0 })
}

fn cmd_lift(ring_s: &str, matrix_s: &str, t: i64, steps: u32) -> Result<Outcome, Error> {
    let ring = parse_ring(ring_s)?;
    if ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("lift runs over Z".into()));
    }
    let a = parse_mat(&ring, matrix_s)?;
    let seq = lift_det_zero(&a, t, steps)?;
    Ok(Outcome { payload: report::lift_sequence(&seq), exit: 0 })
}

fn cmd_classify(
    ring_s: &str,
    sweep: Option<&str>,
    classes_s: Option<&str>,
    stable_range: bool,
    csv: bool,
    guard_matrix: u64,
    guard_j21: u64,
) -> Result<Outcome, Error> {
    let classes: Vec<RingClass> = match classes_s {
        None => RingClass::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(|s| {
                RingClass::parse(s).ok_or_else(|| Error::Parse(format!("unknown class {s:?}")))
            })
            .collect::<Result<_, _>>()?,
    };
    let guards = Guards { matrix_ring_max: guard_matrix, j21_max: guard_j21, ..Guards::default() };
    let rings: Vec<RingSpec> = match sweep {
        None => vec![parse_ring(ring_s)?],
        Some(range) => {
            let (lo, hi) = range
                .split_once("..")
                .ok_or_else(|| Error::Parse("sweep must look like 2..16".into()))?;
            let lo: i64 = lo.trim().parse().map_err(|_| Error::Parse("bad sweep start".into()))?;
            let hi: i64 = hi.trim().parse().map_err(|_| Error::Parse("bad sweep end".into()))?;
            if lo < 2 || hi < lo {
                return Err(Error::Parse("sweep range must satisfy 2 <= start <= end".into()));
            }
            (lo..=hi).map(RingSpec::mod_n).collect::<Result<_, _>>()?
        }
    };
    let mut reports = Vec::new();
    for ring in &rings {
        reports.push(classify(ring, &classes, &guards)?);
    }
    if csv {
        let mut combined = String::from("ring,class,status\n");
        for rep in &reports {
            for line in sl3ext_core::report::class_report_csv(rep).lines().skip(1) {
                combined.push_str(line);
                combined.push('\n');
            }
        }
        let payload = json!({ "csv": combined });
        return Ok(Outcome { payload, exit: 0 });
    }
    if reports.len() == 1 {
        let mut payload = report::class_report(&reports[0]);
        if stable_range {
            let f = stable_range_flags(&rings[0])?;
            payload.as_object_mut().unwrap().insert(
                "stable_range".into(),
                json!({ "sr1": f.sr1, "fsr15": f.fsr15, "asr1": f.asr1 }),
            );
        }
        let _ = (wsu2_check, se2_sym_check); // exposed through --classes WSU2 / SE2sym
        return Ok(Outcome { payload, exit: 0 });
    }
    let mut out = Vec::new();
    for (ring, rep) in rings.iter().zip(&reports) {
        let mut v = report::class_report(rep);
        if stable_range {
            let f = stable_range_flags(ring)?;
            v.as_object_mut().unwrap().insert(
                "stable_range".into(),
                json!({ "sr1": f.sr1, "fsr15": f.fsr15, "asr1": f.asr1 }),
            );
        }
        out.push(v);
    }
    Ok(Outcome { payload: json!({ "sweep": out }), exit: 0 })
}

fn cmd_companion(ring_s: &str, matrix_s: &str) -> Result<Outcome, Error> {
    let ring = parse_ring(ring_s)?;
    if ring != RingSpec::Integers {
        return Err(Error::UnsupportedRing("companion runs over Z".into()));
    }
    let a = parse_mat(&ring, matrix_s)?;
    let data = companion_test_matrix(&a)?;
    Ok(Outcome { payload: report::companion(&data), exit: 0 })
}

fn cmd_pell(ring_s: &str, matrix_s: &str, budget: i64) -> Result<Outcome, Error> {
    let ring = parse_ring(ring_s)?;
    let a = parse_mat(&ring, matrix_s)?;
    match pell_simple_extendable(&a, budget)? {
        Some(w) => Ok(Outcome { payload: report::pell(&w), exit: 0 }),
        None => Ok(Outcome {
            payload: json!({ "found": false, "budget": budget }),
            exit: 2,
        }),
    }
}

fn parse_int_args(args: Option<&str>, n: usize) -> Result<Vec<num_bigint::BigInt>, Error> {
    let s = args.ok_or_else(|| Error::Parse("--args required for this tag".into()))?;
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(Error::Parse(format!("expected {n} comma-separated integers")));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {p:?}")))
        })
        .collect()
}

fn cmd_witness(
    tag: &str,
    args: Option<&str>,
    ring_s: Option<&str>,
    matrix_s: Option<&str>,
    budget: i64,
) -> Result<Outcome, Error> {
    let need_matrix = || -> Result<Mat2, Error> {
        let ring = parse_ring(ring_s.unwrap_or("Z"))?;
        let m = matrix_s.ok_or_else(|| Error::Parse("--matrix required for this tag".into()))?;
        parse_mat(&ring, m)
    };
    let payload_of = |w| json!({ "tag": tag, "witness": report::eq_witness(&w) });
    match tag.to_ascii_lowercase().as_str() {
        "th5-8" => {
            let v = parse_int_args(args, 4)?;
            let w = th5_8_witness(&v[0], &v[1], &v[2], &v[3], budget)?;
            Ok(Outcome { payload: payload_of(w), exit: 0 })
        }
        "cr3-2" => {
            let v = parse_int_args(args, 3)?;
            let w = cr3_witness(&v[0], &v[1], &v[2], budget)?;
            Ok(Outcome { payload: payload_of(w), exit: 0 })
        }
        "cr3-3" => {
            let v = parse_int_args(args, 3)?;
            let w = cr3_statement3_witness(&v[0], &v[1], &v[2], budget)?;
            Ok(Outcome { payload: payload_of(w), exit: 0 })
        }
        "c14" => {
            let v = parse_int_args(args, 3)?;
            let w = c14_witness(&v[0], &v[1], &v[2], budget)?;
            Ok(Outcome { payload: payload_of(w), exit: 0 })
        }
        "c9" => {
            let a = need_matrix()?;
            match c9_extension(&a, budget)? {
                Some(w) => Ok(Outcome { payload: payload_of(w), exit: 0 }),
                None => Ok(Outcome {
                    payload: json!({ "tag": tag, "found": false }),
                    exit: 0,
                }),
            }
        }
        "th2-2" => {
            let a = need_matrix()?;
            let st = th2_2_witness(&a, &Budget { box_bound: budget, ..Budget::default() })?;
            let exit = match &st {
                Status::Unknown { .. } => 2,
                _ => 0,
            };
            Ok(Outcome {
                payload: json!({ "tag": tag, "result": report::status(&st) }),
                exit,
            })
        }
        "ex11" => {
            let v = parse_int_args(args, 1)?;
            let k = u64::try_from(&v[0])
                .map_err(|_| Error::Parse("k must be a positive integer".into()))?;
            let cert = ex11_certificate(k, budget.min(10))?;
            Ok(Outcome { payload: report::ex11(&cert), exit: 0 })
        }
        other => Err(Error::Parse(format!("unknown witness tag {other:?}"))),
    }
}

fn cmd_verify_paper(only: Option<&str>) -> Result<Outcome, Error> {
    let results = run_acceptance(only);
    if results.is_empty() {
        return Err(Error::Parse(format!("no criterion matches tag {only:?}")));
    }
    for r in &results {
        eprintln!("{}", r.line());
    }
    let all = results.iter().all(|r| r.passed);
    let payload = json!({
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "wall_ms": r.wall_ms as u64,
            "limit_ms": r.limit_ms as u64,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
        "all_passed": all,
    });
    Ok(Outcome { payload, exit: if all { 0 } else { 1 } })
}
