//! `qrr`: command-line driver for the exact q-series, partition, crystal,
//! and certificate verifications in `qrr-core`.
//!
//! Every command prints one line per verification report and exits with 0
//! when everything passed, 1 on a mathematical mismatch (the witness is
//! printed), and 2 on usage errors. `--json PATH` additionally writes the
//! report stream as a JSON array; `--stable` removes timing so identical
//! configurations produce byte-identical output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qrr_core::crystal::{self, CalibrationOutcome, Convention};
use qrr_core::identity;
use qrr_core::partitions;
use qrr_core::report::{params, VerificationReport, Witness};
use qrr_core::series::{inv_poch1_table, poch_inf_mod, poch_neg_xq, QLaurent, XQSeries};

#[derive(Parser)]
#[command(
    name = "qrr",
    about = "Exact coefficient-by-coefficient verification of the crystal route to the second Rogers-Ramanujan identity",
    version
)]
struct Cli {
    /// Write the report stream as a JSON array to this path
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Deterministic output: omit timing fields everywhere
    #[arg(long, global = true)]
    stable: bool,

    /// Where the calibrated crystal convention is pinned
    #[arg(
        long,
        global = true,
        value_name = "PATH",
        default_value = ".qrr-convention.json"
    )]
    convention_file: PathBuf,

    /// Ignore a pinned convention and recalibrate from scratch
    #[arg(long, global = true)]
    recalibrate: bool,

    #[command(subcommand)]
    command: Command,
}

fn order_arg() -> clap::builder::RangedI64ValueParser {
    clap::value_parser!(i64).range(0..=100_000)
}

#[derive(Args, Clone)]
struct Theorem2Args {
    /// Truncation order N
    #[arg(short = 'N', long = "order", default_value_t = 60, value_parser = order_arg())]
    order: i64,
    /// Number of components k
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=64))]
    k: u32,
}

#[derive(Args, Clone)]
struct CrystalArgs {
    /// Number of tensor factors k
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=16))]
    k: u32,
    /// Largest total size generated
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(0..=40))]
    max_size: u64,
    /// Calibration window (sizes checked against the enumerations)
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(0..=40))]
    calibration_size: u64,
    /// Write a DOT rendering of the component graph to this path
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct OrderXCapArgs {
    /// Truncation order N
    #[arg(short = 'N', long = "order", default_value_t = 50, value_parser = order_arg())]
    order: i64,
    /// x-degree cap
    #[arg(long, default_value_t = 25)]
    x_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SeriesName {
    F,
    G,
    #[value(name = "f-x1")]
    FX1,
    #[value(name = "g-x1")]
    GX1,
    SkLhs,
    SkRhs,
    PochNegXq,
    Rr1Sum,
    Rr1Product,
    Rr2Sum,
    Rr2Product,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Run every verification at its default parameters
    All,
    /// Both sides of the Kleshchev generating-function identity
    ///
    /// Cost: the left side enumerates S_k once (sub-exponential in N); the
    /// right side is a k-fold tuple sum with O(N^2) series products.
    Theorem2(Theorem2Args),
    /// Crystal component of the highest-weight tuple vs the Kleshchev set
    ///
    /// Cost: breadth-first closure over the component, O(k * len) signature
    /// work per element; calibration repeats it for four conventions.
    Crystal(CrystalArgs),
    /// q-binomial coefficients vs boxed-partition enumeration
    Lec {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(0..=40))]
        n_max: u32,
    },
    /// Fixed-length strict partitions vs staircase-shifted boxed partitions
    Lea {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(0..=20))]
        i_max: u32,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(0..=12))]
        j_max: u32,
    },
    /// V/W equinumerosity, the W product formula, and staircase telescoping
    Bijection {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=4))]
        k_max: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(0..=6))]
        entries_max: u32,
        #[arg(long, default_value_t = 25, value_parser = order_arg())]
        max_size: i64,
    },
    /// q-difference equation for G
    Gdiff(OrderXCapArgs),
    /// q-difference equation for F, with the coefficient recurrence
    Fdiff(OrderXCapArgs),
    /// Certificate operator annihilates f on the whole lattice window
    ///
    /// Cost: ~40 operator terms per lattice point, each an O(N) monomial
    /// product against a memoized f value (O(N^2) to build once).
    Certificate {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(i64).range(0..=40))]
        n_max: i64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(-1..=40))]
        t_max: i64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(-1..=40))]
        u_max: i64,
        #[arg(short = 'N', long = "order", default_value_t = 120, value_parser = order_arg())]
        order: i64,
    },
    /// Three-term recurrence for the even-index coefficients of G
    GRecurrence {
        #[arg(long, default_value_t = -4)]
        m_min: i64,
        #[arg(long, default_value_t = 24)]
        m_max: i64,
        #[arg(short = 'N', long = "order", default_value_t = 120, value_parser = order_arg())]
        order: i64,
    },
    /// Six-term recurrence for f_n
    FnRecurrence {
        #[arg(long, default_value_t = 0)]
        n_min: i64,
        #[arg(long, default_value_t = 20)]
        n_max: i64,
        #[arg(short = 'N', long = "order", default_value_t = 120, value_parser = order_arg())]
        order: i64,
    },
    /// F(x,q) = (-xq;q) G(x,q), including the x = 1 specialization
    Fincor(OrderXCapArgs),
    /// Single-sum form of f_n vs the triple sum
    Warnaar {
        #[arg(long, default_value_t = 20)]
        n_max: i64,
        #[arg(short = 'N', long = "order", default_value_t = 120, value_parser = order_arg())]
        order: i64,
    },
    /// Terminating q-Chu-Vandermonde evaluation over a grid of (e, m)
    Chu {
        #[arg(long, default_value_t = -10, value_parser = clap::value_parser!(i64).range(-60..=0))]
        e_min: i64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(0..=60))]
        m_max: i64,
        #[arg(short = 'N', long = "order", default_value_t = 60, value_parser = order_arg())]
        order: i64,
    },
    /// Euler's expansion of (-xq;q) and the product identity (q;q^2)(-q;q)=1
    Euler {
        #[arg(short = 'N', long = "order", default_value_t = 100, value_parser = order_arg())]
        order: i64,
        #[arg(long, default_value_t = 20)]
        x_cap: usize,
    },
    /// Both Rogers-Ramanujan identities and the two routes to G(1,q)
    ///
    /// Cost: O(sqrt(N)) summands and O(N^2) per product or inversion.
    Rr {
        #[arg(short = 'N', long = "order", default_value_t = 200, value_parser = order_arg())]
        order: i64,
    },
    /// The four-link chain ending in G(1,q) = 1/(q^2,q^3;q^5)
    Characters {
        #[arg(short = 'N', long = "order", default_value_t = 40, value_parser = order_arg())]
        order: i64,
    },
    /// Print coefficients of a named series in ascending (x, q) order
    SeriesDump {
        #[arg(value_enum)]
        name: SeriesName,
        #[arg(short = 'N', long = "order", default_value_t = 20, value_parser = order_arg())]
        order: i64,
        #[arg(long, default_value_t = 10)]
        x_cap: usize,
        /// k for the sk-lhs / sk-rhs series
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=16))]
        k: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {:#}", err);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Command::SeriesDump {
        name,
        order,
        x_cap,
        k,
    } = &cli.command
    {
        return series_dump(cli, *name, *order, *x_cap, *k as usize);
    }
    let mut reports = Vec::new();
    dispatch(cli, &cli.command, &mut reports)?;
    if cli.stable {
        for r in &mut reports {
            r.strip_timing();
        }
    }
    for r in &reports {
        print_report(r);
    }
    if let Some(path) = &cli.json {
        let body = serde_json::to_string_pretty(&reports).context("serializing reports")?;
        fs::write(path, body + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let all_pass = reports.iter().all(|r| r.passed());
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn dispatch(cli: &Cli, command: &Command, reports: &mut Vec<VerificationReport>) -> Result<()> {
    match command {
        Command::All => {
            // Fixed command order; failures accumulate without short-circuiting.
            let defaults: Vec<Command> = vec![
                Command::Theorem2(Theorem2Args { order: 60, k: 3 }),
                Command::Crystal(CrystalArgs {
                    k: 3,
                    max_size: 12,
                    calibration_size: 12,
                    dot: None,
                }),
                Command::Lec { n_max: 12 },
                Command::Lea { i_max: 8, j_max: 8 },
                Command::Bijection {
                    k_max: 3,
                    entries_max: 3,
                    max_size: 25,
                },
                Command::Gdiff(OrderXCapArgs {
                    order: 50,
                    x_cap: 25,
                }),
                Command::Fdiff(OrderXCapArgs {
                    order: 50,
                    x_cap: 25,
                }),
                Command::Certificate {
                    n_max: 12,
                    t_max: 8,
                    u_max: 8,
                    order: 120,
                },
                Command::GRecurrence {
                    m_min: -4,
                    m_max: 24,
                    order: 120,
                },
                Command::FnRecurrence {
                    n_min: 0,
                    n_max: 20,
                    order: 120,
                },
                Command::Fincor(OrderXCapArgs {
                    order: 50,
                    x_cap: 25,
                }),
                Command::Warnaar {
                    n_max: 20,
                    order: 120,
                },
                Command::Chu {
                    e_min: -10,
                    m_max: 10,
                    order: 60,
                },
                Command::Euler {
                    order: 100,
                    x_cap: 20,
                },
                Command::Rr { order: 200 },
                Command::Characters { order: 40 },
            ];
            for sub in &defaults {
                dispatch(cli, sub, reports)?;
            }
        }
        Command::Theorem2(a) => {
            reports.push(partitions::verify_theorem2(a.k as usize, a.order));
        }
        Command::Crystal(a) => {
            let outcome = pinned_convention(cli, a.calibration_size, reports)?;
            let mut r = crystal::verify_crystal_theorem(a.k as usize, a.max_size, &outcome.chosen);
            if let Some(path) = &a.dot {
                let dot = crystal::dot_dump(a.k as usize, a.max_size.min(8), &outcome.chosen);
                fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
            }
            r.params
                .insert("qualifiers".into(), json!(outcome.qualifiers.len()));
            reports.push(r);
        }
        Command::Lec { n_max } => {
            let started = Instant::now();
            let mut witness = None;
            'grid: for n in 0..=*n_max {
                for m in 0..=n {
                    let trunc = (m * (n - m) + 1) as i64;
                    let r = partitions::verify_lec(n, m, trunc);
                    if !r.passed() {
                        witness = annotate(r.witness, &format!("(n,m)=({},{})", n, m));
                        break 'grid;
                    }
                }
            }
            reports.push(VerificationReport::from_witness(
                "lec",
                params(&[("n_max", json!(n_max))]),
                witness,
                started,
            ));
        }
        Command::Lea { i_max, j_max } => {
            let started = Instant::now();
            let mut witness = None;
            'grid: for i in 0..=*i_max {
                for j in 0..=*j_max {
                    let trunc = ((i + j) as i64) * (j as i64) + 1;
                    let r = partitions::verify_lea(i, j, trunc);
                    if !r.passed() {
                        witness = annotate(r.witness, &format!("(i,j)=({},{})", i, j));
                        break 'grid;
                    }
                }
            }
            reports.push(VerificationReport::from_witness(
                "lea",
                params(&[("i_max", json!(i_max)), ("j_max", json!(j_max))]),
                witness,
                started,
            ));
        }
        Command::Bijection {
            k_max,
            entries_max,
            max_size,
        } => {
            let started = Instant::now();
            let mut witness = None;
            'grid: for k in 1..=*k_max as usize {
                for tuple in tuples(k, *entries_max as usize) {
                    let r = partitions::verify_prop_leb(&tuple, *max_size);
                    if !r.passed() {
                        witness = annotate(r.witness, &format!("j={:?}", tuple));
                        break 'grid;
                    }
                }
            }
            reports.push(VerificationReport::from_witness(
                "bijection",
                params(&[
                    ("k_max", json!(k_max)),
                    ("entries_max", json!(entries_max)),
                    ("max_size", json!(max_size)),
                ]),
                witness,
                started,
            ));

            let started = Instant::now();
            let mut witness = None;
            'tgrid: for k in 1..=4usize {
                for tuple in tuples(k, 5) {
                    let r = partitions::verify_exponent_telescoping(&tuple);
                    if !r.passed() {
                        witness = annotate(r.witness, &format!("j={:?}", tuple));
                        break 'tgrid;
                    }
                }
            }
            reports.push(VerificationReport::from_witness(
                "exponent_telescoping",
                params(&[("k_max", json!(4)), ("entries_max", json!(5))]),
                witness,
                started,
            ));
        }
        Command::Gdiff(a) => reports.push(identity::verify_gdiff(a.order, a.x_cap)),
        Command::Fdiff(a) => reports.push(identity::verify_fdiff(a.order, a.x_cap)),
        Command::Certificate {
            n_max,
            t_max,
            u_max,
            order,
        } => reports.push(identity::certificate_check(*n_max, *t_max, *u_max, *order)),
        Command::GRecurrence {
            m_min,
            m_max,
            order,
        } => reports.push(identity::g_recurrence_check(*m_min, *m_max, *order)),
        Command::FnRecurrence {
            n_min,
            n_max,
            order,
        } => reports.push(identity::fn_recurrence_check(*n_min, *n_max, *order)),
        Command::Fincor(a) => reports.extend(identity::verify_fincor(a.order, a.x_cap)),
        Command::Warnaar { n_max, order } => {
            reports.push(identity::warnaar_fn_check(*n_max, *order))
        }
        Command::Chu {
            e_min,
            m_max,
            order,
        } => {
            let started = Instant::now();
            let mut witness = None;
            'grid: for e in *e_min..=0 {
                for m in 0..=*m_max {
                    let r = identity::chu_vandermonde_check(e, m, *order);
                    if !r.passed() {
                        witness = annotate(r.witness, &format!("(e,m)=({},{})", e, m));
                        break 'grid;
                    }
                }
            }
            reports.push(VerificationReport::from_witness(
                "chu_vandermonde",
                params(&[
                    ("e_min", json!(e_min)),
                    ("m_max", json!(m_max)),
                    ("order", json!(order)),
                ]),
                witness,
                started,
            ));
        }
        Command::Euler { order, x_cap } => reports.extend(identity::euler_checks(*order, *x_cap)),
        Command::Rr { order } => reports.extend(identity::rr_checks(*order)),
        Command::Characters { order } => reports.extend(identity::character_chain_check(*order)),
        Command::SeriesDump { .. } => unreachable!("handled before dispatch"),
    }
    Ok(())
}

/// All tuples of the given length with entries in 0..=cap.
fn tuples(len: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for v in 0..=cap {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn annotate(witness: Option<Witness>, context: &str) -> Option<Witness> {
    witness.map(|w| Witness {
        lhs: format!("{}: {}", context, w.lhs),
        ..w
    })
}

/// Load the pinned convention, or calibrate and pin it. A calibration
/// report is emitted whenever calibration actually runs.
fn pinned_convention(
    cli: &Cli,
    calibration_size: u64,
    reports: &mut Vec<VerificationReport>,
) -> Result<CalibrationOutcome> {
    if !cli.recalibrate {
        if let Ok(body) = fs::read_to_string(&cli.convention_file) {
            let pinned: serde_json::Value =
                serde_json::from_str(&body).context("parsing pinned convention")?;
            let chosen: Convention = serde_json::from_value(pinned["chosen"].clone())
                .context("pinned convention missing 'chosen'")?;
            return Ok(CalibrationOutcome {
                chosen,
                qualifiers: vec![chosen],
                max_size: pinned["calibrated_max_size"].as_u64().unwrap_or(0),
            });
        }
    }
    let started = Instant::now();
    match crystal::calibrate_convention(calibration_size) {
        Ok(outcome) => {
            let body = json!({
                "chosen": outcome.chosen,
                "qualifiers": outcome.qualifiers,
                "calibrated_max_size": outcome.max_size,
            });
            fs::write(
                &cli.convention_file,
                serde_json::to_string_pretty(&body)? + "\n",
            )
            .with_context(|| format!("writing {}", cli.convention_file.display()))?;
            let mut r = VerificationReport::from_witness(
                "crystal_calibration",
                params(&[
                    ("max_size", json!(outcome.max_size)),
                    ("qualifiers", json!(outcome.qualifiers.len())),
                ]),
                None,
                started,
            );
            r.convention = Some(serde_json::to_value(outcome.chosen)?);
            reports.push(r);
            Ok(outcome)
        }
        Err(msg) => {
            reports.push(VerificationReport::from_witness(
                "crystal_calibration",
                params(&[("max_size", json!(calibration_size))]),
                Some(Witness {
                    x_deg: 0,
                    q_deg: 0,
                    lhs: msg.clone(),
                    rhs: "at least one qualifying convention".into(),
                }),
                started,
            ));
            anyhow::bail!("crystal calibration failed: {}", msg)
        }
    }
}

fn print_report(r: &VerificationReport) {
    let tag = if r.passed() { "[pass]" } else { "[FAIL]" };
    let p = serde_json::to_string(&r.params).unwrap_or_default();
    match r.elapsed_ms {
        Some(ms) => println!("{} {} {} ({} ms)", tag, r.check, p, ms),
        None => println!("{} {} {}", tag, r.check, p),
    }
    if let Some(w) = &r.witness {
        println!(
            "       witness: x^{} q^{}  lhs={}  rhs={}",
            w.x_deg, w.q_deg, w.lhs, w.rhs
        );
    }
}

fn series_dump(
    cli: &Cli,
    name: SeriesName,
    order: i64,
    x_cap: usize,
    k: usize,
) -> Result<ExitCode> {
    enum Dump {
        Bivariate(XQSeries),
        Univariate(QLaurent),
    }
    let dump = match name {
        SeriesName::F => Dump::Bivariate(identity::f_series(order, x_cap)),
        SeriesName::G => Dump::Bivariate(identity::g_series(order, x_cap)),
        SeriesName::FX1 => Dump::Univariate(identity::f_x1(order)),
        SeriesName::GX1 => Dump::Univariate(identity::g_x1(order)),
        SeriesName::SkLhs => Dump::Bivariate(partitions::lhs_theorem(k, order)),
        SeriesName::SkRhs => Dump::Bivariate(partitions::rhs_theorem(k, order)),
        SeriesName::PochNegXq => Dump::Bivariate(poch_neg_xq(order, x_cap)),
        SeriesName::Rr1Sum => Dump::Univariate(rr_sum(order, |n| n * n)),
        SeriesName::Rr2Sum => Dump::Univariate(rr_sum(order, |n| n * (n + 1))),
        SeriesName::Rr1Product => Dump::Univariate(
            poch_inf_mod(1, 5, order)
                .mul(&poch_inf_mod(4, 5, order))
                .invert_unit()
                .expect("unit product"),
        ),
        SeriesName::Rr2Product => Dump::Univariate(
            poch_inf_mod(2, 5, order)
                .mul(&poch_inf_mod(3, 5, order))
                .invert_unit()
                .expect("unit product"),
        ),
    };
    let triples: Vec<(usize, i64, String)> = match &dump {
        Dump::Bivariate(s) => s
            .to_triples()
            .into_iter()
            .map(|(m, d, c)| (m, d, c.to_string()))
            .collect(),
        Dump::Univariate(s) => s.terms().map(|(d, c)| (0, d, c.to_string())).collect(),
    };
    for (m, d, c) in &triples {
        match &dump {
            Dump::Bivariate(_) => println!("x^{}\tq^{}\t{}", m, d, c),
            Dump::Univariate(_) => println!("q^{}\t{}", d, c),
        }
    }
    if let Some(path) = &cli.json {
        let body: Vec<serde_json::Value> = triples
            .iter()
            .map(|(m, d, c)| json!([m, d, c]))
            .collect();
        fs::write(path, serde_json::to_string_pretty(&body)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn rr_sum(order: i64, exponent: impl Fn(i64) -> i64) -> QLaurent {
    let mut nmax = 0usize;
    while exponent(nmax as i64 + 1) < order {
        nmax += 1;
    }
    let inv = inv_poch1_table(nmax, order);
    let mut sum = QLaurent::zero(order);
    let mut n = 0i64;
    while exponent(n) < order {
        sum = sum.add(&inv[n as usize].mul_monomial(1, exponent(n)));
        n += 1;
    }
    sum
}
