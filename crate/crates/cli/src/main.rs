use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qtrin_core::qcore::{QPoly, QSeries, UNIT};
use qtrin_core::suite::{emit_report, run_suite, Format, SuiteName, SuiteOptions};
use qtrin_core::{qbinom, qtrinom, virasoro, Error};

/// Exact verification of q-binomial and q-trinomial identities.
#[derive(Parser)]
#[command(name = "qtrin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print a single object as JSON.
    Show {
        #[command(subcommand)]
        what: ShowCmd,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// appendix, binom, trinom, connect, virasoro, section3, props, bailey, limits or all.
    suite: String,
    /// Upper bound for every L (and for the Bailey M).
    #[arg(long)]
    lmax: Option<i64>,
    /// Series order, in whole powers of q.
    #[arg(long)]
    order: Option<i64>,
    /// Restrict pair-indexed checks to (p, p'); needs --pp.
    #[arg(long, requires = "pp", allow_negative_numbers = true)]
    p: Option<i64>,
    #[arg(long, requires = "p", allow_negative_numbers = true)]
    pp: Option<i64>,
    /// Restrict n-indexed checks (A_n sums, tails) to this n.
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for the random Bailey inputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Record elapsed milliseconds per case (reports then differ between runs).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum ShowCmd {
    /// Gaussian binomial [n, a].
    Qbin {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
    },
    /// Round-bracket trinomial (L, b; a)_2.
    Trinomial {
        l: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
    },
    /// T_n(L, a).
    Tn {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        l: i64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
    },
    /// Fermionic polynomial F_L(p, p').
    Fermionic { p: i64, pp: i64, l: i64 },
    /// Bosonic polynomial B_L(p, p').
    Bosonic { p: i64, pp: i64, l: i64 },
    /// Virasoro character chi_{r,s}^{(p,p')} truncated at q^order.
    Character {
        p: i64,
        pp: i64,
        r: i64,
        s: i64,
        #[arg(long, default_value_t = 20)]
        order: i64,
    },
}

/// `e/4` as a reduced fraction.
fn exponent(e: i64) -> String {
    if e % UNIT == 0 {
        (e / UNIT).to_string()
    } else if e % 2 == 0 {
        format!("{}/2", e / 2)
    } else {
        format!("{e}/{UNIT}")
    }
}

fn terms(p: &QPoly) -> Value {
    p.terms().map(|(e, c)| json!([exponent(e), c.to_string()])).collect()
}

fn poly_object(object: &str, params: Value, p: &QPoly) -> Value {
    json!({"object": object, "params": params, "value": p.to_string(), "terms": terms(p)})
}

fn series_object(object: &str, params: Value, s: &QSeries) -> Value {
    json!({
        "object": object,
        "params": params,
        "order": exponent(s.order()),
        "value": s.to_string(),
        "terms": terms(s.as_poly()),
    })
}

fn show(what: ShowCmd) -> Result<Value, Error> {
    Ok(match what {
        ShowCmd::Qbin { n, a } => poly_object("qbin", json!({"n": n, "a": a}), &qbinom::qbin(n, a)),
        ShowCmd::Trinomial { l, b, a } => {
            poly_object("trinomial", json!({"L": l, "b": b, "a": a}), &qtrinom::trinomial(l, b, a))
        }
        ShowCmd::Tn { n, l, a } => poly_object("tn", json!({"n": n, "L": l, "a": a}), &qtrinom::t_n(n, l, a)),
        ShowCmd::Fermionic { p, pp, l } => {
            poly_object("fermionic", json!({"p": p, "pp": pp, "L": l}), &virasoro::fermionic(p, pp, l)?)
        }
        ShowCmd::Bosonic { p, pp, l } => {
            poly_object("bosonic", json!({"p": p, "pp": pp, "L": l}), &virasoro::bosonic(p, pp, l)?)
        }
        ShowCmd::Character { p, pp, r, s, order } => {
            if order < 0 {
                return Err(Error::Precondition(format!("--order must be >= 0, got {order}")));
            }
            let chi = virasoro::character(p, pp, r, s, UNIT * order)?;
            series_object("character", json!({"p": p, "pp": pp, "r": r, "s": s, "order": order}), &chi)
        }
    })
}

fn verify(args: VerifyArgs) -> ExitCode {
    let suite: SuiteName = match args.suite.parse() {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let opts = SuiteOptions {
        lmax: args.lmax,
        order: args.order,
        pair: args.p.zip(args.pp),
        n: args.n,
        threads: args.threads,
        seed: args.seed,
        timings: args.timings,
    };
    let report = match run_suite(suite, &opts) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if let Err(e) = emit_report(&report, Format::Text, None) {
        eprintln!("qtrin: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if let Some(path) = &args.json {
        if let Err(e) = emit_report(&report, Format::Json, Some(path)) {
            eprintln!("qtrin: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage(e: Error) -> ExitCode {
    eprintln!("qtrin: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Show { what } => match show(what) {
            Ok(v) => {
                // a closed pipe is not worth a panic
                let _ = writeln!(std::io::stdout().lock(), "{v}");
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
    }
}
