//! Command-line front end. `run` does the work and returns the exit code so
//! it can be driven from tests without a process.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qcoh_core::coherent::{lemma_closed_form, lemma_integral, qbeta_check};
use qcoh_core::haar::haar;
use qcoh_core::hopf::HopfData;
use qcoh_core::ncalg::standard;
use qcoh_core::parse::parse_expr;
use qcoh_core::{Error, QRational, QScalar};
use serde::Serialize;

use crate::report::ResolutionRecord;
use crate::suites::{self, parse_q0, Fixture, NRange, Options, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

const ALGEBRAS: [&str; 7] = ["G", "G_b", "G_d", "G_bd", "B", "V", "k"];

#[derive(Parser, Debug)]
#[command(name = "qcoh", version, about = "Exact computations in O(SL_q(2)) and SU_q(2) coherent states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Action {
    Nf,
    Coproduct,
    Star,
    Haar,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form, coproduct, star or Haar integral of an expression.
    Eval {
        expr: String,
        #[arg(value_parser = ALGEBRAS)]
        algebra_pos: Option<String>,
        #[arg(value_enum)]
        action_pos: Option<Action>,
        #[arg(long, value_parser = ALGEBRAS, conflicts_with = "algebra_pos")]
        algebra: Option<String>,
        #[arg(long, value_enum, conflicts_with = "action_pos")]
        action: Option<Action>,
    },
    /// Haar integral of an element of G, optionally evaluated at `--q`.
    Haar {
        expr: String,
        #[arg(long, value_parser = parse_q0)]
        q: Option<QRational>,
    },
    /// The resolution-of-unity operator for one `n`.
    Resolution {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_q0, default_value = "1/2")]
        q: QRational,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Runs a verification suite; exit code 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value = "0..3")]
        n: NRange,
        #[arg(long, default_value_t = 5)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_parser = parse_q0, default_value = "1/2")]
        q: QRational,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Record wall-clock time in `runtime_ms`.
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum, default_value = "standard", hide = true)]
        fixture: Fixture,
    },
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownGenerator(_) => EXIT_PARSE,
        _ => EXIT_DOMAIN,
    }
}

fn eval(expr: &str, algebra: &str, action: Action) -> Result<String, Error> {
    let pres = standard::by_name(algebra).ok_or_else(|| Error::OutOfRange(format!("unknown algebra {algebra}")))?;
    let p = parse_expr(expr, &pres)?;
    Ok(match action {
        Action::Nf => p.to_string(),
        Action::Star => p.star()?.to_string(),
        Action::Haar => haar(&p)?.to_string(),
        Action::Coproduct => {
            let h = match pres.name() {
                "G" => HopfData::sl2()?,
                "B" => HopfData::borel()?,
                other => return Err(Error::OutOfRange(format!("no coproduct on {other}"))),
            };
            h.coproduct(&p)?.to_string()
        }
    })
}

#[derive(Serialize)]
struct LemmaRecord {
    i: usize,
    j: usize,
    integral: String,
    expected: String,
    equal: bool,
}

#[derive(Serialize)]
struct QbetaRecord {
    i: usize,
    integral: String,
    closed_form: String,
    equal: bool,
}

#[derive(Serialize)]
struct ResolutionOutput {
    #[serde(flatten)]
    record: ResolutionRecord,
    lemma_checks: Vec<LemmaRecord>,
    qbeta_checks: Vec<QbetaRecord>,
}

fn resolution(n: usize, q0: &QRational) -> Result<ResolutionOutput, Error> {
    let record = suites::resolution_records(&[n], q0)?.remove(0);
    let mut lemma_checks = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let v = lemma_integral(i, j, n)?;
            let e = if i == j { lemma_closed_form(i, n) } else { QScalar::zero() };
            lemma_checks.push(LemmaRecord {
                i,
                j,
                equal: v == e,
                integral: v.to_string(),
                expected: e.to_string(),
            });
        }
    }
    let mut qbeta_checks = Vec::new();
    for i in 0..=n {
        let (l, r) = qbeta_check(i, n)?;
        qbeta_checks.push(QbetaRecord {
            i,
            equal: l == r,
            integral: l.to_string(),
            closed_form: r.to_string(),
        });
    }
    Ok(ResolutionOutput {
        record,
        lemma_checks,
        qbeta_checks,
    })
}

fn resolution_text(r: &ResolutionOutput) -> String {
    let mut s = format!(
        "n = {}\nalpha = {}\nalpha(q) = {}\nscalar: {}\ncharts agree: {}\n",
        r.record.n,
        r.record.alpha_exact.as_deref().unwrap_or("-"),
        r.record.alpha_at_q.as_deref().unwrap_or("-"),
        r.record.matrix_is_scalar,
        r.record.chart_agreement
    );
    for l in &r.lemma_checks {
        s += &format!("lemma ({}, {}): {} [{}]\n", l.i, l.j, l.integral, if l.equal { "ok" } else { "MISMATCH" });
    }
    for b in &r.qbeta_checks {
        s += &format!("qbeta i = {}: {} [{}]\n", b.i, b.integral, if b.equal { "ok" } else { "MISMATCH" });
    }
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result: Result<(String, i32), Error> = match cli.command {
        Command::Eval {
            expr,
            algebra_pos,
            action_pos,
            algebra,
            action,
        } => {
            let algebra = algebra.or(algebra_pos).unwrap_or_else(|| "G".into());
            let action = action.or(action_pos).unwrap_or(Action::Nf);
            eval(&expr, &algebra, action).map(|s| (s + "\n", EXIT_OK))
        }
        Command::Haar { expr, q } => (|| {
            let v = haar(&parse_expr(&expr, &standard::g())?)?;
            let mut s = format!("{v}\n");
            if let Some(q0) = q {
                s += &format!("{}\n", v.specialize(&q0)?);
            }
            Ok((s, EXIT_OK))
        })(),
        Command::Resolution { n, q, format } => resolution(n, &q).map(|r| {
            let ok = r.record.matrix_is_scalar
                && r.record.chart_agreement
                && r.lemma_checks.iter().all(|l| l.equal)
                && r.qbeta_checks.iter().all(|b| b.equal);
            let text = match format {
                Format::Text => resolution_text(&r),
                _ => serde_json::to_string_pretty(&r).expect("serializes") + "\n",
            };
            (text, if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }),
        Command::Verify {
            suite,
            n,
            degree,
            seed,
            q,
            format,
            timing,
            fixture,
        } => {
            let opts = Options {
                ns: n.0,
                degree,
                seed,
                q0: q,
                fixture,
            };
            let start = Instant::now();
            suites::run(suite, &opts).map(|mut report| {
                if timing {
                    report.runtime_ms = start.elapsed().as_millis().max(1) as u64;
                }
                let code = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
                let text = match format {
                    Format::Json => report.to_json() + "\n",
                    Format::Tsv => report.to_tsv(),
                    Format::Text => report.to_text(),
                };
                (text, code)
            })
        }
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qcoh"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(call(&["eval", "d a", "G", "nf"]).1, "1 + q^-1 b c\n");
        assert_eq!(call(&["eval", "b", "--algebra", "G", "--action", "star"]).1, "-q c\n");
        assert_eq!(call(&["eval", "b c", "G", "haar"]).1, "-q/(q^2 + 1)\n");
    }

    #[test]
    fn eval_errors() {
        assert_eq!(call(&["eval", "a +", "G", "nf"]).0, EXIT_PARSE);
        assert_eq!(call(&["eval", "b^-1", "G", "nf"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["eval", "x", "V", "coproduct"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["eval", "a", "H", "nf"]).0, EXIT_PARSE);
    }

    #[test]
    fn haar_at_q() {
        let (code, out, _) = call(&["haar", "b c", "--q", "1/2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "-q/(q^2 + 1)\n-2/5\n");
    }
}
