//! Named verification suites over the core engine.

use std::str::FromStr;
use std::thread;

use qcoh_core::charts::{verify_charts, verify_cover};
use qcoh_core::coherent::{resolution_operator, verify_coherent, verify_general_w, verify_resolution};
use qcoh_core::comod::verify_gram;
use qcoh_core::errata::{errata, verify_errata};
use qcoh_core::haar::{verify_invariance, verify_positivity, verify_zeta_moments};
use qcoh_core::hopf::{verify_hopf, verify_projection, HopfData};
use qcoh_core::ncalg::{confluence_probe, standard};
use qcoh_core::{bundle, Check, Error, QRational, Result};

use crate::report::{ErratumRecord, Report, ResolutionRecord};

pub const PROBE_SAMPLES: usize = 200;
pub const PROBE_DEGREE: usize = 6;
pub const HOPF_SAMPLES: usize = 100;
pub const POSITIVITY_SAMPLES: usize = 50;
pub const KAPPA_SAMPLES: usize = 50;
pub const REPRODUCING_SAMPLES: usize = 20;
pub const GENERAL_W_SAMPLES: usize = 20;
pub const ZETA_MOMENTS: u32 = 6;
pub const COVER_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Hopf,
    Charts,
    Cover,
    Gram,
    Bundle,
    Haar,
    Coherent,
    Resolution,
    Errata,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Hopf,
        Suite::Charts,
        Suite::Cover,
        Suite::Gram,
        Suite::Bundle,
        Suite::Haar,
        Suite::Coherent,
        Suite::Resolution,
        Suite::Errata,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Charts => "charts",
            Suite::Cover => "cover",
            Suite::Gram => "gram",
            Suite::Bundle => "bundle",
            Suite::Haar => "haar",
            Suite::Coherent => "coherent",
            Suite::Resolution => "resolution",
            Suite::Errata => "errata",
            Suite::All => "all",
        }
    }
}

/// Which Hopf data the hopf suite checks. `Corrupted` puts a stray `q`
/// into Δ(b) and must make the suite fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Fixture {
    #[default]
    Standard,
    Corrupted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub ns: Vec<usize>,
    pub degree: usize,
    pub seed: u64,
    pub q0: QRational,
    pub fixture: Fixture,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            ns: (0..=3).collect(),
            degree: 5,
            seed: 1,
            q0: QRational::new(1.into(), 2.into()),
            fixture: Fixture::Standard,
        }
    }
}

/// `A..B` (inclusive), `A..=B` or a single `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRange(pub Vec<usize>);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("expected N or A..B, got `{s}`");
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match s.split_once("..") {
            None => Ok(NRange(vec![num(s)?])),
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
                if a > b {
                    return Err(bad());
                }
                Ok(NRange((a..=b).collect()))
            }
        }
    }
}

pub fn parse_q0(s: &str) -> std::result::Result<QRational, String> {
    let q: QRational = s.trim().parse().map_err(|_| format!("expected a rational p/r, got `{s}`"))?;
    if q == QRational::from_integer(0.into()) {
        return Err("q must be nonzero".into());
    }
    Ok(q)
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            if !c.name.starts_with(&format!("{prefix}.")) {
                c.name = format!("{prefix}.{}", c.name);
            }
            c
        })
        .collect()
}

/// Confluence of the rewriting system and the canonical-basis invariant.
pub fn rewriting_checks(samples: usize, degree: usize, seed: u64) -> Vec<Check> {
    [standard::g(), standard::g_b(), standard::g_d(), standard::g_bd()]
        .iter()
        .map(|p| {
            let r = confluence_probe(p, samples, degree, 3, seed);
            let witness = if let Some(d) = r.discrepancies.first() {
                Some(format!("{}: {} vs {}", d.word, d.first, d.second))
            } else {
                r.non_canonical.first().map(|m| format!("non-canonical monomial {m}"))
            };
            Check::from_witness(
                format!("rewriting.{}", p.name()),
                "normal form independent of rewrite order; no monomial contains both a and d",
                witness,
            )
        })
        .collect()
}

pub fn hopf_checks(opts: &Options) -> Result<Vec<Check>> {
    let g = match opts.fixture {
        Fixture::Standard => HopfData::sl2()?,
        Fixture::Corrupted => HopfData::sl2_corrupted(),
    };
    let b = HopfData::borel()?;
    let mut out = rewriting_checks(PROBE_SAMPLES, PROBE_DEGREE, opts.seed);
    out.extend(prefixed("G", verify_hopf(&g, opts.degree, HOPF_SAMPLES, opts.seed)?));
    out.extend(prefixed("B", verify_hopf(&b, opts.degree, HOPF_SAMPLES, opts.seed)?));
    out.extend(verify_projection(&g, &b, opts.degree as i64)?);
    Ok(out)
}

pub fn haar_checks(opts: &Options) -> Result<Vec<Check>> {
    let g = HopfData::sl2()?;
    let mut out = verify_invariance(&g, opts.degree as i64)?;
    out.extend(verify_zeta_moments(ZETA_MOMENTS)?);
    out.extend(verify_positivity(&opts.q0, POSITIVITY_SAMPLES, 3, opts.seed)?);
    Ok(out)
}

pub fn charts_checks(opts: &Options) -> Result<Vec<Check>> {
    let mut out = verify_charts(opts.seed)?;
    out.extend(verify_cover(COVER_DEGREE.max(opts.degree) as i64)?);
    Ok(out)
}

pub fn bundle_checks(opts: &Options) -> Result<Vec<Check>> {
    bundle::verify_bundle(&opts.ns, opts.degree, KAPPA_SAMPLES, opts.seed)
}

pub fn coherent_checks(opts: &Options) -> Result<Vec<Check>> {
    let mut out = verify_coherent(&opts.ns, REPRODUCING_SAMPLES, opts.seed)?;
    let small: Vec<usize> = opts.ns.iter().copied().filter(|&n| n <= 3).collect();
    out.extend(verify_general_w(&small, GENERAL_W_SAMPLES, opts.seed)?);
    Ok(out)
}

pub fn resolution_records(ns: &[usize], q0: &QRational) -> Result<Vec<ResolutionRecord>> {
    ns.iter()
        .map(|&n| {
            let r = resolution_operator(n)?;
            let at_q = match r.alpha_at(q0) {
                Ok(v) => v.map(|x| x.to_string()),
                Err(Error::Pole(_)) | Err(Error::DivisionByZero) => None,
                Err(e) => return Err(e),
            };
            Ok(ResolutionRecord {
                n,
                alpha_exact: r.alpha.as_ref().map(|a| a.to_string()),
                alpha_at_q: at_q,
                matrix_is_scalar: r.is_scalar(),
                chart_agreement: r.chart_agreement,
            })
        })
        .collect()
}

fn errata_records() -> Result<Vec<ErratumRecord>> {
    Ok(errata()?.iter().map(ErratumRecord::from).collect())
}

/// Checks of `suite`. `All` runs every other suite on its own thread and
/// prefixes each check name with the suite name.
pub fn suite_checks(suite: Suite, opts: &Options) -> Result<Vec<Check>> {
    match suite {
        Suite::Hopf => hopf_checks(opts),
        Suite::Charts => charts_checks(opts),
        Suite::Cover => verify_cover(opts.degree as i64),
        Suite::Gram => verify_gram(&opts.ns, &opts.q0),
        Suite::Bundle => bundle_checks(opts),
        Suite::Haar => haar_checks(opts),
        Suite::Coherent => coherent_checks(opts),
        Suite::Resolution => verify_resolution(&opts.ns),
        Suite::Errata => verify_errata(),
        Suite::All => {
            let results: Vec<Result<Vec<Check>>> = thread::scope(|s| {
                let handles: Vec<_> = Suite::EACH
                    .iter()
                    .map(|&sub| s.spawn(move || suite_checks(sub, opts).map(|c| prefixed(sub.name(), c))))
                    .collect();
                handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
            });
            let mut out = Vec::new();
            for r in results {
                out.extend(r?);
            }
            Ok(out)
        }
    }
}

/// Runs a suite and assembles its report; `runtime_ms` stays 0.
pub fn run(suite: Suite, opts: &Options) -> Result<Report> {
    let checks = suite_checks(suite, opts)?;
    let mut report = Report::new(suite.name(), &checks, opts.seed, opts.q0.to_string());
    if matches!(suite, Suite::Resolution | Suite::All) {
        report.resolution = Some(resolution_records(&opts.ns, &opts.q0)?);
    }
    if matches!(suite, Suite::Errata | Suite::All) {
        report.errata = Some(errata_records()?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_ranges() {
        assert_eq!("1..3".parse::<NRange>().unwrap().0, vec![1, 2, 3]);
        assert_eq!("1..=3".parse::<NRange>().unwrap().0, vec![1, 2, 3]);
        assert_eq!("2".parse::<NRange>().unwrap().0, vec![2]);
        assert!("3..1".parse::<NRange>().is_err());
        assert!("x".parse::<NRange>().is_err());
    }

    #[test]
    fn q0_parsing() {
        assert_eq!(parse_q0("1/2").unwrap(), QRational::new(1.into(), 2.into()));
        assert!(parse_q0("0").is_err());
        assert!(parse_q0("a/b").is_err());
    }

    #[test]
    fn corrupted_fixture_fails() {
        let opts = Options {
            fixture: Fixture::Corrupted,
            degree: 3,
            ..Options::default()
        };
        let r = run(Suite::Hopf, &opts).unwrap();
        assert!(!r.passed());
        assert!(r.failures().all(|c| c.witness.is_some()));
    }

    #[test]
    fn resolution_record_at_half() {
        let rs = resolution_records(&[1], &QRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(rs[0].alpha_at_q.as_deref(), Some("1/5"));
        assert_eq!(rs[0].alpha_exact.as_deref(), Some("q^2/(q^2 + 1)"));
    }
}
