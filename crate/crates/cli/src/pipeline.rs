use std::ops::RangeInclusive;

use pearlhom::pearl::{builtin_datum, canonical_json, fixture_periodicity, load_datum, Model};
use pearlhom::specialize::{
    change_coefficients, load_subsystem, novikov_specialize, parse_holonomy_list,
    quotient_by_subsystem, twist_local_system, LocalSystem, SubsystemSpec,
};
use pearlhom::{
    CoefficientRing, Coefficients, Error, GradedComplex, IntComplex, QuantumDatum, Rational,
    Result,
};
use sha2::{Digest, Sha256};

use crate::{Cli, Format, Specialization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Example(String),
    File(String),
}

impl Source {
    pub fn describe(&self) -> String {
        match self {
            Source::Example(n) => format!("example:{n}"),
            Source::File(p) => format!("file:{p}"),
        }
    }
}

/// Everything a command needs, validated.
#[derive(Clone, Debug)]
pub struct Options {
    pub source: Source,
    pub datum: QuantumDatum,
    pub base: IntComplex,
    pub digest: String,
    pub coefficients: Option<Coefficients>,
    pub novikov: bool,
    pub quotient: Option<(SubsystemSpec, String)>,
    pub holonomy: Option<Vec<Rational>>,
    pub degrees: Option<RangeInclusive<i64>>,
    pub pages: Option<usize>,
    pub format: Format,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidDatum(format!("cannot read {}: {e}", path.display())))
}

/// Parses `a..b` (inclusive).
pub fn parse_degrees(s: &str) -> Result<RangeInclusive<i64>> {
    let bad = || Error::Precondition(format!("degree window `{s}` is not of the form a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b || b - a > 1000 {
        return Err(bad());
    }
    Ok(a..=b)
}

impl Options {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let (source, datum, periodicity) = match (&cli.example, &cli.input) {
            (Some(_), Some(_)) => {
                return Err(Error::Precondition(
                    "--example and --input are mutually exclusive".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Precondition(
                    "one of --example NAME or --input PATH is required".into(),
                ))
            }
            (Some(name), None) => (
                Source::Example(name.clone()),
                builtin_datum(name)?,
                fixture_periodicity(name),
            ),
            (None, Some(path)) => (
                Source::File(path.display().to_string()),
                load_datum(&read(path)?)?,
                None,
            ),
        };
        let base = GradedComplex::from_datum(&datum)?.with_periodicity(periodicity);
        let digest = sha256_hex(canonical_json(&datum).as_bytes());
        let coefficients = cli.coefficients.as_deref().map(str::parse).transpose()?;
        let quotient = match &cli.quotient {
            Some(path) => {
                let text = read(path)?;
                let digest = sha256_hex(text.as_bytes());
                Some((load_subsystem(&text)?, digest))
            }
            None => None,
        };
        let mut holonomy = cli.holonomy.as_deref().map(parse_holonomy_list).transpose()?;
        if let Some((spec, _)) = &quotient {
            if let Some(h) = spec.holonomy_values()? {
                if holonomy.is_some() {
                    return Err(Error::Precondition(
                        "holonomy given both on the command line and in the subsystem file"
                            .into(),
                    ));
                }
                holonomy = Some(h);
            }
        }
        Ok(Options {
            source,
            datum,
            base,
            digest,
            coefficients,
            novikov: cli.specialize == Some(Specialization::Novikov),
            quotient,
            holonomy,
            degrees: cli.degrees.as_deref().map(parse_degrees).transpose()?,
            pages: cli.pages,
            format: cli.format,
        })
    }

    pub fn is_torus(&self) -> bool {
        self.datum.model == Model::Torus2
    }
}

pub struct Prepared<R> {
    pub complex: GradedComplex<R>,
    pub steps: Vec<String>,
}

fn render_list<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// load → coefficients → twist → quotient → Novikov.
pub fn prepare<R: CoefficientRing>(
    opts: &Options,
    coefficients: Coefficients,
    novikov: bool,
    novikov_reason: Option<&str>,
) -> Result<Prepared<R>> {
    let mut steps = vec![format!("load {}", opts.source.describe())];
    steps.push(match opts.datum.model {
        Model::Torus2 => "assemble torus2 boundary from disk data".into(),
        Model::Explicit => "explicit boundary".into(),
    });
    let mut c: GradedComplex<R> = change_coefficients(&opts.base, &coefficients)?;
    steps.push(format!("coefficients {coefficients}"));
    if let Some(values) = &opts.holonomy {
        let ls = LocalSystem::<R>::from_rationals(values, &coefficients)?;
        c = twist_local_system(&c, &ls)?;
        steps.push(format!("twist by local system {}", render_list(values)));
    }
    if let Some((spec, _)) = &opts.quotient {
        let chi = spec.character(c.group())?;
        c = quotient_by_subsystem(&c, &spec.subsystem(), &chi)?;
        let gens: Vec<String> = spec.generators.iter().map(|g| render_list(g)).collect();
        steps.push(format!(
            "quotient by subsystem {} with character {}",
            render_list(&gens),
            render_list(chi.values())
        ));
    }
    if novikov {
        c = novikov_specialize(&c)?;
        let n = c.group().maslov()[0];
        steps.push(match novikov_reason {
            Some(why) => format!("Novikov specialization, N_L = {n} ({why})"),
            None => format!("Novikov specialization, N_L = {n}"),
        });
    }
    Ok(Prepared { complex: c, steps })
}
