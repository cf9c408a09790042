//! The JSON problem-file format: either an explicit generator list or an
//! application block, plus backend selection. Numeric entries may be
//! integers, floats, or strings (`"2.5"`, `"-7/3"`); strings and
//! integers parse exactly under the rational backend.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use fairshare_core::problems::{Application, ApplicationSpec, CommonResource};
use fairshare_core::{BargainingProblem, ClaimOracle, Rational, Scalar, SurplusProblem};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberLit {
    Int(i64),
    Float(f64),
    Text(String),
}

impl NumberLit {
    pub fn to_scalar<T: Scalar>(&self) -> Result<T, CliError> {
        match self {
            NumberLit::Int(v) => Ok(T::from_int(*v)),
            NumberLit::Float(v) => {
                if !v.is_finite() {
                    return Err(CliError::usage("numeric entries must be finite"));
                }
                Ok(T::from_f64(*v))
            }
            NumberLit::Text(s) => {
                let r = parse_rational_text(s)
                    .map_err(|e| CliError::usage(format!("bad number {s:?}: {e}")))?;
                Ok(T::from_rational(&r))
            }
        }
    }
}

/// Parses `p/q`, decimal, or integer text into an exact rational.
pub fn parse_rational_text(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal(num.trim())?;
        let d = parse_decimal(den.trim())?;
        if d == Rational::from_int(0) {
            return Err("zero denominator".into());
        }
        return Ok(n / d);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational, String> {
    if s.is_empty() {
        return Err("empty number".into());
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err("no digits".into());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err("not a decimal number".into());
    }
    let mantissa: String = format!("{int_part}{frac_part}");
    let numer: BigInt = mantissa.parse().map_err(|_| "bad digits".to_string())?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rational::new(BigInt::from(sign) * numer, denom))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Group {
    pub count: usize,
    pub value: NumberLit,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ApplicationFile {
    Infrastructure {
        options: Vec<Vec<NumberLit>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        costs: Option<Vec<NumberLit>>,
    },
    Bankruptcy {
        claims: Vec<NumberLit>,
        estate: NumberLit,
    },
    Division {
        valuations: Vec<NumberLit>,
    },
    PublicGood {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values: Option<Vec<NumberLit>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        groups: Option<Vec<Group>>,
        cost: NumberLit,
    },
    CommonResource {
        alpha: Vec<f64>,
        wbar: f64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<NumberLit>>>,
    #[serde(default)]
    pub surplus: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub application: Option<ApplicationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<Backend>,
}

impl ProblemFile {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        let file: ProblemFile = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 {
            return Err(CliError::usage("n must be at least 1"));
        }
        match (&self.generators, &self.application) {
            (Some(_), Some(_)) => Err(CliError::usage(
                "exactly one of \"generators\" and \"application\" may be present",
            )),
            (None, None) => Err(CliError::usage(
                "one of \"generators\" or \"application\" is required",
            )),
            _ => Ok(()),
        }
    }

    /// The backend the file asks for; generator and application files
    /// default to exact arithmetic.
    pub fn backend(&self) -> Backend {
        self.backend.unwrap_or(Backend::Exact)
    }
}

/// A problem constructed from a file, in the representations available
/// for solving.
pub enum LoadedKind<T: Scalar> {
    Plain {
        problem: BargainingProblem<T>,
        oracle: Option<ClaimOracle>,
    },
    Surplus {
        problem: SurplusProblem<T>,
        oracle: Option<ClaimOracle>,
    },
    Analytic {
        resource: CommonResource,
    },
}

pub struct Loaded<T: Scalar> {
    pub n: usize,
    pub kind: LoadedKind<T>,
    /// Declared groups of identical players: `(count, value label)`.
    pub groups: Option<Vec<(usize, f64)>>,
}

pub fn build_problem<T: Scalar>(file: &ProblemFile) -> Result<Loaded<T>, CliError> {
    if let Some(gens) = &file.generators {
        let expect = if file.surplus { file.n + 1 } else { file.n };
        let mut parsed: Vec<Vec<T>> = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != expect {
                return Err(CliError::usage(format!(
                    "generator has {} entries, expected {expect}",
                    g.len()
                )));
            }
            parsed.push(g.iter().map(|v| v.to_scalar()).collect::<Result<_, _>>()?);
        }
        let kind = if file.surplus {
            LoadedKind::Surplus {
                problem: SurplusProblem::new(file.n, parsed)
                    .map_err(|e| CliError::usage(e.to_string()))?,
                oracle: None,
            }
        } else {
            LoadedKind::Plain {
                problem: BargainingProblem::new(parsed)
                    .map_err(|e| CliError::usage(e.to_string()))?,
                oracle: None,
            }
        };
        return Ok(Loaded {
            n: file.n,
            kind,
            groups: None,
        });
    }

    let app = file.application.as_ref().expect("validated");
    let mut groups = None;
    let spec: ApplicationSpec<T> = match app {
        ApplicationFile::Infrastructure { options, costs } => ApplicationSpec::Infrastructure {
            options: options
                .iter()
                .map(|o| {
                    if o.len() != file.n {
                        return Err(CliError::usage(format!(
                            "option has {} entries, expected {}",
                            o.len(),
                            file.n
                        )));
                    }
                    o.iter().map(|v| v.to_scalar()).collect()
                })
                .collect::<Result<_, _>>()?,
            costs: costs
                .as_ref()
                .map(|c| c.iter().map(|v| v.to_scalar()).collect::<Result<_, _>>())
                .transpose()?,
        },
        ApplicationFile::Bankruptcy { claims, estate } => {
            check_count("claims", claims.len(), file.n)?;
            ApplicationSpec::Bankruptcy {
                claims: claims.iter().map(|v| v.to_scalar()).collect::<Result<_, _>>()?,
                estate: estate.to_scalar()?,
            }
        }
        ApplicationFile::Division { valuations } => {
            check_count("valuations", valuations.len(), file.n)?;
            ApplicationSpec::Division {
                valuations: valuations
                    .iter()
                    .map(|v| v.to_scalar())
                    .collect::<Result<_, _>>()?,
            }
        }
        ApplicationFile::PublicGood {
            values,
            groups: grp,
            cost,
        } => {
            let values: Vec<T> = match (values, grp) {
                (Some(v), None) => {
                    check_count("values", v.len(), file.n)?;
                    v.iter().map(|x| x.to_scalar()).collect::<Result<_, _>>()?
                }
                (None, Some(gs)) => {
                    let total: usize = gs.iter().map(|g| g.count).sum();
                    check_count("group counts", total, file.n)?;
                    let mut vals = Vec::with_capacity(total);
                    let mut labels = Vec::new();
                    for g in gs {
                        let v: T = g.value.to_scalar()?;
                        labels.push((g.count, v.to_f64()));
                        vals.extend(std::iter::repeat_with(|| v.clone()).take(g.count));
                    }
                    groups = Some(labels);
                    vals
                }
                _ => {
                    return Err(CliError::usage(
                        "public-good needs exactly one of \"values\" and \"groups\"",
                    ))
                }
            };
            ApplicationSpec::PublicGood {
                values,
                cost: cost.to_scalar()?,
            }
        }
        ApplicationFile::CommonResource { alpha, wbar } => {
            check_count("alpha", alpha.len(), file.n)?;
            ApplicationSpec::CommonResource {
                alpha: alpha.clone(),
                wbar: *wbar,
            }
        }
    };

    let kind = match spec.build().map_err(CliError::infeasible_from)? {
        Application::Plain { problem, oracle } => LoadedKind::Plain { problem, oracle },
        Application::Surplus { problem, oracle } => LoadedKind::Surplus { problem, oracle },
        Application::Analytic { resource } => LoadedKind::Analytic { resource },
    };
    Ok(Loaded {
        n: file.n,
        kind,
        groups,
    })
}

fn check_count(what: &str, found: usize, expected: usize) -> Result<(), CliError> {
    if found != expected {
        Err(CliError::usage(format!(
            "{what} has {found} entries but n = {expected}"
        )))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairshare_core::Polytope;

    #[test]
    fn rational_text_forms() {
        assert_eq!(parse_rational_text("3").unwrap(), Rational::from_int(3));
        assert_eq!(
            parse_rational_text("-2.5").unwrap(),
            Rational::from_ratio(-5, 2)
        );
        assert_eq!(
            parse_rational_text("7/3").unwrap(),
            Rational::from_ratio(7, 3)
        );
        assert_eq!(
            parse_rational_text("-1/2").unwrap(),
            Rational::from_ratio(-1, 2)
        );
        assert!(parse_rational_text("1/0").is_err());
        assert!(parse_rational_text("abc").is_err());
    }

    #[test]
    fn file_needs_exactly_one_source() {
        let neither: ProblemFile = serde_json::from_str(r#"{"n": 2}"#).unwrap();
        assert!(neither.validate().is_err());
        let both: ProblemFile = serde_json::from_str(
            r#"{"n": 1, "generators": [[1]], "application": {"kind": "division", "valuations": [1]}}"#,
        )
        .unwrap();
        assert!(both.validate().is_err());
    }

    #[test]
    fn generator_file_builds_plain_problem() {
        let file: ProblemFile =
            serde_json::from_str(r#"{"n": 2, "generators": [[8, 2], ["2", "4.0"]]}"#).unwrap();
        let loaded: Loaded<Rational> = build_problem(&file).unwrap();
        match loaded.kind {
            LoadedKind::Plain { problem, .. } => {
                assert_eq!(problem.generators().len(), 2);
                assert_eq!(problem.generators()[1][1], Rational::from_int(4));
            }
            _ => panic!("expected plain problem"),
        }
    }

    #[test]
    fn group_file_expands_values() {
        let file: ProblemFile = serde_json::from_str(
            r#"{"n": 5, "surplus": true, "application": {"kind": "public-good",
                "groups": [{"count": 2, "value": 20}, {"count": 3, "value": 0}],
                "cost": 15}}"#,
        )
        .unwrap();
        let loaded: Loaded<f64> = build_problem(&file).unwrap();
        assert_eq!(loaded.groups.as_deref(), Some(&[(2, 20.0), (3, 0.0)][..]));
        match loaded.kind {
            LoadedKind::Surplus { oracle, .. } => assert!(oracle.is_some()),
            _ => panic!("expected surplus problem"),
        }
    }
}
