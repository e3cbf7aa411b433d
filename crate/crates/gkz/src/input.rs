//! Problem files: the JSON input accepted by every command.

use std::io::Read;
use std::path::Path;

use gkz_core::curves::{FmLinearization, Group, MarkSubset};
use gkz_core::orlov::CiSpec;
use gkz_core::toric::GitProblem;
use gkz_core::{Integer, Rational, RationalVector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// One problem, tagged by kind: `{"toric": {...}}`, `{"orlov": {...}}`, ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemFile {
    Toric(ToricInput),
    Orlov(OrlovInput),
    CurvesPn(CurvesPnInput),
    CurvesFm(CurvesFmInput),
    Preset(PresetInput),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricInput {
    pub rank: usize,
    /// Weight columns, one list of `rank` integers per coordinate.
    pub weights: Vec<Vec<i64>>,
    /// The character as `"p/q"` strings.
    pub character: Vec<String>,
    #[serde(default)]
    pub twist_d: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrlovInput {
    pub n: usize,
    #[serde(default)]
    pub degrees: Vec<u32>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GroupName {
    #[default]
    Sl2,
    Pgl2,
}

impl From<GroupName> for Group {
    fn from(g: GroupName) -> Group {
        match g {
            GroupName::Sl2 => Group::Sl2,
            GroupName::Pgl2 => Group::Pgl2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvesPnInput {
    pub weights: Vec<String>,
    #[serde(default)]
    pub group: GroupName,
}

/// Coefficient of the exceptional divisor `Sigma^S`, `S` given 1-based and
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorEntry {
    pub subset: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvesFmInput {
    pub j: usize,
    pub weights: Vec<String>,
    #[serde(default)]
    pub a: Vec<DivisorEntry>,
    /// Smallest `|S|` with a divisor; defaults to `max(n - j - 1, 2)`, or no
    /// divisors when `j = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor_min: Option<usize>,
    /// Smallest `|S|` counted in the wall `mu`; defaults to `divisor_min`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_min: Option<usize>,
    #[serde(default = "yes")]
    pub ample: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetInput {
    pub name: String,
    #[serde(default)]
    pub parameters: Vec<i64>,
}

/// A resolved problem ready for the engine.
#[derive(Clone, Debug)]
pub enum Problem {
    Toric {
        problem: GitProblem,
        character: RationalVector,
        twist_d: Integer,
    },
    Orlov(CiSpec),
    CurvesPn {
        weights: Vec<Rational>,
        group: Group,
    },
    CurvesFm(FmLinearization),
}

pub fn parse_input(text: &str) -> Result<ProblemFile, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: ProblemFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Schema {
            field: if path == "." { "<root>".into() } else { path },
            reason: e.into_inner().to_string(),
        }
    })?;
    de.end().map_err(|e| CliError::Schema {
        field: "<root>".into(),
        reason: e.to_string(),
    })?;
    Ok(file)
}

/// Reads a problem file, or standard input for `None` or `-`.
pub fn read_input(path: Option<&Path>) -> Result<ProblemFile, CliError> {
    let text = match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            s
        }
    };
    parse_input(&text)
}

pub fn parse_rational(field: &str, s: &str) -> Result<Rational, CliError> {
    s.trim().parse::<Rational>().map_err(|e| CliError::Schema {
        field: field.into(),
        reason: format!("{s:?} is not a rational p/q: {e}"),
    })
}

fn rationals(field: &str, v: &[String]) -> Result<Vec<Rational>, CliError> {
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(&format!("{field}[{i}]"), s))
        .collect()
}

/// Turns a concrete problem file into engine values. Presets must be
/// expanded first.
pub fn resolve(file: &ProblemFile) -> Result<Problem, CliError> {
    match file {
        ProblemFile::Toric(t) => {
            if t.character.len() != t.rank {
                return Err(CliError::Schema {
                    field: "toric.character".into(),
                    reason: format!("expected {} entries, found {}", t.rank, t.character.len()),
                });
            }
            if let Some(i) = t.weights.iter().position(|c| c.len() != t.rank) {
                return Err(CliError::Schema {
                    field: format!("toric.weights[{i}]"),
                    reason: format!("expected {} entries, found {}", t.rank, t.weights[i].len()),
                });
            }
            let columns = t
                .weights
                .iter()
                .map(|c| c.iter().map(|&x| Integer::from(x)).collect())
                .collect();
            Ok(Problem::Toric {
                problem: GitProblem::new(t.rank, columns)?,
                character: RationalVector(rationals("toric.character", &t.character)?),
                twist_d: Integer::from(t.twist_d),
            })
        }
        ProblemFile::Orlov(o) => Ok(Problem::Orlov(CiSpec::new(o.n, o.degrees.clone())?)),
        ProblemFile::CurvesPn(c) => Ok(Problem::CurvesPn {
            weights: rationals("curves_pn.weights", &c.weights)?,
            group: c.group.into(),
        }),
        ProblemFile::CurvesFm(c) => {
            let d = rationals("curves_fm.weights", &c.weights)?;
            let n = d.len();
            let mut a = std::collections::BTreeMap::new();
            for (k, entry) in c.a.iter().enumerate() {
                let field = format!("curves_fm.a[{k}]");
                let sorted = entry.subset.windows(2).all(|w| w[0] < w[1]);
                if !sorted || entry.subset.iter().any(|&i| i == 0 || i > n) {
                    return Err(CliError::Schema {
                        field: format!("{field}.subset"),
                        reason: format!("expected a strictly increasing list of marks in 1..={n}"),
                    });
                }
                if n > gkz_core::curves::MAX_POINTS {
                    return Err(gkz_core::curves::CurvesError::TooManyPoints(n).into());
                }
                let members: Vec<usize> = entry.subset.iter().map(|i| i - 1).collect();
                let value = parse_rational(&format!("{field}.value"), &entry.value)?;
                if a.insert(MarkSubset::new(n, &members), value).is_some() {
                    return Err(CliError::Schema {
                        field: format!("{field}.subset"),
                        reason: "subset listed twice".into(),
                    });
                }
            }
            let mut lin = match (c.divisor_min, c.mu_min) {
                (None, None) => FmLinearization::new(c.j, d, a)?,
                (dm, mm) => {
                    let default = FmLinearization::new(c.j, d.clone(), Default::default())?;
                    let dm = dm.unwrap_or(default.divisor_min());
                    FmLinearization::with_ranges(c.j, d, a, dm, mm.unwrap_or(dm))?
                }
            };
            lin.set_ample(c.ample);
            Ok(Problem::CurvesFm(lin))
        }
        ProblemFile::Preset(p) => Err(CliError::Usage(format!(
            "preset {:?} must be expanded before it is resolved",
            p.name
        ))),
    }
}
