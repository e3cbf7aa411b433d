//! Named problems expanded into concrete problem files.

use gkz_core::curves::FmLinearization;

use crate::error::CliError;
use crate::input::{
    CurvesFmInput, CurvesPnInput, DivisorEntry, GroupName, OrlovInput, ProblemFile, ToricInput,
};
use crate::report::rational_string;

pub const PRESET_NAMES: [&str; 8] = [
    "projective-space",
    "weighted-projective",
    "hirzebruch",
    "blowup-P2",
    "product-P1-P1",
    "orlov",
    "pn-curves",
    "hassett",
];

fn toric(rank: usize, weights: Vec<Vec<i64>>, character: &[i64]) -> ProblemFile {
    ProblemFile::Toric(ToricInput {
        rank,
        weights,
        character: character.iter().map(|c| c.to_string()).collect(),
        twist_d: 0,
    })
}

fn usage(name: &str, expected: &str, got: &[i64]) -> CliError {
    CliError::Usage(format!("preset {name} expects {expected}, got {got:?}"))
}

fn count(name: &str, params: &[i64], n: usize, expected: &str) -> Result<(), CliError> {
    if params.len() == n {
        Ok(())
    } else {
        Err(usage(name, expected, params))
    }
}

fn positive(name: &str, params: &[i64], expected: &str) -> Result<Vec<u32>, CliError> {
    params
        .iter()
        .map(|&x| u32::try_from(x).ok().filter(|&x| x >= 1))
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| usage(name, expected, params))
}

/// Expands `name` with integer parameters. Non-preset inputs pass through.
pub fn expand_preset(name: &str, params: &[i64]) -> Result<ProblemFile, CliError> {
    match name {
        "projective-space" => {
            count(name, params, 1, "one parameter n >= 1")?;
            let n = positive(name, params, "one parameter n >= 1")?[0] as usize;
            Ok(toric(1, vec![vec![1]; n + 1], &[1]))
        }
        "weighted-projective" => {
            let expected = "at least two positive weights";
            let a = positive(name, params, expected)?;
            if a.len() < 2 {
                return Err(usage(name, expected, params));
            }
            Ok(toric(1, a.iter().map(|&x| vec![i64::from(x)]).collect(), &[1]))
        }
        "hirzebruch" => {
            count(name, params, 1, "one parameter a >= 0")?;
            let a = params[0];
            if a < 0 {
                return Err(usage(name, "one parameter a >= 0", params));
            }
            Ok(toric(2, vec![vec![1, 0], vec![-a, 1], vec![1, 0], vec![0, 1]], &[1, 1]))
        }
        "blowup-P2" => {
            count(name, params, 0, "no parameters")?;
            Ok(toric(2, vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![1, 1]], &[4, 3]))
        }
        "product-P1-P1" => {
            count(name, params, 0, "no parameters")?;
            Ok(toric(2, vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]], &[1, 1]))
        }
        "orlov" => {
            let expected = "n >= 1 followed by degrees >= 1";
            let all = positive(name, params, expected)?;
            let (n, degrees) = all.split_first().ok_or_else(|| usage(name, expected, params))?;
            Ok(ProblemFile::Orlov(OrlovInput {
                n: *n as usize,
                degrees: degrees.to_vec(),
            }))
        }
        "pn-curves" => {
            let expected = "at least three positive weights";
            let d = positive(name, params, expected)?;
            if d.len() < 3 {
                return Err(usage(name, expected, params));
            }
            Ok(ProblemFile::CurvesPn(CurvesPnInput {
                weights: d.iter().map(|x| x.to_string()).collect(),
                group: GroupName::Sl2,
            }))
        }
        "hassett" => {
            let expected = "n and j with ceil(n/2) <= j <= n - 2";
            count(name, params, 2, expected)?;
            let nj = positive(name, params, expected)?;
            let lin = FmLinearization::hassett(nj[0] as usize, nj[1] as usize)?;
            Ok(ProblemFile::CurvesFm(fm_input(&lin)))
        }
        _ => Err(CliError::Usage(format!(
            "unknown preset {name:?}; known presets: {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}

/// The problem file describing `lin`, with every divisor listed.
pub fn fm_input(lin: &FmLinearization) -> CurvesFmInput {
    CurvesFmInput {
        j: lin.stage(),
        weights: lin.weights().iter().map(rational_string).collect(),
        a: lin
            .divisors()
            .iter()
            .map(|(s, v)| DivisorEntry {
                subset: s.members().map(|i| i + 1).collect(),
                value: rational_string(v),
            })
            .collect(),
        divisor_min: Some(lin.divisor_min()),
        mu_min: Some(lin.mu_min()),
        ample: lin.is_ample(),
    }
}

/// Replaces a preset by its expansion; other files are returned unchanged.
pub fn expand(file: &ProblemFile) -> Result<ProblemFile, CliError> {
    match file {
        ProblemFile::Preset(p) => expand_preset(&p.name, &p.parameters),
        other => Ok(other.clone()),
    }
}
