//! The gauged Landau-Ginzburg model of a graded complete intersection and
//! the single wall crossing relating its two phases.
//!
//! `S = k[x_1, ..., x_n]` carries the standard grading and each relation
//! `f_j` of degree `d_j` gets a partner variable `u_j` of degree `-d_j`. A
//! second `G_m` (the R-symmetry) gives the `u_j` weight one so that the
//! potential `w = u_1 f_1 + ... + u_c f_c` has character `(0, 1)`. Only the
//! degrees enter any computation.
//!
//! Object labels follow the trichotomy `O_Y(d), ..., O_Y(a + d - 1)` and
//! `k(-d), ..., k(a - d + 1)` with `a = n - sum d_j`. Orlov's original
//! statement uses a different anchor and sign for the twists; no attempt is
//! made to reconcile the two.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::lattice::{pair, Integer};
use crate::toric::{wall_crossing, GitProblem, ToricError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrlovError {
    /// `n = 0` or a degree below one.
    InvalidSpec(String),
    /// The closed form `n - sum d_j` disagrees with the engine's `mu`.
    InternalMismatch { closed_form: Integer, engine: Integer },
    Toric(ToricError),
}

impl From<ToricError> for OrlovError {
    fn from(e: ToricError) -> Self {
        OrlovError::Toric(e)
    }
}

impl fmt::Display for OrlovError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrlovError::InvalidSpec(reason) => write!(f, "invalid complete intersection: {reason}"),
            OrlovError::InternalMismatch {
                closed_form,
                engine,
            } => write!(
                f,
                "internal mismatch: n - sum(d) = {closed_form} but the wall crossing gives mu = {engine}"
            ),
            OrlovError::Toric(e) => write!(f, "{e}"),
        }
    }
}

/// Number of variables and degrees of a regular sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CiSpec {
    n: usize,
    degrees: Vec<u32>,
}

impl CiSpec {
    pub fn new(n: usize, degrees: Vec<u32>) -> Result<Self, OrlovError> {
        if n == 0 {
            return Err(OrlovError::InvalidSpec("n must be at least 1".into()));
        }
        if let Some(j) = degrees.iter().position(|&d| d == 0) {
            return Err(OrlovError::InvalidSpec(format!(
                "degree d{} must be at least 1",
                j + 1
            )));
        }
        Ok(CiSpec { n, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `a = n - sum d_j`.
    pub fn gorenstein_parameter(&self) -> Integer {
        let total: u64 = self.degrees.iter().map(|&d| u64::from(d)).sum();
        Integer::from(self.n) - Integer::from(total)
    }
}

/// The model as a rank-2 problem together with its wall and potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LgModel {
    pub problem: GitProblem,
    /// The one-parameter subgroup `(1, 0)` of the first grading.
    pub lambda: Vec<Integer>,
    /// Character of the potential, `(0, 1)`.
    pub potential: Vec<Integer>,
}

/// Columns `(1, 0)` for each `x_i` and `(-d_j, 1)` for each `u_j`.
pub fn build_lg(spec: &CiSpec) -> LgModel {
    let mut columns = Vec::with_capacity(spec.n + spec.degrees.len());
    let mut labels = Vec::with_capacity(columns.capacity());
    for i in 1..=spec.n {
        columns.push(alloc::vec![Integer::from(1), Integer::zero()]);
        labels.push(format!("x{i}"));
    }
    for (j, &d) in spec.degrees.iter().enumerate() {
        columns.push(alloc::vec![-Integer::from(d), Integer::from(1)]);
        labels.push(format!("u{}", j + 1));
    }
    let problem = GitProblem::with_labels(2, columns, labels)
        .expect("columns and labels are built with matching sizes");
    let lambda = alloc::vec![Integer::from(1), Integer::zero()];
    let potential = alloc::vec![Integer::zero(), Integer::from(1)];
    assert!(
        pair(&potential, &lambda).is_zero(),
        "the potential must be invariant under the wall subgroup"
    );
    LgModel {
        problem,
        lambda,
        potential,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrlovCase {
    /// `a > 0`: the complete intersection side has `a` extra objects.
    SigmaSideLarger,
    /// `a = 0`: the two sides are equivalent.
    Equivalence,
    /// `a < 0`: the singularity category side has `|a|` extra objects.
    LgSideLarger,
}

impl OrlovCase {
    pub fn label(self) -> &'static str {
        match self {
            OrlovCase::SigmaSideLarger => "SigmaSideLarger",
            OrlovCase::Equivalence => "Equivalence",
            OrlovCase::LgSideLarger => "LGSideLarger",
        }
    }
}

pub const SIGMA_SIDE: &str = "P^{n-1} complete intersection side";
pub const LG_SIDE: &str = "graded singularity category side";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrlovReport {
    pub spec: CiSpec,
    pub anchor: Integer,
    pub a: Integer,
    pub case: OrlovCase,
    pub sigma_side_objects: Vec<String>,
    pub lg_side_objects: Vec<String>,
    pub engine_mu: Integer,
    pub t_plus: Integer,
    pub t_minus: Integer,
    pub sigma_side: &'static str,
    pub lg_side: &'static str,
}

/// Runs the wall crossing of [`build_lg`] and checks it against the closed
/// form before labelling the extra objects for anchor `d`.
pub fn orlov_report(spec: &CiSpec, d: &Integer) -> Result<OrlovReport, OrlovError> {
    let model = build_lg(spec);
    let crossing = wall_crossing(&model.problem, &model.lambda)?;
    let a = spec.gorenstein_parameter();
    if crossing.mu != a {
        return Err(OrlovError::InternalMismatch {
            closed_form: a,
            engine: crossing.mu,
        });
    }
    let case = if a.is_positive() {
        OrlovCase::SigmaSideLarger
    } else if a.is_zero() {
        OrlovCase::Equivalence
    } else {
        OrlovCase::LgSideLarger
    };
    let mut sigma_side_objects = Vec::new();
    let mut lg_side_objects = Vec::new();
    let mut i = Integer::zero();
    while i < a.abs() {
        if a.is_positive() {
            sigma_side_objects.push(format!("O_Y({})", d + &i));
        } else {
            lg_side_objects.push(format!("k({})", -d - &i));
        }
        i += 1;
    }
    Ok(OrlovReport {
        spec: spec.clone(),
        anchor: d.clone(),
        a,
        case,
        sigma_side_objects,
        lg_side_objects,
        engine_mu: crossing.mu,
        t_plus: crossing.t_plus,
        t_minus: crossing.t_minus,
        sigma_side: SIGMA_SIDE,
        lg_side: LG_SIDE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ints;

    fn report(n: usize, degrees: &[u32], d: i64) -> OrlovReport {
        orlov_report(&CiSpec::new(n, degrees.to_vec()).unwrap(), &d.into()).unwrap()
    }

    #[test]
    fn cubic_curve_model() {
        let model = build_lg(&CiSpec::new(3, alloc::vec![3]).unwrap());
        assert_eq!(
            model.problem.columns(),
            &[ints(&[1, 0]), ints(&[1, 0]), ints(&[1, 0]), ints(&[-3, 1])]
        );
        assert_eq!(model.problem.labels()[3], "u1");
        assert!(model.problem.validate().is_ok());
    }

    #[test]
    fn no_relations() {
        let r = report(1, &[], 0);
        assert_eq!(r.engine_mu, 1.into());
        assert_eq!(r.sigma_side_objects, alloc::vec![String::from("O_Y(0)")]);
    }

    #[test]
    fn three_cases() {
        let r = report(3, &[3], 0);
        assert_eq!(r.case, OrlovCase::Equivalence);
        assert!(r.sigma_side_objects.is_empty() && r.lg_side_objects.is_empty());

        let r = report(5, &[2, 2], 0);
        assert_eq!(r.a, 1.into());
        assert_eq!(r.case, OrlovCase::SigmaSideLarger);
        assert_eq!(r.sigma_side_objects, alloc::vec![String::from("O_Y(0)")]);

        let r = report(3, &[4], 0);
        assert_eq!(r.case, OrlovCase::LgSideLarger);
        assert_eq!(r.lg_side_objects, alloc::vec![String::from("k(0)")]);
    }

    #[test]
    fn anchored_lists() {
        let r = report(4, &[1], 2);
        assert_eq!(r.sigma_side_objects, ["O_Y(2)", "O_Y(3)", "O_Y(4)"]);
        let r = report(2, &[2, 2], 1);
        assert_eq!(r.lg_side_objects, ["k(-1)", "k(-2)"]);
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(CiSpec::new(0, alloc::vec![]), Err(OrlovError::InvalidSpec(_))));
        assert!(matches!(CiSpec::new(2, alloc::vec![1, 0]), Err(OrlovError::InvalidSpec(_))));
    }
}
