//! Report structure shared by every command. Rationals are `"p/q"` strings,
//! integers are JSON numbers, and column indices and curve marks are
//! 1-based. Fixed columns of a nested block index the columns of its own
//! node.

use gkz_core::{Integer, Rational};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::input::ProblemFile;

/// Version of the report layout described by `schema/report.schema.json`.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    /// The input exactly as given.
    pub input: ProblemFile,
    /// The input with presets expanded.
    pub resolved: ProblemFile,
    pub result: Payload,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub seed: u64,
    pub perturbations: Vec<Perturbation>,
    pub version: String,
}

/// A perturbation vector that was actually used.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub context: String,
    pub seed: u64,
    pub vector: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Fan(FanResult),
    Chamber(ChamberResult),
    K0(K0Result),
    Collection(CollectionResult),
    Orlov(OrlovResult),
    CurvesCount(CurvesCountResult),
    CurvesAbyss(AbyssResult),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneOut {
    pub normal: Vec<i64>,
    pub fixed_columns: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberOut {
    pub id: usize,
    pub empty: bool,
    pub signature: Vec<Vec<usize>>,
    pub sample: Vec<String>,
    pub k0: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeOut {
    pub from: usize,
    pub to: usize,
    pub lambda: Vec<i64>,
    pub wall_point: Vec<String>,
    pub mu: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanResult {
    pub hyperplanes: Vec<HyperplaneOut>,
    pub chambers: Vec<ChamberOut>,
    pub edges: Vec<EdgeOut>,
    /// The chamber containing the input character, if it is off the walls.
    pub character_chamber: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberResult {
    pub character: Vec<String>,
    pub effective: bool,
    pub empty: bool,
    pub signature: Vec<Vec<usize>>,
    pub k0: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaOut {
    pub subset: Vec<usize>,
    pub index: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct K0Result {
    pub character: Vec<String>,
    pub k0: i64,
    /// Simplicial cones containing the character, boundary included.
    pub sigma_bases: Vec<SigmaOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockOut {
    pub t: String,
    pub point: Vec<String>,
    pub lambda: Vec<i64>,
    pub weights: Vec<i64>,
    pub fixed_columns: Vec<usize>,
    pub nu_plus: i64,
    pub nu_minus: i64,
    pub t_plus: i64,
    pub t_minus: i64,
    pub mu: i64,
    pub twists: Vec<i64>,
    pub child: TreeOut,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TreeOut {
    UnitLeaf,
    Empty,
    Node {
        rank: usize,
        labels: Vec<String>,
        columns: Vec<Vec<i64>>,
        character: Vec<String>,
        seed: u64,
        leaves: i64,
        blocks: Vec<BlockOut>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkOut {
    pub lambda: Vec<i64>,
    pub fixed_columns: Vec<usize>,
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectOut {
    pub chain: Vec<LinkOut>,
    pub character: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionResult {
    pub twist_d: i64,
    pub leaves: i64,
    /// Independent count by simplicial cones; equal to `leaves`.
    pub k0: i64,
    pub tree: TreeOut,
    pub objects: Vec<ObjectOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrlovResult {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub columns: Vec<Vec<i64>>,
    pub lambda: Vec<i64>,
    pub potential: Vec<i64>,
    pub a: i64,
    pub engine_mu: i64,
    pub t_plus: i64,
    pub t_minus: i64,
    pub case: String,
    pub anchor: i64,
    pub sigma_side: String,
    pub lg_side: String,
    pub sigma_side_objects: Vec<String>,
    pub lg_side_objects: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PnWallOut {
    pub growing: Vec<usize>,
    pub copies: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WalkEndOut {
    Base,
    Empty,
    Boundary {
        marking: usize,
        reduced: Vec<String>,
        reduced_count: [u64; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkOut {
    pub route: String,
    /// Seed of a straight walk, or the mark driven to zero by a marked walk.
    pub seed: Option<u64>,
    pub marking: Option<usize>,
    /// `through` for a straight walk, the starting point for a marked walk.
    pub point: Vec<String>,
    pub walls: Vec<PnWallOut>,
    pub end: WalkEndOut,
    pub count: [u64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkingOut {
    pub marking: usize,
    pub count: Option<[u64; 2]>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvesCountResult {
    pub group: String,
    /// `[even, odd]` on the `SL_2` quotient.
    pub sl2: [u64; 2],
    /// The even part, when `O(d)` is `PGL_2`-linearizable.
    pub pgl2: Option<u64>,
    pub walk: WalkOut,
    /// Marked walks; every successful one agrees with `sl2`.
    pub markings: Vec<MarkingOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbyssWallOut {
    pub subset: Vec<usize>,
    pub complement_size: usize,
    pub t: String,
    pub point: Vec<String>,
    pub mu: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbyssResult {
    pub j: usize,
    pub n: usize,
    pub seed: u64,
    pub start: Vec<String>,
    pub direction: Vec<String>,
    pub walls: Vec<AbyssWallOut>,
    pub terminal: Vec<String>,
    pub witness: usize,
    pub verified: bool,
}

/// `p/q` in lowest terms, `/1` included.
pub fn rational_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

pub fn int(x: &Integer) -> Result<i64, CliError> {
    x.to_i64()
        .ok_or_else(|| CliError::Overflow(format!("{x} does not fit in 64 bits")))
}

pub fn ints(v: &[Integer]) -> Result<Vec<i64>, CliError> {
    v.iter().map(int).collect()
}
