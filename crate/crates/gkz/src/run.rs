//! Command dispatch: one engine call per command, packaged as a [`Report`].

use std::collections::BTreeSet;

use gkz_core::curves::{
    find_abyss_path, marked_walk, pgl2_linearizable, pn_walk, FmLinearization, Group,
    PnLinearization, PnWalk, Route, WalkEnd,
};
use gkz_core::orlov::{build_lg, orlov_report};
use gkz_core::toric::{
    chamber_graph, exceptional_collection, flatten, perturbation, SodTree, ValidatedProblem,
};
use gkz_core::{Integer, Rational, RationalVector};
use num_traits::Zero;

use crate::error::CliError;
use crate::input::{resolve, GroupName, Problem, ProblemFile};
use crate::presets::expand;
use crate::report::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Fan,
    Chamber,
    K0,
    Collection,
    Orlov,
    CurvesCount,
    CurvesAbyss,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Fan => "fan",
            Command::Chamber => "chamber",
            Command::K0 => "k0",
            Command::Collection => "collection",
            Command::Orlov => "orlov",
            Command::CurvesCount => "curves-count",
            Command::CurvesAbyss => "curves-abyss",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    /// Overrides `twist_d` of a toric input; the anchor for `orlov`.
    pub twist_d: Option<i64>,
    /// Overrides the group of a `curves_pn` input.
    pub group: Option<GroupName>,
}

/// Expands presets, applies flag overrides, runs `command` and builds the
/// report.
pub fn run(input: &ProblemFile, command: Command, opts: &RunOptions) -> Result<Report, CliError> {
    let mut resolved = expand(input)?;
    match &mut resolved {
        ProblemFile::Toric(t) => {
            if let Some(d) = opts.twist_d {
                t.twist_d = d;
            }
        }
        ProblemFile::CurvesPn(c) => {
            if let Some(g) = opts.group {
                c.group = g;
            }
        }
        _ => {}
    }
    let problem = resolve(&resolved)?;
    let mut perturbations = BTreeSet::new();
    let result = dispatch(&problem, command, opts, &mut perturbations)?;
    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        command: command.name().into(),
        input: input.clone(),
        resolved,
        result,
        provenance: Provenance {
            seed: opts.seed,
            perturbations: perturbations.into_iter().collect(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
    })
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn mismatch(command: Command, expected: &str) -> CliError {
    CliError::Usage(format!("command {} needs {expected} input", command.name()))
}

fn used(out: &mut BTreeSet<Perturbation>, context: &str, seed: u64, dim: usize) {
    out.insert(Perturbation {
        context: context.into(),
        seed,
        vector: rational_strings(&perturbation(seed, dim).0),
    });
}

fn dispatch(
    problem: &Problem,
    command: Command,
    opts: &RunOptions,
    perturbations: &mut BTreeSet<Perturbation>,
) -> Result<Payload, CliError> {
    match (command, problem) {
        (
            Command::Fan | Command::Chamber | Command::K0 | Command::Collection,
            Problem::Toric {
                problem,
                character,
                twist_d,
            },
        ) => {
            let v = problem.validate()?;
            match command {
                Command::Fan => fan(&v, character).map(Payload::Fan),
                Command::Chamber => chamber(&v, character).map(Payload::Chamber),
                Command::K0 => k0(&v, character).map(Payload::K0),
                _ => collection(&v, character, twist_d, opts.seed, perturbations)
                    .map(Payload::Collection),
            }
        }
        (Command::Fan | Command::Chamber | Command::K0 | Command::Collection, _) => {
            Err(mismatch(command, "toric"))
        }
        (Command::Orlov, Problem::Orlov(spec)) => {
            let anchor = Integer::from(opts.twist_d.unwrap_or(0));
            let r = orlov_report(spec, &anchor)?;
            let model = build_lg(spec);
            Ok(Payload::Orlov(OrlovResult {
                n: spec.n(),
                degrees: spec.degrees().to_vec(),
                columns: model
                    .problem
                    .columns()
                    .iter()
                    .map(|c| ints(c))
                    .collect::<Result<_, _>>()?,
                lambda: ints(&model.lambda)?,
                potential: ints(&model.potential)?,
                a: int(&r.a)?,
                engine_mu: int(&r.engine_mu)?,
                t_plus: int(&r.t_plus)?,
                t_minus: int(&r.t_minus)?,
                case: r.case.label().into(),
                anchor: int(&r.anchor)?,
                sigma_side: r.sigma_side.into(),
                lg_side: r.lg_side.into(),
                sigma_side_objects: r.sigma_side_objects,
                lg_side_objects: r.lg_side_objects,
            }))
        }
        (Command::Orlov, _) => Err(mismatch(command, "orlov")),
        (Command::CurvesCount, Problem::CurvesPn { weights, group }) => {
            curves_count(weights, *group, opts.seed, perturbations).map(Payload::CurvesCount)
        }
        (Command::CurvesCount, _) => Err(mismatch(command, "curves_pn")),
        (Command::CurvesAbyss, Problem::CurvesPn { weights, .. }) => {
            let lin = FmLinearization::new(0, weights.clone(), Default::default())?;
            abyss(&lin, opts.seed, perturbations).map(Payload::CurvesAbyss)
        }
        (Command::CurvesAbyss, Problem::CurvesFm(lin)) => {
            abyss(lin, opts.seed, perturbations).map(Payload::CurvesAbyss)
        }
        (Command::CurvesAbyss, _) => Err(mismatch(command, "curves_pn or curves_fm")),
    }
}

fn fan(v: &ValidatedProblem, chi: &RationalVector) -> Result<FanResult, CliError> {
    let graph = chamber_graph(v)?;
    let here = v.chamber_signature(chi).ok();
    Ok(FanResult {
        hyperplanes: graph
            .hyperplanes
            .iter()
            .map(|h| {
                Ok(HyperplaneOut {
                    normal: ints(&h.normal)?,
                    fixed_columns: one_based(&h.fixed),
                })
            })
            .collect::<Result<_, CliError>>()?,
        character_chamber: here
            .and_then(|s| graph.nodes.iter().position(|node| node.signature == s)),
        chambers: graph
            .nodes
            .iter()
            .enumerate()
            .map(|(id, node)| {
                Ok(ChamberOut {
                    id,
                    empty: node.is_empty_chamber(),
                    signature: node.signature.0.iter().map(|s| one_based(s)).collect(),
                    sample: rational_strings(&node.sample.0),
                    k0: int(&node.k0)?,
                })
            })
            .collect::<Result<_, CliError>>()?,
        edges: graph
            .edges
            .iter()
            .map(|e| {
                Ok(EdgeOut {
                    from: e.from,
                    to: e.to,
                    lambda: ints(&e.lambda)?,
                    wall_point: rational_strings(&e.wall_point.0),
                    mu: int(&e.mu)?,
                })
            })
            .collect::<Result<_, CliError>>()?,
    })
}

fn chamber(v: &ValidatedProblem, chi: &RationalVector) -> Result<ChamberResult, CliError> {
    let signature = v.chamber_signature(chi)?;
    Ok(ChamberResult {
        character: rational_strings(&chi.0),
        effective: v.is_effective(chi),
        empty: signature.is_empty_chamber(),
        k0: int(&v.k0_rank(chi)?)?,
        signature: signature.0.iter().map(|s| one_based(s)).collect(),
    })
}

fn k0(v: &ValidatedProblem, chi: &RationalVector) -> Result<K0Result, CliError> {
    Ok(K0Result {
        character: rational_strings(&chi.0),
        k0: int(&v.k0_rank(chi)?)?,
        sigma_bases: v
            .sigma_bases(chi)?
            .into_iter()
            .map(|(subset, index)| {
                Ok(SigmaOut {
                    subset: one_based(&subset),
                    index: int(&index)?,
                })
            })
            .collect::<Result<_, CliError>>()?,
    })
}

fn collection(
    v: &ValidatedProblem,
    chi: &RationalVector,
    d: &Integer,
    seed: u64,
    perturbations: &mut BTreeSet<Perturbation>,
) -> Result<CollectionResult, CliError> {
    let tree = exceptional_collection(v, chi, d, seed)?;
    let k0 = int(&v.k0_rank(chi)?)?;
    let objects = flatten(&tree)
        .into_iter()
        .map(|o| {
            Ok(ObjectOut {
                chain: o
                    .chain
                    .into_iter()
                    .map(|l| {
                        Ok(LinkOut {
                            lambda: ints(&l.lambda)?,
                            fixed_columns: one_based(&l.fixed),
                            twist: int(&l.twist)?,
                        })
                    })
                    .collect::<Result<_, CliError>>()?,
                character: ints(&o.character)?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(CollectionResult {
        twist_d: int(d)?,
        leaves: int(&tree.leaf_count())?,
        k0,
        tree: tree_out(&tree, perturbations)?,
        objects,
    })
}

fn tree_out(tree: &SodTree, perturbations: &mut BTreeSet<Perturbation>) -> Result<TreeOut, CliError> {
    Ok(match tree {
        SodTree::UnitLeaf => TreeOut::UnitLeaf,
        SodTree::Empty => TreeOut::Empty,
        SodTree::Node {
            problem,
            character,
            seed,
            blocks,
        } => {
            used(perturbations, &format!("toric path, rank {}", problem.rank()), *seed, problem.rank());
            TreeOut::Node {
                rank: problem.rank(),
                labels: problem.labels().to_vec(),
                columns: problem
                    .columns()
                    .iter()
                    .map(|c| ints(c))
                    .collect::<Result<_, _>>()?,
                character: rational_strings(&character.0),
                seed: *seed,
                leaves: int(&tree.leaf_count())?,
                blocks: blocks
                    .iter()
                    .map(|b| {
                        let c = &b.crossing.crossing;
                        Ok(BlockOut {
                            t: rational_string(&b.crossing.t),
                            point: rational_strings(&b.crossing.point.0),
                            lambda: ints(&c.lambda)?,
                            weights: ints(&c.weights)?,
                            fixed_columns: one_based(&c.fixed),
                            nu_plus: int(&c.nu_plus)?,
                            nu_minus: int(&c.nu_minus)?,
                            t_plus: int(&c.t_plus)?,
                            t_minus: int(&c.t_minus)?,
                            mu: int(&c.mu)?,
                            twists: ints(&b.twists)?,
                            child: tree_out(&b.child, perturbations)?,
                        })
                    })
                    .collect::<Result<_, CliError>>()?,
            }
        }
    })
}

fn walk_out(walk: &PnWalk) -> WalkOut {
    let (route, seed, marking, point) = match &walk.route {
        Route::Straight { seed, through } => ("straight", Some(*seed), None, through),
        Route::Marked { marking, start } => ("marked", None, Some(marking + 1), start),
    };
    WalkOut {
        route: route.into(),
        seed,
        marking,
        point: rational_strings(point),
        walls: walk
            .walls
            .iter()
            .map(|w| PnWallOut {
                growing: w.growing.members().map(|i| i + 1).collect(),
                copies: w.copies,
            })
            .collect(),
        end: match &walk.end {
            WalkEnd::Base => WalkEndOut::Base,
            WalkEnd::Empty => WalkEndOut::Empty,
            WalkEnd::Boundary {
                marking,
                reduced,
                reduced_count,
            } => WalkEndOut::Boundary {
                marking: marking + 1,
                reduced: rational_strings(reduced),
                reduced_count: [reduced_count.even, reduced_count.odd],
            },
        },
        count: [walk.count.even, walk.count.odd],
    }
}

fn curves_count(
    d: &[Rational],
    group: Group,
    seed: u64,
    perturbations: &mut BTreeSet<Perturbation>,
) -> Result<CurvesCountResult, CliError> {
    PnLinearization::new(d.to_vec(), group)?;
    let walk = pn_walk(d, seed)?;
    if let Route::Straight { seed: s, .. } = walk.route {
        if d.len() > 3 {
            used(perturbations, "straight walk", s, d.len());
        }
    }
    let markings = (0..d.len())
        .map(|m| match marked_walk(d, m) {
            Ok(w) => MarkingOut {
                marking: m + 1,
                count: Some([w.count.even, w.count.odd]),
                error: None,
            },
            Err(e) => MarkingOut {
                marking: m + 1,
                count: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    Ok(CurvesCountResult {
        group: match group {
            Group::Sl2 => "sl2",
            Group::Pgl2 => "pgl2",
        }
        .into(),
        sl2: [walk.count.even, walk.count.odd],
        pgl2: pgl2_linearizable(d).then_some(walk.count.even),
        walk: walk_out(&walk),
        markings,
    })
}

fn abyss(
    lin: &FmLinearization,
    seed: u64,
    perturbations: &mut BTreeSet<Perturbation>,
) -> Result<AbyssResult, CliError> {
    let cert = find_abyss_path(lin, seed)?;
    if cert.direction.iter().any(|x| !x.is_zero()) {
        used(perturbations, "abyss direction", cert.seed, lin.n());
    }
    Ok(AbyssResult {
        j: lin.stage(),
        n: lin.n(),
        seed: cert.seed,
        start: rational_strings(&cert.start),
        direction: rational_strings(&cert.direction),
        walls: cert
            .walls
            .iter()
            .map(|w| {
                Ok(AbyssWallOut {
                    subset: w.subset.members().map(|i| i + 1).collect(),
                    complement_size: w.subset.complement().len(),
                    t: rational_string(&w.t),
                    point: rational_strings(&w.point),
                    mu: int(&w.mu)?,
                })
            })
            .collect::<Result<_, CliError>>()?,
        terminal: rational_strings(&cert.terminal),
        witness: cert.witness + 1,
        verified: cert.verify(lin),
    })
}
