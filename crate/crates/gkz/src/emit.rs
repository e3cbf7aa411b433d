//! Serialization of reports: canonical JSON, a text summary and DOT.

use std::fmt::Write;

use crate::error::CliError;
use crate::report::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
    Dot,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
            Format::Dot => "dot",
        }
    }
}

pub fn emit(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(to_json(report)),
        Format::Text => Ok(to_text(report)),
        Format::Dot => match &report.result {
            Payload::Fan(f) => Ok(to_dot(f)),
            _ => Err(CliError::UnsupportedFormat {
                format: format.name().into(),
                command: report.command.clone(),
            }),
        },
    }
}

/// Pretty JSON with object keys sorted, ending in a newline.
pub fn to_json(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("reports contain only JSON-representable data");
    let mut s = serde_json::to_string_pretty(&value).expect("a JSON value always serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Report, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| CliError::Schema {
        field: e.path().to_string(),
        reason: e.into_inner().to_string(),
    })
}

fn list<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("({})", parts.join(", "))
}

fn marks(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn tree_text(out: &mut String, tree: &TreeOut, depth: usize) {
    let pad = "  ".repeat(depth);
    match tree {
        TreeOut::UnitLeaf => {
            let _ = writeln!(out, "{pad}point");
        }
        TreeOut::Empty => {
            let _ = writeln!(out, "{pad}empty");
        }
        TreeOut::Node {
            rank,
            columns,
            leaves,
            blocks,
            ..
        } => {
            let cols: Vec<String> = columns.iter().map(|c| list(c)).collect();
            let _ = writeln!(out, "{pad}rank {rank} [{}], {leaves} objects", cols.join(" "));
            for b in blocks {
                let _ = writeln!(
                    out,
                    "{pad}- wall lambda={} t={} mu={} fixed={} twists={}",
                    list(&b.lambda),
                    b.t,
                    b.mu,
                    list(&b.fixed_columns),
                    list(&b.twists)
                );
                tree_text(out, &b.child, depth + 1);
            }
        }
    }
}

pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gkz {} {}", report.provenance.version, report.command);
    match &report.result {
        Payload::Fan(f) => {
            let _ = writeln!(out, "hyperplanes: {}", f.hyperplanes.len());
            for h in &f.hyperplanes {
                let _ = writeln!(out, "  normal {} fixed {}", list(&h.normal), list(&h.fixed_columns));
            }
            let _ = writeln!(out, "chambers: {}", f.chambers.len());
            for c in &f.chambers {
                let kind = if c.empty { "empty" } else { "nonempty" };
                let _ = writeln!(out, "  c{} {kind} k0={} sample {}", c.id, c.k0, list(&c.sample));
            }
            let _ = writeln!(out, "edges: {}", f.edges.len());
            for e in &f.edges {
                let _ = writeln!(out, "  c{} -> c{} lambda={} mu={}", e.from, e.to, list(&e.lambda), e.mu);
            }
            match f.character_chamber {
                Some(id) => {
                    let _ = writeln!(out, "character in c{id}");
                }
                None => {
                    let _ = writeln!(out, "character on a wall");
                }
            }
        }
        Payload::Chamber(c) => {
            let _ = writeln!(out, "character {}", list(&c.character));
            let _ = writeln!(out, "effective: {}", c.effective);
            let _ = writeln!(out, "empty chamber: {}", c.empty);
            let sig: Vec<String> = c.signature.iter().map(|s| list(s)).collect();
            let _ = writeln!(out, "signature: {}", sig.join(" "));
            let _ = writeln!(out, "k0: {}", c.k0);
        }
        Payload::K0(k) => {
            let _ = writeln!(out, "character {}", list(&k.character));
            let _ = writeln!(out, "k0: {}", k.k0);
            for s in &k.sigma_bases {
                let _ = writeln!(out, "  sigma {} index {}", list(&s.subset), s.index);
            }
        }
        Payload::Collection(c) => {
            let _ = writeln!(out, "objects: {} (k0 {})", c.leaves, c.k0);
            let _ = writeln!(out, "twist anchor: {}", c.twist_d);
            tree_text(&mut out, &c.tree, 0);
        }
        Payload::Orlov(o) => {
            let _ = writeln!(out, "n = {}, degrees {}", o.n, list(&o.degrees));
            let _ = writeln!(out, "a = {} (engine mu = {})", o.a, o.engine_mu);
            let _ = writeln!(out, "case: {}", o.case);
            for (side, objects) in [(&o.sigma_side, &o.sigma_side_objects), (&o.lg_side, &o.lg_side_objects)] {
                let objects = if objects.is_empty() { "none".to_string() } else { objects.join(", ") };
                let _ = writeln!(out, "{side}: {objects}");
            }
        }
        Payload::CurvesCount(c) => {
            let _ = writeln!(out, "sl2: even {} odd {}", c.sl2[0], c.sl2[1]);
            match c.pgl2 {
                Some(p) => {
                    let _ = writeln!(out, "pgl2: {p}");
                }
                None => {
                    let _ = writeln!(out, "pgl2: not linearizable");
                }
            }
            let _ = writeln!(out, "walk: {} walls", c.walk.walls.len());
            for w in &c.walk.walls {
                let _ = writeln!(out, "  growing {} copies {}", marks(&w.growing), w.copies);
            }
            for m in &c.markings {
                match (&m.count, &m.error) {
                    (Some(k), _) => {
                        let _ = writeln!(out, "marking {}: {} + {}", m.marking, k[0], k[1]);
                    }
                    (None, Some(e)) => {
                        let _ = writeln!(out, "marking {}: {e}", m.marking);
                    }
                    (None, None) => {}
                }
            }
        }
        Payload::CurvesAbyss(a) => {
            let _ = writeln!(out, "n = {}, stage j = {}", a.n, a.j);
            let _ = writeln!(out, "start {}", list(&a.start));
            let _ = writeln!(out, "direction {}", list(&a.direction));
            for w in &a.walls {
                let _ = writeln!(
                    out,
                    "  wall {} |I|={} |I^c|={} t={} mu={}",
                    marks(&w.subset),
                    w.subset.len(),
                    w.complement_size,
                    w.t,
                    w.mu
                );
            }
            let _ = writeln!(out, "terminal {} (mark {} outweighs the rest)", list(&a.terminal), a.witness);
            let _ = writeln!(out, "verified: {}", a.verified);
        }
    }
    out
}

/// Chamber adjacency as a DOT digraph; each edge points to the side where
/// its `lambda` is positive.
pub fn to_dot(fan: &FanResult) -> String {
    let mut out = String::from("digraph chambers {\n");
    for c in &fan.chambers {
        let label = if c.empty {
            "empty".to_string()
        } else {
            format!("k0={}", c.k0)
        };
        let _ = writeln!(out, "  c{} [label=\"c{}: {label}\"];", c.id, c.id);
    }
    for e in &fan.edges {
        let _ = writeln!(
            out,
            "  c{} -> c{} [label=\"lambda={} mu={}\"];",
            e.from,
            e.to,
            list(&e.lambda),
            e.mu
        );
    }
    out.push_str("}\n");
    out
}
