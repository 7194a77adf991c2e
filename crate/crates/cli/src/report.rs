//! Reports. JSON is the primary format; the text view is rendered from the
//! same struct and shows nothing that is not in it.

use std::fmt::Write;

use fano_toric_core::analysis::HypothesisReport;
use serde::{Deserialize, Serialize};

use crate::problem::Task;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationSummary {
    pub points: usize,
    pub ambient_dim: usize,
    pub dim: usize,
    /// Whether the input already generated its lattice.
    pub normalized: bool,
    pub smooth: bool,
    pub vertices: usize,
    /// Number of faces of each dimension, from vertices up.
    pub f_vector: Vec<usize>,
    pub facets: Vec<FacetRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetRecord {
    /// Inner normal in normalized coordinates.
    pub normal: Vec<i64>,
    pub offset: i64,
    pub points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub name: String,
    /// Facet coefficients, canonical facet order.
    pub coefficients: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint_free: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRecord {
    pub length: usize,
    pub tau_dim: usize,
    pub maximal: bool,
    /// Points of each fiber, in input coordinates.
    pub fibers: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub length: usize,
    pub tau_dim: usize,
    pub component_dimension: i64,
    pub fibers: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<HypothesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corollary: Option<HypothesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<i128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: Task,
    pub k: usize,
    pub configuration: ConfigurationSummary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<ClassSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<FaceRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structures: Vec<StructureRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<i128>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

fn fmt_fibers(fibers: &[Vec<Vec<i64>>]) -> String {
    fibers
        .iter()
        .map(|f| {
            let pts: Vec<String> = f
                .iter()
                .map(|p| {
                    let c: Vec<String> = p.iter().map(i64::to_string).collect();
                    format!("({})", c.join(","))
                })
                .collect();
            format!("{{{}}}", pts.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn fmt_list<T: ToString>(xs: &[T]) -> String {
    let s: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("({})", s.join(", "))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), T::to_string)
}

fn write_hypotheses(out: &mut String, label: &str, h: &HypothesisReport) {
    let _ = writeln!(out, "    {label} conditions:");
    for c in &h.conditions {
        let (status, detail) = match &c.verdict {
            fano_toric_core::analysis::Verdict::Holds { witness } => {
                ("holds", witness.clone().unwrap_or_default())
            }
            fano_toric_core::analysis::Verdict::Fails { witness } => ("FAILS", witness.clone()),
            fano_toric_core::analysis::Verdict::NotCheckable { reason } => {
                ("not checkable", reason.clone())
            }
        };
        let _ = write!(out, "      ({}) {}: {status}", c.id, c.description);
        if !detail.is_empty() {
            let _ = write!(out, " [{detail}]");
        }
        out.push('\n');
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.configuration;
        let _ = writeln!(out, "task: {}   k = {}", self.task, self.k);
        let _ = writeln!(
            out,
            "configuration: {} points in Z^{}, dimension {}, {} vertices, {}, {}",
            c.points,
            c.ambient_dim,
            c.dim,
            c.vertices,
            if c.normalized {
                "normalized"
            } else {
                "re-embedded"
            },
            if c.smooth { "smooth" } else { "singular" }
        );
        let _ = writeln!(out, "f-vector: {}", fmt_list(&c.f_vector));
        if self.task == Task::Smooth || self.task == Task::Faces {
            let _ = writeln!(out, "facets:");
            for f in &c.facets {
                let _ = writeln!(out, "  normal {}  offset {}", fmt_list(&f.normal), f.offset);
            }
        }
        for cl in &self.classes {
            let _ = write!(
                out,
                "class {}: coefficients {}",
                cl.name,
                fmt_list(&cl.coefficients)
            );
            if let Some(b) = cl.basepoint_free {
                let _ = write!(out, ", basepoint free: {b}");
            }
            out.push('\n');
        }
        if !self.faces.is_empty() {
            let _ = writeln!(out, "faces:");
            for f in &self.faces {
                let _ = writeln!(
                    out,
                    "  dim {}  {}",
                    f.dim,
                    fmt_fibers(std::slice::from_ref(&f.points))
                );
            }
        }
        if !self.structures.is_empty() {
            let _ = writeln!(out, "Cayley structures:");
            let _ = writeln!(
                out,
                "  {:>6} {:>7} {:>7}  fibers",
                "length", "dim tau", "maximal"
            );
            for s in &self.structures {
                let _ = writeln!(
                    out,
                    "  {:>6} {:>7} {:>7}  {}",
                    s.length,
                    s.tau_dim,
                    if s.maximal { "yes" } else { "no" },
                    fmt_fibers(&s.fibers)
                );
            }
        }
        if !self.components.is_empty() {
            let _ = writeln!(out, "components:");
            let _ = writeln!(
                out,
                "  {:>3} {:>6} {:>7} {:>9} {:>12} {:>5} {:>8}",
                "#", "length", "dim tau", "dim Z", "deltas", "phi", "count"
            );
            for (i, comp) in self.components.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {:>3} {:>6} {:>7} {:>9} {:>12} {:>5} {:>8}",
                    i,
                    comp.length,
                    comp.tau_dim,
                    comp.component_dimension,
                    comp.deltas
                        .as_ref()
                        .map_or_else(|| "-".into(), |d| fmt_list(d)),
                    opt(&comp.phi),
                    opt(&comp.count)
                );
            }
            for (i, comp) in self.components.iter().enumerate() {
                let _ = writeln!(out, "  component {i}: {}", fmt_fibers(&comp.fibers));
                if let Some(h) = &comp.theorem {
                    write_hypotheses(&mut out, "theorem", h);
                }
                if let Some(h) = &comp.corollary {
                    write_hypotheses(&mut out, "corollary", h);
                }
                if let Some(s) = &comp.conclusion {
                    let _ = writeln!(out, "    conclusion: {s}");
                }
                if let Some(n) = &comp.note {
                    let _ = writeln!(out, "    note: {n}");
                }
            }
        }
        if let Some(t) = self.total {
            let _ = writeln!(out, "total: {t}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
