use serde::Serialize;

use super::localization::count_k_planes;
use crate::analysis::{
    check_hypotheses, Conclusion, ExpectedDimensionInput, HypothesisReport, Mode,
};
use crate::cayley::{enumerate_cayley_structures, maximal_among, CayleyStructure};
use crate::divisors::DivisorClass;
use crate::error::Result;
use crate::lattice::{Budget, Configuration};

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub structure: CayleyStructure,
    pub theorem: HypothesisReport,
    pub corollary: HypothesisReport,
    /// Number of `k`-planes in this component, when it is finite and the
    /// hypotheses guarantee a reduced zero-dimensional scheme.
    pub count: Option<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullCountReport {
    pub k: usize,
    pub components: Vec<ComponentReport>,
    /// Sum over components, present when every component is either counted or
    /// known to be empty.
    pub total: Option<i128>,
}

/// Runs the hypothesis checks for every maximal Cayley structure of length at
/// least `max(k, 1)` and counts the `k`-planes in each component with
/// expected dimension zero whose hypotheses hold.
pub fn full_count(
    cfg: &Configuration,
    classes: &[DivisorClass],
    k: usize,
    budget: &Budget,
) -> Result<FullCountReport> {
    let all = enumerate_cayley_structures(cfg, k, budget)?;
    let maximal = maximal_among(&all);
    let mut components = Vec::with_capacity(maximal.len());
    for p in maximal.into_iter().filter(|p| p.length() >= k) {
        let input = ExpectedDimensionInput::new(cfg, &p, classes, k)?;
        let theorem = check_hypotheses(&input, Mode::Theorem, &all)?;
        let corollary = check_hypotheses(&input, Mode::Corollary, &all)?;
        let holds = theorem.all_hold() || corollary.all_hold();
        let (count, note) = match (theorem.phi, &theorem.deltas) {
            (Some(0), Some(deltas)) if holds && deltas.iter().all(|&d| d >= 0) => {
                (Some(count_k_planes(cfg, &p, k, deltas, budget)?), None)
            }
            (Some(0), _) => (
                None,
                Some("expected dimension 0 but hypotheses not verified".into()),
            ),
            _ if theorem.conclusion == Conclusion::Empty => (Some(0), None),
            (Some(phi), _) => (None, Some(format!("expected dimension {phi}"))),
            (None, _) => (None, Some("Y_A is singular".into())),
        };
        components.push(ComponentReport {
            structure: p,
            theorem,
            corollary,
            count,
            note,
        });
    }
    let total = components.iter().map(|c| c.count).sum::<Option<i128>>();
    Ok(FullCountReport {
        k,
        components,
        total,
    })
}
