//! Transition costs and the fault cost of a 2-connected graph.
//!
//! The fault cost is the min-max-min of transition costs: over the
//! minimum-leaf subgraph `S` chosen up front, the worst failing vertex `v`,
//! and the cheapest replacement subgraph in `G - v`. A 1-hamiltonian graph
//! short-circuits to cost 0; otherwise all degree sequences of minimum-leaf
//! subgraphs of `G` and of every `G - v` are collected and compared.
//!
//! Degree sequences of vertex-deleted subgraphs are stored over the original
//! label space with the deleted vertex marked, so a transition cost is a
//! direct positional comparison: the leaf and degree-2 masks are XORed in
//! word operations and only the branch vertices are scanned individually.

use crate::deadline::{Deadline, Timeout};
use crate::graph::Graph;
use crate::hamilton;
use crate::mlst::{self, DegreeProfile, MlOutcome, MlProfile};

/// Fault cost of a graph with the data behind it: the optimal subgraph, the
/// per-vertex replacement costs it incurs, and the worst-case cost of every
/// candidate subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultCostReport {
    pub phi: u32,
    /// The minimum-leaf subgraph attaining the min-max (first in sorted
    /// order among the optima, so reports are deterministic).
    pub optimal_profile: DegreeProfile,
    /// For the optimal subgraph: the cheapest transition cost at each
    /// vertex failure.
    pub per_vertex_cost: Vec<u32>,
    /// Exact worst-case cost of every minimum-leaf subgraph of the graph.
    pub per_profile_phi: Vec<(DegreeProfile, u32)>,
    /// The profile of `G` this report was computed from.
    pub ml: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FaultCostError {
    #[error("fault cost requires a 2-connected graph on at least 3 vertices")]
    NotTwoConnected,
    #[error("search aborted: deadline expired")]
    Timeout,
}

impl From<Timeout> for FaultCostError {
    fn from(_: Timeout) -> Self {
        FaultCostError::Timeout
    }
}

impl From<mlst::MlstError> for FaultCostError {
    fn from(e: mlst::MlstError) -> Self {
        match e {
            // 2-connectivity is checked before any profile computation.
            mlst::MlstError::Disconnected => unreachable!("deleted subgraphs stay connected"),
            mlst::MlstError::Timeout => FaultCostError::Timeout,
        }
    }
}

/// Number of vertices (the deleted one excluded) whose degree differs
/// between a subgraph of `G` and a subgraph of `G - v`.
pub fn transition_cost(s: &DegreeProfile, sv: &DegreeProfile) -> u32 {
    transition_cost_within(s, sv, u32::MAX).unwrap()
}

/// As [`transition_cost`] but gives up once the count exceeds `ceiling`,
/// returning `None`. The early exit never changes a returned value.
pub fn transition_cost_within(s: &DegreeProfile, sv: &DegreeProfile, ceiling: u32) -> Option<u32> {
    assert_eq!(
        s.degrees().len(),
        sv.degrees().len(),
        "profiles must share one label space"
    );
    debug_assert!(s.deleted().is_none());
    let v = sv.deleted().expect("the second profile must mark its deleted vertex");

    // Vertices whose membership in the leaf or degree-2 class differs. A
    // vertex moving between the two low classes appears in both XORs, so
    // the union counts it once.
    let diff = ((s.leaf_mask().0 ^ sv.leaf_mask().0) | (s.deg2_mask().0 ^ sv.deg2_mask().0))
        & !(1u64 << v);
    let mut cost = diff.count_ones();
    if cost > ceiling {
        return None;
    }
    // Vertices that are branches on both sides differ only if their branch
    // degrees differ; branches against low-degree vertices were already
    // caught by the masks.
    for &(w, d) in s.branches() {
        if w != v && sv.degree_of(w) >= 3 && sv.degree_of(w) != d {
            cost += 1;
            if cost > ceiling {
                return None;
            }
        }
    }
    Some(cost)
}

/// Computes the fault cost of a 2-connected graph.
pub fn fault_cost(g: &Graph) -> Result<FaultCostReport, FaultCostError> {
    fault_cost_within(g, Deadline::NONE)
}

pub fn fault_cost_within(g: &Graph, deadline: Deadline) -> Result<FaultCostReport, FaultCostError> {
    let n = g.n();
    if n < 3 || !g.is_two_connected() {
        return Err(FaultCostError::NotTwoConnected);
    }

    if hamilton::is_1_hamiltonian_within(g, deadline)? {
        let all2 = DegreeProfile::all_cycle(n, None);
        return Ok(FaultCostReport {
            phi: 0,
            optimal_profile: all2.clone(),
            per_vertex_cost: vec![0; n],
            per_profile_phi: vec![(all2, 0)],
            ml: 1,
        });
    }

    let profile = mlst::ml_profile_within(g, deadline)?;
    let deleted_profiles = deleted_profile_sets(g, &profile, deadline)?;
    Ok(compare_profiles(&profile, &deleted_profiles))
}

/// Minimum-leaf profiles of every `G - v`, re-indexed to the original
/// labels. When `v` is a leaf of some minimum-leaf subgraph of `G`, removing
/// that leaf shows `ml(G - v) <= ml(G)`, so the backtracking for `G - v`
/// starts from that bound.
fn deleted_profile_sets(
    g: &Graph,
    profile: &MlProfile,
    deadline: Deadline,
) -> Result<Vec<Vec<DegreeProfile>>, FaultCostError> {
    let leaf_union = profile
        .profiles
        .iter()
        .fold(0u64, |acc, p| acc | p.leaf_mask().0);
    let mut out = Vec::with_capacity(g.n());
    for v in g.vertices() {
        let (h, relabel) = g.delete_vertex(v);
        let sub = if leaf_union >> v & 1 == 1 {
            match mlst::ml_profile_with_bound_within(&h, profile.ml, deadline)? {
                MlOutcome::Profile(p) => p,
                MlOutcome::BoundExceeded => {
                    unreachable!("removing a leaf of an ml-subgraph cannot raise ml")
                }
            }
        } else {
            mlst::ml_profile_within(&h, deadline)?
        };
        out.push(
            sub.profiles
                .iter()
                .map(|p| p.reindexed(&relabel.new_to_old, g.n(), v))
                .collect(),
        );
    }
    Ok(out)
}

/// The min-max-min over collected degree sequences, with exact per-profile
/// worst cases.
fn compare_profiles(profile: &MlProfile, deleted: &[Vec<DegreeProfile>]) -> FaultCostReport {
    let n = deleted.len();
    let mut per_profile_phi = Vec::with_capacity(profile.profiles.len());
    let mut best: Option<(u32, usize, Vec<u32>)> = None;

    for (idx, s) in profile.profiles.iter().enumerate() {
        let mut worst = 0u32;
        let mut per_vertex = Vec::with_capacity(n);
        for options in deleted {
            // Cheapest replacement for this failure; the running minimum
            // caps the columns scanned in each comparison.
            let mut min_cost = u32::MAX;
            for sv in options {
                if min_cost == 0 {
                    break;
                }
                if let Some(c) = transition_cost_within(s, sv, min_cost.saturating_sub(1)) {
                    min_cost = c;
                }
            }
            debug_assert_ne!(min_cost, u32::MAX, "G - v always has an ml-subgraph");
            per_vertex.push(min_cost);
            worst = worst.max(min_cost);
        }
        per_profile_phi.push((s.clone(), worst));
        if best.as_ref().map_or(true, |(b, _, _)| worst < *b) {
            best = Some((worst, idx, per_vertex));
        }
    }

    let (phi, idx, per_vertex_cost) = best.expect("a connected graph has at least one profile");
    FaultCostReport {
        phi,
        optimal_profile: profile.profiles[idx].clone(),
        per_vertex_cost,
        per_profile_phi,
        ml: profile.ml,
    }
}
