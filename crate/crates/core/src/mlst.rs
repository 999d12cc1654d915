//! Minimum leaf numbers and the degree sequences of minimum-leaf subgraphs.
//!
//! The profile computation works in three tiers. Hamiltonian graphs have the
//! single all-degrees-2 sequence. Otherwise every non-adjacent vertex pair is
//! scanned for a hamiltonian path (a non-hamiltonian graph has no hamiltonian
//! path between adjacent vertices, so those pairs need no search); each pair
//! found contributes the sequence with both endpoints at degree 1. Only when
//! no hamiltonian path exists does the exhaustive spanning-tree backtracking
//! run.
//!
//! The backtracking repeatedly picks the most constrained tree vertex, then
//! the most constrained eligible neighbour, and branches by first adding the
//! edge and then forbidding it. A vertex whose tree degree is 1 and whose
//! remaining edges are all forbidden or internal is a settled leaf; settled
//! leaves only accumulate along a branch, so the search can cut as soon as
//! they exceed the running minimum.

use std::collections::HashSet;

use crate::deadline::{Deadline, Ticker, Timeout};
use crate::graph::{BitIter, Graph, VertexSet};
use crate::hamilton;

/// `ml(G)`: 1 when hamiltonian, infinite when disconnected, otherwise the
/// minimum leaf count over spanning trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MlNumber {
    Finite(u32),
    Infinite,
}

impl MlNumber {
    pub fn finite(self) -> Option<u32> {
        match self {
            MlNumber::Finite(k) => Some(k),
            MlNumber::Infinite => None,
        }
    }
}

/// The per-vertex degree sequence of one minimum-leaf subgraph, with cached
/// leaf and degree-2 masks for constant-time comparison of the low-degree
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeProfile {
    degrees: Vec<u8>,
    deleted: Option<usize>,
    leaf_mask: VertexSet,
    deg2_mask: VertexSet,
    branches: Vec<(usize, u8)>,
}

impl DegreeProfile {
    /// Builds a profile from a degree array over the original label space.
    /// The `deleted` slot, if any, must carry degree 0.
    pub fn from_degrees(degrees: Vec<u8>, deleted: Option<usize>) -> Self {
        if let Some(v) = deleted {
            debug_assert_eq!(degrees[v], 0);
        }
        let mut leaf_mask = VertexSet::EMPTY;
        let mut deg2_mask = VertexSet::EMPTY;
        let mut branches = Vec::new();
        for (v, &d) in degrees.iter().enumerate() {
            match d {
                0 => {}
                1 => leaf_mask.insert(v),
                2 => deg2_mask.insert(v),
                _ => branches.push((v, d)),
            }
        }
        DegreeProfile { degrees, deleted, leaf_mask, deg2_mask, branches }
    }

    /// The all-degrees-2 profile of a hamiltonian cycle on `live` vertices.
    pub fn all_cycle(n: usize, deleted: Option<usize>) -> Self {
        let mut degrees = vec![2u8; n];
        if let Some(v) = deleted {
            degrees[v] = 0;
        }
        Self::from_degrees(degrees, deleted)
    }

    /// The profile of a hamiltonian path with the given endpoints.
    pub fn ham_path(n: usize, u: usize, v: usize, deleted: Option<usize>) -> Self {
        let mut degrees = vec![2u8; n];
        degrees[u] = 1;
        degrees[v] = 1;
        if let Some(d) = deleted {
            degrees[d] = 0;
        }
        Self::from_degrees(degrees, deleted)
    }

    pub fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    pub fn degree_of(&self, v: usize) -> u8 {
        self.degrees[v]
    }

    pub fn deleted(&self) -> Option<usize> {
        self.deleted
    }

    pub fn leaf_mask(&self) -> VertexSet {
        self.leaf_mask
    }

    pub fn deg2_mask(&self) -> VertexSet {
        self.deg2_mask
    }

    pub fn branches(&self) -> &[(usize, u8)] {
        &self.branches
    }

    pub fn leaves(&self) -> u32 {
        self.leaf_mask.len() as u32
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.leaf_mask.contains(v)
    }

    /// Re-expresses a profile computed on a compact vertex-deleted graph
    /// over the original label space, marking the deleted vertex.
    pub fn reindexed(&self, new_to_old: &[usize], n_original: usize, deleted: usize) -> Self {
        debug_assert_eq!(self.deleted, None);
        let mut degrees = vec![0u8; n_original];
        for (new, &d) in self.degrees.iter().enumerate() {
            degrees[new_to_old[new]] = d;
        }
        Self::from_degrees(degrees, Some(deleted))
    }
}

/// Which shape the minimum-leaf subgraphs take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlKind {
    HamCycle,
    HamPath,
    Tree,
}

/// `ml(G)` together with the deduplicated degree sequences of all
/// minimum-leaf subgraphs, sorted for deterministic iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlProfile {
    pub ml: u32,
    pub kind: MlKind,
    pub profiles: Vec<DegreeProfile>,
}

/// Outcome of a bounded profile computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MlOutcome {
    Profile(MlProfile),
    /// No spanning tree has at most the requested number of leaves.
    BoundExceeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MlstError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("search aborted: deadline expired")]
    Timeout,
}

impl From<Timeout> for MlstError {
    fn from(_: Timeout) -> Self {
        MlstError::Timeout
    }
}

/// The minimum leaf number, without collecting profiles.
pub fn ml_number(g: &Graph) -> MlNumber {
    ml_number_within(g, Deadline::NONE).unwrap()
}

pub fn ml_number_within(g: &Graph, deadline: Deadline) -> Result<MlNumber, Timeout> {
    assert!(g.n() >= 1);
    if !g.is_connected() {
        return Ok(MlNumber::Infinite);
    }
    match g.n() {
        1 => return Ok(MlNumber::Finite(0)),
        2 => return Ok(MlNumber::Finite(2)),
        _ => {}
    }
    if hamilton::hamiltonian_cycle_within(g, deadline)?.is_some() {
        return Ok(MlNumber::Finite(1));
    }
    if hamilton::hamiltonian_path_any_within(g, deadline)?.is_some() {
        return Ok(MlNumber::Finite(2));
    }
    let mut best = u32::MAX;
    enumerate_spanning_trees(g, u32::MAX, deadline, |_, leaves| {
        best = best.min(leaves);
        best
    })?;
    debug_assert_ne!(best, u32::MAX);
    Ok(MlNumber::Finite(best))
}

/// `ml(G)` plus all distinct minimum-leaf degree sequences.
pub fn ml_profile(g: &Graph) -> Result<MlProfile, MlstError> {
    ml_profile_within(g, Deadline::NONE)
}

pub fn ml_profile_within(g: &Graph, deadline: Deadline) -> Result<MlProfile, MlstError> {
    match bounded_profile(g, u32::MAX, deadline)? {
        MlOutcome::Profile(p) => Ok(p),
        MlOutcome::BoundExceeded => unreachable!("unbounded search always finds a tree"),
    }
}

/// As [`ml_profile`], but the spanning-tree backtracking starts from the
/// given leaf-count bound. Returns `BoundExceeded` when `ml(G) > upper`.
pub fn ml_profile_with_bound(g: &Graph, upper: u32) -> Result<MlOutcome, MlstError> {
    ml_profile_with_bound_within(g, upper, Deadline::NONE)
}

pub fn ml_profile_with_bound_within(
    g: &Graph,
    upper: u32,
    deadline: Deadline,
) -> Result<MlOutcome, MlstError> {
    bounded_profile(g, upper, deadline)
}

fn bounded_profile(g: &Graph, upper: u32, deadline: Deadline) -> Result<MlOutcome, MlstError> {
    let n = g.n();
    assert!(n >= 1);
    if !g.is_connected() {
        return Err(MlstError::Disconnected);
    }

    let finish = |ml: u32, kind: MlKind, mut profiles: Vec<DegreeProfile>| {
        if ml > upper {
            return MlOutcome::BoundExceeded;
        }
        profiles.sort_by(|a, b| a.degrees.cmp(&b.degrees));
        MlOutcome::Profile(MlProfile { ml, kind, profiles })
    };

    if n == 1 {
        let p = DegreeProfile::from_degrees(vec![0], None);
        return Ok(finish(0, MlKind::Tree, vec![p]));
    }
    if n == 2 {
        return Ok(finish(2, MlKind::HamPath, vec![DegreeProfile::ham_path(2, 0, 1, None)]));
    }

    if hamilton::hamiltonian_cycle_within(g, deadline)?.is_some() {
        return Ok(finish(1, MlKind::HamCycle, vec![DegreeProfile::all_cycle(n, None)]));
    }

    // Traceable tier: one profile per non-adjacent endpoint pair joined by a
    // hamiltonian path. Distinct pairs give distinct sequences, so no
    // dedup is needed here.
    let mut path_profiles = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            if hamilton::hamiltonian_path_between_within(g, u, v, deadline)?.is_some() {
                path_profiles.push(DegreeProfile::ham_path(n, u, v, None));
            }
        }
    }
    if !path_profiles.is_empty() {
        return Ok(finish(2, MlKind::HamPath, path_profiles));
    }

    // Exhaustive tier.
    let mut best = upper;
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut collected: Vec<DegreeProfile> = Vec::new();
    enumerate_spanning_trees(g, upper, deadline, |degrees, leaves| {
        if leaves < best {
            best = leaves;
            seen.clear();
            collected.clear();
        }
        if leaves == best && seen.insert(degrees.to_vec()) {
            collected.push(DegreeProfile::from_degrees(degrees.to_vec(), None));
        }
        best
    })?;
    if collected.is_empty() {
        return Ok(MlOutcome::BoundExceeded);
    }
    Ok(finish(best, MlKind::Tree, collected))
}

/// Enumerates spanning trees whose leaf count never exceeds the running
/// bound. `visit` receives each surviving tree's degree array and leaf
/// count and returns the bound to use from then on (returning it unchanged
/// keeps a plain bounded enumeration; returning the new minimum turns the
/// search into an ml-subgraph collector).
///
/// Branching follows the add-first, forbid-second discipline on the edge
/// `(v, w)` where `v` is the most constrained tree vertex with a usable
/// extending edge and `w` its most constrained eligible neighbour; ties go
/// to the lowest label, so the enumeration order is deterministic.
pub fn enumerate_spanning_trees(
    g: &Graph,
    bound: u32,
    deadline: Deadline,
    visit: impl FnMut(&[u8], u32) -> u32,
) -> Result<(), Timeout> {
    assert!(g.is_connected(), "spanning trees need a connected graph");
    let root = g
        .vertices()
        .max_by_key(|&v| (g.degree(v), usize::MAX - v))
        .expect("non-empty graph");
    let mut search = TreeSearch {
        g,
        in_tree: 1u64 << root,
        tree_deg: vec![0; g.n()],
        forbidden: vec![0; g.n()],
        settled: 0,
        bound,
        visit,
        ticker: Ticker::new(deadline),
    };
    search.node()
}

struct TreeSearch<'g, F: FnMut(&[u8], u32) -> u32> {
    g: &'g Graph,
    in_tree: u64,
    tree_deg: Vec<u8>,
    /// Per-vertex mask of explicitly forbidden edges (symmetric).
    forbidden: Vec<u64>,
    /// Tree vertices of degree 1 with no usable extending edge. This mask
    /// only ever gains bits along a branch, which is what justifies cutting
    /// on `settled > bound`.
    settled: u64,
    bound: u32,
    visit: F,
    ticker: Ticker,
}

impl<F: FnMut(&[u8], u32) -> u32> TreeSearch<'_, F> {
    /// Usable extending edges at a tree vertex.
    #[inline]
    fn avail(&self, v: usize) -> u64 {
        self.g.nbrs(v) & !self.forbidden[v] & !self.in_tree
    }

    /// Usable edges at a non-tree vertex (its tree degree is 0, so edges
    /// into the tree also count).
    #[inline]
    fn usable(&self, w: usize) -> u64 {
        self.g.nbrs(w) & !self.forbidden[w]
    }

    fn settle_check(&mut self, v: usize) {
        if self.tree_deg[v] == 1 && self.avail(v) == 0 {
            debug_assert_eq!(self.settled >> v & 1, 0);
            self.settled |= 1 << v;
        }
    }

    fn node(&mut self) -> Result<(), Timeout> {
        self.ticker.tick()?;
        let full = self.g.full_set().0;
        if self.in_tree == full {
            let leaves = self.tree_deg.iter().filter(|&&d| d == 1).count() as u32;
            debug_assert_eq!(leaves, self.settled.count_ones());
            let new_bound = (self.visit)(&self.tree_deg, leaves);
            debug_assert!(new_bound <= self.bound);
            self.bound = new_bound;
            return Ok(());
        }

        // Most constrained tree vertex with at least one extending edge.
        let mut pick: Option<(u32, usize)> = None;
        for v in BitIter(self.in_tree) {
            let a = self.avail(v).count_ones();
            if a > 0 && pick.map_or(true, |(best, _)| a < best) {
                pick = Some((a, v));
            }
        }
        let Some((_, v)) = pick else {
            return Ok(()); // no extending edge: this branch is dead
        };
        // Most constrained eligible neighbour.
        let w = BitIter(self.avail(v))
            .min_by_key(|&w| (self.usable(w).count_ones(), w))
            .unwrap();

        // Add the edge first.
        let saved_settled = self.settled;
        self.in_tree |= 1 << w;
        self.tree_deg[v] += 1;
        self.tree_deg[w] = 1;
        {
            // w and the in-tree neighbours of w (v included: the root's
            // first edge leaves it at degree 1) may now be out of usable
            // extending edges.
            self.settle_check(w);
            for u in BitIter(self.g.nbrs(w) & self.in_tree & !(1 << w)) {
                if self.settled >> u & 1 == 0 {
                    self.settle_check(u);
                }
            }
            debug_assert_eq!(self.settled & saved_settled, saved_settled);
            if self.settled.count_ones() <= self.bound {
                self.node()?;
            }
        }
        self.settled = saved_settled;
        self.tree_deg[w] = 0;
        self.tree_deg[v] -= 1;
        self.in_tree &= !(1 << w);

        // Then forbid it.
        let saved_settled = self.settled;
        self.forbidden[v] |= 1 << w;
        self.forbidden[w] |= 1 << v;
        {
            self.settle_check(v);
            // Backtrack as soon as a vertex outside the tree has only
            // forbidden edges left.
            let dead = self.usable(w) == 0;
            if !dead && self.settled.count_ones() <= self.bound {
                self.node()?;
            }
        }
        self.settled = saved_settled;
        self.forbidden[v] &= !(1 << w);
        self.forbidden[w] &= !(1 << v);
        Ok(())
    }
}
