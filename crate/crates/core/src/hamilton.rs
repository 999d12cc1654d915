//! Hamiltonian cycle and path searches.
//!
//! All searches are depth-first extensions from an anchor vertex over
//! bit-mask adjacency, with three prunes applied at every node:
//!
//! - an unvisited vertex with too few usable neighbours can never be
//!   covered (degree prune);
//! - the unvisited set must stay reachable from the current endpoint
//!   (connectivity prune);
//! - in path search, at most as many unvisited vertices may have a single
//!   usable neighbour as there are path ends still to be placed.
//!
//! Anchors are chosen lowest-degree-first (ties by label) and neighbours
//! are extended most-constrained-first, so witnesses are reproducible
//! run-to-run.

use crate::deadline::{Deadline, Ticker, Timeout};
use crate::graph::{BitIter, Graph};

/// Which shape a witness traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Cycle,
    Path,
}

/// A vertex sequence certifying a cycle or path in its host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub order: Vec<usize>,
    pub kind: WitnessKind,
}

impl PathWitness {
    /// Checks the witness against a host graph: consecutive vertices
    /// adjacent, all distinct, closing edge for cycles.
    pub fn verify(&self, g: &Graph) -> bool {
        let k = self.order.len();
        if k == 0 {
            return false;
        }
        let mut seen = 0u64;
        for &v in &self.order {
            if v >= g.n() || seen >> v & 1 == 1 {
                return false;
            }
            seen |= 1 << v;
        }
        for w in self.order.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return false;
            }
        }
        match self.kind {
            WitnessKind::Cycle => k >= 3 && g.has_edge(self.order[k - 1], self.order[0]),
            WitnessKind::Path => true,
        }
    }

    /// Degree of each vertex in the witness subgraph, indexed by label.
    pub fn degrees(&self, n: usize) -> Vec<u8> {
        let mut deg = vec![0u8; n];
        for w in self.order.windows(2) {
            deg[w[0]] += 1;
            deg[w[1]] += 1;
        }
        if self.kind == WitnessKind::Cycle {
            deg[self.order[0]] += 1;
            deg[*self.order.last().unwrap()] += 1;
        }
        deg
    }
}

/// Searches for a hamiltonian cycle; `None` for `n <= 2` (K1 and K2 are
/// not considered hamiltonian) and for acyclic/undersized graphs.
pub fn hamiltonian_cycle(g: &Graph) -> Option<PathWitness> {
    hamiltonian_cycle_within(g, Deadline::NONE).unwrap()
}

pub fn hamiltonian_cycle_within(
    g: &Graph,
    deadline: Deadline,
) -> Result<Option<PathWitness>, Timeout> {
    if g.n() < 3 {
        return Ok(None);
    }
    let anchor = min_degree_vertex(g);
    if g.degree(anchor) < 2 {
        return Ok(None);
    }
    let mut s = Search::new(g, deadline);
    let found = s.run(anchor, Target::Back(anchor))?;
    Ok(found.then(|| PathWitness { order: s.path, kind: WitnessKind::Cycle }))
}

/// Searches for a hamiltonian path with the given distinct endpoints.
pub fn hamiltonian_path_between(g: &Graph, u: usize, v: usize) -> Option<PathWitness> {
    hamiltonian_path_between_within(g, u, v, Deadline::NONE).unwrap()
}

pub fn hamiltonian_path_between_within(
    g: &Graph,
    u: usize,
    v: usize,
    deadline: Deadline,
) -> Result<Option<PathWitness>, Timeout> {
    assert!(u < g.n() && v < g.n(), "vertex out of range");
    assert_ne!(u, v, "endpoints must differ");
    let mut s = Search::new(g, deadline);
    let found = s.run(u, Target::Fixed(v))?;
    Ok(found.then(|| PathWitness { order: s.path, kind: WitnessKind::Path }))
}

/// Searches for a hamiltonian path with one fixed endpoint.
pub fn hamiltonian_path_from(g: &Graph, u: usize) -> Option<PathWitness> {
    hamiltonian_path_from_within(g, u, Deadline::NONE).unwrap()
}

pub fn hamiltonian_path_from_within(
    g: &Graph,
    u: usize,
    deadline: Deadline,
) -> Result<Option<PathWitness>, Timeout> {
    assert!(u < g.n(), "vertex out of range");
    if g.n() == 1 {
        return Ok(Some(PathWitness { order: vec![u], kind: WitnessKind::Path }));
    }
    let mut s = Search::new(g, deadline);
    let found = s.run(u, Target::Free)?;
    Ok(found.then(|| PathWitness { order: s.path, kind: WitnessKind::Path }))
}

/// Searches for a hamiltonian path with both endpoints free.
pub fn hamiltonian_path_any(g: &Graph) -> Option<PathWitness> {
    hamiltonian_path_any_within(g, Deadline::NONE).unwrap()
}

pub fn hamiltonian_path_any_within(
    g: &Graph,
    deadline: Deadline,
) -> Result<Option<PathWitness>, Timeout> {
    if g.n() == 0 {
        return Ok(None);
    }
    if g.n() == 1 {
        return Ok(Some(PathWitness { order: vec![0], kind: WitnessKind::Path }));
    }
    // One anchored search per possible start vertex, lowest degree first
    // (low-degree vertices are the likeliest endpoints).
    let mut starts: Vec<usize> = g.vertices().collect();
    starts.sort_by_key(|&v| (g.degree(v), v));
    for s in starts {
        if let Some(w) = hamiltonian_path_from_within(g, s, deadline)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn is_traceable(g: &Graph) -> bool {
    hamiltonian_path_any(g).is_some()
}

/// True iff `g` and every vertex-deleted subgraph are hamiltonian.
pub fn is_1_hamiltonian(g: &Graph) -> bool {
    is_1_hamiltonian_within(g, Deadline::NONE).unwrap()
}

pub fn is_1_hamiltonian_within(g: &Graph, deadline: Deadline) -> Result<bool, Timeout> {
    assert!(g.n() >= 3, "1-hamiltonicity needs at least 3 vertices");
    if hamiltonian_cycle_within(g, deadline)?.is_none() {
        return Ok(false);
    }
    for v in g.vertices() {
        let (h, _) = g.delete_vertex(v);
        if hamiltonian_cycle_within(&h, deadline)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A maximum-order path, by exhaustive DFS over simple paths with an
/// upper-bound prune. Intended for the small inputs of the embedding
/// constructions.
pub fn longest_path(g: &Graph) -> PathWitness {
    assert!(g.n() >= 1);
    let mut best: Vec<usize> = vec![0];
    let mut stack: Vec<usize> = Vec::with_capacity(g.n());
    for s in g.vertices() {
        stack.push(s);
        longest_path_rec(g, &mut stack, 1u64 << s, &mut best);
        stack.pop();
    }
    PathWitness { order: best, kind: WitnessKind::Path }
}

fn longest_path_rec(g: &Graph, stack: &mut Vec<usize>, visited: u64, best: &mut Vec<usize>) {
    if stack.len() > best.len() {
        *best = stack.clone();
    }
    if best.len() == g.n() {
        return;
    }
    let end = *stack.last().unwrap();
    // Upper bound: the path can only grow into vertices reachable from the
    // current endpoint outside the visited set.
    let room = g.reach(end, !visited & g.full_set().0 | 1 << end).count_ones() as usize;
    if stack.len() + room - 1 <= best.len() {
        return;
    }
    for v in BitIter(g.nbrs(end) & !visited) {
        stack.push(v);
        longest_path_rec(g, stack, visited | 1 << v, best);
        stack.pop();
    }
}

fn min_degree_vertex(g: &Graph) -> usize {
    g.vertices().min_by_key(|&v| (g.degree(v), v)).expect("non-empty graph")
}

enum Target {
    /// Path must end at this vertex.
    Fixed(usize),
    /// Path may end anywhere.
    Free,
    /// Cycle: the walk must return to the anchor.
    Back(usize),
}

struct Search<'g> {
    g: &'g Graph,
    path: Vec<usize>,
    ticker: Ticker,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, deadline: Deadline) -> Self {
        Search { g, path: Vec::with_capacity(g.n()), ticker: Ticker::new(deadline) }
    }

    fn run(&mut self, start: usize, target: Target) -> Result<bool, Timeout> {
        self.path.clear();
        self.path.push(start);
        self.extend(start, 1u64 << start, &target)
    }

    fn extend(&mut self, cur: usize, visited: u64, target: &Target) -> Result<bool, Timeout> {
        self.ticker.tick()?;
        let g = self.g;
        let full = g.full_set().0;
        let rest = full & !visited;

        if rest == 0 {
            return Ok(match *target {
                Target::Fixed(t) => cur == t,
                Target::Free => true,
                Target::Back(a) => g.has_edge(cur, a),
            });
        }

        // Degree prune. Every unvisited vertex w still needs `need(w)` usable
        // neighbours among the unvisited set plus the active path ends.
        let open = match *target {
            Target::Fixed(t) => rest | (1 << cur) | (1 << t),
            Target::Free => rest | (1 << cur),
            Target::Back(a) => rest | (1 << cur) | (1 << a),
        };
        let mut singles = 0u32;
        for w in BitIter(rest) {
            let usable = (g.nbrs(w) & open).count_ones();
            let need = match *target {
                // The fixed endpoint is entered once; inner vertices twice.
                Target::Fixed(t) if w == t => 1,
                Target::Fixed(_) => 2,
                Target::Free => 1,
                Target::Back(_) => 2,
            };
            if usable < need {
                return Ok(false);
            }
            if matches!(target, Target::Free) && usable == 1 {
                // Only the final endpoint may be this constrained.
                singles += 1;
                if singles > 1 {
                    return Ok(false);
                }
            }
        }

        // Connectivity prune: all unvisited vertices must be reachable from
        // the current endpoint without re-entering the path.
        let reach = g.reach(cur, rest | (1 << cur));
        if reach & rest != rest {
            return Ok(false);
        }

        // Extend to unvisited neighbours, most constrained first.
        let mut cands: Vec<(u32, usize)> = BitIter(g.nbrs(cur) & rest)
            .map(|w| ((g.nbrs(w) & rest).count_ones(), w))
            .collect();
        cands.sort_unstable();
        for (_, w) in cands {
            if let Target::Fixed(t) = *target {
                // Keep the fixed endpoint for last.
                if w == t && rest != 1u64 << t {
                    continue;
                }
            }
            self.path.push(w);
            if self.extend(w, visited | (1 << w), target)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}
