//! Labelled simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one 64-bit mask per vertex, so neighbourhood
//! operations are single machine-word instructions. Graphs are immutable
//! after construction: every structural operation returns a new value, and
//! operations that relabel (vertex deletion, identification, induced
//! subgraphs) also return the label map.

use std::fmt;

use crate::graph6;

/// Hard cap on the vertex count; adjacency masks are single `u64` words.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex labels as a bit mask over `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_iter(vs: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn contains(&self, v: usize) -> bool {
        (self.0 >> v) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Lowest-labelled member, if any.
    pub fn first(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Iterates members in increasing label order.
    pub fn iter(&self) -> BitIter {
        BitIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = BitIter;
    fn into_iter(self) -> BitIter {
        BitIter(self.0)
    }
}

/// Iterator over the set bits of a mask, in increasing order.
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Connectivity of a graph, computed up to 3 (everything above reports
/// `ThreeConnected`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConnectivityClass {
    Disconnected,
    /// Connected with a cut vertex, or too small to be 2-connected.
    Connected1,
    TwoConnected,
    ThreeConnected,
}

/// Length of a shortest cycle; `Infinite` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

/// Label translation produced by relabelling operations.
///
/// `old_to_new[u]` is `None` for deleted vertices; under `identify`, all
/// merged vertices share one new label. `new_to_old` picks, for each new
/// label, the smallest original label mapped onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

/// A labelled simple undirected graph on at most 64 vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {})", self.n, graph6::write_graph6(self))
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        let full = VertexSet::full(n).0;
        for v in 0..n {
            g.adj[v] = full & !(1u64 << v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.add_edge_mut(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge_mut(v - 1, v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge_mut(u, v);
        }
        g
    }

    /// Builds a graph directly from adjacency masks, checking the type
    /// invariants (symmetry, no loops, bits below `n`).
    pub fn from_adj(adj: Vec<u64>) -> Self {
        let n = adj.len();
        assert!(n <= MAX_VERTICES);
        let full = VertexSet::full(n).0;
        for v in 0..n {
            assert_eq!(adj[v] & !full, 0, "adjacency bit outside 0..n");
            assert_eq!(adj[v] >> v & 1, 0, "loop at vertex {v}");
        }
        for v in 0..n {
            for u in BitIter(adj[v]) {
                assert!(adj[u] >> v & 1 == 1, "asymmetric edge ({u},{v})");
            }
        }
        Graph { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// All vertices as a mask.
    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Neighbourhood of `v` as a mask.
    #[inline]
    pub fn nbrs(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adj(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !VertexSet::full(u + 1).0) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.vertices().all(|v| self.degree(v) == d)
    }

    pub(crate) fn add_edge_mut(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert_ne!(u, v, "no loops");
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    /// Returns `self + uv`; idempotent when the edge is already present.
    pub fn add_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.add_edge_mut(u, v);
        g
    }

    /// Vertices reachable from `start` while staying inside `within`.
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        debug_assert!(within >> start & 1 == 1);
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= self.adj[v] & within;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Connectedness of the subgraph induced by `within` (empty counts as
    /// connected).
    pub fn is_connected_within(&self, within: u64) -> bool {
        match (BitIter(within)).next() {
            None => true,
            Some(s) => self.reach(s, within) == within,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.full_set().0) == self.full_set().0
    }

    /// Exact connectivity class, following the convention that a
    /// `k`-connected graph needs more than `k` vertices.
    pub fn connectivity_class(&self) -> ConnectivityClass {
        assert!(self.n >= 1);
        if !self.is_connected() {
            return ConnectivityClass::Disconnected;
        }
        let full = self.full_set().0;
        let two_connected = self.n > 2
            && self
                .vertices()
                .all(|v| self.is_connected_within(full & !(1u64 << v)));
        if !two_connected {
            return ConnectivityClass::Connected1;
        }
        let three_connected = self.n > 3
            && (0..self.n).all(|u| {
                (u + 1..self.n).all(|v| {
                    self.is_connected_within(full & !(1u64 << u) & !(1u64 << v))
                })
            });
        if three_connected {
            ConnectivityClass::ThreeConnected
        } else {
            ConnectivityClass::TwoConnected
        }
    }

    pub fn is_two_connected(&self) -> bool {
        self.connectivity_class() >= ConnectivityClass::TwoConnected
    }

    /// All 2-separators `{x, y}` of a 2-connected graph, in lexicographic
    /// order.
    pub fn two_separators(&self) -> Vec<VertexSet> {
        assert!(self.is_two_connected(), "two_separators needs a 2-connected graph");
        let full = self.full_set().0;
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                let rest = full & !(1u64 << x) & !(1u64 << y);
                if !self.is_connected_within(rest) {
                    out.push(VertexSet::from_iter([x, y]));
                }
            }
        }
        out
    }

    /// The 2-fragments of `self` at the separator `sep`: one induced
    /// subgraph `G[V(H) ∪ sep]` per component `H` of `G − sep`, each with
    /// its label map back to `self`.
    pub fn fragments_of(&self, sep: VertexSet) -> Result<Vec<(Graph, Relabel)>, NotASeparator> {
        assert_eq!(sep.len(), 2, "separator must have exactly two vertices");
        let full = self.full_set().0;
        let rest = full & !sep.0;
        let mut remaining = rest;
        let mut comps = Vec::new();
        while let Some(s) = BitIter(remaining).next() {
            let c = self.reach(s, rest);
            comps.push(c);
            remaining &= !c;
        }
        if comps.len() < 2 {
            return Err(NotASeparator);
        }
        Ok(comps
            .into_iter()
            .map(|c| self.induced(VertexSet(c | sep.0)))
            .collect())
    }

    /// Induced subgraph on `keep`, compactly relabelled.
    pub fn induced(&self, keep: VertexSet) -> (Graph, Relabel) {
        let mut old_to_new = vec![None; self.n];
        let mut new_to_old = Vec::with_capacity(keep.len());
        for (new, old) in keep.iter().enumerate() {
            old_to_new[old] = Some(new);
            new_to_old.push(old);
        }
        let mut g = Graph::empty(keep.len());
        for (new_u, &old_u) in new_to_old.iter().enumerate() {
            for old_v in BitIter(self.adj[old_u] & keep.0) {
                let new_v = old_to_new[old_v].unwrap();
                g.adj[new_u] |= 1u64 << new_v;
            }
        }
        (g, Relabel { old_to_new, new_to_old })
    }

    /// Returns `G − v`, compactly relabelled, with the label map.
    pub fn delete_vertex(&self, v: usize) -> (Graph, Relabel) {
        assert!(v < self.n, "vertex out of range");
        let mut keep = self.full_set();
        keep.remove(v);
        self.induced(keep)
    }

    /// Identifies all vertices of `set` into a single vertex that inherits
    /// the union of their neighbourhoods (internal edges vanish). The result
    /// is compactly relabelled; the merged vertex takes the slot of the
    /// lowest label in `set`.
    pub fn identify(&self, set: VertexSet) -> (Graph, Relabel) {
        assert!(!set.is_empty(), "identify needs at least one vertex");
        assert_eq!(set.0 & !self.full_set().0, 0, "vertex out of range");
        let target = set.first().unwrap();
        let mut old_to_new = vec![None; self.n];
        let mut new_to_old = Vec::new();
        for old in 0..self.n {
            if set.contains(old) && old != target {
                continue;
            }
            old_to_new[old] = Some(new_to_old.len());
            new_to_old.push(old);
        }
        for old in set.iter() {
            old_to_new[old] = old_to_new[target];
        }
        let mut g = Graph::empty(new_to_old.len());
        for old_u in 0..self.n {
            let new_u = old_to_new[old_u].unwrap();
            for old_v in BitIter(self.adj[old_u]) {
                let new_v = old_to_new[old_v].unwrap();
                if new_u != new_v {
                    g.adj[new_u] |= 1u64 << new_v;
                    g.adj[new_v] |= 1u64 << new_u;
                }
            }
        }
        (g, Relabel { old_to_new, new_to_old })
    }

    /// Disjoint union; the second graph's labels are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        assert!(n <= MAX_VERTICES);
        let mut adj = Vec::with_capacity(n);
        adj.extend_from_slice(&self.adj);
        adj.extend(other.adj.iter().map(|m| m << self.n));
        Graph { n, adj }
    }

    /// Girth via one BFS per start vertex; `Infinite` for forests.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        for s in 0..self.n {
            // Shortest cycle through s, by BFS with parent tracking.
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for v in BitIter(self.adj[u]) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v && parent[v] != u {
                        // Non-tree edge closes a cycle through s of length
                        // dist[u] + dist[v] + 1 (or shorter elsewhere).
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Standard 2-colouring test; the empty graph counts as bipartite.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![2u8; self.n];
        for s in 0..self.n {
            if colour[s] != 2 {
                continue;
            }
            colour[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in BitIter(self.adj[u]) {
                    if colour[v] == 2 {
                        colour[v] = colour[u] ^ 1;
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The given pair does not disconnect the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("the given vertex pair is not a 2-separator")]
pub struct NotASeparator;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::from_iter([0, 3, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(1));
        s.remove(3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5]);
        assert_eq!(VertexSet::full(64).0, u64::MAX);
    }

    #[test]
    fn connectivity_classes() {
        assert_eq!(Graph::complete(4).connectivity_class(), ConnectivityClass::ThreeConnected);
        assert_eq!(Graph::path(3).connectivity_class(), ConnectivityClass::Connected1);
        assert_eq!(Graph::complete(1).connectivity_class(), ConnectivityClass::Connected1);
        assert_eq!(Graph::complete(2).connectivity_class(), ConnectivityClass::Connected1);
        assert_eq!(Graph::complete(3).connectivity_class(), ConnectivityClass::TwoConnected);
        assert_eq!(Graph::cycle(5).connectivity_class(), ConnectivityClass::TwoConnected);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(two_k2.connectivity_class(), ConnectivityClass::Disconnected);
        // K_{2,3} is 2- but not 3-connected.
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(k23.connectivity_class(), ConnectivityClass::TwoConnected);
    }

    /// Brute-force reference for the connectivity class: delete every vertex
    /// and every pair and test connectedness directly.
    fn connectivity_class_brute(g: &Graph) -> ConnectivityClass {
        if !g.is_connected() {
            return ConnectivityClass::Disconnected;
        }
        let full = g.full_set().0;
        let one = g.n() > 1;
        let two = g.n() > 2
            && g.vertices().all(|v| g.is_connected_within(full & !(1 << v)));
        let three = g.n() > 3
            && (0..g.n()).all(|u| {
                (u + 1..g.n())
                    .all(|v| g.is_connected_within(full & !(1 << u) & !(1 << v)))
            });
        match (one, two, three) {
            (_, _, true) => ConnectivityClass::ThreeConnected,
            (_, true, _) => ConnectivityClass::TwoConnected,
            _ => ConnectivityClass::Connected1,
        }
    }

    #[test]
    fn connectivity_matches_brute_force_on_small_graphs() {
        // All graphs on 5 vertices, plus a few named ones on more.
        for mask in 0u32..1 << 10 {
            let mut g = Graph::empty(5);
            let mut bit = 0;
            for u in 0..5 {
                for v in u + 1..5 {
                    if mask >> bit & 1 == 1 {
                        g.add_edge_mut(u, v);
                    }
                    bit += 1;
                }
            }
            assert_eq!(g.connectivity_class(), connectivity_class_brute(&g));
        }
    }

    #[test]
    fn separators_and_fragments() {
        assert!(Graph::complete(4).two_separators().is_empty());
        // Two triangles sharing the edge {0,1}.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
        let seps = g.two_separators();
        assert_eq!(seps, vec![VertexSet::from_iter([0, 1])]);

        let frags = g.fragments_of(seps[0]).unwrap();
        assert_eq!(frags.len(), 2);
        // Each fragment is a triangle containing the separator.
        for (f, map) in &frags {
            assert_eq!(f.n(), 3);
            assert_eq!(f.edge_count(), 3);
            assert!(map.new_to_old.contains(&0) && map.new_to_old.contains(&1));
        }
        // Fragment vertex sets overlap exactly in the separator.
        let sets: Vec<VertexSet> = frags
            .iter()
            .map(|(_, m)| VertexSet::from_iter(m.new_to_old.iter().copied()))
            .collect();
        assert_eq!(sets[0].0 & sets[1].0, seps[0].0);
        assert_eq!(sets[0].0 | sets[1].0, g.full_set().0);

        assert_eq!(g.fragments_of(VertexSet::from_iter([2, 3])), Err(NotASeparator));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(Graph::complete(4).girth(), Girth::Finite(3));
        assert_eq!(Graph::cycle(5).girth(), Girth::Finite(5));
        assert_eq!(Graph::path(4).girth(), Girth::Infinite);
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(k23.girth(), Girth::Finite(4));
    }

    #[test]
    fn bipartite_examples() {
        assert!(Graph::cycle(6).is_bipartite());
        assert!(!Graph::cycle(5).is_bipartite());
        assert!(!Graph::complete(3).is_bipartite());
        assert!(Graph::path(7).is_bipartite());
    }

    #[test]
    fn delete_and_identify() {
        let (k3, map) = Graph::complete(4).delete_vertex(2);
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map.old_to_new, vec![Some(0), Some(1), None, Some(2)]);
        assert_eq!(map.new_to_old, vec![0, 1, 3]);

        // Identifying two degree-1 ends of two disjoint edges gives P3.
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let (h, map) = g.identify(VertexSet::from_iter([1, 2]));
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 2);
        let merged = map.old_to_new[1].unwrap();
        assert_eq!(map.old_to_new[2], Some(merged));
        assert_eq!(h.degree(merged), 2);
    }

    #[test]
    fn add_edge_is_idempotent() {
        let g = Graph::path(3);
        assert_eq!(g.add_edge(0, 1), g);
        let h = g.add_edge(0, 2);
        assert_eq!(h, Graph::cycle(3));
    }
}
