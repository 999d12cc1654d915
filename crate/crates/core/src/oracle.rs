//! Independent brute-force ground truth and small-graph generation.
//!
//! Everything here is deliberately simpler than the fast paths it checks:
//! spanning trees come from scanning all (n-1)-subsets of the edge set,
//! hamiltonicity from permutation search (plain DFS above 8 vertices), and
//! the minimum leaf number and fault cost are evaluated straight from their
//! definitions over those enumerations.
//!
//! The generator produces exactly one representative per isomorphism class:
//! orders up to 8 by scanning every labelled graph (with cheap
//! isomorphism-invariant rejects before canonicalisation), regular degrees
//! up to order 12 by a breadth-first labelled enumeration. Canonical forms
//! are minimum adjacency bit-strings over permutations compatible with an
//! iterated degree refinement.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::faultcost::{transition_cost, FaultCostReport};
use crate::graph::{BitIter, ConnectivityClass, Girth, Graph};
use crate::mlst::{DegreeProfile, MlKind, MlProfile};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{0} exceeds the brute-force guard")]
    TooLarge(&'static str),
    #[error("graph is disconnected")]
    Disconnected,
}

// ---------------------------------------------------------------------------
// Spanning-tree enumeration and definitional ml / fault cost
// ---------------------------------------------------------------------------

/// Visits every spanning tree exactly once, as an edge list. Trees are the
/// acyclic spanning (n-1)-subsets of the edge set, scanned in lexicographic
/// order.
pub fn all_spanning_trees(
    g: &Graph,
    mut visit: impl FnMut(&[(usize, usize)]),
) -> Result<(), OracleError> {
    if g.n() > 12 {
        return Err(OracleError::TooLarge("spanning tree enumeration"));
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let n = g.n();
    if n <= 1 {
        visit(&[]);
        return Ok(());
    }
    let edges = g.edges();
    let m = edges.len();
    let k = n - 1;
    if m < k {
        return Err(OracleError::Disconnected);
    }
    if binomial(m, k) > 500_000_000 {
        return Err(OracleError::TooLarge("edge subset count"));
    }

    let mut idx: Vec<usize> = (0..k).collect();
    let mut subset: Vec<(usize, usize)> = Vec::with_capacity(k);
    loop {
        subset.clear();
        subset.extend(idx.iter().map(|&i| edges[i]));
        if is_spanning_tree(n, &subset) {
            visit(&subset);
        }
        // Next k-combination of 0..m.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
        }
        if idx[i] == i + m - k {
            return Ok(());
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn is_spanning_tree(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut merged = 0;
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
        merged += 1;
    }
    merged == n - 1
}

/// Hamiltonicity by exhaustion: permutations up to 8 vertices, an unpruned
/// visited-set DFS above.
pub fn brute_hamiltonian_cycle(g: &Graph) -> bool {
    if g.n() < 3 {
        return false;
    }
    if g.n() <= 8 {
        let mut order: Vec<usize> = g.vertices().collect();
        brute_perm_cycle(g, &mut order, 1)
    } else {
        brute_dfs_cycle(g, 0, 1u64 << 0, 0)
    }
}

fn brute_perm_cycle(g: &Graph, order: &mut Vec<usize>, from: usize) -> bool {
    let n = order.len();
    if from == n {
        return order.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && g.has_edge(order[n - 1], order[0]);
    }
    for i in from..n {
        order.swap(from, i);
        if brute_perm_cycle(g, order, from + 1) {
            order.swap(from, i);
            return true;
        }
        order.swap(from, i);
    }
    false
}

fn brute_dfs_cycle(g: &Graph, cur: usize, visited: u64, start: usize) -> bool {
    if visited == g.full_set().0 {
        return g.has_edge(cur, start);
    }
    for w in BitIter(g.nbrs(cur) & !visited) {
        if brute_dfs_cycle(g, w, visited | 1 << w, start) {
            return true;
        }
    }
    false
}

/// The minimum leaf number and all distinct minimum-leaf degree sequences,
/// straight from the definition.
pub fn brute_ml_profile(g: &Graph) -> Result<MlProfile, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let n = g.n();
    if n == 1 {
        return Ok(MlProfile {
            ml: 0,
            kind: MlKind::Tree,
            profiles: vec![DegreeProfile::from_degrees(vec![0], None)],
        });
    }
    if brute_hamiltonian_cycle(g) {
        return Ok(MlProfile {
            ml: 1,
            kind: MlKind::HamCycle,
            profiles: vec![DegreeProfile::all_cycle(n, None)],
        });
    }
    let mut best = u32::MAX;
    let mut seqs: HashSet<Vec<u8>> = HashSet::new();
    all_spanning_trees(g, |tree| {
        let mut deg = vec![0u8; n];
        for &(u, v) in tree {
            deg[u] += 1;
            deg[v] += 1;
        }
        let leaves = deg.iter().filter(|&&d| d == 1).count() as u32;
        if leaves < best {
            best = leaves;
            seqs.clear();
        }
        if leaves == best {
            seqs.insert(deg);
        }
    })?;
    let mut profiles: Vec<DegreeProfile> = seqs
        .into_iter()
        .map(|d| DegreeProfile::from_degrees(d, None))
        .collect();
    profiles.sort_by(|a, b| a.degrees().cmp(b.degrees()));
    let kind = match best {
        1 => MlKind::HamCycle,
        2 => MlKind::HamPath,
        _ => MlKind::Tree,
    };
    Ok(MlProfile { ml: best, kind, profiles })
}

/// The fault cost evaluated as written: minimum over stored sequences of
/// the maximum over failing vertices of the minimum transition cost.
pub fn brute_fault_cost(g: &Graph) -> Result<FaultCostReport, OracleError> {
    if g.n() > 10 {
        return Err(OracleError::TooLarge("brute fault cost"));
    }
    if g.n() < 3 || !g.is_two_connected() {
        return Err(OracleError::Disconnected);
    }
    let profile = brute_ml_profile(g)?;
    let mut deleted: Vec<Vec<DegreeProfile>> = Vec::with_capacity(g.n());
    for v in g.vertices() {
        let (h, relabel) = g.delete_vertex(v);
        let sub = brute_ml_profile(&h)?;
        deleted.push(
            sub.profiles
                .iter()
                .map(|p| p.reindexed(&relabel.new_to_old, g.n(), v))
                .collect(),
        );
    }

    let mut per_profile_phi = Vec::new();
    let mut best: Option<(u32, usize, Vec<u32>)> = None;
    for (idx, s) in profile.profiles.iter().enumerate() {
        let mut per_vertex = Vec::with_capacity(g.n());
        for options in &deleted {
            let min = options
                .iter()
                .map(|sv| transition_cost(s, sv))
                .min()
                .expect("vertex-deleted subgraph has an ml-subgraph");
            per_vertex.push(min);
        }
        let worst = per_vertex.iter().copied().max().unwrap_or(0);
        per_profile_phi.push((s.clone(), worst));
        if best.as_ref().map_or(true, |(b, _, _)| worst < *b) {
            best = Some((worst, idx, per_vertex));
        }
    }
    let (phi, idx, per_vertex_cost) = best.unwrap();
    Ok(FaultCostReport {
        phi,
        optimal_profile: profile.profiles[idx].clone(),
        per_vertex_cost,
        per_profile_phi,
        ml: profile.ml,
    })
}

/// Maximum independent set size by branch and bound on vertex masks.
pub fn independence_number(g: &Graph) -> u32 {
    assert!(g.n() <= 20, "independence number guard");
    fn rec(g: &Graph, mask: u64) -> u32 {
        let Some(v) = BitIter(mask).next() else {
            return 0;
        };
        // Either v is out, or v is in and its neighbourhood is out.
        let without = rec(g, mask & !(1 << v));
        let with = 1 + rec(g, mask & !(1 << v) & !g.nbrs(v));
        without.max(with)
    }
    rec(g, g.full_set().0)
}

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

/// A canonical key: the maximum upper-triangle adjacency bit-string over all
/// vertex orderings compatible with an iterated structural refinement. Keys
/// of two graphs are equal iff the graphs are isomorphic. (Maximisation
/// keeps the placed prefix densely connected, which is what makes the
/// branch-and-bound effective on regular graphs.)
pub fn canonical_key(g: &Graph) -> u128 {
    let n = g.n();
    assert!(n <= 16, "canonical keys cover at most 16 vertices");
    if n <= 1 {
        return 0;
    }
    let colour = refine_colours(g);
    // Positions must follow non-decreasing colour class order.
    let mut class_of_position = colour.clone();
    class_of_position.sort_unstable();

    let mut search = CanonSearch {
        g,
        colour: &colour,
        class_of_position: &class_of_position,
        perm: vec![usize::MAX; n],
        used: 0,
        best: 0,
        prefix: Vec::with_capacity(n),
        best_groups: vec![0u64; n],
        have_best: false,
    };
    search.place(0);
    debug_assert!(search.have_best);
    search.best
}

/// Isomorphism-invariant vertex colours: degree, triangle count and the
/// distance histogram, sharpened by two rounds of neighbourhood hashing.
fn refine_colours(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut colour: Vec<u64> = (0..n)
        .map(|v| {
            let nbrs = g.nbrs(v);
            let triangles: u32 = BitIter(nbrs).map(|u| (g.nbrs(u) & nbrs).count_ones()).sum();
            let mut h = (g.degree(v) as u64) << 32 | (triangles as u64);
            // Distance histogram via widening reach.
            let mut seen = 1u64 << v;
            loop {
                let mut next = seen;
                for u in BitIter(seen) {
                    next |= g.nbrs(u);
                }
                if next == seen {
                    break;
                }
                h = h
                    .wrapping_mul(0x9e3779b97f4a7c15)
                    .wrapping_add((next & !seen).count_ones() as u64);
                seen = next;
            }
            h
        })
        .collect();
    for _ in 0..2 {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut nc: Vec<u64> = BitIter(g.nbrs(v)).map(|u| colour[u]).collect();
            nc.sort_unstable();
            let mut h = colour[v].wrapping_mul(0x9e3779b97f4a7c15);
            for c in nc {
                h = (h ^ c).wrapping_mul(0x100000001b3);
            }
            next.push(h);
        }
        colour = next;
    }
    colour
}

struct CanonSearch<'a> {
    g: &'a Graph,
    colour: &'a [u64],
    class_of_position: &'a [u64],
    perm: Vec<usize>,
    used: u64,
    best: u128,
    /// Group values of the current partial ordering.
    prefix: Vec<u64>,
    /// Group values of the best complete ordering.
    best_groups: Vec<u64>,
    have_best: bool,
}

impl CanonSearch<'_> {
    /// Bits of column `pos`: adjacency of `v` to the placed vertices, most
    /// significant bit first, so integer order equals bit-string order.
    fn group(&self, v: usize, pos: usize) -> u64 {
        let mut bits = 0u64;
        for i in 0..pos {
            bits = bits << 1 | u64::from(self.g.has_edge(self.perm[i], v));
        }
        bits
    }

    fn place(&mut self, pos: usize) {
        let n = self.g.n();
        if pos == n {
            let key = pack_groups(&self.prefix, n);
            if !self.have_best || key > self.best {
                self.best = key;
                self.best_groups.copy_from_slice(&self.prefix);
                self.have_best = true;
            }
            return;
        }
        // Compare the prefix against the incumbent afresh at every node:
        // the incumbent may have improved inside a sibling subtree. A
        // lexicographically smaller prefix can never recover; an equal one
        // is bounded positionwise; a greater one always improves on
        // completion.
        let tight = if self.have_best {
            match self.prefix[..].cmp(&self.best_groups[..pos]) {
                std::cmp::Ordering::Less => return,
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Greater => false,
            }
        } else {
            false
        };
        let mut cands: Vec<(u64, usize)> = (0..n)
            .filter(|&v| self.used >> v & 1 == 0 && self.colour[v] == self.class_of_position[pos])
            .map(|v| (self.group(v, pos), v))
            .collect();
        // Best first; within a group value, lowest label (orderings with the
        // same group sequence produce the same key, so ties only cost time).
        cands.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (grp, v) in cands {
            if tight && grp < self.best_groups[pos] {
                break;
            }
            self.perm[pos] = v;
            self.used |= 1 << v;
            self.prefix.push(grp);
            self.place(pos + 1);
            self.prefix.pop();
            self.used &= !(1 << v);
        }
        self.perm[pos] = usize::MAX;
    }
}

fn pack_groups(groups: &[u64], n: usize) -> u128 {
    let mut key = 0u128;
    for (j, &grp) in groups.iter().enumerate().take(n) {
        key = key << j | grp as u128;
    }
    key
}

/// Rebuilds the canonical representative graph from a canonical key.
pub fn graph_from_key(n: usize, key: u128) -> Graph {
    let mut groups = vec![0u64; n];
    let mut k = key;
    for j in (0..n).rev() {
        groups[j] = (k & ((1u128 << j) - 1)) as u64;
        k >>= j;
    }
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            // Bit for placed vertex i sits at position j-1-i (MSB first).
            if groups[j] >> (j - 1 - i) & 1 == 1 {
                g.add_edge_mut(i, j);
            }
        }
    }
    g
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &Graph) -> Graph {
    graph_from_key(g.n(), canonical_key(g))
}

/// Isomorphism by brute permutation search; reference for the canonical
/// form, usable up to 8 vertices.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    assert!(n <= 8, "brute isomorphism guard");
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(a: &Graph, b: &Graph, perm: &mut Vec<usize>, from: usize) -> bool {
        let n = perm.len();
        if from == n {
            return (0..n).all(|u| {
                (u + 1..n).all(|v| a.has_edge(u, v) == b.has_edge(perm[u], perm[v]))
            });
        }
        for i in from..n {
            perm.swap(from, i);
            // Partial consistency against already mapped vertices.
            let ok = (0..from).all(|u| a.has_edge(u, from) == b.has_edge(perm[u], perm[from]));
            if ok && rec(a, b, perm, from + 1) {
                perm.swap(from, i);
                return true;
            }
            perm.swap(from, i);
        }
        false
    }
    rec(a, b, &mut perm, 0)
}

// ---------------------------------------------------------------------------
// Isomorph-free generation
// ---------------------------------------------------------------------------

/// Connectivity requirement of a generation run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConnectivityFilter {
    Any,
    #[default]
    TwoConnected,
    ThreeConnected,
}

/// Structural restrictions applied during generation.
#[derive(Clone, Copy, Debug, Default)]
pub struct GraphClassFilter {
    pub min_girth: Option<usize>,
    pub connectivity: ConnectivityFilter,
    pub regular_degree: Option<usize>,
    pub bipartite_only: bool,
}

impl GraphClassFilter {
    pub fn two_connected() -> Self {
        GraphClassFilter::default()
    }

    pub fn cubic_two_connected() -> Self {
        GraphClassFilter { regular_degree: Some(3), ..Default::default() }
    }

    fn admits(&self, g: &Graph) -> bool {
        let class = match self.connectivity {
            ConnectivityFilter::Any => true,
            ConnectivityFilter::TwoConnected => {
                g.connectivity_class() >= ConnectivityClass::TwoConnected
            }
            ConnectivityFilter::ThreeConnected => {
                g.connectivity_class() >= ConnectivityClass::ThreeConnected
            }
        };
        if !class {
            return false;
        }
        if let Some(d) = self.regular_degree {
            if !g.is_regular(d) {
                return false;
            }
        }
        if let Some(girth) = self.min_girth {
            match g.girth() {
                Girth::Finite(k) if k < girth => return false,
                _ => {}
            }
        }
        if self.bipartite_only && !g.is_bipartite() {
            return false;
        }
        true
    }
}

/// Generates exactly one representative per isomorphism class of order `n`
/// passing the filter. Output graphs are canonical forms, sorted by key, so
/// runs are byte-stable regardless of thread count.
pub fn generate_nonisomorphic(n: usize, filter: &GraphClassFilter) -> Result<Vec<Graph>, OracleError> {
    let keys = if let Some(d) = filter.regular_degree {
        if n > 12 {
            return Err(OracleError::TooLarge("regular generation order"));
        }
        generate_regular_keys(n, d, filter)
    } else {
        if n > 8 {
            return Err(OracleError::TooLarge("general generation order"));
        }
        generate_by_scan(n, filter)
    };
    let mut keys: Vec<u128> = keys.into_iter().collect();
    keys.sort_unstable();
    Ok(keys.into_iter().map(|k| graph_from_key(n, k)).collect())
}

/// Scans every labelled graph on `n` vertices. Each isomorphism class has a
/// labelling with non-increasing degrees, so all other labellings are
/// rejected before any further work.
fn generate_by_scan(n: usize, filter: &GraphClassFilter) -> HashSet<u128> {
    if n == 0 {
        return HashSet::new();
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let total: u64 = 1u64 << pairs.len();
    let min_degree_needed = match filter.connectivity {
        ConnectivityFilter::Any => 0,
        ConnectivityFilter::TwoConnected => {
            if n >= 3 {
                2
            } else {
                0
            }
        }
        ConnectivityFilter::ThreeConnected => {
            if n >= 4 {
                3
            } else {
                0
            }
        }
    };

    let chunk = 1u64 << 16;
    let chunks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    chunks
        .into_par_iter()
        .map(|c| {
            let mut local = HashSet::new();
            let lo = c * chunk;
            let hi = (lo + chunk).min(total);
            let mut deg = [0u8; 8];
            'mask: for mask in lo..hi {
                deg[..n].fill(0);
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        deg[u] += 1;
                        deg[v] += 1;
                    }
                }
                for w in 1..n {
                    if deg[w - 1] < deg[w] {
                        continue 'mask;
                    }
                }
                if (deg[n - 1] as usize) < min_degree_needed {
                    continue;
                }
                let mut g = Graph::empty(n);
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        g.add_edge_mut(u, v);
                    }
                }
                if filter.admits(&g) {
                    local.insert(canonical_key(&g));
                }
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Counts the labelled candidates the regular enumeration visits (probe
/// hook for sizing the search).
pub fn count_regular_candidates(n: usize, d: usize, filter: &GraphClassFilter) -> usize {
    regular_candidates(n, d, filter).len()
}

/// Labelled enumeration of `d`-regular graphs in breadth-first label order:
/// vertex 0 is a root, every later vertex is first reached from an earlier
/// one, and newly discovered vertices always take the next free labels.
/// Every connected graph has such a labelling, and disconnected ones are
/// covered by letting the next free label start a new root when the filter
/// admits them at all.
fn generate_regular_keys(n: usize, d: usize, filter: &GraphClassFilter) -> HashSet<u128> {
    regular_candidates(n, d, filter)
        .par_iter()
        .map(canonical_key)
        .collect()
}

fn regular_candidates(n: usize, d: usize, filter: &GraphClassFilter) -> Vec<Graph> {
    let mut out = Vec::new();
    if n == 0 || d >= n || (n * d) % 2 != 0 {
        return out;
    }
    let allow_disconnected = filter.connectivity == ConnectivityFilter::Any;
    let mut st = RegularGen {
        n,
        d,
        filter,
        allow_disconnected,
        adj: vec![0u64; n],
        deg: vec![0usize; n],
        discovered: 1,
        out: &mut out,
    };
    st.place(0);
    out
}

/// One representative per isomorphism class of 2-connected graphs on `n`
/// vertices with exactly `m` edges, via the same breadth-first labelled
/// enumeration as the regular generator (2-connectivity forces minimum
/// degree 2, which prunes the sparse search hard).
pub fn generate_two_connected_exact_edges(n: usize, m: usize) -> Result<Vec<Graph>, OracleError> {
    if n > 10 {
        return Err(OracleError::TooLarge("exact-size generation order"));
    }
    let mut cands = Vec::new();
    if n >= 3 && m >= n && m <= n * (n - 1) / 2 {
        let mut st = SparseGen {
            n,
            m,
            adj: vec![0u64; n],
            deg: vec![0usize; n],
            discovered: 1,
            edges_used: 0,
            out: &mut cands,
        };
        st.place(0);
    }
    let keys: HashSet<u128> = cands.par_iter().map(canonical_key).collect();
    let mut keys: Vec<u128> = keys.into_iter().collect();
    keys.sort_unstable();
    Ok(keys.into_iter().map(|k| graph_from_key(n, k)).collect())
}

struct SparseGen<'a> {
    n: usize,
    m: usize,
    adj: Vec<u64>,
    deg: Vec<usize>,
    discovered: usize,
    edges_used: usize,
    out: &'a mut Vec<Graph>,
}

impl SparseGen<'_> {
    fn place(&mut self, u: usize) {
        if u == self.n {
            if self.edges_used == self.m {
                let g = Graph::from_adj(self.adj.clone());
                if g.is_two_connected() {
                    self.out.push(g);
                }
            }
            return;
        }
        if u >= self.discovered {
            return; // new component: never 2-connected
        }
        let window: Vec<usize> = (u + 1..self.discovered).collect();
        let wmask: u64 = (1u64 << window.len()) - 1;
        let max_fresh = self.n - self.discovered;
        let mut sub = wmask;
        loop {
            let picked = sub.count_ones() as usize;
            for fresh in 0..=max_fresh {
                // u's degree is final after this step.
                if self.deg[u] + picked + fresh < 2 {
                    continue;
                }
                let budget = self.m - self.edges_used;
                if picked + fresh > budget {
                    continue;
                }
                let after_budget = budget - picked - fresh;
                self.apply(u, sub, &window, fresh, after_budget);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & wmask;
        }
    }

    fn apply(&mut self, u: usize, sub: u64, window: &[usize], fresh: usize, after_budget: usize) {
        let mut added: Vec<usize> = Vec::with_capacity(window.len() + fresh);
        for (i, &w) in window.iter().enumerate() {
            if sub >> i & 1 == 1 {
                added.push(w);
            }
        }
        for i in 0..fresh {
            added.push(self.discovered + i);
        }
        for &w in &added {
            self.adj[u] |= 1 << w;
            self.adj[w] |= 1 << u;
            self.deg[u] += 1;
            self.deg[w] += 1;
        }
        let saved_disc = self.discovered;
        self.discovered += fresh;
        self.edges_used += added.len();

        // Feasibility: vertices still needing degree against the remaining
        // edge budget (each edge covers at most two units of demand), and
        // undiscovered vertices each need two edges of their own.
        let demand: usize = (u + 1..self.n)
            .map(|w| 2usize.saturating_sub(self.deg[w]))
            .sum();
        if demand <= 2 * after_budget {
            self.place(u + 1);
        }

        self.edges_used -= added.len();
        self.discovered = saved_disc;
        for &w in &added {
            self.adj[u] &= !(1 << w);
            self.adj[w] &= !(1 << u);
            self.deg[u] -= 1;
            self.deg[w] -= 1;
        }
    }
}

struct RegularGen<'a> {
    n: usize,
    d: usize,
    filter: &'a GraphClassFilter,
    allow_disconnected: bool,
    adj: Vec<u64>,
    deg: Vec<usize>,
    discovered: usize,
    out: &'a mut Vec<Graph>,
}

impl RegularGen<'_> {
    fn place(&mut self, u: usize) {
        if u == self.n {
            debug_assert!(self.deg.iter().all(|&d| d == self.d));
            let g = Graph::from_adj(self.adj.clone());
            if self.filter.admits(&g) {
                self.out.push(g);
            }
            return;
        }
        if u == self.discovered {
            // u was never reached from an earlier vertex: it starts a new
            // component.
            if !self.allow_disconnected {
                return;
            }
            self.discovered += 1;
        } else if u > self.discovered {
            return;
        }

        let need = self.d - self.deg[u];
        // Eligible already-discovered vertices above u.
        let window: Vec<usize> = (u + 1..self.discovered).filter(|&w| self.deg[w] < self.d).collect();
        let wmask = (1u64 << window.len()) - 1;
        let mut sub = wmask;
        loop {
            let picked = sub.count_ones() as usize;
            if picked <= need {
                let fresh = need - picked;
                if self.discovered + fresh <= self.n {
                    self.apply(u, sub, &window, fresh);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & wmask;
        }
    }

    fn apply(&mut self, u: usize, sub: u64, window: &[usize], fresh: usize) {
        let mut added: Vec<usize> = Vec::with_capacity(self.d);
        for (i, &w) in window.iter().enumerate() {
            if sub >> i & 1 == 1 {
                added.push(w);
            }
        }
        for i in 0..fresh {
            added.push(self.discovered + i);
        }
        for &w in &added {
            self.adj[u] |= 1 << w;
            self.adj[w] |= 1 << u;
            self.deg[u] += 1;
            self.deg[w] += 1;
        }
        let saved = self.discovered;
        self.discovered += fresh;

        // Degree demand feasibility: remaining stubs must be even.
        let demand: usize = (u + 1..self.n).map(|w| self.d - self.deg[w]).sum();
        if demand % 2 == 0 {
            self.place(u + 1);
        }

        self.discovered = saved;
        for &w in &added {
            self.adj[u] &= !(1 << w);
            self.adj[w] &= !(1 << u);
            self.deg[u] -= 1;
            self.deg[w] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::mlst;

    fn petersen() -> Graph {
        Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
    }

    #[test]
    fn spanning_tree_counts() {
        for (g, want) in [
            (Graph::complete(3), 3usize),
            (Graph::complete(4), 16),
            (Graph::cycle(5), 5),
            (petersen(), 2000),
        ] {
            let mut count = 0;
            all_spanning_trees(&g, |_| count += 1).unwrap();
            assert_eq!(count, want);
        }
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(independence_number(&Graph::complete(4)), 1);
        assert_eq!(independence_number(&Graph::cycle(5)), 2);
        assert_eq!(independence_number(&petersen()), 4);
    }

    #[test]
    fn brute_ml_matches_fast_on_known_graphs() {
        for g in [
            Graph::complete(4),
            Graph::cycle(6),
            petersen(),
            Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
            Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]),
        ] {
            let brute = brute_ml_profile(&g).unwrap();
            let fast = mlst::ml_profile(&g).unwrap();
            assert_eq!(brute.ml, fast.ml, "{g:?}");
            assert_eq!(brute.profiles, fast.profiles, "{g:?}");
        }
    }

    #[test]
    fn brute_fault_cost_on_small_graphs() {
        assert_eq!(brute_fault_cost(&Graph::complete(3)).unwrap().phi, 2);
        assert_eq!(brute_fault_cost(&Graph::complete(4)).unwrap().phi, 0);
        assert_eq!(brute_fault_cost(&petersen()).unwrap().phi, 2);
    }

    #[test]
    fn canonical_key_is_isomorphism_invariant() {
        // Deterministic shuffles of a fixed graph all share one key.
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3), (1, 5)]);
        let key = canonical_key(&g);
        let mut perm: Vec<usize> = (0..7).collect();
        for step in 0..20 {
            perm.rotate_left(1 + step % 3);
            perm.swap(0, step % 7);
            let mut h = Graph::empty(7);
            for (u, v) in g.edges() {
                h.add_edge_mut(perm[u], perm[v]);
            }
            assert_eq!(canonical_key(&h), key);
            assert!(brute_isomorphic(&g, &h));
        }
        // A different graph with the same degree sequence gets another key.
        let h = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 2), (3, 6)]);
        assert!(!brute_isomorphic(&g, &h));
        assert_ne!(canonical_key(&h), key);
    }

    #[test]
    fn canonical_graph_round_trips() {
        let g = petersen();
        let c = canonical_graph(&g);
        assert_eq!(canonical_key(&c), canonical_key(&g));
        assert_eq!(c.edge_count(), g.edge_count());
    }

    #[test]
    fn census_all_graphs_small_orders() {
        // Known counts of all graphs up to isomorphism: 1, 2, 4, 11, 34, 156.
        let filter = GraphClassFilter { connectivity: ConnectivityFilter::Any, ..Default::default() };
        for (n, want) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
            assert_eq!(generate_nonisomorphic(n, &filter).unwrap().len(), want, "n={n}");
        }
    }

    #[test]
    fn census_two_connected_small_orders() {
        for (n, want) in [(3, 1), (4, 3), (5, 10), (6, 56)] {
            let got = generate_nonisomorphic(n, &GraphClassFilter::two_connected()).unwrap();
            assert_eq!(got.len(), want, "n={n}");
            for g in &got {
                assert!(g.is_two_connected());
            }
        }
    }

    #[test]
    fn census_cubic() {
        // 2-connected cubic graphs: 1, 2, 5, 18 for orders 4, 6, 8, 10.
        for (n, want) in [(4, 1), (6, 2), (8, 5), (10, 18)] {
            let got = generate_nonisomorphic(n, &GraphClassFilter::cubic_two_connected()).unwrap();
            assert_eq!(got.len(), want, "n={n}");
            for g in &got {
                assert!(g.is_regular(3) && g.is_two_connected());
            }
        }
        // All cubic graphs on 10 vertices including disconnected ones: 21.
        let any = GraphClassFilter {
            connectivity: ConnectivityFilter::Any,
            regular_degree: Some(3),
            ..Default::default()
        };
        assert_eq!(generate_nonisomorphic(10, &any).unwrap().len(), 21);
    }

    #[test]
    fn generated_graphs_are_pairwise_nonisomorphic() {
        let got = generate_nonisomorphic(5, &GraphClassFilter::two_connected()).unwrap();
        for i in 0..got.len() {
            for j in i + 1..got.len() {
                assert!(!brute_isomorphic(&got[i], &got[j]));
            }
        }
    }

    #[test]
    fn girth_and_bipartite_filters() {
        // Triangle-free 2-connected graphs on 5 vertices: C5 and K_{2,3}.
        let f = GraphClassFilter { min_girth: Some(4), ..Default::default() };
        assert_eq!(generate_nonisomorphic(5, &f).unwrap().len(), 2);
        let fb = GraphClassFilter { bipartite_only: true, ..Default::default() };
        // Bipartite 2-connected on 5 vertices: only K_{2,3}.
        assert_eq!(generate_nonisomorphic(5, &fb).unwrap().len(), 1);
    }
}
