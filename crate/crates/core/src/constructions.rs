//! Deterministic generators for the named graph families: the theta-like
//! families with prescribed fault costs, the edge-replacement gadget and the
//! leaf-guaranteed embeddings built from it, the Petersen-based chains, the
//! Type-1/Type-2 ring yielding cubic fault-cost-3 graphs, the weak/medium
//! fragment fixtures and their gluings, and the searched-for smallest
//! 2-leaf-guaranteed graph.
//!
//! Vertex numbering inside each construction is fixed (declaration order of
//! the roles), so emitted graph6 lines are byte-stable across runs.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::classify::{self, FragmentClass, FragmentSpec};
use crate::graph::{Graph, VertexSet};
use crate::hamilton;
use crate::mlst::MlNumber;
use crate::oracle;

/// A constructed graph with its named vertices.
#[derive(Clone, Debug)]
pub struct LabelledConstruction {
    pub graph: Graph,
    pub roles: BTreeMap<String, usize>,
}

impl LabelledConstruction {
    fn new(graph: Graph, roles: &[(&str, usize)]) -> Self {
        let roles = roles.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        LabelledConstruction { graph, roles }
    }

    /// Looks up a role; panics if the construction does not define it.
    pub fn role(&self, name: &str) -> usize {
        *self.roles.get(name).unwrap_or_else(|| panic!("no role {name:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("family parameter m = {got} is below the minimum {min}")]
    MTooSmall { min: usize, got: usize },
    #[error("family parameter k = {got} is below the minimum {min}")]
    KTooSmall { min: usize, got: usize },
    #[error("input graph is too small for this construction")]
    TooSmall,
    #[error("construction exceeds the 64-vertex cap")]
    TooLarge,
    #[error("missing role {0:?}")]
    MissingRoles(&'static str),
    #[error("input is not a certified fragment")]
    NotAFragment,
}

/// The Petersen graph: outer cycle 0..4, spokes to 5..9, inner pentagram.
pub fn petersen() -> Graph {
    Graph::from_edges(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ],
    )
}

/// Two hubs `u`, `v` joined by `m` internally disjoint paths `u a_i b_i v`.
pub fn build_gm(m: usize) -> Result<LabelledConstruction, ConstructionError> {
    if m < 3 {
        return Err(ConstructionError::MTooSmall { min: 3, got: m });
    }
    if 2 * m + 2 > 64 {
        return Err(ConstructionError::TooLarge);
    }
    // Labels: u = 0, v = 1, a_i = 2 + 2i, b_i = 3 + 2i.
    let mut edges = Vec::with_capacity(3 * m);
    let mut roles: Vec<(String, usize)> = vec![("u".into(), 0), ("v".into(), 1)];
    for i in 0..m {
        let (a, b) = (2 + 2 * i, 3 + 2 * i);
        edges.push((0, a));
        edges.push((1, b));
        edges.push((a, b));
        roles.push((format!("a{i}"), a));
        roles.push((format!("b{i}"), b));
    }
    let graph = Graph::from_edges(2 * m + 2, &edges);
    Ok(LabelledConstruction { graph, roles: roles.into_iter().collect() })
}

/// `G_m` plus the two chords `a0 a1` and `b2 b3`.
pub fn build_hm(m: usize) -> Result<LabelledConstruction, ConstructionError> {
    if m < 5 {
        return Err(ConstructionError::MTooSmall { min: 5, got: m });
    }
    let base = build_gm(m)?;
    let graph = base
        .graph
        .add_edge(base.role("a0"), base.role("a1"))
        .add_edge(base.role("b2"), base.role("b3"));
    Ok(LabelledConstruction { graph, roles: base.roles })
}

/// The 8-vertex edge-replacement gadget: a triple edge with two of the three
/// edges subdivided and both original endpoints blown up to triangles.
/// Vertices 0 = `v` and 1 = `w` keep the direct edge; 6 and 7 are the
/// subdivision vertices.
pub fn build_xi8() -> LabelledConstruction {
    let graph = Graph::from_edges(
        8,
        &[
            (0, 1),
            (0, 2), (2, 3), (3, 0), // triangle at v
            (1, 4), (4, 5), (5, 1), // triangle at w
            (2, 6), (6, 4), // subdivided second edge
            (3, 7), (7, 5), // subdivided third edge
        ],
    );
    LabelledConstruction::new(graph, &[("v", 0), ("w", 1)])
}

/// Positions of an input graph on the host cycle: path vertices take the
/// first positions, the remaining vertices every second position after, so
/// the input stays induced.
fn embed_positions(g: &Graph) -> Result<(usize, Vec<usize>), ConstructionError> {
    let n = g.n();
    if n < 2 {
        return Err(ConstructionError::TooSmall);
    }
    let path = hamilton::longest_path(g);
    let p = path.order.len();
    let k = 2 * n - p + 1;
    let mut position = vec![usize::MAX; n];
    for (i, &w) in path.order.iter().enumerate() {
        position[w] = i;
    }
    let mut j = 0;
    for w in g.vertices() {
        if position[w] == usize::MAX {
            j += 1;
            position[w] = p + 2 * j - 1;
        }
    }
    Ok((k, position))
}

/// Wheel embedding: the input graph laid out on a `k`-cycle (`k = 2n - p +
/// 1` for a longest path on `p` vertices) plus a hub adjacent to the whole
/// cycle. The result is 1-hamiltonian and contains the input as an induced
/// subgraph on the roles `g0..`.
pub fn embed_1_leaf_guaranteed(g: &Graph) -> Result<LabelledConstruction, ConstructionError> {
    let (k, position) = embed_positions(g)?;
    if k + 1 > 64 {
        return Err(ConstructionError::TooLarge);
    }
    let hub = k;
    let mut out = Graph::empty(k + 1);
    for i in 0..k {
        out.add_edge_mut(i, (i + 1) % k);
        out.add_edge_mut(hub, i);
    }
    for (u, v) in g.edges() {
        out.add_edge_mut(position[u], position[v]);
    }
    let mut roles: Vec<(String, usize)> = vec![("v0".into(), hub)];
    for w in g.vertices() {
        roles.push((format!("g{w}"), position[w]));
    }
    Ok(LabelledConstruction { graph: out, roles: roles.into_iter().collect() })
}

/// Gadget embedding: the same cycle layout, but every cycle edge is replaced
/// by a copy of the 8-vertex gadget (which keeps the edge itself and hangs
/// two subdivided detours off it). The result has `7k` vertices and minimum
/// leaf number `k`.
pub fn embed_k_leaf_guaranteed(g: &Graph) -> Result<LabelledConstruction, ConstructionError> {
    let (k, position) = embed_positions(g)?;
    if 7 * k > 64 {
        return Err(ConstructionError::TooLarge);
    }
    let mut out = Graph::empty(7 * k);
    for (u, v) in g.edges() {
        out.add_edge_mut(position[u], position[v]);
    }
    for e in 0..k {
        let (a, b) = (e, (e + 1) % k);
        // Gadget vertices for this cycle edge: a's triangle, b's triangle,
        // and the two subdivision vertices.
        let base = k + 6 * e;
        let (a1, a2, b1, b2, m1, m2) =
            (base, base + 1, base + 2, base + 3, base + 4, base + 5);
        for (x, y) in [
            (a, b),
            (a, a1), (a1, a2), (a2, a),
            (b, b1), (b1, b2), (b2, b),
            (a1, m1), (m1, b1),
            (a2, m2), (m2, b2),
        ] {
            out.add_edge_mut(x, y);
        }
    }
    let mut roles: Vec<(String, usize)> = Vec::new();
    for w in g.vertices() {
        roles.push((format!("g{w}"), position[w]));
    }
    Ok(LabelledConstruction { graph: out, roles: roles.into_iter().collect() })
}

/// Chain of `k` copies of the Petersen graph minus an edge `vw`, with all
/// copies of `v` identified into `x` and all copies of `w` into `y`.
/// `x = 0`, `y = 1`; copy `i` occupies labels `2 + 8i .. 10 + 8i`.
pub fn build_petersen_gk(k: usize) -> Result<LabelledConstruction, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::KTooSmall { min: 2, got: k });
    }
    if 8 * k + 2 > 64 {
        return Err(ConstructionError::TooLarge);
    }
    let p = petersen();
    let mut out = Graph::empty(8 * k + 2);
    for i in 0..k {
        let map = |v: usize| -> usize {
            match v {
                0 => 0,
                1 => 1,
                _ => 8 * i + v,
            }
        };
        for (u, v) in p.edges() {
            if (u, v) == (0, 1) {
                continue; // the deleted edge vw
            }
            out.add_edge_mut(map(u), map(v));
        }
    }
    Ok(LabelledConstruction::new(out, &[("x", 0), ("y", 1)]))
}

/// The 12-vertex bipartite fixture: an 8-cycle with all four long diagonals
/// subdivided once.
pub fn build_bipartite12() -> LabelledConstruction {
    let mut g = Graph::empty(12);
    for i in 0..8 {
        g.add_edge_mut(i, (i + 1) % 8);
    }
    for i in 0..4 {
        g.add_edge_mut(i, 8 + i);
        g.add_edge_mut(8 + i, i + 4);
    }
    LabelledConstruction::new(g, &[])
}

/// The 10-vertex Type-1 ring component: `v`/`w` close the ring, `x`/`y`
/// flank the top vertex.
pub fn build_type1_fig4() -> LabelledConstruction {
    // 0 = v, 1 = w, 2 = x, 3 = y, 4..7 bottom path, 8 top, 9 centre.
    let graph = Graph::from_edges(
        10,
        &[
            (0, 4), (4, 5), (5, 6), (6, 7), (7, 1), // bottom path v..w
            (0, 2), (2, 8), (8, 3), (3, 1), // upper path v x t y w
            (8, 9), (4, 9), (7, 9), // centre vertex
            (6, 2), (5, 3), // cross chords
        ],
    );
    LabelledConstruction::new(graph, &[("v", 0), ("w", 1), ("x", 2), ("y", 3)])
}

/// The 6-vertex Type-2 ring component (a twisted prism).
pub fn build_type2_fig4() -> LabelledConstruction {
    // 0 = v, 1 = w, 2-3 bottom path, 4-5 top path.
    let graph = Graph::from_edges(
        6,
        &[
            (0, 2), (2, 3), (3, 1),
            (0, 4), (4, 5), (5, 1),
            (2, 5), (3, 4),
        ],
    );
    LabelledConstruction::new(graph, &[("v", 0), ("w", 1)])
}

/// Cubic ring of one Type-1 component and `k` Type-2 components, joined by
/// the edges `w_i v_{i+1}` (indices cyclic). Order `10 + 6k`; fault cost 3
/// for every `k >= 2`.
pub fn build_cubic_fc3(k: usize) -> Result<LabelledConstruction, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::KTooSmall { min: 2, got: k });
    }
    if 10 + 6 * k > 64 {
        return Err(ConstructionError::TooLarge);
    }
    let t1 = build_type1_fig4();
    let t2 = build_type2_fig4();
    let mut out = Graph::empty(10 + 6 * k);
    for (u, v) in t1.graph.edges() {
        out.add_edge_mut(u, v);
    }
    let mut roles: Vec<(String, usize)> = vec![
        ("v0".into(), t1.role("v")),
        ("w0".into(), t1.role("w")),
        ("x0".into(), t1.role("x")),
        ("y0".into(), t1.role("y")),
    ];
    for i in 1..=k {
        let base = 10 + 6 * (i - 1);
        for (u, v) in t2.graph.edges() {
            out.add_edge_mut(base + u, base + v);
        }
        roles.push((format!("v{i}"), base + t2.role("v")));
        roles.push((format!("w{i}"), base + t2.role("w")));
    }
    // Ring edges w_i v_{i+1}, cyclically.
    for i in 0..=k {
        let w_i = if i == 0 { t1.role("w") } else { 10 + 6 * (i - 1) + 1 };
        let v_next = if i == k { t1.role("v") } else { 10 + 6 * i };
        out.add_edge_mut(w_i, v_next);
    }
    Ok(LabelledConstruction { graph: out, roles: roles.into_iter().collect() })
}

/// The three weak-fragment fixtures: a triangle, a near-complete graph on 4
/// vertices, and a 5-vertex fragment.
pub fn build_weak_fragments_fig5() -> Vec<LabelledConstruction> {
    let g1 = LabelledConstruction::new(
        Graph::complete(3),
        &[("a", 0), ("x", 1), ("y", 2)],
    );
    // K4 minus the edge ay.
    let g2 = LabelledConstruction::new(
        Graph::from_edges(4, &[(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]),
        &[("a", 0), ("x", 1), ("y", 2)],
    );
    let g3 = LabelledConstruction::new(
        Graph::from_edges(5, &[(0, 3), (0, 4), (1, 2), (1, 4), (2, 3), (3, 4)]),
        &[("a", 0), ("x", 1), ("y", 2)],
    );
    vec![g1, g2, g3]
}

/// The three medium-fragment fixtures: the Petersen graph with an apex over
/// an outer edge, the same with a doubled apex, and the first fixture with
/// its attachment pushed out by the fragment-extension step.
///
/// The apex `a` sits over the outer edge {3, 4}; the attachment `xy` is the
/// outer edge {0, 1}, with `x` the endpoint next to an apex foot.
pub fn build_medium_fragments_fig6() -> Vec<LabelledConstruction> {
    let p = petersen();
    let mut g1 = Graph::empty(11);
    for (u, v) in p.edges() {
        g1.add_edge_mut(u, v);
    }
    g1.add_edge_mut(10, 3);
    g1.add_edge_mut(10, 4);
    let f1 = LabelledConstruction::new(g1.clone(), &[("a", 10), ("x", 0), ("y", 1)]);

    let mut g2 = Graph::empty(12);
    for (u, v) in g1.edges() {
        g2.add_edge_mut(u, v);
    }
    g2.add_edge_mut(11, 3);
    g2.add_edge_mut(11, 4);
    g2.add_edge_mut(10, 11);
    let f2 = LabelledConstruction::new(g2, &[("a", 11), ("x", 0), ("y", 1)]);

    // Fragment 3 is fragment 1 extended by x' = 11, y' = 12.
    let mut g3 = Graph::empty(13);
    for (u, v) in g1.edges() {
        g3.add_edge_mut(u, v);
    }
    g3.add_edge_mut(0, 11);
    g3.add_edge_mut(11, 12);
    g3.add_edge_mut(12, 1);
    let f3 = LabelledConstruction::new(
        g3,
        &[("a", 10), ("x", 11), ("y", 12), ("x_inner", 0), ("y_inner", 1)],
    );
    vec![f1, f2, f3]
}

/// Glues two fragments at their `x`/`y` roles (the shared edge appears
/// once). The first fragment keeps its labels; the second is appended.
/// Roles in the output: `x`, `y`, `a1`, `a2`, plus every other input role
/// suffixed with `_1` or `_2`.
pub fn glue(
    c1: &LabelledConstruction,
    c2: &LabelledConstruction,
) -> Result<LabelledConstruction, ConstructionError> {
    for c in [c1, c2] {
        for need in ["x", "y"] {
            if !c.roles.contains_key(need) {
                return Err(ConstructionError::MissingRoles("x/y"));
            }
        }
        let (x, y) = (c.role("x"), c.role("y"));
        if !c.graph.has_edge(x, y) {
            return Err(ConstructionError::MissingRoles("xy edge"));
        }
    }
    let (n1, n2) = (c1.graph.n(), c2.graph.n());
    if n1 + n2 - 2 > 64 {
        return Err(ConstructionError::TooLarge);
    }
    let (x2, y2) = (c2.role("x"), c2.role("y"));
    // Map c2's labels into the glued graph.
    let mut map2 = vec![usize::MAX; n2];
    let mut next = n1;
    for v in 0..n2 {
        map2[v] = if v == x2 {
            c1.role("x")
        } else if v == y2 {
            c1.role("y")
        } else {
            let l = next;
            next += 1;
            l
        };
    }
    let mut g = Graph::empty(n1 + n2 - 2);
    for (u, v) in c1.graph.edges() {
        g.add_edge_mut(u, v);
    }
    for (u, v) in c2.graph.edges() {
        g.add_edge_mut(map2[u], map2[v]);
    }
    let mut roles: BTreeMap<String, usize> = BTreeMap::new();
    roles.insert("x".into(), c1.role("x"));
    roles.insert("y".into(), c1.role("y"));
    for (name, &v) in &c1.roles {
        match name.as_str() {
            "x" | "y" => {}
            "a" => {
                roles.insert("a1".into(), v);
            }
            other => {
                roles.insert(format!("{other}_1"), v);
            }
        }
    }
    for (name, &v) in &c2.roles {
        match name.as_str() {
            "x" | "y" => {}
            "a" => {
                roles.insert("a2".into(), map2[v]);
            }
            other => {
                roles.insert(format!("{other}_2"), map2[v]);
            }
        }
    }
    Ok(LabelledConstruction { graph: g, roles })
}

/// The two tfc1 fixtures: medium fragment 1 glued with itself, and with the
/// extended fragment 3 (the latter has a non-adjacent 2-separator at roles
/// `x` and `y_inner_2`).
pub fn build_tfc1_fig7() -> Vec<LabelledConstruction> {
    let frags = build_medium_fragments_fig6();
    vec![
        glue(&frags[0], &frags[0]).unwrap(),
        glue(&frags[0], &frags[2]).unwrap(),
    ]
}

/// Pushes a fragment's attachment out by a 3-edge detour: new vertices `x'`,
/// `y'` with edges `xx'`, `x'y'`, `y'y`. The result is re-certified and, per
/// the extension lemma, never loses strength.
pub fn extend_fragment(f: &FragmentSpec) -> Result<FragmentSpec, ConstructionError> {
    if f.class < FragmentClass::Weak {
        return Err(ConstructionError::NotAFragment);
    }
    let n = f.h.n();
    if n + 2 > 64 {
        return Err(ConstructionError::TooLarge);
    }
    let mut g = Graph::empty(n + 2);
    for (u, v) in f.h.edges() {
        g.add_edge_mut(u, v);
    }
    let (xp, yp) = (n, n + 1);
    g.add_edge_mut(f.x, xp);
    g.add_edge_mut(xp, yp);
    g.add_edge_mut(yp, f.y);
    let spec = classify::fragment_class(&g, f.a, xp, yp)
        .expect("extension preserves the fragment preconditions");
    assert!(
        spec.class >= f.class,
        "fragment extension must not lose strength"
    );
    Ok(spec)
}

/// Exemplar graphs attaining the smallest known order for each fault cost
/// (fault cost, graph); transcribed from their explicit edge lists.
pub fn min_fault_cost_exemplars() -> Vec<(u32, Graph)> {
    vec![
        (0, Graph::complete(4)),
        (2, Graph::complete(3)),
        (
            3,
            Graph::from_edges(
                8,
                &[
                    (0, 1), (1, 7), (7, 3), (3, 4), (4, 2), (2, 0), (0, 7),
                    (0, 5), (5, 4), (1, 6), (6, 4),
                ],
            ),
        ),
        (
            4,
            Graph::from_edges(
                7,
                &[
                    (2, 0), (0, 1), (1, 3), (3, 4), (4, 2),
                    (0, 5), (5, 4), (1, 6), (6, 4),
                ],
            ),
        ),
        (
            5,
            Graph::from_edges(
                11,
                &[
                    (2, 0), (0, 1), (1, 3), (3, 4), (4, 2),
                    (0, 5), (5, 4), (1, 6), (6, 4),
                    (4, 7), (7, 9), (9, 10), (10, 8), (8, 4),
                    (9, 0), (0, 10), (9, 1), (1, 10),
                ],
            ),
        ),
        (
            6,
            Graph::from_edges(
                10,
                &[
                    (0, 2), (2, 3), (3, 1), (1, 5), (5, 4), (4, 0),
                    (0, 6), (6, 7), (7, 1), (1, 9), (9, 8), (8, 0),
                ],
            ),
        ),
        (
            7,
            Graph::from_edges(
                11,
                &[
                    (2, 0), (0, 1), (3, 2), (0, 4), (4, 3), (1, 5), (5, 3),
                    (3, 6), (6, 9), (3, 7), (7, 9), (3, 8), (8, 10),
                    (9, 10), (10, 1),
                ],
            ),
        ),
        (
            8,
            Graph::from_edges(
                13,
                &[
                    (2, 0), (0, 1), (1, 3), (3, 4), (4, 2),
                    (0, 5), (5, 4), (1, 6), (6, 4),
                    (4, 7), (7, 11), (4, 8), (8, 11),
                    (4, 9), (9, 12), (4, 10), (10, 12),
                    (0, 11), (11, 12), (12, 1),
                ],
            ),
        ),
    ]
}

/// Searches for the smallest 2-leaf-guaranteed graphs, first by order and
/// then by size, over all 2-connected graphs of order at most 9. The result
/// is cached.
pub fn find_xi9_candidates() -> &'static [Graph] {
    static CACHE: OnceLock<Vec<Graph>> = OnceLock::new();
    CACHE.get_or_init(|| {
        // Orders 3..8: the full 2-connected census has no qualifying graph,
        // but the scan is part of the minimality claim.
        for n in 3..=8 {
            let all = oracle::generate_nonisomorphic(n, &oracle::GraphClassFilter::two_connected())
                .expect("within generator guards");
            let hits: Vec<Graph> = all.into_iter().filter(is_two_leaf_guaranteed).collect();
            if !hits.is_empty() {
                return hits;
            }
        }
        // Order 9, by increasing size.
        for m in 9..=36 {
            let all = oracle::generate_two_connected_exact_edges(9, m)
                .expect("within generator guards");
            let hits: Vec<Graph> = all.into_iter().filter(is_two_leaf_guaranteed).collect();
            if !hits.is_empty() {
                return hits;
            }
        }
        Vec::new()
    })
}

fn is_two_leaf_guaranteed(g: &Graph) -> bool {
    if g.max_degree() < 3 {
        return false;
    }
    let class = classify::classify_leaf_guaranteed(g);
    class.is_leaf_guaranteed() && class.ml == MlNumber::Finite(2)
}

/// The first (in canonical order) smallest 2-leaf-guaranteed graph.
pub fn find_xi9() -> LabelledConstruction {
    let g = find_xi9_candidates()
        .first()
        .expect("the search space contains 2-leaf-guaranteed graphs")
        .clone();
    LabelledConstruction { graph: g, roles: BTreeMap::new() }
}

/// Convenience accessor used by tests: the non-adjacent separator roles of
/// the second tfc1 fixture.
pub fn fig7_nonadjacent_separator(c: &LabelledConstruction) -> VertexSet {
    VertexSet::from_iter([c.role("x"), c.role("y_inner_2")])
}
