//! Family classification: leaf-guaranteed labels, tfc1 certificates, and
//! weak/medium/strong fragment certification.

use crate::deadline::{Deadline, Timeout};
use crate::graph::{ConnectivityClass, Graph, VertexSet};
use crate::hamilton::{self, PathWitness};
use crate::mlst::{self, MlNumber};

/// Where a graph sits in the leaf-guaranteed hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafLabel {
    /// `ml(G) = k` and every deletion keeps ml exactly `k`.
    LeafStable(u32),
    /// `ml(G) = k` and every deletion drops ml to `k - 1`.
    LeafCritical(u32),
    /// Leaf-guaranteed with both `k` and `k - 1` among the deletions.
    LeafGuaranteedMixed(u32),
    NotLeafGuaranteed,
}

/// Classification record: `ml(G)`, all vertex-deleted ml values, and the
/// resulting label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLabel {
    pub ml: MlNumber,
    pub vertex_deleted_mls: Vec<MlNumber>,
    pub label: LeafLabel,
}

impl ClassLabel {
    pub fn is_leaf_guaranteed(&self) -> bool {
        !matches!(self.label, LeafLabel::NotLeafGuaranteed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("graph is not leaf-guaranteed")]
    NotLeafGuaranteed,
    #[error("graph is not 2-leaf-stable")]
    NotTwoLeafStable,
    #[error("fragment precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("search aborted: deadline expired")]
    Timeout,
}

impl From<Timeout> for ClassifyError {
    fn from(_: Timeout) -> Self {
        ClassifyError::Timeout
    }
}

/// Computes `ml(G)` and `ml(G - v)` for every vertex and derives the label.
pub fn classify_leaf_guaranteed(g: &Graph) -> ClassLabel {
    classify_leaf_guaranteed_within(g, Deadline::NONE).unwrap()
}

pub fn classify_leaf_guaranteed_within(
    g: &Graph,
    deadline: Deadline,
) -> Result<ClassLabel, Timeout> {
    assert!(g.n() >= 3, "classification needs at least 3 vertices");
    let ml = mlst::ml_number_within(g, deadline)?;
    let mut deleted = Vec::with_capacity(g.n());
    for v in g.vertices() {
        let (h, _) = g.delete_vertex(v);
        deleted.push(mlst::ml_number_within(&h, deadline)?);
    }
    let label = match ml {
        MlNumber::Infinite => LeafLabel::NotLeafGuaranteed,
        MlNumber::Finite(k) => {
            if deleted.iter().any(|&d| d > ml) {
                LeafLabel::NotLeafGuaranteed
            } else if deleted.iter().all(|&d| d == MlNumber::Finite(k)) {
                LeafLabel::LeafStable(k)
            } else if deleted.iter().all(|&d| d == MlNumber::Finite(k - 1)) {
                LeafLabel::LeafCritical(k)
            } else {
                LeafLabel::LeafGuaranteedMixed(k)
            }
        }
    };
    Ok(ClassLabel { ml, vertex_deleted_mls: deleted, label })
}

/// Structural facts behind the leaf-guaranteed properties: 2-connectivity
/// with maximum degree at least 3, the two-value law for vertex-deleted ml,
/// and leaf avoidance per vertex. `never_leaf` collects the vertices that
/// are a leaf in no minimum-leaf degree sequence at all.
#[derive(Clone, Debug)]
pub struct LggReport {
    pub class: ClassLabel,
    pub two_connected: bool,
    pub max_degree_at_least_3: bool,
    pub two_value_law: bool,
    pub every_vertex_avoids_leaf: bool,
    pub never_leaf: VertexSet,
}

impl LggReport {
    pub fn all_hold(&self) -> bool {
        self.two_connected
            && self.max_degree_at_least_3
            && self.two_value_law
            && self.every_vertex_avoids_leaf
    }
}

/// Verifies the structural properties of a leaf-guaranteed graph.
pub fn verify_prop_lgg(g: &Graph) -> Result<LggReport, ClassifyError> {
    let class = classify_leaf_guaranteed(g);
    if !class.is_leaf_guaranteed() {
        return Err(ClassifyError::NotLeafGuaranteed);
    }
    let k = match class.ml {
        MlNumber::Finite(k) => k,
        MlNumber::Infinite => return Err(ClassifyError::NotLeafGuaranteed),
    };
    let two_connected = g.connectivity_class() >= ConnectivityClass::TwoConnected;
    let max_degree_at_least_3 = g.max_degree() >= 3;
    let two_value_law = class
        .vertex_deleted_mls
        .iter()
        .all(|&d| d == MlNumber::Finite(k) || (k >= 1 && d == MlNumber::Finite(k - 1)));

    let profile = mlst::ml_profile(g).expect("leaf-guaranteed graphs are connected");
    let leaf_intersection = profile
        .profiles
        .iter()
        .fold(u64::MAX, |acc, p| acc & p.leaf_mask().0)
        & g.full_set().0;
    let leaf_union = profile
        .profiles
        .iter()
        .fold(0u64, |acc, p| acc | p.leaf_mask().0);

    Ok(LggReport {
        class,
        two_connected,
        max_degree_at_least_3,
        two_value_law,
        // A vertex avoids leafhood iff some stored sequence leaves it out.
        every_vertex_avoids_leaf: leaf_intersection == 0,
        never_leaf: VertexSet(g.full_set().0 & !leaf_union),
    })
}

/// Searches for a vertex pair certifying fault cost 1 of a 2-leaf-stable
/// graph: a pair `(a1, a2)` with a hamiltonian `a1a2`-path in `G` and in
/// every `G - x`, `x` outside the pair. Pairs are scanned in order of
/// increasing degree sum.
pub fn tfc1_certificate(g: &Graph) -> Result<Option<(usize, usize)>, ClassifyError> {
    tfc1_certificate_within(g, Deadline::NONE)
}

pub fn tfc1_certificate_within(
    g: &Graph,
    deadline: Deadline,
) -> Result<Option<(usize, usize)>, ClassifyError> {
    let class = classify_leaf_guaranteed_within(g, deadline)?;
    if class.label != LeafLabel::LeafStable(2) {
        return Err(ClassifyError::NotTwoLeafStable);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            pairs.push((a, b));
        }
    }
    pairs.sort_by_key(|&(a, b)| (g.degree(a) + g.degree(b), a, b));

    'pair: for (a1, a2) in pairs {
        if hamilton::hamiltonian_path_between_within(g, a1, a2, deadline)?.is_none() {
            continue;
        }
        for x in g.vertices() {
            if x == a1 || x == a2 {
                continue;
            }
            let (h, relabel) = g.delete_vertex(x);
            let ha = relabel.old_to_new[a1].unwrap();
            let hb = relabel.old_to_new[a2].unwrap();
            if hamilton::hamiltonian_path_between_within(&h, ha, hb, deadline)?.is_none() {
                continue 'pair;
            }
        }
        return Ok(Some((a1, a2)));
    }
    Ok(None)
}

/// Fragment classes in increasing strength.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FragmentClass {
    NotWeak,
    Weak,
    Medium,
    Strong,
}

/// A certified quadruple `(H, a, x, y)` with the hamiltonian paths
/// witnessing the cover property: one for `H` itself and one per deleted
/// vertex, each ending at `a` and at `x` or `y` (vertex orders are in `H`'s
/// labels).
#[derive(Clone, Debug)]
pub struct FragmentSpec {
    pub h: Graph,
    pub a: usize,
    pub x: usize,
    pub y: usize,
    pub class: FragmentClass,
    pub witnesses: Vec<(Option<usize>, PathWitness)>,
}

/// Certifies the strongest fragment class of `(h, a, x, y)`.
///
/// The cover property asks for a hamiltonian `ax`- or `ay`-path in `h` and
/// in every `h - v`, `v != a`; the two upgrade properties forbid hamiltonian
/// `xy`-paths in `h` and in every `h - v`.
pub fn fragment_class(
    h: &Graph,
    a: usize,
    x: usize,
    y: usize,
) -> Result<FragmentSpec, ClassifyError> {
    fragment_class_within(h, a, x, y, Deadline::NONE)
}

pub fn fragment_class_within(
    h: &Graph,
    a: usize,
    x: usize,
    y: usize,
    deadline: Deadline,
) -> Result<FragmentSpec, ClassifyError> {
    let n = h.n();
    if a >= n || x >= n || y >= n {
        return Err(ClassifyError::PreconditionViolated("vertex out of range"));
    }
    if a == x || a == y || x == y {
        return Err(ClassifyError::PreconditionViolated("a, x, y must be distinct"));
    }
    if !h.has_edge(x, y) {
        return Err(ClassifyError::PreconditionViolated("xy must be an edge"));
    }
    if !h.is_connected() {
        return Err(ClassifyError::PreconditionViolated("fragment must be connected"));
    }

    let mut witnesses = Vec::new();
    let mut covered = true;

    match path_to_either(h, a, Some(x), Some(y), deadline)? {
        Some(w) => witnesses.push((None, w)),
        None => covered = false,
    }
    if covered {
        for v in 0..n {
            if v == a {
                continue;
            }
            let (hd, relabel) = h.delete_vertex(v);
            let map = |u: usize| relabel.old_to_new[u];
            let w = path_to_either(&hd, map(a).unwrap(), map(x), map(y), deadline)?;
            match w {
                Some(mut wit) => {
                    for u in wit.order.iter_mut() {
                        *u = relabel.new_to_old[*u];
                    }
                    witnesses.push((Some(v), wit));
                }
                None => {
                    covered = false;
                    break;
                }
            }
        }
    }

    let class = if !covered {
        FragmentClass::NotWeak
    } else if hamilton::hamiltonian_path_between_within(h, x, y, deadline)?.is_some() {
        FragmentClass::Weak
    } else {
        let mut strong = true;
        for v in 0..n {
            if v == a || v == x || v == y {
                continue;
            }
            let (hd, relabel) = h.delete_vertex(v);
            let hx = relabel.old_to_new[x].unwrap();
            let hy = relabel.old_to_new[y].unwrap();
            if hamilton::hamiltonian_path_between_within(&hd, hx, hy, deadline)?.is_some() {
                strong = false;
                break;
            }
        }
        if strong {
            FragmentClass::Strong
        } else {
            FragmentClass::Medium
        }
    };

    Ok(FragmentSpec { h: h.clone(), a, x, y, class, witnesses })
}

/// Hamiltonian path from `a` to `x` or `y` (either endpoint may be absent
/// after a deletion).
fn path_to_either(
    h: &Graph,
    a: usize,
    x: Option<usize>,
    y: Option<usize>,
    deadline: Deadline,
) -> Result<Option<PathWitness>, Timeout> {
    for t in [x, y].into_iter().flatten() {
        if t != a {
            if let Some(w) = hamilton::hamiltonian_path_between_within(h, a, t, deadline)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// All triples `(a, x, y)` with `xy` an edge and `x < y` whose fragment
/// class reaches at least `want`.
pub fn find_fragment_roles(h: &Graph, want: FragmentClass) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (x, y) in h.edges() {
        for a in h.vertices() {
            if a == x || a == y {
                continue;
            }
            if let Ok(spec) = fragment_class(h, a, x, y) {
                if spec.class >= want {
                    out.push((a, x, y));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

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
    fn petersen_is_leaf_critical() {
        let c = classify_leaf_guaranteed(&petersen());
        assert_eq!(c.label, LeafLabel::LeafCritical(2));
    }

    #[test]
    fn k4_is_one_leaf_stable() {
        let c = classify_leaf_guaranteed(&Graph::complete(4));
        assert_eq!(c.label, LeafLabel::LeafStable(1));
    }

    #[test]
    fn cycles_are_not_leaf_guaranteed() {
        let c = classify_leaf_guaranteed(&Graph::cycle(5));
        assert_eq!(c.label, LeafLabel::NotLeafGuaranteed);
    }

    #[test]
    fn petersen_passes_the_structural_checks() {
        let r = verify_prop_lgg(&petersen()).unwrap();
        assert!(r.all_hold());
        assert!(r.never_leaf.is_empty());
    }

    #[test]
    fn verify_rejects_non_leaf_guaranteed_input() {
        assert_eq!(
            verify_prop_lgg(&Graph::cycle(6)).unwrap_err(),
            ClassifyError::NotLeafGuaranteed
        );
    }

    #[test]
    fn tfc1_requires_two_leaf_stability() {
        assert_eq!(
            tfc1_certificate(&petersen()).unwrap_err(),
            ClassifyError::NotTwoLeafStable
        );
    }

    #[test]
    fn k3_is_weak_but_not_medium() {
        let spec = fragment_class(&Graph::complete(3), 0, 1, 2).unwrap();
        assert_eq!(spec.class, FragmentClass::Weak);
        // All three rotations are weak, none are medium.
        assert_eq!(find_fragment_roles(&Graph::complete(3), FragmentClass::Weak).len(), 3);
        assert!(find_fragment_roles(&Graph::complete(3), FragmentClass::Medium).is_empty());
    }

    #[test]
    fn fragment_preconditions() {
        let k3 = Graph::complete(3);
        assert!(matches!(
            fragment_class(&k3, 0, 0, 2),
            Err(ClassifyError::PreconditionViolated(_))
        ));
        let p3 = Graph::path(3);
        assert!(matches!(
            fragment_class(&p3, 1, 0, 2),
            Err(ClassifyError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn role_search_finds_the_labelled_triple() {
        let c = &crate::constructions::build_medium_fragments_fig6()[0];
        let (a, x, y) = (c.role("a"), c.role("x"), c.role("y"));
        let want = (a, x.min(y), x.max(y));
        let found = find_fragment_roles(&c.graph, FragmentClass::Medium);
        assert!(found.contains(&want), "{found:?} missing {want:?}");
    }

    #[test]
    fn fragment_witnesses_land_on_the_roles() {
        let spec = fragment_class(&Graph::complete(4), 0, 1, 2).unwrap();
        assert!(spec.class >= FragmentClass::Weak);
        for (deleted, w) in &spec.witnesses {
            let first = *w.order.first().unwrap();
            let last = *w.order.last().unwrap();
            assert!(first == 0 || last == 0);
            let other = if first == 0 { last } else { first };
            assert!(other == 1 || other == 2);
            if let Some(d) = deleted {
                assert!(!w.order.contains(d));
            }
        }
    }
}
