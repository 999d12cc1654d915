//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Criteria marked `#[ignore]` form the extended tier (long-running
//! exhaustive reproductions); run them with
//! `cargo test --test acceptance -- --ignored`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leafcost::checks;
use leafcost::classify::{self, FragmentClass, LeafLabel};
use leafcost::constructions as cons;
use leafcost::faultcost::{self, transition_cost};
use leafcost::graph::{Graph, VertexSet};
use leafcost::mlst::{self, DegreeProfile, MlNumber};
use leafcost::oracle::{self, GraphClassFilter};

fn pass(criterion: &str) {
    println!("criterion {criterion}: PASS");
}

fn survey(n: usize) -> BTreeMap<u32, usize> {
    checks::survey_counts(n, &GraphClassFilter::two_connected())
}

fn assert_counts(n: usize, expected: &[(u32, usize)]) {
    let got = survey(n);
    let want: BTreeMap<u32, usize> = expected.iter().copied().collect();
    assert_eq!(got, want, "fault cost counts for n={n}");
}

#[test]
fn criterion_01_table1_row_n7() {
    assert_counts(7, &[(0, 116), (2, 341), (4, 11)]);
    assert_eq!(survey(7).values().sum::<usize>(), 468);
    pass("1 (2-connected counts, n=7: 116/341/11)");
}

#[test]
fn criterion_02_table1_rows_n3_to_n6() {
    assert_counts(3, &[(2, 1)]);
    assert_counts(4, &[(0, 1), (2, 2)]);
    assert_counts(5, &[(0, 3), (2, 7)]);
    assert_counts(6, &[(0, 13), (2, 43)]);
    pass("2 (2-connected counts, n=3..6)");
}

#[test]
#[ignore = "extended tier: full scan of the 8-vertex catalogue"]
fn criterion_03_table1_row_n8() {
    assert_counts(8, &[(0, 2009), (2, 5016), (3, 6), (4, 92)]);
    pass("3 (2-connected counts, n=8: 2009/5016/6/92)");
}

#[test]
fn criterion_04_table2_cubic_rows() {
    let cubic = GraphClassFilter::cubic_two_connected();
    let expected: [(usize, &[(u32, usize)]); 5] = [
        (4, &[(0, 1)]),
        (6, &[(0, 1), (2, 1)]),
        (8, &[(0, 2), (2, 3)]),
        (10, &[(0, 6), (2, 12)]),
        (12, &[(0, 27), (2, 54)]),
    ];
    for (n, rows) in expected {
        let got = checks::survey_counts(n, &cubic);
        let want: BTreeMap<u32, usize> = rows.iter().copied().collect();
        assert_eq!(got, want, "cubic counts for n={n}");
    }
    pass("4 (cubic counts, n=4..12)");
}

#[test]
fn criterion_05_smallest_orders_and_exemplars() {
    // Exhaustive minimality up to order 7: no fault cost 0 below order 4,
    // none of 3 below order 8, none of 4 below order 7; order 3 attains 2.
    let by_order: Vec<BTreeMap<u32, usize>> = (3..=7).map(survey).collect();
    let first_order_with = |phi: u32| -> Option<usize> {
        by_order
            .iter()
            .enumerate()
            .find(|(_, m)| m.contains_key(&phi))
            .map(|(i, _)| i + 3)
    };
    assert_eq!(first_order_with(0), Some(4));
    assert_eq!(first_order_with(2), Some(3));
    assert_eq!(first_order_with(3), None); // nothing below order 8
    assert_eq!(first_order_with(4), Some(7));
    assert_eq!(first_order_with(1), None);

    // The exemplar catalogue pins the attained values, including the
    // existence half of phi_3 = 8 and the higher spot checks.
    let exemplars = cons::min_fault_cost_exemplars();
    let expected_orders: BTreeMap<u32, usize> =
        [(0, 4), (2, 3), (3, 8), (4, 7), (5, 11), (6, 10), (7, 11), (8, 13)].into();
    for (phi, g) in &exemplars {
        assert_eq!(g.n(), expected_orders[phi], "exemplar order for phi={phi}");
        let got = faultcost::fault_cost(g).unwrap().phi;
        assert_eq!(got, *phi, "exemplar fault cost at order {}", g.n());
    }
    pass("5 (smallest orders 4/3/8/7 and exemplar spot checks 5@11, 6@10, 7@11, 8@13)");
}

#[test]
fn criterion_06_theta_family_laws() {
    for m in 3..=8usize {
        let c = cons::build_gm(m).unwrap();
        let want = if m % 2 == 1 { m + 1 } else { m + 2 };
        let got = faultcost::fault_cost(&c.graph).unwrap().phi as usize;
        assert_eq!(got, want, "phi(G_{m})");
    }
    for m in 5..=8usize {
        let c = cons::build_hm(m).unwrap();
        let want = if m % 2 == 1 { m - 2 } else { m - 1 };
        let got = faultcost::fault_cost(&c.graph).unwrap().phi as usize;
        assert_eq!(got, want, "phi(H_{m})");
    }
    pass("6 (phi(G_m) = m+1/m+2 for m=3..8; phi(H_m) = m-2/m-1 for m=5..8)");
}

#[test]
fn criterion_07_cubic_fault_cost_3_family() {
    // Component conditions first, then the rings. The ring on k Type-2
    // links has order 10 + 6k (cubic graphs have even order, so k = 2, 3
    // give 22 and 28).
    assert!(checks::type1_conditions_hold(&cons::build_type1_fig4()));
    assert!(checks::type2_conditions_hold(&cons::build_type2_fig4()));
    assert!(checks::type2_extra_condition_holds(&cons::build_type2_fig4()));
    for (k, order) in [(2usize, 22usize), (3, 28)] {
        let c = cons::build_cubic_fc3(k).unwrap();
        assert_eq!(c.graph.n(), order);
        assert!(c.graph.is_regular(3));
        let got = faultcost::fault_cost(&c.graph).unwrap().phi;
        assert_eq!(got, 3, "phi of the ring with k={k}");
    }
    pass("7 (cubic rings k=2,3 have fault cost 3)");
}

#[test]
fn criterion_08_embedding_theorems() {
    let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]);
    for g in [Graph::complete(2), two_k2, Graph::path(3)] {
        let h = cons::embed_1_leaf_guaranteed(&g).unwrap();
        assert!(leafcost::hamilton::is_1_hamiltonian(&h.graph), "wheel over {g:?}");
        assert_induced(&g, &h);
    }
    // Gadget embedding of K2: k = 3, order 7k = 21, minimum leaf number 3,
    // 3-leaf-guaranteed.
    let h2 = cons::embed_k_leaf_guaranteed(&Graph::complete(2)).unwrap();
    assert_eq!(h2.graph.n(), 21);
    assert_induced(&Graph::complete(2), &h2);
    let class = classify::classify_leaf_guaranteed(&h2.graph);
    assert_eq!(class.ml, MlNumber::Finite(3));
    assert!(class.is_leaf_guaranteed(), "gadget graph is 3-leaf-guaranteed");
    pass("8 (wheel embeddings 1-hamiltonian and induced; gadget embedding of K2: order 21, ml 3, 3-leaf-guaranteed)");
}

fn assert_induced(g: &Graph, h: &cons::LabelledConstruction) {
    let map: Vec<usize> = g.vertices().map(|w| h.role(&format!("g{w}"))).collect();
    for u in g.vertices() {
        for v in g.vertices() {
            if u < v {
                assert_eq!(
                    g.has_edge(u, v),
                    h.graph.has_edge(map[u], map[v]),
                    "induced copy differs at ({u},{v})"
                );
            }
        }
    }
}

#[test]
fn criterion_09_fragment_pipeline() {
    for c in cons::build_weak_fragments_fig5() {
        let spec = classify::fragment_class(&c.graph, c.role("a"), c.role("x"), c.role("y")).unwrap();
        assert!(spec.class >= FragmentClass::Weak);
    }
    for c in cons::build_medium_fragments_fig6() {
        let spec = classify::fragment_class(&c.graph, c.role("a"), c.role("x"), c.role("y")).unwrap();
        assert!(spec.class >= FragmentClass::Medium);
    }
    let fig7 = cons::build_tfc1_fig7();
    for c in &fig7 {
        assert_eq!(faultcost::fault_cost(&c.graph).unwrap().phi, 1);
        let cert = classify::tfc1_certificate(&c.graph).unwrap();
        assert!(cert.is_some(), "tfc1 certificate on the glued fixture");
    }

    // Splitting the first gluing at the neighbours of a1 yields a triangle
    // and a 19-vertex fragment; the latter must certify Strong.
    let g = &fig7[0].graph;
    let a1 = fig7[0].role("a1");
    let feet = VertexSet(g.nbrs(a1));
    assert_eq!(feet.len(), 2);
    let frags = g.fragments_of(feet).unwrap();
    assert_eq!(frags.len(), 2);
    let mut sizes: Vec<usize> = frags.iter().map(|(f, _)| f.n()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![3, 19]);
    let (big, relabel) = frags.iter().find(|(f, _)| f.n() == 19).unwrap();
    let a2 = relabel.old_to_new[fig7[0].role("a2")].unwrap();
    let pair: Vec<usize> = feet.iter().map(|v| relabel.old_to_new[v].unwrap()).collect();
    let spec = classify::fragment_class(big, a2, pair[0], pair[1]).unwrap();
    assert_eq!(spec.class, FragmentClass::Strong);
    pass("9 (weak/medium fixtures certify; gluings reach fault cost 1; split fragment certifies Strong)");
}

#[test]
fn criterion_10_smallest_two_leaf_guaranteed_graph() {
    let candidates = cons::find_xi9_candidates();
    assert!(!candidates.is_empty(), "search must find minimal graphs");
    for g in candidates {
        assert_eq!(g.n(), 9);
    }
    let xi9 = cons::find_xi9().graph;
    let report = faultcost::fault_cost(&xi9).unwrap();
    assert_eq!(report.phi, 2);

    // Reproduce the worked transition-cost table up to relabelling: some
    // minimum-leaf subgraph S sees per-vertex minima {1,1,2,2,2,2,2,4,4},
    // its worst case is 4, and a cost-1 vertex offers replacement costs
    // {1,3,3,3}; some other pairing achieves cost 0.
    let profile = mlst::ml_profile(&xi9).unwrap();
    let mut deleted: Vec<Vec<DegreeProfile>> = Vec::new();
    for v in xi9.vertices() {
        let (h, relabel) = xi9.delete_vertex(v);
        let sub = mlst::ml_profile(&h).unwrap();
        deleted.push(
            sub.profiles
                .iter()
                .map(|p| p.reindexed(&relabel.new_to_old, xi9.n(), v))
                .collect(),
        );
    }
    let mut found_worked_example = false;
    let mut found_zero = false;
    for s in &profile.profiles {
        let rows: Vec<Vec<u32>> = deleted
            .iter()
            .map(|opts| {
                let mut costs: Vec<u32> = opts.iter().map(|sv| transition_cost(s, sv)).collect();
                costs.sort_unstable();
                costs
            })
            .collect();
        let mut mins: Vec<u32> = rows.iter().map(|r| r[0]).collect();
        found_zero |= mins.contains(&0);
        let phi_s = *mins.iter().max().unwrap();
        let cheap_row = rows.iter().any(|r| *r == vec![1, 3, 3, 3]);
        mins.sort_unstable();
        if mins == vec![1, 1, 2, 2, 2, 2, 2, 4, 4] && phi_s == 4 && cheap_row {
            found_worked_example = true;
        }
    }
    assert!(found_worked_example, "worked transition-cost table reproduced");
    assert!(found_zero, "a zero-cost replacement pair exists");
    pass("10 (smallest 2-leaf-guaranteed graph: order 9, fault cost 2, worked table reproduced)");
}

#[test]
fn criterion_11_oracle_equivalence() {
    // Exhaustive tier, n <= 7, plus the per-graph law bundle.
    let mut failed: Vec<String> = Vec::new();
    checks::run_default_tier(&mut |name, ok| {
        if !ok {
            failed.push(name.to_string());
        }
    });
    assert!(failed.is_empty(), "default checks failed: {failed:?}");

    // 1000 pseudorandom 2-connected graphs on 8..10 vertices.
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c656166);
    let mut done = 0usize;
    while done < 1000 {
        let n = 8 + done % 3;
        let p = rng.random_range(0.25..0.45);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g = g.add_edge(u, v);
                }
            }
        }
        if !g.is_two_connected() {
            continue;
        }
        let fast = mlst::ml_profile(&g).unwrap();
        let brute = oracle::brute_ml_profile(&g).unwrap();
        assert_eq!(fast.ml, brute.ml, "{g:?}");
        assert_eq!(fast.profiles, brute.profiles, "{g:?}");
        let fast_fc = faultcost::fault_cost(&g).unwrap();
        let brute_fc = oracle::brute_fault_cost(&g).unwrap();
        assert_eq!(fast_fc.phi, brute_fc.phi, "{g:?}");

        // Law bundle on the random corpus.
        assert_eq!(fast_fc.phi == 0, leafcost::hamilton::is_1_hamiltonian(&g), "{g:?}");
        let ml = fast.ml;
        let delta = g.max_degree() as u32;
        let mut all_le_ml = true;
        for v in g.vertices() {
            let (h, _) = g.delete_vertex(v);
            let MlNumber::Finite(d) = mlst::ml_number(&h) else {
                panic!("deleting one vertex of a 2-connected graph keeps it connected")
            };
            assert!(ml.saturating_sub(1) <= d && d <= ml + delta, "{g:?}");
            all_le_ml &= d <= ml;
            if all_le_ml {
                assert!(d == ml || d + 1 == ml, "{g:?}: two-value law");
            }
        }
        if ml >= 2 {
            assert!(ml <= oracle::independence_number(&g), "{g:?}");
        }
        done += 1;
    }
    pass("11 (oracle equivalence: exhaustive n<=7, 1000 random n=8..10, law bundle)");
}

#[test]
fn criterion_12_excluded_scopes_stay_guarded() {
    // Orders beyond the desk-scale guards are rejected rather than half
    // supported; the planar and girth-restricted table rows need externally
    // supplied streams.
    assert!(oracle::generate_nonisomorphic(9, &GraphClassFilter::two_connected()).is_err());
    assert!(oracle::generate_nonisomorphic(14, &GraphClassFilter::cubic_two_connected()).is_err());
    pass("12 (out-of-scope reproductions are explicit guard errors)");
}

// ---------------------------------------------------------------------------
// Corroborating structural results used by the criteria above
// ---------------------------------------------------------------------------

#[test]
fn petersen_chain_is_2_leaf_guaranteed_with_protected_hub() {
    let c = cons::build_petersen_gk(2).unwrap();
    let class = classify::classify_leaf_guaranteed(&c.graph);
    assert_eq!(class.label, LeafLabel::LeafStable(2));
    let report = classify::verify_prop_lgg(&c.graph).unwrap();
    assert!(report.all_hold());
    // The identified vertex x is a leaf in no minimum-leaf subgraph.
    assert!(report.never_leaf.contains(c.role("x")));
}

#[test]
fn bipartite_fixture_is_2_leaf_stable_without_certificate() {
    let c = cons::build_bipartite12();
    let class = classify::classify_leaf_guaranteed(&c.graph);
    assert_eq!(class.label, LeafLabel::LeafStable(2));
    assert!(classify::verify_prop_lgg(&c.graph).unwrap().all_hold());
    // Fault cost 1 is impossible at order 12; the certificate search agrees.
    assert_eq!(classify::tfc1_certificate(&c.graph).unwrap(), None);
    let phi = faultcost::fault_cost(&c.graph).unwrap().phi;
    assert_ne!(phi, 1);
    assert_eq!(phi, 2);
}

#[test]
fn gadget_vertex_deletions_stay_coverable() {
    assert!(checks::xi8_properties_hold(&cons::build_xi8()));
}

#[test]
fn glued_fixtures_satisfy_the_separator_claims() {
    let fig7 = cons::build_tfc1_fig7();

    // Claim bundle on the second gluing: the advertised non-adjacent
    // separator, and closing it keeps fault cost 1.
    let c = &fig7[1];
    let sep = cons::fig7_nonadjacent_separator(c);
    assert!(c.graph.two_separators().contains(&sep));
    let pair: Vec<usize> = sep.iter().collect();
    assert!(!c.graph.has_edge(pair[0], pair[1]));
    let closed = c.graph.add_edge(pair[0], pair[1]);
    assert_eq!(faultcost::fault_cost(&closed).unwrap().phi, 1);

    for c in &fig7 {
        // At most two vertices of degree 2 in a tfc1 graph.
        let deg2 = c.graph.vertices().filter(|&v| c.graph.degree(v) == 2).count();
        assert!(deg2 <= 2);

        // Certificate endpoints avoid every separator, each separator splits
        // into exactly two fragments holding one endpoint each, and each
        // fragment covers its endpoint against deletions.
        let (a1, a2) = classify::tfc1_certificate(&c.graph).unwrap().unwrap();
        for sep in c.graph.two_separators() {
            assert!(!sep.contains(a1) && !sep.contains(a2));
            let frags = c.graph.fragments_of(sep).unwrap();
            assert_eq!(frags.len(), 2);
            let holds_one = |f: &(Graph, leafcost::graph::Relabel)| {
                let in1 = f.1.old_to_new[a1].is_some();
                let in2 = f.1.old_to_new[a2].is_some();
                in1 != in2
            };
            assert!(frags.iter().all(holds_one));

            // Claim-3-style coverage when the separator is an edge.
            let pair: Vec<usize> = sep.iter().collect();
            if !c.graph.has_edge(pair[0], pair[1]) {
                continue;
            }
            for (f, relabel) in &frags {
                let a = [a1, a2]
                    .into_iter()
                    .find_map(|a| relabel.old_to_new[a])
                    .expect("each fragment holds one endpoint");
                let fx = relabel.old_to_new[pair[0]].unwrap();
                let fy = relabel.old_to_new[pair[1]].unwrap();
                let spec = classify::fragment_class(f, a, fx, fy).unwrap();
                assert!(spec.class >= FragmentClass::Weak);
            }
        }
    }
}

#[test]
fn extension_lemma_holds_on_the_fixtures() {
    // Extending medium fragment 1 reproduces fragment 3 exactly, and the
    // glue of the pair reproduces the second tfc1 fixture.
    let frags = cons::build_medium_fragments_fig6();
    let spec1 = classify::fragment_class(
        &frags[0].graph,
        frags[0].role("a"),
        frags[0].role("x"),
        frags[0].role("y"),
    )
    .unwrap();
    let extended = cons::extend_fragment(&spec1).unwrap();
    assert!(extended.class >= spec1.class);
    assert_eq!(extended.h, frags[2].graph);
    // ... and gluing against the extension is the same as using the
    // pre-built extended fixture.
    let via_extension = cons::LabelledConstruction {
        graph: extended.h.clone(),
        roles: frags[2].roles.clone(),
    };
    assert_eq!(
        cons::glue(&frags[0], &via_extension).unwrap().graph,
        cons::build_tfc1_fig7()[1].graph
    );

    // Weak fixtures extend without losing their class either.
    for c in cons::build_weak_fragments_fig5() {
        let spec =
            classify::fragment_class(&c.graph, c.role("a"), c.role("x"), c.role("y")).unwrap();
        let ext = cons::extend_fragment(&spec).unwrap();
        assert!(ext.class >= spec.class);
        let again = cons::extend_fragment(&ext).unwrap();
        assert!(again.class >= ext.class);
    }
}

#[test]
#[ignore = "extended tier: brute-force agreement and censuses beyond order 7"]
fn extended_tier_checks() {
    let mut failed: Vec<String> = Vec::new();
    checks::run_extended_tier(&mut |name, ok| {
        if !ok {
            failed.push(name.to_string());
        }
    });
    assert!(failed.is_empty(), "extended checks failed: {failed:?}");
    pass("extended tier (n=8 agreement and counts, cubic <= 12, chain k=3)");
}
