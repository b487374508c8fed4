use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use orbitgraph::action::{full_aut, inner_action, orbit_partition, ActionSpec, Provenance};
use orbitgraph::constructors::{
    alt, cyclic, dihedral, elementary_abelian, extraspecial_p3_exp_p, frobenius_pair_entry, order12_group, psl2,
    quaternion8, sl2, sl2_realized, sym,
};
use orbitgraph::graph::{build_graph, build_graph_from_representatives, classify_shape, CommutingGraph, GraphShape, GraphSource, Vertex};
use orbitgraph::group::{Element, FiniteGroup};
use orbitgraph::iso::DEFAULT_BUDGET;
use orbitgraph::structure::{fitting, gk_graph, is_nilpotent, is_quasisimple, is_simple, normal_subgroups, o_p, pi};
use orbitgraph::verifier::analyze;

#[derive(Debug)]
struct Sample {
    group: FiniteGroup,
    aut: ActionSpec,
}

fn pool() -> &'static [Sample] {
    static POOL: OnceLock<Vec<Sample>> = OnceLock::new();
    POOL.get_or_init(|| {
        [
            cyclic(12).unwrap(),
            dihedral(12).unwrap(),
            quaternion8().unwrap(),
            sym(4).unwrap(),
            alt(5).unwrap(),
            sl2(3).unwrap(),
            extraspecial_p3_exp_p(3).unwrap(),
            elementary_abelian(2, 3).unwrap(),
            order12_group().unwrap().0,
        ]
        .into_iter()
        .map(|group| Sample { aut: full_aut(&group, DEFAULT_BUDGET).unwrap(), group })
        .collect()
    })
}

fn sample() -> impl Strategy<Value = &'static Sample> {
    (0..pool().len()).prop_map(|i| &pool()[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_order_divides_group_order(s in sample(), seeds in prop::collection::vec(any::<usize>(), 0..4)) {
        let g = &s.group;
        let gens: Vec<Element> = seeds.iter().map(|x| x % g.order()).collect();
        prop_assert_eq!(g.order() % g.closure(&gens).order(), 0);
    }

    #[test]
    fn orbits_do_not_depend_on_generator_order(s in sample(), shuffle in any::<u64>()) {
        let mut gens = s.aut.generators.clone();
        let n = gens.len();
        for i in (1..n).rev() {
            gens.swap(i, (shuffle as usize).wrapping_mul(i + 7) % (i + 1));
        }
        let shuffled = ActionSpec::new(&s.group, "shuffled", gens, Provenance::Explicit).unwrap();
        prop_assert_eq!(orbit_partition(&s.group, &s.aut).orbit_of, orbit_partition(&s.group, &shuffled).orbit_of);
    }

    #[test]
    fn sub_actions_refine_orbits(s in sample(), mask in any::<u32>()) {
        let subset: Vec<_> = s.aut.generators.iter().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, a)| a.clone()).collect();
        prop_assume!(!subset.is_empty());
        let sub = ActionSpec::new(&s.group, "sub", subset, Provenance::Explicit).unwrap();
        let fine = orbit_partition(&s.group, &sub);
        let coarse = orbit_partition(&s.group, &s.aut);
        for members in &fine.members {
            let id = coarse.orbit_of[members[0]];
            prop_assert!(members.iter().all(|&x| coarse.orbit_of[x] == id));
        }
    }

    #[test]
    fn random_graphs_classify_consistently(n in 1usize..9, bits in any::<u64>()) {
        let vertices: Vec<Vertex> = (0..n).map(|i| Vertex { id: i + 1, rep: i + 1, rep_label: String::new(), size: 1 }).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| bits >> (i % 64) & 1 == 1).map(|(_, &e)| e).collect();
        let graph = CommutingGraph::new(GraphSource::default(), vertices, edges.clone()).unwrap();
        let shape = classify_shape(&graph);
        let high = (0..n).filter(|&v| graph.degree(v) >= 3).count();
        prop_assert_eq!(shape.is_f_graph(), graph.is_connected() && high <= 1);
        let m = edges.len();
        match shape {
            GraphShape::Path { vertices } => prop_assert!(vertices == n && m + 1 == n),
            GraphShape::Cycle { vertices } => prop_assert!(vertices == n && m == n),
            GraphShape::Star { vertices } => prop_assert!(vertices == n && m + 1 == n && (0..n).any(|v| graph.degree(v) == n - 1)),
            GraphShape::Friendship { triangles } => prop_assert!(2 * triangles + 1 == n && m == 3 * triangles),
            GraphShape::FGraphWithSingular(d) => prop_assert!(high == 1 && d.triangles == graph.triangles().len()),
            GraphShape::NotFGraph { high_degree } => prop_assert!(high_degree.len() >= 2),
            GraphShape::NotConnected => prop_assert!(!graph.is_connected()),
        }
    }

    #[test]
    fn coprime_frobenius_pairs_give_triangles(i in 0usize..6) {
        let (p, n, q, m) = [(3, 1, 5, 1), (5, 1, 7, 1), (3, 2, 5, 1), (7, 1, 5, 1), (5, 1, 3, 1), (11, 1, 7, 1)][i];
        let entry = frobenius_pair_entry(p, n, q, m).unwrap();
        let a = analyze(&entry.group, &entry.actions[0]).unwrap();
        prop_assert_eq!(a.report.shape, GraphShape::Cycle { vertices: 3 });
    }
}

#[test]
fn audits_pass_for_the_pool() {
    for s in pool() {
        s.group.audit().unwrap();
    }
}

#[test]
fn quotients_and_classes() {
    for s in pool() {
        let g = &s.group;
        let classes = g.conjugacy_classes();
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
        assert!(classes.iter().all(|c| g.order() % c.len() == 0));
        for n in normal_subgroups(g) {
            let q = g.quotient(&n).unwrap();
            assert_eq!(q.quotient.order() * n.order(), g.order());
            for x in g.elements().step_by(3) {
                for y in g.elements().step_by(5) {
                    assert_eq!(q.coset_of[g.mul(x, y)], q.quotient.mul(q.coset_of[x], q.coset_of[y]));
                }
            }
        }
    }
}

#[test]
fn automorphism_generators_preserve_orders_and_classes() {
    for s in pool() {
        let g = &s.group;
        let orders = g.element_orders();
        let class = g.class_index();
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        for a in &s.aut.generators {
            for x in g.elements() {
                assert_eq!(orders[a.apply(x)], orders[x]);
                assert_eq!(sizes[class[a.apply(x)]], sizes[class[x]]);
            }
        }
    }
}

#[test]
fn edge_sweep_matches_representative_scan() {
    for s in pool() {
        for action in [inner_action(&s.group), s.aut.clone()] {
            let p = orbit_partition(&s.group, &action);
            let full = build_graph(&s.group, &p, &action.name);
            let reps = build_graph_from_representatives(&s.group, &p, &action.name);
            assert_eq!(full.edges, reps.edges, "{}", s.group.name());
        }
    }
}

#[test]
fn analysis_is_deterministic() {
    for s in pool() {
        let a = analyze(&s.group, &s.aut).unwrap().report.to_json();
        let b = analyze(&s.group, &s.aut).unwrap().report.to_json();
        assert_eq!(a, b);
    }
}

#[test]
fn o_p_is_largest_normal_p_subgroup() {
    for s in pool() {
        let g = &s.group;
        let normals = normal_subgroups(g);
        let f = fitting(g);
        for p in pi(g) {
            let op = o_p(g, p);
            assert!(g.is_normal(&op));
            for n in normals.iter().filter(|n| orbitgraph::structure::is_power_of(n.order(), p) || n.order() == 1) {
                assert!(n.is_subset_of(&op), "{} O_{p}", g.name());
            }
            assert!(op.is_subset_of(&f));
        }
        let (fg, _) = g.subgroup_as_group(&f, "F").unwrap();
        assert!(is_nilpotent(&fg));
    }
}

#[test]
fn prime_graph_matches_element_orders() {
    for s in pool() {
        let g = &s.group;
        let orders: BTreeSet<usize> = g.element_orders().into_iter().collect();
        let gk = gk_graph(g);
        for (i, &p) in gk.primes.iter().enumerate() {
            for &q in &gk.primes[i + 1..] {
                let edge = gk.edges.contains(&(p, q)) || gk.edges.contains(&(q, p));
                assert_eq!(edge, orders.iter().any(|o| o % (p * q) == 0), "{} {p}-{q}", g.name());
            }
        }
    }
}

#[test]
fn special_linear_groups() {
    for q in [5, 7, 9] {
        assert!(is_quasisimple(&sl2(q).unwrap()), "SL(2,{q})");
        let (f, real) = sl2_realized(q).unwrap();
        assert!(real.elements.iter().all(|m| f.mat_det(m) == f.one()));
    }
    for q in [4, 5, 7, 9] {
        assert!(is_simple(&psl2(q).unwrap()), "PSL(2,{q})");
    }
}
