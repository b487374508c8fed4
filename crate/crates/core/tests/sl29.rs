//! SL(2,9) under automorphisms, checked against an explicit model of
//! PΓL(2,9): conjugation by GL(2,9) together with the Frobenius map.

use orbitgraph::action::{full_aut, orbit_partition, ActionSpec, Automorphism, Provenance};
use orbitgraph::constructors::{sl2_realized, GaloisField, Matrix};
use orbitgraph::graph::{build_graph, classify_shape, GraphShape};
use orbitgraph::group::{FiniteGroup, Realization};
use orbitgraph::verifier::{analyze, refute_by_aut_clique, refute_by_clique, CaseOutcome};

fn frobenius(f: &GaloisField, m: &Matrix) -> Matrix {
    let mut out = m.clone();
    for i in 0..m.n() {
        for j in 0..m.n() {
            out.set(i, j, f.pow(m.get(i, j), 3));
        }
    }
    out
}

fn map(real: &Realization<Matrix>, h: impl Fn(&Matrix) -> Matrix) -> Automorphism {
    let images = real.elements.iter().map(|x| real.index_of(&h(x)).expect("image lies in SL(2,9)")).collect();
    Automorphism::new(&real.group, images).unwrap()
}

/// Inner automorphisms plus the field automorphism, and optionally the
/// diagonal automorphism `diag(nu, 1)`.
fn model(with_diagonal: bool) -> (FiniteGroup, ActionSpec) {
    let (f, real) = sl2_realized(9).unwrap();
    let g = real.group.clone();
    let mut gens: Vec<Automorphism> = g.generators().iter().map(|&x| Automorphism::inner(&g, x)).collect();
    gens.push(map(&real, |x| frobenius(&f, x)));
    if with_diagonal {
        let mut d = f.mat_identity(2);
        d.set(0, 0, f.primitive());
        gens.push(map(&real, |x| f.mat_conj(x, &d)));
    }
    let name = if with_diagonal { "PGammaL" } else { "Inn.field" };
    let action = ActionSpec::new(&g, name, gens, Provenance::Explicit).unwrap();
    (g, action)
}

#[test]
fn explicit_model_has_the_orbits_of_the_searched_automorphism_group() {
    let (g, model_action) = model(true);
    assert_eq!(model_action.induced_order(&g, 100_000).unwrap(), 1440);
    let searched = full_aut(&g, 2_000_000).unwrap();
    assert_eq!(orbit_partition(&g, &searched).orbit_of, orbit_partition(&g, &model_action).orbit_of);
}

#[test]
fn full_automorphism_group_gives_a_friendship_graph() {
    let (g, action) = model(true);
    let partition = orbit_partition(&g, &action);
    let graph = build_graph(&g, &partition, &action.name);
    assert_eq!(classify_shape(&graph), GraphShape::Friendship { triangles: 3 });
    let mut sizes = partition.sizes()[1..].to_vec();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 80, 80, 90, 144, 144, 180]);
    assert!(refute_by_clique(&g, &action).unwrap().is_none());
    assert!(refute_by_aut_clique(&g, 2_000_000).unwrap().is_none());
}

#[test]
fn no_structural_case_matches() {
    let (g, action) = model(true);
    let report = analyze(&g, &action).unwrap().report;
    assert!(matches!(report.theorem_case, CaseOutcome::NoBranchMatches { .. }), "{:?}", report.theorem_case);
}

#[test]
fn clique_argument_holds_without_the_diagonal_automorphism() {
    let (g, action) = model(false);
    assert_eq!(action.induced_order(&g, 100_000).unwrap(), 720);
    let w = refute_by_clique(&g, &action).unwrap().expect("a K4 among the orbits");
    let mut orders = w.orders.clone();
    orders.sort_unstable();
    assert!(orders.contains(&2) && orders.contains(&3));
    for (i, &x) in w.elements.iter().enumerate() {
        for &y in &w.elements[i + 1..] {
            assert!(g.commutes(x, y));
        }
    }
}
