use std::collections::{BTreeSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::action::{ActionSpec, OrbitPartition};
use crate::graph::{classify_shape, CommutingGraph, GraphShape};
use crate::group::{Element, FiniteGroup, Subgroup, IDENTITY};
use crate::structure::{exponent_of, gk_graph, is_power_of, pi, sylow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    /// Passed on a sample of the cases rather than all of them.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecklistItem {
    pub item: String,
    pub status: CheckStatus,
    pub detail: String,
}

/// Orbit-union subsets enumerated in full up to this many vertices.
const MAX_EXHAUSTIVE_VERTICES: usize = 12;
const SAMPLE_SUBSETS: usize = 1 << 12;

fn item(name: &str, ok: bool, fail_detail: impl FnOnce() -> String) -> ChecklistItem {
    ChecklistItem {
        item: name.into(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: if ok { String::new() } else { fail_detail() },
    }
}

const ITEMS: [&str; 10] = ["a", "b", "c", "f", "g", "h", "i", "j", "l", "m"];

/// Consequences of having an F-graph with singular vertex `z^A` and
/// `|π(G)| ≥ 2`, each checked by direct computation:
///
/// - (a) `|z|` is a prime `p`;
/// - (b) the components of `Γ − z^A` are paths attached at pendant vertices;
/// - (c) adjacent orbits of coprime orders have prime orders and one is `z^A`;
/// - (f) a Sylow `p`-subgroup has exponent dividing `p³`;
/// - (g) for `q ≠ p`, each `x ≠ 1` in `Ω₁(Z(Q))` is adjacent to `z^A`,
///   `Q ∖ 1 ⊆ x^A` and `exp(Q) = q`;
/// - (h) every `A`-invariant `H` contains all or none of the Sylow
///   `q`-subgroups for `q ≠ p`, so `(|H|, [G:H])` is a power of `p`;
/// - (i) the prime graph is a star centred at `p`;
/// - (j) `z^A` is a normal subset;
/// - (l) pendant vertices are within distance 2 of `z^A`;
/// - (m) every cycle passes through `z^A` and has length at most 4.
pub fn singular_vertex_checklist(
    g: &FiniteGroup,
    _action: &ActionSpec,
    partition: &OrbitPartition,
    graph: &CommutingGraph,
) -> Vec<ChecklistItem> {
    let shape = classify_shape(graph);
    let singular = graph.singular_vertex().filter(|_| shape.is_f_graph());
    let (Some(zv), true) = (singular, pi(g).len() >= 2) else {
        return ITEMS
            .iter()
            .map(|&i| ChecklistItem {
                item: i.into(),
                status: CheckStatus::NotApplicable,
                detail: "needs an F-graph with singular vertex and |pi(G)| >= 2".into(),
            })
            .collect();
    };
    let z = graph.vertices[zv].rep;
    let z_orbit_id = graph.vertices[zv].id;
    let p = g.element_order(z);
    let orders: Vec<usize> = graph.vertices.iter().map(|v| g.element_order(v.rep)).collect();
    let is_prime = |n: usize| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
    let mut out = Vec::new();

    out.push(item("a", is_prime(p), || format!("|z| = {p}")));

    let b_ok = matches!(shape, GraphShape::FGraphWithSingular(_) | GraphShape::Star { .. } | GraphShape::Friendship { .. });
    out.push(item("b", b_ok, || format!("shape {shape:?}")));

    let mut c_fail = None;
    for &(u, v) in &graph.edges {
        let (a, b) = (orders[u], orders[v]);
        if gcd(a, b) == 1 && !(is_prime(a) && is_prime(b) && (u == zv || v == zv)) {
            c_fail = Some(format!("orbits {u} (order {a}) and {v} (order {b})"));
            break;
        }
    }
    out.push(item("c", c_fail.is_none(), || c_fail.clone().unwrap_or_default()));

    let sp = sylow(g, p);
    let exp_p = exponent_of(g, &sp);
    out.push(item("f", (p * p * p) % exp_p == 0, || format!("exponent of a Sylow {p}-subgroup is {exp_p}")));

    let mut g_fail = None;
    for q in pi(g).into_iter().filter(|&q| q != p) {
        let sq = sylow(g, q);
        let exp_q = exponent_of(g, &sq);
        if exp_q != q {
            g_fail = Some(format!("exp(Q) = {exp_q} for q = {q}"));
            break;
        }
        let centre: Vec<Element> =
            sq.members().iter().copied().filter(|&x| sq.members().iter().all(|&y| g.commutes(x, y))).collect();
        for x in centre.into_iter().filter(|&x| g.element_order(x) == q) {
            let xv = graph.vertex_of_orbit(partition.orbit_of[x]).expect("nonidentity orbit");
            let orbit = partition.orbit_containing(x);
            if !graph.adjacent(xv, zv) {
                g_fail = Some(format!("{} is not adjacent to z", g.label(x)));
            } else if !sq.members().iter().all(|&y| y == IDENTITY || orbit.binary_search(&y).is_ok()) {
                g_fail = Some(format!("Q - 1 is not inside the orbit of {}", g.label(x)));
            }
            if g_fail.is_some() {
                break;
            }
        }
        if g_fail.is_some() {
            break;
        }
    }
    out.push(item("g", g_fail.is_none(), || g_fail.clone().unwrap_or_default()));

    out.push(invariant_subgroups_item(g, partition, graph, p));

    let gk = gk_graph(g);
    out.push(item("i", gk.is_star_at(p), || format!("prime graph edges {:?}", gk.edges)));

    let z_orbit = partition.orbit_containing(z);
    let normal = g.generators().iter().all(|&x| z_orbit.iter().all(|&y| partition.orbit_of[g.conj(y, x)] == z_orbit_id));
    out.push(item("j", normal, || "z^A is not closed under conjugation".into()));

    let dist = distances(graph, zv);
    let far: Vec<usize> = (0..graph.vertex_count()).filter(|&v| graph.degree(v) == 1 && dist[v] > 2).collect();
    out.push(item("l", far.is_empty(), || format!("pendant vertices {far:?} are farther than 2")));

    let m_ok = match &shape {
        GraphShape::FGraphWithSingular(d) => d.cycles.iter().all(|&c| c <= 4),
        GraphShape::Star { .. } | GraphShape::Friendship { .. } => true,
        _ => false,
    };
    out.push(item("m", m_ok, || format!("shape {shape:?}")));
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn distances(graph: &CommutingGraph, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; graph.vertex_count()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in graph.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Item (h) over the subgroups generated by unions of orbits; every
/// `A`-invariant subgroup is one of these.
fn invariant_subgroups_item(g: &FiniteGroup, partition: &OrbitPartition, graph: &CommutingGraph, p: usize) -> ChecklistItem {
    let n = graph.vertex_count();
    // generators of the subgroup generated by each orbit
    let orbit_gens: Vec<Vec<Element>> = graph
        .vertices
        .iter()
        .map(|v| g.subgroup_generators(&g.closure(&partition.members[v.id])))
        .collect();
    let masks: Vec<u64> = if n <= MAX_EXHAUSTIVE_VERTICES {
        (1..1u64 << n).collect()
    } else {
        let mut rng = StdRng::seed_from_u64(0);
        (0..SAMPLE_SUBSETS).map(|_| rng.gen::<u64>() & ((1u64 << n.min(63)) - 1)).filter(|&m| m != 0).collect()
    };
    let sylows: Vec<(usize, Vec<Subgroup>)> = pi(g).into_iter().filter(|&q| q != p).map(|q| (q, sylow_class(g, q))).collect();
    let mut seen = BTreeSet::new();
    for mask in masks {
        let gens: Vec<Element> = (0..n).filter(|&i| mask >> i & 1 == 1).flat_map(|i| orbit_gens[i].iter().copied()).collect();
        let h: Subgroup = g.closure(&gens);
        if !seen.insert(h.members().to_vec()) {
            continue;
        }
        for (q, class) in &sylows {
            if let Some(s) = class.iter().find(|s| !s.is_subset_of(&h) && !s.intersection(&h).is_trivial()) {
                return item("h", false, || {
                    format!("invariant subgroup of order {} meets a Sylow {q}-subgroup in {} elements", h.order(), s.intersection(&h).order())
                });
            }
        }
        let d = gcd(h.order(), g.order() / h.order());
        if !is_power_of(d, p) {
            return item("h", false, || format!("invariant subgroup of order {} has gcd(|H|, [G:H]) = {d}", h.order()));
        }
    }
    let status = if n <= MAX_EXHAUSTIVE_VERTICES { CheckStatus::Pass } else { CheckStatus::Sampled };
    ChecklistItem { item: "h".into(), status, detail: format!("{} invariant subgroups checked", seen.len()) }
}

/// All Sylow `q`-subgroups, as the conjugates of one of them.
fn sylow_class(g: &FiniteGroup, q: usize) -> Vec<Subgroup> {
    let s = sylow(g, q);
    let mut out: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let c = g.conjugate_subgroup(&s, x);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}
