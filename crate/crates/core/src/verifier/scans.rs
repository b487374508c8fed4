use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::action::{full_aut, inner_action, inner_action_by, orbit_partition, ActionSpec};
use crate::constructors::{sym, CatalogEntry};
use crate::error::Result;
use crate::graph::{classic_commuting_graph, classify_shape, CommutingPairs, GraphShape};
use crate::group::{Element, FiniteGroup, Subgroup, IDENTITY};
use crate::iso::{find_isomorphism, DEFAULT_BUDGET};
use crate::structure::{
    is_special_p, omega1, p_group_prime, p_part, pi, sylow, upper_central_series,
};

use super::Analysis;

/// Four pairwise commuting nonidentity elements in four distinct orbits of
/// the full automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    pub elements: Vec<Element>,
    pub labels: Vec<String>,
    pub orders: Vec<usize>,
    pub orbits: Vec<usize>,
    pub method: String,
}

/// Looks for a `K4` in `Γ(G, Aut(G))`. See [`refute_by_clique`].
pub fn refute_by_aut_clique(g: &FiniteGroup, budget: u64) -> Result<Option<CliqueWitness>> {
    refute_by_clique(g, &full_aut(g, budget)?)
}

/// Looks for a `K4` in `Γ(G, A)`. Subgroups of `A` only refine orbits, so a
/// witness shows that no subgroup of `A` makes the graph an F-graph: four
/// mutually adjacent vertices all have degree at least 3.
pub fn refute_by_clique(g: &FiniteGroup, action: &ActionSpec) -> Result<Option<CliqueWitness>> {
    let partition = orbit_partition(g, action);
    let orbit = |x: Element| partition.orbit_of[x];
    let witness = |elements: Vec<Element>, method: &str| CliqueWitness {
        labels: elements.iter().map(|&x| g.label(x).to_string()).collect(),
        orders: elements.iter().map(|&x| g.element_order(x)).collect(),
        orbits: elements.iter().map(|&x| orbit(x)).collect(),
        elements,
        method: method.into(),
    };
    // t, t², t³, t⁴ for some element t of order at least 5
    for &t in &partition.reps {
        if g.element_order(t) < 5 {
            continue;
        }
        let powers: Vec<Element> = (1..=4).map(|k| g.pow(t, k)).collect();
        let ids: HashSet<usize> = powers.iter().map(|&x| orbit(x)).collect();
        if ids.len() == 4 {
            return Ok(Some(witness(powers, "cyclic powers")));
        }
    }
    for &x in &partition.reps {
        if x == IDENTITY {
            continue;
        }
        let cands: Vec<Element> = g
            .centralizer(&[x])
            .members()
            .iter()
            .copied()
            .filter(|&y| y != IDENTITY && orbit(y) != orbit(x))
            .collect();
        for (i, &y) in cands.iter().enumerate() {
            for (j, &z) in cands.iter().enumerate().skip(i + 1) {
                if orbit(z) == orbit(y) || !g.commutes(y, z) {
                    continue;
                }
                for &w in &cands[j + 1..] {
                    let ow = orbit(w);
                    if ow != orbit(y) && ow != orbit(z) && g.commutes(y, w) && g.commutes(z, w) {
                        return Ok(Some(witness(vec![x, y, z, w], "search")));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub corollary: String,
    pub subject: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub results: Vec<ScanResult>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    fn push(&mut self, corollary: &str, subject: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.results.push(ScanResult { corollary: corollary.into(), subject: subject.into(), pass, detail: detail.into() });
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Runs the corollary scans over catalog groups and already computed
/// analyses (`analyses[i].0` indexes `entries`).
///
/// - C1: inner candidates `A` (cyclic subgroups of `Inn(G)`, `Inn(G)`, its
///   Sylow subgroups) giving an F-graph force `|Z(G)| = 2`, `G/Z(G) ≅ S3`
///   and `A` containing a Sylow 2-subgroup of `Inn(G)`.
/// - C2: the commuting graph on `G ∖ Z(G)` is never an F-graph.
/// - C3: acyclic F-graphs are stars; with at least 3 vertices `G` is a
///   `p`-group of one of two restricted kinds.
/// - C5: coprime actions give a `p`-group or a triangle.
pub fn corollary_scans(entries: &[CatalogEntry], analyses: &[(usize, Analysis)]) -> Result<CorollaryReport> {
    let mut report = CorollaryReport::default();
    let mut seen_groups = HashSet::new();
    for entry in entries {
        let g = &entry.group;
        if !seen_groups.insert(g.name().to_string()) || pi(g).len() < 2 {
            continue;
        }
        scan_inner_candidates(g, &mut report)?;
        if !g.is_abelian() {
            let shape = classify_shape(&classic_commuting_graph(g));
            report.push("C2", g.name(), !shape.is_f_graph(), shape.to_string());
        }
    }
    for (i, analysis) in analyses {
        let entry = &entries[*i];
        let r = &analysis.report;
        let subject = format!("{} / {}", entry.name, r.action);
        if r.shape.is_f_graph() && !analysis.graph.has_cycle() {
            let star = matches!(r.shape, GraphShape::Star { .. } | GraphShape::Path { vertices: 1..=3 });
            let mut detail = r.shape.to_string();
            let mut pass = star;
            if r.vertices >= 3 {
                match p_group_structure(&entry.group, analysis) {
                    Ok(d) => detail = format!("{detail}; {d}"),
                    Err(d) => {
                        pass = false;
                        detail = format!("{detail}; {d}");
                    }
                }
            }
            report.push("C3", subject.clone(), pass, detail);
        }
        if let Some(order) = r.action_order {
            if order > 1 && gcd(order, r.order) == 1 && r.shape.is_f_graph() {
                let ok = pi(&entry.group).len() == 1 || r.shape == GraphShape::Cycle { vertices: 3 };
                report.push("C5", subject, ok, format!("|A| = {order}, {}", r.shape));
            }
        }
    }
    Ok(report)
}

fn scan_inner_candidates(g: &FiniteGroup, report: &mut CorollaryReport) -> Result<()> {
    let pairs = CommutingPairs::new(g);
    let z = g.center();
    let inn_order = g.order() / z.order();
    let mut candidates: Vec<(String, Vec<Element>)> = Vec::new();
    let mut cyclic_seen = HashSet::new();
    for x in g.elements() {
        let c = g.closure(&[x]);
        let image = g.join(&c, &z);
        if cyclic_seen.insert(image.members().to_vec()) {
            candidates.push((format!("<c_{}>", g.label(x)), vec![x]));
        }
    }
    candidates.push(("Inn".into(), g.generators().to_vec()));
    for p in pi(g) {
        let s = sylow(g, p);
        candidates.push((format!("Sylow{p}(Inn)"), g.subgroup_generators(&s)));
    }
    let mut hits = 0;
    let mut partitions_seen = HashSet::new();
    for (name, elements) in candidates {
        let action: ActionSpec = if name == "Inn" { inner_action(g) } else { inner_action_by(g, &elements, name.clone()) };
        let partition = orbit_partition(g, &action);
        if !partitions_seen.insert(partition.orbit_of.clone()) {
            continue;
        }
        let graph = pairs.graph(g, &partition, &name);
        let shape = classify_shape(&graph);
        if !shape.is_f_graph() {
            continue;
        }
        hits += 1;
        let image: Subgroup = g.join(&g.closure(&elements), &z);
        let a_order = image.order() / z.order();
        let contains_sylow2 = p_part(a_order, 2) == p_part(inn_order, 2);
        let quotient_s3 = z.order() == 2 && {
            let q = g.quotient(&z)?.quotient;
            find_isomorphism(&q, &sym(3)?, DEFAULT_BUDGET)?.is_some()
        };
        report.push(
            "C1",
            format!("{} / {name}", g.name()),
            quotient_s3 && contains_sylow2,
            format!("{shape}, |Z| = {}, |A| = {a_order}", z.order()),
        );
    }
    if hits == 0 {
        report.push("C1", g.name(), true, "no inner candidate gives an F-graph");
    }
    Ok(())
}

/// The `p`-group structure forced by an acyclic F-graph on at least three
/// vertices. Returns a description, or the failing clause.
fn p_group_structure(g: &FiniteGroup, analysis: &Analysis) -> std::result::Result<String, String> {
    let Some(p) = p_group_prime(g) else {
        return Err("G is not a p-group".into());
    };
    if is_special_p(g).unwrap_or(false) {
        return Ok(format!("special {p}-group"));
    }
    let z = g.center();
    let upper = upper_central_series(g);
    let z2 = upper.get(1).cloned().unwrap_or_else(|| z.clone());
    let d = g.derived_subgroup();
    let (zg, _) = g.subgroup_as_group(&z, "Z").map_err(|e| e.to_string())?;
    let omega = omega1(&zg).map_err(|e| e.to_string())?;
    if omega.order() != zg.order() {
        return Err("Omega_1(Z(G)) < Z(G)".into());
    }
    if !(z.order() < d.order() && d == z2) {
        return Err(format!("|Z| = {}, |G'| = {}, |Z2| = {}", z.order(), d.order(), z2.order()));
    }
    if !g.commutator_subgroup(&d, &d).is_trivial() {
        return Err("G'' != 1".into());
    }
    for y in g.elements().filter(|&y| !z2.contains(y)) {
        if g.centralizer(&[y]).intersection(&z2) != z {
            return Err(format!("C_G({}) meets Z2(G) beyond Z(G)", g.label(y)));
        }
    }
    let mut orbits: Vec<usize> = z2.members().iter().filter(|&&x| x != IDENTITY).map(|&x| analysis.partition.orbit_of[x]).collect();
    orbits.sort_unstable();
    orbits.dedup();
    if orbits.len() != 2 {
        return Err(format!("Z2(G) - 1 meets {} orbits", orbits.len()));
    }
    Ok(format!("non-special {p}-group with G' = Z2(G)"))
}
