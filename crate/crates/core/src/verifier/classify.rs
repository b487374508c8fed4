use crate::action::{ActionSpec, OrbitPartition};
use crate::constructors::{alt, dihedral, permutation_group, q8_central_d8, sl2};
use crate::error::{Error, Result};
use crate::graph::{CommutingGraph, GraphShape};
use crate::group::{Element, FiniteGroup, QuotientGroup, Subgroup, IDENTITY};
use crate::iso::{find_isomorphism, DEFAULT_BUDGET};
use crate::structure::{
    fitting, frobenius_kernel, is_frobenius_with_kernel, is_power_of, is_quasisimple, layer, o_p,
    o_p_prime_of_nilpotent, p_part, pi, prime_divisors, subgroup_is_elementary_abelian, sylow,
};

use super::TheoremCase;

fn no_match(reason: impl Into<String>) -> Error {
    Error::NoBranchMatches(reason.into())
}

fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    Ok(find_isomorphism(a, b, DEFAULT_BUDGET)?.is_some())
}

/// Whether `set ∖ {1}` is exactly one orbit.
fn is_single_orbit(partition: &OrbitPartition, set: &Subgroup) -> bool {
    let Some(&x) = set.members().iter().find(|&&x| x != IDENTITY) else {
        return false;
    };
    let orbit = partition.orbit_containing(x);
    orbit.len() == set.order() - 1 && orbit.iter().all(|&y| set.contains(y))
}

/// Places `(G, A)` into the unique case whose clauses all verify.
///
/// Returns `NotApplicable` when the graph is not an F-graph or `G` has
/// fewer than two prime divisors, and `NoBranchMatches` when no case
/// verifies.
pub fn classify_theorem_case(
    g: &FiniteGroup,
    action: &ActionSpec,
    partition: &OrbitPartition,
    graph: &CommutingGraph,
    shape: &GraphShape,
) -> Result<TheoremCase> {
    if !shape.is_f_graph() {
        return Ok(TheoremCase::NotApplicable { reason: "the graph is not an F-graph".into() });
    }
    let primes = pi(g);
    if primes.len() < 2 {
        return Ok(TheoremCase::NotApplicable { reason: format!("|pi(G)| = {}", primes.len()) });
    }
    match graph.singular_vertex() {
        None => no_singular(g, partition, &primes),
        Some(v) => {
            let z = graph.vertices[v].rep;
            let z_orbit = partition.orbit_containing(z).to_vec();
            with_singular(g, action, partition, z, &z_orbit)
        }
    }
}

fn no_singular(g: &FiniteGroup, partition: &OrbitPartition, primes: &[usize]) -> Result<TheoremCase> {
    let [p, q] = primes else {
        return Err(no_match(format!("no singular vertex but |pi(G)| = {}", primes.len())));
    };
    let sp = sylow(g, *p);
    let sq = sylow(g, *q);
    for s in [&sp, &sq] {
        if !g.is_normal(s) || !subgroup_is_elementary_abelian(g, s) {
            return Err(no_match(format!("a Sylow subgroup of order {} is not normal elementary abelian", s.order())));
        }
    }
    if !g.is_abelian() {
        return Err(no_match("G is not P x Q"));
    }
    let nonidentity = partition.len() - 1;
    if nonidentity != 3 || !is_single_orbit(partition, &sp) || !is_single_orbit(partition, &sq) {
        return Err(no_match(format!("orbits are not P-1, Q-1 and the rest ({nonidentity} orbits)")));
    }
    Ok(TheoremCase::NoSingularPxQ { p: *p, q: *q, p_order: sp.order(), q_order: sq.order() })
}

fn with_singular(
    g: &FiniteGroup,
    action: &ActionSpec,
    partition: &OrbitPartition,
    z: Element,
    z_orbit: &[Element],
) -> Result<TheoremCase> {
    let p = g.element_order(z);
    if prime_divisors(p) != [p] {
        return Err(no_match(format!("singular representative has order {p}, not a prime")));
    }
    let op = o_p(g, p);
    let f = fitting(g);
    if op.is_trivial() {
        return case1(g, action, p, &f);
    }
    if op == f {
        let c = g.centralizer_of(&f);
        if c.is_subset_of(&f) {
            case2(g, partition, p, &f, z_orbit)
        } else {
            case3(g, p, &op, z_orbit)
        }
    } else {
        case4(g, partition, p, &op, &f)
    }
}

/// `H̄ / Ḡ` where `H = GA` acts on `F` by conjugation and the action maps.
pub(crate) fn hbar_over_gbar(g: &FiniteGroup, action: &ActionSpec, f: &Subgroup) -> Result<QuotientGroup> {
    let members = f.members();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in members.iter().enumerate() {
        pos[x] = i;
    }
    let restrict = |map: &dyn Fn(Element) -> Element| -> Result<Vec<u8>> {
        members
            .iter()
            .map(|&x| {
                let y = map(x);
                match pos[y] {
                    usize::MAX => Err(Error::BadAction("F(G) is not invariant".into())),
                    i => u8::try_from(i).map_err(|_| Error::OutOfRange("|F(G)| above 256".into())),
                }
            })
            .collect()
    };
    let mut inner = Vec::new();
    for &x in g.generators() {
        inner.push(restrict(&|y| g.conj(y, x))?);
    }
    let mut outer = Vec::new();
    for a in &action.generators {
        outer.push(restrict(&|y| a.apply(y))?);
    }
    let mut all = inner.clone();
    all.extend(outer);
    let h = permutation_group("Hbar", members.len(), &all)?;
    let gbar_gens: Vec<Element> = inner.iter().map(|p| h.index_of(p).expect("generator is an element")).collect();
    let gbar = h.group.closure(&gbar_gens);
    h.group.quotient(&gbar)
}

fn case1(g: &FiniteGroup, action: &ActionSpec, p: usize, f: &Subgroup) -> Result<TheoremCase> {
    if p != 2 {
        return Err(no_match(format!("O_p(G) = 1 with p = {p}")));
    }
    if !subgroup_is_elementary_abelian(g, f) {
        return Err(no_match("F(G) is not elementary abelian"));
    }
    let s = sylow(g, 2);
    if f.order() * s.order() != g.order() {
        return Err(no_match("G is not F(G)S"));
    }
    let (sg, _) = g.subgroup_as_group(&s, "S")?;
    let quotient = hbar_over_gbar(g, action, f)?;
    let h_over_g = quotient.quotient.order();
    if s.order() == 8 && isomorphic(&sg, &dihedral(8)?)? {
        let q = [3, 7].into_iter().find(|q| q * q == f.order());
        return match q {
            Some(q) if h_over_g == q - 1 => Ok(TheoremCase::Case1aD8 { q, fitting_order: f.order(), h_over_g }),
            Some(q) => Err(no_match(format!("|Hbar/Gbar| = {h_over_g}, expected {}", q - 1))),
            None => Err(no_match(format!("S = D8 but |F(G)| = {}", f.order()))),
        };
    }
    if s.order() == 32 && isomorphic(&sg, &q8_central_d8()?)? {
        if f.order() != 81 {
            return Err(no_match(format!("S = Q8*D8 but |F(G)| = {}", f.order())));
        }
        if h_over_g != 10 && h_over_g != 20 {
            return Err(no_match(format!("|Hbar/Gbar| = {h_over_g}, expected 10 or 20")));
        }
        let kernel = frobenius_kernel(&quotient.quotient)
            .ok_or_else(|| no_match(format!("Hbar/Gbar of order {h_over_g} is not a Frobenius group")))?;
        return Ok(TheoremCase::Case1bQ8D8 { fitting_order: f.order(), h_over_g, frobenius_kernel: kernel.order() });
    }
    Err(no_match(format!("Sylow 2-subgroup of order {} is neither D8 nor Q8*D8", s.order())))
}

fn case2(
    g: &FiniteGroup,
    partition: &OrbitPartition,
    p: usize,
    f: &Subgroup,
    z_orbit: &[Element],
) -> Result<TheoremCase> {
    let qg = g.quotient(f)?;
    let gbar = &qg.quotient;
    // (a): r-subgroup of prime order, complemented by a cyclic p-group
    for r in pi(gbar) {
        if p_part(gbar.order(), r) != r {
            continue;
        }
        let n = sylow(gbar, r);
        if !gbar.is_normal(&n) {
            continue;
        }
        let c = gbar.order() / r;
        if !(c == 1 || is_power_of(c, p) && (p * p) % c == 0) {
            continue;
        }
        let cyclic = c == 1 || gbar.elements().any(|x| gbar.element_order(x) == c);
        if !cyclic {
            continue;
        }
        if c == 1 || is_frobenius_with_kernel(gbar, &n)? {
            return Ok(TheoremCase::Case2a { p, normal_prime: r, complement_order: c });
        }
    }
    if gbar.order() == 60 && isomorphic(gbar, &alt(5)?)? {
        let z = g.center();
        let z_matches = z.order() == z_orbit.len() + 1 && z_orbit.iter().all(|&x| z.contains(x));
        if z_matches && f.order() != z.order() {
            return Ok(TheoremCase::Case2bSL24 { p });
        }
        let two_orbits = {
            let mut ids: Vec<usize> = f.members().iter().filter(|&&x| x != IDENTITY).map(|&x| partition.orbit_of[x]).collect();
            ids.sort_unstable();
            ids.dedup();
            ids.len() == 2
        };
        if p == 5 && subgroup_is_elementary_abelian(g, f) && two_orbits {
            return Ok(TheoremCase::Case2cSL24P5);
        }
        return Err(no_match("G/F(G) = SL(2,4) but neither subcase verifies"));
    }
    Err(no_match(format!("G/F(G) of order {} fits no subcase", gbar.order())))
}

fn case3(g: &FiniteGroup, p: usize, op: &Subgroup, z_orbit: &[Element]) -> Result<TheoremCase> {
    if is_quasisimple(g) {
        if g.order() == 120 && isomorphic(g, &sl2(5)?)? {
            return Ok(TheoremCase::Case3Quasisimple { name: "SL(2,5)".into() });
        }
        return Err(no_match(format!("quasisimple group of order {} is not SL(2,5)", g.order())));
    }
    let e = layer(g)?;
    let (eg, _) = g.subgroup_as_group(&e, "E(G)")?;
    if e.order() != 60 || !isomorphic(&eg, &alt(5)?)? {
        return Err(no_match(format!("E(G) of order {} is not PSL(2,5)", e.order())));
    }
    if !op.intersection(&e).is_trivial() || op.order() * e.order() != g.order() {
        return Err(no_match("G is not O_p(G) x E(G)"));
    }
    if g.closure(z_orbit) != *op {
        return Err(no_match("O_p(G) is not generated by the singular orbit"));
    }
    Ok(TheoremCase::Case3Product { p, op_order: op.order(), layer_order: e.order() })
}

fn case4(g: &FiniteGroup, partition: &OrbitPartition, p: usize, op: &Subgroup, f: &Subgroup) -> Result<TheoremCase> {
    if !subgroup_is_elementary_abelian(g, op) {
        return Err(no_match("O_p(G) is not elementary abelian"));
    }
    let q_sub = o_p_prime_of_nilpotent(g, f, p);
    let qs = prime_divisors(q_sub.order());
    let [q] = qs.as_slice() else {
        return Err(no_match(format!("O_p'(F(G)) has order {}", q_sub.order())));
    };
    let q = *q;
    if q_sub.order() != p_part(g.order(), q) || !subgroup_is_elementary_abelian(g, &q_sub) {
        return Err(no_match("O_p'(F(G)) is not an elementary abelian Sylow subgroup"));
    }
    if op.order() * q_sub.order() != f.order() {
        return Err(no_match("F(G) is not P x Q"));
    }
    let quotient = g.quotient(op)?;
    let kernel = quotient.image(f);
    if !is_frobenius_with_kernel(&quotient.quotient, &kernel)? {
        return Err(no_match("G/P is not Frobenius with kernel F(G)/P"));
    }
    let c = g.order() / f.order();
    let complement_ok = prime_divisors(c) == [c] || {
        let gp = &quotient.quotient;
        let s = sylow(gp, p);
        s.order() == c && s.members().iter().filter(|&&x| gp.element_order(x) == p).count() == p - 1
    };
    if !complement_ok {
        return Err(no_match(format!("Frobenius complement of order {c} is neither of prime order nor a p-group with a unique subgroup of order p")));
    }
    if !is_single_orbit(partition, op) || !is_single_orbit(partition, &q_sub) {
        return Err(no_match("P-1 or Q-1 is not a single orbit"));
    }
    Ok(TheoremCase::Case4Frobenius { p, q, p_order: op.order(), q_order: q_sub.order(), complement_order: c })
}
