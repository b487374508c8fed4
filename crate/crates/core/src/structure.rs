//! Subgroup structure: Sylow and Fitting subgroups, series, prime graphs,
//! p-group invariants.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::action::ActionSpec;
use crate::constructors::is_prime;
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Subgroup, IDENTITY};

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_prime_power(n: usize) -> bool {
    n > 1 && prime_divisors(n).len() == 1
}

/// π(G).
pub fn pi(g: &FiniteGroup) -> Vec<usize> {
    prime_divisors(g.order())
}

/// The prime `p` when `g` is a nontrivial `p`-group.
pub fn p_group_prime(g: &FiniteGroup) -> Option<usize> {
    match pi(g).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

fn is_p_power_order(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}

/// A Sylow `p`-subgroup, built deterministically: start from the cyclic
/// group of a `p`-element of largest order and adjoin `p`-elements of the
/// normaliser until the `p`-part of `|G|` is reached.
pub fn sylow(g: &FiniteGroup, p: usize) -> Subgroup {
    let target = p_part(g.order(), p);
    let orders = g.element_orders();
    let start = g
        .elements()
        .filter(|&x| is_p_power_order(orders[x], p))
        .max_by_key(|&x| (orders[x], std::cmp::Reverse(x)))
        .unwrap_or(IDENTITY);
    let mut current = g.closure(&[start]);
    while current.order() < target {
        let n = g.normalizer(&current);
        let x = n
            .members()
            .iter()
            .copied()
            .find(|&x| !current.contains(x) && is_p_power_order(orders[x], p))
            .expect("a non-Sylow p-subgroup has a p-element in its normaliser outside it");
        let mut gens = g.subgroup_generators(&current);
        gens.push(x);
        current = g.closure(&gens);
    }
    current
}

/// Core of a subgroup: the intersection of all its conjugates.
pub fn core(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut acc = h.clone();
    let mut seen = BTreeSet::new();
    for x in g.elements() {
        let c = g.conjugate_subgroup(h, x);
        if seen.insert(c.members().to_vec()) {
            acc = acc.intersection(&c);
            if acc.is_trivial() {
                break;
            }
        }
    }
    acc
}

/// `O_p(G)`: the largest normal `p`-subgroup.
pub fn o_p(g: &FiniteGroup, p: usize) -> Subgroup {
    if g.order() % p != 0 {
        return g.trivial_subgroup();
    }
    core(g, &sylow(g, p))
}

/// Product of two normal subgroups.
fn product(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    g.join(a, b)
}

/// `F(G)`, the product of all `O_p(G)`.
pub fn fitting(g: &FiniteGroup) -> Subgroup {
    pi(g).into_iter().fold(g.trivial_subgroup(), |acc, p| product(g, &acc, &o_p(g, p)))
}

/// `O_{p'}(H)` for a nilpotent normal subgroup `H`: the product of its
/// Sylow subgroups for primes other than `p`.
pub fn o_p_prime_of_nilpotent(g: &FiniteGroup, h: &Subgroup, p: usize) -> Subgroup {
    let members: Vec<Element> = h.members().iter().copied().filter(|&x| g.element_order(x) % p != 0).collect();
    g.closure(&members)
}

pub fn is_eppo(g: &FiniteGroup) -> bool {
    g.element_orders().into_iter().all(|o| o == 1 || is_prime_power(o))
}

/// Grünberg–Kegel graph: vertices π(G), edge `p–q` iff some element has
/// order divisible by `pq` (equivalently, some element has order exactly `pq`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeGraph {
    pub primes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl PrimeGraph {
    /// Whether the graph is `K_{1,n}` centred at `centre`.
    pub fn is_star_at(&self, centre: usize) -> bool {
        let expected: Vec<(usize, usize)> = self
            .primes
            .iter()
            .filter(|&&r| r != centre)
            .map(|&r| (r.min(centre), r.max(centre)))
            .collect();
        self.primes.contains(&centre) && self.edges == expected
    }
}

pub fn gk_graph(g: &FiniteGroup) -> PrimeGraph {
    let primes = pi(g);
    let orders: BTreeSet<usize> = g.element_orders().into_iter().collect();
    let mut edges = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if orders.iter().any(|o| o % (p * q) == 0) {
                edges.push((p, q));
            }
        }
    }
    PrimeGraph { primes, edges }
}

/// Whether `g` is a Frobenius group with kernel `k`: every element outside
/// `k` centralises only the identity of `k`.
pub fn is_frobenius_with_kernel(g: &FiniteGroup, k: &Subgroup) -> Result<bool> {
    if !g.is_normal(k) || k.is_trivial() || k.order() == g.order() {
        return Err(Error::BadKernel(format!("kernel of order {} in a group of order {}", k.order(), g.order())));
    }
    for x in g.elements().filter(|&x| !k.contains(x)) {
        if k.members().iter().any(|&y| y != IDENTITY && g.commutes(x, y)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some Frobenius kernel of `g`, searched among its normal subgroups.
pub fn frobenius_kernel(g: &FiniteGroup) -> Option<Subgroup> {
    normal_subgroups(g)
        .into_iter()
        .filter(|k| !k.is_trivial() && k.order() < g.order())
        .find(|k| is_frobenius_with_kernel(g, k).unwrap_or(false))
}

pub fn derived_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![g.whole()];
    loop {
        let last = series.last().expect("series is nonempty");
        let next = g.commutator_subgroup(last, last);
        if next == *last {
            break;
        }
        let trivial = next.is_trivial();
        series.push(next);
        if trivial {
            break;
        }
    }
    series
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g).last().is_some_and(Subgroup::is_trivial)
}

pub fn is_perfect(g: &FiniteGroup) -> bool {
    g.derived_subgroup().order() == g.order()
}

/// Simple: nontrivial, and every nontrivial class has normal closure `G`.
pub fn is_simple(g: &FiniteGroup) -> bool {
    g.order() > 1
        && g.conjugacy_classes()
            .iter()
            .filter(|c| c[0] != IDENTITY)
            .all(|c| g.normal_closure(&c[..1]).order() == g.order())
}

pub fn is_quasisimple(g: &FiniteGroup) -> bool {
    if !is_perfect(g) || g.order() == 1 {
        return false;
    }
    let z = g.center();
    match g.quotient(&z) {
        Ok(q) => is_simple(&q.quotient),
        Err(_) => false,
    }
}

/// `Z(G) = Z_1 ≤ Z_2 ≤ …` up to the hypercentre.
pub fn upper_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![g.center()];
    loop {
        let last = series.last().expect("series is nonempty");
        let q = g.quotient(last).expect("terms are normal");
        let next = q.preimage(&q.quotient.center());
        if next == *last {
            break;
        }
        series.push(next);
    }
    series
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    upper_central_series(g).last().is_some_and(|z| z.order() == g.order())
}

fn require_p_group(g: &FiniteGroup) -> Result<usize> {
    p_group_prime(g).ok_or(Error::NotAPGroup { order: g.order() })
}

/// `Ω₁(P)`, generated by the elements of order `p`.
pub fn omega1(g: &FiniteGroup) -> Result<Subgroup> {
    let p = require_p_group(g)?;
    let orders = g.element_orders();
    let gens: Vec<Element> = g.elements().filter(|&x| orders[x] == p).collect();
    Ok(g.closure(&gens))
}

/// `℧¹(P)`, generated by the `p`-th powers.
pub fn agemo1(g: &FiniteGroup) -> Result<Subgroup> {
    let p = require_p_group(g)?;
    let gens: Vec<Element> = g.elements().map(|x| g.pow(x, p as u64)).collect();
    Ok(g.closure(&gens))
}

/// `Φ(P) = P′·℧¹(P)`.
pub fn frattini_p(g: &FiniteGroup) -> Result<Subgroup> {
    let mho = agemo1(g)?;
    Ok(g.join(&g.derived_subgroup(), &mho))
}

fn is_elementary_abelian_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    let primes = prime_divisors(h.order());
    if primes.len() != 1 {
        return h.is_trivial();
    }
    let p = primes[0];
    h.members().iter().all(|&x| g.element_order(x) <= p && h.members().iter().all(|&y| g.commutes(x, y)))
}

pub fn is_elementary_abelian(g: &FiniteGroup) -> bool {
    is_elementary_abelian_subgroup(g, &g.whole())
}

/// Whether `h` (a subgroup of `g`) is elementary abelian.
pub fn subgroup_is_elementary_abelian(g: &FiniteGroup, h: &Subgroup) -> bool {
    is_elementary_abelian_subgroup(g, h)
}

/// Special: `Z(P) = P′ = Φ(P)` is elementary abelian (and `P` nonabelian).
pub fn is_special_p(g: &FiniteGroup) -> Result<bool> {
    let phi = frattini_p(g)?;
    let z = g.center();
    let d = g.derived_subgroup();
    Ok(!g.is_abelian() && z == d && d == phi && is_elementary_abelian_subgroup(g, &z))
}

pub fn is_extraspecial(g: &FiniteGroup) -> Result<bool> {
    let p = require_p_group(g)?;
    Ok(is_special_p(g)? && g.center().order() == p)
}

pub fn exponent(g: &FiniteGroup) -> usize {
    g.element_orders().into_iter().fold(1, lcm)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn exponent_of(g: &FiniteGroup, h: &Subgroup) -> usize {
    h.members().iter().map(|&x| g.element_order(x)).fold(1, lcm)
}

/// Every normal subgroup, found as joins of normal closures of classes.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let closures: Vec<Subgroup> = g.conjugacy_classes().iter().map(|c| g.normal_closure(&c[..1])).collect();
    let mut found: BTreeMap<Vec<Element>, Subgroup> = BTreeMap::new();
    for c in &closures {
        found.insert(c.members().to_vec(), c.clone());
    }
    let mut frontier: Vec<Subgroup> = found.values().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &closures {
                if c.is_subset_of(a) {
                    continue;
                }
                let j = g.join(a, c);
                if !found.contains_key(j.members()) {
                    found.insert(j.members().to_vec(), j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = found.into_values().collect();
    out.sort_by_key(|h| (h.order(), h.members().to_vec()));
    out
}

/// Last term of the derived series.
pub fn solvable_residual(g: &FiniteGroup) -> Subgroup {
    derived_series(g).pop().expect("series is nonempty")
}

/// Layer `E(G)`, the product of the components.
///
/// Computed as the solvable residual of `C_G(F(G))`. Components centralise
/// `F(G)`, so `E(G)` lies in that residual; a strictly larger residual would
/// need a nonsolvable group permuting at least five components, which cannot
/// happen below order `60^5`.
pub fn layer(g: &FiniteGroup) -> Result<Subgroup> {
    if g.order() >= 60usize.pow(5) {
        return Err(Error::OutOfRange("layer computation needs |G| < 60^5".into()));
    }
    let c = g.centralizer_of(&fitting(g));
    let (cg, emb) = g.subgroup_as_group(&c, "C_G(F)")?;
    let residual = solvable_residual(&cg);
    let members: Vec<Element> = residual.members().iter().map(|&x| emb[x]).collect();
    g.subgroup_from_members(&members)
}

/// `[P, A]`, generated by the `x⁻¹ x^a` for `x ∈ P`, `a` a generator of `A`.
pub fn commutator_with_action(g: &FiniteGroup, action: &ActionSpec) -> Subgroup {
    let mut gens = Vec::new();
    for a in &action.generators {
        for x in g.elements() {
            let c = g.mul(g.inv(x), a.apply(x));
            if c != IDENTITY {
                gens.push(c);
            }
        }
    }
    g.closure(&gens)
}

/// Fixed points `C_G(a)` of one automorphism.
pub fn fixed_points(g: &FiniteGroup, a: &crate::action::Automorphism) -> Subgroup {
    let members: Vec<Element> = g.elements().filter(|&x| a.apply(x) == x).collect();
    g.subgroup_from_members(&members).expect("fixed points form a subgroup")
}

/// For a noncyclic elementary abelian `A` acting coprimely on `G`, checks
/// that the fixed-point subgroups of the nontrivial elements of `A`
/// generate `G`.
pub fn coprime_facts_check(g: &FiniteGroup, action: &ActionSpec) -> Result<bool> {
    let perm = action.induced_permutation_group()?;
    let a = &perm.group;
    if a.order() == 1 {
        return Err(Error::HypothesisViolated("A acts trivially".into()));
    }
    if gcd(a.order(), g.order()) != 1 {
        return Err(Error::HypothesisViolated(format!("|A| = {} is not coprime to |G| = {}", a.order(), g.order())));
    }
    if !is_elementary_abelian(a) {
        return Err(Error::HypothesisViolated("A is not elementary abelian".into()));
    }
    let p = prime_divisors(a.order())[0];
    if a.order() == p {
        return Err(Error::HypothesisViolated("A is cyclic".into()));
    }
    let mut gens = Vec::new();
    for i in 1..a.order() {
        let image: Vec<Element> = perm.element(i).iter().map(|&x| x as usize).collect();
        let auto = crate::action::Automorphism::new(g, image)?;
        gens.extend_from_slice(fixed_points(g, &auto).members());
    }
    Ok(g.closure(&gens).order() == g.order())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFlags {
    pub abelian: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub perfect: bool,
    pub simple: bool,
    pub quasisimple: bool,
    pub eppo: bool,
}

/// Orders of the standard subgroups; subgroups themselves are recomputed on
/// demand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: usize,
    pub pi: Vec<usize>,
    pub exponent: usize,
    pub center: usize,
    pub derived_series: Vec<usize>,
    pub upper_central_series: Vec<usize>,
    pub sylow: BTreeMap<usize, usize>,
    pub o_p: BTreeMap<usize, usize>,
    pub fitting: usize,
    /// `None` when the layer is not computed.
    pub layer: Option<usize>,
    pub gk_graph: PrimeGraph,
    pub flags: StructureFlags,
}

pub fn structure_report(g: &FiniteGroup) -> StructureReport {
    let primes = pi(g);
    let derived: Vec<usize> = derived_series(g).iter().map(Subgroup::order).collect();
    let upper: Vec<usize> = upper_central_series(g).iter().map(Subgroup::order).collect();
    let solvable = derived.last() == Some(&1);
    let nilpotent = upper.last() == Some(&g.order());
    let perfect = derived.len() == 1;
    let simple = is_simple(g);
    StructureReport {
        order: g.order(),
        exponent: exponent(g),
        center: g.center().order(),
        sylow: primes.iter().map(|&p| (p, p_part(g.order(), p))).collect(),
        o_p: primes.iter().map(|&p| (p, o_p(g, p).order())).collect(),
        fitting: fitting(g).order(),
        layer: if solvable { Some(1) } else { layer(g).ok().map(|l| l.order()) },
        gk_graph: gk_graph(g),
        flags: StructureFlags {
            abelian: g.is_abelian(),
            nilpotent,
            solvable,
            perfect,
            simple,
            quasisimple: is_quasisimple(g),
            eppo: is_eppo(g),
        },
        derived_series: derived,
        upper_central_series: upper,
        pi: primes,
    }
}

/// `p` is prime and `n` a power of it.
pub fn is_power_of(n: usize, p: usize) -> bool {
    is_prime(p as u64) && p_part(n, p) == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{alt, cyclic, dihedral, extraspecial_p3_exp_p, quaternion8, sl2, sym};

    #[test]
    fn sylow_orders() {
        let g = sl2(5).unwrap();
        let s = sylow(&g, 2);
        assert_eq!(s.order(), 8);
        assert_eq!(s.members().iter().filter(|&&x| g.element_order(x) == 2).count(), 1);
        assert_eq!(sylow(&cyclic(6).unwrap(), 3).order(), 3);
        assert_eq!(sylow(&sym(5).unwrap(), 2).order(), 8);
    }

    #[test]
    fn o_p_and_fitting() {
        let g = sl2(5).unwrap();
        assert_eq!(o_p(&g, 2), g.center());
        let a5 = alt(5).unwrap();
        assert!(o_p(&a5, 2).is_trivial());
        assert!(fitting(&a5).is_trivial());
        let s4 = sym(4).unwrap();
        assert_eq!(o_p(&s4, 2).order(), 4);
        assert_eq!(fitting(&dihedral(8).unwrap()).order(), 8);
    }

    #[test]
    fn eppo_and_prime_graph() {
        assert!(is_eppo(&alt(5).unwrap()));
        assert!(is_eppo(&sym(4).unwrap()));
        assert!(!is_eppo(&cyclic(6).unwrap()));
        assert_eq!(gk_graph(&cyclic(6).unwrap()).edges, vec![(2, 3)]);
        assert!(gk_graph(&alt(5).unwrap()).edges.is_empty());
    }

    #[test]
    fn frobenius_kernels() {
        let s3 = sym(3).unwrap();
        let k = sylow(&s3, 3);
        assert!(is_frobenius_with_kernel(&s3, &k).unwrap());
        let z6 = cyclic(6).unwrap();
        assert!(!is_frobenius_with_kernel(&z6, &sylow(&z6, 3)).unwrap());
        assert!(matches!(is_frobenius_with_kernel(&z6, &z6.whole()), Err(Error::BadKernel(_))));
        assert_eq!(frobenius_kernel(&alt(4).unwrap()).unwrap().order(), 4);
    }

    #[test]
    fn simplicity_flags() {
        assert!(is_simple(&alt(5).unwrap()));
        assert!(!is_simple(&sl2(5).unwrap()));
        assert!(is_quasisimple(&sl2(5).unwrap()));
        assert!(!is_perfect(&sym(4).unwrap()));
        assert!(is_solvable(&sym(4).unwrap()));
        assert!(!is_solvable(&alt(5).unwrap()));
    }

    #[test]
    fn p_group_invariants() {
        let e = extraspecial_p3_exp_p(3).unwrap();
        assert!(is_extraspecial(&e).unwrap());
        let z9 = cyclic(9).unwrap();
        assert_eq!(omega1(&z9).unwrap().order(), 3);
        assert_eq!(agemo1(&z9).unwrap().order(), 3);
        let q8 = quaternion8().unwrap();
        assert!(is_extraspecial(&q8).unwrap());
        assert_eq!(frattini_p(&q8).unwrap().order(), 2);
        assert!(matches!(omega1(&cyclic(6).unwrap()), Err(Error::NotAPGroup { order: 6 })));
        assert_eq!(upper_central_series(&dihedral(16).unwrap()).iter().map(Subgroup::order).collect::<Vec<_>>(), vec![2, 4, 16]);
    }

    #[test]
    fn layer_of_small_groups() {
        assert_eq!(layer(&sl2(5).unwrap()).unwrap().order(), 120);
        assert_eq!(layer(&sym(5).unwrap()).unwrap().order(), 60);
        assert!(layer(&sym(4).unwrap()).unwrap().is_trivial());
        let g = cyclic(7).unwrap().direct_product(&alt(5).unwrap()).unwrap();
        assert_eq!(layer(&g).unwrap().order(), 60);
    }

    #[test]
    fn normal_subgroup_lattice() {
        let orders: Vec<usize> = normal_subgroups(&sym(4).unwrap()).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(normal_subgroups(&alt(5).unwrap()).len(), 2);
    }
}
