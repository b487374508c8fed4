//! Automorphism actions given by generator maps, and their orbits.
//!
//! The acting group is never enumerated: an [`ActionSpec`] is a list of
//! generator automorphisms, and orbits are the connected components of the
//! graph `x → φ(x)` over all generators `φ`.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Realization, Subgroup, DENSE_LIMIT, IDENTITY};
use crate::iso;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    image: Vec<Element>,
}

impl Automorphism {
    /// Validates `image` against `g` before wrapping it.
    pub fn new(g: &FiniteGroup, image: Vec<Element>) -> Result<Self> {
        let a = Automorphism { image };
        a.validate(g)?;
        Ok(a)
    }

    pub(crate) fn new_unchecked(image: Vec<Element>) -> Self {
        Automorphism { image }
    }

    pub fn identity(order: usize) -> Self {
        Automorphism { image: (0..order).collect() }
    }

    /// Conjugation `y ↦ x⁻¹ y x`.
    pub fn inner(g: &FiniteGroup, x: Element) -> Self {
        Automorphism { image: g.elements().map(|y| g.conj(y, x)).collect() }
    }

    /// The automorphism determined by generator images, if they extend to one.
    pub fn from_generator_images(g: &FiniteGroup, gens: &[Element], images: &[Element]) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::InvalidAutomorphism("generator/image count mismatch".into()));
        }
        let map = iso::extend_homomorphism(g, g, gens, images)
            .ok_or_else(|| Error::InvalidAutomorphism("images do not define a homomorphism".into()))?;
        let image = map
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidAutomorphism("listed elements do not generate the group".into()))?;
        Automorphism::new(g, image)
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.image[x]
    }

    pub fn images(&self) -> &[Element] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Automorphism { image }
    }

    /// Bijective, fixes the identity, and preserves products (all pairs up to
    /// the dense limit, `10·|G|` sampled pairs above it).
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let n = g.order();
        if self.image.len() != n {
            return Err(Error::InvalidAutomorphism(format!("image has {} entries, group has {n}", self.image.len())));
        }
        if self.image[IDENTITY] != IDENTITY {
            return Err(Error::InvalidAutomorphism("identity is not fixed".into()));
        }
        let mut seen = vec![false; n];
        for &y in &self.image {
            if y >= n || seen[y] {
                return Err(Error::InvalidAutomorphism("image is not a bijection".into()));
            }
            seen[y] = true;
        }
        let check = |a: Element, b: Element| {
            if self.image[g.mul(a, b)] != g.mul(self.image[a], self.image[b]) {
                Err(Error::InvalidAutomorphism(format!("product not preserved at ({a},{b})")))
            } else {
                Ok(())
            }
        };
        if n <= DENSE_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    check(a, b)?;
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0xa17 ^ n as u64);
            for _ in 0..10 * n {
                check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Inner,
    Overgroup,
    FullAut,
    Explicit,
}

#[derive(Clone, Debug)]
pub struct ActionSpec {
    pub name: String,
    pub generators: Vec<Automorphism>,
    pub provenance: Provenance,
}

impl ActionSpec {
    /// Validates every generator against `g`.
    pub fn new(g: &FiniteGroup, name: impl Into<String>, generators: Vec<Automorphism>, provenance: Provenance) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::BadAction("an action needs at least one generator".into()));
        }
        for a in &generators {
            a.validate(g)?;
        }
        Ok(ActionSpec { name: name.into(), generators, provenance })
    }

    /// The trivial action (a single identity generator).
    pub fn trivial(g: &FiniteGroup) -> Self {
        ActionSpec { name: "trivial".into(), generators: vec![Automorphism::identity(g.order())], provenance: Provenance::Explicit }
    }

    /// Action generated by the union of both generator lists.
    pub fn combine(&self, other: &ActionSpec, name: impl Into<String>) -> ActionSpec {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        ActionSpec { name: name.into(), generators, provenance: Provenance::Explicit }
    }

    /// Order of the permutation group the generators induce on the elements.
    pub fn induced_group_order(&self) -> Result<usize> {
        Ok(self.induced_permutation_group()?.group.order())
    }

    /// Order of the group the generators generate, counted without building
    /// it: an automorphism is determined by the images of `g.generators()`,
    /// so the closure runs over those image tuples. Fails above `limit`.
    pub fn induced_order(&self, g: &FiniteGroup, limit: usize) -> Result<usize> {
        let gens = g.generators();
        let start: Vec<Element> = gens.to_vec();
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for a in &self.generators {
                let next: Vec<Element> = t.iter().map(|&x| a.apply(x)).collect();
                if !seen.contains(&next) {
                    if seen.len() >= limit {
                        return Err(Error::ClosureTooLarge { limit });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.len())
    }

    pub fn induced_permutation_group(&self) -> Result<Realization<Vec<u32>>> {
        let n = self.generators[0].images().len();
        let perms: Vec<Vec<u32>> = self
            .generators
            .iter()
            .map(|a| a.images().iter().map(|&x| x as u32).collect())
            .collect();
        Realization::generate(
            format!("<{}>", self.name),
            (0..n as u32).collect::<Vec<u32>>(),
            &perms,
            |p: &Vec<u32>, q: &Vec<u32>| p.iter().map(|&x| q[x as usize]).collect(),
            |_| String::new(),
        )
    }
}

/// Conjugation by a generating set of `g`.
pub fn inner_action(g: &FiniteGroup) -> ActionSpec {
    let mut generators: Vec<Automorphism> = g.generators().iter().map(|&x| Automorphism::inner(g, x)).collect();
    if generators.is_empty() {
        generators.push(Automorphism::identity(g.order()));
    }
    ActionSpec { name: "inner".into(), generators, provenance: Provenance::Inner }
}

/// Conjugation by a list of elements of `g` (an inner action of the
/// subgroup they generate).
pub fn inner_action_by(g: &FiniteGroup, elements: &[Element], name: impl Into<String>) -> ActionSpec {
    let mut generators: Vec<Automorphism> = elements.iter().map(|&x| Automorphism::inner(g, x)).collect();
    if generators.is_empty() {
        generators.push(Automorphism::identity(g.order()));
    }
    ActionSpec { name: name.into(), generators, provenance: Provenance::Inner }
}

/// A normal subgroup realised as a group, with the conjugation action of the
/// overgroup's generators.
pub struct OvergroupRestriction {
    pub group: FiniteGroup,
    /// Index in the restricted group → index in the overgroup.
    pub embedding: Vec<Element>,
    pub action: ActionSpec,
}

/// Conjugation action of `h`'s generators on the normal subgroup `n`.
pub fn overgroup_action(h: &FiniteGroup, n: &Subgroup, name: impl Into<String>) -> Result<OvergroupRestriction> {
    if !h.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let (group, embedding) = h.subgroup_as_group(n, format!("N{}<{}", n.order(), h.name()))?;
    let mut back = vec![usize::MAX; h.order()];
    for (i, &x) in embedding.iter().enumerate() {
        back[x] = i;
    }
    let generators = h
        .generators()
        .iter()
        .map(|&g| Automorphism::new_unchecked(embedding.iter().map(|&x| back[h.conj(x, g)]).collect()))
        .collect();
    let action = ActionSpec::new(&group, name, generators, Provenance::Overgroup)?;
    Ok(OvergroupRestriction { group, embedding, action })
}

/// Conjugation action of concrete overgroup generators on a realised group.
/// `conj(x, h)` must return `h⁻¹ x h`. Fails with `NotNormal` when a
/// conjugate leaves the group.
pub fn overgroup_action_realized<T, C>(
    real: &Realization<T>,
    overgroup_gens: &[T],
    conj: C,
    name: impl Into<String>,
) -> Result<ActionSpec>
where
    T: Clone + Eq + Hash + Send + Sync + 'static,
    C: Fn(&T, &T) -> T,
{
    let mut generators = Vec::with_capacity(overgroup_gens.len());
    for h in overgroup_gens {
        let image = real
            .elements
            .iter()
            .map(|x| real.index_of(&conj(x, h)).ok_or(Error::NotNormal))
            .collect::<Result<Vec<_>>>()?;
        generators.push(Automorphism::new_unchecked(image));
    }
    ActionSpec::new(&real.group, name, generators, Provenance::Overgroup)
}

/// Every automorphism of `g`, found by backtracking.
pub fn full_aut(g: &FiniteGroup, budget: u64) -> Result<ActionSpec> {
    if g.order() > 1024 {
        return Err(Error::OutOfRange(format!("full_aut supports |G| <= 1024, got {}", g.order())));
    }
    let maps = iso::all_automorphisms(g, budget)?;
    let generators = maps.into_iter().map(Automorphism::new_unchecked).collect();
    Ok(ActionSpec { name: "full_aut".into(), generators, provenance: Provenance::FullAut })
}

/// Partition of the elements into orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Orbit id of every element; ids are ordered by minimal member, so the
    /// identity orbit is 0.
    pub orbit_of: Vec<usize>,
    pub reps: Vec<Element>,
    pub members: Vec<Vec<Element>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn orbit_containing(&self, x: Element) -> &[Element] {
        &self.members[self.orbit_of[x]]
    }

    fn from_labels(mut root: impl FnMut(usize) -> usize, n: usize) -> Self {
        let mut id_of_root = vec![usize::MAX; n];
        let mut orbit_of = vec![0; n];
        let mut reps = Vec::new();
        let mut members: Vec<Vec<Element>> = Vec::new();
        for x in 0..n {
            let r = root(x);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = reps.len();
                reps.push(x);
                members.push(Vec::new());
            }
            orbit_of[x] = id_of_root[r];
            members[id_of_root[r]].push(x);
        }
        OrbitPartition { orbit_of, reps, members }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

pub fn orbit_partition(g: &FiniteGroup, action: &ActionSpec) -> OrbitPartition {
    let n = g.order();
    let mut uf = UnionFind::new(n);
    for a in &action.generators {
        for x in 0..n {
            uf.union(x, a.apply(x));
        }
    }
    OrbitPartition::from_labels(|x| uf.find(x), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cyclic, quaternion8, sl2, sym};

    #[test]
    fn inner_action_of_abelian_group_is_trivial() {
        let z6 = cyclic(6).unwrap();
        assert!(inner_action(&z6).generators.iter().all(Automorphism::is_identity));
    }

    #[test]
    fn inner_orbits_of_s3_and_q8() {
        let s3 = sym(3).unwrap();
        let mut sizes = orbit_partition(&s3, &inner_action(&s3)).sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let q8 = quaternion8().unwrap();
        let mut sizes = orbit_partition(&q8, &inner_action(&q8)).sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn trivial_action_on_z3() {
        let z3 = cyclic(3).unwrap();
        let p = orbit_partition(&z3, &ActionSpec::trivial(&z3));
        assert_eq!(p.sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn full_aut_counts() {
        assert_eq!(full_aut(&cyclic(5).unwrap(), iso::DEFAULT_BUDGET).unwrap().generators.len(), 4);
        assert_eq!(full_aut(&quaternion8().unwrap(), iso::DEFAULT_BUDGET).unwrap().generators.len(), 24);
        assert_eq!(full_aut(&sl2(5).unwrap(), iso::DEFAULT_BUDGET).unwrap().generators.len(), 120);
    }

    #[test]
    fn invalid_maps_are_rejected() {
        let z4 = cyclic(4).unwrap();
        assert!(Automorphism::new(&z4, vec![1, 0, 2, 3]).is_err());
        assert!(Automorphism::new(&z4, vec![0, 0, 2, 3]).is_err());
        // x -> 2x is not injective on Z4
        let doubled: Vec<Element> = (0..4).map(|x| z4.pow(x, 2)).collect();
        assert!(Automorphism::new(&z4, doubled).is_err());
    }

    #[test]
    fn overgroup_of_itself_matches_inner() {
        let s3 = sym(3).unwrap();
        let r = overgroup_action(&s3, &s3.whole(), "self").unwrap();
        let a = orbit_partition(&r.group, &r.action);
        let b = orbit_partition(&s3, &inner_action(&s3));
        assert_eq!(a.orbit_of, b.orbit_of);
    }

    #[test]
    fn overgroup_requires_normality() {
        let s3 = sym(3).unwrap();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = s3.closure(&[t]);
        assert!(matches!(overgroup_action(&s3, &h, "x"), Err(Error::NotNormal)));
    }
}
