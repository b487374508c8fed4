//! Concrete finite groups on the index set `0..order`.
//!
//! Every group stores its elements as indices with the identity at index 0.
//! Multiplication is either a dense table (orders up to [`DENSE_LIMIT`]) or an
//! oracle that multiplies canonical forms and looks the result up by hash.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::action::Automorphism;
use crate::error::{Error, Result};

/// Index of an element inside its parent group.
pub type Element = usize;

pub const IDENTITY: Element = 0;

/// Largest order for which a dense multiplication table is stored.
pub const DENSE_LIMIT: usize = 4096;

/// Largest order any closure is allowed to reach.
pub const MAX_ORDER: usize = 100_000;

/// Full associativity audits are run up to this order; above it triples are sampled.
pub const FULL_AUDIT_LIMIT: usize = 256;

type MulFn = dyn Fn(Element, Element) -> Element + Send + Sync;

#[derive(Clone)]
enum Product {
    Table(Arc<[u32]>),
    Oracle(Arc<MulFn>),
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    product: Product,
    inverse: Arc<[u32]>,
    labels: Arc<[String]>,
    generators: OnceLock<Vec<Element>>,
    classes: OnceLock<Vec<Vec<Element>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("dense", &self.is_dense())
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication function on `0..order`.
    ///
    /// Index 0 must act as the identity. Inverses are found by powering.
    pub fn from_fn<F>(name: impl Into<String>, order: usize, mul: F, labels: Vec<String>) -> Result<Self>
    where
        F: Fn(Element, Element) -> Element + Send + Sync + 'static,
    {
        if order == 0 {
            return Err(Error::OutOfRange("group order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::ClosureTooLarge { limit: MAX_ORDER });
        }
        if labels.len() != order {
            return Err(Error::Input(format!("{} labels for a group of order {order}", labels.len())));
        }
        let product = if order <= DENSE_LIMIT {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    let c = mul(a, b);
                    if c >= order {
                        return Err(Error::AxiomViolation(format!("product {a}*{b} = {c} out of range")));
                    }
                    table[a * order + b] = c as u32;
                }
            }
            Product::Table(table.into())
        } else {
            Product::Oracle(Arc::new(mul))
        };
        Self::assemble(name.into(), order, product, labels)
    }

    /// Builds a group directly from a row-major multiplication table.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        if order == 0 || table.len() != order * order || labels.len() != order {
            return Err(Error::Input("table dimensions do not match the order".into()));
        }
        if table.iter().any(|&c| c as usize >= order) {
            return Err(Error::AxiomViolation("table entry out of range".into()));
        }
        Self::assemble(name.into(), order, Product::Table(table.into()), labels)
    }

    fn assemble(name: String, order: usize, product: Product, labels: Vec<String>) -> Result<Self> {
        let mul = |a: Element, b: Element| -> Element {
            match &product {
                Product::Table(t) => t[a * order + b] as usize,
                Product::Oracle(f) => f(a, b),
            }
        };
        for x in 0..order {
            if mul(IDENTITY, x) != x || mul(x, IDENTITY) != x {
                return Err(Error::AxiomViolation(format!("index 0 is not an identity for element {x}")));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for x in 0..order {
            if inverse[x] != u32::MAX {
                continue;
            }
            let mut prev = IDENTITY;
            let mut cur = x;
            let mut steps = 0;
            while cur != IDENTITY {
                prev = cur;
                cur = mul(cur, x);
                steps += 1;
                if steps > order {
                    return Err(Error::AxiomViolation(format!("element {x} has no finite order")));
                }
            }
            inverse[x] = prev as u32;
            inverse[prev] = x as u32;
        }
        Ok(FiniteGroup {
            name,
            order,
            product,
            inverse: inverse.into(),
            labels: labels.into(),
            generators: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.product, Product::Table(_))
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        match &self.product {
            Product::Table(t) => t[a * self.order + b] as usize,
            Product::Oracle(f) => f(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverse[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Element, g: Element) -> Element {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: Element, y: Element) -> Element {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    #[inline]
    pub fn commutes(&self, x: Element, y: Element) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn pow(&self, x: Element, mut k: u64) -> Element {
        let mut base = x;
        let mut acc = IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Element) -> usize {
        let mut k = 1;
        let mut cur = x;
        while cur != IDENTITY {
            cur = self.mul(cur, x);
            k += 1;
        }
        k
    }

    /// Orders of every element, indexed by element.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut orders = vec![0usize; self.order];
        for x in self.elements() {
            if orders[x] == 0 {
                orders[x] = self.element_order(x);
            }
        }
        orders
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.commutes(a, b)))
    }

    /// A generating set, greedily picked in ascending index order.
    pub fn generators(&self) -> &[Element] {
        self.generators.get_or_init(|| {
            let whole: Vec<Element> = self.elements().collect();
            generating_set(self, &whole)
        })
    }

    /// Checks closure, identity, inverses and associativity.
    ///
    /// Associativity is exhaustive up to [`FULL_AUDIT_LIMIT`] and sampled on
    /// `10·order` random triples above it.
    pub fn audit(&self) -> Result<()> {
        let n = self.order;
        for x in self.elements() {
            if self.mul(IDENTITY, x) != x || self.mul(x, IDENTITY) != x {
                return Err(Error::AxiomViolation(format!("identity fails on {x}")));
            }
            if self.mul(x, self.inv(x)) != IDENTITY || self.mul(self.inv(x), x) != IDENTITY {
                return Err(Error::AxiomViolation(format!("inverse fails on {x}")));
            }
        }
        let check = |a, b, c| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::AxiomViolation(format!("associativity fails on ({a},{b},{c})")))
            } else {
                Ok(())
            }
        };
        if n <= FULL_AUDIT_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed ^ n as u64);
            for _ in 0..10 * n {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        // Latin-square rows: left multiplication by each generator is a bijection.
        for &g in self.generators() {
            let mut seen = vec![false; n];
            for x in self.elements() {
                let y = self.mul(g, x);
                if seen[y] {
                    return Err(Error::AxiomViolation(format!("left multiplication by {g} is not injective")));
                }
                seen[y] = true;
            }
        }
        Ok(())
    }

    // ---- subgroups -------------------------------------------------------

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, vec![IDENTITY])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, self.elements().collect())
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[Element]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[IDENTITY] = true;
        let mut members = vec![IDENTITY];
        let gens: Vec<Element> = gens.iter().copied().filter(|&g| g != IDENTITY).collect();
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members, mask }
    }

    /// Subgroup generated by the union of two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = self.subgroup_generators(a);
        gens.extend(self.subgroup_generators(b));
        self.closure(&gens)
    }

    /// A small generating set for `h`, greedily in ascending index order.
    pub fn subgroup_generators(&self, h: &Subgroup) -> Vec<Element> {
        generating_set(self, h.members())
    }

    /// Checks that an explicit element set is a subgroup.
    pub fn subgroup_from_members(&self, members: &[Element]) -> Result<Subgroup> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&x| x >= self.order) {
            return Err(Error::Input("subgroup member out of range".into()));
        }
        let sub = Subgroup::from_sorted(self.order, sorted);
        if !sub.contains(IDENTITY) {
            return Err(Error::Input("subgroup must contain the identity".into()));
        }
        for &x in sub.members() {
            if !sub.contains(self.inv(x)) {
                return Err(Error::Input(format!("not closed under inverse at {x}")));
            }
            for &y in sub.members() {
                if !sub.contains(self.mul(x, y)) {
                    return Err(Error::Input(format!("not closed under product at ({x},{y})")));
                }
            }
        }
        Ok(sub)
    }

    pub fn centralizer(&self, set: &[Element]) -> Subgroup {
        let members = self
            .elements()
            .filter(|&g| set.iter().all(|&x| self.commutes(g, x)))
            .collect();
        Subgroup::from_sorted(self.order, members)
    }

    /// Centralizer of a subgroup, tested against a generating set of it.
    pub fn centralizer_of(&self, h: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(h);
        self.centralizer(&gens)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(self.generators())
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(h);
        let members = self
            .elements()
            .filter(|&g| gens.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        Subgroup::from_sorted(self.order, members)
    }

    /// `g⁻¹ H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Element) -> Subgroup {
        let mut members: Vec<Element> = h.members().iter().map(|&x| self.conj(x, g)).collect();
        members.sort_unstable();
        Subgroup::from_sorted(self.order, members)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let hg = self.subgroup_generators(h);
        self.generators()
            .iter()
            .all(|&g| hg.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[Element]) -> Subgroup {
        let gens = self.generators().to_vec();
        let mut current = self.closure(set);
        loop {
            let sub_gens = self.subgroup_generators(&current);
            let missing: Vec<Element> = sub_gens
                .iter()
                .flat_map(|&x| gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .filter(|&y| !current.contains(y))
                .collect();
            if missing.is_empty() {
                return current;
            }
            let mut all = sub_gens;
            all.extend(missing);
            current = self.closure(&all);
        }
    }

    pub fn conjugacy_class(&self, x: Element) -> Vec<Element> {
        let gens = self.generators();
        let mut seen = HashMap::new();
        seen.insert(x, ());
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            for &g in gens {
                let z = self.conj(y, g);
                if seen.insert(z, ()).is_none() {
                    class.push(z);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        class
    }

    /// Conjugacy classes, each sorted, ordered by minimal member.
    pub fn conjugacy_classes(&self) -> &[Vec<Element>] {
        self.classes.get_or_init(|| {
            let gens = self.generators();
            let mut class_of = vec![usize::MAX; self.order];
            let mut classes = Vec::new();
            for x in self.elements() {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                class_of[x] = id;
                let mut class = vec![x];
                let mut i = 0;
                while i < class.len() {
                    let y = class[i];
                    for &g in gens {
                        let z = self.conj(y, g);
                        if class_of[z] == usize::MAX {
                            class_of[z] = id;
                            class.push(z);
                        }
                    }
                    i += 1;
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    /// Class index of every element, consistent with [`Self::conjugacy_classes`].
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order];
        for (i, c) in self.conjugacy_classes().iter().enumerate() {
            for &x in c {
                idx[x] = i;
            }
        }
        idx
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generators();
        let comms: Vec<Element> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.normal_closure(&comms)
    }

    /// `[A, B]` for normal subgroups `a`, `b`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let ga = self.subgroup_generators(a);
        let gb = self.subgroup_generators(b);
        let comms: Vec<Element> = ga
            .iter()
            .flat_map(|&x| gb.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.normal_closure(&comms)
    }

    /// Realises a subgroup as a group of its own. Returns the group and the
    /// embedding (new index → parent index); identity stays at index 0.
    pub fn subgroup_as_group(&self, h: &Subgroup, name: impl Into<String>) -> Result<(FiniteGroup, Vec<Element>)> {
        let embed: Vec<Element> = h.members().to_vec();
        let mut back = HashMap::with_capacity(embed.len());
        for (i, &x) in embed.iter().enumerate() {
            back.insert(x, i);
        }
        let labels = embed.iter().map(|&x| self.label(x).to_string()).collect();
        let parent = self.clone();
        let emb = embed.clone();
        let g = FiniteGroup::from_fn(name, embed.len(), move |a, b| back[&parent.mul(emb[a], emb[b])], labels)?;
        Ok((g, embed))
    }

    // ---- constructions ---------------------------------------------------

    /// Quotient by a normal subgroup. Cosets are numbered by minimal member,
    /// so the identity coset is 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &k in n.members() {
                coset_of[self.mul(g, k)] = id;
            }
        }
        let labels = reps
            .iter()
            .map(|&r| format!("{}N", self.label(r)))
            .collect();
        let parent = self.clone();
        let cs = coset_of.clone();
        let rs = reps.clone();
        let quotient = FiniteGroup::from_fn(
            format!("{}/N{}", self.name, n.order()),
            reps.len(),
            move |a, b| cs[parent.mul(rs[a], rs[b])],
            labels,
        )?;
        Ok(QuotientGroup { kernel: n.clone(), coset_of, reps, quotient })
    }

    /// Direct product with element `(a, b)` at index `a + |G|·b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let n1 = self.order;
        let order = n1
            .checked_mul(other.order)
            .filter(|&n| n <= MAX_ORDER)
            .ok_or(Error::ClosureTooLarge { limit: MAX_ORDER })?;
        let mut labels = Vec::with_capacity(order);
        for b in other.elements() {
            for a in self.elements() {
                labels.push(format!("({},{})", self.label(a), other.label(b)));
            }
        }
        let (g, h) = (self.clone(), other.clone());
        FiniteGroup::from_fn(
            format!("{}x{}", self.name, other.name),
            order,
            move |x, y| {
                let (a1, b1) = (x % n1, x / n1);
                let (a2, b2) = (y % n1, y / n1);
                g.mul(a1, a2) + n1 * h.mul(b1, b2)
            },
            labels,
        )
    }

    /// `N ⋊ H` where `action[h]` is the automorphism of `N` induced by `h`.
    /// Element `(n, h)` sits at index `n + |N|·h`; the product is
    /// `(n1, h1)(n2, h2) = (n1·φ_{h1}(n2), h1 h2)`.
    pub fn semidirect_product(&self, h: &FiniteGroup, action: &[Automorphism]) -> Result<FiniteGroup> {
        let n = self;
        if action.len() != h.order() {
            return Err(Error::BadAction(format!("{} maps for a group of order {}", action.len(), h.order())));
        }
        for (i, phi) in action.iter().enumerate() {
            phi.validate(n).map_err(|e| Error::BadAction(format!("map for {i}: {e}")))?;
        }
        for a in h.elements() {
            for b in h.elements() {
                let ab = h.mul(a, b);
                for x in n.elements() {
                    if action[ab].apply(x) != action[a].apply(action[b].apply(x)) {
                        return Err(Error::BadAction(format!("action is not a homomorphism at ({a},{b})")));
                    }
                }
            }
        }
        let nn = n.order;
        let order = nn
            .checked_mul(h.order())
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::ClosureTooLarge { limit: MAX_ORDER })?;
        let mut labels = Vec::with_capacity(order);
        for b in h.elements() {
            for a in n.elements() {
                labels.push(format!("({},{})", n.label(a), h.label(b)));
            }
        }
        let (ng, hg) = (n.clone(), h.clone());
        let maps: Arc<Vec<Vec<u32>>> = Arc::new(action.iter().map(|a| a.images().iter().map(|&x| x as u32).collect()).collect());
        FiniteGroup::from_fn(
            format!("{}:{}", n.name, h.name),
            order,
            move |x, y| {
                let (n1, h1) = (x % nn, x / nn);
                let (n2, h2) = (y % nn, y / nn);
                let twisted = maps[h1][n2] as usize;
                ng.mul(n1, twisted) + nn * hg.mul(h1, h2)
            },
            labels,
        )
    }

    /// Semidirect product with the action given on generators of `h`; the
    /// full map `H → Aut(N)` is obtained by closing over words.
    pub fn semidirect_product_on_generators(
        &self,
        h: &FiniteGroup,
        h_gens: &[Element],
        gen_maps: &[Automorphism],
    ) -> Result<FiniteGroup> {
        if h_gens.len() != gen_maps.len() {
            return Err(Error::BadAction("generator/map count mismatch".into()));
        }
        for m in gen_maps {
            m.validate(self).map_err(|e| Error::BadAction(e.to_string()))?;
        }
        let mut maps: Vec<Option<Vec<Element>>> = vec![None; h.order()];
        maps[IDENTITY] = Some(self.elements().collect());
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            let phi_x = maps[x].clone().expect("queued elements are mapped");
            for (&g, m) in h_gens.iter().zip(gen_maps) {
                let y = h.mul(x, g);
                // φ_{xg} = φ_x ∘ φ_g
                let composed: Vec<Element> = self.elements().map(|e| phi_x[m.apply(e)]).collect();
                match &maps[y] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::BadAction("generator maps do not define a homomorphism".into()));
                    }
                    Some(_) => {}
                    None => {
                        maps[y] = Some(composed);
                        queue.push_back(y);
                    }
                }
            }
        }
        let action = maps
            .into_iter()
            .map(|m| m.map(Automorphism::new_unchecked))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::BadAction("generators do not generate H".into()))?;
        self.semidirect_product(h, &action)
    }

    /// Central product identifying `z ∈ Z(self)` with `w ∈ Z(other)` for
    /// every pair `(z, w)` in `identification`, which must list an
    /// isomorphism between the two central subgroups in full.
    pub fn central_product(&self, other: &FiniteGroup, identification: &[(Element, Element)]) -> Result<FiniteGroup> {
        let z1 = self.center();
        let z2 = other.center();
        let mut fwd = HashMap::new();
        for &(a, b) in identification {
            if !z1.contains(a) || !z2.contains(b) {
                return Err(Error::BadIdentification(format!("({a},{b}) is not a pair of central elements")));
            }
            if fwd.insert(a, b).is_some() {
                return Err(Error::BadIdentification(format!("{a} identified twice")));
            }
        }
        let dom: Vec<Element> = fwd.keys().copied().collect();
        let sub1 = self.closure(&dom);
        let cod: Vec<Element> = fwd.values().copied().collect();
        let sub2 = other.closure(&cod);
        if sub1.order() != fwd.len() || sub2.order() != fwd.len() || fwd.get(&IDENTITY) != Some(&IDENTITY) {
            return Err(Error::BadIdentification("identification must list a full subgroup bijection".into()));
        }
        for (&a, &b) in &fwd {
            for (&c, &d) in &fwd {
                if fwd.get(&self.mul(a, c)) != Some(&other.mul(b, d)) {
                    return Err(Error::BadIdentification("identification is not a homomorphism".into()));
                }
            }
        }
        let prod = self.direct_product(other)?;
        let n1 = self.order;
        let diag: Vec<Element> = fwd.iter().map(|(&a, &b)| a + n1 * other.inv(b)).collect();
        let kernel = prod.closure(&diag);
        let q = prod.quotient(&kernel)?;
        Ok(q.quotient.with_name(format!("{}*{}", self.name, other.name)))
    }
}

/// Greedy generating set of the subgroup spanned by `members`.
fn generating_set(g: &FiniteGroup, members: &[Element]) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut current = g.trivial_subgroup();
    if members.len() <= 1 {
        return gens;
    }
    // Try high-order elements first; they tend to give shorter lists.
    let mut by_order: Vec<(usize, Element)> = members.iter().map(|&x| (g.element_order(x), x)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, x) in by_order {
        if !current.contains(x) {
            gens.push(x);
            current = g.closure(&gens);
            if current.order() == members.len() {
                break;
            }
        }
    }
    gens
}

/// An explicit set of element indices closed under the group operations.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<Element>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.members.len(), &self.members[..self.members.len().min(16)])
    }
}

impl Subgroup {
    fn from_sorted(parent_order: usize, members: Vec<Element>) -> Self {
        let mut mask = vec![false; parent_order];
        for &x in &members {
            mask[x] = true;
        }
        Subgroup { members, mask }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::from_sorted(self.mask.len(), members)
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }
}

pub struct QuotientGroup {
    pub kernel: Subgroup,
    /// Coset index of every parent element.
    pub coset_of: Vec<usize>,
    /// Minimal-index representative of each coset.
    pub reps: Vec<Element>,
    pub quotient: FiniteGroup,
}

impl QuotientGroup {
    /// Image of a parent subgroup in the quotient.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let mut members: Vec<Element> = h.members().iter().map(|&x| self.coset_of[x]).collect();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_sorted(self.quotient.order(), members)
    }

    /// Full preimage of a quotient subgroup.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let members = (0..self.coset_of.len()).filter(|&x| h.contains(self.coset_of[x])).collect();
        Subgroup::from_sorted(self.coset_of.len(), members)
    }
}

/// A group generated by concrete objects (permutations, matrices), keeping
/// the canonical form of each element alongside the index group.
#[derive(Clone)]
pub struct Realization<T> {
    pub group: FiniteGroup,
    pub elements: Arc<Vec<T>>,
    index: Arc<HashMap<T, Element>>,
}

impl<T> fmt::Debug for Realization<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Realization").field("group", &self.group.name()).field("order", &self.elements.len()).finish()
    }
}

impl<T> Realization<T>
where
    T: Clone + Eq + Hash + Send + Sync + 'static,
{
    /// Breadth-first closure of `gens` under right multiplication.
    ///
    /// Dense tables are filled through the Cayley graph: if `g = h·s` for a
    /// generator `s`, then `x·g = (x·h)·s`, so only `|G|·|gens|` concrete
    /// products are ever formed.
    pub fn generate<M, L>(name: impl Into<String>, identity: T, gens: &[T], mul: M, label: L) -> Result<Self>
    where
        M: Fn(&T, &T) -> T + Send + Sync + 'static,
        L: Fn(&T) -> String,
    {
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, IDENTITY);
        // BFS parent: (parent element, generator index)
        let mut parent: Vec<(Element, usize)> = vec![(IDENTITY, usize::MAX)];
        let mut i = 0;
        while i < elements.len() {
            for (s, g) in gens.iter().enumerate() {
                let y = mul(&elements[i], g);
                if !index.contains_key(&y) {
                    if elements.len() >= MAX_ORDER {
                        return Err(Error::ClosureTooLarge { limit: MAX_ORDER });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    parent.push((i, s));
                }
            }
            i += 1;
        }
        let n = elements.len();
        let labels: Vec<String> = elements.iter().map(&label).collect();
        let elements = Arc::new(elements);
        let index = Arc::new(index);
        let group = if n <= DENSE_LIMIT {
            let mut right = vec![0u32; n * gens.len()];
            for x in 0..n {
                for (s, g) in gens.iter().enumerate() {
                    right[x * gens.len() + s] = index[&mul(&elements[x], g)] as u32;
                }
            }
            let mut table = vec![0u32; n * n];
            for x in 0..n {
                let row = &mut table[x * n..(x + 1) * n];
                row[IDENTITY] = x as u32;
                for g in 1..n {
                    let (h, s) = parent[g];
                    row[g] = right[row[h] as usize * gens.len() + s];
                }
            }
            FiniteGroup::from_table(name, n, table, labels)?
        } else {
            let (els, idx) = (elements.clone(), index.clone());
            FiniteGroup::from_fn(name, n, move |a, b| idx[&mul(&els[a], &els[b])], labels)?
        };
        Ok(Realization { group, elements, index })
    }

    pub fn index_of(&self, x: &T) -> Option<Element> {
        self.index.get(x).copied()
    }

    pub fn element(&self, i: Element) -> &T {
        &self.elements[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cyclic, dihedral, quaternion8, sym};

    #[test]
    fn closure_of_identity_is_trivial() {
        let s3 = sym(3).unwrap();
        assert_eq!(s3.closure(&[IDENTITY]).order(), 1);
    }

    #[test]
    fn dihedral_generated_by_rotation_and_reflection() {
        let d8 = dihedral(8).unwrap();
        let r = (0..8).find(|&x| d8.element_order(x) == 4).unwrap();
        let s = (0..8)
            .find(|&x| d8.element_order(x) == 2 && !d8.commutes(x, r))
            .unwrap();
        assert_eq!(d8.closure(&[r, s]).order(), 8);
    }

    #[test]
    fn centralizer_of_three_cycle_in_s3() {
        let s3 = sym(3).unwrap();
        let c = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        assert_eq!(s3.centralizer(&[c]).order(), 3);
        assert_eq!(s3.centralizer(&[IDENTITY]).order(), 6);
    }

    #[test]
    fn s3_classes() {
        let s3 = sym(3).unwrap();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(s3.conjugacy_classes()[0], vec![IDENTITY]);
    }

    #[test]
    fn q8_center() {
        let q8 = quaternion8().unwrap();
        assert_eq!(q8.center().order(), 2);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = sym(3).unwrap();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = s3.closure(&[t]);
        assert_eq!(s3.quotient(&h).err(), Some(Error::NotNormal));
    }

    #[test]
    fn quotient_by_whole_is_trivial() {
        let d8 = dihedral(8).unwrap();
        let q = d8.quotient(&d8.whole()).unwrap();
        assert_eq!(q.quotient.order(), 1);
    }

    #[test]
    fn direct_product_of_z2_z3_is_cyclic() {
        let z6 = cyclic(2).unwrap().direct_product(&cyclic(3).unwrap()).unwrap();
        assert_eq!(z6.order(), 6);
        assert!(z6.elements().any(|x| z6.element_order(x) == 6));
        z6.audit().unwrap();
    }

    #[test]
    fn oracle_regime_above_dense_limit() {
        // 2^13 = 8192 elements as bit vectors under xor
        let gens: Vec<u32> = (0..13).map(|i| 1u32 << i).collect();
        let r = Realization::generate("E8192", 0u32, &gens, |a, b| a ^ b, |a| format!("{a:#x}")).unwrap();
        assert!(!r.group.is_dense());
        assert_eq!(r.group.order(), 8192);
        r.group.audit().unwrap();
        let x = r.index_of(&0b101).unwrap();
        assert_eq!(r.group.element_order(x), 2);
        assert_eq!(r.group.inv(x), x);
    }

    #[test]
    fn closure_too_large_is_reported() {
        let gens = vec![1u64];
        let err = Realization::generate("Zbig", 0u64, &gens, |a, b| (a + b) % 200_000, |a| a.to_string()).err();
        assert!(matches!(err, Some(Error::ClosureTooLarge { limit: MAX_ORDER })));
    }

    #[test]
    fn identity_must_be_index_zero() {
        let r = FiniteGroup::from_fn("bad", 2, |a, b| (a + b + 1) % 2, vec!["a".into(), "b".into()]);
        assert!(matches!(r, Err(Error::AxiomViolation(_))));
    }
}
