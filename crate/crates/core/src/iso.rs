//! Backtracking search for isomorphisms and automorphisms.
//!
//! Maps are fixed on a short generating sequence of the source group and
//! extended along the Cayley graph; every extension is checked edge by edge,
//! so a consistent extension is a homomorphism on the generated subgroup.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, IDENTITY};

/// Default node budget for automorphism and isomorphism searches.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Isomorphism-invariant description of an element: its order, the size of
/// its class, and the (order, class size) pattern of its powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub class_size: usize,
    pub power_pattern: Vec<(usize, usize)>,
}

pub fn fingerprints(g: &FiniteGroup) -> Vec<Fingerprint> {
    let orders = g.element_orders();
    let classes = g.conjugacy_classes();
    let class_idx = g.class_index();
    g.elements()
        .map(|x| {
            let ord = orders[x];
            let power_pattern = (2..ord)
                .filter(|d| ord % d == 0)
                .map(|d| {
                    let y = g.pow(x, d as u64);
                    (orders[y], classes[class_idx[y]].len())
                })
                .collect();
            Fingerprint { order: ord, class_size: classes[class_idx[x]].len(), power_pattern }
        })
        .collect()
}

/// Generating sequence chosen greedily: each step adds the element whose
/// closure with the current sequence is largest, ties broken by index.
pub fn minimal_generating_sequence(g: &FiniteGroup) -> Vec<Element> {
    let mut seq = Vec::new();
    let mut current = g.trivial_subgroup();
    while current.order() < g.order() {
        let mut best: Option<(usize, Element)> = None;
        for x in g.elements() {
            if current.contains(x) {
                continue;
            }
            let mut trial = seq.clone();
            trial.push(x);
            let size = g.closure(&trial).order();
            if best.map_or(true, |(s, _)| size > s) {
                best = Some((size, x));
            }
        }
        let (_, x) = best.expect("a proper subgroup misses some element");
        seq.push(x);
        current = g.closure(&seq);
    }
    seq
}

/// Extends `gens[i] ↦ images[i]` to a homomorphism on `⟨gens⟩`.
///
/// Returns the map (with `None` outside the generated subgroup), or `None`
/// if the assignment is inconsistent.
pub fn extend_homomorphism(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[Element],
    images: &[Element],
) -> Option<Vec<Option<Element>>> {
    let mut map: Vec<Option<Element>> = vec![None; src.order()];
    map[IDENTITY] = Some(IDENTITY);
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("queued elements are mapped");
        for (&g, &h) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let fy = dst.mul(fx, h);
            match map[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}

struct Search<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    gens: Vec<Element>,
    candidates: Vec<Vec<Element>>,
    budget: u64,
    nodes: u64,
    stop_at_first: bool,
    found: Vec<Vec<Element>>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, images: &mut Vec<Element>) -> Result<()> {
        if depth == self.gens.len() {
            return Ok(());
        }
        for ci in 0..self.candidates[depth].len() {
            let cand = self.candidates[depth][ci];
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            images.push(cand);
            if let Some(map) = extend_homomorphism(self.src, self.dst, &self.gens[..=depth], images) {
                if injective(&map, self.dst.order()) {
                    if depth + 1 == self.gens.len() {
                        let full: Vec<Element> = map.into_iter().map(|m| m.expect("generators span the group")).collect();
                        self.found.push(full);
                        if self.stop_at_first {
                            images.pop();
                            return Ok(());
                        }
                    } else {
                        self.run(depth + 1, images)?;
                        if self.stop_at_first && !self.found.is_empty() {
                            images.pop();
                            return Ok(());
                        }
                    }
                }
            }
            images.pop();
        }
        Ok(())
    }
}

fn injective(map: &[Option<Element>], dst_order: usize) -> bool {
    let mut seen = vec![false; dst_order];
    for &y in map.iter().flatten() {
        if seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

fn search(src: &FiniteGroup, dst: &FiniteGroup, budget: u64, stop_at_first: bool) -> Result<Vec<Vec<Element>>> {
    if src.order() != dst.order() {
        return Ok(Vec::new());
    }
    let fs = fingerprints(src);
    let fd = fingerprints(dst);
    let mut profile_s = fs.clone();
    let mut profile_d = fd.clone();
    profile_s.sort();
    profile_d.sort();
    if profile_s != profile_d {
        return Ok(Vec::new());
    }
    let gens = minimal_generating_sequence(src);
    if gens.is_empty() {
        return Ok(vec![vec![IDENTITY]]);
    }
    let candidates = gens
        .iter()
        .map(|&g| dst.elements().filter(|&y| fd[y] == fs[g]).collect())
        .collect();
    let mut s = Search { src, dst, gens, candidates, budget, nodes: 0, stop_at_first, found: Vec::new() };
    s.run(0, &mut Vec::new())?;
    Ok(s.found)
}

/// An isomorphism `src → dst` as an image array, if one exists.
pub fn find_isomorphism(src: &FiniteGroup, dst: &FiniteGroup, budget: u64) -> Result<Option<Vec<Element>>> {
    Ok(search(src, dst, budget, true)?.into_iter().next())
}

pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    Ok(find_isomorphism(a, b, DEFAULT_BUDGET)?.is_some())
}

/// Every automorphism of `g`, as image arrays, in search order.
pub fn all_automorphisms(g: &FiniteGroup, budget: u64) -> Result<Vec<Vec<Element>>> {
    search(g, g, budget, false)
}
