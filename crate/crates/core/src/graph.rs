//! Orbit commuting graphs, shape classification and export.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::action::OrbitPartition;
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, IDENTITY};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    /// Orbit id in the partition (for classic graphs, the element itself).
    pub id: usize,
    pub rep: Element,
    pub rep_label: String,
    pub size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSource {
    pub group: String,
    pub action: String,
}

/// Simple undirected graph whose vertices are classes of group elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutingGraph {
    pub source: GraphSource,
    pub vertices: Vec<Vertex>,
    /// Sorted pairs `(a, b)` with `a < b`, indices into `vertices`.
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

impl CommutingGraph {
    pub fn new(source: GraphSource, vertices: Vec<Vertex>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::Input(format!("invalid edge ({a},{b}) for {n} vertices")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(CommutingGraph { source, vertices, edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// `census[d]` = number of vertices of degree `d`.
    pub fn degree_census(&self) -> Vec<usize> {
        let max = self.degrees().into_iter().max().unwrap_or(0);
        let mut census = vec![0; max + 1];
        for d in self.degrees() {
            census[d] += 1;
        }
        census
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        self.component_of(0, None).len() == n
    }

    /// Vertices reachable from `start` avoiding `removed`.
    fn component_of(&self, start: usize, removed: Option<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        if let Some(r) = removed {
            seen[r] = true;
        }
        let mut out = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All triangles `(a, b, c)` with `a < b < c`.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            for &c in self.neighbors(b) {
                if c > b && self.adjacent(a, c) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    pub fn is_triangle_free(&self) -> bool {
        self.triangles().is_empty()
    }

    pub fn has_cycle(&self) -> bool {
        // a forest has |E| = |V| - #components
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        for v in 0..n {
            if !seen[v] {
                components += 1;
                for w in self.component_of(v, None) {
                    seen[w] = true;
                }
            }
        }
        self.edge_count() + components != n
    }

    /// Four pairwise adjacent vertices, if any.
    pub fn clique4(&self) -> Option<[usize; 4]> {
        for (a, b, c) in self.triangles() {
            for &d in self.neighbors(c) {
                if d > c && self.adjacent(a, d) && self.adjacent(b, d) {
                    return Some([a, b, c, d]);
                }
            }
        }
        None
    }

    pub fn has_induced_clique4(&self) -> bool {
        self.clique4().is_some()
    }

    /// The unique vertex of degree at least 3, when there is exactly one.
    pub fn singular_vertex(&self) -> Option<usize> {
        let mut high = (0..self.vertex_count()).filter(|&v| self.degree(v) >= 3);
        let first = high.next()?;
        high.next().is_none().then_some(first)
    }

    /// Vertex holding orbit `orbit`.
    pub fn vertex_of_orbit(&self, orbit: usize) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == orbit)
    }

    pub fn is_f_graph(&self) -> bool {
        !matches!(classify_shape(self), GraphShape::NotConnected | GraphShape::NotFGraph { .. })
    }

    pub fn export_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"orbit{}(rep={},size={})\"];\n", v.id, v.rep, v.size));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("  v{a} -- v{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn export_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialises")
    }

    pub fn import_json(text: &str) -> Result<Self> {
        let raw: CommutingGraph = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        CommutingGraph::new(raw.source, raw.vertices, raw.edges)
    }
}

fn orbit_vertices(g: &FiniteGroup, partition: &OrbitPartition) -> Vec<Vertex> {
    (0..partition.len())
        .filter(|&o| partition.reps[o] != IDENTITY)
        .map(|o| {
            let rep = partition.reps[o];
            Vertex { id: o, rep, rep_label: g.label(rep).to_string(), size: partition.members[o].len() }
        })
        .collect()
}

/// `Γ(G, A)` from the orbit partition of `A` on `G`, by sweeping every
/// unordered pair of nonidentity elements.
pub fn build_graph(g: &FiniteGroup, partition: &OrbitPartition, action: &str) -> CommutingGraph {
    let vertices = orbit_vertices(g, partition);
    let mut vertex_of = vec![usize::MAX; partition.len()];
    for (i, v) in vertices.iter().enumerate() {
        vertex_of[v.id] = i;
    }
    let row = |x: usize| -> BTreeSet<(usize, usize)> {
        let a = vertex_of[partition.orbit_of[x]];
        let mut out = BTreeSet::new();
        for y in x + 1..g.order() {
            let b = vertex_of[partition.orbit_of[y]];
            if a != b && g.commutes(x, y) {
                out.insert((a.min(b), a.max(b)));
            }
        }
        out
    };
    #[cfg(feature = "parallel")]
    let edges: BTreeSet<(usize, usize)> = {
        use rayon::prelude::*;
        (1..g.order()).into_par_iter().map(row).reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
    };
    #[cfg(not(feature = "parallel"))]
    let edges: BTreeSet<(usize, usize)> = (1..g.order()).flat_map(row).collect();
    CommutingGraph::new(source(g, action), vertices, edges).expect("edges are in range")
}

fn source(g: &FiniteGroup, action: &str) -> GraphSource {
    GraphSource { group: g.name().into(), action: action.into() }
}

/// Same graph from orbit representatives: commutation is preserved by `A`,
/// so two orbits are joined exactly when the representative of one commutes
/// with some member of the other. Used as a cross-check of [`build_graph`].
pub fn build_graph_from_representatives(g: &FiniteGroup, partition: &OrbitPartition, action: &str) -> CommutingGraph {
    let vertices = orbit_vertices(g, partition);
    let mut vertex_of = vec![usize::MAX; partition.len()];
    for (i, v) in vertices.iter().enumerate() {
        vertex_of[v.id] = i;
    }
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for y in g.elements() {
            let j = vertex_of[partition.orbit_of[y]];
            if j != usize::MAX && j != i && g.commutes(v.rep, y) {
                edges.push((i, j));
            }
        }
    }
    CommutingGraph::new(source(g, action), vertices, edges).expect("edges are in range")
}

/// Commuting pairs `x < y` of non-identity elements, computed once so that
/// many actions on the same group can share them.
pub struct CommutingPairs {
    pub order: usize,
    pairs: Vec<(u32, u32)>,
}

impl CommutingPairs {
    pub fn new(g: &FiniteGroup) -> Self {
        let row = |x: usize| -> Vec<(u32, u32)> {
            (x + 1..g.order()).filter(|&y| g.commutes(x, y)).map(|y| (x as u32, y as u32)).collect()
        };
        #[cfg(feature = "parallel")]
        let pairs = {
            use rayon::prelude::*;
            (1..g.order()).into_par_iter().flat_map_iter(row).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let pairs = (1..g.order()).flat_map(row).collect();
        CommutingPairs { order: g.order(), pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn graph(&self, g: &FiniteGroup, partition: &OrbitPartition, action: &str) -> CommutingGraph {
        let vertices = orbit_vertices(g, partition);
        let mut vertex_of = vec![usize::MAX; partition.len()];
        for (i, v) in vertices.iter().enumerate() {
            vertex_of[v.id] = i;
        }
        let mut edges = BTreeSet::new();
        for &(x, y) in &self.pairs {
            let (a, b) = (vertex_of[partition.orbit_of[x as usize]], vertex_of[partition.orbit_of[y as usize]]);
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        CommutingGraph::new(source(g, action), vertices, edges).expect("edges are in range")
    }
}

/// The commuting graph on `G ∖ Z(G)` with one vertex per element.
pub fn classic_commuting_graph(g: &FiniteGroup) -> CommutingGraph {
    let z = g.center();
    let vertices: Vec<Vertex> = g
        .elements()
        .filter(|&x| !z.contains(x))
        .map(|x| Vertex { id: x, rep: x, rep_label: g.label(x).to_string(), size: 1 })
        .collect();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if g.commutes(vertices[i].rep, vertices[j].rep) {
                edges.push((i, j));
            }
        }
    }
    CommutingGraph::new(GraphSource { group: g.name().into(), action: "classic".into() }, vertices, edges).expect("edges are in range")
}

/// Structure of an F-graph around its singular vertex. Removing the singular
/// vertex leaves paths; each is a triangle, a longer cycle through the
/// singular vertex, or a tail hanging from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularDetails {
    pub triangles: usize,
    /// Lengths of cycles of length at least 4 through the singular vertex.
    pub cycles: Vec<usize>,
    /// Vertex counts of hanging paths, largest first.
    pub tails: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphShape {
    /// Disconnected or empty.
    NotConnected,
    Path { vertices: usize },
    Cycle { vertices: usize },
    /// A centre joined to `vertices - 1 ≥ 3` leaves.
    Star { vertices: usize },
    /// `k ≥ 2` triangles sharing one vertex.
    Friendship { triangles: usize },
    FGraphWithSingular(SingularDetails),
    /// Connected, with at least two vertices of degree at least 3.
    NotFGraph { high_degree: Vec<usize> },
}

impl GraphShape {
    /// Equality that ignores the witness of a non-F-graph.
    pub fn matches(&self, other: &GraphShape) -> bool {
        match (self, other) {
            (GraphShape::NotFGraph { .. }, GraphShape::NotFGraph { .. }) => true,
            _ => self == other,
        }
    }

    pub fn is_f_graph(&self) -> bool {
        !matches!(self, GraphShape::NotConnected | GraphShape::NotFGraph { .. })
    }
}

impl std::fmt::Display for GraphShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphShape::NotConnected => write!(f, "not connected"),
            GraphShape::Path { vertices } => write!(f, "P{vertices}"),
            GraphShape::Cycle { vertices } => write!(f, "C{vertices}"),
            GraphShape::Star { vertices } => write!(f, "star on {vertices} vertices"),
            GraphShape::Friendship { triangles } => write!(f, "friendship graph with {triangles} triangles"),
            GraphShape::FGraphWithSingular(d) => write!(
                f,
                "F-graph: {} triangles, cycles {:?}, tails {:?} at the singular vertex",
                d.triangles, d.cycles, d.tails
            ),
            GraphShape::NotFGraph { high_degree } => {
                write!(f, "not an F-graph ({} vertices of degree >= 3)", high_degree.len())
            }
        }
    }
}

pub fn classify_shape(graph: &CommutingGraph) -> GraphShape {
    let n = graph.vertex_count();
    if !graph.is_connected() {
        return GraphShape::NotConnected;
    }
    let high: Vec<usize> = (0..n).filter(|&v| graph.degree(v) >= 3).collect();
    if high.len() >= 2 {
        return GraphShape::NotFGraph { high_degree: high };
    }
    let Some(&z) = high.first() else {
        return if n >= 3 && graph.edge_count() == n {
            GraphShape::Cycle { vertices: n }
        } else {
            GraphShape::Path { vertices: n }
        };
    };
    let mut details = SingularDetails { triangles: 0, cycles: Vec::new(), tails: Vec::new() };
    let mut seen = vec![false; n];
    seen[z] = true;
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let comp = graph.component_of(v, Some(z));
        for &w in &comp {
            seen[w] = true;
        }
        let attached = comp.iter().filter(|&&w| graph.adjacent(w, z)).count();
        match (comp.len(), attached) {
            (1, _) => details.tails.push(1),
            (2, 2) => details.triangles += 1,
            (len, 2) => details.cycles.push(len + 1),
            (len, _) => details.tails.push(len),
        }
    }
    details.cycles.sort_unstable_by(|a, b| b.cmp(a));
    details.tails.sort_unstable_by(|a, b| b.cmp(a));
    if details.triangles == 0 && details.cycles.is_empty() && details.tails.iter().all(|&t| t == 1) {
        return GraphShape::Star { vertices: n };
    }
    if details.cycles.is_empty() && details.tails.is_empty() {
        return GraphShape::Friendship { triangles: details.triangles };
    }
    GraphShape::FGraphWithSingular(details)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(n: usize, edges: &[(usize, usize)]) -> CommutingGraph {
        let vertices = (0..n).map(|i| Vertex { id: i, rep: i, rep_label: i.to_string(), size: 1 }).collect();
        CommutingGraph::new(GraphSource::default(), vertices, edges.iter().copied()).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(classify_shape(&plain(0, &[])), GraphShape::NotConnected);
        assert_eq!(classify_shape(&plain(1, &[])), GraphShape::Path { vertices: 1 });
        assert_eq!(classify_shape(&plain(2, &[])), GraphShape::NotConnected);
        assert_eq!(classify_shape(&plain(3, &[(0, 1), (1, 2)])), GraphShape::Path { vertices: 3 });
        assert_eq!(classify_shape(&plain(3, &[(0, 1), (1, 2), (0, 2)])), GraphShape::Cycle { vertices: 3 });
        assert_eq!(classify_shape(&plain(4, &[(0, 1), (0, 2), (0, 3)])), GraphShape::Star { vertices: 4 });
        assert_eq!(
            classify_shape(&plain(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])),
            GraphShape::Friendship { triangles: 2 }
        );
        let k4 = plain(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(classify_shape(&k4), GraphShape::NotFGraph { .. }));
        assert!(k4.has_induced_clique4());
    }

    #[test]
    fn singular_details() {
        // triangle 0-1-2, tail 0-3-4, 4-cycle 0-5-6-7-0
        let g = plain(8, &[(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7), (0, 7)]);
        assert_eq!(g.singular_vertex(), Some(0));
        assert_eq!(
            classify_shape(&g),
            GraphShape::FGraphWithSingular(SingularDetails { triangles: 1, cycles: vec![4], tails: vec![2] })
        );
    }

    #[test]
    fn json_roundtrip() {
        let g = plain(3, &[(0, 1), (1, 2)]);
        let back = CommutingGraph::import_json(&g.export_json()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.neighbors(1), &[0, 2]);
        assert!(g.export_dot().contains("v0 -- v1"));
    }

    #[test]
    fn cycle_detection() {
        assert!(!plain(4, &[(0, 1), (0, 2), (0, 3)]).has_cycle());
        assert!(plain(3, &[(0, 1), (1, 2), (0, 2)]).has_cycle());
    }
}
