//! Simple undirected graphs on dense ids, layerings, BFS trees and separations.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a simple graph. Duplicate edges collapse; loops are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| a != b && self.has_edge(a, b)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `keep` (any order). Returns the subgraph and the
    /// map from new ids to old ids; new ids follow ascending old ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut old: Vec<usize> = keep.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if new_of[u] != usize::MAX && new_of[v] != usize::MAX {
                edges.push((new_of[u], new_of[v]));
            }
        }
        let g = Graph::new(old.len(), edges).expect("induced subgraph is well formed");
        (g, old)
    }

    /// BFS distances from a set of sources; `usize::MAX` when unreachable.
    pub fn distances(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut q = VecDeque::new();
        for &s in sources {
            if dist[s] == usize::MAX {
                dist[s] = 0;
                q.push_back(s);
            }
        }
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Eccentricity of every vertex within its component.
    pub fn eccentricities(&self) -> Vec<usize> {
        (0..self.n)
            .map(|v| self.distances(&[v]).into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0))
            .collect()
    }

    /// Largest eccentricity over all components.
    pub fn diameter(&self) -> usize {
        self.eccentricities().into_iter().max().unwrap_or(0)
    }

    /// Smallest eccentricity (meaningful for connected graphs).
    pub fn radius(&self) -> usize {
        self.eccentricities().into_iter().min().unwrap_or(0)
    }

    /// A vertex of minimum eccentricity, smallest id first.
    pub fn centre(&self) -> Option<usize> {
        let ecc = self.eccentricities();
        (0..self.n).min_by_key(|&v| (ecc[v], v))
    }

    /// Path on `n` vertices `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    /// `rows × cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    e.push((v, v + 1));
                }
                if r + 1 < rows {
                    e.push((v, v + cols));
                }
            }
        }
        Graph::new(rows * cols, e).unwrap()
    }
}

/// Ordered partition of the vertices into layers `V_0, …, V_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
}

impl Layering {
    /// Wraps raw layers without checking them; see [`validate_layering`].
    /// Vertices missing from every layer get `usize::MAX`.
    pub fn from_layers(n: usize, layers: Vec<Vec<usize>>) -> Self {
        let mut layer_of = vec![usize::MAX; n];
        for (i, l) in layers.iter().enumerate() {
            for &v in l {
                if v < n && layer_of[v] == usize::MAX {
                    layer_of[v] = i;
                }
            }
        }
        Layering { layers, layer_of }
    }

    /// Layering from a total layer index per vertex.
    pub fn from_indices(layer_of: Vec<usize>) -> Self {
        let t = layer_of.iter().map(|&i| i + 1).max().unwrap_or(0);
        let mut layers = vec![Vec::new(); t];
        for (v, &i) in layer_of.iter().enumerate() {
            layers[i].push(v);
        }
        Layering { layers, layer_of }
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &[usize] {
        &self.layers[i]
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    pub fn layer_index(&self) -> &[usize] {
        &self.layer_of
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.layer_of.len()
    }

    /// Restriction to a subset of vertices under a new-to-old id map.
    /// Layer indices are preserved, trailing empty layers dropped.
    pub fn restrict(&self, old_ids: &[usize]) -> Layering {
        let mut idx: Vec<usize> = old_ids.iter().map(|&v| self.layer_of[v]).collect();
        if idx.is_empty() {
            return Layering { layers: Vec::new(), layer_of: idx };
        }
        let t = idx.iter().max().copied().unwrap_or(0) + 1;
        let mut layers = vec![Vec::new(); t];
        for (v, i) in idx.iter_mut().enumerate() {
            layers[*i].push(v);
        }
        Layering { layers, layer_of: idx }
    }

    /// Max number of vertices of `set` in one layer.
    pub fn max_per_layer(&self, set: &[usize]) -> usize {
        let mut count = vec![0usize; self.layers.len()];
        for &v in set {
            count[self.layer_of[v]] += 1;
        }
        count.into_iter().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayeringViolation {
    OutOfRange(usize),
    Uncovered(usize),
    Duplicated(usize),
    EdgeGap { u: usize, v: usize, gap: usize },
    EmptyTrailingLayer(usize),
}

impl fmt::Display for LayeringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayeringViolation::OutOfRange(v) => write!(f, "vertex {v} out of range"),
            LayeringViolation::Uncovered(v) => write!(f, "uncovered vertex {v}"),
            LayeringViolation::Duplicated(v) => write!(f, "vertex {v} in more than one layer"),
            LayeringViolation::EdgeGap { u, v, gap } => write!(f, "edge {u}-{v} spans a layer gap of {gap}"),
            LayeringViolation::EmptyTrailingLayer(i) => write!(f, "empty trailing layer {i}"),
        }
    }
}

pub fn validate_layering(g: &Graph, l: &Layering) -> std::result::Result<(), Vec<LayeringViolation>> {
    let mut bad = Vec::new();
    let mut seen = vec![usize::MAX; g.n()];
    for (i, layer) in l.layers().iter().enumerate() {
        for &v in layer {
            if v >= g.n() {
                bad.push(LayeringViolation::OutOfRange(v));
            } else if seen[v] != usize::MAX {
                bad.push(LayeringViolation::Duplicated(v));
            } else {
                seen[v] = i;
            }
        }
    }
    if let Some(i) = l.layers().iter().rposition(|x| !x.is_empty()) {
        for j in i + 1..l.len() {
            bad.push(LayeringViolation::EmptyTrailingLayer(j));
        }
    } else if !l.is_empty() {
        bad.push(LayeringViolation::EmptyTrailingLayer(0));
    }
    for (v, &i) in seen.iter().enumerate() {
        if i == usize::MAX {
            bad.push(LayeringViolation::Uncovered(v));
        }
    }
    for &(u, v) in g.edges() {
        let (a, b) = (seen[u], seen[v]);
        if a != usize::MAX && b != usize::MAX && a.abs_diff(b) > 1 {
            bad.push(LayeringViolation::EdgeGap { u, v, gap: a.abs_diff(b) });
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// BFS forest grown from one or more roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsTree {
    pub roots: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
}

impl BfsTree {
    /// Vertices on the tree path from `v` up to its root, `v` first.
    /// Holds exactly one vertex per layer `0..=depth(v)`.
    pub fn root_path(&self, v: usize) -> Vec<usize> {
        let mut p = vec![v];
        let mut x = v;
        while let Some(y) = self.parent[x] {
            p.push(y);
            x = y;
        }
        p
    }
}

/// Layers by BFS distance from `roots`; neighbours are scanned in ascending id.
pub fn bfs_layering(g: &Graph, roots: &[usize]) -> Result<(Layering, BfsTree)> {
    if roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    for &r in roots {
        if r >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
        }
    }
    let mut depth = vec![usize::MAX; g.n()];
    let mut parent = vec![None; g.n()];
    let mut q = VecDeque::new();
    let mut rs: Vec<usize> = roots.to_vec();
    rs.sort_unstable();
    rs.dedup();
    for &r in &rs {
        depth[r] = 0;
        q.push_back(r);
    }
    while let Some(v) = q.pop_front() {
        for &w in g.neighbors(v) {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = Some(v);
                q.push_back(w);
            }
        }
    }
    if let Some(v) = depth.iter().position(|&d| d == usize::MAX) {
        return Err(Error::Unreachable(v));
    }
    let layering = Layering::from_indices(depth.clone());
    Ok((layering, BfsTree { roots: rs, parent, depth }))
}

/// Exact rational `num / den`, used for balance thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
}

impl Ratio {
    pub const TWO_THIRDS: Ratio = Ratio { num: 2, den: 3 };
    pub const HALF: Ratio = Ratio { num: 1, den: 2 };

    /// `count ≤ self · total`, exactly.
    pub fn admits(self, count: usize, total: usize) -> bool {
        count * self.den <= self.num * total
    }
}

/// A pair of vertex sets whose union is `V(G)` with no edge between the
/// strict sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
}

impl Separation {
    pub fn new(mut part1: Vec<usize>, mut part2: Vec<usize>) -> Self {
        part1.sort_unstable();
        part1.dedup();
        part2.sort_unstable();
        part2.dedup();
        Separation { part1, part2 }
    }

    pub fn intersection(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.part1.len() && j < self.part2.len() {
            match self.part1[i].cmp(&self.part2[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.part1[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.intersection().len()
    }

    /// Side of each vertex: bit 0 for part1, bit 1 for part2.
    pub fn membership(&self, n: usize) -> Vec<u8> {
        let mut m = vec![0u8; n];
        for &v in &self.part1 {
            if v < n {
                m[v] |= 1;
            }
        }
        for &v in &self.part2 {
            if v < n {
                m[v] |= 2;
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationViolation {
    OutOfRange(usize),
    NotCovered(usize),
    CrossingEdge(usize, usize),
    Unbalanced { side: u8, count: usize, limit: Ratio, sample: usize },
    LayerWidth { layer: usize, count: usize, bound: usize },
}

impl fmt::Display for SeparationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparationViolation::OutOfRange(v) => write!(f, "vertex {v} out of range"),
            SeparationViolation::NotCovered(v) => write!(f, "vertex {v} in neither part"),
            SeparationViolation::CrossingEdge(u, v) => write!(f, "crossing edge {u}-{v}"),
            SeparationViolation::Unbalanced { side, count, limit, sample } => write!(
                f,
                "side {side} holds {count} sample vertices, more than {}/{} of {sample}",
                limit.num, limit.den
            ),
            SeparationViolation::LayerWidth { layer, count, bound } => {
                write!(f, "separator has {count} vertices in layer {layer}, bound {bound}")
            }
        }
    }
}

/// Outcome of [`validate_separation`]: violations plus the measured counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub violations: Vec<SeparationViolation>,
    /// Sample vertices strictly inside part1 and part2.
    pub side_counts: (usize, usize),
    /// Separator size per layer, when a layering was supplied.
    pub per_layer: Option<Vec<usize>>,
}

impl SeparationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a separation; `layered` adds the per-layer width check.
pub fn validate_separation(
    g: &Graph,
    s: &Separation,
    sample: &[usize],
    balance: Ratio,
    layered: Option<(&Layering, usize)>,
) -> SeparationReport {
    let n = g.n();
    let mut violations = Vec::new();
    for &v in s.part1.iter().chain(&s.part2) {
        if v >= n {
            violations.push(SeparationViolation::OutOfRange(v));
        }
    }
    let m = s.membership(n);
    for (v, &b) in m.iter().enumerate() {
        if b == 0 {
            violations.push(SeparationViolation::NotCovered(v));
        }
    }
    for &(u, v) in g.edges() {
        if (m[u] == 1 && m[v] == 2) || (m[u] == 2 && m[v] == 1) {
            violations.push(SeparationViolation::CrossingEdge(u, v));
        }
    }
    let mut uniq: Vec<usize> = sample.iter().copied().filter(|&v| v < n).collect();
    uniq.sort_unstable();
    uniq.dedup();
    let c1 = uniq.iter().filter(|&&v| m[v] == 1).count();
    let c2 = uniq.iter().filter(|&&v| m[v] == 2).count();
    for (side, c) in [(1u8, c1), (2u8, c2)] {
        if !balance.admits(c, uniq.len()) {
            violations.push(SeparationViolation::Unbalanced { side, count: c, limit: balance, sample: uniq.len() });
        }
    }
    let per_layer = layered.map(|(l, bound)| {
        let mut count = vec![0usize; l.len()];
        for v in s.intersection() {
            if v < l.vertex_count() && l.layer_of(v) < count.len() {
                count[l.layer_of(v)] += 1;
            }
        }
        for (layer, &c) in count.iter().enumerate() {
            if c > bound {
                violations.push(SeparationViolation::LayerWidth { layer, count: c, bound });
            }
        }
        count
    });
    SeparationReport { violations, side_counts: (c1, c2), per_layer }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_layers() {
        let (l, t) = bfs_layering(&Graph::path(3), &[0]).unwrap();
        assert_eq!(l.layers(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(t.root_path(2), vec![2, 1, 0]);
    }

    #[test]
    fn k4_layers() {
        let (l, _) = bfs_layering(&Graph::complete(4), &[2]).unwrap();
        assert_eq!(l.layers(), &[vec![2], vec![0, 1, 3]]);
    }

    #[test]
    fn grid_corner_layers() {
        let (l, _) = bfs_layering(&Graph::grid(5, 5), &[0]).unwrap();
        let sizes: Vec<usize> = l.layers().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn unreachable_vertex_is_named() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(bfs_layering(&g, &[0]).unwrap_err(), Error::Unreachable(2));
    }

    #[test]
    fn multi_root_layer_zero() {
        let (l, t) = bfs_layering(&Graph::path(5), &[0, 4]).unwrap();
        assert_eq!(l.layer(0), &[0, 4]);
        assert_eq!(l.len(), 3);
        assert_eq!(t.depth[2], 2);
    }

    #[test]
    fn c4_layering_ok() {
        let g = Graph::cycle(4);
        let l = Layering::from_layers(4, vec![vec![0], vec![1, 3], vec![2]]);
        assert!(validate_layering(&g, &l).is_ok());
    }

    #[test]
    fn uncovered_vertex_reported() {
        let g = Graph::path(2);
        let l = Layering::from_layers(2, vec![vec![0], vec![]]);
        let err = validate_layering(&g, &l).unwrap_err();
        assert!(err.contains(&LayeringViolation::Uncovered(1)));
        assert!(err.contains(&LayeringViolation::EmptyTrailingLayer(1)));
    }

    #[test]
    fn triangle_gap_reported() {
        let g = Graph::cycle(3);
        let l = Layering::from_layers(3, vec![vec![0], vec![1], vec![2]]);
        let err = validate_layering(&g, &l).unwrap_err();
        assert_eq!(err, vec![LayeringViolation::EdgeGap { u: 0, v: 2, gap: 2 }]);
    }

    #[test]
    fn path_separation_balanced() {
        let g = Graph::path(3);
        let s = Separation::new(vec![0, 1], vec![1, 2]);
        let r = validate_separation(&g, &s, &[0, 1, 2], Ratio::TWO_THIRDS, None);
        assert!(r.is_ok());
        assert_eq!(r.side_counts, (1, 1));
    }

    #[test]
    fn crossing_edge_reported() {
        let g = Graph::path(2);
        let s = Separation::new(vec![0], vec![1]);
        let r = validate_separation(&g, &s, &[0, 1], Ratio::TWO_THIRDS, None);
        assert!(r.violations.contains(&SeparationViolation::CrossingEdge(0, 1)));
    }

    #[test]
    fn p9_middle_separation() {
        let g = Graph::path(9);
        let s = Separation::new((0..=4).collect(), (4..9).collect());
        let all: Vec<usize> = (0..9).collect();
        let r = validate_separation(&g, &s, &all, Ratio::TWO_THIRDS, None);
        assert!(r.is_ok());
        // independent count: sides hold 4 each, limit ⌊2·9/3⌋ = 6
        assert_eq!(r.side_counts, (4, 4));
    }

    #[test]
    fn induced_keeps_order() {
        let g = Graph::cycle(5);
        let (h, map) = g.induced(&[4, 0, 1]);
        assert_eq!(map, vec![0, 1, 4]);
        assert_eq!(h.edges(), &[(0, 1), (0, 2)]);
    }
}
