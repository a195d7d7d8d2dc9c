//! Gluing layered decompositions along identified cliques.

use super::{genus_layered_decomposition, min_layered_width, LayeredDecomposition, TreeDecomposition};
use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{bfs_layering, Graph, Layering};

/// A graph that can hand out a layered decomposition whose first layer is
/// any requested clique of size at most `goodness()`.
pub trait GoodProvider {
    fn graph(&self) -> &Graph;
    fn goodness(&self) -> usize;
    fn rooted(&self, clique: &[usize]) -> Result<LayeredDecomposition>;
}

/// Embedded graphs: goodness `2g + 3`.
pub struct PlanarProvider {
    embedded: EmbeddedGraph,
    graph: Graph,
    genus: usize,
}

impl PlanarProvider {
    pub fn new(embedded: EmbeddedGraph) -> Result<Self> {
        let genus = embedded.euler_genus()?;
        let graph = embedded.simple_graph();
        Ok(PlanarProvider { embedded, graph, genus })
    }
}

impl GoodProvider for PlanarProvider {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn goodness(&self) -> usize {
        2 * self.genus + 3
    }

    fn rooted(&self, clique: &[usize]) -> Result<LayeredDecomposition> {
        Ok(genus_layered_decomposition(&self.embedded, clique)?.layered)
    }
}

/// Small graphs: BFS layering from the clique and an optimal decomposition
/// for that layering. Goodness is the least `ℓ` for which every clique of
/// size at most `ℓ` yields layered width at most `ℓ`.
pub struct SmallProvider {
    graph: Graph,
    goodness: usize,
}

impl SmallProvider {
    pub fn new(graph: Graph) -> Result<Self> {
        let mut widths = Vec::new();
        for clique in all_cliques(&graph) {
            let (l, _) = bfs_layering(&graph, &clique)?;
            let (w, _) = min_layered_width(&graph, &l)?;
            widths.push((clique.len(), w));
        }
        let goodness = (1..)
            .find(|&ell| widths.iter().all(|&(size, w)| size > ell || w <= ell))
            .unwrap();
        Ok(SmallProvider { graph, goodness })
    }
}

fn all_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        for &w in g.neighbors(last) {
            if w > last && c.iter().all(|&u| g.has_edge(u, w)) {
                let mut d = c.clone();
                d.push(w);
                stack.push(d);
            }
        }
        out.push(c);
    }
    out
}

impl GoodProvider for SmallProvider {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn goodness(&self) -> usize {
        self.goodness
    }

    fn rooted(&self, clique: &[usize]) -> Result<LayeredDecomposition> {
        if !self.graph.is_clique(clique) {
            return Err(Error::NotClique(clique.to_vec()));
        }
        let (l, _) = bfs_layering(&self.graph, clique)?;
        let (_, td) = min_layered_width(&self.graph, &l)?;
        Ok(LayeredDecomposition::new(td, l))
    }
}

/// The glued graph, its decomposition, and where each vertex of the second
/// summand went. Vertices of the first summand keep their ids.
#[derive(Clone, Debug)]
pub struct CliqueSum {
    pub graph: Graph,
    pub layered: LayeredDecomposition,
    pub map2: Vec<usize>,
}

fn bag_holding(td: &TreeDecomposition, set: &[usize]) -> Option<usize> {
    td.bags.iter().position(|b| set.iter().all(|v| b.binary_search(v).is_ok()))
}

/// Glues `provider`'s graph onto `g1` by identifying `c2[i]` with `c1[i]`,
/// then deletes `deleted` (edges inside `c1`). The layering of `d1` is kept
/// and the second summand is re-rooted at the part of the clique lying in
/// its first layer, so layered width stays within the larger of the two.
pub fn clique_sum_compose(
    g1: &Graph,
    d1: &LayeredDecomposition,
    provider: &dyn GoodProvider,
    c1: &[usize],
    c2: &[usize],
    deleted: &[(usize, usize)],
) -> Result<CliqueSum> {
    let g2 = provider.graph();
    let (n1, n2) = (g1.n(), g2.n());
    if c1.len() != c2.len() {
        return Err(Error::SizeMismatch(c1.len(), c2.len()));
    }
    if c1.is_empty() {
        return Err(Error::EmptyRoots);
    }
    for (&v, n) in c1.iter().map(|v| (v, n1)).chain(c2.iter().map(|v| (v, n2))) {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    for (c, g) in [(c1, g1), (c2, g2)] {
        let mut s = c.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != c.len() || !g.is_clique(&s) {
            return Err(Error::NotClique(c.to_vec()));
        }
    }
    let in_c1 = |v: usize| c1.contains(&v);
    if let Some(&(a, b)) = deleted.iter().find(|&&(a, b)| a == b || !in_c1(a) || !in_c1(b)) {
        return Err(Error::InvalidParameter(format!("deleted edge {a}-{b} is not inside the glued clique")));
    }

    let l1 = &d1.layering;
    let first = c1.iter().map(|&v| l1.layer_of(v)).min().unwrap();
    let low: Vec<usize> = c2.iter().zip(c1).filter(|&(_, &v)| l1.layer_of(v) == first).map(|(&w, _)| w).collect();
    let d2 = provider.rooted(&low)?;
    let l2 = &d2.layering;
    for (&w, &v) in c2.iter().zip(c1) {
        if first + l2.layer_of(w) != l1.layer_of(v) {
            return Err(Error::InvalidLayering(format!("glued vertex {w} does not line up with {v}")));
        }
    }

    let mut map2 = vec![usize::MAX; n2];
    for (&w, &v) in c2.iter().zip(c1) {
        map2[w] = v;
    }
    let mut next = n1;
    for m in map2.iter_mut().filter(|m| **m == usize::MAX) {
        *m = next;
        next += 1;
    }
    let n = next;

    let is_deleted = |a: usize, b: usize| deleted.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
    let edges: Vec<(usize, usize)> = g1
        .edges()
        .iter()
        .copied()
        .chain(g2.edges().iter().map(|&(a, b)| (map2[a], map2[b])))
        .filter(|&(a, b)| !is_deleted(a, b))
        .collect();
    let graph = Graph::new(n, edges)?;

    let mut layer_of = vec![0; n];
    for v in 0..n1 {
        layer_of[v] = l1.layer_of(v);
    }
    for w in 0..n2 {
        layer_of[map2[w]] = first + l2.layer_of(w);
    }
    let layering = Layering::from_indices(layer_of);

    let td1 = &d1.decomposition;
    let td2 = d2.decomposition.relabel(&map2);
    let mut c1_sorted = c1.to_vec();
    c1_sorted.sort_unstable();
    let x1 = bag_holding(td1, &c1_sorted)
        .ok_or_else(|| Error::InvalidDecomposition("no bag of the first summand holds the clique".into()))?;
    let x2 = bag_holding(&td2, &c1_sorted)
        .ok_or_else(|| Error::InvalidDecomposition("no bag of the second summand holds the clique".into()))?;
    let off = td1.len();
    let mut bags = td1.bags.clone();
    bags.extend(td2.bags);
    let mut tree = td1.tree.clone();
    tree.extend(td2.tree.iter().map(|&(a, b)| (a + off, b + off)));
    tree.push((x1, x2 + off));
    Ok(CliqueSum { graph, layered: LayeredDecomposition::new(TreeDecomposition::new(bags, tree), layering), map2 })
}
