//! Tree decompositions, layered width and the constructions built on them.

use std::fmt;

use crate::graph::{Graph, Layering};

mod bounds;
mod clique_sum;
mod genus;
mod norin;
mod reed;
mod separator;
mod treewidth;

pub use bounds::{bound_report, BoundReport};
pub use clique_sum::{clique_sum_compose, CliqueSum, GoodProvider, PlanarProvider, SmallProvider};
pub use genus::{genus_layered_decomposition, GenusDecomposition};
pub use norin::norin_treewidth;
pub use reed::treedec_from_separations;
pub use separator::{
    layered_separation, separator_from_decomposition, Balance, CycleSeparator, DecompositionSeparator,
    LayeredSeparator, Split,
};
pub use treewidth::{
    decomposition_from_ordering, exact_treewidth_oracle, min_layered_width, EXACT_LIMIT,
};

/// Bags indexed by the nodes of a tree given by its edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Sorts and dedups every bag.
    pub fn new(bags: Vec<Vec<usize>>, tree: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, tree }
    }

    pub fn single(bag: Vec<usize>) -> Self {
        TreeDecomposition::new(vec![bag], Vec::new())
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one (`-1` becomes 0 for an empty graph).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(x, y) in &self.tree {
            adj[x].push(y);
            adj[y].push(x);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Parent of every node with the tree rooted at `root`, and a BFS order.
    pub fn rooted(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let adj = self.tree_adjacency();
        let mut parent = vec![None; self.bags.len()];
        let mut seen = vec![false; self.bags.len()];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    order.push(y);
                }
            }
        }
        (parent, order)
    }

    /// Bags intersected with `keep` (global ids); the tree is unchanged.
    pub fn restrict(&self, keep: &[bool]) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.bags.iter().map(|b| b.iter().copied().filter(|&v| keep[v]).collect()).collect(),
            tree: self.tree.clone(),
        }
    }

    /// Renames vertices through `map` (old id to new id; `usize::MAX` drops).
    pub fn relabel(&self, map: &[usize]) -> TreeDecomposition {
        TreeDecomposition::new(
            self.bags
                .iter()
                .map(|b| b.iter().map(|&v| map[v]).filter(|&v| v != usize::MAX).collect())
                .collect(),
            self.tree.clone(),
        )
    }

    /// Repeatedly removes leaves with empty bags, keeping at least one node.
    pub fn prune_empty_leaves(&self) -> TreeDecomposition {
        let n = self.bags.len();
        let mut adj: Vec<Vec<usize>> = self.tree_adjacency();
        let mut alive = vec![true; n];
        let mut live = n;
        let mut stack: Vec<usize> = (0..n).filter(|&x| self.bags[x].is_empty() && adj[x].len() <= 1).collect();
        while let Some(x) = stack.pop() {
            if !alive[x] || live == 1 {
                continue;
            }
            let nb: Vec<usize> = adj[x].iter().copied().filter(|&y| alive[y]).collect();
            if nb.len() > 1 {
                continue;
            }
            alive[x] = false;
            live -= 1;
            for y in nb {
                adj[y].retain(|&z| z != x);
                if self.bags[y].is_empty() && adj[y].iter().filter(|&&z| alive[z]).count() <= 1 {
                    stack.push(y);
                }
            }
        }
        let mut new_id = vec![usize::MAX; n];
        let mut bags = Vec::new();
        for x in 0..n {
            if alive[x] {
                new_id[x] = bags.len();
                bags.push(self.bags[x].clone());
            }
        }
        let tree = self
            .tree
            .iter()
            .filter(|&&(x, y)| alive[x] && alive[y])
            .map(|&(x, y)| (new_id[x], new_id[y]))
            .collect();
        TreeDecomposition { bags, tree }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    NotATree(String),
    VertexOutOfRange { bag: usize, vertex: usize },
    EdgeUncovered(usize, usize),
    VertexAbsent(usize),
    VertexSubtreeDisconnected(usize),
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionViolation::NotATree(s) => write!(f, "decomposition tree: {s}"),
            DecompositionViolation::VertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} holds out-of-range vertex {vertex}")
            }
            DecompositionViolation::EdgeUncovered(u, v) => write!(f, "edge {u}-{v} uncovered"),
            DecompositionViolation::VertexAbsent(v) => write!(f, "vertex {v} in no bag"),
            DecompositionViolation::VertexSubtreeDisconnected(v) => {
                write!(f, "bags holding vertex {v} are not connected")
            }
        }
    }
}

pub fn validate_tree_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
) -> std::result::Result<(), Vec<DecompositionViolation>> {
    let mut bad = Vec::new();
    let b = td.bags.len();
    if b == 0 {
        if g.n() > 0 {
            bad.push(DecompositionViolation::NotATree("no bags".into()));
        }
        return if bad.is_empty() { Ok(()) } else { Err(bad) };
    }
    if td.tree.len() + 1 != b {
        bad.push(DecompositionViolation::NotATree(format!("{} edges on {b} nodes", td.tree.len())));
    }
    if td.tree.iter().any(|&(x, y)| x >= b || y >= b || x == y) {
        bad.push(DecompositionViolation::NotATree("edge endpoint out of range or loop".into()));
        return Err(bad);
    }
    let (_, order) = td.rooted(0);
    if order.len() != b {
        bad.push(DecompositionViolation::NotATree("tree is disconnected".into()));
    }
    if !bad.is_empty() {
        return Err(bad);
    }
    let n = g.n();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                bad.push(DecompositionViolation::VertexOutOfRange { bag: x, vertex: v });
            } else {
                holders[v].push(x);
            }
        }
    }
    let mut in_bag = vec![false; b];
    let adj = td.tree_adjacency();
    for (v, hs) in holders.iter().enumerate() {
        if hs.is_empty() {
            bad.push(DecompositionViolation::VertexAbsent(v));
            continue;
        }
        for &x in hs {
            in_bag[x] = true;
        }
        let mut stack = vec![hs[0]];
        let mut seen = 1;
        in_bag[hs[0]] = false;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if in_bag[y] {
                    in_bag[y] = false;
                    seen += 1;
                    stack.push(y);
                }
            }
        }
        if seen != hs.len() {
            bad.push(DecompositionViolation::VertexSubtreeDisconnected(v));
            for &x in hs {
                in_bag[x] = false;
            }
        }
    }
    for &(u, v) in g.edges() {
        let (a, c) = (&holders[u], &holders[v]);
        let (mut i, mut j) = (0, 0);
        let mut found = false;
        while i < a.len() && j < c.len() {
            match a[i].cmp(&c[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    found = true;
                    break;
                }
            }
        }
        if !found {
            bad.push(DecompositionViolation::EdgeUncovered(u, v));
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// A tree decomposition paired with a layering of the same graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredDecomposition {
    pub decomposition: TreeDecomposition,
    pub layering: Layering,
}

impl LayeredDecomposition {
    pub fn new(decomposition: TreeDecomposition, layering: Layering) -> Self {
        LayeredDecomposition { decomposition, layering }
    }

    /// Max over bags and layers of the bag-layer intersection size.
    pub fn layered_width(&self) -> usize {
        layered_width_of(&self.decomposition, &self.layering)
    }
}

pub(crate) fn layered_width_of(td: &TreeDecomposition, l: &Layering) -> usize {
    let mut count = vec![0usize; l.len().max(1)];
    let mut best = 0;
    for bag in &td.bags {
        for &v in bag {
            count[l.layer_of(v)] += 1;
        }
        for &v in bag {
            let i = l.layer_of(v);
            best = best.max(count[i]);
            count[i] = 0;
        }
    }
    best
}
