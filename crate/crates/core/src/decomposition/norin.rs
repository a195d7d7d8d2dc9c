//! Treewidth from layered width: cut every `p`-th layer.

use super::{LayeredDecomposition, TreeDecomposition};
use crate::graph::Graph;

/// Tree decomposition of width at most `2√(kn)` for a graph with a layered
/// decomposition of layered width `k`.
///
/// With `p = ⌈√(n/k)⌉`, the residue class `j` minimising
/// `|W_j| = |V_j ∪ V_{p+j} ∪ …|` is removed; each component of `G − W_j`
/// spans at most `p − 1` layers and is decomposed by restricting the input
/// decomposition, then `W_j` is added to every bag.
pub fn norin_treewidth(g: &Graph, ld: &LayeredDecomposition) -> TreeDecomposition {
    let n = g.n();
    let k = ld.layered_width().max(1);
    if n == 0 {
        return TreeDecomposition::single(Vec::new());
    }
    let mut p = 1;
    while p * p * k < n {
        p += 1;
    }
    let l = &ld.layering;
    let mut class = vec![0usize; p];
    for v in 0..n {
        class[l.layer_of(v) % p] += 1;
    }
    let j = (0..p).min_by_key(|&j| (class[j], j)).unwrap_or(0);
    let cut: Vec<usize> = (0..n).filter(|&v| l.layer_of(v) % p == j).collect();
    let mut removed = vec![false; n];
    for &v in &cut {
        removed[v] = true;
    }
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for s in 0..n {
        if removed[s] || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = ncomp;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !removed[w] && comp[w] == usize::MAX {
                    comp[w] = ncomp;
                    stack.push(w);
                }
            }
        }
        ncomp += 1;
    }
    let td = &ld.decomposition;
    // node of component c restricted to input bag x
    let mut node_of: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); ncomp];
    let mut bags: Vec<Vec<usize>> = vec![cut.clone()];
    for (x, bag) in td.bags.iter().enumerate() {
        let mut parts: Vec<(usize, usize)> = bag.iter().filter(|&&v| !removed[v]).map(|&v| (comp[v], v)).collect();
        parts.sort_unstable();
        let mut i = 0;
        while i < parts.len() {
            let c = parts[i].0;
            let mut b = cut.clone();
            while i < parts.len() && parts[i].0 == c {
                b.push(parts[i].1);
                i += 1;
            }
            node_of[c].insert(x, bags.len());
            bags.push(b);
        }
    }
    let mut tree = Vec::new();
    for &(x, y) in &td.tree {
        for nodes in &node_of {
            if let (Some(&a), Some(&b)) = (nodes.get(&x), nodes.get(&y)) {
                tree.push((a, b));
            }
        }
    }
    for nodes in &node_of {
        if let Some(&a) = nodes.values().min() {
            tree.push((0, a));
        }
    }
    TreeDecomposition::new(bags, tree)
}
