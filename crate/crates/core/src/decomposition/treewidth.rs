//! Exact dynamic programming over vertex subsets (elimination orderings).

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Layering};

/// Largest graph accepted by the subset dynamic programs.
pub const EXACT_LIMIT: usize = 16;

/// Best elimination ordering under `cost(bag)`, minimising the largest
/// bag cost. Returns the optimum and the ordering.
fn best_ordering(g: &Graph, cost: &dyn Fn(u32) -> usize) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > EXACT_LIMIT {
        return Err(Error::TooLarge { n, max: EXACT_LIMIT });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let full: u32 = (1u32 << n) - 1;
    let size = 1usize << n;
    let mut best = vec![usize::MAX; size];
    let mut choice = vec![0u8; size];
    best[0] = 0;
    for s in 1..size as u32 {
        let mut it = s;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            let rest = s & !(1 << v);
            let prev = best[rest as usize];
            if prev == usize::MAX {
                continue;
            }
            // eliminating v after `rest`: its bag is v plus everything outside
            // `rest` reachable from v through `rest`
            let mut reach = adj[v];
            let mut inside = 0u32;
            let mut frontier = adj[v] & rest;
            while frontier != 0 {
                inside |= frontier;
                let mut nb = 0;
                let mut f = frontier;
                while f != 0 {
                    nb |= adj[f.trailing_zeros() as usize];
                    f &= f - 1;
                }
                reach |= nb;
                frontier = nb & rest & !inside;
            }
            let bag = (reach & !rest & full) | (1 << v);
            let c = prev.max(cost(bag));
            if c < best[s as usize] {
                best[s as usize] = c;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok((best[full as usize], order))
}

/// Exact treewidth for graphs with at most [`EXACT_LIMIT`] vertices.
pub fn exact_treewidth_oracle(g: &Graph) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    best_ordering(g, &|bag| bag.count_ones() as usize - 1).map(|(w, _)| w)
}

/// Minimum layered width over all tree decompositions for a fixed
/// layering, with a decomposition attaining it.
pub fn min_layered_width(g: &Graph, layering: &Layering) -> Result<(usize, TreeDecomposition)> {
    let masks: Vec<u32> = layering.layers().iter().map(|l| l.iter().fold(0u32, |m, &v| m | (1 << v))).collect();
    let cost = |bag: u32| masks.iter().map(|&m| (bag & m).count_ones() as usize).max().unwrap_or(0);
    let (w, order) = best_ordering(g, &cost)?;
    Ok((w, decomposition_from_ordering(g, &order)))
}

/// Tree decomposition induced by an elimination ordering: each vertex's
/// bag holds it and its later neighbours in the filled graph.
pub fn decomposition_from_ordering(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::single(Vec::new());
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut higher: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let hs: Vec<usize> = higher[v].iter().copied().collect();
        for &a in &hs {
            for &b in &hs {
                if pos[a] < pos[b] {
                    higher[a].insert(b);
                }
            }
        }
        parent[i] = hs.iter().map(|&w| pos[w]).min();
        let mut bag = hs;
        bag.push(v);
        bags.push(bag);
    }
    let last = n - 1;
    let tree = (0..n).filter(|&i| i != last).map(|i| (i, parent[i].unwrap_or(last))).collect();
    TreeDecomposition::new(bags, tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate_tree_decomposition;
    use crate::graph::bfs_layering;

    #[test]
    fn small_known_values() {
        assert_eq!(exact_treewidth_oracle(&Graph::complete(4)).unwrap(), 3);
        assert_eq!(exact_treewidth_oracle(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(exact_treewidth_oracle(&Graph::grid(3, 3)).unwrap(), 3);
        assert_eq!(exact_treewidth_oracle(&Graph::path(6)).unwrap(), 1);
        assert_eq!(exact_treewidth_oracle(&Graph::grid(4, 4)).unwrap(), 4);
    }

    #[test]
    fn too_large_rejected() {
        assert_eq!(exact_treewidth_oracle(&Graph::path(17)).unwrap_err(), Error::TooLarge { n: 17, max: 16 });
    }

    #[test]
    fn ordering_gives_valid_decomposition() {
        let g = Graph::grid(3, 4);
        let (l, _) = bfs_layering(&g, &[0]).unwrap();
        let (w, td) = min_layered_width(&g, &l).unwrap();
        assert!(validate_tree_decomposition(&g, &td).is_ok());
        assert_eq!(crate::decomposition::layered_width_of(&td, &l), w);
        assert!(w <= 2);
    }
}
