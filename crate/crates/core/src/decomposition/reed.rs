//! Tree decompositions from a separation oracle.

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{validate_separation, Graph, Ratio, Separation};

/// Tree decomposition with bags of at most `4k` vertices, given an oracle
/// returning two-thirds balanced separations of order at most `k` for any
/// sample.
///
/// Each step holds a vertex set `U` and a boundary `W ⊆ U` with
/// `|W| ≤ 3k`. Small `U` becomes one bag; otherwise `W` is padded to `3k`
/// vertices, separated by the oracle, and the bag `W ∪ S` is emitted with
/// one child per component of `G[U] − (W ∪ S)`.
pub fn treedec_from_separations(
    g: &Graph,
    k: usize,
    oracle: &dyn Fn(&[usize]) -> Result<Separation>,
) -> Result<TreeDecomposition> {
    if k == 0 {
        if g.m() > 0 {
            return Err(Error::InvalidParameter("order-0 separations cannot split an edge".into()));
        }
        let bags: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
        let tree = (1..g.n()).map(|i| (i - 1, i)).collect();
        return Ok(TreeDecomposition::new(if bags.is_empty() { vec![vec![]] } else { bags }, tree));
    }
    let n = g.n();
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut tree = Vec::new();
    // (U, W, parent bag)
    let mut work: Vec<(Vec<usize>, Vec<usize>, Option<usize>)> = vec![((0..n).collect(), Vec::new(), None)];
    let mut in_u = vec![false; n];
    let mut in_x = vec![false; n];
    while let Some((u, mut w, parent)) = work.pop() {
        let id = bags.len();
        if let Some(p) = parent {
            tree.push((p, id));
        }
        if u.len() <= 4 * k {
            bags.push(u);
            continue;
        }
        for &v in &w {
            in_x[v] = true;
        }
        for &v in &u {
            if w.len() >= 3 * k {
                break;
            }
            if !in_x[v] {
                in_x[v] = true;
                w.push(v);
            }
        }
        let sep = oracle(&w)?;
        let report = validate_separation(g, &sep, &w, Ratio::TWO_THIRDS, None);
        if !report.is_ok() {
            return Err(Error::OracleViolation(report.violations[0].to_string()));
        }
        let s = sep.intersection();
        if s.len() > k {
            return Err(Error::OracleViolation(format!("separation of order {} exceeds {k}", s.len())));
        }
        for &v in &u {
            in_u[v] = true;
        }
        let mut bag = w.clone();
        for &v in &s {
            if in_u[v] && !in_x[v] {
                in_x[v] = true;
                bag.push(v);
            }
        }
        let mut seen = vec![false; n];
        let mut children = Vec::new();
        for &s0 in &u {
            if in_x[s0] || seen[s0] {
                continue;
            }
            seen[s0] = true;
            let mut comp = vec![s0];
            let mut boundary = Vec::new();
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &y in g.neighbors(v) {
                    if !in_u[y] || seen[y] {
                        continue;
                    }
                    seen[y] = true;
                    if in_x[y] {
                        boundary.push(y);
                    } else {
                        comp.push(y);
                    }
                }
            }
            for &y in &boundary {
                seen[y] = false;
            }
            if comp.len() + boundary.len() == u.len() {
                return Err(Error::OracleViolation(
                    "separation keeps the whole boundary on one side; recursion cannot progress".into(),
                ));
            }
            let mut cu = comp;
            cu.extend(&boundary);
            children.push((cu, boundary));
        }
        for &v in &u {
            in_u[v] = false;
            in_x[v] = false;
        }
        bags.push(bag);
        for (cu, cw) in children.into_iter().rev() {
            work.push((cu, cw, Some(id)));
        }
    }
    Ok(TreeDecomposition::new(bags, tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate_tree_decomposition;

    /// Splits a path at the median sample vertex.
    fn path_oracle(n: usize) -> impl Fn(&[usize]) -> Result<Separation> {
        move |s: &[usize]| {
            let mut s = s.to_vec();
            s.sort_unstable();
            let m = s[s.len() / 2];
            Ok(Separation::new((0..=m).collect(), (m..n).collect()))
        }
    }

    #[test]
    fn path_width_at_most_three() {
        let n = 40;
        let g = Graph::path(n);
        let td = treedec_from_separations(&g, 1, &path_oracle(n)).unwrap();
        assert!(validate_tree_decomposition(&g, &td).is_ok());
        assert!(td.max_bag() <= 4);
    }

    #[test]
    fn bad_oracle_detected() {
        let g = Graph::path(20);
        let lazy = |_: &[usize]| Ok(Separation::new((0..20).collect(), vec![]));
        assert!(matches!(treedec_from_separations(&g, 1, &lazy), Err(Error::OracleViolation(_))));
    }
}
