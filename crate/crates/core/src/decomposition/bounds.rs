//! Closed-form treewidth and edge bounds from a layered decomposition.

use super::LayeredDecomposition;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub layered_width: usize,
    pub genus: Option<usize>,
    pub diameter: usize,
    pub radius: usize,
    /// `(3ℓ − 1)n`.
    pub edge_bound: usize,
    /// Treewidth is at most `ℓ(d + 1) − 1`.
    pub treewidth_from_diameter: usize,
    /// Treewidth is below `4ℓ(d + 1)` given layered separations of width ℓ.
    pub treewidth_from_separations: usize,
    /// `2√(ℓn)`.
    pub norin: f64,
}

impl BoundReport {
    pub fn edges_within_bound(&self) -> bool {
        self.m <= self.edge_bound
    }

    /// Local treewidth bound `ℓ(2r + 1) − 1`.
    pub fn local_treewidth(&self, r: usize) -> usize {
        (self.layered_width * (2 * r + 1)).saturating_sub(1)
    }

    /// Strict local bound `4ℓ(2r + 1)` from layered separations.
    pub fn local_treewidth_from_separations(&self, r: usize) -> usize {
        4 * self.layered_width * (2 * r + 1)
    }

    /// `w ≤ 2√(ℓn)`, exactly.
    pub fn norin_admits(&self, width: usize) -> bool {
        width * width <= 4 * self.layered_width * self.n
    }

    /// Every bound a treewidth value must respect.
    pub fn admits_treewidth(&self, tw: usize) -> bool {
        tw <= self.treewidth_from_diameter && tw < self.treewidth_from_separations && self.norin_admits(tw)
    }
}

/// Bound report for a connected graph with a layered decomposition.
pub fn bound_report(g: &Graph, ld: &LayeredDecomposition, genus: Option<usize>) -> BoundReport {
    let l = ld.layered_width();
    let ecc = g.eccentricities();
    let d = ecc.iter().copied().max().unwrap_or(0);
    let r = ecc.iter().copied().min().unwrap_or(0);
    BoundReport {
        n: g.n(),
        m: g.m(),
        layered_width: l,
        genus,
        diameter: d,
        radius: r,
        edge_bound: (3 * l).saturating_sub(1) * g.n(),
        treewidth_from_diameter: (l * (d + 1)).saturating_sub(1),
        treewidth_from_separations: 4 * l * (d + 1),
        norin: 2.0 * ((l * g.n()) as f64).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::TreeDecomposition;
    use crate::graph::{bfs_layering, Layering};

    #[test]
    fn k4_two_layers() {
        let g = Graph::complete(4);
        let (l, _) = bfs_layering(&g, &[0]).unwrap();
        let ld = LayeredDecomposition::new(TreeDecomposition::single(vec![0, 1, 2, 3]), l);
        let r = bound_report(&g, &ld, Some(0));
        assert_eq!(r.layered_width, 3);
        // (3·3 − 1)·4 = 32 ≥ 6
        assert_eq!(r.edge_bound, 32);
        assert!(r.edges_within_bound());
    }

    #[test]
    fn clique_single_layer() {
        let n = 6;
        let g = Graph::complete(n);
        let ld = LayeredDecomposition::new(TreeDecomposition::single((0..n).collect()), Layering::from_indices(vec![0; n]));
        let r = bound_report(&g, &ld, None);
        assert_eq!(r.treewidth_from_diameter, 2 * n - 1);
        assert!(r.admits_treewidth(n - 1));
        assert_eq!(r.local_treewidth(1), 3 * n - 1);
    }
}
