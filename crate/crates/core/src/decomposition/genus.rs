//! Layered decompositions of embedded graphs from a tree-cotree split.
//!
//! The root clique `K` plays the part of a single contracted root: it forms
//! layer 0 of the BFS layering, every root path ends in `K`, and all of `K`
//! is added to every bag.

use super::{layered_width_of, LayeredDecomposition, TreeDecomposition};
use crate::embedding::{tree_cotree_rooted, EmbeddedGraph};
use crate::error::{Error, Result};
use crate::graph::{bfs_layering, Layering};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusDecomposition {
    pub layered: LayeredDecomposition,
    /// Root paths of the leftover cotree edges, minus the root clique.
    pub apex: Vec<usize>,
    pub genus: usize,
    pub root_clique: Vec<usize>,
}

impl GenusDecomposition {
    pub fn layered_width(&self) -> usize {
        self.layered.layered_width()
    }

    pub fn layering(&self) -> &Layering {
        &self.layered.layering
    }

    /// `|Q ∩ V_i|` for every layer.
    pub fn apex_per_layer(&self) -> Vec<usize> {
        let l = &self.layered.layering;
        let mut c = vec![0; l.len()];
        for &v in &self.apex {
            c[l.layer_of(v)] += 1;
        }
        c
    }

    /// Layered width of the decomposition restricted to `G − Q`.
    pub fn restricted_width(&self) -> usize {
        let mut keep = vec![true; self.layered.layering.vertex_count()];
        for &v in &self.apex {
            keep[v] = false;
        }
        layered_width_of(&self.layered.decomposition.restrict(&keep), &self.layered.layering)
    }
}

/// Decomposition of layered width at most `2g + 3` whose first layer is
/// `root_clique`, with apex set `Q` of at most `2g` vertices per layer.
pub fn genus_layered_decomposition(eg: &EmbeddedGraph, root_clique: &[usize]) -> Result<GenusDecomposition> {
    let g = eg.simple_graph();
    let mut k: Vec<usize> = root_clique.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.is_empty() {
        return Err(Error::EmptyRoots);
    }
    if let Some(&v) = k.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if !g.is_clique(&k) {
        return Err(Error::NotClique(k));
    }
    let genus = eg.euler_genus()?;
    if k.len() > 2 * genus + 3 {
        return Err(Error::InvalidParameter(format!(
            "root clique of size {} exceeds 2g + 3 = {}",
            k.len(),
            2 * genus + 3
        )));
    }
    if g.n() < 3 {
        let (layering, _) = bfs_layering(&g, &k)?;
        let td = TreeDecomposition::single((0..g.n()).collect());
        return Ok(GenusDecomposition {
            layered: LayeredDecomposition::new(td, layering),
            apex: Vec::new(),
            genus,
            root_clique: k,
        });
    }
    let tri = eg.triangulate()?;
    let tc = tree_cotree_rooted(&tri, &k)?;
    let n = g.n();
    let mut in_x = vec![false; n];
    for &e in &tc.extra_edges {
        let (a, b) = tri.edges()[e];
        for v in [a, b] {
            for u in tc.root_path(v) {
                in_x[u] = true;
            }
        }
    }
    let mut in_k = vec![false; n];
    for &v in &k {
        in_k[v] = true;
    }
    let x_paths: Vec<usize> = (0..n).filter(|&v| in_x[v]).collect();
    let bags: Vec<Vec<usize>> = tc
        .faces
        .iter()
        .map(|face| {
            let mut bag = k.clone();
            bag.extend(&x_paths);
            for &d in face {
                bag.extend(tc.root_path(tri.tail(d)));
            }
            bag
        })
        .collect();
    let td = TreeDecomposition::new(bags, tc.dual_tree_edges());
    let apex = (0..n).filter(|&v| in_x[v] && !in_k[v]).collect();
    Ok(GenusDecomposition { layered: LayeredDecomposition::new(td, tc.layering), apex, genus, root_clique: k })
}
