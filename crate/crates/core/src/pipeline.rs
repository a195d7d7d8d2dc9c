//! End-to-end runs from an embedded graph to labels, layouts and colourings.

use crate::decomposition::{genus_layered_decomposition, Balance, CycleSeparator, DecompositionSeparator};
use crate::embedding::EmbeddedGraph;
use crate::error::Result;
use crate::graph::Graph;
use crate::layouts::{compute_recursion, queue_from_tracks, track_layout_from_compute, ComputeLabels, QueueLayout, TrackLayout};
use crate::nonrep::{layer_pattern_colouring, nonrep_from_compute, Colouring};

#[derive(Clone, Debug)]
pub struct EmbeddedRun {
    pub graph: Graph,
    pub genus: usize,
    /// Apex set labelled before the recursion; empty in the plane.
    pub apex: Vec<usize>,
    pub labels: ComputeLabels,
}

/// Planar inputs with [`Balance::TwoThirds`] use the fundamental-cycle
/// separator (width 2). Otherwise the layered decomposition rooted at
/// `root` is used: its apex set is labelled first (`2g` per layer) and the
/// rest is split through the decomposition (width 3).
pub fn embedded_run(eg: &EmbeddedGraph, root: usize, balance: Balance) -> Result<EmbeddedRun> {
    let graph = eg.simple_graph();
    let genus = eg.euler_genus()?;
    if genus == 0 && balance == Balance::TwoThirds {
        let sep = CycleSeparator::new(eg, root)?;
        let labels = compute_recursion(&graph, &sep, &[], 0)?;
        return Ok(EmbeddedRun { graph, genus, apex: Vec::new(), labels });
    }
    let gd = genus_layered_decomposition(eg, &[root])?;
    let keep: Vec<usize> = (0..graph.n()).filter(|v| gd.apex.binary_search(v).is_err()).collect();
    let sep = DecompositionSeparator::on_subgraph(&graph, &keep, &gd.layered, balance)?;
    let labels = compute_recursion(&graph, &sep, &gd.apex, 2 * genus)?;
    Ok(EmbeddedRun { graph, genus, apex: gd.apex, labels })
}

impl EmbeddedRun {
    pub fn tracks(&self) -> Result<TrackLayout> {
        track_layout_from_compute(&self.graph, &self.labels)
    }

    pub fn queues(&self) -> Result<(TrackLayout, QueueLayout)> {
        let tl = self.tracks()?;
        let ql = queue_from_tracks(&self.graph, &tl)?;
        Ok((tl, ql))
    }

    pub fn colouring(&self) -> Result<Colouring> {
        nonrep_from_compute(&self.graph, &self.labels, &layer_pattern_colouring(self.labels.layering.len()))
    }

    pub fn track_bound(&self) -> usize {
        self.labels.track_bound()
    }

    /// Palette bound after scaling for the symbol count of the pattern.
    pub fn palette_bound(&self) -> usize {
        let lp = layer_pattern_colouring(self.labels.layering.len());
        self.labels.palette_bound() * lp.symbols().max(4) / 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::generators::gen;
    use crate::layouts::{verify_queue_layout, verify_track_layout};
    use crate::nonrep::verify_nonrepetitive;

    #[test]
    fn planar_and_log2_modes() {
        let eg = gen("triangulation", 60, 4, None).unwrap().embedded.unwrap();
        for balance in [Balance::TwoThirds, Balance::Half] {
            let run = embedded_run(&eg, 0, balance).unwrap();
            let (tl, ql) = run.queues().unwrap();
            assert!(tl.num_tracks() <= run.track_bound());
            assert!(verify_track_layout(&run.graph, &tl, Exec::Parallel).is_ok());
            assert!(verify_queue_layout(&run.graph, &ql, Exec::Parallel).is_ok());
            let c = run.colouring().unwrap();
            assert!(c.palette_size() <= run.palette_bound());
            assert!(verify_nonrepetitive(&run.graph, &c, 8, Exec::Parallel).is_ok());
        }
    }

    #[test]
    fn torus_run_uses_apex() {
        let eg = gen("torus", 6, 0, None).unwrap().embedded.unwrap();
        let run = embedded_run(&eg, 0, Balance::TwoThirds).unwrap();
        assert_eq!(run.genus, 2);
        assert!(!run.apex.is_empty());
        assert!(verify_track_layout(&run.graph, &run.tracks().unwrap(), Exec::Sequential).is_ok());
    }
}
