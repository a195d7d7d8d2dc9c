//! Nonrepetitive colourings: layer-pattern sequences, colourings from the
//! recursive separator labels and from shadow-complete layerings, and an
//! exhaustive repetition search.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, Layering};
use crate::layouts::ComputeLabels;
use crate::shadow::verify_shadow_complete;

/// Colour per vertex; ids are dense `0..palette_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    pub colour: Vec<usize>,
}

impl Colouring {
    /// Renumbers arbitrary ordered keys densely in key order.
    pub fn from_keys<K: Ord + Clone>(keys: &[K]) -> Self {
        let mut ids: BTreeMap<K, usize> = keys.iter().cloned().map(|k| (k, 0)).collect();
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        Colouring { colour: keys.iter().map(|k| ids[k]).collect() }
    }

    pub fn palette_size(&self) -> usize {
        let mut c = self.colour.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// First edge whose ends share a colour.
    pub fn improper_edge(&self, g: &Graph) -> Option<(usize, usize)> {
        g.edges().iter().copied().find(|&(u, v)| self.colour[u] == self.colour[v])
    }
}

/// Symbol `1..=4` per layer index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPatternColouring {
    pub seq: Vec<u8>,
}

impl LayerPatternColouring {
    pub fn symbol(&self, layer: usize) -> u8 {
        self.seq[layer]
    }

    pub fn symbols(&self) -> usize {
        let mut s = self.seq.clone();
        s.sort_unstable();
        s.dedup();
        s.len()
    }
}

/// Square-free ternary word: fixed point of `a → abc, b → ac, c → b`.
fn ternary_square_free(len: usize) -> Vec<u8> {
    let mut w = vec![0u8];
    while w.len() < len {
        w = w
            .iter()
            .flat_map(|&c| match c {
                0 => vec![0, 1, 2],
                1 => vec![0, 2],
                _ => vec![1],
            })
            .collect();
    }
    w.truncate(len);
    w
}

/// A four-symbol sequence in which every lazy walk coloured as a square has
/// equal halves: the image of a square-free ternary word under a uniform
/// morphism whose blocks each end in the separator symbol.
pub fn layer_pattern_colouring(t: usize) -> LayerPatternColouring {
    const BLOCKS: [[u8; 5]; 3] = [[0, 1, 2, 0, 3], [1, 0, 2, 1, 3], [2, 0, 1, 2, 3]];
    let seq = ternary_square_free(t / 5 + 1)
        .into_iter()
        .flat_map(|c| BLOCKS[c as usize])
        .take(t)
        .map(|s| s + 1)
        .collect();
    LayerPatternColouring { seq }
}

/// Index sequence of a repetitively coloured lazy walk whose halves differ.
pub type WalkCounterexample = Vec<usize>;

/// All lazy walks of even length up to `max_walk`, explored as pairs
/// `(v_i, v_{t+i})` moving in lockstep.
pub fn verify_layer_pattern(lp: &LayerPatternColouring, max_walk: usize) -> std::result::Result<(), WalkCounterexample> {
    let t = lp.seq.len();
    let half = max_walk / 2;
    let steps = |x: usize| -> Vec<usize> { [x.wrapping_sub(1), x, x + 1].into_iter().filter(|&y| y < t).collect() };
    fn go(
        lp: &LayerPatternColouring,
        steps: &dyn Fn(usize) -> Vec<usize>,
        first: &mut Vec<usize>,
        second: &mut Vec<usize>,
        half: usize,
    ) -> Option<WalkCounterexample> {
        let (x, y) = (*first.last().unwrap(), *second.last().unwrap());
        if first != second && x.abs_diff(second[0]) <= 1 {
            let mut w = first.clone();
            w.extend(second.iter());
            return Some(w);
        }
        if first.len() == half {
            return None;
        }
        for nx in steps(x) {
            for ny in steps(y) {
                if lp.seq[nx] == lp.seq[ny] {
                    first.push(nx);
                    second.push(ny);
                    let hit = go(lp, steps, first, second, half);
                    first.pop();
                    second.pop();
                    if hit.is_some() {
                        return hit;
                    }
                }
            }
        }
        None
    }
    if half == 0 {
        return Ok(());
    }
    for a in 0..t {
        for b in 0..t {
            if lp.seq[a] == lp.seq[b] {
                if let Some(w) = go(lp, &steps, &mut vec![a], &mut vec![b], half) {
                    return Err(w);
                }
            }
        }
    }
    Ok(())
}

/// Unbounded check: searches pairs `(v_i, v_{t+i})` over all walk lengths.
/// Returns a shortest counterexample if one exists.
pub fn verify_layer_pattern_exact(lp: &LayerPatternColouring) -> std::result::Result<(), WalkCounterexample> {
    let t = lp.seq.len();
    let steps = |x: usize| [x.wrapping_sub(1), x, x + 1].into_iter().filter(move |&y| y < t);
    for start2 in 0..t {
        // state: (x, y, diverged); y starts at start2
        let idx = |x: usize, y: usize, d: bool| (x * t + y) * 2 + usize::from(d);
        let mut prev = vec![usize::MAX; t * t * 2];
        let mut seen = vec![false; t * t * 2];
        let mut queue = VecDeque::new();
        for x in 0..t {
            if lp.seq[x] == lp.seq[start2] {
                let s = idx(x, start2, x != start2);
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            let (d, xy) = (s % 2 == 1, s / 2);
            let (x, y) = (xy / t, xy % t);
            if d && x.abs_diff(start2) <= 1 {
                let mut pairs = vec![(x, y)];
                let mut cur = s;
                while prev[cur] != usize::MAX {
                    cur = prev[cur];
                    pairs.push((cur / 2 / t, cur / 2 % t));
                }
                pairs.reverse();
                let mut w: Vec<usize> = pairs.iter().map(|p| p.0).collect();
                w.extend(pairs.iter().map(|p| p.1));
                return Err(w);
            }
            for nx in steps(x) {
                for ny in steps(y) {
                    if lp.seq[nx] == lp.seq[ny] {
                        let ns = idx(nx, ny, d || nx != ny);
                        if !seen[ns] {
                            seen[ns] = true;
                            prev[ns] = s;
                            queue.push_back(ns);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Colour `(pattern(layer), depth, label)`; the palette stays within
/// `4ℓ1 + 4ℓ2·D` scaled by the pattern's symbol count over 4.
pub fn nonrep_from_compute(g: &Graph, cl: &ComputeLabels, lp: &LayerPatternColouring) -> Result<Colouring> {
    let n = g.n();
    if cl.depth.len() != n {
        return Err(Error::SizeMismatch(cl.depth.len(), n));
    }
    if lp.seq.len() < cl.layering.len() {
        return Err(Error::InconsistentLabels(format!(
            "pattern covers {} of {} layers",
            lp.seq.len(),
            cl.layering.len()
        )));
    }
    let keys: Vec<(u8, usize, usize)> =
        (0..n).map(|v| (lp.symbol(cl.layering.layer_of(v)), cl.depth[v], cl.label[v])).collect();
    let c = Colouring::from_keys(&keys);
    let bound = cl.palette_bound() * lp.symbols().max(4) / 4;
    if c.palette_size() > bound {
        return Err(Error::Bound(format!("palette {} exceeds {bound}", c.palette_size())));
    }
    Ok(c)
}

/// Colour `(pattern(layer), layer colour)` on a shadow-complete layering;
/// the palette stays within `4c` for `c` colours per layer.
pub fn shadow_nonrep_compose(
    g: &Graph,
    layering: &Layering,
    layer_colours: &Colouring,
    lp: &LayerPatternColouring,
) -> Result<Colouring> {
    let n = g.n();
    if layer_colours.colour.len() != n {
        return Err(Error::SizeMismatch(layer_colours.colour.len(), n));
    }
    verify_shadow_complete(g, layering, n).map_err(|v| Error::NotShadowComplete(v.to_string()))?;
    if lp.seq.len() < layering.len() {
        return Err(Error::InconsistentLabels(format!("pattern covers {} of {} layers", lp.seq.len(), layering.len())));
    }
    let c = layering
        .layers()
        .iter()
        .map(|l| {
            let mut cs: Vec<usize> = l.iter().map(|&v| layer_colours.colour[v]).collect();
            cs.sort_unstable();
            cs.dedup();
            cs.len()
        })
        .max()
        .unwrap_or(0);
    let keys: Vec<(u8, usize)> = (0..n).map(|v| (lp.symbol(layering.layer_of(v)), layer_colours.colour[v])).collect();
    let out = Colouring::from_keys(&keys);
    if out.palette_size() > 4 * c {
        return Err(Error::Bound(format!("palette {} exceeds 4·{c}", out.palette_size())));
    }
    Ok(out)
}

/// `n` for small graphs, 10 otherwise.
pub fn default_max_path(n: usize) -> usize {
    if n <= 40 {
        n
    } else {
        10
    }
}

struct PairSearch<'a> {
    g: &'a Graph,
    colour: &'a [usize],
    half: usize,
    used: Vec<bool>,
    first: Vec<usize>,
    second: Vec<usize>,
}

impl PairSearch<'_> {
    /// Grows both halves by one vertex each, keeping colours equal.
    fn grow(&mut self) -> bool {
        let (x, y) = (*self.first.last().unwrap(), *self.second.last().unwrap());
        if self.g.has_edge(x, self.second[0]) {
            return true;
        }
        if self.first.len() == self.half {
            return false;
        }
        for &nx in self.g.neighbors(x) {
            if self.used[nx] {
                continue;
            }
            self.used[nx] = true;
            self.first.push(nx);
            for &ny in self.g.neighbors(y) {
                if self.used[ny] || self.colour[ny] != self.colour[nx] {
                    continue;
                }
                self.used[ny] = true;
                self.second.push(ny);
                if self.grow() {
                    return true;
                }
                self.second.pop();
                self.used[ny] = false;
            }
            self.first.pop();
            self.used[nx] = false;
        }
        false
    }
}

/// Searches all simple paths with at most `max_path` vertices for one whose
/// colour sequence is a square. Both halves are grown in lockstep, so only
/// pairs of equally coloured walks are ever explored. The reported path is
/// the one found from the smallest start vertex.
pub fn verify_nonrepetitive(
    g: &Graph,
    c: &Colouring,
    max_path: usize,
    exec: Exec,
) -> std::result::Result<(), Vec<usize>> {
    let n = g.n();
    let half = max_path / 2;
    if half == 0 {
        return Ok(());
    }
    let hit = exec.find_first(n, |a| {
        for b in 0..n {
            if b == a || c.colour[a] != c.colour[b] {
                continue;
            }
            let mut s = PairSearch {
                g,
                colour: &c.colour,
                half,
                used: vec![false; n],
                first: vec![a],
                second: vec![b],
            };
            s.used[a] = true;
            s.used[b] = true;
            if s.grow() {
                let mut p = s.first;
                p.extend(s.second);
                return Some(p);
            }
        }
        None
    });
    match hit {
        Some(p) => Err(p),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Every simple path with an even number of vertices, checked directly.
    fn naive_repetitive(g: &Graph, colour: &[usize]) -> bool {
        fn dfs(g: &Graph, colour: &[usize], path: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let k = path.len();
            if k.is_multiple_of(2) && (0..k / 2).all(|i| colour[path[i]] == colour[path[k / 2 + i]]) {
                return true;
            }
            let last = *path.last().unwrap();
            for &w in g.neighbors(last) {
                if !used[w] {
                    used[w] = true;
                    path.push(w);
                    if dfs(g, colour, path, used) {
                        return true;
                    }
                    path.pop();
                    used[w] = false;
                }
            }
            false
        }
        (0..g.n()).any(|s| {
            let mut used = vec![false; g.n()];
            used[s] = true;
            dfs(g, colour, &mut vec![s], &mut used)
        })
    }

    fn is_square(colour: &[usize], p: &[usize]) -> bool {
        let t = p.len() / 2;
        p.len().is_multiple_of(2) && (0..t).all(|i| colour[p[i]] == colour[p[t + i]])
    }

    #[test]
    fn p4_alternating_is_repetitive() {
        let g = Graph::path(4);
        let c = Colouring { colour: vec![1, 2, 1, 2] };
        let p = verify_nonrepetitive(&g, &c, 4, Exec::Sequential).unwrap_err();
        assert_eq!(p.len(), 4);
        assert!(is_square(&c.colour, &p));
    }

    #[test]
    fn edge_same_colour_is_repetitive() {
        let g = Graph::path(2);
        let c = Colouring { colour: vec![1, 1] };
        assert_eq!(verify_nonrepetitive(&g, &c, 2, Exec::Sequential).unwrap_err().len(), 2);
    }

    #[test]
    fn thue_path_is_nonrepetitive() {
        let n = 30;
        let colour: Vec<usize> = ternary_square_free(n).into_iter().map(usize::from).collect();
        let c = Colouring { colour };
        assert!(verify_nonrepetitive(&Graph::path(n), &c, n, Exec::Parallel).is_ok());
    }

    #[test]
    fn pattern_small_cases() {
        assert_eq!(layer_pattern_colouring(1).seq.len(), 1);
        let two = layer_pattern_colouring(2).seq;
        assert_ne!(two[0], two[1]);
        assert!(layer_pattern_colouring(200).seq.iter().all(|&s| (1..=4).contains(&s)));
    }

    #[test]
    fn pattern_walks_up_to_twelve() {
        assert!(verify_layer_pattern(&layer_pattern_colouring(14), 12).is_ok());
    }

    #[test]
    fn pattern_exact_long() {
        for t in [1, 2, 5, 14, 40, 90] {
            assert_eq!(verify_layer_pattern_exact(&layer_pattern_colouring(t)), Ok(()), "t = {t}");
        }
    }

    #[test]
    fn constant_pattern_fails() {
        let lp = LayerPatternColouring { seq: vec![1, 1, 1] };
        assert!(verify_layer_pattern(&lp, 2).is_err());
        assert!(verify_layer_pattern_exact(&lp).is_err());
    }

    #[test]
    fn alternating_pair_ok() {
        let lp = LayerPatternColouring { seq: vec![1, 2] };
        assert!(verify_layer_pattern(&lp, 8).is_ok());
        assert!(verify_layer_pattern_exact(&lp).is_ok());
    }

    #[test]
    fn from_keys_dense() {
        let c = Colouring::from_keys(&[(2, 'a'), (0, 'b'), (2, 'a')]);
        assert_eq!(c.colour, vec![1, 0, 1]);
        assert_eq!(c.palette_size(), 2);
    }

    #[test]
    fn tree_shadow_compose_four_colours() {
        let g = Graph::new(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let (l, _) = crate::graph::bfs_layering(&g, &[0]).unwrap();
        let c = shadow_nonrep_compose(&g, &l, &Colouring { colour: vec![0; 7] }, &layer_pattern_colouring(l.len())).unwrap();
        assert!(c.palette_size() <= 4);
        assert!(verify_nonrepetitive(&g, &c, 7, Exec::Sequential).is_ok());
    }

    #[test]
    fn single_layer_compose_keeps_colouring() {
        let g = Graph::path(3);
        let l = Layering::from_layers(3, vec![vec![0, 1, 2]]);
        let base = Colouring { colour: vec![0, 1, 2] };
        let c = shadow_nonrep_compose(&g, &l, &base, &layer_pattern_colouring(1)).unwrap();
        assert_eq!(c.colour, base.colour);
    }

    fn small_graph() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (2usize..=8).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            (proptest::collection::vec(any::<bool>(), m), proptest::collection::vec(0usize..3, n)).prop_map(
                move |(keep, colour)| {
                    let es = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
                    (Graph::new(n, es).unwrap(), colour)
                },
            )
        })
    }

    proptest! {
        #[test]
        fn lockstep_search_matches_naive((g, colour) in small_graph()) {
            let c = Colouring { colour: colour.clone() };
            let fast = verify_nonrepetitive(&g, &c, g.n(), Exec::Sequential);
            prop_assert_eq!(fast.is_err(), naive_repetitive(&g, &colour));
            if let Err(p) = fast {
                prop_assert!(is_square(&colour, &p));
                for w in p.windows(2) {
                    prop_assert!(g.has_edge(w[0], w[1]));
                }
            }
            prop_assert_eq!(verify_nonrepetitive(&g, &c, g.n(), Exec::Parallel), verify_nonrepetitive(&g, &c, g.n(), Exec::Sequential));
        }
    }
}
