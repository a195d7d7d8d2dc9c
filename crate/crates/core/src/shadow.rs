//! Rich tree decompositions, shadow-complete layerings built from them, the
//! track composition over such layerings, and the recursive drivers that
//! peel one level of richness at a time.

use std::collections::BTreeMap;
use std::fmt;

use crate::decomposition::{validate_tree_decomposition, TreeDecomposition};
use crate::embedding::planar_embedding;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{validate_layering, Graph, Layering};
use crate::layouts::{compute_recursion, track_layout_from_compute, verify_track_layout, TrackLayout};
use crate::nonrep::{layer_pattern_colouring, nonrep_from_compute, shadow_nonrep_compose, Colouring};
use crate::decomposition::CycleSeparator;

/// Tree decomposition whose adjacent bags meet in cliques of at most
/// `richness` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RichDecomposition {
    pub decomposition: TreeDecomposition,
    pub richness: usize,
}

impl RichDecomposition {
    /// Validates the decomposition and measures its richness.
    pub fn new(g: &Graph, td: TreeDecomposition) -> Result<Self> {
        if let Err(v) = validate_tree_decomposition(g, &td) {
            return Err(Error::InvalidDecomposition(v[0].to_string()));
        }
        let richness = richness_of(g, &td)?;
        Ok(RichDecomposition { decomposition: td, richness })
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

/// Largest adjacent-bag intersection; fails if one is not a clique.
pub fn richness_of(g: &Graph, td: &TreeDecomposition) -> Result<usize> {
    let mut k = 0;
    for &(x, y) in &td.tree {
        let common = intersect(&td.bags[x], &td.bags[y]);
        if !g.is_clique(&common) {
            return Err(Error::NotRich(format!("bags {x} and {y} meet in non-clique {common:?}")));
        }
        k = k.max(common.len());
    }
    Ok(k)
}

/// Shadow-complete layering with a decomposition of every layer. Layer
/// decompositions use the ids of the whole graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowLayering {
    pub layering: Layering,
    pub per_layer: Vec<TreeDecomposition>,
    pub root: usize,
    pub richness: usize,
}

/// Contracts tree edges `xy` with `B_x ⊆ B_y` into `y`. Surviving nodes
/// keep their relative order.
fn contract_redundant(td: &TreeDecomposition) -> TreeDecomposition {
    let n = td.len();
    let mut target: Vec<usize> = (0..n).collect();
    let find = |target: &mut Vec<usize>, mut x: usize| {
        while target[x] != x {
            target[x] = target[target[x]];
            x = target[x];
        }
        x
    };
    loop {
        let mut changed = false;
        for &(a, b) in &td.tree {
            let (x, y) = (find(&mut target, a), find(&mut target, b));
            if x == y {
                continue;
            }
            let (bx, by) = (&td.bags[x], &td.bags[y]);
            if bx.iter().all(|v| by.binary_search(v).is_ok()) {
                target[x] = y;
                changed = true;
            } else if by.iter().all(|v| bx.binary_search(v).is_ok()) {
                target[y] = x;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut bags = Vec::new();
    for x in 0..n {
        if find(&mut target, x) == x {
            new_id[x] = bags.len();
            bags.push(td.bags[x].clone());
        }
    }
    let mut tree = Vec::new();
    for &(a, b) in &td.tree {
        let (x, y) = (new_id[find(&mut target, a)], new_id[find(&mut target, b)]);
        if x != y {
            tree.push((x.min(y), x.max(y)));
        }
    }
    TreeDecomposition::new(bags, tree)
}

/// Layering by distance from the smallest vertex in the graph where every
/// bag is completed to a clique; each layer inherits the bags cut down to
/// it, which are one level less rich.
pub fn rich_shadow_layering(g: &Graph, rd: &RichDecomposition) -> Result<ShadowLayering> {
    let n = g.n();
    if rd.richness == 0 && g.m() > 0 {
        return Err(Error::InvalidParameter("richness must be at least 1".into()));
    }
    if let Err(v) = validate_tree_decomposition(g, &rd.decomposition) {
        return Err(Error::InvalidDecomposition(v[0].to_string()));
    }
    if richness_of(g, &rd.decomposition)? > rd.richness {
        return Err(Error::NotRich(format!("decomposition is more than {}-rich", rd.richness)));
    }
    if n == 0 {
        return Err(Error::TooFewVertices(0));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let td = contract_redundant(&rd.decomposition);
    let r = 0;
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, b) in td.bags.iter().enumerate() {
        for &v in b {
            holders[v].push(x);
        }
    }
    let mut dist = vec![usize::MAX; n];
    let mut bag_done = vec![false; td.len()];
    dist[r] = 0;
    let mut queue = std::collections::VecDeque::from([r]);
    while let Some(v) = queue.pop_front() {
        for &x in &holders[v] {
            if bag_done[x] {
                continue;
            }
            bag_done[x] = true;
            for &w in &td.bags[x] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let layering = Layering::from_indices(dist);
    let alpha = holders[r][0];
    let (parent, order) = td.rooted(alpha);
    let mut ell = vec![0usize; td.len()];
    let mut sep: Vec<Vec<usize>> = vec![Vec::new(); td.len()];
    for &x in &order {
        let bag = &td.bags[x];
        let (fresh, shared): (Vec<usize>, Vec<usize>) = match parent[x] {
            None => bag.iter().partition(|&&v| v != r),
            Some(p) => bag.iter().partition(|&&v| td.bags[p].binary_search(&v).is_err()),
        };
        let bad = |msg: String| Error::InvalidDecomposition(format!("bag {x}: {msg}"));
        let l = match fresh.first() {
            Some(&v) => layering.layer_of(v),
            None if parent[x].is_none() => 0,
            None => return Err(bad("contained in its parent".into())),
        };
        if fresh.iter().any(|&v| layering.layer_of(v) != l) {
            return Err(bad("new vertices span two layers".into()));
        }
        if l > 0 && (shared.is_empty() || bag.iter().any(|&v| layering.layer_of(v) + 1 < l)) {
            return Err(bad("not within two consecutive layers".into()));
        }
        if bag.iter().any(|&v| layering.layer_of(v) + 1 == l && shared.binary_search(&v).is_err()) {
            return Err(bad("lower-layer vertex first seen here".into()));
        }
        if let Some(p) = parent[x] {
            if ell[p] > l {
                return Err(bad("layer index decreases away from the root".into()));
            }
        }
        ell[x] = l;
        sep[x] = shared;
    }
    let mut per_layer = Vec::with_capacity(layering.len());
    for i in 0..layering.len() {
        if i == 0 {
            per_layer.push(TreeDecomposition::single(vec![r]));
            continue;
        }
        let keep: Vec<usize> = (0..td.len()).filter(|&x| ell[x] <= i).collect();
        let mut idx = vec![usize::MAX; td.len()];
        for (j, &x) in keep.iter().enumerate() {
            idx[x] = j;
        }
        let bags = keep
            .iter()
            .map(|&x| td.bags[x].iter().copied().filter(|&v| layering.layer_of(v) == i).collect())
            .collect();
        let tree = td
            .tree
            .iter()
            .filter(|&&(a, b)| idx[a] != usize::MAX && idx[b] != usize::MAX)
            .map(|&(a, b)| (idx[a], idx[b]))
            .collect();
        per_layer.push(TreeDecomposition::new(bags, tree).prune_empty_leaves());
    }
    let sl = ShadowLayering { layering, per_layer, root: r, richness: rd.richness };
    for (i, td_i) in sl.per_layer.iter().enumerate() {
        let (h, ids) = g.induced(sl.layering.layer(i));
        let mut local = vec![usize::MAX; n];
        for (j, &v) in ids.iter().enumerate() {
            local[v] = j;
        }
        let loc = td_i.relabel(&local);
        if let Err(v) = validate_tree_decomposition(&h, &loc) {
            return Err(Error::InvalidDecomposition(format!("layer {i}: {}", v[0])));
        }
        if i > 0 && richness_of(&h, &loc)? + 1 > rd.richness {
            return Err(Error::NotRich(format!("layer {i} decomposition is not {}-rich", rd.richness - 1)));
        }
    }
    Ok(sl)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShadowViolation {
    InvalidLayering(String),
    NotClique { layer: usize, shadow: Vec<usize> },
    TooLarge { layer: usize, shadow: Vec<usize>, bound: usize },
}

impl fmt::Display for ShadowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShadowViolation::InvalidLayering(s) => write!(f, "invalid layering: {s}"),
            ShadowViolation::NotClique { layer, shadow } => {
                write!(f, "shadow {shadow:?} in layer {layer} is not a clique")
            }
            ShadowViolation::TooLarge { layer, shadow, bound } => {
                write!(f, "shadow {shadow:?} in layer {layer} exceeds size {bound}")
            }
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Shadow of every component of `G[V_i ∪ … ∪ V_t]`, for `i = t` down to 1,
/// as `(layer, shadow)` pairs.
pub fn shadows(g: &Graph, l: &Layering) -> Vec<(usize, Vec<usize>)> {
    let n = g.n();
    let mut uf: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for i in (1..l.len()).rev() {
        for &v in l.layer(i) {
            for &w in g.neighbors(v) {
                if l.layer_of(w) >= i {
                    let (a, b) = (find(&mut uf, v), find(&mut uf, w));
                    if a != b {
                        uf[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut by_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in l.layer(i) {
            let c = find(&mut uf, v);
            let e = by_comp.entry(c).or_default();
            e.extend(g.neighbors(v).iter().copied().filter(|&w| l.layer_of(w) + 1 == i));
        }
        for (_, mut s) in by_comp {
            s.sort_unstable();
            s.dedup();
            out.push((i, s));
        }
    }
    out
}

/// Every shadow must be a clique of at most `k` vertices.
pub fn verify_shadow_complete(g: &Graph, l: &Layering, k: usize) -> std::result::Result<(), ShadowViolation> {
    if let Err(v) = validate_layering(g, l) {
        return Err(ShadowViolation::InvalidLayering(v[0].to_string()));
    }
    for (layer, shadow) in shadows(g, l) {
        if !g.is_clique(&shadow) {
            return Err(ShadowViolation::NotClique { layer, shadow });
        }
        if shadow.len() > k {
            return Err(ShadowViolation::TooLarge { layer, shadow, bound: k });
        }
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `3c · Σ_{i=1..s} C(c, i)`, at least `3c`.
pub fn shadow_track_bound(c: usize, s: usize) -> usize {
    let sigs = (1..=s).map(|i| binomial(c, i)).fold(0usize, usize::saturating_add).max(1);
    (3 * c).saturating_mul(sigs)
}

/// Restriction of a whole-graph track assignment to each layer is the layer
/// layout; checked on the intra-layer edges only.
fn intra_layer_graph(g: &Graph, l: &Layering) -> Graph {
    let es = g.edges().iter().copied().filter(|&(u, v)| l.layer_of(u) == l.layer_of(v));
    Graph::new(g.n(), es).expect("subgraph of a simple graph")
}

/// Combines per-layer track layouts (given merged by track index, ordered by
/// layer within each track) into a layout of the whole graph. Layer
/// components form a forest laid out on three tracks by depth; children
/// with the same parent-clique signature share `c` sub-tracks and follow
/// the order of their parent cliques.
pub fn shadow_track_compose(g: &Graph, l: &Layering, layer_layout: &TrackLayout, s: usize) -> Result<TrackLayout> {
    let n = g.n();
    if l.vertex_count() != n || layer_layout.n() != n {
        return Err(Error::SizeMismatch(l.vertex_count().max(layer_layout.n()), n));
    }
    verify_shadow_complete(g, l, s).map_err(|v| Error::NotShadowComplete(v.to_string()))?;
    let intra = intra_layer_graph(g, l);
    verify_track_layout(&intra, layer_layout, Exec::Sequential).map_err(|v| Error::InvalidTracks(v.to_string()))?;
    let c = layer_layout.num_tracks().max(1);
    if l.len() <= 1 {
        return Ok(layer_layout.compact());
    }

    // layer components as forest nodes
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for layer in l.layers() {
        for &v0 in layer {
            if comp_of[v0] != usize::MAX {
                continue;
            }
            let id = comps.len();
            comp_of[v0] = id;
            let mut members = vec![v0];
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in intra.neighbors(v) {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
    }
    let k = comps.len();
    let mut parent_clique: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut parent: Vec<Option<usize>> = vec![None; k];
    for (y, members) in comps.iter().enumerate() {
        let i = l.layer_of(members[0]);
        let mut cl: Vec<usize> = members
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied().filter(|&w| l.layer_of(w) + 1 == i))
            .collect();
        cl.sort_unstable();
        cl.dedup();
        if cl.len() > s || !g.is_clique(&cl) {
            return Err(Error::NotShadowComplete(format!("parent clique {cl:?} of component {members:?}")));
        }
        parent[y] = cl.first().map(|&v| comp_of[v]);
        parent_clique[y] = cl;
    }
    // signature: tracks of the parent clique; position vector in track order
    let signature = |y: usize| -> (Vec<usize>, Vec<usize>) {
        let mut tp: Vec<(usize, usize)> =
            parent_clique[y].iter().map(|&v| (layer_layout.track_of(v), layer_layout.position(v))).collect();
        tp.sort_unstable();
        tp.into_iter().unzip()
    };
    let mut sig_id: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for y in 0..k {
        let (sig, _) = signature(y);
        if !sig.is_empty() {
            let next = sig_id.len();
            sig_id.entry(sig).or_insert(next);
        }
    }
    let group = |y: usize| -> usize {
        let (sig, _) = signature(y);
        if sig.is_empty() {
            0
        } else {
            sig_id[&sig]
        }
    };
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut roots = Vec::new();
    for y in 0..k {
        match parent[y] {
            Some(x) => children[x].push(y),
            None => roots.push(y),
        }
    }
    for ch in &mut children {
        ch.sort_by_cached_key(|&y| {
            let (sig, pos) = signature(y);
            (sig, pos, y)
        });
        for w in ch.windows(2) {
            let ((s1, p1), (s2, p2)) = (signature(w[0]), signature(w[1]));
            if s1 == s2 && p1.iter().zip(&p2).any(|(a, b)| a > b) {
                return Err(Error::CliqueOrder(format!(
                    "parent cliques {:?} and {:?} are not linearly ordered",
                    parent_clique[w[0]], parent_clique[w[1]]
                )));
            }
        }
    }
    // parent-grouped BFS order gives each node its rank; depth picks the forest track
    let mut depth = vec![0usize; k];
    let mut order: Vec<usize> = roots.clone();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &children[x] {
            depth[y] = depth[x] + 1;
            order.push(y);
        }
    }
    order.sort_by_key(|&x| depth[x]);
    let mut rank = vec![0; k];
    for (r, &x) in order.iter().enumerate() {
        rank[x] = r;
    }
    let mut tracks: BTreeMap<(usize, usize, usize), Vec<(usize, usize, usize)>> = BTreeMap::new();
    for v in 0..n {
        let y = comp_of[v];
        let key = (depth[y] % 3, group(y), layer_layout.track_of(v));
        tracks.entry(key).or_default().push((rank[y], layer_layout.position(v), v));
    }
    let tracks: Vec<Vec<usize>> = tracks
        .into_values()
        .map(|mut t| {
            t.sort_unstable();
            t.into_iter().map(|e| e.2).collect()
        })
        .collect();
    let tl = TrackLayout::new(n, tracks)?;
    let bound = shadow_track_bound(c, s.max(1));
    if tl.num_tracks() > bound {
        return Err(Error::Bound(format!("{} tracks exceed {bound}", tl.num_tracks())));
    }
    Ok(tl)
}

/// Statistics for one level of a recursive driver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub richness: usize,
    /// Largest input count (tracks or colours) seen at this level.
    pub input: usize,
    /// Largest output count produced at this level.
    pub output: usize,
    /// Largest per-call bound asserted at this level.
    pub bound: usize,
}

fn record(stats: &mut BTreeMap<usize, LevelStats>, richness: usize, input: usize, output: usize, bound: usize) {
    let e = stats.entry(richness).or_insert(LevelStats { richness, input: 0, output: 0, bound: 0 });
    e.input = e.input.max(input);
    e.output = e.output.max(output);
    e.bound = e.bound.max(bound);
}

/// A graph split into components, each with its decomposition in local ids.
fn split_components(g: &Graph, td: &TreeDecomposition) -> Vec<(Graph, Vec<usize>, TreeDecomposition)> {
    g.components()
        .into_iter()
        .map(|comp| {
            let (h, ids) = g.induced(&comp);
            let mut local = vec![usize::MAX; g.n()];
            for (j, &v) in ids.iter().enumerate() {
                local[v] = j;
            }
            let td = td.relabel(&local).prune_empty_leaves();
            (h, ids, td)
        })
        .collect()
}

/// Per-layer subgraphs of a shadow layering in local ids.
fn layer_pieces(g: &Graph, sl: &ShadowLayering) -> Vec<(Graph, Vec<usize>, TreeDecomposition)> {
    sl.layering
        .layers()
        .iter()
        .zip(&sl.per_layer)
        .map(|(layer, td)| {
            let (h, ids) = g.induced(layer);
            let mut local = vec![usize::MAX; g.n()];
            for (j, &v) in ids.iter().enumerate() {
                local[v] = j;
            }
            (h, ids, td.relabel(&local))
        })
        .collect()
}

/// Merges layouts of vertex-disjoint pieces track by track.
fn merge_tracks(n: usize, pieces: &[(Vec<usize>, TrackLayout)]) -> TrackLayout {
    let t = pieces.iter().map(|(_, tl)| tl.tracks().len()).max().unwrap_or(0);
    let mut tracks = vec![Vec::new(); t];
    for (ids, tl) in pieces {
        for (j, tr) in tl.tracks().iter().enumerate() {
            tracks[j].extend(tr.iter().map(|&v| ids[v]));
        }
    }
    TrackLayout::new(n, tracks).expect("pieces partition the vertex set").compact()
}

fn merge_colours(n: usize, pieces: &[(Vec<usize>, Colouring)]) -> Colouring {
    let mut colour = vec![0; n];
    for (ids, c) in pieces {
        for (v, &col) in c.colour.iter().enumerate() {
            colour[ids[v]] = col;
        }
    }
    Colouring::from_keys(&colour)
}

pub type TrackSolver<'a> = dyn Fn(&Graph) -> Result<TrackLayout> + Sync + 'a;
pub type ColourSolver<'a> = dyn Fn(&Graph) -> Result<Colouring> + Sync + 'a;

#[derive(Clone, Debug)]
pub struct TrackDriverOutput {
    pub layout: TrackLayout,
    pub levels: Vec<LevelStats>,
}

#[derive(Clone, Debug)]
pub struct ColourDriverOutput {
    pub colouring: Colouring,
    pub levels: Vec<LevelStats>,
}

fn track_level(
    g: &Graph,
    td: &TreeDecomposition,
    k: usize,
    solver: &TrackSolver,
    stats: &mut BTreeMap<usize, LevelStats>,
) -> Result<TrackLayout> {
    let mut pieces = Vec::new();
    for (h, ids, tdh) in split_components(g, td) {
        let tl = if k == 0 {
            let tl = solver(&h)?;
            verify_track_layout(&h, &tl, Exec::Sequential).map_err(|v| Error::InvalidTracks(v.to_string()))?;
            record(stats, 0, 0, tl.num_tracks(), tl.num_tracks());
            tl
        } else {
            let rd = RichDecomposition { decomposition: tdh, richness: k };
            let sl = rich_shadow_layering(&h, &rd)?;
            let mut layers = Vec::new();
            for (hl, lids, tdl) in layer_pieces(&h, &sl) {
                layers.push((lids, track_level(&hl, &tdl, k - 1, solver, stats)?));
            }
            let merged = merge_tracks(h.n(), &layers);
            let c = merged.num_tracks();
            let tl = shadow_track_compose(&h, &sl.layering, &merged, k)?;
            record(stats, k, c, tl.num_tracks(), shadow_track_bound(c.max(1), k));
            tl
        };
        pieces.push((ids, tl));
    }
    Ok(merge_tracks(g.n(), &pieces))
}

/// Track layout of a graph with a rich decomposition: one shadow layering
/// per level of richness, `solver` on the 0-rich pieces.
pub fn recursive_track_driver(g: &Graph, rd: &RichDecomposition, solver: &TrackSolver) -> Result<TrackDriverOutput> {
    let mut stats = BTreeMap::new();
    let layout = track_level(g, &rd.decomposition, rd.richness, solver, &mut stats)?;
    verify_track_layout(g, &layout, Exec::default()).map_err(|v| Error::InvalidTracks(v.to_string()))?;
    Ok(TrackDriverOutput { layout, levels: stats.into_values().collect() })
}

fn colour_level(
    g: &Graph,
    td: &TreeDecomposition,
    k: usize,
    solver: &ColourSolver,
    stats: &mut BTreeMap<usize, LevelStats>,
) -> Result<Colouring> {
    let mut pieces = Vec::new();
    for (h, ids, tdh) in split_components(g, td) {
        let c = if k == 0 {
            let c = solver(&h)?;
            if c.colour.len() != h.n() {
                return Err(Error::SizeMismatch(c.colour.len(), h.n()));
            }
            record(stats, 0, 0, c.palette_size(), c.palette_size());
            c
        } else {
            let rd = RichDecomposition { decomposition: tdh, richness: k };
            let sl = rich_shadow_layering(&h, &rd)?;
            let mut layers = Vec::new();
            for (hl, lids, tdl) in layer_pieces(&h, &sl) {
                layers.push((lids, colour_level(&hl, &tdl, k - 1, solver, stats)?));
            }
            let merged = merge_colours(h.n(), &layers);
            let lp = layer_pattern_colouring(sl.layering.len());
            let out = shadow_nonrep_compose(&h, &sl.layering, &merged, &lp)?;
            let c = merged.palette_size();
            record(stats, k, c, out.palette_size(), 4 * c);
            out
        };
        pieces.push((ids, c));
    }
    Ok(merge_colours(g.n(), &pieces))
}

/// Nonrepetitive colouring of a graph with a rich decomposition, pairing
/// each layer's colour with a layer-pattern symbol at every level.
pub fn recursive_nonrep_driver(g: &Graph, rd: &RichDecomposition, solver: &ColourSolver) -> Result<ColourDriverOutput> {
    let mut stats = BTreeMap::new();
    let colouring = colour_level(g, &rd.decomposition, rd.richness, solver, &mut stats)?;
    Ok(ColourDriverOutput { colouring, levels: stats.into_values().collect() })
}

/// One track per vertex.
pub fn singleton_tracks(h: &Graph) -> Result<TrackLayout> {
    TrackLayout::new(h.n(), (0..h.n()).map(|v| vec![v]).collect())
}

/// One colour per vertex.
pub fn distinct_colours(h: &Graph) -> Result<Colouring> {
    Ok(Colouring { colour: (0..h.n()).collect() })
}

/// Cycle-separator recursion on a connected planar piece.
fn planar_labels(h: &Graph) -> Result<crate::layouts::ComputeLabels> {
    let eg = planar_embedding(h)?;
    let sep = CycleSeparator::new(&eg, 0)?;
    compute_recursion(h, &sep, &[], 0)
}

/// Track layout of a connected planar piece.
pub fn planar_tracks(h: &Graph) -> Result<TrackLayout> {
    if h.n() == 0 {
        return TrackLayout::new(0, Vec::new());
    }
    track_layout_from_compute(h, &planar_labels(h)?)
}

/// Nonrepetitive colouring of a connected planar piece.
pub fn planar_colours(h: &Graph) -> Result<Colouring> {
    if h.n() == 0 {
        return Ok(Colouring { colour: Vec::new() });
    }
    let cl = planar_labels(h)?;
    nonrep_from_compute(h, &cl, &layer_pattern_colouring(cl.layering.len()))
}
