//! Recursive separator labelling, track layouts built from it, queue layouts
//! from track layouts, and exhaustive verifiers for both.

use std::collections::BTreeMap;
use std::fmt;

use crate::decomposition::{Balance, LayeredSeparator};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{validate_layering, Graph, Layering};

/// Largest `d` with `(num/den)^d ≤ n`; 0 when `n ≤ 1`.
pub fn log_floor(n: usize, num: u128, den: u128) -> usize {
    let n = n as u128;
    let (mut p, mut q, mut d) = (num, den, 0);
    while p <= n * q {
        d += 1;
        p *= num;
        q *= den;
    }
    d
}

/// Number of recursion levels a sample of `n` vertices can reach.
pub fn depth_bound(n: usize, balance: Balance) -> usize {
    match balance {
        Balance::TwoThirds => 1 + log_floor(n, 3, 2),
        Balance::Half => 1 + log_floor(n, 2, 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputeNode {
    pub parent: Option<usize>,
    pub depth: usize,
    pub sample_size: usize,
    /// Sample vertices labelled at this node.
    pub labelled: Vec<usize>,
}

/// Depth and per-layer label of every vertex. Depth 0 is the apex set;
/// recursion nodes are numbered in preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputeLabels {
    pub depth: Vec<usize>,
    pub label: Vec<usize>,
    pub residue: Vec<usize>,
    /// Recursion node that labelled each vertex (`None` for the apex set).
    pub node: Vec<Option<usize>>,
    pub nodes: Vec<ComputeNode>,
    pub layering: Layering,
    pub apex_width: usize,
    pub width: usize,
    pub balance: Balance,
}

impl ComputeLabels {
    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn depth_bound(&self) -> usize {
        depth_bound(self.depth.len(), self.balance)
    }

    /// `3ℓ1 + 3ℓ2·D` with `D` the depth bound.
    pub fn track_bound(&self) -> usize {
        3 * self.apex_width + 3 * self.width * self.depth_bound()
    }

    /// `4ℓ1 + 4ℓ2·D` with `D` the depth bound.
    pub fn palette_bound(&self) -> usize {
        4 * self.apex_width + 4 * self.width * self.depth_bound()
    }
}

fn label_per_layer(l: &Layering, vs: &[usize], label: &mut [usize], bound: usize, what: &str) -> Result<()> {
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in vs {
        let c = next.entry(l.layer_of(v)).or_insert(0);
        *c += 1;
        if *c > bound {
            return Err(Error::InconsistentLabels(format!(
                "{what} has more than {bound} vertices in layer {}",
                l.layer_of(v)
            )));
        }
        label[v] = *c;
    }
    Ok(())
}

/// Labels the apex set `q` per layer with `1..=ell1`, then recursively
/// splits `V − Q` with `sep`, giving separator vertices the current depth
/// and per-layer labels `1..=sep.width()`.
pub fn compute_recursion(g: &Graph, sep: &dyn LayeredSeparator, q: &[usize], ell1: usize) -> Result<ComputeLabels> {
    let n = g.n();
    let layering = sep.layering().clone();
    if layering.vertex_count() != n {
        return Err(Error::SizeMismatch(layering.vertex_count(), n));
    }
    if let Err(v) = validate_layering(g, &layering) {
        return Err(Error::InvalidLayering(v[0].to_string()));
    }
    let width = sep.width();
    let balance = sep.balance();
    let ratio = balance.ratio();
    let mut depth = vec![usize::MAX; n];
    let mut label = vec![0; n];
    let mut node = vec![None; n];
    let mut q_sorted = q.to_vec();
    q_sorted.sort_unstable();
    q_sorted.dedup();
    for &v in &q_sorted {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        depth[v] = 0;
    }
    label_per_layer(&layering, &q_sorted, &mut label, ell1, "apex set")?;

    let root: Vec<usize> = (0..n).filter(|&v| depth[v] != 0).collect();
    let mut nodes: Vec<ComputeNode> = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize, Option<usize>)> = vec![(root, 1, None)];
    while let Some((s, d, parent)) = stack.pop() {
        if s.is_empty() {
            continue;
        }
        let id = nodes.len();
        let split = sep.split(&s)?;
        let mut in_s = BTreeMap::new();
        for &v in &s {
            in_s.insert(v, false);
        }
        let labelled: Vec<usize> = split.separator.iter().copied().filter(|v| in_s.contains_key(v)).collect();
        label_per_layer(&layering, &labelled, &mut label, width, "separator")?;
        for &v in &labelled {
            depth[v] = d;
            node[v] = Some(id);
            in_s.insert(v, true);
        }
        for part in &split.parts {
            if !ratio.admits(part.len(), s.len()) {
                return Err(Error::OracleViolation(format!(
                    "part of {} out of {} sample vertices at depth {d}",
                    part.len(),
                    s.len()
                )));
            }
            for v in part {
                match in_s.get_mut(v) {
                    Some(seen) if !*seen => *seen = true,
                    _ => return Err(Error::OracleViolation(format!("vertex {v} misplaced by the separator"))),
                }
            }
        }
        if let Some((v, _)) = in_s.iter().find(|(_, &seen)| !seen) {
            return Err(Error::OracleViolation(format!("sample vertex {v} dropped by the separator")));
        }
        nodes.push(ComputeNode { parent, depth: d, sample_size: s.len(), labelled });
        for part in split.parts.into_iter().rev() {
            stack.push((part, d + 1, Some(id)));
        }
    }
    let residue = (0..n).map(|v| layering.layer_of(v) % 3).collect();
    let cl = ComputeLabels {
        depth,
        label,
        residue,
        node,
        nodes,
        layering,
        apex_width: ell1,
        width,
        balance,
    };
    if cl.max_depth() > cl.depth_bound() {
        return Err(Error::Bound(format!("recursion depth {} exceeds {}", cl.max_depth(), cl.depth_bound())));
    }
    Ok(cl)
}

/// Ordered tracks partitioning the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackLayout {
    tracks: Vec<Vec<usize>>,
    track_of: Vec<usize>,
    position: Vec<usize>,
}

impl TrackLayout {
    /// Fails unless the tracks partition `0..n`.
    pub fn new(n: usize, tracks: Vec<Vec<usize>>) -> Result<Self> {
        let mut track_of = vec![usize::MAX; n];
        let mut position = vec![0; n];
        for (t, track) in tracks.iter().enumerate() {
            for (i, &v) in track.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if track_of[v] != usize::MAX {
                    return Err(Error::InvalidTracks(format!("vertex {v} appears twice")));
                }
                track_of[v] = t;
                position[v] = i;
            }
        }
        if let Some(v) = track_of.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidTracks(format!("vertex {v} is on no track")));
        }
        Ok(TrackLayout { tracks, track_of, position })
    }

    pub fn tracks(&self) -> &[Vec<usize>] {
        &self.tracks
    }

    pub fn n(&self) -> usize {
        self.track_of.len()
    }

    /// Number of non-empty tracks.
    pub fn num_tracks(&self) -> usize {
        self.tracks.iter().filter(|t| !t.is_empty()).count()
    }

    pub fn track_of(&self, v: usize) -> usize {
        self.track_of[v]
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Same layout with empty tracks removed.
    pub fn compact(&self) -> TrackLayout {
        let tracks: Vec<Vec<usize>> = self.tracks.iter().filter(|t| !t.is_empty()).cloned().collect();
        TrackLayout::new(self.n(), tracks).expect("compacting keeps a partition")
    }
}

/// Tracks keyed by (layer mod 3, depth, label); each track ordered by layer,
/// then by recursion node so that separated sides stay apart.
pub fn track_layout_from_compute(g: &Graph, cl: &ComputeLabels) -> Result<TrackLayout> {
    let n = g.n();
    if cl.depth.len() != n {
        return Err(Error::SizeMismatch(cl.depth.len(), n));
    }
    let mut keyed: BTreeMap<(usize, usize, usize), Vec<(usize, usize, usize)>> = BTreeMap::new();
    for v in 0..n {
        let key = (cl.residue[v], cl.depth[v], cl.label[v]);
        let rank = cl.node[v].map_or(0, |x| x + 1);
        keyed.entry(key).or_default().push((cl.layering.layer_of(v), rank, v));
    }
    let mut tracks = Vec::with_capacity(keyed.len());
    for (key, mut vs) in keyed {
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InconsistentLabels(format!(
                "vertices {} and {} share track {key:?}, layer and recursion node",
                w[0].2, w[1].2
            )));
        }
        tracks.push(vs.into_iter().map(|(_, _, v)| v).collect());
    }
    let tl = TrackLayout::new(n, tracks)?;
    if tl.num_tracks() > cl.track_bound() {
        return Err(Error::Bound(format!("{} tracks exceed {}", tl.num_tracks(), cl.track_bound())));
    }
    Ok(tl)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrackViolation {
    VertexCount { layout: usize, graph: usize },
    SameTrack(usize, usize),
    /// Edges `(a, b)` and `(c, d)` with `a ≺ c` on one track and `d ≺ b`
    /// on the other.
    XCrossing((usize, usize), (usize, usize)),
}

impl fmt::Display for TrackViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrackViolation::VertexCount { layout, graph } => {
                write!(f, "layout has {layout} vertices, graph has {graph}")
            }
            TrackViolation::SameTrack(u, v) => write!(f, "edge {u}-{v} has both ends on one track"),
            TrackViolation::XCrossing((a, b), (c, d)) => write!(f, "X-crossing between edges {a}-{b} and {c}-{d}"),
        }
    }
}

/// Edges grouped by track pair, each oriented from the lower track.
fn edges_by_track_pair(g: &Graph, tl: &TrackLayout) -> std::result::Result<Vec<Vec<(usize, usize)>>, TrackViolation> {
    let mut groups: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for &(u, v) in g.edges() {
        let (tu, tv) = (tl.track_of(u), tl.track_of(v));
        if tu == tv {
            return Err(TrackViolation::SameTrack(u, v));
        }
        let (a, b) = if tu < tv { (u, v) } else { (v, u) };
        groups.entry((tu.min(tv), tu.max(tv))).or_default().push((a, b));
    }
    Ok(groups.into_values().collect())
}

/// Exhaustive pairwise X-crossing check over edges sharing a track pair.
pub fn verify_track_layout(g: &Graph, tl: &TrackLayout, exec: Exec) -> std::result::Result<(), TrackViolation> {
    if tl.n() != g.n() {
        return Err(TrackViolation::VertexCount { layout: tl.n(), graph: g.n() });
    }
    let groups = edges_by_track_pair(g, tl)?;
    let hit = exec.find_first(groups.len(), |i| {
        let es = &groups[i];
        for (x, &(a, b)) in es.iter().enumerate() {
            for &(c, d) in &es[x + 1..] {
                let (pa, pb, pc, pd) = (tl.position(a), tl.position(b), tl.position(c), tl.position(d));
                if (pa < pc && pd < pb) || (pc < pa && pb < pd) {
                    return Some(TrackViolation::XCrossing((a, b), (c, d)));
                }
            }
        }
        None
    });
    match hit {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// Vertex order plus a queue id for every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueueLayout {
    pub order: Vec<usize>,
    /// `(u, v, queue)` with `u < v`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl QueueLayout {
    pub fn num_queues(&self) -> usize {
        let mut qs: Vec<usize> = self.edges.iter().map(|e| e.2).collect();
        qs.sort_unstable();
        qs.dedup();
        qs.len()
    }
}

/// Concatenates the non-empty tracks; an edge between the i-th and j-th
/// of them goes to queue `j − i − 1`.
pub fn queue_from_tracks(g: &Graph, tl: &TrackLayout) -> Result<QueueLayout> {
    verify_track_layout(g, tl, Exec::Sequential).map_err(|v| Error::InvalidTracks(v.to_string()))?;
    let tl = tl.compact();
    let order: Vec<usize> = tl.tracks().iter().flatten().copied().collect();
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (u, v, tl.track_of(u).abs_diff(tl.track_of(v)) - 1))
        .collect();
    Ok(QueueLayout { order, edges })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueueViolation {
    NotAnOrder(String),
    EdgeMismatch(usize, usize),
    /// `outer` strictly encloses `inner` in the vertex order.
    Nested { outer: (usize, usize), inner: (usize, usize), queue: usize },
}

impl fmt::Display for QueueViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueueViolation::NotAnOrder(s) => write!(f, "vertex order: {s}"),
            QueueViolation::EdgeMismatch(u, v) => write!(f, "edge {u}-{v} missing from or foreign to the graph"),
            QueueViolation::Nested { outer, inner, queue } => write!(
                f,
                "edges {}-{} and {}-{} nest in queue {queue}",
                outer.0, outer.1, inner.0, inner.1
            ),
        }
    }
}

/// Exhaustive pairwise nesting check within each queue.
pub fn verify_queue_layout(g: &Graph, ql: &QueueLayout, exec: Exec) -> std::result::Result<(), QueueViolation> {
    let n = g.n();
    if ql.order.len() != n {
        return Err(QueueViolation::NotAnOrder(format!("{} entries for {n} vertices", ql.order.len())));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in ql.order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(QueueViolation::NotAnOrder(format!("vertex {v} out of range or repeated")));
        }
        pos[v] = i;
    }
    let mut listed: Vec<(usize, usize)> = ql.edges.iter().map(|&(u, v, _)| (u.min(v), u.max(v))).collect();
    listed.sort_unstable();
    if let Some(w) = listed.windows(2).find(|w| w[0] == w[1]) {
        return Err(QueueViolation::EdgeMismatch(w[0].0, w[0].1));
    }
    if let Some(&(u, v)) = listed.iter().find(|&&(u, v)| v >= n || !g.has_edge(u, v)) {
        return Err(QueueViolation::EdgeMismatch(u, v));
    }
    if listed.len() != g.m() {
        let missing = g.edges().iter().find(|e| listed.binary_search(e).is_err()).unwrap();
        return Err(QueueViolation::EdgeMismatch(missing.0, missing.1));
    }
    let spans: Vec<(usize, usize, usize, usize, usize)> = ql
        .edges
        .iter()
        .map(|&(u, v, q)| {
            let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
            (q, a, b, u, v)
        })
        .collect();
    let hit = exec.find_first(spans.len(), |i| {
        let (q, a, b, u, v) = spans[i];
        spans.iter().find(|&&(q2, c, d, _, _)| q2 == q && a < c && d < b).map(|&(_, _, _, x, y)| {
            QueueViolation::Nested { outer: (u, v), inner: (x, y), queue: q }
        })
    });
    match hit {
        Some(v) => Err(v),
        None => Ok(()),
    }
}
