//! 3D grid drawings from track layouts, with an exact crossing verifier.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::layouts::{verify_track_layout, TrackLayout};

pub type Point = [i64; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridDrawing3D {
    pub position: Vec<Point>,
}

impl GridDrawing3D {
    /// Side lengths of the enclosing box, counted in grid points.
    pub fn bounding_box(&self) -> [u64; 3] {
        let mut dims = [0u64; 3];
        if self.position.is_empty() {
            return dims;
        }
        for (a, d) in dims.iter_mut().enumerate() {
            let lo = self.position.iter().map(|p| p[a]).min().unwrap();
            let hi = self.position.iter().map(|p| p[a]).max().unwrap();
            *d = (hi - lo) as u64 + 1;
        }
        dims
    }

    pub fn volume(&self) -> u64 {
        self.bounding_box().iter().product()
    }

    /// Wavefront OBJ with one vertex per graph vertex and one line per edge.
    pub fn to_obj(&self, g: &Graph) -> String {
        let mut s = String::new();
        for p in &self.position {
            s.push_str(&format!("v {} {} {}\n", p[0], p[1], p[2]));
        }
        for &(u, v) in g.edges() {
            s.push_str(&format!("l {} {}\n", u + 1, v + 1));
        }
        s
    }
}

fn sub(a: Point, b: Point) -> [i128; 3] {
    [(a[0] - b[0]) as i128, (a[1] - b[1]) as i128, (a[2] - b[2]) as i128]
}

fn cross(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn is_zero(a: [i128; 3]) -> bool {
    a == [0, 0, 0]
}

/// Whether `q` lies on the closed segment `p1p2`.
pub fn point_on_segment(q: Point, p1: Point, p2: Point) -> bool {
    let d = sub(p2, p1);
    let w = sub(q, p1);
    if !is_zero(cross(w, d)) {
        return false;
    }
    let t = dot(w, d);
    0 <= t && t <= dot(d, d)
}

/// Whether the closed segments `p1p2` and `q1q2` share a point.
pub fn closed_segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = sub(p2, p1);
    let d2 = sub(q2, q1);
    let w = sub(q1, p1);
    let n = cross(d1, d2);
    if is_zero(n) {
        // parallel: touch only when collinear and overlapping
        if !is_zero(cross(w, d1)) {
            return false;
        }
        return point_on_segment(q1, p1, p2)
            || point_on_segment(q2, p1, p2)
            || point_on_segment(p1, q1, q2)
            || point_on_segment(p2, q1, q2);
    }
    if dot(w, n) != 0 {
        return false;
    }
    let nn = dot(n, n);
    let s = dot(cross(w, d2), n);
    let t = dot(cross(w, d1), n);
    (0..=nn).contains(&s) && (0..=nn).contains(&t)
}

/// Whether two edges meeting at one shared end overlap beyond it.
fn overlap_at_shared(shared: Point, a: Point, b: Point) -> bool {
    let (da, db) = (sub(a, shared), sub(b, shared));
    is_zero(cross(da, db)) && dot(da, db) > 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrawingViolation {
    VertexCount { drawing: usize, graph: usize },
    SharedPosition(usize, usize),
    VertexOnEdge { vertex: usize, edge: (usize, usize) },
    Crossing((usize, usize), (usize, usize)),
}

impl fmt::Display for DrawingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DrawingViolation::VertexCount { drawing, graph } => {
                write!(f, "drawing places {drawing} vertices, graph has {graph}")
            }
            DrawingViolation::SharedPosition(u, v) => write!(f, "vertices {u} and {v} share a grid point"),
            DrawingViolation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies on edge {}-{}", edge.0, edge.1)
            }
            DrawingViolation::Crossing(a, b) => write!(f, "edges {}-{} and {}-{} intersect", a.0, a.1, b.0, b.1),
        }
    }
}

fn edges_conflict(pos: &[Point], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let shared = [a, b].into_iter().find(|&x| x == c || x == d);
    match shared {
        Some(s) => {
            let other1 = if s == a { b } else { a };
            let other2 = if s == c { d } else { c };
            other1 == other2 || overlap_at_shared(pos[s], pos[other1], pos[other2])
        }
        None => closed_segments_intersect(pos[a], pos[b], pos[c], pos[d]),
    }
}

/// Exact check: distinct positions, no vertex inside an edge, and no two
/// edges meeting anywhere except at a shared end.
pub fn verify_drawing(g: &Graph, d: &GridDrawing3D, exec: Exec) -> std::result::Result<(), DrawingViolation> {
    let n = g.n();
    if d.position.len() != n {
        return Err(DrawingViolation::VertexCount { drawing: d.position.len(), graph: n });
    }
    let mut by_pos: Vec<(Point, usize)> = d.position.iter().copied().zip(0..).collect();
    by_pos.sort_unstable();
    if let Some(w) = by_pos.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(DrawingViolation::SharedPosition(w[0].1.min(w[1].1), w[0].1.max(w[1].1)));
    }
    let es = g.edges();
    let pos = &d.position;
    let on_edge = exec.find_first(es.len(), |i| {
        let (a, b) = es[i];
        (0..n)
            .find(|&v| v != a && v != b && point_on_segment(pos[v], pos[a], pos[b]))
            .map(|v| DrawingViolation::VertexOnEdge { vertex: v, edge: (a, b) })
    });
    if let Some(v) = on_edge {
        return Err(v);
    }
    let hit = exec.find_first(es.len(), |i| {
        es[i + 1..]
            .iter()
            .find(|&&f| edges_conflict(pos, es[i], f))
            .map(|&f| DrawingViolation::Crossing(es[i], f))
    });
    match hit {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn smallest_prime_at_least(k: usize) -> usize {
    let is_prime = |p: usize| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    (k.max(2)..).find(|&p| is_prime(p)).unwrap()
}

/// Whether the 2D segments between columns `a–b` and `c–d` (four distinct
/// points in general position) cross.
fn columns_cross(col: &[[i64; 2]], a: usize, b: usize, c: usize, d: usize) -> bool {
    let orient = |p: [i64; 2], q: [i64; 2], r: [i64; 2]| {
        ((q[0] - p[0]) as i128 * (r[1] - p[1]) as i128 - (q[1] - p[1]) as i128 * (r[0] - p[0]) as i128).signum()
    };
    let (pa, pb, pc, pd) = (col[a], col[b], col[c], col[d]);
    orient(pa, pb, pc) * orient(pa, pb, pd) < 0 && orient(pc, pd, pa) * orient(pc, pd, pb) < 0
}

/// Places track `i` on the column `(i, i² mod p)` for the least prime
/// `p ≥ t`; no three columns are collinear, so only edges spanning four
/// distinct tracks with crossing projections can meet. Vertices are placed
/// in order of track position with the least height above their track
/// predecessor that avoids every such meeting.
pub fn draw_from_tracks(g: &Graph, tl: &TrackLayout) -> Result<GridDrawing3D> {
    verify_track_layout(g, tl, Exec::Sequential).map_err(|v| Error::InvalidTracks(v.to_string()))?;
    let tl = tl.compact();
    let n = g.n();
    let t = tl.num_tracks();
    let p = smallest_prime_at_least(t);
    let col: Vec<[i64; 2]> = (0..t).map(|i| [i as i64, ((i * i) % p) as i64]).collect();
    let pair = |a: usize, b: usize| a.min(b) * t + a.max(b);
    let mut crossing_pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t * t];
    for a in 0..t {
        for b in a + 1..t {
            for c in 0..t {
                for d in c + 1..t {
                    if ![a, b].contains(&c) && ![a, b].contains(&d) && columns_cross(&col, a, b, c, d) {
                        crossing_pairs[pair(a, b)].push((c, d));
                    }
                }
            }
        }
    }
    let mut placed_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t * t];
    let mut pos: Vec<Point> = vec![[0; 3]; n];
    let mut placed = vec![false; n];
    let mut top = vec![-1i64; t];
    let longest = tl.tracks().iter().map(Vec::len).max().unwrap_or(0);
    for j in 0..longest {
        for (i, track) in tl.tracks().iter().enumerate() {
            let Some(&v) = track.get(j) else { continue };
            let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| placed[w]).collect();
            let mut z = top[i] + 1;
            loop {
                pos[v] = [col[i][0], col[i][1], z];
                let clash = nbrs.iter().any(|&w| {
                    let tw = tl.track_of(w);
                    crossing_pairs[pair(i, tw)].iter().any(|&(c, d)| {
                        placed_edges[pair(c, d)].iter().any(|&(x, y)| {
                            closed_segments_intersect(pos[v], pos[w], pos[x], pos[y])
                        })
                    })
                });
                if !clash {
                    break;
                }
                z += 1;
            }
            top[i] = z;
            placed[v] = true;
            for &w in &nbrs {
                placed_edges[pair(i, tl.track_of(w))].push((v, w));
            }
        }
    }
    Ok(GridDrawing3D { position: pos })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeReport {
    pub dims: [u64; 3],
    pub volume: u64,
    pub tracks: usize,
    /// `4t²n`.
    pub bound: u64,
    pub within_bound: bool,
    /// `⌈(n + m) / 8⌉`, below which no drawing can go.
    pub floor: u64,
    /// `c⁷·t·n`, reported when a proper colouring with `c` colours is known.
    pub coloured_bound: Option<u64>,
}

pub fn volume_report(g: &Graph, d: &GridDrawing3D, tracks: usize, colours: Option<usize>) -> VolumeReport {
    let n = g.n() as u64;
    let t = tracks as u64;
    let bound = 4 * t * t * n;
    let volume = d.volume();
    VolumeReport {
        dims: d.bounding_box(),
        volume,
        tracks,
        bound,
        within_bound: volume <= bound,
        floor: (n + g.m() as u64).div_ceil(8),
        coloured_bound: colours.map(|c| (c as u64).saturating_pow(7).saturating_mul(t * n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use proptest::prelude::*;

    type Q = Ratio<i128>;

    /// Independent closed-segment test: solve for the parameters with exact
    /// rationals, falling back to endpoint containment when parallel.
    fn rational_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
        let q = |x: i64| Q::from_integer(x as i128);
        let on = |x: Point, a: Point, b: Point| -> bool {
            // x = a + s(b − a) for some s in [0, 1]
            let mut s: Option<Q> = None;
            for k in 0..3 {
                let den = q(b[k]) - q(a[k]);
                let num = q(x[k]) - q(a[k]);
                if den == Q::from_integer(0) {
                    if num != Q::from_integer(0) {
                        return false;
                    }
                } else {
                    let v = num / den;
                    if s.is_some_and(|s| s != v) {
                        return false;
                    }
                    s = Some(v);
                }
            }
            match s {
                None => true,
                Some(s) => s >= Q::from_integer(0) && s <= Q::from_integer(1),
            }
        };
        let d1: Vec<Q> = (0..3).map(|k| q(p2[k]) - q(p1[k])).collect();
        let d2: Vec<Q> = (0..3).map(|k| q(q2[k]) - q(q1[k])).collect();
        let w: Vec<Q> = (0..3).map(|k| q(q1[k]) - q(p1[k])).collect();
        // s·d1 − t·d2 = w; pick two rows with a non-zero determinant
        for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
            let det = d1[r1] * (-d2[r2]) - (-d2[r1]) * d1[r2];
            if det == Q::from_integer(0) {
                continue;
            }
            let s = (w[r1] * (-d2[r2]) - (-d2[r1]) * w[r2]) / det;
            let t = (d1[r1] * w[r2] - w[r1] * d1[r2]) / det;
            let r3 = 3 - r1 - r2;
            if s * d1[r3] - t * d2[r3] != w[r3] {
                return false;
            }
            let unit = |x: Q| x >= Q::from_integer(0) && x <= Q::from_integer(1);
            return unit(s) && unit(t);
        }
        on(q1, p1, p2) || on(q2, p1, p2) || on(p1, q1, q2) || on(p2, q1, q2)
    }

    #[test]
    fn shared_endpoint_ok() {
        let g = Graph::path(3);
        let d = GridDrawing3D { position: vec![[0, 0, 0], [1, 1, 1], [2, 0, 0]] };
        assert!(verify_drawing(&g, &d, Exec::Sequential).is_ok());
    }

    #[test]
    fn midpoint_crossing_detected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let d = GridDrawing3D { position: vec![[0, 0, 0], [2, 2, 2], [0, 0, 2], [2, 2, 0]] };
        assert_eq!(verify_drawing(&g, &d, Exec::Sequential), Err(DrawingViolation::Crossing((0, 1), (2, 3))));
    }

    #[test]
    fn vertex_on_edge_detected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let d = GridDrawing3D { position: vec![[0, 0, 0], [2, 2, 2], [1, 1, 1]] };
        assert!(matches!(verify_drawing(&g, &d, Exec::Sequential), Err(DrawingViolation::VertexOnEdge { .. })));
    }

    #[test]
    fn collinear_overlap_at_shared_end_detected() {
        let g = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        let d = GridDrawing3D { position: vec![[0, 0, 0], [2, 0, 0], [4, 0, 0]] };
        assert!(verify_drawing(&g, &d, Exec::Sequential).is_err());
    }

    #[test]
    fn single_edge_two_tracks() {
        let g = Graph::path(2);
        let tl = TrackLayout::new(2, vec![vec![0], vec![1]]).unwrap();
        let d = draw_from_tracks(&g, &tl).unwrap();
        assert!(verify_drawing(&g, &d, Exec::Sequential).is_ok());
        let r = volume_report(&g, &d, 2, None);
        assert!(r.volume <= 32);
        assert!(r.within_bound);
    }

    #[test]
    fn c6_three_tracks() {
        let g = Graph::cycle(6);
        let tl = TrackLayout::new(6, vec![vec![0, 3], vec![1, 5], vec![2, 4]]).unwrap();
        let d = draw_from_tracks(&g, &tl).unwrap();
        assert!(verify_drawing(&g, &d, Exec::Parallel).is_ok());
        let [x, y, z] = d.bounding_box();
        assert!(x <= 3 && y <= 3 && z <= 6);
    }

    #[test]
    fn k4_four_tracks() {
        let g = Graph::complete(4);
        let tl = TrackLayout::new(4, (0..4).map(|v| vec![v]).collect()).unwrap();
        let d = draw_from_tracks(&g, &tl).unwrap();
        assert!(verify_drawing(&g, &d, Exec::Sequential).is_ok());
        assert!(d.volume() <= 64 * 4);
    }

    #[test]
    fn prime_choice() {
        assert_eq!(smallest_prime_at_least(0), 2);
        assert_eq!(smallest_prime_at_least(4), 5);
        assert_eq!(smallest_prime_at_least(7), 7);
    }

    #[test]
    fn thousand_random_pairs_agree() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 5) as i64
        };
        for _ in 0..1000 {
            let mut pt = || [next(), next(), next()];
            let (a, b, c, d) = (pt(), pt(), pt(), pt());
            if a == b || c == d {
                continue;
            }
            assert_eq!(closed_segments_intersect(a, b, c, d), rational_intersect(a, b, c, d), "{a:?}{b:?} {c:?}{d:?}");
        }
    }

    proptest! {
        #[test]
        fn predicate_matches_rational(a in prop::array::uniform3(-3i64..4), b in prop::array::uniform3(-3i64..4),
                                      c in prop::array::uniform3(-3i64..4), d in prop::array::uniform3(-3i64..4)) {
            prop_assume!(a != b && c != d);
            prop_assert_eq!(closed_segments_intersect(a, b, c, d), rational_intersect(a, b, c, d));
        }
    }
}
