//! Orientable combinatorial embeddings (rotation systems) of loop-free
//! multigraphs: face tracing, Euler genus, triangulation and the
//! tree-cotree split.
//!
//! Dart `2e` runs along edge `e` from its first endpoint to its second and
//! dart `2e + 1` runs back. The face successor of a dart entering `v` along
//! `e` is the dart leaving `v` along the edge after `e` in the rotation at `v`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{bfs_layering, BfsTree, Graph, Layering};

mod planarity;

pub use planarity::planar_embedding;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
    /// Position of each edge id in the rotation of each endpoint.
    pos: Vec<[usize; 2]>,
}

impl EmbeddedGraph {
    /// Checks that every edge id occurs exactly once around each of its two
    /// endpoints and nowhere else.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != n {
            return Err(Error::MalformedRotation(format!("{} rotation lists for {n} vertices", rotation.len())));
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::MalformedRotation(format!("edge {e} is a loop at {u}")));
            }
        }
        let mut pos = vec![[usize::MAX; 2]; edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let Some(&(a, b)) = edges.get(e) else {
                    return Err(Error::MalformedRotation(format!("unknown edge id {e} at vertex {v}")));
                };
                let side = if a == v {
                    0
                } else if b == v {
                    1
                } else {
                    return Err(Error::MalformedRotation(format!("edge {e} is not incident to vertex {v}")));
                };
                if pos[e][side] != usize::MAX {
                    return Err(Error::MalformedRotation(format!("edge {e} repeated at vertex {v}")));
                }
                pos[e][side] = i;
            }
        }
        for (e, p) in pos.iter().enumerate() {
            if p.contains(&usize::MAX) {
                return Err(Error::MalformedRotation(format!("edge {e} missing from a rotation")));
            }
        }
        Ok(EmbeddedGraph { n, edges, rotation, pos })
    }

    /// Embedding of a simple graph from its oriented facial walks given as
    /// cyclic vertex lists. Consecutive corners `u, v, w` of a face place
    /// edge `vw` right after `vu` in the rotation at `v`.
    pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut id: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges = Vec::new();
        for f in faces {
            for i in 0..f.len() {
                let (u, v) = (f[i], f[(i + 1) % f.len()]);
                let key = (u.min(v), u.max(v));
                id.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edges.len() - 1
                });
            }
        }
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
        for f in faces {
            let l = f.len();
            for i in 0..l {
                let (u, v, w) = (f[i], f[(i + 1) % l], f[(i + 2) % l]);
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                let a = id[&(u.min(v), u.max(v))];
                let b = id[&(v.min(w), v.max(w))];
                if succ[v].insert(a, b).is_some() {
                    return Err(Error::MalformedRotation(format!("corner at {v} after edge {a} used twice")));
                }
            }
        }
        let mut rotation = vec![Vec::new(); n];
        for v in 0..n {
            let Some(&start) = succ[v].keys().min() else { continue };
            let mut e = start;
            loop {
                rotation[v].push(e);
                e = *succ[v]
                    .get(&e)
                    .ok_or_else(|| Error::MalformedRotation(format!("open rotation at vertex {v}")))?;
                if e == start {
                    break;
                }
                if rotation[v].len() > succ[v].len() {
                    return Err(Error::MalformedRotation(format!("rotation at vertex {v} is not one cycle")));
                }
            }
            if rotation[v].len() != succ[v].len() {
                return Err(Error::MalformedRotation(format!("rotation at vertex {v} is not one cycle")));
            }
        }
        EmbeddedGraph::new(n, edges, rotation)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn tail(&self, d: usize) -> usize {
        let (u, v) = self.edges[d / 2];
        if d.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(d ^ 1)
    }

    /// Dart leaving `v` along edge `e`.
    pub fn dart_from(&self, v: usize, e: usize) -> usize {
        if self.edges[e].0 == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    pub fn next_in_face(&self, d: usize) -> usize {
        let e = d / 2;
        let v = self.head(d);
        let side = if self.edges[e].0 == v { 0 } else { 1 };
        let rot = &self.rotation[v];
        let next = rot[(self.pos[e][side] + 1) % rot.len()];
        self.dart_from(v, next)
    }

    /// Underlying simple graph (parallel edges merged).
    pub fn simple_graph(&self) -> Graph {
        Graph::new(self.n, self.edges.iter().copied()).expect("embedded edges are in range and loop-free")
    }

    /// Facial walks as dart lists, plus the face index of every dart.
    pub fn faces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut face_of = vec![usize::MAX; 2 * self.edges.len()];
        let mut faces = Vec::new();
        for d0 in 0..face_of.len() {
            if face_of[d0] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = d0;
            while face_of[d] == usize::MAX {
                face_of[d] = faces.len();
                walk.push(d);
                d = self.next_in_face(d);
            }
            faces.push(walk);
        }
        (faces, face_of)
    }

    /// Corner vertices of a facial walk.
    pub fn face_vertices(&self, face: &[usize]) -> Vec<usize> {
        face.iter().map(|&d| self.tail(d)).collect()
    }

    /// Faces and Euler genus `g = 2 − n + m − f`; requires a connected graph.
    pub fn trace_faces(&self) -> Result<(Vec<Vec<usize>>, usize)> {
        if !self.simple_graph().is_connected() {
            return Err(Error::Disconnected);
        }
        let (faces, _) = self.faces();
        let f = faces.len().max(1);
        let chi = self.n as isize - self.edges.len() as isize + f as isize;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(Error::MalformedRotation(format!("Euler characteristic {chi} is impossible")));
        }
        Ok((faces, (2 - chi) as usize))
    }

    pub fn euler_genus(&self) -> Result<usize> {
        self.trace_faces().map(|(_, g)| g)
    }

    /// Adds edge `u v` right after edge `after_u` at `u` and right after
    /// `after_v` at `v`. Returns the new edge id.
    fn insert_edge(&mut self, u: usize, after_u: usize, v: usize, after_v: usize) -> usize {
        let e = self.edges.len();
        self.edges.push((u, v));
        self.pos.push([0, 0]);
        for (x, after) in [(u, after_u), (v, after_v)] {
            let rot = &mut self.rotation[x];
            let i = rot.iter().position(|&f| f == after).expect("anchor edge in rotation");
            rot.insert(i + 1, e);
        }
        for x in [u, v] {
            for (i, &f) in self.rotation[x].iter().enumerate() {
                let side = if self.edges[f].0 == x { 0 } else { 1 };
                self.pos[f][side] = i;
            }
        }
        e
    }

    /// Splits faces until every face is a triangle. Each face of length at
    /// least 4 is fanned from its smallest-id corner whose fan chords avoid
    /// loops; parallel edges are allowed.
    pub fn triangulate(&self) -> Result<EmbeddedGraph> {
        if self.n < 3 {
            return Err(Error::TooFewVertices(self.n));
        }
        if !self.simple_graph().is_connected() {
            return Err(Error::Disconnected);
        }
        let mut out = self.clone();
        let (faces, _) = self.faces();
        for (fi, face) in faces.into_iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::LoopOnlyFace(fi));
            }
            let mut walk = face;
            while walk.len() > 3 {
                let verts = out.face_vertices(&walk);
                let l = verts.len();
                let fan_ok = |i: usize| (2..l - 1).all(|j| verts[(i + j) % l] != verts[i]);
                let ear_ok = |i: usize| verts[(i + 2) % l] != verts[i];
                let corner = (0..l)
                    .filter(|&i| fan_ok(i))
                    .min_by_key(|&i| (verts[i], i))
                    .or_else(|| (0..l).filter(|&i| ear_ok(i)).min_by_key(|&i| (verts[i], i)))
                    .ok_or(Error::LoopOnlyFace(fi))?;
                // Chord from the corner to the vertex two steps ahead, cutting
                // off one triangle; the rest of the face keeps the corner.
                let c = verts[corner];
                let k = (corner + 2) % l;
                let before_c = walk[(corner + l - 1) % l] / 2;
                let before_k = walk[(k + l - 1) % l] / 2;
                let e = out.insert_edge(c, before_c, verts[k], before_k);
                let start = out.dart_from(c, e);
                let mut rest = vec![start];
                let mut d = out.next_in_face(start);
                while d != start {
                    rest.push(d);
                    d = out.next_in_face(d);
                }
                debug_assert_eq!(rest.len(), l - 1);
                walk = rest;
            }
        }
        Ok(out)
    }
}

/// Primal spanning tree, dual graph on the remaining edges, a spanning tree
/// of that dual, and the leftover edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCotree {
    pub primal_tree: BfsTree,
    pub layering: Layering,
    /// Edge id joining each non-root vertex to its parent.
    pub parent_edge: Vec<Option<usize>>,
    /// Extra tree edges joining the first root to the others.
    pub root_star: Vec<usize>,
    /// Facial walks (dart lists) and the face of each dart.
    pub faces: Vec<Vec<usize>>,
    pub face_of: Vec<usize>,
    /// Dual edges `(face, face, primal edge)` for every non-tree edge.
    pub dual_edges: Vec<(usize, usize, usize)>,
    pub root_face: usize,
    /// Dual-tree parent of each face as an index into `dual_edges`.
    pub dual_parent: Vec<Option<usize>>,
    /// Primal ids of dual edges outside the dual tree.
    pub extra_edges: Vec<usize>,
}

impl TreeCotree {
    pub fn dual_tree_edges(&self) -> Vec<(usize, usize)> {
        self.dual_parent
            .iter()
            .enumerate()
            .filter_map(|(f, p)| p.map(|i| {
                let (a, b, _) = self.dual_edges[i];
                (if a == f { b } else { a }, f)
            }))
            .collect()
    }

    /// Tree path from `v` to its root, `v` first.
    pub fn root_path(&self, v: usize) -> Vec<usize> {
        self.primal_tree.root_path(v)
    }
}

/// Tree-cotree split of a triangulation rooted at a single vertex.
pub fn tree_cotree(eg: &EmbeddedGraph, root: usize) -> Result<TreeCotree> {
    tree_cotree_rooted(eg, &[root])
}

/// Tree-cotree split with a BFS forest grown from all of `roots` at once;
/// the first root is joined to the others by a star so the primal tree
/// spans. Every root must be adjacent to the first one.
pub fn tree_cotree_rooted(eg: &EmbeddedGraph, roots: &[usize]) -> Result<TreeCotree> {
    let (faces, face_of) = eg.faces();
    for (i, f) in faces.iter().enumerate() {
        if f.len() != 3 {
            return Err(Error::NonTriangularFace(i));
        }
    }
    let simple = eg.simple_graph();
    let (layering, tree) = bfs_layering(&simple, roots)?;
    let mut edge_id: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &(u, v)) in eg.edges().iter().enumerate() {
        edge_id.entry((u.min(v), u.max(v))).or_insert(e);
    }
    let lookup = |u: usize, v: usize| edge_id[&(u.min(v), u.max(v))];
    let mut in_tree = vec![false; eg.m()];
    let parent_edge: Vec<Option<usize>> = (0..eg.n())
        .map(|v| tree.parent[v].map(|p| lookup(v, p)))
        .collect();
    for e in parent_edge.iter().flatten() {
        in_tree[*e] = true;
    }
    let first = tree.roots[0];
    let mut root_star = Vec::new();
    for &r in &tree.roots[1..] {
        if !simple.has_edge(first, r) {
            return Err(Error::NotClique(tree.roots.clone()));
        }
        let e = lookup(first, r);
        in_tree[e] = true;
        root_star.push(e);
    }
    let mut dual_edges = Vec::new();
    let mut dual_adj = vec![Vec::new(); faces.len()];
    for e in 0..eg.m() {
        if in_tree[e] {
            continue;
        }
        let (a, b) = (face_of[2 * e], face_of[2 * e + 1]);
        dual_adj[a].push(dual_edges.len());
        dual_adj[b].push(dual_edges.len());
        dual_edges.push((a, b, e));
    }
    let root_face = face_of[eg.dart_from(first, eg.rotation(first)[0])];
    let mut dual_parent = vec![None; faces.len()];
    let mut seen = vec![false; faces.len()];
    seen[root_face] = true;
    let mut used = vec![false; dual_edges.len()];
    let mut q = VecDeque::from([root_face]);
    while let Some(f) = q.pop_front() {
        for &i in &dual_adj[f] {
            let (a, b, _) = dual_edges[i];
            let h = if a == f { b } else { a };
            if !seen[h] {
                seen[h] = true;
                used[i] = true;
                dual_parent[h] = Some(i);
                q.push_back(h);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidDecomposition("dual of the non-tree edges is disconnected".into()));
    }
    let extra_edges = dual_edges.iter().zip(&used).filter(|(_, &u)| !u).map(|(&(_, _, e), _)| e).collect();
    Ok(TreeCotree {
        primal_tree: tree,
        layering,
        parent_edge,
        root_star,
        faces,
        face_of,
        dual_edges,
        root_face,
        dual_parent,
        extra_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k4_planar() -> EmbeddedGraph {
        EmbeddedGraph::from_faces(4, &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]]).unwrap()
    }

    fn torus_grid(p: usize, q: usize) -> EmbeddedGraph {
        let id = |i: usize, j: usize| (i % p) * q + (j % q);
        let faces: Vec<Vec<usize>> = (0..p)
            .flat_map(|i| (0..q).map(move |j| vec![id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)]))
            .collect();
        EmbeddedGraph::from_faces(p * q, &faces).unwrap()
    }

    #[test]
    fn k4_is_spherical() {
        let (faces, g) = k4_planar().trace_faces().unwrap();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(g, 0);
    }

    #[test]
    fn toroidal_grid_genus_two() {
        let (faces, g) = torus_grid(4, 4).trace_faces().unwrap();
        assert_eq!(faces.len(), 16);
        assert!(faces.iter().all(|f| f.len() == 4));
        assert_eq!(g, 2);
    }

    #[test]
    fn single_edge_one_face() {
        let eg = EmbeddedGraph::new(2, vec![(0, 1)], vec![vec![0], vec![0]]).unwrap();
        let (faces, g) = eg.trace_faces().unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(g, 0);
    }

    #[test]
    fn repeated_edge_end_rejected() {
        let err = EmbeddedGraph::new(2, vec![(0, 1)], vec![vec![0, 0], vec![0]]).unwrap_err();
        assert!(matches!(err, Error::MalformedRotation(_)));
        let err = EmbeddedGraph::new(2, vec![(0, 1)], vec![vec![0], vec![]]).unwrap_err();
        assert!(matches!(err, Error::MalformedRotation(_)));
    }

    #[test]
    fn square_triangulates_to_four_faces() {
        let c4 = EmbeddedGraph::from_faces(4, &[vec![0, 1, 2, 3], vec![3, 2, 1, 0]]).unwrap();
        let t = c4.triangulate().unwrap();
        let (faces, g) = t.trace_faces().unwrap();
        assert_eq!(faces.len(), 4);
        assert_eq!(t.m(), 6);
        assert_eq!(g, 0);
        // 4 − 6 + 4 = 2
        assert_eq!(4 + faces.len(), 2 + t.m());
    }

    #[test]
    fn k4_triangulation_is_idempotent() {
        let k4 = k4_planar();
        assert_eq!(k4.triangulate().unwrap().edges(), k4.edges());
    }

    #[test]
    fn toroidal_triangulation() {
        let t = torus_grid(4, 4).triangulate().unwrap();
        let (faces, g) = t.trace_faces().unwrap();
        assert_eq!(faces.len(), 32);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(g, 2);
        assert_eq!(16 - t.m() as isize + 32, 0);
    }

    #[test]
    fn two_vertices_cannot_triangulate() {
        let eg = EmbeddedGraph::new(2, vec![(0, 1)], vec![vec![0], vec![0]]).unwrap();
        assert_eq!(eg.triangulate().unwrap_err(), Error::TooFewVertices(2));
    }

    #[test]
    fn cotree_leftover_matches_genus() {
        let tc = tree_cotree(&k4_planar(), 0).unwrap();
        assert!(tc.extra_edges.is_empty());
        let t = torus_grid(4, 4).triangulate().unwrap();
        assert_eq!(tree_cotree(&t, 0).unwrap().extra_edges.len(), 2);
    }

    #[test]
    fn octahedron_cotree() {
        // poles 0 and 5, equator 1 2 3 4
        let faces = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 1],
            vec![5, 2, 1],
            vec![5, 3, 2],
            vec![5, 4, 3],
            vec![5, 1, 4],
        ];
        let eg = EmbeddedGraph::from_faces(6, &faces).unwrap();
        assert_eq!(eg.euler_genus().unwrap(), 0);
        let tc = tree_cotree(&eg, 0).unwrap();
        assert!(tc.extra_edges.is_empty());
        assert_eq!(tc.dual_tree_edges().len(), 7);
    }

    #[test]
    fn non_triangular_face_rejected() {
        let c4 = EmbeddedGraph::from_faces(4, &[vec![0, 1, 2, 3], vec![3, 2, 1, 0]]).unwrap();
        assert!(matches!(tree_cotree(&c4, 0), Err(Error::NonTriangularFace(_))));
    }
}
