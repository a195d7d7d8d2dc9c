//! Deterministic fixture families.
//!
//! All randomness comes from a 64-bit linear congruential generator with
//! multiplier 6364136223846793005 and increment 1442695040888963407;
//! `below(n)` takes the high 32 bits of the next state modulo `n`.

use crate::decomposition::{
    clique_sum_compose, CliqueSum, GoodProvider, LayeredDecomposition, PlanarProvider, SmallProvider,
    TreeDecomposition,
};
use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, Layering};
use crate::shadow::RichDecomposition;

#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0
    }

    /// Uniform-ish value in `0..n` (`n > 0`).
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() >> 32) % n as u64) as usize
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            xs.swap(i, self.below(i + 1));
        }
    }
}

/// Parameters a fixture is known to satisfy.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub genus: Option<usize>,
    pub layered_width: Option<usize>,
    pub treewidth: Option<usize>,
    pub richness: Option<usize>,
    /// Inclusive edge-count window.
    pub edges: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub seed: u64,
    pub graph: Graph,
    pub embedded: Option<EmbeddedGraph>,
    pub layered: Option<LayeredDecomposition>,
    pub rich: Option<RichDecomposition>,
    pub expected: Expected,
}

impl Fixture {
    fn plain(name: &str, seed: u64, graph: Graph) -> Self {
        Fixture {
            name: name.to_string(),
            seed,
            graph,
            embedded: None,
            layered: None,
            rich: None,
            expected: Expected::default(),
        }
    }

    fn embedded(name: &str, seed: u64, eg: EmbeddedGraph) -> Result<Self> {
        let genus = eg.euler_genus()?;
        let mut f = Fixture::plain(name, seed, eg.simple_graph());
        f.expected.genus = Some(genus);
        f.embedded = Some(eg);
        Ok(f)
    }
}

pub const FAMILIES: &[&str] = &[
    "path",
    "cycle",
    "star",
    "complete",
    "tree",
    "grid",
    "torus",
    "triangulation",
    "section2",
    "grid_plus_apex",
    "v8",
    "k5",
    "wagner_v8",
    "wagner_k5",
    "chordal",
    "planar_torso",
];

/// Fixture of `family` with the given size and seed. `k` parametrises the
/// families that take a width or richness (default 3).
pub fn gen(family: &str, size: usize, seed: u64, k: Option<usize>) -> Result<Fixture> {
    let k = k.unwrap_or(3);
    let mut rng = Lcg::new(seed);
    let f = match family {
        "path" => Fixture::plain(family, seed, Graph::path(size)),
        "cycle" => {
            if size < 3 {
                return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
            }
            Fixture::embedded(family, seed, EmbeddedGraph::from_faces(size, &[(0..size).collect(), (0..size).rev().collect()])?)?
        }
        "star" => Fixture::plain(family, seed, Graph::star(size)),
        "complete" => Fixture::plain(family, seed, Graph::complete(size)),
        "tree" => Fixture::plain(family, seed, random_tree(size, &mut rng)),
        "grid" => grid_fixture(size, seed)?,
        "torus" => Fixture::embedded(family, seed, torus(size, size)?)?,
        "triangulation" => Fixture::embedded(family, seed, random_triangulation(size, &mut rng)?)?,
        "section2" => section2(size, k, seed)?,
        "grid_plus_apex" => grid_plus_apex(size, seed),
        "v8" => {
            let mut f = Fixture::plain(family, seed, v8());
            f.expected.layered_width = Some(3);
            f
        }
        "k5" => {
            let mut f = Fixture::plain(family, seed, Graph::complete(5));
            f.expected.layered_width = Some(4);
            f
        }
        "wagner_v8" => wagner(WagnerKind::V8, size, seed)?.fixture(family, seed),
        "wagner_k5" => wagner(WagnerKind::K5, size, seed)?.fixture(family, seed),
        "chordal" => chordal(size, k, seed),
        "planar_torso" => planar_torso(size, k.min(3), seed)?,
        _ => return Err(Error::UnknownFamily(family.to_string())),
    };
    Ok(f)
}

fn random_tree(n: usize, rng: &mut Lcg) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.below(v), v)).collect();
    Graph::new(n, edges).expect("tree edges are valid")
}

fn grid_faces(r: usize, c: usize) -> Vec<Vec<usize>> {
    let id = |i: usize, j: usize| i * c + j;
    let mut faces: Vec<Vec<usize>> = (0..r - 1)
        .flat_map(|i| (0..c - 1).map(move |j| vec![id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)]))
        .collect();
    let mut outer = Vec::new();
    outer.extend((0..c).rev().map(|j| id(0, j)));
    outer.extend((1..r).map(|i| id(i, 0)));
    outer.extend((1..c).map(|j| id(r - 1, j)));
    outer.extend((1..r - 1).rev().map(|i| id(i, c - 1)));
    faces.push(outer);
    faces
}

/// Rows as layers, bags on pairs of adjacent columns.
pub fn grid_column_pairs(r: usize, c: usize) -> LayeredDecomposition {
    let id = |i: usize, j: usize| i * c + j;
    let layering = Layering::from_layers(r * c, (0..r).map(|i| (0..c).map(|j| id(i, j)).collect()).collect());
    let td = if c < 2 {
        TreeDecomposition::single((0..r * c).collect())
    } else {
        TreeDecomposition::new(
            (0..c - 1).map(|j| (0..r).flat_map(|i| [id(i, j), id(i, j + 1)]).collect()).collect(),
            (1..c - 1).map(|j| (j - 1, j)).collect(),
        )
    };
    LayeredDecomposition::new(td, layering)
}

fn grid_fixture(s: usize, seed: u64) -> Result<Fixture> {
    let mut f = if s >= 2 {
        Fixture::embedded("grid", seed, EmbeddedGraph::from_faces(s * s, &grid_faces(s, s))?)?
    } else {
        Fixture::plain("grid", seed, Graph::grid(s, s))
    };
    f.layered = Some(grid_column_pairs(s, s));
    f.expected.layered_width = Some(2.min(s));
    f.expected.treewidth = Some(if s >= 2 { s } else { 0 });
    Ok(f)
}

/// `C_p × C_q` on the torus, `p, q ≥ 3`.
pub fn torus(p: usize, q: usize) -> Result<EmbeddedGraph> {
    if p < 3 || q < 3 {
        return Err(Error::InvalidParameter("toroidal grids need both sides at least 3".into()));
    }
    let id = |i: usize, j: usize| (i % p) * q + (j % q);
    let faces: Vec<Vec<usize>> = (0..p)
        .flat_map(|i| (0..q).map(move |j| vec![id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)]))
        .collect();
    EmbeddedGraph::from_faces(p * q, &faces)
}

/// Start from a triangle; each new vertex goes into a random face joined
/// to its three corners.
pub fn random_triangulation(n: usize, rng: &mut Lcg) -> Result<EmbeddedGraph> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let mut faces = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.below(faces.len());
        let [a, b, c] = faces[i];
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    let faces: Vec<Vec<usize>> = faces.iter().map(|f| f.to_vec()).collect();
    EmbeddedGraph::from_faces(n, &faces)
}

/// `p × p` points, `(x, y) ~ (x', y')` when `|y − y'| ≤ 1` and
/// `|x − x'| ≤ k − 1`; rows are layers and windows of `k` columns are bags.
/// Exactly `(3k − 2)n − D` edges with `D = p(2k − 1 + 3k(k − 1)/2) − k(k − 1)`.
fn section2(p: usize, k: usize, seed: u64) -> Result<Fixture> {
    if k < 1 || p < k {
        return Err(Error::InvalidParameter(format!("need 1 ≤ k ≤ p, got k = {k}, p = {p}")));
    }
    let id = |x: usize, y: usize| y * p + x;
    let mut edges = Vec::new();
    for y in 0..p {
        for x in 0..p {
            for x2 in 0..p {
                if x.abs_diff(x2) < k {
                    if x2 > x {
                        edges.push((id(x, y), id(x2, y)));
                    }
                    if y + 1 < p {
                        edges.push((id(x, y), id(x2, y + 1)));
                    }
                }
            }
        }
    }
    let n = p * p;
    let g = Graph::new(n, edges)?;
    let layering = Layering::from_layers(n, (0..p).map(|y| (0..p).map(|x| id(x, y)).collect()).collect());
    let td = TreeDecomposition::new(
        (0..=p - k).map(|x| (x..x + k).flat_map(|x2| (0..p).map(move |y| id(x2, y))).collect()).collect(),
        (1..=p - k).map(|x| (x - 1, x)).collect(),
    );
    let deficit = p * (2 * k - 1 + 3 * k * (k - 1) / 2) - k * (k - 1);
    let mut f = Fixture::plain("section2", seed, g);
    f.layered = Some(LayeredDecomposition::new(td, layering));
    f.expected.layered_width = Some(k);
    let top = (3 * k - 2) * n;
    f.expected.edges = Some((top - deficit, top - deficit));
    Ok(f)
}

fn grid_plus_apex(s: usize, seed: u64) -> Fixture {
    let n = s * s;
    let mut edges = Graph::grid(s, s).edges().to_vec();
    edges.extend((0..n).map(|v| (v, n)));
    let mut f = Fixture::plain("grid_plus_apex", seed, Graph::new(n + 1, edges).expect("valid"));
    f.expected.treewidth = Some(s);
    f
}

/// Eight-cycle plus the four long diagonals.
pub fn v8() -> Graph {
    let edges = (0..8).map(|i| (i, (i + 1) % 8)).chain((0..4).map(|i| (i, i + 4)));
    Graph::new(8, edges).expect("valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WagnerKind {
    /// Planar pieces and `V8`, glued on cliques of at most 3 vertices.
    V8,
    /// Planar pieces and `K5`, glued on cliques of at most 2 vertices.
    K5,
}

pub enum Piece {
    Planar(EmbeddedGraph),
    Small(Graph),
}

impl Piece {
    pub fn provider(&self) -> Result<Box<dyn GoodProvider>> {
        Ok(match self {
            Piece::Planar(eg) => Box::new(PlanarProvider::new(eg.clone())?),
            Piece::Small(g) => Box::new(SmallProvider::new(g.clone())?),
        })
    }
}

/// Attach piece `piece` by identifying its clique `c2` with `c1` of the
/// graph built so far, then deleting `deleted`.
pub struct Join {
    pub piece: usize,
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub deleted: Vec<(usize, usize)>,
}

pub struct WagnerPlan {
    pub kind: WagnerKind,
    pub pieces: Vec<Piece>,
    pub joins: Vec<Join>,
    pub result: CliqueSum,
}

impl WagnerPlan {
    pub fn fixture(&self, name: &str, seed: u64) -> Fixture {
        let mut f = Fixture::plain(name, seed, self.result.graph.clone());
        f.layered = Some(self.result.layered.clone());
        f.expected.layered_width = Some(match self.kind {
            WagnerKind::V8 => 3,
            WagnerKind::K5 => 4,
        });
        f
    }
}

fn random_clique(g: &Graph, size: usize, rng: &mut Lcg) -> Option<Vec<usize>> {
    if size == 1 {
        return (g.n() > 0).then(|| vec![rng.below(g.n())]);
    }
    let es = g.edges();
    if es.is_empty() {
        return None;
    }
    for _ in 0..4 * es.len() {
        let (u, v) = es[rng.below(es.len())];
        if size == 2 {
            return Some(vec![u, v]);
        }
        let common: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        if !common.is_empty() {
            return Some(vec![u, v, common[rng.below(common.len())]]);
        }
    }
    None
}

fn max_clique_at_most(g: &Graph, limit: usize) -> usize {
    if g.n() == 0 {
        return 0;
    }
    if limit >= 3 && g.edges().iter().any(|&(u, v)| g.neighbors(u).iter().any(|&w| g.has_edge(v, w))) {
        3
    } else if limit >= 2 && g.m() > 0 {
        2
    } else {
        1
    }
}

/// Builds a random clique-sum of `pieces` planar triangulations and small
/// pieces, composing the layered decomposition as it goes.
pub fn wagner(kind: WagnerKind, pieces: usize, seed: u64) -> Result<WagnerPlan> {
    let mut rng = Lcg::new(seed);
    let limit = match kind {
        WagnerKind::V8 => 3,
        WagnerKind::K5 => 2,
    };
    let mut list = Vec::new();
    for i in 0..pieces.max(1) {
        let piece = if i % 2 == 1 {
            Piece::Small(match kind {
                WagnerKind::V8 => v8(),
                WagnerKind::K5 => Graph::complete(5),
            })
        } else {
            Piece::Planar(random_triangulation(4 + rng.below(8), &mut rng)?)
        };
        list.push(piece);
    }
    let first = list[0].provider()?;
    let mut graph = first.graph().clone();
    let mut layered = first.rooted(&[0])?;
    let mut joins = Vec::new();
    let mut last: Option<CliqueSum> = None;
    for (i, piece) in list.iter().enumerate().skip(1) {
        let provider = piece.provider()?;
        let size = 1 + rng.below(max_clique_at_most(&graph, limit).min(max_clique_at_most(provider.graph(), limit)));
        let c1 = random_clique(&graph, size, &mut rng).expect("clique of a size known to exist");
        let c2 = random_clique(provider.graph(), size, &mut rng).expect("clique of a size known to exist");
        let deleted = if size >= 2 && rng.below(4) == 0 { vec![(c1[0], c1[1])] } else { Vec::new() };
        let sum = clique_sum_compose(&graph, &layered, provider.as_ref(), &c1, &c2, &deleted)?;
        graph = sum.graph.clone();
        layered = sum.layered.clone();
        joins.push(Join { piece: i, c1, c2, deleted });
        last = Some(sum);
    }
    let result = last.unwrap_or(CliqueSum { graph, layered, map2: Vec::new() });
    Ok(WagnerPlan { kind, pieces: list, joins, result })
}

/// Random chordal graph with its clique tree: each new vertex is joined to
/// a random subset (1 to `k` vertices) of a random existing bag.
fn chordal(n: usize, k: usize, seed: u64) -> Fixture {
    let mut rng = Lcg::new(seed);
    let k = k.max(1);
    let mut bags: Vec<Vec<usize>> = vec![vec![0]];
    let mut tree = Vec::new();
    let mut edges = Vec::new();
    for v in 1..n.max(1) {
        let x = rng.below(bags.len());
        let mut pool = bags[x].clone();
        rng.shuffle(&mut pool);
        pool.truncate(1 + rng.below(k.min(pool.len())));
        pool.sort_unstable();
        edges.extend(pool.iter().map(|&u| (u, v)));
        let mut bag = pool;
        bag.push(v);
        tree.push((x, bags.len()));
        bags.push(bag);
    }
    let g = Graph::new(n.max(1), edges).expect("valid");
    let td = TreeDecomposition::new(bags, tree);
    let rd = RichDecomposition::new(&g, td).expect("clique trees are rich");
    let mut f = Fixture::plain("chordal", seed, g);
    f.expected.richness = Some(rd.richness);
    f.rich = Some(rd);
    f
}

/// Tree of random planar triangulations glued on cliques of at most `k`
/// vertices; bags are the pieces.
fn planar_torso(pieces: usize, k: usize, seed: u64) -> Result<Fixture> {
    let mut rng = Lcg::new(seed);
    let k = k.clamp(1, 3);
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut piece_graphs: Vec<Graph> = Vec::new();
    let mut tree = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut n = 0;
    for i in 0..pieces.max(1) {
        let h = random_triangulation(4 + rng.below(7), &mut rng)?.simple_graph();
        if i == 0 {
            bags.push((0..h.n()).collect());
            edges.extend(h.edges().iter().copied());
            n = h.n();
            piece_graphs.push(h);
            continue;
        }
        let x = rng.below(bags.len());
        let size = 1 + rng.below(k);
        let host = &piece_graphs[x];
        let c1_local = random_clique(host, size, &mut rng).expect("triangulations have triangles");
        let c1: Vec<usize> = c1_local.iter().map(|&v| bags[x][v]).collect();
        let c2 = random_clique(&h, size, &mut rng).expect("triangulations have triangles");
        let mut map = vec![usize::MAX; h.n()];
        for (&a, &b) in c2.iter().zip(&c1) {
            map[a] = b;
        }
        for m in map.iter_mut().filter(|m| **m == usize::MAX) {
            *m = n;
            n += 1;
        }
        edges.extend(h.edges().iter().map(|&(a, b)| (map[a], map[b])));
        tree.push((x, bags.len()));
        bags.push(map);
        piece_graphs.push(h);
    }
    let g = Graph::new(n, edges)?;
    let rd = RichDecomposition::new(&g, TreeDecomposition::new(bags, tree))?;
    let mut f = Fixture::plain("planar_torso", seed, g);
    f.expected.richness = Some(rd.richness);
    f.rich = Some(rd);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{exact_treewidth_oracle, validate_tree_decomposition};
    use crate::graph::validate_layering;

    #[test]
    fn lcg_reference_values() {
        let mut r = Lcg::new(0);
        assert_eq!(r.next_u64(), 1442695040888963407);
        assert_eq!(r.next_u64(), 1442695040888963407u64.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407));
    }

    #[test]
    fn deterministic() {
        for fam in FAMILIES {
            let a = gen(fam, 6, 7, None).unwrap();
            let b = gen(fam, 6, 7, None).unwrap();
            assert_eq!(a.graph, b.graph, "{fam}");
        }
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(gen("hypercube", 3, 0, None), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn grid_five() {
        let f = gen("grid", 5, 0, None).unwrap();
        assert_eq!(f.graph.n(), 25);
        assert_eq!(f.expected.genus, Some(0));
        let ld = f.layered.unwrap();
        assert!(validate_tree_decomposition(&f.graph, &ld.decomposition).is_ok());
        assert!(validate_layering(&f.graph, &ld.layering).is_ok());
        assert_eq!(ld.layered_width(), 2);
    }

    #[test]
    fn grid_treewidth_by_oracle() {
        for s in 2..=4 {
            let f = gen("grid", s, 0, None).unwrap();
            assert_eq!(exact_treewidth_oracle(&f.graph).unwrap(), f.expected.treewidth.unwrap());
        }
    }

    #[test]
    fn torus_genus() {
        assert_eq!(gen("torus", 4, 0, None).unwrap().expected.genus, Some(2));
    }

    #[test]
    fn triangulation_counts() {
        let f = gen("triangulation", 50, 3, None).unwrap();
        assert_eq!(f.graph.m(), 3 * 50 - 6);
        assert_eq!(f.expected.genus, Some(0));
        let (faces, g) = f.embedded.unwrap().trace_faces().unwrap();
        assert_eq!((faces.len(), g), (2 * 50 - 4, 0));
    }

    #[test]
    fn section2_edges_exact() {
        for (p, k) in [(8, 3), (10, 2), (12, 4)] {
            let f = gen("section2", p, 0, Some(k)).unwrap();
            let (lo, hi) = f.expected.edges.unwrap();
            assert!(lo <= f.graph.m() && f.graph.m() <= hi);
            // brute-force pair count by coordinates
            let n = p * p;
            let brute = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| (a % p).abs_diff(b % p) < k && (a / p).abs_diff(b / p) <= 1)
                .count();
            assert_eq!(brute, f.graph.m());
            let top = (3 * k - 2) * n;
            // sqrt(n) = p
            assert!(top - 2 * k * k * p <= f.graph.m() && f.graph.m() <= top);
            let ld = f.layered.unwrap();
            assert!(validate_tree_decomposition(&f.graph, &ld.decomposition).is_ok());
            assert_eq!(ld.layered_width(), k);
        }
    }

    #[test]
    fn apex_grid_treewidth_grows() {
        let f = gen("grid_plus_apex", 3, 0, None).unwrap();
        assert_eq!(f.graph.n(), 10);
        let tw = exact_treewidth_oracle(&f.graph).unwrap();
        assert!(tw >= exact_treewidth_oracle(&Graph::grid(3, 3)).unwrap());
    }

    #[test]
    fn v8_shape() {
        let g = v8();
        assert_eq!(g.m(), 12);
        assert!((0..8).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn wagner_sums_keep_width() {
        for seed in 0..4 {
            let f = gen("wagner_v8", 6, seed, None).unwrap();
            let ld = f.layered.as_ref().unwrap();
            assert!(validate_tree_decomposition(&f.graph, &ld.decomposition).is_ok());
            assert!(validate_layering(&f.graph, &ld.layering).is_ok());
            assert!(ld.layered_width() <= 3);
            let f = gen("wagner_k5", 6, seed, None).unwrap();
            let ld = f.layered.as_ref().unwrap();
            assert!(validate_tree_decomposition(&f.graph, &ld.decomposition).is_ok());
            assert!(ld.layered_width() <= 4);
        }
    }

    #[test]
    fn chordal_rich() {
        let f = gen("chordal", 40, 5, Some(3)).unwrap();
        let rd = f.rich.unwrap();
        assert!(rd.richness <= 3);
        assert!(rd.decomposition.bags.iter().all(|b| f.graph.is_clique(b)));
    }

    #[test]
    fn planar_torso_rich() {
        let f = gen("planar_torso", 5, 2, Some(3)).unwrap();
        assert!(f.rich.unwrap().richness <= 3);
    }
}
