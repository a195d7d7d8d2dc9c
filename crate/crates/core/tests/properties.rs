//! Cross-module invariants over seeded fixtures, each checked against an
//! oracle written here.

use std::collections::{BTreeSet, VecDeque};

use layersep::decomposition::{genus_layered_decomposition, validate_tree_decomposition, Balance};
use layersep::embedding::EmbeddedGraph;
use layersep::formats::{write_graph, write_layered, write_rotation};
use layersep::generators::{gen, random_triangulation, Lcg, FAMILIES};
use layersep::graph::{validate_layering, validate_separation, Ratio, SeparationViolation};
use layersep::layouts::{verify_queue_layout, verify_track_layout};
use layersep::nonrep::{verify_nonrepetitive, Colouring};
use layersep::pipeline::embedded_run;
use layersep::shadow::{
    distinct_colours, recursive_nonrep_driver, recursive_track_driver, rich_shadow_layering, singleton_tracks,
};
use layersep::{bfs_layering, Exec, Graph, Separation};
use proptest::prelude::*;

fn connected_graph(n: usize, extra: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    edges.extend(extra.iter().map(|&(a, b)| (a % n, b % n)).filter(|(a, b)| a != b));
    Graph::new(n, edges).unwrap()
}

fn bfs_oracle(g: &Graph, roots: &[usize]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &r in roots {
        dist[r] = 0;
        queue.push_back(r);
    }
    while let Some(u) = queue.pop_front() {
        for &(a, b) in g.edges() {
            let w = if a == u { b } else if b == u { a } else { continue };
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_layering_matches_distances(n in 1usize..40, extra in prop::collection::vec((0usize..40, 0usize..40), 0..60), root in 0usize..40) {
        let g = connected_graph(n, &extra);
        let root = root % n;
        let (l, tree) = bfs_layering(&g, &[root]).unwrap();
        prop_assert!(validate_layering(&g, &l).is_ok());
        let dist = bfs_oracle(&g, &[root]);
        for v in 0..n {
            prop_assert_eq!(tree.depth[v], dist[v]);
            prop_assert_eq!(l.layer_of(v), dist[v]);
        }
    }

    #[test]
    fn separation_check_matches_edge_scan(
        n in 2usize..20,
        extra in prop::collection::vec((0usize..20, 0usize..20), 0..40),
        side in prop::collection::vec(0u8..3, 20),
    ) {
        let g = connected_graph(n, &extra);
        // 0: first side only, 1: second side only, 2: both
        let a: Vec<usize> = (0..n).filter(|&v| side[v] != 1).collect();
        let b: Vec<usize> = (0..n).filter(|&v| side[v] != 0).collect();
        let s = Separation::new(a.clone(), b.clone());
        let sample: Vec<usize> = (0..n).collect();
        let rep = validate_separation(&g, &s, &sample, Ratio::TWO_THIRDS, None);
        let crossing = g.edges().iter().any(|&(u, v)| {
            let only = |x: usize, s: u8| side[x] == s;
            (only(u, 0) && only(v, 1)) || (only(u, 1) && only(v, 0))
        });
        let flagged = rep.violations.iter().any(|v| matches!(v, SeparationViolation::CrossingEdge(..)));
        prop_assert_eq!(crossing, flagged);
        let strict_a = (0..n).filter(|&v| side[v] == 0).count();
        let strict_b = (0..n).filter(|&v| side[v] == 1).count();
        let balanced = 3 * strict_a <= 2 * n && 3 * strict_b <= 2 * n;
        let unbalanced = rep.violations.iter().any(|v| matches!(v, SeparationViolation::Unbalanced { .. }));
        prop_assert_eq!(balanced, !unbalanced);
    }

    #[test]
    fn triangulations_decompose_within_width(n in 4usize..120, seed in 0u64..1000) {
        let eg = random_triangulation(n, &mut Lcg::new(seed)).unwrap();
        let g = eg.simple_graph();
        let gd = genus_layered_decomposition(&eg, &[0]).unwrap();
        prop_assert!(validate_tree_decomposition(&g, &gd.layered.decomposition).is_ok());
        prop_assert!(gd.layered.layered_width() <= 3);
        prop_assert!(g.m() <= 3 * 3 * n - n);
    }

    #[test]
    fn pipeline_bounds_hold_exactly(n in 4usize..150, seed in 0u64..1000, half in any::<bool>()) {
        let eg = random_triangulation(n, &mut Lcg::new(seed)).unwrap();
        let balance = if half { Balance::Half } else { Balance::TwoThirds };
        let run = embedded_run(&eg, 0, balance).unwrap();
        let cl = &run.labels;
        for node in &cl.nodes {
            if let Some(p) = node.parent {
                let ratio = balance.ratio();
                prop_assert!(ratio.admits(node.sample_size, cl.nodes[p].sample_size));
            }
        }
        let (tl, ql) = run.queues().unwrap();
        prop_assert!(tl.num_tracks() <= run.track_bound());
        prop_assert!(verify_track_layout(&run.graph, &tl, Exec::Parallel).is_ok());
        let nonempty = tl.tracks().iter().filter(|t| !t.is_empty()).count();
        prop_assert!(ql.num_queues() < nonempty.max(1));
        prop_assert!(verify_queue_layout(&run.graph, &ql, Exec::Parallel).is_ok());
        let c = run.colouring().unwrap();
        prop_assert!(c.palette_size() <= run.palette_bound());
        prop_assert!(run.graph.edges().iter().all(|&(u, v)| c.colour[u] != c.colour[v]));
    }

    #[test]
    fn nonrepetitive_agrees_with_path_enumeration(
        n in 1usize..=10,
        extra in prop::collection::vec((0usize..10, 0usize..10), 0..12),
        colours in prop::collection::vec(0usize..3, 10),
    ) {
        let g = connected_graph(n, &extra);
        let c = Colouring { colour: colours[..n].to_vec() };
        let fast = verify_nonrepetitive(&g, &c, n, Exec::Sequential).is_ok();
        prop_assert_eq!(fast, !has_square_path(&g, &c));
    }
}

/// Enumerates every simple path and compares the two halves of its colour
/// sequence.
fn has_square_path(g: &Graph, c: &Colouring) -> bool {
    fn extend(g: &Graph, c: &Colouring, path: &mut Vec<usize>, on: &mut [bool]) -> bool {
        let len = path.len();
        if len.is_multiple_of(2) && len > 0 {
            let h = len / 2;
            if (0..h).all(|i| c.colour[path[i]] == c.colour[path[h + i]]) {
                return true;
            }
        }
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                if extend(g, c, path, on) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    (0..g.n()).any(|s| {
        let mut on = vec![false; g.n()];
        on[s] = true;
        extend(g, c, &mut vec![s], &mut on)
    })
}

#[test]
fn euler_formula_on_embedded_fixtures() {
    for fam in FAMILIES {
        for seed in 0..3 {
            let f = gen(fam, 7, seed, None).unwrap();
            let Some(eg) = f.embedded.as_ref() else { continue };
            let (faces, genus) = eg.trace_faces().unwrap();
            assert_eq!(eg.n() as isize - eg.m() as isize + faces.len() as isize, 2 - genus as isize, "{fam}");
            assert_eq!(Some(genus), f.expected.genus);
        }
    }
}

#[test]
fn triangulate_keeps_genus_and_vertices() {
    let inputs: Vec<EmbeddedGraph> = [("grid", 5), ("torus", 4), ("torus", 7), ("cycle", 8), ("triangulation", 30)]
        .iter()
        .map(|&(fam, s)| gen(fam, s, 1, None).unwrap().embedded.unwrap())
        .collect();
    for eg in inputs {
        let tri = eg.triangulate().unwrap();
        assert_eq!(tri.n(), eg.n());
        assert_eq!(tri.euler_genus().unwrap(), eg.euler_genus().unwrap());
        let (faces, _) = tri.trace_faces().unwrap();
        assert!(faces.iter().all(|f| f.len() == 3));
        let before: BTreeSet<(usize, usize)> = eg.simple_graph().edges().iter().copied().collect();
        let after: BTreeSet<(usize, usize)> = tri.simple_graph().edges().iter().copied().collect();
        assert!(before.is_subset(&after));
    }
}

#[test]
fn radius_bounds_bag_size_from_a_centre() {
    for (fam, size, seed) in [("triangulation", 40, 1), ("triangulation", 200, 2), ("grid", 6, 0), ("torus", 5, 0)] {
        let f = gen(fam, size, seed, None).unwrap();
        let eg = f.embedded.unwrap();
        let g = eg.simple_graph();
        let centre = g.centre().unwrap();
        let radius = bfs_oracle(&g, &[centre]).into_iter().max().unwrap();
        let gd = genus_layered_decomposition(&eg, &[centre]).unwrap();
        let biggest = gd.layered.decomposition.bags.iter().map(Vec::len).max().unwrap();
        assert!(biggest <= (2 * gd.genus + 3) * radius + 1, "{fam}: bag {biggest}, radius {radius}");
    }
}

#[test]
fn clique_sums_keep_width_and_first_layer() {
    for seed in 0..6 {
        for (fam, bound) in [("wagner_v8", 3), ("wagner_k5", 4)] {
            let f = gen(fam, 6, seed, None).unwrap();
            let ld = f.layered.unwrap();
            assert!(ld.layered_width() <= bound);
            assert_eq!(ld.layering.layer(0), [0]);
            assert!(f.graph.m() <= (3 * bound - 1) * f.graph.n());
        }
    }
}

#[test]
fn per_layer_bags_sit_inside_parent_bags() {
    for (fam, size, k, seed) in [("chordal", 50, 3, 1), ("chordal", 30, 1, 2), ("planar_torso", 5, 3, 3)] {
        let f = gen(fam, size, seed, Some(k)).unwrap();
        let rd = f.rich.unwrap();
        let sl = rich_shadow_layering(&f.graph, &rd).unwrap();
        for td in &sl.per_layer {
            for bag in &td.bags {
                assert!(
                    rd.decomposition.bags.iter().any(|b| bag.iter().all(|v| b.binary_search(v).is_ok())),
                    "{fam}: per-layer bag {bag:?} not contained in a bag"
                );
            }
        }
    }
}

#[test]
fn drivers_step_down_one_richness_per_level() {
    for (n, k, seed) in [(40, 3, 1), (25, 2, 5), (60, 4, 9)] {
        let f = gen("chordal", n, seed, Some(k)).unwrap();
        let rd = f.rich.unwrap();
        let out = recursive_track_driver(&f.graph, &rd, &singleton_tracks).unwrap();
        let levels: Vec<usize> = out.levels.iter().map(|l| l.richness).collect();
        assert_eq!(levels, (0..=rd.richness).collect::<Vec<_>>());
        let out = recursive_nonrep_driver(&f.graph, &rd, &distinct_colours).unwrap();
        assert_eq!(out.levels.len(), rd.richness + 1);
    }
}

#[test]
fn fixtures_are_byte_identical_across_runs() {
    for fam in FAMILIES {
        let a = gen(fam, 8, 42, None).unwrap();
        let b = gen(fam, 8, 42, None).unwrap();
        assert_eq!(write_graph(&a.graph), write_graph(&b.graph), "{fam}");
        if let (Some(x), Some(y)) = (&a.embedded, &b.embedded) {
            assert_eq!(write_rotation(x), write_rotation(y));
        }
        if let (Some(x), Some(y)) = (&a.layered, &b.layered) {
            assert_eq!(write_layered(x), write_layered(y));
        }
    }
}
