//! Planar embedding by path addition (Demoucron, Malgrange, Pertuiset),
//! run per biconnected block; block rotations are concatenated at cut
//! vertices.

use std::collections::{HashMap, HashSet, VecDeque};

use super::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Rotation system of a planar graph, or [`Error::NotPlanar`].
pub fn planar_embedding(g: &Graph) -> Result<EmbeddedGraph> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return Err(Error::NotPlanar);
    }
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            order[u].push(v);
            order[v].push(u);
            continue;
        }
        for (v, cyc) in embed_block(&block)? {
            order[v].extend(cyc);
        }
    }
    let id: HashMap<(usize, usize), usize> = g.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let rotation = order
        .iter()
        .enumerate()
        .map(|(v, nb)| nb.iter().map(|&w| id[&(v.min(w), v.max(w))]).collect())
        .collect();
    EmbeddedGraph::new(n, g.edges().to_vec(), rotation)
}

/// Edge sets of the biconnected blocks.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        let mut stack = vec![(s, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, p) = (top.0, top.1);
            if top.2 < g.degree(v) {
                let w = g.neighbors(v)[top.2];
                top.2 += 1;
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != p && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Cyclic neighbour order at each vertex of a 2-connected block.
fn embed_block(block: &[(usize, usize)]) -> Result<Vec<(usize, Vec<usize>)>> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(u, v) in block {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    for nb in adj.values_mut() {
        nb.sort_unstable();
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let cycle = find_cycle(&adj);
    let mut on: HashSet<usize> = cycle.iter().copied().collect();
    let mut done: HashSet<(usize, usize)> =
        (0..cycle.len()).map(|i| key(cycle[i], cycle[(i + 1) % cycle.len()])).collect();
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];
    let mut verts: Vec<usize> = adj.keys().copied().collect();
    verts.sort_unstable();

    while done.len() < block.len() {
        // fragments: (attachments, path between two of them)
        let mut frags: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for &(u, v) in block {
            if on.contains(&u) && on.contains(&v) && !done.contains(&key(u, v)) {
                frags.push((vec![u.min(v), u.max(v)], vec![u, v]));
            }
        }
        let mut seen: HashSet<usize> = HashSet::new();
        for &s in &verts {
            if on.contains(&s) || seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut attach = Vec::new();
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &adj[&x] {
                    if on.contains(&y) {
                        attach.push(y);
                    } else if seen.insert(y) {
                        comp.push(y);
                    }
                }
            }
            attach.sort_unstable();
            attach.dedup();
            let path = fragment_path(&adj, &on, &comp, &attach);
            frags.push((attach, path));
        }
        let mut vf: HashMap<usize, Vec<usize>> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                vf.entry(v).or_default().push(fi);
            }
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (k, (attach, _)) in frags.iter().enumerate() {
            let mut adm: Vec<usize> = vf.get(&attach[0]).cloned().unwrap_or_default();
            for a in &attach[1..] {
                let other = vf.get(a).map(Vec::as_slice).unwrap_or(&[]);
                adm.retain(|f| other.contains(f));
            }
            if adm.is_empty() {
                return Err(Error::NotPlanar);
            }
            if best.is_none_or(|(_, c, _)| adm.len() < c) {
                best = Some((k, adm.len(), adm[0]));
            }
        }
        let (k, _, fi) = best.expect("an unembedded edge leaves a fragment");
        let path = &frags[k].1;
        let face = &faces[fi];
        let (a, b) = (path[0], path[path.len() - 1]);
        let ia = face.iter().position(|&x| x == a).expect("attachment on face");
        let l = face.len();
        let mut f1 = Vec::new();
        let mut i = ia;
        loop {
            f1.push(face[i]);
            if face[i] == b {
                break;
            }
            i = (i + 1) % l;
        }
        let ib = i;
        f1.extend(path[1..path.len() - 1].iter().rev());
        let mut f2 = Vec::new();
        let mut i = ib;
        loop {
            f2.push(face[i]);
            if i == ia {
                break;
            }
            i = (i + 1) % l;
        }
        f2.extend(&path[1..path.len() - 1]);
        faces[fi] = f1;
        faces.push(f2);
        for w in path.windows(2) {
            done.insert(key(w[0], w[1]));
        }
        on.extend(path.iter().copied());
    }

    let mut succ: HashMap<usize, HashMap<usize, usize>> = HashMap::new();
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            succ.entry(f[(i + 1) % l]).or_default().insert(f[i], f[(i + 2) % l]);
        }
    }
    Ok(verts
        .into_iter()
        .map(|v| {
            let s = &succ[&v];
            let start = adj[&v][0];
            let mut cyc = vec![start];
            let mut w = s[&start];
            while w != start {
                cyc.push(w);
                w = s[&w];
            }
            (v, cyc)
        })
        .collect())
}

fn find_cycle(adj: &HashMap<usize, Vec<usize>>) -> Vec<usize> {
    let s = *adj.keys().min().expect("non-empty block");
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut depth: HashMap<usize, usize> = HashMap::from([(s, 0)]);
    let mut stack = vec![(s, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        if i == adj[&v].len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let w = adj[&v][i];
        if parent.get(&v) == Some(&w) {
            continue;
        }
        if let Some(&dw) = depth.get(&w) {
            if dw < depth[&v] {
                let mut cyc = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[&x];
                    cyc.push(x);
                }
                return cyc;
            }
            continue;
        }
        parent.insert(w, v);
        depth.insert(w, depth[&v] + 1);
        stack.push((w, 0));
    }
    unreachable!("a 2-connected block with two or more edges has a cycle")
}

/// Path `a, c_1, …, c_j, b` through a component with `b ≠ a` attached.
fn fragment_path(adj: &HashMap<usize, Vec<usize>>, on: &HashSet<usize>, comp: &[usize], attach: &[usize]) -> Vec<usize> {
    let a = attach[0];
    let inside: HashSet<usize> = comp.iter().copied().collect();
    let mut prev: HashMap<usize, Option<usize>> = HashMap::new();
    let mut q = VecDeque::new();
    for &c in &adj[&a] {
        if inside.contains(&c) && !prev.contains_key(&c) {
            prev.insert(c, None);
            q.push_back(c);
        }
    }
    while let Some(x) = q.pop_front() {
        if let Some(&b) = adj[&x].iter().find(|&&y| y != a && on.contains(&y)) {
            let mut path = vec![b, x];
            let mut y = x;
            while let Some(p) = prev[&y] {
                path.push(p);
                y = p;
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &y in &adj[&x] {
            if inside.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, Some(x));
                q.push_back(y);
            }
        }
    }
    unreachable!("a fragment of a 2-connected block has two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus(g: &Graph) -> usize {
        planar_embedding(g).unwrap().euler_genus().unwrap()
    }

    #[test]
    fn small_planar_graphs_embed() {
        assert_eq!(genus(&Graph::complete(4)), 0);
        assert_eq!(genus(&Graph::grid(4, 5)), 0);
        assert_eq!(genus(&Graph::star(6)), 0);
        assert_eq!(genus(&Graph::cycle(7)), 0);
        let bowtie = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(genus(&bowtie), 0);
    }

    #[test]
    fn kuratowski_graphs_rejected() {
        assert_eq!(planar_embedding(&Graph::complete(5)).unwrap_err(), Error::NotPlanar);
        let k33 = Graph::new(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
        assert_eq!(planar_embedding(&k33).unwrap_err(), Error::NotPlanar);
    }

    #[test]
    fn k4_minus_edge_embeds() {
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(genus(&g), 0);
    }
}
