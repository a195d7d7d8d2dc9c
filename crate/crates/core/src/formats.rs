//! Line-oriented text formats for every artifact. Writers emit LF-terminated
//! UTF-8; readers accept any whitespace between tokens and report the
//! 1-based line of the first problem.

use std::fmt::Write as _;

use crate::decomposition::{LayeredDecomposition, TreeDecomposition};
use crate::drawing3d::GridDrawing3D;
use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, Layering, Separation};
use crate::layouts::{QueueLayout, TrackLayout};
use crate::nonrep::Colouring;
use crate::shadow::RichDecomposition;

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Lines<'a> {
    /// Blank lines are dropped unless `keep_blank`.
    fn new(text: &'a str, keep_blank: bool) -> Self {
        let mut lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| keep_blank || !l.is_empty())
            .collect();
        while lines.last().is_some_and(|(_, l)| l.is_empty()) {
            lines.pop();
        }
        Lines { lines, at: 0 }
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let l = self.lines.get(self.at).copied().ok_or_else(|| Error::Parse {
            line: self.last_line(),
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        self.at += 1;
        Ok(l)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.at).copied()
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Some((line, l)) => Err(Error::Parse { line, msg: format!("trailing content {l:?}") }),
            None => Ok(()),
        }
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn nums(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("not a non-negative integer: {t:?}"))))
        .collect()
}

fn exactly<const K: usize>(line: usize, s: &str) -> Result<[usize; K]> {
    let v = nums(line, s)?;
    v.try_into().map_err(|v: Vec<usize>| err(line, format!("expected {K} integers, found {}", v.len())))
}

/// `"key: a b c"` → `(key, [a, b, c])`.
fn labelled(line: usize, s: &str) -> Result<(String, Vec<usize>)> {
    let (key, rest) = s.split_once(':').ok_or_else(|| err(line, "missing ':'"))?;
    Ok((key.trim().to_string(), nums(line, rest)?))
}

fn keyword<'a>(line: usize, s: &'a str, word: &str) -> Result<&'a str> {
    match s.strip_prefix(word) {
        Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => Ok(rest.trim()),
        _ => Err(err(line, format!("expected '{word}'"))),
    }
}

fn join(vs: &[usize]) -> String {
    let mut s = String::new();
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s
}

fn labelled_line(out: &mut String, key: impl std::fmt::Display, vs: &[usize]) {
    if vs.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {}", join(vs));
    }
}

// ---------------------------------------------------------------- graph

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut ls = Lines::new(text, false);
    let (line, head) = ls.next("header 'n m'")?;
    let [n, m] = exactly(line, head)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, l) = ls.next("edge 'u v'")?;
        let [u, v] = exactly(line, l)?;
        if u >= n || v >= n {
            return Err(err(line, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(err(line, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    ls.finish()?;
    Graph::new(n, edges)
}

// ------------------------------------------------------------- layering

pub fn write_layering(l: &Layering) -> String {
    let mut s = String::new();
    for layer in l.layers() {
        let _ = writeln!(s, "{}", join(layer));
    }
    s
}

fn layering_from(ls: &mut Lines) -> Result<Layering> {
    let mut layers = Vec::new();
    let mut seen = std::collections::HashSet::new();
    while let Some((line, l)) = ls.peek() {
        ls.at += 1;
        let layer = nums(line, l)?;
        for &v in &layer {
            if !seen.insert(v) {
                return Err(err(line, format!("vertex {v} in two layers")));
            }
        }
        layers.push(layer);
    }
    let n = seen.len();
    if let Some(&v) = seen.iter().find(|&&v| v >= n) {
        return Err(err(ls.last_line(), format!("layers skip ids below {v}")));
    }
    Ok(Layering::from_layers(n, layers))
}

/// One line per layer; an empty line is an empty layer.
pub fn parse_layering(text: &str) -> Result<Layering> {
    layering_from(&mut Lines::new(text, true))
}

// -------------------------------------------------------- decompositions

pub fn write_decomposition(td: &TreeDecomposition) -> String {
    let mut s = format!("bags {}\n", td.len());
    for (i, b) in td.bags.iter().enumerate() {
        labelled_line(&mut s, i, b);
    }
    s.push_str("tree\n");
    for &(x, y) in &td.tree {
        let _ = writeln!(s, "{x} {y}");
    }
    s
}

fn decomposition_from(ls: &mut Lines) -> Result<TreeDecomposition> {
    let (line, l) = ls.next("'bags B'")?;
    let [count] = exactly(line, keyword(line, l, "bags")?)?;
    let mut bags = Vec::with_capacity(count);
    for i in 0..count {
        let (line, l) = ls.next("bag line")?;
        let (key, vs) = labelled(line, l)?;
        if key != i.to_string() {
            return Err(err(line, format!("expected bag id {i}, found {key:?}")));
        }
        bags.push(vs);
    }
    let (line, l) = ls.next("'tree'")?;
    keyword(line, l, "tree")?;
    let mut tree = Vec::new();
    for _ in 0..count.saturating_sub(1) {
        let (line, l) = ls.next("tree edge 'x y'")?;
        let [x, y] = exactly(line, l)?;
        if x >= count || y >= count {
            return Err(err(line, format!("bag index out of range 0..{count}")));
        }
        tree.push((x, y));
    }
    Ok(TreeDecomposition::new(bags, tree))
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut ls = Lines::new(text, false);
    let td = decomposition_from(&mut ls)?;
    ls.finish()?;
    Ok(td)
}

/// Decomposition block, a `layering` line, then the layering block.
pub fn write_layered(ld: &LayeredDecomposition) -> String {
    let mut s = write_decomposition(&ld.decomposition);
    s.push_str("layering\n");
    s.push_str(&write_layering(&ld.layering));
    s
}

pub fn parse_layered(text: &str) -> Result<LayeredDecomposition> {
    let mut ls = Lines::new(text, true);
    // blank lines only matter inside the layering block
    let mut compact = Lines { lines: Vec::new(), at: 0 };
    let split = ls
        .lines
        .iter()
        .position(|(_, l)| *l == "layering")
        .ok_or_else(|| err(ls.last_line(), "missing 'layering' line"))?;
    compact.lines = ls.lines[..split].iter().copied().filter(|(_, l)| !l.is_empty()).collect();
    let td = decomposition_from(&mut compact)?;
    compact.finish()?;
    ls.at = split + 1;
    let layering = layering_from(&mut ls)?;
    Ok(LayeredDecomposition::new(td, layering))
}

/// `rich k` header followed by the decomposition block.
pub fn write_rich(rd: &RichDecomposition) -> String {
    format!("rich {}\n{}", rd.richness, write_decomposition(&rd.decomposition))
}

/// Parses and re-validates against `g`; the header must bound the
/// measured richness.
pub fn parse_rich(text: &str, g: &Graph) -> Result<RichDecomposition> {
    let mut ls = Lines::new(text, false);
    let (line, l) = ls.next("'rich k'")?;
    let [k] = exactly(line, keyword(line, l, "rich")?)?;
    let td = decomposition_from(&mut ls)?;
    ls.finish()?;
    let rd = RichDecomposition::new(g, td)?;
    if rd.richness > k {
        return Err(Error::NotRich(format!("header says {k}-rich but adjacent bags share {} vertices", rd.richness)));
    }
    Ok(RichDecomposition { decomposition: rd.decomposition, richness: k })
}

// ------------------------------------------------------------- rotation

/// Header `n m g`, then `e u v` per edge, then one rotation line per vertex.
pub fn write_rotation(eg: &EmbeddedGraph) -> String {
    let mut s = match eg.euler_genus() {
        Ok(g) => format!("{} {} {g}\n", eg.n(), eg.m()),
        Err(_) => format!("{} {}\n", eg.n(), eg.m()),
    };
    for (e, &(u, v)) in eg.edges().iter().enumerate() {
        let _ = writeln!(s, "{e} {u} {v}");
    }
    for v in 0..eg.n() {
        let _ = writeln!(s, "{}", join(eg.rotation(v)));
    }
    s
}

/// A genus in the header is checked against the traced faces.
pub fn parse_rotation(text: &str) -> Result<EmbeddedGraph> {
    let mut ls = Lines::new(text, true);
    let skip_blank = |ls: &mut Lines| {
        while ls.peek().is_some_and(|(_, l)| l.is_empty()) {
            ls.at += 1;
        }
    };
    skip_blank(&mut ls);
    let (line, head) = ls.next("header 'n m g?'")?;
    let head = nums(line, head)?;
    let (n, m, genus) = match head[..] {
        [n, m] => (n, m, None),
        [n, m, g] => (n, m, Some((line, g))),
        _ => return Err(err(line, "expected 'n m' or 'n m g'")),
    };
    let mut edges = Vec::with_capacity(m);
    for e in 0..m {
        skip_blank(&mut ls);
        let (line, l) = ls.next("edge 'e u v'")?;
        let [id, u, v] = exactly(line, l)?;
        if id != e {
            return Err(err(line, format!("expected edge id {e}, found {id}")));
        }
        edges.push((u, v));
    }
    // isolated vertices have blank rotation lines, trailing ones may be cut
    let mut rotation = Vec::with_capacity(n);
    for _ in 0..n {
        match ls.peek() {
            Some((line, l)) => {
                ls.at += 1;
                rotation.push(nums(line, l)?);
            }
            None => rotation.push(Vec::new()),
        }
    }
    ls.finish()?;
    let eg = EmbeddedGraph::new(n, edges, rotation)?;
    if let Some((line, g)) = genus {
        let actual = eg.euler_genus()?;
        if actual != g {
            return Err(err(line, format!("header genus {g} but the rotation system has Euler genus {actual}")));
        }
    }
    Ok(eg)
}

// ----------------------------------------------------------- separation

/// `part1: …` and `part2: …`; the separator is their intersection.
pub fn write_separation(s: &Separation) -> String {
    let mut out = String::new();
    labelled_line(&mut out, "part1", &s.part1);
    labelled_line(&mut out, "part2", &s.part2);
    out
}

pub fn parse_separation(text: &str) -> Result<Separation> {
    let mut ls = Lines::new(text, false);
    let mut parts = Vec::new();
    for key in ["part1", "part2"] {
        let (line, l) = ls.next(key)?;
        let (k, vs) = labelled(line, l)?;
        if k != key {
            return Err(err(line, format!("expected '{key}:'")));
        }
        parts.push(vs);
    }
    ls.finish()?;
    let part2 = parts.pop().unwrap_or_default();
    let part1 = parts.pop().unwrap_or_default();
    Ok(Separation::new(part1, part2))
}

// --------------------------------------------------------------- tracks

pub fn write_tracks(tl: &TrackLayout) -> String {
    let mut s = String::new();
    for (i, t) in tl.tracks().iter().enumerate() {
        labelled_line(&mut s, i, t);
    }
    s
}

pub fn parse_tracks(text: &str) -> Result<TrackLayout> {
    let mut ls = Lines::new(text, false);
    let mut tracks = Vec::new();
    while let Some((line, l)) = ls.peek() {
        ls.at += 1;
        let (key, vs) = labelled(line, l)?;
        if key != tracks.len().to_string() {
            return Err(err(line, format!("expected track id {}, found {key:?}", tracks.len())));
        }
        tracks.push(vs);
    }
    let n = tracks.iter().map(Vec::len).sum();
    TrackLayout::new(n, tracks)
}

// --------------------------------------------------------------- queues

pub fn write_queues(ql: &QueueLayout) -> String {
    let mut s = String::new();
    labelled_line(&mut s, "order", &ql.order);
    for &(u, v, q) in &ql.edges {
        let _ = writeln!(s, "{u} {v} {q}");
    }
    s
}

pub fn parse_queues(text: &str) -> Result<QueueLayout> {
    let mut ls = Lines::new(text, false);
    let (line, l) = ls.next("'order: …'")?;
    let (key, order) = labelled(line, l)?;
    if key != "order" {
        return Err(err(line, "expected 'order:'"));
    }
    let mut edges = Vec::new();
    while let Some((line, l)) = ls.peek() {
        ls.at += 1;
        let [u, v, q] = exactly(line, l)?;
        edges.push((u, v, q));
    }
    Ok(QueueLayout { order, edges })
}

// ------------------------------------------------------------ colouring

/// A colouring together with the palette bound it was produced under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouringFile {
    pub colouring: Colouring,
    pub bound: Option<usize>,
}

/// Header `palette P bound B` (`bound -` when unknown), then `v colour`.
pub fn write_colouring(c: &Colouring, bound: Option<usize>) -> String {
    let b = bound.map_or("-".to_string(), |b| b.to_string());
    let mut s = format!("palette {} bound {b}\n", c.palette_size());
    for (v, col) in c.colour.iter().enumerate() {
        let _ = writeln!(s, "{v} {col}");
    }
    s
}

pub fn parse_colouring(text: &str) -> Result<ColouringFile> {
    let mut ls = Lines::new(text, false);
    let (line, l) = ls.next("'palette P bound B'")?;
    let t: Vec<&str> = l.split_whitespace().collect();
    let (palette, bound) = match t[..] {
        ["palette", p, "bound", b] => (p, b),
        _ => return Err(err(line, "expected 'palette P bound B'")),
    };
    let palette: usize = palette.parse().map_err(|_| err(line, "bad palette size"))?;
    let bound = match bound {
        "-" => None,
        b => Some(b.parse::<usize>().map_err(|_| err(line, "bad bound"))?),
    };
    let mut colour = Vec::new();
    while let Some((line, l)) = ls.peek() {
        ls.at += 1;
        let [v, c] = exactly(line, l)?;
        if v != colour.len() {
            return Err(err(line, format!("expected vertex {}, found {v}", colour.len())));
        }
        colour.push(c);
    }
    let colouring = Colouring { colour };
    if colouring.palette_size() != palette {
        return Err(err(line, format!("header palette {palette} but {} colours used", colouring.palette_size())));
    }
    if let Some(b) = bound.filter(|&b| palette > b) {
        return Err(Error::Bound(format!("palette {palette} exceeds recorded bound {b}")));
    }
    Ok(ColouringFile { colouring, bound })
}

// -------------------------------------------------------------- drawing

pub fn write_drawing(d: &GridDrawing3D) -> String {
    let mut s = String::new();
    for (v, p) in d.position.iter().enumerate() {
        let _ = writeln!(s, "{v} {} {} {}", p[0], p[1], p[2]);
    }
    s
}

pub fn parse_drawing(text: &str) -> Result<GridDrawing3D> {
    let mut ls = Lines::new(text, false);
    let mut position = Vec::new();
    while let Some((line, l)) = ls.peek() {
        ls.at += 1;
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 4 {
            return Err(err(line, "expected 'v x y z'"));
        }
        let v: usize = t[0].parse().map_err(|_| err(line, "bad vertex id"))?;
        if v != position.len() {
            return Err(err(line, format!("expected vertex {}, found {v}", position.len())));
        }
        let mut p = [0i64; 3];
        for (a, tok) in t[1..].iter().enumerate() {
            p[a] = tok.parse().map_err(|_| err(line, format!("bad coordinate {tok:?}")))?;
        }
        position.push(p);
    }
    Ok(GridDrawing3D { position })
}

/// Orthographic projection onto the x–z plane as an SVG line set.
pub fn drawing_svg(g: &Graph, d: &GridDrawing3D) -> String {
    const SCALE: i64 = 20;
    let xs = d.position.iter().map(|p| p[0]);
    let zs = d.position.iter().map(|p| p[2]);
    let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let (z0, z1) = (zs.clone().min().unwrap_or(0), zs.max().unwrap_or(0));
    let w = (x1 - x0 + 2) * SCALE;
    let h = (z1 - z0 + 2) * SCALE;
    let at = |p: [i64; 3]| ((p[0] - x0 + 1) * SCALE, (z1 - p[2] + 1) * SCALE);
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\">\n");
    for &(u, v) in g.edges() {
        let (a, b) = (at(d.position[u]), at(d.position[v]));
        let _ = writeln!(s, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>", a.0, a.1, b.0, b.1);
    }
    for p in &d.position {
        let (x, y) = at(*p);
        let _ = writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"3\"/>");
    }
    s.push_str("</svg>\n");
    s
}
