//! `layersep` command-line front end.
//!
//! Exit codes: 0 when every verifier that ran passed, 1 on a verification
//! failure (the counterexample goes to stderr), 2 on invalid input.

mod manifest;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use layersep::decomposition::{
    bound_report, genus_layered_decomposition, layered_separation, validate_tree_decomposition, Balance,
    LayeredDecomposition,
};
use layersep::drawing3d::{draw_from_tracks, verify_drawing, volume_report, GridDrawing3D};
use layersep::embedding::{planar_embedding, EmbeddedGraph};
use layersep::exec::with_jobs;
use layersep::formats::{self, ColouringFile};
use layersep::generators::gen;
use layersep::graph::{validate_layering, validate_separation, Ratio};
use layersep::layouts::{queue_from_tracks, verify_queue_layout, verify_track_layout, QueueLayout, TrackLayout};
use layersep::nonrep::{default_max_path, verify_nonrepetitive, Colouring};
use layersep::pipeline::embedded_run;
use layersep::shadow::{
    distinct_colours, planar_colours, planar_tracks, recursive_nonrep_driver, recursive_track_driver,
    singleton_tracks, RichDecomposition,
};
use layersep::{Error, Exec, Graph};
use manifest::{render_report, FileHash, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "layersep", version, about = "Layered decompositions, layouts, colourings and 3D drawings with verifiers")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for verification and benchmarking.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Recurse on single-bag separators with half balance (log2 n depth).
    #[arg(long, global = true)]
    log2: bool,
    /// Longest path length searched by the nonrepetitive verifier.
    #[arg(long, global = true)]
    verify_max_path: Option<usize>,
    /// Rotation-system file describing the input embedding.
    #[arg(long, global = true)]
    embedded: Option<PathBuf>,
    /// Root vertex of the layering.
    #[arg(long, global = true, default_value_t = 0)]
    root: usize,
    /// Manifest path; defaults to `<out>.manifest.json`, or stderr.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Output path (a prefix for `gen`); stdout when absent.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Solver {
    /// Cycle-separator recursion on each planar piece.
    Planar,
    /// One track or colour per vertex.
    Singleton,
}

#[derive(clap::Args, Debug, Clone)]
struct Source {
    /// Graph file (`n m` then edges).
    graph: Option<PathBuf>,
    /// Rich tree decomposition; switches to the recursive shadow drivers.
    #[arg(long)]
    rich: Option<PathBuf>,
    /// Base solver for the recursive drivers.
    #[arg(long, value_enum, default_value_t = Solver::Planar)]
    solver: Solver,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ArtifactKind {
    Tracks,
    Queues,
    Nonrep,
    Drawing,
    Decomposition,
    Rich,
    Separation,
    Rotation,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Layered tree decomposition rooted at `--root`.
    Decompose { graph: Option<PathBuf> },
    /// Layered separation of all vertices.
    Separate {
        graph: Option<PathBuf>,
        /// Layered decomposition to separate with; computed when absent.
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Track layout.
    Tracks(Source),
    /// Queue layout derived from a track layout.
    Queues(Source),
    /// Nonrepetitive colouring.
    Nonrep(Source),
    /// 3D grid drawing derived from a track layout.
    Draw3d {
        #[command(flatten)]
        source: Source,
        /// Also write an SVG projection.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also write a Wavefront OBJ line set.
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Check an artifact against a graph.
    Verify { kind: ArtifactKind, artifact: PathBuf, graph: PathBuf },
    /// Generate a fixture.
    Gen {
        family: String,
        #[arg(long, default_value_t = 5)]
        size: usize,
        /// Width or richness parameter of the family.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Time the verifiers sequentially and in parallel after a verdict pass.
    Bench {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
    },
    /// Markdown summary of manifests.
    Report { manifests: Vec<PathBuf> },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Bound(_) | Error::OracleViolation(_) | Error::CliqueOrder(_) | Error::InconsistentLabels(_) => {
                CliError::Failed(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

struct Ctx {
    cli: Cli,
    manifest: RunManifest,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> CliResult<String> {
        let bytes = fs::read(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        self.manifest.inputs.push(FileHash::of(path, &bytes));
        String::from_utf8(bytes).map_err(|_| CliError::Invalid(format!("{}: not UTF-8", path.display())))
    }

    fn write_to(&mut self, path: &Path, text: &str) -> CliResult<()> {
        fs::write(path, text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        self.manifest.outputs.push(FileHash::of(path, text.as_bytes()));
        Ok(())
    }

    /// Main artifact: `--out` or stdout.
    fn emit(&mut self, text: &str) -> CliResult<()> {
        match self.cli.out.clone() {
            Some(p) => self.write_to(&p, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn balance(&self) -> Balance {
        if self.cli.log2 {
            Balance::Half
        } else {
            Balance::TwoThirds
        }
    }

    fn graph(&mut self, path: &Path) -> CliResult<Graph> {
        let text = self.read(path)?;
        Ok(formats::parse_graph(&text)?)
    }

    /// The input graph with its embedding: `--embedded` if given, else a
    /// planar embedding of the graph file.
    fn embedded_input(&mut self, graph: Option<&Path>) -> CliResult<EmbeddedGraph> {
        let eg = match self.cli.embedded.clone() {
            Some(p) => {
                let text = self.read(&p)?;
                formats::parse_rotation(&text)?
            }
            None => {
                let p = graph.ok_or_else(|| CliError::Invalid("give a graph file or --embedded".into()))?;
                let g = self.graph(p)?;
                planar_embedding(&g).map_err(|e| match e {
                    Error::NotPlanar => CliError::Invalid("graph is not planar; pass --embedded".into()),
                    e => e.into(),
                })?
            }
        };
        if let (Some(p), Some(_)) = (graph, &self.cli.embedded) {
            let g = self.graph(p)?;
            if g != eg.simple_graph() {
                return Err(CliError::Invalid("graph file and rotation system describe different graphs".into()));
            }
        }
        if self.cli.root >= eg.n() {
            return Err(CliError::Invalid(format!("root {} out of range 0..{}", self.cli.root, eg.n())));
        }
        Ok(eg)
    }

    fn layered(&mut self, eg: &EmbeddedGraph) -> CliResult<LayeredDecomposition> {
        let gd = genus_layered_decomposition(eg, &[self.cli.root])?;
        self.manifest.parameters.ell1 = Some(2 * gd.genus);
        self.manifest.parameters.ell2 = Some(3);
        self.manifest.realise("genus", gd.genus, None);
        self.manifest.realise("layered_width", gd.layered.layered_width(), Some(2 * gd.genus + 3));
        self.manifest.realise("apex_per_layer", gd.layered.layering.max_per_layer(&gd.apex), Some(2 * gd.genus));
        Ok(gd.layered)
    }

    fn rich(&mut self, g: &Graph, path: &Path) -> CliResult<RichDecomposition> {
        let text = self.read(path)?;
        Ok(formats::parse_rich(&text, g)?)
    }

    /// Track layout from the embedded pipeline or the recursive driver.
    fn tracks(&mut self, src: &Source) -> CliResult<(Graph, TrackLayout)> {
        if let Some(rp) = &src.rich {
            let gp = src.graph.as_deref().ok_or_else(|| CliError::Invalid("--rich needs a graph file".into()))?;
            let g = self.graph(gp)?;
            let rd = self.rich(&g, rp)?;
            let out = match src.solver {
                Solver::Planar => recursive_track_driver(&g, &rd, &planar_tracks)?,
                Solver::Singleton => recursive_track_driver(&g, &rd, &singleton_tracks)?,
            };
            for l in &out.levels {
                self.manifest.realise(&format!("tracks_level_{}", l.richness), l.output, Some(l.bound));
            }
            self.manifest.realise("tracks", out.layout.num_tracks(), None);
            return Ok((g, out.layout));
        }
        let eg = self.embedded_input(src.graph.as_deref())?;
        let run = embedded_run(&eg, self.cli.root, self.balance())?;
        self.manifest.parameters.ell1 = Some(run.labels.apex_width);
        self.manifest.parameters.ell2 = Some(run.labels.width);
        self.manifest.realise("genus", run.genus, None);
        self.manifest.realise("depth", run.labels.max_depth(), Some(run.labels.depth_bound()));
        let tl = run.tracks()?;
        self.manifest.realise("tracks", tl.num_tracks(), Some(run.track_bound()));
        Ok((run.graph, tl))
    }

    fn colouring(&mut self, src: &Source) -> CliResult<(Graph, Colouring, usize)> {
        if let Some(rp) = &src.rich {
            let gp = src.graph.as_deref().ok_or_else(|| CliError::Invalid("--rich needs a graph file".into()))?;
            let g = self.graph(gp)?;
            let rd = self.rich(&g, rp)?;
            let out = match src.solver {
                Solver::Planar => recursive_nonrep_driver(&g, &rd, &planar_colours)?,
                Solver::Singleton => recursive_nonrep_driver(&g, &rd, &distinct_colours)?,
            };
            for l in &out.levels {
                self.manifest.realise(&format!("palette_level_{}", l.richness), l.output, Some(l.bound));
            }
            let bound = out.levels.last().map_or(out.colouring.palette_size(), |l| l.bound);
            self.manifest.realise("palette", out.colouring.palette_size(), Some(bound));
            return Ok((g, out.colouring, bound));
        }
        let eg = self.embedded_input(src.graph.as_deref())?;
        let run = embedded_run(&eg, self.cli.root, self.balance())?;
        self.manifest.parameters.ell1 = Some(run.labels.apex_width);
        self.manifest.parameters.ell2 = Some(run.labels.width);
        self.manifest.realise("genus", run.genus, None);
        let c = run.colouring()?;
        let bound = run.palette_bound();
        self.manifest.realise("palette", c.palette_size(), Some(bound));
        Ok((run.graph, c, bound))
    }

    fn max_path(&mut self, n: usize) -> usize {
        let mp = self.cli.verify_max_path.unwrap_or_else(|| default_max_path(n));
        self.manifest.parameters.max_path = Some(mp);
        mp
    }

    fn check_tracks(&mut self, g: &Graph, tl: &TrackLayout) {
        let r = verify_track_layout(g, tl, Exec::Parallel).map_err(|v| v.to_string());
        self.manifest.verdict("tracks", r);
    }

    fn check_queues(&mut self, g: &Graph, ql: &QueueLayout) {
        let r = verify_queue_layout(g, ql, Exec::Parallel).map_err(|v| v.to_string());
        self.manifest.verdict("queues", r);
    }

    fn check_colouring(&mut self, g: &Graph, c: &Colouring) {
        let proper = match c.improper_edge(g) {
            Some((u, v)) => Err(format!("edge {u} {v} is monochromatic")),
            None => Ok(()),
        };
        self.manifest.verdict("proper", proper);
        let mp = self.max_path(g.n());
        let r = verify_nonrepetitive(g, c, mp, Exec::Parallel).map_err(|p| format!("repetitive path {p:?}"));
        self.manifest.verdict("nonrepetitive", r);
    }

    fn check_drawing(&mut self, g: &Graph, d: &GridDrawing3D, tracks: Option<usize>) {
        let r = verify_drawing(g, d, Exec::Parallel).map_err(|v| v.to_string());
        self.manifest.verdict("drawing", r);
        let vr = volume_report(g, d, tracks.unwrap_or(1), None);
        self.manifest.realise("volume", vr.volume as usize, tracks.map(|_| vr.bound as usize));
        self.manifest.realise("volume_floor", vr.floor as usize, None);
    }
}

fn run(ctx: &mut Ctx) -> CliResult<bool> {
    let command = std::mem::replace(&mut ctx.cli.command, Command::Report { manifests: Vec::new() });
    match &command {
        Command::Decompose { graph } => {
            let eg = ctx.embedded_input(graph.as_deref())?;
            let ld = ctx.layered(&eg)?;
            let g = eg.simple_graph();
            let valid = validate_tree_decomposition(&g, &ld.decomposition)
                .map_err(|v| v[0].to_string())
                .and_then(|_| validate_layering(&g, &ld.layering).map_err(|v| v[0].to_string()));
            ctx.manifest.verdict("decomposition", valid);
            let br = bound_report(&g, &ld, Some(eg.euler_genus()?));
            ctx.manifest.realise("edges", br.m, Some(br.edge_bound));
            ctx.emit(&formats::write_layered(&ld))?;
        }
        Command::Separate { graph, decomposition } => {
            let (g, ld) = match decomposition {
                Some(dp) => {
                    let gp = graph.as_deref().ok_or_else(|| CliError::Invalid("--decomposition needs a graph file".into()))?;
                    let g = ctx.graph(gp)?;
                    let text = ctx.read(dp)?;
                    let ld = formats::parse_layered(&text)?;
                    ctx.manifest.realise("layered_width", ld.layered_width(), None);
                    (g, ld)
                }
                None => {
                    let eg = ctx.embedded_input(graph.as_deref())?;
                    let ld = ctx.layered(&eg)?;
                    (eg.simple_graph(), ld)
                }
            };
            let valid = validate_tree_decomposition(&g, &ld.decomposition).map_err(|v| v[0].to_string());
            if let Err(why) = valid {
                return Err(CliError::Invalid(format!("decomposition: {why}")));
            }
            let sample: Vec<usize> = (0..g.n()).collect();
            let s = layered_separation(&g, &ld, &sample)?;
            let w = ld.layered_width();
            let rep = validate_separation(&g, &s, &sample, Ratio::TWO_THIRDS, Some((&ld.layering, w)));
            let verdict = if rep.is_ok() {
                Ok(())
            } else {
                Err(rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))
            };
            ctx.manifest.verdict("separation", verdict);
            ctx.manifest.realise("separator", s.order(), None);
            let per_layer = rep.per_layer.as_ref().and_then(|c| c.iter().copied().max()).unwrap_or(0);
            ctx.manifest.realise("separator_per_layer", per_layer, Some(w));
            ctx.emit(&formats::write_separation(&s))?;
        }
        Command::Tracks(src) => {
            let (g, tl) = ctx.tracks(src)?;
            ctx.check_tracks(&g, &tl);
            ctx.emit(&formats::write_tracks(&tl))?;
        }
        Command::Queues(src) => {
            let (g, tl) = ctx.tracks(src)?;
            ctx.check_tracks(&g, &tl);
            let ql = queue_from_tracks(&g, &tl)?;
            ctx.check_queues(&g, &ql);
            ctx.manifest.realise("queues", ql.num_queues(), Some(tl.num_tracks().saturating_sub(1).max(1)));
            ctx.emit(&formats::write_queues(&ql))?;
        }
        Command::Nonrep(src) => {
            let (g, c, bound) = ctx.colouring(src)?;
            ctx.check_colouring(&g, &c);
            ctx.emit(&formats::write_colouring(&c, Some(bound)))?;
        }
        Command::Draw3d { source, svg, obj } => {
            let (g, tl) = ctx.tracks(source)?;
            ctx.check_tracks(&g, &tl);
            let d = draw_from_tracks(&g, &tl)?;
            ctx.check_drawing(&g, &d, Some(tl.num_tracks()));
            if let Some(p) = svg {
                ctx.write_to(p, &formats::drawing_svg(&g, &d))?;
            }
            if let Some(p) = obj {
                ctx.write_to(p, &d.to_obj(&g))?;
            }
            ctx.emit(&formats::write_drawing(&d))?;
        }
        Command::Verify { kind, artifact, graph } => {
            let g = ctx.graph(graph)?;
            let text = ctx.read(artifact)?;
            verify_artifact(ctx, *kind, &g, &text)?;
        }
        Command::Gen { family, size, k } => {
            let f = gen(family, *size, ctx.cli.seed, *k)?;
            if let Some(g) = f.expected.genus {
                ctx.manifest.realise("genus", g, None);
            }
            if let Some(l) = f.expected.layered_width {
                ctx.manifest.realise("expected_layered_width", l, None);
            }
            if let Some(ld) = &f.layered {
                ctx.manifest.realise("layered_width", ld.layered_width(), f.expected.layered_width);
            }
            if let Some(t) = f.expected.treewidth {
                ctx.manifest.realise("expected_treewidth", t, None);
            }
            if let Some(rd) = &f.rich {
                ctx.manifest.realise("richness", rd.richness, None);
            }
            ctx.manifest.realise("vertices", f.graph.n(), None);
            ctx.manifest.realise("edges", f.graph.m(), None);
            match ctx.cli.out.clone() {
                Some(prefix) => {
                    let with = |ext: &str| PathBuf::from(format!("{}.{ext}", prefix.display()));
                    ctx.write_to(&with("g"), &formats::write_graph(&f.graph))?;
                    if let Some(eg) = &f.embedded {
                        ctx.write_to(&with("rot"), &formats::write_rotation(eg))?;
                    }
                    if let Some(ld) = &f.layered {
                        ctx.write_to(&with("ld"), &formats::write_layered(ld))?;
                    }
                    if let Some(rd) = &f.rich {
                        ctx.write_to(&with("rich"), &formats::write_rich(rd))?;
                    }
                }
                None => print!("{}", formats::write_graph(&f.graph)),
            }
        }
        Command::Bench { source, repeat } => bench(ctx, source, *repeat)?,
        Command::Report { manifests } => {
            let mut all = Vec::new();
            for p in manifests {
                let text = ctx.read(p)?;
                let m: RunManifest = serde_json::from_str(&text)
                    .map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?;
                all.push((p.display().to_string(), m));
            }
            let md = render_report(&all);
            ctx.emit(&md)?;
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_artifact(ctx: &mut Ctx, kind: ArtifactKind, g: &Graph, text: &str) -> CliResult<()> {
    let n_check = |n: usize| {
        if n != g.n() {
            Err(CliError::Invalid(format!("artifact covers {n} vertices, graph has {}", g.n())))
        } else {
            Ok(())
        }
    };
    match kind {
        ArtifactKind::Tracks => {
            let tl = formats::parse_tracks(text)?;
            n_check(tl.n())?;
            ctx.manifest.realise("tracks", tl.num_tracks(), None);
            ctx.check_tracks(g, &tl);
        }
        ArtifactKind::Queues => {
            let ql = formats::parse_queues(text)?;
            ctx.manifest.realise("queues", ql.num_queues(), None);
            ctx.check_queues(g, &ql);
        }
        ArtifactKind::Nonrep => {
            let ColouringFile { colouring, bound } = formats::parse_colouring(text)?;
            n_check(colouring.colour.len())?;
            ctx.manifest.realise("palette", colouring.palette_size(), bound);
            ctx.check_colouring(g, &colouring);
        }
        ArtifactKind::Drawing => {
            let d = formats::parse_drawing(text)?;
            n_check(d.position.len())?;
            ctx.check_drawing(g, &d, None);
        }
        ArtifactKind::Decomposition => {
            let (td, layering) = if text.lines().any(|l| l.trim() == "layering") {
                let ld = formats::parse_layered(text)?;
                (ld.decomposition.clone(), Some(ld))
            } else {
                (formats::parse_decomposition(text)?, None)
            };
            let r = validate_tree_decomposition(g, &td).map_err(|v| v[0].to_string());
            ctx.manifest.verdict("decomposition", r);
            ctx.manifest.realise("width", td.width(), None);
            if let Some(ld) = layering {
                let r = validate_layering(g, &ld.layering).map_err(|v| v[0].to_string());
                ctx.manifest.verdict("layering", r);
                ctx.manifest.realise("layered_width", ld.layered_width(), None);
            }
        }
        ArtifactKind::Rich => {
            let r = formats::parse_rich(text, g).map(|rd| {
                ctx.manifest.realise("richness", rd.richness, None);
            });
            match r {
                Ok(()) => ctx.manifest.verdict("rich", Ok(())),
                Err(e @ (Error::Parse { .. } | Error::VertexOutOfRange { .. })) => return Err(e.into()),
                Err(e) => ctx.manifest.verdict("rich", Err(e.to_string())),
            }
        }
        ArtifactKind::Separation => {
            let s = formats::parse_separation(text)?;
            let sample: Vec<usize> = (0..g.n()).collect();
            let rep = validate_separation(g, &s, &sample, Ratio::TWO_THIRDS, None);
            let r = if rep.is_ok() {
                Ok(())
            } else {
                Err(rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))
            };
            ctx.manifest.verdict("separation", r);
        }
        ArtifactKind::Rotation => {
            let eg = formats::parse_rotation(text)?;
            let r = if eg.simple_graph() == *g { Ok(()) } else { Err("rotation system is for a different graph".into()) };
            ctx.manifest.verdict("rotation", r);
            ctx.manifest.realise("genus", eg.euler_genus()?, None);
        }
    }
    Ok(())
}

fn time_ms(repeat: usize, mut f: impl FnMut()) -> f64 {
    (0..repeat.max(1))
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64() * 1e3
        })
        .fold(f64::INFINITY, f64::min)
}

fn bench(ctx: &mut Ctx, src: &Source, repeat: usize) -> CliResult<()> {
    let (g, tl) = ctx.tracks(src)?;
    let ql = queue_from_tracks(&g, &tl)?;
    let d = draw_from_tracks(&g, &tl)?;
    let (_, c, _) = ctx.colouring(src)?;
    // verdicts first, timings separately
    ctx.check_tracks(&g, &tl);
    ctx.check_queues(&g, &ql);
    ctx.check_drawing(&g, &d, Some(tl.num_tracks()));
    ctx.check_colouring(&g, &c);
    let mp = ctx.max_path(g.n());
    let mut rows = Vec::new();
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        let t = [
            ("tracks", time_ms(repeat, || drop(verify_track_layout(&g, &tl, exec)))),
            ("queues", time_ms(repeat, || drop(verify_queue_layout(&g, &ql, exec)))),
            ("drawing", time_ms(repeat, || drop(verify_drawing(&g, &d, exec)))),
            ("nonrepetitive", time_ms(repeat, || drop(verify_nonrepetitive(&g, &c, mp, exec)))),
        ];
        for (v, ms) in t {
            ctx.manifest.timings_ms.insert(format!("{v}/{name}"), ms);
            rows.push(format!("{v:<14} {name:<10} {ms:>10.3} ms"));
        }
    }
    let mut out = format!("n = {}, m = {}, best of {}\n", g.n(), g.m(), repeat.max(1));
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    ctx.emit(&out)
}

fn finish(ctx: &mut Ctx, write_manifest: bool) -> CliResult<()> {
    ctx.manifest.check_bounds();
    if !write_manifest {
        return Ok(());
    }
    let json = serde_json::to_string_pretty(&ctx.manifest).expect("manifest serialises") + "\n";
    let path = ctx
        .cli
        .manifest
        .clone()
        .or_else(|| ctx.cli.out.as_ref().map(|o| PathBuf::from(format!("{}.manifest.json", o.display()))));
    match path {
        Some(p) => fs::write(&p, json).map_err(|e| CliError::Invalid(format!("{}: {e}", p.display()))),
        None => {
            let _ = std::io::stderr().write_all(json.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    let command_name = match &cli.command {
        Command::Decompose { .. } => "decompose",
        Command::Separate { .. } => "separate",
        Command::Tracks(_) => "tracks",
        Command::Queues(_) => "queues",
        Command::Nonrep(_) => "nonrep",
        Command::Draw3d { .. } => "draw3d",
        Command::Verify { .. } => "verify",
        Command::Gen { .. } => "gen",
        Command::Bench { .. } => "bench",
        Command::Report { .. } => "report",
    }
    .to_string();
    let manifest = RunManifest {
        command: command_name,
        parameters: manifest::Parameters {
            log2: cli.log2,
            seed: cli.seed,
            root: cli.root,
            jobs: cli.jobs,
            max_path: None,
            ell1: None,
            ell2: None,
        },
        ..Default::default()
    };
    let mut ctx = Ctx { cli, manifest };
    let outcome = with_jobs(jobs, || run(&mut ctx).and_then(|write| finish(&mut ctx, write)));
    match outcome {
        Ok(()) if ctx.manifest.failed() => {
            for f in &ctx.manifest.failures {
                eprintln!("FAIL {f}");
            }
            ExitCode::from(1)
        }
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Failed(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
