//! Argument parsing and the subcommands.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use curve_graph::{
    delta_bound, geodesic_family, grid, l_path_family, phi, prop35_check, tree, Ball, CriterionInstance, Rational,
};
use flat_structure::{build, q_length_bound, staircase, RectangleComplex};
use splitting::{
    guided_splitting_sequence, random_splitting_sequence, step_cap, transport, EmbeddedTrack, SequenceFile,
    SplittingSequence,
};
use surface_curves::{fills, intersection, oracle_intersection, reference_triangulation, CurveFile, MultiCurve, Surface};
use train_track::{is_recurrent, validate_track, vertex_cycles, TrainTrack};

use crate::experiments::{self as ex, GuidedSample};
use crate::report::{emit, with_provenance, write_csv, Provenance};

#[derive(Parser, Debug)]
#[command(name = "cctool", version, about = "Curves, train tracks and the curve graph of punctured surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Config {
    #[arg(long, global = true, default_value_t = 0)]
    pub g: u32,
    #[arg(long, global = true, default_value_t = 5)]
    pub m: u32,
    /// Mandatory for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 12)]
    pub maxnorm: u64,
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Input files; some commands take two.
    #[arg(long = "in", global = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Per-sample rows for plotting.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            bail!("--samples must be at least 1");
        }
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            bail!("--tol must lie in (0, 1e-3]");
        }
        Ok(())
    }

    fn surface(&self) -> Result<Surface> {
        ex::surface(self.g, self.m)
    }

    fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| anyhow!("this command is randomized and needs --seed"))
    }

    fn input(&self, k: usize) -> Result<&Path> {
        self.inputs.get(k).map(PathBuf::as_path).ok_or_else(|| anyhow!("missing input file {} (--in)", k + 1))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    #[command(subcommand)]
    Surface(SurfaceCmd),
    #[command(subcommand)]
    Curve(CurveCmd),
    #[command(subcommand)]
    Track(TrackCmd),
    #[command(subcommand)]
    Seq(SeqCmd),
    #[command(subcommand)]
    Cc(CcCmd),
    #[command(subcommand)]
    Flat(FlatCmd),
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCmd {
    /// Complexity, Euler characteristic and the standard track.
    Info,
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    /// Removes peripheral components.
    Normalize,
    /// Intersection number of two curves.
    Intersect {
        /// Also run the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Whether two curves fill.
    Fills,
}

#[derive(Subcommand, Debug)]
pub enum TrackCmd {
    Validate,
    Recurrent,
    VertexCycles,
}

#[derive(Subcommand, Debug)]
pub enum SeqCmd {
    /// Random splitting sequence from the standard track.
    Generate {
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Sequence from the standard track towards a vertex cycle of the end
    /// of a given or generated sequence.
    Guided {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long)]
        cycle: Option<usize>,
    },
    /// Vertex cycles of the last track pushed back to the first.
    Transport,
}

#[derive(Subcommand, Debug)]
pub enum CcCmd {
    Ball {
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    Distance,
    Qg,
    DeltaScan,
    Lsets {
        /// Size of the separately seeded calibration set.
        #[arg(long, default_value_t = 200)]
        calibration: usize,
    },
    Center,
    Prop35 {
        /// JSON adjacency lists, bare or under "adjacency".
        #[arg(long, conflicts_with_all = ["tree", "grid"])]
        graph: Option<PathBuf>,
        /// Binary tree on this many vertices.
        #[arg(long, conflicts_with = "grid")]
        tree: Option<usize>,
        /// Square grid of this side.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum, default_value_t = Family::Geodesics)]
        family: Family,
        #[arg(long = "D", default_value_t = 1.0)]
        d: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Geodesics,
    Lpaths,
}

#[derive(Subcommand, Debug)]
pub enum FlatCmd {
    Build {
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
    },
    Check,
    Qbound {
        #[arg(long)]
        curve: PathBuf,
    },
}

/// What a command produced; `ok == false` is an invariant violation.
pub struct Report {
    pub body: Value,
    pub ok: bool,
}

fn report(body: impl Serialize, ok: bool) -> Result<Report> {
    Ok(Report { body: serde_json::to_value(body)?, ok })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_curve(path: &Path) -> Result<MultiCurve> {
    let f: CurveFile = read_json(path)?;
    Ok(reference_triangulation(f.surface)?.curve_from_file(&f)?)
}

fn read_sequence(path: &Path) -> Result<SplittingSequence> {
    let f: SequenceFile = read_json(path)?;
    Ok(SplittingSequence::from_file(&f)?)
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || anyhow!("expected a positive rational like 3/2, got {s:?}");
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let (p, q): (i128, i128) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn command_name(c: &Command) -> String {
    let text = format!("{c:?}");
    let kebab = |w: &str| {
        let mut out = String::new();
        for (k, ch) in w.chars().enumerate() {
            if ch.is_uppercase() && k > 0 {
                out.push('-');
            }
            out.push(ch.to_ascii_lowercase());
        }
        out
    };
    let words: Vec<String> =
        text.split(|ch: char| !ch.is_alphanumeric()).filter(|w| !w.is_empty()).take(2).map(kebab).collect();
    words.join(" ")
}

/// Runs a parsed invocation and writes its report. Returns whether no
/// invariant was violated.
pub fn run(cli: &Cli) -> Result<bool> {
    cli.config.validate()?;
    let c = &cli.config;
    let rep = dispatch(&cli.command, c)?;
    let provenance = Provenance::new(&command_name(&cli.command), serde_json::to_value(c)?, c.seed);
    emit(&with_provenance(&rep.body, &provenance)?, c.out.as_deref())?;
    Ok(rep.ok)
}

fn dispatch(cmd: &Command, c: &Config) -> Result<Report> {
    match cmd {
        Command::Surface(SurfaceCmd::Info) => surface_info(c),
        Command::Curve(k) => curve(k, c),
        Command::Track(k) => track(k, c),
        Command::Seq(k) => seq(k, c),
        Command::Cc(k) => cc(k, c),
        Command::Flat(k) => flat(k, c),
    }
}

fn surface_info(c: &Config) -> Result<Report> {
    let s = c.surface()?;
    let (diagnostics, ok) = ex::census(s)?;
    report(
        json!({
            "surface": s,
            "complexity": s.complexity(),
            "euler_characteristic": s.euler_characteristic(),
            "edges": s.edge_count(),
            "triangles": s.triangle_count(),
            "lamination_dimension": s.lamination_dimension(),
            "standard_track": diagnostics,
        }),
        ok,
    )
}

fn curve(k: &CurveCmd, c: &Config) -> Result<Report> {
    match k {
        CurveCmd::Normalize => {
            let f: CurveFile = read_json(c.input(0)?)?;
            let n = reference_triangulation(f.surface)?.normalize_report(&f.coords)?;
            report(json!({ "curve": n.curve.to_file(), "components": n.curve.components, "dropped_peripheral": n.dropped_peripheral }), true)
        }
        CurveCmd::Intersect { oracle } => {
            let (a, b) = (read_curve(c.input(0)?)?, read_curve(c.input(1)?)?);
            let i = intersection(&a, &b)?;
            let o = if *oracle { Some(oracle_intersection(&a, &b)?) } else { None };
            report(json!({ "intersection": i, "oracle": o }), o.is_none_or(|o| o == i))
        }
        CurveCmd::Fills => {
            let (a, b) = (read_curve(c.input(0)?)?, read_curve(c.input(1)?)?);
            report(json!({ "fills": fills(&a, &b)?, "intersection": intersection(&a, &b)? }), true)
        }
    }
}

fn load_track(c: &Config) -> Result<TrainTrack> {
    match c.inputs.first() {
        Some(p) => read_json(p),
        None => Ok(EmbeddedTrack::standard(c.surface()?)?.track),
    }
}

fn track(k: &TrackCmd, c: &Config) -> Result<Report> {
    let t = load_track(c)?;
    match k {
        TrackCmd::Validate => match validate_track(&t) {
            Ok(d) => {
                let ok = d.complete;
                report(json!({ "valid": true, "diagnostics": d }), ok)
            }
            Err(e) => report(json!({ "valid": false, "errors": [e.to_string()] }), false),
        },
        TrackCmd::Recurrent => report(json!({ "recurrent": is_recurrent(&t)? }), true),
        TrackCmd::VertexCycles => {
            let cycles = vertex_cycles(&t)?;
            let max_entry = cycles.iter().flat_map(|v| v.measure.iter().copied()).max().unwrap_or(0);
            report(json!({ "count": cycles.len(), "max_entry": max_entry, "cycles": cycles }), max_entry <= 2)
        }
    }
}

fn target_of(seq: &SplittingSequence, cycle: usize) -> Result<Vec<i128>> {
    let cycles = vertex_cycles(&seq.last().track)?;
    let pick = cycles.get(cycle).ok_or_else(|| anyhow!("the last track has {} vertex cycles", cycles.len()))?;
    Ok(transport(seq, &pick.measure)?)
}

fn seq(k: &SeqCmd, c: &Config) -> Result<Report> {
    match k {
        SeqCmd::Generate { n } => {
            let base = EmbeddedTrack::standard(c.surface()?)?;
            let s = random_splitting_sequence(&base, *n, c.seed()?)?;
            report(s.to_file(), true)
        }
        SeqCmd::Guided { n, cycle } => {
            let standard;
            let (base, mu, cap) = match c.inputs.first() {
                Some(p) => {
                    let s = read_sequence(p)?;
                    let mu = target_of(&s, cycle.unwrap_or(0))?;
                    standard = s.first().clone();
                    (&standard, mu, step_cap(s.len()))
                }
                None => {
                    standard = EmbeddedTrack::standard(c.surface()?)?;
                    let g: GuidedSample = ex::guided_sample(&standard, *n..=*n, c.seed()?)?;
                    (&standard, g.measure, step_cap(*n))
                }
            };
            let guided = guided_splitting_sequence(base, &mu, cap)?;
            let target = base.measure_to_normal(&mu)?;
            let mut found = false;
            for v in vertex_cycles(&guided.last().track)? {
                found |= guided.last().measure_to_normal(&v.measure)? == target;
            }
            report(
                json!({
                    "sequence": guided.to_file(),
                    "target": target.to_file(),
                    "measure": mu,
                    "steps": guided.len(),
                    "cap": cap,
                    "target_is_vertex_cycle": found,
                }),
                found,
            )
        }
        SeqCmd::Transport => {
            let s = read_sequence(c.input(0)?)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for v in vertex_cycles(&s.last().track)? {
                let back = transport(&s, &v.measure)?;
                let sound = s.first().track.satisfies_switch_conditions(&back);
                ok &= sound;
                rows.push(json!({ "measure": v.measure, "transported": back, "switch_conditions": sound, "curve": s.first().measure_to_normal(&back)?.to_file() }));
            }
            report(json!({ "splits": s.len(), "cycles": rows }), ok)
        }
    }
}

fn csv_rows<T: Serialize>(c: &Config, rows: &[T]) -> Result<()> {
    match &c.csv {
        Some(p) => write_csv(rows, p),
        None => Ok(()),
    }
}

fn center_curve(c: &Config) -> Result<MultiCurve> {
    match c.inputs.first() {
        Some(p) => read_curve(p),
        None => Ok(phi(&EmbeddedTrack::standard(c.surface()?)?)?),
    }
}

fn cc(k: &CcCmd, c: &Config) -> Result<Report> {
    match k {
        CcCmd::Ball { radius } => {
            let center = center_curve(c)?;
            let ball = Ball::new(&center, *radius, c.maxnorm)?;
            let mut layers = vec![0usize; *radius as usize + 1];
            let mut outside = 0;
            for l in &ball.layers {
                match l {
                    Some(d) if (*d as usize) < layers.len() => layers[*d as usize] += 1,
                    _ => outside += 1,
                }
            }
            report(json!({ "center": center.to_file(), "universe": ball.len(), "layers": layers, "beyond_radius": outside }), true)
        }
        CcCmd::Distance => {
            let (a, b) = (read_curve(c.input(0)?)?, read_curve(c.input(1)?)?);
            let pair = [a.clone(), b.clone()];
            let ball = ex::linked_ball(&a, c.maxnorm, &[&pair])?;
            let i = intersection(&a, &b)?;
            let bfs = ball.graph_distance(ball.require(&a)?, ball.require(&b)?);
            let d = ball.distance(&a, &b)?;
            let ok = d.upper().is_none_or(|x| x as u64 <= i + 1);
            report(json!({ "distance": d, "intersection": i, "bfs": bfs, "universe": ball.len() }), ok)
        }
        CcCmd::Qg => {
            let base = EmbeddedTrack::standard(c.surface()?)?;
            let samples = ex::guided_samples(&base, c.samples, c.seed()?)?;
            let scan = ex::qg_scan(&samples, c.maxnorm)?;
            csv_rows(c, &scan.rows)?;
            let ok = scan.rows.iter().all(|r| r.p.is_some_and(f64::is_finite));
            report(scan, ok)
        }
        CcCmd::DeltaScan => {
            let seed = c.seed()?;
            let base = EmbeddedTrack::standard(c.surface()?)?;
            let pool = ex::guided_samples(&base, (c.samples + 10).max(20), seed)?;
            let (triples, attempts) = ex::filling_triples(&pool, c.samples, seed)?;
            if triples.len() < c.samples {
                bail!("found {} pairwise filling triples in {attempts} attempts", triples.len());
            }
            let mut scan = ex::triangle_scan(&pool, &triples, c.maxnorm)?;
            scan.attempts = attempts;
            csv_rows(c, &scan.rows)?;
            let ok = scan.rows.iter().all(|r| r.delta.is_some());
            report(scan, ok)
        }
        CcCmd::Lsets { calibration } => {
            let s = c.surface()?;
            let mut scan = ex::lset_scan(s, c.maxnorm, c.samples, *calibration, c.seed()?)?;
            scan.profiles = ex::profiles(s, c.samples, c.seed()?)?;
            csv_rows(c, &scan.samples)?;
            let ok = scan.validated
                && scan.samples.iter().all(|x| x.symmetric)
                && scan.profiles.iter().all(|p| p.is_some_and(f64::is_finite));
            report(scan, ok)
        }
        CcCmd::Center => {
            let seed = c.seed()?;
            let base = EmbeddedTrack::standard(c.surface()?)?;
            let pool = ex::guided_samples(&base, (c.samples + 10).max(20), seed)?;
            let (triples, attempts) = ex::filling_triples(&pool, c.samples, seed)?;
            if triples.is_empty() {
                bail!("no pairwise filling triple in {attempts} attempts");
            }
            let rows = ex::center_scan(&pool, &triples, c.maxnorm)?;
            csv_rows(c, &rows)?;
            let d2 = rows.iter().flat_map(|r| r.side_distances.iter().copied()).collect::<Option<Vec<u32>>>();
            let ok = d2.is_some();
            report(json!({ "d2": d2.and_then(|v| v.into_iter().max()), "rows": rows }), ok)
        }
        CcCmd::Prop35 { graph, tree: t, grid: g, family, d } => {
            let (adjacency, w) = match (graph, t, g) {
                (Some(p), _, _) => {
                    let v: Value = read_json(p)?;
                    let adj = v.get("adjacency").cloned().unwrap_or(v);
                    (serde_json::from_value::<Vec<Vec<usize>>>(adj).context("adjacency lists")?, None)
                }
                (_, Some(n), _) => (tree(*n, 2), None),
                (_, _, Some(n)) => (grid(*n, *n), Some(*n)),
                _ => bail!("one of --graph, --tree or --grid is required"),
            };
            if adjacency.iter().flatten().any(|&v| v >= adjacency.len()) {
                bail!("adjacency refers to a missing vertex");
            }
            let fam = match (family, w) {
                (Family::Geodesics, _) => geodesic_family(&adjacency),
                (Family::Lpaths, Some(n)) => l_path_family(n, n),
                (Family::Lpaths, None) => bail!("--family lpaths needs --grid"),
            };
            let inst = CriterionInstance { adjacency, family: fam, constant: *d };
            let seed = if inst.adjacency.len().pow(3) < curve_graph::EXHAUSTIVE_LIMIT { c.seed.unwrap_or(0) } else { c.seed()? };
            let rep = prop35_check(&inst, c.samples, seed);
            let ok = rep.verified;
            report(json!({ "report": rep, "bound": delta_bound(*d) }), ok)
        }
    }
}

fn flat(k: &FlatCmd, c: &Config) -> Result<Report> {
    match k {
        FlatCmd::Build { a, b } => {
            let (x, y) = (read_curve(c.input(0)?)?, read_curve(c.input(1)?)?);
            let complex = build(&x, &y, parse_rational(a)?, parse_rational(b)?)?;
            let ok = complex.check().is_ok();
            report(complex, ok)
        }
        FlatCmd::Check => {
            let complex: RectangleComplex = read_json(c.input(0)?)?;
            match complex.check() {
                Ok(()) => report(
                    json!({
                        "consistent": true,
                        "area": flat_structure::area(&complex).to_string(),
                        "cone_angles": flat_structure::cone_angles(&complex),
                        "gauss_bonnet_sum": complex.gauss_bonnet_sum(),
                    }),
                    true,
                ),
                Err(e) => report(json!({ "consistent": false, "errors": [e.to_string()] }), false),
            }
        }
        FlatCmd::Qbound { curve } => {
            let complex: RectangleComplex = read_json(c.input(0)?)?;
            let probe = read_curve(curve)?;
            let bound = q_length_bound(&complex, &probe)?;
            let st = staircase(&complex, &probe)?;
            let ok = st.length <= bound;
            report(json!({ "bound": bound.to_string(), "staircase": st }), ok)
        }
    }
}
