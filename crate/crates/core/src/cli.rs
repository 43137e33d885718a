//! Command-line front end: `build`, `verify` and `bench`.
//!
//! Exit codes: 0 when everything passed, 1 when a verification failed or a
//! construction was rejected, 2 on usage or input format errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::formulations::{
    bounded_genus_stp, kapex_stp, lift_labels, martin_stp, nesubp_deletion_ef, nesubp_planar_ef,
    subp_ef, williams_stp, FormError, SizeReport,
};
use crate::graph::{GraphFile, Multigraph};
use crate::planar::{is_planar, PlanarizerStrategy};
use crate::polyhedra::{ExtForm, EF_SCHEMA_VERSION};
use crate::surface::{euler_genus, EmbeddedGraph, RotationSystem};
use crate::verify::bench::{bench_family, crossover, to_csv, Family, METHODS};
use crate::verify::{verify_nesubp, verify_stp_exact, verify_stp_sampled};

/// Set to `1` to add wall-clock timings to verification reports.
pub const TIMING_ENV: &str = "STPEF_TIMING";

#[derive(Parser, Debug)]
#[command(
    name = "stpef",
    version,
    about = "Extended formulations for spanning tree polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Martin,
    Williams,
    Subp,
    Nesubp,
    Genus,
    Kapex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Planarizer {
    GreedyDegree,
    BfsLayers,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
    Nesubp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a formulation and print its size report.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Comma-separated vertex indices.
        #[arg(long, value_delimiter = ',')]
        apex_set: Option<Vec<usize>>,
        #[arg(long, value_enum)]
        planarizer: Option<Planarizer>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a serialized formulation against a graph.
    Verify {
        #[arg(long)]
        ef: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tabulate formulation sizes over a graph family.
    Bench {
        #[arg(long)]
        family: String,
        #[arg(long)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, value_delimiter = ',', default_value = "martin,genus")]
        methods: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Rejected(String),
}

impl From<FormError> for Failure {
    fn from(e: FormError) -> Self {
        Failure::Rejected(e.to_string())
    }
}

struct LoadedGraph {
    id: String,
    graph: Multigraph,
    rotation: Option<RotationSystem>,
    genus: Option<usize>,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LoadedGraph, Failure> {
    let text = read(path)?;
    let file: GraphFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if file.schema_version != 1 {
        return Err(Failure::Usage(format!(
            "{}: unsupported schema version {}",
            path.display(),
            file.schema_version
        )));
    }
    let graph = file
        .to_graph()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let rotation = match &file.rotation {
        Some(raw) => Some(
            RotationSystem::from_raw(&graph, raw)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        ),
        None => None,
    };
    let id = file.id.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    Ok(LoadedGraph {
        id,
        graph,
        rotation,
        genus: file.genus,
    })
}

/// Genus used to tune the planarizer: the rotation's, the file's, zero for
/// planar graphs, else the Euler lower bound `⌈(m − 3n + 6) / 6⌉`.
fn genus_of(g: &LoadedGraph) -> Result<usize, Failure> {
    if let Some(r) = &g.rotation {
        return euler_genus(&g.graph, r).map_err(|e| Failure::Rejected(e.to_string()));
    }
    if let Some(x) = g.genus {
        return Ok(x);
    }
    if is_planar(&g.graph).planar {
        return Ok(0);
    }
    let (n, m) = (g.graph.vertex_count() as i64, g.graph.edge_count() as i64);
    Ok(((m - 3 * n + 6).max(1) as usize).div_ceil(6))
}

fn build(
    input: &Path,
    method: Method,
    apex_set: Option<Vec<usize>>,
    planarizer: Option<Planarizer>,
    seed: u64,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let lg = load_graph(input)?;
    let g = &lg.graph;
    let (ef, mut report) = match method {
        Method::Subp => {
            let f = subp_ef(g);
            let rep = SizeReport::simple("subp", g, &f);
            (f, rep)
        }
        Method::Martin => {
            let f = martin_stp(g)?;
            let rep = SizeReport::simple("martin", g, &f);
            (f, rep)
        }
        Method::Williams => {
            let rot = match &lg.rotation {
                Some(r) => r.clone(),
                None => is_planar(g)
                    .embedding
                    .ok_or_else(|| Failure::Rejected("non-planar graph".into()))?,
            };
            let emb = EmbeddedGraph::new(g.clone(), rot).map_err(FormError::from)?;
            let f = williams_stp(&emb, None)?;
            let rep = SizeReport::simple("williams", g, &f);
            (f, rep)
        }
        Method::Nesubp => {
            let f = match &apex_set {
                None => nesubp_planar_ef(g)?,
                Some(x) => {
                    let sub = g.remove_vertices(x);
                    if !is_planar(&sub.graph).planar {
                        return Err(Failure::Rejected("G - X is non-planar".into()));
                    }
                    let inner = if sub.graph.vertex_count() > 0 {
                        Some(lift_labels(&nesubp_planar_ef(&sub.graph)?, &sub)?)
                    } else {
                        None
                    };
                    nesubp_deletion_ef(g, x, inner.as_ref())?
                }
            };
            let rep = SizeReport::simple("nesubp", g, &f);
            (f, rep)
        }
        Method::Genus => {
            let genus = genus_of(&lg)?;
            let strategy = match (&apex_set, planarizer) {
                (Some(x), _) => PlanarizerStrategy::UserSupplied(x.clone()),
                (None, Some(Planarizer::GreedyDegree)) => PlanarizerStrategy::GreedyDegree,
                (None, _) => PlanarizerStrategy::BfsLayers {
                    genus,
                    layer_width: None,
                },
            };
            bounded_genus_stp(g, genus, &strategy)?
        }
        Method::Kapex => {
            let x = apex_set
                .as_ref()
                .ok_or_else(|| Failure::Usage("--method kapex requires --apex-set".into()))?;
            kapex_stp(g, x)?
        }
    };
    report.warnings.extend(ef.provenance().warnings());
    report.warnings.dedup();
    let prov = ef
        .provenance()
        .clone()
        .with("graph", &lg.id)
        .with("seed", seed);
    let ef = ef.with_provenance(prov);
    if let Some(p) = out_path {
        write_file(p, &ef.to_json())?;
    }
    writeln!(out, "{}", report.to_json()).ok();
    Ok(())
}

fn verify(
    ef_path: &Path,
    graph_path: &Path,
    mode: Mode,
    trials: usize,
    seed: u64,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let text = read(ef_path)?;
    let ef = ExtForm::from_json(&text).map_err(|e| {
        Failure::Usage(format!(
            "{}: {e} (expected EF schema version {EF_SCHEMA_VERSION})",
            ef_path.display()
        ))
    })?;
    let lg = load_graph(graph_path)?;
    let start = Instant::now();
    let res = match mode {
        Mode::Exact => verify_stp_exact(&ef, &lg.graph),
        Mode::Sampled => verify_stp_sampled(&ef, &lg.graph, trials, seed),
        Mode::Nesubp => verify_nesubp(&ef, &lg.graph, seed),
    };
    let mut report = res
        .map_err(|e| Failure::Usage(e.to_string()))?
        .with_graph_id(&lg.id);
    if std::env::var(TIMING_ENV).is_ok_and(|v| v == "1") {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    writeln!(out, "{}", report.to_json()).ok();
    Ok(report.passed())
}

fn bench(
    family: &str,
    kmin: usize,
    kmax: usize,
    methods: &[String],
    out_path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let fam = Family::parse(family).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown family {family:?} (expected torus-grid, planar-grid or complete)"
        ))
    })?;
    if kmin <= kmax && kmin < fam.min_k() {
        return Err(Failure::Usage(format!(
            "--kmin must be at least {} for {family}",
            fam.min_k()
        )));
    }
    if let Some(m) = methods.iter().find(|m| !METHODS.contains(&m.as_str())) {
        return Err(Failure::Usage(format!(
            "unknown method {m:?} (expected one of {})",
            METHODS.join(", ")
        )));
    }
    let rows = bench_family(fam, kmin, kmax, methods, false)?;
    let csv = to_csv(&rows, methods);
    match out_path {
        Some(p) => write_file(p, &csv)?,
        None => {
            write!(out, "{csv}").ok();
        }
    }
    if let Some(k) = crossover(&rows) {
        writeln!(err, "genus pipeline below martin from k = {k}").ok();
    }
    Ok(())
}

/// Run the command line `args` (program name first) and return the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                write!(out, "{text}").ok();
            } else {
                write!(err, "{text}").ok();
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let res = match cli.command {
        Command::Build {
            input,
            method,
            apex_set,
            planarizer,
            seed,
            out: out_path,
        } => build(
            &input,
            method,
            apex_set,
            planarizer,
            seed,
            out_path.as_deref(),
            out,
        )
        .map(|_| true),
        Command::Verify {
            ef,
            graph,
            mode,
            trials,
            seed,
        } => verify(&ef, &graph, mode, trials, seed, out),
        Command::Bench {
            family,
            kmin,
            kmax,
            methods,
            out: out_path,
        } => bench(&family, kmin, kmax, &methods, out_path.as_deref(), out, err).map(|_| true),
    };
    match res {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Rejected(m)) => {
            writeln!(err, "error: {m}").ok();
            1
        }
        Err(Failure::Usage(m)) => {
            writeln!(err, "error: {m}").ok();
            2
        }
    }
}
