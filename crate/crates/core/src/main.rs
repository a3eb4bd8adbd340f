use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trispace::extremal::{
    default_threshold, fractional_certificate, greedy_triangle_packing, max_triangle_free,
    min_bipartization, min_triangle_hitting, TriangleHypergraph, MAX_HITTING_EDGES,
};
use trispace::graph::{every_edge_in_triangle, sample_gnp, sample_two_round, triangles, Graph};
use trispace::spaces::{betti1, cycle_space_dim, find_witness};
use trispace::spotcheck::{concentration_spotcheck, SpotcheckConfig};
use trispace::sweep::{edge_probability, run_sweep, NullSink, SweepConfig, SweepOptions};
use trispace::verify::run_suite;
use trispace::{Error, Result, MAX_EXHAUSTIVE_VERTICES};

#[derive(Parser)]
#[command(version, about = "Edge-space algebra and triangle-space threshold experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Density {
    /// Edge probability.
    #[arg(short, long)]
    p: Option<f64>,
    /// Constant c in p = c * sqrt(ln n / n).
    #[arg(short, long)]
    c: Option<f64>,
}

impl Density {
    fn probability(&self, n: usize) -> f64 {
        match (self.p, self.c) {
            (Some(p), _) => p,
            (None, Some(c)) => edge_probability(n, c),
            (None, None) => unreachable!("clap enforces one of p or c"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and write it as a graph file.
    Sample {
        #[arg(short, long)]
        n: usize,
        #[command(flatten)]
        density: Density,
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        /// Sample in two rounds, the first with probability theta * p.
        #[arg(long)]
        theta: Option<f64>,
        /// Where to write the first-round graph when sampling in two rounds.
        #[arg(long, requires = "theta")]
        first_round: Option<PathBuf>,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print dim C, dim T, the Betti number and the Q flag of a graph file.
    Betti {
        file: PathBuf,
        /// Also print a cycle that is not a sum of triangles, if any.
        #[arg(long)]
        witness: bool,
    },
    /// Run a sweep described by a key=value config file.
    Sweep {
        config: PathBuf,
        /// Overrides out_dir from the config.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Record wall-clock time per trial. Outputs are no longer reproducible.
        #[arg(long)]
        timing: bool,
    },
    /// Check degree, codegree, cut and pair-count concentration of one sample.
    Spotcheck {
        #[arg(short, long)]
        n: usize,
        #[command(flatten)]
        density: Density,
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0.25)]
        tolerance: f64,
        /// Size of the random vertex sets; n / 5 if omitted.
        #[arg(long)]
        set_size: Option<usize>,
    },
    /// Run a named invariant suite: spaces, bounds, oracles or sweep-smoke.
    Verify { suite: String },
    /// Run the exact extremal oracles on a small graph file.
    Oracle { file: PathBuf },
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    Graph::parse_text(&fs::read_to_string(path)?)
}

fn write_graph(g: &Graph, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(path) => fs::write(path, g.to_text())?,
        None => g.write_text(io::stdout().lock())?,
    }
    Ok(())
}

fn oracle(g: &Graph) -> Result<()> {
    let mut out = io::stdout().lock();
    let tris = triangles(g);
    writeln!(out, "vertices {} edges {} triangles {}", g.n(), g.m(), tris.len())?;
    if g.m() <= MAX_HITTING_EDGES {
        let (t, _) = max_triangle_free(g)?;
        let (h, hit) = min_triangle_hitting(g)?;
        writeln!(out, "max triangle-free subgraph {t}")?;
        writeln!(out, "min triangle hitting set {h} {hit:?}")?;
    } else {
        writeln!(out, "hitting set skipped: more than {MAX_HITTING_EDGES} edges")?;
    }
    if g.n() <= MAX_EXHAUSTIVE_VERTICES {
        let (d, cut) = min_bipartization(g, g.edges())?;
        writeln!(out, "min bipartization {d} side {:?}", cut.vertices())?;
    } else {
        writeln!(out, "bipartization skipped: more than {MAX_EXHAUSTIVE_VERTICES} vertices")?;
    }
    writeln!(out, "greedy disjoint triangles {}", greedy_triangle_packing(g).len())?;
    if g.n() >= 2 {
        let q = 2.0 * g.m() as f64 / (g.n() * (g.n() - 1)) as f64;
        let cert = fractional_certificate(&TriangleHypergraph::new(g), default_threshold(g.n(), q))?;
        writeln!(
            out,
            "fractional certificate threshold {:.3} good {} weight {:.3} max load {:.3} feasible {}",
            cert.threshold,
            cert.good.len(),
            cert.total_weight,
            cert.max_load,
            cert.feasible
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sample {
            n,
            density,
            seed,
            theta,
            first_round,
            out,
        } => {
            let p = density.probability(n);
            match theta {
                Some(theta) => {
                    let (g0, g1) = sample_two_round(n, p, theta, seed)?;
                    let union = g0.union(&g1)?;
                    if let Some(path) = &first_round {
                        write_graph(&g0, Some(path))?;
                    }
                    write_graph(&union, out.as_ref())?;
                }
                None => write_graph(&sample_gnp(n, p, seed)?, out.as_ref())?,
            }
        }
        Command::Betti { file, witness } => {
            let g = read_graph(&file)?;
            let dim_c = cycle_space_dim(&g);
            let b = betti1(&g);
            println!("dim_cycle {dim_c}");
            println!("dim_triangle {}", dim_c - b);
            println!("betti1 {b}");
            println!("q {}", every_edge_in_triangle(&g));
            if witness {
                if let Some(w) = find_witness(&g) {
                    println!("witness {w}");
                }
            }
        }
        Command::Sweep {
            config,
            out_dir,
            timing,
        } => {
            let cfg = SweepConfig::parse(&fs::read_to_string(&config)?)?;
            let dir = out_dir
                .or_else(|| cfg.out_dir.clone().map(PathBuf::from))
                .ok_or_else(|| Error::Config("no out_dir given".into()))?;
            let output = run_sweep(&cfg, &SweepOptions { timing }, &NullSink)?;
            output.write_to(&dir)?;
            print!("{}", output.summary_csv());
        }
        Command::Spotcheck {
            n,
            density,
            seed,
            samples,
            tolerance,
            set_size,
        } => {
            let p = density.probability(n);
            let g = sample_gnp(n, p, seed)?;
            let mut cfg = SpotcheckConfig::new(n, p, samples, seed ^ 0x9e37_79b9_7f4a_7c15);
            cfg.tolerance = tolerance;
            if let Some(s) = set_size {
                cfg.set_size = s;
            }
            println!("{}", concentration_spotcheck(&g, &cfg));
        }
        Command::Verify { suite } => {
            let report = run_suite(&suite)?;
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Oracle { file } => oracle(&read_graph(&file)?)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
