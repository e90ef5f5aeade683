use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use log::info;
use serde_json::{json, Value};

use recolour::connect::{connect_colourings_with, ConnectBudget};
use recolour::degenerate::reduce_one_colour_degenerate_with_report;
use recolour::generate::{generate_family, random_proper_colouring};
use recolour::graph::{degeneracy_ordering, Colour, Colouring, Graph};
use recolour::io;
use recolour::mad::reduce_one_colour_mad_with_report;
use recolour::moves::{verify_sequence, Sequence};
use recolour::oracle::{component_and_diameter, shortest_sequence};
use recolour::partition::{
    certify_partition, corollary_partition, mihok_wood_partition, thomassen_partition, CertifiedPartition,
    PartitionSearchConfig,
};
use recolour::pipeline::{seven_colour_path_with, PipelineConfig};
use recolour::planar::reduce_planar_6_to_5_with_report;

/// Recolouring sequences between proper colourings of planar and degenerate
/// graphs.
#[derive(Parser, Debug)]
#[command(name = "recolour", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Graph file (`p edge n m` / `e u v`).
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Starting colouring (`v c` lines).
    #[arg(long, global = true)]
    from: Option<PathBuf>,
    /// Target colouring.
    #[arg(long, global = true)]
    to: Option<PathBuf>,
    /// Palette size; the default depends on the subcommand.
    #[arg(long = "colours", global = true, value_name = "K")]
    colours: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Soft move budget for connect, as a multiple of n².
    #[arg(long, global = true, value_name = "C", default_value_t = 50.0)]
    budget_factor: f64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write run statistics as JSON here.
    #[arg(long, global = true)]
    stats_json: Option<PathBuf>,
    /// Re-run the verifier on every produced sequence.
    #[arg(long, global = true, action = ArgAction::Set, default_value_t = true)]
    check: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sequence between two 7-colourings of a planar graph.
    Pipeline,
    /// Remove the top colour of a (k+2)-colouring of a k-degenerate graph.
    ReduceDegenerate,
    /// Remove colour k+2 from a (k+2)-colouring when mad < k+1.
    ReduceMad,
    /// Take a 6-colouring of a planar graph to a 5-colouring.
    Planar65,
    /// Join two K-colourings of a d-degenerate graph, K >= 2d+1.
    Connect,
    /// Vertex partition with certificates.
    Partition {
        /// corollary (I1, I2, A), thomassen (I, D) or mihok-wood (I, F).
        #[arg(long, default_value = "corollary")]
        kind: String,
    },
    /// Check a sequence file against a graph and start colouring.
    Verify {
        #[arg(long)]
        seq: PathBuf,
    },
    /// Brute-force shortest sequence, or connectivity of R_K(G).
    Oracle,
    /// Generate a graph family, or a random colouring with `colouring`.
    Gen { family: String, params: Vec<u32> },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<recolour::Error> for Failure {
    fn from(e: recolour::Error) -> Self {
        Failure {
            code: if e.is_certificate_failure() { 2 } else { 1 },
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: recolour::Result<T>) -> Res<T> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Res<&'a Path> {
    p.as_deref().ok_or_else(|| usage(format!("--{flag} is required")))
}

impl Cli {
    fn load_graph(&self) -> Res<Graph> {
        let p = required(&self.graph, "graph")?;
        with_file(p, io::parse_graph(&read(p)?))
    }

    fn load_colouring(&self, g: &Graph, which: &Option<PathBuf>, flag: &str, palette: Colour) -> Res<Colouring> {
        let p = required(which, flag)?;
        with_file(p, io::parse_colouring_for(g, &read(p)?, palette))
    }

    fn write_out(&self, text: &str) -> Res<()> {
        match &self.out {
            Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn write_stats(&self, stats: Value) -> Res<()> {
        if let Some(p) = &self.stats_json {
            let text = serde_json::to_string_pretty(&stats).expect("stats serialize") + "\n";
            fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        }
        Ok(())
    }

    /// Verifies (when `--check` is on) and writes a sequence.
    fn emit_sequence(&self, g: &Graph, s: &Sequence, end: Option<&Colouring>) -> Res<()> {
        if self.check {
            verify_sequence(g, s, end).into_result()?;
        }
        info!("{} moves", s.len());
        self.write_out(&io::emit_sequence(s))
    }

    fn budget(&self) -> Res<ConnectBudget> {
        Ok(ConnectBudget::new(
            self.budget_factor,
            ConnectBudget::default().hard_cap(),
        )?)
    }
}

fn run(cli: &Cli) -> Res<()> {
    match &cli.command {
        Command::Pipeline => {
            let g = cli.load_graph()?;
            let a = cli.load_colouring(&g, &cli.from, "from", 7)?;
            let b = cli.load_colouring(&g, &cli.to, "to", 7)?;
            let cfg = PipelineConfig {
                partition: PartitionSearchConfig {
                    seed: cli.seed,
                    ..Default::default()
                },
                connect_budget: cli.budget()?,
                parallel: true,
            };
            let (s, report, _) = seven_colour_path_with(&g, &a, &b, &cfg)?;
            cli.emit_sequence(&g, &s, Some(&b))?;
            cli.write_stats(serde_json::to_value(&report).expect("report serializes"))
        }
        Command::ReduceDegenerate => {
            let g = cli.load_graph()?;
            let ord = degeneracy_ordering(&g);
            let palette = cli.colours.unwrap_or(ord.width as Colour + 2);
            if palette < 3 {
                return Err(usage("--colours must be at least 3"));
            }
            let a = cli.load_colouring(&g, &cli.from, "from", palette)?;
            let k = palette as usize - 2;
            let (s, rep) = reduce_one_colour_degenerate_with_report(&g, k, &a, &ord)?;
            cli.emit_sequence(&g, &s, None)?;
            cli.write_stats(json!({
                "n": rep.n,
                "k": rep.k,
                "length": rep.length,
                "calls": rep.calls.len(),
                "high_degree_vertices": rep.profile.vertices.len(),
                "log2_length": if rep.length > 0 { (rep.length as f64).log2() } else { 0.0 },
                "log2_length_bound": rep.log2_length_bound,
            }))
        }
        Command::ReduceMad => {
            let g = cli.load_graph()?;
            let palette = cli.colours.unwrap_or(7);
            if palette < 4 {
                return Err(usage("--colours must be at least 4"));
            }
            let a = cli.load_colouring(&g, &cli.from, "from", palette)?;
            let (s, rep) = reduce_one_colour_mad_with_report(&g, palette as usize - 2, &a)?;
            cli.emit_sequence(&g, &s, None)?;
            cli.write_stats(json!({
                "n": rep.n,
                "k": rep.k,
                "length": rep.length,
                "levels": rep.levels.len(),
                "asserts_passed": rep.asserts_passed,
                "max_moves_per_vertex": rep.max_moves_per_vertex,
                "fitted_c": rep.fitted_c,
            }))
        }
        Command::Planar65 => {
            let g = cli.load_graph()?;
            let a = cli.load_colouring(&g, &cli.from, "from", 7)?;
            let (s, rep) = reduce_planar_6_to_5_with_report(&g, &a)?;
            cli.emit_sequence(&g, &s, None)?;
            cli.write_stats(json!({
                "n": rep.n,
                "length": rep.length,
                "levels": rep.levels.len(),
                "kempe_fixes": rep.levels.iter().map(|l| l.kempe_fixes.len()).sum::<usize>(),
                "swap_boundaries_checked": rep.swap_boundaries_checked,
            }))
        }
        Command::Connect => {
            let g = cli.load_graph()?;
            let d = degeneracy_ordering(&g).width.max(1);
            let k = cli.colours.unwrap_or(2 * d as Colour + 1);
            let a = cli.load_colouring(&g, &cli.from, "from", k)?;
            let b = cli.load_colouring(&g, &cli.to, "to", k)?;
            let (s, rep) = connect_colourings_with(&g, d, k as usize, &a, &b, &cli.budget()?)?;
            cli.emit_sequence(&g, &s, Some(&b))?;
            cli.write_stats(json!({
                "n": rep.n,
                "d": rep.d,
                "k": rep.k,
                "length": rep.length,
                "shield_moves": rep.shield_moves,
                "soft_bound": rep.soft_bound,
                "within_soft_bound": rep.within_soft_bound,
                "max_moves_per_vertex": rep.max_moves_per_vertex,
            }))
        }
        Command::Partition { kind } => {
            let g = cli.load_graph()?;
            let cfg = PartitionSearchConfig {
                seed: cli.seed,
                ..Default::default()
            };
            let p: CertifiedPartition = match kind.as_str() {
                "corollary" => corollary_partition(&g, &cfg)?,
                "thomassen" => thomassen_partition(&g, &cfg)?,
                "mihok-wood" => {
                    let k = cli.colours.map_or(degeneracy_ordering(&g).width.max(1), |c| c as usize);
                    mihok_wood_partition(&g, k)?
                }
                other => return Err(usage(format!("unknown partition kind `{other}`"))),
            };
            if cli.check {
                certify_partition(&g, &p.partition)?;
            }
            cli.write_out(&io::emit_partition(&p.partition.parts))?;
            cli.write_stats(json!({
                "n": g.n(),
                "parts": p.partition.parts.iter().map(|x| x.len()).collect::<Vec<_>>(),
                "method": format!("{:?}", p.method),
            }))
        }
        Command::Verify { seq } => {
            let g = cli.load_graph()?;
            let palette = cli.colours.unwrap_or(7);
            let a = cli.load_colouring(&g, &cli.from, "from", palette)?;
            let b = match &cli.to {
                Some(_) => Some(cli.load_colouring(&g, &cli.to, "to", palette)?),
                None => None,
            };
            let s = with_file(seq, io::parse_sequence(&read(seq)?, &a))?;
            let report = verify_sequence(&g, &s, b.as_ref());
            cli.write_stats(json!({
                "moves_checked": report.moves_checked,
                "ok": report.is_ok(),
                "failed_move": report.failure.as_ref().and_then(|f| f.index),
            }))?;
            match &report.failure {
                None => {
                    println!("ok: {} moves verified", report.moves_checked);
                    Ok(())
                }
                Some(f) => Err(Failure {
                    code: 2,
                    msg: match f.index {
                        Some(i) => format!("move {i} (0-based) rejected: {}", f.error),
                        None => format!("end colouring rejected: {}", f.error),
                    },
                }),
            }
        }
        Command::Oracle => {
            let g = cli.load_graph()?;
            let k = cli.colours.ok_or_else(|| usage("--colours is required"))?;
            match (&cli.from, &cli.to) {
                (Some(_), Some(_)) => {
                    let a = cli.load_colouring(&g, &cli.from, "from", k)?;
                    let b = cli.load_colouring(&g, &cli.to, "to", k)?;
                    match shortest_sequence(&g, k as usize, &a, &b)? {
                        Some(s) => {
                            println!("{}", s.len());
                            if cli.out.is_some() {
                                cli.emit_sequence(&g, &s, Some(&b))?;
                            }
                            cli.write_stats(json!({ "reachable": true, "length": s.len() }))
                        }
                        None => {
                            println!("unreachable");
                            cli.write_stats(json!({ "reachable": false }))
                        }
                    }
                }
                (None, None) => {
                    let sum = component_and_diameter(&g, k as usize)?;
                    match sum.diameter {
                        Some(d) => println!("connected, diameter {d}"),
                        None => println!("disconnected, {} components", sum.components),
                    }
                    cli.write_stats(serde_json::to_value(&sum).expect("summary serializes"))
                }
                _ => Err(usage("give both --from and --to, or neither")),
            }
        }
        Command::Gen { family, params } => {
            if family == "colouring" {
                let g = cli.load_graph()?;
                let c = random_proper_colouring(&g, cli.colours.unwrap_or(7), cli.seed)?;
                return cli.write_out(&io::emit_colouring(&c));
            }
            let g = generate_family(family, params, cli.seed)?;
            cli.write_out(&io::emit_graph(&g)?)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
