//! `floplab` command line: group censuses, configuration rewriting, flop-graph
//! exploration and the HTTP session server.
//!
//! Exit codes: 0 on success, 1 for usage and input errors, 2 when the
//! rewriting rules hit a state they do not cover.

pub mod serve;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use floplab_core::export::export_graph;
use floplab_core::{
    census_bounded, explore, initial_configuration, wreath::DEFAULT_ENUMERATION_BOUND, Configuration, Error,
    ExploreOptions, FlopMove, Format, GroupParams, KeyMode, VertexId,
};

#[derive(Debug, Parser)]
#[command(name = "floplab", version, about = "Mukai flops on central-fiber configurations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count elements of (Z/m) wr S_n by fixed-space codimension.
    Census {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Refuse groups larger than this.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u64,
    },
    /// Print the initial configuration for type A_k.
    Init {
        #[arg(long)]
        k: u32,
        /// Write to FILE instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flop a configuration at one or more disjoint P^2 components.
    Flop {
        /// Configuration JSON; standard input when omitted or "-".
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Vertex id such as P:1:1; repeat to flop several centers at once.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every configuration reachable by flops.
    Explore {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Identity)]
        mode: ModeArg,
        /// Follow simultaneous flops too.
        #[arg(long)]
        simultaneous: bool,
        #[arg(long, allow_negative_numbers = true)]
        max_depth: Option<i64>,
        /// Write the graph as DOT (to standard output when FILE is omitted).
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        dot: Option<PathBuf>,
        /// Write the graph as JSON (to standard output when FILE is omitted).
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<PathBuf>,
        /// Start from this configuration instead of the default for k.
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Shortest flop sequence between two configurations.
    Path {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        simultaneous: bool,
    },
    /// Serve the session API over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Identity,
    Iso,
}

impl From<ModeArg> for KeyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Identity => KeyMode::Identity,
            ModeArg::Iso => KeyMode::Isomorphism,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Unsupported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_unsupported() {
            Failure::Unsupported(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

/// Runs one command line; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Unsupported(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn emit(target: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match target {
        Some(path) if path != Path::new("-") => fs::write(path, text).map_err(|e| io_failure(path, e)),
        _ => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Usage(format!("stdout: {e}"))),
    }
}

fn read_configuration(path: Option<&Path>, stdin: &mut dyn Read) -> Result<Configuration, Failure> {
    let (text, origin) = match path {
        Some(p) if p != Path::new("-") => {
            (fs::read_to_string(p).map_err(|e| io_failure(p, e))?, p.display().to_string())
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            (s, "stdin".to_string())
        }
    };
    Configuration::from_json_str(&text).map_err(|e| Failure::Usage(format!("{origin}: {e}")))
}

fn execute(command: Command, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Census { m, n, json, bound } => {
            let report = census_bounded(GroupParams::new(m, n)?, bound)?;
            let text = if json {
                format!("{}\n", serde_json::to_string(&report.to_json()).expect("census serializes"))
            } else {
                let mut s = format!("m={m} n={n} order={}\n", report.order);
                for (codim, count) in &report.by_codim {
                    s += &format!("codim {codim}: {count}\n");
                }
                s += &format!("symplectic reflections: {}\n", report.reflections());
                s
            };
            emit(None, &text, stdout)
        }
        Command::Init { k, out } => {
            let c = initial_configuration(k)?;
            emit(out.as_deref(), &c.to_json_string(), stdout)
        }
        Command::Flop { input, at, out } => {
            let c = read_configuration(input.as_deref(), stdin)?;
            let centers = at.iter().map(|s| s.parse::<VertexId>()).collect::<Result<Vec<_>, _>>()?;
            let next = c.apply_flop(&FlopMove::new(centers)?)?;
            emit(out.as_deref(), &next.to_json_string(), stdout)
        }
        Command::Explore { k, mode, simultaneous, max_depth, dot, json, start, workers } => {
            let max_depth = match max_depth {
                Some(d) if d < 0 => return Err(Failure::Usage(format!("--max-depth must be >= 0, got {d}"))),
                Some(d) => Some(u32::try_from(d).map_err(|_| Failure::Usage("--max-depth is too large".into()))?),
                None => None,
            };
            let start = match start {
                Some(path) => {
                    let c = read_configuration(Some(&path), stdin)?;
                    if c.k() != k {
                        return Err(Failure::Usage(format!("{} has k={}, expected {k}", path.display(), c.k())));
                    }
                    c
                }
                None => initial_configuration(k)?,
            };
            let opts = ExploreOptions { simultaneous, mode: mode.into(), max_depth, workers };
            let g = explore(&start, opts)?;
            let mut wrote_stdout = false;
            if let Some(path) = dot.as_deref() {
                wrote_stdout |= path == Path::new("-");
                emit(Some(path), &export_graph(&g, Format::Dot), stdout)?;
            }
            if let Some(path) = json.as_deref() {
                wrote_stdout |= path == Path::new("-");
                emit(Some(path), &export_graph(&g, Format::Json), stdout)?;
            }
            if !wrote_stdout {
                let simultaneous_arcs = g.arcs.iter().filter(|a| a.is_simultaneous()).count();
                let depth = g.depth.values().max().copied().unwrap_or(0);
                let summary = format!(
                    "nodes: {}\narcs: {} ({} simultaneous)\ndead arcs: {}\ndepth: {depth}\nroot: {}\n",
                    g.node_count(),
                    g.arcs.len(),
                    simultaneous_arcs,
                    g.dead_arcs.len(),
                    g.root
                );
                emit(None, &summary, stdout)?;
            }
            Ok(())
        }
        Command::Path { k, from, to, simultaneous } => {
            let a = read_configuration(Some(&from), stdin)?;
            let b = read_configuration(Some(&to), stdin)?;
            let opts = ExploreOptions { simultaneous, ..Default::default() };
            let g = explore(&initial_configuration(k)?, opts)?;
            let (ka, kb) = (g.key_of(&a), g.key_of(&b));
            for (key, file) in [(&ka, &from), (&kb, &to)] {
                if !g.nodes.contains_key(key) {
                    return Err(Failure::Usage(format!(
                        "{} is not reachable by flops from the initial k={k} configuration",
                        file.display()
                    )));
                }
            }
            let path = g.shortest_flop_path(&ka, &kb)?;
            let moves: Vec<Vec<String>> = path.iter().map(|mv| mv.centers().map(|v| v.to_string()).collect()).collect();
            let text = serde_json::json!({ "length": path.len(), "moves": moves });
            emit(None, &format!("{text}\n"), stdout)
        }
        Command::Serve { port, k } => {
            initial_configuration(k)?;
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Usage(format!("runtime: {e}")))?;
            runtime.block_on(serve::serve(port, k)).map_err(|e| Failure::Usage(format!("serve on port {port}: {e}")))
        }
    }
}
