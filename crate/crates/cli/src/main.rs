use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use bimodal_core::format::{parse_encoder_file, parse_graph_file, serialize_encoder, serialize_graph, to_dot};
use bimodal_core::graph::{irreducible_components, is_deterministic, memory, period};
use bimodal_core::spectra::{capacity, coding_ratio, franaszek_joint, min_infnorm_ae, perron, rate_region};
use bimodal_core::synth::{assign_block_tags, block_width, synthesize, Method};
use bimodal_core::verify::{
    check_encoder, decode_blocks, decode_stream, encode_stream, encode_tags, Policy, VerifyOptions,
};
use bimodal_core::{Error, LabeledGraph, Tag, TaggedEncoder, DEFAULT_ANTICIPATION_CAP, DEFAULT_TOL, DEFAULT_XI_CAP};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bimodal", version, about = "Bi-modal constrained encoder toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size, determinism, period, memory and capacity of a graph.
    Info {
        graph: PathBuf,
        #[arg(short, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Writes the t-th power of a graph.
    Power {
        graph: PathBuf,
        #[arg(short)]
        t: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Largest joint approximate eigenvector bounded by the cap.
    Franaszek {
        graph: PathBuf,
        #[arg(short, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        n0: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long, default_value_t = DEFAULT_XI_CAP)]
        cap: u64,
        /// Report the vector of least max-entry instead.
        #[arg(long)]
        min: bool,
    },
    /// Maximal (n0, n1) pairs on the t-th power, as CSV.
    Region {
        graph: PathBuf,
        #[arg(short, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_XI_CAP)]
        cap: u64,
    },
    /// Builds an encoder for the t-th power.
    Synth {
        graph: PathBuf,
        #[arg(short, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        n0: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Stether)]
        method: MethodArg,
        /// Comma-separated vector; found automatically when absent.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<u64>>,
        #[arg(long, default_value_t = DEFAULT_XI_CAP)]
        cap: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Checks an encoder against the t-th power of a graph.
    Verify {
        encoder: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_ANTICIPATION_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
    },
    /// Reads blocks (integers) or tags (class/slot) from stdin and writes
    /// the codeword sequence.
    Encode {
        encoder: PathBuf,
        #[arg(long)]
        start: Option<String>,
        #[arg(long, value_enum, default_value_t = PolicyArg::AsTagged)]
        policy: PolicyArg,
        /// Also print the running digital sum after each codeword.
        #[arg(long)]
        trace: bool,
    },
    /// Reads codewords from stdin and writes blocks, or tags when the class
    /// sizes are not a power of two. Provisional values end in `?`.
    Decode {
        encoder: PathBuf,
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        end: Option<String>,
        /// Always print tags.
        #[arg(long)]
        tags: bool,
    },
    /// Graphviz rendering of a graph or encoder file.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        encoder: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Det,
    Split,
    Stether,
    Punctured,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Det => Method::Det,
            MethodArg::Split => Method::Split,
            MethodArg::Stether => Method::Stether,
            MethodArg::Punctured => Method::Punctured,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    AsTagged,
    FixedParity,
    RdsMin,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::AsTagged => Policy::AsTagged,
            PolicyArg::FixedParity => Policy::FixedParity,
            PolicyArg::RdsMin => Policy::RdsMin,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err
                .chain()
                .filter_map(|e| e.downcast_ref::<Error>())
                .any(|e| matches!(e, Error::Parse { .. } | Error::Validation(_)))
                || err.chain().any(|e| e.downcast_ref::<io::Error>().is_some());
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<LabeledGraph> {
    parse_graph_file(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_encoder(path: &Path) -> anyhow::Result<TaggedEncoder> {
    parse_encoder_file(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn state_arg(g: &LabeledGraph, name: Option<&str>) -> anyhow::Result<usize> {
    match name {
        None => Ok(0),
        Some(n) => g
            .state_index(n)
            .ok_or_else(|| Error::InvalidState(n.to_string()).into()),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    match cmd {
        Command::Info { graph, t, tol } => {
            let g = load_graph(&graph)?.power(t);
            let p = g.adjacency_pair();
            println!("states: {}", g.num_states());
            println!("edges: {}", g.num_edges());
            println!("symbols: {}", g.alphabet().len());
            println!("deterministic: {}", is_deterministic(&g));
            println!("components: {}", irreducible_components(&g).len());
            match period(&g) {
                Ok(p) => println!("period: {p}"),
                Err(_) => println!("period: reducible"),
            }
            println!("memory: {:?}", memory(&g, 64));
            println!("capacity: {:.9}", capacity(&g, tol));
            println!("lambda0: {:.9}", perron(&p.a0, tol));
            println!("lambda1: {:.9}", perron(&p.a1, tol));
        }
        Command::Power { graph, t, output } => {
            let g = load_graph(&graph)?.power(t);
            emit(output.as_deref(), &serialize_graph(&g))?;
        }
        Command::Franaszek {
            graph,
            t,
            n0,
            n1,
            cap,
            min,
        } => {
            let p = load_graph(&graph)?.power(t).adjacency_pair();
            let x = if min {
                match min_infnorm_ae(&p.a0, &p.a1, n0, n1, cap) {
                    Ok((_, x)) => x.entries().to_vec(),
                    Err(Error::NotFoundWithin(_)) => vec![0; p.a0.dim()],
                    Err(e) => return Err(e.into()),
                }
            } else {
                franaszek_joint(&p.a0, &p.a1, n0, n1, &vec![cap; p.a0.dim()])?
            };
            if x.iter().all(|&v| v == 0) {
                println!("none ≤ {cap}");
                return Ok(ExitCode::from(1));
            }
            println!("{}", join(&x));
        }
        Command::Region { graph, t, cap } => {
            let g = load_graph(&graph)?;
            let mut out = String::from("n0,n1,witness\n");
            for pt in rate_region(&g, t, cap) {
                out.push_str(&format!("{},{},{}\n", pt.n0, pt.n1, join(pt.witness.entries())));
            }
            let cr = coding_ratio(&g, t, cap);
            eprintln!("n_max: {} rho: {}", cr.n_max, cr.rho);
            emit(None, &out)?;
        }
        Command::Synth {
            graph,
            t,
            n0,
            n1,
            method,
            x,
            cap,
            output,
        } => {
            let g = load_graph(&graph)?.power(t);
            let e = synthesize(&g, n0, n1, method.into(), x.as_deref(), cap)?;
            emit(output.as_deref(), &serialize_encoder(&e))?;
        }
        Command::Verify {
            encoder,
            graph,
            t,
            cap,
            m_max,
        } => {
            let e = load_encoder(&encoder)?;
            let g = load_graph(&graph)?.power(t);
            let opts = VerifyOptions {
                anticipation_cap: cap,
                m_max,
                a_max: cap,
            };
            let r = check_encoder(&e, &g, e.n0, e.n1, opts);
            print!("{r}");
            if !r.is_encoder() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Encode {
            encoder,
            start,
            policy,
            trace,
        } => {
            let e = load_encoder(&encoder)?;
            let start = state_arg(&e.graph, start.as_deref())?;
            let mut input = String::new();
            io::stdin().read_to_string(&mut input)?;
            let tokens: Vec<&str> = input.split_whitespace().collect();
            let out = if tokens.iter().any(|s| s.contains('/')) {
                let tags = tokens.iter().map(|s| s.parse::<Tag>()).collect::<Result<Vec<_>, _>>()?;
                encode_tags(&e, &tags, start, policy.into())?
            } else {
                let Some(p) = block_width(&e) else {
                    bail!("class sizes {} and {} need class/slot tags as input", e.n0, e.n1);
                };
                let bt = assign_block_tags(&e, p)?;
                let blocks = tokens
                    .iter()
                    .map(|s| s.parse::<u64>().with_context(|| format!("bad block {s:?}")))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                encode_stream(&e, &bt, &blocks, start, policy.into())?
            };
            let words: Vec<String> = out.word.iter().map(|&a| e.graph.symbol(a).to_string()).collect();
            println!("{}", words.join(" "));
            if trace {
                println!("{}", join(&out.rds_trace));
            }
            eprintln!("end: {}", e.graph.state_name(out.end_state));
        }
        Command::Decode {
            encoder,
            start,
            end,
            tags,
        } => {
            let e = load_encoder(&encoder)?;
            let start = state_arg(&e.graph, start.as_deref())?;
            let end = end.map(|n| state_arg(&e.graph, Some(&n))).transpose()?;
            let mut input = String::new();
            io::stdin().read_to_string(&mut input)?;
            let word = input
                .split_whitespace()
                .map(|s| {
                    e.graph
                        .symbol_id(s)
                        .ok_or_else(|| anyhow::anyhow!("symbol {s:?} not in the alphabet"))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let mark = |s: String, prov: bool| if prov { s + "?" } else { s };
            let values: Vec<String> = match block_width(&e).filter(|_| !tags) {
                Some(p) => {
                    let bt = assign_block_tags(&e, p)?;
                    let (blocks, prov) = decode_blocks(&e, &bt, &word, start, end)?;
                    blocks.iter().zip(prov).map(|(b, p)| mark(b.to_string(), p)).collect()
                }
                None => {
                    let d = decode_stream(&e, &word, start, end)?;
                    d.tags
                        .iter()
                        .zip(d.provisional)
                        .map(|(t, p)| mark(t.to_string(), p))
                        .collect()
                }
            };
            println!("{}", values.join(" "));
        }
        Command::ExportDot { file, encoder, output } => {
            let dot = if encoder {
                let e = load_encoder(&file)?;
                to_dot(&e.graph, Some(&e.tags))
            } else {
                to_dot(&load_graph(&file)?, None)
            };
            emit(output.as_deref(), &dot)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
