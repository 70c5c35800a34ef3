//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative answer (not OAT, invalid sequence),
//! 2 usage, input or format error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::buildtree::BuildTree;
use crate::colouring::{Colouring, Palette};
use crate::generators::{self, Family, ThirdOpCase};
use crate::graph::Graph;
use crate::io::{parse_graph, write_graph};
use crate::oracle;
use crate::recognition::{recognize, Outcome};
use crate::recolouring::{find_path, verify_sequence, RecolouringSequence};

pub const FORMAT_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "oat", version, about = "OAT graph recognition and colouring reconfiguration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide membership and print a build-tree certificate.
    Recognize {
        graph: PathBuf,
        #[arg(long)]
        tree_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print a recolouring sequence between two (k+1)-colourings.
    Recolor {
        graph: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Defaults to the chromatic number.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Brute-force statistics of the reconfiguration graph on k colours.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "frozen")]
        stats: bool,
        #[arg(long)]
        frozen: bool,
    },
    /// Generate a graph in the edge-list format.
    Gen {
        family: GenFamily,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the canonical colouring of an OAT graph.
    Canonical { graph: PathBuf },
    /// Check a recolouring sequence against a graph.
    Verify { graph: PathBuf, sequence: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenFamily {
    Path,
    Cycle,
    Complete,
    /// complete bipartite minus a perfect matching, parameter: side size
    Kabmm,
    /// parameter: fixture name
    Fixture,
    /// parameter: n (uses --seed)
    RandomOat,
    /// parameters: |V1| and `pendant` or `anti`
    P4sparse,
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_ERROR,
            msg: msg.into(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI with explicit argument list and output streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Recognize { graph, tree_out, json } => cmd_recognize(&graph, tree_out.as_deref(), json, out),
        Command::Recolor { graph, from, to, k } => cmd_recolor(&graph, &from, &to, k, out, err),
        Command::Oracle { graph, k, frozen, .. } => cmd_oracle(&graph, k, frozen, out),
        Command::Gen { family, params, seed } => cmd_gen(family, &params, seed, out),
        Command::Canonical { graph } => cmd_canonical(&graph, out),
        Command::Verify { graph, sequence } => cmd_verify(&graph, &sequence, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_colouring(path: &Path) -> Result<Colouring, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}").map_err(|e| Failure::usage(e.to_string()))
}

fn with_version(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("format_version".into(), json!(FORMAT_VERSION));
    }
    v
}

/// The stored form of a certificate: `{"format_version":1,"tree":...}`.
pub fn tree_document(t: &BuildTree) -> Value {
    json!({ "format_version": FORMAT_VERSION, "tree": t.to_json_value() })
}

fn cmd_recognize(path: &Path, tree_out: Option<&Path>, as_json: bool, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(path)?;
    match recognize(&g) {
        Outcome::Oat(t) => {
            let doc = tree_document(&t);
            if let Some(p) = tree_out {
                fs::write(p, format!("{doc}\n")).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            }
            if as_json {
                let (chi, omega) = t.chi_omega();
                emit(
                    out,
                    &json!({
                        "format_version": FORMAT_VERSION,
                        "oat": true,
                        "n": g.n(),
                        "chi": chi,
                        "omega": omega,
                        "tree": t.to_json_value(),
                    }),
                )?;
            } else {
                emit(out, &doc)?;
            }
            Ok(EXIT_OK)
        }
        Outcome::Stuck { graph, labels } => {
            if as_json {
                emit(
                    out,
                    &json!({
                        "format_version": FORMAT_VERSION,
                        "oat": false,
                        "stuck": { "labels": labels, "graph": write_graph(&graph) },
                    }),
                )?;
            } else {
                let _ = writeln!(out, "# not OAT; irreducible subgraph on vertices {labels:?}");
                let _ = write!(out, "{}", write_graph(&graph));
            }
            Ok(EXIT_NO)
        }
    }
}

fn cmd_recolor(
    path: &Path,
    from: &Path,
    to: &Path,
    k: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let g = load_graph(path)?;
    let alpha = load_colouring(from)?;
    let beta = load_colouring(to)?;
    let Outcome::Oat(t) = recognize(&g) else {
        return Err(Failure {
            code: EXIT_NO,
            msg: "graph is not OAT".into(),
        });
    };
    let k = k.unwrap_or(t.chi());
    if k < t.chi() {
        return Err(Failure::usage(format!(
            "k = {k} is below the chromatic number {}",
            t.chi()
        )));
    }
    let palette = Palette::first(k + 1);
    let rebase = |c: &Colouring, name: &str| -> Result<Colouring, Failure> {
        let c = c
            .with_palette(palette.clone())
            .map_err(|e| Failure::usage(format!("{name} colouring: {e}")))?;
        c.check_proper(&g)
            .map_err(|e| Failure::usage(format!("{name} colouring: {e}")))?;
        Ok(c)
    };
    let alpha = rebase(&alpha, "--from")?;
    let beta = rebase(&beta, "--to")?;
    let seq = find_path(&t, &alpha, &beta, &palette).map_err(|e| Failure::usage(e.to_string()))?;
    let n = g.n();
    let _ = writeln!(
        err,
        "length {} (budget 4n^2 = {}), max recolourings per vertex {}",
        seq.len(),
        4 * n * n,
        seq.max_per_vertex()
    );
    emit(
        out,
        &with_version(serde_json::to_value(&seq).expect("sequence serializes")),
    )?;
    Ok(EXIT_OK)
}

fn cmd_oracle(path: &Path, k: usize, frozen: bool, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(path)?;
    if k == 0 {
        return Err(Failure::usage("k must be at least 1"));
    }
    let r = oracle::build_reconfig(&g, &Palette::first(k)).map_err(|e| Failure::usage(e.to_string()))?;
    let stats = oracle::reconfig_stats(&r);
    let mut v = with_version(stats.to_json_value());
    if frozen {
        v["frozen"] = json!(stats.frozen);
    }
    emit(out, &v)?;
    Ok(EXIT_OK)
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T, Failure> {
    params
        .get(i)
        .ok_or_else(|| Failure::usage(format!("missing parameter: {what}")))?
        .parse()
        .map_err(|_| Failure::usage(format!("bad parameter for {what}: {:?}", params[i])))
}

fn cmd_gen(family: GenFamily, params: &[String], seed: u64, out: &mut dyn Write) -> CmdResult {
    let gen_err = |e: crate::error::GenError| Failure::usage(e.to_string());
    let g = match family {
        GenFamily::Path => generators::classic(Family::Path(param(params, 0, "n")?)).map_err(gen_err)?,
        GenFamily::Cycle => generators::classic(Family::Cycle(param(params, 0, "n")?)).map_err(gen_err)?,
        GenFamily::Complete => generators::classic(Family::Complete(param(params, 0, "n")?)).map_err(gen_err)?,
        GenFamily::Kabmm => {
            generators::classic(Family::CompleteBipartiteMinusMatching(param(params, 0, "a")?)).map_err(gen_err)?
        }
        GenFamily::Fixture => {
            let name: String = param(params, 0, "name")?;
            generators::fixture(&name).map_err(gen_err)?.graph
        }
        GenFamily::RandomOat => {
            let t = generators::random_oat(param(params, 0, "n")?, seed).map_err(gen_err)?;
            t.replay().map_err(|e| Failure::usage(e.to_string()))?
        }
        GenFamily::P4sparse => {
            let size = param(params, 0, "|V1|")?;
            let case = match params.get(1).map(String::as_str) {
                Some("pendant") => ThirdOpCase::Pendant,
                Some("anti") => ThirdOpCase::Anti,
                _ => return Err(Failure::usage("second parameter must be `pendant` or `anti`")),
            };
            generators::p4_sparse_third_op(size, None, case).map_err(gen_err)?
        }
    };
    write!(out, "{}", write_graph(&g)).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(EXIT_OK)
}

fn cmd_canonical(path: &Path, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(path)?;
    let Outcome::Oat(t) = recognize(&g) else {
        return Err(Failure {
            code: EXIT_NO,
            msg: "graph is not OAT".into(),
        });
    };
    let c = t
        .canonical_colouring(&Palette::first(t.chi()))
        .map_err(|e| Failure::usage(e.to_string()))?;
    emit(
        out,
        &with_version(serde_json::to_value(&c).expect("colouring serializes")),
    )?;
    Ok(EXIT_OK)
}

fn cmd_verify(path: &Path, seq_path: &Path, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(path)?;
    let seq: RecolouringSequence =
        serde_json::from_str(&read(seq_path)?).map_err(|e| Failure::usage(format!("{}: {e}", seq_path.display())))?;
    let report = verify_sequence(&g, &seq);
    emit(
        out,
        &with_version(serde_json::to_value(&report).expect("report serializes")),
    )?;
    Ok(if report.valid { EXIT_OK } else { EXIT_NO })
}
