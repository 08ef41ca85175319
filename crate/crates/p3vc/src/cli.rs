//! Command-line front end: parse DIMACS instances, solve, kernelize,
//! verify covers, generate random instances, and benchmark.
//!
//! Results go to standard output as single-line JSON (CSV for `bench`,
//! DIMACS for `gen`). Exit codes: 0 yes/success, 1 no-instance or invalid
//! cover, 2 usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::graph::{Graph, VertexSet};
use crate::kernel::{kernelize, KernelMode, KernelOutcome};
use crate::oracle::min_p3vc;
use crate::recurrence::{branching_factor, DEFAULT_TOL, STEP_VECTORS};
use crate::solver::{solve_with_options, verify_cover, SolveOptions};

#[derive(Parser)]
#[command(name = "p3vc", version, about = "3-path vertex cover toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether k vertices can meet every 3-vertex path
    Solve(SolveArgs),
    /// Shrink an instance to an equivalent kernel
    Kernelize(KernelizeArgs),
    /// Check a cover file, or report the exact optimum on small graphs
    Verify(VerifyArgs),
    /// Emit a random instance in DIMACS format
    Gen(GenArgs),
    /// Sweep k over random instances and report search-tree sizes as CSV
    Bench(BenchArgs),
    /// Print the branching-factor table of the solver's steps
    Factors,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(short)]
    k: usize,
    /// include node counts per rule and the maximum depth
    #[arg(long)]
    stats: bool,
    /// cover the degree-2 side in the bipartite step (study mode; misses
    /// optimal covers by design)
    #[arg(long = "paper-literal-step9")]
    paper_literal_step9: bool,
    file: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Simple,
    Crucial,
}

#[derive(Args)]
struct KernelizeArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(short)]
    k: usize,
    /// write the kernel graph to this file in DIMACS format
    #[arg(long)]
    out: Option<PathBuf>,
    file: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// file with whitespace-separated 1-indexed cover vertices
    #[arg(long, conflicts_with = "oracle")]
    cover: Option<PathBuf>,
    /// compute the exact optimum by brute force (small n only)
    #[arg(long)]
    oracle: bool,
    file: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    /// only "gnp" is available
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    kmax: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 24)]
    n: usize,
    #[arg(long, default_value_t = 0.15)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout();
    run_to(args, &mut out)
}

/// Testable entry point: parse, dispatch, write results to `out`, and
/// return the process exit code.
pub fn run_to<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(msg) if msg == PIPE_CLOSED => 0,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Sentinel for a closed output stream (piping into `head` and the like):
/// the run ends quietly instead of reporting an error.
const PIPE_CLOSED: &str = "\u{0}pipe-closed";

fn write_err(e: std::io::Error) -> String {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        PIPE_CLOSED.into()
    } else {
        e.to_string()
    }
}

fn dispatch<W: Write>(cmd: Cmd, out: &mut W) -> Result<i32, String> {
    match cmd {
        Cmd::Solve(a) => cmd_solve(a, out),
        Cmd::Kernelize(a) => cmd_kernelize(a, out),
        Cmd::Verify(a) => cmd_verify(a, out),
        Cmd::Gen(a) => cmd_gen(a, out),
        Cmd::Bench(a) => cmd_bench(a, out),
        Cmd::Factors => cmd_factors(out),
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Graph::parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit<W: Write>(out: &mut W, doc: &serde_json::Value) -> Result<(), String> {
    writeln!(out, "{doc}").map_err(write_err)
}

fn one_indexed(cover: &VertexSet) -> Vec<usize> {
    cover.iter().map(|v| v + 1).collect()
}

fn cmd_solve<W: Write>(a: SolveArgs, out: &mut W) -> Result<i32, String> {
    let g = read_graph(&a.file)?;
    let opts = SolveOptions { paper_literal_step9: a.paper_literal_step9 };
    let res = solve_with_options(&g, a.k, &opts);
    let mut doc = json!({
        "answer": if res.answer { "yes" } else { "no" },
        "k": a.k,
    });
    if let Some(cover) = &res.cover {
        doc["cover"] = json!(one_indexed(cover));
    }
    if a.stats {
        doc["stats"] = json!({
            "nodes": res.stats.nodes_total,
            "per_rule": res.stats.nodes_per_rule,
            "max_depth": res.stats.max_depth,
        });
    }
    emit(out, &doc)?;
    Ok(if res.answer { 0 } else { 1 })
}

fn cmd_kernelize<W: Write>(a: KernelizeArgs, out: &mut W) -> Result<i32, String> {
    let g = read_graph(&a.file)?;
    let mode = match a.mode {
        ModeArg::Simple => KernelMode::Simple,
        ModeArg::Crucial => KernelMode::Crucial,
    };
    let r = kernelize(&g, a.k, mode);
    let mode_name = match a.mode {
        ModeArg::Simple => "simple",
        ModeArg::Crucial => "crucial",
    };
    let mut doc = json!({ "k": a.k });
    let code = match &r.outcome {
        KernelOutcome::HaltNo => {
            doc["answer"] = json!("no");
            1
        }
        KernelOutcome::Reduced { graph, k } => {
            doc["kernel"] = json!({
                "n": graph.n(),
                "k": k,
                "mode": mode_name,
                "bound": r.size_bound_claim,
            });
            if graph.find_p3().is_none() {
                // nothing left to cover: the forced vertices already decide it
                doc["answer"] = json!("yes");
                doc["cover"] = json!(one_indexed(&r.forced_cover));
            }
            if let Some(path) = &a.out {
                fs::write(path, graph.to_dimacs())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            0
        }
    };
    emit(out, &doc)?;
    Ok(code)
}

fn cmd_verify<W: Write>(a: VerifyArgs, out: &mut W) -> Result<i32, String> {
    let g = read_graph(&a.file)?;
    match (&a.cover, a.oracle) {
        (Some(cover_path), false) => {
            let text = fs::read_to_string(cover_path)
                .map_err(|e| format!("{}: {e}", cover_path.display()))?;
            let mut cover = VertexSet::new();
            for tok in text.split_whitespace() {
                let v: usize =
                    tok.parse().map_err(|_| format!("bad cover entry {tok:?}"))?;
                if v == 0 || v > g.n() {
                    return Err(format!("cover vertex {v} out of range 1..={}", g.n()));
                }
                cover.insert(v - 1);
            }
            let ok = verify_cover(&g, &cover);
            let mut doc = json!({
                "answer": if ok { "yes" } else { "no" },
                "k": cover.len(),
            });
            if ok {
                doc["cover"] = json!(one_indexed(&cover));
            }
            emit(out, &doc)?;
            Ok(if ok { 0 } else { 1 })
        }
        (None, true) => {
            let (size, witness) = min_p3vc(&g).map_err(|e| e.to_string())?;
            let doc = json!({
                "answer": "yes",
                "k": size,
                "cover": one_indexed(&witness),
            });
            emit(out, &doc)?;
            Ok(0)
        }
        _ => Err("pass exactly one of --cover FILE or --oracle".into()),
    }
}

fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated pairs are simple")
}

fn cmd_gen<W: Write>(a: GenArgs, out: &mut W) -> Result<i32, String> {
    if a.model != "gnp" {
        return Err(format!("unknown model {:?}; available: gnp", a.model));
    }
    if !(0.0..=1.0).contains(&a.p) {
        return Err(format!("edge probability {} outside [0, 1]", a.p));
    }
    let g = gen_gnp(a.n, a.p, a.seed);
    write!(out, "{}", g.to_dimacs()).map_err(write_err)?;
    Ok(0)
}

fn cmd_bench<W: Write>(a: BenchArgs, out: &mut W) -> Result<i32, String> {
    if !(0.0..=1.0).contains(&a.p) {
        return Err(format!("edge probability {} outside [0, 1]", a.p));
    }
    writeln!(out, "seed,n,p,k,answer,nodes,kernel_n,ratio_kernel_n_over_k")
        .map_err(write_err)?;
    for trial in 0..a.trials {
        let seed = a.seed + trial as u64;
        let g = gen_gnp(a.n, a.p, seed);
        for k in 0..=a.kmax {
            let res = solve_with_options(&g, k, &SolveOptions::default());
            let kr = kernelize(&g, k, KernelMode::Crucial);
            let (kernel_n, ratio) = match &kr.outcome {
                KernelOutcome::Reduced { graph, .. } => {
                    let ratio = if k > 0 {
                        format!("{:.3}", graph.n() as f64 / k as f64)
                    } else {
                        String::new()
                    };
                    (graph.n().to_string(), ratio)
                }
                KernelOutcome::HaltNo => (String::new(), String::new()),
            };
            writeln!(
                out,
                "{seed},{},{},{k},{},{},{kernel_n},{ratio}",
                a.n,
                a.p,
                if res.answer { "yes" } else { "no" },
                res.stats.nodes_total,
            )
            .map_err(write_err)?;
        }
    }
    Ok(0)
}

fn cmd_factors<W: Write>(out: &mut W) -> Result<i32, String> {
    let mut steps = Vec::new();
    for (name, decrements) in STEP_VECTORS {
        let f = branching_factor(decrements, DEFAULT_TOL).map_err(|e| e.to_string())?;
        steps.push(json!({
            "step": name,
            "decrements": decrements,
            // quoted upward at the fourth decimal: a valid growth bound
            "factor": (f * 1e4).ceil() / 1e4,
        }));
    }
    let worst = steps
        .iter()
        .map(|s| s["factor"].as_f64().unwrap())
        .fold(0.0f64, f64::max);
    emit(out, &json!({ "steps": steps, "worst_case": worst }))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_vec(args: &[&str]) -> (i32, String) {
        let mut buf: Vec<u8> = Vec::new();
        let code = run_to(args.iter().copied(), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    fn write_temp(name: &str, contents: &str) -> PathBuf {
        let mut path = std::env::temp_dir();
        path.push(format!("p3vc-cli-test-{}-{name}", std::process::id()));
        fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn solve_exit_codes_on_a_path() {
        let file = write_temp("p3.dimacs", "p edge 3 2\ne 1 2\ne 2 3\n");
        let f = file.to_str().unwrap();
        let (code, output) = run_vec(&["p3vc", "solve", "-k", "1", f]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&output).unwrap();
        assert_eq!(doc["answer"], "yes");
        assert_eq!(doc["cover"].as_array().unwrap().len(), 1);
        let (code, output) = run_vec(&["p3vc", "solve", "-k", "0", f]);
        assert_eq!(code, 1);
        let doc: serde_json::Value = serde_json::from_str(&output).unwrap();
        assert_eq!(doc["answer"], "no");
        assert!(doc.get("cover").is_none());
    }

    #[test]
    fn usage_and_parse_errors_exit_2() {
        let (code, _) = run_vec(&["p3vc", "solve", "--bogus-flag", "x"]);
        assert_eq!(code, 2);
        let (code, _) = run_vec(&["p3vc", "solve", "-k", "1", "/nonexistent/file"]);
        assert_eq!(code, 2);
        let bad = write_temp("bad.dimacs", "p edge two 1\n");
        let (code, _) = run_vec(&["p3vc", "solve", "-k", "1", bad.to_str().unwrap()]);
        assert_eq!(code, 2);
        let (code, _) = run_vec(&["p3vc", "verify", bad.to_str().unwrap()]);
        assert_eq!(code, 2); // neither --cover nor --oracle
    }

    #[test]
    fn gen_is_deterministic_and_loads_back() {
        let (c1, out1) = run_vec(&["p3vc", "gen", "--model", "gnp", "--n", "10", "--p", "0.3", "--seed", "42"]);
        let (c2, out2) = run_vec(&["p3vc", "gen", "--model", "gnp", "--n", "10", "--p", "0.3", "--seed", "42"]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(out1, out2);
        let g = Graph::parse_dimacs(&out1).unwrap();
        assert_eq!(g.n(), 10);
        let (c3, out3) = run_vec(&["p3vc", "gen", "--model", "gnp", "--n", "10", "--p", "0.3", "--seed", "43"]);
        assert_eq!(c3, 0);
        assert_ne!(out1, out3, "different seeds should differ on n=10, p=0.3");
        let (code, _) = run_vec(&["p3vc", "gen", "--model", "gnp", "--n", "5", "--p", "1.5", "--seed", "1"]);
        assert_eq!(code, 2);
        let (code, _) = run_vec(&["p3vc", "gen", "--model", "tree", "--n", "5", "--p", "0.5", "--seed", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn verify_accepts_solve_certificates() {
        let (_, instance) =
            run_vec(&["p3vc", "gen", "--model", "gnp", "--n", "12", "--p", "0.25", "--seed", "7"]);
        let file = write_temp("verify.dimacs", &instance);
        let f = file.to_str().unwrap();
        let mut k = 0;
        let cover = loop {
            let (code, output) = run_vec(&["p3vc", "solve", "-k", &k.to_string(), f]);
            if code == 0 {
                let doc: serde_json::Value = serde_json::from_str(&output).unwrap();
                break doc["cover"].clone();
            }
            k += 1;
            assert!(k <= 12);
        };
        let listing = cover
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let cover_file = write_temp("cover.txt", &listing);
        let (code, output) =
            run_vec(&["p3vc", "verify", "--cover", cover_file.to_str().unwrap(), f]);
        assert_eq!(code, 0, "{output}");
        // an empty cover on a graph with a 3-path is rejected with exit 1
        let empty = write_temp("empty-cover.txt", "");
        let p3 = write_temp("v-p3.dimacs", "p edge 3 2\ne 1 2\ne 2 3\n");
        let (code, _) =
            run_vec(&["p3vc", "verify", "--cover", empty.to_str().unwrap(), p3.to_str().unwrap()]);
        assert_eq!(code, 1);
    }

    #[test]
    fn verify_oracle_reports_the_minimum() {
        let p3 = write_temp("o-p3.dimacs", "p edge 3 2\ne 1 2\ne 2 3\n");
        let (code, output) = run_vec(&["p3vc", "verify", "--oracle", p3.to_str().unwrap()]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&output).unwrap();
        assert_eq!(doc["k"], 1);
        // the size cap is a usage error, not a wrong answer
        let mut big = String::from("p edge 25 24\n");
        for i in 1..25 {
            big.push_str(&format!("e {} {}\n", i, i + 1));
        }
        let big_file = write_temp("big.dimacs", &big);
        let (code, _) = run_vec(&["p3vc", "verify", "--oracle", big_file.to_str().unwrap()]);
        assert_eq!(code, 2);
    }

    #[test]
    fn kernelize_emits_kernel_summary_and_file() {
        let (_, instance) =
            run_vec(&["p3vc", "gen", "--model", "gnp", "--n", "18", "--p", "0.12", "--seed", "3"]);
        let file = write_temp("kern.dimacs", &instance);
        let out_path = write_temp("kern-out.dimacs", "");
        for mode in ["simple", "crucial"] {
            let (code, output) = run_vec(&[
                "p3vc",
                "kernelize",
                "--mode",
                mode,
                "-k",
                "6",
                "--out",
                out_path.to_str().unwrap(),
                file.to_str().unwrap(),
            ]);
            let doc: serde_json::Value = serde_json::from_str(&output).unwrap();
            if code == 0 {
                let kernel = &doc["kernel"];
                assert_eq!(kernel["mode"], mode);
                let written = fs::read_to_string(&out_path).unwrap();
                let kg = Graph::parse_dimacs(&written).unwrap();
                assert_eq!(kg.n(), kernel["n"].as_u64().unwrap() as usize);
            } else {
                assert_eq!(code, 1);
                assert_eq!(doc["answer"], "no");
            }
        }
    }

    #[test]
    fn factors_table_contains_the_worst_case() {
        let (code, output) = run_vec(&["p3vc", "factors"]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&output).unwrap();
        assert_eq!(doc["worst_case"], 1.7485);
        assert_eq!(doc["steps"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn bench_rows_are_well_formed() {
        let (code, output) = run_vec(&[
            "p3vc", "bench", "--kmax", "4", "--trials", "2", "--n", "10", "--p", "0.2", "--seed", "5",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = output.trim_end().lines().collect();
        assert_eq!(lines[0], "seed,n,p,k,answer,nodes,kernel_n,ratio_kernel_n_over_k");
        assert_eq!(lines.len(), 1 + 2 * 5);
        for row in &lines[1..] {
            let cells: Vec<&str> = row.split(',').collect();
            assert_eq!(cells.len(), 8);
            assert!(cells[4] == "yes" || cells[4] == "no");
            cells[5].parse::<u64>().unwrap();
        }
    }
}
