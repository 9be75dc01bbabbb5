//! `sturm`: eigenvalues of Sturm–Liouville and Schrödinger problems.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod bench;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use sturm_core::{solve_singular, Mesh, Method, Problem64, Solver};

use config::{build_problem, parse_method, read_reference, Format, IndexRange, MeshSpec, ProblemFlags};
use report::{sci, sig17, Table};

#[derive(Parser)]
#[command(name = "sturm", version, about = "Sturm-Liouville eigenvalues by coefficient approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute eigenvalues for an index range.
    Solve(RunArgs),
    /// Rerun a published benchmark table and mark each row PASS/FAIL.
    Bench {
        /// ce128 | ws64 | ce-accuracy | ws-accuracy | ws-adaptive | ws-singular
        table: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dump a mesh with its per-interval coefficient data.
    Mesh(RunArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// csv | tsv | pretty
    #[arg(long, default_value = "pretty")]
    format: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Builtin problem: coffey-evans, woods-saxon, woods-saxon-singular, constant, harmonic.
    #[arg(long)]
    problem: Option<String>,
    /// Builtin parameter NAME=VALUE, repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    /// Potential q(x) as an expression in x.
    #[arg(long)]
    potential: Option<String>,
    /// Interval A:B.
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
    /// dirichlet | neumann | A1,A2,B1,B2
    #[arg(long, allow_hyphen_values = true)]
    bc: Option<String>,
    /// pruess2 | neumann4 | neumann8 | magnus4 | magnus8
    #[arg(long, default_value = "neumann8")]
    method: String,
    /// uniform:N | adaptive:TOL
    #[arg(long, default_value = "uniform:128")]
    mesh: String,
    /// Index range LO..HI.
    #[arg(long, default_value = "0..0")]
    k: String,
    /// Relative eigenvalue tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Mesh point used for matching.
    #[arg(long)]
    match_index: Option<usize>,
    /// Truncation point for a singular left endpoint; needs an adaptive mesh.
    #[arg(long)]
    epsilon: Option<f64>,
    /// File of `k value` lines; adds reference and error columns.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

/// Configuration error (exit 1) vs numerical failure on some indices (exit 2).
enum Failure {
    Config(anyhow::Error),
    Partial,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Config(e)
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

struct Prepared {
    problem: Problem64,
    method: Method,
    mesh_spec: MeshSpec,
    range: IndexRange,
    format: Format,
}

fn prepare(args: &RunArgs) -> Result<Prepared> {
    let flags = ProblemFlags {
        problem: args.problem.clone(),
        params: args.params.clone(),
        potential: args.potential.clone(),
        interval: args.interval.clone(),
        bc: args.bc.clone(),
    };
    if !(args.tol > 0.0) {
        bail!("--tol must be positive");
    }
    Ok(Prepared {
        problem: build_problem(&flags)?,
        method: parse_method(&args.method)?,
        mesh_spec: args.mesh.parse()?,
        range: args.k.parse()?,
        format: args.out.format.parse()?,
    })
}

fn build_mesh(p: &Prepared, match_index: Option<usize>) -> Result<Mesh<f64>> {
    let mesh = match p.mesh_spec {
        MeshSpec::Uniform(n) => Mesh::uniform(&p.problem, n, p.method)?,
        MeshSpec::Adaptive(tol) => Mesh::adaptive(&p.problem, tol, p.method)?,
    };
    Ok(match match_index {
        Some(m) => mesh.with_match_index(m)?,
        None => mesh,
    })
}

fn cmd_solve(args: &RunArgs) -> Result<(), Failure> {
    let p = prepare(args)?;
    let reference = args.reference.as_deref().map(read_reference).transpose()?;
    let start = Instant::now();
    let mut header = vec!["k", "lambda", "residual", "iterations", "fevals"];
    if args.epsilon.is_some() {
        header.push("nbisec");
    }
    if reference.is_some() {
        header.extend(["reference", "error"]);
    }
    let mut table = Table::new(&header);
    let mut failures = Vec::new();
    let mut push = |k: usize, lambda: f64, mut cells: Vec<String>| {
        if let Some(refs) = &reference {
            match refs.get(&k) {
                Some(v) => cells.extend([sig17(*v), sci((lambda - v).abs())]),
                None => cells.extend(["-".into(), "-".into()]),
            }
        }
        table.push(cells);
    };

    let nint;
    if let Some(eps) = args.epsilon {
        let MeshSpec::Adaptive(tol) = p.mesh_spec else {
            return Err(anyhow::anyhow!("--epsilon needs --mesh adaptive:TOL").into());
        };
        let mut last = 0;
        for k in p.range.lo..=p.range.hi {
            match solve_singular(&p.problem, k, eps, tol, p.method) {
                Ok(rep) => {
                    last = rep.nint;
                    let r = &rep.result;
                    let cells = vec![
                        k.to_string(),
                        sig17(r.lambda),
                        sci(r.residual),
                        r.iterations.to_string(),
                        r.fevals.to_string(),
                        rep.nbisec.to_string(),
                    ];
                    push(k, r.lambda, cells);
                }
                Err(e) => failures.push(format!("k = {k}: {e}")),
            }
        }
        nint = last;
    } else {
        let mesh = build_mesh(&p, args.match_index)?;
        nint = mesh.len();
        let solver = Solver::new(&p.problem, &mesh);
        let mut below = None;
        for k in p.range.lo..=p.range.hi {
            match solver.eigenvalue_seeded(k, args.tol, below) {
                Ok(r) => {
                    below = Some(r.lambda);
                    let cells = vec![
                        k.to_string(),
                        sig17(r.lambda),
                        sci(r.residual),
                        r.iterations.to_string(),
                        r.fevals.to_string(),
                    ];
                    push(k, r.lambda, cells);
                }
                Err(e) => failures.push(format!("k = {k}: {e}")),
            }
        }
    }
    emit(&args.out, &table.render(p.format))?;
    eprintln!(
        "# {} {} {} nint {nint} total fevals {} time {:.3} s",
        p.problem.name(),
        p.method,
        p.mesh_spec,
        p.problem.evals(),
        start.elapsed().as_secs_f64()
    );
    if failures.is_empty() {
        Ok(())
    } else {
        for f in &failures {
            eprintln!("error: {f}");
        }
        Err(Failure::Partial)
    }
}

fn cmd_mesh(args: &RunArgs) -> Result<(), Failure> {
    let p = prepare(args)?;
    let mesh = build_mesh(&p, args.match_index)?;
    let mut text = match p.format {
        Format::Tsv | Format::Pretty => mesh.dump(),
        Format::Csv => mesh.dump().replace('\t', ","),
    };
    let hs: Vec<f64> = mesh.intervals.iter().map(|iv| iv.h).collect();
    let (imin, hmin) = hs.iter().enumerate().fold((0, f64::INFINITY), |b, (i, h)| if *h < b.1 { (i, *h) } else { b });
    text.push_str(&format!(
        "# nint {} min h {:e} at x = {:e} max h {:e} match index {} fevals {}\n",
        mesh.len(),
        hmin,
        mesh.intervals[imin].x_left,
        mesh.max_h(),
        mesh.match_index,
        p.problem.evals()
    ));
    emit(&args.out, &text)?;
    Ok(())
}

fn cmd_bench(table: &str, out: &OutputArgs) -> Result<(), Failure> {
    let format: Format = out.format.parse()?;
    let start = Instant::now();
    let rep = bench::run(table)?;
    let mut text = rep.table.render(format);
    for line in &rep.footer {
        text.push_str("# ");
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(&format!("# {table}: {} failed, total time {:.3} s\n", rep.failed, start.elapsed().as_secs_f64()));
    emit(out, &text)?;
    if rep.failed > 0 {
        Err(Failure::Partial)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Mesh(args) => cmd_mesh(args),
        Command::Bench { table, out } => cmd_bench(table, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Partial) => ExitCode::from(2),
    }
}
