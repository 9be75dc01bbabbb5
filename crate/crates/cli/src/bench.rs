//! Regenerates the published benchmark tables and checks them against bands.

use std::collections::HashMap;
use std::time::Instant;

use anyhow::{bail, Result};
use sturm_core::reference::{self, Row, ERROR_COLUMNS};
use sturm_core::{builtin, solve_singular, Mesh, Method, Problem64, Solver};

use crate::report::{sci, sig17, Table};

pub const IDS: [&str; 6] = ["ce128", "ws64", "ce-accuracy", "ws-accuracy", "ws-adaptive", "ws-singular"];

const SHOOT_TOL: f64 = 1e-13;

pub struct BenchReport {
    pub table: Table,
    /// Summary lines, timings included.
    pub footer: Vec<String>,
    pub failed: usize,
}

impl BenchReport {
    fn new() -> Self {
        Self {
            table: Table::new(&["method", "k", "lambda", "reference", "error", "published", "status"]),
            footer: Vec::new(),
            failed: 0,
        }
    }

    fn row(
        &mut self,
        label: &str,
        k: usize,
        lambda: Result<f64, String>,
        reference: &str,
        published: Option<f64>,
        pass: impl Fn(f64) -> bool,
    ) {
        let exact: f64 = reference.parse().expect("reference literal");
        let (value, error, ok) = match lambda {
            Ok(l) => {
                let e = (l - exact).abs();
                (sig17(l), sci(e), pass(e))
            }
            Err(msg) => (format!("error: {msg}"), "-".into(), false),
        };
        if !ok {
            self.failed += 1;
        }
        self.table.push(vec![
            label.into(),
            k.to_string(),
            value,
            reference.into(),
            error,
            published.map_or("-".into(), sci),
            status(ok).into(),
        ]);
    }

    fn check(&mut self, ok: bool, what: String) {
        if !ok {
            self.failed += 1;
        }
        self.footer.push(format!("{what}: {}", status(ok)));
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn problem(name: &str, params: &[(&str, f64)]) -> Problem64 {
    let params: HashMap<String, f64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    builtin(name, &params).expect("builtin benchmark problem")
}

fn column(method: Method) -> usize {
    ERROR_COLUMNS.iter().position(|m| *m == method).expect("method column")
}

/// Solves every listed row on one mesh; returns the λ per row and the footer line.
fn solve_rows(
    problem: &Problem64,
    mut mesh_for: impl FnMut(&Problem64) -> Result<Mesh<f64>>,
    method: Method,
    rows: &[Row],
) -> (Vec<Result<f64, String>>, String) {
    let p = problem.clone().detach_counter();
    let start = Instant::now();
    let mesh = match mesh_for(&p) {
        Ok(m) => m,
        Err(e) => return (rows.iter().map(|_| Err(e.to_string())).collect(), format!("{method}: mesh failed")),
    };
    let solver = Solver::new(&p, &mesh);
    let lambdas =
        rows.iter().map(|r| solver.eigenvalue(r.k, SHOOT_TOL).map(|e| e.lambda).map_err(|e| e.to_string())).collect();
    let line = format!("{method}: nint {} nfev {} time {:.3} s", mesh.len(), p.evals(), start.elapsed().as_secs_f64());
    (lambdas, line)
}

fn uniform_table(
    rep: &mut BenchReport,
    problem: &Problem64,
    rows: &[Row],
    nint: impl Fn(Method) -> usize,
    band: impl Fn(f64, f64) -> bool,
) {
    for method in ERROR_COLUMNS {
        let n = nint(method);
        let (lambdas, line) = solve_rows(problem, |p| Ok(Mesh::uniform(p, n, method)?), method, rows);
        for (row, lambda) in rows.iter().zip(lambdas) {
            let published = row.errors[column(method)];
            rep.row(method.name(), row.k, lambda, row.lambda, Some(published), |e| band(e, published));
        }
        rep.footer.push(line);
    }
}

fn within_factor_three(err: f64, published: f64) -> bool {
    err >= published / 3.0 && err <= published * 3.0
}

fn accuracy_band(err: f64, published: f64) -> bool {
    err <= (3.0 * published).max(3e-8)
}

pub fn run(id: &str) -> Result<BenchReport> {
    let mut rep = BenchReport::new();
    match id {
        "ce128" => uniform_table(
            &mut rep,
            &problem("coffey_evans", &[("beta", 30.0)]),
            &reference::CE128,
            |_| 128,
            within_factor_three,
        ),
        "ws64" => uniform_table(&mut rep, &problem("woods_saxon", &[]), &reference::WS64, |_| 64, within_factor_three),
        "ce-accuracy" => uniform_table(
            &mut rep,
            &problem("coffey_evans", &[("beta", 30.0)]),
            &reference::CE_ACCURACY,
            |m| reference::CE_ACCURACY_NINT[column(m)],
            accuracy_band,
        ),
        "ws-accuracy" => uniform_table(
            &mut rep,
            &problem("woods_saxon", &[]),
            &reference::WS_ACCURACY,
            |m| reference::WS_ACCURACY_NINT[column(m)],
            accuracy_band,
        ),
        "ws-adaptive" => ws_adaptive(&mut rep),
        "ws-singular" => ws_singular(&mut rep),
        other => bail!("unknown benchmark `{other}` (expected one of {})", IDS.join(", ")),
    }
    Ok(rep)
}

fn ws_adaptive(rep: &mut BenchReport) {
    let ws = problem("woods_saxon", &[]);
    let method = Method::Neumann8;
    let rows = reference::WS64;
    let mut nint = 0;
    let (lambdas, line) = solve_rows(
        &ws,
        |p| {
            let m = Mesh::adaptive(p, 1e-6, method)?;
            nint = m.len();
            Ok(m)
        },
        method,
        &rows,
    );
    for (row, lambda) in rows.iter().zip(lambdas) {
        let published = reference::WS_ADAPTIVE.iter().find(|r| r.0 == row.k).map(|r| r.2);
        rep.row(method.name(), row.k, lambda, row.lambda, published, |e| e <= 1e-6);
    }
    rep.footer.push(line);
    rep.check(
        (40..=60).contains(&nint),
        format!("nint {nint} (published {}, band 40-60)", reference::WS_ADAPTIVE_NINT),
    );
}

fn ws_singular(rep: &mut BenchReport) {
    let p = problem("woods_saxon_singular", &[("l", 2.0)]);
    let tol = 1e-7;
    let mut bisections: HashMap<usize, [usize; 2]> = HashMap::new();
    for (i, (eps, nint_pub, nbisec_pub)) in reference::WS_SINGULAR_RUNS.into_iter().enumerate() {
        let label = format!("eps={eps}");
        let start = Instant::now();
        let q = p.clone().detach_counter();
        let mut nint = 0;
        let mut most = 0;
        for (k, lambda, e_small, e_large) in reference::WS_SINGULAR {
            let published = if i == 0 { e_small } else { e_large };
            let got = solve_singular(&q, k, eps, tol, Method::Neumann8).map_err(|e| e.to_string());
            if let Ok(r) = &got {
                nint = r.nint;
                most = most.max(r.nbisec);
                bisections.entry(k).or_default()[i] = r.nbisec;
            }
            rep.row(&label, k, got.map(|r| r.result.lambda), lambda, Some(published), |e| e <= tol);
        }
        rep.footer.push(format!(
            "{label}: nint {nint} (published {nint_pub}) max nbisec {most} (published {nbisec_pub}) nfev {} time {:.3} s",
            q.evals(),
            start.elapsed().as_secs_f64()
        ));
    }
    let more = reference::WS_SINGULAR.iter().all(|r| bisections.get(&r.0).is_some_and(|b| b[1] > b[0]));
    rep.check(more, "eps=0.1 needs more bisections than eps=0.01 for every k".into());
}
