//! `schubert`: command-line front end for the schubert-core library.

use std::fmt::Display;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use schubert_core::cells::{classify_all, point_count, ExactMatrix, Field, PrimeField, Rationals};
use schubert_core::combinatorics::parse_index;
use schubert_core::grassmann::{dual, giambelli, grassmannian_degree, multiply, pairing, pieri, DegreeMode};
use schubert_core::lrcalc::{format_expansion, lr_coefficient, lr_expand, LrExpansion};
use schubert_core::schubpoly::{schubert_dd, TransitionCache};
use schubert_core::{BoxPartition, Error, GrassClass, GrassContext, Partition, Permutation, SparsePoly};

#[derive(Parser)]
#[command(name = "schubert", version, about = "Exact Schubert calculus on Grassmannians and flag varieties")]
#[command(after_help = "Environment:\n  SCHUBERT_THREADS  worker threads for parallel kernels (0 = one per core)")]
struct Cli {
    /// Emit JSON instead of the human-readable format.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// The Grassmannian G(m,n) of m-planes in projective n-space.
#[derive(Args)]
struct CtxArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

impl CtxArgs {
    fn ctx(&self) -> Result<GrassContext, Failure> {
        GrassContext::new(self.m, self.n).map_err(|e| Failure::input("--m/--n", &format!("{},{}", self.m, self.n), e))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Product of two classes in H*(G(m,n)).
    ///
    /// An operand is a Schubert index, written as a partition ("2,1") or a jump
    /// sequence ("0|2|4"), or a class such as "s(1) + 2*s(2)".
    Product {
        #[command(flatten)]
        ctx: CtxArgs,
        left: String,
        right: String,
    },
    /// Multiply a class by the special class tau_b.
    Pieri {
        #[command(flatten)]
        ctx: CtxArgs,
        class: String,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    /// Express a basis class as a determinant in the special classes.
    Giambelli {
        #[command(flatten)]
        ctx: CtxArgs,
        index: String,
    },
    /// The dual basis index under the intersection pairing.
    Dual {
        #[command(flatten)]
        ctx: CtxArgs,
        index: String,
    },
    /// Intersection number: the point-class coefficient of the product.
    Pairing {
        #[command(flatten)]
        ctx: CtxArgs,
        left: String,
        right: String,
    },
    /// Degree of G(m,n) in its Plücker embedding.
    Degree {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, value_enum, default_value_t = DegreeArg::Pieri)]
        mode: DegreeArg,
    },
    /// Littlewood-Richardson coefficients.
    Lr {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Report the single coefficient c^nu_{lambda,mu}.
        #[arg(long, conflicts_with = "bound")]
        nu: Option<String>,
        /// Keep only shapes inside an R x C box, written "RxC".
        #[arg(long = "box", id = "bound", value_name = "RxC")]
        bound: Option<String>,
    },
    /// Schubert polynomial of a permutation given in one-line notation.
    Schubert {
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Dd)]
        method: MethodArg,
    },
    /// Reduce a full-rank matrix to its Schubert-cell echelon form.
    Echelon {
        /// "rational" or a prime p.
        #[arg(long, default_value = "rational")]
        field: String,
        /// CSV file, one row per line.
        #[arg(long)]
        matrix: std::path::PathBuf,
    },
    /// Schubert cells of m-dimensional subspaces of k^n.
    Cells {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Count F_q-points (q = 1 counts cells).
        #[arg(long, default_value_t = 1)]
        q: u64,
        /// Enumerate all subspaces over F_q by brute force (q prime).
        #[arg(long)]
        census: bool,
    },
    /// Time lr and degree on a ladder of inputs; prints CSV.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchTarget::All)]
        target: BenchTarget,
        /// Largest staircase (lr) or m with n = 2m + 1 (degree).
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DegreeArg {
    Pieri,
    Formula,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dd,
    Transition,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchTarget {
    Lr,
    Degree,
    All,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(operand: &str, value: &str, err: impl Display) -> Self {
        Failure { code: 2, message: format!("invalid {operand} {value:?}: {err}") }
    }

    fn internal(message: String) -> Self {
        Failure { code: 3, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_internal() { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

/// Result of a subcommand: the text and JSON renderings, plus notes for stderr.
struct Output {
    text: String,
    json: Value,
    notes: Vec<String>,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, notes: Vec::new() }
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_class(ctx: GrassContext, name: &str, s: &str) -> Result<GrassClass, Failure> {
    let parsed = if s.contains('s') {
        GrassClass::parse_text(ctx, s)
    } else {
        parse_index(ctx, s).map(|i| GrassClass::basis_element(&i))
    };
    parsed.map_err(|e| Failure::input(name, s, e))
}

fn parse_box_index(ctx: GrassContext, name: &str, s: &str) -> Result<BoxPartition, Failure> {
    parse_index(ctx, s).map_err(|e| Failure::input(name, s, e))
}

fn parse_partition(name: &str, s: &str) -> Result<Partition, Failure> {
    s.parse().map_err(|e| Failure::input(name, s, e))
}

fn index_json(i: &BoxPartition) -> Value {
    json!({ "partition": i.partition().parts(), "jump": i.to_sequence().entries() })
}

fn expansion_json(e: &LrExpansion) -> Value {
    Value::Array(
        e.iter()
            .map(|(nu, c)| json!({ "partition": nu.parts(), "coeff": c.to_string() }))
            .collect(),
    )
}

fn run_lr(lambda: &str, mu: &str, nu: Option<&str>, bound: Option<&str>) -> Result<Output, Failure> {
    let l = parse_partition("--lambda", lambda)?;
    let m = parse_partition("--mu", mu)?;
    if let Some(nu) = nu {
        let v = parse_partition("--nu", nu)?;
        let c = lr_coefficient(&l, &m, &v);
        let j = json!({ "lambda": l.parts(), "mu": m.parts(), "nu": v.parts(), "coeff": c.to_string() });
        return Ok(Output::new(c.to_string(), j));
    }
    let bound = match bound {
        None => None,
        Some(b) => {
            let bad = || Failure::input("--box", b, "expected RxC, e.g. 3x4");
            let (r, c) = b.split_once(['x', 'X']).ok_or_else(bad)?;
            Some((r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
        }
    };
    let e = lr_expand(&l, &m, bound);
    let j = json!({ "lambda": l.parts(), "mu": m.parts(), "terms": expansion_json(&e) });
    Ok(Output::new(format_expansion(&e), j))
}

fn run_degree(ctx: GrassContext, mode: DegreeArg) -> Result<Output, Failure> {
    let ctx_json = json!([ctx.m(), ctx.n()]);
    let single = |m: DegreeMode| -> Result<Output, Failure> {
        let d = grassmannian_degree(ctx, m)?;
        Ok(Output::new(d.to_string(), json!({ "ctx": ctx_json, "degree": d.to_string() })))
    };
    match mode {
        DegreeArg::Pieri => single(DegreeMode::Pieri),
        DegreeArg::Formula => single(DegreeMode::Formula),
        DegreeArg::Both => {
            let p = grassmannian_degree(ctx, DegreeMode::Pieri)?;
            let f = grassmannian_degree(ctx, DegreeMode::Formula)?;
            if p != f {
                return Err(Failure::internal(format!("{ctx}: pieri degree {p} != formula degree {f}")));
            }
            let mut out = Output::new(
                p.to_string(),
                json!({ "ctx": ctx_json, "degree": p.to_string(), "agree": true }),
            );
            out.notes.push(format!("pieri and formula agree on {ctx}"));
            Ok(out)
        }
    }
}

fn run_schubert(perm: &str, method: MethodArg) -> Result<Output, Failure> {
    let w: Permutation = perm.parse().map_err(|e| Failure::input("--perm", perm, e))?;
    let poly_out = |p: &SparsePoly| Output::new(p.to_string(), to_json(p));
    match method {
        MethodArg::Dd => Ok(poly_out(&schubert_dd(&w)?)),
        MethodArg::Transition => Ok(poly_out(&TransitionCache::new().schubert(&w))),
        MethodArg::Both => {
            let dd = schubert_dd(&w)?;
            let tr = TransitionCache::new().schubert(&w);
            if dd != tr {
                let diff = &dd - &tr;
                return Err(Failure::internal(format!(
                    "S_{w}: divided differences give {dd}, transition gives {tr}; difference {diff}"
                )));
            }
            let mut out = poly_out(&dd);
            out.notes.push(format!("divided differences and transition agree on {w}"));
            Ok(out)
        }
    }
}

fn echelon_with<F: Field>(field: F, path: &std::path::Path, text: &str) -> Result<Output, Failure> {
    let shown = path.display().to_string();
    let m = ExactMatrix::from_csv(field, text).map_err(|e| Failure::input("--matrix", &shown, e))?;
    let e = m.echelon_reduce().map_err(|err| Failure::input("--matrix", &shown, err))?;
    let t = e.cell_type()?;
    let rows: Vec<Vec<String>> = e.entries().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let j = json!({
        "field": e.field().name(),
        "echelon": rows,
        "cell_type": t.columns(),
        "dimension": t.dimension(),
    });
    let text = format!("{}\ntype {} dimension {}", e.to_csv(), t, t.dimension());
    Ok(Output::new(text, j))
}

fn run_echelon(field: &str, path: &std::path::Path) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input("--matrix", &path.display().to_string(), e))?;
    match field.trim().to_ascii_lowercase().as_str() {
        "rational" | "q" => echelon_with(Rationals, path, &text),
        other => {
            let p: u64 = other.parse().map_err(|_| Failure::input("--field", field, "expected rational or a prime"))?;
            let f = PrimeField::new(p).map_err(|e| Failure::input("--field", field, e))?;
            echelon_with(f, path, &text)
        }
    }
}

fn run_cells(m: usize, n: usize, q: u64, census: bool) -> Result<Output, Failure> {
    if census {
        let c = classify_all(m, n, q)?;
        let total: u64 = c.counts.values().sum();
        let mut text: Vec<String> = c.counts.iter().map(|(t, k)| format!("{t} dim {} count {k}", t.dimension())).collect();
        text.push(format!("subspaces {} echelon forms {} total {total}", c.subspaces, c.echelon_forms));
        let j = json!({
            "m": m, "n": n, "q": q,
            "cells": c.counts.iter().map(|(t, k)| json!({
                "type": t.columns(), "dimension": t.dimension(), "count": k.to_string(),
            })).collect::<Vec<_>>(),
            "subspaces": c.subspaces,
            "echelon_forms": c.echelon_forms,
            "total": total.to_string(),
        });
        return Ok(Output::new(text.join("\n"), j));
    }
    let pc = point_count(m, n, q)?;
    let mut text: Vec<String> = pc.census.iter().map(|(t, k)| format!("{t} dim {} count {k}", t.dimension())).collect();
    text.push(format!("total {}", pc.total));
    let j = json!({
        "m": m, "n": n, "q": q,
        "cells": pc.census.iter().map(|(t, k)| json!({
            "type": t.columns(), "dimension": t.dimension(), "count": k.to_string(),
        })).collect::<Vec<_>>(),
        "total": pc.total.to_string(),
    });
    Ok(Output::new(text.join("\n"), j))
}

fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))[..16].to_string()
}

fn run_bench(target: BenchTarget, max: usize, repeat: usize) -> Result<Output, Failure> {
    let repeat = repeat.max(1);
    let mut lines = vec!["input,wall_time,digest".to_string()];
    let mut records = Vec::new();
    let mut time = |label: String, f: &dyn Fn() -> Result<Value, Failure>| -> Result<(), Failure> {
        let mut best = f64::INFINITY;
        let mut result = Value::Null;
        for _ in 0..repeat {
            let start = Instant::now();
            result = f()?;
            best = best.min(start.elapsed().as_secs_f64());
        }
        let d = digest(&result);
        lines.push(format!("{label},{best:.6},{d}"));
        records.push(json!({ "input": label, "wall_time": best, "digest": d }));
        Ok(())
    };
    if target != BenchTarget::Degree {
        for k in 1..=max {
            let stair = Partition::new((1..=k).rev().collect()).expect("staircase");
            time(format!("lr-staircase-{k}"), &|| {
                Ok(expansion_json(&lr_expand(&stair, &stair, None)))
            })?;
        }
    }
    if target != BenchTarget::Lr {
        for m in 1..=max {
            let ctx = GrassContext::new(m, 2 * m + 1)?;
            time(format!("degree-G{m}-{}", 2 * m + 1), &|| {
                Ok(json!(grassmannian_degree(ctx, DegreeMode::Pieri)?.to_string()))
            })?;
        }
    }
    Ok(Output::new(lines.join("\n"), Value::Array(records)))
}

fn run(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Product { ctx, left, right } => {
            let ctx = ctx.ctx()?;
            let a = parse_class(ctx, "left operand", left)?;
            let b = parse_class(ctx, "right operand", right)?;
            let p = multiply(&a, &b)?;
            Ok(Output::new(p.to_string(), to_json(&p)))
        }
        Command::Pieri { ctx, class, b } => {
            let ctx = ctx.ctx()?;
            let a = parse_class(ctx, "class operand", class)?;
            let p = pieri(&a, *b);
            Ok(Output::new(p.to_string(), to_json(&p)))
        }
        Command::Giambelli { ctx, index } => {
            let ctx = ctx.ctx()?;
            let i = parse_box_index(ctx, "index", index)?;
            let g = giambelli(&i.to_sequence())?;
            let text = format!("{} = {}", g.matrix_text(), g.expansion);
            let j = json!({ "index": index_json(&i), "matrix": g.matrix, "expansion": to_json(&g.expansion) });
            Ok(Output::new(text, j))
        }
        Command::Dual { ctx, index } => {
            let ctx = ctx.ctx()?;
            let i = parse_box_index(ctx, "index", index)?;
            let d = dual(&i);
            Ok(Output::new(format!("{d} {}", d.to_sequence()), index_json(&d)))
        }
        Command::Pairing { ctx, left, right } => {
            let ctx = ctx.ctx()?;
            let a = parse_class(ctx, "left operand", left)?;
            let b = parse_class(ctx, "right operand", right)?;
            let v = pairing(&a, &b)?;
            Ok(Output::new(v.to_string(), json!({ "pairing": v.to_string() })))
        }
        Command::Degree { ctx, mode } => run_degree(ctx.ctx()?, *mode),
        Command::Lr { lambda, mu, nu, bound } => run_lr(lambda, mu, nu.as_deref(), bound.as_deref()),
        Command::Schubert { perm, method } => run_schubert(perm, *method),
        Command::Echelon { field, matrix } => run_echelon(field, matrix),
        Command::Cells { m, n, q, census } => run_cells(*m, *n, *q, *census),
        Command::Bench { target, max, repeat } => run_bench(*target, *max, *repeat),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SCHUBERT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::input("SCHUBERT_THREADS", &raw, "expected a non-negative integer"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::internal(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli.command));
    match result {
        Ok(out) => {
            for note in &out.notes {
                eprintln!("{note}");
            }
            let body = if cli.json { out.json.to_string() } else { out.text };
            println!("{body}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
