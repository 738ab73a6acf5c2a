use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use ramsey_core::bounds::{evaluate_all, BoundInputs, BoundReport};
use ramsey_core::construct::{
    chernoff_tail_check, construct_witness, erdos_tetali_check, ConstructParams, CopyStatus,
    TailCheck, TrialReport,
};
use ramsey_core::detect::max_edge_disjoint_packing;
use ramsey_core::embed::{embed_general, Branch, EmbedConfig, EmbedError};
use ramsey_core::exact::{find_witness, ramsey_number, RamseyValue};
use ramsey_core::format::{serialize_coloring, serialize_graph};
use ramsey_core::{union_of_cliques, PackingMode};
use serde::Serialize;
use serde_json::json;

use crate::input::{coloring_file, graph_file, one_based};
use crate::{
    BoundsArgs, ConstructArgs, EmbedArgs, ExactArgs, GenUnionArgs, PackArgs, StatsCommand,
};

/// Every command returns `Ok(true)` for success, `Ok(false)` for a negative
/// outcome and `Err` for bad input.
type Outcome = Result<bool>;

fn print_line(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    print_line(&serde_json::to_string(value)?)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn bounds(args: BoundsArgs) -> Outcome {
    let mut extra = BoundInputs {
        t: args.t,
        chromatic: args.chromatic,
        ..Default::default()
    };
    if let Some(path) = &args.graph {
        extra.h = Some(graph_file(path)?);
    }
    if let (Some(pq), Some(k)) = (&args.pq, args.k) {
        extra.pqk = Some((pq[0], pq[1], k));
    }
    for spec in &args.constants {
        let Some((name, value)) = spec.split_once('=') else {
            bail!("--constant expects NAME=VALUE, got {spec:?}");
        };
        let value: f64 = value
            .parse()
            .with_context(|| format!("--constant {name}: not a number: {value:?}"))?;
        if !(value.is_finite() && value > 0.0) {
            bail!("--constant {name}: must be positive and finite");
        }
        extra.constants.insert(name.to_string(), value);
    }
    let reports = evaluate_all(args.s, args.m, &extra)?;
    if let Some(unknown) = extra
        .constants
        .keys()
        .find(|k| !reports.iter().any(|r| r.name == k.as_str()))
    {
        bail!("--constant {unknown}: no such bound at these inputs");
    }
    if args.json {
        emit(&reports)?;
    } else {
        for r in &reports {
            print_line(&render_bound(r))?;
        }
    }
    Ok(true)
}

fn render_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else if v.abs() >= 1e7 {
        format!("{v:.4e}")
    } else {
        format!("{v:.4}")
    }
}

fn render_bound(r: &BoundReport) -> String {
    let role = serde_json::to_value(r.role).unwrap();
    let mut line = format!(
        "{} {} {}",
        r.name,
        render_value(r.value),
        role.as_str().unwrap_or("")
    );
    if let Some(e) = r.exponent {
        line.push_str(&format!(" exponent={e}"));
    }
    line.push_str(&format!(" ({})", r.constant_caveat));
    line
}

#[derive(Serialize)]
struct ConstructSummary<'a> {
    s: usize,
    m: usize,
    n: usize,
    p: f64,
    seed: u64,
    trials: usize,
    witnesses: Vec<usize>,
    reports: &'a [TrialReport],
}

pub fn construct(args: ConstructArgs) -> Outcome {
    let g = graph_file(&args.g)?;
    let params = ConstructParams {
        n_override: args.n,
        p_override: args.p,
        scale: args.scale,
        node_budget: args.budget,
        threads: args.threads,
        ..ConstructParams::new(args.s, args.trials, args.seed)
    };
    let run = construct_witness(&params, &g)?;
    let summary = ConstructSummary {
        s: run.s,
        m: run.m,
        n: run.n,
        p: run.p,
        seed: args.seed,
        trials: args.trials,
        witnesses: run
            .reports
            .iter()
            .filter(|r| r.is_witness())
            .map(|r| r.trial_index)
            .collect(),
        reports: &run.reports,
    };
    let text = serde_json::to_string(&summary)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for r in &run.reports {
            let name = format!("trial_{:05}.col", r.trial_index);
            write_file(&dir.join(name), &serialize_coloring(&r.coloring))?;
        }
        write_file(&dir.join("summary.json"), &format!("{text}\n"))?;
    }
    print_line(&text)?;
    Ok(run
        .reports
        .iter()
        .any(|r| r.blue_g_status == CopyStatus::Absent))
}

pub fn embed(args: EmbedArgs) -> Outcome {
    let col = coloring_file(&args.coloring)?;
    let g = graph_file(&args.g)?;
    let cfg = EmbedConfig {
        c1: args.c1,
        node_budget: args.budget,
    };
    match embed_general(&col, &g, args.s, &cfg) {
        Ok(out) => {
            let branch = match &out.branch {
                Branch::Triangle => json!({ "kind": "triangle" }),
                Branch::BlueClique { k, clique } => {
                    json!({ "kind": "blue_clique", "k": k, "clique": one_based(clique) })
                }
            };
            emit(&json!({
                "status": "embedded",
                "s": args.s,
                "assignment": one_based(&out.map.assignment),
                "descents": one_based(&out.descents),
                "branch": branch,
            }))?;
            Ok(true)
        }
        Err(e) => {
            // Too few vertices is only the caller's fault when no descent
            // could have shrunk the pool.
            let bad_input = match &e {
                EmbedError::RedClique { .. }
                | EmbedError::IsolatedVertex(_)
                | EmbedError::Domain(_) => true,
                EmbedError::TooFewVertices { .. } => args.s == 3,
                _ => false,
            };
            if bad_input {
                let detail = match &e {
                    EmbedError::RedClique { clique, .. } => format!(" at {:?}", one_based(clique)),
                    EmbedError::IsolatedVertex(v) => format!(" (vertex {})", v + 1),
                    _ => String::new(),
                };
                bail!("{e}{detail}");
            }
            emit(&json!({ "status": "failed", "s": args.s, "reason": e.to_string() }))?;
            Ok(false)
        }
    }
}

pub fn pack(args: PackArgs) -> Outcome {
    let col = coloring_file(&args.coloring)?;
    let mode = if args.exact {
        PackingMode::Exact
    } else {
        PackingMode::Greedy
    };
    let packing = max_edge_disjoint_packing(&col, args.s, mode)?;
    let members: Vec<_> = packing.members.iter().map(|c| one_based(c)).collect();
    emit(&json!({
        "s": args.s,
        "mode": mode,
        "size": packing.len(),
        "members": members,
    }))?;
    Ok(true)
}

pub fn exact(args: ExactArgs) -> Outcome {
    let h = graph_file(&args.h)?;
    let g = graph_file(&args.g)?;
    if args.cap == 0 {
        bail!("--cap must be >= 1");
    }
    let edge_cap = args.cap * (args.cap - 1) / 2;
    match ramsey_number(&h, &g, args.cap, edge_cap)? {
        RamseyValue::Exact(n) => {
            if let Some(path) = &args.witness {
                match find_witness(n - 1, &h, &g, edge_cap)? {
                    Some(w) => write_file(path, &serialize_coloring(&w))?,
                    None => bail!("no witness below the computed value"),
                }
            }
            emit(&json!({ "ramsey": n }))?;
            Ok(true)
        }
        RamseyValue::Exceeds(cap) => {
            emit(&json!({ "ramsey": format!("> {cap}") }))?;
            Ok(false)
        }
    }
}

pub fn gen_union(args: GenUnionArgs) -> Outcome {
    let u = union_of_cliques(args.m, args.s)?;
    let text = serialize_graph(&u.graph);
    if let Some(path) = &args.out {
        write_file(path, &text)?;
    }
    emit(&json!({
        "m": args.m,
        "s": args.s,
        "k": u.k,
        "count": u.count,
        "vertices": u.graph.n(),
        "edges": u.graph.edge_count(),
        "graph": text,
    }))?;
    Ok(true)
}

pub fn stats(cmd: StatsCommand) -> Outcome {
    let (kind, inputs, check): (&str, serde_json::Value, TailCheck) = match cmd {
        StatsCommand::Chernoff {
            m,
            p,
            a,
            trials,
            seed,
        } => (
            "chernoff",
            json!({ "m": m, "p": p, "a": a, "seed": seed }),
            chernoff_tail_check(m, p, a, trials, seed)?,
        ),
        StatsCommand::ErdosTetali {
            n,
            p,
            s,
            k,
            trials,
            seed,
        } => (
            "erdos_tetali",
            json!({ "n": n, "p": p, "s": s, "k": k, "seed": seed }),
            erdos_tetali_check(n, p, s, k, trials, seed)?,
        ),
    };
    let holds = check.holds();
    emit(&json!({
        "kind": kind,
        "inputs": inputs,
        "trials": check.trials,
        "hits": check.hits,
        "empirical": check.empirical,
        "bound": check.bound,
        "std_error": check.std_error,
        "holds": holds,
    }))?;
    Ok(holds)
}
