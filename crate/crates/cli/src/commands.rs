use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;
use trustgame::core_solver::{BALANCE_MAX_N, CORE_MAX_N};
use trustgame::game::CHECK_MAX_N;
use trustgame::mobius::ORACLE_MAX_N;
use trustgame::values::BRUTEFORCE_MAX_N;
use trustgame::*;

use crate::args::{Cli, Command, GuardArg, InputFormat, Method};
use crate::render::{coalition, coalition_key, fmt_tsv, label, labels, num, nums, Obj};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;

const MAX_N_ENV: &str = "TRUSTGAME_MAX_N";

type CmdResult = std::result::Result<Outcome, String>;

pub enum Outcome {
    Ok,
    Violations,
}

pub fn main_with_args(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    if let Some(threads) = cli.threads {
        // a pool may already exist when called repeatedly in-process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    match run(&cli, out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Violations) => EXIT_VIOLATION,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

fn load(path: &Path, format: Option<InputFormat>) -> std::result::Result<Digraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let format = match format {
        Some(InputFormat::Json) => GraphFormat::Json,
        Some(InputFormat::EdgeList) => GraphFormat::EdgeList,
        None if path.extension().is_some_and(|e| e == "json") => GraphFormat::Json,
        None => GraphFormat::EdgeList,
    };
    parse_graph(&text, format).map_err(|e| format!("{}: {e}", path.display()))
}

fn max_n(guard: &GuardArg, default: usize) -> std::result::Result<usize, String> {
    if let Some(n) = guard.max_n {
        return Ok(n);
    }
    match std::env::var(MAX_N_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_N_ENV}={s} is not a player count")),
        Err(_) => Ok(default),
    }
}

fn player(g: &Digraph, l: &str) -> std::result::Result<PlayerId, String> {
    g.player(l.trim())
        .ok_or_else(|| format!("unknown node `{}`", l.trim()))
}

fn player_list(g: &Digraph, list: &str) -> std::result::Result<Vec<PlayerId>, String> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(|l| player(g, l)).collect()
}

fn edge_arg(g: &Digraph, s: &str) -> std::result::Result<(PlayerId, PlayerId), String> {
    match player_list(g, s)?.as_slice() {
        [k, j] if g.has_edge(*k, *j) => Ok((*k, *j)),
        [_, _] => Err(format!("no edge `{s}` in graph")),
        _ => Err(format!("edge must be `from,to`, got `{s}`")),
    }
}

fn kind(m: Method) -> ValueKind {
    match m {
        Method::Shapley => ValueKind::Shapley,
        Method::Banzhaf => ValueKind::Banzhaf,
    }
}

fn method_name(k: ValueKind) -> &'static str {
    match k {
        ValueKind::Shapley => "shapley",
        ValueKind::Banzhaf => "banzhaf",
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> std::result::Result<(), String> {
    let text = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    writeln!(out, "{text}").map_err(|e| e.to_string())
}

fn lib<T>(r: trustgame::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Value {
            graph,
            coalition: c,
        } => {
            let g = load(&graph.graph, cli.format)?;
            let s: Coalition = player_list(&g, c)?.into_iter().collect();
            let b = lib(coalition_value(&g, &s))?;
            let per: serde_json::Map<String, Value> = b
                .per_player_external
                .iter()
                .map(|(&p, &w)| (g.label(p).to_string(), num(w)))
                .collect();
            emit(
                out,
                &Obj::new()
                    .put("coalition", coalition(&g, &s))
                    .put_num("internal", b.internal)
                    .put_num("external", b.external)
                    .put_num("total", b.total)
                    .put("per_player_external", Value::Object(per))
                    .build(),
            )?;
        }
        Command::Shapley {
            graph,
            oracle,
            guard,
        }
        | Command::Banzhaf {
            graph,
            oracle,
            guard,
        } => {
            let g = load(&graph.graph, cli.format)?;
            let k = match cli.command {
                Command::Shapley { .. } => ValueKind::Shapley,
                _ => ValueKind::Banzhaf,
            };
            let closed = match k {
                ValueKind::Shapley => shapley_closed_form(&g),
                ValueKind::Banzhaf => banzhaf_closed_form(&g),
            };
            let mut obj = allocation_obj(&g, &closed).put("method", method_name(k));
            if *oracle {
                let limit = max_n(guard, BRUTEFORCE_MAX_N)?;
                let brute = lib(match k {
                    ValueKind::Shapley => shapley_bruteforce(&g, limit),
                    ValueKind::Banzhaf => banzhaf_bruteforce(&g, limit),
                })?;
                obj = obj
                    .put("oracle", nums(&brute.payoffs))
                    .put_num("max_abs_diff", closed.max_abs_diff(&brute));
            }
            emit(out, &obj.build())?;
        }
        Command::Core { graph, guard } => {
            let g = load(&graph.graph, cli.format)?;
            let limit = max_n(guard, CORE_MAX_N)?;
            let x = core_allocation(&g);
            let report = lib(is_in_core(&g, &x, DEFAULT_TOL, limit))?;
            emit(out, &core_obj(&g, &report))?;
        }
        Command::Decompose { graph } => {
            let g = load(&graph.graph, cli.format)?;
            emit(out, &decomposition_obj(&g, &full_decomposition(&g)))?;
        }
        Command::Marginal {
            graph,
            edge,
            target,
            method,
        } => {
            let g = load(&graph.graph, cli.format)?;
            let e = edge_arg(&g, edge)?;
            let t = player(&g, target)?;
            let r = lib(marginal_effect(&g, e, t, kind(*method)))?;
            emit(out, &marginal_obj(&g, &r))?;
        }
        Command::Sweep {
            graph,
            edge,
            targets,
            steps,
            method,
            json,
        } => {
            let g = load(&graph.graph, cli.format)?;
            let e = edge_arg(&g, edge)?;
            let ts = player_list(&g, targets)?;
            if ts.is_empty() {
                return Err("at least one target is required".into());
            }
            if *steps < 2 {
                return Err("--steps must be at least 2".into());
            }
            let table = lib(sweep_edge(&g, e, &ts, &uniform_grid(*steps), kind(*method)))?;
            if *json {
                emit(out, &sweep_obj(&g, &table))?;
            } else {
                write_sweep_tsv(out, &g, &table).map_err(|e| e.to_string())?;
            }
        }
        Command::Verify {
            graph,
            guard,
            sample,
            seed,
        } => {
            let g = load(&graph.graph, cli.format)?;
            return verify(&g, guard, *sample, *seed, out);
        }
        Command::Props { graph } => {
            let g = load(&graph.graph, cli.format)?;
            emit(out, &props_obj(&g)?)?;
        }
    }
    Ok(Outcome::Ok)
}

fn allocation_obj(g: &Digraph, a: &Payoffs) -> Obj {
    Obj::new()
        .put("players", labels(g, a.players.iter().copied()))
        .put("payoffs", nums(&a.payoffs))
        .put("efficient", a.efficient)
}

fn core_obj(g: &Digraph, r: &CoreCheck) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            Obj::new()
                .put("coalition", coalition(g, &v.coalition))
                .put_num("deficit", v.deficit)
                .build()
        })
        .collect();
    let identity = match (r.identity_lhs, r.identity_rhs) {
        (Some(l), Some(rhs)) => Obj::new().put_num("lhs", l).put_num("rhs", rhs).build(),
        _ => Value::Null,
    };
    Obj::new()
        .put("allocation", allocation_obj(g, &r.allocation).build())
        .put("member", r.is_member())
        .put("is_unique_checked", r.is_unique_checked)
        .put_num("efficiency_gap", r.efficiency_gap)
        .put("identity", identity)
        .put("coalitions_checked", r.coalitions_checked)
        .put("violations", violations)
        .build()
}

fn decomposition_obj(g: &Digraph, d: &Decomposition) -> Value {
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|t| {
            Obj::new()
                .put("support", coalition(g, &t.support))
                .put_num("coeff", t.coefficient)
                .build()
        })
        .collect();
    let dividends: serde_json::Map<String, Value> = d
        .aggregated
        .iter()
        .map(|(s, &v)| (coalition_key(g, s), num(v)))
        .collect();
    Obj::new()
        .put("terms", terms)
        .put("dividends", Value::Object(dividends))
        .build()
}

fn marginal_obj(g: &Digraph, r: &EffectReport) -> Value {
    let case = match r.case {
        EffectCase::Head => "head",
        EffectCase::Tail => "tail",
        EffectCase::SharedHeadBelow => "shared_head_below",
        EffectCase::Unaffected => "unaffected",
    };
    Obj::new()
        .put("edge", labels(g, [r.edge.0, r.edge.1]))
        .put("target", label(g, r.target))
        .put("method", method_name(r.method))
        .put("case", case)
        .put_num("internal_coeff", r.internal_coeff)
        .put_num("external_coeff", r.external_coeff)
        .put_num("total_coeff", r.total_coeff)
        .put("rank_used", r.rank_used)
        .put(
            "valid_epsilon_window",
            nums(&[r.valid_epsilon_window.0, r.valid_epsilon_window.1]),
        )
        .build()
}

fn sweep_obj(g: &Digraph, t: &Sweep) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            Obj::new()
                .put_num("weight", r.weight)
                .put("values", nums(&r.values))
                .put("tie", r.tie)
                .build()
        })
        .collect();
    let opt = |x: &Option<f64>| x.map(num).unwrap_or(Value::Null);
    let segments: Vec<Value> = t
        .segments
        .iter()
        .map(|s| {
            Obj::new()
                .put_num("lo", s.lo)
                .put_num("hi", s.hi)
                .put("points", s.points)
                .put("slopes", Value::Array(s.slopes.iter().map(opt).collect()))
                .put(
                    "residuals",
                    Value::Array(s.residuals.iter().map(opt).collect()),
                )
                .build()
        })
        .collect();
    Obj::new()
        .put("edge", labels(g, [t.edge.0, t.edge.1]))
        .put("targets", labels(g, t.targets.iter().copied()))
        .put("method", method_name(t.method))
        .put("breakpoints", nums(&t.breakpoints))
        .put("segments", segments)
        .put("rows", rows)
        .build()
}

fn write_sweep_tsv(out: &mut dyn Write, g: &Digraph, t: &Sweep) -> std::io::Result<()> {
    let mut header = vec!["weight".to_string()];
    header.extend(t.targets.iter().map(|&p| g.label(p).to_string()));
    header.push("breakpoint".into());
    writeln!(out, "{}", header.join("\t"))?;
    for r in &t.rows {
        let mut cells = vec![fmt_tsv(r.weight)];
        cells.extend(r.values.iter().map(|&v| fmt_tsv(v)));
        cells.push(if r.tie { "1" } else { "0" }.into());
        writeln!(out, "{}", cells.join("\t"))?;
    }
    Ok(())
}

fn props_obj(g: &Digraph) -> std::result::Result<Value, String> {
    let m: serde_json::Map<String, Value> = (0..g.n())
        .map(|p| (g.label(p).to_string(), Value::from(g.in_degree(p))))
        .collect();
    let isolated = (0..g.n()).filter(|&p| g.in_degree(p) == 0 && g.out_degree(p) == 0);
    let mut zero = Vec::new();
    for p in 0..g.n() {
        if lib(is_zero_shapley_player(g, p))? {
            zero.push(p);
        }
    }
    Ok(Obj::new()
        .put("n", g.n())
        .put("edges", g.edge_count())
        .put_num("total_weight", g.total_weight())
        .put("m", Value::Object(m))
        .put("isolated", labels(g, isolated))
        .put("zero_shapley", labels(g, zero))
        .build())
}

struct Suite {
    name: &'static str,
    passed: bool,
    detail: Value,
}

fn pair_witness(g: &Digraph, r: &Report) -> Value {
    match r.minimal_witness() {
        None => Value::Null,
        Some(v) => Obj::new()
            .put("s", coalition(g, &v.s))
            .put("t", coalition(g, &v.t))
            .put_num("lhs", v.lhs)
            .put_num("rhs", v.rhs)
            .build(),
    }
}

fn property_suite(g: &Digraph, name: &'static str, r: Report) -> Suite {
    Suite {
        name,
        passed: r.passed(),
        detail: Obj::new()
            .put("claim", r.claim.clone())
            .put("n_checked", r.n_checked)
            .put("violations", r.violations.len())
            .put("witness", pair_witness(g, &r))
            .build(),
    }
}

fn verify(
    g: &Digraph,
    guard: &GuardArg,
    sample: Option<u64>,
    seed: u64,
    out: &mut dyn Write,
) -> CmdResult {
    let mut suites = Vec::new();
    let exhaustive = |default: usize| max_n(guard, default);

    let (sa, mono) = match sample {
        Some(k) => (
            lib(sample_superadditive(g, k, seed))?,
            lib(sample_monotone(g, k, seed.wrapping_add(1)))?,
        ),
        None => {
            let limit = exhaustive(CHECK_MAX_N)?;
            (
                lib(check_superadditive(g, limit))?,
                lib(check_monotone(g, limit))?,
            )
        }
    };
    suites.push(property_suite(g, "superadditivity", sa));
    suites.push(property_suite(g, "monotonicity", mono));

    let guarded = |limit: usize| g.n() <= limit;
    let oracle_limit = exhaustive(ORACLE_MAX_N)?;
    let value_limit = exhaustive(BRUTEFORCE_MAX_N)?;
    let core_limit = exhaustive(CORE_MAX_N)?;
    let balance_limit = exhaustive(BALANCE_MAX_N)?;
    let limits = [oracle_limit, value_limit, core_limit, balance_limit];
    if sample.is_none() {
        if let Some(&limit) = limits.iter().find(|&&l| !guarded(l)) {
            return Err(format!(
                "{} players exceeds exhaustive guard of {limit}; raise --max-n or use --sample",
                g.n()
            ));
        }
    }
    let skipped = |name: &'static str, limit: usize| Suite {
        name,
        passed: true,
        detail: Obj::new()
            .put(
                "skipped",
                format!("{} players exceeds guard of {limit}", g.n()),
            )
            .build(),
    };

    if guarded(oracle_limit) {
        let d = full_decomposition(g);
        let oracle = lib(mobius_oracle(g, oracle_limit))?;
        let mut max_div = 0.0f64;
        let mut max_rec = 0.0f64;
        for (s, div) in oracle.iter() {
            max_div = max_div.max((div - d.dividend(&s)).abs());
            let v = lib(value(g, &s))?;
            max_rec = max_rec.max((evaluate_decomposition(&d, &s) - v).abs());
        }
        suites.push(Suite {
            name: "mobius_oracle",
            passed: max_div <= 1e-9 && max_rec <= 1e-9,
            detail: Obj::new()
                .put("subsets", 1u64 << g.n())
                .put_num("max_dividend_diff", max_div)
                .put_num("max_reconstruction_diff", max_rec)
                .build(),
        });
    } else {
        suites.push(skipped("mobius_oracle", oracle_limit));
    }

    if guarded(value_limit) {
        let phi = shapley_closed_form(g);
        let phi_b = lib(shapley_bruteforce(g, value_limit))?;
        let beta = banzhaf_closed_form(g);
        let beta_b = lib(banzhaf_bruteforce(g, value_limit))?;
        let ds = phi.max_abs_diff(&phi_b);
        let db = beta.max_abs_diff(&beta_b);
        suites.push(Suite {
            name: "value_oracle",
            passed: ds <= 1e-9 && db <= 1e-9 && phi.efficient,
            detail: Obj::new()
                .put_num("shapley_max_abs_diff", ds)
                .put_num("banzhaf_max_abs_diff", db)
                .put("shapley_efficient", phi.efficient)
                .build(),
        });
    } else {
        suites.push(skipped("value_oracle", value_limit));
    }

    if guarded(core_limit) {
        let x = core_allocation(g);
        let r = lib(is_in_core(g, &x, DEFAULT_TOL, core_limit))?;
        let identity_ok = match (r.identity_lhs, r.identity_rhs) {
            (Some(l), Some(rhs)) => l.approx_eq(rhs, DEFAULT_TOL),
            _ => true,
        };
        suites.push(Suite {
            name: "core",
            passed: r.is_member() && r.is_unique_checked && identity_ok,
            detail: Obj::new()
                .put("coalitions_checked", r.coalitions_checked)
                .put("violations", r.violations.len())
                .put("identity_holds", identity_ok)
                .put("is_unique_checked", r.is_unique_checked)
                .build(),
        });
    } else {
        suites.push(skipped("core", core_limit));
    }

    if guarded(balance_limit) {
        let r = lib(verify_total_balancedness(g, balance_limit))?;
        let witness = r
            .violations
            .first()
            .map(|v| {
                Obj::new()
                    .put("subgame", coalition(g, &v.subgame))
                    .put("coalition", coalition(g, &v.coalition))
                    .put_num("deficit", v.deficit)
                    .build()
            })
            .unwrap_or(Value::Null);
        suites.push(Suite {
            name: "total_balancedness",
            passed: r.passed(),
            detail: Obj::new()
                .put("subgames_checked", r.subgames_checked)
                .put("pairs_checked", r.pairs_checked)
                .put("violations", r.violations.len())
                .put("inefficient", r.inefficient.len())
                .put("witness", witness)
                .build(),
        });
    } else {
        suites.push(skipped("total_balancedness", balance_limit));
    }

    let all_passed = suites.iter().all(|s| s.passed);
    let rendered: Vec<Value> = suites
        .into_iter()
        .map(|s| {
            Obj::new()
                .put("suite", s.name)
                .put("passed", s.passed)
                .put("detail", s.detail)
                .build()
        })
        .collect();
    emit(
        out,
        &Obj::new()
            .put("n", g.n())
            .put("passed", all_passed)
            .put("suites", rendered)
            .build(),
    )?;
    Ok(if all_passed {
        Outcome::Ok
    } else {
        Outcome::Violations
    })
}
