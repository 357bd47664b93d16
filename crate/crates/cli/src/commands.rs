use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use csma_core::benchmarks::{get_function_with_dim, get_spec, list_functions, BenchmarkId, BenchmarkSpec, Category};
use csma_core::harness::{
    export_stats, export_trace, format_sci, friedman_test, pooled_matrix, read_stats_json, run_batch_detailed,
    ExportFormat, FriedmanResult, OptimizerKind, StatsTable,
};
use csma_core::kernels::{random_walk, write_walk_csv, LevyParams, WalkKind};
use csma_core::optimize;
use serde::Serialize;
use serde_json::json;

use crate::config::{FileConfig, RunOverrides};
use crate::{BenchArgs, CliError, GlobalArgs, RunArgs, StatsArgs, StatsMode, TraceArgs};

type CmdResult = Result<(), CliError>;

fn core(e: csma_core::CsmaError) -> CliError {
    CliError::from_core(e)
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Runtime(format!("{}: {e}", path.display()))
}

fn emit(text: &str) -> CmdResult {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Runtime(format!("stdout: {e}")))
}

fn emit_json<T: Serialize>(value: &T) -> CmdResult {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
    emit(&format!("{text}\n"))
}

/// Parses `all`, a category name, or a comma list of ids and id ranges
/// (`F1,F5`, `F1-F13`).
pub fn parse_functions(spec: &str) -> Result<Vec<BenchmarkId>, CliError> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("all") {
        return Ok(BenchmarkId::all().collect());
    }
    if let Ok(cat) = spec.parse::<Category>() {
        return Ok(list_functions()
            .into_iter()
            .filter(|s| s.category == cat)
            .map(|s| s.id)
            .collect());
    }
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let ids = match part.split_once('-') {
            Some((a, b)) => {
                let a: BenchmarkId = a.trim().parse().map_err(core)?;
                let b: BenchmarkId = b.trim().parse().map_err(core)?;
                if a.number() > b.number() {
                    return Err(CliError::Usage(format!("empty function range `{part}`")));
                }
                (a.number()..=b.number())
                    .map(|n| BenchmarkId::new(n).map_err(core))
                    .collect::<Result<Vec<_>, _>>()?
            }
            None => vec![part.parse().map_err(core)?],
        };
        for id in ids {
            if !out.contains(&id) {
                out.push(id);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("no functions selected".into()));
    }
    Ok(out)
}

fn parse_optimizers(spec: &str) -> Result<Vec<OptimizerKind>, CliError> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let o: OptimizerKind = part.parse().map_err(core)?;
        if !out.contains(&o) {
            out.push(o);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("no optimizers selected".into()));
    }
    Ok(out)
}

fn bounds_text(spec: &BenchmarkSpec) -> String {
    let (lo, hi) = (&spec.lower, &spec.upper);
    if lo.iter().all(|v| *v == lo[0]) && hi.iter().all(|v| *v == hi[0]) {
        format!("[{}, {}]^{}", lo[0], hi[0], spec.dim)
    } else {
        lo.iter()
            .zip(hi)
            .map(|(l, h)| format!("[{l}, {h}]"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

pub fn list(g: &GlobalArgs, category: Option<&str>) -> CmdResult {
    let filter = category.map(|c| c.parse::<Category>().map_err(core)).transpose()?;
    let specs: Vec<BenchmarkSpec> = list_functions()
        .into_iter()
        .filter(|s| filter.is_none_or(|c| s.category == c))
        .collect();
    if g.json {
        return emit_json(&specs);
    }
    let mut text = format!(
        "{:<4} {:<28} {:>3}  {:<20} {:<16} {:>12}\n",
        "id", "name", "dim", "bounds", "category", "optimum"
    );
    for s in &specs {
        text += &format!(
            "{:<4} {:<28} {:>3}  {:<20} {:<16} {:>12}\n",
            s.id.to_string(),
            s.name,
            s.dim,
            bounds_text(s),
            s.category.to_string(),
            format_sci(s.reference_optimum)
        );
    }
    emit(&text)
}

pub fn run(g: &GlobalArgs, file: &FileConfig, args: &RunArgs) -> CmdResult {
    let id: BenchmarkId = args.function.parse().map_err(core)?;
    let spec = get_spec(id);
    let mut config = file.run_config();
    RunOverrides {
        pop_size: args.pop,
        max_iters: args.iters,
        seed: g.seed,
    }
    .apply(&mut config);
    config.validate().map_err(core)?;
    let dim = args.dim.unwrap_or(spec.dim);
    let problem = get_function_with_dim(id, dim, config.seed).map_err(core)?;
    let result = optimize(&problem, &config).map_err(core)?;
    if let Some(path) = &args.out {
        export_trace(&result.trace, path).map_err(core)?;
    }
    let reference = problem.known_optimum();

    if g.json {
        let mut value = json!({
            "function": id,
            "dim": dim,
            "seed": config.seed,
            "pop_size": config.pop_size,
            "max_iters": config.max_iters,
            "best_fitness": result.best_fitness,
            "best_position": result.best_position,
            "evaluations": result.evaluations,
        });
        if args.runs_summary {
            value["reference_optimum"] = json!(reference);
            value["gap"] = json!(reference.map(|r| (result.best_fitness - r).abs()));
        }
        return emit_json(&value);
    }
    let mut text = format!(
        "function      {id} ({})\ndimension     {dim}\nseed          {}\npopulation    {}\niterations    {}\nevaluations   {}\nbest_fitness  {}\n",
        spec.name,
        config.seed,
        config.pop_size,
        config.max_iters,
        result.evaluations,
        format_sci(result.best_fitness),
    );
    if args.runs_summary {
        match reference {
            Some(r) => {
                text += &format!("reference     {}\n", format_sci(r));
                text += &format!("gap           {}\n", format_sci((result.best_fitness - r).abs()));
            }
            None => text += "reference     unknown\n",
        }
    }
    emit(&text)
}

pub fn bench(g: &GlobalArgs, file: &FileConfig, args: &BenchArgs) -> CmdResult {
    let mut config = file.batch_config();
    if let Some(f) = &args.functions {
        config.function_ids = parse_functions(f)?;
    }
    if let Some(o) = &args.optimizers {
        config.optimizers = parse_optimizers(o)?;
    }
    if let Some(r) = args.runs {
        config.runs = r;
    }
    if let Some(s) = g.seed {
        config.base_seed = s;
    }
    RunOverrides {
        pop_size: args.pop,
        max_iters: args.iters,
        seed: None,
    }
    .apply(&mut config.run_config);
    config.validate().map_err(core)?;

    let out = &args.out_dir;
    let traces = out.join("traces");
    fs::create_dir_all(&traces).map_err(|e| io_err(&traces, e))?;

    let outcome = run_batch_detailed(&config).map_err(core)?;
    export_stats(&outcome.table, ExportFormat::Csv, &out.join("stats.csv")).map_err(core)?;
    export_stats(&outcome.table, ExportFormat::Json, &out.join("stats.json")).map_err(core)?;
    for r in &outcome.records {
        let name = format!("{}_{}_run{:02}.csv", r.function_id, r.optimizer, r.run);
        export_trace(&r.result.trace, &traces.join(name)).map_err(core)?;
    }

    if g.json {
        return emit_json(&outcome.table);
    }
    let mut text = format!("{:<4} {:<14} {:>11} {:>11}\n", "id", "optimizer", "Average", "STD");
    for row in &outcome.table.rows {
        text += &format!(
            "{:<4} {:<14} {:>11} {:>11}\n",
            row.function_id.to_string(),
            row.optimizer.to_string(),
            format_sci(row.average),
            format_sci(row.std)
        );
    }
    emit(&text)
}

#[derive(Debug, Serialize)]
struct StatsGroup {
    group: String,
    optimizers: Vec<OptimizerKind>,
    #[serde(flatten)]
    result: FriedmanResult,
}

pub fn stats(g: &GlobalArgs, args: &StatsArgs) -> CmdResult {
    let mut table = StatsTable::default();
    for path in &args.inputs {
        let t = read_stats_json(path).map_err(|e| CliError::Runtime(e.to_string()))?;
        t.verify()
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
        table.merge(t).map_err(core)?;
    }
    let optimizers = table.optimizers();
    if optimizers.len() < 2 {
        return Err(CliError::Usage(format!(
            "rank test needs at least two optimizers, inputs contain {}",
            optimizers.len()
        )));
    }
    let mut functions = table.function_ids();
    if let Some(f) = &args.functions {
        let wanted = parse_functions(f)?;
        functions.retain(|id| wanted.contains(id));
    }
    // Only functions that every optimizer covers can be compared.
    functions.retain(|&f| optimizers.iter().all(|&o| table.row(f, o).is_some()));
    if functions.is_empty() {
        return Err(CliError::Usage("no function has results for every optimizer".into()));
    }

    let groups: Vec<(String, Vec<BenchmarkId>)> = match args.mode {
        StatsMode::PerFunction => functions.iter().map(|f| (f.to_string(), vec![*f])).collect(),
        StatsMode::Category => [Category::Unimodal, Category::Multimodal, Category::FixedDimension]
            .into_iter()
            .filter_map(|c| {
                let ids: Vec<_> = functions
                    .iter()
                    .copied()
                    .filter(|&f| get_spec(f).category == c)
                    .collect();
                (!ids.is_empty()).then(|| (c.to_string(), ids))
            })
            .collect(),
        StatsMode::Pooled => vec![(group_label(&functions), functions.clone())],
    };

    let mut results = Vec::with_capacity(groups.len());
    for (group, ids) in groups {
        let matrix = pooled_matrix(&table, &ids, &optimizers).map_err(core)?;
        let result = friedman_test(&matrix).map_err(core)?;
        results.push(StatsGroup {
            group,
            optimizers: optimizers.clone(),
            result,
        });
    }

    if g.json {
        return emit_json(&results);
    }
    let mut text = format!("{:<10} {:>6}", "group", "blocks");
    for o in &optimizers {
        text += &format!(" {:>14}", o.to_string());
    }
    text += &format!(" {:>11} {:>11}\n", "chi_square", "p_value");
    for r in &results {
        text += &format!("{:<10} {:>6}", r.group, r.result.blocks);
        for rank in &r.result.mean_ranks {
            text += &format!(" {rank:>14.4}");
        }
        text += &format!(
            " {:>11} {:>11}\n",
            format_sci(r.result.chi_square),
            format_sci(r.result.p_value)
        );
    }
    emit(&text)
}

fn group_label(ids: &[BenchmarkId]) -> String {
    match ids {
        [one] => one.to_string(),
        [first, .., last] if ids.windows(2).all(|w| w[1].number() == w[0].number() + 1) => {
            format!("{first}-{last}")
        }
        _ => "pooled".into(),
    }
}

pub fn trace(g: &GlobalArgs, file: &FileConfig, args: &TraceArgs) -> CmdResult {
    let kind: WalkKind = args.kind.parse().map_err(core)?;
    if !(2..=3).contains(&args.dims) {
        return Err(CliError::Usage(format!("--dims must be 2 or 3, got {}", args.dims)));
    }
    let base = file.levy.unwrap_or(LevyParams::new(1.5, 1.0).map_err(core)?);
    let levy = LevyParams::new(args.alpha.unwrap_or(base.alpha()), args.scale.unwrap_or(base.scale())).map_err(core)?;
    let seed = g.seed.or(file.seed).unwrap_or(0);
    let walk = random_walk(kind, args.steps, args.dims, seed, &levy).map_err(core)?;
    match &args.out {
        Some(path) => {
            let f = File::create(path).map_err(|e| io_err(path, e))?;
            let mut w = BufWriter::new(f);
            write_walk_csv(&mut w, &walk)
                .and_then(|_| w.flush())
                .map_err(|e| io_err(path, e))
        }
        None => {
            let mut buf = Vec::new();
            write_walk_csv(&mut buf, &walk).map_err(|e| CliError::Runtime(e.to_string()))?;
            emit(&String::from_utf8_lossy(&buf))
        }
    }
}
