use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use awfk::data::{
    apply_standardization, make_random_dense, split, standardize, Dataset, SplitSpec, Standardization,
};
use awfk::eval::{
    evaluate_with, export_boundary, grid_search, run_benchmark, sensitivity_heatmap, time_gram,
    timing_bench, Axis, BenchmarkConfig, BenchmarkRow, EvalReport, KernelFamily, KernelSearch,
};
use awfk::solver::{read_model, train, write_model, ModelFile};
use awfk::kernels::gram;
use awfk::{AwfkParams, KernelSpec, RbfParams};
use serde_json::{json, Value};

use crate::args::{
    BenchTimeArgs, BenchmarkArgs, BoundaryArgs, GridsearchArgs, HeatmapArgs, KernelName, PredictArgs,
    TrainArgs,
};
use crate::failure::{CliResult, Failure};
use crate::source::{
    describe, kernel_spec, load_dataset, parse_list, parse_range, parse_seeds, solver_config, GammaChoice,
};

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::data(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::data(format!("cannot write {}: {e}", path.display())))
}

fn write_json(path: &Path, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    write_text(path, &text)
}

/// Standardizes `train` and carries its statistics over to `test`.
fn standardize_pair(train: &Dataset, test: &Dataset) -> CliResult<(Dataset, Dataset, Standardization)> {
    let train = standardize(train)?;
    let stats = train.standardization.clone().expect("standardize records statistics");
    let test = apply_standardization(test, &stats)?;
    Ok((train, test, stats))
}

fn gamma_fields(choice: Option<GammaChoice>, spec: &KernelSpec) -> (Value, Value) {
    match (choice, spec) {
        (Some(c), KernelSpec::Rbf(p)) => {
            let source = if c == GammaChoice::Scale { "scale" } else { "fixed" };
            (json!(source), json!(p.gamma()))
        }
        _ => (Value::Null, Value::Null),
    }
}

pub fn train_cmd(a: &TrainArgs) -> CliResult<()> {
    let cfg = solver_config(&a.solver)?;
    if !(a.test_fraction > 0.0 && a.test_fraction < 1.0) {
        return Err(Failure::config(format!(
            "--test-fraction must lie in (0, 1), got {}",
            a.test_fraction
        )));
    }
    let ds = load_dataset(&a.data)?;
    let split_spec = SplitSpec {
        test_fraction: a.test_fraction,
        seed: a.seed,
        stratified: !a.no_stratify,
    };
    let (train_raw, test_raw) = split(&ds, &split_spec)?;
    let (train_ds, test_ds, stats) = if a.no_standardize {
        (train_raw, test_raw, None)
    } else {
        let (tr, te, st) = standardize_pair(&train_raw, &test_raw)?;
        (tr, te, Some(st))
    };
    let (spec, gamma_choice) = kernel_spec(&a.kernel, &train_ds.features)?;
    let (mut report, model) = evaluate_with(&train_ds, &test_ds, &spec, &cfg)?;
    report.split = Some(split_spec);
    let converged = model.meta.converged;

    write_model(&ModelFile { model, standardization: stats }, &a.model)?;
    let (gamma_source, gamma) = gamma_fields(gamma_choice, &spec);
    let mut value = serde_json::to_value(&report).expect("report serializes");
    let obj = value.as_object_mut().expect("report is an object");
    obj.insert("dataset".into(), json!(describe(&a.data)));
    obj.insert("n_train".into(), json!(train_ds.len()));
    obj.insert("n_test".into(), json!(test_ds.len()));
    obj.insert("standardized".into(), json!(!a.no_standardize));
    obj.insert("gamma_source".into(), gamma_source);
    obj.insert("gamma".into(), gamma);
    write_json(&a.report, &value)?;

    println!(
        "{spec}  C={}  accuracy={:.4}  F1(-1)={:.4}  F1(+1)={:.4}  support vectors={}",
        cfg.c,
        report.accuracy,
        report.f1_negative(),
        report.f1_positive(),
        report.n_support
    );
    if !converged {
        return Err(Failure::not_converged(format!(
            "solver stopped at the iteration cap ({}); model and report were written anyway",
            cfg.max_iter
        )));
    }
    Ok(())
}

pub fn predict_cmd(a: &PredictArgs) -> CliResult<()> {
    let file = read_model(&a.model)?;
    let raw = load_dataset(&a.data)?;
    let ds = match &file.standardization {
        Some(stats) => apply_standardization(&raw, stats)?,
        None => raw,
    };
    let dv = file.model.decision_function(&ds.features)?;
    let mut out = String::from("index,score,label\n");
    for (i, (s, l)) in dv.scores.iter().zip(&dv.labels).enumerate() {
        writeln!(out, "{i},{s},{l}").unwrap();
    }
    write_text(&a.output, &out)?;
    let correct = dv.labels.iter().zip(&ds.labels).filter(|(p, y)| p == y).count();
    println!(
        "{} rows scored; accuracy against file labels {:.4}",
        ds.len(),
        correct as f64 / ds.len().max(1) as f64
    );
    Ok(())
}

fn kernel_columns(spec: &KernelSpec) -> String {
    match spec {
        KernelSpec::Awfk(p) => format!("{},{},{},", p.s(), p.lambda(), p.eta()),
        KernelSpec::Rbf(p) => format!(",,,{}", p.gamma()),
    }
}

fn benchmark_row(out: &mut String, seed: &str, r: &EvalReport) {
    writeln!(
        out,
        "{seed},{},{},{},{},{},{},{},{},{},",
        r.spec.name(),
        r.accuracy,
        r.f1_negative(),
        r.f1_positive(),
        r.c,
        kernel_columns(&r.spec),
        r.n_support,
        r.iterations,
        r.converged
    )
    .unwrap();
}

fn mean_of(rows: &[BenchmarkRow], f: impl Fn(&BenchmarkRow) -> f64) -> f64 {
    rows.iter().map(f).sum::<f64>() / rows.len().max(1) as f64
}

pub fn benchmark_cmd(a: &BenchmarkArgs) -> CliResult<()> {
    let seeds = parse_seeds(&a.seeds)?;
    let c_values = parse_list("c-grid", &a.c_grid)?;
    let gammas = parse_list("gamma-grid", &a.gamma_grid)?;
    let mut awfk_axes = Vec::new();
    for (flag, name, grid) in [
        ("s-grid", "s", &a.s_grid),
        ("lambda-grid", "lambda", &a.lambda_grid),
        ("eta-grid", "eta", &a.eta_grid),
    ] {
        if let Some(g) = grid {
            awfk_axes.push(Axis::new(name, parse_list(flag, g)?));
        }
    }
    let cfg = BenchmarkConfig {
        test_fraction: a.test_fraction,
        seeds,
        k_folds: a.k_folds,
        awfk: KernelSearch {
            family: KernelFamily::Awfk(AwfkParams::new(a.s, a.lambda, a.eta)?),
            axes: awfk_axes,
            c_values: c_values.clone(),
        },
        rbf: KernelSearch {
            family: KernelFamily::Rbf(RbfParams::new(gammas[0])?),
            axes: vec![Axis::new("gamma", gammas)],
            c_values,
        },
    };
    if !(a.test_fraction > 0.0 && a.test_fraction < 1.0) {
        return Err(Failure::config("--test-fraction must lie in (0, 1)"));
    }
    let ds = load_dataset(&a.data)?;
    let summary = run_benchmark(&ds, &cfg)?;

    let mut csv = String::from(
        "seed,kernel,accuracy,f1_neg,f1_pos,c,s,lambda,eta,gamma,n_support,iterations,converged,error_rate_reduction\n",
    );
    for row in &summary.rows {
        benchmark_row(&mut csv, &row.seed.to_string(), &row.awfk);
        benchmark_row(&mut csv, &row.seed.to_string(), &row.rbf);
    }
    let rows = &summary.rows;
    let reduction = summary
        .error_rate_reduction
        .map_or(String::new(), |r| r.to_string());
    writeln!(
        csv,
        "mean,awfk,{},{},{},,,,,,,,,{reduction}",
        summary.mean_awfk,
        mean_of(rows, |r| r.awfk.f1_negative()),
        mean_of(rows, |r| r.awfk.f1_positive()),
    )
    .unwrap();
    writeln!(
        csv,
        "mean,rbf,{},{},{},,,,,,,,,",
        summary.mean_rbf,
        mean_of(rows, |r| r.rbf.f1_negative()),
        mean_of(rows, |r| r.rbf.f1_positive()),
    )
    .unwrap();
    write_text(&a.output, &csv)?;

    if let Some(path) = &a.report {
        let per_seed: Vec<Value> = rows
            .iter()
            .map(|r| json!({ "seed": r.seed, "awfk": r.awfk, "rbf": r.rbf }))
            .collect();
        write_json(
            path,
            &json!({
                "dataset": describe(&a.data),
                "rows": per_seed,
                "mean_awfk": summary.mean_awfk,
                "mean_rbf": summary.mean_rbf,
                "awfk_at_least_rbf": summary.awfk_at_least_rbf,
                "error_rate_reduction": summary.error_rate_reduction,
            }),
        )?;
    }

    println!("{:>6}  {:>8}  {:>8}  {:<50}  rbf params", "seed", "awfk", "rbf", "awfk params");
    for r in rows {
        println!(
            "{:>6}  {:>8.4}  {:>8.4}  {:<50}  {} C={}",
            r.seed,
            r.awfk.accuracy,
            r.rbf.accuracy,
            format!("{} C={}", r.awfk.spec, r.awfk.c),
            r.rbf.spec,
            r.rbf.c
        );
    }
    println!("{:>6}  {:>8.4}  {:>8.4}", "mean", summary.mean_awfk, summary.mean_rbf);
    println!(
        "AWFK >= RBF on {}/{} seeds; error-rate reduction {}",
        summary.awfk_at_least_rbf,
        rows.len(),
        summary
            .error_rate_reduction
            .map_or("undefined (RBF error is zero)".into(), |r| format!("{:.1}%", 100.0 * r))
    );
    Ok(())
}

pub fn gridsearch_cmd(a: &GridsearchArgs) -> CliResult<()> {
    let c_values = parse_list("c-grid", &a.c_grid)?;
    let ds = load_dataset(&a.data)?;
    let mut axes = Vec::new();
    for (flag, name, grid) in [
        ("s-grid", "s", &a.s_grid),
        ("lambda-grid", "lambda", &a.lambda_grid),
        ("eta-grid", "eta", &a.eta_grid),
        ("gamma-grid", "gamma", &a.gamma_grid),
    ] {
        if let Some(g) = grid {
            axes.push(Axis::new(name, parse_list(flag, g)?));
        }
    }
    // `--gamma scale` is resolved on the standardized data, matching what
    // every fold trains on.
    let features = if a.kernel.kernel == KernelName::Rbf {
        standardize(&ds)?.features
    } else {
        ds.features.clone()
    };
    let (base, _) = kernel_spec(&a.kernel, &features)?;
    let family = match base {
        KernelSpec::Awfk(p) => KernelFamily::Awfk(p),
        KernelSpec::Rbf(p) => KernelFamily::Rbf(p),
    };
    let grid = grid_search(&ds, &family, &axes, &c_values, a.k_folds, a.seed)?;
    write_text(&a.output, &grid.to_csv())?;
    let best: Vec<String> = grid
        .best_params()
        .iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect();
    println!(
        "{} cells; best mean CV accuracy {:.4} at {}",
        grid.scores.len(),
        grid.best_score(),
        best.join(" ")
    );
    Ok(())
}

pub fn heatmap_cmd(a: &HeatmapArgs) -> CliResult<()> {
    let s_values = parse_list("s-grid", &a.s_grid)?;
    let eta_values = parse_list("eta-grid", &a.eta_grid)?;
    let ds = load_dataset(&a.data)?;
    let grid = sensitivity_heatmap(&ds, &s_values, &eta_values, a.lambda, a.c, a.k_folds, a.seed)?;
    write_text(&a.output, &grid.heatmap_csv())?;
    let (lo, hi) = grid
        .scores
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let best = grid.best_params();
    println!(
        "{}x{} grid; accuracy range [{lo:.4}, {hi:.4}]; best s={} eta={}",
        s_values.len(),
        eta_values.len(),
        best[0].1,
        best[1].1
    );
    Ok(())
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 1.0 };
    (lo - pad, hi + pad)
}

pub fn boundary_cmd(a: &BoundaryArgs) -> CliResult<()> {
    let cfg = solver_config(&a.solver)?;
    let x_range = a.x_range.as_deref().map(|s| parse_range("x-range", s)).transpose()?;
    let y_range = a.y_range.as_deref().map(|s| parse_range("y-range", s)).transpose()?;
    let ds = load_dataset(&a.data)?;
    if ds.dim() != 2 {
        return Err(Failure::config(format!(
            "boundary export needs 2-D data, this dataset has {} features",
            ds.dim()
        )));
    }
    let (train_ds, stats) = if a.no_standardize {
        (ds.clone(), Standardization::identity(2))
    } else {
        let tr = standardize(&ds)?;
        let st = tr.standardization.clone().expect("standardize records statistics");
        (tr, st)
    };
    let (spec, _) = kernel_spec(&a.kernel, &train_ds.features)?;
    let g = gram(&train_ds.features, &spec)?;
    let model = train(&g, &train_ds.labels, &cfg)?;
    let x_range = x_range.unwrap_or_else(|| padded_range(ds.features.iter_rows().map(|r| r[0])));
    let y_range = y_range.unwrap_or_else(|| padded_range(ds.features.iter_rows().map(|r| r[1])));
    let grid = export_boundary(&model, &stats, x_range, y_range, a.resolution)?;
    write_text(&a.output, &grid.to_csv())?;
    let converged = model.meta.converged;
    if let Some(path) = &a.model {
        let standardization = (!a.no_standardize).then_some(stats);
        write_model(&ModelFile { model, standardization }, path)?;
    }
    println!(
        "{spec}: {}x{} nodes over x in [{}, {}], y in [{}, {}]",
        a.resolution, a.resolution, x_range.0, x_range.1, y_range.0, y_range.1
    );
    if !converged {
        return Err(Failure::not_converged(
            "solver stopped at the iteration cap; boundary was written anyway",
        ));
    }
    Ok(())
}

pub fn bench_time_cmd(a: &BenchTimeArgs) -> CliResult<()> {
    let cfg = solver_config(&a.solver)?;
    let ns: Vec<usize> = a
        .n
        .split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Failure::config(format!("--n must be a list of integers >= 1, got '{}'", a.n))),
        })
        .collect::<CliResult<_>>()?;
    if a.dim == 0 {
        return Err(Failure::config("--dim must be >= 1"));
    }
    let mut csv = String::from("n,d,kernel,iterations,n_support,converged\n");
    let mut reports = Vec::new();
    let mut all_converged = true;
    println!("{:>7} {:>4}  {:>10}  {:>10}  {:>8}", "n", "d", "gram_s", "train_s", "SVs");
    for &n in &ns {
        let data = make_random_dense(n, a.dim, a.seed);
        let (spec, _) = kernel_spec(&a.kernel, &data.features)?;
        let mut r = if a.no_train {
            awfk::eval::TimingReport {
                n,
                d: a.dim,
                gram_seconds: f64::INFINITY,
                train_seconds: 0.0,
                iterations: 0,
                n_support: 0,
                converged: true,
            }
        } else {
            timing_bench(n, a.dim, &spec, a.seed, &cfg)?
        };
        let extra = if a.no_train { a.repeats.max(1) } else { a.repeats.saturating_sub(1) };
        if extra > 0 {
            r.gram_seconds = r.gram_seconds.min(time_gram(&data.features, &spec, extra)?);
        }
        all_converged &= r.converged;
        writeln!(csv, "{n},{},{},{},{},{}", a.dim, spec.name(), r.iterations, r.n_support, r.converged).unwrap();
        println!(
            "{n:>7} {:>4}  {:>10.4}  {:>10.4}  {:>8}",
            a.dim, r.gram_seconds, r.train_seconds, r.n_support
        );
        reports.push(r);
    }
    write_text(&a.output, &csv)?;
    if let Some(path) = &a.report {
        write_json(path, &json!({ "seed": a.seed, "runs": reports }))?;
    }
    if !all_converged {
        return Err(Failure::not_converged("at least one training run hit the iteration cap"));
    }
    Ok(())
}
