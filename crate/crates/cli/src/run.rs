use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use reswitch_core::casebook::{get_case, list_cases, reproduce_table, TableId};
use reswitch_core::duality::{duality_gap, dual_pair, shadow_price_check, stationarity_check};
use reswitch_core::format::sig;
use reswitch_core::switch::{
    analyze_switches, frontier_csv, ratio_csv, ratio_curves, switch_csv, technique_frontier, techniques_in_use,
    SwitchOptions,
};
use reswitch_core::wicksell::{capital_value_curve, wicksell_csv};
use reswitch_core::{
    augment_blueprints, curve_csv, max_profit_rate, parse_model_file, validate, wage_profit_curve, Error, Model64,
    PriceSystem, Technique64, WageTiming,
};

use crate::args::{Command, Common, Grid, Input, Timing};

/// A bad invocation rather than a failed computation.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::UnknownCase(_) | Error::InapplicableTable { .. } | Error::Numeraire { .. }) => 2,
        _ => 1,
    }
}

/// Resolves an output path against `RESWITCH_OUTPUT_DIR` when it is relative.
fn output_path(path: &Path) -> PathBuf {
    match std::env::var_os("RESWITCH_OUTPUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            let path = output_path(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
            }
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn load(input: &Input) -> Result<Model64> {
    match (&input.source.model, &input.source.case) {
        (Some(path), None) => Ok(parse_model_file(path)?),
        (None, Some(id)) => {
            let case = get_case(id)?;
            if input.blueprints {
                let Some(blueprint) = &case.blueprint else {
                    return Err(usage(format!("case `{id}` has no technique-specific variant")));
                };
                Ok(blueprint.to_scalar())
            } else {
                Ok(case.model_f64())
            }
        }
        _ => Err(usage("give exactly one of --model and --case")),
    }
}

fn technique<'a>(model: &'a Model64, name: &str) -> Result<&'a Technique64> {
    model.technique(name).ok_or_else(|| {
        let names: Vec<&str> = model.techniques.iter().map(|t| t.name.as_str()).collect();
        usage(format!("no technique `{name}` in model `{}` (have: {})", model.name, names.join(", ")))
    })
}

fn numeraire(model: &Model64, common: &Common) -> Result<usize> {
    let n = model.order();
    if common.numeraire == 0 || common.numeraire > n {
        return Err(usage(format!("--numeraire must be between 1 and {n}")));
    }
    Ok(common.numeraire - 1)
}

fn timing(model: &Model64, common: &Common) -> WageTiming {
    match common.timing {
        Some(Timing::Post) => WageTiming::PostFactum,
        Some(Timing::Ante) => WageTiming::AnteFactum,
        None => model.wage_timing,
    }
}

/// Inclusive grid, with the upper end pulled below `r_limit`.
fn grid(g: &Grid, r_limit: f64) -> Result<Vec<f64>> {
    if g.samples < 1 {
        return Err(usage("--samples must be at least 1"));
    }
    if !(g.r_min >= 0.0) {
        return Err(usage("--r-min must be nonnegative"));
    }
    let below = if r_limit.is_finite() { r_limit * (1.0 - 1e-9) } else { f64::INFINITY };
    let mut hi = match g.r_max {
        Some(x) => x,
        None if r_limit.is_finite() => below,
        None => 1.0,
    };
    if hi >= r_limit {
        eprintln!("warning: --r-max {hi} clamped below the maximum profit rate {r_limit}");
        hi = below;
    }
    if hi < g.r_min {
        return Err(usage(format!("empty grid: r-min {} exceeds r-max {hi}", g.r_min)));
    }
    if g.samples == 1 {
        return Ok(vec![g.r_min]);
    }
    let m = g.samples - 1;
    Ok((0..=m).map(|k| g.r_min + (hi - g.r_min) * k as f64 / m as f64).collect())
}

/// The pair over a common commodity space when their capital goods differ.
fn comparable(model: &Model64, a: &str, b: &str) -> Result<(Technique64, Technique64)> {
    let (ta, tb) = (technique(model, a)?, technique(model, b)?);
    if ta.capital_tags.is_empty() && tb.capital_tags.is_empty() {
        return Ok((ta.clone(), tb.clone()));
    }
    let aug = augment_blueprints(&model.commodities, ta, tb)?;
    Ok((aug.a, aug.b))
}

fn human_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().enumerate().map(|(c, x)| format!("{x:<w$}", w = widths[c])).collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

fn num(x: f64) -> String {
    sig(x, 6)
}

pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::ListCases => {
            let mut s = String::new();
            for (id, description) in list_cases() {
                s.push_str(&format!("{id}\t{description}\n"));
            }
            emit(&s, None)?;
            Ok(0)
        }

        Command::Validate { input, export } => {
            let model = load(&input)?;
            let mut rows = vec![vec!["technique".into(), "valid".into(), "hawkins_simon".into(), "R".into(), "messages".into()]];
            let mut ok = true;
            for t in &model.techniques {
                let report = validate(t);
                ok &= report.valid;
                rows.push(vec![
                    t.name.clone(),
                    report.valid.to_string(),
                    report.hawkins_simon.to_string(),
                    report.max_profit_rate.map_or("-".into(), num),
                    report.messages.join("; "),
                ]);
            }
            emit(&human_table(&rows), None)?;
            if let Some(path) = export {
                let mut text = model.to_json();
                text.push('\n');
                emit(&text, Some(&path))?;
            }
            Ok(if ok { 0 } else { 1 })
        }

        Command::Solve { input, technique: name, r, common } => {
            let model = load(&input)?;
            let t = technique(&model, &name)?;
            let j = numeraire(&model, &common)?;
            let solution = PriceSystem::new(t)?.solve_reduced(&r, j)?;
            let timing = timing(&model, &common);
            let label = match timing {
                WageTiming::PostFactum => "post",
                WageTiming::AnteFactum => "ante",
            };
            let mut s = format!(
                "technique {}  r {}  numeraire {}\nR {}\nreal wage ({label}) {}\nwage_post {}\nwage_ante {}\n\n",
                t.name,
                num(r),
                model.commodities[j],
                num(max_profit_rate(t)?),
                num(solution.real_wage(timing)),
                num(solution.real_wage_post),
                num(solution.real_wage_ante),
            );
            let mut rows = vec![vec!["commodity".into(), "price".into(), "rental".into(), "rental/wage".into()]];
            for (i, c) in model.commodities.iter().enumerate() {
                rows.push(vec![
                    c.clone(),
                    num(solution.prices[i]),
                    num(solution.rentals[i]),
                    num(solution.rentals_over_wage[i]),
                ]);
            }
            s.push_str(&human_table(&rows));
            emit(&s, common.output.as_deref())?;
            Ok(0)
        }

        Command::Curve { input, technique: name, grid: g, common } => {
            let model = load(&input)?;
            let t = technique(&model, &name)?;
            let j = numeraire(&model, &common)?;
            let rs = grid(&g, max_profit_rate(t)?)?;
            let samples = wage_profit_curve(t, j, &rs)?;
            emit(&curve_csv(&samples, model.order()), common.output.as_deref())?;
            Ok(0)
        }

        Command::Switch { input, pair, tolerance, scan_points, common } => {
            let model = load(&input)?;
            let j = numeraire(&model, &common)?;
            let (a, b) = comparable(&model, &pair.tech_a, &pair.tech_b)?;
            if scan_points < 2 {
                return Err(usage("--scan-points must be at least 2"));
            }
            let options = SwitchOptions { samples: scan_points, ..SwitchOptions::default() };
            let reports = analyze_switches(&a, &b, j, &options, tolerance)?;
            emit(&switch_csv(&reports), common.output.as_deref())?;
            Ok(0)
        }

        Command::Frontier { input, ratios, tech_a, tech_b, grid: g, common } => {
            let model = load(&input)?;
            let j = numeraire(&model, &common)?;
            if ratios {
                let (a, b) = match (tech_a, tech_b) {
                    (Some(a), Some(b)) => comparable(&model, &a, &b)?,
                    _ => bail!(usage("--ratios needs --tech-a and --tech-b")),
                };
                let rs = grid(&g, max_profit_rate(&a)?.min(max_profit_rate(&b)?))?;
                let pair = [a.clone(), b.clone()];
                let mut points = Vec::with_capacity(rs.len());
                for r in rs {
                    points.push((ratio_curves(&a, &b, j, &r)?, techniques_in_use(&pair, j, r)?.join("-")));
                }
                emit(&ratio_csv(&points, j), common.output.as_deref())?;
            } else {
                let r_limit = model
                    .techniques
                    .iter()
                    .map(max_profit_rate)
                    .collect::<reswitch_core::Result<Vec<f64>>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                let rs = grid(&g, r_limit)?;
                emit(&frontier_csv(&technique_frontier(&model.techniques, j, &rs)?), common.output.as_deref())?;
            }
            Ok(0)
        }

        Command::Wicksell { input, sector, grid: g, common } => {
            let model = load(&input)?;
            let j = numeraire(&model, &common)?;
            if sector == 0 || sector > model.order() {
                return Err(usage(format!("--sector must be between 1 and {}", model.order())));
            }
            let r_limit = model
                .techniques
                .iter()
                .map(max_profit_rate)
                .collect::<reswitch_core::Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let rs = grid(&g, r_limit)?;
            let curve = capital_value_curve(&model.techniques, j, sector - 1, &rs)?;
            emit(&wicksell_csv(&curve), common.output.as_deref())?;
            Ok(0)
        }

        Command::Duality { input, technique: name, r, outputs, eps, common } => {
            let model = load(&input)?;
            let t = technique(&model, &name)?;
            let j = numeraire(&model, &common)?;
            let f = outputs.unwrap_or_else(|| vec![1.0; model.order()]);
            if f.len() != model.order() {
                return Err(usage(format!("--outputs needs {} values", model.order())));
            }
            let gap = duality_gap(t, &r, j, &f)?;
            let stationarity = stationarity_check(&dual_pair(t, &r, j, &f)?)?;
            let shadows = shadow_price_check(t, &r, j, &f, eps)?;
            let mut s = format!(
                "technique {}  r {}  numeraire {}\ncost w*v {}\nrevenue p*f {}\nrelative gap {}\n\n",
                t.name,
                num(r),
                model.commodities[j],
                num(gap.cost),
                num(gap.revenue),
                num(gap.relative()),
            );
            s.push_str(&human_table(&[
                vec!["stationarity".into(), "residual".into()],
                vec!["price".into(), num(stationarity.price_residual)],
                vec!["quantity".into(), num(stationarity.quantity_residual)],
                vec!["output multipliers".into(), num(stationarity.output_multiplier_residual)],
                vec!["price multipliers".into(), num(stationarity.price_multiplier_residual)],
            ]));
            s.push('\n');
            let mut rows = vec![vec!["input".into(), "factor price".into(), "finite difference".into(), "relative error".into()]];
            for c in &shadows {
                let input = if c.input == 0 { "labor".to_string() } else { model.commodities[c.input - 1].clone() };
                rows.push(vec![input, num(c.predicted), num(c.finite_difference), num(c.relative_error)]);
            }
            s.push_str(&human_table(&rows));
            emit(&s, common.output.as_deref())?;
            Ok(0)
        }

        Command::Reproduce { case, table, output } => {
            let table: TableId = table.parse().map_err(|e: Error| usage(e.to_string()))?;
            let rep = reproduce_table(&case, table)?;
            emit(&rep.to_csv(), output.as_deref())?;
            let failures = rep.failures();
            if failures.is_empty() {
                eprintln!("{case} table {table}: all {} asserted cells pass", rep.asserted_count());
                Ok(0)
            } else {
                eprintln!("{case} table {table}: {} of {} asserted cells out of tolerance", failures.len(), rep.asserted_count());
                for (row, column) in failures {
                    eprintln!("  {row}: {column}");
                }
                Ok(1)
            }
        }
    }
}
