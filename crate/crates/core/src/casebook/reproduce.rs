//! Recomputes the published tables of a case and compares cell by cell.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::{get_case, printed, CaseStudy, Printed};
use crate::error::{Error, Result};
use crate::format::csv;
use crate::model::Technique;
use crate::price::{max_profit_rate, PriceSolution, PriceSystem};
use crate::scalar::Scalar;
use crate::switch::{
    cost_index, delta_wage, find_switch_candidates, implied_interest_rate, paasche_laspeyres, ratio_curves,
    switch_factor_prices_square, techniques_in_use, SwitchOptions,
};

/// Largest `|w_a - w_b|` accepted at a computed switch point.
pub const ROOT_RESIDUAL: f64 = 1e-12;
/// Non-starred ratio cells.
pub const RATIO_TOLERANCE: f64 = 1e-5;
/// Ratio cells at a switch point, against 1.
pub const SWITCH_RATIO_TOLERANCE: f64 = 1e-6;
pub const FACTOR_PRICE_TOLERANCE: f64 = 1e-3;
pub const COST_RATIO_TOLERANCE: f64 = 5e-5;
pub const FIGURE_GRID: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    FactorPrices,
    Ratios,
    TechniquesInUse,
    Figure,
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(Self::FactorPrices),
            "4" => Ok(Self::Ratios),
            "5" => Ok(Self::TechniquesInUse),
            "fig4" => Ok(Self::Figure),
            _ => Err(Error::InvalidParameter(format!("unknown table `{s}`; expected 2, 4, 5 or fig4"))),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::FactorPrices => "2",
            Self::Ratios => "4",
            Self::TechniquesInUse => "5",
            Self::Figure => "fig4",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Number(f64),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Number(x) => Some(*x),
            Value::Text(_) => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Value::Number(x) => csv(*x),
            Value::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub column: String,
    pub computed: Value,
    pub printed: Option<Value>,
    pub deviation: Option<f64>,
    pub tolerance: Option<f64>,
    /// Whether the cell counts towards the pass/fail verdict.
    pub asserted: bool,
    pub pass: bool,
}

impl Cell {
    fn number(column: &str, computed: f64, expected: f64, tolerance: f64, asserted: bool) -> Self {
        let deviation = (computed - expected).abs();
        Cell {
            column: column.into(),
            computed: Value::Number(computed),
            printed: Some(Value::Number(expected)),
            deviation: Some(deviation),
            tolerance: Some(tolerance),
            asserted,
            pass: deviation <= tolerance,
        }
    }

    fn text(column: &str, computed: String, expected: &str, asserted: bool) -> Self {
        Cell {
            column: column.into(),
            pass: computed == expected,
            computed: Value::Text(computed),
            printed: Some(Value::Text(expected.into())),
            deviation: None,
            tolerance: None,
            asserted,
        }
    }

    fn report(column: &str, computed: Value) -> Self {
        Cell {
            column: column.into(),
            computed,
            printed: None,
            deviation: None,
            tolerance: None,
            asserted: false,
            pass: true,
        }
    }

    /// `computed` on the expected side of 1.
    fn side_of_one(column: &str, computed: f64, below: bool) -> Self {
        Cell {
            column: column.into(),
            computed: Value::Number(computed),
            printed: Some(Value::Text(if below { "<1" } else { ">1" }.into())),
            deviation: Some((computed - 1.0).abs()),
            tolerance: None,
            asserted: true,
            pass: if below { computed < 1.0 } else { computed > 1.0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub label: String,
    pub cells: Vec<Cell>,
}

impl Row {
    pub fn pass(&self) -> bool {
        self.cells.iter().all(|c| !c.asserted || c.pass)
    }

    pub fn cell(&self, column: &str) -> Option<&Cell> {
        self.cells.iter().find(|c| c.column == column)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reproduction {
    pub case: String,
    pub table: TableId,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

impl Reproduction {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(Row::pass)
    }

    /// `(row label, column)` of every asserted cell out of tolerance.
    pub fn failures(&self) -> Vec<(String, String)> {
        self.rows
            .iter()
            .flat_map(|row| {
                row.cells
                    .iter()
                    .filter(|c| c.asserted && !c.pass)
                    .map(move |c| (row.label.clone(), c.column.clone()))
            })
            .collect()
    }

    pub fn asserted_count(&self) -> usize {
        self.rows.iter().flat_map(|r| &r.cells).filter(|c| c.asserted).count()
    }

    /// `row` then `<col>,<col>_printed,<col>_deviation` per column, then `pass`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("row");
        if let Some(first) = self.rows.first() {
            for c in &first.cells {
                s.push_str(&format!(",{0},{0}_printed,{0}_deviation", c.column));
            }
        }
        s.push_str(",pass\n");
        for row in &self.rows {
            s.push_str(&row.label);
            for c in &row.cells {
                s.push(',');
                s.push_str(&c.computed.render());
                s.push(',');
                s.push_str(&c.printed.as_ref().map_or(String::new(), Value::render));
                s.push(',');
                s.push_str(&c.deviation.map_or(String::new(), csv));
            }
            s.push_str(if row.pass() { ",true\n" } else { ",false\n" });
        }
        s
    }
}

pub fn reproduce_table(id: &str, table: TableId) -> Result<Reproduction> {
    let case = get_case(id)?;
    let inapplicable = || Error::InapplicableTable { case: id.to_string(), table: table.to_string() };
    let rows = match table {
        TableId::FactorPrices if case.id == "garegnani1970" => factor_price_table(&case)?,
        TableId::Ratios if !case.ratio_table.is_empty() => ratio_table(&case)?,
        TableId::TechniquesInUse if case.id == "garegnani1976" => techniques_in_use_table(&case)?,
        TableId::Figure if case.id == "garegnani1976" => figure_table(&case)?,
        _ => return Err(inapplicable()),
    };
    Ok(Reproduction {
        case: case.id.to_string(),
        table,
        rows,
        notes: case.notes.iter().map(|s| s.to_string()).collect(),
    })
}

fn check(column: &str, computed: f64, expected: &Printed, tolerance: f64, asserted: bool) -> Cell {
    Cell::number(column, computed, expected.value, tolerance, asserted)
}

const RATIO_COLUMNS: [&str; 4] = ["wage_ratio", "p2_ratio", "rental1_over_wage_ratio", "rental2_over_wage_ratio"];

/// Wage, p2, rental1/wage and rental2/wage ratios of the second technique to
/// the first, exactly when `r` is given as a fraction.
fn ratio_values(case: &CaseStudy, r: RateArg) -> Result<[f64; 4]> {
    let point = match r {
        RateArg::Float(r) => {
            let (a, b) = case.pair_f64();
            let p = ratio_curves(&a, &b, 0, &r)?;
            [p.wage_ratio, p.price_ratios[1], p.rental_over_wage_ratios[0], p.rental_over_wage_ratios[1]]
        }
        RateArg::Exact(r) => {
            let (a, b) = case.pair_exact();
            let p = ratio_curves(&a, &b, 0, &r)?;
            [
                p.wage_ratio.lossy_f64(),
                p.price_ratios[1].lossy_f64(),
                p.rental_over_wage_ratios[0].lossy_f64(),
                p.rental_over_wage_ratios[1].lossy_f64(),
            ]
        }
    };
    Ok(point)
}

enum RateArg {
    Float(f64),
    Exact(BigRational),
}

fn in_use(techs: &[Technique<f64>], r: f64) -> Result<String> {
    Ok(techniques_in_use(techs, 0, r)?.join("-"))
}

fn ratio_table(case: &CaseStudy) -> Result<Vec<Row>> {
    let (a, b) = case.pair_f64();
    let pair = [a.clone(), b.clone()];
    let roots: Vec<f64> = find_switch_candidates(&a, &b, 0, &SwitchOptions::default())?
        .into_iter()
        .filter(|c| !c.tangential)
        .map(|c| c.r_star)
        .collect();
    let mut rows = Vec::new();
    let mut k = 0;
    for expected in &case.ratio_table {
        if !expected.switch_point {
            let r = expected.r.value;
            let values = ratio_values(case, RateArg::Float(r))?;
            let printed = [
                &expected.wage_ratio,
                &expected.p2_ratio,
                &expected.rental1_over_wage_ratio,
                &expected.rental2_over_wage_ratio,
            ];
            let mut cells = vec![
                check("r", r, &expected.r, 0.0, false),
                Cell::report("wage_gap", Value::Number(delta_wage(&a, &b, 0, &r)?.abs())),
            ];
            for ((column, value), p) in RATIO_COLUMNS.iter().zip(values).zip(printed) {
                cells.push(check(column, value, p, RATIO_TOLERANCE, true));
            }
            cells.push(Cell::text("in_use", in_use(&pair, r)?, expected.in_use, true));
            rows.push(Row { label: format!("r={}", csv(r)), cells });
            continue;
        }

        let label = format!("switch {}", k + 1);
        let tolerance = case.switch_tolerances[k];
        let Some(&root) = roots.get(k) else {
            let mut cells = vec![Cell::number("r", f64::NAN, expected.r.value, tolerance, true)];
            cells.push(Cell::number("wage_gap", f64::NAN, 0.0, ROOT_RESIDUAL, true));
            for column in RATIO_COLUMNS {
                cells.push(Cell::number(column, f64::NAN, 1.0, SWITCH_RATIO_TOLERANCE, true));
            }
            cells.push(Cell::text("in_use", String::new(), expected.in_use, true));
            rows.push(Row { label, cells });
            k += 1;
            continue;
        };
        // compare against the exact fraction where one is known
        let (target, rate) = match case.exact_switch_points.get(k) {
            Some(q) => (q.lossy_f64(), RateArg::Exact(q.clone())),
            None => (expected.r.value, RateArg::Float(root)),
        };
        let mut cells = vec![
            Cell::number("r", root, target, tolerance, true),
            Cell::number("wage_gap", delta_wage(&a, &b, 0, &root)?.abs(), 0.0, ROOT_RESIDUAL, true),
        ];
        for (column, value) in RATIO_COLUMNS.iter().zip(ratio_values(case, rate)?) {
            cells.push(Cell::number(column, value, 1.0, SWITCH_RATIO_TOLERANCE, true));
        }
        cells.push(Cell::text("in_use", in_use(&pair, root)?, expected.in_use, true));
        rows.push(Row { label, cells });
        k += 1;
    }
    Ok(rows)
}

/// Unit cost of sector 1 with `weights`' coefficients at `not_in_use`'s
/// prices over that at `in_use`'s prices, both in wage units.
fn cost_ratio(weights: &PriceSystem<f64>, not_in_use: &PriceSolution<f64>, in_use: &PriceSolution<f64>) -> f64 {
    let it = weights.integrated();
    (cost_index(it, not_in_use, 0) / not_in_use.real_wage_post) / (cost_index(it, in_use, 0) / in_use.real_wage_post)
}

struct FactorPriceRow {
    label: &'static str,
    wage: &'static str,
    r: [&'static str; 2],
    rental: [&'static str; 2],
    rental_over_wage: [&'static str; 2],
    in_use: &'static str,
    paasche: &'static str,
    laspeyres: &'static str,
}

const FACTOR_PRICE_ROWS: [FactorPriceRow; 3] = [
    FactorPriceRow {
        label: "crossing high r",
        wage: "0.041",
        r: ["0.169", "0.169"],
        rental: ["3.544", "6.045"],
        rental_over_wage: ["86.439", "147.447"],
        in_use: "IV",
        paasche: "1.495",
        laspeyres: "1.590",
    },
    FactorPriceRow {
        label: "common factor prices",
        wage: "0.1669",
        r: ["0.0416", "0.0351"],
        rental: ["1.451", "1.451"],
        rental_over_wage: ["8.692", "8.692"],
        in_use: "III-IV",
        paasche: "1.000",
        laspeyres: "1.000",
    },
    FactorPriceRow {
        label: "crossing low r",
        wage: "0.169",
        r: ["0.041", "0.041"],
        rental: ["1.422", "1.219"],
        rental_over_wage: ["8.414", "7.215"],
        in_use: "III",
        paasche: "1.005",
        laspeyres: "1.027",
    },
];

/// Techniques III and IV of the parametric family: the common factor-price
/// point is asserted, the wage-curve crossings are reported.
fn factor_price_table(case: &CaseStudy) -> Result<Vec<Row>> {
    let (iii, iv) = case.pair_f64();
    let systems = [PriceSystem::new(&iii)?, PriceSystem::new(&iv)?];
    let names = ["III", "IV"];
    let mut crossings: Vec<f64> = find_switch_candidates(&iii, &iv, 0, &SwitchOptions::default())?
        .into_iter()
        .filter(|c| !c.tangential)
        .map(|c| c.r_star)
        .collect();
    crossings.sort_by(f64::total_cmp);

    let mut rows = Vec::new();
    for expected in &FACTOR_PRICE_ROWS {
        let common = expected.in_use.contains('-');
        let asserted = common;
        let (rates, wage) = if common {
            let square = switch_factor_prices_square(&[iii.clone(), iv.clone()], 0)?;
            let rates = [
                implied_interest_rate(&iii, 0, square.wage)?,
                implied_interest_rate(&iv, 0, square.wage)?,
            ];
            (rates, square.wage)
        } else {
            let r = if expected.label.contains("high") { crossings.last() } else { crossings.first() };
            let r = *r.ok_or_else(|| Error::InvalidParameter("no wage-curve crossing found".into()))?;
            ([r, r], systems[0].real_wage(&r, 0)?)
        };
        let solutions = [systems[0].solve_reduced(&rates[0], 0)?, systems[1].solve_reduced(&rates[1], 0)?];
        let tol = FACTOR_PRICE_TOLERANCE;
        let mut cells = vec![check("wage", wage, &printed(expected.wage), tol, asserted)];
        for t in 0..2 {
            cells.push(check(&format!("r_{}", names[t]), rates[t], &printed(expected.r[t]), tol, asserted));
        }
        for t in 0..2 {
            let rental = solutions[t].rentals[1];
            cells.push(check(&format!("rental_{}", names[t]), rental, &printed(expected.rental[t]), tol, asserted));
        }
        for t in 0..2 {
            let ratio = solutions[t].rentals_over_wage[1];
            let p = printed(expected.rental_over_wage[t]);
            cells.push(check(&format!("rental_over_wage_{}", names[t]), ratio, &p, tol, asserted));
        }
        let computed_in_use = if common {
            let gap = (solutions[0].real_wage_post - solutions[1].real_wage_post).abs();
            if gap < 1e-9 { "III-IV".to_string() } else { names[usize::from(solutions[1].real_wage_post > solutions[0].real_wage_post)].to_string() }
        } else {
            in_use(&[iii.clone(), iv.clone()], rates[0])?
        };
        cells.push(Cell::text("in_use", computed_in_use, expected.in_use, asserted));
        // at the crossings the indexes are taken with the printed in-use technique
        let u = if expected.in_use == "IV" { 1 } else { 0 };
        let nu = 1 - u;
        let paasche = cost_ratio(&systems[nu], &solutions[nu], &solutions[u]);
        let laspeyres = cost_ratio(&systems[u], &solutions[nu], &solutions[u]);
        cells.push(check("paasche", paasche, &printed(expected.paasche), tol, asserted));
        cells.push(check("laspeyres", laspeyres, &printed(expected.laspeyres), tol, asserted));
        rows.push(Row { label: expected.label.to_string(), cells });
    }
    Ok(rows)
}

struct CostRow {
    r: &'static str,
    rentals_over_wage: [&'static str; 2],
    in_use: &'static str,
    /// Per cent.
    cost_ratio: &'static str,
}

const COST_ROWS: [CostRow; 6] = [
    CostRow { r: "0.40", rentals_over_wage: ["0.99998", "0.99996"], in_use: "II", cost_ratio: "100.001" },
    CostRow { r: "1/3", rentals_over_wage: ["1.00000", "1.00000"], in_use: "I-II", cost_ratio: "100.00" },
    CostRow { r: "1/2", rentals_over_wage: ["1.00000", "1.00000"], in_use: "I-II", cost_ratio: "100.00" },
    CostRow { r: "0.1", rentals_over_wage: ["1.00022", "1.00058"], in_use: "I", cost_ratio: "100.02" },
    CostRow { r: "0.65", rentals_over_wage: ["1.00022", "1.00058"], in_use: "I", cost_ratio: "100.02" },
    CostRow { r: "0.90", rentals_over_wage: ["1.00140", "1.00211"], in_use: "I", cost_ratio: "100.14" },
];

fn percent(text: &str) -> Printed {
    let p = printed(text);
    Printed { value: p.value / 100.0, decimals: p.decimals + 2 }
}

/// Cost ratios of the technique not in use: asserted. The rental/wage ratio
/// columns are reported; the printed row shared by r = 0.1 and r = 0.65
/// only fits the first rate.
fn techniques_in_use_table(case: &CaseStudy) -> Result<Vec<Row>> {
    let pair = {
        let (a, b) = case.pair_f64();
        [a, b]
    };
    let mut rows = Vec::new();
    for expected in &COST_ROWS {
        let exact = expected.r.contains('/');
        let (r, rentals, cost) = if exact {
            let q = BigRational::from_ratio(&super::exact(expected.r));
            let (a, b) = case.pair_exact();
            let point = ratio_curves(&a, &b, 0, &q)?;
            let idx = paasche_laspeyres(&a, &b, &q, 0, 0)?;
            (
                q.lossy_f64(),
                [point.rental_over_wage_ratios[0].lossy_f64(), point.rental_over_wage_ratios[1].lossy_f64()],
                idx.paasche.lossy_f64(),
            )
        } else {
            let r: f64 = expected.r.parse().expect("rate");
            let point = ratio_curves(&pair[0], &pair[1], 0, &r)?;
            let idx = paasche_laspeyres(&pair[0], &pair[1], &r, 0, 0)?;
            (r, [point.rental_over_wage_ratios[0], point.rental_over_wage_ratios[1]], idx.paasche)
        };
        let mut cells = Vec::new();
        for (i, p) in expected.rentals_over_wage.iter().enumerate() {
            let p = printed(p);
            cells.push(check(&format!("rental{}_over_wage_ratio", i + 1), rentals[i], &p, p.half_ulp(), false));
        }
        cells.push(Cell::report("r", Value::Number(r)));
        cells.push(Cell::text("in_use", in_use(&pair, r)?, expected.in_use, true));
        cells.push(check("cost_ratio", cost, &percent(expected.cost_ratio), COST_RATIO_TOLERANCE, true));
        rows.push(Row { label: format!("r={}", expected.r), cells });
    }
    Ok(rows)
}

/// Both rental/wage ratio curves on a uniform grid over `[0, R)`: below 1
/// between the switch points, above 1 outside, exactly 1 at them.
fn figure_table(case: &CaseStudy) -> Result<Vec<Row>> {
    let (a, b) = case.pair_f64();
    let r_max = max_profit_rate(&a)?.min(max_profit_rate(&b)?);
    let switches: Vec<f64> = case.exact_switch_points.iter().map(Scalar::lossy_f64).collect();
    let (lo, hi) = (switches[0], switches[1]);
    let columns = ["rental1_over_wage_ratio", "rental2_over_wage_ratio"];
    let mut rows = Vec::new();
    for k in 0..FIGURE_GRID {
        let r = r_max * k as f64 / FIGURE_GRID as f64;
        let values = ratio_values(case, RateArg::Float(r))?;
        let mut cells = vec![Cell::report("r", Value::Number(r))];
        let near = switches.iter().any(|s| (r - s).abs() < 1e-9);
        for (i, column) in columns.iter().enumerate() {
            let x = values[2 + i];
            cells.push(if near {
                Cell::number(column, x, 1.0, SWITCH_RATIO_TOLERANCE, true)
            } else {
                Cell::side_of_one(column, x, r > lo && r < hi)
            });
        }
        rows.push(Row { label: format!("grid {k}"), cells });
    }
    for q in &case.exact_switch_points {
        let values = ratio_values(case, RateArg::Exact(q.clone()))?;
        let mut cells = vec![Cell::report("r", Value::Number(q.lossy_f64()))];
        for (i, column) in columns.iter().enumerate() {
            cells.push(Cell::number(column, values[2 + i], 1.0, 0.0, true));
        }
        rows.push(Row { label: format!("switch r={q}"), cells });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_ids_parse() {
        for s in ["2", "4", "5", "fig4"] {
            assert_eq!(s.parse::<TableId>().unwrap().to_string(), s);
        }
        assert!("3".parse::<TableId>().is_err());
    }

    #[test]
    fn inapplicable_combinations() {
        for (id, table) in [
            ("garegnani1970", TableId::Ratios),
            ("bruno1966", TableId::FactorPrices),
            ("sato1976", TableId::TechniquesInUse),
            ("pertz1980", TableId::Figure),
        ] {
            assert!(matches!(reproduce_table(id, table), Err(Error::InapplicableTable { .. })), "{id} {table}");
        }
        assert!(matches!(reproduce_table("x", TableId::Ratios), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn ratio_row_at_045() {
        let rep = reproduce_table("garegnani1976", TableId::Ratios).unwrap();
        let row = rep.rows.iter().find(|r| r.label == "r=0.45").unwrap();
        let got: Vec<f64> = RATIO_COLUMNS
            .iter()
            .map(|c| row.cell(c).unwrap().computed.as_f64().unwrap())
            .collect();
        for (x, want) in got.iter().zip([1.000020, 0.999979, 0.999980, 0.999959]) {
            assert!((x - want).abs() < 1e-6, "{x} vs {want}");
        }
        assert_eq!(row.cell("in_use").unwrap().computed, Value::Text("II".into()));
        assert!(rep.pass(), "{:?}", rep.failures());
    }

    #[test]
    fn exact_switch_rows_are_one() {
        let rep = reproduce_table("garegnani1976", TableId::Ratios).unwrap();
        for row in rep.rows.iter().filter(|r| r.label.starts_with("switch")) {
            for c in RATIO_COLUMNS {
                assert_eq!(row.cell(c).unwrap().computed, Value::Number(1.0));
            }
        }
    }

    #[test]
    fn common_factor_price_row() {
        let rep = reproduce_table("garegnani1970", TableId::FactorPrices).unwrap();
        let row = &rep.rows[1];
        let get = |c: &str| row.cell(c).unwrap().computed.as_f64().unwrap();
        assert!((get("wage") - 0.16694).abs() < 1e-5);
        assert!((get("rental_III") - 1.45112).abs() < 1e-5);
        assert!((get("rental_III") - get("rental_IV")).abs() < 1e-9);
        assert!((get("rental_over_wage_III") - 0.904 / 0.104).abs() < 1e-9);
        assert!(row.pass());
        // crossings are reported only
        assert!(rep.rows[0].cells.iter().all(|c| !c.asserted));
    }

    #[test]
    fn cost_ratio_rows() {
        let rep = reproduce_table("garegnani1976", TableId::TechniquesInUse).unwrap();
        assert!(rep.pass(), "{:?}", rep.failures());
        let cost = |label: &str| {
            rep.rows.iter().find(|r| r.label == label).unwrap().cell("cost_ratio").unwrap().computed.as_f64().unwrap()
        };
        assert_eq!(cost("r=1/3"), 1.0);
        assert!((cost("r=0.90") - 1.0014).abs() < 5e-5);
    }

    #[test]
    fn figure_sign_pattern() {
        let rep = reproduce_table("garegnani1976", TableId::Figure).unwrap();
        assert_eq!(rep.rows.len(), FIGURE_GRID + 2);
        assert!(rep.pass(), "{:?}", rep.failures());
    }

    #[test]
    fn csv_has_deviation_columns() {
        let text = reproduce_table("laibman-nell1977", TableId::Ratios).unwrap().to_csv();
        let header = text.lines().next().unwrap();
        assert!(header.starts_with("row,r,r_printed,r_deviation,wage_gap,"));
        assert!(header.ends_with(",in_use,in_use_printed,in_use_deviation,pass"));
        assert_eq!(text.lines().count(), 6);
    }
}
