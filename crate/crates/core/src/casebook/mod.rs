//! Built-in two-sector reswitching examples with their published results.
//!
//! Coefficients are kept exact; decimals such as `0.558720` are stored as
//! the fractions they denote. Every published coefficient is an
//! interest-bearing input, so each case is encoded with `A = 0`, full
//! depreciation and the coefficients in the capital matrix.

mod reproduce;

use std::collections::BTreeMap;

use num_rational::{BigRational, Ratio};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::model::{EconomyModel, Technique, WageTiming};
use crate::scalar::Scalar;

pub use reproduce::{reproduce_table, Cell, Reproduction, Row, TableId, Value};

/// A value as printed, with the number of decimals shown.
#[derive(Clone, Debug, PartialEq)]
pub struct Printed {
    pub value: f64,
    pub decimals: u32,
}

impl Printed {
    pub fn half_ulp(&self) -> f64 {
        0.5 * 10f64.powi(-(self.decimals as i32))
    }
}

fn printed(text: &str) -> Printed {
    let decimals = text.split_once('.').map_or(0, |(_, d)| d.len() as u32);
    Printed { value: text.parse().expect("printed number"), decimals }
}

/// One row of the ratio table: technique II relative to technique I.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub r: Printed,
    /// A published switch point.
    pub switch_point: bool,
    pub wage_ratio: Printed,
    pub p2_ratio: Printed,
    pub rental1_over_wage_ratio: Printed,
    pub rental2_over_wage_ratio: Printed,
    pub in_use: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseStudy {
    pub id: &'static str,
    pub description: &'static str,
    pub model: EconomyModel<BigRational>,
    /// The same techniques with technique-specific capital goods.
    pub blueprint: Option<EconomyModel<BigRational>>,
    /// The pair compared in the published tables.
    pub pair: (&'static str, &'static str),
    /// Per-technique parameter values of a parametric family.
    pub parameters: BTreeMap<String, f64>,
    pub ratio_table: Vec<RatioRow>,
    /// Exact switch points where they are known in closed form.
    pub exact_switch_points: Vec<BigRational>,
    /// Allowed error of each computed switch point against its printed value.
    pub switch_tolerances: Vec<f64>,
    pub notes: Vec<&'static str>,
}

impl CaseStudy {
    pub fn model_f64(&self) -> EconomyModel<f64> {
        self.model.to_scalar()
    }

    pub fn pair_exact(&self) -> (Technique<BigRational>, Technique<BigRational>) {
        let t = |name| self.model.technique(name).expect("pair technique").clone();
        (t(self.pair.0), t(self.pair.1))
    }

    pub fn pair_f64(&self) -> (Technique<f64>, Technique<f64>) {
        let (a, b) = self.pair_exact();
        (a.to_scalar(), b.to_scalar())
    }

    /// Published switch points in table order.
    pub fn printed_switch_points(&self) -> Vec<Printed> {
        self.ratio_table.iter().filter(|r| r.switch_point).map(|r| r.r.clone()).collect()
    }
}

/// Exact value of a printed decimal or fraction such as `0.5205` or `379/423`.
pub fn exact(text: &str) -> Ratio<i64> {
    if let Some((n, d)) = text.split_once('/') {
        return Ratio::new(n.trim().parse().expect("numerator"), d.trim().parse().expect("denominator"));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let scale = 10i64.pow(frac.len() as u32);
    let digits: i64 = format!("{int}{frac}").parse().expect("decimal digits");
    Ratio::new(digits, scale)
}

fn big(text: &str) -> BigRational {
    BigRational::from_ratio(&exact(text))
}

/// Technique with labor row `labor` and capital matrix rows `capital`.
fn technique(name: &str, labor: [&str; 2], capital: [[&str; 2]; 2]) -> Technique<BigRational> {
    Technique::with_capital(
        name,
        labor.iter().map(|x| big(x)).collect(),
        Matrix::from_rows(capital.iter().map(|row| row.iter().map(|x| big(x)).collect()).collect())
            .expect("2x2"),
    )
    .expect("valid dimensions")
}

/// Common first-sector method `(a_L1, a_K11, a_K21)` and a second-sector
/// method `(a_L2, a_K12, a_K22)`.
fn pair_technique(name: &str, first: [&str; 3], second: [&str; 3]) -> Technique<BigRational> {
    technique(
        name,
        [first[0], second[0]],
        [[first[1], second[1]], [first[2], second[2]]],
    )
}

fn goods() -> Vec<String> {
    vec!["good-1".into(), "good-2".into()]
}

fn model(id: &str, commodities: Vec<String>, techniques: Vec<Technique<BigRational>>) -> EconomyModel<BigRational> {
    EconomyModel::new(id, commodities, WageTiming::PostFactum, techniques).expect("consistent case data")
}

fn row(cells: [&str; 5], in_use: &'static str) -> RatioRow {
    let switch_point = cells[0].ends_with('*');
    let value = |s: &str| printed(s.trim_end_matches('*'));
    RatioRow {
        r: value(cells[0]),
        switch_point,
        wage_ratio: value(cells[1]),
        p2_ratio: value(cells[2]),
        rental1_over_wage_ratio: value(cells[3]),
        rental2_over_wage_ratio: value(cells[4]),
        in_use,
    }
}

fn rows(data: &[([&str; 5], &'static str)]) -> Vec<RatioRow> {
    data.iter()
        .map(|(cells, in_use)| row(*cells, in_use))
        .collect()
}

const ONE: &str = "1.000000";

fn switch_row(r: &'static str) -> ([&'static str; 5], &'static str) {
    ([r, ONE, ONE, ONE, ONE], "I-II")
}

fn two_sector_case(
    id: &'static str,
    description: &'static str,
    first: [&str; 3],
    i: [&str; 3],
    ii: [&str; 3],
    table: Vec<([&'static str; 5], &'static str)>,
    switch_tolerances: Vec<f64>,
    notes: Vec<&'static str>,
) -> CaseStudy {
    CaseStudy {
        id,
        description,
        model: model(id, goods(), vec![pair_technique("I", first, i), pair_technique("II", first, ii)]),
        blueprint: None,
        pair: ("I", "II"),
        parameters: BTreeMap::new(),
        ratio_table: rows(&table),
        exact_switch_points: Vec::new(),
        switch_tolerances,
        notes,
    }
}

const GAREGNANI_1970: [(&str, &str, &str, &str, &str); 7] = [
    ("I", "0.000", "0.500", "0.750", "0.833"),
    ("II", "0.250", "2.504", "0.424", "0.839"),
    ("III", "0.500", "3.930", "0.237", "0.845"),
    ("IV", "0.750", "4.834", "0.133", "0.851"),
    ("V", "1.000", "5.478", "0.075", "0.857"),
    ("VI", "1.250", "5.974", "0.042", "0.863"),
    ("VII", "1.505", "6.391", "0.023", "0.868"),
];

fn garegnani_1970() -> CaseStudy {
    // consumption good (sector 1) uses only the capital good; the capital
    // good sector uses one unit of labor
    let techniques: Vec<Technique<BigRational>> = GAREGNANI_1970
        .iter()
        .map(|(name, _, a_l1, a_k1, a_k2)| technique(name, [a_l1, "1"], [["0", "0"], [a_k1, a_k2]]))
        .collect();
    let blueprint = techniques
        .iter()
        .map(|t| {
            t.clone()
                .with_capital_tags(BTreeMap::from([("capital".to_string(), format!("capital-{}", t.name))]))
        })
        .collect();
    let commodities = vec!["consumption".to_string(), "capital".to_string()];
    CaseStudy {
        id: "garegnani1970",
        description: "Seven-member parametric family with one capital good; techniques III and IV compared",
        model: model("garegnani1970", commodities.clone(), techniques),
        blueprint: Some(model("garegnani1970-blueprints", commodities, blueprint)),
        pair: ("III", "IV"),
        parameters: GAREGNANI_1970
            .iter()
            .map(|(name, u, ..)| (name.to_string(), u.parse().expect("parameter")))
            .collect(),
        ratio_table: Vec::new(),
        exact_switch_points: Vec::new(),
        switch_tolerances: Vec::new(),
        notes: vec![
            "Encoded with B = [[0, 0], [a_K1, a_K2]] and labor [a_L1, 1].",
            "The single-starred rows of table 2 are not reproducible from the rounded coefficients; the computed wage crossings lie near r = 0.051 and r = 0.163. They are reported, not asserted.",
            "The printed Paasche/Laspeyres values on the single-starred rows match the opposite in-use assignment more closely than the printed one.",
        ],
    }
}

fn bruno_1966() -> CaseStudy {
    two_sector_case(
        "bruno1966",
        "Two techniques differing in the second sector; more capital-intensive technique reversed",
        ["1.00", "0.00", "0.10"],
        ["0.66", "0.02", "0.30"],
        ["0.01", "0.71", "0.00"],
        vec![
            (["0.250000", "1.010214", "0.925823", "0.989890", "0.916462"], "II"),
            switch_row("0.465809*"),
            (["1.000000", "0.969773", "1.084631", "1.031168", "1.118436"], "I"),
            switch_row("1.668760*"),
            (["1.857000", "1.097942", "0.939496", "0.910794", "0.855688"], "II"),
        ],
        vec![1e-5, 1e-5],
        vec!["Sector order is reversed from the original source so that the common sector comes first."],
    )
}

fn garegnani_1966() -> CaseStudy {
    two_sector_case(
        "garegnani1966",
        "Two techniques with a common first sector and exact fractional coefficients",
        ["8.90", "0.00", "379/423"],
        ["9/50", "1/2", "0.1"],
        ["3/2", "1/4", "5/12"],
        vec![
            (["0.010000", "0.994627", "1.005000", "1.005402", "1.010430"], "I"),
            switch_row("0.100000*"),
            (["0.150068", "1.001467", "0.999320", "0.998575", "0.997896"], "II"),
            switch_row("0.200000*"),
            (["0.250643", "0.991743", "1.001989", "1.008326", "1.010462"], "I"),
        ],
        vec![1e-3, 1e-3],
        vec![
            "At r = 0.150068 the printed wage ratio 1.001467 differs from the computed 1.001425; the other cells of the row agree with the computed 1/1.001425.",
            "At r = 0.250643 the printed rental2/wage ratio 1.010462 differs from the computed 1.010330.",
        ],
    )
}

fn garegnani_1976() -> CaseStudy {
    let mut case = two_sector_case(
        "garegnani1976",
        "Two techniques whose wage curves cross exactly at r = 1/3 and r = 1/2",
        ["1", "1/12", "1/3"],
        ["1.0", "1/6", "1/6"],
        ["92/91", "137/546", "19/273"],
        vec![
            (["0.100000", "0.999785", "1.000363", "1.000215", "1.000579"], "I"),
            switch_row("0.333333*"),
            (["0.450000", "1.000020", "0.999979", "0.999980", "0.999959"], "II"),
            switch_row("0.500000*"),
            (["0.900000", "0.998604", "1.000713", "1.001398", "1.002112"], "I"),
        ],
        vec![1e-9, 1e-9],
        vec!["Switch points are exactly 1/3 and 1/2 and are compared against the fractions."],
    );
    case.exact_switch_points = vec![big("1/3"), big("1/2")];
    case
}

fn sato_1976() -> CaseStudy {
    two_sector_case(
        "sato1976",
        "Two techniques with switch points near r = 0.038 and r = 0.595",
        ["1.00", "0.20", "0.40"],
        ["1.5", "0.4", "0.2"],
        ["1.55", "0.5205", "0.08"],
        vec![
            (["0.000000", "0.999621", "1.000284", "1.000379", "1.000664"], "I"),
            switch_row("0.038000*"),
            (["0.250000", "1.002088", "0.999197", "0.997916", "0.997114"], "II"),
            switch_row("0.595000*"),
            (["0.639000", "0.986951", "1.000263", "1.013222", "1.013489"], "I"),
        ],
        vec![1e-3, 1e-3],
        vec!["The computed switch points are 0.039062 and 0.593389, about 1.1e-3 and 1.6e-3 from the printed values."],
    )
}

fn laibman_nell_1977() -> CaseStudy {
    two_sector_case(
        "laibman-nell1977",
        "Two techniques with switch points at r = 0.2 and r = 0.4",
        ["1.00", "0.10", "1.00"],
        ["0.558720", "0.135872", "0.358720"],
        ["0.567120", "0.261712", "0.117120"],
        vec![
            (["0.100000", "0.999703", "1.000156", "1.000298", "1.000454"], "I"),
            switch_row("0.200000*"),
            (["0.300000", "1.000175", "0.999952", "0.999826", "0.999777"], "II"),
            switch_row("0.400000*"),
            (["0.500000", "0.998454", "1.000132", "1.001548", "1.001680"], "I"),
        ],
        vec![1e-4, 1e-4],
        Vec::new(),
    )
}

fn pertz_1980() -> CaseStudy {
    let i = technique("I", ["0.8", "1.0"], [["0.0", "0.1"], ["0.7", "0.0"]]);
    let ii = technique("II", ["1.3", "0.9"], [["0.0", "0.145"], ["0.5", "0.0"]]);
    let tag = |t: &Technique<BigRational>| {
        t.clone()
            .with_capital_tags(BTreeMap::from([("good-2".to_string(), format!("k-{}", t.name))]))
    };
    CaseStudy {
        id: "pertz1980",
        description: "Two techniques differing in both sectors, each with its own capital goods",
        blueprint: Some(model("pertz1980-blueprints", goods(), vec![tag(&i), tag(&ii)])),
        model: model("pertz1980", goods(), vec![i, ii]),
        pair: ("I", "II"),
        parameters: BTreeMap::new(),
        ratio_table: rows(&[
            (["0.500000", "0.930455", "1.074743", "1.074742", "1.155072"], "I"),
            switch_row("1.170000*"),
            (["1.750000", "1.030747", "0.970167", "0.970170", "0.941227"], "II"),
            switch_row("2.250000*"),
            (["2.500000", "0.887452", "1.126773", "1.126821", "1.269672"], "I"),
        ]),
        exact_switch_points: Vec::new(),
        switch_tolerances: vec![1.5e-2, 5e-3],
        notes: vec![
            "The wage-curve crossings are the roots in (0, R) of 19.25 rho^3 - 33 rho^2 - 250 rho + 500 with rho = 1 + r: r = 1.160251 and r = 2.251689. The first printed value 1.17 is off by about 1e-2.",
            "The techniques differ in both sectors, so the relative prices differ at the crossings: they are not genuine switch points and the price ratios there are not 1.",
            "The printed p2 ratios equal the printed rental1/wage ratios and the printed rental2/wage ratios are their squares; the computed p2 and rental2/wage ratios differ.",
        ],
    }
}

const IDS: [&str; 7] = [
    "garegnani1970",
    "bruno1966",
    "garegnani1966",
    "garegnani1976",
    "sato1976",
    "laibman-nell1977",
    "pertz1980",
];

/// Case ids with one-line descriptions, in a fixed order.
pub fn list_cases() -> Vec<(&'static str, &'static str)> {
    IDS.iter()
        .map(|id| {
            let case = get_case(id).expect("known id");
            (case.id, case.description)
        })
        .collect()
}

pub fn get_case(id: &str) -> Result<CaseStudy> {
    Ok(match id {
        "garegnani1970" => garegnani_1970(),
        "bruno1966" => bruno_1966(),
        "garegnani1966" => garegnani_1966(),
        "garegnani1976" => garegnani_1976(),
        "sato1976" => sato_1976(),
        "laibman-nell1977" => laibman_nell_1977(),
        "pertz1980" => pertz_1980(),
        _ => return Err(Error::UnknownCase(id.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;

    #[test]
    fn exact_parsing() {
        assert_eq!(exact("379/423"), Ratio::new(379, 423));
        assert_eq!(exact("0.558720"), Ratio::new(55872, 100000));
        assert_eq!(exact("1"), Ratio::from_integer(1));
        assert_eq!(exact("0.00"), Ratio::from_integer(0));
        assert_eq!(printed("0.1669").decimals, 4);
    }

    #[test]
    fn seven_cases_round_trip() {
        let list = list_cases();
        assert_eq!(list.len(), 7);
        for (id, description) in list {
            assert!(!description.is_empty());
            assert_eq!(get_case(id).unwrap().id, id);
        }
        assert!(matches!(get_case("nope"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn every_case_validates() {
        for (id, _) in list_cases() {
            for t in &get_case(id).unwrap().model.techniques {
                let report = validate(t);
                assert!(report.valid, "{id} {}: {:?}", t.name, report.messages);
            }
        }
    }

    #[test]
    fn exact_fractions_are_kept() {
        let case = get_case("garegnani1976").unwrap();
        let ii = case.model.technique("II").unwrap();
        assert_eq!(*ii.capital.get(0, 1), BigRational::new(137.into(), 546.into()));
        assert_eq!(ii.labor[1], BigRational::new(92.into(), 91.into()));
        let g66 = get_case("garegnani1966").unwrap();
        assert_eq!(*g66.model.techniques[0].capital.get(1, 0), BigRational::new(379.into(), 423.into()));
    }

    #[test]
    fn garegnani_1970_technique_iii() {
        let case = get_case("garegnani1970").unwrap();
        let t = case.model_f64().technique("III").unwrap().clone();
        assert_eq!(t.labor, vec![3.93, 1.0]);
        assert_eq!(t.capital.row(1), &[0.237, 0.845]);
        assert_eq!(case.parameters["III"], 0.5);
        assert_eq!(case.model.techniques.len(), 7);
    }

    #[test]
    fn bruno_is_reoriented() {
        let t = get_case("bruno1966").unwrap().model_f64();
        // common first sector, second sector differs
        assert_eq!(t.techniques[0].labor[0], 1.0);
        assert_eq!(t.techniques[0].differing_sectors(&t.techniques[1]), vec![1]);
    }
}
