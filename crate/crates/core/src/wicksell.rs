//! Capital value per worker and its split into a price factor and a
//! physical factor.
//!
//! For capital good `i` in sector `s`, the value per worker is
//! `(p_i / p_j) a_K[i][s] / a_L[s]` and its per-period cost is that value
//! times `delta_i + r`. Along the technique frontier the value changes both
//! through relative prices (the price effect) and through technique
//! switches (the real effect).

use crate::error::{Error, Result};
use crate::format::csv;
use crate::model::Technique;
use crate::price::PriceSystem;
use crate::scalar::Scalar;
use crate::switch::techniques_in_use;

#[derive(Clone, Debug, PartialEq)]
pub struct WicksellDecomposition<T> {
    pub sector: usize,
    pub r: T,
    /// Capital value per worker for each commodity, in numeraire units.
    pub values: Vec<T>,
    /// `(delta_i + r)` times the value.
    pub rental_costs: Vec<T>,
    pub total_value: T,
    pub total_rental_cost: T,
}

pub fn decompose<T: Scalar>(t: &Technique<T>, r: &T, numeraire: usize, sector: usize) -> Result<WicksellDecomposition<T>> {
    let n = t.order();
    if sector >= n {
        return Err(Error::Numeraire { index: sector, n });
    }
    let labor = t.labor[sector].clone();
    if labor.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "sector {} uses no labor; capital per worker is undefined",
            sector + 1
        )));
    }
    let solution = PriceSystem::new(t)?.solve_reduced(r, numeraire)?;
    let values: Vec<T> = (0..n)
        .map(|i| solution.prices[i].clone() * t.capital.get(i, sector).clone() / labor.clone())
        .collect();
    let rental_costs: Vec<T> = values
        .iter()
        .zip(&t.depreciation)
        .map(|(v, d)| (d.clone() + r.clone()) * v.clone())
        .collect();
    let sum = |xs: &[T]| xs.iter().cloned().fold(T::zero(), |a, b| a + b);
    Ok(WicksellDecomposition {
        sector,
        r: r.clone(),
        total_value: sum(&values),
        total_rental_cost: sum(&rental_costs),
        values,
        rental_costs,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CapitalValueSample {
    pub r: f64,
    /// Frontier techniques at `r`; the first one's decomposition is reported.
    pub in_use: Vec<String>,
    pub decomposition: WicksellDecomposition<f64>,
}

impl CapitalValueSample {
    pub fn total_value(&self) -> f64 {
        self.decomposition.total_value
    }
}

/// Capital value per worker in `sector` of the highest-wage technique at
/// each grid rate.
pub fn capital_value_curve<T: Scalar>(
    techs: &[Technique<T>],
    numeraire: usize,
    sector: usize,
    grid: &[f64],
) -> Result<Vec<CapitalValueSample>> {
    let techs: Vec<Technique<f64>> = techs.iter().map(Technique::to_scalar).collect();
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.into_iter()
        .map(|r| {
            let in_use = techniques_in_use(&techs, numeraire, r)?;
            let t = techs.iter().find(|t| t.name == in_use[0]).expect("frontier technique");
            Ok(CapitalValueSample { r, decomposition: decompose(t, &r, numeraire, sector)?, in_use })
        })
        .collect()
}

/// Maximal runs of consecutive samples along which the value strictly
/// increases with `r`, as `(r_start, r_end)` pairs.
pub fn detect_reverse_deepening(curve: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    if curve.len() < 2 {
        return Err(Error::InvalidParameter("at least two samples are needed".into()));
    }
    let mut runs = Vec::new();
    let mut start: Option<usize> = None;
    for k in 0..curve.len() - 1 {
        let rising = curve[k + 1].1 > curve[k].1;
        match (rising, start) {
            (true, None) => start = Some(k),
            (false, Some(s)) => {
                runs.push((curve[s].0, curve[k].0));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((curve[s].0, curve[curve.len() - 1].0));
    }
    Ok(runs)
}

/// `r,in_use,value_per_worker_total,value_1..value_n,rental_cost_1..rental_cost_n`.
pub fn wicksell_csv(samples: &[CapitalValueSample]) -> String {
    let n = samples.first().map_or(0, |s| s.decomposition.values.len());
    let mut s = String::from("r,in_use,value_per_worker_total");
    for i in 1..=n {
        s.push_str(&format!(",value_{i}"));
    }
    for i in 1..=n {
        s.push_str(&format!(",rental_cost_{i}"));
    }
    s.push('\n');
    for sample in samples {
        let d = &sample.decomposition;
        s.push_str(&format!("{},{},{}", csv(sample.r), sample.in_use.join("-"), csv(d.total_value)));
        for x in d.values.iter().chain(&d.rental_costs) {
            s.push(',');
            s.push_str(&csv(*x));
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::price::solve_prices_direct;

    fn single(delta: f64) -> Technique<f64> {
        Technique::new(
            "s",
            vec![1.0],
            Matrix::zeros(1, 1),
            Matrix::from_rows(vec![vec![0.5]]).unwrap(),
            vec![delta],
        )
        .unwrap()
    }

    fn g76() -> Vec<Technique<f64>> {
        let t = |name: &str, l2: f64, k12: f64, k22: f64| {
            Technique::with_capital(
                name,
                vec![1.0, l2],
                Matrix::from_rows(vec![vec![1.0 / 12.0, k12], vec![1.0 / 3.0, k22]]).unwrap(),
            )
            .unwrap()
        };
        vec![
            t("I", 1.0, 1.0 / 6.0, 1.0 / 6.0),
            t("II", 92.0 / 91.0, 137.0 / 546.0, 19.0 / 273.0),
        ]
    }

    #[test]
    fn single_sector_arithmetic() {
        let d = decompose(&single(0.0), &0.1, 0, 0).unwrap();
        assert!((d.values[0] - 0.5).abs() < 1e-15);
        assert!((d.rental_costs[0] - 0.05).abs() < 1e-15);
        let d = decompose(&single(0.0), &0.0, 0, 0).unwrap();
        assert_eq!(d.rental_costs[0], 0.0);
        assert!((d.values[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rental_cost_matches_engine_rentals() {
        let t = &g76()[0];
        let d = decompose(t, &0.1, 0, 0).unwrap();
        let s = solve_prices_direct(t, &0.1, 0).unwrap();
        for i in 0..2 {
            let expected = s.rentals[i] * t.capital.get(i, 0) / t.labor[0];
            assert!((d.rental_costs[i] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_labor_is_undefined() {
        let mut t = single(1.0);
        t.labor[0] = 0.0;
        assert!(decompose(&t, &0.1, 0, 0).is_err());
    }

    #[test]
    fn frontier_switches_change_the_real_component() {
        let curve = capital_value_curve(&g76(), 0, 1, &[0.1, 0.45, 0.9]).unwrap();
        let names: Vec<&str> = curve.iter().map(|c| c.in_use[0].as_str()).collect();
        assert_eq!(names, vec!["I", "II", "I"]);
        // sector 2's physical capital per worker differs between I and II
        let per_worker = |c: &CapitalValueSample| c.decomposition.values[0] / c.decomposition.values[1];
        assert!((per_worker(&curve[0]) - per_worker(&curve[2])).abs() > 0.0);
    }

    #[test]
    fn symmetric_toy_has_constant_value() {
        // equal columns make p2/p1 = 1 at every r
        let t = Technique::with_capital(
            "toy",
            vec![1.0, 1.0],
            Matrix::from_rows(vec![vec![0.2, 0.2], vec![0.3, 0.3]]).unwrap(),
        )
        .unwrap();
        let curve = capital_value_curve(&[t], 0, 0, &[0.0, 0.3, 0.6, 0.9]).unwrap();
        for c in &curve {
            assert!((c.total_value() - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn deepening_runs() {
        let down: Vec<(f64, f64)> = (0..5).map(|k| (k as f64, -(k as f64))).collect();
        assert!(detect_reverse_deepening(&down).unwrap().is_empty());
        let up: Vec<(f64, f64)> = (0..5).map(|k| (k as f64, k as f64)).collect();
        assert_eq!(detect_reverse_deepening(&up).unwrap(), vec![(0.0, 4.0)]);
        let mixed = [(0.0, 1.0), (1.0, 2.0), (2.0, 1.5), (3.0, 1.5), (4.0, 1.7)];
        assert_eq!(detect_reverse_deepening(&mixed).unwrap(), vec![(0.0, 1.0), (3.0, 4.0)]);
        assert!(detect_reverse_deepening(&[(0.0, 1.0)]).is_err());
    }

    #[test]
    fn csv_layout() {
        let curve = capital_value_curve(&g76(), 0, 0, &[0.1]).unwrap();
        let text = wicksell_csv(&curve);
        assert!(text.starts_with("r,in_use,value_per_worker_total,value_1,value_2,rental_cost_1,rental_cost_2\n0.1,I,"));
    }
}
