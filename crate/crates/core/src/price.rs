//! Price accounting for a single technique.
//!
//! With prices `p`, wage `w_L` (paid at the end of the period), circulating
//! inputs `A`, capital services `B` and depreciation `delta`, every sector
//! breaks even:
//!
//! ```text
//! p = w_L a0 + p A + p (diag(delta) + r I) B
//! ```
//!
//! The one-step solve works on that system directly; the two-step solve
//! first absorbs `A` into vertically integrated coefficients
//! `a_L = a0 (I - A)^-1`, `A_K = B (I - A)^-1` and then solves
//! `p = w_L a_L [I - (diag(delta) + r I) A_K]^-1`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::format::csv;
use crate::linalg::{leading_principal_minors, max_abs_diff, perron_root, spectral_radius_below_one, Lu, Matrix};
use crate::model::{Technique, WageTiming};
use crate::scalar::{cast, Scalar};

const PERRON_TOL: f64 = 1e-13;
const PERRON_MAX_ITER: usize = 20_000;

#[derive(Clone, Debug, PartialEq)]
pub struct PriceSolution<T> {
    pub r: T,
    pub numeraire: usize,
    /// `p_i / p_j`; the numeraire entry is exactly one.
    pub prices: Vec<T>,
    /// `w_L / p_j`.
    pub real_wage_post: T,
    /// `w_0 / p_j = w_L / ((1 + r) p_j)`.
    pub real_wage_ante: T,
    /// `w_Ki / p_j = p_i (delta_i + r) / p_j`.
    pub rentals: Vec<T>,
    /// `w_Ki / w_L`.
    pub rentals_over_wage: Vec<T>,
}

impl<T: Scalar> PriceSolution<T> {
    pub fn real_wage(&self, timing: WageTiming) -> T {
        match timing {
            WageTiming::PostFactum => self.real_wage_post.clone(),
            WageTiming::AnteFactum => self.real_wage_ante.clone(),
        }
    }

    /// Builds the solution from `p / w_L`.
    fn from_wage_units(r: &T, numeraire: usize, per_wage: Vec<T>, depreciation: &[T]) -> Self {
        let pj = per_wage[numeraire].clone();
        let real_wage_post = T::one() / pj.clone();
        let real_wage_ante = real_wage_post.clone() / (T::one() + r.clone());
        let mut prices: Vec<T> = per_wage.iter().map(|x| x.clone() / pj.clone()).collect();
        prices[numeraire] = T::one();
        let rentals = prices
            .iter()
            .zip(depreciation)
            .map(|(p, d)| p.clone() * (d.clone() + r.clone()))
            .collect();
        let rentals_over_wage = per_wage
            .iter()
            .zip(depreciation)
            .map(|(x, d)| x.clone() * (d.clone() + r.clone()))
            .collect();
        Self {
            r: r.clone(),
            numeraire,
            prices,
            real_wage_post,
            real_wage_ante,
            rentals,
            rentals_over_wage,
        }
    }
}

/// Direct plus indirect requirements of a technique.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegratedTechnique<T> {
    pub a_l: Vec<T>,
    pub a_k: Matrix<T>,
    pub source: Technique<T>,
}

impl<T: Scalar> IntegratedTechnique<T> {
    pub fn order(&self) -> usize {
        self.a_l.len()
    }
}

pub fn vertically_integrate<T: Scalar>(t: &Technique<T>) -> Result<IntegratedTechnique<T>> {
    if t.circulating.is_zero() {
        return Ok(IntegratedTechnique {
            a_l: t.labor.clone(),
            a_k: t.capital.clone(),
            source: t.clone(),
        });
    }
    let n = t.order();
    let leontief = Matrix::identity(n).sub(&t.circulating);
    if let Some((k, m)) = leading_principal_minors(&leontief)
        .into_iter()
        .enumerate()
        .find(|(_, m)| *m <= T::zero())
    {
        return Err(Error::NotViable {
            technique: t.name.clone(),
            matrix: "I - A",
            order: k + 1,
            value: m.lossy_f64(),
        });
    }
    let lu = Lu::factor(leontief)?;
    let a_l = lu.solve_left(&t.labor);
    let a_k = Matrix::from_rows((0..n).map(|i| lu.solve_left(t.capital.row(i))).collect())?;
    Ok(IntegratedTechnique { a_l, a_k, source: t.clone() })
}

/// A technique prepared for repeated solves: integrated coefficients and
/// maximum profit rate computed once.
#[derive(Clone, Debug)]
pub struct PriceSystem<T> {
    integrated: IntegratedTechnique<T>,
    max_profit_rate: f64,
}

impl<T: Scalar> PriceSystem<T> {
    pub fn new(t: &Technique<T>) -> Result<Self> {
        let integrated = vertically_integrate(t)?;
        let max_profit_rate = max_profit_rate_integrated(&integrated)?;
        Ok(Self { integrated, max_profit_rate })
    }

    pub fn technique(&self) -> &Technique<T> {
        &self.integrated.source
    }

    pub fn integrated(&self) -> &IntegratedTechnique<T> {
        &self.integrated
    }

    pub fn max_profit_rate(&self) -> f64 {
        self.max_profit_rate
    }

    pub fn order(&self) -> usize {
        self.integrated.order()
    }

    fn check(&self, r: &T, numeraire: usize) -> Result<()> {
        let n = self.order();
        if numeraire >= n || self.technique().absent[numeraire] {
            return Err(Error::Numeraire { index: numeraire, n });
        }
        let rf = r.lossy_f64();
        if *r < T::zero() {
            return Err(Error::NegativeRate(rf));
        }
        if rf >= self.max_profit_rate {
            return Err(self.out_of_range(rf));
        }
        Ok(())
    }

    fn out_of_range(&self, r: f64) -> Error {
        Error::OutOfRange {
            technique: self.technique().name.clone(),
            r,
            max_profit_rate: self.max_profit_rate,
        }
    }

    fn guard(&self, r: &T, result: Result<Lu<T>>) -> Result<Lu<T>> {
        result.map_err(|e| match e {
            Error::Singular { .. } => self.out_of_range(r.lossy_f64()),
            other => other,
        })
    }

    /// `p / w_L` from the reduced form.
    pub fn prices_per_wage(&self, r: &T, numeraire: usize) -> Result<Vec<T>> {
        self.check(r, numeraire)?;
        let it = &self.integrated;
        let markup: Vec<T> = it.source.depreciation.iter().map(|d| d.clone() + r.clone()).collect();
        let system = Matrix::identity(it.order()).sub(&it.a_k.scale_rows(&markup));
        let lu = self.guard(r, Lu::factor(system))?;
        Ok(lu.solve_left(&it.a_l))
    }

    pub fn solve_reduced(&self, r: &T, numeraire: usize) -> Result<PriceSolution<T>> {
        let per_wage = self.prices_per_wage(r, numeraire)?;
        Ok(PriceSolution::from_wage_units(r, numeraire, per_wage, &self.technique().depreciation))
    }

    pub fn solve_direct(&self, r: &T, numeraire: usize) -> Result<PriceSolution<T>> {
        self.check(r, numeraire)?;
        let t = self.technique();
        let markup: Vec<T> = t.depreciation.iter().map(|d| d.clone() + r.clone()).collect();
        let system = Matrix::identity(t.order())
            .sub(&t.circulating)
            .sub(&t.capital.scale_rows(&markup));
        let lu = self.guard(r, Lu::factor(system))?;
        let per_wage = lu.solve_left(&t.labor);
        Ok(PriceSolution::from_wage_units(r, numeraire, per_wage, &t.depreciation))
    }

    /// `w_L / p_j = 1 / (a_L [I - (1 + r) A_K]^-1 e_j)`.
    pub fn real_wage(&self, r: &T, numeraire: usize) -> Result<T> {
        let per_wage = self.prices_per_wage(r, numeraire)?;
        Ok(T::one() / per_wage[numeraire].clone())
    }

    /// Rentals in numeraire units and relative to the wage, the latter from
    /// `w_K / w_L = a_L [diag(delta + r)^-1 - A_K]^-1`.
    pub fn rental_prices(&self, r: &T, numeraire: usize) -> Result<(Vec<T>, Vec<T>)> {
        let solution = self.solve_reduced(r, numeraire)?;
        let it = &self.integrated;
        let markup: Vec<T> = it.source.depreciation.iter().map(|d| d.clone() + r.clone()).collect();
        if markup.iter().any(Zero::is_zero) {
            return Ok((solution.rentals, solution.rentals_over_wage));
        }
        let n = it.order();
        let system = Matrix::from_fn(n, n, |i, j| {
            let diag = if i == j { T::one() / markup[i].clone() } else { T::zero() };
            diag - it.a_k.get(i, j).clone()
        });
        let lu = self.guard(r, Lu::factor(system))?;
        Ok((solution.rentals, lu.solve_left(&it.a_l)))
    }
}

pub fn solve_prices_direct<T: Scalar>(t: &Technique<T>, r: &T, numeraire: usize) -> Result<PriceSolution<T>> {
    PriceSystem::new(t)?.solve_direct(r, numeraire)
}

pub fn solve_prices_reduced<T: Scalar>(
    t: &IntegratedTechnique<T>,
    r: &T,
    numeraire: usize,
) -> Result<PriceSolution<T>> {
    let system = PriceSystem {
        max_profit_rate: max_profit_rate_integrated(t)?,
        integrated: t.clone(),
    };
    system.solve_reduced(r, numeraire)
}

pub fn real_wage<T: Scalar>(t: &Technique<T>, r: &T, numeraire: usize) -> Result<T> {
    PriceSystem::new(t)?.real_wage(r, numeraire)
}

pub fn rental_prices<T: Scalar>(t: &Technique<T>, r: &T, numeraire: usize) -> Result<(Vec<T>, Vec<T>)> {
    PriceSystem::new(t)?.rental_prices(r, numeraire)
}

/// The rate at which the wage vanishes: `1/lambda - 1` with `lambda` the
/// Perron root of `A_K` when every good depreciates fully. With other
/// depreciation rates it is the `r` where `diag(delta + r) A_K` reaches
/// spectral radius one. Infinite when no capital is used.
pub fn max_profit_rate<T: Scalar>(t: &Technique<T>) -> Result<f64> {
    max_profit_rate_integrated(&vertically_integrate(t)?)
}

fn max_profit_rate_integrated<T: Scalar>(it: &IntegratedTechnique<T>) -> Result<f64> {
    let a_k: Matrix<f64> = it.a_k.map(cast);
    let delta: Vec<f64> = it.source.depreciation.iter().map(Scalar::lossy_f64).collect();
    let first = delta[0];
    if a_k.is_zero() {
        return Ok(f64::INFINITY);
    }
    if delta.iter().all(|d| *d == first) {
        // a slow or failed power iteration falls through to bisection
        if let Ok(lambda) = perron_root(&a_k, PERRON_TOL, PERRON_MAX_ITER) {
            return Ok(if lambda == 0.0 { f64::INFINITY } else { 1.0 / lambda - first });
        }
    }
    let below = |r: f64| {
        let markup: Vec<f64> = delta.iter().map(|d| d + r).collect();
        spectral_radius_below_one(&a_k.scale_rows(&markup))
    };
    let floor = -delta.iter().cloned().fold(f64::INFINITY, f64::min);
    if !below(floor) {
        return Ok(floor);
    }
    let mut hi = 1.0f64.max(floor + 1.0);
    while below(hi) {
        hi *= 2.0;
        if hi > 1e12 {
            return Ok(f64::INFINITY);
        }
    }
    let mut lo = floor;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `p_k (delta + r)`: the per-period cost of a capital good's services.
pub fn user_cost<T: Scalar>(p_k: &T, delta: &T, r: &T) -> Result<T> {
    if *delta < T::zero() || *delta > T::one() {
        return Err(Error::InvalidParameter(format!(
            "depreciation rate {} outside [0, 1]",
            delta.lossy_f64()
        )));
    }
    if *r < T::zero() {
        return Err(Error::NegativeRate(r.lossy_f64()));
    }
    Ok(p_k.clone() * (delta.clone() + r.clone()))
}

/// Max-norm residual of the break-even system for a solution, in numeraire units.
pub fn accounting_residual<T: Scalar>(t: &Technique<T>, solution: &PriceSolution<T>) -> T {
    let r = &solution.r;
    let p = &solution.prices;
    let markup: Vec<T> = t.depreciation.iter().map(|d| d.clone() + r.clone()).collect();
    let capital_cost = t.capital.scale_rows(&markup).vec_mul(p);
    let circulating_cost = t.circulating.vec_mul(p);
    let cost: Vec<T> = (0..t.order())
        .map(|j| {
            solution.real_wage_post.clone() * t.labor[j].clone()
                + circulating_cost[j].clone()
                + capital_cost[j].clone()
        })
        .collect();
    max_abs_diff(p, &cost)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSample<T> {
    pub r: T,
    /// `Err` for grid points outside `[0, R)`.
    pub solution: std::result::Result<PriceSolution<T>, String>,
}

/// Price solutions along an interest-rate grid, sorted by `r`. Points
/// outside the viable range are flagged rather than aborting the curve.
pub fn wage_profit_curve<T: Scalar>(t: &Technique<T>, numeraire: usize, grid: &[T]) -> Result<Vec<CurveSample<T>>> {
    let system = PriceSystem::new(t)?;
    let mut grid = grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(grid
        .into_iter()
        .map(|r| {
            let solution = system.solve_direct(&r, numeraire).map_err(|e| e.to_string());
            CurveSample { r, solution }
        })
        .collect())
}

/// `r,wage_post,wage_ante,p_1..p_n,rental_1..rental_n`; points outside the
/// viable range keep their `r` and leave the other fields empty.
pub fn curve_csv<T: Scalar>(samples: &[CurveSample<T>], n: usize) -> String {
    let mut s = String::from("r,wage_post,wage_ante");
    for i in 1..=n {
        s.push_str(&format!(",p_{i}"));
    }
    for i in 1..=n {
        s.push_str(&format!(",rental_{i}"));
    }
    s.push('\n');
    for sample in samples {
        s.push_str(&csv(sample.r.lossy_f64()));
        match &sample.solution {
            Ok(sol) => {
                let fields = [sol.real_wage_post.clone(), sol.real_wage_ante.clone()]
                    .into_iter()
                    .chain(sol.prices.iter().cloned())
                    .chain(sol.rentals.iter().cloned());
                for x in fields {
                    s.push(',');
                    s.push_str(&csv(x.lossy_f64()));
                }
            }
            Err(_) => s.push_str(&",".repeat(2 + 2 * n)),
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn single(a: f64, b: f64, d: f64) -> Technique<f64> {
        Technique::new(
            "s",
            vec![1.0],
            Matrix::from_rows(vec![vec![a]]).unwrap(),
            Matrix::from_rows(vec![vec![b]]).unwrap(),
            vec![d],
        )
        .unwrap()
    }

    fn garegnani_1976_i<T: Scalar>() -> Technique<T> {
        let q = |n: i64, d: i64| T::from_ratio(&num_rational::Ratio::new(n, d));
        Technique::with_capital(
            "I",
            vec![q(1, 1), q(1, 1)],
            Matrix::from_rows(vec![vec![q(1, 12), q(1, 6)], vec![q(1, 3), q(1, 6)]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn integration_identity_when_no_circulating_inputs() {
        let t = garegnani_1976_i::<f64>();
        let it = vertically_integrate(&t).unwrap();
        assert_eq!(it.a_l, t.labor);
        assert_eq!(it.a_k, t.capital);
    }

    #[test]
    fn integration_single_sector() {
        let it = vertically_integrate(&single(0.2, 0.3, 1.0)).unwrap();
        assert!((it.a_l[0] - 1.25).abs() < 1e-15);
        assert!((it.a_k.get(0, 0) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn integration_rejects_unviable_circulating() {
        let err = vertically_integrate(&single(1.1, 0.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::NotViable { order: 1, .. }), "{err}");
    }

    #[test]
    fn single_sector_wage_at_zero() {
        let s = solve_prices_direct(&single(0.0, 0.5, 1.0), &0.0, 0).unwrap();
        assert!((s.real_wage_post - 0.5).abs() < 1e-15);
        assert_eq!(s.prices, vec![1.0]);
    }

    #[test]
    fn garegnani_1976_at_one_half_exactly() {
        // hand evaluation: D(1.5) = 0.53125, denominator 1.25
        let t = garegnani_1976_i::<BigRational>();
        let half = BigRational::new(1.into(), 2.into());
        let w = real_wage(&t, &half, 0).unwrap();
        assert_eq!(w, BigRational::new(17.into(), 40.into()));
        let s = solve_prices_direct(&garegnani_1976_i::<f64>(), &0.5, 0).unwrap();
        assert!((s.real_wage_post - 0.425).abs() < 1e-14);
    }

    #[test]
    fn reduced_matches_direct() {
        let t = Technique::new(
            "mixed",
            vec![0.6, 1.1],
            Matrix::from_rows(vec![vec![0.1, 0.2], vec![0.15, 0.05]]).unwrap(),
            Matrix::from_rows(vec![vec![0.2, 0.1], vec![0.3, 0.25]]).unwrap(),
            vec![0.4, 1.0],
        )
        .unwrap();
        let it = vertically_integrate(&t).unwrap();
        for r in [0.0f64, 0.05, 0.1] {
            let d = solve_prices_direct(&t, &r, 1usize).unwrap();
            let q = solve_prices_reduced(&it, &r, 1).unwrap();
            assert!((d.real_wage_post - q.real_wage_post).abs() < 1e-12 * d.real_wage_post);
            assert!(max_abs_diff(&d.prices, &q.prices) < 1e-12);
            assert!(accounting_residual(&t, &d) < 1e-12);
        }
    }

    #[test]
    fn rentals_identities() {
        let t = single(0.0, 0.5, 1.0);
        let (rentals, over_wage) = rental_prices(&t, &0.05, 0).unwrap();
        assert!((rentals[0] - 1.05).abs() < 1e-15);
        let w = real_wage(&t, &0.05, 0).unwrap();
        assert!((over_wage[0] - rentals[0] / w).abs() < 1e-12);
        let s = solve_prices_direct(&t, &0.05, 0).unwrap();
        assert!((s.real_wage_ante - s.real_wage_post / 1.05).abs() < 1e-15);
    }

    #[test]
    fn max_profit_rates() {
        assert!((max_profit_rate(&single(0.0, 0.5, 1.0)).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(max_profit_rate(&single(0.2, 0.0, 1.0)).unwrap(), f64::INFINITY);
        // uniform delta = 0: R = 1/lambda
        assert!((max_profit_rate(&single(0.0, 0.5, 0.0)).unwrap() - 2.0).abs() < 1e-12);
        // mixed depreciation: check that the system is singular at R
        let t = Technique::new(
            "mixed",
            vec![1.0, 1.0],
            Matrix::zeros(2, 2),
            Matrix::from_rows(vec![vec![0.2, 0.1], vec![0.3, 0.25]]).unwrap(),
            vec![0.4, 1.0],
        )
        .unwrap();
        let r = max_profit_rate(&t).unwrap();
        let system = Matrix::identity(2).sub(&t.capital.scale_rows(&[0.4 + r, 1.0 + r]));
        assert!(crate::linalg::determinant(&system).abs() < 1e-10);
    }

    #[test]
    fn out_of_range_reports_max_rate() {
        let t = single(0.0, 0.5, 1.0);
        match solve_prices_direct(&t, &1.0, 0) {
            Err(Error::OutOfRange { max_profit_rate, .. }) => assert!((max_profit_rate - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(matches!(solve_prices_direct(&t, &-0.1, 0), Err(Error::NegativeRate(_))));
        assert!(matches!(solve_prices_direct(&t, &0.1, 3), Err(Error::Numeraire { .. })));
    }

    #[test]
    fn user_costs() {
        assert!((user_cost(&1.0f64, &1.0, &0.05).unwrap() - 1.05).abs() < 1e-15);
        assert!((user_cost(&1.0f64, &0.0, &0.1).unwrap() - 0.1).abs() < 1e-15);
        assert!((user_cost(&2.0f64, &0.5, &0.25).unwrap() - 1.5).abs() < 1e-15);
        assert!(user_cost(&1.0f64, &1.5, &0.1).is_err());
    }

    #[test]
    fn curve_flags_points_beyond_r_max() {
        let curve = wage_profit_curve(&single(0.0, 0.5, 1.0), 0, &[1.0, 0.5, 0.0]).unwrap();
        let r: Vec<f64> = curve.iter().map(|c| c.r).collect();
        assert_eq!(r, vec![0.0, 0.5, 1.0]);
        assert!((curve[0].solution.as_ref().unwrap().real_wage_post - 0.5).abs() < 1e-15);
        assert!((curve[1].solution.as_ref().unwrap().real_wage_post - 0.25).abs() < 1e-15);
        assert!(curve[2].solution.is_err());
        let text = curve_csv(&curve, 1);
        assert_eq!(text, "r,wage_post,wage_ante,p_1,rental_1\n0,0.5,0.5,1,1\n0.5,0.25,0.166666666667,1,1.5\n1,,,,\n");
    }

    #[test]
    fn garegnani_1976_curve_oracle() {
        // closed form: D(rho) / (1 + rho/6) with D = 1 - rho/4 + (1/72 - 1/18) rho^2
        let oracle = |r: f64| {
            let rho = 1.0 + r;
            (1.0 - 0.25 * rho - (1.0 / 24.0) * rho * rho) / (1.0 + rho / 6.0)
        };
        let grid = [0.1, 1.0 / 3.0, 0.45, 0.5, 0.9];
        let curve = wage_profit_curve(&garegnani_1976_i::<f64>(), 0, &grid).unwrap();
        for sample in &curve {
            let w = sample.solution.as_ref().unwrap().real_wage_post;
            assert!((w - oracle(sample.r)).abs() < 1e-14);
        }
        assert!((oracle(1.0 / 3.0) - 0.48485).abs() < 5e-6);
        assert!((oracle(0.5) - 0.425).abs() < 1e-15);
    }
}
