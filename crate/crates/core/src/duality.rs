//! Cost minimization against revenue maximization for one technique.
//!
//! With `A_T = [a_L; A_K]` (labor row stacked over the integrated capital
//! matrix), factor prices `w* = (w_L, w_K)`, final outputs `f` and input
//! endowments `v = A_T f`, equilibrium prices satisfy `p = w* A_T`, and
//! total factor cost `w* v` equals revenue `p f`. The factor prices are the
//! shadow prices of the endowments.

use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, Lu, Matrix};
use crate::model::Technique;
use crate::price::{vertically_integrate, IntegratedTechnique, PriceSystem};
use crate::scalar::Scalar;

/// `[a_L; A_K]`, an `(n + 1) x n` matrix.
pub fn integrated_matrix<T: Scalar>(it: &IntegratedTechnique<T>) -> Matrix<T> {
    let n = it.order();
    Matrix::from_fn(n + 1, n, |i, j| {
        if i == 0 {
            it.a_l[j].clone()
        } else {
            it.a_k.get(i - 1, j).clone()
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualPair<T> {
    pub a_t: Matrix<T>,
    /// `(w_L, w_K1, ..., w_Kn)` in numeraire units.
    pub w_star: Vec<T>,
    pub p: Vec<T>,
    pub f: Vec<T>,
    pub v: Vec<T>,
    pub r: T,
    pub numeraire: usize,
    pub technique: Technique<T>,
}

fn check_outputs<T: Scalar>(f: &[T], n: usize) -> Result<()> {
    if f.len() != n {
        return Err(Error::Dimension(format!("final output vector has {} entries, expected {n}", f.len())));
    }
    if f.iter().any(|x| *x < T::zero()) {
        return Err(Error::InvalidParameter("final outputs must be nonnegative".into()));
    }
    if f.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidParameter("final output vector is zero".into()));
    }
    Ok(())
}

/// Builds the equilibrium pair at `r` from the two-step price solve.
pub fn dual_pair<T: Scalar>(t: &Technique<T>, r: &T, numeraire: usize, f: &[T]) -> Result<DualPair<T>> {
    check_outputs(f, t.order())?;
    let system = PriceSystem::new(t)?;
    let solution = system.solve_reduced(r, numeraire)?;
    let a_t = integrated_matrix(system.integrated());
    let w_star: Vec<T> = std::iter::once(solution.real_wage_post.clone())
        .chain(solution.rentals.iter().cloned())
        .collect();
    let v = a_t.mul_vec(f);
    Ok(DualPair {
        a_t,
        w_star,
        p: solution.prices,
        f: f.to_vec(),
        v,
        r: r.clone(),
        numeraire,
        technique: t.clone(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityGap<T> {
    pub cost: T,
    pub revenue: T,
    pub gap: T,
}

impl<T: Scalar> DualityGap<T> {
    /// `|gap| / max(|cost|, |revenue|)`.
    pub fn relative(&self) -> f64 {
        let scale = self.cost.magnitude().lossy_f64().max(self.revenue.magnitude().lossy_f64());
        if scale == 0.0 {
            0.0
        } else {
            self.gap.magnitude().lossy_f64() / scale
        }
    }
}

pub fn duality_gap<T: Scalar>(t: &Technique<T>, r: &T, numeraire: usize, f: &[T]) -> Result<DualityGap<T>> {
    let pair = dual_pair(t, r, numeraire, f)?;
    let cost = crate::linalg::dot(&pair.w_star, &pair.v);
    let revenue = crate::linalg::dot(&pair.p, &pair.f);
    Ok(DualityGap { gap: cost.clone() - revenue.clone(), cost, revenue })
}

/// Max-norm residuals of the stationarity conditions, each divided by
/// `max(1, |reference|)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StationarityReport {
    /// `p - w* A_T`.
    pub price_residual: f64,
    /// `v - A_T f`.
    pub quantity_residual: f64,
    /// Output multipliers from the normal equations of `A_T l = v`, against `f`.
    pub output_multiplier_residual: f64,
    /// Factor-price multipliers from the one-step solve, against `w*`.
    pub price_multiplier_residual: f64,
}

impl StationarityReport {
    pub fn max_residual(&self) -> f64 {
        self.price_residual
            .max(self.quantity_residual)
            .max(self.output_multiplier_residual)
            .max(self.price_multiplier_residual)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() < tol
    }
}

fn scaled<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    let scale = b.iter().fold(1.0f64, |m, x| m.max(x.magnitude().lossy_f64()));
    max_abs_diff(a, b).lossy_f64() / scale
}

pub fn stationarity_check<T: Scalar>(pair: &DualPair<T>) -> Result<StationarityReport> {
    let n = pair.p.len();
    if n == 0
        || pair.a_t.rows() != n + 1
        || pair.a_t.cols() != n
        || pair.w_star.len() != n + 1
        || pair.f.len() != n
        || pair.v.len() != n + 1
    {
        return Err(Error::Dimension(format!(
            "dual pair shapes disagree: A_T {}x{}, w* {}, p {n}, f {}, v {}",
            pair.a_t.rows(),
            pair.a_t.cols(),
            pair.w_star.len(),
            pair.f.len(),
            pair.v.len()
        )));
    }
    let price_residual = scaled(&pair.a_t.vec_mul(&pair.w_star), &pair.p);
    let quantity_residual = scaled(&pair.a_t.mul_vec(&pair.f), &pair.v);

    let at_t = pair.a_t.transpose();
    let normal = at_t.matmul(&pair.a_t);
    let lambda_c = Lu::factor(normal)?.solve(&at_t.mul_vec(&pair.v));
    let output_multiplier_residual = scaled(&lambda_c, &pair.f);

    let direct = PriceSystem::new(&pair.technique)?.solve_direct(&pair.r, pair.numeraire)?;
    let lambda_r: Vec<T> = std::iter::once(direct.real_wage_post)
        .chain(direct.rentals)
        .collect();
    let price_multiplier_residual = scaled(&lambda_r, &pair.w_star);

    Ok(StationarityReport {
        price_residual,
        quantity_residual,
        output_multiplier_residual,
        price_multiplier_residual,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShadowPrice {
    /// 0 for labor, `i + 1` for capital good `i`.
    pub input: usize,
    pub predicted: f64,
    pub finite_difference: f64,
    pub relative_error: f64,
}

/// Compares each factor price with the change in minimum cost `C(v) = w* v`
/// when endowment `k` grows by `eps`, the cost being priced with factor
/// prices from the one-step solve.
pub fn shadow_price_check<T: Scalar>(
    t: &Technique<T>,
    r: &T,
    numeraire: usize,
    f: &[T],
    eps: f64,
) -> Result<Vec<ShadowPrice>> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("step {eps} must be positive")));
    }
    let pair = dual_pair(t, r, numeraire, f)?;
    let tf: Technique<f64> = t.to_scalar();
    let direct = PriceSystem::new(&tf)?.solve_direct(&r.lossy_f64(), numeraire)?;
    let prices: Vec<f64> = std::iter::once(direct.real_wage_post).chain(direct.rentals).collect();
    let v: Vec<f64> = pair.v.iter().map(Scalar::lossy_f64).collect();
    let cost = |v: &[f64]| crate::linalg::dot(&prices, v);
    let base = cost(&v);
    Ok((0..v.len())
        .map(|k| {
            let mut bumped = v.clone();
            bumped[k] += eps;
            let finite_difference = (cost(&bumped) - base) / eps;
            let predicted = pair.w_star[k].lossy_f64();
            let relative_error = if predicted == 0.0 {
                finite_difference.abs()
            } else {
                ((finite_difference - predicted) / predicted).abs()
            };
            ShadowPrice { input: k, predicted, finite_difference, relative_error }
        })
        .collect())
}

/// The integrated matrix of a technique, for callers without a price solve.
pub fn technique_matrix<T: Scalar>(t: &Technique<T>) -> Result<Matrix<T>> {
    Ok(integrated_matrix(&vertically_integrate(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    fn single() -> Technique<f64> {
        Technique::with_capital("s", vec![1.0], Matrix::from_rows(vec![vec![0.5]]).unwrap()).unwrap()
    }

    fn g76_i<T: Scalar>() -> Technique<T> {
        let q = |n: i64, d: i64| T::from_ratio(&Ratio::new(n, d));
        Technique::with_capital(
            "I",
            vec![q(1, 1), q(1, 1)],
            Matrix::from_rows(vec![vec![q(1, 12), q(1, 6)], vec![q(1, 3), q(1, 6)]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn stacked_rows() {
        let m = technique_matrix(&single()).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1.0], vec![0.5]]);
        let m = technique_matrix(&g76_i::<f64>()).unwrap();
        assert_eq!(m.row(0), &[1.0, 1.0]);
        assert_eq!(m.row(2), &[1.0 / 3.0, 1.0 / 6.0]);
    }

    #[test]
    fn single_sector_books_balance() {
        let g = duality_gap(&single(), &0.0, 0, &[1.0]).unwrap();
        assert!((g.cost - 1.0).abs() < 1e-15);
        assert!((g.revenue - 1.0).abs() < 1e-15);
        assert!(duality_gap(&single(), &0.0, 0, &[0.0]).is_err());
        assert!(duality_gap(&single(), &0.0, 0, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn exact_gap_vanishes() {
        let t = g76_i::<BigRational>();
        let r = BigRational::new(1.into(), 2.into());
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::from_integer(0.into());
        let g = duality_gap(&t, &r, 0, &[one, zero]).unwrap();
        assert_eq!(g.gap, BigRational::from_integer(0.into()));
        let g = duality_gap(&g76_i::<f64>(), &0.5, 0, &[1.0, 0.0]).unwrap();
        assert!(g.relative() < 1e-12);
    }

    #[test]
    fn stationarity_and_perturbation() {
        let pair = dual_pair(&g76_i::<f64>(), &0.3, 0, &[1.0, 2.0]).unwrap();
        let report = stationarity_check(&pair).unwrap();
        assert!(report.passes(1e-12), "{report:?}");
        let mut bad = pair.clone();
        bad.w_star[1] += 1e-3;
        let report = stationarity_check(&bad).unwrap();
        // p residual = 1e-3 * largest entry of A_K's first row
        assert!((report.price_residual - 1e-3 / 6.0).abs() < 1e-12);
        assert!(!report.passes(1e-12));
        let mut broken = pair;
        broken.w_star.pop();
        assert!(matches!(stationarity_check(&broken), Err(Error::Dimension(_))));
    }

    #[test]
    fn shadow_prices_by_finite_differences() {
        let checks = shadow_price_check(&g76_i::<f64>(), &0.2, 0, &[1.0, 1.0], 1e-6).unwrap();
        assert_eq!(checks.len(), 3);
        for c in checks {
            assert!(c.relative_error < 1e-4, "{c:?}");
        }
    }
}
