//! Factor prices at switch points: square solves, coefficient differences,
//! case classification and the cost-plane intersection.

use crate::error::{Error, Result};
use crate::linalg::{Lu, Matrix};
use crate::model::Technique;
use crate::price::{vertically_integrate, IntegratedTechnique, PriceSystem};
use crate::scalar::Scalar;

/// Commodities used as capital goods by any of the techniques.
fn capital_inputs<T: Scalar>(techs: &[IntegratedTechnique<T>]) -> Vec<usize> {
    let n = techs[0].order();
    (0..n)
        .filter(|&i| techs.iter().any(|t| t.a_k.row(i).iter().any(|x| !x.is_zero())))
        .collect()
}

fn integrate_all<T: Scalar>(techs: &[Technique<T>]) -> Result<Vec<IntegratedTechnique<T>>> {
    let first = techs
        .first()
        .ok_or_else(|| Error::InvalidParameter("no techniques given".into()))?;
    techs
        .iter()
        .map(|t| {
            if t.order() != first.order() {
                return Err(Error::Dimension(format!(
                    "technique `{}` has order {}, expected {}",
                    t.name,
                    t.order(),
                    first.order()
                )));
            }
            vertically_integrate(t)
        })
        .collect()
}

/// Factor prices in units of the focused sector's output.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareSolution<T> {
    pub sector: usize,
    pub wage: T,
    /// One entry per commodity; zero for goods not used as capital.
    pub rentals: Vec<T>,
    pub rentals_over_wage: Vec<T>,
}

/// The unique factor-price point at which every technique's unit cost in
/// `sector` equals one: `[w, w_K] M = 1` where column `t` of `M` holds
/// technique `t`'s labor and capital coefficients for the sector. Needs as
/// many techniques as inputs (labor plus capital goods).
pub fn switch_factor_prices_square<T: Scalar>(techs: &[Technique<T>], sector: usize) -> Result<SquareSolution<T>> {
    let its = integrate_all(techs)?;
    let n = its[0].order();
    if sector >= n {
        return Err(Error::Numeraire { index: sector, n });
    }
    let goods = capital_inputs(&its);
    if goods.len() + 1 != its.len() {
        return Err(Error::NotSquare(format!(
            "{} techniques for {} inputs (labor and {} capital goods)",
            its.len(),
            goods.len() + 1,
            goods.len()
        )));
    }
    let m = Matrix::from_fn(its.len(), its.len(), |row, t| {
        if row == 0 {
            its[t].a_l[sector].clone()
        } else {
            its[t].a_k.get(goods[row - 1], sector).clone()
        }
    });
    let lu = Lu::factor(m).map_err(|_| Error::CoincidentTechniques)?;
    let x = lu.solve_left(&vec![T::one(); its.len()]);
    let wage = x[0].clone();
    let mut rentals = vec![T::zero(); n];
    let mut rentals_over_wage = vec![T::zero(); n];
    for (g, &i) in goods.iter().enumerate() {
        rentals[i] = x[g + 1].clone();
        rentals_over_wage[i] = x[g + 1].clone() / wage.clone();
    }
    Ok(SquareSolution { sector, wage, rentals, rentals_over_wage })
}

/// Interest rate at which a technique pays the given real wage, by
/// bisection on its decreasing wage curve.
pub fn implied_interest_rate<T: Scalar>(t: &Technique<T>, numeraire: usize, wage: f64) -> Result<f64> {
    let system = PriceSystem::new(&t.to_scalar::<f64>())?;
    // the solve is refused very close to R, where the wage is ~0 anyway
    let w = |r: f64| system.real_wage(&r, numeraire).or_else(|e| if r > 0.0 { Ok(0.0) } else { Err(e) });
    let w0 = w(0.0)?;
    if wage > w0 || wage <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "wage {wage} outside (0, {w0}] for technique `{}`",
            t.name
        )));
    }
    let r_max = system.max_profit_rate();
    let (mut lo, mut hi) = (0.0, if r_max.is_finite() { r_max * (1.0 - 1e-9) } else { 1e6 });
    if w(hi)? > wage {
        return Err(Error::InvalidParameter(format!("wage {wage} not reached below R = {r_max}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if w(mid)? > wage {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Rentals over the wage implied by cost equality in `sector` between a base
/// technique and one alternative per capital good. With coefficient
/// differences `dL_t`, `dK_it` the system `y dK = -dL` is normalized by its
/// diagonal into `y (I - D) = c`, `c_t = -dL_t / dK_tt`,
/// `D_it = -dK_it / dK_tt`. Returned per commodity, zero for non-capital goods.
pub fn rentals_from_differences<T: Scalar>(
    base: &Technique<T>,
    alternatives: &[Technique<T>],
    sector: usize,
) -> Result<Vec<T>> {
    let mut all = vec![base.clone()];
    all.extend_from_slice(alternatives);
    let its = integrate_all(&all)?;
    let n = its[0].order();
    if sector >= n {
        return Err(Error::Numeraire { index: sector, n });
    }
    let goods = capital_inputs(&its);
    let k = goods.len();
    if alternatives.len() != k {
        return Err(Error::NotSquare(format!(
            "{} alternative techniques for {k} capital goods",
            alternatives.len()
        )));
    }
    let d_l: Vec<T> = (0..k)
        .map(|t| its[t + 1].a_l[sector].clone() - its[0].a_l[sector].clone())
        .collect();
    let d_k = Matrix::from_fn(k, k, |g, t| {
        its[t + 1].a_k.get(goods[g], sector).clone() - its[0].a_k.get(goods[g], sector).clone()
    });
    if let Some(t) = (0..k).find(|&t| d_k.get(t, t).is_zero()) {
        return Err(Error::UndefinedMrs(format!(
            "capital coefficient of commodity {} in sector {} does not change against `{}`",
            goods[t] + 1,
            sector + 1,
            alternatives[t].name
        )));
    }
    let c: Vec<T> = (0..k).map(|t| -(d_l[t].clone() / d_k.get(t, t).clone())).collect();
    let i_minus_d = Matrix::from_fn(k, k, |g, t| {
        if g == t {
            T::one()
        } else {
            d_k.get(g, t).clone() / d_k.get(t, t).clone()
        }
    });
    let lu = Lu::factor(i_minus_d).map_err(|_| Error::CoincidentTechniques)?;
    let y = lu.solve_left(&c);
    let mut out = vec![T::zero(); n];
    for (g, &i) in goods.iter().enumerate() {
        out[i] = y[g].clone();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseClass {
    /// As many techniques as inputs: a unique factor-price point.
    ADeterminate,
    /// The focused sector's cost planes coincide.
    B1Coincident,
    /// The cost planes meet in a line.
    B2Line,
}

impl std::fmt::Display for CaseClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseClass::ADeterminate => "A-determinate",
            CaseClass::B1Coincident => "B1-coincident",
            CaseClass::B2Line => "B2-line",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseClassification {
    pub class: CaseClass,
    pub input_count: usize,
    pub technique_count: usize,
    /// Both techniques have the same coefficients.
    pub degenerate: bool,
}

/// Classifies a pair by comparing technique and input counts and, when
/// inputs outnumber techniques, by whether the first sector's labor and
/// non-own capital coefficients of the two techniques are proportional.
pub fn classify_case<T: Scalar>(a: &Technique<T>, b: &Technique<T>) -> Result<CaseClassification> {
    let its = integrate_all(&[a.clone(), b.clone()])?;
    let input_count = 1 + capital_inputs(&its).len();
    let degenerate = a.same_coefficients(b);
    let class = if 2 >= input_count {
        CaseClass::ADeterminate
    } else {
        let n = its[0].order();
        let column = |it: &IntegratedTechnique<T>| -> Vec<f64> {
            std::iter::once(it.a_l[0].lossy_f64())
                .chain((1..n).map(|i| it.a_k.get(i, 0).lossy_f64()))
                .collect()
        };
        let (u, v) = (column(&its[0]), column(&its[1]));
        let norm = u.iter().chain(&v).fold(0.0f64, |m, x| m.max(x.abs()));
        let mut largest_minor = 0.0f64;
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                largest_minor = largest_minor.max((u[i] * v[j] - u[j] * v[i]).abs());
            }
        }
        if largest_minor < 1e-10 * norm * norm {
            CaseClass::B1Coincident
        } else {
            CaseClass::B2Line
        }
    };
    Ok(CaseClassification { class, input_count, technique_count: 2, degenerate })
}

/// Points `(w_L, w_K1, w_K2)` in units of good 1 satisfying both
/// techniques' sector-1 cost equations, parametrized by `r` through
/// `w_K1 = delta_1 + r`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorPriceLine<T> {
    /// The point at `r = 0`.
    pub base_point: Vec<T>,
    pub direction: Vec<T>,
    pub classification: CaseClass,
}

impl<T: Scalar> FactorPriceLine<T> {
    pub fn point_at(&self, r: &T) -> Vec<T> {
        self.base_point
            .iter()
            .zip(&self.direction)
            .map(|(b, d)| b.clone() + r.clone() * d.clone())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum IntersectionLocus<T> {
    Line(FactorPriceLine<T>),
    /// Both techniques share the sector-1 cost plane with these coefficients
    /// on `(w_L, w_K1, w_K2, ...)`.
    Plane(Vec<T>),
}

pub fn intersection_line<T: Scalar>(a: &Technique<T>, b: &Technique<T>) -> Result<IntersectionLocus<T>> {
    let class = classify_case(a, b)?.class;
    let ia = vertically_integrate(a)?;
    let ib = vertically_integrate(b)?;
    let n = ia.order();
    match class {
        CaseClass::ADeterminate => Err(Error::Determinate),
        CaseClass::B1Coincident => Ok(IntersectionLocus::Plane(
            std::iter::once(ia.a_l[0].clone())
                .chain((0..n).map(|i| ia.a_k.get(i, 0).clone()))
                .collect(),
        )),
        CaseClass::B2Line => {
            if n != 2 {
                return Err(Error::InvalidParameter(format!(
                    "the cost-plane intersection is a line only for two sectors, got {n}"
                )));
            }
            // [w, w_K2] M = 1 - (delta_1 + r) [a_K11^a, a_K11^b]
            let m = Matrix::from_rows(vec![
                vec![ia.a_l[0].clone(), ib.a_l[0].clone()],
                vec![ia.a_k.get(1, 0).clone(), ib.a_k.get(1, 0).clone()],
            ])?;
            let lu = Lu::factor(m).map_err(|_| Error::CoincidentTechniques)?;
            let k11 = [ia.a_k.get(0, 0).clone(), ib.a_k.get(0, 0).clone()];
            let d1 = a.depreciation[0].clone();
            let rhs: Vec<T> = k11.iter().map(|k| T::one() - d1.clone() * k.clone()).collect();
            let base = lu.solve_left(&rhs);
            let slope = lu.solve_left(&k11.iter().map(|k| -k.clone()).collect::<Vec<_>>());
            Ok(IntersectionLocus::Line(FactorPriceLine {
                base_point: vec![base[0].clone(), d1, base[1].clone()],
                direction: vec![slope[0].clone(), T::one(), slope[1].clone()],
                classification: class,
            }))
        }
    }
}

/// `(p2/p1, w/p1)` for a two-sector technique with full depreciation, from
/// the rational functions of `rho = 1 + r`:
///
/// ```text
/// p2/p1 = [a_L2 + rho (a_L1 a_K12 - a_L2 a_K11)] / [a_L1 + rho (a_L2 a_K21 - a_L1 a_K22)]
/// w/p1  = D(rho) / [a_L1 + rho (a_L2 a_K21 - a_L1 a_K22)]
/// D(rho) = 1 - (a_K11 + a_K22) rho + (a_K11 a_K22 - a_K12 a_K21) rho^2
/// ```
pub fn two_sector_closed_forms<T: Scalar>(t: &Technique<T>, r: &T) -> Result<(T, T)> {
    if t.order() != 2 || !t.is_full_depreciation() {
        return Err(Error::InvalidParameter(
            "closed forms need two sectors with full depreciation".into(),
        ));
    }
    let it = vertically_integrate(t)?;
    let (l1, l2) = (it.a_l[0].clone(), it.a_l[1].clone());
    let k = |i: usize, j: usize| it.a_k.get(i, j).clone();
    let rho = T::one() + r.clone();
    let denominator = l1.clone() + rho.clone() * (l2.clone() * k(1, 0) - l1.clone() * k(1, 1));
    if denominator.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "closed-form denominator vanishes at r = {}",
            r.lossy_f64()
        )));
    }
    let numerator = l2.clone() + rho.clone() * (l1 * k(0, 1) - l2 * k(0, 0));
    let d = T::one() - (k(0, 0) + k(1, 1)) * rho.clone()
        + (k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0)) * rho.clone() * rho;
    Ok((numerator / denominator.clone(), d / denominator))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::price::solve_prices_direct;
    use num_rational::{BigRational, Ratio};

    fn g70(name: &str, a_l1: f64, a_k1: f64, a_k2: f64) -> Technique<f64> {
        Technique::with_capital(
            name,
            vec![a_l1, 1.0],
            Matrix::from_rows(vec![vec![0.0, 0.0], vec![a_k1, a_k2]]).unwrap(),
        )
        .unwrap()
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

    fn pertz() -> (Technique<f64>, Technique<f64>) {
        let t = |name: &str, l: [f64; 2], k12: f64, k21: f64| {
            Technique::with_capital(name, l.to_vec(), Matrix::from_rows(vec![vec![0.0, k12], vec![k21, 0.0]]).unwrap())
                .unwrap()
        };
        (t("I", [0.8, 1.0], 0.1, 0.7), t("II", [1.3, 0.9], 0.145, 0.5))
    }

    #[test]
    fn square_solve_on_two_inputs() {
        let (iii, iv) = (g70("III", 3.93, 0.237, 0.845), g70("IV", 4.834, 0.133, 0.851));
        let s = switch_factor_prices_square(&[iii.clone(), iv.clone()], 0).unwrap();
        // 2x2 inverse by hand: det = 3.93 * 0.133 - 4.834 * 0.237
        let det: f64 = 3.93 * 0.133 - 4.834 * 0.237;
        assert!((det + 0.622968).abs() < 1e-12);
        let w = (0.133 - 0.237) / det;
        let wk = (4.834 - 3.93) / -det;
        assert!((s.wage - w).abs() < 1e-14 && (s.wage - 0.16694).abs() < 1e-5);
        assert!((s.rentals[1] - wk).abs() < 1e-14 && (s.rentals[1] - 1.45112).abs() < 1e-5);
        assert_eq!(s.rentals[0], 0.0);

        let y = rentals_from_differences(&iii, &[iv.clone()], 0).unwrap();
        assert!((y[1] - 0.904 / 0.104).abs() < 1e-12);
        assert!((y[1] - s.rentals_over_wage[1]).abs() < 1e-9);

        let r3 = implied_interest_rate(&iii, 0, s.wage).unwrap();
        let r4 = implied_interest_rate(&iv, 0, s.wage).unwrap();
        assert!((r3 - 0.0416).abs() < 1e-3 && (r4 - 0.0351).abs() < 1e-3);
        let sol = solve_prices_direct(&iii, &r3, 0).unwrap();
        assert!((sol.rentals[1] - s.rentals[1]).abs() < 1e-9);
    }

    #[test]
    fn coincident_columns_are_singular() {
        let a = g70("a", 3.93, 0.237, 0.845);
        let b = g70("b", 3.93, 0.237, 0.9);
        assert!(matches!(switch_factor_prices_square(&[a, b], 0), Err(Error::CoincidentTechniques)));
        let a = g76_i::<f64>();
        assert!(matches!(switch_factor_prices_square(&[a.clone(), a], 0), Err(Error::NotSquare(_))));
    }

    #[test]
    fn equal_labor_gives_zero_rental() {
        let a = g70("a", 3.93, 0.237, 0.845);
        let b = g70("b", 3.93, 0.2, 0.845);
        let y = rentals_from_differences(&a, &[b], 0).unwrap();
        assert_eq!(y[1], 0.0);
        let c = g70("c", 4.0, 0.237, 0.845);
        assert!(matches!(rentals_from_differences(&a, &[c], 0), Err(Error::UndefinedMrs(_))));
    }

    #[test]
    fn classification() {
        let (iii, iv) = (g70("III", 3.93, 0.237, 0.845), g70("IV", 4.834, 0.133, 0.851));
        assert_eq!(classify_case(&iii, &iv).unwrap().class, CaseClass::ADeterminate);
        let (a, b) = pertz();
        assert_eq!(classify_case(&a, &b).unwrap().class, CaseClass::B2Line);
        let g = g76_i::<f64>();
        let c = classify_case(&g, &g).unwrap();
        assert_eq!(c.class, CaseClass::B1Coincident);
        assert!(c.degenerate);
        assert_eq!(c.input_count, 3);
    }

    #[test]
    fn pertz_line_satisfies_both_cost_equations() {
        let (a, b) = pertz();
        let IntersectionLocus::Line(line) = intersection_line(&a, &b).unwrap() else {
            panic!("expected a line")
        };
        for r in [0.0, 0.5, 1.16, 2.0] {
            let x = line.point_at(&r);
            assert!((x[1] - (1.0 + r)).abs() < 1e-15);
            for t in [&a, &b] {
                let cost = x[0] * t.labor[0] + x[1] * t.capital.get(0, 0) + x[2] * t.capital.get(1, 0);
                assert!((cost - 1.0).abs() < 1e-12);
            }
        }
        assert!(matches!(
            intersection_line(&g70("III", 3.93, 0.237, 0.845), &g70("IV", 4.834, 0.133, 0.851)),
            Err(Error::Determinate)
        ));
    }

    #[test]
    fn coincident_plane_for_shared_sector() {
        let a = g76_i::<BigRational>();
        let mut b = a.clone();
        b.labor[1] = BigRational::new(92.into(), 91.into());
        let IntersectionLocus::Plane(c) = intersection_line(&a, &b).unwrap() else { panic!() };
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(c, vec![q(1, 1), q(1, 12), q(1, 3)]);
    }

    #[test]
    fn closed_forms_match_engine() {
        let t = g76_i::<f64>();
        let (p2, w) = two_sector_closed_forms(&t, &0.5).unwrap();
        assert!((w - 0.425).abs() < 1e-15);
        let s = solve_prices_direct(&t, &0.5, 0).unwrap();
        assert!((p2 - s.prices[1]).abs() < 1e-12);
        let (p2, _) = two_sector_closed_forms(&t, &0.45).unwrap();
        assert!((p2 - 0.902685).abs() < 5e-7);
        // exact agreement in rationals
        let te = g76_i::<BigRational>();
        let r = BigRational::new(9.into(), 20.into());
        let (p2, w) = two_sector_closed_forms(&te, &r).unwrap();
        let s = solve_prices_direct(&te, &r, 0).unwrap();
        assert_eq!(p2, s.prices[1]);
        assert_eq!(w, s.real_wage_post);
        // a_K11 = a_K12 = 0
        let g = g70("III", 3.93, 0.237, 0.845);
        let (_, w) = two_sector_closed_forms(&g, &0.1).unwrap();
        let rho = 1.1;
        let oracle = (1.0 - rho * 0.845) / (3.93 + rho * (0.237 - 3.93 * 0.845));
        assert!((w - oracle).abs() < 1e-14);
    }
}
