//! Switch points between pairs of techniques.
//!
//! A switch candidate is an interest rate where two techniques pay the same
//! real wage. It is genuine only if the whole relative price system (prices,
//! wage and rentals) coincides there as well.

mod cost;
mod factor;
mod frontier;


use crate::error::{Error, Result};
use crate::format::csv;
use crate::price::{PriceSolution, PriceSystem};
use crate::model::Technique;
use crate::scalar::Scalar;

pub use cost::{cost_index, paasche_laspeyres, CostIndexes};
pub use factor::{
    classify_case, implied_interest_rate, intersection_line, rentals_from_differences,
    switch_factor_prices_square, two_sector_closed_forms, CaseClass, CaseClassification, FactorPriceLine,
    IntersectionLocus, SquareSolution,
};
pub use frontier::{frontier_csv, technique_frontier, techniques_in_use, FrontierSegment};

/// Gap below which two wages count as equal on the frontier, and the
/// largest residual at which a scan minimum counts as a tangential contact.
pub const TIE_TOLERANCE: f64 = 1e-11;
/// Largest residual accepted by [`verify_genuine`].
pub const ROOT_TOLERANCE: f64 = 1e-10;
pub const GENUINE_TOLERANCE: f64 = 1e-8;
/// Largest wage gap, relative to the wage, at which two curves count as one.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq)]
pub struct SwitchCandidate {
    pub r_star: f64,
    pub wage_at_switch: f64,
    /// `|w_a(r*) - w_b(r*)|`.
    pub residual: f64,
    pub bracket: (f64, f64),
    /// Contact without a sign change (even multiplicity).
    pub tangential: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwitchReport {
    pub candidate: SwitchCandidate,
    pub genuine: bool,
    pub max_price_deviation: f64,
    /// Largest `|w* (A_T^b - A_T^a) e_i|` over sectors other than the numeraire.
    pub cost_difference_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwitchOptions {
    pub samples: usize,
    /// Scan interval; defaults to `[0, min(R_a, R_b) (1 - 1e-9)]`.
    pub domain: Option<(f64, f64)>,
    pub bracket_tol: f64,
    pub tangency_tol: f64,
}

impl Default for SwitchOptions {
    fn default() -> Self {
        Self {
            samples: 20_001,
            domain: None,
            bracket_tol: 1e-13,
            tangency_tol: TIE_TOLERANCE,
        }
    }
}

/// `w_a(r) - w_b(r)` in units of the numeraire.
pub fn delta_wage<T: Scalar>(a: &Technique<T>, b: &Technique<T>, numeraire: usize, r: &T) -> Result<T> {
    let wa = PriceSystem::new(a)?.real_wage(r, numeraire)?;
    let wb = PriceSystem::new(b)?.real_wage(r, numeraire)?;
    Ok(wa - wb)
}

/// Allocation-light real wage evaluation in `f64` for dense scans.
#[derive(Clone, Debug)]
pub(crate) struct WageCurve {
    n: usize,
    /// transposed `I - diag(delta) A_K`, augmented with `a_L`
    fixed: Vec<f64>,
    /// transposed `A_K`, zero in the augmented column
    slope: Vec<f64>,
    numeraire: usize,
    pub(crate) max_profit_rate: f64,
}

impl WageCurve {
    pub(crate) fn new(system: &PriceSystem<f64>, numeraire: usize) -> Self {
        let it = system.integrated();
        let n = it.order();
        let w = n + 1;
        let mut fixed = vec![0.0; n * w];
        let mut slope = vec![0.0; n * w];
        for k in 0..n {
            for i in 0..n {
                let id = if i == k { 1.0 } else { 0.0 };
                let a = *it.a_k.get(i, k);
                fixed[k * w + i] = id - it.source.depreciation[i] * a;
                slope[k * w + i] = a;
            }
            fixed[k * w + n] = it.a_l[k];
        }
        Self { n, fixed, slope, numeraire, max_profit_rate: system.max_profit_rate() }
    }

    /// Solves `x [I - diag(delta + r) A_K] = a_L` by elimination on the
    /// transposed system and returns `1 / x_j`; NaN when singular.
    pub(crate) fn wage(&self, r: f64, work: &mut Vec<f64>) -> f64 {
        let n = self.n;
        let w = n + 1;
        work.clear();
        work.extend(self.fixed.iter().zip(&self.slope).map(|(f, s)| f - r * s));
        let scale = work.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for c in 0..n {
            let mut piv = c;
            for row in c + 1..n {
                if work[row * w + c].abs() > work[piv * w + c].abs() {
                    piv = row;
                }
            }
            if work[piv * w + c].abs() <= 1e-12 * scale {
                return f64::NAN;
            }
            if piv != c {
                for col in 0..w {
                    work.swap(c * w + col, piv * w + col);
                }
            }
            let inv = 1.0 / work[c * w + c];
            for row in c + 1..n {
                let f = work[row * w + c] * inv;
                if f != 0.0 {
                    for col in c..w {
                        work[row * w + col] -= f * work[c * w + col];
                    }
                }
            }
        }
        for c in (0..n).rev() {
            let mut s = work[c * w + n];
            for col in c + 1..n {
                s -= work[c * w + col] * work[col * w + n];
            }
            work[c * w + n] = s / work[c * w + c];
        }
        1.0 / work[self.numeraire * w + n]
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64, tol: f64) -> (f64, f64, f64) {
    let mut fhi = f(hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, mid, mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    let best = if flo.abs() <= fhi.abs() { lo } else { hi };
    (best, lo, hi)
}

struct ScanRoot {
    r: f64,
    bracket: (f64, f64),
    tangential: bool,
}

fn scan_roots(xs: &[f64], vs: &[f64], f: impl Fn(f64) -> f64 + Copy, options: &SwitchOptions) -> Vec<ScanRoot> {
    let m = xs.len();
    let mut out = Vec::new();
    for k in 0..m {
        let v = vs[k];
        if v == 0.0 {
            let prev = if k > 0 { vs[k - 1] } else { 0.0 };
            let next = if k + 1 < m { vs[k + 1] } else { 0.0 };
            out.push(ScanRoot { r: xs[k], bracket: (xs[k], xs[k]), tangential: prev * next > 0.0 });
        } else if k + 1 < m && v * vs[k + 1] < 0.0 {
            let (r, lo, hi) = bisect(f, xs[k], xs[k + 1], v, options.bracket_tol);
            out.push(ScanRoot { r, bracket: (lo, hi), tangential: false });
        } else if k > 0
            && k + 1 < m
            && v.abs() < options.tangency_tol
            && v.abs() <= vs[k - 1].abs()
            && v.abs() <= vs[k + 1].abs()
            && vs[k - 1] * v > 0.0
            && v * vs[k + 1] > 0.0
        {
            out.push(ScanRoot { r: xs[k], bracket: (xs[k - 1], xs[k + 1]), tangential: true });
        }
    }
    out
}

/// Locates every sign change of `w_a - w_b` on a uniform scan, refining each
/// by bisection, and reports scan minima below the tangency tolerance that
/// do not change sign.
///
/// For techniques differing in a single sector the number of crossings
/// cannot exceed the number of sectors; exceeding it is an error.
pub fn find_switch_candidates<T: Scalar>(
    a: &Technique<T>,
    b: &Technique<T>,
    numeraire: usize,
    options: &SwitchOptions,
) -> Result<Vec<SwitchCandidate>> {
    if a.same_coefficients(b) {
        return Err(Error::IdenticalTechniques);
    }
    let (a, b): (Technique<f64>, Technique<f64>) = (a.to_scalar(), b.to_scalar());
    let sa = PriceSystem::new(&a)?;
    let sb = PriceSystem::new(&b)?;
    let n = a.order();
    if numeraire >= n {
        return Err(Error::Numeraire { index: numeraire, n });
    }
    let ca = WageCurve::new(&sa, numeraire);
    let cb = WageCurve::new(&sb, numeraire);
    let r_max = sa.max_profit_rate().min(sb.max_profit_rate());
    let upper = if r_max.is_finite() { r_max * (1.0 - 1e-9) } else { 1e3 };
    let (lo, hi) = match options.domain {
        Some((lo, hi)) => (lo.max(0.0), hi.min(upper)),
        None => (0.0, upper),
    };
    if !(hi > lo) || options.samples < 2 {
        return Err(Error::InvalidParameter(format!("empty scan interval [{lo}, {hi}]")));
    }

    let f = |r: f64| {
        let mut work = Vec::new();
        ca.wage(r, &mut work) - cb.wage(r, &mut work)
    };
    let m = options.samples;
    let xs: Vec<f64> = (0..m).map(|k| lo + (hi - lo) * k as f64 / (m - 1) as f64).collect();
    let mut work = Vec::new();
    let mut scale = 0.0f64;
    let vs: Vec<f64> = xs
        .iter()
        .map(|&r| {
            let wa = ca.wage(r, &mut work);
            scale = scale.max(wa.abs());
            wa - cb.wage(r, &mut work)
        })
        .collect();

    // curves equal up to rounding everywhere, e.g. when the sectors that
    // differ do not enter the numeraire's cost
    let spread = vs.iter().filter(|v| v.is_finite()).fold(0.0f64, |m, v| m.max(v.abs()));
    if spread <= COINCIDENCE_TOLERANCE * scale {
        return Err(Error::CoincidentWageCurves { max_gap: spread });
    }

    let exact_residual = |r: f64| -> Result<(f64, f64)> {
        let wa = sa.real_wage(&r, numeraire)?;
        let wb = sb.real_wage(&r, numeraire)?;
        Ok((wa, (wa - wb).abs()))
    };
    let mut out = Vec::new();
    for root in scan_roots(&xs, &vs, f, options) {
        let (wage, residual) = exact_residual(root.r)?;
        out.push(SwitchCandidate {
            r_star: root.r,
            wage_at_switch: wage,
            residual,
            bracket: root.bracket,
            tangential: root.tangential,
        });
    }

    let crossings = out.iter().filter(|c| !c.tangential).count();
    if a.differing_sectors(&b).len() == 1 && crossings > n {
        return Err(Error::BoundViolated { count: crossings, bound: n });
    }
    Ok(out)
}

fn relative_gap<T: Scalar>(x: &T, y: &T) -> f64 {
    let scale = x.magnitude().lossy_f64().max(y.magnitude().lossy_f64());
    if scale == 0.0 {
        0.0
    } else {
        (x.clone() - y.clone()).magnitude().lossy_f64() / scale
    }
}

/// Largest relative gap between two price systems over the wage and the
/// prices and rentals of commodities produced under both techniques.
pub fn max_price_deviation<T: Scalar>(sa: &PriceSolution<T>, sb: &PriceSolution<T>, active: &[bool]) -> f64 {
    let mut dev = relative_gap(&sa.real_wage_post, &sb.real_wage_post);
    for i in (0..active.len()).filter(|&i| active[i]) {
        dev = dev
            .max(relative_gap(&sa.prices[i], &sb.prices[i]))
            .max(relative_gap(&sa.rentals[i], &sb.rentals[i]));
    }
    dev
}

/// Solves both price systems at `r` and checks that they coincide.
pub fn verify_genuine<T: Scalar>(
    a: &Technique<T>,
    b: &Technique<T>,
    r: &T,
    numeraire: usize,
    tol: f64,
) -> Result<SwitchReport> {
    if a.same_coefficients(b) {
        return Err(Error::IdenticalTechniques);
    }
    let pa = PriceSystem::new(a)?;
    let pb = PriceSystem::new(b)?;
    let sa = pa.solve_reduced(r, numeraire)?;
    let sb = pb.solve_reduced(r, numeraire)?;
    let residual = (sa.real_wage_post.clone() - sb.real_wage_post.clone()).magnitude().lossy_f64();
    if residual >= ROOT_TOLERANCE {
        return Err(Error::NotARoot { r: r.lossy_f64(), residual });
    }
    let active: Vec<bool> = a.absent.iter().zip(&b.absent).map(|(x, y)| !x && !y).collect();
    let max_price_deviation = max_price_deviation(&sa, &sb, &active);

    // w* (A_T^b - A_T^a) e_i with w* = (w_L, w_K) from technique a
    let (ia, ib) = (pa.integrated(), pb.integrated());
    let n = a.order();
    let mut cost_difference_residual = 0.0f64;
    for i in (0..n).filter(|&i| i != numeraire && active[i]) {
        let mut s = sa.real_wage_post.clone() * (ib.a_l[i].clone() - ia.a_l[i].clone());
        for k in 0..n {
            let d = ib.a_k.get(k, i).clone() - ia.a_k.get(k, i).clone();
            if !d.is_zero() {
                s = s + sa.rentals[k].clone() * d;
            }
        }
        cost_difference_residual = cost_difference_residual.max(s.magnitude().lossy_f64());
    }

    Ok(SwitchReport {
        candidate: SwitchCandidate {
            r_star: r.lossy_f64(),
            wage_at_switch: sa.real_wage_post.lossy_f64(),
            residual,
            bracket: (r.lossy_f64(), r.lossy_f64()),
            tangential: false,
        },
        genuine: max_price_deviation < tol,
        max_price_deviation,
        cost_difference_residual,
    })
}

/// Finds all candidates and checks each for genuineness.
pub fn analyze_switches<T: Scalar>(
    a: &Technique<T>,
    b: &Technique<T>,
    numeraire: usize,
    options: &SwitchOptions,
    tol: f64,
) -> Result<Vec<SwitchReport>> {
    let (fa, fb): (Technique<f64>, Technique<f64>) = (a.to_scalar(), b.to_scalar());
    find_switch_candidates(&fa, &fb, numeraire, options)?
        .into_iter()
        .map(|c| {
            let mut report = verify_genuine(&fa, &fb, &c.r_star, numeraire, tol)?;
            report.candidate = c;
            Ok(report)
        })
        .collect()
}

pub fn switch_csv(reports: &[SwitchReport]) -> String {
    let mut s = String::from("r_star,wage,residual,genuine,max_price_deviation\n");
    for r in reports {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            csv(r.candidate.r_star),
            csv(r.candidate.wage_at_switch),
            csv(r.candidate.residual),
            r.genuine,
            csv(r.max_price_deviation)
        ));
    }
    s
}

/// Technique `b` relative to technique `a` at a common interest rate.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioPoint<T> {
    pub r: T,
    pub wage_ratio: T,
    pub price_ratios: Vec<T>,
    /// `(w_Ki / w_L)^b / (w_Ki / w_L)^a`.
    pub rental_over_wage_ratios: Vec<T>,
}

/// Wage, price and rental-over-wage ratios of `b` to `a`. Always built from
/// the end-of-period wage; the ratios do not depend on wage timing.
pub fn ratio_curves<T: Scalar>(a: &Technique<T>, b: &Technique<T>, numeraire: usize, r: &T) -> Result<RatioPoint<T>> {
    if a.absent.iter().chain(&b.absent).any(|x| *x) || a.capital_tags != b.capital_tags {
        return Err(Error::HeterogeneousCapital);
    }
    let sa = PriceSystem::new(a)?.solve_reduced(r, numeraire)?;
    let sb = PriceSystem::new(b)?.solve_reduced(r, numeraire)?;
    Ok(ratios(&sa, &sb))
}

pub(crate) fn ratios<T: Scalar>(sa: &PriceSolution<T>, sb: &PriceSolution<T>) -> RatioPoint<T> {
    let div = |x: &[T], y: &[T]| -> Vec<T> { x.iter().zip(y).map(|(p, q)| p.clone() / q.clone()).collect() };
    RatioPoint {
        r: sa.r.clone(),
        wage_ratio: sb.real_wage_post.clone() / sa.real_wage_post.clone(),
        price_ratios: div(&sb.prices, &sa.prices),
        rental_over_wage_ratios: div(&sb.rentals_over_wage, &sa.rentals_over_wage),
    }
}

/// `r,wage_ratio,p<i>_ratio...,rental<i>_over_wage_ratio...,in_use`, with
/// price ratios for every commodity except the numeraire.
pub fn ratio_csv<T: Scalar>(points: &[(RatioPoint<T>, String)], numeraire: usize) -> String {
    let n = points.first().map_or(0, |(p, _)| p.price_ratios.len());
    let mut s = String::from("r,wage_ratio");
    for i in (0..n).filter(|&i| i != numeraire) {
        s.push_str(&format!(",p{}_ratio", i + 1));
    }
    for i in 0..n {
        s.push_str(&format!(",rental{}_over_wage_ratio", i + 1));
    }
    s.push_str(",in_use\n");
    for (p, in_use) in points {
        s.push_str(&csv(p.r.lossy_f64()));
        s.push(',');
        s.push_str(&csv(p.wage_ratio.lossy_f64()));
        for i in (0..n).filter(|&i| i != numeraire) {
            s.push(',');
            s.push_str(&csv(p.price_ratios[i].lossy_f64()));
        }
        for x in &p.rental_over_wage_ratios {
            s.push(',');
            s.push_str(&csv(x.lossy_f64()));
        }
        s.push(',');
        s.push_str(in_use);
        s.push('\n');
    }
    s
}
