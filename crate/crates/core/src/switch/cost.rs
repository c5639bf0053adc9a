use crate::error::{Error, Result};
use crate::model::Technique;
use crate::price::{IntegratedTechnique, PriceSolution, PriceSystem};
use crate::scalar::Scalar;

/// Unit cost of `sector`'s output with the given coefficients at the given
/// prices, in numeraire units: `w a_L[s] + sum_i w_Ki A_K[i][s]`. At a
/// technique's own prices this is the sector's price.
pub fn cost_index<T: Scalar>(coefficients: &IntegratedTechnique<T>, priced_at: &PriceSolution<T>, sector: usize) -> T {
    let mut c = priced_at.real_wage_post.clone() * coefficients.a_l[sector].clone();
    for (i, rental) in priced_at.rentals.iter().enumerate() {
        c = c + rental.clone() * coefficients.a_k.get(i, sector).clone();
    }
    c
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostIndexes<T> {
    /// Technique with the higher wage at `r` (`a` on a tie).
    pub in_use: String,
    pub not_in_use: String,
    /// Weighted with the coefficients of the technique not in use.
    pub paasche: T,
    /// Weighted with the coefficients of the technique in use.
    pub laspeyres: T,
}

/// Cost ratios `C(NU) / C(U)`: unit costs of `sector` in wage units at the
/// factor prices of the technique not in use over those at the prices of
/// the technique in use.
pub fn paasche_laspeyres<T: Scalar>(
    a: &Technique<T>,
    b: &Technique<T>,
    r: &T,
    numeraire: usize,
    sector: usize,
) -> Result<CostIndexes<T>> {
    if a.absent.iter().chain(&b.absent).any(|x| *x) || a.capital_tags != b.capital_tags {
        return Err(Error::HeterogeneousCapital);
    }
    let pa = PriceSystem::new(a)?;
    let pb = PriceSystem::new(b)?;
    let sa = pa.solve_reduced(r, numeraire)?;
    let sb = pb.solve_reduced(r, numeraire)?;
    let n = a.order();
    if sector >= n {
        return Err(Error::Numeraire { index: sector, n });
    }
    let ((u, su), (nu, snu)) = if sb.real_wage_post > sa.real_wage_post {
        ((&pb, &sb), (&pa, &sa))
    } else {
        ((&pa, &sa), (&pb, &sb))
    };
    let ratio = |weights: &IntegratedTechnique<T>| {
        let c_nu = cost_index(weights, snu, sector) / snu.real_wage_post.clone();
        let c_u = cost_index(weights, su, sector) / su.real_wage_post.clone();
        c_nu / c_u
    };
    Ok(CostIndexes {
        in_use: u.technique().name.clone(),
        not_in_use: nu.technique().name.clone(),
        paasche: ratio(nu.integrated()),
        laspeyres: ratio(u.integrated()),
    })
}
