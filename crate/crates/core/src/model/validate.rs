use num_traits::Zero;

use super::Technique;
use crate::linalg::{leading_principal_minors, Matrix};
use crate::price;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub valid: bool,
    /// Leading principal minors of `I - A - B` all positive.
    pub hawkins_simon: bool,
    pub max_profit_rate: Option<f64>,
    pub messages: Vec<String>,
}

/// Checks coefficient signs, depreciation bounds, empty sectors and the
/// Hawkins-Simon condition on `I - A - B`. Problems are collected rather
/// than returned as errors.
pub fn validate<T: Scalar>(t: &Technique<T>) -> ValidationReport {
    let n = t.order();
    let mut messages = Vec::new();
    let zero = T::zero();

    if let Some(j) = t.labor.iter().position(|x| *x < zero) {
        messages.push(format!("labor coefficient of sector {} is negative", j + 1));
    }
    for (what, m) in [("circulating", &t.circulating), ("capital", &t.capital)] {
        for i in 0..n {
            for j in 0..n {
                if *m.get(i, j) < zero {
                    messages.push(format!("{what} entry ({}, {}) is negative", i + 1, j + 1));
                }
            }
        }
    }
    for (i, d) in t.depreciation.iter().enumerate() {
        if *d < zero || *d > T::one() {
            messages.push(format!(
                "depreciation rate of commodity {} is {:.6}, outside [0, 1]",
                i + 1,
                d.lossy_f64()
            ));
        }
    }
    for j in 0..n {
        if t.absent[j] {
            continue;
        }
        let empty = t.labor[j].is_zero()
            && t.circulating.col(j).iter().all(Zero::is_zero)
            && t.capital.col(j).iter().all(Zero::is_zero);
        if empty {
            messages.push(format!("sector {} uses neither labor nor produced inputs", j + 1));
        }
    }

    let material = Matrix::identity(n).sub(&t.circulating).sub(&t.capital);
    let minors = leading_principal_minors(&material);
    let hawkins_simon = minors.iter().all(|m| *m > zero);
    if let Some((k, m)) = minors.iter().enumerate().find(|(_, m)| **m <= zero) {
        messages.push(format!(
            "Hawkins-Simon condition fails: leading principal minor {} of I - A - B is {:.6e}",
            k + 1,
            m.lossy_f64()
        ));
    }

    let max_profit_rate = if hawkins_simon && messages.is_empty() {
        match price::max_profit_rate(t) {
            Ok(r) => Some(r),
            Err(e) => {
                messages.push(format!("maximum profit rate unavailable: {e}"));
                None
            }
        }
    } else {
        None
    };
    if let Some(r) = max_profit_rate {
        if r <= 0.0 {
            messages.push(format!("maximum profit rate {r:.6} is not positive"));
        }
    }

    ValidationReport {
        valid: messages.is_empty() && hawkins_simon && max_profit_rate.is_some_and(|r| r > 0.0),
        hawkins_simon,
        max_profit_rate,
        messages,
    }
}
