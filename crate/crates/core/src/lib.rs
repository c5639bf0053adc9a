//! Prices, wage-profit curves and switch points for economies with fixed
//! capital and circulating inputs, plus a casebook of textbook reswitching
//! examples.
//!
//! The numerical core is generic over [`Scalar`], implemented for `f32`,
//! `f64` and exact [`BigRational`] arithmetic.

pub mod casebook;
pub mod duality;
pub mod error;
pub mod format;
pub mod linalg;
pub mod model;
pub mod price;
pub mod scalar;
pub mod switch;
pub mod wicksell;

pub use num_rational::BigRational;

pub use error::{Error, Result};
pub use linalg::{Lu, Matrix};
pub use model::{
    augment_blueprints, parse_model_file, parse_model_str, validate, Augmented, EconomyModel, Technique,
    ValidationReport, WageTiming,
};
pub use price::{
    accounting_residual, curve_csv, max_profit_rate, real_wage, rental_prices, solve_prices_direct, solve_prices_reduced, user_cost,
    vertically_integrate, wage_profit_curve, CurveSample, IntegratedTechnique, PriceSolution, PriceSystem,
};
pub use scalar::{Real, Scalar};

pub type Technique64 = Technique<f64>;
pub type Technique32 = Technique<f32>;
pub type ExactTechnique = Technique<BigRational>;
pub type Model64 = EconomyModel<f64>;
pub type ExactModel = EconomyModel<BigRational>;
pub type PriceSolution64 = PriceSolution<f64>;
pub type ExactPriceSolution = PriceSolution<BigRational>;
