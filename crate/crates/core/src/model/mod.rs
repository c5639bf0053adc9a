//! Economies, techniques and their validation.
//!
//! A [`Technique`] holds one production method for every sector: the direct
//! labor row, the circulating input matrix consumed within the period, the
//! matrix of capital-good services and the per-good depreciation rates.
//! Entry `(i, j)` of either matrix is the input of commodity `i` per unit of
//! output of sector `j`.

mod augment;
mod io;
mod validate;

use std::collections::{BTreeMap, HashSet};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{cast, Scalar};

pub use augment::{augment_blueprints, Augmented};
pub use io::{parse_model_file, parse_model_str, ModelFile, TechniqueFile};
pub use validate::{validate, ValidationReport};

/// When the wage is paid relative to the production period.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WageTiming {
    /// `w_L`, paid at the end of the period.
    #[default]
    #[serde(rename = "post")]
    PostFactum,
    /// `w_0 = w_L / (1 + r)`, advanced at the start of the period.
    #[serde(rename = "ante")]
    AnteFactum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Technique<T> {
    pub name: String,
    pub labor: Vec<T>,
    pub circulating: Matrix<T>,
    pub capital: Matrix<T>,
    pub depreciation: Vec<T>,
    /// Commodity name -> namespace label for technique-specific capital goods.
    pub capital_tags: BTreeMap<String, String>,
    /// Sectors that exist only as zero-filled placeholders after augmentation.
    pub absent: Vec<bool>,
}

impl<T: Scalar> Technique<T> {
    /// Builds a technique, checking only that the dimensions agree. Sign and
    /// viability problems are reported by [`validate`].
    pub fn new(
        name: impl Into<String>,
        labor: Vec<T>,
        circulating: Matrix<T>,
        capital: Matrix<T>,
        depreciation: Vec<T>,
    ) -> Result<Self> {
        let name = name.into();
        let n = labor.len();
        if n == 0 {
            return Err(Error::Dimension(format!("technique `{name}` has no sectors")));
        }
        for (what, m) in [("circulating", &circulating), ("capital", &capital)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!(
                    "technique `{name}`: {what} matrix is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if depreciation.len() != n {
            return Err(Error::Dimension(format!(
                "technique `{name}`: depreciation has {} entries, expected {n}",
                depreciation.len()
            )));
        }
        Ok(Self {
            name,
            labor,
            circulating,
            capital,
            depreciation,
            capital_tags: BTreeMap::new(),
            absent: vec![false; n],
        })
    }

    /// Technique with no circulating inputs and full depreciation, the
    /// encoding used for all the published two-sector examples.
    pub fn with_capital(name: impl Into<String>, labor: Vec<T>, capital: Matrix<T>) -> Result<Self> {
        let n = labor.len();
        Self::new(name, labor, Matrix::zeros(n, n), capital, vec![T::one(); n])
    }

    pub fn with_capital_tags(mut self, tags: BTreeMap<String, String>) -> Self {
        self.capital_tags = tags;
        self
    }

    pub fn order(&self) -> usize {
        self.labor.len()
    }

    pub fn is_full_depreciation(&self) -> bool {
        self.depreciation.iter().all(One::is_one)
    }

    /// True when the technique's coefficients equal `other`'s entry by entry.
    pub fn same_coefficients(&self, other: &Self) -> bool {
        self.labor == other.labor
            && self.circulating == other.circulating
            && self.capital == other.capital
            && self.depreciation == other.depreciation
    }

    /// Sectors whose method (labor, inputs, depreciation) differs from `other`.
    pub fn differing_sectors(&self, other: &Self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&j| {
                self.labor[j] != other.labor[j]
                    || self.circulating.col(j) != other.circulating.col(j)
                    || self.capital.col(j) != other.capital.col(j)
            })
            .collect()
    }

    /// Commodities used as capital goods by any sector.
    pub fn capital_goods(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.capital.row(i).iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn to_scalar<U: Scalar>(&self) -> Technique<U> {
        Technique {
            name: self.name.clone(),
            labor: self.labor.iter().map(cast).collect(),
            circulating: self.circulating.map(cast),
            capital: self.capital.map(cast),
            depreciation: self.depreciation.iter().map(cast).collect(),
            capital_tags: self.capital_tags.clone(),
            absent: self.absent.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EconomyModel<T> {
    pub name: String,
    pub commodities: Vec<String>,
    pub wage_timing: WageTiming,
    pub techniques: Vec<Technique<T>>,
}

impl<T: Scalar> EconomyModel<T> {
    pub fn new(
        name: impl Into<String>,
        commodities: Vec<String>,
        wage_timing: WageTiming,
        techniques: Vec<Technique<T>>,
    ) -> Result<Self> {
        let n = commodities.len();
        let mut seen = HashSet::new();
        if let Some(dup) = commodities.iter().find(|c| !seen.insert(c.as_str())) {
            return Err(Error::Dimension(format!("duplicate commodity name `{dup}`")));
        }
        if techniques.is_empty() {
            return Err(Error::Dimension("a model needs at least one technique".into()));
        }
        let mut names = HashSet::new();
        for t in &techniques {
            if t.order() != n {
                return Err(Error::Dimension(format!(
                    "technique `{}` has order {}, but the model lists {n} commodities",
                    t.name,
                    t.order()
                )));
            }
            if !names.insert(t.name.as_str()) {
                return Err(Error::Dimension(format!("duplicate technique name `{}`", t.name)));
            }
            if let Some(c) = t.capital_tags.keys().find(|c| !commodities.contains(c)) {
                return Err(Error::Dimension(format!(
                    "technique `{}` tags unknown commodity `{c}`",
                    t.name
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            commodities,
            wage_timing,
            techniques,
        })
    }

    pub fn order(&self) -> usize {
        self.commodities.len()
    }

    pub fn technique(&self, name: &str) -> Option<&Technique<T>> {
        self.techniques.iter().find(|t| t.name == name)
    }

    pub fn commodity_index(&self, name: &str) -> Option<usize> {
        self.commodities.iter().position(|c| c == name)
    }

    pub fn to_scalar<U: Scalar>(&self) -> EconomyModel<U> {
        EconomyModel {
            name: self.name.clone(),
            commodities: self.commodities.clone(),
            wage_timing: self.wage_timing,
            techniques: self.techniques.iter().map(Technique::to_scalar).collect(),
        }
    }
}
