use std::collections::{BTreeMap, HashMap};

use super::Technique;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A pair of techniques re-expressed over a common commodity space.
#[derive(Clone, Debug, PartialEq)]
pub struct Augmented<T> {
    pub commodities: Vec<String>,
    pub a: Technique<T>,
    pub b: Technique<T>,
}

/// Puts two techniques over the union of their commodity spaces.
///
/// A commodity carrying different tags in `a` and `b` becomes two distinct
/// goods named after the tags (an untagged commodity keeps its own name).
/// Each technique gets zero rows and columns for the goods only the other
/// uses; those sectors are marked `absent`. Prices and wages of the goods a
/// technique actually produces are unchanged.
pub fn augment_blueprints<T: Scalar>(
    commodities: &[String],
    a: &Technique<T>,
    b: &Technique<T>,
) -> Result<Augmented<T>> {
    let n = commodities.len();
    if a.order() != n || b.order() != n {
        return Err(Error::Dimension(format!(
            "techniques have orders {} and {}, commodity list has {n}",
            a.order(),
            b.order()
        )));
    }

    let label = |t: &Technique<T>, c: &String| t.capital_tags.get(c).cloned().unwrap_or_else(|| c.clone());

    // union position of each original commodity, for a and b
    let mut union: Vec<String> = Vec::new();
    let mut origin: HashMap<String, usize> = HashMap::new();
    let mut pos_a = Vec::with_capacity(n);
    let mut pos_b = Vec::with_capacity(n);
    let mut claim = |name: String, base: usize, union: &mut Vec<String>| -> Result<usize> {
        if let Some(&prev) = origin.get(&name) {
            if prev != base {
                return Err(Error::ConflictingTags(format!(
                    "label `{name}` is used for both `{}` and `{}`",
                    commodities[prev], commodities[base]
                )));
            }
            return Ok(union.iter().position(|u| *u == name).expect("claimed label"));
        }
        origin.insert(name.clone(), base);
        union.push(name);
        Ok(union.len() - 1)
    };
    for (i, c) in commodities.iter().enumerate() {
        let la = label(a, c);
        let lb = label(b, c);
        pos_a.push(claim(la.clone(), i, &mut union)?);
        pos_b.push(if la == lb { pos_a[i] } else { claim(lb, i, &mut union)? });
    }

    if union.len() == n {
        return Ok(Augmented {
            commodities: commodities.to_vec(),
            a: a.clone(),
            b: b.clone(),
        });
    }

    Ok(Augmented {
        a: embed(a, &pos_a, union.len()),
        b: embed(b, &pos_b, union.len()),
        commodities: union,
    })
}

fn embed<T: Scalar>(t: &Technique<T>, pos: &[usize], m: usize) -> Technique<T> {
    let mut labor = vec![T::zero(); m];
    let mut circulating = Matrix::zeros(m, m);
    let mut capital = Matrix::zeros(m, m);
    let mut depreciation = vec![T::one(); m];
    let mut absent = vec![true; m];
    for (i, &pi) in pos.iter().enumerate() {
        labor[pi] = t.labor[i].clone();
        depreciation[pi] = t.depreciation[i].clone();
        absent[pi] = t.absent[i];
        for (j, &pj) in pos.iter().enumerate() {
            circulating.set(pi, pj, t.circulating.get(i, j).clone());
            capital.set(pi, pj, t.capital.get(i, j).clone());
        }
    }
    Technique {
        name: t.name.clone(),
        labor,
        circulating,
        capital,
        depreciation,
        capital_tags: BTreeMap::new(),
        absent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tech(name: &str, tag: Option<&str>) -> Technique<f64> {
        let t = Technique::with_capital(
            name,
            vec![0.8, 1.0],
            Matrix::from_rows(vec![vec![0.0, 0.1], vec![0.7, 0.0]]).unwrap(),
        )
        .unwrap();
        match tag {
            Some(tag) => t.with_capital_tags(BTreeMap::from([("k".to_string(), tag.to_string())])),
            None => t,
        }
    }

    fn names() -> Vec<String> {
        vec!["c".into(), "k".into()]
    }

    #[test]
    fn identical_tags_return_inputs() {
        let a = tech("I", Some("x"));
        let b = tech("II", Some("x"));
        let aug = augment_blueprints(&names(), &a, &b).unwrap();
        assert_eq!(aug.a, a);
        assert_eq!(aug.b, b);
        assert_eq!(aug.commodities, names());
    }

    #[test]
    fn distinct_tags_split_the_good() {
        let aug = augment_blueprints(&names(), &tech("I", Some("k-I")), &tech("II", Some("k-II"))).unwrap();
        assert_eq!(aug.commodities, vec!["c", "k-I", "k-II"]);
        assert_eq!(aug.a.absent, vec![false, false, true]);
        assert_eq!(aug.b.absent, vec![false, true, false]);
        // cross entries between a's and b's capital goods are zero
        assert_eq!(*aug.a.capital.get(2, 0), 0.0);
        assert_eq!(*aug.b.capital.get(1, 0), 0.0);
        assert_eq!(*aug.b.capital.get(2, 0), 0.7);
    }

    #[test]
    fn label_collision_is_an_error() {
        let a = tech("I", Some("c"));
        let b = tech("II", None);
        assert!(matches!(
            augment_blueprints(&names(), &a, &b),
            Err(Error::ConflictingTags(_))
        ));
    }
}
