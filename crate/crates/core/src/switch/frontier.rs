use super::{bisect, WageCurve, TIE_TOLERANCE};
use crate::error::{Error, Result};
use crate::format::csv;
use crate::model::Technique;
use crate::price::PriceSystem;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct FrontierSegment {
    pub r_start: f64,
    pub r_end: f64,
    /// The highest-wage techniques; more than one only at a switch point,
    /// where the segment has zero width.
    pub in_use: Vec<String>,
    /// Envelope wage at the segment midpoint.
    pub wage_envelope_sample: f64,
}

struct Curves {
    names: Vec<String>,
    curves: Vec<WageCurve>,
}

impl Curves {
    fn new<T: Scalar>(techs: &[Technique<T>], numeraire: usize) -> Result<Self> {
        if techs.is_empty() {
            return Err(Error::InvalidParameter("no techniques given".into()));
        }
        let mut curves = Vec::with_capacity(techs.len());
        for t in techs {
            let system = PriceSystem::new(&t.to_scalar::<f64>())?;
            if numeraire >= t.order() {
                return Err(Error::Numeraire { index: numeraire, n: t.order() });
            }
            curves.push(WageCurve::new(&system, numeraire));
        }
        Ok(Self { names: techs.iter().map(|t| t.name.clone()).collect(), curves })
    }

    /// Wages at `r`, NaN for techniques outside their viable range.
    fn wages(&self, r: f64, work: &mut Vec<f64>) -> Vec<f64> {
        self.curves
            .iter()
            .map(|c| if r < c.max_profit_rate { c.wage(r, work) } else { f64::NAN })
            .collect()
    }

    fn winners(&self, r: f64, work: &mut Vec<f64>) -> (Vec<usize>, f64) {
        let w = self.wages(r, work);
        let best = w.iter().cloned().filter(|x| !x.is_nan()).fold(f64::NEG_INFINITY, f64::max);
        let winners = (0..w.len()).filter(|&k| !w[k].is_nan() && best - w[k] < TIE_TOLERANCE).collect();
        (winners, best)
    }
}

/// Techniques paying the highest wage at `r`.
pub fn techniques_in_use<T: Scalar>(techs: &[Technique<T>], numeraire: usize, r: f64) -> Result<Vec<String>> {
    let curves = Curves::new(techs, numeraire)?;
    let (winners, _) = curves.winners(r, &mut Vec::new());
    if winners.is_empty() {
        return Err(Error::InvalidParameter(format!("no technique is viable at r = {r}")));
    }
    Ok(winners.into_iter().map(|k| curves.names[k].clone()).collect())
}

/// Wage envelope over a grid of interest rates. Consecutive grid points with
/// the same winner form a segment; where the winner changes and the two
/// wage curves cross, the crossing is located by bisection and reported as a
/// zero-width segment in which both techniques coexist.
pub fn technique_frontier<T: Scalar>(techs: &[Technique<T>], numeraire: usize, grid: &[f64]) -> Result<Vec<FrontierSegment>> {
    let curves = Curves::new(techs, numeraire)?;
    let mut work = Vec::new();
    let mut grid: Vec<f64> = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let points: Vec<(f64, Vec<usize>)> = grid
        .into_iter()
        .filter_map(|r| {
            let (w, _) = curves.winners(r, &mut work);
            (!w.is_empty() && r >= 0.0).then_some((r, w))
        })
        .collect();
    if points.is_empty() {
        return Err(Error::InvalidParameter("no grid point lies in a viable range".into()));
    }

    // (start, end, winners)
    let mut raw: Vec<(f64, f64, Vec<usize>)> = Vec::new();
    for (r, w) in points {
        let Some(last) = raw.last_mut() else {
            raw.push((r, r, w));
            continue;
        };
        if last.2 == w {
            last.1 = r;
            continue;
        }
        let (prev_end, prev) = (last.1, last.2.clone());
        if prev.len() == 1 && w.len() == 1 {
            let (a, b) = (&curves.curves[prev[0]], &curves.curves[w[0]]);
            let gap = |x: f64| {
                let mut work = Vec::new();
                a.wage(x, &mut work) - b.wage(x, &mut work)
            };
            let (g0, g1) = (gap(prev_end), gap(r));
            if g0.is_finite() && g1.is_finite() && g0 * g1 < 0.0 {
                let (x, _, _) = bisect(gap, prev_end, r, g0, 1e-13);
                last.1 = x;
                raw.push((x, x, vec![prev[0], w[0]]));
                raw.push((x, r, w));
                continue;
            }
        }
        if w.len() > 1 {
            last.1 = r;
        }
        let start = if w.len() > 1 { r } else { prev_end };
        raw.push((start, r, w));
    }

    Ok(raw
        .into_iter()
        .map(|(r_start, r_end, winners)| {
            let mid = 0.5 * (r_start + r_end);
            let w = curves.wages(mid, &mut work);
            let envelope = winners.iter().map(|&k| w[k]).fold(f64::NEG_INFINITY, f64::max);
            let mut in_use: Vec<usize> = winners;
            in_use.sort_unstable();
            FrontierSegment {
                r_start,
                r_end,
                in_use: in_use.into_iter().map(|k| curves.names[k].clone()).collect(),
                wage_envelope_sample: envelope,
            }
        })
        .collect())
}

/// `r_start,r_end,in_use,wage`, with coexisting techniques joined by `-`.
pub fn frontier_csv(segments: &[FrontierSegment]) -> String {
    let mut s = String::from("r_start,r_end,in_use,wage\n");
    for seg in segments {
        s.push_str(&format!(
            "{},{},{},{}\n",
            csv(seg.r_start),
            csv(seg.r_end),
            seg.in_use.join("-"),
            csv(seg.wage_envelope_sample)
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn tech(name: &str, s2: [f64; 3], s1: [f64; 3]) -> Technique<f64> {
        Technique::with_capital(
            name,
            vec![s1[0], s2[0]],
            Matrix::from_rows(vec![vec![s1[1], s2[1]], vec![s1[2], s2[2]]]).unwrap(),
        )
        .unwrap()
    }

    fn g76() -> Vec<Technique<f64>> {
        let s1 = [1.0, 1.0 / 12.0, 1.0 / 3.0];
        vec![
            tech("I", [1.0, 1.0 / 6.0, 1.0 / 6.0], s1),
            tech("II", [92.0 / 91.0, 137.0 / 546.0, 19.0 / 273.0], s1),
        ]
    }

    fn singles(segments: &[FrontierSegment]) -> Vec<String> {
        segments.iter().filter(|s| s.in_use.len() == 1).map(|s| s.in_use[0].clone()).collect()
    }

    #[test]
    fn garegnani_1976_reswitches() {
        let segments = technique_frontier(&g76(), 0, &[0.1, 0.45, 0.9]).unwrap();
        assert_eq!(singles(&segments), vec!["I", "II", "I"]);
        let ties: Vec<&FrontierSegment> = segments.iter().filter(|s| s.in_use.len() == 2).collect();
        assert_eq!(ties.len(), 2);
        assert!((ties[0].r_start - 1.0 / 3.0).abs() < 1e-12);
        assert!((ties[1].r_start - 0.5).abs() < 1e-12);
        assert_eq!(ties[0].r_start, ties[0].r_end);
        assert_eq!(segments.first().unwrap().r_start, 0.1);
        assert_eq!(segments.last().unwrap().r_end, 0.9);
    }

    #[test]
    fn laibman_nell_reswitches() {
        let s1 = [1.0, 0.1, 1.0];
        let techs = vec![
            tech("I", [0.558720, 0.135872, 0.358720], s1),
            tech("II", [0.567120, 0.261712, 0.117120], s1),
        ];
        let segments = technique_frontier(&techs, 0, &[0.1, 0.3, 0.5]).unwrap();
        assert_eq!(singles(&segments), vec!["I", "II", "I"]);
    }

    #[test]
    fn single_technique_is_one_segment() {
        let techs = vec![g76().remove(0)];
        let segments = technique_frontier(&techs, 0, &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(segments.len(), 1);
        assert_eq!((segments[0].r_start, segments[0].r_end), (0.0, 1.0));
    }

    #[test]
    fn grid_outside_every_range_is_an_error() {
        assert!(technique_frontier(&g76(), 0, &[5.0, 6.0]).is_err());
    }

    #[test]
    fn in_use_at_points() {
        assert_eq!(techniques_in_use(&g76(), 0, 0.45).unwrap(), vec!["II"]);
        assert_eq!(techniques_in_use(&g76(), 0, 0.5).unwrap(), vec!["I", "II"]);
    }

    #[test]
    fn csv_layout() {
        let text = frontier_csv(&technique_frontier(&g76(), 0, &[0.1, 0.45, 0.9]).unwrap());
        assert!(text.starts_with("r_start,r_end,in_use,wage\n"));
        assert!(text.contains(",I-II,"));
    }
}
