//! Random viable economies and an independent wage evaluator for tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reswitch_core::{validate, Matrix, Technique64};

/// Column of `n` nonnegative entries, about half of them zero, summing to `total`.
fn sparse_column(rng: &mut ChaCha8Rng, n: usize, total: f64) -> Vec<f64> {
    let mut col: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(0.0..1.0) } else { 0.0 }).collect();
    if col.iter().all(|x| *x == 0.0) {
        col[rng.gen_range(0..n)] = 1.0;
    }
    let s: f64 = col.iter().sum();
    col.iter_mut().for_each(|x| *x *= total / s);
    col
}

pub struct Sector {
    pub labor: f64,
    pub circulating: Vec<f64>,
    pub capital: Vec<f64>,
}

pub fn random_sector(rng: &mut ChaCha8Rng, n: usize) -> Sector {
    let labor = rng.gen_range(0.1..2.0);
    let (a_total, b_total) = (rng.gen_range(0.0..0.4), rng.gen_range(0.05..0.4));
    Sector {
        labor,
        circulating: sparse_column(rng, n, a_total),
        capital: sparse_column(rng, n, b_total),
    }
}

pub fn assemble(name: &str, sectors: &[Sector], depreciation: Vec<f64>) -> Technique64 {
    let n = sectors.len();
    let circulating = Matrix::from_fn(n, n, |i, j| sectors[j].circulating[i]);
    let capital = Matrix::from_fn(n, n, |i, j| sectors[j].capital[i]);
    Technique64::new(name, sectors.iter().map(|s| s.labor).collect(), circulating, capital, depreciation)
        .expect("consistent dimensions")
}

/// A viable technique of order `n`; column sums of `A + B` stay below 0.8.
pub fn random_technique(rng: &mut ChaCha8Rng, n: usize) -> (Technique64, Vec<Sector>, Vec<f64>) {
    loop {
        let sectors: Vec<Sector> = (0..n).map(|_| random_sector(rng, n)).collect();
        let full = rng.gen_bool(0.4);
        let depreciation: Vec<f64> = (0..n).map(|_| if full { 1.0 } else { rng.gen_range(0.05..=1.0) }).collect();
        let t = assemble("a", &sectors, depreciation.clone());
        if validate(&t).valid {
            return (t, sectors, depreciation);
        }
    }
}

/// A technique and a second one differing from it in one sector.
pub fn random_pair(seed: u64, max_order: usize) -> (Technique64, Technique64, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_order);
    let (a, mut sectors, depreciation) = random_technique(&mut rng, n);
    loop {
        let s = rng.gen_range(0..n);
        sectors[s] = random_sector(&mut rng, n);
        let b = assemble("b", &sectors, depreciation.clone());
        if validate(&b).valid && !a.same_coefficients(&b) {
            return (a, b, s);
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `w / p_j` from `x (I - A - diag(delta + r) B) = a_0`, solved by Gaussian
/// elimination with partial pivoting on the transposed system. Written
/// independently of the library's solvers. Orders up to 8.
pub struct WageOracle {
    n: usize,
    /// transposed `I - A - diag(delta) B`, augmented with `a_0`
    fixed: Vec<f64>,
    /// transposed `B`, zero in the augmented column
    slope: Vec<f64>,
    numeraire: usize,
}

impl WageOracle {
    pub fn new(t: &Technique64, numeraire: usize) -> Self {
        let n = t.order();
        assert!(n <= 8);
        let w = n + 1;
        let mut fixed = vec![0.0; n * w];
        let mut slope = vec![0.0; n * w];
        for j in 0..n {
            for i in 0..n {
                let id = if i == j { 1.0 } else { 0.0 };
                let b = *t.capital.get(i, j);
                fixed[j * w + i] = id - *t.circulating.get(i, j) - t.depreciation[i] * b;
                slope[j * w + i] = b;
            }
            fixed[j * w + n] = t.labor[j];
        }
        Self { n, fixed, slope, numeraire }
    }

    pub fn wage(&self, r: f64) -> f64 {
        1.0 / self.prices_in_wage_units(r)[self.numeraire]
    }

    /// `p / w` at `r`; NaN entries when singular.
    pub fn prices_in_wage_units(&self, r: f64) -> [f64; 8] {
        let n = self.n;
        let w = n + 1;
        let mut m = [0.0f64; 72];
        for k in 0..n * w {
            m[k] = self.fixed[k] - r * self.slope[k];
        }
        for c in 0..n {
            let mut p = c;
            for row in c + 1..n {
                if m[row * w + c].abs() > m[p * w + c].abs() {
                    p = row;
                }
            }
            if m[p * w + c] == 0.0 {
                return [f64::NAN; 8];
            }
            if p != c {
                for k in 0..w {
                    m.swap(p * w + k, c * w + k);
                }
            }
            let inv = 1.0 / m[c * w + c];
            for row in c + 1..n {
                let f = m[row * w + c] * inv;
                if f != 0.0 {
                    for k in c..w {
                        m[row * w + k] -= f * m[c * w + k];
                    }
                }
            }
        }
        let mut x = [0.0f64; 8];
        for c in (0..n).rev() {
            let mut s = m[c * w + n];
            for k in c + 1..n {
                s -= m[c * w + k] * x[k];
            }
            x[c] = s / m[c * w + c];
        }
        x
    }
}

/// Sign changes of `w_a - w_b` on `points` uniform points of `[lo, hi]`,
/// for techniques differing only in sector `changed`, wages measured in
/// that good.
///
/// Uses one solve per point: with `x = p_a / w_a`, the extra cost `e` of b's
/// method at a's prices satisfies `x_b - x_a = e (row changed of M_b^-1)`,
/// and `M_b^-1 >= 0` with a positive diagonal below the maximum rate, so
/// `e` has the sign of `w_a - w_b`.
pub fn brute_force_crossings(a: &Technique64, b: &Technique64, changed: usize, lo: f64, hi: f64, points: usize) -> usize {
    let n = a.order();
    let oracle = WageOracle::new(a, changed);
    let fixed: Vec<f64> = (0..n)
        .map(|i| *b.circulating.get(i, changed) + b.depreciation[i] * *b.capital.get(i, changed))
        .collect();
    let slope: Vec<f64> = (0..n).map(|i| *b.capital.get(i, changed)).collect();
    let mut count = 0;
    let mut prev = f64::NAN;
    for k in 0..points {
        let r = lo + (hi - lo) * k as f64 / (points - 1) as f64;
        let x = oracle.prices_in_wage_units(r);
        let mut d = b.labor[changed] - x[changed];
        for i in 0..n {
            d += x[i] * (fixed[i] + r * slope[i]);
        }
        if d == 0.0 || d.is_nan() {
            continue;
        }
        if !prev.is_nan() && (d > 0.0) != (prev > 0.0) {
            count += 1;
        }
        prev = d;
    }
    count
}
