//! Finite-N evidence for the asymptotic statements: the defect on a
//! geometric ladder of `N`, raw and rescaled by the claimed rate.
//!
//! A trend is evidence, not proof. The report records whether the raw
//! defect decreases and whether the rescaled defect stays within a factor
//! 10 across the ladder.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{iterated_sum, li_sh_truncated, li_tilde, ParamPoint};
use crate::field::{abs_upper_bound, rational_from_f64, render_decimal, ExactScalar, GaussianRational};
use crate::index::{dual_pair, DualizablePair, Index};
use crate::words::{eval_i, eval_l, harmonic, shuffle, top_map, Word, WordCombo};
use crate::Rational;

/// The default ladder.
pub const DEFAULT_LADDER: [usize; 4] = [20, 40, 80, 160];

/// Bound on max/min of the rescaled defect.
pub const RATIO_BOUND: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    /// Rational upper bound on `|lhs - rhs|`, exact for real values.
    pub abs_error: ExactScalar,
    pub scaled_error: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub kind: String,
    pub label: String,
    /// The factor `abs_error` is multiplied by, as a formula in `N`.
    pub scale: String,
    pub rows: Vec<TrendRow>,
    /// Every defect is exactly zero.
    pub exact_zero: bool,
    /// The raw defect decreases strictly from row to row.
    pub raw_decreasing: bool,
    /// max/min of the rescaled defect is below [`RATIO_BOUND`].
    pub bounded: bool,
    /// The rescaled defect never exceeds [`RATIO_BOUND`] times its first value.
    pub upper_bounded: bool,
    /// Rescaled defects under other candidate rates, for comparison.
    pub alternates: Vec<(String, Vec<ExactScalar>)>,
}

impl TrendReport {
    /// The evidence rule: an exact zero, or a decreasing raw defect with a
    /// bounded rescaled defect.
    pub fn holds(&self) -> bool {
        self.exact_zero || (self.raw_decreasing && self.bounded)
    }

    pub fn ratio(&self) -> Option<f64> {
        let v: Vec<f64> = self.rows.iter().map(|r| scalar_f64(&r.scaled_error)).collect();
        let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = v.iter().cloned().fold(0.0, f64::max);
        (min > 0.0).then_some(max / min)
    }

    /// `N,lhs,rhs,abs_error,scaled_error`, LF line ends.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,lhs,rhs,abs_error,scaled_error\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n,
                r.lhs,
                r.rhs,
                render_decimal(&scalar_rational(&r.abs_error), 12),
                render_decimal(&scalar_rational(&r.scaled_error), 12)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn scalar_rational(s: &ExactScalar) -> Rational {
    match s {
        ExactScalar::Rational(q) => q.clone(),
        _ => Rational::zero(),
    }
}

fn scalar_f64(s: &ExactScalar) -> f64 {
    crate::field::to_f64(&scalar_rational(s))
}

/// A rate `N^e / log^l N`.
#[derive(Clone, Copy, Debug)]
pub struct Rate {
    pub power: f64,
    pub log_power: usize,
}

impl Rate {
    fn factor(self, n: usize) -> f64 {
        let n = n as f64;
        n.powf(self.power) / n.ln().powi(self.log_power as i32)
    }

    fn describe(self) -> String {
        let p = if self.power == 1.0 { "N".to_string() } else { format!("N^{}", fmt_power(self.power)) };
        match self.log_power {
            0 => p,
            1 => format!("{p}/log(N)"),
            l => format!("{p}/log(N)^{l}"),
        }
    }
}

fn fmt_power(p: f64) -> &'static str {
    if (p - 1.0 / 3.0).abs() < 1e-12 {
        "(1/3)"
    } else if (p - 0.5).abs() < 1e-12 {
        "(1/2)"
    } else {
        "1"
    }
}

fn check_ladder(ns: &[usize]) -> Result<()> {
    if ns.is_empty() || ns[0] < 2 || ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::parse("the N list must be strictly increasing and start at 2 or above"));
    }
    Ok(())
}

fn scaled(abs: &Rational, rate: Rate, n: usize) -> Rational {
    abs * rational_from_f64(rate.factor(n))
}

/// Assembles a report from the two sides at each `N`.
pub fn build_report(
    kind: &str,
    label: String,
    rate: Rate,
    alternates: &[Rate],
    ns: &[usize],
    mut sides: impl FnMut(usize) -> Result<(GaussianRational, GaussianRational)>,
) -> Result<TrendReport> {
    check_ladder(ns)?;
    let mut rows = Vec::with_capacity(ns.len());
    let mut abs = Vec::with_capacity(ns.len());
    for &n in ns {
        let (l, r) = sides(n)?;
        let d = ExactScalar::simplify(l.clone() - &r);
        let a = abs_upper_bound(&d).expect("characteristic zero");
        rows.push(TrendRow {
            n,
            lhs: ExactScalar::simplify(l),
            rhs: ExactScalar::simplify(r),
            abs_error: ExactScalar::Rational(a.clone()),
            scaled_error: ExactScalar::Rational(scaled(&a, rate, n)),
        });
        abs.push(a);
    }
    let exact_zero = abs.iter().all(|a| a.is_zero());
    let raw_decreasing = abs.windows(2).all(|w| w[1] < w[0]);
    let sc: Vec<Rational> = rows.iter().map(|r| scalar_rational(&r.scaled_error)).collect();
    let min = sc.iter().min().cloned().unwrap_or_default();
    let max = sc.iter().max().cloned().unwrap_or_default();
    let bound = rational_from_f64(RATIO_BOUND);
    let bounded = exact_zero || (min.is_positive() && max < &min * &bound);
    let upper_bounded = exact_zero || max <= &sc[0] * &bound;
    let alternates = alternates
        .iter()
        .map(|&a| {
            let v = ns.iter().zip(&abs).map(|(&n, d)| ExactScalar::Rational(scaled(d, a, n))).collect();
            (a.describe(), v)
        })
        .collect();
    Ok(TrendReport {
        kind: kind.to_string(),
        label,
        scale: rate.describe(),
        rows,
        exact_zero,
        raw_decreasing,
        bounded,
        upper_bounded,
        alternates,
    })
}

fn gauss_point(z: &[GaussianRational]) -> ParamPoint<GaussianRational> {
    ParamPoint::new((), z.to_vec())
}

fn render_points(z: &[GaussianRational]) -> String {
    let parts: Vec<String> = z.iter().map(|v| ExactScalar::simplify(v.clone()).to_string()).collect();
    format!("({})", parts.join(","))
}

fn to_gaussian(s: ExactScalar) -> Result<GaussianRational> {
    s.to_gaussian()
}

/// `L~i_k(z)` against `Li_k^{<N}(z)` at rate `N^{1/3}/log^r N`.
pub fn prop25_trend(k: &Index, z: &[GaussianRational], ns: &[usize]) -> Result<TrendReport> {
    let r = k.depth();
    let x = gauss_point(z);
    x.check_depth(k)?;
    let alts: Vec<Rate> = [1.0 / 3.0, 0.5, 1.0].iter().map(|&p| Rate { power: p, log_power: r }).collect();
    build_report(
        "prop25",
        format!("k={k} z={}", render_points(z)),
        Rate { power: 1.0 / 3.0, log_power: r },
        &alts,
        ns,
        |n| Ok((li_tilde(k, &x, n)?, li_sh_truncated(k, &x, n)?)),
    )
}

/// `I^{(N)}_{k'}(z')` against `(-1)^{wt} I^{(N)}_k(z)` at rate `N/log^{wt} N`.
pub fn duality_trend(p: &DualizablePair, ns: &[usize]) -> Result<TrendReport> {
    let (q, iota) = dual_pair(p)?;
    let k = p.index();
    let w = k.weight();
    let x = gauss_point(p.points());
    let y = gauss_point(q.points());
    build_report(
        "duality",
        format!("k={k} z={} dual k={} z={} iota={iota}", render_points(p.points()), q.index(), render_points(q.points())),
        Rate { power: 1.0, log_power: w },
        &[],
        ns,
        |n| {
            let a = iterated_sum(q.index(), &y, n, false)?;
            let b = iterated_sum(k, &x, n, false)?;
            Ok((a, if w % 2 == 1 { -b } else { b }))
        },
    )
}

fn word_weight(w1: &Word, w0: &Word) -> usize {
    w1.weight() + w0.weight()
}

/// `I(w1) I(w0)` against `I(w1 ш w0)` at rate `N/log^{wt} N`.
pub fn shuffle_trend(w1: &Word, w0: &Word, ns: &[usize]) -> Result<TrendReport> {
    let (c1, c0) = (WordCombo::single(w1.clone()), WordCombo::single(w0.clone()));
    let sh = shuffle(&c1, &c0)?;
    build_report(
        "shuffle",
        format!("w1=[{w1}] w0=[{w0}]"),
        Rate { power: 1.0, log_power: word_weight(w1, w0) },
        &[],
        ns,
        |n| {
            let a = to_gaussian(eval_i(&c1, n)?)? * to_gaussian(eval_i(&c0, n)?)?;
            Ok((a, to_gaussian(eval_i(&sh, n)?)?))
        },
    )
}

/// `L(⊤w1 * ⊤w0)` against `L(⊤(w1 ш w0))` at rate `N^{1/3}/log^{wt} N`;
/// `w0` must not end in `e_{1,1}`.
pub fn adsr_trend(w1: &Word, w0: &Word, ns: &[usize]) -> Result<TrendReport> {
    if !w1.in_h1_sh() {
        return Err(Error::domain(format!("[{w1}] has a parameter of modulus below 1")));
    }
    if !w0.in_h0_sh() {
        return Err(Error::domain(format!("[{w0}] is not in the convergent tier")));
    }
    let (c1, c0) = (WordCombo::single(w1.clone()), WordCombo::single(w0.clone()));
    let stuffle_side = harmonic(&top_map(&c1)?, &top_map(&c0)?);
    let shuffle_side = top_map(&shuffle(&c1, &c0)?)?;
    let wt = word_weight(w1, w0);
    build_report(
        "adsr",
        format!("w1=[{w1}] w0=[{w0}]"),
        Rate { power: 1.0 / 3.0, log_power: wt },
        &[Rate { power: 1.0 / 3.0, log_power: 0 }],
        ns,
        |n| Ok((to_gaussian(eval_l(&stuffle_side, n)?)?, to_gaussian(eval_l(&shuffle_side, n)?)?)),
    )
}

/// One default trend case.
#[derive(Clone, Debug)]
pub enum TrendCase {
    Prop25(Index, Vec<GaussianRational>),
    Duality(DualizablePair),
    Shuffle(Word, Word),
    Adsr(Word, Word),
}

impl TrendCase {
    pub fn run(&self, ns: &[usize]) -> Result<TrendReport> {
        match self {
            TrendCase::Prop25(k, z) => prop25_trend(k, z, ns),
            TrendCase::Duality(p) => duality_trend(p, ns),
            TrendCase::Shuffle(a, b) => shuffle_trend(a, b, ns),
            TrendCase::Adsr(a, b) => adsr_trend(a, b, ns),
        }
    }

    /// Whether the defect vanishes identically for this case.
    pub fn expect_zero(&self) -> bool {
        match self {
            TrendCase::Prop25(_, z) => z.iter().all(|v| *v == GaussianRational::from_ints(1, 0)),
            TrendCase::Duality(p) => dual_pair(p).map(|(q, _)| &q == p).unwrap_or(false),
            TrendCase::Shuffle(a, b) | TrendCase::Adsr(a, b) => a.is_empty() || b.is_empty(),
        }
    }
}

fn g(n: i64) -> GaussianRational {
    GaussianRational::from_ints(n, 0)
}

fn word(s: &str) -> Word {
    Word::parse(s).expect("literal word")
}

/// The default cases of every trend family.
pub fn default_trends() -> Vec<TrendCase> {
    let pair = |k: &[usize], z: &[i64]| {
        DualizablePair::new(Index::of(k), z.iter().map(|&v| g(v)).collect()).expect("dualizable default")
    };
    vec![
        TrendCase::Prop25(Index::of(&[1]), vec![g(-1)]),
        TrendCase::Prop25(Index::of(&[1, 2]), vec![g(2), g(1)]),
        TrendCase::Prop25(Index::of(&[1, 2]), vec![g(1), g(1)]),
        TrendCase::Duality(pair(&[1], &[-1])),
        TrendCase::Duality(pair(&[1, 2], &[2, 2])),
        TrendCase::Duality(pair(&[2], &[1])),
        TrendCase::Shuffle(word("-1^2"), word("-1^2")),
        TrendCase::Shuffle(word("2^1"), word("2^2")),
        TrendCase::Shuffle(Word::empty(), word("2^2")),
        TrendCase::Adsr(word("-1^2"), word("-1^2")),
        TrendCase::Adsr(word("2^1"), word("2^2")),
        TrendCase::Adsr(Word::empty(), word("2^2")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_must_increase() {
        assert!(prop25_trend(&Index::of(&[1]), &[g(-1)], &[20, 20]).is_err());
        assert!(prop25_trend(&Index::of(&[1]), &[g(-1)], &[1, 20]).is_err());
    }

    #[test]
    fn zero_cases() {
        let r = prop25_trend(&Index::of(&[1, 2]), &[g(1), g(1)], &[20, 40]).unwrap();
        assert!(r.exact_zero && r.holds());
        let r = adsr_trend(&Word::empty(), &word("2^2"), &[20, 40]).unwrap();
        assert!(r.exact_zero);
        assert!(adsr_trend(&word("2^1"), &word("1^1"), &[20]).is_err());
    }

    #[test]
    fn csv_shape() {
        let r = prop25_trend(&Index::of(&[1]), &[g(-1)], &[20, 40, 80]).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "N,lhs,rhs,abs_error,scaled_error");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("20,"));
    }
}
