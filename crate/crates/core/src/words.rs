//! Words over the letters `e_{z,k} = e_z e_0^{k-1}`, their rational linear
//! combinations, and the harmonic, shuffle and underlined harmonic products.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::eval::{iterated_sum, li_star_truncated, ParamPoint};
use crate::field::{ExactScalar, GaussianRational};
use crate::index::{Index, IndexCombo};
use crate::Rational;

/// `e_{z,k}`. The parameter is never zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    param: GaussianRational,
    exponent: usize,
}

impl Letter {
    pub fn new(param: GaussianRational, exponent: usize) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::domain("letter exponent must be at least 1"));
        }
        if param.is_zero() {
            return Err(Error::domain("letter parameter must be nonzero"));
        }
        Ok(Letter { param, exponent })
    }

    pub fn param(&self) -> &GaussianRational {
        &self.param
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    fn modulus_at_least_one(&self) -> bool {
        self.param.norm_sq_exact() >= Rational::one()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", ExactScalar::simplify(self.param.clone()), self.exponent)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds `e_{z_1,k_1} ... e_{z_r,k_r}`.
    pub fn from_parts(params: &[GaussianRational], k: &Index) -> Result<Self> {
        if params.len() != k.depth() {
            return Err(Error::Shape { expected: k.depth(), got: params.len() });
        }
        params.iter().zip(k.parts()).map(|(z, &e)| Letter::new(z.clone(), e)).collect::<Result<_>>().map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Length of the word over `{e_0} ∪ {e_z}`.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|l| l.exponent).sum()
    }

    pub fn index(&self) -> Index {
        Index::of(&self.0.iter().map(|l| l.exponent).collect::<Vec<_>>())
    }

    pub fn params(&self) -> Vec<GaussianRational> {
        self.0.iter().map(|l| l.param.clone()).collect()
    }

    /// Every parameter is nonzero; always true for a constructed word.
    pub fn in_h1(&self) -> bool {
        self.0.iter().all(|l| !l.param.is_zero())
    }

    /// Every parameter has modulus at least 1.
    pub fn in_h1_sh(&self) -> bool {
        self.0.iter().all(Letter::modulus_at_least_one)
    }

    /// [`in_h1_sh`](Self::in_h1_sh) and the word does not end in `e_{1,1}`.
    pub fn in_h0_sh(&self) -> bool {
        self.in_h1_sh()
            && self.0.last().is_none_or(|l| l.exponent >= 2 || l.param != GaussianRational::from_ints(1, 0))
    }

    /// Parses `z1^k1 . z2^k2 . ...`; a missing `^k` means `k = 1`, the
    /// empty string is the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in t.split(" . ") {
            let part = part.trim();
            let (z, k) = match part.rsplit_once('^') {
                Some((z, k)) => {
                    let k: usize = k.trim().parse().map_err(|_| Error::parse(format!("bad exponent in `{part}`")))?;
                    (z.trim(), k)
                }
                None => (part, 1),
            };
            let z = ExactScalar::parse(z)?.to_gaussian()?;
            letters.push(Letter::new(z, k)?);
        }
        Ok(Word(letters))
    }

    fn flatten(&self) -> Vec<Option<GaussianRational>> {
        let mut out = Vec::with_capacity(self.weight());
        for l in &self.0 {
            out.push(Some(l.param.clone()));
            out.extend(std::iter::repeat_n(None, l.exponent - 1));
        }
        out
    }

    fn regroup(symbols: &[Option<GaussianRational>]) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::new();
        for s in symbols {
            match s {
                Some(z) => letters.push(Letter { param: z.clone(), exponent: 1 }),
                None => match letters.last_mut() {
                    Some(l) => l.exponent += 1,
                    None => return Err(Error::domain("word starts with e_0")),
                },
            }
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" . "))
    }
}

/// A finite rational combination of words with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordCombo(BTreeMap<Word, Rational>);

impl WordCombo {
    pub fn zero() -> Self {
        WordCombo(BTreeMap::new())
    }

    pub fn unit() -> Self {
        Self::single(Word::empty())
    }

    pub fn single(w: Word) -> Self {
        let mut m = BTreeMap::new();
        m.insert(w, Rational::one());
        WordCombo(m)
    }

    pub fn add(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn add_combo(&mut self, other: &WordCombo, scale: &Rational) {
        for (w, c) in &other.0 {
            self.add(w.clone(), c * scale);
        }
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.0.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn append_letter(&self, l: &Letter) -> WordCombo {
        let mut out = WordCombo::zero();
        for (w, c) in &self.0 {
            let mut v = w.0.clone();
            v.push(l.clone());
            out.add(Word(v), c.clone());
        }
        out
    }
}

impl fmt::Display for WordCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(w, c)| format!("{c}*[{w}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn harmonic_words(a: &[Letter], b: &[Letter]) -> WordCombo {
    if a.is_empty() {
        return WordCombo::single(Word(b.to_vec()));
    }
    if b.is_empty() {
        return WordCombo::single(Word(a.to_vec()));
    }
    let (x, a0) = a.split_last().unwrap();
    let (y, b0) = b.split_last().unwrap();
    let mut out = harmonic_words(a0, b).append_letter(x);
    out.add_combo(&harmonic_words(a, b0).append_letter(y), &Rational::one());
    let merged = Letter { param: x.param.clone() * &y.param, exponent: x.exponent + y.exponent };
    out.add_combo(&harmonic_words(a0, b0).append_letter(&merged), &Rational::one());
    out
}

/// The harmonic (stuffle) product; merged letters multiply parameters and
/// add exponents.
pub fn harmonic(u: &WordCombo, v: &WordCombo) -> WordCombo {
    let mut out = WordCombo::zero();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            out.add_combo(&harmonic_words(&a.0, &b.0), &(ca * cb));
        }
    }
    out
}

fn shuffle_flat(
    a: &[Option<GaussianRational>],
    b: &[Option<GaussianRational>],
    prefix: &mut Vec<Option<GaussianRational>>,
    out: &mut Vec<Vec<Option<GaussianRational>>>,
) {
    if a.is_empty() || b.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        out.push(w);
        return;
    }
    prefix.push(a[0].clone());
    shuffle_flat(&a[1..], b, prefix, out);
    prefix.pop();
    prefix.push(b[0].clone());
    shuffle_flat(a, &b[1..], prefix, out);
    prefix.pop();
}

/// All interleavings of the flattened words, before collecting equal terms.
pub fn shuffle_terms(a: &Word, b: &Word) -> Result<Vec<Word>> {
    let mut raw = Vec::new();
    shuffle_flat(&a.flatten(), &b.flatten(), &mut Vec::new(), &mut raw);
    raw.iter().map(|s| Word::regroup(s)).collect()
}

/// The shuffle product on words whose parameters all have modulus at least 1.
pub fn shuffle(u: &WordCombo, v: &WordCombo) -> Result<WordCombo> {
    check_tier(u, "shuffle")?;
    check_tier(v, "shuffle")?;
    let mut out = WordCombo::zero();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            let c = ca * cb;
            for w in shuffle_terms(a, b)? {
                out.add(w, c.clone());
            }
        }
    }
    Ok(out)
}

fn check_tier(u: &WordCombo, what: &str) -> Result<()> {
    if let Some((w, _)) = u.terms().find(|(w, _)| !w.in_h1_sh()) {
        return Err(Error::domain(format!("{what}: word [{w}] has a parameter of modulus below 1")));
    }
    Ok(())
}

/// `e_{z_1,k_1} ... e_{z_r,k_r}  ↦  e_{z_2/z_1,k_1} ... e_{z_r/z_{r-1},k_{r-1}} e_{1/z_r,k_r}`.
pub fn top_map(u: &WordCombo) -> Result<WordCombo> {
    check_tier(u, "top map")?;
    let mut out = WordCombo::zero();
    for (w, c) in u.terms() {
        let n = w.0.len();
        let mut letters = Vec::with_capacity(n);
        for i in 0..n {
            let next = if i + 1 < n { w.0[i + 1].param.clone() } else { GaussianRational::from_ints(1, 0) };
            letters.push(Letter::new(crate::Field::checked_div(&next, &w.0[i].param)?, w.0[i].exponent)?);
        }
        out.add(Word(letters), c.clone());
    }
    Ok(out)
}

fn eval_linear(u: &WordCombo, f: impl Fn(&Word) -> Result<GaussianRational>) -> Result<ExactScalar> {
    let mut acc = GaussianRational::zero();
    for (w, c) in u.terms() {
        acc = acc + f(w)? * &GaussianRational::real(c.clone());
    }
    Ok(ExactScalar::simplify(acc))
}

/// Linear extension of `e_{ξ_1,k_1} ... e_{ξ_r,k_r} ↦ Li*_{k}^{<N}(ξ)`.
pub fn eval_l(u: &WordCombo, n_big: usize) -> Result<ExactScalar> {
    eval_linear(u, |w| li_star_truncated(&w.index(), &ParamPoint::new((), w.params()), n_big))
}

/// Linear extension of `e_{z_1,k_1} ... e_{z_r,k_r} ↦ I^{(N)}_k(z)`.
pub fn eval_i(u: &WordCombo, n_big: usize) -> Result<ExactScalar> {
    check_tier(u, "iterated evaluation")?;
    eval_linear(u, |w| iterated_sum(&w.index(), &ParamPoint::new((), w.params()), n_big, false))
}

fn harmonic_parts(a: &[usize], b: &[usize], out: &mut IndexCombo, suffix: &[usize], coeff: &Rational) {
    if a.is_empty() || b.is_empty() {
        let mut v = a.to_vec();
        v.extend_from_slice(b);
        v.extend_from_slice(suffix);
        out.add(Index::of(&v), coeff.clone());
        return;
    }
    let (&x, a0) = a.split_last().unwrap();
    let (&y, b0) = b.split_last().unwrap();
    let with = |t: usize| {
        let mut s = vec![t];
        s.extend_from_slice(suffix);
        s
    };
    harmonic_parts(a0, b, out, &with(x), coeff);
    harmonic_parts(a, b0, out, &with(y), coeff);
    harmonic_parts(a0, b0, out, &with(x + y), coeff);
}

/// The harmonic product of indices (all parameters 1).
pub fn index_harmonic(k: &Index, l: &Index) -> IndexCombo {
    let mut out = IndexCombo::default();
    harmonic_parts(k.parts(), l.parts(), &mut out, &[], &Rational::one());
    out
}

/// `k ∗̲ l = ((k_- * l), k_r) + ((k_- * l_-), k_r + l_s)` with `k ∗̲ ∅ = k`.
/// An empty `k` is rejected.
pub fn underline_harmonic(k: &Index, l: &Index) -> Result<IndexCombo> {
    let (k0, kr) = k.split_last().ok_or_else(|| Error::domain("left factor of the underlined product is empty"))?;
    let Some((l0, ls)) = l.split_last() else {
        return Ok(IndexCombo::single(k.clone()));
    };
    let mut out = index_harmonic(&k0, l).push_each(kr);
    out.add_combo(&index_harmonic(&k0, &l0).push_each(kr + ls), &Rational::one());
    Ok(out)
}

/// [`underline_harmonic`] extended linearly in the right factor.
pub fn underline_harmonic_combo(k: &Index, l: &IndexCombo) -> Result<IndexCombo> {
    let mut out = IndexCombo::default();
    for (li, c) in l.terms() {
        out.add_combo(&underline_harmonic(k, li)?, c);
    }
    Ok(out)
}

/// Sum of coefficients; the number of raw terms for a product of two words.
pub fn coefficient_sum(u: &WordCombo) -> Rational {
    u.terms().fold(Rational::zero(), |acc, (_, c)| acc + c)
}

/// True when every coefficient is a positive integer.
pub fn has_positive_integer_coefficients(u: &WordCombo) -> bool {
    u.terms().all(|(_, c)| c.is_integer() && c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn c(s: &str) -> WordCombo {
        WordCombo::single(w(s))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("2^1 . -1/2+i^3").to_string(), "2^1 . -1/2+1*i^3");
        assert_eq!(w("1").to_string(), "1^1");
        assert_eq!(w("").to_string(), "1");
        assert_eq!(w("-1^2").weight(), 2);
        assert!(Word::parse("0^1").is_err());
        assert!(Word::parse("2^0").is_err());
    }

    #[test]
    fn stuffle_examples() {
        let h = harmonic(&c("1^1"), &c("1^1"));
        assert_eq!(h.coeff(&w("1^1 . 1^1")), q(2, 1));
        assert_eq!(h.coeff(&w("1^2")), q(1, 1));
        assert_eq!(h.len(), 2);
        let h = harmonic(&c("-1^1"), &c("-1^1"));
        assert_eq!(h.coeff(&w("-1^1 . -1^1")), q(2, 1));
        assert_eq!(h.coeff(&w("1^2")), q(1, 1));
        assert_eq!(harmonic(&c("2^3 . i^1"), &WordCombo::unit()), c("2^3 . i^1"));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle(&c("3^1"), &WordCombo::unit()).unwrap(), c("3^1"));
        let s = shuffle(&c("1^2"), &c("-1^2")).unwrap();
        assert_eq!(coefficient_sum(&s), q(6, 1));
        assert_eq!(shuffle_terms(&w("1^2"), &w("-1^2")).unwrap().len(), 6);
        assert!(shuffle(&c("1/2^1"), &c("1^1")).is_err());
    }

    #[test]
    fn tiers() {
        assert!(w("1^1").in_h1_sh());
        assert!(!w("1^1").in_h0_sh());
        assert!(w("1^2").in_h0_sh());
        assert!(w("-1^1").in_h0_sh());
        assert!(!w("1/2^2").in_h1_sh());
        assert!(w("1/2^2").in_h1());
        assert!(w("1+i^1").in_h1_sh());
    }

    #[test]
    fn top_examples() {
        assert_eq!(top_map(&WordCombo::unit()).unwrap(), WordCombo::unit());
        assert_eq!(top_map(&c("2^3")).unwrap(), c("1/2^3"));
        assert_eq!(top_map(&c("2^1 . 2^2")).unwrap(), c("1^1 . 1/2^2"));
    }

    #[test]
    fn evaluations() {
        assert_eq!(eval_l(&WordCombo::unit(), 7).unwrap(), ExactScalar::parse("1").unwrap());
        assert_eq!(eval_l(&c("-1^1"), 5).unwrap(), ExactScalar::parse("-7/12").unwrap());
        assert_eq!(eval_i(&c("1^1"), 3).unwrap(), ExactScalar::parse("-3/2").unwrap());
        let h9 = q(7129, 2520);
        let lhs = eval_l(&harmonic(&c("1^1"), &c("1^1")), 10).unwrap();
        assert_eq!(lhs, ExactScalar::Rational(&h9 * &h9));
    }

    #[test]
    fn index_products() {
        let h = index_harmonic(&Index::of(&[1]), &Index::of(&[2]));
        assert_eq!(h.coeff(&Index::of(&[1, 2])), q(1, 1));
        assert_eq!(h.coeff(&Index::of(&[2, 1])), q(1, 1));
        assert_eq!(h.coeff(&Index::of(&[3])), q(1, 1));
        let u = underline_harmonic(&Index::of(&[1]), &Index::of(&[1])).unwrap();
        assert_eq!(u.coeff(&Index::of(&[1, 1])), q(1, 1));
        assert_eq!(u.coeff(&Index::of(&[2])), q(1, 1));
        assert_eq!(u.len(), 2);
        assert_eq!(underline_harmonic(&Index::of(&[2]), &Index::empty()).unwrap(), IndexCombo::single(Index::of(&[2])));
        assert!(underline_harmonic(&Index::empty(), &Index::of(&[1])).is_err());
    }
}
