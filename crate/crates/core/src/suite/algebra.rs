use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::Result;
use crate::eval::{li_star_prefix, ParamPoint};
use crate::field::GaussianRational;
use crate::index::{compositions, enumerate_indices, Index, IndexCombo};
use crate::suite::{Campaign, CaseResult, Status};
use crate::words::{harmonic, shuffle, underline_harmonic, Letter, Word, WordCombo};
use crate::Rational;

/// Letter parameters of the exhaustive word sweeps: `1, -1, 2, i`.
pub fn sweep_params() -> [GaussianRational; 4] {
    [
        GaussianRational::from_ints(1, 0),
        GaussianRational::from_ints(-1, 0),
        GaussianRational::from_ints(2, 0),
        GaussianRational::from_ints(0, 1),
    ]
}

/// All words of flattened length exactly `len` over [`sweep_params`].
pub fn words_of_length(len: usize) -> Vec<Word> {
    if len == 0 {
        return vec![Word::empty()];
    }
    let params = sweep_params();
    let mut out = Vec::new();
    for comp in compositions(len) {
        let mut choice = vec![0usize; comp.len()];
        loop {
            let letters = comp
                .iter()
                .zip(&choice)
                .map(|(&k, &c)| Letter::new(params[c].clone(), k).expect("valid letter"))
                .collect();
            out.push(Word::new(letters));
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < params.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    out
}

/// Word tuples of the given arity with every word nonempty and total
/// flattened length at most `max_len`.
fn tuples(arity: usize, max_len: usize) -> Vec<Vec<Word>> {
    let by_len: Vec<Vec<Word>> = (0..=max_len).map(words_of_length).collect();
    let mut out = Vec::new();
    let mut lens = Vec::new();
    fn rec(arity: usize, left: usize, lens: &mut Vec<usize>, by_len: &[Vec<Word>], out: &mut Vec<Vec<Word>>) {
        if lens.len() == arity {
            let mut acc: Vec<Vec<Word>> = vec![Vec::new()];
            for &l in lens.iter() {
                acc = acc.into_iter().flat_map(|t| by_len[l].iter().map(move |w| [t.clone(), vec![w.clone()]].concat())).collect();
            }
            out.extend(acc);
            return;
        }
        for l in 1..=left {
            lens.push(l);
            rec(arity, left - l, lens, by_len, out);
            lens.pop();
        }
    }
    rec(arity, max_len, &mut lens, &by_len, &mut out);
    out
}

fn graded(u: &WordCombo, weight: usize) -> bool {
    u.terms().all(|(w, _)| w.weight() == weight)
}

fn combo_case(id: String, a: &WordCombo, b: &WordCombo) -> CaseResult {
    if a == b {
        CaseResult::new(id, Status::Pass)
    } else {
        let mut c = CaseResult::new(id, Status::Fail);
        c.lhs = Some(a.to_string());
        c.rhs = Some(b.to_string());
        c
    }
}

fn flag_case(id: String, ok: bool, note: &str) -> CaseResult {
    let mut c = CaseResult::new(id, if ok { Status::Pass } else { Status::Fail });
    if !ok {
        c.note = Some(note.to_string());
    }
    c
}

fn prefix_of(w: &Word, n_max: usize) -> Result<Vec<GaussianRational>> {
    li_star_prefix(&w.index(), &ParamPoint::new((), w.params()), n_max)
}

type Prefixes = Arc<Vec<GaussianRational>>;

/// Memoized [`prefix_of`]; sweeps evaluate the same words many times.
struct PrefixCache {
    n_max: usize,
    map: Mutex<BTreeMap<Word, Prefixes>>,
}

impl PrefixCache {
    fn new(n_max: usize) -> Self {
        PrefixCache { n_max, map: Mutex::default() }
    }

    fn get(&self, w: &Word) -> Result<Prefixes> {
        if let Some(v) = self.map.lock().expect("cache lock").get(w) {
            return Ok(v.clone());
        }
        let v = Arc::new(prefix_of(w, self.n_max)?);
        self.map.lock().expect("cache lock").insert(w.clone(), v.clone());
        Ok(v)
    }
}

/// `L_{<N}(u)` for every `N <= n_max`.
fn combo_prefix(u: &WordCombo, cache: &PrefixCache) -> Result<Vec<GaussianRational>> {
    let mut acc = vec![GaussianRational::zero(); cache.n_max + 1];
    for (w, c) in u.terms() {
        let c = GaussianRational::real(c.clone());
        for (a, v) in acc.iter_mut().zip(cache.get(w)?.iter()) {
            *a = a.clone() + v.clone() * &c;
        }
    }
    Ok(acc)
}

/// `L_{<N}(u) L_{<N}(v)` and `L_{<N}(u * v)` at the first `N` where they
/// differ, or at `n_max`.
pub fn harmonic_product_sides(u: &Word, v: &Word, n_max: usize) -> Result<(GaussianRational, GaussianRational)> {
    product_sides(u, v, &PrefixCache::new(n_max))
}

fn product_sides(u: &Word, v: &Word, cache: &PrefixCache) -> Result<(GaussianRational, GaussianRational)> {
    let n_max = cache.n_max;
    let a = cache.get(u)?;
    let b = cache.get(v)?;
    let h = combo_prefix(&harmonic(&WordCombo::single(u.clone()), &WordCombo::single(v.clone())), cache)?;
    for n in 1..=n_max {
        let lhs = a[n].clone() * &b[n];
        if lhs != h[n] || n == n_max {
            return Ok((lhs, h[n].clone()));
        }
    }
    Ok((GaussianRational::zero(), GaussianRational::zero()))
}

fn zeta_prefix(k: &Index, n_max: usize) -> Result<Vec<Rational>> {
    let ones = ParamPoint::new((), vec![Rational::from_integer(1.into()); k.depth()]);
    li_star_prefix(k, &ones, n_max)
}

/// `s_{<N}(k) zeta_{<N+1}(l)` and `s_{<N}(k ∗̲ l)` at the first `N` where
/// they differ, or at `n_max`.
pub fn underline_identity_sides(k: &Index, l: &Index, n_max: usize) -> Result<(Rational, Rational)> {
    let zk = zeta_prefix(k, n_max + 1)?;
    let zl = zeta_prefix(l, n_max + 1)?;
    let prod: IndexCombo = underline_harmonic(k, l)?;
    let mut terms = Vec::new();
    for (h, c) in prod.terms() {
        terms.push((zeta_prefix(h, n_max + 1)?, c.clone()));
    }
    for n in 1..=n_max {
        let lhs = (&zk[n + 1] - &zk[n]) * &zl[n + 1];
        let rhs = terms.iter().fold(Rational::zero(), |acc, (z, c)| acc + (&z[n + 1] - &z[n]) * c);
        if lhs != rhs || n == n_max {
            return Ok((lhs, rhs));
        }
    }
    Ok((Rational::zero(), Rational::zero()))
}

enum Job {
    Pair(Word, Word),
    Triple(Word, Word, Word),
    Product(Word, Word),
    Underline(Index, Index),
}

pub(crate) fn verify_word_algebra(c: &Campaign) -> Vec<CaseResult> {
    let mut jobs = Vec::new();
    for t in tuples(2, c.max_weight) {
        jobs.push(Job::Pair(t[0].clone(), t[1].clone()));
    }
    for t in tuples(3, c.max_weight) {
        jobs.push(Job::Triple(t[0].clone(), t[1].clone(), t[2].clone()));
    }
    for t in tuples(2, c.max_weight + 1) {
        jobs.push(Job::Product(t[0].clone(), t[1].clone()));
    }
    let idx = enumerate_indices(c.max_weight, c.max_weight, false);
    for k in idx.iter().filter(|k| !k.is_empty()) {
        for l in idx.iter().filter(|l| k.weight() + l.weight() <= c.max_weight) {
            jobs.push(Job::Underline(k.clone(), l.clone()));
        }
    }
    let n_max = c.n_max;
    let cache = PrefixCache::new(n_max);
    let s_max = c.n_max.min(20);
    let out: Vec<Vec<CaseResult>> = run_jobs_multi(&jobs, |j| match j {
        Job::Pair(u, v) => {
            let (cu, cv) = (WordCombo::single(u.clone()), WordCombo::single(v.clone()));
            let id = format!("words/pair/[{u}]/[{v}]");
            let h1 = harmonic(&cu, &cv);
            let h2 = harmonic(&cv, &cu);
            let mut cases = vec![combo_case(format!("{id}/harmonic-commutes"), &h1, &h2)];
            let w = u.weight() + v.weight();
            cases.push(flag_case(format!("{id}/harmonic-graded"), graded(&h1, w), "weight not additive"));
            match (shuffle(&cu, &cv), shuffle(&cv, &cu)) {
                (Ok(s1), Ok(s2)) => {
                    cases.push(combo_case(format!("{id}/shuffle-commutes"), &s1, &s2));
                    cases.push(flag_case(format!("{id}/shuffle-graded"), graded(&s1, w), "weight not additive"));
                    let tier = s1.terms().all(|(w, _)| w.in_h1_sh());
                    cases.push(flag_case(format!("{id}/shuffle-tier"), tier, "shuffle left the tier"));
                }
                (Err(e), _) | (_, Err(e)) => cases.push(CaseResult::from_error(format!("{id}/shuffle"), &e)),
            }
            cases
        }
        Job::Triple(u, v, w) => {
            let (cu, cv, cw) = (WordCombo::single(u.clone()), WordCombo::single(v.clone()), WordCombo::single(w.clone()));
            let id = format!("words/triple/[{u}]/[{v}]/[{w}]");
            let mut cases = vec![combo_case(
                format!("{id}/harmonic-associates"),
                &harmonic(&harmonic(&cu, &cv), &cw),
                &harmonic(&cu, &harmonic(&cv, &cw)),
            )];
            let s = (|| Ok((shuffle(&shuffle(&cu, &cv)?, &cw)?, shuffle(&cu, &shuffle(&cv, &cw)?)?)))();
            match s {
                Ok((a, b)) => cases.push(combo_case(format!("{id}/shuffle-associates"), &a, &b)),
                Err(e) => cases.push(CaseResult::from_error(format!("{id}/shuffle-associates"), &e)),
            }
            cases
        }
        Job::Product(u, v) => {
            let id = format!("words/harmonic-product/[{u}]/[{v}]/N<={n_max}");
            vec![CaseResult::from_result(id, product_sides(u, v, &cache))]
        }
        Job::Underline(k, l) => {
            let id = format!("words/underline/k={k}/l={l}/N<={s_max}");
            vec![CaseResult::from_result(id, underline_identity_sides(k, l, s_max))]
        }
    });
    out.into_iter().flatten().collect()
}

fn run_jobs_multi<J: Sync>(jobs: &[J], f: impl Fn(&J) -> Vec<CaseResult> + Sync + Send) -> Vec<Vec<CaseResult>> {
    use rayon::prelude::*;
    jobs.par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(words_of_length(1).len(), 4);
        assert_eq!(words_of_length(2).len(), 20);
        assert_eq!(words_of_length(3).len(), 100);
        assert_eq!(tuples(2, 2).len(), 16);
    }

    #[test]
    fn product_formula_small() {
        let u = Word::parse("1^1").unwrap();
        let (a, b) = harmonic_product_sides(&u, &u, 10).unwrap();
        assert_eq!(a, b);
        let (a, b) = underline_identity_sides(&Index::of(&[2]), &Index::of(&[1, 1]), 20).unwrap();
        assert_eq!(a, b);
    }
}
