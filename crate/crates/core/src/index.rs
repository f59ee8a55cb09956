//! Indices (compositions) and their combinatorics.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::GaussianRational;
use crate::Rational;

/// A finite sequence of positive integers.
///
/// Ordered by `(weight, depth, parts)`, which is also the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Index(Vec<usize>);

impl Index {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain(format!("index parts must be positive: {parts:?}")));
        }
        Ok(Index(parts))
    }

    /// Panics on a zero part; for literals in code and tests.
    pub fn of(parts: &[usize]) -> Self {
        Index::new(parts.to_vec()).expect("positive parts")
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `(k_1, ..., k_{r-1})` and `k_r`.
    pub fn split_last(&self) -> Option<(Index, usize)> {
        let (&last, init) = self.0.split_last()?;
        Some((Index(init.to_vec()), last))
    }

    pub fn push(&self, k: usize) -> Index {
        assert!(k >= 1);
        let mut v = self.0.clone();
        v.push(k);
        Index(v)
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    /// The index with slot `i` (0-based) removed.
    pub fn remove(&self, i: usize) -> Index {
        let mut v = self.0.clone();
        v.remove(i);
        Index(v)
    }

    /// The index with part `i` (0-based) lowered by one; requires `k_i > 1`.
    pub fn lower(&self, i: usize) -> Index {
        assert!(self.0[i] > 1, "cannot lower a part equal to 1");
        let mut v = self.0.clone();
        v[i] -= 1;
        Index(v)
    }

    /// Parses `k1,k2,...`; the empty string is the empty index.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(Index::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::parse(format!("invalid index literal `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }

    /// `(1,2)` style, with `()` for the empty index.
    pub fn tuple(&self) -> String {
        format!("({self})")
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight(), self.depth(), &self.0).cmp(&(other.weight(), other.depth(), &other.0))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Index::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Writes an admissible nonempty index as blocks `({1}^{a-1}, b+1)`.
fn blocks(k: &Index) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut ones = 0;
    for &p in k.parts() {
        if p == 1 {
            ones += 1;
        } else {
            out.push((ones + 1, p - 1));
            ones = 0;
        }
    }
    debug_assert_eq!(ones, 0);
    out
}

fn block_index(a: usize, b: usize) -> Vec<usize> {
    let mut v = vec![1; a - 1];
    v.push(b + 1);
    v
}

/// The dual of an admissible index.
pub fn dual_index(k: &Index) -> Result<Index> {
    if !k.is_admissible() {
        return Err(Error::domain(format!("dual index needs an admissible index, got {}", k.tuple())));
    }
    let mut parts = Vec::with_capacity(k.weight());
    for (a, b) in blocks(k).into_iter().rev() {
        parts.extend(block_index(b, a));
    }
    Ok(Index(parts))
}

/// All compositions of `w`, in lexicographic order.
pub fn compositions(w: usize) -> Vec<Vec<usize>> {
    if w == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=w {
        for mut rest in compositions(w - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All `l` that coarsen to `k` by turning commas into plus signs, i.e. the
/// indices obtained by splitting every part of `k` into a composition.
pub fn refinements(k: &Index) -> Vec<Index> {
    let mut acc: Vec<Vec<usize>> = vec![vec![]];
    for &p in k.parts() {
        let comps = compositions(p);
        acc = acc
            .iter()
            .flat_map(|head| {
                comps.iter().map(move |c| {
                    let mut v = head.clone();
                    v.extend_from_slice(c);
                    v
                })
            })
            .collect();
    }
    let mut out: Vec<Index> = acc.into_iter().map(Index).collect();
    out.sort();
    out
}

/// All indices obtained from `k` by replacing any subset of its commas by
/// plus signs.
pub fn coarsenings(k: &Index) -> Vec<Index> {
    let parts = k.parts();
    if parts.is_empty() {
        return vec![Index::empty()];
    }
    let commas = parts.len() - 1;
    let mut out = Vec::with_capacity(1 << commas);
    for mask in 0u64..(1u64 << commas) {
        let mut v = vec![parts[0]];
        for (c, &p) in parts[1..].iter().enumerate() {
            if mask >> c & 1 == 1 {
                *v.last_mut().unwrap() += p;
            } else {
                v.push(p);
            }
        }
        out.push(Index(v));
    }
    out.sort();
    out
}

/// `k^star`: the formal sum of all coarsenings of `k`.
pub fn coarsenings_star(k: &Index) -> IndexCombo {
    let mut c = IndexCombo::default();
    for h in coarsenings(k) {
        c.add(h, Rational::one());
    }
    c
}

fn check_len(l: &[usize], k: &Index) -> Result<()> {
    if l.len() != k.depth() {
        return Err(Error::Shape { expected: k.depth(), got: l.len() });
    }
    Ok(())
}

/// `(l_1 + k_1, ..., l_r + k_r)`.
pub fn oplus(l: &[usize], k: &Index) -> Result<Index> {
    check_len(l, k)?;
    Ok(Index(l.iter().zip(k.parts()).map(|(a, b)| a + b).collect()))
}

/// `(l_1 + 1, {1}^{k_1-1}, ..., l_r + 1, {1}^{k_r-1})`.
pub fn oslash(l: &[usize], k: &Index) -> Result<Index> {
    check_len(l, k)?;
    let mut v = Vec::new();
    for (&a, &b) in l.iter().zip(k.parts()) {
        v.push(a + 1);
        v.extend(std::iter::repeat_n(1, b - 1));
    }
    Ok(Index(v))
}

/// All `h` with `l (+) k <= h <= l (/) k`: collapse any subset of the commas
/// inside each block `(l_j + 1, {1}^{k_j - 1})`.
pub fn between_chain(l: &[usize], k: &Index) -> Result<Vec<Index>> {
    check_len(l, k)?;
    let mut acc: Vec<Vec<usize>> = vec![vec![]];
    for (&lj, &kj) in l.iter().zip(k.parts()) {
        // a block collapses like a composition of k_j whose first part absorbs l_j
        let options: Vec<Vec<usize>> = compositions(kj)
            .into_iter()
            .map(|mut c| {
                c[0] += lj;
                c
            })
            .collect();
        acc = acc
            .iter()
            .flat_map(|head| {
                options.iter().map(move |c| {
                    let mut v = head.clone();
                    v.extend_from_slice(c);
                    v
                })
            })
            .collect();
    }
    Ok(acc.into_iter().map(Index).collect())
}

/// All tuples of `r` non-negative integers summing to `m`.
pub fn weak_compositions(m: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=m {
        for mut rest in weak_compositions(m - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every index with weight `<= max_weight` and depth `<= max_depth`, ordered
/// by `(weight, depth, parts)`.
pub fn enumerate_indices(max_weight: usize, max_depth: usize, admissible_only: bool) -> Vec<Index> {
    let mut out: Vec<Index> = (0..=max_weight)
        .flat_map(compositions)
        .filter(|c| c.len() <= max_depth)
        .map(Index)
        .filter(|k| !admissible_only || k.is_admissible())
        .collect();
    out.sort();
    out
}

/// A finite rational linear combination of indices without zero terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IndexCombo(BTreeMap<Index, Rational>);

impl IndexCombo {
    pub fn single(k: Index) -> Self {
        let mut c = IndexCombo::default();
        c.add(k, Rational::one());
        c
    }

    pub fn add(&mut self, k: Index, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let e = self.0.entry(k.clone()).or_insert_with(Rational::zero);
        *e += coeff;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add_combo(&mut self, other: &IndexCombo, scale: &Rational) {
        for (k, c) in &other.0 {
            self.add(k.clone(), c * scale);
        }
    }

    pub fn coeff(&self, k: &Index) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends `k` to every index.
    pub fn push_each(&self, k: usize) -> IndexCombo {
        IndexCombo(self.0.iter().map(|(i, c)| (i.push(k), c.clone())).collect())
    }
}

impl fmt::Display for IndexCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.0.iter().map(|(k, c)| format!("{c}*{}", k.tuple())).collect();
        f.write_str(&terms.join(" + "))
    }
}

/// `|z| >= 1` and `|1 - z| >= 1`, or `z = 1`.
pub fn in_dual_region(z: &GaussianRational) -> bool {
    let one = GaussianRational::from_ints(1, 0);
    if *z == one {
        return true;
    }
    let w = one - z;
    z.norm_sq_exact() >= Rational::one() && w.norm_sq_exact() >= Rational::one()
}

/// An index paired with points satisfying the dual condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualizablePair {
    index: Index,
    points: Vec<GaussianRational>,
}

/// One `({1}^{a-1}, b)` stretch ending at a point `w != 1`, preceded by an
/// admissible index `l` carried on points equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBlock {
    pub l: Index,
    pub a: usize,
    pub b: usize,
    pub w: GaussianRational,
}

impl DualizablePair {
    pub fn new(index: Index, points: Vec<GaussianRational>) -> Result<Self> {
        if index.is_empty() {
            return Err(Error::domain("dual pairs need a nonempty index"));
        }
        if points.len() != index.depth() {
            return Err(Error::Shape { expected: index.depth(), got: points.len() });
        }
        if let Some(z) = points.iter().find(|z| !in_dual_region(z)) {
            return Err(Error::domain(format!("point {z} violates the dual condition")));
        }
        let one = GaussianRational::from_ints(1, 0);
        if !index.is_admissible() && points.last() == Some(&one) {
            return Err(Error::domain("non-admissible index needs a last point different from 1"));
        }
        Ok(DualizablePair { index, points })
    }

    pub fn index(&self) -> &Index {
        &self.index
    }

    pub fn points(&self) -> &[GaussianRational] {
        &self.points
    }

    /// Greedy left-to-right decomposition: the blocks ending at each point
    /// different from 1, and the trailing admissible index.
    pub fn decompose(&self) -> (Vec<DualBlock>, Index) {
        let one = GaussianRational::from_ints(1, 0);
        let mut out = Vec::new();
        let mut start = 0;
        for (pos, z) in self.points.iter().enumerate() {
            if *z == one {
                continue;
            }
            let seg = &self.index.parts()[start..pos];
            let ones = seg.iter().rev().take_while(|&&k| k == 1).count();
            out.push(DualBlock {
                l: Index(seg[..seg.len() - ones].to_vec()),
                a: ones + 1,
                b: self.index.parts()[pos],
                w: z.clone(),
            });
            start = pos + 1;
        }
        (out, Index(self.index.parts()[start..].to_vec()))
    }

    /// The number of points different from 1.
    pub fn iota(&self) -> usize {
        let one = GaussianRational::from_ints(1, 0);
        self.points.iter().filter(|z| **z != one).count()
    }
}

impl fmt::Display for DualizablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zs: Vec<String> = self.points.iter().map(|z| crate::ExactScalar::simplify(z.clone()).to_string()).collect();
        write!(f, "k={} z=({})", self.index.tuple(), zs.join(","))
    }
}

/// The dual pair together with `iota(z)`.
pub fn dual_pair(p: &DualizablePair) -> Result<(DualizablePair, usize)> {
    let one = GaussianRational::from_ints(1, 0);
    let (blocks, tail) = p.decompose();
    let mut parts = Vec::new();
    let mut points = Vec::new();
    let push_ones_index = |k: &Index, parts: &mut Vec<usize>, points: &mut Vec<GaussianRational>| {
        parts.extend_from_slice(k.parts());
        points.extend(std::iter::repeat_n(one.clone(), k.depth()));
    };
    push_ones_index(&dual_index(&tail)?, &mut parts, &mut points);
    for blk in blocks.iter().rev() {
        parts.extend(std::iter::repeat_n(1, blk.b - 1));
        points.extend(std::iter::repeat_n(one.clone(), blk.b - 1));
        parts.push(blk.a);
        points.push(one.clone() - &blk.w);
        push_ones_index(&dual_index(&blk.l)?, &mut parts, &mut points);
    }
    Ok((DualizablePair::new(Index(parts), points)?, blocks.len()))
}
