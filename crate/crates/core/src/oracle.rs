//! Bounded brute force: enumerate words in two quaternion units and look for
//! relations by exact multiplication.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::par::{self, Execution};
use crate::quaternion::QuatElem;

pub const DEFAULT_GROUP_DEPTH: u32 = 8;
pub const DEFAULT_SEMIGROUP_DEPTH: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    G1,
    G1Inv,
    G2,
    G2Inv,
}

impl Letter {
    pub const GROUP: [Letter; 4] = [Letter::G1, Letter::G1Inv, Letter::G2, Letter::G2Inv];
    pub const SEMIGROUP: [Letter; 2] = [Letter::G1, Letter::G2];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::G1 => Letter::G1Inv,
            Letter::G1Inv => Letter::G1,
            Letter::G2 => Letter::G2Inv,
            Letter::G2Inv => Letter::G2,
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Letter::G1 => "g1",
            Letter::G1Inv => "g1^-1",
            Letter::G2 => "g2",
            Letter::G2Inv => "g2^-1",
        }
    }
}

/// A word read left to right; ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| matches!(l, Letter::G1 | Letter::G2))
    }

    fn pushed(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    /// Product of the letters in the quaternion algebra.
    pub fn evaluate(&self, u: &QuatElem, w: &QuatElem) -> Result<QuatElem> {
        let vals = letter_values(u, w)?;
        Ok(self.0.iter().fold(QuatElem::one(u.d()), |acc, l| &acc * &vals[l.index()]))
    }

    /// Composite of the letters as Möbius maps, leftmost outermost.
    pub fn evaluate_mobius(&self, h1: &MobiusMap, h2: &MobiusMap) -> MobiusMap {
        let vals = [h1.clone(), h1.inverse(), h2.clone(), h2.inverse()];
        self.0.iter().fold(MobiusMap::identity(h1.d()), |acc, l| acc.compose(&vals[l.index()]))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<&str> = self.0.iter().map(|l| l.symbol()).collect();
        f.write_str(&parts.join(" "))
    }
}

fn letter_values(u: &QuatElem, w: &QuatElem) -> Result<[QuatElem; 4]> {
    if u.d() != w.d() {
        return Err(Error::FieldMismatch(u.d().get(), w.d().get()));
    }
    Ok([u.clone(), u.inverse()?, w.clone(), w.inverse()?])
}

/// `Some` when the two generators are equal or mutually inverse, so the
/// letters are not independent symbols.
fn degeneracy(u: &QuatElem, w: &QuatElem) -> Result<Option<String>> {
    if u == w {
        return Ok(Some("g1 = g2".into()));
    }
    if &u.inverse()? == w {
        return Ok(Some("g1 = g2^-1".into()));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOracleReport {
    pub depth: u32,
    /// Number of reduced words of each length `1..=depth`.
    pub counts: Vec<u64>,
    /// First nonempty reduced word equal to 1.
    pub counterexample: Option<Word>,
    /// First reduced word equal to −1.
    pub minus_one: Option<Word>,
    pub degenerate: Option<String>,
}

impl GroupOracleReport {
    pub fn words_checked(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Default)]
struct Findings {
    counts: Vec<u64>,
    one: Option<Word>,
    minus_one: Option<Word>,
}

impl Findings {
    fn new(depth: usize) -> Self {
        Findings { counts: vec![0; depth], ..Default::default() }
    }

    fn note(&mut self, word: &Word, value: &QuatElem) {
        self.counts[word.len() - 1] += 1;
        let keep = |slot: &mut Option<Word>| {
            if slot.as_ref().is_none_or(|best| word < best) {
                *slot = Some(word.clone());
            }
        };
        if value.is_one() {
            keep(&mut self.one);
        } else if value.is_minus_one() {
            keep(&mut self.minus_one);
        }
    }

    fn merge(&mut self, other: Findings) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        for (mine, theirs) in [(&mut self.one, other.one), (&mut self.minus_one, other.minus_one)] {
            if let Some(t) = theirs {
                if mine.as_ref().is_none_or(|m| &t < m) {
                    *mine = Some(t);
                }
            }
        }
    }
}

fn dfs(word: &mut Vec<Letter>, value: &QuatElem, vals: &[QuatElem; 4], depth: usize, out: &mut Findings) {
    let w = Word(word.clone());
    out.note(&w, value);
    if word.len() == depth {
        return;
    }
    let last = *word.last().expect("nonempty prefix");
    for l in Letter::GROUP {
        if l == last.inverse() {
            continue;
        }
        let next = value * &vals[l.index()];
        word.push(l);
        dfs(word, &next, vals, depth, out);
        word.pop();
    }
}

/// Every reduced word of length `1..=depth` in `g1 = u`, `g2 = w`, evaluated
/// exactly. Blocks of words sharing a two-letter prefix run independently;
/// reported words are the first in length-then-letter order.
pub fn free_group_word_check_with(u: &QuatElem, w: &QuatElem, depth: u32, exec: Execution) -> Result<GroupOracleReport> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    let vals = letter_values(u, w)?;
    let degenerate = degeneracy(u, w)?;
    let depth_us = depth as usize;
    let mut prefixes: Vec<Vec<Letter>> = Vec::new();
    for a in Letter::GROUP {
        for b in Letter::GROUP {
            if b != a.inverse() {
                prefixes.push(vec![a, b]);
            }
        }
    }
    let mut total = Findings::new(depth_us);
    for a in Letter::GROUP {
        total.note(&Word(vec![a]), &vals[a.index()]);
    }
    if depth_us >= 2 {
        let blocks = par::map(&prefixes, exec, |p| {
            let mut out = Findings::new(depth_us);
            let value = &vals[p[0].index()] * &vals[p[1].index()];
            dfs(&mut p.clone(), &value, &vals, depth_us, &mut out);
            out
        });
        for b in blocks {
            total.merge(b);
        }
    }
    Ok(GroupOracleReport { depth, counts: total.counts, counterexample: total.one, minus_one: total.minus_one, degenerate })
}

pub fn free_group_word_check(u: &QuatElem, w: &QuatElem, depth: u32) -> Result<GroupOracleReport> {
    free_group_word_check_with(u, w, depth, Execution::default())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupOracleReport {
    pub depth: u32,
    /// Number of positive words of each length `1..=depth`.
    pub counts: Vec<u64>,
    /// First pair of distinct positive words with equal product.
    pub collision: Option<(Word, Word)>,
    pub degenerate: Option<String>,
}

impl SemigroupOracleReport {
    pub fn words_checked(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// All positive words of length `1..=depth`, deduplicated by exact value.
pub fn free_semigroup_word_check_with(u: &QuatElem, w: &QuatElem, depth: u32, exec: Execution) -> Result<SemigroupOracleReport> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    if u.d() != w.d() {
        return Err(Error::FieldMismatch(u.d().get(), w.d().get()));
    }
    let degenerate = if u == w { Some("g1 = g2".to_string()) } else { None };
    let gens = [u.clone(), w.clone()];
    let mut seen: BTreeMap<QuatElem, Word> = BTreeMap::new();
    let mut collision: Option<(Word, Word)> = None;
    let mut counts = Vec::new();
    let mut level: Vec<(Word, QuatElem)> = vec![(Word::default(), QuatElem::one(u.d()))];
    for _ in 0..depth {
        let next: Vec<Vec<(Word, QuatElem)>> = par::map(&level, exec, |(word, value)| {
            Letter::SEMIGROUP.iter().zip(&gens).map(|(&l, g)| (word.pushed(l), value * g)).collect()
        });
        level = next.into_iter().flatten().collect();
        counts.push(level.len() as u64);
        for (word, value) in &level {
            match seen.get(value) {
                Some(first) => {
                    if collision.is_none() {
                        collision = Some((first.clone(), word.clone()));
                    }
                }
                None => {
                    seen.insert(value.clone(), word.clone());
                }
            }
        }
    }
    Ok(SemigroupOracleReport { depth, counts, collision, degenerate })
}

pub fn free_semigroup_word_check(u: &QuatElem, w: &QuatElem, depth: u32) -> Result<SemigroupOracleReport> {
    free_semigroup_word_check_with(u, w, depth, Execution::default())
}

/// The group check applied to `(uⁿ, wⁿ)`.
pub fn power_word_check(u: &QuatElem, w: &QuatElem, n: u32, depth: u32) -> Result<GroupOracleReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    free_group_word_check(&u.pow(n as i64)?, &w.pow(n as i64)?, depth)
}

/// The semigroup check applied to `(uⁿ, wⁿ)`.
pub fn power_semigroup_word_check(u: &QuatElem, w: &QuatElem, n: u32, depth: u32) -> Result<SemigroupOracleReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    free_semigroup_word_check(&u.pow(n as i64)?, &w.pow(n as i64)?, depth)
}
