//! Joint ordered factorisations.
//!
//! A joint ordered factorisation (JOF) of a tuple `(n_1, ..., n_m)` with every
//! `n_j >= 2` is a sequence of `(part, factor)` pairs, `factor >= 2`, such that
//! no two neighbouring pairs name the same part and the factors attached to
//! part `j` multiply to `n_j`. JOFs are in bijection with sum systems of the
//! same cardinality tuple.
//!
//! Text form: comma-separated `part:factor` pairs with 1-based parts, e.g.
//! `1:3,3:3,1:3,3:2,2:5`. JSON form: an array of pairs, `[[1,3],[3,3],...]`.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, factorise, MAX_ARGUMENT};
use crate::{Error, Result};

/// Default bound on the number of JOFs materialised by [`enumerate`].
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Cardinality tuple `(n_1, ..., n_m)`, every entry at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TargetTuple {
    parts: Vec<u64>,
}

impl TargetTuple {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("a target tuple needs at least one part".into()));
        }
        if let Some(&bad) = parts.iter().find(|&&n| n < 2) {
            return Err(Error::Domain(format!(
                "tuple entries must be at least 2, got {bad}"
            )));
        }
        let product = parts
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .filter(|&p| p <= MAX_ARGUMENT);
        if product.is_none() {
            return Err(Error::overflow("the product of the tuple"));
        }
        Ok(TargetTuple { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of parts `m`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `N = n_1 * ... * n_m`.
    pub fn product(&self) -> u64 {
        self.parts.iter().product()
    }

    /// Tuple whose part `i` is part `perm[i]` of `self` (0-based).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.len())?;
        Ok(TargetTuple {
            parts: perm.iter().map(|&i| self.parts[i]).collect(),
        })
    }

    /// All ordered `m`-tuples with entries `>= 2` and product `n`, in
    /// lexicographic order.
    pub fn all_with_product(n: u64, m: usize) -> Result<Vec<TargetTuple>> {
        let mut out = Vec::new();
        if m == 0 {
            return Ok(out);
        }
        let mut prefix = Vec::with_capacity(m);
        fn rec(rest: u64, m: usize, prefix: &mut Vec<u64>, out: &mut Vec<TargetTuple>) -> Result<()> {
            if m == 1 {
                if rest >= 2 {
                    prefix.push(rest);
                    out.push(TargetTuple { parts: prefix.clone() });
                    prefix.pop();
                }
                return Ok(());
            }
            for d in factorise(rest)?.divisors() {
                if d < 2 || rest / d < 2 {
                    continue;
                }
                prefix.push(d);
                rec(rest / d, m - 1, prefix, out)?;
                prefix.pop();
            }
            Ok(())
        }
        rec(n, m, &mut prefix, &mut out)?;
        Ok(out)
    }
}

impl fmt::Display for TargetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl FromStr for TargetTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("tuple entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TargetTuple::new(parts)
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::Domain("permutation length does not match".into()));
    }
    for &i in perm {
        if i >= len || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Domain(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// One `(part, factor)` pair; `part` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, u64)", into = "(usize, u64)")]
pub struct Entry {
    pub part: usize,
    pub factor: u64,
}

impl Entry {
    pub fn new(part: usize, factor: u64) -> Self {
        Entry { part, factor }
    }
}

impl From<(usize, u64)> for Entry {
    fn from((part, factor): (usize, u64)) -> Self {
        Entry { part, factor }
    }
}

impl From<Entry> for (usize, u64) {
    fn from(e: Entry) -> Self {
        (e.part, e.factor)
    }
}

/// A joint ordered factorisation. Construction does not validate; see
/// [`Jof::validate`] and [`Jof::target`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Jof {
    entries: Vec<Entry>,
}

/// First condition a JOF fails for a given tuple. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("entry {position} names part {part}, outside 1..={parts}")]
    PartOutOfRange {
        position: usize,
        part: usize,
        parts: usize,
    },
    #[error("entry {position} has factor {factor}, factors must be at least 2")]
    TrivialFactor { position: usize, factor: u64 },
    #[error("entries {} and {position} both name part {part}", position - 1)]
    AdjacentSamePart { position: usize, part: usize },
    #[error("factors of part {part} multiply to {}, expected {expected}",
        actual.map_or_else(|| "more than 2^64".to_string(), |a| a.to_string()))]
    ProductMismatch {
        part: usize,
        expected: u64,
        actual: Option<u64>,
    },
}

impl Jof {
    pub fn new(entries: Vec<Entry>) -> Self {
        Jof { entries }
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        Jof::new(pairs.iter().map(|&p| p.into()).collect())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Number of factors `L`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn validate(&self, tuple: &TargetTuple) -> std::result::Result<(), Violation> {
        let m = tuple.len();
        let mut products: Vec<Option<u64>> = vec![Some(1); m];
        for (i, e) in self.entries.iter().enumerate() {
            let position = i + 1;
            if e.part == 0 || e.part > m {
                return Err(Violation::PartOutOfRange {
                    position,
                    part: e.part,
                    parts: m,
                });
            }
            if e.factor < 2 {
                return Err(Violation::TrivialFactor {
                    position,
                    factor: e.factor,
                });
            }
            if i > 0 && self.entries[i - 1].part == e.part {
                return Err(Violation::AdjacentSamePart {
                    position,
                    part: e.part,
                });
            }
            let slot = &mut products[e.part - 1];
            *slot = slot.and_then(|p| p.checked_mul(e.factor));
        }
        for (j, (&expected, &actual)) in tuple.parts().iter().zip(&products).enumerate() {
            if actual != Some(expected) {
                return Err(Violation::ProductMismatch {
                    part: j + 1,
                    expected,
                    actual,
                });
            }
        }
        Ok(())
    }

    pub fn is_valid_for(&self, tuple: &TargetTuple) -> bool {
        self.validate(tuple).is_ok()
    }

    /// The tuple this JOF factorises, read off from its entries. Parts are
    /// `1..=max part`; every part must occur and the JOF must be valid.
    pub fn target(&self) -> Result<TargetTuple> {
        let m = self
            .entries
            .iter()
            .map(|e| e.part)
            .max()
            .ok_or_else(|| Error::Domain("empty joint ordered factorisation".into()))?;
        if self.entries.iter().any(|e| e.part == 0) {
            return Err(Error::Domain("part indices are 1-based".into()));
        }
        let mut parts = vec![1u64; m];
        for e in &self.entries {
            let p = &mut parts[e.part - 1];
            *p = p
                .checked_mul(e.factor)
                .ok_or_else(|| Error::overflow(format!("the product of part {}", e.part)))?;
        }
        if let Some(j) = parts.iter().position(|&p| p == 1) {
            return Err(Error::Domain(format!(
                "part {} has no factor >= 2",
                j + 1
            )));
        }
        let tuple = TargetTuple::new(parts)?;
        self.validate(&tuple)
            .map_err(|v| Error::Domain(v.to_string()))?;
        Ok(tuple)
    }

    /// `F(1), ..., F(L + 1)`: `F(1) = 1`, `F(l + 1) = F(l) * f_l`.
    pub fn partial_products(&self) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(self.entries.len() + 1);
        let mut acc = 1u64;
        out.push(acc);
        for e in &self.entries {
            acc = acc
                .checked_mul(e.factor)
                .ok_or_else(|| Error::overflow("partial products"))?;
            out.push(acc);
        }
        Ok(out)
    }

    /// Renames part `j` to `map[j - 1]` (both 1-based).
    pub fn relabel(&self, map: &[usize]) -> Jof {
        Jof::new(
            self.entries
                .iter()
                .map(|e| Entry::new(map[e.part - 1], e.factor))
                .collect(),
        )
    }

    /// Accepts either the text form or the JSON array-of-pairs form.
    pub fn parse_any(s: &str) -> Result<Jof> {
        let t = s.trim();
        if t.starts_with('[') {
            serde_json::from_str(t).map_err(|e| Error::Parse(format!("JOF JSON: {e}")))
        } else {
            t.parse()
        }
    }
}

impl fmt::Display for Jof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", e.part, e.factor)?;
        }
        Ok(())
    }
}

impl FromStr for Jof {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|pair| {
                let (j, f) = pair
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected part:factor, got {pair:?}")))?;
                let part = j
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("part in {pair:?}: {e}")))?;
                let factor = f
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("factor in {pair:?}: {e}")))?;
                Ok(Entry { part, factor })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Jof { entries })
    }
}

struct Search<'a, F> {
    residues: Vec<u64>,
    path: Vec<Entry>,
    divisors: HashMap<u64, Vec<u64>>,
    visit: &'a mut F,
}

impl<F: FnMut(&[Entry]) -> ControlFlow<()>> Search<'_, F> {
    fn factors_of(&mut self, n: u64) -> Result<Vec<u64>> {
        if let Some(d) = self.divisors.get(&n) {
            return Ok(d.clone());
        }
        let d: Vec<u64> = factorise(n)?.divisors().into_iter().skip(1).collect();
        self.divisors.insert(n, d.clone());
        Ok(d)
    }

    /// Depth-first over `(part, factor)` ascending. Children that would leave
    /// a single unfinished part equal to the part just used are pruned, so
    /// every branch reaches a complete JOF.
    fn run(&mut self, last: Option<usize>) -> Result<ControlFlow<()>> {
        if self.residues.iter().all(|&r| r == 1) {
            return Ok((self.visit)(&self.path));
        }
        for p in 0..self.residues.len() {
            let residue = self.residues[p];
            if Some(p) == last || residue == 1 {
                continue;
            }
            let others_open = self
                .residues
                .iter()
                .enumerate()
                .any(|(q, &r)| q != p && r > 1);
            for f in self.factors_of(residue)? {
                if f != residue && !others_open {
                    continue;
                }
                self.residues[p] = residue / f;
                self.path.push(Entry::new(p + 1, f));
                let flow = self.run(Some(p))?;
                self.path.pop();
                self.residues[p] = residue;
                if flow.is_break() {
                    return Ok(flow);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Calls `visit` on every JOF of `tuple` in lexicographic order of entry
/// sequences (part, then factor, position by position). Stops early when
/// `visit` breaks.
pub fn for_each_jof<F>(tuple: &TargetTuple, mut visit: F) -> Result<()>
where
    F: FnMut(&[Entry]) -> ControlFlow<()>,
{
    let mut search = Search {
        residues: tuple.parts().to_vec(),
        path: Vec::new(),
        divisors: HashMap::new(),
        visit: &mut visit,
    };
    let _flow = search.run(None)?;
    Ok(())
}

/// Every JOF of `tuple`, in lexicographic order, failing if there are more
/// than [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate(tuple: &TargetTuple) -> Result<Vec<Jof>> {
    enumerate_with_cap(tuple, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_with_cap(tuple: &TargetTuple, cap: usize) -> Result<Vec<Jof>> {
    let mut out = Vec::new();
    let mut exceeded = false;
    for_each_jof(tuple, |entries| {
        if out.len() == cap {
            exceeded = true;
            return ControlFlow::Break(());
        }
        out.push(Jof::new(entries.to_vec()));
        ControlFlow::Continue(())
    })?;
    if exceeded {
        return Err(Error::CapExceeded { cap });
    }
    Ok(out)
}

/// The first `limit` JOFs of `tuple` in enumeration order.
pub fn enumerate_prefix(tuple: &TargetTuple, limit: usize) -> Result<Vec<Jof>> {
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for_each_jof(tuple, |entries| {
        out.push(Jof::new(entries.to_vec()));
        if out.len() == limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Number of JOFs of `tuple` by walking the enumeration, without storing it.
pub fn count_by_enumeration(tuple: &TargetTuple, cap: usize) -> Result<u64> {
    let mut count = 0u64;
    let mut exceeded = false;
    for_each_jof(tuple, |_| {
        if count as usize == cap {
            exceeded = true;
            return ControlFlow::Break(());
        }
        count += 1;
        ControlFlow::Continue(())
    })?;
    if exceeded {
        return Err(Error::CapExceeded { cap });
    }
    Ok(count)
}

/// Closed-form number of JOFs of `tuple`:
///
/// `sum over l in N^m of multinomial(|l|; l) * prod_j (e - mu)^{*l_j}(n_j)`,
/// with `1 <= l_j <= Omega(n_j)` (other terms vanish).
///
/// The multinomial is accumulated one part at a time: after `k` parts,
/// `acc[L]` holds the sum over `l_1 + ... + l_k = L`.
pub fn count_for_tuple(tuple: &TargetTuple) -> Result<i128> {
    let overflow = || Error::overflow(format!("the JOF count of ({tuple})"));
    let mut acc: Vec<i128> = vec![1];
    for &n in tuple.parts() {
        let omega = arith::big_omega(n)?;
        let weights = (1..=omega)
            .map(|l| arith::squarefree_ordered_count(l, n))
            .collect::<Result<Vec<_>>>()?;
        let mut next = vec![0i128; acc.len() + omega as usize];
        for (total, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (i, &w) in weights.iter().enumerate() {
                let l = i + 1;
                let term = arith::binomial((total + l) as u64, l as u64)?
                    .checked_mul(w)
                    .and_then(|t| t.checked_mul(a))
                    .ok_or_else(overflow)?;
                next[total + l] = next[total + l].checked_add(term).ok_or_else(overflow)?;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .try_fold(0i128, |s, v| s.checked_add(v))
        .ok_or_else(overflow)
}
