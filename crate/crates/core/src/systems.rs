//! Sum systems, centred sum systems and sum-and-distance systems.
//!
//! Centred values may be half-integers. They are stored doubled: a stored
//! value `v` stands for `v / 2`. Within one component all stored values
//! share a parity, odd meaning the true elements are half-odd-integers.
//!
//! Verification never trusts construction. It forms the full set sum of the
//! components and compares it with the target, so it serves as the oracle
//! for every builder in this module.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::jof::Jof;
use crate::{Error, Result};

/// Largest cardinality product that [`verify_sum_system`] and
/// [`verify_centred`] will expand.
pub const VERIFY_LIMIT: u64 = 1 << 27;

fn canonical(mut values: Vec<i64>, part: usize) -> Result<Vec<i64>> {
    if values.is_empty() {
        return Err(Error::Domain(format!("component {part} is empty")));
    }
    values.sort_unstable();
    if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Domain(format!(
            "component {part} repeats the value {}",
            w[0]
        )));
    }
    Ok(values)
}

/// `m` sets of non-negative integers, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSystem {
    n: u64,
    components: Vec<Vec<i64>>,
}

impl SumSystem {
    pub fn new(n: u64, components: Vec<Vec<i64>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("a sum system needs at least one component".into()));
        }
        let components = components
            .into_iter()
            .enumerate()
            .map(|(j, c)| canonical(c, j + 1))
            .collect::<Result<Vec<_>>>()?;
        if let Some(j) = components.iter().position(|c| c[0] < 0) {
            return Err(Error::Domain(format!(
                "component {} has a negative element",
                j + 1
            )));
        }
        Ok(SumSystem { n, components })
    }

    /// The target size `N`.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn components(&self) -> &[Vec<i64>] {
        &self.components
    }

    pub fn cardinalities(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.len() as u64).collect()
    }
}

/// Components symmetric about the origin, stored as doubled values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentredSumSystem {
    n: u64,
    components: Vec<Vec<i64>>,
    half_integer: Vec<bool>,
}

impl CentredSumSystem {
    /// `doubled[j]` holds twice the elements of `C_j`.
    pub fn new(n: u64, doubled: Vec<Vec<i64>>) -> Result<Self> {
        if doubled.is_empty() {
            return Err(Error::Domain("a centred system needs at least one component".into()));
        }
        let components = doubled
            .into_iter()
            .enumerate()
            .map(|(j, c)| canonical(c, j + 1))
            .collect::<Result<Vec<_>>>()?;
        let mut half_integer = Vec::with_capacity(components.len());
        for (j, c) in components.iter().enumerate() {
            let odd = c[0].rem_euclid(2) == 1;
            if c.iter().any(|v| (v.rem_euclid(2) == 1) != odd) {
                return Err(Error::Domain(format!(
                    "component {} mixes integers and half-integers",
                    j + 1
                )));
            }
            half_integer.push(odd);
        }
        Ok(CentredSumSystem {
            n,
            components,
            half_integer,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Doubled components `2 C_j`, sorted ascending.
    pub fn doubled_components(&self) -> &[Vec<i64>] {
        &self.components
    }

    /// True iff component `j` (0-based) consists of half-odd-integers.
    pub fn is_half_integer(&self, j: usize) -> bool {
        self.half_integer[j]
    }

    pub fn half_integer_flags(&self) -> &[bool] {
        &self.half_integer
    }

    pub fn cardinalities(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.len() as u64).collect()
    }
}

/// Positive halves `B_j` of a centred system, stored doubled, together with
/// the split of parts by parity of `|C_j|` (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumAndDistanceSystem {
    n: u64,
    components: Vec<Vec<i64>>,
    even_parts: Vec<usize>,
    odd_parts: Vec<usize>,
}

impl SumAndDistanceSystem {
    pub fn new(
        n: u64,
        doubled: Vec<Vec<i64>>,
        even_parts: Vec<usize>,
        odd_parts: Vec<usize>,
    ) -> Result<Self> {
        let m = doubled.len();
        let mut seen = vec![false; m];
        for &j in even_parts.iter().chain(&odd_parts) {
            if j == 0 || j > m || std::mem::replace(&mut seen[j - 1], true) {
                return Err(Error::Domain(format!(
                    "parity classes must partition 1..={m}"
                )));
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Domain(format!("parity classes must partition 1..={m}")));
        }
        let mut components = Vec::with_capacity(m);
        for (j, mut c) in doubled.into_iter().enumerate() {
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) || c.first().is_some_and(|&v| v <= 0) {
                return Err(Error::Domain(format!(
                    "component {} must hold distinct positive values",
                    j + 1
                )));
            }
            if c.is_empty() && even_parts.contains(&(j + 1)) {
                return Err(Error::Domain(format!("even component {} is empty", j + 1)));
            }
            components.push(c);
        }
        Ok(SumAndDistanceSystem {
            n,
            components,
            even_parts,
            odd_parts,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn doubled_components(&self) -> &[Vec<i64>] {
        &self.components
    }

    /// Parts with `|C_j|` even, `J_e`.
    pub fn even_parts(&self) -> &[usize] {
        &self.even_parts
    }

    /// Parts with `|C_j|` odd, `J_o`.
    pub fn odd_parts(&self) -> &[usize] {
        &self.odd_parts
    }

    /// `C_j = B_j ∪ -B_j`, with `0` added for odd parts.
    pub fn to_centred(&self) -> Result<CentredSumSystem> {
        let doubled = self
            .components
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let mut c: Vec<i64> = b.iter().map(|&v| -v).collect();
                if self.odd_parts.contains(&(j + 1)) {
                    c.push(0);
                }
                c.extend_from_slice(b);
                c
            })
            .collect();
        CentredSumSystem::new(self.n, doubled)
    }
}

/// `sum_{l : j_l = j} F(l) <f_l>` for every part `j`.
pub fn build_sum_system(jof: &Jof) -> Result<SumSystem> {
    let tuple = jof.target()?;
    let partial = jof.partial_products()?;
    let mut components = vec![vec![0i64]; tuple.len()];
    for (l, e) in jof.entries().iter().enumerate() {
        let step = partial[l] as i64;
        let comp = &mut components[e.part - 1];
        *comp = comp
            .iter()
            .flat_map(|&a| (0..e.factor as i64).map(move |k| a + step * k))
            .collect();
    }
    SumSystem::new(tuple.product(), components)
}

/// Doubled centred components
/// `2 C_j = sum_{l : j_l = j} F(l) (2 <f_l> - (f_l - 1))`.
pub fn build_centred(jof: &Jof) -> Result<CentredSumSystem> {
    let tuple = jof.target()?;
    let partial = jof.partial_products()?;
    let mut components = vec![vec![0i64]; tuple.len()];
    for (l, e) in jof.entries().iter().enumerate() {
        let step = partial[l] as i64;
        let f = e.factor as i64;
        let comp = &mut components[e.part - 1];
        *comp = comp
            .iter()
            .flat_map(|&c| (0..f).map(move |k| c + step * (2 * k - (f - 1))))
            .collect();
    }
    CentredSumSystem::new(tuple.product(), components)
}

/// `C_j = A_j - max(A_j) / 2`, stored as `2a - max = a - (max - a)`.
pub fn centre(s: &SumSystem) -> CentredSumSystem {
    let doubled = s
        .components
        .iter()
        .map(|a| {
            let max = *a.last().expect("components are non-empty");
            a.iter().map(|&v| v - (max - v)).collect()
        })
        .collect();
    CentredSumSystem::new(s.n, doubled).expect("centring preserves distinctness and parity")
}

/// `B_j` = positive elements of `C_j`; parity classes from `|C_j|`.
pub fn to_sum_and_distance(c: &CentredSumSystem) -> SumAndDistanceSystem {
    let mut even_parts = Vec::new();
    let mut odd_parts = Vec::new();
    let components = c
        .components
        .iter()
        .enumerate()
        .map(|(j, comp)| {
            if comp.len() % 2 == 0 {
                even_parts.push(j + 1);
            } else {
                odd_parts.push(j + 1);
            }
            comp.iter().copied().filter(|&v| v > 0).collect()
        })
        .collect();
    SumAndDistanceSystem {
        n: c.n,
        components,
        even_parts,
        odd_parts,
    }
}

/// Set sum `A + B` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinkowskiSum {
    pub elements: Vec<i64>,
    /// True iff every element has exactly one representation, i.e.
    /// `|A + B| = |A| |B|`.
    pub unique: bool,
    /// Smallest element with more than one representation.
    pub first_repeat: Option<i64>,
}

pub fn minkowski_sum(a: &[i64], b: &[i64]) -> Result<MinkowskiSum> {
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            sums.push(
                x.checked_add(y)
                    .ok_or_else(|| Error::overflow("a set sum"))?,
            );
        }
    }
    sums.sort_unstable();
    let first_repeat = sums.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]);
    sums.dedup();
    Ok(MinkowskiSum {
        unique: first_repeat.is_none(),
        first_repeat,
        elements: sums,
    })
}

/// A reason a system fails verification. Parts are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    CardinalityProduct { expected: u64, actual: Option<u64> },
    NotPalindromic { part: usize },
    NotSymmetric { part: usize },
    RepeatedSum { after_part: usize, value: i64 },
    TargetMismatch { missing: Option<i64>, unexpected: Option<i64> },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::CardinalityProduct { expected, actual } => match actual {
                Some(a) => write!(f, "component sizes multiply to {a}, expected N = {expected}"),
                None => write!(f, "component sizes overflow, expected N = {expected}"),
            },
            Failure::NotPalindromic { part } => {
                write!(f, "component {part} is not palindromic")
            }
            Failure::NotSymmetric { part } => {
                write!(f, "component {part} is not symmetric about 0")
            }
            Failure::RepeatedSum { after_part, value } => write!(
                f,
                "{value} has several representations in the sum of components 1..={after_part}"
            ),
            Failure::TargetMismatch {
                missing,
                unexpected,
            } => {
                f.write_str("set sum differs from the target")?;
                if let Some(v) = missing {
                    write!(f, "; {v} is missing")?;
                }
                if let Some(v) = unexpected {
                    write!(f, "; {v} is not in the target")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_product(n: u64, cards: &[u64], failures: &mut Vec<Failure>) -> Result<()> {
    let product = cards.iter().try_fold(1u64, |a, &c| a.checked_mul(c));
    if product.is_none_or(|p| p > VERIFY_LIMIT) || n > VERIFY_LIMIT {
        return Err(Error::CapExceeded {
            cap: VERIFY_LIMIT as usize,
        });
    }
    if product != Some(n) {
        failures.push(Failure::CardinalityProduct {
            expected: n,
            actual: product,
        });
    }
    Ok(())
}

/// Adds all components and compares the result with `target`, which must be
/// sorted ascending.
fn check_sum(components: &[Vec<i64>], target: &[i64], failures: &mut Vec<Failure>) -> Result<()> {
    let mut acc = vec![0i64];
    for (j, comp) in components.iter().enumerate() {
        let s = minkowski_sum(&acc, comp)?;
        if let Some(value) = s.first_repeat {
            failures.push(Failure::RepeatedSum {
                after_part: j + 1,
                value,
            });
        }
        acc = s.elements;
    }
    if acc != target {
        let missing = target.iter().find(|v| acc.binary_search(v).is_err()).copied();
        let unexpected = acc.iter().find(|v| target.binary_search(v).is_err()).copied();
        failures.push(Failure::TargetMismatch {
            missing,
            unexpected,
        });
    }
    Ok(())
}

/// Checks that the set sum is exactly `{0, ..., N - 1}` with unique
/// representation and that every component is palindromic.
pub fn verify_sum_system(s: &SumSystem) -> Result<Verdict> {
    let mut failures = Vec::new();
    check_product(s.n, &s.cardinalities(), &mut failures)?;
    for (j, a) in s.components.iter().enumerate() {
        let max = *a.last().expect("components are non-empty");
        if a.iter().rev().map(|&v| max - v).ne(a.iter().copied()) {
            failures.push(Failure::NotPalindromic { part: j + 1 });
        }
    }
    let target: Vec<i64> = (0..s.n as i64).collect();
    check_sum(&s.components, &target, &mut failures)?;
    Ok(Verdict { failures })
}

/// Checks symmetry of every component and that the doubled set sum is
/// `{2k - (N - 1) : 0 <= k < N}` with unique representation.
pub fn verify_centred(c: &CentredSumSystem) -> Result<Verdict> {
    let mut failures = Vec::new();
    check_product(c.n, &c.cardinalities(), &mut failures)?;
    for (j, comp) in c.components.iter().enumerate() {
        if comp.iter().rev().map(|&v| -v).ne(comp.iter().copied()) {
            failures.push(Failure::NotSymmetric { part: j + 1 });
        }
    }
    let n = c.n as i64;
    let target: Vec<i64> = (0..n).map(|k| 2 * k - (n - 1)).collect();
    check_sum(&c.components, &target, &mut failures)?;
    Ok(Verdict { failures })
}

/// `sigma_A(N) = sum_j (N / n_j) sum_{a in A_j} a`.
pub fn sigma_a(s: &SumSystem) -> Result<i128> {
    let overflow = || Error::overflow("sigma_A");
    let n = i128::from(s.n);
    s.components.iter().try_fold(0i128, |acc, a| {
        let weight = n / a.len() as i128;
        let sum: i128 = a.iter().map(|&v| i128::from(v)).sum();
        weight
            .checked_mul(sum)
            .and_then(|t| acc.checked_add(t))
            .ok_or_else(overflow)
    })
}

/// `tau_C(N) = sum_j (N / n_j) sum_{c in C_j} c^2`, computed on doubled
/// values and divided by 4 exactly.
pub fn tau_c(c: &CentredSumSystem) -> Result<Ratio<i128>> {
    let overflow = || Error::overflow("tau_C");
    let n = i128::from(c.n);
    let quadruple = c.components.iter().try_fold(0i128, |acc, comp| {
        let weight = n / comp.len() as i128;
        let squares = comp.iter().try_fold(0i128, |s, &v| {
            i128::from(v)
                .checked_mul(i128::from(v))
                .and_then(|sq| s.checked_add(sq))
        });
        squares
            .and_then(|sq| weight.checked_mul(sq))
            .and_then(|t| acc.checked_add(t))
            .ok_or_else(overflow)
    })?;
    Ok(Ratio::new(quadruple, 4))
}

/// JSON form of any system: `{"N": int, "components": [[int,...],...],
/// "doubled": bool}`. Sum-and-distance systems add `even_parts` and
/// `odd_parts`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    #[serde(rename = "N")]
    pub n: u64,
    pub components: Vec<Vec<i64>>,
    pub doubled: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub even_parts: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_parts: Option<Vec<usize>>,
}

/// A system read back from a [`SystemDocument`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnySystem {
    Sum(SumSystem),
    Centred(CentredSumSystem),
    SumAndDistance(SumAndDistanceSystem),
}

impl From<&SumSystem> for SystemDocument {
    fn from(s: &SumSystem) -> Self {
        SystemDocument {
            n: s.n,
            components: s.components.clone(),
            doubled: false,
            even_parts: None,
            odd_parts: None,
        }
    }
}

impl From<&CentredSumSystem> for SystemDocument {
    fn from(c: &CentredSumSystem) -> Self {
        SystemDocument {
            n: c.n,
            components: c.components.clone(),
            doubled: true,
            even_parts: None,
            odd_parts: None,
        }
    }
}

impl From<&SumAndDistanceSystem> for SystemDocument {
    fn from(b: &SumAndDistanceSystem) -> Self {
        SystemDocument {
            n: b.n,
            components: b.components.clone(),
            doubled: true,
            even_parts: Some(b.even_parts.clone()),
            odd_parts: Some(b.odd_parts.clone()),
        }
    }
}

impl TryFrom<SystemDocument> for AnySystem {
    type Error = Error;

    fn try_from(doc: SystemDocument) -> Result<Self> {
        match (doc.even_parts, doc.odd_parts) {
            (Some(even), Some(odd)) => Ok(AnySystem::SumAndDistance(SumAndDistanceSystem::new(
                doc.n,
                doc.components,
                even,
                odd,
            )?)),
            (None, None) if doc.doubled => Ok(AnySystem::Centred(CentredSumSystem::new(
                doc.n,
                doc.components,
            )?)),
            (None, None) => Ok(AnySystem::Sum(SumSystem::new(doc.n, doc.components)?)),
            _ => Err(Error::Parse(
                "even_parts and odd_parts must be given together".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_one() -> Jof {
        "1:3,3:3,1:3,3:2,2:5".parse().unwrap()
    }

    fn example_two() -> Jof {
        "1:3,2:5,3:3,1:3,3:2".parse().unwrap()
    }

    #[test]
    fn build_example_one() {
        let s = build_sum_system(&example_one()).unwrap();
        assert_eq!(s.n(), 270);
        assert_eq!(
            s.components(),
            &[
                vec![0, 1, 2, 9, 10, 11, 18, 19, 20],
                vec![0, 54, 108, 162, 216],
                vec![0, 3, 6, 27, 30, 33],
            ]
        );
    }

    #[test]
    fn build_small() {
        let s = build_sum_system(&"1:2".parse().unwrap()).unwrap();
        assert_eq!(s.components(), &[vec![0, 1]]);
        let s = build_sum_system(&"1:2,2:2,1:3".parse().unwrap()).unwrap();
        assert_eq!(s.components(), &[vec![0, 1, 4, 5, 8, 9], vec![0, 2]]);
    }

    #[test]
    fn build_rejects_invalid_jof() {
        assert!(build_sum_system(&"1:2,1:2".parse().unwrap()).is_err());
        assert!(build_centred(&"1:2,3:2".parse().unwrap()).is_err());
    }

    #[test]
    fn centre_examples() {
        let c = centre(&build_sum_system(&example_one()).unwrap());
        assert_eq!(
            c.doubled_components(),
            &[
                vec![-20, -18, -16, -2, 0, 2, 16, 18, 20],
                vec![-216, -108, 0, 108, 216],
                vec![-33, -27, -21, 21, 27, 33],
            ]
        );
        assert_eq!(c.half_integer_flags(), &[false, false, true]);

        let two = centre(&SumSystem::new(2, vec![vec![0, 1]]).unwrap());
        assert_eq!(two.doubled_components(), &[vec![-1, 1]]);
        assert!(two.is_half_integer(0));
        let three = centre(&SumSystem::new(3, vec![vec![0, 1, 2]]).unwrap());
        assert_eq!(three.doubled_components(), &[vec![-2, 0, 2]]);
        assert!(!three.is_half_integer(0));
    }

    #[test]
    fn build_centred_examples() {
        let c = build_centred(&example_two()).unwrap();
        assert_eq!(
            c.doubled_components(),
            &[
                vec![-92, -90, -88, -2, 0, 2, 88, 90, 92],
                vec![-12, -6, 0, 6, 12],
                vec![-165, -135, -105, 105, 135, 165],
            ]
        );
        assert_eq!(
            build_centred(&"1:2".parse().unwrap()).unwrap().doubled_components(),
            &[vec![-1, 1]]
        );
        assert_eq!(
            build_centred(&"1:3,2:2".parse().unwrap())
                .unwrap()
                .doubled_components(),
            &[vec![-2, 0, 2], vec![-3, 3]]
        );
    }

    #[test]
    fn sum_and_distance_examples() {
        let b = to_sum_and_distance(&build_centred(&example_one()).unwrap());
        assert_eq!(
            b.doubled_components(),
            &[vec![2, 16, 18, 20], vec![108, 216], vec![21, 27, 33]]
        );
        assert_eq!(b.odd_parts(), &[1, 2]);
        assert_eq!(b.even_parts(), &[3]);
        assert_eq!(b.to_centred().unwrap(), build_centred(&example_one()).unwrap());

        let half = CentredSumSystem::new(2, vec![vec![-1, 1]]).unwrap();
        let b = to_sum_and_distance(&half);
        assert_eq!(b.doubled_components(), &[vec![1]]);
        assert_eq!(b.even_parts(), &[1]);
        let whole = CentredSumSystem::new(3, vec![vec![-2, 0, 2]]).unwrap();
        let b = to_sum_and_distance(&whole);
        assert_eq!(b.doubled_components(), &[vec![2]]);
        assert_eq!(b.odd_parts(), &[1]);
    }

    #[test]
    fn minkowski_examples() {
        let s = minkowski_sum(&[0, 1], &[0, 2]).unwrap();
        assert_eq!(s.elements, vec![0, 1, 2, 3]);
        assert!(s.unique);
        let s = minkowski_sum(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(s.elements, vec![0, 1, 2]);
        assert!(!s.unique);
        assert_eq!(s.first_repeat, Some(1));
        assert!(minkowski_sum(&[i64::MAX], &[1]).is_err());
    }

    #[test]
    fn verify_examples() {
        let s = build_sum_system(&example_one()).unwrap();
        assert!(verify_sum_system(&s).unwrap().passed());
        let full = minkowski_sum(
            &minkowski_sum(&s.components()[0], &s.components()[1]).unwrap().elements,
            &s.components()[2],
        )
        .unwrap();
        assert_eq!(full.elements, (0..270).collect::<Vec<_>>());
        assert!(full.unique);

        let bad = SumSystem::new(4, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let v = verify_sum_system(&bad).unwrap();
        assert!(!v.passed());
        assert!(v.failures.iter().any(|f| matches!(f, Failure::TargetMismatch { missing: Some(3), .. })));

        let ok = SumSystem::new(4, vec![vec![0, 2], vec![0, 1]]).unwrap();
        assert!(verify_sum_system(&ok).unwrap().passed());
    }

    #[test]
    fn verify_detects_non_palindromic_and_wrong_size() {
        let s = SumSystem::new(4, vec![vec![0, 1, 3], vec![0, 1]]).unwrap();
        let v = verify_sum_system(&s).unwrap();
        assert!(v.failures.contains(&Failure::NotPalindromic { part: 1 }));
        assert!(v.failures.iter().any(|f| matches!(f, Failure::CardinalityProduct { .. })));
    }

    #[test]
    fn verify_centred_examples() {
        let c = build_centred(&example_one()).unwrap();
        assert!(verify_centred(&c).unwrap().passed());
        let half = CentredSumSystem::new(2, vec![vec![-1, 1]]).unwrap();
        assert!(verify_centred(&half).unwrap().passed());
        let whole = CentredSumSystem::new(3, vec![vec![-2, 0, 2]]).unwrap();
        assert!(verify_centred(&whole).unwrap().passed());
        let skew = CentredSumSystem::new(2, vec![vec![-1, 3]]).unwrap();
        let v = verify_centred(&skew).unwrap();
        assert!(v.failures.contains(&Failure::NotSymmetric { part: 1 }));
    }

    #[test]
    fn verify_refuses_huge_targets() {
        let s = SumSystem::new(VERIFY_LIMIT * 2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(verify_sum_system(&s), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn constructors_reject_malformed_sets() {
        assert!(SumSystem::new(2, vec![vec![0, 0]]).is_err());
        assert!(SumSystem::new(2, vec![vec![-1, 1]]).is_err());
        assert!(SumSystem::new(2, vec![vec![]]).is_err());
        assert!(SumSystem::new(2, vec![]).is_err());
        assert!(CentredSumSystem::new(2, vec![vec![-1, 0, 1]]).is_err());
        assert!(SumAndDistanceSystem::new(2, vec![vec![1]], vec![1], vec![1]).is_err());
        assert!(SumAndDistanceSystem::new(2, vec![vec![1]], vec![], vec![]).is_err());
        assert!(SumAndDistanceSystem::new(2, vec![vec![-1]], vec![1], vec![]).is_err());
    }

    #[test]
    fn invariants_of_the_worked_examples() {
        let s = build_sum_system(&example_one()).unwrap();
        assert_eq!(sigma_a(&s).unwrap(), 36315);
        let c1 = centre(&s);
        assert_eq!(tau_c(&c1).unwrap(), Ratio::new(3280455, 2));
        let c2 = build_centred(&example_two()).unwrap();
        assert_eq!(tau_c(&c2).unwrap(), Ratio::new(3280455, 2));
        assert_eq!(
            tau_c(&c2).unwrap(),
            Ratio::new(271 * 270 * 269, 12)
        );

        let one = SumSystem::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(sigma_a(&one).unwrap(), 1);
        assert_eq!(tau_c(&centre(&one)).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn document_round_trip() {
        let s = build_sum_system(&example_one()).unwrap();
        let json = serde_json::to_string(&SystemDocument::from(&s)).unwrap();
        assert!(json.starts_with(r#"{"N":270,"components":[[0,1,2,9"#));
        assert!(json.ends_with(r#""doubled":false}"#));
        let doc: SystemDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(AnySystem::try_from(doc).unwrap(), AnySystem::Sum(s.clone()));

        let b = to_sum_and_distance(&centre(&s));
        let doc = SystemDocument::from(&b);
        assert!(doc.doubled);
        assert_eq!(AnySystem::try_from(doc).unwrap(), AnySystem::SumAndDistance(b));

        let mut doc = SystemDocument::from(&centre(&s));
        doc.even_parts = Some(vec![3]);
        assert!(AnySystem::try_from(doc).is_err());
    }
}
