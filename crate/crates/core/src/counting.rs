//! Counting `m`-part sum systems.
//!
//! `N_m(N)` is the number of `m`-part sum systems whose set sum is
//! `{0, ..., N - 1}`, summed over all ordered cardinality tuples. In closed
//! form
//!
//! ```text
//! N_m(N) = sum_{L = m}^{Omega(N)} m! S(L, m) (e - mu)^{*L}(N)
//! ```
//!
//! where `S` are Stirling numbers of the second kind. The sum stops at
//! `Omega(N)` because `(e - mu)^{*L}(N)` vanishes beyond it, and starts at
//! `m` because `S(L, m) = 0` for `L < m`; the truncation is exact.
//!
//! `N_0(N)` is taken to be `e(N)`, which keeps the sum-over-divisors
//! relations well posed at `m = 1`.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::{self, factorial, factorise};
use crate::jof::{self, TargetTuple, DEFAULT_ENUMERATION_CAP};
use crate::{Error, Result};

/// Triangular table of `S(L, m)` for `0 <= m <= L <= max_l`.
///
/// Entries too large for `i128` are kept as `None` and reported as overflow
/// when read.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<Option<i128>>>,
}

impl StirlingTable {
    pub fn new(max_l: u32) -> Self {
        let mut rows: Vec<Vec<Option<i128>>> = vec![vec![Some(1)]];
        for l in 1..=max_l as usize {
            let prev = &rows[l - 1];
            let row = (0..=l)
                .map(|m| {
                    if m == 0 {
                        return Some(0);
                    }
                    let stay = prev.get(m).copied().unwrap_or(Some(0));
                    let join = prev[m - 1];
                    stay.and_then(|s| (m as i128).checked_mul(s))
                        .zip(join)
                        .and_then(|(a, b)| a.checked_add(b))
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn max_l(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// `S(l, m)`; zero for `m > l`.
    pub fn get(&self, l: u32, m: u32) -> Result<i128> {
        if m > l {
            return Ok(0);
        }
        let row = self.rows.get(l as usize).ok_or_else(|| {
            Error::Domain(format!("S({l}, {m}) lies beyond the table (max L = {})", self.max_l()))
        })?;
        row[m as usize].ok_or_else(|| Error::overflow(format!("S({l}, {m})")))
    }
}

/// Rows needed for any `N` up to `2^63 - 1`.
const GLOBAL_STIRLING_ROWS: u32 = 64;

fn stirling_table() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(|| StirlingTable::new(GLOBAL_STIRLING_ROWS))
}

/// Stirling number of the second kind `S(l, m)`.
pub fn stirling2(l: u32, m: u32) -> Result<i128> {
    if l <= GLOBAL_STIRLING_ROWS {
        stirling_table().get(l, m)
    } else {
        StirlingTable::new(l).get(l, m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    BruteForce,
    DivisorRecurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub value: i128,
    pub method: Method,
}

impl CountResult {
    fn closed(value: i128) -> Self {
        CountResult {
            value,
            method: Method::ClosedForm,
        }
    }
}

/// `N_m(n)` by the Stirling-number closed form.
pub fn count_m_part(n: u64, m: u32) -> Result<CountResult> {
    let omega = factorise(n)?.big_omega();
    if m > omega {
        return Ok(CountResult::closed(0));
    }
    let overflow = || Error::overflow(format!("N_{m}({n})"));
    let m_fact = factorial(u64::from(m))?;
    let mut total: i128 = 0;
    for l in m..=omega {
        let sf = arith::squarefree_ordered_count(l, n)?;
        if sf == 0 {
            continue;
        }
        let term = m_fact
            .checked_mul(stirling2(l, m)?)
            .and_then(|t| t.checked_mul(sf))
            .ok_or_else(overflow)?;
        total = total.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(CountResult::closed(total))
}

/// `N_2(n) = 2 sum_{L >= 2} c_L(n)`.
pub fn count_two_part(n: u64) -> Result<CountResult> {
    let omega = factorise(n)?.big_omega();
    let mut sum: i128 = 0;
    for l in 2..=omega {
        sum = sum
            .checked_add(arith::nontrivial_divisor(l, n)?)
            .ok_or_else(|| Error::overflow(format!("N_2({n})")))?;
    }
    sum.checked_mul(2)
        .map(CountResult::closed)
        .ok_or_else(|| Error::overflow(format!("N_2({n})")))
}

/// `M_m(n) = N_m(n) / m!`, the count up to permutation of the parts.
pub fn count_unordered(n: u64, m: u32) -> Result<CountResult> {
    let ordered = count_m_part(n, m)?;
    if ordered.value == 0 {
        return Ok(ordered);
    }
    let m_fact = factorial(u64::from(m))?;
    if ordered.value % m_fact != 0 {
        return Err(Error::Consistency(format!(
            "{m}! does not divide N_{m}({n}) = {}",
            ordered.value
        )));
    }
    Ok(CountResult::closed(ordered.value / m_fact))
}

/// `N_m(n)` from the recurrence
/// `N_m(n) = sum_{d | n, d < n} ((m - 1) N_m(d) + m N_{m-1}(d))`
/// with `N_m(1) = [m = 0]` and `N_0 = e`.
pub fn count_by_divisor_recurrence(n: u64, m: u32) -> Result<CountResult> {
    fn rec(n: u64, m: u32, memo: &mut HashMap<(u64, u32), i128>) -> Result<i128> {
        if m == 0 || n == 1 {
            return Ok(i128::from(m == 0 && n == 1));
        }
        if let Some(&v) = memo.get(&(n, m)) {
            return Ok(v);
        }
        let overflow = || Error::overflow(format!("N_{m}({n}) by recurrence"));
        let mut total: i128 = 0;
        for d in factorise(n)?.divisors() {
            if d == n {
                continue;
            }
            let term = i128::from(m - 1)
                .checked_mul(rec(d, m, memo)?)
                .zip(i128::from(m).checked_mul(rec(d, m - 1, memo)?))
                .and_then(|(a, b)| a.checked_add(b))
                .ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
        memo.insert((n, m), total);
        Ok(total)
    }
    factorise(n)?;
    Ok(CountResult {
        value: rec(n, m, &mut HashMap::new())?,
        method: Method::DivisorRecurrence,
    })
}

/// Both sides of the four sum-over-divisors relations for `N_m` and `M_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorSumReport {
    pub n: u64,
    pub m: u32,
    /// `N_m(n)` in closed form.
    pub ordered: i128,
    /// `sum_{d | n, d < n} ((m - 1) N_m(d) + m N_{m-1}(d))`.
    pub ordered_linear: i128,
    /// `-m sum_{d | n, d < n} mu(n / d) (N_m(d) + N_{m-1}(d))`.
    pub ordered_mobius: i128,
    /// `M_m(n)`.
    pub unordered: i128,
    /// `sum_{d | n, d < n} ((m - 1) M_m(d) + M_{m-1}(d))`.
    pub unordered_linear: i128,
    /// `-sum_{d | n, d < n} mu(n / d) (m M_m(d) + M_{m-1}(d))`.
    pub unordered_mobius: i128,
}

impl DivisorSumReport {
    /// Left side minus right side for each relation, in the order above.
    pub fn residuals(&self) -> [i128; 4] {
        [
            self.ordered - self.ordered_linear,
            self.ordered - self.ordered_mobius,
            self.unordered - self.unordered_linear,
            self.unordered - self.unordered_mobius,
        ]
    }

    pub fn holds(&self) -> bool {
        self.residuals().iter().all(|&r| r == 0)
    }
}

pub fn divisor_sum_check(n: u64, m: u32) -> Result<DivisorSumReport> {
    if n < 2 {
        return Err(Error::Domain("the divisor relations need N >= 2".into()));
    }
    if m == 0 {
        return Err(Error::Domain("the divisor relations need m >= 1".into()));
    }
    let overflow = || Error::overflow(format!("divisor sums for N = {n}, m = {m}"));
    let add = |acc: i128, t: Option<i128>| t.and_then(|t| acc.checked_add(t)).ok_or_else(overflow);
    let (mi, mm1) = (i128::from(m), i128::from(m - 1));

    let mut sums = [0i128; 4];
    for d in factorise(n)?.divisors() {
        if d == n {
            continue;
        }
        let mu = i128::from(arith::mobius(n / d)?);
        let (nm, nm1) = (count_m_part(d, m)?.value, count_m_part(d, m - 1)?.value);
        let (um, um1) = (count_unordered(d, m)?.value, count_unordered(d, m - 1)?.value);
        sums[0] = add(sums[0], mm1.checked_mul(nm).zip(mi.checked_mul(nm1)).and_then(|(a, b)| a.checked_add(b)))?;
        sums[1] = add(sums[1], nm.checked_add(nm1).and_then(|s| s.checked_mul(mu)))?;
        sums[2] = add(sums[2], mm1.checked_mul(um).and_then(|a| a.checked_add(um1)))?;
        sums[3] = add(
            sums[3],
            mi.checked_mul(um)
                .and_then(|a| a.checked_add(um1))
                .and_then(|s| s.checked_mul(mu)),
        )?;
    }
    Ok(DivisorSumReport {
        n,
        m,
        ordered: count_m_part(n, m)?.value,
        ordered_linear: sums[0],
        ordered_mobius: sums[1].checked_mul(-mi).ok_or_else(overflow)?,
        unordered: count_unordered(n, m)?.value,
        unordered_linear: sums[2],
        unordered_mobius: sums[3].checked_neg().ok_or_else(overflow)?,
    })
}

/// The two-part split `N_2(n) = (2 d_2(n) - 4) + sum_{d | n, d < n} N_2(d)`,
/// returned as its two summands.
pub fn two_part_divisor_split(n: u64) -> Result<(i128, i128)> {
    if n < 2 {
        return Err(Error::Domain("the two-part split needs N >= 2".into()));
    }
    let head = 2 * arith::classical_divisor(2, n)? - 4;
    let mut tail: i128 = 0;
    for d in factorise(n)?.divisors() {
        if d < n {
            tail += count_m_part(d, 2)?.value;
        }
    }
    Ok((head, tail))
}

/// JOFs of the fixed tuple `(n, n)` up to swapping the two parts:
/// `sum_{j >= 1} (c_j(n)^2 + c_j(n) c_{j+1}(n))`.
pub fn two_dim_fixed_tuple(n: u64) -> Result<CountResult> {
    if n < 2 {
        return Err(Error::Domain("the fixed tuple (n, n) needs n >= 2".into()));
    }
    let overflow = || Error::overflow(format!("M_({n},{n})"));
    let omega = factorise(n)?.big_omega();
    let mut total: i128 = 0;
    for j in 1..=omega {
        let cj = arith::nontrivial_divisor(j, n)?;
        let next = arith::nontrivial_divisor(j + 1, n)?;
        let term = cj
            .checked_mul(cj)
            .zip(cj.checked_mul(next))
            .and_then(|(a, b)| a.checked_add(b))
            .ok_or_else(overflow)?;
        total = total.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(CountResult::closed(total))
}

fn binomial_sum(seq: &[i128], alternate: bool) -> Result<Vec<i128>> {
    let overflow = || Error::overflow("a binomial transform");
    (0..seq.len())
        .map(|j| {
            seq[..=j].iter().enumerate().try_fold(0i128, |acc, (i, &v)| {
                let mut c = arith::binomial(j as u64, i as u64)?;
                if alternate && (j - i) % 2 == 1 {
                    c = -c;
                }
                c.checked_mul(v)
                    .and_then(|t| acc.checked_add(t))
                    .ok_or_else(overflow)
            })
        })
        .collect()
}

/// `a_j = sum_{i <= j} binom(j, i) b_i`.
pub fn binomial_transform(b: &[i128]) -> Result<Vec<i128>> {
    binomial_sum(b, false)
}

/// Inverse of [`binomial_transform`]:
/// `b_j = sum_{i <= j} (-1)^(j - i) binom(j, i) a_i`.
pub fn binomial_inversion(a: &[i128]) -> Result<Vec<i128>> {
    binomial_sum(a, true)
}

/// `N_m(n)` by enumerating every JOF of every ordered tuple with product
/// `n`, with at most [`DEFAULT_ENUMERATION_CAP`] JOFs in total.
pub fn brute_force_count(n: u64, m: u32) -> Result<CountResult> {
    brute_force_count_with_cap(n, m, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_count_with_cap(n: u64, m: u32, cap: usize) -> Result<CountResult> {
    if m == 0 {
        return Err(Error::Domain("brute-force counting needs m >= 1".into()));
    }
    let mut total: u64 = 0;
    for tuple in TargetTuple::all_with_product(n, m as usize)? {
        let left = cap - total as usize;
        total += jof::count_by_enumeration(&tuple, left)
            .map_err(|e| match e {
                Error::CapExceeded { .. } => Error::CapExceeded { cap },
                other => other,
            })?;
    }
    Ok(CountResult {
        value: i128::from(total),
        method: Method::BruteForce,
    })
}

/// One cell of the `N_m(N)` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableCell {
    #[serde(rename = "N")]
    pub n: u64,
    pub m: u32,
    pub count: i128,
}

/// `N_m(N)` for `N = 1..=max_n`, `m = 1..=max_m`, `N`-major.
pub fn count_table(max_n: u64, max_m: u32) -> Result<Vec<TableCell>> {
    let mut cells = Vec::new();
    for n in 1..=max_n {
        for m in 1..=max_m {
            cells.push(TableCell {
                n,
                m,
                count: count_m_part(n, m)?.value,
            });
        }
    }
    Ok(cells)
}
