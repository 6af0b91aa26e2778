//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls into the crate's arithmetic: Möbius values come from
//! trial division, convolutions from double loops over value tables, and
//! ordered factorisations from exhaustive search.

#![allow(dead_code)]

/// Prime factors with multiplicity, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn omega(n: u64) -> u32 {
    prime_factors(n).len() as u32
}

pub fn is_square_free(n: u64) -> bool {
    let f = prime_factors(n);
    f.windows(2).all(|w| w[0] != w[1])
}

pub fn naive_mobius(n: u64) -> i128 {
    if !is_square_free(n) {
        0
    } else if omega(n).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Value table indexed `1..=max` (slot 0 unused).
pub type Table = Vec<i128>;

pub fn table(max: usize, f: impl Fn(u64) -> i128) -> Table {
    (0..=max).map(|n| if n == 0 { 0 } else { f(n as u64) }).collect()
}

/// Dirichlet convolution by a double loop over `a * b <= max`.
pub fn table_convolve(f: &Table, g: &Table) -> Table {
    let max = f.len() - 1;
    let mut out = vec![0i128; max + 1];
    for a in 1..=max {
        for b in 1..=max / a {
            out[a * b] += f[a] * g[b];
        }
    }
    out
}

pub fn table_power(f: &Table, j: u32) -> Table {
    let max = f.len() - 1;
    let mut acc = table(max, |n| i128::from(n == 1));
    for _ in 0..j {
        acc = table_convolve(f, &acc);
    }
    acc
}

/// Number of ordered tuples `(x_1, ..., x_k)` with product `n` such that
/// `x_i >= lower[i]`, and `x_i` square-free wherever `square_free[i]`.
pub fn ordered_factorisations(n: u64, lower: &[u64], square_free: &[bool]) -> u64 {
    if lower.is_empty() {
        return u64::from(n == 1);
    }
    let mut count = 0;
    for x in lower[0].max(1)..=n {
        if !n.is_multiple_of(x) || (square_free[0] && !is_square_free(x)) {
            continue;
        }
        count += ordered_factorisations(n / x, &lower[1..], &square_free[1..]);
    }
    count
}

/// `c_j^(r)(n)` for `r >= 0`: `j` leading factors `>= 2`, then `r` free.
pub fn associated_nonnegative(j: usize, r: usize, n: u64) -> i128 {
    let mut lower = vec![2; j];
    lower.extend(std::iter::repeat_n(1, r));
    ordered_factorisations(n, &lower, &vec![false; j + r]) as i128
}

/// `(-1)^(Omega(n) + l)` times the number of ordered factorisations of `n`
/// into `l` non-trivial square-free factors.
pub fn signed_square_free_count(l: usize, n: u64) -> i128 {
    let count = ordered_factorisations(n, &vec![2; l], &vec![true; l]) as i128;
    if (omega(n) as usize + l).is_multiple_of(2) {
        count
    } else {
        -count
    }
}

/// Every ordered tuple of `m` factors `>= 2` with product `n`.
pub fn ordered_tuples(n: u64, m: usize) -> Vec<Vec<u64>> {
    if m == 0 {
        return if n == 1 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for x in 2..=n {
        if n.is_multiple_of(x) {
            for mut rest in ordered_tuples(n / x, m - 1) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
    }
    out
}

/// JOF count of a tuple by exhaustive search over interleavings: pick any
/// part other than the previous one and any divisor `>= 2` of its residue.
pub fn jof_count(parts: &[u64]) -> u64 {
    fn rec(res: &mut Vec<u64>, last: usize) -> u64 {
        if res.iter().all(|&r| r == 1) {
            return 1;
        }
        let mut total = 0;
        for p in 0..res.len() {
            if p == last || res[p] == 1 {
                continue;
            }
            let r = res[p];
            for f in 2..=r {
                if r.is_multiple_of(f) {
                    res[p] = r / f;
                    total += rec(res, p);
                    res[p] = r;
                }
            }
        }
        total
    }
    rec(&mut parts.to_vec(), usize::MAX)
}

/// The published grid of N_m(N), N = 1..=32 (columns), m = 1..=4 (rows).
pub const PUBLISHED_TABLE: [[i128; 32]; 4] = [
    [
        0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, //
        1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
    ],
    [
        0, 0, 0, 2, 0, 4, 0, 6, 2, 4, 0, 14, 0, 4, 4, 14, //
        0, 14, 0, 14, 4, 4, 0, 38, 2, 4, 6, 14, 0, 24, 0, 30,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 6, 0, 0, 0, 18, 0, 0, 0, 36, //
        0, 18, 0, 18, 0, 0, 0, 126, 0, 0, 6, 18, 0, 36, 0, 150,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 24, //
        0, 0, 0, 0, 0, 0, 0, 96, 0, 0, 0, 0, 0, 0, 0, 240,
    ],
];
