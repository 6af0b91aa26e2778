//! Exact Dirichlet convolution algebra on positive integers.
//!
//! Arithmetic functions are memoized closures `u64 -> i128`. Convolution
//! walks the divisors of `n` generated from its prime factorisation, and
//! every addition and multiplication is checked: leaving the `i128` range
//! is reported as [`Error::Overflow`], never wrapped.
//!
//! The divisor functions used throughout the crate are
//!
//! - `d_j = 1^{*j}`, ordered factorisations into `j` positive factors,
//! - `c_j = (1 - e)^{*j}`, ordered factorisations into `j` factors `>= 2`,
//! - `c_j^(r) = c_j * 1^{*r}` for `r >= 0` and `c_j * mu^{*|r|}` for `r < 0`,
//! - `(e - mu)^{*L}`, which equals `c_L^(-L)` and counts (with sign
//!   `(-1)^(Omega(n) + L)`) ordered factorisations into `L` non-trivial
//!   square-free factors.
//!
//! [`DivisorFunctions`] hands out shared, memoized instances of these so
//! that repeated queries reuse earlier work.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::Serialize;

use crate::{Error, Result};

/// Largest argument accepted by factorisation and by arithmetic functions.
pub const MAX_ARGUMENT: u64 = i64::MAX as u64;

/// Largest convolution power (and divisor-function index) that will be built.
///
/// Evaluation of `f^{*j}` recurses through `j` memo layers, so the index is
/// bounded. Any `c_j` or `(e - mu)^{*j}` with `j > 63` vanishes on the
/// admissible argument range anyway.
pub const MAX_POWER: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeFactorisation {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorisation {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of prime factors counted with multiplicity, `Omega(n)`.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All positive divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

fn check_argument(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("argument must be a positive integer".into()));
    }
    if n > MAX_ARGUMENT {
        return Err(Error::Domain(format!(
            "argument {n} exceeds the supported maximum {MAX_ARGUMENT}"
        )));
    }
    Ok(())
}

/// Prime factorisation by trial division up to `sqrt(n)`.
pub fn factorise(n: u64) -> Result<PrimeFactorisation> {
    check_argument(n)?;
    let mut factors = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut p = 3u64;
    while p <= rest / p {
        push(p, &mut rest);
        p += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(PrimeFactorisation { n, factors })
}

/// `Omega(n)`, the number of prime factors of `n` with multiplicity.
pub fn big_omega(n: u64) -> Result<u32> {
    Ok(factorise(n)?.big_omega())
}

pub fn mobius(n: u64) -> Result<i8> {
    let f = factorise(n)?;
    if !f.is_square_free() {
        return Ok(0);
    }
    Ok(if f.big_omega() % 2 == 0 { 1 } else { -1 })
}

/// `(mu - e)(n)`: `(-1)^Omega(n)` for square-free `n > 1`, zero otherwise.
pub fn modified_mobius(n: u64) -> Result<i8> {
    if n == 1 {
        return Ok(0);
    }
    mobius(n)
}

/// Binomial coefficient with overflow detection; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<i128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc
            .checked_mul(i128::from(n - i))
            .ok_or_else(|| Error::overflow(format!("binomial({n}, {k})")))?
            / i128::from(i + 1);
    }
    Ok(acc)
}

/// `m!` with overflow detection.
pub fn factorial(m: u64) -> Result<i128> {
    (1..=m).try_fold(1i128, |acc, i| {
        acc.checked_mul(i128::from(i))
            .ok_or_else(|| Error::overflow(format!("{m}!")))
    })
}

type Eval = dyn Fn(u64) -> Result<i128> + Send + Sync;

struct Inner {
    name: String,
    eval: Box<Eval>,
    cache: RwLock<HashMap<u64, i128>>,
}

/// A memoized integer-valued function on the positive integers.
///
/// Cloning is cheap and shares the memo table.
#[derive(Clone)]
pub struct ArithmeticFunction(Arc<Inner>);

impl fmt::Debug for ArithmeticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithmeticFunction")
            .field("name", &self.0.name)
            .finish_non_exhaustive()
    }
}

impl ArithmeticFunction {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(u64) -> Result<i128> + Send + Sync + 'static,
    {
        ArithmeticFunction(Arc::new(Inner {
            name: name.into(),
            eval: Box::new(eval),
            cache: RwLock::new(HashMap::new()),
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn eval(&self, n: u64) -> Result<i128> {
        check_argument(n)?;
        if let Some(&v) = self.0.cache.read().expect("memo lock poisoned").get(&n) {
            return Ok(v);
        }
        // The lock is not held while evaluating: evaluation recurses into
        // other functions' memo tables.
        let v = (self.0.eval)(n)?;
        self.0
            .cache
            .write()
            .expect("memo lock poisoned")
            .insert(n, v);
        Ok(v)
    }

    /// True if both handles share one memo table.
    pub fn same_instance(&self, other: &ArithmeticFunction) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The convolution identity `e(n) = [n = 1]`.
    pub fn neutral() -> Self {
        Self::new("e", |n| Ok(i128::from(n == 1)))
    }

    /// The constant function `1`.
    pub fn one() -> Self {
        Self::new("1", |_| Ok(1))
    }

    pub fn mobius() -> Self {
        Self::new("mu", |n| mobius(n).map(i128::from))
    }

    /// `1 - e`: one on `n >= 2`, zero at `1`.
    pub fn nontrivial_one() -> Self {
        Self::new("(1-e)", |n| Ok(i128::from(n != 1)))
    }

    /// `mu - e`.
    pub fn modified_mobius() -> Self {
        Self::new("(mu-e)", |n| modified_mobius(n).map(i128::from))
    }

    /// `e - mu`, the negated modified Möbius function.
    pub fn neutral_minus_mobius() -> Self {
        Self::new("(e-mu)", |n| modified_mobius(n).map(|v| -i128::from(v)))
    }

    pub fn convolve(&self, other: &ArithmeticFunction) -> Self {
        convolve(self, other)
    }

    pub fn pow(&self, j: u32) -> Result<Self> {
        convolution_power(self, j)
    }
}

/// Dirichlet convolution `(f * g)(n) = sum_{d | n} f(d) g(n / d)`.
pub fn convolve(f: &ArithmeticFunction, g: &ArithmeticFunction) -> ArithmeticFunction {
    let name = format!("{}*{}", f.name(), g.name());
    let (f, g) = (f.clone(), g.clone());
    let label = name.clone();
    ArithmeticFunction::new(name, move |n| {
        let mut acc: i128 = 0;
        for d in factorise(n)?.divisors() {
            let a = f.eval(d)?;
            if a == 0 {
                continue;
            }
            let b = g.eval(n / d)?;
            acc = a
                .checked_mul(b)
                .and_then(|t| acc.checked_add(t))
                .ok_or_else(|| Error::overflow(format!("{label} at {n}")))?;
        }
        Ok(acc)
    })
}

fn check_power(j: u32) -> Result<()> {
    if j > MAX_POWER {
        return Err(Error::Domain(format!(
            "convolution power {j} exceeds the supported maximum {MAX_POWER}"
        )));
    }
    Ok(())
}

/// `f^{*j}` with `f^{*0} = e`.
pub fn convolution_power(f: &ArithmeticFunction, j: u32) -> Result<ArithmeticFunction> {
    check_power(j)?;
    let mut acc = ArithmeticFunction::neutral();
    for _ in 0..j {
        acc = convolve(f, &acc);
    }
    Ok(acc)
}

/// A memoized chain `base^{*0}, base^{*1}, ...` extended on demand.
struct PowerChain {
    base: ArithmeticFunction,
    powers: Mutex<Vec<ArithmeticFunction>>,
}

impl PowerChain {
    fn new(base: ArithmeticFunction) -> Self {
        PowerChain {
            base,
            powers: Mutex::new(vec![ArithmeticFunction::neutral()]),
        }
    }

    fn get(&self, j: u32) -> Result<ArithmeticFunction> {
        check_power(j)?;
        let mut powers = self.powers.lock().expect("power chain lock poisoned");
        while powers.len() <= j as usize {
            let next = convolve(&self.base, powers.last().expect("chain starts at e"));
            powers.push(next);
        }
        Ok(powers[j as usize].clone())
    }
}

/// Shared, memoized instances of the divisor functions.
pub struct DivisorFunctions {
    classical: PowerChain,
    nontrivial: PowerChain,
    mobius: PowerChain,
    squarefree: PowerChain,
    associated: Mutex<HashMap<(u32, i64), ArithmeticFunction>>,
}

impl Default for DivisorFunctions {
    fn default() -> Self {
        Self::new()
    }
}

impl DivisorFunctions {
    pub fn new() -> Self {
        DivisorFunctions {
            classical: PowerChain::new(ArithmeticFunction::one()),
            nontrivial: PowerChain::new(ArithmeticFunction::nontrivial_one()),
            mobius: PowerChain::new(ArithmeticFunction::mobius()),
            squarefree: PowerChain::new(ArithmeticFunction::neutral_minus_mobius()),
            associated: Mutex::new(HashMap::new()),
        }
    }

    /// Process-wide instance used by the free functions of this module.
    pub fn global() -> &'static DivisorFunctions {
        static GLOBAL: OnceLock<DivisorFunctions> = OnceLock::new();
        GLOBAL.get_or_init(DivisorFunctions::new)
    }

    /// `d_j = 1^{*j}`.
    pub fn classical(&self, j: u32) -> Result<ArithmeticFunction> {
        self.classical.get(j)
    }

    /// `c_j = (1 - e)^{*j}`.
    pub fn nontrivial(&self, j: u32) -> Result<ArithmeticFunction> {
        self.nontrivial.get(j)
    }

    /// `mu^{*r}`.
    pub fn mobius_power(&self, r: u32) -> Result<ArithmeticFunction> {
        self.mobius.get(r)
    }

    /// `c_j^(r)`: `c_j * d_r` for `r >= 0`, `c_j * mu^{*|r|}` for `r < 0`.
    pub fn associated(&self, j: u32, r: i64) -> Result<ArithmeticFunction> {
        if r == 0 {
            return self.nontrivial(j);
        }
        let key = (j, r);
        if let Some(f) = self.associated.lock().expect("lock poisoned").get(&key) {
            return Ok(f.clone());
        }
        let steps = u32::try_from(r.unsigned_abs())
            .map_err(|_| Error::Domain(format!("upper index {r} out of range")))?;
        let other = if r > 0 {
            self.classical(steps)?
        } else {
            self.mobius_power(steps)?
        };
        let f = convolve(&self.nontrivial(j)?, &other);
        Ok(self
            .associated
            .lock()
            .expect("lock poisoned")
            .entry(key)
            .or_insert(f)
            .clone())
    }

    /// `(e - mu)^{*L}`, the same function as `c_L^(-L)` reached through a
    /// different convolution route.
    pub fn squarefree_ordered(&self, l: u32) -> Result<ArithmeticFunction> {
        self.squarefree.get(l)
    }
}

/// `d_j(n)`: ordered factorisations of `n` into `j` positive factors.
pub fn classical_divisor(j: u32, n: u64) -> Result<i128> {
    DivisorFunctions::global().classical(j)?.eval(n)
}

/// `c_j(n)`: ordered factorisations of `n` into `j` factors, all `>= 2`.
pub fn nontrivial_divisor(j: u32, n: u64) -> Result<i128> {
    DivisorFunctions::global().nontrivial(j)?.eval(n)
}

/// The associated `(j, r)`-divisor function `c_j^(r)(n)`.
pub fn associated_divisor(j: u32, r: i64, n: u64) -> Result<i128> {
    DivisorFunctions::global().associated(j, r)?.eval(n)
}

/// `(e - mu)^{*L}(n) = c_L^(-L)(n)`.
pub fn squarefree_ordered_count(l: u32, n: u64) -> Result<i128> {
    DivisorFunctions::global().squarefree_ordered(l)?.eval(n)
}
