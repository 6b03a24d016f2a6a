//! Exact counts with a natural-log mirror.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Nonnegative exact integer with its natural log cached. `ln 0` is
/// represented by `f64::NEG_INFINITY`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogScaledCount {
    exact: BigUint,
    log_value: f64,
}

impl LogScaledCount {
    pub fn new(exact: BigUint) -> Self {
        let log_value = ln_biguint(&exact);
        LogScaledCount { exact, log_value }
    }

    pub fn zero() -> Self {
        LogScaledCount::new(BigUint::zero())
    }

    pub fn exact(&self) -> &BigUint {
        &self.exact
    }

    pub fn ln(&self) -> f64 {
        self.log_value
    }

    pub fn is_zero(&self) -> bool {
        self.exact.is_zero()
    }

    pub fn into_exact(self) -> BigUint {
        self.exact
    }
}

impl From<u64> for LogScaledCount {
    fn from(v: u64) -> Self {
        LogScaledCount::new(BigUint::from(v))
    }
}

/// Natural log of an arbitrary-precision integer from its top 64 bits.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return libm::log(x.to_u64().expect("fits in 64 bits") as f64);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 top bits");
    libm::log(top as f64) + shift as f64 * core::f64::consts::LN_2
}

/// `n (n-1) ... (n-k+1)`, zero when `k > n`.
pub fn falling_factorial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    falling_factorial(n, n)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
