//! Log-space factorials and binomials.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default largest photon number covered by the shared table.
pub const DEFAULT_MAX_N: usize = 4096;

/// Read-only table of `ln(n!)` for `n = 0..=max_n`.
#[derive(Debug, Clone)]
pub struct LogCombinatorics {
    table: Vec<f64>,
}

impl LogCombinatorics {
    pub fn new(max_n: usize) -> Self {
        let mut table = Vec::with_capacity(max_n + 1);
        table.push(0.0);
        // Neumaier-compensated running sum: each entry is within about one
        // ulp of ln(n!).
        let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
        for n in 1..=max_n {
            let x = (n as f64).ln();
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
            table.push(sum + comp);
        }
        Self { table }
    }

    /// Shared table with [`DEFAULT_MAX_N`] entries, built on first use.
    pub fn global() -> &'static LogCombinatorics {
        static TABLE: OnceLock<LogCombinatorics> = OnceLock::new();
        TABLE.get_or_init(|| LogCombinatorics::new(DEFAULT_MAX_N))
    }

    pub fn max_n(&self) -> usize {
        self.table.len() - 1
    }

    pub fn log_factorial(&self, n: usize) -> Result<f64> {
        self.table.get(n).copied().ok_or(Error::Range {
            what: "n",
            value: n,
            max: self.max_n(),
        })
    }

    /// `ln C(n, k)`; `k > n` yields `-inf` (the coefficient is zero).
    pub fn log_binomial(&self, n: usize, k: usize) -> Result<f64> {
        if k > n {
            self.log_factorial(n)?;
            return Ok(f64::NEG_INFINITY);
        }
        Ok(self.log_factorial(n)? - self.log_factorial(k)? - self.log_factorial(n - k)?)
    }
}

/// `ln(n!)` from the shared table.
pub fn log_factorial(n: usize) -> Result<f64> {
    LogCombinatorics::global().log_factorial(n)
}
