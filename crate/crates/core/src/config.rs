use crate::error::{Error, Result};

pub const DEFAULT_SCAN_BUDGET: u64 = 2_000_000_000;
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 26;
pub const DEFAULT_GRAY_MAX_N: usize = 5;
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

/// Work limits for the exhaustive oracles plus the worker count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budgets {
    /// Maximum number of distance evaluations (or ambient visits) per oracle call.
    pub scan: u64,
    /// Maximum number of cosets a syndrome table may hold.
    pub table: u64,
    /// Largest length n for which the binary Gray-image scan (2^(4n) points) runs.
    pub gray_max_n: usize,
    /// Maximum number of codewords enumerated for weight distributions.
    pub enumeration: u64,
    /// Worker threads; 0 means one per available core.
    pub threads: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            scan: DEFAULT_SCAN_BUDGET,
            table: DEFAULT_TABLE_BUDGET,
            gray_max_n: DEFAULT_GRAY_MAX_N,
            enumeration: DEFAULT_ENUMERATION_BUDGET,
            threads: 0,
        }
    }
}

impl Budgets {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    /// Runs `f` inside a rayon pool sized by `threads`.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot build thread pool: {e}")))?;
        Ok(pool.install(f))
    }
}
