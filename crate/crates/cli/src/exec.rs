use mcgdensity_core::density::Executor;
use rayon::prelude::*;

use crate::error::CliError;

/// Worker count variable; defaults to the available parallelism.
pub const WORKERS_VAR: &str = "MCGDENSITY_WORKERS";

pub struct Pool(rayon::ThreadPool);

impl Pool {
    pub fn from_env() -> Result<Self, CliError> {
        let n = match std::env::var(WORKERS_VAR) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => n,
                _ => return Err(CliError::Config(format!("{WORKERS_VAR} must be a positive integer, got `{v}`"))),
            },
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(Pool)
            .map_err(|e| CliError::Precondition(e.to_string()))
    }
}

impl Executor for Pool {
    fn map<T: Sync, U: Send, F: Fn(&T) -> U + Sync>(&self, items: &[T], f: F) -> Vec<U> {
        self.0.install(|| items.par_iter().map(|x| f(x)).collect())
    }
}
