use std::path::PathBuf;

use cubelval_core::lfunc::LOptions;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub digits: u32,
    pub tol: f64,
    pub max_den: u64,
    pub workers: usize,
    /// Directory holding cached coefficient tables and reports.
    pub cache: Option<PathBuf>,
    pub long_running: bool,
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            digits: 12,
            tol: 1e-6,
            max_den: 9,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cache: None,
            long_running: false,
            json: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.digits < 8 {
            return Err(CliError::Input(format!("--digits must be at least 8, got {}", self.digits)));
        }
        if self.max_den < 1 {
            return Err(CliError::Input("--max-den must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(CliError::Input(format!("--tol must lie in (0, 1), got {}", self.tol)));
        }
        if self.workers == 0 {
            return Err(CliError::Input("--workers must be positive".into()));
        }
        Ok(())
    }

    pub fn l_options(&self) -> LOptions {
        LOptions { digits: self.digits, max_den: self.max_den, rel_tol: self.tol }
    }

    pub fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| CliError::Compute(e.to_string()))
    }
}
