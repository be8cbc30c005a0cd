use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource caps shared by every expensive routine.
///
/// A routine that would exceed a cap stops with [`Error::Budget`] instead of
/// truncating its answer.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum number of lcm-lattice elements visited by the Betti engine.
    pub max_lattice: usize,
    /// Maximum number of generators of any intermediate ideal.
    pub max_generators: usize,
    /// Maximum number of points examined by the integral-closure search.
    pub max_lp_calls: usize,
    /// Maximum number of simple cycles enumerated in a graph.
    pub max_cycles: usize,
    /// Optional wall-clock limit.
    pub time_limit: Option<Duration>,
    started: Instant,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_lattice: 200_000,
            max_generators: 200_000,
            max_lp_calls: 50_000_000,
            max_cycles: 1_000_000,
            time_limit: None,
            started: Instant::now(),
        }
    }
}

impl Budget {
    /// Caps large enough for every desk-scale instance of the built-in corpora.
    pub fn generous() -> Self {
        Budget {
            max_lattice: 20_000_000,
            max_generators: 2_000_000,
            max_lp_calls: 500_000_000,
            ..Budget::default()
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self.started = Instant::now();
        self
    }

    /// Restarts the wall clock.
    pub fn restart(&mut self) {
        self.started = Instant::now();
    }

    pub fn check_time(&self) -> Result<()> {
        if let Some(limit) = self.time_limit {
            let elapsed = self.started.elapsed();
            if elapsed > limit {
                return Err(Error::Budget {
                    what: "wall time (ms)",
                    size: elapsed.as_millis() as usize,
                    limit: limit.as_millis() as usize,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_generators(&self, size: usize) -> Result<()> {
        if size > self.max_generators {
            return Err(Error::Budget {
                what: "generator count",
                size,
                limit: self.max_generators,
            });
        }
        Ok(())
    }
}
