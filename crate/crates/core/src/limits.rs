use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Size caps and budgets shared by all computations.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest order a constructed group may have.
    pub max_order: u128,
    /// Largest group on which full element sweeps are allowed.
    pub element_cap: usize,
    /// Largest group for which a Cayley table is built.
    pub table_cap: usize,
    /// Largest group whose subgroup lattice is enumerated.
    pub lattice_cap: usize,
    /// Largest group on which first cohomology is computed.
    pub cohomology_cap: usize,
    /// Wall-clock budget for one d/m search.
    pub time_budget: Duration,
    /// Seed for randomized probes. Affects speed only.
    pub seed: u64,
    /// Restrict the m-search to cyclic subgroups of prime-power order.
    pub prime_power_only: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 10_000_000,
            element_cap: 200_000,
            table_cap: 4_000,
            lattice_cap: 2_000,
            cohomology_cap: 500,
            time_budget: Duration::from_secs(300),
            seed: 0x5eed_1234,
            prime_power_only: false,
        }
    }
}

/// Wall-clock deadline checked periodically by long searches.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Deadline {
    start: Instant,
    budget: Duration,
    what: &'static str,
}

impl Deadline {
    pub(crate) fn new(budget: Duration, what: &'static str) -> Self {
        Deadline {
            start: Instant::now(),
            budget,
            what,
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.start.elapsed() > self.budget {
            Err(Error::TimeBudget {
                what: self.what,
                seconds: self.budget.as_secs(),
            })
        } else {
            Ok(())
        }
    }
}
