//! Uniform pass/fail accounting for enumeration-driven check suites.

use alloc::string::String;
use alloc::vec::Vec;

/// A failing instance, rendered for reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity suite over an enumerated instance set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn new(name: &str) -> SuiteReport {
        SuiteReport {
            name: String::from(name),
            instances: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    /// Counts one instance; on failure keeps the first counterexample.
    pub fn record<F>(&mut self, ok: bool, witness: F)
    where
        F: FnOnce() -> Counterexample,
    {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}
