//! Structured errors shared across the algebraic operations.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CalcError {
    /// The quiver has a sink, so Cuntz-Krieger normalization and level
    /// raising are unavailable.
    SinkQuiver { vertex: String },
    /// Level raising would exceed the configured cap.
    RaiseCapExceeded { needed: usize, cap: usize },
    /// A monomial already sits above the requested level.
    LevelTooLow { have: usize, want: usize },
    /// A cochain was fed a tensor outside its arity/weight profile where
    /// an exact arity was required.
    ArityMismatch { expected: usize, got: usize },
    /// An enumeration grew past the instance budget.
    BudgetExceeded { limit: usize },
    /// An operation required a homogeneous element.
    Inhomogeneous,
}

impl fmt::Display for CalcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CalcError::SinkQuiver { vertex } => {
                write!(f, "quiver has a sink at vertex '{}'", vertex)
            }
            CalcError::RaiseCapExceeded { needed, cap } => {
                write!(f, "level raising needs {} steps, cap is {}", needed, cap)
            }
            CalcError::LevelTooLow { have, want } => {
                write!(f, "cannot lower a level-{} monomial to level {}", have, want)
            }
            CalcError::ArityMismatch { expected, got } => {
                write!(f, "expected arity {}, got {}", expected, got)
            }
            CalcError::BudgetExceeded { limit } => {
                write!(f, "instance budget of {} exceeded", limit)
            }
            CalcError::Inhomogeneous => write!(f, "element is not degree-homogeneous"),
        }
    }
}
