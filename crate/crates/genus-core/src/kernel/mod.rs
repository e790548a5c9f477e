//! Exact rational arithmetic, the truncated graded polynomial ring, and
//! Puiseux q-series with exponents in eighths.

mod graded;
mod scalar;
mod series;
mod vars;

pub use graded::{GradedElement, Monomial};
pub use scalar::Scalar;
pub use series::{PuiseuxQSeries, Q_DENOM};
pub use vars::{Parity, VariableTable, VariableTableBuilder};

use thiserror::Error;

/// Errors from kernel operations whose success depends on runtime data.
///
/// Contract violations that are programmer errors (mixing elements from
/// different variable tables or degree caps) panic instead.
#[derive(Debug, Error)]
pub enum KernelError {
    #[error("series has no invertible leading coefficient (lowest order {order}/8)")]
    NonUnitLeading { order: i64 },
    #[error("graded element has zero constant term, not invertible")]
    NonUnitConstant,
    #[error("series_exp argument has a non-nilpotent coefficient at order {order}/8")]
    NonNilpotentExponent { order: i64 },
    #[error("no numeric assignment for variable `{0}`")]
    MissingAssignment(String),
}
