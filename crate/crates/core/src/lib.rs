//! Group inverse (Green matrix), effective resistances and Kirchhoff index of
//! non-complete wheel networks.
//!
//! Three independent routes produce the group inverse:
//!
//! * [`pipeline`]: the Schur-complement chain built from Chebyshev closed forms;
//!   this is the trusted path.
//! * [`closed_form`]: the published entry-by-entry formulas, evaluated under
//!   the operator readings the [`errata`] ledger accepts.
//! * [`oracle`]: dense rank completion with an in-house LU solver.
//!
//! Internal vertex labels are 0-based with the hub at `n`.

pub mod chebyshev;
pub mod closed_form;
pub mod errata;
pub mod error;
pub mod matrix;
pub mod metrics;
pub mod oracle;
pub mod output;
pub mod pipeline;
pub mod reading;
pub mod sweep;
pub mod validate;
pub mod wheel;

pub use closed_form::{theorem_block_entry, theorem_border_entry, theorem_corner, theorem_group_inverse};
pub use errata::{ErrataLedger, ErrataRecord, ErrataStatus, Reconciliation};
pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use metrics::{
    effective_resistance, kirchhoff_closed, kirchhoff_green, kirchhoff_wheel, resistance_closed, resistance_table,
};
pub use oracle::{compare, dense_group_inverse, solve_dense, ComparisonReport};
pub use pipeline::assemble_group_inverse;
pub use sweep::Sweep;
pub use validate::{validate, ValidationReport};
pub use wheel::{build_laplacian, cycle_green_entry, VertexId, WheelParams};
