//! Periodic points of power maps and Chebyshev polynomials over finite fields.
//!
//! Counts are computed two ways: from closed-form valuation formulas
//! ([`census::analytic_count`]) and by building the full functional graph
//! ([`census::brute_census`]). Limits of `#Per / p^n` along towers of fields
//! live in [`limits`]. All proportions are exact rationals.

pub mod census;
pub mod dynmaps;
pub mod error;
pub mod ffield;
pub mod golden;
pub mod limits;
pub mod numthy;
pub mod ratio;

pub use census::{analytic_count, brute_census, OrbitCensus, PointClass};
pub use dynmaps::{MapKind, MapSpec};
pub use error::{Error, Result};
pub use ffield::{build_field, EnumBudget, FieldDesc, FieldElement};
pub use limits::{limit, ratio_at, tower, Limit, TowerConstraint, TowerQuery};
pub use ratio::{render_decimal, ExactRatio};
