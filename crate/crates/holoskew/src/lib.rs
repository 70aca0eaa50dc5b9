//! Skew braces on a fixed finite group, realized three ways: circle
//! operations, gamma functions, and regular subgroups of the holomorph.
//! Includes enumeration, the bi-skew and normal-in-holomorph
//! characterizations, the multiple holomorph T(G), and the known
//! constructions of bi-gamma-functions.

pub mod biskew;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod gamma;
pub mod group;
pub mod holomorph;
pub mod oracle;
pub mod perm;
pub mod radical;
pub mod specparse;

pub use error::{Error, Result};
