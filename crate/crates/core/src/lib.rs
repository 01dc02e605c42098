//! Exact-rational feasibility, Helly-bounded infeasibility certificates and
//! Helly/Radon oracles for mixed spaces `ℝⁿ × ℤᵈ × F₁ × … × F_s`.
//!
//! Every scalar is a [`Rational`]; no floating point is used anywhere.

pub mod certificates;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod feasibility;
pub mod geometry;
pub mod io;
pub mod lab;
pub mod numeric;
pub mod spaces;
pub mod system;

pub use error::{Error, Result};
pub use numeric::{AffineForm, Point, Rational};
pub use spaces::{Factor, GroundSet, HellyBudget, SpaceDescriptor};
pub use system::InequalitySystem;
