//! Root systems of type A, weights, Casimirs and characters.

mod freudenthal;
mod root_system;

pub use freudenthal::{character, character_weyl_quotient, weyl_denominator, weyl_numerator, WeightSystem};
pub use root_system::{CartanPoint, HighestWeight, RootSystem, WeylElement};
