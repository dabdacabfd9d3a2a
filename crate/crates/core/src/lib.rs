//! Exact arithmetic for twisted group rings `L_k # G` over a tower of finite
//! fields `GF(q) ⊆ GF(q^p) ⊆ GF(q^{p^2}) ⊆ …`, where `G ≅ Z^n` acts through
//! powers of the Frobenius selected by `p`-adic exponents.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod action;
mod arith;
pub mod center;
pub mod error;
pub mod field;
pub mod growth;
pub mod lattice;
pub mod laurent;
pub mod pi;
pub mod quotient;
pub mod ring;
pub mod sample;
pub mod simplicity;
pub mod tower;

pub use action::{ActionConfig, Certificate, GroupWord, PAdicExponent};
pub use center::{is_central, is_structurally_central, FreeBasis};
pub use error::{Error, Result};
pub use growth::{gk_estimate, growth_table, GkEstimate, GrowthTable};
pub use lattice::KernelLattice;
pub use laurent::{LaurentPoly, LaurentRing};
pub use pi::{standard_polynomial, PiReport};
pub use quotient::{CentralFraction, QuotientRing, RationalCentral};
pub use ring::{Construction, RingContext, RingElement, TermOrder};
pub use simplicity::{unit_in_ideal, ShrinkStep, ShrinkTrace};
pub use tower::{FieldElement, Tower, TowerConfig, TowerLevel};
