//! Exact Hasse-Schmidt (jet) algebra computations.
//!
//! Jet algebras and Hasse-Schmidt modules of finitely presented algebras and
//! modules are built as explicit presentations over exact scalars. The
//! structural identities relating them (functor commutation, the symmetric
//! algebra bridge, the cotangent formula, base change and the jet line
//! bundles on `P^1`) are checked as literal polynomial identities.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod hs;
pub mod local;
pub mod module;
pub mod p1;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod series;

pub use error::Error;
pub use local::LocalPoly;
pub use poly::{JetVar, Monomial, Poly, Symbol};
pub use ring::{substitute, RingElement};
pub use scalar::{Field, Scalar};
pub use series::{series_invert, TruncSeries};
