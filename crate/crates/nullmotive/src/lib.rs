//! Exact motivic classes of nullcones of quiver representations.
//!
//! The motive `[N_d]` of the nullcone of the representation space of a
//! quiver is a polynomial in the Lefschetz motive L. This crate computes it
//! by three independent routes and verifies the identities tying them
//! together, all in exact big-integer arithmetic:
//!
//! * a recursion over proper sub-dimension-vectors ([`nullcone::NullconeCalculator`]),
//! * a resolved sum over ordered decompositions ([`nullcone::motive_resolved`]),
//! * the Hesselink stratification: balanced dominant strata, level quivers,
//!   phi exponents and Harder-Narasimhan semistable motives
//!   ([`hesselink::hesselink_motive`]).
//!
//! On top of these sit the twisted generating series and its inversion
//! ([`series`]), the wall-crossing star product ([`hesselink::wall_crossing_check`]),
//! motivic DT invariants of symmetric quivers through plethystic Exp/Log
//! ([`dt`]), and a brute-force nilpotent-count oracle over small prime
//! fields ([`fq`]).

pub mod dt;
pub mod error;
pub mod fq;
pub mod hesselink;
pub mod motive;
pub mod nullcone;
pub mod quiver;
pub mod series;

pub use error::{Error, Result};
pub use motive::{HalfPoly, HalfRat, LaurentPoly, MotiveRat};
pub use quiver::{DimVector, Quiver};
