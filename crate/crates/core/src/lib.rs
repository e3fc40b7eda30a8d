//! Exact symbolic computation for root systems, affine Weyl groups, Hecke
//! operators in their polynomial representation, and Macdonald polynomials.
//!
//! Every quantity in this crate is exact: integers are unbounded, scalars are
//! reduced fractions of integer polynomials in one formal variable, and all
//! identity checks are equalities of canonical forms. There are no floats and
//! no tolerances anywhere.
//!
//! The crate is `no_std` (with `alloc`); all IO, serialization, and the
//! command-line driver live in the companion `maclab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod afweyl;
pub mod dahaop;
pub mod linalg;
pub mod dunkl;
pub mod macpoly;
pub mod ring;
pub mod rootsys;
pub mod shiftop;
