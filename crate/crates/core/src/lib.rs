//! Gamma functions, Bessel kernels and Mellin-module checks over small
//! finite fields.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the `bkk` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bessel;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod kernel;
pub mod mellin;
pub mod rootdata;
pub mod scalar;
pub mod vanishing;

pub use num_complex::Complex64;
