#![no_std]
extern crate alloc;

pub mod candidates;
pub mod error;
pub mod fib;
pub mod highprec;
pub mod lattice;
pub mod verifier;

pub use error::{Error, Result};
