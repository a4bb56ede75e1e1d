//! Arithmetic of the cubic twists `x³ + y³ = λ`: Eisenstein integers and
//! cubic residue symbols, local reduction data, Hecke character

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod averaging;
pub mod dd;
pub mod descent;
pub mod eisenstein;
pub mod hecke;
pub mod lfunc;
pub mod tate;
pub mod twist;
