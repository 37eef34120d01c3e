//! Tape diagrams for rig categories whose sum is a coproduct, with operations
//! of an algebraic theory on tapes, and an exact semantics in finite Kleisli
//! categories of semiring-weighted monads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod kleisli;
pub mod objects;
pub mod semiring;
pub mod theory;
pub mod circuit;
pub mod interp;
pub mod tape;
pub mod suites;
