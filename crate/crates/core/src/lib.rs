//! Exact arithmetic core for counting quadratic extensions over small base
//! fields and auditing the asymptotics of the resulting wreath-product count.
//!
//! Everything in this crate is allocation-only (`no_std` + `alloc`): exact
//! rationals, rational interval enclosures, a small permutation-group engine,
//! quadratic/cyclic-cubic field arithmetic, 2-Selmer parametrization of
//! quadratic extensions, Galois labelling, and the counting pipeline that
//! assembles the identity `lhs = alpha * N + E` on a grid of cutoffs.
//!
//! File formats, caching, parallel drivers and the CLI live in the companion
//! `wreathtally` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analytic;
pub mod exponents;
pub mod galois;
pub mod groups;
pub mod interval;
pub mod numfield;
pub mod pipeline;
pub mod primes;
pub mod quadext;
pub mod rat;
