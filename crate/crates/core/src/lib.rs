//! Entanglement moments for pure bipartite states.
//!
//! A pure state `|Ψ⟩ = Σᵢ |ψᵢ⟩ ⊗ |i⟩`, written against a measurement basis
//! `{|i⟩}` of system B, induces an ensemble of normalized states of system A
//! with probabilities `|ψᵢ|²`. The n-th entanglement moment weights the
//! pairwise distance `1 − |⟨ψ̃ᵢ|ψ̃ⱼ⟩|^{2n}` by those probabilities. The first
//! moment is the I-concurrence; higher moments resolve how the ensemble is
//! spread over the state space of A.
//!
//! The crate is `no_std` (with `alloc`) and contains:
//!
//! * [`numerics`]: special functions, Gauss–Legendre rules, bracketed root
//!   finding, symmetric eigensolvers and tridiagonal linear solves.
//! * [`moments`]: definition-level moments of discrete ensembles.
//! * [`circle`], [`sphere`], [`cpn`]: harmonic expansions on the great
//!   circle, the Bloch sphere and general ℂP^{N−1}.
//! * [`rabi`]: exact Rabi-model eigenstates from the G-function and their
//!   moment curves in the position measurement basis.
//! * [`fock`]: truncated Fock-space diagonalization used as an independent
//!   reference for [`rabi`].

#![no_std]
#![forbid(unsafe_code)]
// `!(x <= tol)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod circle;
pub mod config;
pub mod cpn;
pub mod error;
pub mod fock;
pub mod moments;
pub mod numerics;
pub mod rabi;
pub mod sphere;

#[cfg(test)]
pub(crate) mod test_support;

pub use error::{Error, Result};
pub use num_complex::Complex64;
