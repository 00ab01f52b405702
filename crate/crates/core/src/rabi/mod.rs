//! Exact eigenstates of the quantum Rabi model and their entanglement moments.
//!
//! The Hamiltonian is `H = ω a†a + g σ_x (a + a†) + ½ Δ σ_z`. It commutes
//! with `σ_z ⊗ (−1)^{a†a}`, and each parity sector is solved through the
//! G-function: eigenvalues are `E = ξ − g²/ω` at the zeros of `G_±(ξ)`.
//! Everything is computed in units `ω = 1` and rescaled on output.
//!
//! [`rabi_moments`] chains the stages: root finding, Fock reconstruction,
//! position-space spinor, distribution of conditional qubit states on the
//! great circle, and the circle moments.

mod concurrence;
mod params;
mod pipeline;
mod position;
mod series;
mod spectrum;
mod state;

pub use concurrence::{
    concurrence_braak, concurrence_delta_zero, parity_concurrence, qubit_i_concurrence, DeltaZeroConcurrence,
};
pub use params::{Parity, RabiParams};
pub use pipeline::{moments_from_state, rabi_moments, RabiMoments};
pub use position::{
    default_half_width, spinor_grid, theta_atoms, theta_distribution, theta_histogram, SpinorGrid,
};
pub use series::{f_coeff, g_function, k_series, minimal_k_series, KSeries};
pub use spectrum::{level_root, lowest_levels, lowest_roots, scan_spectrum, BraakRoot, Level, SpectrumScan};
pub use state::{bargmann_to_fock, displaced_number_states, FockState};
