//! Numeric tolerances and truncation defaults, gathered in one place.

/// Limits and tolerances for the shared numerical kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericsConfig {
    /// Slack allowed beyond `[-1, 1]` for polynomial arguments.
    pub poly_domain_slack: f64,
    /// Largest Hermite-function order accepted by `hermite_fn`.
    pub hermite_max_order: usize,
    /// Largest Gauss–Legendre rule.
    pub gauss_legendre_max: usize,
    /// Largest matrix accepted by `symmetric_eigs`.
    pub eig_max_dim: usize,
    /// Implicit-QL sweeps allowed per eigenvalue.
    pub eig_max_sweeps: usize,
    /// Relative asymmetry tolerated by `symmetric_eigs`.
    pub eig_symmetry_tol: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            poly_domain_slack: 1e-12,
            hermite_max_order: 512,
            gauss_legendre_max: 4096,
            eig_max_dim: 2048,
            eig_max_sweeps: 60,
            eig_symmetry_tol: 1e-12,
        }
    }
}

/// Knobs of the exact Rabi solver and its position-space pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiConfig {
    /// Scan nodes per unit interval of ξ (ω = 1 units).
    pub scan_density: usize,
    /// Distance (in units of ω) kept from each pole `ξ = mω` while scanning.
    pub pole_guard: f64,
    /// Geometric scan nodes placed between the guard and the first uniform node.
    pub pole_refine_nodes: usize,
    /// Bisection stops once the bracket is narrower than this (ω = 1 units).
    pub root_tol: f64,
    /// Roots of one parity closer than this (units of ω) are flagged.
    pub near_degenerate: f64,
    /// Initial truncation of the G-function series.
    pub series_initial: usize,
    /// Hard cap on the G-function series length.
    pub series_cap: usize,
    /// Relative size below which a series term counts as negligible.
    pub series_tail: f64,
    /// Consecutive negligible terms needed to stop.
    pub series_tail_run: usize,
    /// Fock cutoff of reconstructed eigenstates; `None` picks `⌈200·max(1, g²)⌉`.
    pub n_fock: Option<usize>,
    /// Largest relative Fock amplitude tolerated at the cutoff.
    pub fock_tail_tol: f64,
    /// Points of the uniform position grid.
    pub grid_points: usize,
    /// Largest change of `c₁` between the grid and its half-resolution subgrid.
    pub grid_refine_tol: f64,
    /// How eigenstates are synthesized from the K-series.
    pub synthesis: Synthesis,
}

impl Default for RabiConfig {
    fn default() -> Self {
        Self {
            scan_density: 64,
            pole_guard: 1e-12,
            pole_refine_nodes: 24,
            root_tol: 1e-14,
            near_degenerate: 1e-3,
            series_initial: 64,
            series_cap: 1000,
            series_tail: 1e-15,
            series_tail_run: 5,
            n_fock: None,
            fock_tail_tol: 1e-10,
            grid_points: 4096,
            grid_refine_tol: 1e-6,
            synthesis: Synthesis::DisplacedBasis,
        }
    }
}

impl RabiConfig {
    /// Fock cutoff used for coupling `g/ω`.
    pub fn fock_cutoff(&self, g_scaled: f64) -> usize {
        self.n_fock.unwrap_or_else(|| default_truncation(g_scaled))
    }
}

/// Default Fock truncation `⌈200·max(1, (g/ω)²)⌉`.
pub fn default_truncation(g_scaled: f64) -> usize {
    let s = if g_scaled * g_scaled > 1.0 { g_scaled * g_scaled } else { 1.0 };
    libm::ceil(200.0 * s) as usize
}

/// Route from the K-series to Fock amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Synthesis {
    /// `e^{−gz} Σ K_m Δ/(ξ−m) (z+g)^m` expanded in displaced number states.
    DisplacedBasis,
    /// `e^{gz} Σ K_m (g−z)^m` expanded as a power series by binomial convolution.
    BinomialConvolution,
}
