//! Self-contained numerical kernels shared by every other module.

pub mod eigen;
pub mod quadrature;
pub mod roots;
pub mod special;
pub mod sum;
pub mod tridiag;

pub use eigen::{symmetric_eigs, tridiagonal_eigs, SymmetricEigen};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use roots::{bisect, find_roots, find_roots_on_nodes, Bracket, Root, RootScan};
pub use special::{
    binomial_f64, binomial_u128, hermite_fn, hermite_fns, jacobi_all, jacobi_p, laguerre_l, legendre_all,
    legendre_p,
};
pub use sum::pairwise_sum;
pub use tridiag::solve_tridiagonal;
