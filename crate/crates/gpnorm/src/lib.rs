//! Exact and numerical computation of cyclotomic norms of Gaussian-period
//! type, Mahler measures of lacunary and multivariate polynomials, and the
//! integer-lattice reductions connecting the two.
//!
//! The toolkit is organized around the absolute norm
//! `Δ_p(a) = |∏_{t=1}^{p−1} (1 + ζ^{t a_1} + ⋯ + ζ^{t a_n})|`, `ζ = e^{2πi/p}`,
//! of the cyclotomic integer attached to an exponent vector `a ∈ Z^n`:
//!
//! * [`lacunary`] — exponent vectors, the sparse polynomials `P_a` and `P_A`
//!   they define, and evaluation on the unit torus;
//! * [`cyclonorm`] — exact arbitrary-precision `Δ_p(a)` by multi-modular
//!   evaluation and CRT reconstruction, signed coset products, and the
//!   zero-sum counting identity;
//! * [`rootfind`] — complex roots of the dense form of `P_a` with certified
//!   error radii, unit-circle classification backed by exact cyclotomic
//!   divisibility, and the root-product form of `log Δ_p`;
//! * [`mahler`] — exact univariate Mahler measures via Jensen's formula,
//!   multivariate measures by nested quadrature, sublevel-set volumes, and
//!   the error in Lawton's substitution limit;
//! * [`lattice`] — orthogonal complements in `Z^n`, sup-norm shortest
//!   vectors, Dirichlet reduction `a ↦ ta − pω`, and the subgroups attached
//!   to Gaussian periods;
//! * [`experiments`] — reproducible experiment drivers with CSV/JSON output,
//!   surfaced by the `gpnorm` binary.

pub mod arith;
pub mod cyclonorm;
pub mod error;
pub mod experiments;
pub mod intpoly;
pub mod lacunary;
pub mod lattice;
pub mod mahler;
pub mod rootfind;

pub use error::{Error, Result};
