//! Numerical laboratory for exponential sums, Bessel kernels and the spectral
//! large sieve over ℤ[i].
//!
//! Layers, bottom up:
//! - [`gauss`]: exact ℤ[i] arithmetic, residues, factorization.
//! - [`expsum`]: Kloosterman sums, the V-sums and their two finite identities.
//! - [`hecke`]: Hecke characters, ζ(s,p), divisor functions.
//! - [`special`] and [`quad`]: complex Γ, Bessel J, quadrature helpers.
//! - [`kernels`]: Bessel kernels of complex order and the integrals 𝓗, 𝓘.
//! - [`fourier`]: the cutoff η and the Fourier kernels f, f̂.
//! - [`sieve`]: coefficient sequences and the bilinear-form assemblies.
//! - [`suites`]: seeded sweeps that turn the identities into reports.

pub mod error;
pub mod expsum;
pub mod fourier;
pub mod gauss;
pub mod hecke;
pub mod kernels;
pub mod quad;
pub mod report;
pub mod sieve;
pub mod special;
pub mod suites;

pub use error::{Error, Result};
pub use gauss::{GaussInt, IdealRep};
pub use report::Report;

pub type C64 = num_complex::Complex64;
