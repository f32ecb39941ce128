//! Tomographic (probability) representation of quantum states and channels.
//!
//! The library covers two systems:
//!
//! * **Qubit (spin-1/2).** States are represented by spin tomograms
//!   `w(m, alpha, beta)`, the probabilities of measuring outcome `m = ±1/2`
//!   along the direction parametrised by the angles `(alpha, beta)`.
//!   Channels act on tomograms either directly (Kraus operators, Pauli
//!   mixtures, affine Bloch maps) or as integral kernels over the angular
//!   grid, and complete positivity is decided numerically through the Choi
//!   matrix.
//! * **Single bosonic mode.** States are represented by optical tomograms
//!   `omega(x, phi)`, the distributions of the rotated quadrature
//!   `X_phi = cos(phi) Q + sin(phi) P`. Gaussian attenuator/amplifier
//!   channels act either on the characteristic function or as Gaussian
//!   convolution kernels on the tomogram, and the whole picture can be
//!   mapped to a genuine probability density on the plane.
//!
//! Everything is pure and deterministic: no global state, no interior
//! mutability, fixed reduction orders for all quadrature sums.

pub mod boson;
pub mod error;
pub mod linalg;
pub mod numerics;
pub mod plane;
pub mod qstate;
pub mod qubit_kernels;
pub mod qubit_tomography;

pub use error::{Error, Result};
