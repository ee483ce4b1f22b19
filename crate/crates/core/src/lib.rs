//! Sparse spreading signatures from Euler squares, combined with per-user
//! LDPC coding, for non-orthogonal massive access.
//!
//! The crate covers the whole link: construction and analysis of the
//! user-to-resource mapping, the block-sparse transmit chain over a Gaussian
//! multiple access channel, and the receiver (peeling with block-wise
//! interference cancellation, message-passing multiuser detection and a
//! turbo loop with the per-user FEC decoders). The `analysis` module drives
//! Monte-Carlo experiments and the `harness` module backs the command line.
//!
//! Numerical code is generic over the scalar type (`f32` or `f64`) through
//! the [`Real`] trait; the aliases below fix the common choices.

pub mod analysis;
pub mod channel;
pub mod error;
pub mod euler;
pub mod fec;
pub mod harness;
pub mod receiver;
pub mod rng;
pub mod scalar;
pub mod signatures;
pub mod sparse;

pub use error::{Error, Result};
pub use scalar::Real;
pub use sparse::BinaryMatrix;

/// Double precision signature matrix.
pub type SignatureMatrix64 = signatures::SignatureMatrix<f64>;
/// Single precision signature matrix.
pub type SignatureMatrix32 = signatures::SignatureMatrix<f32>;
/// Double precision belief-propagation output.
pub type BpOutput64 = fec::BpOutput<f64>;
/// Double precision received block.
pub type ReceivedBlock64 = channel::ReceivedBlock<f64>;
/// Double precision link scenario.
pub type Scenario64 = channel::Scenario<f64>;
/// Complex sample in double precision.
pub type Complex64 = num_complex::Complex<f64>;
