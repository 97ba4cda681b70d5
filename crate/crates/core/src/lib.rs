//! Interleaved polar (i-polar) codes: encoding, Gaussian-approximation
//! design, exact ensemble weight enumerators, analytical bounds,
//! list decoding and Monte Carlo block-error simulation.

pub mod bits;
pub mod bounds;
pub mod decode;
pub mod code;
pub mod design;
pub mod encode;
pub mod error;
pub mod interleaver;
pub mod outer;
pub mod repro;
pub mod scheme;
pub mod sim;
mod quad;
pub mod wef;

pub use bits::BitWord;
pub use code::CodeSpec;
pub use encode::{ipolar_encode, polar_encode, Encoder, IPolarCode};
pub use error::{Error, Result};
pub use interleaver::InterleaverSet;
