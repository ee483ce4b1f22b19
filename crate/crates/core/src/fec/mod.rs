//! Per-user channel coding: regular LDPC codes, interleaving and soft
//! decoding.

pub mod alist;
mod bp;
mod code;
pub(crate) mod gf2;
mod interleaver;

pub use bp::{bp_decode, BpOutput, LLR_LIMIT};
pub use code::{cached_code, gallager_construct, LdpcCode};
pub use gf2::rank;
pub use interleaver::Interleaver;
