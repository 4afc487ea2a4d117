//! Multiple zeta values of depth at most three: word algebra, shuffle
//! regularization, generating functions, high-precision numerics and a
//! catalog of verifiable identities.

pub mod cli;
pub mod error;
pub mod genfun;
pub mod identities;
pub mod numerics;
pub mod regularization;
pub mod word_algebra;

pub use error::{MzvError, Result};
