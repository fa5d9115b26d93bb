//! Wigner quasi-probability distributions for a particle in an infinite
//! square well: closed-form eigenstate and cross-term Wigner functions,
//! Gaussian wave-packet dynamics with exact revivals, brute-force quadrature
//! oracles, benchmark models and field export.

pub mod analysis;
pub mod cli;
pub mod config;
pub mod eigenbasis;
pub mod error;
pub mod export;
pub mod model;
pub mod oracle;
pub mod packet;
pub mod quadrature;
pub mod reference;
pub mod special;
pub mod verify;
pub mod wigner;

pub use eigenbasis::EigenIndex;
pub use error::{Error, Result};
pub use model::{ComplexScalar, PhaseSpaceGrid, TimeScales, Timestamp, WellConfig, WignerField};
pub use packet::{CoefficientSet, GaussianPacketSpec};
