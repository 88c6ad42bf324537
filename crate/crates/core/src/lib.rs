//! Exact tooling for the Baumslag–Solitar groups `BS(1,q)` and Stallings'
//! non-FP₃ group: word arithmetic, geodesic normal forms, Cayley-ball
//! enumeration, empirical almost-convexity scans and verification of
//! explicit bridging paths.

pub mod ball;
pub mod bs;
pub mod cache;
pub mod error;
pub mod geodesic;
pub mod scan;
pub mod stallings;
pub mod witness;
pub mod words;

pub use error::{Error, Result};
