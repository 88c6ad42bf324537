//! Checkable constructions: bridging paths for close sphere points in
//! `BS(1,2)`, an exhaustive search for the configurations that cannot occur,
//! and the witnesses against the stronger convexity properties.

pub mod cases;
pub mod impossible;
pub mod section_four;

pub use crate::stallings::{verify_stallings_witness, StallingsWitnessReport};
pub use cases::{build_case, verify_case, CaseParams, CaseReport, CaseWitness};
pub use impossible::{impossibility_search, ImpossibilityReport};
pub use section_four::{verify_boundingm, verify_bs1q_notmac, verify_notpac, BoundingReport, SectionFourReport};
