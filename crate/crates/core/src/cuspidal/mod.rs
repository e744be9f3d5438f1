//! Finite-dimensional `H_n`-modules and the cuspidal weight modules induced
//! from them.

pub mod check;
pub mod hrep;
pub mod roundtrip;
pub mod separation;
pub mod window;

pub use check::{cuspidality_check, CuspidalityReport};
pub use hrep::{make_hrep, w_module, HRep};
pub use roundtrip::{roundtrip, RoundTripReport};
pub use separation::{separation_check, SeparationReport};
pub use window::{induce_g1, WeightWindow, WinOp, WinVec};
