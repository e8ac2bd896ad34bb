//! Thickness versus relative hyperbolicity for Coxeter groups.
//!
//! * [`graph`]: simplicial graphs, the presentation graphs of right-angled
//!   Coxeter groups.
//! * [`racg`]: the polynomial-time thickness decision for right-angled
//!   Coxeter groups and their minimal peripheral structure.
//! * [`coxeter`]: general Coxeter matrices and finite/affine diagram types.
//! * [`general`]: the thick class for arbitrary Coxeter systems, peripheral
//!   extraction and the RH1-RH3 certificate.
//! * [`random_lab`]: Erdős–Rényi sampling and Monte Carlo sweeps.
//! * [`census`]: exhaustive labelled-graph census of thick graphs.
//! * [`bounds`]: the analytic estimates fed by the census constants.

pub mod bounds;
pub mod census;
pub mod coxeter;
pub mod general;
pub mod graph;
pub mod racg;
pub mod random_lab;

mod status;

pub use status::Status;
