//! Property testing for bounded-degree relational databases.
//!
//! The crate covers both distance models for bounded-degree databases: the
//! tuple-edit model (`Bdrd`) and the model that additionally allows element
//! insertions and deletions (`Pm`). On top of them it provides
//! neighborhood-type statistics, semilinear histogram sets, and a tester whose
//! query count depends only on the proximity parameter, the degree bound, the
//! schema and the property, never on the size of the input.
//!
//! Module map:
//!
//! * [`db`]: schemas, databases over the domain `[n]`, oracle access, the
//!   Gaifman graph and the text file format.
//! * [`neighborhoods`]: r-balls, canonical type codes, histograms and the
//!   sampling frequency estimator.
//! * [`semilinear`]: linear and semilinear sets of histogram vectors.
//! * [`distances`]: exact tiny-instance distance oracles for both models.
//! * [`tester`]: parameter derivation, property specifications and testers.
//! * [`generate`] and [`experiment`]: fixture families and the trial harness.

pub mod db;
pub mod distances;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod generate;
pub mod neighborhoods;
pub mod rational;
pub mod semilinear;
pub mod tester;

pub use error::{Error, Result};
