//! Finite GLS number systems with redundancy.
//!
//! A family of interval number systems (generalised Lüroth / signed and mixed
//! radix expansions), driven by a probability vector, turns digit expansion
//! into a self-affine iterated function system on the unit square: the first
//! coordinate records which system acts, the second carries the expansion.
//! Because several systems expand the same interval, every point admits
//! uncountably many digit words; the interesting objects are the level sets
//! of points whose words realize a prescribed digit-frequency vector.
//!
//! The crate computes the Hausdorff dimension of those level sets, and of
//! their one-dimensional fibres, by three independent routes:
//!
//! * **closed form** — entropy over Lyapunov exponents ([`dimension`]);
//! * **variational** — the root in `s` of the infimum over linear digit
//!   perturbations of the topological pressure of the singular value
//!   function, solved numerically ([`dimension::dim_variational`]);
//! * **empirical** — grid-entropy slopes of sampled point clouds
//!   ([`estimator`]).
//!
//! Supporting machinery: redundant encode/decode with exact width bounds
//! ([`codec`]), deterministic digit scheduling with prescribed frequencies
//! ([`scheduler`]), and exact cylinder masses for the digit measures
//! ([`measures`]).

pub mod codec;
pub mod config;
pub mod dimension;
pub mod error;
pub mod estimator;
pub mod fixtures;
pub mod measures;
pub mod scheduler;
pub mod system;

pub use codec::{DecodedPoint, Word};
pub use config::{FamilyConfig, NumberOrRatio, SystemConfig};
pub use dimension::{Branch, DimensionReport};
pub use error::{ErrorCategory, GlsError, Result};
pub use estimator::{CloudMeta, PointCloud, ScalingFit};
pub use measures::{FibreCoding, FundamentalInterval};
pub use scheduler::FrequencyVector;
pub use system::{AffineDigitData, Digit, DigitTriple, DominationReport, GlsFamily, GlsSystem};
