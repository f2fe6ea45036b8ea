//! Exact computation with piecewise-linear modules over partially ordered
//! real vector spaces: polyhedral region algebra, finite poset homological
//! algebra, upset/downset indicator resolutions, conic stalks, and conic
//! stratifications of supports.
//!
//! The layers, bottom to top:
//!
//! * [`geometry`] — exact rational half-spaces, Fourier–Motzkin feasibility,
//!   hyperplane arrangements as sign-vector face lattices, polyhedral cones,
//!   and cone-induced comparability of faces.
//! * [`poset`], [`module`], [`complex`] — finite posets and exact linear
//!   algebra for modules and bounded complexes over them.
//! * [`encoding`], [`stalk`] — finite encodings of tame PL modules (a master
//!   arrangement, a face→poset assignment, a poset complex) and the conic
//!   stalk calculus on top of them.
//! * [`resolution`], [`indicator`] — minimal upset/downset resolutions over
//!   the finite poset, lifted to labeled PL indicator complexes, with the
//!   open/closed topology adjustment and independent verification.
//! * [`stratify`] — conic stratification of compact supports and the bounded
//!   constant-piece decomposition by cone-adapted clipping.
//!
//! Everything is immutable after construction and all operations are pure.

pub mod complex;
pub mod encoding;
pub mod error;
pub mod field;
pub mod geometry;
pub mod indicator;
pub mod matrix;
pub mod module;
pub mod poset;
pub mod resolution;
pub mod sample;
pub mod scalar;
pub mod stalk;
pub mod stratify;

pub use complex::{ChainMap, PosetComplex, VsChainMap, VsComplex};
pub use encoding::{Encoding, PLComplex};
pub use error::{Error, Result};
pub use field::Field;
pub use geometry::{Arrangement, Comparability, Cone, FaceSet, HalfSpace};
pub use indicator::{IndicatorComplex, Kind, Semantics};
pub use matrix::Matrix;
pub use module::{ModuleHom, PosetModule, ValidationReport};
pub use poset::FinitePoset;
pub use resolution::PosetResolution;
pub use stalk::StalkContext;
pub use stratify::{ConicStratification, Stratum};
