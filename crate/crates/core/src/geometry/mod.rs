//! Exact rational polyhedral engine: half-spaces, feasibility, hyperplane
//! arrangements, face-set region algebra, polyhedral cones, and the
//! cone-induced comparability relation between faces.

pub mod arrangement;
pub mod compare;
pub mod cone;
pub mod feas;
pub mod halfspace;
pub mod region;

pub use arrangement::{Arrangement, Face, Hyperplane, Sign};
pub use compare::Comparability;
pub use cone::Cone;
pub use feas::Constraint;
pub use halfspace::HalfSpace;
pub use region::FaceSet;
