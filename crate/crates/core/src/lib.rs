//! Exact-arithmetic toolkit for generalized polygon exchanges.
//!
//! * [`geom`]: rational plane geometry (convex polygons, affine maps, overlays).
//! * [`gpe`]: polygon exchanges `T : (X, P) → (X, Q)`, orbits, builtin families.
//! * [`join`]: iterated joins `R_n` with atom counts, skeleton length `ℓ`,
//!   multiplicity `b` and cell diameters.
//! * [`entropy`]: growth rates, relative entropy, Lyapunov exponents and the
//!   bound checks relating them.
//! * [`billiard`]: the polygonal billiard ball map, its singular set under the
//!   Finsler metric `|ds| sin θ + |dθ|`, and exact itinerary counting.
//! * [`scenario`]: scenario files driving the `gpe` binary.

pub mod billiard;
pub mod entropy;
pub mod error;
pub mod geom;
pub mod gpe;
pub mod join;
pub mod oracle;
pub mod rational;
pub mod scenario;

pub use error::{BilliardError, Cap, EntropyError, GeomError, GpeError, JoinError};
pub use rational::{Enclosure, ExactRational};
