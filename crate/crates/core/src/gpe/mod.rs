//! Generalized polygon exchanges: a convex space `X`, a source partition `P`,
//! and one invertible affine piece per atom whose images form a partition `Q`.

mod builders;
mod format;
mod system;

pub use builders::{
    builtin, make_affine_exchange, make_baker, make_euclidean_exchange, make_identity_exchange, make_quadrant_rotation,
    make_rectangle_exchange, make_rotation_exchange, make_shear_exchange, make_three_rectangle_exchange, AxisRect,
    BUILTIN_SYSTEMS,
};
pub use format::{parse_description, print_description, HEADER as DESCRIPTION_HEADER};
pub use system::{Flavor, GpeSystem, OrbitResult, OrbitStatus, PolygonPartition, Side, ValidationReport, Violation};
