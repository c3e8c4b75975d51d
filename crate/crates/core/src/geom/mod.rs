//! Exact rational plane geometry: points, affine maps, convex polygons,
//! segments and segment overlays.

mod affine;
mod overlay;
mod point;
mod polygon;
mod segment;

pub use affine::AffineMap2;
pub use overlay::{overlay_segments, Arrangement};
pub use point::{orient, ExactPoint};
pub use polygon::{apply_affine, clip_halfplane, intersect_convex, ConvexPolygon, Location};
pub use segment::Segment;
