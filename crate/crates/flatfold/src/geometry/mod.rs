//! Exact rational 2D kernel: scalars, primitives, polygons, and planar
//! subdivisions. No floating point anywhere in this module.

pub mod polygon;
pub mod primitives;
pub mod rat;
pub mod subdivision;

pub use polygon::{
    convex_overlap_positive, convex_polygon_intersection, point_in_polygon, signed_area2,
    Containment,
};
pub use primitives::{
    cross, dist2, dot, line_intersection, orient, pseudo_angle_cmp, reflect,
    segment_intersection, Isometry, Line, Point, SegInter, Segment,
};
pub use rat::Rat;
pub use subdivision::{build_subdivision, EdgeId, Face, FaceId, Location, SubEdge, Subdivision, VertexId};
