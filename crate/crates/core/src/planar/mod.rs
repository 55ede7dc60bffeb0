//! Planar bipartite instances given by a rotation system, their faces, the
//! separating curve, and the edge orders it induces.

mod curve;
mod faces;
mod instance;
mod order;

pub use curve::{build_curve, c_order, curve_order, default_c_order, Curve, Orientation};
pub use faces::{faces, Corner, Dart, Face};
pub use instance::{Edge, EdgeId, Instance, InstanceBuilder, Side, Vertex, VertexId};
pub use order::{
    crossing_number, generator_order, grouped_order, local_pairings, recognizer_order,
    validate_order, validate_order_capped, EdgeOrder, OrderKind, Pairing, Validity, VALIDATE_CAP,
};
