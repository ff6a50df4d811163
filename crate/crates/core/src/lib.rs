//! Triangulated closed surfaces, simplicial vertex maps between them, and
//! the degree of such maps onto the 7-vertex torus.

pub mod analysis;
pub mod construct;
pub mod io;
pub mod label;
pub mod map;
pub mod orientation;
pub mod surface;

pub use label::{Sign, Triangle, VertexId};
pub use map::{DegreeReport, MapError, SimplicialVertexMap};
pub use surface::{Complex, SurfaceError, TriangulatedSurface};
