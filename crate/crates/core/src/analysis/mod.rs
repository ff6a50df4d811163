//! Exhaustive map enumeration, degree spectra, and degree and vertex bounds.

mod bounds;
mod enumerate;
mod spectrum;

pub use bounds::{
    degree_bound, simplicial_volume, vertex_lower_bound, BoundError, DegreeRange, VertexBound,
};
pub use enumerate::{
    automorphisms, cycle_notation, cycle_notation_with, enumerate_simplicial_maps,
    EnumerationError, MapEnumerator, ResumeToken, SearchCaps, SearchMode,
};
pub use spectrum::{degree_spectrum, SpectrumError, SpectrumReport};
