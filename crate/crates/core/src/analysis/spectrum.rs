//! Degrees achieved by the simplicial maps between two surfaces.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::io::surface_digest;
use crate::label::VertexId;
use crate::map::MapError;
use crate::surface::TriangulatedSurface;

use super::enumerate::{EnumerationError, MapEnumerator, ResumeToken, SearchCaps, SearchMode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub domain: String,
    pub codomain: String,
    pub total_maps_enumerated: u64,
    /// One witness assignment per achieved degree.
    pub achievable_degrees: BTreeMap<i64, BTreeMap<VertexId, VertexId>>,
    pub search_limits: SearchCaps,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resume_token: Option<ResumeToken>,
}

impl SpectrumReport {
    pub fn achieves(&self, d: i64) -> bool {
        self.achievable_degrees.contains_key(&d)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Enumerate every simplicial map `K -> L` and collect the degrees. When
/// `caps.max_maps` cuts the search short the report is marked incomplete and
/// carries the resume token.
pub fn degree_spectrum(
    k: &Arc<TriangulatedSurface>,
    l: &Arc<TriangulatedSurface>,
    caps: SearchCaps,
) -> Result<SpectrumReport, SpectrumError> {
    let mut e = MapEnumerator::new(k.clone(), l.clone(), SearchMode::All, caps)?;
    let mut achievable = BTreeMap::new();
    for f in e.by_ref() {
        let d = f.degree_value()?;
        achievable.entry(d).or_insert_with(|| f.assignment());
    }
    let resume_token = e.resume_token();
    Ok(SpectrumReport {
        domain: surface_digest(k),
        codomain: surface_digest(l),
        total_maps_enumerated: e.emitted(),
        achievable_degrees: achievable,
        search_limits: caps,
        complete: resume_token.is_none(),
        resume_token,
    })
}
