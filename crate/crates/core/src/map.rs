//! Simplicial vertex maps and their degree by signed preimage counting.
//!
//! For a target facet σ, a nondegenerate preimage ρ counts as positive when it
//! is positively oriented with respect to the vertex order pulled back from σ's
//! ascending order, and negative otherwise. Then
//! `alg(σ) = (positive − negative) · sign(σ)`, and on closed connected oriented
//! surfaces the value is the same for every σ: that common value is the degree.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::label::{parity3, sort3, Sign, Triangle, VertexId};
use crate::surface::TriangulatedSurface;

#[derive(Debug, thiserror::Error)]
pub enum MapError {
    #[error("assignment misses domain vertices: {}", join(.missing))]
    PartialAssignment { missing: Vec<VertexId> },
    #[error("{0} is not a domain vertex")]
    UnknownDomainVertex(VertexId),
    #[error("{0} is not a codomain vertex")]
    UnknownCodomainVertex(VertexId),
    #[error("map is not simplicial: {0}")]
    NotSimplicial(SimplicialityReport),
    #[error("codomain of the first map is not the domain of the second")]
    SurfaceMismatch,
    #[error("{0} is not orientable")]
    NonOrientable(&'static str),
    #[error("signed preimage counts disagree across target facets: {values:?}")]
    InconsistentDegree { values: Vec<i64> },
}

fn join(v: &[VertexId]) -> String {
    v.iter()
        .map(VertexId::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

/// A domain facet whose image is not a simplex of the codomain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffendingFacet {
    pub facet: Triangle,
    pub image: Vec<VertexId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimplicialityReport {
    pub offending: Vec<OffendingFacet>,
}

impl SimplicialityReport {
    pub fn is_simplicial(&self) -> bool {
        self.offending.is_empty()
    }
}

impl fmt::Display for SimplicialityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offending.is_empty() {
            return write!(f, "simplicial");
        }
        for (i, o) in self.offending.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} -> {{{}}}", o.facet, join(&o.image))?;
        }
        Ok(())
    }
}

/// Resolve a label assignment into codomain indices, rejecting partial input.
fn resolve(
    domain: &TriangulatedSurface,
    codomain: &TriangulatedSurface,
    assignment: &BTreeMap<VertexId, VertexId>,
) -> Result<Vec<usize>, MapError> {
    for k in assignment.keys() {
        if !domain.contains_vertex(k) {
            return Err(MapError::UnknownDomainVertex(k.clone()));
        }
    }
    let mut missing = Vec::new();
    let mut images = Vec::with_capacity(domain.vertex_count());
    for v in domain.vertices() {
        match assignment.get(v) {
            None => missing.push(v.clone()),
            Some(w) => images.push(
                codomain
                    .index_of(w)
                    .ok_or_else(|| MapError::UnknownCodomainVertex(w.clone()))?,
            ),
        }
    }
    if !missing.is_empty() {
        return Err(MapError::PartialAssignment { missing });
    }
    Ok(images)
}

/// Codomain simplices as index sets, for image membership tests.
pub(crate) struct SimplexTable {
    edges: HashSet<(usize, usize)>,
}

impl SimplexTable {
    pub(crate) fn new(surface: &TriangulatedSurface) -> Self {
        let edges = surface
            .facet_indices()
            .iter()
            .flat_map(|f| [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])])
            .collect();
        SimplexTable { edges }
    }

    pub(crate) fn spans_simplex(&self, surface: &TriangulatedSurface, img: [usize; 3]) -> bool {
        let [a, b, c] = sort3(img);
        match (a == b, b == c) {
            (true, true) => true,
            (true, false) => self.edges.contains(&(b, c)),
            (false, true) => self.edges.contains(&(a, b)),
            (false, false) => surface.facet_position(&[a, b, c]).is_some(),
        }
    }
}

fn offending_facets(
    domain: &TriangulatedSurface,
    codomain: &TriangulatedSurface,
    images: &[usize],
) -> SimplicialityReport {
    let table = SimplexTable::new(codomain);
    let offending = domain
        .facet_indices()
        .iter()
        .filter_map(|f| {
            let img = f.map(|v| images[v]);
            (!table.spans_simplex(codomain, img)).then(|| OffendingFacet {
                facet: domain.triangle(f),
                image: image_set(codomain, img),
            })
        })
        .collect();
    SimplicialityReport { offending }
}

fn image_set(codomain: &TriangulatedSurface, img: [usize; 3]) -> Vec<VertexId> {
    img.iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|i| codomain.vertices()[i].clone())
        .collect()
}

/// Check every domain facet of a total assignment against the codomain.
pub fn validate_simplicial(
    domain: &TriangulatedSurface,
    codomain: &TriangulatedSurface,
    assignment: &BTreeMap<VertexId, VertexId>,
) -> Result<SimplicialityReport, MapError> {
    let images = resolve(domain, codomain, assignment)?;
    Ok(offending_facets(domain, codomain, &images))
}

/// A total vertex assignment whose every facet image spans a codomain simplex.
#[derive(Clone, Debug)]
pub struct SimplicialVertexMap {
    domain: Arc<TriangulatedSurface>,
    codomain: Arc<TriangulatedSurface>,
    images: Vec<usize>,
}

impl PartialEq for SimplicialVertexMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && same_surface(&self.domain, &other.domain)
            && same_surface(&self.codomain, &other.codomain)
    }
}

impl Eq for SimplicialVertexMap {}

fn same_surface(a: &Arc<TriangulatedSurface>, b: &Arc<TriangulatedSurface>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl SimplicialVertexMap {
    pub fn new(
        domain: Arc<TriangulatedSurface>,
        codomain: Arc<TriangulatedSurface>,
        assignment: &BTreeMap<VertexId, VertexId>,
    ) -> Result<Self, MapError> {
        let images = resolve(&domain, &codomain, assignment)?;
        let report = offending_facets(&domain, &codomain, &images);
        if !report.is_simplicial() {
            return Err(MapError::NotSimplicial(report));
        }
        Ok(SimplicialVertexMap {
            domain,
            codomain,
            images,
        })
    }

    /// Caller guarantees `images` is total and simplicial.
    pub(crate) fn from_images(
        domain: Arc<TriangulatedSurface>,
        codomain: Arc<TriangulatedSurface>,
        images: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(images.len(), domain.vertex_count());
        SimplicialVertexMap {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(surface: Arc<TriangulatedSurface>) -> Self {
        let images = (0..surface.vertex_count()).collect();
        SimplicialVertexMap {
            domain: surface.clone(),
            codomain: surface,
            images,
        }
    }

    /// Every domain vertex sent to `target`.
    pub fn constant(
        domain: Arc<TriangulatedSurface>,
        codomain: Arc<TriangulatedSurface>,
        target: &VertexId,
    ) -> Result<Self, MapError> {
        let t = codomain
            .index_of(target)
            .ok_or_else(|| MapError::UnknownCodomainVertex(target.clone()))?;
        let images = vec![t; domain.vertex_count()];
        Ok(SimplicialVertexMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn domain(&self) -> &Arc<TriangulatedSurface> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<TriangulatedSurface> {
        &self.codomain
    }

    #[cfg(test)]
    pub(crate) fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, v: &VertexId) -> Option<&VertexId> {
        let i = self.domain.index_of(v)?;
        Some(&self.codomain.vertices()[self.images[i]])
    }

    pub fn assignment(&self) -> BTreeMap<VertexId, VertexId> {
        self.domain
            .vertices()
            .iter()
            .zip(&self.images)
            .map(|(v, &w)| (v.clone(), self.codomain.vertices()[w].clone()))
            .collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.vertex_count() == self.codomain.vertex_count()
            && self.images.iter().collect::<HashSet<_>>().len() == self.images.len()
    }

    /// Whether every codomain facet is the image of some domain facet.
    pub fn is_surjective(&self) -> bool {
        let hit: HashSet<[usize; 3]> = self
            .domain
            .facet_indices()
            .iter()
            .map(|f| sort3(f.map(|v| self.images[v])))
            .collect();
        self.codomain
            .facet_indices()
            .iter()
            .all(|f| hit.contains(f))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialVertexMap) -> Result<SimplicialVertexMap, MapError> {
        if !same_surface(&self.codomain, &g.domain) {
            return Err(MapError::SurfaceMismatch);
        }
        let images = self.images.iter().map(|&w| g.images[w]).collect();
        Ok(SimplicialVertexMap {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            images,
        })
    }

    /// Inverse of a bijective map whose inverse is also simplicial.
    pub fn inverse(&self) -> Option<SimplicialVertexMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            images[w] = v;
        }
        let report = offending_facets(&self.codomain, &self.domain, &images);
        report.is_simplicial().then(|| SimplicialVertexMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            images,
        })
    }

    /// The same assignment read on a domain with the opposite orientation.
    pub fn with_reversed_domain(&self) -> SimplicialVertexMap {
        SimplicialVertexMap {
            domain: Arc::new(self.domain.reverse_orientation()),
            codomain: self.codomain.clone(),
            images: self.images.clone(),
        }
    }

    /// The same assignment onto the codomain with the opposite orientation.
    pub fn with_reversed_codomain(&self) -> SimplicialVertexMap {
        SimplicialVertexMap {
            domain: self.domain.clone(),
            codomain: Arc::new(self.codomain.reverse_orientation()),
            images: self.images.clone(),
        }
    }

    /// Per-target signed counts; shared by [`degree`](Self::degree) and the
    /// enumeration fast path.
    fn tally(&self) -> Result<Tally, MapError> {
        let dom_signs = self
            .domain
            .signs()
            .ok_or(MapError::NonOrientable("domain"))?;
        let cod_signs = self
            .codomain
            .signs()
            .ok_or(MapError::NonOrientable("codomain"))?;
        let n = self.codomain.facet_count();
        let mut tally = Tally {
            positive: vec![0; n],
            negative: vec![0; n],
            degenerate: Vec::new(),
        };
        for (pos, f) in self.domain.facet_indices().iter().enumerate() {
            let img = f.map(|v| self.images[v]);
            if img[0] == img[1] || img[0] == img[2] || img[1] == img[2] {
                tally.degenerate.push(pos);
                continue;
            }
            let target = self
                .codomain
                .facet_position(&sort3(img))
                .expect("image of a nondegenerate facet is a codomain facet");
            match dom_signs[pos] * parity3(&img) {
                Sign::Positive => tally.positive[target] += 1,
                Sign::Negative => tally.negative[target] += 1,
            }
        }
        let alg: Vec<i64> = (0..n)
            .map(|t| (tally.positive[t] as i64 - tally.negative[t] as i64) * cod_signs[t].as_i64())
            .collect();
        let distinct: BTreeSet<i64> = alg.iter().copied().collect();
        if distinct.len() != 1 {
            return Err(MapError::InconsistentDegree {
                values: distinct.into_iter().collect(),
            });
        }
        Ok(tally)
    }

    /// The degree alone, without assembling a report.
    pub fn degree_value(&self) -> Result<i64, MapError> {
        let tally = self.tally()?;
        let cod_signs = self.codomain.signs().expect("checked by tally");
        Ok((tally.positive[0] as i64 - tally.negative[0] as i64) * cod_signs[0].as_i64())
    }

    pub fn degree(&self) -> Result<DegreeReport, MapError> {
        let tally = self.tally()?;
        let cod_signs = self.codomain.signs().expect("checked by tally");
        let per_triangle: Vec<SignedPreimageCount> = self
            .codomain
            .facet_indices()
            .iter()
            .enumerate()
            .map(|(t, f)| {
                let (p, q) = (tally.positive[t], tally.negative[t]);
                SignedPreimageCount {
                    target: self.codomain.triangle(f),
                    target_sign: cod_signs[t],
                    positive_count: p,
                    negative_count: q,
                    alg: (p as i64 - q as i64) * cod_signs[t].as_i64(),
                }
            })
            .collect();
        let degenerate: Vec<DegenerateFacet> = tally
            .degenerate
            .iter()
            .map(|&pos| {
                let f = &self.domain.facet_indices()[pos];
                DegenerateFacet {
                    facet: self.domain.triangle(f),
                    image: image_set(&self.codomain, f.map(|v| self.images[v])),
                }
            })
            .collect();
        Ok(DegreeReport {
            domain_reference: self.domain.reference(),
            codomain_reference: self.codomain.reference(),
            degree: per_triangle[0].alg,
            degenerate_facets: degenerate.len(),
            per_triangle,
            degenerate,
        })
    }
}

struct Tally {
    positive: Vec<usize>,
    negative: Vec<usize>,
    degenerate: Vec<usize>,
}

/// `g ∘ f`.
pub fn compose(
    f: &SimplicialVertexMap,
    g: &SimplicialVertexMap,
) -> Result<SimplicialVertexMap, MapError> {
    f.then(g)
}

/// Signed preimage tally for one target facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPreimageCount {
    pub target: Triangle,
    pub target_sign: Sign,
    pub positive_count: usize,
    pub negative_count: usize,
    pub alg: i64,
}

/// A domain facet whose image is an edge or a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerateFacet {
    pub facet: Triangle,
    pub image: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub domain_reference: Triangle,
    pub codomain_reference: Triangle,
    /// One entry per codomain facet, in canonical facet order.
    pub per_triangle: Vec<SignedPreimageCount>,
    pub degenerate_facets: usize,
    pub degenerate: Vec<DegenerateFacet>,
    pub degree: i64,
}

impl DegreeReport {
    pub fn count_for(&self, target: &Triangle) -> Option<&SignedPreimageCount> {
        self.per_triangle
            .iter()
            .find(|c| c.target.same_simplex(target))
    }

    pub fn nondegenerate_preimages(&self) -> usize {
        self.per_triangle
            .iter()
            .map(|c| c.positive_count + c.negative_count)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{tetrahedron_boundary, torus7};

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    fn tri(a: &str, b: &str, c: &str) -> Triangle {
        Triangle::new(a, b, c).unwrap()
    }

    #[test]
    fn identity_has_degree_one() {
        let t = Arc::new(torus7());
        let id = SimplicialVertexMap::identity(t);
        let r = id.degree().unwrap();
        assert_eq!(r.degree, 1);
        assert_eq!(r.degenerate_facets, 0);
        assert!(r.per_triangle.iter().all(|c| c.alg == 1));
        assert!(id.is_surjective() && id.is_bijective());
    }

    #[test]
    fn constant_map_has_degree_zero() {
        let t = Arc::new(torus7());
        let c = SimplicialVertexMap::constant(t.clone(), t, &v("v1")).unwrap();
        let r = c.degree().unwrap();
        assert_eq!(r.degree, 0);
        assert_eq!(r.degenerate_facets, 14);
        assert!(r.degenerate.iter().all(|d| d.image == vec![v("v1")]));
        assert!(!c.is_surjective());
    }

    #[test]
    fn non_edge_image_is_reported_per_facet() {
        let t = Arc::new(torus7());
        let mut a: BTreeMap<VertexId, VertexId> = t
            .vertices()
            .iter()
            .map(|x| (x.clone(), x.clone()))
            .collect();
        a.insert(v("v4"), v("v3"));
        let report = validate_simplicial(&t, &t, &a).unwrap();
        // oracle: image sets checked against the explicit simplex list
        let facets: Vec<BTreeSet<VertexId>> = t
            .facets()
            .map(|f| f.vertices().iter().cloned().collect())
            .collect();
        let is_simplex = |s: &BTreeSet<VertexId>| match s.len() {
            1 => true,
            2 => facets.iter().any(|f| s.is_subset(f)),
            _ => facets.contains(s),
        };
        let expected: Vec<Triangle> = t
            .facets()
            .filter(|f| !is_simplex(&f.vertices().iter().map(|x| a[x].clone()).collect()))
            .collect();
        assert!(!expected.is_empty());
        let got: Vec<Triangle> = report.offending.iter().map(|o| o.facet.clone()).collect();
        assert_eq!(got, expected);
        assert!(matches!(
            SimplicialVertexMap::new(t.clone(), t, &a),
            Err(MapError::NotSimplicial(_))
        ));
    }

    #[test]
    fn partial_and_foreign_assignments_are_errors() {
        let t = Arc::new(torus7());
        let mut a: BTreeMap<VertexId, VertexId> = t
            .vertices()
            .iter()
            .map(|x| (x.clone(), x.clone()))
            .collect();
        a.remove(&v("v7"));
        assert!(
            matches!(validate_simplicial(&t, &t, &a), Err(MapError::PartialAssignment { missing }) if missing == vec![v("v7")])
        );
        a.insert(v("v7"), v("zz"));
        assert!(matches!(
            validate_simplicial(&t, &t, &a),
            Err(MapError::UnknownCodomainVertex(_))
        ));
        a.insert(v("v7"), v("v7"));
        a.insert(v("q"), v("v1"));
        assert!(matches!(
            validate_simplicial(&t, &t, &a),
            Err(MapError::UnknownDomainVertex(_))
        ));
    }

    #[test]
    fn reversing_the_domain_negates_the_degree() {
        let t = Arc::new(torus7());
        let id = SimplicialVertexMap::identity(t);
        let rev = id.with_reversed_domain();
        assert_eq!(rev.degree().unwrap().degree, -1);
        assert_eq!(rev.with_reversed_domain().degree().unwrap().degree, 1);
        assert_eq!(id.with_reversed_codomain().degree().unwrap().degree, -1);
        let r = rev.degree().unwrap();
        assert_eq!(r.domain_reference, tri("v2", "v1", "v4"));
        assert_eq!(r.codomain_reference, tri("v1", "v2", "v4"));
    }

    #[test]
    fn composition_requires_matching_surfaces() {
        let t = Arc::new(torus7());
        let s = Arc::new(tetrahedron_boundary());
        let id_t = SimplicialVertexMap::identity(t.clone());
        let id_s = SimplicialVertexMap::identity(s);
        assert!(matches!(
            compose(&id_t, &id_s),
            Err(MapError::SurfaceMismatch)
        ));
        let twice = compose(&id_t, &id_t).unwrap();
        assert_eq!(twice, id_t);
        // a reversed copy is a different oriented surface
        let rev = SimplicialVertexMap::identity(Arc::new(t.reverse_orientation()));
        assert!(compose(&id_t, &rev).is_err());
    }

    #[test]
    fn inverse_of_identity() {
        let t = Arc::new(torus7());
        let id = SimplicialVertexMap::identity(t.clone());
        assert_eq!(id.inverse().unwrap(), id);
        let c = SimplicialVertexMap::constant(t.clone(), t, &v("v3")).unwrap();
        assert!(c.inverse().is_none());
    }
}
