//! Triangulated closed surfaces.
//!
//! [`Complex`] holds arbitrary, unchecked vertex and facet data. Validating it
//! with [`Complex::into_surface`] yields a [`TriangulatedSurface`]: a closed,
//! connected 2-manifold whose invariants are certified once and never change.
//! Edges are always derived from the facets.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::label::{parity3, sort3, DegenerateTriangle, Sign, Triangle, VertexId};
use crate::orientation::{propagate, Orientation};

#[derive(Debug, thiserror::Error)]
pub enum SurfaceError {
    #[error("not a closed connected surface: {0}")]
    Invalid(ValidityReport),
    #[error("surface is not orientable")]
    NonOrientable,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("{0} is not a facet")]
    NotAFacet(Triangle),
    #[error(transparent)]
    Degenerate(#[from] DegenerateTriangle),
    #[error("relabeling sends two vertices to {0}")]
    RelabelCollision(VertexId),
}

/// One violated closed-surface condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    DuplicateVertex { vertex: VertexId },
    IsolatedVertex { vertex: VertexId },
    UnknownVertex { vertex: VertexId },
    DegenerateFacet { facet: [VertexId; 3] },
    DuplicateFacet { facet: Triangle },
    EdgeDegree { edge: [VertexId; 2], degree: usize },
    VertexLink { vertex: VertexId, detail: String },
    Disconnected { components: usize },
    BadReference { reference: [VertexId; 3] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "no facets"),
            Violation::DuplicateVertex { vertex } => write!(f, "vertex {vertex} declared twice"),
            Violation::IsolatedVertex { vertex } => write!(f, "vertex {vertex} lies in no facet"),
            Violation::UnknownVertex { vertex } => {
                write!(f, "facet uses undeclared vertex {vertex}")
            }
            Violation::DegenerateFacet { facet } => {
                write!(
                    f,
                    "facet [{}, {}, {}] repeats a vertex",
                    facet[0], facet[1], facet[2]
                )
            }
            Violation::DuplicateFacet { facet } => write!(f, "facet {facet} listed twice"),
            Violation::EdgeDegree { edge, degree } => {
                write!(f, "edge [{}, {}] lies in {degree} facets", edge[0], edge[1])
            }
            Violation::VertexLink { vertex, detail } => {
                write!(f, "link of {vertex} is not a cycle: {detail}")
            }
            Violation::Disconnected { components } => {
                write!(f, "facet adjacency graph has {components} components")
            }
            Violation::BadReference { reference } => write!(
                f,
                "positive reference [{}, {}, {}] is not a facet",
                reference[0], reference[1], reference[2]
            ),
        }
    }
}

/// Every violated condition; empty iff the data is a closed connected surface.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Edges whose facet count is not two.
    pub fn bad_edges(&self) -> Vec<(&[VertexId; 2], usize)> {
        self.violations
            .iter()
            .filter_map(|v| match v {
                Violation::EdgeDegree { edge, degree } => Some((edge, *degree)),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Vertex, edge and facet counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FVector {
    pub n: usize,
    pub e: usize,
    pub f: usize,
}

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.n as i64 - self.e as i64 + self.f as i64
    }
}

/// Unchecked vertex and facet data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    pub vertices: Vec<VertexId>,
    pub facets: Vec<[VertexId; 3]>,
    pub positive_reference: Option<[VertexId; 3]>,
}

impl Complex {
    /// Complex whose vertex set is exactly the vertices used by `facets`.
    pub fn from_facets<I, T>(facets: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<[VertexId; 3]>,
    {
        let facets: Vec<[VertexId; 3]> = facets.into_iter().map(Into::into).collect();
        let vertices: BTreeSet<VertexId> = facets.iter().flatten().cloned().collect();
        Complex {
            vertices: vertices.into_iter().collect(),
            facets,
            positive_reference: None,
        }
    }

    pub fn with_reference(mut self, reference: [VertexId; 3]) -> Self {
        self.positive_reference = Some(reference);
        self
    }

    /// Disjoint union; labels are taken as given, so callers keep them apart.
    pub fn union(&self, other: &Complex) -> Complex {
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().cloned());
        out.facets.extend(other.facets.iter().cloned());
        out
    }

    fn all_vertices(&self) -> BTreeSet<&VertexId> {
        self.vertices
            .iter()
            .chain(self.facets.iter().flatten())
            .collect()
    }

    /// Distinct nondegenerate facets in ascending vertex order.
    fn distinct_facets(&self) -> BTreeSet<[&VertexId; 3]> {
        self.facets
            .iter()
            .filter(|f| f[0] != f[1] && f[0] != f[2] && f[1] != f[2])
            .map(|f| {
                let mut s = [&f[0], &f[1], &f[2]];
                s.sort();
                s
            })
            .collect()
    }

    fn edge_degrees(&self) -> BTreeMap<[&VertexId; 2], usize> {
        let mut edges = BTreeMap::new();
        for [a, b, c] in self.distinct_facets() {
            for e in [[a, b], [b, c], [a, c]] {
                *edges.entry(e).or_insert(0) += 1;
            }
        }
        edges
    }

    pub fn euler_characteristic(&self) -> i64 {
        let f = self.distinct_facets().len() as i64;
        let e = self.edge_degrees().len() as i64;
        self.all_vertices().len() as i64 - e + f
    }

    /// Edges lying in exactly one facet, in ascending order.
    pub fn boundary_edges(&self) -> Vec<[VertexId; 2]> {
        self.edge_degrees()
            .into_iter()
            .filter(|(_, d)| *d == 1)
            .map(|([a, b], _)| [a.clone(), b.clone()])
            .collect()
    }

    /// Components of the facet adjacency graph.
    pub fn connected_components(&self) -> usize {
        let facets: Vec<_> = self.distinct_facets().into_iter().collect();
        let mut by_edge: HashMap<[&VertexId; 2], Vec<usize>> = HashMap::new();
        for (i, [a, b, c]) in facets.iter().enumerate() {
            for e in [[*a, *b], [*b, *c], [*a, *c]] {
                by_edge.entry(e).or_default().push(i);
            }
        }
        let mut seen = vec![false; facets.len()];
        let mut components = 0;
        for start in 0..facets.len() {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let [a, b, c] = facets[i];
                for e in [[a, b], [b, c], [a, c]] {
                    for &j in &by_edge[&e] {
                        if !seen[j] {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        components
    }

    /// Every violated closed-surface condition.
    pub fn validate(&self) -> ValidityReport {
        let mut violations = Vec::new();
        if self.facets.is_empty() {
            violations.push(Violation::Empty);
        }

        let mut declared = BTreeSet::new();
        for v in &self.vertices {
            if !declared.insert(v) {
                violations.push(Violation::DuplicateVertex { vertex: v.clone() });
            }
        }

        let mut used = BTreeSet::new();
        let mut unknown = BTreeSet::new();
        let mut seen_facets = BTreeSet::new();
        for f in &self.facets {
            if f[0] == f[1] || f[0] == f[2] || f[1] == f[2] {
                violations.push(Violation::DegenerateFacet { facet: f.clone() });
                continue;
            }
            for v in f {
                used.insert(v);
                if !declared.contains(v) {
                    unknown.insert(v);
                }
            }
            let t = Triangle::try_from(f.clone())
                .expect("checked distinct")
                .sorted();
            if !seen_facets.insert(t.clone()) {
                violations.push(Violation::DuplicateFacet { facet: t });
            }
        }
        for v in unknown {
            violations.push(Violation::UnknownVertex { vertex: v.clone() });
        }
        for v in &declared {
            if !used.contains(v) {
                violations.push(Violation::IsolatedVertex {
                    vertex: (*v).clone(),
                });
            }
        }

        for ([a, b], degree) in self.edge_degrees() {
            if degree != 2 {
                violations.push(Violation::EdgeDegree {
                    edge: [a.clone(), b.clone()],
                    degree,
                });
            }
        }

        // links: each link vertex has degree 2 and the link graph is connected
        let mut links: BTreeMap<&VertexId, Vec<[&VertexId; 2]>> = BTreeMap::new();
        for [a, b, c] in self.distinct_facets() {
            links.entry(a).or_default().push([b, c]);
            links.entry(b).or_default().push([a, c]);
            links.entry(c).or_default().push([a, b]);
        }
        for (v, edges) in &links {
            if let Some(detail) = link_defect(edges) {
                violations.push(Violation::VertexLink {
                    vertex: (*v).clone(),
                    detail,
                });
            }
        }

        let components = self.connected_components();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }

        if let Some(r) = &self.positive_reference {
            let ok = Triangle::try_from(r.clone())
                .map(|t| seen_facets.contains(&t.sorted()))
                .unwrap_or(false);
            if !ok {
                violations.push(Violation::BadReference {
                    reference: r.clone(),
                });
            }
        }

        ValidityReport { violations }
    }

    pub fn into_surface(self) -> Result<TriangulatedSurface, SurfaceError> {
        TriangulatedSurface::new(self)
    }
}

fn link_defect(edges: &[[&VertexId; 2]]) -> Option<String> {
    let mut adj: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
    for [a, b] in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if let Some((w, n)) = adj.iter().find(|(_, n)| n.len() != 2) {
        return Some(format!("{w} has degree {} in the link", n.len()));
    }
    let start = *adj.keys().next()?;
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(w) = stack.pop() {
        for &x in &adj[w] {
            if seen.insert(x) {
                stack.push(x);
            }
        }
    }
    if seen.len() != adj.len() {
        return Some(format!(
            "link splits into several cycles ({} of {} vertices reachable)",
            seen.len(),
            adj.len()
        ));
    }
    None
}

/// A validated closed connected triangulated surface.
///
/// Vertices are kept in ascending label order and facets in ascending vertex
/// order, sorted; this is the canonical form. The optional positive reference
/// is an ordered facet declared positively oriented; without one the
/// lexicographically least facet in ascending order is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulatedSurface {
    vertices: Vec<VertexId>,
    facets: Vec<[usize; 3]>,
    declared_reference: Option<[usize; 3]>,
    index: HashMap<VertexId, usize>,
    facet_lookup: HashMap<[usize; 3], usize>,
    signs: Option<Vec<Sign>>,
}

impl TriangulatedSurface {
    pub fn new(complex: Complex) -> Result<Self, SurfaceError> {
        let report = complex.validate();
        if !report.is_valid() {
            return Err(SurfaceError::Invalid(report));
        }
        let vertices: Vec<VertexId> = complex
            .vertices
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<VertexId, usize> = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut facets: Vec<[usize; 3]> = complex
            .facets
            .iter()
            .map(|f| sort3([index[&f[0]], index[&f[1]], index[&f[2]]]))
            .collect();
        facets.sort_unstable();
        let declared_reference = complex
            .positive_reference
            .as_ref()
            .map(|r| [index[&r[0]], index[&r[1]], index[&r[2]]]);
        Ok(Self::assemble(vertices, facets, declared_reference, index))
    }

    fn assemble(
        vertices: Vec<VertexId>,
        facets: Vec<[usize; 3]>,
        declared_reference: Option<[usize; 3]>,
        index: HashMap<VertexId, usize>,
    ) -> Self {
        let facet_lookup = facets.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut s = TriangulatedSurface {
            vertices,
            facets,
            declared_reference,
            index,
            facet_lookup,
            signs: None,
        };
        s.signs = s.propagate_from(s.reference_indices());
        s
    }

    pub fn from_facets<I, T>(facets: I) -> Result<Self, SurfaceError>
    where
        I: IntoIterator<Item = T>,
        T: Into<[VertexId; 3]>,
    {
        Complex::from_facets(facets).into_surface()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Facets in canonical order, each in ascending vertex order.
    pub fn facets(&self) -> impl Iterator<Item = Triangle> + '_ {
        self.facets.iter().map(|f| self.triangle(f))
    }

    pub(crate) fn facet_indices(&self) -> &[[usize; 3]] {
        &self.facets
    }

    pub(crate) fn triangle(&self, f: &[usize; 3]) -> Triangle {
        Triangle::try_from(f.map(|i| self.vertices[i].clone())).expect("facets are nondegenerate")
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    pub(crate) fn facet_position(&self, sorted: &[usize; 3]) -> Option<usize> {
        self.facet_lookup.get(sorted).copied()
    }

    fn indices(&self, t: &Triangle) -> Result<[usize; 3], SurfaceError> {
        let mut out = [0; 3];
        for (slot, v) in out.iter_mut().zip(t.vertices()) {
            *slot = self
                .index_of(v)
                .ok_or_else(|| SurfaceError::UnknownVertex(v.clone()))?;
        }
        Ok(out)
    }

    pub fn contains_facet(&self, t: &Triangle) -> bool {
        self.indices(t)
            .map(|i| self.facet_lookup.contains_key(&sort3(i)))
            .unwrap_or(false)
    }

    /// Edges in ascending order, derived from the facets.
    pub fn edges(&self) -> Vec<[VertexId; 2]> {
        let set: BTreeSet<(usize, usize)> = self
            .facets
            .iter()
            .flat_map(|f| [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])])
            .collect();
        set.into_iter()
            .map(|(a, b)| [self.vertices[a].clone(), self.vertices[b].clone()])
            .collect()
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        let (Some(a), Some(b)) = (self.index_of(a), self.index_of(b)) else {
            return false;
        };
        self.facets
            .iter()
            .any(|f| f.contains(&a) && f.contains(&b) && a != b)
    }

    pub fn f_vector(&self) -> FVector {
        let f = self.facets.len();
        // every edge lies in exactly two facets
        FVector {
            n: self.vertices.len(),
            e: 3 * f / 2,
            f,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    pub fn is_orientable(&self) -> bool {
        self.signs.is_some()
    }

    pub fn genus(&self) -> Result<usize, SurfaceError> {
        if !self.is_orientable() {
            return Err(SurfaceError::NonOrientable);
        }
        let chi = self.euler_characteristic();
        Ok(((2 - chi) / 2) as usize)
    }

    /// Number of facets containing `v`.
    pub fn vertex_degree(&self, v: &VertexId) -> Option<usize> {
        let i = self.index_of(v)?;
        Some(self.facets.iter().filter(|f| f.contains(&i)).count())
    }

    /// The link of `v` traversed as a cycle, starting at its least neighbour.
    pub fn link_cycle(&self, v: &VertexId) -> Option<Vec<VertexId>> {
        let i = self.index_of(v)?;
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for f in self.facets.iter().filter(|f| f.contains(&i)) {
            let others: Vec<usize> = f.iter().copied().filter(|&x| x != i).collect();
            adj.entry(others[0]).or_default().push(others[1]);
            adj.entry(others[1]).or_default().push(others[0]);
        }
        let start = *adj.keys().next()?;
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = *adj[&start].iter().min()?;
        while cur != start {
            cycle.push(cur);
            let next = adj[&cur].iter().copied().find(|&x| x != prev)?;
            prev = cur;
            cur = next;
        }
        Some(
            cycle
                .into_iter()
                .map(|x| self.vertices[x].clone())
                .collect(),
        )
    }

    pub(crate) fn facet_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for f in &self.facets {
            for &v in f {
                deg[v] += 1;
            }
        }
        deg
    }

    /// The declared positive reference, if any.
    pub fn declared_reference(&self) -> Option<Triangle> {
        self.declared_reference.map(|r| self.ordered(&r))
    }

    /// The positively oriented ordered facet every sign is measured against.
    pub fn reference(&self) -> Triangle {
        self.ordered(&self.reference_indices())
    }

    fn ordered(&self, r: &[usize; 3]) -> Triangle {
        Triangle::try_from(r.map(|i| self.vertices[i].clone())).expect("facets are nondegenerate")
    }

    pub(crate) fn reference_indices(&self) -> [usize; 3] {
        self.declared_reference.unwrap_or(self.facets[0])
    }

    fn propagate_from(&self, reference: [usize; 3]) -> Option<Vec<Sign>> {
        let start = self.facet_lookup[&sort3(reference)];
        let signs = propagate(&self.facets, start, parity3(&reference)).ok()?;
        Some(
            signs
                .into_iter()
                .map(|s| s.expect("surface is connected"))
                .collect(),
        )
    }

    /// Signs aligned with the canonical facet order, if orientable.
    pub(crate) fn signs(&self) -> Option<&[Sign]> {
        self.signs.as_deref()
    }

    /// Sign of the ordered triple of vertex indices `t`, which must be a facet.
    pub(crate) fn sign_of_indices(&self, t: &[usize; 3]) -> Option<Sign> {
        let pos = self.facet_position(&sort3(*t))?;
        Some(self.signs.as_ref()?[pos] * parity3(t))
    }

    /// Coherent orientation measured against the positive reference.
    pub fn orient(&self) -> Result<Orientation, SurfaceError> {
        let signs = self.signs.as_ref().ok_or(SurfaceError::NonOrientable)?;
        Ok(self.orientation_from_signs(signs))
    }

    /// Coherent orientation in which the ordered facet `reference` is positive.
    pub fn orient_from(&self, reference: &Triangle) -> Result<Orientation, SurfaceError> {
        let r = self.indices(reference)?;
        if !self.facet_lookup.contains_key(&sort3(r)) {
            return Err(SurfaceError::NotAFacet(reference.clone()));
        }
        let signs = self.propagate_from(r).ok_or(SurfaceError::NonOrientable)?;
        Ok(self.orientation_from_signs(&signs))
    }

    fn orientation_from_signs(&self, signs: &[Sign]) -> Orientation {
        Orientation::from_sorted(
            self.facets
                .iter()
                .zip(signs)
                .map(|(f, s)| (self.triangle(f), *s))
                .collect(),
        )
    }

    /// Sign of an ordered facet under the surface's orientation.
    pub fn sign_of(&self, t: &Triangle) -> Result<Sign, SurfaceError> {
        let i = self.indices(t)?;
        if !self.facet_lookup.contains_key(&sort3(i)) {
            return Err(SurfaceError::NotAFacet(t.clone()));
        }
        self.sign_of_indices(&i).ok_or(SurfaceError::NonOrientable)
    }

    /// The same complex with `reference` declared positive.
    pub fn with_reference(&self, reference: &Triangle) -> Result<Self, SurfaceError> {
        let r = self.indices(reference)?;
        if !self.facet_lookup.contains_key(&sort3(r)) {
            return Err(SurfaceError::NotAFacet(reference.clone()));
        }
        Ok(Self::assemble(
            self.vertices.clone(),
            self.facets.clone(),
            Some(r),
            self.index.clone(),
        ))
    }

    /// The same complex with every facet sign flipped: the reference facet is
    /// redeclared with its first two vertices exchanged.
    pub fn reverse_orientation(&self) -> Self {
        let [a, b, c] = self.reference_indices();
        Self::assemble(
            self.vertices.clone(),
            self.facets.clone(),
            Some([b, a, c]),
            self.index.clone(),
        )
    }

    /// Apply an injective vertex renaming, transporting the reference.
    pub fn relabel<F>(&self, mut rename: F) -> Result<Self, SurfaceError>
    where
        F: FnMut(&VertexId) -> VertexId,
    {
        let names: Vec<VertexId> = self.vertices.iter().map(&mut rename).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(SurfaceError::RelabelCollision(n.clone()));
            }
        }
        let complex = Complex {
            vertices: names.clone(),
            facets: self
                .facets
                .iter()
                .map(|f| f.map(|i| names[i].clone()))
                .collect(),
            positive_reference: self.declared_reference.map(|r| r.map(|i| names[i].clone())),
        };
        complex.into_surface()
    }

    /// Canonical unchecked data for this surface.
    pub fn to_complex(&self) -> Complex {
        Complex {
            vertices: self.vertices.clone(),
            facets: self
                .facets
                .iter()
                .map(|f| f.map(|i| self.vertices[i].clone()))
                .collect(),
            positive_reference: self.declared_reference().map(Triangle::into_vertices),
        }
    }
}
