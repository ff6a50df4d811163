//! Edge-insertion subdivision and connected sums.

use std::collections::{BTreeMap, HashSet};

use crate::label::{DegenerateTriangle, Sign, Triangle, VertexId};
use crate::surface::{Complex, SurfaceError, TriangulatedSurface};

#[derive(Debug, thiserror::Error)]
pub enum SurgeryError {
    #[error("label {0} occurs in both surfaces")]
    LabelOverlap(VertexId),
    #[error("label {0} is already in use")]
    FreshLabelInUse(VertexId),
    #[error("{facet} is not a facet of the {side} surface")]
    MissingFacet { side: &'static str, facet: Triangle },
    #[error("gluing is not a bijection between the two removed facets")]
    NotABijection,
    #[error("gluing reverses neither orientation; {hint}")]
    IncoherentGluing { hint: String },
    #[error("{0} surface is not orientable")]
    NonOrientable(&'static str),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl From<DegenerateTriangle> for SurgeryError {
    fn from(e: DegenerateTriangle) -> Self {
        SurgeryError::Surface(e.into())
    }
}

/// The reference to carry over after removing `removed` from `k`: the old one
/// if it survives, otherwise the least surviving facet ordered by its sign.
fn surviving_reference(
    k: &TriangulatedSurface,
    removed: &Triangle,
) -> Result<[VertexId; 3], SurgeryError> {
    let reference = k.reference();
    if !reference.same_simplex(removed) {
        return Ok(reference.into_vertices());
    }
    let removed = removed.sorted();
    let facet = k
        .facets()
        .find(|f| *f != removed)
        .expect("a closed surface has several facets");
    let sign = k
        .sign_of(&facet)
        .map_err(|_| SurgeryError::NonOrientable("first"))?;
    Ok(match sign {
        Sign::Positive => facet.into_vertices(),
        Sign::Negative => facet.transposed().into_vertices(),
    })
}

/// Replace the facet `(p, q, r)` by five facets around a new edge `q'r'`:
/// `{p,q',r'} {p,q,r'} {p,q',r} {q,q',r'} {q,q',r}`.
///
/// The result has two more vertices, six more edges and four more facets.
pub fn split_triangle_with_edge(
    k: &TriangulatedSurface,
    facet: &Triangle,
    q_new: VertexId,
    r_new: VertexId,
) -> Result<TriangulatedSurface, SurgeryError> {
    if !k.contains_facet(facet) {
        return Err(SurgeryError::MissingFacet {
            side: "input",
            facet: facet.clone(),
        });
    }
    for fresh in [&q_new, &r_new] {
        if k.contains_vertex(fresh) {
            return Err(SurgeryError::FreshLabelInUse(fresh.clone()));
        }
    }
    if q_new == r_new {
        return Err(SurgeryError::FreshLabelInUse(q_new));
    }
    let [p, q, r] = facet.vertices().clone();
    let reference = if k.is_orientable() {
        Some(surviving_reference(k, facet)?)
    } else {
        None
    };

    let removed = facet.sorted();
    let mut complex = Complex::from_facets(k.facets().filter(|f| *f != removed));
    complex.facets.extend([
        [p.clone(), q_new.clone(), r_new.clone()],
        [p.clone(), q.clone(), r_new.clone()],
        [p, q_new.clone(), r.clone()],
        [q.clone(), q_new.clone(), r_new],
        [q, q_new, r],
    ]);
    complex.vertices = complex
        .facets
        .iter()
        .flatten()
        .cloned()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    complex.positive_reference = reference;
    Ok(complex.into_surface()?)
}

/// Remove `sigma` from `k` and `tau` from `l` and glue the two boundary
/// triangles along `gluing` (pairs σ-vertex → τ-vertex). The τ vertices take
/// the names of their σ partners; the result keeps `k`'s orientation.
///
/// The gluing must make the declared orientations of `k` and `l` agree on the
/// result: the ordered σ must be oppositely signed to its image in `l`.
pub fn connected_sum(
    k: &TriangulatedSurface,
    l: &TriangulatedSurface,
    sigma: &Triangle,
    tau: &Triangle,
    gluing: &[(VertexId, VertexId)],
) -> Result<TriangulatedSurface, SurgeryError> {
    if let Some(v) = l.vertices().iter().find(|v| k.contains_vertex(v)) {
        return Err(SurgeryError::LabelOverlap(v.clone()));
    }
    if !k.contains_facet(sigma) {
        return Err(SurgeryError::MissingFacet {
            side: "first",
            facet: sigma.clone(),
        });
    }
    if !l.contains_facet(tau) {
        return Err(SurgeryError::MissingFacet {
            side: "second",
            facet: tau.clone(),
        });
    }
    let forward: BTreeMap<&VertexId, &VertexId> = gluing.iter().map(|(a, b)| (a, b)).collect();
    let backward: BTreeMap<&VertexId, &VertexId> = gluing.iter().map(|(a, b)| (b, a)).collect();
    let bijective = gluing.len() == 3
        && forward.len() == 3
        && backward.len() == 3
        && forward.keys().all(|a| sigma.contains(a))
        && backward.keys().all(|b| tau.contains(b));
    if !bijective {
        return Err(SurgeryError::NotABijection);
    }
    if !k.is_orientable() {
        return Err(SurgeryError::NonOrientable("first"));
    }
    if !l.is_orientable() {
        return Err(SurgeryError::NonOrientable("second"));
    }

    let (a, b, c) = (&gluing[0].0, &gluing[1].0, &gluing[2].0);
    let ordered_sigma = Triangle::new(a.clone(), b.clone(), c.clone())?;
    let ordered_tau = Triangle::new(forward[a].clone(), forward[b].clone(), forward[c].clone())?;
    if k.sign_of(&ordered_sigma)? == l.sign_of(&ordered_tau)? {
        return Err(SurgeryError::IncoherentGluing {
            hint: format!(
                "swap two pairs, e.g. {a} -> {} and {b} -> {}",
                forward[b], forward[a]
            ),
        });
    }

    let rename = |v: &VertexId| -> VertexId {
        backward
            .get(v)
            .map(|s| (*s).clone())
            .unwrap_or_else(|| v.clone())
    };
    let sigma_sorted = sigma.sorted();
    let tau_sorted = tau.sorted();
    let mut facets: Vec<[VertexId; 3]> = k
        .facets()
        .filter(|f| *f != sigma_sorted)
        .map(Triangle::into_vertices)
        .collect();
    facets.extend(
        l.facets()
            .filter(|f| *f != tau_sorted)
            .map(|f| f.vertices().clone().map(|v| rename(&v))),
    );
    let mut vertices: Vec<VertexId> = k.vertices().to_vec();
    vertices.extend(l.vertices().iter().filter(|v| !tau.contains(v)).cloned());

    let reference = surviving_reference(k, sigma)?;
    let out = Complex {
        vertices,
        facets,
        positive_reference: Some(reference),
    }
    .into_surface()?;

    // both sides keep their declared signs
    let l_part = l
        .facets()
        .find(|f| *f != tau_sorted)
        .expect("several facets");
    let renamed = Triangle::try_from(l_part.vertices().clone().map(|v| rename(&v)))?;
    if out.sign_of(&renamed)? != l.sign_of(&l_part)? {
        return Err(SurgeryError::IncoherentGluing {
            hint: "orientations disagree after gluing".into(),
        });
    }
    Ok(out)
}

/// [`connected_sum`] with the label-order bijection between σ and τ, swapping
/// its last two pairs once if that bijection is incoherent. Returns the
/// surface and the gluing used.
pub fn connected_sum_auto(
    k: &TriangulatedSurface,
    l: &TriangulatedSurface,
    sigma: &Triangle,
    tau: &Triangle,
) -> Result<(TriangulatedSurface, Vec<(VertexId, VertexId)>), SurgeryError> {
    let s = sigma.sorted().into_vertices();
    let t = tau.sorted().into_vertices();
    let mut gluing: Vec<(VertexId, VertexId)> = s.iter().cloned().zip(t.iter().cloned()).collect();
    match connected_sum(k, l, sigma, tau, &gluing) {
        Err(SurgeryError::IncoherentGluing { .. }) => {
            let (x, y) = (gluing[1].1.clone(), gluing[2].1.clone());
            gluing[1].1 = y;
            gluing[2].1 = x;
            connected_sum(k, l, sigma, tau, &gluing).map(|s| (s, gluing))
        }
        other => other.map(|s| (s, gluing)),
    }
}

/// True when no label occurs in both surfaces.
pub fn disjoint_labels(k: &TriangulatedSurface, l: &TriangulatedSurface) -> bool {
    let ks: HashSet<&VertexId> = k.vertices().iter().collect();
    l.vertices().iter().all(|v| !ks.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{tetrahedron_boundary, torus7, torus_copy, u};

    fn tri(a: &str, b: &str, c: &str) -> Triangle {
        Triangle::new(a, b, c).unwrap()
    }

    #[test]
    fn split_adds_two_vertices_and_four_facets() {
        let t = torus7();
        let s = split_triangle_with_edge(&t, &tri("v1", "v3", "v4"), "v3'".into(), "v4'".into())
            .unwrap();
        assert_eq!(s.vertex_count(), 9);
        assert_eq!(s.facet_count(), 18);
        assert_eq!(s.f_vector().e, 21 + 6);
        assert_eq!(s.euler_characteristic(), t.euler_characteristic());
        assert_eq!(s.genus().unwrap(), 1);
        assert_eq!(s.reference(), t.reference());
    }

    #[test]
    fn split_keeps_original_edges_in_two_facets() {
        let t = torus7();
        let s =
            split_triangle_with_edge(&t, &tri("v1", "v3", "v4"), "x".into(), "y".into()).unwrap();
        for (a, b) in [("v1", "v3"), ("v1", "v4"), ("v3", "v4")] {
            let n = s
                .facets()
                .filter(|f| f.contains(&a.into()) && f.contains(&b.into()))
                .count();
            assert_eq!(n, 2, "edge {a}{b}");
        }
        assert!(!s.contains_facet(&tri("v1", "v3", "v4")));
        assert!(s.contains_facet(&tri("v1", "x", "y")));
    }

    #[test]
    fn split_of_the_reference_facet_moves_the_reference() {
        let t = torus7();
        let s =
            split_triangle_with_edge(&t, &tri("v1", "v2", "v4"), "x".into(), "y".into()).unwrap();
        // the surviving facets keep their signs
        for f in t
            .facets()
            .filter(|f| !f.same_simplex(&tri("v1", "v2", "v4")))
        {
            assert_eq!(s.sign_of(&f).unwrap(), t.sign_of(&f).unwrap());
        }
    }

    #[test]
    fn split_rejects_bad_input() {
        let t = torus7();
        assert!(matches!(
            split_triangle_with_edge(&t, &tri("v1", "v2", "v3"), "x".into(), "y".into()),
            Err(SurgeryError::MissingFacet { .. })
        ));
        assert!(matches!(
            split_triangle_with_edge(&t, &tri("v1", "v3", "v4"), "v5".into(), "y".into()),
            Err(SurgeryError::FreshLabelInUse(_))
        ));
    }

    #[test]
    fn torus_plus_torus_is_genus_two() {
        let a = torus_copy(1);
        let b = torus_copy(2);
        let sigma = Triangle::new(u(1, 1), u(2, 1), u(4, 1)).unwrap();
        let tau = Triangle::new(u(1, 2), u(2, 2), u(4, 2)).unwrap();
        let (s, _) = connected_sum_auto(&a, &b, &sigma, &tau).unwrap();
        assert_eq!(s.vertex_count(), 11);
        assert_eq!(s.facet_count(), 26);
        assert_eq!(s.genus().unwrap(), 2);
    }

    #[test]
    fn incoherent_gluing_is_rejected_with_a_hint() {
        let a = torus_copy(1);
        let b = torus_copy(2);
        let sigma = Triangle::new(u(1, 1), u(2, 1), u(4, 1)).unwrap();
        let tau = Triangle::new(u(1, 2), u(2, 2), u(4, 2)).unwrap();
        // both facets positive in the same order
        let gluing = vec![(u(1, 1), u(1, 2)), (u(2, 1), u(2, 2)), (u(4, 1), u(4, 2))];
        match connected_sum(&a, &b, &sigma, &tau, &gluing) {
            Err(SurgeryError::IncoherentGluing { hint }) => assert!(hint.contains("swap")),
            other => panic!("expected incoherent gluing, got {other:?}"),
        }
        // against the reversed copy the same gluing is fine
        let s = connected_sum(&a, &b.reverse_orientation(), &sigma, &tau, &gluing).unwrap();
        assert_eq!(s.genus().unwrap(), 2);
    }

    #[test]
    fn sphere_is_the_unit_of_connected_sum() {
        let t = torus7();
        let s = tetrahedron_boundary();
        let (sum, _) =
            connected_sum_auto(&t, &s, &tri("v1", "v2", "v4"), &tri("t1", "t2", "t3")).unwrap();
        assert_eq!(sum.genus().unwrap(), 1);
        assert_eq!(sum.vertex_count(), 8);
        assert_eq!(
            sum.euler_characteristic(),
            t.euler_characteristic() + s.euler_characteristic() - 2
        );
    }

    #[test]
    fn connected_sum_input_errors() {
        let t = torus7();
        let sigma = tri("v1", "v2", "v4");
        assert!(matches!(
            connected_sum_auto(&t, &t, &sigma, &sigma),
            Err(SurgeryError::LabelOverlap(_))
        ));
        let b = torus_copy(2);
        let tau = Triangle::new(u(1, 2), u(2, 2), u(4, 2)).unwrap();
        assert!(matches!(
            connected_sum_auto(&t, &b, &tri("v1", "v2", "v3"), &tau),
            Err(SurgeryError::MissingFacet { side: "first", .. })
        ));
        let bad = vec![
            (VertexId::from("v1"), u(1, 2)),
            ("v2".into(), u(1, 2)),
            ("v4".into(), u(4, 2)),
        ];
        assert!(matches!(
            connected_sum(&t, &b, &sigma, &tau, &bad),
            Err(SurgeryError::NotABijection)
        ));
        assert!(disjoint_labels(&t, &b));
    }
}
