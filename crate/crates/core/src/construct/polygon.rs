//! The strip of quadrilaterals over a 4g-gon with opposite sides identified.
//!
//! Quadrilateral `q` (1-based, `Q = 2g-1+l` of them, `l = |d|-(2g-1)`) uses the
//! torus pattern with labels `u_j_q`. Quads `g..=g+l` close up top to bottom
//! and carry the extra corner vertices `u_1_2..u_1_{l+1}`; every other quad `q`
//! has its bottom glued to the top of quad `2g-q+l`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::label::{Triangle, VertexId};
use crate::map::SimplicialVertexMap;
use crate::surface::{Complex, TriangulatedSurface};

use super::fixtures::{quad_patch, QuadPatchSlots};
use super::{construct_variant, u, v, Construction, ConstructionError, Variant};

struct Strip {
    g: usize,
    l: usize,
    quads: usize,
}

impl Strip {
    fn is_middle(&self, q: usize) -> bool {
        (self.g..=self.g + self.l).contains(&q)
    }

    fn left_corner(&self, q: usize) -> VertexId {
        if self.is_middle(q) {
            u(1, q - self.g + 1)
        } else {
            u(1, 1)
        }
    }

    fn right_corner(&self, q: usize) -> VertexId {
        let j = q.wrapping_sub(self.g);
        if self.is_middle(q) && j < self.l {
            u(1, j + 2)
        } else {
            u(1, 1)
        }
    }

    /// Top side, left to right.
    fn top(&self, q: usize) -> [VertexId; 4] {
        [self.left_corner(q), u(2, q), u(3, q), self.right_corner(q)]
    }

    /// Left side, bottom to top.
    fn left(&self, q: usize) -> [VertexId; 4] {
        let c = self.left_corner(q);
        [c.clone(), u(5, q), u(4, q), c]
    }

    fn right(&self, q: usize) -> [VertexId; 4] {
        self.left(q % self.quads + 1)
    }

    fn bottom(&self, q: usize) -> [VertexId; 4] {
        if self.is_middle(q) {
            self.top(q)
        } else {
            self.top(2 * self.g + self.l - q)
        }
    }

    fn slots(&self, q: usize) -> QuadPatchSlots {
        let [tl, t1, t2, tr] = self.top(q);
        let [bl, b1, b2, br] = self.bottom(q);
        let [_, l1, l2, _] = self.left(q);
        let [_, r1, r2, _] = self.right(q);
        QuadPatchSlots {
            bl,
            br,
            tl,
            tr,
            b1,
            b2,
            t1,
            t2,
            l1,
            l2,
            r1,
            r2,
            m_low: u(7, q),
            m_high: u(6, q),
        }
    }
}

/// The degree `|d|` strip map, before sign and certification.
pub(super) fn polygon_map(
    g: usize,
    a: usize,
    torus: Arc<TriangulatedSurface>,
) -> Result<SimplicialVertexMap, ConstructionError> {
    let l = a - (2 * g - 1);
    let strip = Strip { g, l, quads: a };
    let mut facets: Vec<Triangle> = Vec::with_capacity(14 * a);
    for q in 1..=a {
        facets.extend(quad_patch(&strip.slots(q))?);
    }
    let surface = Complex::from_facets(facets)
        .with_reference([u(1, 1), u(2, 1), u(4, 1)])
        .into_surface()?;
    let assignment: BTreeMap<VertexId, VertexId> = surface
        .vertices()
        .iter()
        .map(|x| (x.clone(), v(pattern_index(x))))
        .collect();
    Ok(SimplicialVertexMap::new(
        Arc::new(surface),
        torus,
        &assignment,
    )?)
}

/// The `j` of `u_j_k` or `u_j'_k`.
pub(super) fn pattern_index(x: &VertexId) -> u8 {
    let rest = x
        .as_str()
        .strip_prefix("u_")
        .expect("strip labels start with u_");
    let j = rest
        .split(['_', '\''])
        .next()
        .expect("label has a pattern index");
    j.parse().expect("pattern index is a small integer")
}

/// Genus `g`, degree `d` with `|d| >= 2g-1`, on `7|d|+2-2g` vertices.
pub fn build_polygon(g: usize, d: i64) -> Result<Construction, ConstructionError> {
    construct_variant(g, d, Variant::Polygon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_quad_is_the_torus() {
        let c = build_polygon(1, 1).unwrap();
        let s = c.surface();
        assert_eq!(s.vertex_count(), 7);
        assert_eq!(c.report.degree, 1);
        let renamed = s.relabel(|x| v(pattern_index(x))).unwrap();
        let torus = super::super::torus7();
        assert_eq!(
            renamed.facets().collect::<Vec<_>>(),
            torus.facets().collect::<Vec<_>>()
        );
    }

    #[test]
    fn polygon_counts() {
        for (g, d, n) in [(2usize, 5i64, 33usize), (1, 3, 21), (3, 5, 31), (2, -3, 19)] {
            let c = build_polygon(g, d).unwrap();
            assert_eq!(c.surface().vertex_count(), n, "g={g} d={d}");
            assert_eq!(c.surface().facet_count(), 14 * d.unsigned_abs() as usize);
            assert_eq!(c.surface().genus().unwrap(), g);
            assert_eq!(c.report.degree, d);
        }
    }

    #[test]
    fn every_target_has_d_like_signed_preimages() {
        let c = build_polygon(2, 5).unwrap();
        assert!(c.report.degenerate.is_empty());
        for t in &c.report.per_triangle {
            assert_eq!(t.positive_count * t.negative_count, 0);
            assert_eq!(t.positive_count + t.negative_count, 5);
        }
    }

    #[test]
    fn pattern_index_reads_primed_labels() {
        assert_eq!(pattern_index(&u(6, 11)), 6);
        assert_eq!(pattern_index(&super::super::u_primed(4, 3)), 4);
    }
}
