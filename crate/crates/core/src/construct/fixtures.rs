//! Fixed triangulations: the 7-vertex torus, the tetrahedron boundary, the
//! 10-vertex genus-two surface, and the 14-facet quadrilateral template.

use std::collections::BTreeMap;

use crate::label::{Triangle, VertexId};
use crate::surface::{Complex, TriangulatedSurface};

use super::{u, ConstructionError};

const TORUS7_FACETS: [[u8; 3]; 14] = [
    [1, 2, 4],
    [2, 4, 5],
    [2, 3, 5],
    [3, 5, 6],
    [1, 5, 6],
    [1, 2, 6],
    [2, 6, 7],
    [2, 3, 7],
    [1, 3, 7],
    [1, 5, 7],
    [4, 5, 7],
    [4, 6, 7],
    [3, 4, 6],
    [1, 3, 4],
];

const SIGMA2_10V_FACETS: [[u8; 3]; 24] = [
    [1, 2, 3],
    [1, 2, 4],
    [1, 3, 5],
    [1, 4, 6],
    [1, 5, 7],
    [1, 6, 8],
    [1, 7, 8],
    [2, 3, 6],
    [2, 4, 8],
    [2, 5, 6],
    [2, 5, 9],
    [2, 7, 8],
    [2, 7, 10],
    [2, 9, 10],
    [3, 5, 10],
    [3, 6, 8],
    [3, 8, 9],
    [3, 9, 10],
    [4, 6, 10],
    [4, 7, 9],
    [4, 7, 10],
    [4, 8, 9],
    [5, 6, 10],
    [5, 7, 9],
];

/// Vertex assignment of the 10-vertex genus-two surface onto the torus.
const SIGMA2_10V_MAP: [(u8, u8); 10] = [
    (1, 1),
    (2, 2),
    (3, 4),
    (4, 6),
    (10, 6),
    (5, 3),
    (6, 5),
    (7, 7),
    (8, 7),
    (9, 7),
];

pub(crate) fn v(i: u8) -> VertexId {
    VertexId::new(format!("v{i}"))
}

fn labelled(facets: &[[u8; 3]], reference: [u8; 3]) -> TriangulatedSurface {
    Complex::from_facets(facets.iter().map(|f| f.map(v)))
        .with_reference(reference.map(v))
        .into_surface()
        .expect("fixture is a closed surface")
}

/// The vertex-minimal torus on `v1..v7`, with `[v1, v2, v4]` positive.
pub fn torus7() -> TriangulatedSurface {
    labelled(&TORUS7_FACETS, [1, 2, 4])
}

/// [`torus7`] with `v_j` renamed `u_j_k`.
pub fn torus_copy(k: usize) -> TriangulatedSurface {
    torus7()
        .relabel(|x| {
            let j: usize = x.as_str()[1..].parse().expect("torus labels are v1..v7");
            u(j, k)
        })
        .expect("renaming is injective")
}

/// Boundary of the tetrahedron on `t1..t4`.
pub fn tetrahedron_boundary() -> TriangulatedSurface {
    let t = |i: u8| VertexId::new(format!("t{i}"));
    Complex::from_facets([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]].map(|f| f.map(t)))
        .into_surface()
        .expect("tetrahedron boundary is a sphere")
}

/// The 10-vertex genus-two surface, `[v1, v2, v3]` positive.
pub fn sigma2_10v_surface() -> TriangulatedSurface {
    labelled(&SIGMA2_10V_FACETS, [1, 2, 3])
}

pub(crate) fn sigma2_10v_assignment() -> BTreeMap<VertexId, VertexId> {
    SIGMA2_10V_MAP.iter().map(|&(a, b)| (v(a), v(b))).collect()
}

/// Slot labels of one quadrilateral in the strip constructions. Gluing is
/// expressed by repeating labels across slots; left and right sides run
/// bottom to top, bottom and top run left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadPatchSlots {
    pub bl: VertexId,
    pub br: VertexId,
    pub tl: VertexId,
    pub tr: VertexId,
    pub b1: VertexId,
    pub b2: VertexId,
    pub t1: VertexId,
    pub t2: VertexId,
    pub l1: VertexId,
    pub l2: VertexId,
    pub r1: VertexId,
    pub r2: VertexId,
    pub m_low: VertexId,
    pub m_high: VertexId,
}

/// The template: every facet as a triple of slot names.
const QUAD_TEMPLATE: [[&str; 3]; 14] = [
    ["bl", "b1", "m_high"],
    ["b1", "b2", "m_low"],
    ["b1", "m_low", "m_high"],
    ["b2", "br", "m_low"],
    ["br", "r1", "m_low"],
    ["r1", "r2", "m_low"],
    ["r2", "m_low", "m_high"],
    ["r2", "m_high", "t2"],
    ["t2", "tr", "r2"],
    ["t1", "t2", "l1"],
    ["tl", "t1", "l2"],
    ["t1", "l2", "l1"],
    ["t2", "l1", "m_high"],
    ["l1", "m_high", "bl"],
];

impl QuadPatchSlots {
    /// The identification that folds one square into [`torus7`].
    pub fn torus() -> Self {
        QuadPatchSlots {
            bl: v(1),
            br: v(1),
            tl: v(1),
            tr: v(1),
            b1: v(2),
            b2: v(3),
            t1: v(2),
            t2: v(3),
            l1: v(5),
            l2: v(4),
            r1: v(5),
            r2: v(4),
            m_low: v(7),
            m_high: v(6),
        }
    }

    pub fn slot(&self, name: &str) -> &VertexId {
        match name {
            "bl" => &self.bl,
            "br" => &self.br,
            "tl" => &self.tl,
            "tr" => &self.tr,
            "b1" => &self.b1,
            "b2" => &self.b2,
            "t1" => &self.t1,
            "t2" => &self.t2,
            "l1" => &self.l1,
            "l2" => &self.l2,
            "r1" => &self.r1,
            "r2" => &self.r2,
            "m_low" => &self.m_low,
            "m_high" => &self.m_high,
            other => panic!("unknown slot {other}"),
        }
    }

    /// Each slot name with its label, in template slot order.
    pub fn entries(&self) -> impl Iterator<Item = (&'static str, &VertexId)> + '_ {
        [
            "bl", "br", "tl", "tr", "b1", "b2", "t1", "t2", "l1", "l2", "r1", "r2", "m_low",
            "m_high",
        ]
        .into_iter()
        .map(|s| (s, self.slot(s)))
    }
}

/// The fourteen facets of one quadrilateral.
pub fn quad_patch(slots: &QuadPatchSlots) -> Result<Vec<Triangle>, ConstructionError> {
    QUAD_TEMPLATE
        .iter()
        .map(|names| {
            let labels = names.map(|n| slots.slot(n).clone());
            Triangle::try_from(labels).map_err(|e| ConstructionError::SlotCollision {
                slots: *names,
                label: if e.0 == e.1 || e.0 == e.2 { e.0 } else { e.1 },
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, HashMap};

    use super::*;

    fn distinct_slots() -> QuadPatchSlots {
        let s = |n: &str| VertexId::new(format!("q_{n}"));
        QuadPatchSlots {
            bl: s("bl"),
            br: s("br"),
            tl: s("tl"),
            tr: s("tr"),
            b1: s("b1"),
            b2: s("b2"),
            t1: s("t1"),
            t2: s("t2"),
            l1: s("l1"),
            l2: s("l2"),
            r1: s("r1"),
            r2: s("r2"),
            m_low: s("m_low"),
            m_high: s("m_high"),
        }
    }

    /// Boundary edges traced into closed cycles.
    fn boundary_cycles(edges: &[[VertexId; 2]]) -> Vec<Vec<VertexId>> {
        let mut adj: HashMap<&VertexId, Vec<&VertexId>> = HashMap::new();
        for [a, b] in edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        assert!(
            adj.values().all(|n| n.len() == 2),
            "boundary is a union of cycles"
        );
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        let mut starts: Vec<&VertexId> = adj.keys().copied().collect();
        starts.sort();
        for s in starts {
            if seen.contains(s) {
                continue;
            }
            let mut cycle = vec![s.clone()];
            seen.insert(s);
            let (mut prev, mut cur) = (s, adj[s][0]);
            while cur != s {
                seen.insert(cur);
                cycle.push(cur.clone());
                let next = *adj[cur].iter().find(|&&x| x != prev).unwrap();
                prev = cur;
                cur = next;
            }
            cycles.push(cycle);
        }
        cycles
    }

    #[test]
    fn torus_slots_reproduce_the_torus_facets() {
        let facets: BTreeSet<Triangle> = quad_patch(&QuadPatchSlots::torus())
            .unwrap()
            .iter()
            .map(Triangle::sorted)
            .collect();
        let torus: BTreeSet<Triangle> = torus7().facets().collect();
        assert_eq!(facets, torus);
    }

    #[test]
    fn distinct_slots_give_a_disk() {
        let c = Complex::from_facets(quad_patch(&distinct_slots()).unwrap());
        assert_eq!(c.vertices.len(), 14);
        assert_eq!(c.euler_characteristic(), 1);
        let cycles = boundary_cycles(&c.boundary_edges());
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 12);
        assert!(!cycles[0].iter().any(|x| x.as_str().starts_with("q_m_")));
    }

    #[test]
    fn identifying_left_and_right_gives_an_annulus() {
        let mut s = distinct_slots();
        s.br = s.bl.clone();
        s.tr = s.tl.clone();
        s.r1 = s.l1.clone();
        s.r2 = s.l2.clone();
        let c = Complex::from_facets(quad_patch(&s).unwrap());
        assert_eq!(c.euler_characteristic(), 0);
        let cycles = boundary_cycles(&c.boundary_edges());
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn slot_collision_names_the_slots() {
        let mut s = distinct_slots();
        s.m_low = s.b1.clone();
        match quad_patch(&s) {
            Err(ConstructionError::SlotCollision { slots, label }) => {
                assert!(slots.contains(&"b1") && slots.contains(&"m_low"));
                assert_eq!(label, s.b1);
            }
            other => panic!("expected a slot collision, got {other:?}"),
        }
    }

    #[test]
    fn sigma2_fixture_counts() {
        let s = sigma2_10v_surface();
        assert_eq!(
            (s.vertex_count(), s.f_vector().e, s.facet_count()),
            (10, 36, 24)
        );
        assert_eq!(s.euler_characteristic(), -2);
        assert_eq!(s.genus().unwrap(), 2);
    }

    #[test]
    fn torus_copy_renames_labels() {
        let c = torus_copy(3);
        assert!(c.contains_vertex(&u(7, 3)));
        assert_eq!(
            c.reference(),
            Triangle::new(u(1, 3), u(2, 3), u(4, 3)).unwrap()
        );
        assert_eq!(c.genus().unwrap(), 1);
    }
}
