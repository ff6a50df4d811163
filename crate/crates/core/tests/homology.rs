//! Degree recomputed from top homology: the fundamental class is the kernel
//! of the facet boundary matrix over GF(p), and the degree is the factor by
//! which the pushed-forward domain class is a multiple of the codomain class.
//! Nothing here uses the library's orientation propagation.

use std::collections::HashMap;
use std::sync::Arc;

use surface_degree::analysis::{automorphisms, enumerate_simplicial_maps, SearchCaps};
use surface_degree::construct::{construct, sigma2_10v_surface, tetrahedron_boundary, torus7};
use surface_degree::{SimplicialVertexMap, Triangle, TriangulatedSurface, VertexId};

const P: i64 = 1_000_000_007;

fn modp(x: i64) -> i64 {
    x.rem_euclid(P)
}

fn inv(a: i64) -> i64 {
    let (mut base, mut exp, mut acc) = (modp(a), P - 2, 1i64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

fn signed(x: i64) -> i64 {
    if x > P / 2 {
        x - P
    } else {
        x
    }
}

/// Ascending facets as label triples.
fn facets(s: &TriangulatedSurface) -> Vec<[VertexId; 3]> {
    s.facets().map(|t| t.sorted().into_vertices()).collect()
}

/// Parity of the permutation sorting `t`: +1 even, -1 odd.
fn parity<T: Ord>(t: &[T; 3]) -> i64 {
    let inversions = (t[0] > t[1]) as u8 + (t[0] > t[2]) as u8 + (t[1] > t[2]) as u8;
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Generator of ker ∂₂ with the ordered reference facet at coefficient +1.
fn fundamental_class(s: &TriangulatedSurface) -> Vec<i64> {
    let fs = facets(s);
    let mut edge_row: HashMap<[VertexId; 2], usize> = HashMap::new();
    for f in &fs {
        for e in [[0, 1], [1, 2], [0, 2]] {
            let key = [f[e[0]].clone(), f[e[1]].clone()];
            let next = edge_row.len();
            edge_row.entry(key).or_insert(next);
        }
    }
    // ∂[a,b,c] = [b,c] - [a,c] + [a,b]
    let mut m = vec![vec![0i64; fs.len()]; edge_row.len()];
    for (j, f) in fs.iter().enumerate() {
        for (e, coeff) in [([1, 2], 1), ([0, 2], -1), ([0, 1], 1)] {
            m[edge_row[&[f[e[0]].clone(), f[e[1]].clone()]]][j] = modp(coeff);
        }
    }
    // row reduce
    let cols = fs.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(r) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, r);
        let scale = inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = *x * scale % P;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                let pivot_row = m[row].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = modp(*x - factor * p % P);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    assert_eq!(
        free.len(),
        1,
        "closed connected orientable surface has H2 = Z"
    );
    let mut x = vec![0i64; cols];
    x[free[0]] = 1;
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = modp(-m[r][free[0]]);
    }
    let x: Vec<i64> = x.into_iter().map(signed).collect();

    let reference = s.reference().into_vertices();
    let mut asc = reference.clone();
    asc.sort();
    let pos = fs.iter().position(|f| *f == asc).unwrap();
    let sign = x[pos] * parity(&reference);
    x.into_iter().map(|c| c * sign).collect()
}

/// Degree from homology, or `None` when the pushforward is not a multiple of
/// the codomain class.
fn homology_degree(f: &SimplicialVertexMap) -> Option<i64> {
    let dom = facets(f.domain());
    let cod = facets(f.codomain());
    let zd = fundamental_class(f.domain());
    let zc = fundamental_class(f.codomain());
    let position: HashMap<&[VertexId; 3], usize> =
        cod.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut pushed = vec![0i64; cod.len()];
    for (facet, coeff) in dom.iter().zip(&zd) {
        let img = facet.clone().map(|v| f.image(&v).unwrap().clone());
        if img[0] == img[1] || img[0] == img[2] || img[1] == img[2] {
            continue;
        }
        let mut asc = img.clone();
        asc.sort();
        pushed[position[&asc]] += coeff * parity(&img);
    }
    let d = pushed[0] * zc[0];
    pushed
        .iter()
        .zip(&zc)
        .all(|(p, c)| *p == d * c)
        .then_some(d)
}

#[test]
fn fundamental_classes_have_unit_coefficients() {
    for s in [torus7(), sigma2_10v_surface(), tetrahedron_boundary()] {
        let z = fundamental_class(&s);
        assert!(z.iter().all(|c| c.abs() == 1));
        for t in s.facets() {
            let asc = t.sorted().into_vertices();
            let i = facets(&s).iter().position(|f| *f == asc).unwrap();
            assert_eq!(
                z[i],
                s.sign_of(&Triangle::try_from(asc).unwrap())
                    .unwrap()
                    .as_i64()
            );
        }
    }
}

#[test]
fn constructions_agree_with_homology() {
    for g in 1..=3usize {
        for d in -(2 * g as i64 + 1)..=(2 * g as i64 + 1) {
            let c = construct(g, d).unwrap();
            assert_eq!(
                homology_degree(&c.map),
                Some(c.report.degree),
                "g={g} d={d}"
            );
            assert_eq!(c.report.degree, d);
        }
    }
}

#[test]
fn torus_self_maps_agree_with_homology() {
    let t = Arc::new(torus7());
    for f in enumerate_simplicial_maps(&t, &t, SearchCaps::default()).unwrap() {
        assert_eq!(homology_degree(&f), Some(f.degree_value().unwrap()));
    }
    let r = Arc::new(t.reverse_orientation());
    let id = SimplicialVertexMap::new(r, t.clone(), &automorphisms(&t)[0].assignment()).unwrap();
    assert_eq!(homology_degree(&id), Some(-1));
}
