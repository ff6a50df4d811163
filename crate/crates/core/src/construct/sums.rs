//! Genus raised by connected sums with torus copies.
//!
//! `sum-high` reaches degree `g+i` by adding copies that each carry one more
//! sheet: the glued facet is first subdivided so the copy still maps with
//! degree one. `sum-low` reaches degree `g-i` by adding copies that collapse
//! onto `v1` and so contribute nothing.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::label::{Triangle, VertexId};
use crate::map::SimplicialVertexMap;
use crate::surface::TriangulatedSurface;

use super::polygon::{pattern_index, polygon_map};
use super::surgery::{connected_sum, split_triangle_with_edge, SurgeryError};
use super::{
    construct_variant, torus_copy, u, u_primed, v, Construction, ConstructionError, Variant,
};

/// The `k` of `u_j_k` or `u_j'_k`.
fn copy_index(x: &VertexId) -> usize {
    let k = x
        .as_str()
        .rsplit('_')
        .next()
        .expect("label has a copy index");
    k.parse().expect("copy index is an integer")
}

fn tri(a: VertexId, b: VertexId, c: VertexId) -> Triangle {
    Triangle::new(a, b, c).expect("distinct labels")
}

fn positional(sigma: &Triangle, tau: &Triangle) -> Vec<(VertexId, VertexId)> {
    sigma
        .vertices()
        .iter()
        .cloned()
        .zip(tau.vertices().iter().cloned())
        .collect()
}

/// Surface of degree `g+i`, genus `g`, on `6(g+i)+1` vertices.
fn sum_high_surface(g: usize, i: usize) -> Result<TriangulatedSurface, ConstructionError> {
    let torus = Arc::new(super::torus7());
    let mut k = polygon_map(i + 1, 2 * i + 1, torus)?
        .domain()
        .as_ref()
        .clone();
    for s in 0..g - i - 1 {
        let c = 2 * i + 2 + s;
        // alternate the subdivided facet between the [1,3,4] and [1,3,7] types
        let x = if s % 2 == 0 { 4 } else { 7 };
        let copy = torus_copy(c);
        let split = split_triangle_with_edge(
            &copy,
            &tri(u(1, c), u(3, c), u(x, c)),
            u_primed(3, c),
            u_primed(x, c),
        )?;
        let tau = tri(u(1, c), u_primed(3, c), u_primed(x, c));
        let sigma = if s == 0 {
            tri(u(1, 1), u(3, 2 * i + 1), u(4, 1))
        } else {
            tri(u(1, 1), u(3, c - 1), u(x, c - 1))
        };
        k = connected_sum(&k, &split, &sigma, &tau, &positional(&sigma, &tau))?;
    }
    Ok(k)
}

pub(super) fn sum_high_map(
    g: usize,
    i: usize,
    torus: Arc<TriangulatedSurface>,
) -> Result<SimplicialVertexMap, ConstructionError> {
    let k = sum_high_surface(g, i)?;
    let assignment: BTreeMap<VertexId, VertexId> = k
        .vertices()
        .iter()
        .map(|x| (x.clone(), v(pattern_index(x))))
        .collect();
    Ok(SimplicialVertexMap::new(Arc::new(k), torus, &assignment)?)
}

pub(super) fn sum_low_map(
    g: usize,
    i: usize,
    torus: Arc<TriangulatedSurface>,
) -> Result<SimplicialVertexMap, ConstructionError> {
    let d = g - i;
    let mut k = if d == 1 {
        polygon_map(1, 1, torus.clone())?.domain().as_ref().clone()
    } else {
        sum_high_surface(d, 0)?
    };
    for step in 1..=i {
        let c = d + step;
        // alternate the glued facet between the [1,2,4] and [1,5,7] types
        let (x, y) = if step % 2 == 1 { (2, 4) } else { (5, 7) };
        let sigma = if step == 1 {
            tri(u(1, 1), u(2, 1), u(4, 1))
        } else {
            tri(u(1, 1), u(x, c - 1), u(y, c - 1))
        };
        let tau = tri(u(1, c), u(x, c), u(y, c));
        let gluing = positional(&sigma, &tau);
        let copy = torus_copy(c);
        k = match connected_sum(&k, &copy, &sigma, &tau, &gluing) {
            Err(SurgeryError::IncoherentGluing { .. }) => {
                connected_sum(&k, &copy.reverse_orientation(), &sigma, &tau, &gluing)?
            }
            other => other?,
        };
    }
    // the composite surface is oriented by [u_2_1, u_3_1, u_5_1]
    let k = k.with_reference(&tri(u(2, 1), u(3, 1), u(5, 1)))?;
    let assignment: BTreeMap<VertexId, VertexId> = k
        .vertices()
        .iter()
        .map(|x| {
            let target = if copy_index(x) <= d {
                pattern_index(x)
            } else {
                1
            };
            (x.clone(), v(target))
        })
        .collect();
    Ok(SimplicialVertexMap::new(Arc::new(k), torus, &assignment)?)
}

/// Genus `g`, degree `g+i` for `0 <= i <= g-2`, on `6(g+i)+1` vertices.
pub fn build_sum_high(g: usize, i: usize) -> Result<Construction, ConstructionError> {
    construct_variant(g, (g + i) as i64, Variant::SumHigh)
}

/// Genus `g`, degree `g-i` for `1 <= i <= g-1`, on `6g-2i+1` vertices.
pub fn build_sum_low(g: usize, i: usize) -> Result<Construction, ConstructionError> {
    let d = g.checked_sub(i).filter(|_| i >= 1).map_or(0, |d| d as i64);
    construct_variant(g, d, Variant::SumLow)
}
