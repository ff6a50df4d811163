//! Coherent orientations by propagation across the facet adjacency graph.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::label::{Sign, Triangle};

/// A sign for every facet, relative to the facet's ascending vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    signs: BTreeMap<Triangle, Sign>,
}

impl Orientation {
    pub(crate) fn from_sorted(signs: BTreeMap<Triangle, Sign>) -> Self {
        Orientation { signs }
    }

    /// Sign of `t` relative to its stored vertex order, or `None` if `t` is
    /// not a facet.
    pub fn sign(&self, t: &Triangle) -> Option<Sign> {
        self.signs.get(&t.sorted()).map(|s| *s * t.parity())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triangle, Sign)> {
        self.signs.iter().map(|(t, s)| (t, *s))
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn negated(&self) -> Orientation {
        Orientation {
            signs: self.signs.iter().map(|(t, s)| (t.clone(), -*s)).collect(),
        }
    }
}

/// Propagation met a facet that would need both signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Contradiction;

/// Direction of the oriented edge `x -> y` in the boundary cycle `a -> b -> c -> a`
/// of an ascending triple.
fn edge_direction(tri: &[usize; 3], x: usize, y: usize) -> Sign {
    let [a, b, c] = *tri;
    if (x, y) == (a, b) || (x, y) == (b, c) || (x, y) == (c, a) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

pub(crate) fn edge_key(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

pub(crate) fn edge_map(facets: &[[usize; 3]]) -> HashMap<(usize, usize), Vec<usize>> {
    let mut edges: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for (x, y) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            edges.entry(edge_key(x, y)).or_default().push(i);
        }
    }
    edges
}

/// Breadth-first sign propagation over ascending facets, starting from
/// `start` with `start_sign`. Facets unreachable from `start` keep `None`.
pub(crate) fn propagate(
    facets: &[[usize; 3]],
    start: usize,
    start_sign: Sign,
) -> Result<Vec<Option<Sign>>, Contradiction> {
    let edges = edge_map(facets);
    let mut signs = vec![None; facets.len()];
    signs[start] = Some(start_sign);
    let mut queue = VecDeque::from([start]);
    while let Some(fi) = queue.pop_front() {
        let f = &facets[fi];
        let s = signs[fi].expect("queued facets are signed");
        for (x, y) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            let d_f = edge_direction(f, x, y);
            for &gi in &edges[&edge_key(x, y)] {
                if gi == fi {
                    continue;
                }
                let d_g = edge_direction(&facets[gi], x, y);
                // induced directions must be opposite: s·d_f = −s_g·d_g
                let want = -(s * d_f * d_g);
                match signs[gi] {
                    Some(existing) if existing != want => return Err(Contradiction),
                    Some(_) => {}
                    None => {
                        signs[gi] = Some(want);
                        queue.push_back(gi);
                    }
                }
            }
        }
    }
    Ok(signs)
}
