//! Backtracking enumeration of simplicial vertex maps.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::label::VertexId;
use crate::map::SimplicialVertexMap;
use crate::surface::TriangulatedSurface;

/// Size guards for unrestricted enumeration, plus an optional output limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCaps {
    pub max_domain_vertices: usize,
    pub max_codomain_vertices: usize,
    pub max_maps: Option<u64>,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            max_domain_vertices: 10,
            max_codomain_vertices: 10,
            max_maps: None,
        }
    }
}

impl SearchCaps {
    /// Parse `N` (both guards) or `NxM` (domain x codomain).
    pub fn parse(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid cap {t:?}"))
        };
        let (d, c) = match s.split_once(['x', 'X']) {
            Some((d, c)) => (num(d)?, num(c)?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        Ok(SearchCaps {
            max_domain_vertices: d,
            max_codomain_vertices: c,
            max_maps: None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    All,
    /// Vertex bijections only; not subject to the size guards.
    Bijective,
}

/// Where an interrupted enumeration stopped: the assigned prefix in search
/// order and the next codomain index to try after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResumeToken {
    pub stack: Vec<usize>,
    pub next_try: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum EnumerationError {
    #[error(
        "search of {domain_vertices} x {codomain_vertices} vertices exceeds caps {}x{}",
        .caps.max_domain_vertices, .caps.max_codomain_vertices
    )]
    CapsExceeded {
        domain_vertices: usize,
        codomain_vertices: usize,
        caps: SearchCaps,
    },
    #[error("stopped after {} maps; resume from the token to continue", .maps.len())]
    Partial {
        maps: Vec<SimplicialVertexMap>,
        token: ResumeToken,
    },
}

/// Pruning checks that become decidable when a search position is assigned.
#[derive(Default)]
struct Checks {
    /// Earlier positions joined to this one by an edge.
    edges: Vec<usize>,
    /// Facets completed here, as the two earlier positions.
    facets: Vec<[usize; 2]>,
}

/// Lazily yields every simplicial vertex map, each exactly once, in a fixed
/// order: domain vertices by decreasing facet-degree then label, images in
/// codomain label order.
pub struct MapEnumerator {
    domain: Arc<TriangulatedSurface>,
    codomain: Arc<TriangulatedSurface>,
    mode: SearchMode,
    max_maps: Option<u64>,
    order: Vec<usize>,
    checks: Vec<Checks>,
    adjacent: Vec<bool>,
    stack: Vec<usize>,
    next_try: usize,
    used: Vec<bool>,
    emitted: u64,
    done: bool,
    interrupted: bool,
}

impl fmt::Debug for MapEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MapEnumerator")
            .field("mode", &self.mode)
            .field("stack", &self.stack)
            .field("emitted", &self.emitted)
            .finish_non_exhaustive()
    }
}

impl MapEnumerator {
    pub fn new(
        domain: Arc<TriangulatedSurface>,
        codomain: Arc<TriangulatedSurface>,
        mode: SearchMode,
        caps: SearchCaps,
    ) -> Result<Self, EnumerationError> {
        let (n, m) = (domain.vertex_count(), codomain.vertex_count());
        if mode == SearchMode::All
            && (n > caps.max_domain_vertices || m > caps.max_codomain_vertices)
        {
            return Err(EnumerationError::CapsExceeded {
                domain_vertices: n,
                codomain_vertices: m,
                caps,
            });
        }
        let degrees = domain.facet_degrees();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (std::cmp::Reverse(degrees[x]), x));
        let mut position = vec![0; n];
        for (p, &x) in order.iter().enumerate() {
            position[x] = p;
        }

        let mut checks: Vec<Checks> = (0..n).map(|_| Checks::default()).collect();
        for f in domain.facet_indices() {
            let mut p = f.map(|x| position[x]);
            p.sort_unstable();
            checks[p[2]].facets.push([p[0], p[1]]);
        }
        for e in domain.edges() {
            let a = position[domain.index_of(&e[0]).expect("edge of domain")];
            let b = position[domain.index_of(&e[1]).expect("edge of domain")];
            checks[a.max(b)].edges.push(a.min(b));
        }

        let mut adjacent = vec![false; m * m];
        for f in codomain.facet_indices() {
            for (x, y) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
                adjacent[x * m + y] = true;
                adjacent[y * m + x] = true;
            }
        }
        let done = mode == SearchMode::Bijective && n != m;
        Ok(MapEnumerator {
            domain,
            codomain,
            mode,
            max_maps: caps.max_maps,
            order,
            checks,
            adjacent,
            stack: Vec::with_capacity(n),
            next_try: 0,
            used: vec![false; m],
            emitted: 0,
            done,
            interrupted: false,
        })
    }

    /// Continue an interrupted enumeration. The token must come from an
    /// enumerator over the same surfaces and mode.
    pub fn resume(
        domain: Arc<TriangulatedSurface>,
        codomain: Arc<TriangulatedSurface>,
        mode: SearchMode,
        caps: SearchCaps,
        token: ResumeToken,
    ) -> Result<Self, EnumerationError> {
        let mut e = Self::new(domain, codomain, mode, caps)?;
        let m = e.codomain.vertex_count();
        if token.stack.len() > e.order.len() || token.stack.iter().any(|&w| w >= m) {
            e.done = true;
            return Ok(e);
        }
        for &w in &token.stack {
            e.used[w] = true;
        }
        e.stack = token.stack;
        e.next_try = token.next_try;
        Ok(e)
    }

    /// Maps emitted so far by this enumerator.
    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Set once the output limit stopped the search early.
    pub fn resume_token(&self) -> Option<ResumeToken> {
        self.interrupted.then(|| ResumeToken {
            stack: self.stack.clone(),
            next_try: self.next_try,
        })
    }

    fn image_at(&self, position: usize) -> usize {
        self.stack[position]
    }

    fn consistent(&self, position: usize, w: usize) -> bool {
        let m = self.codomain.vertex_count();
        let checks = &self.checks[position];
        for &p in &checks.edges {
            let x = self.image_at(p);
            if x != w && !self.adjacent[x * m + w] {
                return false;
            }
        }
        for &[p, q] in &checks.facets {
            let (x, y) = (self.image_at(p), self.image_at(q));
            if x != y && x != w && y != w {
                let mut t = [x, y, w];
                t.sort_unstable();
                if self.codomain.facet_position(&t).is_none() {
                    return false;
                }
            }
        }
        true
    }

    fn current_map(&self) -> SimplicialVertexMap {
        let mut images = vec![0; self.order.len()];
        for (p, &x) in self.order.iter().enumerate() {
            images[x] = self.stack[p];
        }
        SimplicialVertexMap::from_images(self.domain.clone(), self.codomain.clone(), images)
    }

    fn backtrack(&mut self) {
        match self.stack.pop() {
            Some(w) => {
                self.used[w] = false;
                self.next_try = w + 1;
            }
            None => self.done = true,
        }
    }
}

impl Iterator for MapEnumerator {
    type Item = SimplicialVertexMap;

    fn next(&mut self) -> Option<SimplicialVertexMap> {
        let n = self.order.len();
        let m = self.codomain.vertex_count();
        let bijective = self.mode == SearchMode::Bijective;
        loop {
            if self.done || self.interrupted {
                return None;
            }
            if self.stack.len() == n {
                if self.max_maps.is_some_and(|cap| self.emitted >= cap) {
                    self.interrupted = true;
                    return None;
                }
                let map = self.current_map();
                self.emitted += 1;
                if n == 0 {
                    self.done = true;
                } else {
                    self.backtrack();
                }
                return Some(map);
            }
            let position = self.stack.len();
            let found = (self.next_try..m)
                .find(|&w| !(bijective && self.used[w]) && self.consistent(position, w));
            match found {
                Some(w) => {
                    self.stack.push(w);
                    self.used[w] = true;
                    self.next_try = 0;
                }
                None => self.backtrack(),
            }
        }
    }
}

/// Every simplicial map `K -> L`, or the maps found before `caps.max_maps`
/// stopped the search together with a token to resume it.
pub fn enumerate_simplicial_maps(
    k: &Arc<TriangulatedSurface>,
    l: &Arc<TriangulatedSurface>,
    caps: SearchCaps,
) -> Result<Vec<SimplicialVertexMap>, EnumerationError> {
    collect(MapEnumerator::new(
        k.clone(),
        l.clone(),
        SearchMode::All,
        caps,
    )?)
}

pub(crate) fn collect(mut e: MapEnumerator) -> Result<Vec<SimplicialVertexMap>, EnumerationError> {
    let maps: Vec<SimplicialVertexMap> = e.by_ref().collect();
    match e.resume_token() {
        Some(token) => Err(EnumerationError::Partial { maps, token }),
        None => Ok(maps),
    }
}

/// Bijective simplicial self-maps whose inverse is simplicial.
pub fn automorphisms(k: &Arc<TriangulatedSurface>) -> Vec<SimplicialVertexMap> {
    MapEnumerator::new(
        k.clone(),
        k.clone(),
        SearchMode::Bijective,
        SearchCaps::default(),
    )
    .expect("bijective search has no size guard")
    .filter(|f| f.inverse().is_some())
    .collect()
}

/// Disjoint cycles of a bijective self-map, each starting at its least
/// label and ordered by that label; fixed points are omitted. The identity
/// renders as `Identity`.
pub fn cycle_notation(f: &SimplicialVertexMap) -> Option<String> {
    cycle_notation_with(f, |v| v.as_str().to_string())
}

/// [`cycle_notation`] with each label rendered by `name`.
pub fn cycle_notation_with<F>(f: &SimplicialVertexMap, mut name: F) -> Option<String>
where
    F: FnMut(&VertexId) -> String,
{
    if !f.is_bijective() || f.domain() != f.codomain() {
        return None;
    }
    let assignment: BTreeMap<VertexId, VertexId> = f.assignment();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = String::new();
    for start in assignment.keys() {
        if seen.contains(start) || assignment[start] == *start {
            continue;
        }
        let mut cycle = vec![name(start)];
        seen.insert(start.clone());
        let mut cur = &assignment[start];
        while cur != start {
            seen.insert(cur.clone());
            cycle.push(name(cur));
            cur = &assignment[cur];
        }
        out.push('(');
        out.push_str(&cycle.join(","));
        out.push(')');
    }
    Some(if out.is_empty() {
        "Identity".to_string()
    } else {
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{tetrahedron_boundary, torus7};
    use crate::map::validate_simplicial;

    #[test]
    fn caps_parse() {
        assert_eq!(SearchCaps::parse("12").unwrap().max_codomain_vertices, 12);
        let c = SearchCaps::parse("8x9").unwrap();
        assert_eq!((c.max_domain_vertices, c.max_codomain_vertices), (8, 9));
        assert!(SearchCaps::parse("ten").is_err());
    }

    #[test]
    fn torus_to_tetrahedron_includes_constants() {
        let k = Arc::new(torus7());
        let l = Arc::new(tetrahedron_boundary());
        let maps = enumerate_simplicial_maps(&k, &l, SearchCaps::default()).unwrap();
        let constants = maps
            .iter()
            .filter(|f| f.images().iter().all(|&w| w == f.images()[0]))
            .count();
        assert_eq!(constants, 4);
        for f in &maps {
            assert!(validate_simplicial(&k, &l, &f.assignment())
                .unwrap()
                .is_simplicial());
        }
    }

    #[test]
    fn tetrahedron_has_all_24_permutations() {
        let s = Arc::new(tetrahedron_boundary());
        assert_eq!(automorphisms(&s).len(), 24);
    }

    #[test]
    fn size_guard() {
        let k = Arc::new(torus7());
        let caps = SearchCaps {
            max_domain_vertices: 6,
            ..SearchCaps::default()
        };
        assert!(matches!(
            enumerate_simplicial_maps(&k, &k, caps),
            Err(EnumerationError::CapsExceeded { .. })
        ));
    }

    #[test]
    fn partial_results_resume_to_the_full_list() {
        let k = Arc::new(torus7());
        let l = Arc::new(tetrahedron_boundary());
        let full = enumerate_simplicial_maps(&k, &l, SearchCaps::default()).unwrap();
        let caps = SearchCaps {
            max_maps: Some(5),
            ..SearchCaps::default()
        };
        let mut got = Vec::new();
        let mut token = None;
        loop {
            let e = match token.take() {
                None => MapEnumerator::new(k.clone(), l.clone(), SearchMode::All, caps).unwrap(),
                Some(t) => {
                    MapEnumerator::resume(k.clone(), l.clone(), SearchMode::All, caps, t).unwrap()
                }
            };
            match collect(e) {
                Ok(rest) => {
                    got.extend(rest);
                    break;
                }
                Err(EnumerationError::Partial { maps, token: t }) => {
                    assert_eq!(maps.len(), 5);
                    got.extend(maps);
                    token = Some(t);
                }
                Err(other) => panic!("{other}"),
            }
        }
        assert_eq!(got, full);
    }

    #[test]
    fn cycle_notation_of_identity_and_a_rotation() {
        let t = Arc::new(torus7());
        let id = SimplicialVertexMap::identity(t.clone());
        assert_eq!(cycle_notation(&id).unwrap(), "Identity");
        let shift: BTreeMap<VertexId, VertexId> = (1..=7)
            .map(|i| {
                (
                    VertexId::new(format!("v{i}")),
                    VertexId::new(format!("v{}", i % 7 + 1)),
                )
            })
            .collect();
        let f = SimplicialVertexMap::new(t.clone(), t, &shift).unwrap();
        assert_eq!(
            cycle_notation_with(&f, |v| v.as_str()[1..].to_string()).unwrap(),
            "(1,2,3,4,5,6,7)"
        );
    }
}
