//! Triangulated surfaces of genus `g` together with vertex maps of a chosen
//! degree onto [`torus7`].
//!
//! Every builder certifies its own output: vertex count against the variant's
//! formula, genus, and the degree computed from signed preimages. A builder
//! that disagrees with its formula returns an error rather than a surface.

mod fixtures;
mod polygon;
mod sums;
pub mod surgery;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::label::VertexId;
use crate::map::{DegreeReport, MapError, SimplicialVertexMap};
use crate::surface::{SurfaceError, TriangulatedSurface};

pub use fixtures::{
    quad_patch, sigma2_10v_surface, tetrahedron_boundary, torus7, torus_copy, QuadPatchSlots,
};
pub use polygon::build_polygon;
pub use sums::{build_sum_high, build_sum_low};
pub use surgery::{connected_sum, connected_sum_auto, split_triangle_with_edge, SurgeryError};

pub(crate) use fixtures::v;

/// Label `u_{j}_{k}`: position `j` of the torus pattern in copy `k`.
pub fn u(j: usize, k: usize) -> VertexId {
    VertexId::new(format!("u_{j}_{k}"))
}

/// Label `u_{j}'_{k}` for vertices inserted by subdivision.
pub fn u_primed(j: usize, k: usize) -> VertexId {
    VertexId::new(format!("u_{j}'_{k}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Polygon,
    SumHigh,
    SumLow,
    Sigma2_10v,
    Sigma2_13v,
    Constant,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Polygon,
        Variant::SumHigh,
        Variant::SumLow,
        Variant::Sigma2_10v,
        Variant::Sigma2_13v,
        Variant::Constant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Polygon => "polygon",
            Variant::SumHigh => "sum-high",
            Variant::SumLow => "sum-low",
            Variant::Sigma2_10v => "sigma2-10v",
            Variant::Sigma2_13v => "sigma2-13v",
            Variant::Constant => "constant",
        }
    }

    /// The applicability rule, as text.
    pub fn rule(self) -> &'static str {
        match self {
            Variant::Polygon => "|d| >= 2g-1",
            Variant::SumHigh => "g >= 2 and g <= |d| <= 2g-2",
            Variant::SumLow => "g >= 2 and 1 <= |d| <= g-1",
            Variant::Sigma2_10v => "g = 2 and |d| = 1",
            Variant::Sigma2_13v => "g = 2 and |d| = 2",
            Variant::Constant => "d = 0",
        }
    }

    pub fn applies(self, g: usize, d: i64) -> bool {
        let a = d.unsigned_abs() as usize;
        match self {
            Variant::Polygon => g >= 1 && a >= 2 * g - 1,
            Variant::SumHigh => g >= 2 && g <= a && a <= 2 * g - 2,
            Variant::SumLow => g >= 2 && 1 <= a && a < g,
            Variant::Sigma2_10v => g == 2 && a == 1,
            Variant::Sigma2_13v => g == 2 && a == 2,
            Variant::Constant => g >= 1 && d == 0,
        }
    }

    fn check(self, g: usize, d: i64) -> Result<(), ConstructionError> {
        if g == 0 {
            return Err(ConstructionError::InvalidGenus(g));
        }
        if self.applies(g, d) {
            Ok(())
        } else {
            Err(ConstructionError::Inapplicable {
                variant: self,
                genus: g,
                degree: d,
                rule: self.rule(),
            })
        }
    }

    /// Vertex count the variant produces for `(g, d)`, and the formula.
    pub fn expected_vertices(self, g: usize, d: i64) -> (usize, &'static str) {
        let a = d.unsigned_abs() as usize;
        match self {
            Variant::Polygon => (7 * a + 2 - 2 * g, "7|d|+2-2g"),
            Variant::SumHigh => (6 * a + 1, "6|d|+1"),
            Variant::SumLow => (4 * g + 2 * a + 1, "6g-2i+1 with i = g-|d|"),
            Variant::Sigma2_10v => (10, "10"),
            Variant::Sigma2_13v => (13, "13"),
            Variant::Constant => match g {
                1 => (7, "7 (torus)"),
                2 => (10, "10 (genus two)"),
                _ => (4 * g + 3, "4g+3"),
            },
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Variant::ALL.iter().map(|v| v.name()).collect();
                format!(
                    "unknown variant {s:?}; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

/// What was built and the formula it was certified against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub genus: usize,
    pub degree: i64,
    pub variant: Variant,
    pub expected_vertices: usize,
    pub vertex_formula: String,
}

impl ConstructionRecipe {
    pub fn new(genus: usize, degree: i64, variant: Variant) -> Self {
        let (expected_vertices, formula) = variant.expected_vertices(genus, degree);
        ConstructionRecipe {
            genus,
            degree,
            variant,
            expected_vertices,
            vertex_formula: formula.to_string(),
        }
    }
}

/// A certified construction: the map's domain is the surface.
#[derive(Clone, Debug)]
pub struct Construction {
    pub recipe: ConstructionRecipe,
    pub map: SimplicialVertexMap,
    pub report: DegreeReport,
}

impl Construction {
    pub fn surface(&self) -> &Arc<TriangulatedSurface> {
        self.map.domain()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConstructionError {
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(usize),
    #[error("{variant} does not apply to g = {genus}, d = {degree}: requires {rule}")]
    Inapplicable {
        variant: Variant,
        genus: usize,
        degree: i64,
        rule: &'static str,
    },
    #[error("slots {} all but coincide: {label} repeats in one facet", .slots.join(", "))]
    SlotCollision {
        slots: [&'static str; 3],
        label: VertexId,
    },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error("certification failed: {check} expected {expected}, got {actual}")]
    Certification {
        check: &'static str,
        expected: i64,
        actual: i64,
    },
}

/// Certify a degree-`|d|` build and apply the sign of `d`.
fn certify(
    recipe: ConstructionRecipe,
    map: SimplicialVertexMap,
    expected_facets: Option<usize>,
) -> Result<Construction, ConstructionError> {
    let map = if recipe.degree < 0 {
        map.with_reversed_domain()
    } else {
        map
    };
    let surface = map.domain();
    let check = |check, expected: usize, actual: usize| {
        if expected == actual {
            Ok(())
        } else {
            Err(ConstructionError::Certification {
                check,
                expected: expected as i64,
                actual: actual as i64,
            })
        }
    };
    check(
        "vertex count",
        recipe.expected_vertices,
        surface.vertex_count(),
    )?;
    if let Some(f) = expected_facets {
        check("facet count", f, surface.facet_count())?;
    }
    check("genus", recipe.genus, surface.genus()?)?;
    let report = map.degree()?;
    if report.degree != recipe.degree {
        return Err(ConstructionError::Certification {
            check: "degree",
            expected: recipe.degree,
            actual: report.degree,
        });
    }
    Ok(Construction {
        recipe,
        map,
        report,
    })
}

/// The fixed degree-one map from the 10-vertex genus-two surface.
pub fn sigma2_10v() -> Result<Construction, ConstructionError> {
    construct_variant(2, 1, Variant::Sigma2_10v)
}

/// The vertex-cheapest applicable variant for `(g, d)`.
pub fn select_variant(g: usize, d: i64) -> Result<Variant, ConstructionError> {
    if g == 0 {
        return Err(ConstructionError::InvalidGenus(g));
    }
    let a = d.unsigned_abs() as usize;
    Ok(if d == 0 {
        Variant::Constant
    } else if g == 2 && a == 1 {
        Variant::Sigma2_10v
    } else if a >= 2 * g - 1 {
        Variant::Polygon
    } else if a >= g {
        Variant::SumHigh
    } else {
        Variant::SumLow
    })
}

/// A genus-`g` surface with a certified degree-`d` map onto [`torus7`].
pub fn construct(g: usize, d: i64) -> Result<Construction, ConstructionError> {
    construct_variant(g, d, select_variant(g, d)?)
}

pub fn construct_variant(
    g: usize,
    d: i64,
    variant: Variant,
) -> Result<Construction, ConstructionError> {
    variant.check(g, d)?;
    let recipe = ConstructionRecipe::new(g, d, variant);
    let a = d.unsigned_abs() as usize;
    let torus = Arc::new(torus7());
    match variant {
        Variant::Polygon => {
            let map = polygon::polygon_map(g, a, torus)?;
            certify(recipe, map, Some(14 * a))
        }
        Variant::SumHigh => certify(recipe, sums::sum_high_map(g, a - g, torus)?, None),
        Variant::SumLow => certify(recipe, sums::sum_low_map(g, g - a, torus)?, None),
        Variant::Sigma2_13v => certify(recipe, sums::sum_high_map(2, 0, torus)?, None),
        Variant::Sigma2_10v => {
            let domain = Arc::new(sigma2_10v_surface());
            let map = SimplicialVertexMap::new(domain, torus, &fixtures::sigma2_10v_assignment())?;
            certify(recipe, map, Some(24))
        }
        Variant::Constant => {
            let domain = match g {
                1 => torus7(),
                2 => sigma2_10v_surface(),
                _ => sums::sum_low_map(g, g - 1, torus.clone())?
                    .domain()
                    .as_ref()
                    .clone(),
            };
            let map = SimplicialVertexMap::constant(Arc::new(domain), torus, &v(1))?;
            certify(recipe, map, None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Triangle;

    #[test]
    fn labels() {
        assert_eq!(u(3, 12).as_str(), "u_3_12");
        assert_eq!(u_primed(7, 4).as_str(), "u_7'_4");
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
            assert_eq!(
                serde_json::to_string(&v).unwrap(),
                format!("\"{}\"", v.name())
            );
        }
        assert!("square".parse::<Variant>().is_err());
    }

    #[test]
    fn applicability_ranges() {
        assert!(Variant::Polygon.applies(2, 3));
        assert!(!Variant::Polygon.applies(2, 2));
        assert!(Variant::SumHigh.applies(3, -4));
        assert!(!Variant::SumHigh.applies(1, 1));
        assert!(Variant::SumLow.applies(3, 2));
        assert!(!Variant::SumLow.applies(3, 3));
        assert!(Variant::Constant.applies(4, 0));
        match construct_variant(2, 5, Variant::SumLow) {
            Err(ConstructionError::Inapplicable { rule, .. }) => assert!(rule.contains("g-1")),
            other => panic!("expected inapplicable, got {other:?}"),
        }
        assert!(matches!(
            construct(0, 1),
            Err(ConstructionError::InvalidGenus(0))
        ));
    }

    #[test]
    fn dispatch_picks_the_cheapest_variant() {
        assert_eq!(select_variant(1, 4).unwrap(), Variant::Polygon);
        assert_eq!(select_variant(2, 2).unwrap(), Variant::SumHigh);
        assert_eq!(select_variant(2, -1).unwrap(), Variant::Sigma2_10v);
        assert_eq!(select_variant(3, 2).unwrap(), Variant::SumLow);
        assert_eq!(select_variant(3, 0).unwrap(), Variant::Constant);
    }

    #[test]
    fn torus_degrees() {
        for d in [1i64, 2, 3, -2] {
            let c = construct(1, d).unwrap();
            assert_eq!(c.surface().vertex_count(), 7 * d.unsigned_abs() as usize);
            assert_eq!(c.report.degree, d);
        }
    }

    #[test]
    fn sigma2_10v_degree_and_target_counts() {
        let c = sigma2_10v().unwrap();
        assert_eq!(c.report.degree, 1);
        let t = Triangle::new("v2", "v6", "v7").unwrap();
        let count = c.report.count_for(&t).unwrap();
        assert_eq!(
            (count.positive_count, count.negative_count, count.alg),
            (2, 1, 1)
        );
        let neg = construct(2, -1).unwrap();
        assert_eq!(neg.report.degree, -1);
        assert_eq!(neg.surface().vertex_count(), 10);
    }

    #[test]
    fn sigma2_13v_matches_sum_high() {
        let a = construct_variant(2, 2, Variant::Sigma2_13v).unwrap();
        let b = construct(2, 2).unwrap();
        assert_eq!(a.surface(), b.surface());
        assert_eq!(a.surface().vertex_count(), 13);
    }

    #[test]
    fn constant_maps_have_degree_zero() {
        for g in 1..=4 {
            let c = construct(g, 0).unwrap();
            assert_eq!(c.report.degree, 0);
            assert_eq!(c.surface().genus().unwrap(), g);
            assert_eq!(c.surface().vertex_count(), c.recipe.expected_vertices);
        }
    }
}
