//! Degree bounds from simplicial volume, and vertex lower bounds for
//! degree-`d` maps onto the 7-vertex torus.

use serde::{Deserialize, Serialize};

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("genus must be non-negative, got {0}")]
    NegativeGenus(i64),
    #[error("genus must be at least 1 for a map onto the torus")]
    ZeroGenus,
    #[error("the vertex bound needs a surjective map; degree 0 has none")]
    ZeroDegree,
}

/// Simplicial volume of the closed orientable surface of genus `g`:
/// `4g-4` for `g >= 2`, zero for the sphere and torus.
pub fn simplicial_volume(g: i64) -> Result<u64, BoundError> {
    match g {
        g if g < 0 => Err(BoundError::NegativeGenus(g)),
        0 | 1 => Ok(0),
        g => Ok(4 * g as u64 - 4),
    }
}

/// Degrees a map from genus `g1` to genus `g2` may have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DegreeRange {
    AllIntegers,
    /// `|d| <= bound`.
    Bounded {
        bound: u64,
    },
    ZeroOnly,
}

impl DegreeRange {
    pub fn contains(&self, d: i64) -> bool {
        match self {
            DegreeRange::AllIntegers => true,
            DegreeRange::Bounded { bound } => d.unsigned_abs() <= *bound,
            DegreeRange::ZeroOnly => d == 0,
        }
    }
}

/// `|deg f| * ||N|| <= ||M||`, read off for surfaces.
pub fn degree_bound(g1: u64, g2: u64) -> DegreeRange {
    if g2 <= 1 {
        DegreeRange::AllIntegers
    } else if g1 < g2 {
        DegreeRange::ZeroOnly
    } else {
        // g1 >= g2 >= 2
        DegreeRange::Bounded {
            bound: (g1 - 1) / (g2 - 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexBound {
    pub genus: u64,
    pub degree: i64,
    /// `7|d|+2-2g`.
    pub formula: i64,
    /// A sharper value known for small cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined: Option<u64>,
}

impl VertexBound {
    pub fn value(&self) -> i64 {
        self.refined
            .map_or(self.formula, |r| self.formula.max(r as i64))
    }
}

/// Fewest vertices a genus-`g` surface needs to carry a degree-`d` map
/// onto the 7-vertex torus.
pub fn vertex_lower_bound(g: u64, d: i64) -> Result<VertexBound, BoundError> {
    if g == 0 {
        return Err(BoundError::ZeroGenus);
    }
    if d == 0 {
        return Err(BoundError::ZeroDegree);
    }
    let formula = 7 * d.unsigned_abs() as i64 + 2 - 2 * g as i64;
    // genus two needs 10 vertices at all; degree two needs 13
    let refined = match (g, d.unsigned_abs()) {
        (2, 1) => Some(10),
        (2, 2) => Some(13),
        _ => None,
    };
    Ok(VertexBound {
        genus: g,
        degree: d,
        formula,
        refined,
    })
}
