//! Vertex labels, triangles and orientation signs.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

/// Printable vertex identifier. Ordering is lexicographic on the label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

/// A 2-simplex given by three pairwise distinct vertices.
///
/// The stored order is bookkeeping only; two triangles denote the same simplex
/// when their vertex sets agree (see [`Triangle::same_simplex`]). Derived
/// equality compares the stored order, so normalise with [`Triangle::sorted`]
/// before using triangles as set keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[VertexId; 3]", into = "[VertexId; 3]")]
pub struct Triangle([VertexId; 3]);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("triangle [{0}, {1}, {2}] repeats a vertex")]
pub struct DegenerateTriangle(pub VertexId, pub VertexId, pub VertexId);

impl Triangle {
    pub fn new(
        a: impl Into<VertexId>,
        b: impl Into<VertexId>,
        c: impl Into<VertexId>,
    ) -> Result<Self, DegenerateTriangle> {
        Self::try_from([a.into(), b.into(), c.into()])
    }

    pub fn vertices(&self) -> &[VertexId; 3] {
        &self.0
    }

    pub fn into_vertices(self) -> [VertexId; 3] {
        self.0
    }

    /// Same simplex with the vertices in ascending label order.
    pub fn sorted(&self) -> Triangle {
        let mut v = self.0.clone();
        v.sort();
        Triangle(v)
    }

    pub fn same_simplex(&self, other: &Triangle) -> bool {
        self.sorted() == other.sorted()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.0.contains(v)
    }

    /// Parity of the stored order relative to ascending order.
    pub fn parity(&self) -> Sign {
        parity3(&self.0)
    }

    /// The same simplex with its first two vertices exchanged.
    pub fn transposed(&self) -> Triangle {
        let [a, b, c] = self.0.clone();
        Triangle([b, a, c])
    }
}

impl TryFrom<[VertexId; 3]> for Triangle {
    type Error = DegenerateTriangle;

    fn try_from(v: [VertexId; 3]) -> Result<Self, Self::Error> {
        if v[0] == v[1] || v[0] == v[2] || v[1] == v[2] {
            let [a, b, c] = v;
            return Err(DegenerateTriangle(a, b, c));
        }
        Ok(Triangle(v))
    }
}

impl From<Triangle> for [VertexId; 3] {
    fn from(t: Triangle) -> Self {
        t.0
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.0[0], self.0[1], self.0[2])
    }
}

/// Orientation sign of a facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i64() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(serde::de::Error::custom(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// Parity of a triple of distinct keys relative to ascending order.
pub(crate) fn parity3<T: Ord>(v: &[T; 3]) -> Sign {
    let inversions = (v[0] > v[1]) as u8 + (v[0] > v[2]) as u8 + (v[1] > v[2]) as u8;
    if inversions.is_multiple_of(2) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

pub(crate) fn sort3<T: Ord + Copy>(v: [T; 3]) -> [T; 3] {
    let mut v = v;
    v.sort_unstable();
    v
}
