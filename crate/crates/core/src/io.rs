//! JSON and OFF formats, and construction bundles.
//!
//! The canonical surface document lists vertices in label order, facets in
//! ascending vertex order sorted lexicographically, and the declared positive
//! facet (or `null`). Serializing the same surface always yields the same
//! bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::vertex_lower_bound;
use crate::construct::{Construction, Variant};
use crate::label::VertexId;
use crate::map::{MapError, SimplicialVertexMap};
use crate::surface::{Complex, SurfaceError, TriangulatedSurface};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed OFF, line {line}: {message}")]
    Off { line: usize, message: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Map(#[from] MapError),
}

impl IoError {
    /// Whether the input could not be read as a document at all, as opposed
    /// to describing an invalid surface or map.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            IoError::File { .. } | IoError::Json(_) | IoError::Off { .. }
        )
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

/// Unvalidated surface data as it appears on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDocument {
    pub vertices: Vec<VertexId>,
    pub triangles: Vec<[VertexId; 3]>,
    pub positive_triangle: Option<[VertexId; 3]>,
}

impl SurfaceDocument {
    pub fn from_surface(s: &TriangulatedSurface) -> Self {
        SurfaceDocument {
            vertices: s.vertices().to_vec(),
            triangles: s.facets().map(|t| t.into_vertices()).collect(),
            positive_triangle: s.declared_reference().map(|t| t.into_vertices()),
        }
    }

    pub fn into_complex(self) -> Complex {
        Complex {
            vertices: self.vertices,
            facets: self.triangles,
            positive_reference: self.positive_triangle,
        }
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// The canonical JSON text of `s`.
pub fn surface_to_json(s: &TriangulatedSurface) -> String {
    to_pretty(&SurfaceDocument::from_surface(s))
}

/// Unvalidated data; see [`parse_surface`] for a checked surface.
pub fn parse_surface_document(text: &str) -> Result<SurfaceDocument, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_surface(text: &str) -> Result<TriangulatedSurface, IoError> {
    Ok(parse_surface_document(text)?
        .into_complex()
        .into_surface()?)
}

pub fn read_surface(path: &Path) -> Result<TriangulatedSurface, IoError> {
    parse_surface(&read(path)?)
}

/// `sha256:` followed by the hex digest of the canonical JSON.
pub fn surface_digest(s: &TriangulatedSurface) -> String {
    let hash = Sha256::digest(surface_to_json(s).as_bytes());
    let mut out = String::from("sha256:");
    for b in hash {
        write!(out, "{b:02x}").expect("writing to a string");
    }
    out
}

/// A surface given inline or as a path relative to the map document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceRef {
    Inline(SurfaceDocument),
    Path(String),
}

impl SurfaceRef {
    fn resolve(&self, base: Option<&Path>) -> Result<TriangulatedSurface, IoError> {
        match self {
            SurfaceRef::Inline(doc) => Ok(doc.clone().into_complex().into_surface()?),
            SurfaceRef::Path(p) => {
                let path = match base {
                    Some(dir) if Path::new(p).is_relative() => dir.join(p),
                    _ => PathBuf::from(p),
                };
                read_surface(&path)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    pub domain: SurfaceRef,
    pub codomain: SurfaceRef,
    pub assignment: BTreeMap<VertexId, VertexId>,
}

impl MapDocument {
    /// Document with both surfaces inline.
    pub fn inline(f: &SimplicialVertexMap) -> Self {
        MapDocument {
            domain: SurfaceRef::Inline(SurfaceDocument::from_surface(f.domain())),
            codomain: SurfaceRef::Inline(SurfaceDocument::from_surface(f.codomain())),
            assignment: f.assignment(),
        }
    }

    /// Resolve both surfaces, reading paths relative to `base`, and check the
    /// assignment.
    pub fn resolve(&self, base: Option<&Path>) -> Result<SimplicialVertexMap, IoError> {
        let domain = Arc::new(self.domain.resolve(base)?);
        let codomain = Arc::new(self.codomain.resolve(base)?);
        Ok(SimplicialVertexMap::new(
            domain,
            codomain,
            &self.assignment,
        )?)
    }

    /// Both surfaces, unchecked against the assignment.
    pub fn surfaces(
        &self,
        base: Option<&Path>,
    ) -> Result<(TriangulatedSurface, TriangulatedSurface), IoError> {
        Ok((self.domain.resolve(base)?, self.codomain.resolve(base)?))
    }
}

pub fn map_to_json(doc: &MapDocument) -> String {
    to_pretty(doc)
}

pub fn parse_map_document(text: &str) -> Result<MapDocument, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Read a map document, resolving surface paths against its directory.
pub fn read_map(path: &Path) -> Result<SimplicialVertexMap, IoError> {
    parse_map_document(&read(path)?)?.resolve(path.parent())
}

/// Recipe plus the measured values it was certified against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeManifest {
    pub genus: usize,
    pub degree: i64,
    pub variant: Variant,
    pub vertex_formula: String,
    pub expected_vertices: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub facet_count: usize,
    pub certified_degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_lower_bound: Option<i64>,
}

impl RecipeManifest {
    pub fn new(c: &Construction) -> Self {
        let f = c.surface().f_vector();
        RecipeManifest {
            genus: c.recipe.genus,
            degree: c.recipe.degree,
            variant: c.recipe.variant,
            vertex_formula: c.recipe.vertex_formula.clone(),
            expected_vertices: c.recipe.expected_vertices,
            vertex_count: f.n,
            edge_count: f.e,
            facet_count: f.f,
            certified_degree: c.report.degree,
            vertex_lower_bound: vertex_lower_bound(c.recipe.genus as u64, c.recipe.degree)
                .ok()
                .map(|b| b.value()),
        }
    }
}

pub const BUNDLE_FILES: [&str; 4] = ["surface.json", "map.json", "report.json", "recipe.json"];

/// Write `surface.json`, `map.json` (domain by path, codomain inline),
/// `report.json` and `recipe.json` into `dir`, creating it if needed.
pub fn write_bundle(dir: &Path, c: &Construction) -> Result<RecipeManifest, IoError> {
    fs::create_dir_all(dir).map_err(|source| IoError::File {
        path: dir.to_path_buf(),
        source,
    })?;
    let manifest = RecipeManifest::new(c);
    let map = MapDocument {
        domain: SurfaceRef::Path("surface.json".into()),
        codomain: SurfaceRef::Inline(SurfaceDocument::from_surface(c.map.codomain())),
        assignment: c.map.assignment(),
    };
    write(&dir.join("surface.json"), &surface_to_json(c.surface()))?;
    write(&dir.join("map.json"), &map_to_json(&map))?;
    write(&dir.join("report.json"), &to_pretty(&c.report))?;
    write(&dir.join("recipe.json"), &to_pretty(&manifest))?;
    Ok(manifest)
}

/// OFF text. Vertices are written in label order at the origin with the
/// label as a trailing comment; each facet is written positively oriented
/// when the surface is orientable. A declared reference is kept as a
/// `# positive_triangle` comment.
pub fn to_off(s: &TriangulatedSurface) -> String {
    let mut out = String::from("OFF\n");
    if let Some(r) = s.declared_reference() {
        let [a, b, c] = r.vertices();
        writeln!(out, "# positive_triangle {a} {b} {c}").expect("writing to a string");
    }
    writeln!(out, "{} {} 0", s.vertex_count(), s.facet_count()).expect("writing to a string");
    for v in s.vertices() {
        writeln!(out, "0 0 0 # {v}").expect("writing to a string");
    }
    for f in s.facet_indices() {
        let [a, b, c] = *f;
        let (b, c) = match s.sign_of_indices(f) {
            Some(crate::label::Sign::Negative) => (c, b),
            _ => (b, c),
        };
        writeln!(out, "3 {a} {b} {c}").expect("writing to a string");
    }
    out
}

/// Read OFF text written by [`to_off`]. Vertices without a label comment
/// are named by their index.
pub fn from_off(text: &str) -> Result<TriangulatedSurface, IoError> {
    let err = |line: usize, message: &str| IoError::Off {
        line,
        message: message.to_string(),
    };
    let mut reference: Option<[VertexId; 3]> = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix("# positive_triangle") {
            let labels: Vec<VertexId> = rest.split_whitespace().map(VertexId::from).collect();
            let r: [VertexId; 3] = labels
                .try_into()
                .map_err(|_| err(i + 1, "reference needs three labels"))?;
            reference = Some(r);
        } else if !trimmed.is_empty() && !trimmed.starts_with('#') {
            lines.push((i + 1, raw));
        }
    }
    let mut it = lines.into_iter();
    match it.next() {
        Some((_, h)) if h.trim() == "OFF" => {}
        Some((n, _)) => return Err(err(n, "expected OFF header")),
        None => return Err(err(0, "empty input")),
    }
    let (n_line, counts) = it.next().ok_or_else(|| err(0, "missing counts line"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|x| {
            x.parse()
                .map_err(|_| err(n_line, "counts must be integers"))
        })
        .collect::<Result<_, _>>()?;
    let [n, f, _] = counts[..] else {
        return Err(err(n_line, "expected three counts"));
    };

    let mut vertices = Vec::with_capacity(n);
    for k in 0..n {
        let (ln, l) = it.next().ok_or_else(|| err(0, "missing vertex lines"))?;
        let label = match l.split_once('#') {
            Some((_, c)) if !c.trim().is_empty() => c.trim().to_string(),
            _ => k.to_string(),
        };
        let coords = l.split('#').next().unwrap_or("").split_whitespace().count();
        if coords != 3 {
            return Err(err(ln, "vertex line needs three coordinates"));
        }
        vertices.push(VertexId::new(label));
    }
    let mut facets = Vec::with_capacity(f);
    for _ in 0..f {
        let (ln, l) = it.next().ok_or_else(|| err(0, "missing facet lines"))?;
        let nums: Vec<usize> = l
            .split('#')
            .next()
            .unwrap_or("")
            .split_whitespace()
            .map(|x| {
                x.parse()
                    .map_err(|_| err(ln, "facet entries must be integers"))
            })
            .collect::<Result<_, _>>()?;
        match nums[..] {
            [3, a, b, c] if a < n && b < n && c < n => facets.push([
                vertices[a].clone(),
                vertices[b].clone(),
                vertices[c].clone(),
            ]),
            [3, ..] => return Err(err(ln, "vertex index out of range")),
            _ => return Err(err(ln, "only triangles are supported")),
        }
    }
    Ok(Complex {
        vertices,
        facets,
        positive_reference: reference,
    }
    .into_surface()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, sigma2_10v_surface, tetrahedron_boundary, torus7};

    #[test]
    fn canonical_json_layout() {
        let s = tetrahedron_boundary();
        let text = surface_to_json(&s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["positive_triangle"], serde_json::Value::Null);
        let keys: Vec<&str> = ["\"vertices\"", "\"triangles\"", "\"positive_triangle\""].to_vec();
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(parse_surface(&text).unwrap(), s);
    }

    #[test]
    fn json_round_trip_keeps_the_reference() {
        for s in [
            torus7(),
            sigma2_10v_surface(),
            torus7().reverse_orientation(),
        ] {
            let back = parse_surface(&surface_to_json(&s)).unwrap();
            assert_eq!(back, s);
            assert_eq!(surface_to_json(&back), surface_to_json(&s));
        }
    }

    #[test]
    fn digest_depends_on_orientation() {
        let t = torus7();
        assert_eq!(surface_digest(&t), surface_digest(&torus7()));
        assert_ne!(surface_digest(&t), surface_digest(&t.reverse_orientation()));
        assert_eq!(surface_digest(&t).len(), 7 + 64);
    }

    #[test]
    fn off_export_and_import() {
        let t = torus7();
        let off = to_off(&t);
        assert!(off.lines().any(|l| l == "7 14 0"));
        assert!(off.contains("0 0 0 # v1"));
        assert_eq!(from_off(&off).unwrap(), t);
        let s = tetrahedron_boundary();
        assert_eq!(from_off(&to_off(&s)).unwrap(), s);
    }

    #[test]
    fn off_errors() {
        assert!(matches!(
            from_off("PLY\n"),
            Err(IoError::Off { line: 1, .. })
        ));
        assert!(from_off("OFF\n1 1 0\n0 0 0\n4 0 0 0 0\n").is_err());
        assert!(from_off("OFF\n3 1\n").unwrap_err().is_malformed());
    }

    #[test]
    fn inline_map_round_trip() {
        let c = construct(1, 2).unwrap();
        let doc = MapDocument::inline(&c.map);
        let back = parse_map_document(&map_to_json(&doc))
            .unwrap()
            .resolve(None)
            .unwrap();
        assert_eq!(back.assignment(), c.map.assignment());
        assert_eq!(back.degree_value().unwrap(), 2);
    }

    #[test]
    fn malformed_json_is_distinguished() {
        assert!(parse_surface("{").unwrap_err().is_malformed());
        let missing = r#"{"vertices":["a"],"triangles":[],"positive_triangle":null}"#;
        assert!(!parse_surface(missing).unwrap_err().is_malformed());
    }
}
