//! `surface-degree`: build, check and export triangulated surfaces and their
//! maps onto the 7-vertex torus.
//!
//! Standard output carries exactly one JSON document (or OFF text when asked
//! for). Exit status 0 means success, 1 a failed mathematical check, 2 a usage
//! error or unreadable input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use surface_degree::analysis::{
    automorphisms, degree_bound, degree_spectrum, simplicial_volume, vertex_lower_bound,
    EnumerationError, SearchCaps, SpectrumError,
};
use surface_degree::construct::{construct, construct_variant, ConstructionError, Variant};
use surface_degree::io::{self, IoError, RecipeManifest};
use surface_degree::map::{validate_simplicial, MapError};
use surface_degree::surface::Complex;
use surface_degree::TriangulatedSurface;

const CAPS_ENV: &str = "SURFACE_DEGREE_CAPS";

#[derive(Parser, Debug)]
#[command(
    name = "surface-degree",
    version,
    about = "Triangulated surfaces and degrees of simplicial maps"
)]
struct Cli {
    /// Accepted for harness compatibility; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Off,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a genus-g surface with a certified degree-d map onto the torus.
    Construct {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long)]
        variant: Option<Variant>,
        /// Directory for the surface/map/report/recipe bundle.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a surface and, optionally, a map out of it.
    Verify {
        surface: PathBuf,
        map: Option<PathBuf>,
    },
    /// List the automorphisms of a surface in cycle notation.
    Automorphisms { surface: PathBuf },
    /// Enumerate all simplicial maps and report the degrees they reach.
    Spectrum {
        domain: PathBuf,
        codomain: PathBuf,
        /// `N` or `NxM`; overrides the environment setting.
        #[arg(long)]
        caps: Option<String>,
        /// Stop after this many maps.
        #[arg(long)]
        max_maps: Option<u64>,
    },
    /// Degree range for maps between genera, with vertex bounds onto the torus.
    Bounds {
        #[arg(long)]
        g1: u64,
        #[arg(long)]
        g2: u64,
        /// Largest |d| in the vertex-bound table.
        #[arg(long, default_value_t = 10)]
        max_degree: u64,
    },
    /// Print a surface as OFF or canonical JSON.
    Export {
        surface: PathBuf,
        #[arg(long, value_enum, default_value = "off")]
        format: Format,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

struct Failure {
    code: u8,
    message: String,
    detail: Option<Value>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            detail: None,
        }
    }

    fn check(message: impl Into<String>, detail: Value) -> Self {
        Failure {
            code: 1,
            message: message.into(),
            detail: Some(detail),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Surface(s) => surface_failure(s),
            e if e.is_malformed() => Failure::usage(e.to_string()),
            e => Failure {
                code: 1,
                message: e.to_string(),
                detail: None,
            },
        }
    }
}

fn surface_failure(e: surface_degree::SurfaceError) -> Failure {
    match &e {
        surface_degree::SurfaceError::Invalid(report) => {
            Failure::check(e.to_string(), json!({ "violations": report.violations }))
        }
        _ => Failure {
            code: 1,
            message: e.to_string(),
            detail: None,
        },
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_surface(path: &Path) -> Result<TriangulatedSurface, Failure> {
    Ok(io::read_surface(path)?)
}

fn caps_from(flag: Option<&str>) -> Result<SearchCaps, Failure> {
    let env = std::env::var(CAPS_ENV).ok();
    match (flag, env.as_deref()) {
        (Some(s), _) => SearchCaps::parse(s).map_err(|e| Failure::usage(format!("--caps: {e}"))),
        (None, Some(s)) => {
            SearchCaps::parse(s).map_err(|e| Failure::usage(format!("{CAPS_ENV}: {e}")))
        }
        (None, None) => Ok(SearchCaps::default()),
    }
}

fn cmd_construct(
    genus: usize,
    degree: i64,
    variant: Option<Variant>,
    out: Option<&Path>,
    format: Format,
) -> Result<Output, Failure> {
    let built = match variant {
        Some(v) => construct_variant(genus, degree, v),
        None => construct(genus, degree),
    };
    let c = built.map_err(|e| match e {
        ConstructionError::Inapplicable { .. } | ConstructionError::InvalidGenus(_) => {
            Failure::usage(e.to_string())
        }
        e => Failure {
            code: 1,
            message: e.to_string(),
            detail: None,
        },
    })?;
    let manifest = match out {
        Some(dir) => {
            let m = io::write_bundle(dir, &c)?;
            if format == Format::Off {
                std::fs::write(dir.join("surface.off"), io::to_off(c.surface()))
                    .map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
            }
            m
        }
        None => RecipeManifest::new(&c),
    };
    Ok(match format {
        Format::Json => Output::Json(to_value(&manifest)),
        Format::Off => Output::Text(io::to_off(c.surface())),
    })
}

fn cmd_verify(surface: &Path, map: Option<&Path>) -> Result<Output, Failure> {
    let doc = io::parse_surface_document(&read_text(surface)?)?;
    let complex: Complex = doc.into_complex();
    let validity = complex.validate();
    if !validity.is_valid() {
        return Err(Failure::check(
            format!("{} is not a closed connected surface", surface.display()),
            json!({ "valid": false, "violations": validity.violations }),
        ));
    }
    let s = complex.into_surface().map_err(surface_failure)?;
    let f = s.f_vector();
    let mut out = json!({
        "valid": true,
        "f_vector": [f.n, f.e, f.f],
        "euler_characteristic": s.euler_characteristic(),
        "orientable": s.is_orientable(),
        "genus": s.genus().ok(),
        "reference": s.is_orientable().then(|| s.reference()),
    });
    if !s.is_orientable() {
        return Err(Failure::check("surface is not orientable", out));
    }
    let Some(map_path) = map else {
        return Ok(Output::Json(out));
    };

    let doc = io::parse_map_document(&read_text(map_path)?)?;
    let (domain, codomain) = doc.surfaces(map_path.parent())?;
    if domain != s {
        return Err(Failure::check(
            "the map's domain is not the given surface",
            out,
        ));
    }
    let simplicial =
        validate_simplicial(&domain, &codomain, &doc.assignment).map_err(map_failure)?;
    if !simplicial.is_simplicial() {
        out["simplicial"] = json!(false);
        out["offending"] = to_value(&simplicial.offending);
        return Err(Failure::check(
            format!("map is not simplicial: {simplicial}"),
            out,
        ));
    }
    out["simplicial"] = json!(true);
    let f = doc.resolve(map_path.parent())?;
    match f.degree() {
        Ok(report) => {
            out["degree"] = to_value(&report);
            Ok(Output::Json(out))
        }
        Err(e) => Err(Failure::check(e.to_string(), out)),
    }
}

fn map_failure(e: MapError) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
        detail: None,
    }
}

fn cmd_automorphisms(surface: &Path) -> Result<Output, Failure> {
    let s = Arc::new(load_surface(surface)?);
    let autos = automorphisms(&s);
    let list: Vec<Value> = autos
        .iter()
        .map(|f| {
            json!({
                "cycles": surface_degree::analysis::cycle_notation(f),
                "degree": f.degree_value().ok(),
            })
        })
        .collect();
    Ok(Output::Json(json!({
        "surface": io::surface_digest(&s),
        "count": autos.len(),
        "automorphisms": list,
    })))
}

fn cmd_spectrum(
    domain: &Path,
    codomain: &Path,
    caps: Option<&str>,
    max_maps: Option<u64>,
) -> Result<Output, Failure> {
    let mut caps = caps_from(caps)?;
    caps.max_maps = max_maps;
    let k = Arc::new(load_surface(domain)?);
    let l = Arc::new(load_surface(codomain)?);
    match degree_spectrum(&k, &l, caps) {
        Ok(report) => Ok(Output::Json(to_value(&report))),
        Err(SpectrumError::Enumeration(e @ EnumerationError::CapsExceeded { .. })) => {
            Err(Failure::check(e.to_string(), json!({ "caps": caps })))
        }
        Err(e) => Err(Failure {
            code: 1,
            message: e.to_string(),
            detail: None,
        }),
    }
}

fn cmd_bounds(g1: u64, g2: u64, max_degree: u64) -> Result<Output, Failure> {
    let volume = |g: u64| simplicial_volume(g as i64).expect("genus is non-negative");
    let mut out = json!({
        "g1": g1,
        "g2": g2,
        "simplicial_volume": { "domain": volume(g1), "codomain": volume(g2) },
        "degree_range": to_value(&degree_bound(g1, g2)),
    });
    if g2 == 1 && g1 >= 1 {
        let table: Vec<Value> = (1..=max_degree as i64)
            .map(|d| to_value(&vertex_lower_bound(g1, d).expect("g >= 1, d != 0")))
            .collect();
        out["vertex_lower_bounds"] = Value::Array(table);
    }
    Ok(Output::Json(out))
}

fn cmd_export(surface: &Path, format: Format) -> Result<Output, Failure> {
    let s = load_surface(surface)?;
    Ok(Output::Text(match format {
        Format::Off => io::to_off(&s),
        Format::Json => io::surface_to_json(&s),
    }))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Construct {
            genus,
            degree,
            variant,
            out,
            format,
        } => cmd_construct(genus, degree, variant, out.as_deref(), format),
        Command::Verify { surface, map } => cmd_verify(&surface, map.as_deref()),
        Command::Automorphisms { surface } => cmd_automorphisms(&surface),
        Command::Spectrum {
            domain,
            codomain,
            caps,
            max_maps,
        } => cmd_spectrum(&domain, &codomain, caps.as_deref(), max_maps),
        Command::Bounds { g1, g2, max_degree } => cmd_bounds(g1, g2, max_degree),
        Command::Export { surface, format } => cmd_export(&surface, format),
    }
}

/// Write to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json(v: &Value) {
    let mut text = serde_json::to_string_pretty(v).expect("values serialize");
    text.push('\n');
    emit(&text);
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            emit(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            print_json(
                &json!({ "status": "error", "exit_code": 2, "message": e.kind().to_string() }),
            );
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Output::Json(v)) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            let mut doc = json!({ "status": "error", "exit_code": f.code, "message": f.message });
            if let Some(detail) = f.detail {
                doc["detail"] = detail;
            }
            print_json(&doc);
            ExitCode::from(f.code)
        }
    }
}
