//! Scenario documents: the TOML front end shared by the CLI and the demo.
//!
//! A scenario is one self-contained problem instance: the prime, the ambient
//! dimension, the map coordinates as series literals, the hypersurfaces as
//! monomial lists, and the evaluation grid. Every scalar is an exact
//! fraction string ("3", "-5/7"); floating-point literals are rejected by
//! the schema. The only defaults are `multiplier = 1` and `X = P^N`; the
//! sample grid is explicit so that identical documents produce identical
//! artifacts.
//!
//! ```toml
//! prime = 3
//! dimension = 2
//! s_grid = ["0", "1", "2", "3"]
//!
//! [map]
//! coordinates = [
//!     { coeffs = ["0", "1"] },
//!     { coeffs = ["1"] },
//!     { coeffs = ["0"] },
//! ]
//!
//! [[hypersurfaces]]
//! degree = 2
//! monomials = [
//!     { coeff = "1", exps = [0, 2, 0] },
//!     { coeff = "1", exps = [1, 0, 1] },
//! ]
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ProjectivePoint, SharpnessConfig};
use crate::multipoly::MultiPoly;
use crate::projective::{Hypersurface, ProjectiveMap, VarietySpec};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::series::{EntireSeries, Tail};
use crate::valuation::PrimeConfig;

/// A fully validated problem instance.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub prime: PrimeConfig,
    pub ambient_dim: usize,
    pub multiplier: u32,
    pub map: ProjectiveMap,
    pub hypersurfaces: Vec<Hypersurface>,
    pub variety: VarietySpec,
    pub witness_points: Vec<ProjectivePoint>,
    pub s_grid: Vec<Rat>,
    pub output_dir: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    prime: u64,
    dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplier: Option<u32>,
    s_grid: Vec<String>,
    map: RawMap,
    hypersurfaces: Vec<RawHypersurface>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variety: Option<RawVariety>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_points: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<RawOutput>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    coordinates: Vec<RawSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    assert_no_common_zero: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    coeffs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail: Option<RawTail>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTail {
    slope: String,
    offset: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypersurface {
    degree: u32,
    monomials: Vec<RawMonomial>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonomial {
    coeff: String,
    exps: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariety {
    dimension: usize,
    equations: Vec<Vec<RawMonomial>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    dir: Option<String>,
}

/// Parse and validate a scenario document. Syntax problems surface with the
/// TOML position; semantic problems name the first offending field.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario =
        toml::from_str(text).map_err(|e| Error::ScenarioSyntax(e.to_string()))?;
    validate(raw)
}

fn parse_rat_field(text: &str, field: impl Fn() -> String) -> Result<Rat> {
    parse_rat(text).map_err(|e| Error::scenario(field(), e.to_string()))
}

fn validate(raw: RawScenario) -> Result<Scenario> {
    let prime = PrimeConfig::new(raw.prime)
        .map_err(|_| Error::scenario("prime", format!("p must be prime (got {})", raw.prime)))?;
    let n_ambient = raw.dimension;
    if n_ambient < 1 {
        return Err(Error::scenario(
            "dimension",
            "ambient dimension must be at least 1",
        ));
    }
    let nvars = n_ambient + 1;

    // map
    if raw.map.coordinates.len() != nvars {
        return Err(Error::scenario(
            "map.coordinates",
            format!(
                "expected {} coordinate series for P^{}, found {}",
                nvars,
                n_ambient,
                raw.map.coordinates.len()
            ),
        ));
    }
    let mut coords = Vec::with_capacity(nvars);
    for (i, series) in raw.map.coordinates.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(series.coeffs.len());
        for (j, c) in series.coeffs.iter().enumerate() {
            coeffs.push(parse_rat_field(c, || {
                format!("map.coordinates[{i}].coeffs[{j}]")
            })?);
        }
        let s = match &series.tail {
            None => EntireSeries::polynomial(coeffs),
            Some(tail) => {
                let slope =
                    parse_rat_field(&tail.slope, || format!("map.coordinates[{i}].tail.slope"))?;
                let offset =
                    parse_rat_field(&tail.offset, || format!("map.coordinates[{i}].tail.offset"))?;
                EntireSeries::certified(coeffs, slope, offset)
            }
        };
        coords.push(s);
    }
    let polynomial_mode = coords.iter().all(EntireSeries::is_polynomial);
    let map = if polynomial_mode {
        ProjectiveMap::new(coords).map_err(|e| Error::scenario("map.coordinates", e.to_string()))?
    } else {
        if raw.map.assert_no_common_zero != Some(true) {
            return Err(Error::scenario(
                "map.assert_no_common_zero",
                "truncated coordinates require the explicit assertion `assert_no_common_zero = true`",
            ));
        }
        ProjectiveMap::asserted(coords)
            .map_err(|e| Error::scenario("map.coordinates", e.to_string()))?
    };

    // hypersurfaces
    if raw.hypersurfaces.is_empty() {
        return Err(Error::scenario(
            "hypersurfaces",
            "at least one hypersurface is required",
        ));
    }
    let mut hypersurfaces = Vec::with_capacity(raw.hypersurfaces.len());
    for (i, h) in raw.hypersurfaces.iter().enumerate() {
        let poly = monomials_to_poly(&h.monomials, nvars, || format!("hypersurfaces[{i}]"))?;
        let degrees: Vec<u32> = poly.terms().map(|(e, _)| e.iter().sum()).collect();
        let uniform = degrees.windows(2).all(|w| w[0] == w[1]);
        let field = || format!("hypersurfaces[{i}]");
        if degrees.is_empty() {
            return Err(Error::scenario(field(), "polynomial is zero"));
        }
        if !uniform {
            return Err(Error::scenario(
                field(),
                format!(
                    "polynomial is not homogeneous (term degrees {} and {})",
                    degrees.iter().min().unwrap(),
                    degrees.iter().max().unwrap()
                ),
            ));
        }
        if degrees[0] != h.degree {
            return Err(Error::scenario(
                field(),
                format!(
                    "degree mismatch: declared {}, actual {}",
                    h.degree, degrees[0]
                ),
            ));
        }
        let hyp = Hypersurface::new(poly, h.degree)
            .map_err(|e| Error::scenario(field(), e.to_string()))?;
        hypersurfaces.push(hyp);
    }

    // variety
    let variety = match &raw.variety {
        None => VarietySpec::projective_space(n_ambient),
        Some(v) => {
            if v.dimension < 1 || v.dimension > n_ambient {
                return Err(Error::scenario(
                    "variety.dimension",
                    format!("must be between 1 and {n_ambient}"),
                ));
            }
            let mut equations = Vec::with_capacity(v.equations.len());
            for (i, eq) in v.equations.iter().enumerate() {
                equations.push(monomials_to_poly(eq, nvars, || {
                    format!("variety.equations[{i}]")
                })?);
            }
            VarietySpec::new(n_ambient, equations, v.dimension)
                .map_err(|e| Error::scenario("variety.equations", e.to_string()))?
        }
    };

    // witness points
    let mut witness_points = Vec::new();
    for (i, w) in raw.witness_points.iter().flatten().enumerate() {
        let field = || format!("witness_points[{i}]");
        if w.len() != nvars {
            return Err(Error::scenario(
                field(),
                format!("expected {} coordinates, found {}", nvars, w.len()),
            ));
        }
        let mut coords = Vec::with_capacity(nvars);
        for (j, c) in w.iter().enumerate() {
            coords.push(parse_rat_field(c, || format!("witness_points[{i}][{j}]"))?);
        }
        witness_points.push(
            ProjectivePoint::new(coords).map_err(|e| Error::scenario(field(), e.to_string()))?,
        );
    }

    // grid
    if raw.s_grid.is_empty() {
        return Err(Error::scenario(
            "s_grid",
            "at least one grid point is required",
        ));
    }
    let mut s_grid = Vec::with_capacity(raw.s_grid.len());
    for (i, s) in raw.s_grid.iter().enumerate() {
        s_grid.push(parse_rat_field(s, || format!("s_grid[{i}]"))?);
    }
    if s_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::scenario(
            "s_grid",
            "grid must be strictly increasing",
        ));
    }

    let multiplier = raw.multiplier.unwrap_or(1);
    if multiplier < 1 {
        return Err(Error::scenario("multiplier", "must be a positive integer"));
    }

    Ok(Scenario {
        prime,
        ambient_dim: n_ambient,
        multiplier,
        map,
        hypersurfaces,
        variety,
        witness_points,
        s_grid,
        output_dir: raw.output.and_then(|o| o.dir),
    })
}

fn monomials_to_poly(
    monomials: &[RawMonomial],
    nvars: usize,
    field: impl Fn() -> String,
) -> Result<MultiPoly> {
    let mut terms = Vec::with_capacity(monomials.len());
    for (j, m) in monomials.iter().enumerate() {
        if m.exps.len() != nvars {
            return Err(Error::scenario(
                format!("{}.monomials[{j}].exps", field()),
                format!("expected {} exponents, found {}", nvars, m.exps.len()),
            ));
        }
        let coeff = parse_rat_field(&m.coeff, || format!("{}.monomials[{j}].coeff", field()))?;
        terms.push((coeff, m.exps.clone()));
    }
    MultiPoly::from_terms(nvars, terms).map_err(|e| Error::scenario(field(), e.to_string()))
}

/// Render a scenario back to its canonical TOML document. Parsing the output
/// reproduces an equivalent scenario; generated tight configurations
/// round-trip through this.
pub fn render_scenario(scenario: &Scenario) -> String {
    let raw = RawScenario {
        prime: scenario.prime.prime(),
        dimension: scenario.ambient_dim,
        multiplier: (scenario.multiplier != 1).then_some(scenario.multiplier),
        s_grid: scenario.s_grid.iter().map(format_rat).collect(),
        map: RawMap {
            coordinates: scenario
                .map
                .coords()
                .iter()
                .map(|c| RawSeries {
                    coeffs: c.coefficients().iter().map(format_rat).collect(),
                    tail: match c.tail() {
                        Tail::Polynomial => None,
                        Tail::Certified { slope, offset } => Some(RawTail {
                            slope: format_rat(slope),
                            offset: format_rat(offset),
                        }),
                    },
                })
                .collect(),
            assert_no_common_zero: (!scenario.map.is_polynomial_mode()).then_some(true),
        },
        hypersurfaces: scenario
            .hypersurfaces
            .iter()
            .map(|h| RawHypersurface {
                degree: h.degree(),
                monomials: poly_to_monomials(h.poly()),
            })
            .collect(),
        variety: (!scenario.variety.equations().is_empty()
            || scenario.variety.dim() != scenario.ambient_dim)
            .then(|| RawVariety {
                dimension: scenario.variety.dim(),
                equations: scenario
                    .variety
                    .equations()
                    .iter()
                    .map(poly_to_monomials)
                    .collect(),
            }),
        witness_points: (!scenario.witness_points.is_empty()).then(|| {
            scenario
                .witness_points
                .iter()
                .map(|p| p.coords().iter().map(format_rat).collect())
                .collect()
        }),
        output: scenario
            .output_dir
            .clone()
            .map(|dir| RawOutput { dir: Some(dir) }),
    };
    toml::to_string_pretty(&raw).expect("scenario serialization cannot fail")
}

fn poly_to_monomials(poly: &MultiPoly) -> Vec<RawMonomial> {
    poly.terms()
        .map(|(exps, coeff)| RawMonomial {
            coeff: format_rat(coeff),
            exps: exps.clone(),
        })
        .collect()
}

/// Package a generated tight configuration as a scenario (its witness point
/// included), ready for `render_scenario` and the standard subcommands.
pub fn sharpness_scenario(config: &SharpnessConfig, s_grid: Vec<Rat>) -> Scenario {
    Scenario {
        prime: PrimeConfig::new(config.prime).expect("config carries a verified prime"),
        ambient_dim: config.variety_dim,
        multiplier: 1,
        map: config.map.clone(),
        hypersurfaces: config.hypersurfaces.clone(),
        variety: VarietySpec::projective_space(config.variety_dim),
        witness_points: vec![config.witness.clone()],
        s_grid,
        output_dir: None,
    }
}
