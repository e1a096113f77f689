//! Analytic maps to projective space and their Nevanlinna functions.
//!
//! For a map `f = (f_0, ..., f_N)` of entire functions without a common zero
//! and a hypersurface `D = {Q = 0}` of degree `d` with `Q ∘ f` not
//! identically zero, everything is assembled from Gauss norms in the
//! log-radius coordinate `s = log_p r`:
//!
//! - characteristic `T(s) = max_i log|f_i|_{p^s}`;
//! - counting `N(s)` of the pullback `Q ∘ f`;
//! - proximity `m(s) = d*T(s) - log|Q ∘ f|_{p^s}`.
//!
//! The identity `m + N - d*T = const` holds exactly here (not merely up to a
//! bounded error), with the constant `-log|a_k|` for `a_k` the lowest
//! nonzero coefficient of the pullback; [`fmt_residual`] verifies the
//! constancy and returns the constant. [`smt_report`] assembles the weighted
//! proximity sum, the bound `(n - 1 + max_i M/deg D_i) * T`, and their exact
//! margin; quantities "up to O(1)" are always reported as exact functions
//! plus explicit constants, never estimated.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::plf::{Interval, PLFunction};
use crate::rat::{rat, rat_int, Rat};
use crate::series::EntireSeries;
use crate::valuation::{log_abs, ExtLog, PrimeConfig};

/// Whether the no-common-zero invariant was verified (polynomial gcd) or
/// supplied as a user assertion (truncated series mode, where common zeros
/// are undecidable from heads).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assurance {
    Verified,
    Asserted,
}

impl fmt::Display for Assurance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assurance::Verified => write!(f, "verified"),
            Assurance::Asserted => write!(f, "asserted"),
        }
    }
}

/// A nonconstant analytic map `K -> P^N` given by N+1 coordinate series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveMap {
    coords: Vec<EntireSeries>,
    no_common_zero: Assurance,
}

impl ProjectiveMap {
    /// Polynomial-mode constructor: verifies that some coordinate is
    /// nonconstant and that the coordinates have no common zero (their gcd
    /// is constant). Truncated coordinates are rejected here; use
    /// [`ProjectiveMap::asserted`] for those.
    pub fn new(coords: Vec<EntireSeries>) -> Result<Self> {
        let map = Self::validate(coords)?;
        if !map.is_polynomial_mode() {
            return Err(Error::NotPolynomialMode);
        }
        let nonzero: Vec<&EntireSeries> = map.coords.iter().filter(|c| !c.is_zero()).collect();
        let mut gcd: Vec<Rat> = nonzero[0].coefficients().to_vec();
        for c in &nonzero[1..] {
            gcd = poly_gcd(&gcd, c.coefficients());
        }
        let deg = trim(&gcd).len().saturating_sub(1);
        if deg >= 1 {
            return Err(Error::CommonZero(deg));
        }
        Ok(map)
    }

    /// Series-mode constructor carrying the caller's assertion that the full
    /// (untruncated) coordinates have no common zero. The assertion is
    /// recorded and surfaced in reports.
    pub fn asserted(coords: Vec<EntireSeries>) -> Result<Self> {
        let mut map = Self::validate(coords)?;
        map.no_common_zero = Assurance::Asserted;
        Ok(map)
    }

    fn validate(coords: Vec<EntireSeries>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::TooFewCoordinates);
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::AllCoordinatesZero);
        }
        if coords.iter().all(|c| c.is_constant() || c.is_zero()) {
            return Err(Error::ConstantMap);
        }
        Ok(ProjectiveMap {
            coords,
            no_common_zero: Assurance::Verified,
        })
    }

    pub fn coords(&self) -> &[EntireSeries] {
        &self.coords
    }

    /// The ambient dimension N of the target `P^N`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn is_polynomial_mode(&self) -> bool {
        self.coords.iter().all(EntireSeries::is_polynomial)
    }

    pub fn no_common_zero(&self) -> Assurance {
        self.no_common_zero
    }

    /// The characteristic function `T(s) = max_i log|f_i|_{p^s}`, exact on
    /// the intersection of the coordinates' validity windows. Convex;
    /// eventual slope is the largest coordinate degree in polynomial mode.
    pub fn characteristic(&self, cfg: &PrimeConfig) -> Result<PLFunction> {
        let norms: Vec<PLFunction> = self
            .coords
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.gauss_norm(cfg))
            .collect::<Result<_>>()?;
        PLFunction::max_of(&norms)
    }
}

/// A hypersurface in `P^N` with its defining homogeneous polynomial; the
/// declared degree must match the polynomial exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    poly: MultiPoly,
    degree: u32,
}

impl Hypersurface {
    pub fn new(poly: MultiPoly, degree: u32) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly.is_homogeneous_of(degree) {
            let found = poly.total_degree().unwrap_or(0);
            return Err(Error::NotHomogeneous {
                declared: degree,
                found,
            });
        }
        Ok(Hypersurface { poly, degree })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of ambient variables, i.e. N + 1.
    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// The entire function `Q ∘ f`. An identically-zero result means the
    /// image lies in the hypersurface — the excluded case — and is reported
    /// as a distinct error; for truncated maps a head that vanishes to the
    /// truncation order is reported as undecidable containment.
    pub fn pullback(&self, f: &ProjectiveMap, cfg: &PrimeConfig) -> Result<EntireSeries> {
        if self.nvars() != f.coords().len() {
            return Err(Error::DimensionMismatch {
                map_dim: f.ambient_dim(),
                poly_dim: self.nvars() - 1,
            });
        }
        let pulled = self.poly.eval_at_series(f.coords(), cfg)?;
        if pulled.is_zero() {
            return Err(Error::ImageInHypersurface);
        }
        if pulled.ord().is_none() {
            return Err(Error::PullbackZeroToTruncation);
        }
        Ok(pulled)
    }
}

/// A projective variety `X ⊂ P^N` given by homogeneous equations and its
/// claimed dimension `n`. No equations means `X = P^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpec {
    ambient_dim: usize,
    equations: Vec<MultiPoly>,
    dim: usize,
}

impl VarietySpec {
    pub fn new(ambient_dim: usize, equations: Vec<MultiPoly>, dim: usize) -> Result<Self> {
        for eq in &equations {
            if eq.nvars() != ambient_dim + 1 {
                return Err(Error::VariableCountMismatch {
                    expected: ambient_dim + 1,
                    found: eq.nvars(),
                });
            }
            let d = eq.total_degree().ok_or(Error::ZeroPolynomial)?;
            if !eq.is_homogeneous_of(d) {
                return Err(Error::NotHomogeneous {
                    declared: d,
                    found: 0,
                });
            }
        }
        Ok(VarietySpec {
            ambient_dim,
            equations,
            dim,
        })
    }

    /// The whole `P^n`.
    pub fn projective_space(n: usize) -> Self {
        VarietySpec {
            ambient_dim: n,
            equations: vec![],
            dim: n,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim
    }
}

/// `true` iff every defining equation of `X` pulls back to zero along `f` —
/// exactly in polynomial mode, to the truncation order otherwise.
pub fn verify_image_in_variety(
    f: &ProjectiveMap,
    variety: &VarietySpec,
    cfg: &PrimeConfig,
) -> Result<bool> {
    for eq in variety.equations() {
        let pulled = eq.eval_at_series(f.coords(), cfg)?;
        let vanishes = pulled.coefficients().iter().all(Zero::is_zero);
        if !vanishes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The proximity function `m(s) = d*T(s) - log|Q ∘ f|_{p^s}`, exact up to
/// the additive constant fixed by the chosen defining polynomial.
pub fn proximity(f: &ProjectiveMap, d: &Hypersurface, cfg: &PrimeConfig) -> Result<PLFunction> {
    let t = f.characteristic(cfg)?;
    let pulled = d.pullback(f, cfg)?;
    let norm = pulled.gauss_norm(cfg)?;
    t.scale(&rat_int(d.degree() as i64)).sub(&norm)
}

/// The counting function of the pullback `Q ∘ f`.
pub fn counting(f: &ProjectiveMap, d: &Hypersurface, cfg: &PrimeConfig) -> Result<PLFunction> {
    d.pullback(f, cfg)?.counting_plf(cfg)
}

/// Verifies that `m + N - d*T` is a constant function and returns the
/// constant. The identity is exact here, so a nonconstant residual signals
/// an internal inconsistency, not a data problem.
pub fn fmt_residual(f: &ProjectiveMap, d: &Hypersurface, cfg: &PrimeConfig) -> Result<Rat> {
    let t = f.characteristic(cfg)?;
    let m = proximity(f, d, cfg)?;
    let n = counting(f, d, cfg)?;
    let residual = m.add(&n)?.sub(&t.scale(&rat_int(d.degree() as i64)))?;
    match residual.is_constant_on(residual.domain())? {
        Some(c) => Ok(c),
        None => Err(Error::NonConstantResidual),
    }
}

/// The defect `lim m(s) / (d * T(s))` as an exact rational, computed from
/// eventual slopes. Defined in polynomial mode, where the limit exists
/// exactly; truncated maps have no eventual slope inside a bounded window.
pub fn defect(f: &ProjectiveMap, d: &Hypersurface, cfg: &PrimeConfig) -> Result<Rat> {
    if !f.is_polynomial_mode() {
        return Err(Error::NotPolynomialMode);
    }
    let t = f.characteristic(cfg)?;
    let m = proximity(f, d, cfg)?;
    let num = m.eventual_slope()?;
    let den = rat_int(d.degree() as i64) * t.eventual_slope()?;
    Ok(num / den)
}

/// How the general-position / transversality hypotheses entered a report:
/// asserted by the scenario author, or witnessed by exact Jacobian checks at
/// supplied points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionStatus {
    Asserted,
    Witnessed { points: usize },
}

impl fmt::Display for PositionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositionStatus::Asserted => write!(f, "asserted"),
            PositionStatus::Witnessed { points } => {
                write!(f, "witnessed at {points} point(s)")
            }
        }
    }
}

/// Per-hypersurface slice of a [`NevanlinnaReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct HypersurfaceReport {
    pub degree: u32,
    pub proximity: PLFunction,
    pub counting: PLFunction,
    pub fmt_residual: Rat,
    pub defect: Option<Rat>,
}

/// Verdict of the margin inspection over the window `s >= 0`: the tool
/// reports the eventual slope (when the domain is unbounded) and the exact
/// infimum; it never assumes the inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct SmtVerdict {
    pub window: Interval,
    pub margin_eventual_slope: Option<Rat>,
    pub margin_infimum: ExtLog,
    pub bounded_below: bool,
}

/// Sorted proximity growth rates: in general position all but the top `n`
/// must be bounded, i.e. have eventual slope zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityRankReport {
    /// `(hypersurface index, eventual slope of m_i)`, sorted by slope
    /// descending.
    pub entries: Vec<(usize, Rat)>,
    pub variety_dim: usize,
    pub passes: bool,
}

/// The assembled second-main-theorem report.
#[derive(Debug, Clone, PartialEq)]
pub struct NevanlinnaReport {
    pub prime: u64,
    pub ambient_dim: usize,
    pub variety_dim: usize,
    pub multiplier: u32,
    pub position_status: PositionStatus,
    pub no_common_zero: Assurance,
    pub image_in_variety: bool,
    pub characteristic: PLFunction,
    pub hypersurfaces: Vec<HypersurfaceReport>,
    /// `sum_i m_i / deg D_i`
    pub weighted_sum: PLFunction,
    /// `(n - 1 + max_i M / deg D_i) * T`
    pub bound: PLFunction,
    /// `bound - weighted_sum`, exactly.
    pub margin: PLFunction,
    pub verdict: SmtVerdict,
    pub proximity_rank: Option<ProximityRankReport>,
}

/// Assemble the full report for hypersurfaces `Ds` against the bound
/// `(n - 1 + max_i M/deg D_i) * T`. `M = 1` is the transverse case; other
/// multipliers are caller-supplied. Geometric hypotheses enter only through
/// `position_status`, which the caller derives from witness checks or
/// records as asserted.
pub fn smt_report(
    f: &ProjectiveMap,
    hypersurfaces: &[Hypersurface],
    variety: &VarietySpec,
    multiplier: u32,
    cfg: &PrimeConfig,
    position_status: PositionStatus,
) -> Result<NevanlinnaReport> {
    if hypersurfaces.is_empty() {
        return Err(Error::EmptyFunctionList);
    }
    let n = variety.dim();
    let t = f.characteristic(cfg)?;
    let image_in_variety = verify_image_in_variety(f, variety, cfg)?;

    let mut reports = Vec::with_capacity(hypersurfaces.len());
    let mut weighted_sum: Option<PLFunction> = None;
    for d in hypersurfaces {
        // compute the pullback once and derive m, N, and the residual from it
        let pulled = d.pullback(f, cfg)?;
        let norm = pulled.gauss_norm(cfg)?;
        let dt = t.scale(&rat_int(d.degree() as i64));
        let m = dt.sub(&norm)?;
        let nf = pulled.counting_plf(cfg)?;
        let residual_plf = m.add(&nf)?.sub(&dt)?;
        let residual = residual_plf
            .is_constant_on(residual_plf.domain())?
            .ok_or(Error::NonConstantResidual)?;
        let delta = if f.is_polynomial_mode() {
            let num = m.eventual_slope()?;
            let den = rat_int(d.degree() as i64) * t.eventual_slope()?;
            Some(num / den)
        } else {
            None
        };
        let weighted = m.scale(&rat(1, d.degree() as i64));
        weighted_sum = Some(match weighted_sum.take() {
            None => weighted,
            Some(acc) => acc.add(&weighted)?,
        });
        reports.push(HypersurfaceReport {
            degree: d.degree(),
            proximity: m,
            counting: nf,
            fmt_residual: residual,
            defect: delta,
        });
    }
    let weighted_sum = weighted_sum.expect("at least one hypersurface");

    let max_ratio = hypersurfaces
        .iter()
        .map(|d| rat(multiplier as i64, d.degree() as i64))
        .max()
        .expect("at least one hypersurface");
    let factor = rat_int(n as i64 - 1) + max_ratio;
    let bound = t.scale(&factor);
    let margin = bound.sub(&weighted_sum)?;

    let window = Interval::at_least(rat_int(0))
        .intersect(margin.domain())
        .ok_or(Error::EmptyDomainIntersection)?;
    let infimum = margin.inf_on(&window)?;
    let verdict = SmtVerdict {
        window,
        margin_eventual_slope: margin.eventual_slope().ok(),
        bounded_below: infimum != ExtLog::NegInf,
        margin_infimum: infimum,
    };

    let proximity_rank = if hypersurfaces.len() > n && f.is_polynomial_mode() {
        Some(sorted_proximity_boundedness(
            f,
            hypersurfaces,
            variety,
            cfg,
        )?)
    } else {
        None
    };

    Ok(NevanlinnaReport {
        prime: cfg.prime(),
        ambient_dim: f.ambient_dim(),
        variety_dim: n,
        multiplier,
        position_status,
        no_common_zero: f.no_common_zero(),
        image_in_variety,
        characteristic: t,
        hypersurfaces: reports,
        weighted_sum,
        bound,
        margin,
        verdict,
        proximity_rank,
    })
}

/// Sort the proximity functions by eventual slope and check that all but
/// the top `n` are bounded (slope zero), as general position predicts for
/// `q > n` hypersurfaces. A failure flags a degenerate configuration.
pub fn sorted_proximity_boundedness(
    f: &ProjectiveMap,
    hypersurfaces: &[Hypersurface],
    variety: &VarietySpec,
    cfg: &PrimeConfig,
) -> Result<ProximityRankReport> {
    let n = variety.dim();
    let q = hypersurfaces.len();
    if q <= n {
        return Err(Error::TooFewHypersurfaces { q, n });
    }
    if !f.is_polynomial_mode() {
        return Err(Error::NotPolynomialMode);
    }
    let t_slope = f.characteristic(cfg)?.eventual_slope()?;
    let mut entries: Vec<(usize, Rat)> = Vec::with_capacity(q);
    for (i, d) in hypersurfaces.iter().enumerate() {
        let norm_slope = d.pullback(f, cfg)?.gauss_norm(cfg)?.eventual_slope()?;
        let slope = rat_int(d.degree() as i64) * &t_slope - norm_slope;
        entries.push((i, slope));
    }
    entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let passes = entries[n..].iter().all(|(_, slope)| slope.is_zero());
    Ok(ProximityRankReport {
        entries,
        variety_dim: n,
        passes,
    })
}

/// Residual constant of the first main theorem computed through the Jensen
/// route: `-log|a_k|` for the lowest nonzero pullback coefficient. This is
/// an independent route to the same number as [`fmt_residual`]; tests
/// compare the two.
pub fn jensen_constant(f: &ProjectiveMap, d: &Hypersurface, cfg: &PrimeConfig) -> Result<Rat> {
    let pulled = d.pullback(f, cfg)?;
    let (_, low) = pulled.lowest_coefficient().expect("pullback is nonzero");
    match log_abs(low, cfg) {
        ExtLog::Finite(v) => Ok(-v),
        ExtLog::NegInf => unreachable!("lowest coefficient is nonzero"),
    }
}

fn trim(p: &[Rat]) -> &[Rat] {
    let n = p.iter().rposition(|c| !c.is_zero()).map_or(0, |k| k + 1);
    &p[..n]
}

/// Euclidean remainder of dense univariate polynomials over Q; the divisor
/// must be nonzero.
fn poly_rem(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let den = trim(den);
    let mut rem: Vec<Rat> = trim(num).to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let k = rem.len() - 1;
        let factor = rem[k].clone() / &den[dd];
        let base = k - dd;
        for (j, dc) in den.iter().enumerate() {
            let sub = &factor * dc;
            rem[base + j] -= sub;
        }
        // the leading term cancels exactly over a field
        rem.truncate(k);
        let n = trim(&rem).len();
        rem.truncate(n);
    }
    rem
}

/// Monic gcd of dense univariate polynomials over Q; `[1]`-like constants
/// mean coprime.
fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = trim(a).to_vec();
    let mut y = trim(b).to_vec();
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn cfg(p: u64) -> PrimeConfig {
        PrimeConfig::new(p).unwrap()
    }

    fn poly(coeffs: &[i64]) -> EntireSeries {
        EntireSeries::polynomial(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn hyp(nvars: usize, terms: &[(i64, &[u32])], degree: u32) -> Hypersurface {
        let p = MultiPoly::from_terms(nvars, terms.iter().map(|(c, e)| (rat_int(*c), e.to_vec())))
            .unwrap();
        Hypersurface::new(p, degree).unwrap()
    }

    fn line_map() -> ProjectiveMap {
        // f = (z, 1, 0)
        ProjectiveMap::new(vec![
            EntireSeries::monomial(1),
            EntireSeries::one(),
            EntireSeries::zero(),
        ])
        .unwrap()
    }

    #[test]
    fn map_invariants() {
        assert_eq!(
            ProjectiveMap::new(vec![poly(&[1]), poly(&[2])]),
            Err(Error::ConstantMap)
        );
        assert_eq!(
            ProjectiveMap::new(vec![EntireSeries::zero(), EntireSeries::zero()]),
            Err(Error::AllCoordinatesZero)
        );
        // (z, z) hits every point of P^1 as (1 : 1); gcd detects it
        assert_eq!(
            ProjectiveMap::new(vec![EntireSeries::monomial(1), EntireSeries::monomial(1)]),
            Err(Error::CommonZero(1))
        );
        // (z^2 - 1, z^2 - z): common root z = 1
        assert_eq!(
            ProjectiveMap::new(vec![poly(&[-1, 0, 1]), poly(&[0, -1, 1])]),
            Err(Error::CommonZero(1))
        );
        assert!(ProjectiveMap::new(vec![poly(&[0, 1]), poly(&[1])]).is_ok());
    }

    #[test]
    fn characteristic_examples() {
        let c = cfg(3);
        let t = line_map().characteristic(&c).unwrap();
        let expected = PLFunction::max_of(&[
            PLFunction::linear(rat_int(1), rat_int(0)),
            PLFunction::constant(rat_int(0)),
        ])
        .unwrap();
        assert_eq!(t, expected);

        let f = ProjectiveMap::new(vec![poly(&[0, 0, 1]), poly(&[1])]).unwrap();
        let t = f.characteristic(&c).unwrap();
        assert_eq!(t.slopes(), &[rat_int(0), rat_int(2)]);
        assert_eq!(t.eventual_slope().unwrap(), rat_int(2));
    }

    #[test]
    fn pullback_examples() {
        let c = cfg(3);
        let f2 = ProjectiveMap::new(vec![EntireSeries::monomial(1), EntireSeries::one()]).unwrap();
        let d = hyp(2, &[(1, &[1, 0])], 1);
        assert_eq!(d.pullback(&f2, &c).unwrap(), EntireSeries::monomial(1));

        let f = line_map();
        let d1 = hyp(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])], 2);
        assert_eq!(d1.pullback(&f, &c).unwrap(), EntireSeries::one());
        let d2 = hyp(3, &[(1, &[1, 1, 0]), (1, &[0, 0, 2])], 2);
        assert_eq!(d2.pullback(&f, &c).unwrap(), EntireSeries::monomial(1));

        // image contained in the hypersurface x2 = 0
        let d3 = hyp(3, &[(1, &[0, 0, 1])], 1);
        assert_eq!(d3.pullback(&f, &c), Err(Error::ImageInHypersurface));

        // dimension mismatch
        assert!(matches!(
            d1.pullback(&f2, &c),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn proximity_examples() {
        let c = cfg(3);
        let f = line_map();
        let up = Interval::at_least(rat_int(0));
        // D: x1^2 + x0 x2, pullback 1: m = 2*max(s,0)
        let m = proximity(&f, &hyp(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])], 2), &c).unwrap();
        assert_eq!(m.restrict(&up).unwrap().slopes(), &[rat_int(2)]);
        assert_eq!(m.eval(&rat_int(2)).unwrap(), rat_int(4));
        // D: x0 x1 + x2^2, pullback z: m = 2*max(s,0) - s, slope 1 on s >= 0
        let m = proximity(&f, &hyp(3, &[(1, &[1, 1, 0]), (1, &[0, 0, 2])], 2), &c).unwrap();
        assert_eq!(m.restrict(&up).unwrap().slopes(), &[rat_int(1)]);
        // D: x0 on (z, 1): m = max(s,0) - s = 0 on s >= 0
        let f2 = ProjectiveMap::new(vec![EntireSeries::monomial(1), EntireSeries::one()]).unwrap();
        let m = proximity(&f2, &hyp(2, &[(1, &[1, 0])], 1), &c).unwrap();
        assert_eq!(
            m.restrict(&up).unwrap(),
            PLFunction::constant(rat_int(0)).restrict(&up).unwrap()
        );
    }

    #[test]
    fn fmt_residual_examples() {
        let c = cfg(3);
        let f2 = ProjectiveMap::new(vec![EntireSeries::monomial(1), EntireSeries::one()]).unwrap();
        let d = hyp(2, &[(1, &[1, 0])], 1);
        assert_eq!(fmt_residual(&f2, &d, &c).unwrap(), rat_int(0));
        assert_eq!(jensen_constant(&f2, &d, &c).unwrap(), rat_int(0));

        // f = (3z, 1), D: x0 + x1, pullback 1 + 3z, lowest coefficient 1
        let f = ProjectiveMap::new(vec![poly(&[0, 3]), poly(&[1])]).unwrap();
        let d = hyp(2, &[(1, &[1, 0]), (1, &[0, 1])], 1);
        assert_eq!(fmt_residual(&f, &d, &c).unwrap(), rat_int(0));

        // f = (3, z), D: x0, pullback constant 3: residual -log|3| = 1
        let f = ProjectiveMap::new(vec![poly(&[3]), poly(&[0, 1])]).unwrap();
        let d = hyp(2, &[(1, &[1, 0])], 1);
        assert_eq!(fmt_residual(&f, &d, &c).unwrap(), rat_int(1));
        assert_eq!(jensen_constant(&f, &d, &c).unwrap(), rat_int(1));
    }

    #[test]
    fn defect_of_omitted_hypersurface_is_one() {
        let c: PrimeConfig = cfg(5);
        let f = line_map();
        // pullback of x1^2 + x0 x2 is the constant 1: D is omitted entirely
        let d = hyp(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])], 2);
        assert_eq!(defect(&f, &d, &c).unwrap(), rat_int(1));
        // pullback z^{d-1} accounts for 1/d of the growth
        let d = hyp(3, &[(1, &[1, 1, 0]), (1, &[0, 0, 2])], 2);
        assert_eq!(defect(&f, &d, &c).unwrap(), rat(1, 2));
    }

    #[test]
    fn smt_report_single_hyperplane() {
        let c = cfg(3);
        let f = ProjectiveMap::new(vec![EntireSeries::monomial(1), EntireSeries::one()]).unwrap();
        let d = hyp(2, &[(1, &[1, 0])], 1);
        let report = smt_report(
            &f,
            &[d],
            &VarietySpec::projective_space(1),
            1,
            &c,
            PositionStatus::Asserted,
        )
        .unwrap();
        // sum = m = 0 on s >= 0, bound = T: margin has slope 1
        assert_eq!(report.verdict.margin_eventual_slope, Some(rat_int(1)));
        assert!(report.verdict.bounded_below);
        assert_eq!(
            report.margin,
            report.bound.sub(&report.weighted_sum).unwrap()
        );
    }

    #[test]
    fn multiplier_equal_to_degree_recovers_linear_bound() {
        // with M = max deg D_i the bound reduces to n*T
        let c = cfg(3);
        let f = line_map();
        let d = hyp(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])], 2);
        let report = smt_report(
            &f,
            &[d],
            &VarietySpec::projective_space(2),
            2,
            &c,
            PositionStatus::Asserted,
        )
        .unwrap();
        assert_eq!(report.bound, report.characteristic.scale(&rat_int(2)),);
    }

    #[test]
    fn image_in_variety_checks() {
        let c = cfg(3);
        let x3 = MultiPoly::variable(4, 3);
        let x = VarietySpec::new(3, vec![x3], 2).unwrap();
        let f = ProjectiveMap::new(vec![
            EntireSeries::monomial(1),
            EntireSeries::one(),
            EntireSeries::zero(),
            EntireSeries::zero(),
        ])
        .unwrap();
        assert!(verify_image_in_variety(&f, &x, &c).unwrap());
        assert!(verify_image_in_variety(&f, &VarietySpec::projective_space(3), &c).unwrap());

        let x2 = MultiPoly::variable(3, 2);
        let x = VarietySpec::new(2, vec![x2], 1).unwrap();
        let g = ProjectiveMap::new(vec![
            EntireSeries::monomial(1),
            EntireSeries::one(),
            EntireSeries::monomial(1),
        ])
        .unwrap();
        assert!(!verify_image_in_variety(&g, &x, &c).unwrap());
    }

    #[test]
    fn proximity_rank_general_position_passes() {
        let c = cfg(3);
        let f = ProjectiveMap::new(vec![EntireSeries::monomial(1), EntireSeries::one()]).unwrap();
        let ds = [
            hyp(2, &[(1, &[1, 0])], 1),
            hyp(2, &[(1, &[0, 1])], 1),
            hyp(2, &[(1, &[1, 0]), (1, &[0, 1])], 1),
        ];
        let report =
            sorted_proximity_boundedness(&f, &ds, &VarietySpec::projective_space(1), &c).unwrap();
        let slopes: Vec<Rat> = report.entries.iter().map(|(_, s)| s.clone()).collect();
        assert_eq!(slopes, vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert!(report.passes);
    }

    #[test]
    fn proximity_rank_flags_shared_support() {
        let c = cfg(3);
        let f = ProjectiveMap::new(vec![EntireSeries::monomial(1), EntireSeries::one()]).unwrap();
        // x1 and x1^2 share their zero locus: both pull back to constants
        let ds = [hyp(2, &[(1, &[0, 1])], 1), hyp(2, &[(1, &[0, 2])], 2)];
        let report =
            sorted_proximity_boundedness(&f, &ds, &VarietySpec::projective_space(1), &c).unwrap();
        let slopes: Vec<Rat> = report.entries.iter().map(|(_, s)| s.clone()).collect();
        assert_eq!(slopes, vec![rat_int(2), rat_int(1)]);
        assert!(!report.passes);
    }

    #[test]
    fn proximity_rank_needs_excess_hypersurfaces() {
        let c = cfg(3);
        let f = ProjectiveMap::new(vec![EntireSeries::monomial(1), EntireSeries::one()]).unwrap();
        let ds = [hyp(2, &[(1, &[0, 1])], 1)];
        assert_eq!(
            sorted_proximity_boundedness(&f, &ds, &VarietySpec::projective_space(1), &c),
            Err(Error::TooFewHypersurfaces { q: 1, n: 1 })
        );
    }

    #[test]
    fn gcd_helper() {
        // (z-1)(z-2) and (z-1)(z-3) share z-1
        let a = [rat_int(2), rat_int(-3), rat_int(1)];
        let b = [rat_int(3), rat_int(-4), rat_int(1)];
        let g = poly_gcd(&a, &b);
        assert_eq!(g, vec![rat_int(-1), rat_int(1)]);
        // coprime
        let g = poly_gcd(&[rat_int(1), rat_int(1)], &[rat_int(1)]);
        assert_eq!(g.len(), 1);
    }
}
