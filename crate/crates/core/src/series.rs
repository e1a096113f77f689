//! Truncated entire functions on `K`: Gauss norms, Newton polygons, and
//! exact zero counting in closed disks.
//!
//! An [`EntireSeries`] stores a finite head of rational coefficients
//! `a_0..a_T`. Without a tail certificate the series *is* that polynomial.
//! With a certificate `(c, b)` asserting `v_p(a_i) >= c*i + b` for all
//! `i > T`, every derived function carries a validity window — the largest
//! downward-closed set of `s = log_p r` on which the head provably dominates
//! the omitted tail — and operations refuse to evaluate outside it rather
//! than approximate.
//!
//! The Gauss norm `log_p|f|_{p^s} = max_i (log_p|a_i| + i*s)` is the upper
//! envelope of lines, computed through the Newton polygon (the lower convex
//! hull of `(i, v_p(a_i))`): envelope slopes are the hull vertex indices and
//! envelope breakpoints are the hull edge slopes. Roots of `f` have
//! log-radius equal to an edge slope, with multiplicity the edge width, which
//! is what makes disk zero counting and the counting function exact.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::plf::{Interval, PLFunction};
use crate::rat::{format_rat, rat_int, Rat};
use crate::valuation::{vp_rat, PrimeConfig};

/// What is known about the coefficients beyond the stored head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// No terms beyond the head: the series is exactly a polynomial.
    Polynomial,
    /// `v_p(a_i) >= slope*i + offset` for every `i` past the truncation
    /// order.
    Certified { slope: Rat, offset: Rat },
}

/// A truncated entire function over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntireSeries {
    coeffs: Vec<Rat>,
    tail: Tail,
}

impl EntireSeries {
    /// An exact polynomial; trailing zero coefficients are trimmed.
    pub fn polynomial(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        EntireSeries {
            coeffs,
            tail: Tail::Polynomial,
        }
    }

    /// A truncated series with a tail certificate
    /// `v_p(a_i) >= slope*i + offset` for `i` past the head. The head length
    /// is kept as given, zeros included: they are genuine coefficient
    /// information.
    pub fn certified(coeffs: Vec<Rat>, slope: Rat, offset: Rat) -> Self {
        EntireSeries {
            coeffs,
            tail: Tail::Certified { slope, offset },
        }
    }

    pub fn zero() -> Self {
        EntireSeries {
            coeffs: vec![],
            tail: Tail::Polynomial,
        }
    }

    pub fn one() -> Self {
        EntireSeries::polynomial(vec![rat_int(1)])
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![rat_int(0); k + 1];
        coeffs[k] = rat_int(1);
        EntireSeries {
            coeffs,
            tail: Tail::Polynomial,
        }
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.tail, Tail::Polynomial)
    }

    /// Identically zero. A certified series with an all-zero head is not
    /// "zero" — its tail is unknown — but norm and polygon operations reject
    /// it since nothing can be certified.
    pub fn is_zero(&self) -> bool {
        self.is_polynomial() && self.coeffs.iter().all(Zero::is_zero)
    }

    /// Order of vanishing at 0 as far as the head shows.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Degree, defined for exact polynomials only.
    pub fn degree(&self) -> Option<usize> {
        match self.tail {
            Tail::Polynomial => self.coeffs.iter().rposition(|c| !c.is_zero()),
            Tail::Certified { .. } => None,
        }
    }

    /// Lowest nonzero coefficient `(index, a_index)`.
    pub fn lowest_coefficient(&self) -> Option<(usize, &Rat)> {
        let k = self.ord()?;
        Some((k, &self.coeffs[k]))
    }

    pub fn is_constant(&self) -> bool {
        match self.tail {
            Tail::Polynomial => self.degree().unwrap_or(0) == 0,
            Tail::Certified { .. } => false,
        }
    }

    fn truncation_order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Exact pointwise sum.
    pub fn add(&self, other: &Self, cfg: &PrimeConfig) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        match (&self.tail, &other.tail) {
            (Tail::Polynomial, Tail::Polynomial) => {
                let n = self.coeffs.len().max(other.coeffs.len());
                let mut coeffs = vec![rat_int(0); n];
                for (k, c) in self.coeffs.iter().enumerate() {
                    coeffs[k] += c;
                }
                for (k, c) in other.coeffs.iter().enumerate() {
                    coeffs[k] += c;
                }
                EntireSeries::polynomial(coeffs)
            }
            _ => {
                let head = match (&self.tail, &other.tail) {
                    (Tail::Polynomial, _) => other.truncation_order(),
                    (_, Tail::Polynomial) => self.truncation_order(),
                    _ => self.truncation_order().min(other.truncation_order()),
                };
                let mut coeffs = vec![rat_int(0); head + 1];
                for (k, item) in coeffs.iter_mut().enumerate() {
                    if let Some(c) = self.coeffs.get(k) {
                        *item += c;
                    }
                    if let Some(c) = other.coeffs.get(k) {
                        *item += c;
                    }
                }
                let slope = common_certificate_slope(self, other);
                let bf = global_linear_bound(self, &slope, cfg);
                let bg = global_linear_bound(other, &slope, cfg);
                let offset = match (bf, bg) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!("both operands nonzero"),
                };
                EntireSeries::certified(coeffs, slope, offset)
            }
        }
    }

    /// Cauchy product, truncated at the largest certifiable order; the tail
    /// certificate of a product is the sum of the factors' global linear
    /// bounds at their common slope.
    pub fn mul(&self, other: &Self, cfg: &PrimeConfig) -> Self {
        if self.is_zero() || other.is_zero() {
            return EntireSeries::zero();
        }
        match (&self.tail, &other.tail) {
            (Tail::Polynomial, Tail::Polynomial) => {
                let mut coeffs = vec![rat_int(0); self.coeffs.len() + other.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.coeffs.iter().enumerate() {
                        coeffs[i + j] += a * b;
                    }
                }
                EntireSeries::polynomial(coeffs)
            }
            _ => {
                let head = match (&self.tail, &other.tail) {
                    (Tail::Polynomial, _) => other.truncation_order(),
                    (_, Tail::Polynomial) => self.truncation_order(),
                    _ => self.truncation_order().min(other.truncation_order()),
                };
                let mut coeffs = vec![rat_int(0); head + 1];
                for (i, a) in self.coeffs.iter().enumerate().take(head + 1) {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.coeffs.iter().enumerate().take(head + 1 - i) {
                        coeffs[i + j] += a * b;
                    }
                }
                let slope = common_certificate_slope(self, other);
                let bf = global_linear_bound(self, &slope, cfg);
                let bg = global_linear_bound(other, &slope, cfg);
                let offset = match (bf, bg) {
                    (Some(a), Some(b)) => a + b,
                    // a zero polynomial was caught above
                    _ => unreachable!("both operands nonzero"),
                };
                EntireSeries::certified(coeffs, slope, offset)
            }
        }
    }

    pub fn scale(&self, factor: &Rat, cfg: &PrimeConfig) -> Self {
        if factor.is_zero() {
            return EntireSeries::zero();
        }
        let coeffs = self.coeffs.iter().map(|c| c * factor).collect();
        match &self.tail {
            Tail::Polynomial => EntireSeries::polynomial(coeffs),
            Tail::Certified { slope, offset } => {
                let v = vp_rat(factor, cfg).expect("factor is nonzero");
                EntireSeries::certified(coeffs, slope.clone(), offset + rat_int(v))
            }
        }
    }

    pub fn pow(&self, exp: u32, cfg: &PrimeConfig) -> Self {
        let mut acc = EntireSeries::one();
        for _ in 0..exp {
            acc = acc.mul(self, cfg);
        }
        acc
    }

    /// The window of `s` on which the head's Gauss norm is certified to be
    /// the true Gauss norm of the full series: the whole line for exact
    /// polynomials, `(-∞, hi]` for certified truncations.
    pub fn validity_window(&self, cfg: &PrimeConfig) -> Result<Interval> {
        match &self.tail {
            Tail::Polynomial => Ok(Interval::all()),
            Tail::Certified { slope, offset } => {
                let hull = self.hull(cfg)?;
                let crossing = tail_crossing(&hull, self.truncation_order(), slope, offset);
                Ok(Interval::at_most(crossing.min(slope.clone())))
            }
        }
    }

    /// Support points `(i, v_p(a_i))` of the head.
    fn support(&self, cfg: &PrimeConfig) -> Vec<(usize, Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| vp_rat(c, cfg).map(|v| (i, rat_int(v))))
            .collect()
    }

    fn hull(&self, cfg: &PrimeConfig) -> Result<Vec<(usize, Rat)>> {
        let support = self.support(cfg);
        if support.is_empty() {
            return Err(Error::ZeroSeries);
        }
        Ok(lower_hull(support))
    }

    /// Head envelope `max_i (log_p|a_i| + i*s)` evaluated directly from the
    /// support (used for window checks, independently of the hull).
    fn head_envelope_at(&self, s: &Rat, cfg: &PrimeConfig) -> Option<Rat> {
        self.support(cfg)
            .into_iter()
            .map(|(i, v)| rat_int(i as i64) * s - v)
            .max()
    }

    /// `s ↦ log_p|f|_{p^s}` as an exact convex piecewise-linear function on
    /// the validity window.
    pub fn gauss_norm(&self, cfg: &PrimeConfig) -> Result<PLFunction> {
        let hull = self.hull(cfg)?;
        let domain = self.validity_window(cfg)?;
        let breakpoints = edge_slopes(&hull);
        let slopes: Vec<Rat> = hull.iter().map(|(i, _)| rat_int(*i as i64)).collect();
        let reference = match domain.hi().finite() {
            Some(h) if *h < rat_int(0) => h.clone(),
            _ => rat_int(0),
        };
        let value = self
            .head_envelope_at(&reference, cfg)
            .expect("nonempty support");
        PLFunction::from_raw(domain, reference, value, breakpoints, slopes)
    }

    /// The Newton polygon of the head.
    pub fn newton_polygon(&self, cfg: &PrimeConfig) -> Result<NewtonPolygon> {
        Ok(NewtonPolygon {
            vertices: self.hull(cfg)?,
        })
    }

    /// Number of zeros (with multiplicity) in the closed disk of radius
    /// `p^s`: the total width of Newton-polygon edges of slope `<= s`,
    /// equivalently the largest coefficient index attaining the Gauss-norm
    /// max at `s`. Zeros at the origin are always inside.
    ///
    /// For certified truncations the count is only certain where the head
    /// *strictly* dominates the tail bound, so the exact right endpoint of
    /// the validity window is rejected when the domination there is an
    /// equality.
    pub fn zero_count(&self, s: &Rat, cfg: &PrimeConfig) -> Result<usize> {
        let hull = self.hull(cfg)?;
        if let Tail::Certified { slope, offset } = &self.tail {
            let outside = || Error::OutsideValidityWindow(format_rat(s));
            if s > slope {
                return Err(outside());
            }
            let head = self.head_envelope_at(s, cfg).expect("nonempty support");
            let line = tail_bound_line(self.truncation_order(), slope, offset, s);
            if head <= line {
                return Err(outside());
            }
        }
        let mut count = hull[0].0;
        for pair in hull.windows(2) {
            let slope = segment_slope(&pair[0], &pair[1]);
            if slope <= *s {
                count = pair[1].0;
            }
        }
        Ok(count)
    }

    /// The counting function `N(s)` as an exact convex piecewise-linear
    /// function: slope at `s` equals `zero_count(s)`, each root at the
    /// origin contributes `s`, and each root `w` with `log_p|w| <= s`
    /// contributes `s - log_p|w|`. Built directly from the Newton polygon;
    /// no numerical integration.
    pub fn counting_plf(&self, cfg: &PrimeConfig) -> Result<PLFunction> {
        let hull = self.hull(cfg)?;
        let domain = self.validity_window(cfg)?;
        let breakpoints = edge_slopes(&hull);
        let slopes: Vec<Rat> = hull.iter().map(|(i, _)| rat_int(*i as i64)).collect();
        let reference = match domain.hi().finite() {
            Some(h) if *h < rat_int(0) => h.clone(),
            _ => rat_int(0),
        };
        let mut value = rat_int(hull[0].0 as i64) * &reference;
        for pair in hull.windows(2) {
            let width = rat_int((pair[1].0 - pair[0].0) as i64);
            let log_radius = segment_slope(&pair[0], &pair[1]);
            if log_radius < reference {
                value += width * (&reference - log_radius);
            }
        }
        PLFunction::from_raw(domain, reference, value, breakpoints, slopes)
    }
}

impl fmt::Display for EntireSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", format_rat(c))?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{}*", format_rat(c))?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Tail::Certified { slope, offset } = &self.tail {
            write!(
                f,
                " + O(v >= {}*i + {} for i > {})",
                format_rat(slope),
                format_rat(offset),
                self.truncation_order()
            )?;
        }
        Ok(())
    }
}

/// The Newton polygon: lower convex hull of `(i, v_p(a_i))` over the support,
/// with strictly increasing indices and strictly increasing edge slopes. The
/// first vertex index is the order of vanishing at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<(usize, Rat)>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[(usize, Rat)] {
        &self.vertices
    }

    /// Edge slopes, strictly increasing. These are the log-radii of the
    /// roots; the matching edge widths are their multiplicities.
    pub fn slopes(&self) -> Vec<Rat> {
        edge_slopes(&self.vertices)
    }
}

fn segment_slope(a: &(usize, Rat), b: &(usize, Rat)) -> Rat {
    (&b.1 - &a.1) / rat_int((b.0 - a.0) as i64)
}

fn edge_slopes(hull: &[(usize, Rat)]) -> Vec<Rat> {
    hull.windows(2)
        .map(|pair| segment_slope(&pair[0], &pair[1]))
        .collect()
}

/// Lower convex hull of points with strictly increasing x, keeping vertices
/// whose edge slopes strictly increase.
fn lower_hull(points: Vec<(usize, Rat)>) -> Vec<(usize, Rat)> {
    let mut hull: Vec<(usize, Rat)> = Vec::with_capacity(points.len());
    for p in points {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            if segment_slope(a, b) >= segment_slope(b, &p) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Upper bound for tail terms at `s <= slope`: the supremum of
/// `log_p|a_i| + i*s` allowed by the certificate over `i > T`, attained at
/// `i = T + 1`.
fn tail_bound_line(truncation: usize, slope: &Rat, offset: &Rat, s: &Rat) -> Rat {
    let t1 = rat_int(truncation as i64 + 1);
    &t1 * (s - slope) - offset
}

/// The unique point where the head envelope stops dominating the tail bound
/// line. The difference is strictly decreasing since every head slope is at
/// most `T < T + 1`.
fn tail_crossing(hull: &[(usize, Rat)], truncation: usize, slope: &Rat, offset: &Rat) -> Rat {
    let t1 = rat_int(truncation as i64 + 1);
    let line_intercept = -(&t1 * slope) - offset;
    let mu = edge_slopes(hull);
    for (k, (i, v)) in hull.iter().enumerate() {
        // head envelope on segment k is i*s - v; solve i*s - v = (T+1)*s + intercept
        let denom = &t1 - rat_int(*i as i64);
        let s = (-v - &line_intercept) / denom;
        let left_ok = k == 0 || mu[k - 1] <= s;
        let right_ok = k == mu.len() || s <= mu[k];
        if left_ok && right_ok {
            return s;
        }
    }
    unreachable!("head envelope always crosses the steeper tail line");
}

/// Global lower bound `v_p(a_i) >= slope*i + B` valid for *all* `i`, or
/// `None` for a zero polynomial (vacuous). Combines the exact head
/// valuations with the certificate rebased to the requested slope; the
/// requested slope must not exceed the certificate slope.
fn global_linear_bound(f: &EntireSeries, slope: &Rat, cfg: &PrimeConfig) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    let mut fold = |candidate: Rat| {
        best = Some(match best.take() {
            None => candidate,
            Some(b) => b.min(candidate),
        });
    };
    for (i, v) in f.support(cfg) {
        fold(v - slope * rat_int(i as i64));
    }
    if let Tail::Certified {
        slope: cert_slope,
        offset,
    } = &f.tail
    {
        debug_assert!(slope <= cert_slope);
        let t1 = rat_int(f.truncation_order() as i64 + 1);
        fold(offset + (cert_slope - slope) * t1);
    }
    best
}

/// Slope at which both operands' certificates can be stated: the minimum of
/// the certified slopes present (polynomials impose no restriction).
fn common_certificate_slope(f: &EntireSeries, g: &EntireSeries) -> Rat {
    match (&f.tail, &g.tail) {
        (Tail::Certified { slope: a, .. }, Tail::Certified { slope: b, .. }) => {
            a.clone().min(b.clone())
        }
        (Tail::Certified { slope, .. }, _) | (_, Tail::Certified { slope, .. }) => slope.clone(),
        (Tail::Polynomial, Tail::Polynomial) => rat_int(0),
    }
}
