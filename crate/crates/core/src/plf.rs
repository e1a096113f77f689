//! Exact piecewise-linear functions of the log-radius `s = log_p r`.
//!
//! A [`PLFunction`] is a continuous piecewise-linear function on an interval
//! with rational breakpoints and slopes, stored in canonical form: adjacent
//! segments always have distinct slopes, breakpoints lie strictly inside the
//! domain, and the reference point is a fixed function of the domain. Two
//! functions are equal as values on their domain iff their canonical forms
//! are structurally equal.
//!
//! Invariants:
//! - `slopes.len() == breakpoints.len() + 1` (one slope per segment,
//!   including the unbounded end segments);
//! - breakpoints are strictly increasing and interior to the domain;
//! - values are determined by the anchor `(anchor_s, anchor_value)` and the
//!   slope profile, so continuity holds by construction.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rat::{format_rat, rat_int, Rat};
use crate::valuation::ExtLog;

/// Interval endpoint: a finite rational or one of the infinities.
/// Finite endpoints are always included in the interval.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Endpoint {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Endpoint::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::Finite(x) => write!(f, "{}", format_rat(x)),
            Endpoint::PosInf => write!(f, "inf"),
        }
    }
}

/// A nonempty interval `[lo, hi] ∩ R`; infinite endpoints mean unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Endpoint,
    hi: Endpoint,
}

impl Interval {
    pub fn all() -> Self {
        Interval {
            lo: Endpoint::NegInf,
            hi: Endpoint::PosInf,
        }
    }

    /// `(-∞, hi]`
    pub fn at_most(hi: Rat) -> Self {
        Interval {
            lo: Endpoint::NegInf,
            hi: Endpoint::Finite(hi),
        }
    }

    /// `[lo, ∞)`
    pub fn at_least(lo: Rat) -> Self {
        Interval {
            lo: Endpoint::Finite(lo),
            hi: Endpoint::PosInf,
        }
    }

    pub fn closed(lo: Rat, hi: Rat) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval);
        }
        Ok(Interval {
            lo: Endpoint::Finite(lo),
            hi: Endpoint::Finite(hi),
        })
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo > hi || lo == Endpoint::PosInf || hi == Endpoint::NegInf {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    pub fn contains(&self, s: &Rat) -> bool {
        let p = Endpoint::Finite(s.clone());
        self.lo <= p && p <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True for a single-point interval `[a, a]`.
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Canonical reference point: 0 clamped into the interval.
    fn reference_point(&self) -> Rat {
        let zero = rat_int(0);
        match (&self.lo, &self.hi) {
            (Endpoint::Finite(l), _) if *l > zero => l.clone(),
            (_, Endpoint::Finite(h)) if *h < zero => h.clone(),
            _ => zero,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A continuous piecewise-linear function with rational breakpoints and
/// slopes, exact at every rational point of its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    domain: Interval,
    anchor_s: Rat,
    anchor_value: Rat,
    breakpoints: Vec<Rat>,
    slopes: Vec<Rat>,
}

/// Canonical serialized form with exact fraction strings, used by the CLI
/// dump artifact and the browser demo.
#[derive(Debug, Clone, Serialize)]
pub struct PlfCanonical {
    pub domain_lo: String,
    pub domain_hi: String,
    pub reference_s: String,
    pub reference_value: String,
    pub breakpoints: Vec<String>,
    pub slopes: Vec<String>,
}

impl PLFunction {
    /// Build from raw data and canonicalize. `slopes` must have exactly one
    /// more entry than `breakpoints`; breakpoints must be strictly
    /// increasing; the anchor must lie in the domain.
    pub fn from_raw(
        domain: Interval,
        anchor_s: Rat,
        anchor_value: Rat,
        breakpoints: Vec<Rat>,
        slopes: Vec<Rat>,
    ) -> Result<Self> {
        if domain.is_point() {
            return Err(Error::DegenerateInterval);
        }
        if slopes.len() != breakpoints.len() + 1 {
            return Err(Error::EmptyFunctionList);
        }
        if !domain.contains(&anchor_s) {
            return Err(Error::OutsideDomain(format_rat(&anchor_s)));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::OutsideDomain(format_rat(&w[1])));
            }
        }
        let mut f = PLFunction {
            domain,
            anchor_s,
            anchor_value,
            breakpoints,
            slopes,
        };
        f.canonicalize();
        Ok(f)
    }

    /// The constant function on the whole line.
    pub fn constant(value: Rat) -> Self {
        PLFunction {
            domain: Interval::all(),
            anchor_s: rat_int(0),
            anchor_value: value,
            breakpoints: vec![],
            slopes: vec![rat_int(0)],
        }
    }

    /// `s ↦ slope·s + value_at_zero` on the whole line.
    pub fn linear(slope: Rat, value_at_zero: Rat) -> Self {
        PLFunction {
            domain: Interval::all(),
            anchor_s: rat_int(0),
            anchor_value: value_at_zero,
            breakpoints: vec![],
            slopes: vec![slope],
        }
    }

    fn canonicalize(&mut self) {
        // Drop breakpoints at or outside the domain boundary, keeping the
        // slope of the segment on the interior side.
        let lo = self.domain.lo.clone();
        let hi = self.domain.hi.clone();
        let mut start = 0;
        while start < self.breakpoints.len()
            && Endpoint::Finite(self.breakpoints[start].clone()) <= lo
        {
            start += 1;
        }
        let mut end = self.breakpoints.len();
        while end > start && Endpoint::Finite(self.breakpoints[end - 1].clone()) >= hi {
            end -= 1;
        }
        if start > 0 || end < self.breakpoints.len() {
            self.breakpoints = self.breakpoints[start..end].to_vec();
            self.slopes = self.slopes[start..=end].to_vec();
        }
        // Merge adjacent segments with equal slopes.
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut slopes = vec![self.slopes[0].clone()];
        for (bp, slope) in self.breakpoints.iter().zip(self.slopes[1..].iter()) {
            if slope == slopes.last().unwrap() {
                continue;
            }
            bps.push(bp.clone());
            slopes.push(slope.clone());
        }
        self.breakpoints = bps;
        self.slopes = slopes;
        // Re-anchor at the canonical reference point.
        let reference = self.domain.reference_point();
        let value = self.anchor_value.clone() + self.delta(&self.anchor_s, &reference);
        self.anchor_s = reference;
        self.anchor_value = value;
    }

    /// Signed change of the function between two points (no domain check).
    fn delta(&self, from: &Rat, to: &Rat) -> Rat {
        match from.cmp(to) {
            Ordering::Equal => rat_int(0),
            Ordering::Greater => -self.accumulate(to, from),
            Ordering::Less => self.accumulate(from, to),
        }
    }

    /// Integral of the slope step function over `[a, b]` with `a <= b`.
    fn accumulate(&self, a: &Rat, b: &Rat) -> Rat {
        let mut total = rat_int(0);
        for (seg_lo, seg_hi, slope) in self.segments() {
            if slope.is_zero() {
                continue;
            }
            let lo = match seg_lo.finite() {
                Some(l) if l > a => l.clone(),
                _ => a.clone(),
            };
            let hi = match seg_hi.finite() {
                Some(h) if h < b => h.clone(),
                _ => b.clone(),
            };
            if lo < hi {
                total += slope * (hi - lo);
            }
        }
        total
    }

    /// Iterate over `(lo, hi, slope)` for each maximal segment.
    fn segments(&self) -> impl Iterator<Item = (Endpoint, Endpoint, &Rat)> {
        let n = self.slopes.len();
        (0..n).map(move |i| {
            let lo = if i == 0 {
                self.domain.lo.clone()
            } else {
                Endpoint::Finite(self.breakpoints[i - 1].clone())
            };
            let hi = if i == n - 1 {
                self.domain.hi.clone()
            } else {
                Endpoint::Finite(self.breakpoints[i].clone())
            };
            (lo, hi, &self.slopes[i])
        })
    }

    /// Slope of the segment containing `s`, where `s` is strictly inside a
    /// segment (not a breakpoint).
    fn slope_at_interior(&self, s: &Rat) -> &Rat {
        let k = self.breakpoints.partition_point(|b| b < s);
        &self.slopes[k]
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    /// Exact evaluation at a rational point of the domain.
    pub fn eval(&self, s: &Rat) -> Result<Rat> {
        if !self.domain.contains(s) {
            return Err(Error::OutsideDomain(format_rat(s)));
        }
        Ok(self.anchor_value.clone() + self.delta(&self.anchor_s, s))
    }

    /// Exact pointwise sum on the intersected domain.
    pub fn add(&self, other: &PLFunction) -> Result<PLFunction> {
        let domain = self
            .domain
            .intersect(&other.domain)
            .filter(|d| !d.is_point())
            .ok_or(Error::EmptyDomainIntersection)?;
        let bps = merge_breakpoints(&domain, &[self, other]);
        let mut slopes = Vec::with_capacity(bps.len() + 1);
        for piece in pieces(&domain, &bps) {
            let rep = representative(&piece);
            slopes.push(self.slope_at_interior(&rep) + other.slope_at_interior(&rep));
        }
        let reference = domain.reference_point();
        let value = self.eval(&reference)? + other.eval(&reference)?;
        PLFunction::from_raw(domain, reference, value, bps, slopes)
    }

    /// Pointwise scalar multiple.
    pub fn scale(&self, factor: &Rat) -> PLFunction {
        let mut f = self.clone();
        f.anchor_value *= factor;
        for s in &mut f.slopes {
            *s *= factor;
        }
        f.canonicalize();
        f
    }

    pub fn neg(&self) -> PLFunction {
        self.scale(&rat_int(-1))
    }

    pub fn sub(&self, other: &PLFunction) -> Result<PLFunction> {
        self.add(&other.neg())
    }

    /// Shift the values by a constant.
    pub fn shift(&self, offset: &Rat) -> PLFunction {
        let mut f = self.clone();
        f.anchor_value += offset;
        f
    }

    /// Exact pointwise maximum of a nonempty list of functions. Breakpoints
    /// include every crossing point; crossings are rational because slopes
    /// and values are.
    pub fn max_of(fs: &[PLFunction]) -> Result<PLFunction> {
        let (first, rest) = fs.split_first().ok_or(Error::EmptyFunctionList)?;
        let mut acc = first.clone();
        for f in rest {
            acc = acc.max_with(f)?;
        }
        Ok(acc)
    }

    fn max_with(&self, other: &PLFunction) -> Result<PLFunction> {
        let domain = self
            .domain
            .intersect(&other.domain)
            .filter(|d| !d.is_point())
            .ok_or(Error::EmptyDomainIntersection)?;
        let grid = merge_breakpoints(&domain, &[self, other]);
        let mut bps: Vec<Rat> = Vec::new();
        let mut slopes: Vec<Rat> = Vec::new();
        let mut push = |bp: Option<Rat>, slope: Rat| {
            if let Some(b) = bp {
                bps.push(b);
            }
            slopes.push(slope);
        };
        let mut first_piece = true;
        for piece in pieces(&domain, &grid) {
            let rep = representative(&piece);
            let sf = self.slope_at_interior(&rep).clone();
            let sg = other.slope_at_interior(&rep).clone();
            let dv = self.eval(&rep)? - other.eval(&rep)?;
            let ds = &sf - &sg;
            let boundary = |first: &mut bool, b: &Endpoint| -> Option<Rat> {
                if *first {
                    *first = false;
                    None
                } else {
                    Some(b.finite().expect("interior boundary is finite").clone())
                }
            };
            if ds.is_zero() {
                let winner = if dv.is_negative() { sg } else { sf };
                let b = boundary(&mut first_piece, &piece.0);
                push(b, winner);
                continue;
            }
            // self - other crosses zero at x*; sign is that of ds to the right.
            let xstar = &rep - &dv / &ds;
            let xs = Endpoint::Finite(xstar.clone());
            if piece.0 < xs && xs < piece.1 {
                let (left, right) = if ds.is_positive() { (sg, sf) } else { (sf, sg) };
                let b = boundary(&mut first_piece, &piece.0);
                push(b, left);
                push(Some(xstar), right);
            } else {
                let on_right = xs <= piece.0;
                let winner = if on_right == ds.is_positive() { sf } else { sg };
                let b = boundary(&mut first_piece, &piece.0);
                push(b, winner);
            }
        }
        let reference = domain.reference_point();
        let value = self.eval(&reference)?.max(other.eval(&reference)?);
        PLFunction::from_raw(domain, reference, value, bps, slopes)
    }

    /// Slope of the final (unbounded) segment. Errors if the domain is
    /// bounded above.
    pub fn eventual_slope(&self) -> Result<Rat> {
        if self.domain.hi != Endpoint::PosInf {
            return Err(Error::BoundedAbove);
        }
        Ok(self.slopes.last().unwrap().clone())
    }

    /// `Some(c)` iff the function is identically `c` on the window.
    /// The window must be contained in the domain.
    pub fn is_constant_on(&self, window: &Interval) -> Result<Option<Rat>> {
        if !self.domain.contains_interval(window) {
            return Err(Error::WindowOutsideDomain);
        }
        if let (Endpoint::Finite(l), true) = (&window.lo, window.is_point()) {
            return Ok(Some(self.eval(l)?));
        }
        for (seg_lo, seg_hi, slope) in self.segments() {
            if slope.is_zero() {
                continue;
            }
            // Nonzero slope matters iff the segment overlaps the window's
            // interior.
            let overlaps = seg_lo < window.hi && window.lo < seg_hi;
            if overlaps {
                return Ok(None);
            }
        }
        let reference = window.reference_point();
        Ok(Some(self.eval(&reference)?))
    }

    /// Restrict to a window; the intersection must be a nondegenerate
    /// interval.
    pub fn restrict(&self, window: &Interval) -> Result<PLFunction> {
        let domain = self
            .domain
            .intersect(window)
            .filter(|d| !d.is_point())
            .ok_or(Error::EmptyDomainIntersection)?;
        let reference = domain.reference_point();
        let value = self.eval(&reference)?;
        PLFunction::from_raw(
            domain,
            reference,
            value,
            self.breakpoints.clone(),
            self.slopes.clone(),
        )
    }

    /// Exact infimum over `window ∩ domain`; `-∞` when the function is
    /// unbounded below there.
    pub fn inf_on(&self, window: &Interval) -> Result<ExtLog> {
        let dom = self
            .domain
            .intersect(window)
            .ok_or(Error::EmptyDomainIntersection)?;
        if dom.is_point() {
            let p = dom.lo.finite().unwrap();
            return Ok(ExtLog::Finite(self.eval(p)?));
        }
        let f = self.restrict(&dom)?;
        if f.domain.lo == Endpoint::NegInf && f.slopes.first().unwrap().is_positive() {
            return Ok(ExtLog::NegInf);
        }
        if f.domain.hi == Endpoint::PosInf && f.slopes.last().unwrap().is_negative() {
            return Ok(ExtLog::NegInf);
        }
        let mut candidates: Vec<Rat> = Vec::new();
        if let Some(l) = f.domain.lo.finite() {
            candidates.push(f.eval(l)?);
        }
        if let Some(h) = f.domain.hi.finite() {
            candidates.push(f.eval(h)?);
        }
        for bp in &f.breakpoints {
            candidates.push(f.eval(bp)?);
        }
        Ok(ExtLog::Finite(
            candidates.into_iter().min().expect("nonempty candidates"),
        ))
    }

    /// Canonical serialized form with exact fraction strings.
    pub fn to_canonical(&self) -> PlfCanonical {
        PlfCanonical {
            domain_lo: self.domain.lo.to_string(),
            domain_hi: self.domain.hi.to_string(),
            reference_s: format_rat(&self.anchor_s),
            reference_value: format_rat(&self.anchor_value),
            breakpoints: self.breakpoints.iter().map(format_rat).collect(),
            slopes: self.slopes.iter().map(format_rat).collect(),
        }
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{domain {}; f({}) = {}; breakpoints [",
            self.domain,
            format_rat(&self.anchor_s),
            format_rat(&self.anchor_value)
        )?;
        for (i, b) in self.breakpoints.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(b))?;
        }
        write!(f, "]; slopes [")?;
        for (i, s) in self.slopes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(s))?;
        }
        write!(f, "]}}")
    }
}

/// Union of the functions' breakpoints lying strictly inside `domain`.
fn merge_breakpoints(domain: &Interval, fs: &[&PLFunction]) -> Vec<Rat> {
    let mut all: Vec<Rat> = fs
        .iter()
        .flat_map(|f| f.breakpoints.iter().cloned())
        .filter(|b| {
            let b = Endpoint::Finite(b.clone());
            domain.lo < b && b < domain.hi
        })
        .collect();
    all.sort();
    all.dedup();
    all
}

/// The maximal pieces of `domain` cut by `bps`.
fn pieces(domain: &Interval, bps: &[Rat]) -> Vec<(Endpoint, Endpoint)> {
    let mut out = Vec::with_capacity(bps.len() + 1);
    let mut lo = domain.lo.clone();
    for b in bps {
        out.push((lo.clone(), Endpoint::Finite(b.clone())));
        lo = Endpoint::Finite(b.clone());
    }
    out.push((lo, domain.hi.clone()));
    out
}

/// A rational point strictly inside a nondegenerate piece.
fn representative(piece: &(Endpoint, Endpoint)) -> Rat {
    match (&piece.0, &piece.1) {
        (Endpoint::Finite(a), Endpoint::Finite(b)) => (a + b) / rat_int(2),
        (Endpoint::NegInf, Endpoint::Finite(b)) => b - rat_int(1),
        (Endpoint::Finite(a), Endpoint::PosInf) => a + rat_int(1),
        _ => rat_int(0),
    }
}
