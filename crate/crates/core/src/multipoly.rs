//! Sparse multivariate polynomials over `Q`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order
//! is deterministic and zero coefficients are never stored. These are the
//! defining polynomials of hypersurfaces and varieties; the operations the
//! rest of the crate needs are evaluation at rational points, composition
//! with tuples of entire series (pullback), partial derivatives for witness
//! Jacobians, and restriction to parametrized lines.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{format_rat, rat_int, Rat};
use crate::series::EntireSeries;
use crate::valuation::PrimeConfig;

/// A sparse polynomial in `nvars` variables `x0..x{nvars-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Build from `(coefficient, exponents)` pairs; repeated exponent
    /// vectors are summed and zero terms dropped. All exponent vectors must
    /// have length `nvars`.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Rat, Vec<u32>)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (coeff, exps) in terms {
            if exps.len() != nvars {
                return Err(Error::VariableCountMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            let entry = map.entry(exps).or_insert_with(|| rat_int(0));
            *entry += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { nvars, terms: map })
    }

    /// The single monomial `x_var` (degree 1).
    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[var] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, rat_int(1));
        MultiPoly { nvars, terms }
    }

    /// The monomial `coeff * prod x_i^{exps[i]}`.
    pub fn monomial(coeff: Rat, exps: Vec<u32>) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Every term has total degree exactly `d` (and the polynomial is
    /// nonzero).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        !self.is_zero() && self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (exps, coeff) in &other.terms {
            let entry = terms.entry(exps.clone()).or_insert_with(|| rat_int(0));
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        if factor.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(exps).or_insert_with(|| rat_int(0));
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = MultiPoly::monomial(rat_int(1), vec![0; self.nvars]);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut lowered = exps.clone();
            lowered[var] = e - 1;
            let entry = terms.entry(lowered).or_insert_with(|| rat_int(0));
            *entry += coeff * rat_int(e as i64);
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn eval_at_point(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = rat_int(0);
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Compose with a tuple of entire series: `Q(f_0, ..., f_N)`.
    /// Truncations and tail certificates propagate through the series
    /// arithmetic. Coordinate powers are computed once and shared across
    /// monomials.
    pub fn eval_at_series(
        &self,
        coords: &[EntireSeries],
        cfg: &PrimeConfig,
    ) -> Result<EntireSeries> {
        if coords.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: coords.len(),
            });
        }
        let mut max_exp = vec![0u32; self.nvars];
        for exps in self.terms.keys() {
            for (m, &e) in max_exp.iter_mut().zip(exps) {
                *m = (*m).max(e);
            }
        }
        let powers: Vec<Vec<EntireSeries>> = coords
            .iter()
            .zip(&max_exp)
            .map(|(f, &m)| {
                let mut table = Vec::with_capacity(m as usize + 1);
                table.push(EntireSeries::one());
                for e in 1..=m as usize {
                    table.push(table[e - 1].mul(f, cfg));
                }
                table
            })
            .collect();
        let mut total = EntireSeries::zero();
        for (exps, coeff) in &self.terms {
            let mut term = EntireSeries::one();
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[j][e as usize], cfg);
                }
            }
            total = total.add(&term.scale(coeff, cfg), cfg);
        }
        Ok(total)
    }

    /// Substitute the linear parametrization `x_j = a_j*u + b_j*v` and
    /// collect a binary form in `(u, v)`; entry `t` of the result is the
    /// coefficient of `u^{d-t} v^t` where `d` is the total degree. Requires
    /// a homogeneous polynomial so that the result is a form.
    pub fn restrict_to_pencil(&self, a: &[Rat], b: &[Rat]) -> Result<Vec<Rat>> {
        if a.len() != self.nvars || b.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: a.len().min(b.len()),
            });
        }
        let d = self.total_degree().ok_or(Error::ZeroPolynomial)? as usize;
        let mut out = vec![rat_int(0); d + 1];
        for (exps, coeff) in &self.terms {
            // expand prod_j (a_j u + b_j v)^{e_j} by convolving binomials
            let mut factor = vec![coeff.clone()];
            for (j, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![rat_int(0); factor.len() + 1];
                    for (t, c) in factor.iter().enumerate() {
                        next[t] += c * &a[j];
                        next[t + 1] += c * &b[j];
                    }
                    factor = next;
                }
            }
            for (t, c) in factor.into_iter().enumerate() {
                out[t] += c;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let constant = exps.iter().all(|&e| e == 0);
            if !coeff.is_one() || constant {
                write!(f, "{}", format_rat(coeff))?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (j, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if first_var {
                    first_var = false;
                } else {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "x{j}")?;
                } else {
                    write!(f, "x{j}^{e}")?;
                }
            }
            let _ = first_var;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p_from(nvars: usize, terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_terms(nvars, terms.iter().map(|(c, e)| (rat_int(*c), e.to_vec()))).unwrap()
    }

    #[test]
    fn degree_and_homogeneity() {
        // x1^2 + x0*x2
        let q = p_from(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])]);
        assert_eq!(q.total_degree(), Some(2));
        assert!(q.is_homogeneous_of(2));
        assert!(!q.is_homogeneous_of(3));
        let mixed = p_from(2, &[(1, &[1, 0]), (1, &[1, 1])]);
        assert!(!mixed.is_homogeneous_of(1));
    }

    #[test]
    fn cancellation_keeps_form_sparse() {
        let q = p_from(2, &[(2, &[1, 0]), (-2, &[1, 0])]);
        assert!(q.is_zero());
    }

    #[test]
    fn evaluation_at_points() {
        let q = p_from(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])]);
        let p = [rat_int(1), rat_int(0), rat_int(0)];
        assert_eq!(q.eval_at_point(&p).unwrap(), rat_int(0));
        let p = [rat_int(2), rat_int(3), rat(1, 2)];
        assert_eq!(q.eval_at_point(&p).unwrap(), rat_int(10));
    }

    #[test]
    fn derivatives() {
        let q = p_from(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])]);
        assert_eq!(q.partial_derivative(0), p_from(3, &[(1, &[0, 0, 1])]));
        assert_eq!(q.partial_derivative(1), p_from(3, &[(2, &[0, 1, 0])]));
        assert_eq!(q.partial_derivative(2), p_from(3, &[(1, &[1, 0, 0])]));
    }

    #[test]
    fn series_composition() {
        let cfg = PrimeConfig::new(3).unwrap();
        let z = EntireSeries::monomial(1);
        let one = EntireSeries::one();
        let zero = EntireSeries::zero();
        // Q = x1^2 + x0*x2 at (z, 1, 0) -> 1
        let q = p_from(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])]);
        let coords = [z.clone(), one.clone(), zero.clone()];
        assert_eq!(
            q.eval_at_series(&coords, &cfg).unwrap(),
            EntireSeries::one()
        );
        // Q = x0*x1 + x2^2 at (z, 1, 0) -> z
        let q = p_from(3, &[(1, &[1, 1, 0]), (1, &[0, 0, 2])]);
        assert_eq!(q.eval_at_series(&coords, &cfg).unwrap(), z);
    }

    #[test]
    fn pencil_restriction() {
        // line (u, v) -> (u, v, 0) in P^2
        let a = [rat_int(1), rat_int(0), rat_int(0)];
        let b = [rat_int(0), rat_int(1), rat_int(0)];
        let q = p_from(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])]);
        // x1^2 + x0 x2 restricts to v^2
        assert_eq!(
            q.restrict_to_pencil(&a, &b).unwrap(),
            vec![rat_int(0), rat_int(0), rat_int(1)]
        );
        // x0 x1 + x2^2 restricts to u v
        let q = p_from(3, &[(1, &[1, 1, 0]), (1, &[0, 0, 2])]);
        assert_eq!(
            q.restrict_to_pencil(&a, &b).unwrap(),
            vec![rat_int(0), rat_int(1), rat_int(0)]
        );
        // x2 restricts to the zero form
        let q = p_from(3, &[(1, &[0, 0, 1])]);
        assert_eq!(
            q.restrict_to_pencil(&a, &b).unwrap(),
            vec![rat_int(0), rat_int(0)]
        );
    }

    #[test]
    fn display_sorted_terms() {
        let q = p_from(3, &[(1, &[1, 0, 1]), (3, &[0, 2, 0])]);
        assert_eq!(q.to_string(), "3*x1^2 + x0*x2");
    }
}
