//! Exact projective geometry at witness points: Jacobian transversality,
//! line restrictions and intersection profiles, and the generator for the
//! tight (equality) configurations.
//!
//! Nothing here decides global geometric facts. Transversality and general
//! position are certified only at explicitly supplied rational witness
//! points, by exact rank computations over `Z` (fraction-free Bareiss
//! elimination after clearing denominators). That is all the equality
//! computations downstream rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::projective::{Hypersurface, ProjectiveMap, VarietySpec};
use crate::rat::{rat_int, Rat};
use crate::series::EntireSeries;
use crate::valuation::PrimeConfig;

/// A point of `P^N` with rational homogeneous coordinates, scaled so the
/// first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: Vec<Rat>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(Error::ZeroPoint)?;
        Ok(ProjectivePoint {
            coords: coords.into_iter().map(|c| c / &lead).collect(),
        })
    }

    /// `(1, 0, ..., 0)` in `P^N`.
    pub fn first_unit(ambient_dim: usize) -> Self {
        let mut coords = vec![rat_int(0); ambient_dim + 1];
        coords[0] = rat_int(1);
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

/// A line in `P^N` parametrized by `(u, v) ↦ u*a + v*b` with independent
/// direction vectors `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveLine {
    a: Vec<Rat>,
    b: Vec<Rat>,
}

impl ProjectiveLine {
    pub fn new(a: Vec<Rat>, b: Vec<Rat>) -> Result<Self> {
        if a.len() != b.len() || a.len() < 2 {
            return Err(Error::DegenerateLine);
        }
        if rational_matrix_rank(vec![a.clone(), b.clone()]) != 2 {
            return Err(Error::DegenerateLine);
        }
        Ok(ProjectiveLine { a, b })
    }

    /// The line `x_2 = ... = x_N = 0` through `(1,0,...)` and `(0,1,0,...)`.
    pub fn first_coordinate_line(ambient_dim: usize) -> Self {
        let mut a = vec![rat_int(0); ambient_dim + 1];
        let mut b = vec![rat_int(0); ambient_dim + 1];
        a[0] = rat_int(1);
        b[1] = rat_int(1);
        ProjectiveLine { a, b }
    }

    pub fn directions(&self) -> (&[Rat], &[Rat]) {
        (&self.a, &self.b)
    }

    pub fn point_at(&self, u: &Rat, v: &Rat) -> Vec<Rat> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(x, y)| u * x + v * y)
            .collect()
    }
}

/// A homogeneous binary form in `(u, v)`; entry `t` of `coeffs` is the
/// coefficient of `u^{d-t} v^t`. The zero form (a line inside the
/// hypersurface) is legal and flagged by [`BinaryForm::is_zero`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Exact multiset of rational projective roots of a binary form, plus the
/// degree of the rational-root-free residual factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineProfile {
    /// `(root in P^1, multiplicity)`, roots canonicalized and sorted.
    pub roots: Vec<(ProjectivePoint, usize)>,
    /// Degree of the factor with no rational roots (not factored further).
    pub residual_degree: usize,
}

impl LineProfile {
    /// Multiplicity of the parameter point `(u0 : v0)`; 0 if absent.
    pub fn multiplicity_at(&self, point: &ProjectivePoint) -> usize {
        self.roots
            .iter()
            .find(|(r, _)| r == point)
            .map_or(0, |(_, m)| *m)
    }
}

/// Rank of the matrix of gradients `(∂Q_k/∂x_j)(P)`, for polynomials all
/// vanishing at the witness point `P`.
pub fn jacobian_rank_at(polys: &[MultiPoly], point: &ProjectivePoint) -> Result<usize> {
    let mut rows = Vec::with_capacity(polys.len());
    for (index, q) in polys.iter().enumerate() {
        if !q.eval_at_point(point.coords())?.is_zero() {
            return Err(Error::NonVanishingAtWitness { index });
        }
        let row: Vec<Rat> = (0..q.nvars())
            .map(|j| q.partial_derivative(j).eval_at_point(point.coords()))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    Ok(rational_matrix_rank(rows))
}

/// `true` iff the listed hypersurfaces and the variety's equations meet
/// transversally at `P`: the combined gradient matrix has full rank
/// `|Ds| + codim X`. All polynomials must vanish at `P`.
pub fn transversality_check(
    hypersurfaces: &[Hypersurface],
    variety: &VarietySpec,
    point: &ProjectivePoint,
) -> Result<bool> {
    let polys: Vec<MultiPoly> = hypersurfaces
        .iter()
        .map(|d| d.poly().clone())
        .chain(variety.equations().iter().cloned())
        .collect();
    let rank = jacobian_rank_at(&polys, point)?;
    Ok(rank == hypersurfaces.len() + variety.codim())
}

/// Substitute the line's parametrization into the defining polynomial,
/// producing a binary form of the hypersurface's degree (the zero form when
/// the line lies inside the hypersurface).
pub fn restrict_to_line(q: &Hypersurface, line: &ProjectiveLine) -> Result<BinaryForm> {
    let (a, b) = line.directions();
    Ok(BinaryForm {
        coeffs: q.poly().restrict_to_pencil(a, b)?,
    })
}

/// All rational projective roots of a nonzero binary form, with exact
/// multiplicities obtained by repeated exact division; whatever has no
/// rational root is reported as a residual degree only. Rational root
/// candidates come from divisor pairs of the outer integer coefficients,
/// so this is intended for the small forms arising from line restrictions.
pub fn line_intersection_profile(form: &BinaryForm) -> Result<LineProfile> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    let degree = form.degree();
    let mut roots: Vec<(ProjectivePoint, usize)> = Vec::new();
    // (1 : 0) divides out as a power of v
    let lead_zeros = form.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if lead_zeros > 0 {
        roots.push((
            ProjectivePoint::new(vec![rat_int(1), rat_int(0)]).unwrap(),
            lead_zeros,
        ));
    }
    // dehomogenize the remaining factor at u = 1: g(t) with t = v/u
    let g: Vec<Rat> = form.coeffs[lead_zeros..].to_vec();
    let tail_degree = g.iter().rposition(|c| !c.is_zero()).unwrap();
    // (0 : 1) accounts for the drop in the t-degree
    let at_infinity = g.len() - 1 - tail_degree;
    if at_infinity > 0 {
        roots.push((
            ProjectivePoint::new(vec![rat_int(0), rat_int(1)]).unwrap(),
            at_infinity,
        ));
    }
    let mut residual: Vec<Rat> = g[..=tail_degree].to_vec();
    for (root, mult) in rational_roots(&residual) {
        let point = ProjectivePoint::new(vec![rat_int(1), root.clone()]).unwrap();
        roots.push((point, mult));
        for _ in 0..mult {
            residual = divide_by_linear(&residual, &root).expect("verified root");
        }
    }
    roots.sort_by(|x, y| x.0.coords().cmp(y.0.coords()));
    let profile = LineProfile {
        roots,
        residual_degree: residual.len() - 1,
    };
    let total: usize = profile.roots.iter().map(|(_, m)| m).sum();
    debug_assert_eq!(total + profile.residual_degree, degree);
    Ok(profile)
}

/// Rational roots with multiplicities of a dense polynomial with nonzero
/// constant term, by the rational root theorem.
fn rational_roots(poly: &[Rat]) -> Vec<(Rat, usize)> {
    let degree = poly.len() - 1;
    if degree == 0 {
        return vec![];
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in poly {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    for p in divisors(&ints[0]) {
        for q in divisors(&ints[degree]) {
            for sign in [1, -1] {
                let candidate = Rat::new(&p * BigInt::from(sign), q.clone());
                if out.iter().any(|(r, _)| *r == candidate) {
                    continue;
                }
                let mut mult = 0;
                let mut current = poly.to_vec();
                while let Some(quotient) = divide_by_linear(&current, &candidate) {
                    mult += 1;
                    current = quotient;
                    if current.len() <= 1 {
                        break;
                    }
                }
                if mult > 0 {
                    out.push((candidate, mult));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Quotient of `poly` by `(t - root)` when the division is exact.
fn divide_by_linear(poly: &[Rat], root: &Rat) -> Option<Vec<Rat>> {
    if poly.len() <= 1 {
        return None;
    }
    let mut quotient = vec![rat_int(0); poly.len() - 1];
    let mut carry = rat_int(0);
    for k in (0..poly.len() - 1).rev() {
        carry = &poly[k + 1] + root * &carry;
        quotient[k] = carry.clone();
    }
    let remainder = &poly[0] + root * &carry;
    remainder.is_zero().then_some(quotient)
}

/// Positive divisors of a nonzero integer, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            large.push(&n / &i);
            small.push(i.clone());
        }
        i += 1;
    }
    if small.last() == large.last() {
        large.pop();
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rank over `Q`, computed fraction-free: each row is scaled to integers by
/// its denominator lcm, then eliminated with Bareiss's exact-division
/// scheme.
pub fn rational_matrix_rank(rows: Vec<Vec<Rat>>) -> usize {
    let int_rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for c in &row {
                lcm = lcm.lcm(c.denom());
            }
            row.into_iter()
                .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    bareiss_rank(int_rows)
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// The explicit tight configuration: degree-`d` hypersurfaces through a
/// common point `P`, each meeting the line `L` only at `P` (for the first
/// `n - 1`), together with the line map `(z, 1, 0, ..., 0)` that achieves
/// equality in the defect bound.
#[derive(Debug, Clone)]
pub struct SharpnessConfig {
    pub variety_dim: usize,
    pub degree: u32,
    pub prime: u64,
    pub hypersurfaces: Vec<Hypersurface>,
    pub map: ProjectiveMap,
    pub witness: ProjectivePoint,
    pub line: ProjectiveLine,
}

/// Generate and verify the tight configuration for dimension `n >= 1` and
/// degree `d >= 1`.
///
/// For `n >= 2` the hypersurfaces are `x1^d + x0^{d-1} x_{i+1}` for
/// `i = 1..n-1` and `x0^{d-1} x1 + x2^d`; for `d = 1` the last one
/// degenerates to a repeat of the first, so the hyperplane `x1` is used
/// instead. For `n = 1` the single hypersurface is
/// `x1 * prod_{j=1}^{d-1} (x1 - (1 + j p) x0)`, whose non-origin
/// intersections all sit at `|z| = 1` because `1 + j p` are p-adic units.
///
/// Before returning, the generator verifies at the witness point: common
/// membership and transversality, that each of the first `n - 1`
/// restrictions to `L` is a nonzero constant times `v^d`, and that the last
/// restriction has a simple root at `P`. A failure rejects the
/// configuration.
pub fn sharpness_family(n: usize, d: u32, cfg: &PrimeConfig) -> Result<SharpnessConfig> {
    if n < 1 || d < 1 {
        return Err(Error::FamilyVerification(
            "dimension and degree must be positive".into(),
        ));
    }
    let nvars = n + 1;
    let mut hypersurfaces = Vec::with_capacity(n);
    if n >= 2 {
        for i in 1..n {
            // x1^d + x0^{d-1} * x_{i+1}
            let mut lead = vec![0u32; nvars];
            lead[1] = d;
            let mut mixed = vec![0u32; nvars];
            mixed[0] = d - 1;
            mixed[i + 1] = 1;
            let poly = MultiPoly::from_terms(nvars, [(rat_int(1), lead), (rat_int(1), mixed)])?;
            hypersurfaces.push(Hypersurface::new(poly, d)?);
        }
        let last = if d >= 2 {
            // x0^{d-1} x1 + x2^d
            let mut mixed = vec![0u32; nvars];
            mixed[0] = d - 1;
            mixed[1] = 1;
            let mut pure = vec![0u32; nvars];
            pure[2] = d;
            MultiPoly::from_terms(nvars, [(rat_int(1), mixed), (rat_int(1), pure)])?
        } else {
            MultiPoly::variable(nvars, 1)
        };
        hypersurfaces.push(Hypersurface::new(last, d)?);
    } else {
        // x1 * prod_{j=1}^{d-1} (x1 - (1 + j*p) * x0)
        let mut poly = MultiPoly::variable(nvars, 1);
        let x0 = MultiPoly::variable(nvars, 0);
        let x1 = MultiPoly::variable(nvars, 1);
        for j in 1..d {
            let unit = rat_int(1 + (j as i64) * cfg.prime() as i64);
            poly = poly.mul(&x1.add(&x0.scale(&-unit)));
        }
        hypersurfaces.push(Hypersurface::new(poly, d)?);
    }

    let mut coords = vec![EntireSeries::monomial(1), EntireSeries::one()];
    coords.resize(nvars, EntireSeries::zero());
    let map = ProjectiveMap::new(coords)?;
    let witness = ProjectivePoint::first_unit(n);
    let line = ProjectiveLine::first_coordinate_line(n);

    // Verify every property the equality computation relies on.
    let ambient = VarietySpec::projective_space(n);
    if !transversality_check(&hypersurfaces, &ambient, &witness)? {
        return Err(Error::FamilyVerification(
            "hypersurfaces are not transverse at the witness point".into(),
        ));
    }
    for (i, h) in hypersurfaces.iter().enumerate().take(n - 1) {
        let form = restrict_to_line(h, &line)?;
        let pure_v_power = form.coeffs().iter().take(d as usize).all(Zero::is_zero)
            && !form.coeffs()[d as usize].is_zero();
        if !pure_v_power {
            return Err(Error::FamilyVerification(format!(
                "restriction of hypersurface {i} to the line is not a multiple of v^{d}"
            )));
        }
    }
    let last_form = restrict_to_line(hypersurfaces.last().unwrap(), &line)?;
    let profile = line_intersection_profile(&last_form)?;
    let p_param = ProjectivePoint::new(vec![rat_int(1), rat_int(0)]).unwrap();
    if profile.multiplicity_at(&p_param) != 1 {
        return Err(Error::FamilyVerification(
            "line does not meet the last hypersurface simply at the witness point".into(),
        ));
    }

    Ok(SharpnessConfig {
        variety_dim: n,
        degree: d,
        prime: cfg.prime(),
        hypersurfaces,
        map,
        witness,
        line,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn poly3(terms: &[(i64, [u32; 3])]) -> MultiPoly {
        MultiPoly::from_terms(3, terms.iter().map(|(c, e)| (rat_int(*c), e.to_vec()))).unwrap()
    }

    fn point(coords: &[i64]) -> ProjectivePoint {
        ProjectivePoint::new(coords.iter().map(|&c| rat_int(c)).collect()).unwrap()
    }

    #[test]
    fn point_canonicalization() {
        let p = ProjectivePoint::new(vec![rat_int(0), rat_int(3), rat_int(6)]).unwrap();
        assert_eq!(p.coords(), &[rat_int(0), rat_int(1), rat_int(2)]);
        assert_eq!(
            ProjectivePoint::new(vec![rat_int(0), rat_int(0)]),
            Err(Error::ZeroPoint)
        );
    }

    #[test]
    fn jacobian_rank_examples() {
        let q1 = poly3(&[(1, [0, 2, 0]), (1, [1, 0, 1])]);
        let q2 = poly3(&[(1, [1, 1, 0]), (1, [0, 0, 2])]);
        let p = point(&[1, 0, 0]);
        assert_eq!(jacobian_rank_at(&[q1, q2], &p).unwrap(), 2);

        let x0 = MultiPoly::variable(2, 0);
        assert_eq!(jacobian_rank_at(&[x0], &point(&[0, 1])).unwrap(), 1);

        let sq = poly3(&[(1, [0, 2, 0])]);
        let mixed = poly3(&[(1, [0, 1, 1])]);
        assert_eq!(
            jacobian_rank_at(&[sq, mixed], &point(&[1, 0, 0])).unwrap(),
            0
        );
    }

    #[test]
    fn jacobian_rank_rejects_nonvanishing() {
        let q = poly3(&[(1, [0, 2, 0]), (1, [1, 0, 1])]);
        assert_eq!(
            jacobian_rank_at(&[q], &point(&[1, 1, 1])),
            Err(Error::NonVanishingAtWitness { index: 0 })
        );
    }

    #[test]
    fn jacobian_rank_invariances() {
        let q1 = poly3(&[(1, [0, 2, 0]), (1, [1, 0, 1])]);
        let q2 = poly3(&[(1, [1, 1, 0]), (1, [0, 0, 2])]);
        let p = point(&[1, 0, 0]);
        let base = jacobian_rank_at(&[q1.clone(), q2.clone()], &p).unwrap();
        // rescaling the witness point
        let scaled = ProjectivePoint::new(vec![rat(7, 2), rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(
            jacobian_rank_at(&[q1.clone(), q2.clone()], &scaled).unwrap(),
            base
        );
        // invertible linear change of the polynomial list
        let mixed1 = q1.scale(&rat_int(2)).add(&q2.scale(&rat_int(3)));
        let mixed2 = q2.scale(&rat_int(-1));
        assert_eq!(jacobian_rank_at(&[mixed1, mixed2], &p).unwrap(), base);
    }

    #[test]
    fn transversality_examples() {
        let ambient2 = VarietySpec::projective_space(2);
        let p = point(&[1, 0, 0]);
        let d1 = Hypersurface::new(poly3(&[(1, [0, 2, 0]), (1, [1, 0, 1])]), 2).unwrap();
        let d2 = Hypersurface::new(poly3(&[(1, [1, 1, 0]), (1, [0, 0, 2])]), 2).unwrap();
        assert!(transversality_check(&[d1, d2], &ambient2, &p).unwrap());

        let sq = Hypersurface::new(poly3(&[(1, [0, 2, 0])]), 2).unwrap();
        let plane = Hypersurface::new(poly3(&[(1, [0, 0, 1])]), 1).unwrap();
        assert!(!transversality_check(&[sq, plane], &ambient2, &p).unwrap());

        let x1 = Hypersurface::new(MultiPoly::variable(4, 1), 1).unwrap();
        let p3 = point(&[1, 0, 0, 0]);
        assert!(transversality_check(&[x1], &VarietySpec::projective_space(3), &p3).unwrap());
    }

    #[test]
    fn restriction_examples() {
        let line = ProjectiveLine::first_coordinate_line(2);
        let d1 = Hypersurface::new(poly3(&[(1, [0, 2, 0]), (1, [1, 0, 1])]), 2).unwrap();
        let form = restrict_to_line(&d1, &line).unwrap();
        assert_eq!(form.coeffs(), &[rat_int(0), rat_int(0), rat_int(1)]);

        let d2 = Hypersurface::new(poly3(&[(1, [1, 1, 0]), (1, [0, 0, 2])]), 2).unwrap();
        let form = restrict_to_line(&d2, &line).unwrap();
        assert_eq!(form.coeffs(), &[rat_int(0), rat_int(1), rat_int(0)]);

        let d3 = Hypersurface::new(poly3(&[(1, [0, 0, 1])]), 1).unwrap();
        let form = restrict_to_line(&d3, &line).unwrap();
        assert!(form.is_zero());
        assert_eq!(line_intersection_profile(&form), Err(Error::ZeroForm));
    }

    #[test]
    fn profile_examples() {
        // v^2: double root at (1 : 0)
        let form = BinaryForm {
            coeffs: vec![rat_int(0), rat_int(0), rat_int(1)],
        };
        let profile = line_intersection_profile(&form).unwrap();
        assert_eq!(profile.roots, vec![(point(&[1, 0]), 2)]);
        assert_eq!(profile.residual_degree, 0);

        // u*v: simple roots at both coordinate points
        let form = BinaryForm {
            coeffs: vec![rat_int(0), rat_int(1), rat_int(0)],
        };
        let profile = line_intersection_profile(&form).unwrap();
        assert_eq!(
            profile.roots,
            vec![(point(&[0, 1]), 1), (point(&[1, 0]), 1)]
        );

        // u^2 + v^2 has no rational roots
        let form = BinaryForm {
            coeffs: vec![rat_int(1), rat_int(0), rat_int(1)],
        };
        let profile = line_intersection_profile(&form).unwrap();
        assert!(profile.roots.is_empty());
        assert_eq!(profile.residual_degree, 2);

        // mixed: v * (v - 2u) * (u^2 + v^2)
        let form = BinaryForm {
            coeffs: vec![rat_int(0), rat_int(-2), rat_int(1), rat_int(-2), rat_int(1)],
        };
        let profile = line_intersection_profile(&form).unwrap();
        let total: usize = profile.roots.iter().map(|(_, m)| m).sum();
        assert_eq!(total + profile.residual_degree, 4);
        assert_eq!(profile.multiplicity_at(&point(&[1, 0])), 1);
        assert_eq!(profile.multiplicity_at(&point(&[1, 2])), 1);
    }

    #[test]
    fn bareiss_matches_gauss() {
        // rational-elimination oracle on a few fixed matrices
        let cases: Vec<(Vec<Vec<i64>>, usize)> = vec![
            (vec![vec![1, 2], vec![2, 4]], 1),
            (vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]], 2),
            (vec![vec![0, 0], vec![0, 0]], 0),
            (vec![vec![0, 1, 0], vec![0, 0, 2], vec![3, 0, 0]], 3),
            (
                vec![vec![2, 0, 4, 6], vec![1, 0, 2, 3], vec![0, 5, 0, 1]],
                2,
            ),
        ];
        for (m, expected) in cases {
            let rows: Vec<Vec<Rat>> = m
                .iter()
                .map(|r| r.iter().map(|&c| rat(c, 2)).collect())
                .collect();
            assert_eq!(rational_matrix_rank(rows), expected, "{m:?}");
        }
    }

    #[test]
    fn sharpness_family_n2_d2() {
        let cfg = PrimeConfig::new(3).unwrap();
        let family = sharpness_family(2, 2, &cfg).unwrap();
        assert_eq!(family.hypersurfaces.len(), 2);
        assert_eq!(family.hypersurfaces[0].poly().to_string(), "x1^2 + x0*x2");
        assert_eq!(family.hypersurfaces[1].poly().to_string(), "x2^2 + x0*x1");
        // pullbacks are the constant 1 and z^{d-1}
        let pull0 = family.hypersurfaces[0].pullback(&family.map, &cfg).unwrap();
        assert_eq!(pull0, EntireSeries::one());
        let pull1 = family.hypersurfaces[1].pullback(&family.map, &cfg).unwrap();
        assert_eq!(pull1, EntireSeries::monomial(1));
    }

    #[test]
    fn sharpness_family_pullback_shape_holds_generally() {
        for (n, d, p) in [
            (1usize, 1u32, 3u64),
            (1, 4, 5),
            (2, 1, 2),
            (3, 3, 5),
            (4, 2, 7),
        ] {
            let cfg = PrimeConfig::new(p).unwrap();
            let family = sharpness_family(n, d, &cfg).unwrap();
            for (i, h) in family.hypersurfaces.iter().enumerate() {
                let pulled = h.pullback(&family.map, &cfg).unwrap();
                if i + 1 < n {
                    assert!(pulled.is_constant(), "n={n} d={d} i={i}");
                } else {
                    // degree d - 1 with nonzero constant term contributions
                    assert_eq!(pulled.degree(), Some(d as usize - 1), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn sharpness_rejects_bad_parameters() {
        let cfg = PrimeConfig::new(3).unwrap();
        assert!(sharpness_family(0, 2, &cfg).is_err());
        assert!(sharpness_family(2, 0, &cfg).is_err());
    }
}
