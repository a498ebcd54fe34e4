//! Exact evaluation of truncated powers and box splines through the vertex
//! formula of a generic hyperplane arrangement, plus the direction-cone
//! test that selects which local pieces contribute.
//!
//! The evaluation at a point sums, over the column bases whose cone
//! contains the point, the term
//! `(theta_B . u)^(N-r) / ((N-r)! |det B| prod_{x not in B} (theta_B . x - c_x))`
//! where `theta_B` is the arrangement vertex of `B`. The shift `c` has to be
//! in general position; shifts are verified exactly before use and the final
//! value is independent of the chosen shift.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, Rational};
use crate::matroid::{bases, validate_basis, BasisId, VectorList};
use crate::poly::{linear_form, MPoly, Side};

/// A shift vector for the arrangement, carrying the seed that produced it.
/// Construction always verifies the general-position conditions: all
/// vertices exist and are pairwise distinct, and no vertex lies on a
/// hyperplane that does not define it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericShift {
    values: Vec<Rational>,
    seed: Option<u32>,
    verified: bool,
}

impl GenericShift {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Shift entry for the 1-based list position.
    pub fn value_at(&self, index: usize) -> &Rational {
        &self.values[index - 1]
    }

    pub fn seed(&self) -> Option<u32> {
        self.seed
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

fn verify_shift(x: &VectorList, values: &[Rational]) -> Result<BTreeMap<BasisId, Vec<Rational>>> {
    if values.len() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "shift has {} entries for a list of {}",
            values.len(),
            x.len()
        )));
    }
    let all = bases(x)?;
    let mut vertices: BTreeMap<BasisId, Vec<Rational>> = BTreeMap::new();
    for b in &all {
        let rows: Vec<Vec<Rational>> = b.indices().iter().map(|&i| x.vector(i).clone()).collect();
        let rhs: Vec<Rational> = b.indices().iter().map(|&i| values[i - 1].clone()).collect();
        let theta = Matrix::from_rows(rows)?.solve(&rhs)?;
        for i in 1..=x.len() {
            if !b.contains(i) && dot(&theta, x.vector(i)) == values[i - 1] {
                return Err(Error::ShiftNotGeneric(format!(
                    "vertex of {b} lies on the hyperplane of element {i}"
                )));
            }
        }
        vertices.insert(b.clone(), theta);
    }
    let list: Vec<(&BasisId, &Vec<Rational>)> = vertices.iter().collect();
    for (k, (b1, v1)) in list.iter().enumerate() {
        for (b2, v2) in &list[k + 1..] {
            if v1 == v2 {
                return Err(Error::ShiftNotGeneric(format!(
                    "vertices of {b1} and {b2} coincide"
                )));
            }
        }
    }
    Ok(vertices)
}

/// Deterministic generic shift: tries `c_i = M^i` for `M = seed, seed+1, ..`
/// until the exact general-position check passes. The failures are roots of
/// finitely many non-zero polynomials in `M`, so this terminates.
pub fn choose_generic_c(x: &VectorList, seed: u32) -> Result<GenericShift> {
    let seed = seed.max(1);
    for m in seed..seed + 10_000 {
        let base = num::BigInt::from(m);
        let values: Vec<Rational> = (1..=x.len())
            .map(|i| Rational::from_integer(num::pow::pow(base.clone(), i)))
            .collect();
        match verify_shift(x, &values) {
            Ok(_) => {
                return Ok(GenericShift {
                    values,
                    seed: Some(m),
                    verified: true,
                })
            }
            Err(Error::ShiftNotGeneric(_)) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(Error::InternalConsistency(
        "no generic shift found in the scanned seed range".into(),
    ))
}

/// Wraps an explicitly provided shift after verifying it.
pub fn explicit_shift(x: &VectorList, values: Vec<Rational>) -> Result<GenericShift> {
    verify_shift(x, &values)?;
    Ok(GenericShift {
        values,
        seed: None,
        verified: true,
    })
}

/// The vertex of the arrangement attached to each basis: the point paying
/// the shift values on exactly the basis hyperplanes.
pub fn arrangement_vertices(
    x: &VectorList,
    shift: &GenericShift,
) -> Result<BTreeMap<BasisId, Vec<Rational>>> {
    if !shift.is_verified() {
        return Err(Error::ShiftNotGeneric("unverified shift".into()));
    }
    verify_shift(x, shift.values())
}

/// Location of a point relative to the closed simplicial cone of a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeLocation {
    Inside,
    Boundary,
    Outside,
}

/// Classifies `u` against the cone spanned by the basis columns: all basis
/// coordinates positive means inside, a zero coordinate with the rest
/// non-negative means boundary, anything negative means outside.
pub fn cone_contains(x: &VectorList, b: &BasisId, u: &[Rational]) -> Result<ConeLocation> {
    validate_basis(x, b)?;
    let coords = x.columns(b.indices())?.solve(u)?;
    if coords.iter().any(|c| c < &Rational::zero()) {
        return Ok(ConeLocation::Outside);
    }
    if coords.iter().any(Rational::is_zero) {
        return Ok(ConeLocation::Boundary);
    }
    Ok(ConeLocation::Inside)
}

fn term_denominator(
    x: &VectorList,
    b: &BasisId,
    theta: &[Rational],
    shift: &GenericShift,
) -> Result<Rational> {
    let det = x.columns(b.indices())?.determinant()?.abs();
    let mut den = det;
    for i in 1..=x.len() {
        if !b.contains(i) {
            den *= dot(theta, x.vector(i)) - shift.value_at(i);
        }
    }
    Ok(den)
}

/// Exact truncated-power value at `u` by the vertex formula. The point must
/// be strictly inside or strictly outside every basis cone; a boundary hit
/// is an error and the caller perturbs.
pub fn t_spline_eval(x: &VectorList, u: &[Rational], shift: &GenericShift) -> Result<Rational> {
    let vertices = arrangement_vertices(x, shift)?;
    let degree = x.len() - x.dim();
    let mut acc = Rational::zero();
    for (b, theta) in &vertices {
        match cone_contains(x, b, u)? {
            ConeLocation::Boundary => return Err(Error::BoundaryHit),
            ConeLocation::Outside => continue,
            ConeLocation::Inside => {
                let mut num = Rational::one();
                let base = dot(theta, u);
                for _ in 0..degree {
                    num *= &base;
                }
                acc += num / term_denominator(x, b, theta, shift)?;
            }
        }
    }
    Ok(acc / crate::poly::factorial(degree as u32))
}

/// The polynomial piece of the truncated power on the open cell containing
/// `u`: the sum of the vertex-formula terms of the cones around `u`, as a
/// polynomial. Boundary points are rejected like in `t_spline_eval`.
pub fn cell_polynomial(x: &VectorList, u: &[Rational], shift: &GenericShift) -> Result<MPoly> {
    let vertices = arrangement_vertices(x, shift)?;
    let degree = x.len() - x.dim();
    let mut acc = MPoly::zero(Side::T, x.dim());
    for (b, theta) in &vertices {
        match cone_contains(x, b, u)? {
            ConeLocation::Boundary => return Err(Error::BoundaryHit),
            ConeLocation::Outside => continue,
            ConeLocation::Inside => {
                let num = linear_form(theta, Side::T).pow(degree);
                let den = term_denominator(x, b, theta, shift)?;
                acc = acc.add(&num.scale(&den.recip()));
            }
        }
    }
    Ok(acc.scale(&crate::poly::factorial(degree as u32).recip()))
}

/// A polynomial in one formal perturbation parameter, stored as coefficients
/// by ascending power.
pub type EpsPoly = Vec<Rational>;

fn eps_lowest_sign(p: &[Rational]) -> Option<i8> {
    for c in p {
        if c > &Rational::zero() {
            return Some(1);
        }
        if c < &Rational::zero() {
            return Some(-1);
        }
    }
    None
}

fn eps_mul(a: &[Rational], b: &[Rational]) -> EpsPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn eps_add_into(acc: &mut EpsPoly, other: &[Rational]) {
    if acc.len() < other.len() {
        acc.resize(other.len(), Rational::zero());
    }
    for (slot, v) in acc.iter_mut().zip(other) {
        *slot += v;
    }
}

/// Basis coordinates of the flag direction `tau(eps) = sum eps^(i-1) b_i`
/// with respect to the candidate columns, one perturbation polynomial per
/// coordinate.
pub fn tau_cone_coordinates(
    flag: &[Vec<Rational>],
    candidate: &[Vec<Rational>],
) -> Result<Vec<EpsPoly>> {
    let m = Matrix::from_columns(candidate)?;
    if m.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let r = candidate.len();
    let mut coords: Vec<EpsPoly> = vec![vec![Rational::zero(); flag.len()]; r];
    for (power, b) in flag.iter().enumerate() {
        let w = m.solve(b)?;
        for (j, v) in w.into_iter().enumerate() {
            coords[j][power] = v;
        }
    }
    Ok(coords)
}

/// True when the flag direction lies inside the candidate cone for all
/// sufficiently small positive perturbations: every coordinate's lowest
/// non-zero coefficient is positive.
pub fn tau_cone_test(flag: &[Vec<Rational>], candidate: &[Vec<Rational>]) -> Result<bool> {
    let coords = tau_cone_coordinates(flag, candidate)?;
    for p in &coords {
        match eps_lowest_sign(p) {
            Some(1) => continue,
            Some(_) => return Ok(false),
            None => {
                // a vanishing coordinate would force the flag into a proper
                // subspace of the candidate span
                return Err(Error::InternalConsistency(
                    "flag direction has an identically zero cone coordinate".into(),
                ));
            }
        }
    }
    Ok(true)
}

/// One-sided limit value of the truncated power at `u`: evaluates at
/// `u + eps g_1 + .. + eps^r g_r` for the first basis `g` of the list,
/// selects contributing cones by the sign of the lowest perturbation order,
/// and returns the limit for `eps -> 0+`. Agrees with `t_spline_eval`
/// wherever the truncated power is continuous, and never hits boundaries.
pub fn t_spline_eval_limit(
    x: &VectorList,
    u: &[Rational],
    shift: &GenericShift,
) -> Result<Rational> {
    let vertices = arrangement_vertices(x, shift)?;
    let degree = x.len() - x.dim();
    let r = x.dim();
    let greedy = vertices
        .keys()
        .next()
        .expect("spanning list has at least one basis")
        .clone();
    let dirs: Vec<Vec<Rational>> = greedy.indices().iter().map(|&i| x.vector(i).clone()).collect();
    let mut acc: EpsPoly = vec![Rational::zero()];
    for (b, theta) in &vertices {
        let m = x.columns(b.indices())?;
        let base = m.solve(u)?;
        let mut coords: Vec<EpsPoly> = (0..r).map(|j| vec![base[j].clone()]).collect();
        for (k, d) in dirs.iter().enumerate() {
            let w = m.solve(d)?;
            for (j, v) in w.into_iter().enumerate() {
                let poly = &mut coords[j];
                if poly.len() <= k + 1 {
                    poly.resize(k + 2, Rational::zero());
                }
                poly[k + 1] = v;
            }
        }
        let inside = coords.iter().all(|p| eps_lowest_sign(p) == Some(1));
        if !inside {
            continue;
        }
        // numerator (theta . u(eps))^degree as a perturbation polynomial
        let mut lin: EpsPoly = vec![dot(theta, u)];
        for d in &dirs {
            lin.push(dot(theta, d));
        }
        let mut num: EpsPoly = vec![Rational::one()];
        for _ in 0..degree {
            num = eps_mul(&num, &lin);
        }
        let den = term_denominator(x, b, theta, shift)?;
        let inv = den.recip();
        for c in num.iter_mut() {
            *c *= &inv;
        }
        eps_add_into(&mut acc, &num);
    }
    Ok(acc[0].clone() / crate::poly::factorial(degree as u32))
}

/// Exact box-spline value as the alternating sum of truncated-power values
/// over all sub-list shifts. Each summand is evaluated through the
/// one-sided limit so that shifted points landing on cone walls still get
/// the coherent one-sided value.
pub fn box_spline_eval(x: &VectorList, u: &[Rational], shift: &GenericShift) -> Result<Rational> {
    if u.len() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} in dimension {}",
            u.len(),
            x.dim()
        )));
    }
    let n = x.len();
    let mut acc = Rational::zero();
    for mask in 0u64..(1u64 << n) {
        let mut point = u.to_vec();
        let mut sign_negative = false;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                sign_negative = !sign_negative;
                for (slot, v) in point.iter_mut().zip(x.vector(i + 1)) {
                    *slot -= v;
                }
            }
        }
        let value = t_spline_eval_limit(x, &point, shift)?;
        if sign_negative {
            acc -= value;
        } else {
            acc += value;
        }
    }
    Ok(acc)
}

/// Cross-checks the closed-formula polynomial of a basis against direct
/// truncated-power evaluation: samples the flag direction at increasing
/// integer scales until two consecutive samples agree on both routes.
pub fn local_piece_check(z: &VectorList, b: &BasisId, seed: u32) -> Result<bool> {
    let r = z.dim();
    let poly = crate::spaces::r_polynomial(z, b, seed)?;
    let (reoriented, flips) = crate::spaces::reorient_positive(z, b)?;
    let shift = choose_generic_c(&reoriented, seed)?;
    let flag: Vec<Vec<Rational>> = b.indices().iter().map(|&i| z.vector(i).clone()).collect();
    let mut streak = 0;
    for k in 2u64..=100 {
        // integer point k^(r-1) b_1 + k^(r-2) b_2 + .. + b_r along the flag
        let mut point = vec![Rational::zero(); r];
        for (i, bv) in flag.iter().enumerate() {
            let scale = Rational::from_integer(num::pow::pow(num::BigInt::from(k), r - 1 - i));
            for (slot, v) in point.iter_mut().zip(bv) {
                *slot += &scale * v;
            }
        }
        let spline_value = match t_spline_eval(&reoriented, &point, &shift) {
            Ok(v) => v,
            Err(Error::BoundaryHit) => continue,
            Err(other) => return Err(other),
        };
        let adjusted = if flips % 2 == 0 {
            spline_value
        } else {
            -spline_value
        };
        if poly.eval(&point)? == adjusted {
            streak += 1;
            if streak >= 2 {
                return Ok(true);
            }
        } else {
            streak = 0;
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, rat};

    fn list(dim: usize, cols: &[&[i64]]) -> VectorList {
        VectorList::new(
            dim,
            cols.iter()
                .map(|c| c.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn hat_list() -> VectorList {
        list(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    fn rank3_list() -> VectorList {
        list(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 2, 3], &[1, 3, 9]],
        )
    }

    fn v(entries: &[i64]) -> Vec<Rational> {
        entries.iter().map(|&e| rat(e)).collect()
    }

    #[test]
    fn explicit_shift_accepts_the_classic_choice() {
        let shift = explicit_shift(&hat_list(), v(&[0, 0, 1])).unwrap();
        assert!(shift.is_verified());
        assert!(shift.seed().is_none());
    }

    #[test]
    fn seeded_shift_verifies_for_identity_columns() {
        let x = list(2, &[&[1, 0], &[0, 1]]);
        let shift = choose_generic_c(&x, 2).unwrap();
        assert_eq!(shift.seed(), Some(2));
        assert_eq!(shift.values(), &[rat(2), rat(4)]);
    }

    #[test]
    fn seed_advances_past_degenerate_choices() {
        // parallel vectors with equal shifts collide at M = 1
        let x = list(1, &[&[1], &[1]]);
        assert!(explicit_shift(&x, v(&[1, 1])).is_err());
        let shift = choose_generic_c(&x, 1).unwrap();
        assert_eq!(shift.seed(), Some(2));
    }

    #[test]
    fn vertices_of_the_classic_arrangement() {
        let x = hat_list();
        let shift = explicit_shift(&x, v(&[0, 0, 1])).unwrap();
        let vertices = arrangement_vertices(&x, &shift).unwrap();
        let points: Vec<Vec<Rational>> = vertices.values().cloned().collect();
        assert!(points.contains(&v(&[0, 0])));
        assert!(points.contains(&v(&[1, 0])));
        assert!(points.contains(&v(&[0, 1])));
        assert_eq!(points.len(), 3);
    }

    #[test]
    fn vertices_of_identity_columns() {
        let x = list(2, &[&[1, 0], &[0, 1]]);
        let shift = explicit_shift(&x, v(&[1, 1])).unwrap();
        let vertices = arrangement_vertices(&x, &shift).unwrap();
        assert_eq!(vertices.len(), 1);
        assert_eq!(vertices.values().next().unwrap(), &v(&[1, 1]));
    }

    #[test]
    fn vertices_of_rank3_list_are_distinct() {
        let x = rank3_list();
        let shift = choose_generic_c(&x, 2).unwrap();
        let vertices = arrangement_vertices(&x, &shift).unwrap();
        assert_eq!(vertices.len(), 10);
        let mut points: Vec<Vec<Rational>> = vertices.values().cloned().collect();
        points.sort();
        points.dedup();
        assert_eq!(points.len(), 10);
    }

    #[test]
    fn cone_location_examples() {
        let x = hat_list();
        let b12 = BasisId::new(vec![1, 2]).unwrap();
        let b23 = BasisId::new(vec![2, 3]).unwrap();
        let b13 = BasisId::new(vec![1, 3]).unwrap();
        let u = v(&[1, 2]);
        assert_eq!(cone_contains(&x, &b12, &u).unwrap(), ConeLocation::Inside);
        assert_eq!(cone_contains(&x, &b23, &u).unwrap(), ConeLocation::Inside);
        assert_eq!(cone_contains(&x, &b13, &u).unwrap(), ConeLocation::Outside);
        assert_eq!(
            cone_contains(&x, &b12, &v(&[0, 1])).unwrap(),
            ConeLocation::Boundary
        );
    }

    #[test]
    fn truncated_power_matches_min_on_the_quadrant() {
        let x = hat_list();
        let shift = explicit_shift(&x, v(&[0, 0, 1])).unwrap();
        assert_eq!(t_spline_eval(&x, &v(&[1, 2]), &shift).unwrap(), rat(1));
        assert_eq!(t_spline_eval(&x, &v(&[3, 2]), &shift).unwrap(), rat(2));
        assert_eq!(t_spline_eval(&x, &v(&[-1, 1]), &shift).unwrap(), rat(0));
    }

    #[test]
    fn truncated_power_boundary_is_an_error() {
        let x = hat_list();
        let shift = explicit_shift(&x, v(&[0, 0, 1])).unwrap();
        assert_eq!(
            t_spline_eval(&x, &v(&[1, 1]), &shift),
            Err(Error::BoundaryHit)
        );
        // the one-sided limit resolves it by continuity
        assert_eq!(t_spline_eval_limit(&x, &v(&[1, 1]), &shift).unwrap(), rat(1));
    }

    #[test]
    fn truncated_power_is_shift_invariant() {
        let x = hat_list();
        let s1 = choose_generic_c(&x, 2).unwrap();
        let s2 = choose_generic_c(&x, 5).unwrap();
        for point in [[5i64, 2], [1, 7], [4, 9], [12, 12]] {
            let u = v(&point);
            let a = t_spline_eval_limit(&x, &u, &s1).unwrap();
            let b = t_spline_eval_limit(&x, &u, &s2).unwrap();
            assert_eq!(a, b);
            let expected = rat(point[0].min(point[1]).max(0));
            assert_eq!(a, expected);
        }
    }

    #[test]
    fn truncated_power_is_homogeneous() {
        let x = rank3_list();
        let shift = choose_generic_c(&x, 2).unwrap();
        let u = v(&[3, 5, 7]);
        let base = t_spline_eval_limit(&x, &u, &shift).unwrap();
        let scaled: Vec<Rational> = u.iter().map(|c| c * rat(4)).collect();
        let value = t_spline_eval_limit(&x, &scaled, &shift).unwrap();
        // degree N - r = 2
        assert_eq!(value, base * rat(16));
    }

    // Independent oracle for the box spline of the hat list: the fiber
    // { z in [0,1]^3 : x1 z1 + x2 z2 + x3 z3 = u } is a segment in the
    // direction (-1,-1,1); its parameter length is the normalized volume.
    fn hat_box_oracle(u: &[Rational]) -> Rational {
        let one = Rational::one();
        let zero = Rational::zero();
        let upper = [&one, &u[0], &u[1]].into_iter().min().unwrap().clone();
        let lower = [&zero, &(&u[0] - &one), &(&u[1] - &one)]
            .into_iter()
            .max()
            .cloned()
            .unwrap();
        if upper > lower {
            upper - lower
        } else {
            zero
        }
    }

    #[test]
    fn box_spline_examples() {
        let x = hat_list();
        let shift = explicit_shift(&x, v(&[0, 0, 1])).unwrap();
        let half = vec![frac(1, 2), frac(1, 2)];
        assert_eq!(box_spline_eval(&x, &half, &shift).unwrap(), frac(1, 2));
        assert_eq!(box_spline_eval(&x, &v(&[5, 5]), &shift).unwrap(), rat(0));
        let point = vec![frac(3, 4), rat(1)];
        assert_eq!(
            box_spline_eval(&x, &point, &shift).unwrap(),
            hat_box_oracle(&point)
        );
        assert_eq!(hat_box_oracle(&point), frac(3, 4));
    }

    #[test]
    fn box_spline_matches_oracle_on_a_grid() {
        let x = hat_list();
        let shift = choose_generic_c(&x, 2).unwrap();
        for i in 0..=6i64 {
            for j in 0..=6i64 {
                let u = vec![frac(i, 3), frac(j, 3)];
                assert_eq!(
                    box_spline_eval(&x, &u, &shift).unwrap(),
                    hat_box_oracle(&u),
                    "mismatch at ({i}/3, {j}/3)"
                );
            }
        }
    }

    #[test]
    fn tau_cone_test_examples() {
        let x = hat_list();
        // flag of basis (1,3)
        let flag = vec![v(&[1, 0]), v(&[1, 1])];
        let b12 = vec![v(&[1, 0]), v(&[0, 1])];
        let b23 = vec![v(&[0, 1]), v(&[1, 1])];
        assert!(tau_cone_test(&flag, &flag).unwrap());
        assert!(tau_cone_test(&flag, &b12).unwrap());
        assert!(!tau_cone_test(&flag, &b23).unwrap());
        let negated: Vec<Vec<Rational>> =
            flag.iter().map(|c| c.iter().map(|e| -e.clone()).collect()).collect();
        assert!(!tau_cone_test(&flag, &negated).unwrap());
        let _ = x;
    }

    #[test]
    fn tau_coordinates_of_the_flag_itself_are_unit_powers() {
        let flag = vec![v(&[1, 0]), v(&[1, 1])];
        let coords = tau_cone_coordinates(&flag, &flag).unwrap();
        assert_eq!(coords[0], vec![rat(1), rat(0)]);
        assert_eq!(coords[1], vec![rat(0), rat(1)]);
    }

    #[test]
    fn tau_cone_test_rejects_singular_candidate() {
        let flag = vec![v(&[1, 0]), v(&[1, 1])];
        let singular = vec![v(&[1, 1]), v(&[2, 2])];
        assert_eq!(tau_cone_test(&flag, &singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn derivative_of_cell_polynomial_matches_shorter_list() {
        // the piece of the hat-list truncated power at an interior point,
        // derived along x3, equals the piece of the two-column list
        let x = hat_list();
        let shift = explicit_shift(&x, v(&[0, 0, 1])).unwrap();
        let u = v(&[1, 3]);
        let piece = cell_polynomial(&x, &u, &shift).unwrap();
        let shorter = list(2, &[&[1, 0], &[0, 1]]);
        let shift2 = choose_generic_c(&shorter, 2).unwrap();
        let piece2 = cell_polynomial(&shorter, &u, &shift2).unwrap();
        let derived = crate::poly::derive(&piece, &v(&[1, 1])).unwrap();
        assert_eq!(derived, piece2);
    }
}
