//! The dual pair of polynomial spaces attached to a vector list and a
//! distinguished set of its bases: the span of the products of linear forms
//! (P-side), the kernel of the cocircuit ideal (D-side), their canonical
//! dual bases, power-ideal kernels, and the Hilbert-series identities.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fem::flag_partition;
use crate::linalg::{dot, Matrix, Rational};
use crate::matroid::{
    activity_sets, bases, bases_after_contract, bases_after_delete, cocircuits, contract, delete,
    flats, is_coloop, loops, validate_basis, BasisId, VectorList,
};
use crate::poly::{
    hilbert_vector, kernel_of_differential_ideal, linear_form, pair, product_of_forms, same_span,
    span_rank, HilbertVector, MPoly, Side,
};
use crate::spline::{arrangement_vertices, choose_generic_c, tau_cone_test};

/// An ordered list of homogeneous polynomials spanning a space, optionally
/// labelled by the bases that produced them, with its Hilbert vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceBasis {
    side: Side,
    elements: Vec<MPoly>,
    labels: Option<Vec<BasisId>>,
    hilbert: HilbertVector,
}

impl SpaceBasis {
    /// Builds the basis, verifying linear independence (echelon rank must
    /// match the element count) and homogeneity of every element.
    pub fn new(elements: Vec<MPoly>, labels: Option<Vec<BasisId>>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::EmptyBases);
        };
        let side = first.side();
        if let Some(ref l) = labels {
            if l.len() != elements.len() {
                return Err(Error::LabelMismatch);
            }
        }
        if span_rank(&elements)? != elements.len() {
            return Err(Error::InternalConsistency(
                "basis elements are linearly dependent".into(),
            ));
        }
        let hilbert = hilbert_vector(&elements)?;
        Ok(SpaceBasis {
            side,
            elements,
            labels,
            hilbert,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn elements(&self) -> &[MPoly] {
        &self.elements
    }

    pub fn labels(&self) -> Option<&[BasisId]> {
        self.labels.as_deref()
    }

    pub fn hilbert(&self) -> &HilbertVector {
        &self.hilbert
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }
}

fn sorted_restriction(x: &VectorList, restricted: &[BasisId]) -> Result<Vec<BasisId>> {
    if restricted.is_empty() {
        return Err(Error::EmptyBases);
    }
    let mut sorted = restricted.to_vec();
    sorted.sort();
    sorted.dedup();
    for b in &sorted {
        validate_basis(x, b)?;
    }
    Ok(sorted)
}

/// The product of the linear forms of the elements outside the basis and
/// its externally active set; the canonical P-side basis element of `b`.
pub fn q_polynomial(x: &VectorList, b: &BasisId) -> Result<MPoly> {
    let (_, external) = activity_sets(x, b)?;
    let survivors: Vec<&Vec<Rational>> = (1..=x.len())
        .filter(|&i| !b.contains(i) && !external.contains(&i))
        .map(|i| x.vector(i))
        .collect();
    Ok(product_of_forms(survivors, Side::S, x.dim()))
}

/// The P-side basis `{Q_B : B in restricted}', labelled and in the sorted
/// order of the bases. Dependence among the products signals an upstream
/// bug, so it is reported as an internal-consistency error.
pub fn p_space_basis(x: &VectorList, restricted: &[BasisId]) -> Result<SpaceBasis> {
    let sorted = sorted_restriction(x, restricted)?;
    let elements: Vec<MPoly> = sorted
        .iter()
        .map(|b| q_polynomial(x, b))
        .collect::<Result<_>>()?;
    SpaceBasis::new(elements, Some(sorted))
}

/// The D-side space as the kernel of the cocircuit ideal: generators are
/// the products of linear forms over the cocircuits of the restricted basis
/// set, and the kernel is computed degree by degree up to `N - r` (or the
/// supplied override).
pub fn d_space_basis(
    x: &VectorList,
    restricted: &[BasisId],
    max_degree: Option<usize>,
) -> Result<SpaceBasis> {
    let sorted = sorted_restriction(x, restricted)?;
    let generators: Vec<MPoly> = cocircuits(x, &sorted)?
        .into_iter()
        .map(|c| {
            let vs: Vec<&Vec<Rational>> = c.iter().map(|&i| x.vector(i)).collect();
            product_of_forms(vs, Side::S, x.dim())
        })
        .collect();
    let bound = max_degree.unwrap_or_else(|| x.len() - x.dim());
    let kernel = kernel_of_differential_ideal(&generators, bound)?;
    SpaceBasis::new(kernel, None)
}

/// Flips the negatively oriented elements of `z` relative to the flag of
/// `b`, returning the reoriented list and the number of flips.
pub fn reorient_positive(z: &VectorList, b: &BasisId) -> Result<(VectorList, usize)> {
    if let Some(&l) = loops(z).iter().next() {
        return Err(Error::UnexpectedLoop(l));
    }
    let levels = flag_partition(z, b)?;
    let mut negatives: BTreeSet<usize> = BTreeSet::new();
    for level in &levels {
        negatives.extend(level.negative.iter().copied());
    }
    let vectors: Vec<Vec<Rational>> = (1..=z.len())
        .map(|i| {
            let v = z.vector(i);
            if negatives.contains(&i) {
                v.iter().map(|c| -c.clone()).collect()
            } else {
                v.clone()
            }
        })
        .collect();
    Ok((VectorList::new(z.dim(), vectors)?, negatives.len()))
}

/// The canonical D-side polynomial of a basis inside the list `z`: the
/// local piece of the truncated power of the reoriented list around the
/// flag direction of `b`, computed by the vertex formula restricted to the
/// cones containing that direction, with the reorientation parity applied.
///
/// The shift is chosen generically for the reoriented list from `seed`; the
/// result is independent of that choice.
pub fn r_polynomial(z: &VectorList, b: &BasisId, seed: u32) -> Result<MPoly> {
    validate_basis(z, b)?;
    let (reoriented, flips) = reorient_positive(z, b)?;
    let n = z.len();
    let r = z.dim();
    let degree = n - r;
    let shift = choose_generic_c(&reoriented, seed)?;
    let vertices = arrangement_vertices(&reoriented, &shift)?;
    let flag: Vec<Vec<Rational>> = b.indices().iter().map(|&i| z.vector(i).clone()).collect();
    let mut acc = MPoly::zero(Side::T, r);
    for (candidate, theta) in &vertices {
        let cols: Vec<Vec<Rational>> = candidate
            .indices()
            .iter()
            .map(|&i| reoriented.vector(i).clone())
            .collect();
        if !tau_cone_test(&flag, &cols)? {
            continue;
        }
        let mut den = reoriented.columns(candidate.indices())?.determinant()?.abs();
        for i in 1..=n {
            if !candidate.contains(i) {
                den *= dot(theta, reoriented.vector(i)) - shift.value_at(i);
            }
        }
        let num = linear_form(theta, Side::T).pow(degree);
        acc = acc.add(&num.scale(&den.recip()));
    }
    acc = acc.scale(&crate::poly::factorial(degree as u32).recip());
    if flips % 2 == 1 {
        acc = acc.neg();
    }
    debug_assert_eq!(acc.homogeneous_degree(), Some(degree));
    Ok(acc)
}

/// The canonical D-side dual basis: for each basis the polynomial of its
/// externally-reduced sublist, scaled by the absolute determinant of the
/// basis columns.
pub fn bcyr_basis(x: &VectorList, restricted: &[BasisId], seed: u32) -> Result<SpaceBasis> {
    let sorted = sorted_restriction(x, restricted)?;
    let mut elements = Vec::with_capacity(sorted.len());
    for b in &sorted {
        let (_, external) = activity_sets(x, b)?;
        let (sublist, remap) = x.sublist_excluding(&external);
        let b_in_sublist = BasisId::new(
            b.indices()
                .iter()
                .map(|&i| remap[&i])
                .collect::<Vec<usize>>(),
        )?;
        let rb = r_polynomial(&sublist, &b_in_sublist, seed)?;
        let det = x.columns(b.indices())?.determinant()?.abs();
        let element = rb.scale(&det);
        debug_assert_eq!(
            element.homogeneous_degree(),
            Some(x.len() - x.dim() - external.len())
        );
        elements.push(element);
    }
    SpaceBasis::new(elements, Some(sorted))
}

/// Pairing matrix of two space bases on opposite sides; for the canonical
/// dual pair this is the identity. Label sets must agree when both bases
/// carry labels.
pub fn gram_matrix(p_basis: &SpaceBasis, d_basis: &SpaceBasis) -> Result<Matrix> {
    if p_basis.dimension() != d_basis.dimension() {
        return Err(Error::LabelMismatch);
    }
    if p_basis.side() == d_basis.side() {
        return Err(Error::SideMismatch);
    }
    if let (Some(a), Some(b)) = (p_basis.labels(), d_basis.labels()) {
        if a != b {
            return Err(Error::LabelMismatch);
        }
    }
    let n = p_basis.dimension();
    let mut m = Matrix::zeros(n, n);
    for (i, p) in p_basis.elements().iter().enumerate() {
        for (j, f) in d_basis.elements().iter().enumerate() {
            m.set(i, j, pair(p, f)?);
        }
    }
    Ok(m)
}

/// Independent construction of the dual basis: computes the D-space by the
/// kernel route and solves the exact linear system that makes it dual to
/// the P-side basis under the pairing. Must agree elementwise with
/// `bcyr_basis`; a singular system signals that the restricted set does not
/// have the forward exchange property (or an upstream bug).
pub fn dual_basis_oracle(x: &VectorList, restricted: &[BasisId]) -> Result<SpaceBasis> {
    let sorted = sorted_restriction(x, restricted)?;
    let p_basis = p_space_basis(x, &sorted)?;
    let d_basis = d_space_basis(x, &sorted, None)?;
    if d_basis.dimension() != sorted.len() {
        return Err(Error::SingularMatrix);
    }
    let n = sorted.len();
    let mut gram = Matrix::zeros(n, n);
    for (i, p) in p_basis.elements().iter().enumerate() {
        for (j, f) in d_basis.elements().iter().enumerate() {
            gram.set(i, j, pair(p, f)?);
        }
    }
    let mut duals = Vec::with_capacity(n);
    for k in 0..n {
        let mut rhs = vec![Rational::zero(); n];
        rhs[k] = Rational::one();
        let weights = gram.solve(&rhs)?;
        let mut f = MPoly::zero(d_basis.side(), x.dim());
        for (w, ker) in weights.iter().zip(d_basis.elements()) {
            f = f.add(&ker.scale(w));
        }
        duals.push(f);
    }
    SpaceBasis::new(duals, Some(sorted))
}

/// Finitely many generators standing in for the power ideal: one normal per
/// corank-one flat with exponent `kappa(eta) + 1`, plus the generic degree
/// cap beyond which the kernel is cut off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerIdealSpec {
    /// `(normal, exponent)` pairs, one per corank-one flat in flat order.
    pub normals: Vec<(Vec<Rational>, usize)>,
    /// Maximal degree of the kernel: the exponent attached to a generic
    /// normal is `generic_cap + 1`.
    pub generic_cap: usize,
}

/// Result of the power-ideal comparison.
#[derive(Debug, Clone)]
pub struct PowerIdealReport {
    pub spec: PowerIdealSpec,
    pub kernel: SpaceBasis,
    /// Whether the computed kernel equals the span of the P-side basis.
    pub equal: bool,
}

/// Builds the power-ideal generators from the corank-one flat normals,
/// computes the kernel up to the generic cap, and compares it with the
/// P-side span. The generator choice is a finite stand-in for the full
/// ideal, so `equal = true` certifies equality while `equal = false` only
/// reports that this generator set separates the two spaces.
pub fn power_ideal_kernel(x: &VectorList, restricted: &[BasisId]) -> Result<PowerIdealReport> {
    let sorted = sorted_restriction(x, restricted)?;
    let p_basis = p_space_basis(x, &sorted)?;
    let r = x.dim();
    let mut free_sets: Vec<BTreeSet<usize>> = Vec::new();
    for b in &sorted {
        let (_, external) = activity_sets(x, b)?;
        free_sets.push(
            (1..=x.len())
                .filter(|&i| !b.contains(i) && !external.contains(&i))
                .collect(),
        );
    }
    let generic_cap = free_sets.iter().map(BTreeSet::len).max().unwrap_or(0);
    let mut normals = Vec::new();
    for flat in flats(x)? {
        if !flat.corank_one {
            continue;
        }
        let rows: Vec<Vec<Rational>> = flat.indices.iter().map(|&i| x.vector(i).clone()).collect();
        let matrix = if rows.is_empty() {
            Matrix::zeros(0, r)
        } else {
            Matrix::from_rows(rows)?
        };
        let kernel = matrix.nullspace_basis();
        debug_assert_eq!(kernel.len(), 1);
        let eta = kernel.into_iter().next().ok_or_else(|| {
            Error::InternalConsistency("corank-one flat without a normal".into())
        })?;
        let kappa = free_sets
            .iter()
            .map(|s| s.iter().filter(|&&i| !dot(&eta, x.vector(i)).is_zero()).count())
            .max()
            .unwrap_or(0);
        normals.push((eta, kappa + 1));
    }
    let generators: Vec<MPoly> = normals
        .iter()
        .map(|(eta, exp)| linear_form(eta, Side::T).pow(*exp))
        .collect();
    let kernel_elements = kernel_of_differential_ideal(&generators, generic_cap)?;
    let equal = same_span(&kernel_elements, p_basis.elements())?;
    Ok(PowerIdealReport {
        spec: PowerIdealSpec {
            normals,
            generic_cap,
        },
        kernel: SpaceBasis::new(kernel_elements, None)?,
        equal,
    })
}

/// Result of the Hilbert-series comparison between the two spaces and the
/// activity generating function.
#[derive(Debug, Clone)]
pub struct HilbertTutteReport {
    pub holds: bool,
    pub p_hilbert: HilbertVector,
    pub d_hilbert: HilbertVector,
    /// Coefficient of `q^d`: the number of bases with `N - r - |E(B)| = d`.
    pub activity_hilbert: HilbertVector,
}

/// Verifies that the P-side and D-side Hilbert vectors both equal the
/// activity counting vector `sum_B q^(N - r - |E(B)|)`.
pub fn hilbert_tutte_check(x: &VectorList, restricted: &[BasisId]) -> Result<HilbertTutteReport> {
    let sorted = sorted_restriction(x, restricted)?;
    let p_basis = p_space_basis(x, &sorted)?;
    let d_basis = d_space_basis(x, &sorted, None)?;
    let shift = x.len() - x.dim();
    let mut counts = vec![0usize; shift + 1];
    for b in &sorted {
        let (_, external) = activity_sets(x, b)?;
        counts[shift - external.len()] += 1;
    }
    let activity = HilbertVector::from_counts(counts);
    let holds = p_basis.hilbert() == &activity && d_basis.hilbert() == &activity;
    Ok(HilbertTutteReport {
        holds,
        p_hilbert: p_basis.hilbert().clone(),
        d_hilbert: d_basis.hilbert().clone(),
        activity_hilbert: activity,
    })
}

/// Result of the deletion-contraction dimension check at the minimal
/// eligible element.
#[derive(Debug, Clone)]
pub struct DelconReport {
    pub holds: bool,
    /// The minimal element that is neither a loop nor a coloop.
    pub pivot: usize,
    pub p_left: HilbertVector,
    pub p_right: HilbertVector,
    pub d_left: HilbertVector,
    pub d_right: HilbertVector,
}

fn p_hilbert_or_zero(x: &VectorList, restricted: &[BasisId]) -> Result<HilbertVector> {
    if restricted.is_empty() {
        return Ok(HilbertVector::zero());
    }
    Ok(p_space_basis(x, restricted)?.hilbert().clone())
}

fn d_hilbert_or_zero(x: &VectorList, restricted: &[BasisId]) -> Result<HilbertVector> {
    if restricted.is_empty() {
        return Ok(HilbertVector::zero());
    }
    Ok(d_space_basis(x, restricted, None)?.hilbert().clone())
}

/// Checks the graded deletion-contraction identity at the minimal element
/// that is neither a loop nor a coloop: the Hilbert vector of each space
/// equals the degree-shifted deleted-list vector plus the contracted-list
/// vector.
pub fn delcon_dimension_check(x: &VectorList, restricted: &[BasisId]) -> Result<DelconReport> {
    let sorted = sorted_restriction(x, restricted)?;
    let zero_indices = loops(x);
    let pivot = (1..=x.len())
        .find(|&i| !zero_indices.contains(&i) && !is_coloop(x, i).unwrap_or(true))
        .ok_or(Error::NoEligibleElement)?;
    let p_left = p_hilbert_or_zero(x, &sorted)?;
    let d_left = d_hilbert_or_zero(x, &sorted)?;

    let deleted = delete(x, pivot)?;
    let deleted_bases = bases_after_delete(&sorted, pivot);
    let p_del = p_hilbert_or_zero(&deleted, &deleted_bases)?;
    let d_del = d_hilbert_or_zero(&deleted, &deleted_bases)?;

    let contracted_bases = bases_after_contract(&sorted, pivot);
    let (p_con, d_con) = if x.dim() == 1 {
        // contraction to dimension zero: the space is the constants when
        // any restricted basis passes through the pivot
        let h = if contracted_bases.is_empty() {
            HilbertVector::zero()
        } else {
            HilbertVector(vec![1])
        };
        (h.clone(), h)
    } else {
        let contracted = contract(x, pivot)?;
        (
            p_hilbert_or_zero(&contracted, &contracted_bases)?,
            d_hilbert_or_zero(&contracted, &contracted_bases)?,
        )
    };

    let p_right = p_del.shift_up().plus(&p_con);
    let d_right = d_del.shift_up().plus(&d_con);
    let holds = p_left == p_right && d_left == d_right;
    Ok(DelconReport {
        holds,
        pivot,
        p_left,
        p_right,
        d_left,
        d_right,
    })
}

/// Membership of the canonical D-side basis in the D-space, checked through
/// the annihilation of every restricted cocircuit: `D_C f = 0` for each
/// element `f` and each cocircuit `C`.
pub fn annihilation_check(x: &VectorList, restricted: &[BasisId], seed: u32) -> Result<bool> {
    let sorted = sorted_restriction(x, restricted)?;
    let cyrillic = bcyr_basis(x, &sorted, seed)?;
    let cocircuit_sets = cocircuits(x, &sorted)?;
    for f in cyrillic.elements() {
        for c in &cocircuit_sets {
            let dirs: Vec<Vec<Rational>> = c.iter().map(|&i| x.vector(i).clone()).collect();
            if !crate::poly::derive_all(f, &dirs)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
