//! The ordered matroid realized by a list of rational column vectors:
//! bases, closure, flats, cocircuits, activities, Tutte polynomials, and
//! deletion / contraction.
//!
//! Indices into the list are 1-based everywhere in the public API, and the
//! order of the list is part of its identity: activities and everything
//! built on them depend on it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// An ordered list of `N` vectors in `Q^r`, indexed 1..=N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorList {
    dim: usize,
    vectors: Vec<Vec<Rational>>,
}

impl VectorList {
    pub fn new(dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("ambient dimension must be positive".into()));
        }
        if vectors.is_empty() {
            return Err(Error::DimensionMismatch("vector list must be non-empty".into()));
        }
        if let Some(bad) = vectors.iter().position(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector {} has length {}, expected {}",
                bad + 1,
                vectors[bad].len(),
                dim
            )));
        }
        Ok(VectorList { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The vector at 1-based position `index`.
    pub fn vector(&self, index: usize) -> &Vec<Rational> {
        &self.vectors[index - 1]
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.len() {
            return Err(Error::IndexOutOfRange(index, self.len()));
        }
        Ok(())
    }

    /// Matrix whose columns are the vectors at the given 1-based indices.
    pub fn columns(&self, indices: &[usize]) -> Result<Matrix> {
        for &i in indices {
            self.check_index(i)?;
        }
        let cols: Vec<Vec<Rational>> = indices.iter().map(|&i| self.vector(i).clone()).collect();
        Matrix::from_columns(&cols)
    }

    pub fn full_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors).expect("uniform lengths")
    }

    /// The sublist omitting the given indices, with the index remap
    /// old -> new for the surviving positions.
    pub fn sublist_excluding(&self, exclude: &BTreeSet<usize>) -> (VectorList, BTreeMap<usize, usize>) {
        let mut vectors = Vec::new();
        let mut remap = BTreeMap::new();
        for (i, v) in self.vectors.iter().enumerate() {
            let old = i + 1;
            if !exclude.contains(&old) {
                vectors.push(v.clone());
                remap.insert(old, vectors.len());
            }
        }
        (
            VectorList {
                dim: self.dim,
                vectors,
            },
            remap,
        )
    }
}

/// A strictly increasing tuple of 1-based indices selecting a column basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisId(Vec<usize>);

impl BasisId {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) || indices[0] == 0 {
            return Err(Error::InvalidBasis(indices));
        }
        Ok(BasisId(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn index_set(&self) -> BTreeSet<usize> {
        self.0.iter().copied().collect()
    }

    /// Re-sorts after an exchange; used to build `(B \ b) u x`.
    pub fn replace(&self, remove: usize, insert: usize) -> BasisId {
        let mut v: Vec<usize> = self.0.iter().copied().filter(|&i| i != remove).collect();
        if !v.contains(&insert) {
            v.push(insert);
        }
        v.sort_unstable();
        BasisId(v)
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(usize::to_string).join(","))
    }
}

/// Validates that `b` selects `r` independent columns of `x`.
pub fn validate_basis(x: &VectorList, b: &BasisId) -> Result<()> {
    if b.len() != x.dim() {
        return Err(Error::InvalidBasis(b.indices().to_vec()));
    }
    let m = x.columns(b.indices())?;
    if m.determinant()?.is_zero() {
        return Err(Error::InvalidBasis(b.indices().to_vec()));
    }
    Ok(())
}

/// All bases selectable from `x`, in lexicographic index order.
/// Errors when the list does not span.
pub fn bases(x: &VectorList) -> Result<Vec<BasisId>> {
    let r = x.dim();
    if x.full_matrix().rank() != r {
        return Err(Error::NonSpanning);
    }
    let mut out = Vec::new();
    for combo in (1..=x.len()).combinations(r) {
        let m = x.columns(&combo)?;
        if !m.determinant()?.is_zero() {
            out.push(BasisId(combo));
        }
    }
    Ok(out)
}

/// Rank of the set of columns selected by `subset`.
pub fn rank_of(x: &VectorList, subset: &BTreeSet<usize>) -> Result<usize> {
    let indices: Vec<usize> = subset.iter().copied().collect();
    if indices.is_empty() {
        return Ok(0);
    }
    Ok(x.columns(&indices)?.rank())
}

/// Closure of a subset: every index whose vector does not raise the rank.
/// The closure of the empty set is the set of loops (zero vectors).
pub fn closure(x: &VectorList, subset: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let base_rank = rank_of(x, subset)?;
    let mut out = BTreeSet::new();
    for i in 1..=x.len() {
        if subset.contains(&i) {
            out.insert(i);
            continue;
        }
        let mut augmented = subset.clone();
        augmented.insert(i);
        if rank_of(x, &augmented)? == base_rank {
            out.insert(i);
        }
    }
    Ok(out)
}

/// A flat together with its rank; `corank_one` flags the hyperplane flats
/// used for power-ideal normals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub indices: BTreeSet<usize>,
    pub rank: usize,
    pub corank_one: bool,
}

/// All flats, sorted by (rank, index set). Each flat is the closure of an
/// independent subset, so subsets of size up to `r` suffice.
pub fn flats(x: &VectorList) -> Result<Vec<Flat>> {
    let r = x.dim();
    let full_rank = x.full_matrix().rank();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for size in 0..=r.min(x.len()) {
        for combo in (1..=x.len()).combinations(size) {
            let subset: BTreeSet<usize> = combo.into_iter().collect();
            seen.insert(closure(x, &subset)?);
        }
    }
    let mut out: Vec<Flat> = Vec::new();
    for indices in seen {
        let rank = rank_of(x, &indices)?;
        out.push(Flat {
            corank_one: rank + 1 == full_rank,
            indices,
            rank,
        });
    }
    out.sort_by(|a, b| {
        a.rank
            .cmp(&b.rank)
            .then_with(|| a.indices.iter().collect::<Vec<_>>().cmp(&b.indices.iter().collect()))
    });
    Ok(out)
}

/// All inclusion-minimal subsets of indices meeting every basis in
/// `restricted`, in (size, lexicographic) order.
pub fn cocircuits(x: &VectorList, restricted: &[BasisId]) -> Result<Vec<BTreeSet<usize>>> {
    if restricted.is_empty() {
        return Err(Error::EmptyBases);
    }
    for b in restricted {
        validate_basis(x, b)?;
    }
    // Incremental minimal-transversal computation over the basis hypergraph.
    let mut partial: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for b in restricted {
        let members = b.index_set();
        let mut next: Vec<BTreeSet<usize>> = Vec::new();
        for h in partial {
            if h.intersection(&members).next().is_some() {
                next.push(h);
            } else {
                for &m in &members {
                    let mut grown = h.clone();
                    grown.insert(m);
                    next.push(grown);
                }
            }
        }
        // Drop non-minimal candidates.
        next.sort_by_key(BTreeSet::len);
        let mut minimal: Vec<BTreeSet<usize>> = Vec::new();
        for cand in next {
            if !minimal.iter().any(|m| m.is_subset(&cand)) {
                minimal.push(cand);
            }
        }
        partial = minimal;
    }
    partial.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().collect::<Vec<_>>().cmp(&b.iter().collect()))
    });
    Ok(partial)
}

/// Internally and externally active index sets of a basis.
///
/// An outside element is externally active when it lies in the closure of
/// the basis elements that precede it (so loops are active for every basis).
/// A basis element is internally active when it is the maximum of the
/// complement of the closure of the other basis elements.
pub fn activity_sets(x: &VectorList, b: &BasisId) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    validate_basis(x, b)?;
    let mut external = BTreeSet::new();
    for i in 1..=x.len() {
        if b.contains(i) {
            continue;
        }
        let prefix: BTreeSet<usize> = b.indices().iter().copied().filter(|&j| j <= i).collect();
        if closure(x, &prefix)?.contains(&i) {
            external.insert(i);
        }
    }
    let mut internal = BTreeSet::new();
    for &bi in b.indices() {
        let rest: BTreeSet<usize> = b.indices().iter().copied().filter(|&j| j != bi).collect();
        let closed = closure(x, &rest)?;
        let max_outside = (1..=x.len()).filter(|i| !closed.contains(i)).max();
        if max_outside == Some(bi) {
            internal.insert(bi);
        }
    }
    Ok((internal, external))
}

/// Tutte polynomial as a coefficient table: `(i, j) -> coefficient of x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TuttePolynomial(pub BTreeMap<(usize, usize), u64>);

impl TuttePolynomial {
    pub fn coefficient(&self, i: usize, j: usize) -> u64 {
        self.0.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn eval(&self, at_x: &Rational, at_y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), &c) in &self.0 {
            let mut term = Rational::from_integer(c.into());
            for _ in 0..i {
                term *= at_x;
            }
            for _ in 0..j {
                term *= at_y;
            }
            acc += term;
        }
        acc
    }

    /// Total number of contributing bases, `T(1, 1)`.
    pub fn basis_count(&self) -> u64 {
        self.0.values().sum()
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&(usize, usize), &u64)> = self.0.iter().collect();
        terms.sort_by(|a, b| {
            let da = a.0 .0 + a.0 .1;
            let db = b.0 .0 + b.0 .1;
            db.cmp(&da).then_with(|| b.0 .0.cmp(&a.0 .0))
        });
        for (k, (&(i, j), &c)) in terms.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c != 1 || (i == 0 && j == 0) {
                write!(f, "{c}")?;
            }
            if i > 0 {
                write!(f, "x")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
            if j > 0 {
                write!(f, "y")?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
        }
        Ok(())
    }
}

/// Tutte polynomial over all bases of `x`.
pub fn tutte(x: &VectorList) -> Result<TuttePolynomial> {
    let all = bases(x)?;
    tutte_restricted(x, &all)
}

/// Tutte polynomial summed over a subset of the bases; activities are
/// always computed in the full matroid.
pub fn tutte_restricted(x: &VectorList, restricted: &[BasisId]) -> Result<TuttePolynomial> {
    let mut coeffs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for b in restricted {
        let (internal, external) = activity_sets(x, b)?;
        *coeffs.entry((internal.len(), external.len())).or_insert(0) += 1;
    }
    Ok(TuttePolynomial(coeffs))
}

/// Sum of the absolute column-basis determinants, the volume of the
/// zonotope spanned by the list.
pub fn zonotope_volume(x: &VectorList) -> Result<Rational> {
    let mut acc = Rational::zero();
    for b in bases(x)? {
        acc += x.columns(b.indices())?.determinant()?.abs();
    }
    Ok(acc)
}

/// Indices of the zero vectors.
pub fn loops(x: &VectorList) -> BTreeSet<usize> {
    (1..=x.len())
        .filter(|&i| x.vector(i).iter().all(Rational::is_zero))
        .collect()
}

/// True when removing the vector drops the rank of the list.
pub fn is_coloop(x: &VectorList, index: usize) -> Result<bool> {
    x.check_index(index)?;
    let full = x.full_matrix().rank();
    let (rest, _) = x.sublist_excluding(&BTreeSet::from([index]));
    if rest.is_empty() {
        return Ok(full > 0);
    }
    Ok(rest.full_matrix().rank() < full)
}

/// Removes the vector at 1-based position `index`.
pub fn delete(x: &VectorList, index: usize) -> Result<VectorList> {
    x.check_index(index)?;
    if x.len() == 1 {
        return Err(Error::DimensionMismatch("cannot delete the last vector".into()));
    }
    let (rest, _) = x.sublist_excluding(&BTreeSet::from([index]));
    Ok(rest)
}

/// Contracts the (non-zero) vector at `index`: the remaining vectors are
/// rewritten in a basis `(x_index, e_{j1}, .., e_{j_{r-1}})` chosen by greedy
/// pivoting against the lowest-index unit vectors, and the first coordinate
/// is dropped.
pub fn contract(x: &VectorList, index: usize) -> Result<VectorList> {
    x.check_index(index)?;
    let r = x.dim();
    let pivot = x.vector(index).clone();
    if pivot.iter().all(Rational::is_zero) {
        return Err(Error::ContractLoop(index));
    }
    if r == 1 {
        return Err(Error::DimensionMismatch(
            "contracting in rank one leaves no ambient space".into(),
        ));
    }
    let mut cols = vec![pivot];
    for j in 0..r {
        if cols.len() == r {
            break;
        }
        let mut unit = vec![Rational::zero(); r];
        unit[j] = num_traits::One::one();
        let mut candidate = cols.clone();
        candidate.push(unit);
        if Matrix::from_columns(&candidate)?.rank() == candidate.len() {
            cols = candidate;
        }
    }
    debug_assert_eq!(cols.len(), r);
    let change = Matrix::from_columns(&cols)?;
    let mut vectors = Vec::new();
    for i in 1..=x.len() {
        if i == index {
            continue;
        }
        let coords = change.solve(x.vector(i))?;
        vectors.push(coords[1..].to_vec());
    }
    VectorList::new(r - 1, vectors)
}

/// The members of `restricted` avoiding `index`, remapped to the deleted
/// list's positions.
pub fn bases_after_delete(restricted: &[BasisId], index: usize) -> Vec<BasisId> {
    let mut out: Vec<BasisId> = restricted
        .iter()
        .filter(|b| !b.contains(index))
        .map(|b| {
            BasisId(
                b.indices()
                    .iter()
                    .map(|&i| if i > index { i - 1 } else { i })
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}

/// The members of `restricted` through `index` with it removed, remapped to
/// the contracted list's positions.
pub fn bases_after_contract(restricted: &[BasisId], index: usize) -> Vec<BasisId> {
    let mut out: Vec<BasisId> = restricted
        .iter()
        .filter(|b| b.contains(index))
        .map(|b| {
            BasisId(
                b.indices()
                    .iter()
                    .filter(|&&i| i != index)
                    .map(|&i| if i > index { i - 1 } else { i })
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}
