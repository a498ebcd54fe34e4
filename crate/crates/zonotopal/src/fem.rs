//! Forward exchange matroids: basis flags, the forward exchange property,
//! placibility, and the standard families of basis subsets (external,
//! internal, semi-external, semi-internal, generalised external).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::matroid::{
    activity_sets, bases, closure, validate_basis, BasisId, TuttePolynomial, VectorList,
};

/// One level of a basis flag: the list elements spanning into the i-th
/// flag step, split by orientation sign relative to the basis prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagLevel {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

/// Partitions the non-loop elements of `x` along the flag of `b`: level `i`
/// collects the elements lying in the span of the first `i` basis vectors
/// but not the first `i-1`, tagged by the sign of their coefficient on the
/// i-th basis vector.
pub fn flag_partition(x: &VectorList, b: &BasisId) -> Result<Vec<FlagLevel>> {
    validate_basis(x, b)?;
    let r = x.dim();
    let m = x.columns(b.indices())?;
    let mut levels = vec![
        FlagLevel {
            positive: Vec::new(),
            negative: Vec::new(),
        };
        r
    ];
    for i in 1..=x.len() {
        let coords = m.solve(x.vector(i))?;
        let Some(level) = (0..r).rev().find(|&k| !coords[k].is_zero()) else {
            continue; // loop vector, lives in the rank-zero flat
        };
        if coords[level] > Rational::zero() {
            levels[level].positive.push(i);
        } else {
            levels[level].negative.push(i);
        }
    }
    Ok(levels)
}

/// A forward-exchange violation: basis `basis`, flag level `level` (1-based),
/// and the element `candidate` whose exchange leaves the basis set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub basis: BasisId,
    pub level: usize,
    pub candidate: usize,
}

/// Exhaustively checks the forward exchange property of `restricted`:
/// for every member basis, every flag level `i`, and every non-externally-
/// active element `x` of that level, the exchange `(B \ b_i) u x` must stay
/// inside the set. Returns the first violation found, if any.
pub fn is_forward_exchange(
    x: &VectorList,
    restricted: &[BasisId],
) -> Result<(bool, Option<ExchangeWitness>)> {
    if restricted.is_empty() {
        return Err(Error::EmptyBases);
    }
    let members: BTreeSet<&BasisId> = restricted.iter().collect();
    for b in restricted {
        let (_, external) = activity_sets(x, b)?;
        let levels = flag_partition(x, b)?;
        for (level_index, level) in levels.iter().enumerate() {
            let bi = b.indices()[level_index];
            for &cand in level.positive.iter().chain(&level.negative).sorted() {
                if external.contains(&cand) || cand == bi {
                    continue;
                }
                let exchanged = b.replace(bi, cand);
                debug_assert!(validate_basis(x, &exchanged).is_ok());
                if !members.contains(&exchanged) {
                    return Ok((
                        false,
                        Some(ExchangeWitness {
                            basis: b.clone(),
                            level: level_index + 1,
                            candidate: cand,
                        }),
                    ));
                }
            }
        }
    }
    Ok((true, None))
}

/// Recursive placibility test, memoised on the basis subset.
///
/// An element is placeable when every member basis admits an exchange onto
/// it that stays inside the set; the set is placible when it is a singleton
/// or splits along a placeable element into two non-empty placible parts.
pub fn is_placible(x: &VectorList, restricted: &[BasisId]) -> Result<bool> {
    if restricted.is_empty() {
        return Err(Error::EmptyBases);
    }
    for b in restricted {
        validate_basis(x, b)?;
    }
    let mut sorted: Vec<BasisId> = restricted.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut memo: HashMap<Vec<BasisId>, bool> = HashMap::new();
    fn placeable(n: usize, set: &[BasisId], cand: usize) -> bool {
        let members: BTreeSet<&BasisId> = set.iter().collect();
        let _ = n;
        set.iter().all(|b| {
            b.indices()
                .iter()
                .any(|&bi| members.contains(&b.replace(bi, cand)))
        })
    }
    fn recurse(n: usize, set: Vec<BasisId>, memo: &mut HashMap<Vec<BasisId>, bool>) -> bool {
        if set.len() == 1 {
            return true;
        }
        if let Some(&cached) = memo.get(&set) {
            return cached;
        }
        let mut result = false;
        for cand in 1..=n {
            if !placeable(n, &set, cand) {
                continue;
            }
            let (with, without): (Vec<BasisId>, Vec<BasisId>) =
                set.iter().cloned().partition(|b| b.contains(cand));
            if with.is_empty() || without.is_empty() {
                continue;
            }
            if recurse(n, with, memo) && recurse(n, without, memo) {
                result = true;
                break;
            }
        }
        memo.insert(set, result);
        result
    }
    Ok(recurse(x.len(), sorted, &mut memo))
}

/// An ordered matroid realisation together with a distinguished subset of
/// its bases; `validated` records whether the subset passed the forward
/// exchange check.
#[derive(Debug, Clone)]
pub struct Fem {
    ground: VectorList,
    restricted: Vec<BasisId>,
    validated: bool,
}

impl Fem {
    /// Builds the triple and runs the forward exchange check; the result is
    /// usable either way, but only a validated triple carries the duality
    /// guarantees downstream.
    pub fn new(ground: VectorList, mut restricted: Vec<BasisId>) -> Result<Fem> {
        restricted.sort();
        restricted.dedup();
        let (holds, _) = is_forward_exchange(&ground, &restricted)?;
        Ok(Fem {
            ground,
            restricted,
            validated: holds,
        })
    }

    pub fn ground(&self) -> &VectorList {
        &self.ground
    }

    pub fn restricted_bases(&self) -> &[BasisId] {
        &self.restricted
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }
}

/// Tutte polynomial of a validated forward exchange matroid: the activity
/// generating function summed over the distinguished bases only.
pub fn fem_tutte(fem: &Fem) -> Result<TuttePolynomial> {
    if !fem.is_validated() {
        return Err(Error::UnvalidatedFem);
    }
    crate::matroid::tutte_restricted(fem.ground(), fem.restricted_bases())
}

/// A basis family together with the ground list it lives on. Some families
/// append vectors to the input list, so the ground list is part of the
/// output. Warnings record contract clauses that are surfaced but not
/// enforced.
#[derive(Debug, Clone)]
pub struct Family {
    pub ground: VectorList,
    pub bases: Vec<BasisId>,
    pub warnings: Vec<String>,
}

fn concat_lists(a: &VectorList, b: &VectorList) -> Result<VectorList> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch("concatenating lists of different dimension".into()));
    }
    let mut vectors = a.vectors().to_vec();
    vectors.extend(b.vectors().iter().cloned());
    VectorList::new(a.dim(), vectors)
}

fn independent(x: &VectorList, indices: &[usize]) -> Result<bool> {
    if indices.is_empty() {
        return Ok(true);
    }
    Ok(x.columns(indices)?.rank() == indices.len())
}

/// Greedy extension of an independent subset of the head of `x` by the tail
/// positions `tail_from..=len`: each tail vector is appended unless it would
/// create a dependency.
fn greedy_extension(x: &VectorList, start: &[usize], tail_from: usize) -> Result<BasisId> {
    let mut current: Vec<usize> = start.to_vec();
    for p in tail_from..=x.len() {
        let mut candidate = current.clone();
        candidate.push(p);
        if independent(x, &candidate)? {
            current = candidate;
        }
    }
    current.sort_unstable();
    BasisId::new(current)
}

fn all_independent_subsets(a: &VectorList) -> Result<Vec<Vec<usize>>> {
    let r = a.dim();
    let mut out = Vec::new();
    for size in 0..=r.min(a.len()) {
        for combo in (1..=a.len()).combinations(size) {
            if independent(a, &combo)? {
                out.push(combo);
            }
        }
    }
    Ok(out)
}

fn validate_b0(b0: &VectorList, r: usize) -> Result<()> {
    if b0.dim() != r || b0.len() != r {
        return Err(Error::InvalidFamilyArgs(format!(
            "appended basis must consist of {r} vectors in dimension {r}"
        )));
    }
    if b0.full_matrix().determinant()?.is_zero() {
        return Err(Error::InvalidFamilyArgs("appended vectors are not a basis".into()));
    }
    Ok(())
}

/// External bases: greedy extensions `ex(I)` of the independent subsets of
/// `a` by the appended basis `b0`. Ground list is `a` followed by `b0`.
pub fn external_bases(a: &VectorList, b0: &VectorList) -> Result<Family> {
    validate_b0(b0, a.dim())?;
    if a.full_matrix().rank() != a.dim() {
        return Err(Error::NonSpanning);
    }
    let ground = concat_lists(a, b0)?;
    let mut found: BTreeSet<BasisId> = BTreeSet::new();
    for subset in all_independent_subsets(a)? {
        found.insert(greedy_extension(&ground, &subset, a.len() + 1)?);
    }
    Ok(Family {
        ground,
        bases: found.into_iter().collect(),
        warnings: Vec::new(),
    })
}

/// Internal bases: the bases of `a` without internally active elements.
pub fn internal_bases(a: &VectorList) -> Result<Family> {
    let mut out = Vec::new();
    for b in bases(a)? {
        let (internal, _) = activity_sets(a, &b)?;
        if internal.is_empty() {
            out.push(b);
        }
    }
    Ok(Family {
        ground: a.clone(),
        bases: out,
        warnings: Vec::new(),
    })
}

/// Semi-external bases: greedy extensions of the independent subsets whose
/// closure (in the matroid on `a`) belongs to the given collection of flats.
/// The collection must be closed under passing to sub-flats.
pub fn semi_external_bases(
    a: &VectorList,
    b0: &VectorList,
    upper_set: &[BTreeSet<usize>],
) -> Result<Family> {
    validate_b0(b0, a.dim())?;
    if a.full_matrix().rank() != a.dim() {
        return Err(Error::NonSpanning);
    }
    let all_flats = crate::matroid::flats(a)?;
    let flat_sets: BTreeSet<BTreeSet<usize>> =
        all_flats.iter().map(|f| f.indices.clone()).collect();
    let chosen: BTreeSet<BTreeSet<usize>> = upper_set.iter().cloned().collect();
    for c in &chosen {
        if !flat_sets.contains(c) {
            return Err(Error::InvalidFamilyArgs(format!(
                "{c:?} is not a flat of the head list"
            )));
        }
    }
    for c2 in &chosen {
        for c1 in &flat_sets {
            if c1.is_subset(c2) && !chosen.contains(c1) {
                return Err(Error::InvalidFamilyArgs(format!(
                    "flat collection is not closed under sub-flats: {c1:?} below {c2:?} is missing"
                )));
            }
        }
    }
    let ground = concat_lists(a, b0)?;
    let mut found: BTreeSet<BasisId> = BTreeSet::new();
    for subset in all_independent_subsets(a)? {
        let cl = closure(a, &subset.iter().copied().collect())?;
        if chosen.contains(&cl) {
            found.insert(greedy_extension(&ground, &subset, a.len() + 1)?);
        }
    }
    Ok(Family {
        ground,
        bases: found.into_iter().collect(),
        warnings: Vec::new(),
    })
}

/// Semi-internal bases: bases of `a` whose intersection with the fixed
/// independent set carries no internally active element. Maximality of the
/// fixed set inside `a` is surfaced as a warning, not enforced.
pub fn semi_internal_bases(a: &VectorList, fixed: &BTreeSet<usize>) -> Result<Family> {
    let indices: Vec<usize> = fixed.iter().copied().collect();
    for &i in &indices {
        if i == 0 || i > a.len() {
            return Err(Error::IndexOutOfRange(i, a.len()));
        }
    }
    if !independent(a, &indices)? {
        return Err(Error::InvalidFamilyArgs("fixed set is dependent".into()));
    }
    let mut warnings = Vec::new();
    if !fixed.is_empty() {
        warnings.push("maximality of the fixed independent set inside the list is not checked".into());
    }
    let mut out = Vec::new();
    for b in bases(a)? {
        let (internal, _) = activity_sets(a, &b)?;
        if internal.intersection(fixed).next().is_none() {
            out.push(b);
        }
    }
    Ok(Family {
        ground: a.clone(),
        bases: out,
        warnings,
    })
}

/// Exact genericity check for an appended tail: no tail vector may lie in a
/// proper subspace spanned by other list members.
fn check_tail_generic(ground: &VectorList, tail_from: usize) -> Result<()> {
    let r = ground.dim();
    for p in tail_from..=ground.len() {
        let others: Vec<usize> = (1..=ground.len()).filter(|&i| i != p).collect();
        for size in 0..r {
            for combo in others.iter().copied().combinations(size) {
                if !independent(ground, &combo)? {
                    continue;
                }
                let mut with_p = combo.clone();
                with_p.push(p);
                if !independent(ground, &with_p)? {
                    return Err(Error::InvalidFamilyArgs(format!(
                        "appended vector {p} lies in the proper subspace spanned by {combo:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Generalised external bases: given an increasing flat weighting `kappa`
/// on the matroid of `a` and a generic appended list `y`, keep the bases of
/// the combined list whose tail part sits within the first
/// `kappa(closure(head part)) + |tail part|` tail positions.
pub fn generalized_external_bases(
    a: &VectorList,
    y: &VectorList,
    kappa: &BTreeMap<BTreeSet<usize>, usize>,
) -> Result<Family> {
    let ground = concat_lists(a, y)?;
    let n = a.len();
    let all_flats = crate::matroid::flats(a)?;
    for f in &all_flats {
        if !kappa.contains_key(&f.indices) {
            return Err(Error::InvalidFamilyArgs(format!(
                "kappa is missing the flat {:?}",
                f.indices
            )));
        }
    }
    for f1 in &all_flats {
        for f2 in &all_flats {
            if f1.indices.is_subset(&f2.indices) && kappa[&f1.indices] > kappa[&f2.indices] {
                return Err(Error::InvalidFamilyArgs(format!(
                    "kappa is not increasing: {:?} -> {} exceeds {:?} -> {}",
                    f1.indices, kappa[&f1.indices], f2.indices, kappa[&f2.indices]
                )));
            }
        }
    }
    check_tail_generic(&ground, n + 1)?;
    let mut out = Vec::new();
    for b in bases(&ground)? {
        let head: BTreeSet<usize> = b.indices().iter().copied().filter(|&i| i <= n).collect();
        let tail: Vec<usize> = b.indices().iter().copied().filter(|&i| i > n).collect();
        let flat = closure(a, &head)?;
        let limit = kappa[&flat] + tail.len();
        if tail.iter().all(|&p| p - n <= limit) {
            out.push(b);
        }
    }
    Ok(Family {
        ground,
        bases: out,
        warnings: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

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

    fn rank3_restricted() -> Vec<BasisId> {
        [
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 3, 4],
            vec![2, 3, 5],
        ]
        .into_iter()
        .map(|v| BasisId::new(v).unwrap())
        .collect()
    }

    fn ids(sets: &[&[usize]]) -> Vec<BasisId> {
        sets.iter().map(|s| BasisId::new(s.to_vec()).unwrap()).collect()
    }

    #[test]
    fn flag_partition_of_hat_list() {
        let x = hat_list();
        let b13 = BasisId::new(vec![1, 3]).unwrap();
        let levels = flag_partition(&x, &b13).unwrap();
        assert_eq!(levels[0].positive, vec![1]);
        assert!(levels[0].negative.is_empty());
        assert_eq!(levels[1].positive, vec![2, 3]);
        assert!(levels[1].negative.is_empty());

        let b23 = BasisId::new(vec![2, 3]).unwrap();
        let levels = flag_partition(&x, &b23).unwrap();
        assert_eq!(levels[0].positive, vec![2]);
        assert_eq!(levels[1].positive, vec![1, 3]);
    }

    #[test]
    fn flag_partition_of_identity() {
        let x = list(2, &[&[1, 0], &[0, 1]]);
        let b = BasisId::new(vec![1, 2]).unwrap();
        let levels = flag_partition(&x, &b).unwrap();
        assert_eq!(levels[0].positive, vec![1]);
        assert_eq!(levels[1].positive, vec![2]);
    }

    #[test]
    fn flag_partition_collects_reversed_orientation() {
        let x = list(1, &[&[1], &[-1]]);
        let b = BasisId::new(vec![1]).unwrap();
        let levels = flag_partition(&x, &b).unwrap();
        assert_eq!(levels[0].positive, vec![1]);
        assert_eq!(levels[0].negative, vec![2]);
    }

    #[test]
    fn forward_exchange_holds_for_rank3_family() {
        let (ok, witness) = is_forward_exchange(&rank3_list(), &rank3_restricted()).unwrap();
        assert!(ok, "unexpected witness: {witness:?}");
    }

    #[test]
    fn forward_exchange_holds_for_all_bases() {
        for x in [hat_list(), rank3_list()] {
            let all = bases(&x).unwrap();
            assert!(is_forward_exchange(&x, &all).unwrap().0);
        }
    }

    #[test]
    fn forward_exchange_violation_has_witness() {
        let x = hat_list();
        let (ok, witness) = is_forward_exchange(&x, &ids(&[&[1, 3], &[2, 3]])).unwrap();
        assert!(!ok);
        let w = witness.unwrap();
        assert_eq!(w.basis, BasisId::new(vec![1, 3]).unwrap());
        assert_eq!(w.level, 2);
        assert_eq!(w.candidate, 2);
    }

    #[test]
    fn forward_exchange_holds_for_adjacent_pair() {
        // exhaustive scan: both members admit every required exchange
        let x = hat_list();
        let (ok, _) = is_forward_exchange(&x, &ids(&[&[1, 2], &[2, 3]])).unwrap();
        assert!(ok);
    }

    #[test]
    fn placibility_cases() {
        let x = hat_list();
        assert!(is_placible(&x, &ids(&[&[1, 2]])).unwrap());
        assert!(is_placible(&x, &ids(&[&[1, 2], &[2, 3]])).unwrap());
        assert!(is_placible(&x, &bases(&x).unwrap()).unwrap());
        assert!(is_placible(&rank3_list(), &rank3_restricted()).unwrap());
    }

    #[test]
    fn fem_validation_and_tutte() {
        let fem = Fem::new(rank3_list(), rank3_restricted()).unwrap();
        assert!(fem.is_validated());
        let t = fem_tutte(&fem).unwrap();
        assert_eq!(t.coefficient(1, 0), 3);
        assert_eq!(t.coefficient(0, 1), 3);
        assert_eq!(t.coefficient(0, 2), 1);

        let x = hat_list();
        let central = Fem::new(x.clone(), bases(&x).unwrap()).unwrap();
        assert_eq!(fem_tutte(&central).unwrap().to_string(), "x^2 + x + y");

        let unvalidated = Fem::new(x, ids(&[&[1, 3], &[2, 3]])).unwrap();
        assert!(!unvalidated.is_validated());
        assert_eq!(fem_tutte(&unvalidated), Err(Error::UnvalidatedFem));
    }

    #[test]
    fn fem_tutte_of_singleton() {
        let x = hat_list();
        let fem = Fem::new(x, ids(&[&[1, 2]])).unwrap();
        assert!(fem.is_validated());
        let t = fem_tutte(&fem).unwrap();
        assert_eq!(t.basis_count(), 1);
        assert_eq!(t.coefficient(0, 1), 1);
    }

    #[test]
    fn external_family_contains_greedy_basis() {
        let a = hat_list();
        let b0 = list(2, &[&[1, 0], &[0, 1]]);
        let family = external_bases(&a, &b0).unwrap();
        // ex(empty) completes from the appended positions 4 and 5
        assert!(family.bases.contains(&BasisId::new(vec![4, 5]).unwrap()));
        let (ok, _) = is_forward_exchange(&family.ground, &family.bases).unwrap();
        assert!(ok);
    }

    #[test]
    fn internal_family_of_hat_list() {
        let family = internal_bases(&hat_list()).unwrap();
        assert_eq!(family.bases, ids(&[&[1, 2]]));
    }

    #[test]
    fn semi_internal_warns_about_maximality() {
        let family = semi_internal_bases(&hat_list(), &BTreeSet::from([3])).unwrap();
        assert!(!family.warnings.is_empty());
        // bases (1,3) and (2,3) both have internally active 3
        assert_eq!(family.bases, ids(&[&[1, 2]]));
    }

    #[test]
    fn semi_external_requires_subflat_closure() {
        let a = hat_list();
        let b0 = list(2, &[&[1, 0], &[0, 1]]);
        // {1,2,3} alone is not closed under sub-flats
        let bad = vec![BTreeSet::from([1, 2, 3])];
        assert!(semi_external_bases(&a, &b0, &bad).is_err());
        let flats: Vec<BTreeSet<usize>> = crate::matroid::flats(&a)
            .unwrap()
            .into_iter()
            .map(|f| f.indices)
            .collect();
        let full = semi_external_bases(&a, &b0, &flats).unwrap();
        let plain = external_bases(&a, &b0).unwrap();
        assert_eq!(full.bases, plain.bases);
    }

    #[test]
    fn generalized_external_matches_two_column_family() {
        // head (e1), tail (e2, (1,1), (2,1)); weight 2 on the head flat
        let a = list(2, &[&[1, 0]]);
        let y = list(2, &[&[0, 1], &[1, 1], &[2, 1]]);
        let kappa = BTreeMap::from([
            (BTreeSet::new(), 0usize),
            (BTreeSet::from([1]), 2usize),
        ]);
        let family = generalized_external_bases(&a, &y, &kappa).unwrap();
        assert_eq!(family.bases, ids(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3]]));
        let (ok, _) = is_forward_exchange(&family.ground, &family.bases).unwrap();
        assert!(ok);
        assert!(is_placible(&family.ground, &family.bases).unwrap());
    }

    #[test]
    fn generalized_external_rejects_non_generic_tail() {
        let a = list(2, &[&[1, 0]]);
        // (2, 0) is parallel to the head vector
        let y = list(2, &[&[0, 1], &[2, 0]]);
        let kappa = BTreeMap::from([
            (BTreeSet::new(), 0usize),
            (BTreeSet::from([1]), 0usize),
        ]);
        assert!(generalized_external_bases(&a, &y, &kappa).is_err());
    }
}
