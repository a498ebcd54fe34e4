//! Multivariate polynomials over the rationals, split into two sides of a
//! dual pair, together with the apolarity pairing, kernels of differential
//! ideals, and the least map.
//!
//! An S-side polynomial lives in `Q[s1..sr]` and acts on the T-side
//! `Q[t1..tr]` as a constant-coefficient differential operator (`si` becomes
//! `d/dti`). The pairing of `p` and `f` is the constant term of `p(d)f`,
//! which in coefficients is the factorial-weighted dot product
//! `sum_alpha alpha! * p_alpha * f_alpha`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rational_to_string, Matrix, Rational};

/// Which symmetric algebra a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Side {
    /// `Q[s1..sr]`, the home of P-spaces and cocircuit ideals.
    S,
    /// `Q[t1..tr]`, the home of D-spaces and power ideals.
    T,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::S => Side::T,
            Side::T => Side::S,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::S => 's',
            Side::T => 't',
        }
    }
}

/// A multivariate polynomial with rational coefficients. Stored zero
/// coefficients are never kept; the zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    side: Side,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Graded lexicographic comparison, variable 1 highest.
pub fn cmp_grlex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// descending graded lex order (so `t1^d` comes first).
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Vec<u32>> {
    fn go(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(nvars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    go(nvars, d as u32, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn factorial(n: u32) -> Rational {
    let mut acc = num::BigInt::from(1);
    for k in 2..=n as u64 {
        acc *= k;
    }
    Rational::from_integer(acc)
}

fn exponent_factorial(alpha: &[u32]) -> Rational {
    alpha
        .iter()
        .map(|&e| factorial(e))
        .fold(Rational::one(), |acc, v| acc * v)
}

impl MPoly {
    pub fn zero(side: Side, nvars: usize) -> Self {
        MPoly {
            side,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(side: Side, nvars: usize, value: Rational) -> Self {
        let mut p = MPoly::zero(side, nvars);
        if !value.is_zero() {
            p.terms.insert(vec![0; nvars], value);
        }
        p
    }

    pub fn one(side: Side, nvars: usize) -> Self {
        MPoly::constant(side, nvars, Rational::one())
    }

    pub fn monomial(side: Side, nvars: usize, exponents: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut p = MPoly::zero(side, nvars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending graded lex order (the canonical print order).
    pub fn terms_grlex(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| cmp_grlex(b.0, a.0));
        terms
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|a| a.iter().sum::<u32>() as usize)
            .max()
    }

    /// `Some(d)` when every term has total degree `d`, else `None`.
    /// The zero polynomial is not considered homogeneous here.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|a| a.iter().sum::<u32>() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn insert_term(&mut self, alpha: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.side, other.side);
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.insert_term(alpha.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> MPoly {
        if factor.is_zero() {
            return MPoly::zero(self.side, self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * factor;
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.side, other.side);
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.side, self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let alpha: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.insert_term(alpha, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> MPoly {
        let mut out = MPoly::one(self.side, self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `var` (0-based).
    pub fn partial(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.side, self.nvars);
        for (alpha, c) in &self.terms {
            let e = alpha[var];
            if e == 0 {
                continue;
            }
            let mut beta = alpha.clone();
            beta[var] = e - 1;
            out.insert_term(beta, c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables evaluated at a point of length {}",
                self.nvars,
                point.len()
            )));
        }
        let mut acc = Rational::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (p, &e) in point.iter().zip(alpha) {
                for _ in 0..e {
                    term *= p;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous_component(&self, d: usize) -> MPoly {
        let mut out = MPoly::zero(self.side, self.nvars);
        for (alpha, c) in &self.terms {
            if alpha.iter().sum::<u32>() as usize == d {
                out.insert_term(alpha.clone(), c.clone());
            }
        }
        out
    }
}

/// The degree-one polynomial `sum_i x_i * var_i` on the given side.
/// A zero vector yields the zero polynomial.
pub fn linear_form(x: &[Rational], side: Side) -> MPoly {
    let mut p = MPoly::zero(side, x.len());
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            let mut alpha = vec![0; x.len()];
            alpha[i] = 1;
            p.terms.insert(alpha, c.clone());
        }
    }
    p
}

/// Product of the linear forms of the given vectors; the empty product is 1.
pub fn product_of_forms<'a, I>(vectors: I, side: Side, nvars: usize) -> MPoly
where
    I: IntoIterator<Item = &'a Vec<Rational>>,
{
    let mut out = MPoly::one(side, nvars);
    for v in vectors {
        out = out.mul(&linear_form(v, side));
    }
    out
}

/// Directional derivative `sum_i x_i * df/dvar_i`.
pub fn derive(f: &MPoly, x: &[Rational]) -> Result<MPoly> {
    if x.len() != f.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "direction of length {} against {} variables",
            x.len(),
            f.nvars()
        )));
    }
    let mut out = MPoly::zero(f.side(), f.nvars());
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&f.partial(i).scale(c));
        }
    }
    Ok(out)
}

/// Iterated directional derivative over a list of directions.
pub fn derive_all<'a, I>(f: &MPoly, directions: I) -> Result<MPoly>
where
    I: IntoIterator<Item = &'a Vec<Rational>>,
{
    let mut out = f.clone();
    for x in directions {
        out = derive(&out, x)?;
    }
    Ok(out)
}

/// The apolarity pairing: apply the polynomial on one side as a differential
/// operator to the one on the other side and take the constant term. The two
/// arguments must live on opposite sides; the formula is symmetric, so either
/// order is accepted.
pub fn pair(p: &MPoly, f: &MPoly) -> Result<Rational> {
    if p.side() == f.side() {
        return Err(Error::SideMismatch);
    }
    if p.nvars() != f.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "pairing {} variables against {}",
            p.nvars(),
            f.nvars()
        )));
    }
    let (small, large) = if p.terms.len() <= f.terms.len() {
        (p, f)
    } else {
        (f, p)
    };
    let mut acc = Rational::zero();
    for (alpha, c) in &small.terms {
        if let Some(d) = large.terms.get(alpha) {
            acc += exponent_factorial(alpha) * c * d;
        }
    }
    Ok(acc)
}

/// Exact basis, degree by degree, of the polynomials annihilated by every
/// generator acting as a differential operator. Output lives on the side
/// opposite to the generators; generators must be homogeneous and non-zero.
///
/// For each degree `d <= max_degree` this solves the linear system in the
/// monomial coefficients: the coefficient of `m_beta` in `g(d)f` is
/// `sum_gamma g_gamma * (beta+gamma)!/beta! * f_{beta+gamma}`.
/// Bases are echelon-canonical with monomial columns in descending graded
/// lex order, so the output is deterministic.
pub fn kernel_of_differential_ideal(generators: &[MPoly], max_degree: usize) -> Result<Vec<MPoly>> {
    let Some(first) = generators.first() else {
        return Err(Error::NonHomogeneous("no generators given".into()));
    };
    let side = first.side();
    let nvars = first.nvars();
    let mut degrees = Vec::with_capacity(generators.len());
    for g in generators {
        if g.side() != side {
            return Err(Error::SideMismatch);
        }
        if g.nvars() != nvars {
            return Err(Error::DimensionMismatch("mixed variable counts".into()));
        }
        match g.homogeneous_degree() {
            Some(d) => degrees.push(d),
            None => return Err(Error::NonHomogeneous(g.to_string())),
        }
    }
    let out_side = side.opposite();
    let mut kernel = Vec::new();
    for d in 0..=max_degree {
        let mons = monomials_of_degree(nvars, d);
        let col_of: BTreeMap<&Vec<u32>, usize> =
            mons.iter().enumerate().map(|(j, m)| (m, j)).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (g, &k) in generators.iter().zip(&degrees) {
            if k > d {
                continue;
            }
            for beta in monomials_of_degree(nvars, d - k) {
                let mut row = vec![Rational::zero(); mons.len()];
                for (gamma, gc) in &g.terms {
                    let alpha: Vec<u32> = beta.iter().zip(gamma).map(|(b, g)| b + g).collect();
                    let weight = exponent_factorial(&alpha) / exponent_factorial(&beta);
                    row[col_of[&alpha]] = gc * weight;
                }
                rows.push(row);
            }
        }
        let matrix = if rows.is_empty() {
            Matrix::zeros(0, mons.len())
        } else {
            Matrix::from_rows(rows)?
        };
        for v in matrix.nullspace_basis() {
            let mut f = MPoly::zero(out_side, nvars);
            for (j, c) in v.into_iter().enumerate() {
                f.insert_term(mons[j].clone(), c);
            }
            kernel.push(f);
        }
    }
    Ok(kernel)
}

/// The least space of a finite point set: span of the lowest-degree
/// non-zero homogeneous components of the span of the truncated
/// exponentials `e^v`. Output is T-side.
///
/// The coefficient of `t^alpha` in `e^v` is `v^alpha / alpha!`. Rows are
/// Gauss-eliminated with columns blocked by ascending degree; each echelon
/// row contributes its pivot-degree component.
pub fn least_space(points: &[Vec<Rational>], max_degree: usize) -> Result<Vec<MPoly>> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyPointSet);
    };
    let nvars = first.len();
    if points.iter().any(|p| p.len() != nvars) {
        return Err(Error::DimensionMismatch("ragged point set".into()));
    }
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if p == q {
                return Err(Error::InternalConsistency("duplicate points".into()));
            }
        }
    }
    let mut columns: Vec<Vec<u32>> = Vec::new();
    let mut degree_of_col: Vec<usize> = Vec::new();
    for d in 0..=max_degree {
        for m in monomials_of_degree(nvars, d) {
            columns.push(m);
            degree_of_col.push(d);
        }
    }
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|v| {
            columns
                .iter()
                .map(|alpha| {
                    let mut num = Rational::one();
                    for (p, &e) in v.iter().zip(alpha) {
                        for _ in 0..e {
                            num *= p;
                        }
                    }
                    num / exponent_factorial(alpha)
                })
                .collect()
        })
        .collect();
    let mut matrix = Matrix::from_rows(rows)?;
    let pivots = matrix.rref();
    let mut out = Vec::new();
    for (row, &pivot_col) in pivots.iter().enumerate() {
        let d = degree_of_col[pivot_col];
        let mut f = MPoly::zero(Side::T, nvars);
        for (j, alpha) in columns.iter().enumerate() {
            if degree_of_col[j] == d {
                f.insert_term(alpha.clone(), matrix.get(row, j).clone());
            }
        }
        debug_assert!(!f.is_zero());
        out.push(f);
    }
    Ok(out)
}

/// Dimension count per degree of a list of homogeneous polynomials.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HilbertVector(pub Vec<usize>);

impl HilbertVector {
    pub fn from_counts(mut counts: Vec<usize>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        HilbertVector(counts)
    }

    pub fn zero() -> Self {
        HilbertVector(Vec::new())
    }

    pub fn dimension(&self) -> usize {
        self.0.iter().sum()
    }

    /// Degree shift by one (multiplication by `q`).
    pub fn shift_up(&self) -> Self {
        if self.0.is_empty() {
            return Self::zero();
        }
        let mut v = vec![0];
        v.extend_from_slice(&self.0);
        HilbertVector(v)
    }

    pub fn plus(&self, other: &HilbertVector) -> Self {
        let len = self.0.len().max(other.0.len());
        let mut v = vec![0; len];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0);
        }
        HilbertVector::from_counts(v)
    }
}

impl fmt::Display for HilbertVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Counts basis elements per degree; every element must be homogeneous.
pub fn hilbert_vector(elements: &[MPoly]) -> Result<HilbertVector> {
    let mut counts = Vec::new();
    for e in elements {
        let d = e
            .homogeneous_degree()
            .ok_or_else(|| Error::NonHomogeneous(e.to_string()))?;
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    Ok(HilbertVector::from_counts(counts))
}

/// Coefficient matrix of a list of polynomials over the union of their
/// monomial supports (columns in descending graded lex order).
fn coefficient_matrix(elements: &[MPoly]) -> Result<Matrix> {
    let Some(first) = elements.first() else {
        return Ok(Matrix::zeros(0, 0));
    };
    let nvars = first.nvars();
    let side = first.side();
    let mut support: Vec<Vec<u32>> = Vec::new();
    for e in elements {
        if e.nvars() != nvars {
            return Err(Error::DimensionMismatch("mixed variable counts".into()));
        }
        if e.side() != side {
            return Err(Error::SideMismatch);
        }
        support.extend(e.terms.keys().cloned());
    }
    support.sort_by(|a, b| cmp_grlex(b, a));
    support.dedup();
    let rows = elements
        .iter()
        .map(|e| support.iter().map(|m| e.coefficient(m)).collect())
        .collect();
    Matrix::from_rows(rows)
}

/// Number of linearly independent polynomials in the list.
pub fn span_rank(elements: &[MPoly]) -> Result<usize> {
    Ok(coefficient_matrix(elements)?.rank())
}

/// Exact equality of the two spans, decided by comparing reduced echelon
/// forms over the joint monomial support.
pub fn same_span(a: &[MPoly], b: &[MPoly]) -> Result<bool> {
    if a.is_empty() && b.is_empty() {
        return Ok(true);
    }
    if a.is_empty() || b.is_empty() {
        return Ok(a.iter().all(MPoly::is_zero) && b.iter().all(MPoly::is_zero));
    }
    let mut joint: Vec<MPoly> = a.to_vec();
    joint.extend_from_slice(b);
    // Echelonize both over the same column set (the joint support).
    let joint_matrix = coefficient_matrix(&joint)?;
    let cols = joint_matrix.cols();
    let take = |range: std::ops::Range<usize>| -> Matrix {
        let rows: Vec<Vec<Rational>> = range
            .map(|i| (0..cols).map(|j| joint_matrix.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(rows).expect("rows share length")
    };
    let mut ma = take(0..a.len());
    let mut mb = take(a.len()..a.len() + b.len());
    let pa = ma.rref();
    let pb = mb.rref();
    if pa != pb {
        return Ok(false);
    }
    for (i, _) in pa.iter().enumerate() {
        for j in 0..cols {
            if ma.get(i, j) != mb.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl fmt::Display for MPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let letter = self.side.letter();
        for (k, (alpha, coeff)) in self.terms_grlex().into_iter().enumerate() {
            let negative = coeff < &Rational::zero();
            let abs = if negative { -coeff.clone() } else { coeff.clone() };
            if k == 0 {
                if negative {
                    write!(out, "-")?;
                }
            } else if negative {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let is_constant = alpha.iter().all(|&e| e == 0);
            if !abs.is_one() || is_constant {
                write!(out, "{}", rational_to_string(&abs))?;
                if !is_constant {
                    write!(out, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &e) in alpha.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(out, "*")?;
                }
                first_var = false;
                write!(out, "{}{}", letter, i + 1)?;
                if e > 1 {
                    write!(out, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses the canonical text form produced by `Display`, e.g.
/// `"1/2*t1^2 + t2 - 3"`. The side and variable count must be supplied
/// because a constant carries neither.
pub fn parse_mpoly(text: &str, side: Side, nvars: usize) -> Result<MPoly> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if text == "0" {
        return Ok(MPoly::zero(side, nvars));
    }
    let mut out = MPoly::zero(side, nvars);
    // Split into signed terms at top level (no parentheses in the format).
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '+' | '-' => {
                // Sign characters only occur between terms or at the start;
                // exponents are non-negative and coefficients use leading signs.
                if current.trim().is_empty() && terms.is_empty() && c == '-' {
                    negative = true;
                } else if current.trim().is_empty() && terms.is_empty() {
                    // leading plus
                } else {
                    terms.push((negative, std::mem::take(&mut current)));
                    negative = c == '-';
                }
            }
            _ => current.push(c),
        }
    }
    terms.push((negative, current));
    for (neg, term) in terms {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse("dangling sign in polynomial".into()));
        }
        let mut coeff = Rational::one();
        let mut alpha = vec![0u32; nvars];
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {term:?}")));
            }
            if factor.starts_with(side.letter()) {
                let (var_part, exp_part) = match factor.split_once('^') {
                    Some((v, e)) => (v, Some(e)),
                    None => (factor, None),
                };
                let idx: usize = var_part[1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                if idx == 0 || idx > nvars {
                    return Err(Error::Parse(format!("variable index out of range: {factor:?}")));
                }
                let exp: u32 = match exp_part {
                    Some(e) => e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {factor:?}")))?,
                    None => 1,
                };
                alpha[idx - 1] += exp;
            } else {
                coeff *= crate::linalg::parse_rational(factor)?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.insert_term(alpha, coeff);
    }
    Ok(out)
}
