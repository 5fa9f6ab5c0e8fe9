//! Sparse multivariate polynomials over `Q(i)` and one-parameter families.
//!
//! Key types:
//! * [`ExponentVector`] — a lattice point in `N^n`, the exponent of one
//!   monomial; doubles as a support point of the Newton polyhedron.
//! * [`SparsePolynomial`] — a term map `exponent -> coefficient`, kept
//!   normalized (no zero coefficients, all exponents of equal length).
//! * [`FamilyPolynomial`] — a polynomial whose coefficients are polynomials
//!   in a single parameter `t`: the one-parameter deformation `f_t`.
//! * [`SubspaceIndex`] — a set `I` of coordinate indices describing the
//!   subspace `{ z_j = 0 for j not in I }`.
//!
//! Design notes:
//! * Term maps are `BTreeMap`s so iteration, printing and hashing are
//!   deterministic; reports built from these types are byte-stable.
//! * Exponent arithmetic is checked: products and power substitutions fail
//!   loudly (`Error::Precondition`) instead of wrapping.  The parser caps
//!   user-supplied exponents far below `u32::MAX`, so checked arithmetic is
//!   unreachable from untrusted input.
//! * Printing uses graded-reverse-lex term order with variables named by a
//!   [`Ring`]; the output reparses to the same polynomial.

use crate::order::MonomialOrder;
use crate::rational::GaussianRational;
use crate::ring::Ring;
use crate::{Error, Result};

use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of one monomial; also a support point in `N^n`.
/// The derived order (lexicographic on the entries) is used purely for
/// deterministic storage, not as the term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of the nonzero entries (the coordinates the monomial uses).
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j] != 0).collect()
    }

    /// Componentwise sum; errors on `u32` overflow.
    pub fn checked_add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(
                a.checked_add(*b)
                    .ok_or_else(|| Error::pre("exponent overflow in monomial product"))?,
            );
        }
        Ok(ExponentVector(out))
    }

    /// Componentwise difference, `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(ExponentVector(out))
    }

    /// All entries multiplied by `p`; errors on overflow.
    pub fn checked_scale(&self, p: u32) -> Result<ExponentVector> {
        let mut out = Vec::with_capacity(self.len());
        for a in &self.0 {
            out.push(
                a.checked_mul(p)
                    .ok_or_else(|| Error::pre("exponent overflow in power substitution"))?,
            );
        }
        Ok(ExponentVector(out))
    }

    /// The weighted value `sum_j w_j * e_j`; errors on `u64` overflow.
    pub fn weighted_value(&self, w: &[u64]) -> Result<u64> {
        debug_assert_eq!(self.len(), w.len());
        let mut acc: u64 = 0;
        for (e, wj) in self.0.iter().zip(w) {
            let p = (*e as u64)
                .checked_mul(*wj)
                .ok_or_else(|| Error::pre("weighted value overflow"))?;
            acc = acc
                .checked_add(p)
                .ok_or_else(|| Error::pre("weighted value overflow"))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, e) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A set `I` of coordinate indices (0-based, sorted, unique) naming the
/// subspace `C^I = { z_j = 0 for j not in I }`.  Printed 1-based, e.g.
/// `{3}` for the subspace spanned by `z3`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubspaceIndex(Vec<usize>);

impl SubspaceIndex {
    /// Builds the index set, sorting and deduplicating; errors when an index
    /// is out of range for an `n`-variable ring.
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&j| j >= n) {
            return Err(Error::pre(format!(
                "subspace index z{} exceeds the variable count {}",
                bad + 1,
                n
            )));
        }
        Ok(SubspaceIndex(indices))
    }

    pub fn empty() -> Self {
        SubspaceIndex(Vec::new())
    }

    /// Decodes a bitmask (`bit j` set means `j` is in `I`).
    pub fn from_mask(mask: u64, n: usize) -> Self {
        SubspaceIndex((0..n).filter(|&j| mask >> j & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// 1-based copy of the indices, the form used in reports.
    pub fn indices_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&j| j + 1).collect()
    }

    pub fn complement(&self, n: usize) -> SubspaceIndex {
        SubspaceIndex((0..n).filter(|&j| !self.contains(j)).collect())
    }

    /// True when every index of `self` is in `other`.
    pub fn is_subset_of(&self, other: &SubspaceIndex) -> bool {
        self.0.iter().all(|&j| other.contains(j))
    }
}

impl fmt::Display for SubspaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, "}}")
    }
}

/// A sparse polynomial over `Q(i)` in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, GaussianRational>,
}

impl SparsePolynomial {
    /// Builds a polynomial from raw terms, merging duplicates and dropping
    /// zero coefficients.  Errors if an exponent vector has the wrong length.
    pub fn new(
        n: usize,
        raw: impl IntoIterator<Item = (ExponentVector, GaussianRational)>,
    ) -> Result<Self> {
        let mut terms: BTreeMap<ExponentVector, GaussianRational> = BTreeMap::new();
        for (exp, coeff) in raw {
            if exp.len() != n {
                return Err(Error::pre(format!(
                    "exponent vector {} has length {}, expected {}",
                    exp,
                    exp.len(),
                    n
                )));
            }
            let entry = terms.entry(exp).or_insert_with(GaussianRational::zero);
            *entry = &*entry + &coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial { n, terms })
    }

    pub fn zero(n: usize) -> Self {
        SparsePolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::monomial(n, ExponentVector::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    /// The single term `c * z^exp`; normalizes away `c = 0`.
    pub fn monomial(n: usize, exp: ExponentVector, c: GaussianRational) -> Self {
        assert_eq!(exp.len(), n, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        SparsePolynomial { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in deterministic (storage) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExponentVector) -> GaussianRational {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// The support: all exponent vectors with nonzero coefficient.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.n, other.n, "ring mismatch");
        let mut terms = self.terms.clone();
        for (exp, c) in &other.terms {
            let entry = terms.entry(exp.clone()).or_insert_with(GaussianRational::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        SparsePolynomial { n: self.n, terms }
    }

    pub fn neg(&self) -> SparsePolynomial {
        SparsePolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> SparsePolynomial {
        if c.is_zero() {
            return SparsePolynomial::zero(self.n);
        }
        SparsePolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Product; errors only on exponent overflow (unreachable for parsed
    /// inputs, whose exponents are capped).
    pub fn mul(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        assert_eq!(self.n, other.n, "ring mismatch");
        let mut terms: BTreeMap<ExponentVector, GaussianRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.checked_add(eb)?;
                let entry = terms.entry(exp).or_insert_with(GaussianRational::zero);
                *entry = &*entry + &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial { n: self.n, terms })
    }

    /// Multiplies by the single term `c * z^exp`.
    pub fn mul_term(&self, exp: &ExponentVector, c: &GaussianRational) -> Result<SparsePolynomial> {
        if c.is_zero() {
            return Ok(SparsePolynomial::zero(self.n));
        }
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            terms.insert(e.checked_add(exp)?, v * c);
        }
        Ok(SparsePolynomial { n: self.n, terms })
    }

    /// Exact evaluation at a point of `Q(i)^n`.
    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.n, "point length mismatch");
        let mut acc = GaussianRational::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in exp.entries().iter().enumerate() {
                if e > 0 {
                    term = &term * &point[j].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Partial derivative with respect to variable slot `i` (0-based).
    pub fn partial_derivative(&self, i: usize) -> Result<SparsePolynomial> {
        if i >= self.n {
            return Err(Error::pre(format!(
                "derivative index {} out of range for {} variables",
                i, self.n
            )));
        }
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            let e = exp.get(i);
            if e == 0 {
                continue;
            }
            let mut entries = exp.entries().to_vec();
            entries[i] = e - 1;
            let factor = GaussianRational::from_int(e as i64);
            terms.insert(ExponentVector::new(entries), c * &factor);
        }
        Ok(SparsePolynomial { n: self.n, terms })
    }

    /// Restriction to the coordinate subspace `C^I`: keeps the terms whose
    /// support lies inside `I` (i.e. sets `z_j = 0` for `j` outside `I`).
    /// The ring keeps all `n` variables.
    pub fn restrict_to_subspace(&self, index: &SubspaceIndex) -> Result<SparsePolynomial> {
        if let Some(&bad) = index.indices().iter().find(|&&j| j >= self.n) {
            return Err(Error::pre(format!(
                "subspace index z{} exceeds the variable count {}",
                bad + 1,
                self.n
            )));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(exp, _)| exp.support().iter().all(|&j| index.contains(j)))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Ok(SparsePolynomial { n: self.n, terms })
    }

    /// Does any term involve the variable at `slot`?
    pub fn uses_variable(&self, slot: usize) -> bool {
        self.terms.keys().any(|e| e.get(slot) > 0)
    }

    /// Transports the polynomial into a ring of `new_n` variables, sending
    /// the variable at old slot `i` to new slot `map[i]`.  The map must be
    /// injective into `0..new_n`; unmapped new slots get exponent zero.
    pub fn remap_variables(&self, map: &[usize], new_n: usize) -> Result<SparsePolynomial> {
        if map.len() != self.n {
            return Err(Error::pre("variable map has the wrong arity"));
        }
        let mut seen = vec![false; new_n];
        for &m in map {
            if m >= new_n || seen[m] {
                return Err(Error::pre("variable map is not injective into the new ring"));
            }
            seen[m] = true;
        }
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            let mut entries = vec![0u32; new_n];
            for (old, &new) in map.iter().enumerate() {
                entries[new] = exp.get(old);
            }
            terms.insert(ExponentVector::new(entries), c.clone());
        }
        Ok(SparsePolynomial { n: new_n, terms })
    }

    /// Projects onto the listed slots (in the given order), which become
    /// the variables of a smaller ring.  Every term must be free of the
    /// remaining variables.
    pub fn extract_variables(&self, keep: &[usize]) -> Result<SparsePolynomial> {
        if let Some(&bad) = keep.iter().find(|&&s| s >= self.n) {
            return Err(Error::pre(format!("extracted slot {bad} out of range")));
        }
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            for s in exp.support() {
                if !keep.contains(&s) {
                    return Err(Error::pre(
                        "cannot extract: a term uses a variable outside the kept set",
                    ));
                }
            }
            let entries: Vec<u32> = keep.iter().map(|&s| exp.get(s)).collect();
            terms.insert(ExponentVector::new(entries), c.clone());
        }
        Ok(SparsePolynomial { n: keep.len(), terms })
    }

    /// The minimal weighted value `d_w = min_alpha <w, alpha>` over the
    /// support, together with the argmin set.  Errors on the zero
    /// polynomial, a length mismatch, or an all-zero weight.
    pub fn weighted_degree(&self, w: &[u64]) -> Result<(u64, Vec<ExponentVector>)> {
        if w.len() != self.n {
            return Err(Error::pre(format!(
                "weight vector has length {}, expected {}",
                w.len(),
                self.n
            )));
        }
        if self.is_zero() {
            return Err(Error::pre("weighted degree of the zero polynomial"));
        }
        if w.iter().all(|&x| x == 0) {
            return Err(Error::pre("weight vector must have a nonzero entry"));
        }
        let mut best: Option<(u64, Vec<ExponentVector>)> = None;
        for exp in self.terms.keys() {
            let v = exp.weighted_value(w)?;
            match &mut best {
                None => best = Some((v, vec![exp.clone()])),
                Some((d, argmin)) => {
                    if v < *d {
                        *d = v;
                        *argmin = vec![exp.clone()];
                    } else if v == *d {
                        argmin.push(exp.clone());
                    }
                }
            }
        }
        Ok(best.expect("nonzero polynomial has a support point"))
    }

    /// The pullback under the branched covering `z_j -> z_j^p`: every
    /// exponent is scaled by `p`.  Requires `p >= 1`.
    pub fn substitute_power(&self, p: u32) -> Result<SparsePolynomial> {
        if p == 0 {
            return Err(Error::pre("power substitution requires p >= 1"));
        }
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            terms.insert(exp.checked_scale(p)?, c.clone());
        }
        Ok(SparsePolynomial { n: self.n, terms })
    }

    /// Adds the pure powers `z_i^{N_i}` so that every coordinate axis meets
    /// the Newton boundary.  Each `N_i` must strictly exceed the maximal
    /// `z_i`-exponent already in the support; smaller values would move the
    /// existing boundary and are rejected.
    pub fn make_convenient(&self, exponents: &[u32]) -> Result<SparsePolynomial> {
        if exponents.len() != self.n {
            return Err(Error::pre(format!(
                "expected {} convenience exponents, got {}",
                self.n,
                exponents.len()
            )));
        }
        let mut result = self.clone();
        for (i, &ni) in exponents.iter().enumerate() {
            if ni == 0 {
                return Err(Error::pre(format!(
                    "convenience exponent for z{} must be positive",
                    i + 1
                )));
            }
            let max_i = self.terms.keys().map(|e| e.get(i)).max().unwrap_or(0);
            if ni <= max_i {
                return Err(Error::pre(format!(
                    "convenience exponent {} for z{} does not exceed the maximal \
                     existing exponent {}",
                    ni,
                    i + 1,
                    max_i
                )));
            }
            let mut entries = vec![0u32; self.n];
            entries[i] = ni;
            result = result.add(&SparsePolynomial::monomial(
                self.n,
                ExponentVector::new(entries),
                GaussianRational::one(),
            ));
        }
        Ok(result)
    }

    /// Canonical string with variables named by `ring` (graded-reverse-lex,
    /// leading term first).
    pub fn to_string_in(&self, ring: &Ring) -> String {
        self.to_string_ordered(ring, MonomialOrder::GrevLex)
    }

    /// String with the terms sorted descending by an explicit monomial
    /// order (so a Gröbner basis element leads with its own leading term).
    pub fn to_string_ordered(&self, ring: &Ring, order: MonomialOrder) -> String {
        assert_eq!(ring.len(), self.n, "ring length mismatch");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut monos: Vec<&ExponentVector> = self.terms.keys().collect();
        monos.sort_by(|a, b| order.cmp(b, a));
        let mut out = String::new();
        for (k, exp) in monos.iter().enumerate() {
            let c = &self.terms[*exp];
            let (negative, magnitude) = display_sign_split(c);
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term_body(&magnitude, exp, ring));
        }
        out
    }
}

/// Splits a coefficient into a printable sign and magnitude.  Real and pure
/// imaginary values fold their sign into the term join; full complex values
/// keep it inside parentheses.
fn display_sign_split(c: &GaussianRational) -> (bool, GaussianRational) {
    let negative = if c.is_real() {
        c.re().is_negative()
    } else if c.re().is_zero() {
        c.im().is_negative()
    } else {
        false
    };
    if negative {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn term_body(magnitude: &GaussianRational, exp: &ExponentVector, ring: &Ring) -> String {
    let mut mono = String::new();
    for (j, &e) in exp.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !mono.is_empty() {
            mono.push('*');
        }
        mono.push_str(&ring.name(j).to_string());
        if e > 1 {
            mono.push_str(&format!("^{e}"));
        }
    }
    let needs_parens = !magnitude.is_real() && !magnitude.re().is_zero();
    let coeff = if needs_parens {
        format!("({magnitude})")
    } else {
        magnitude.to_string()
    };
    if mono.is_empty() {
        coeff
    } else if magnitude.is_one() {
        mono
    } else {
        format!("{coeff}*{mono}")
    }
}

impl fmt::Display for SparsePolynomial {
    /// Prints in the germ ring `z1..zn`; other rings go through
    /// [`SparsePolynomial::to_string_in`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in(&Ring::germ(self.n)))
    }
}

/// A dense univariate polynomial in the family parameter `t`, used as the
/// coefficient of one monomial of a [`FamilyPolynomial`].  Kept normalized:
/// empty means zero, otherwise the last entry is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(Vec<GaussianRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(k: u32, c: GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k as usize + 1];
        coeffs[k as usize] = c;
        UniPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.0.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Nonzero terms as `(power of t, coefficient)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &GaussianRational)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.0.len().max(other.0.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(&self.coeff(k) + &other.coeff(k));
        }
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &GaussianRational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|v| v * c).collect())
    }

    pub fn eval(&self, t: &GaussianRational) -> GaussianRational {
        // Horner evaluation, exact.
        let mut acc = GaussianRational::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.0.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64 + 1))
                .collect(),
        )
    }
}

/// A one-parameter family `f_t(z) = sum_alpha c_alpha(t) z^alpha` with
/// polynomial coefficients `c_alpha` in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPolynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, UniPoly>,
}

impl FamilyPolynomial {
    pub fn new(
        n: usize,
        raw: impl IntoIterator<Item = (ExponentVector, UniPoly)>,
    ) -> Result<Self> {
        let mut terms: BTreeMap<ExponentVector, UniPoly> = BTreeMap::new();
        for (exp, c) in raw {
            if exp.len() != n {
                return Err(Error::pre(format!(
                    "exponent vector {} has length {}, expected {}",
                    exp,
                    exp.len(),
                    n
                )));
            }
            let entry = terms.entry(exp).or_insert_with(UniPoly::zero);
            *entry = entry.add(&c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FamilyPolynomial { n, terms })
    }

    /// Embeds a single polynomial as the constant family `f_t = p`.
    pub fn from_single(p: &SparsePolynomial) -> Self {
        FamilyPolynomial {
            n: p.n(),
            terms: p
                .terms()
                .map(|(e, c)| (e.clone(), UniPoly::constant(c.clone())))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &UniPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExponentVector) -> UniPoly {
        self.terms.get(exp).cloned().unwrap_or_else(UniPoly::zero)
    }

    /// True when no coefficient actually involves `t`.
    pub fn is_constant_in_t(&self) -> bool {
        self.terms.values().all(|c| c.degree() == Some(0))
    }

    pub fn max_t_degree(&self) -> usize {
        self.terms
            .values()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    /// The member `f_tau`: every coefficient evaluated at `t = tau`.
    pub fn specialize(&self, tau: &GaussianRational) -> SparsePolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.eval(tau)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SparsePolynomial { n: self.n, terms }
    }

    /// Support of the special member `f_0`.
    pub fn support_at_zero(&self) -> Vec<ExponentVector> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.coeff(0).is_zero())
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Support of the generic member (all monomials whose coefficient is not
    /// identically zero).
    pub fn support_generic(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Partial derivative in the coordinate `z_i` (0-based); `t` is a
    /// parameter and passes through.
    pub fn partial_derivative(&self, i: usize) -> Result<FamilyPolynomial> {
        if i >= self.n {
            return Err(Error::pre(format!(
                "derivative index {} out of range for {} variables",
                i, self.n
            )));
        }
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            let e = exp.get(i);
            if e == 0 {
                continue;
            }
            let mut entries = exp.entries().to_vec();
            entries[i] = e - 1;
            terms.insert(
                ExponentVector::new(entries),
                c.scale(&GaussianRational::from_int(e as i64)),
            );
        }
        Ok(FamilyPolynomial { n: self.n, terms })
    }

    /// Derivative in the parameter `t`.
    pub fn t_derivative(&self) -> FamilyPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.derivative()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        FamilyPolynomial { n: self.n, terms }
    }

    /// Memberwise pullback under `z_j -> z_j^p`; the parameter `t` is not
    /// touched.
    pub fn substitute_power(&self, p: u32) -> Result<FamilyPolynomial> {
        if p == 0 {
            return Err(Error::pre("power substitution requires p >= 1"));
        }
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            terms.insert(exp.checked_scale(p)?, c.clone());
        }
        Ok(FamilyPolynomial { n: self.n, terms })
    }

    /// Adds the t-independent pure powers `z_i^{N_i}` so every coordinate
    /// axis meets the Newton boundary of every member.  Each `N_i` must
    /// strictly exceed the maximal `z_i`-exponent in the support.
    pub fn make_convenient(&self, exponents: &[u32]) -> Result<FamilyPolynomial> {
        if exponents.len() != self.n {
            return Err(Error::pre(format!(
                "expected {} convenience exponents, got {}",
                self.n,
                exponents.len()
            )));
        }
        let mut terms = self.terms.clone();
        for (i, &ni) in exponents.iter().enumerate() {
            if ni == 0 {
                return Err(Error::pre(format!(
                    "convenience exponent for z{} must be positive",
                    i + 1
                )));
            }
            let max_i = self.terms.keys().map(|e| e.get(i)).max().unwrap_or(0);
            if ni <= max_i {
                return Err(Error::pre(format!(
                    "convenience exponent {} for z{} does not exceed the maximal \
                     existing exponent {}",
                    ni,
                    i + 1,
                    max_i
                )));
            }
            let mut entries = vec![0u32; self.n];
            entries[i] = ni;
            let exp = ExponentVector::new(entries);
            let previous = terms.remove(&exp).unwrap_or_else(UniPoly::zero);
            let bumped = previous.add(&UniPoly::constant(GaussianRational::one()));
            if !bumped.is_zero() {
                terms.insert(exp, bumped);
            }
        }
        Ok(FamilyPolynomial { n: self.n, terms })
    }

    /// Keeps the terms whose `z`-support lies inside `I`.
    pub fn restrict_to_subspace(&self, index: &SubspaceIndex) -> Result<FamilyPolynomial> {
        if let Some(&bad) = index.indices().iter().find(|&&j| j >= self.n) {
            return Err(Error::pre(format!(
                "subspace index z{} exceeds the variable count {}",
                bad + 1,
                self.n
            )));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(exp, _)| exp.support().iter().all(|&j| index.contains(j)))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Ok(FamilyPolynomial { n: self.n, terms })
    }

    /// The same family flattened into a polynomial in `n + 1` variables with
    /// `t` in the last slot — the joint ring `z1..zn, t`.
    pub fn to_joint(&self) -> SparsePolynomial {
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            for (k, v) in c.iter() {
                let mut entries = exp.entries().to_vec();
                entries.push(k as u32);
                terms.insert(ExponentVector::new(entries), v.clone());
            }
        }
        SparsePolynomial {
            n: self.n + 1,
            terms,
        }
    }
}

impl fmt::Display for FamilyPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_joint().to_string_in(&Ring::family(self.n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    pub(crate) fn poly(text: &str, n: usize) -> SparsePolynomial {
        match parse_polynomial(text, Some(n)).expect("test polynomial parses") {
            crate::parse::ParsedInput::Single(p) => p,
            crate::parse::ParsedInput::Family(_) => panic!("expected a plain polynomial"),
        }
    }

    pub(crate) fn family(text: &str, n: usize) -> FamilyPolynomial {
        match parse_polynomial(text, Some(n)).expect("test family parses") {
            crate::parse::ParsedInput::Single(p) => FamilyPolynomial::from_single(&p),
            crate::parse::ParsedInput::Family(f) => f,
        }
    }

    fn ev(entries: &[u32]) -> ExponentVector {
        ExponentVector::new(entries.to_vec())
    }

    #[test]
    fn construction_normalizes() {
        let p = SparsePolynomial::new(
            2,
            vec![
                (ev(&[1, 0]), GaussianRational::from_int(2)),
                (ev(&[1, 0]), GaussianRational::from_int(-2)),
                (ev(&[0, 1]), GaussianRational::from_int(3)),
            ],
        )
        .unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&ev(&[0, 1])), GaussianRational::from_int(3));
    }

    #[test]
    fn partial_derivative_examples() {
        let p = poly("z1^3 + z2^3 + z2*z3^2", 3);
        assert_eq!(p.partial_derivative(0).unwrap(), poly("3*z1^2", 3));
        assert_eq!(
            p.partial_derivative(2).unwrap(),
            poly("2*z2*z3", 3)
        );
        assert_eq!(
            poly("5", 2).partial_derivative(1).unwrap(),
            SparsePolynomial::zero(2)
        );
        assert!(p.partial_derivative(3).is_err());
    }

    #[test]
    fn leibniz_rule_sampled() {
        let mut rng = crate::testutil::SplitMix(7);
        for _ in 0..30 {
            let p = random_poly(&mut rng, 3);
            let q = random_poly(&mut rng, 3);
            for i in 0..3 {
                let lhs = p.mul(&q).unwrap().partial_derivative(i).unwrap();
                let rhs = p
                    .partial_derivative(i)
                    .unwrap()
                    .mul(&q)
                    .unwrap()
                    .add(&p.mul(&q.partial_derivative(i).unwrap()).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn random_poly(rng: &mut crate::testutil::SplitMix, n: usize) -> SparsePolynomial {
        let nt = rng.next() % 4;
        let mut terms = Vec::new();
        for _ in 0..nt {
            let exp: Vec<u32> = (0..n).map(|_| (rng.next() % 3) as u32).collect();
            terms.push((
                ExponentVector::new(exp),
                GaussianRational::from_int(rng.small(4)),
            ));
        }
        SparsePolynomial::new(n, terms).unwrap()
    }

    #[test]
    fn eval_is_a_ring_homomorphism_sampled() {
        let mut rng = crate::testutil::SplitMix(11);
        for _ in 0..30 {
            let p = random_poly(&mut rng, 2);
            let q = random_poly(&mut rng, 2);
            let point = vec![
                GaussianRational::from_ratio(rng.small(3).max(1), 2),
                GaussianRational::new(
                    BigRational::from_integer(BigInt::from(rng.small(2))),
                    BigRational::from_integer(BigInt::from(1)),
                ),
            ];
            assert_eq!(
                p.add(&q).eval(&point),
                &p.eval(&point) + &q.eval(&point)
            );
            assert_eq!(
                p.mul(&q).unwrap().eval(&point),
                &p.eval(&point) * &q.eval(&point)
            );
        }
    }

    #[test]
    fn restriction_examples() {
        let p = poly("z1^2 + z1*z3 + z2^2", 3);
        let i13 = SubspaceIndex::new(vec![0, 2], 3).unwrap();
        assert_eq!(
            p.restrict_to_subspace(&i13).unwrap(),
            poly("z1^2 + z1*z3", 3)
        );
        let empty = SubspaceIndex::empty();
        assert!(p.restrict_to_subspace(&empty).unwrap().is_zero());
        // A polynomial with constant term survives restriction to the origin.
        let q = poly("1 + z1", 1);
        assert_eq!(q.restrict_to_subspace(&empty).unwrap(), poly("1", 1));
    }

    #[test]
    fn restriction_evaluation_law_sampled() {
        // Restricting then evaluating equals evaluating with the off-subspace
        // coordinates zeroed.
        let mut rng = crate::testutil::SplitMix(13);
        for _ in 0..30 {
            let p = random_poly(&mut rng, 3);
            let mask = rng.next() % 8;
            let index = SubspaceIndex::from_mask(mask, 3);
            let mut point = vec![
                GaussianRational::from_int(rng.small(3)),
                GaussianRational::from_int(rng.small(3)),
                GaussianRational::from_int(rng.small(3)),
            ];
            for j in 0..3 {
                if !index.contains(j) {
                    point[j] = GaussianRational::zero();
                }
            }
            assert_eq!(
                p.restrict_to_subspace(&index).unwrap().eval(&point),
                p.eval(&point)
            );
        }
    }

    #[test]
    fn weighted_degree_examples() {
        let p = poly("z1^3 + z2^3 + z2*z3^2", 3);
        let (d, argmin) = p.weighted_degree(&[1, 3, 0]).unwrap();
        assert_eq!(d, 3);
        assert_eq!(argmin, vec![ev(&[0, 1, 2]), ev(&[3, 0, 0])]);
        let (d, argmin) = p.weighted_degree(&[1, 1, 1]).unwrap();
        assert_eq!(d, 3);
        assert_eq!(argmin.len(), 3);
        assert!(SparsePolynomial::zero(2).weighted_degree(&[1, 1]).is_err());
        assert!(p.weighted_degree(&[0, 0, 0]).is_err());
        assert!(p.weighted_degree(&[1, 1]).is_err());
    }

    #[test]
    fn substitute_power_scales_support() {
        let p = poly("z1^2*z2^3 + z1^3*z2^2", 2);
        let q = p.substitute_power(3).unwrap();
        assert_eq!(q, poly("z1^6*z2^9 + z1^9*z2^6", 2));
        assert_eq!(p.substitute_power(1).unwrap(), p);
        assert!(p.substitute_power(0).is_err());
        // Evaluation law: (S_p f)(z) = f(z^p).
        let point = vec![
            GaussianRational::from_ratio(1, 2),
            GaussianRational::from_int(-2),
        ];
        let cubed: Vec<GaussianRational> = point.iter().map(|z| z.pow(3)).collect();
        assert_eq!(q.eval(&point), p.eval(&cubed));
    }

    #[test]
    fn make_convenient_adds_axis_points() {
        let p = poly("z1^2*z2^3 + z1^3*z2^2", 2);
        let q = p.make_convenient(&[5, 5]).unwrap();
        assert_eq!(q, poly("z1^2*z2^3 + z1^3*z2^2 + z1^5 + z2^5", 2));
        // Already-convenient input gains points above the boundary.
        let r = poly("z1^2 + z2^2", 2).make_convenient(&[5, 5]).unwrap();
        assert_eq!(r, poly("z1^2 + z2^2 + z1^5 + z2^5", 2));
        // Too-small exponents would move the boundary and are rejected.
        assert!(p.make_convenient(&[3, 5]).is_err());
        assert!(p.make_convenient(&[5, 0]).is_err());
        assert!(p.make_convenient(&[5]).is_err());
        // The zero polynomial becomes a pure sum of powers.
        let z = SparsePolynomial::zero(2).make_convenient(&[2, 2]).unwrap();
        assert_eq!(z, poly("z1^2 + z2^2", 2));
    }

    #[test]
    fn family_specialization() {
        let f = family("z1^2*z2^3 + z1^3*z2^2 + t*z1^2*z2^4", 2);
        assert_eq!(
            f.specialize(&GaussianRational::zero()),
            poly("z1^2*z2^3 + z1^3*z2^2", 2)
        );
        assert_eq!(
            f.specialize(&GaussianRational::from_int(2)),
            poly("z1^2*z2^3 + z1^3*z2^2 + 2*z1^2*z2^4", 2)
        );
        assert_eq!(f.support_at_zero().len(), 2);
        assert_eq!(f.support_generic().len(), 3);
    }

    #[test]
    fn specialization_commutes_with_derivative_sampled() {
        let f = family("z1^2*z2^3 + t^2*z1*z2 + (1+i)*t*z2^2", 2);
        for tau in [
            GaussianRational::zero(),
            GaussianRational::from_int(3),
            GaussianRational::i(),
        ] {
            for i in 0..2 {
                assert_eq!(
                    f.partial_derivative(i).unwrap().specialize(&tau),
                    f.specialize(&tau).partial_derivative(i).unwrap()
                );
            }
        }
    }

    #[test]
    fn family_power_substitution_keeps_t() {
        let f = family("z1^2*z2^3 + t*z1^2*z2^4", 2);
        let g = f.substitute_power(2).unwrap();
        assert_eq!(g, family("z1^4*z2^6 + t*z1^4*z2^8", 2));
        assert!(!g.is_constant_in_t());
    }

    #[test]
    fn display_is_canonical_grevlex() {
        let p = poly("z2 + z1 + z1^2 + 1", 2);
        assert_eq!(p.to_string(), "z1^2 + z1 + z2 + 1");
        let q = poly("z1 - z2", 2);
        assert_eq!(q.to_string(), "z1 - z2");
        let r = poly("(1+2*i)*z1 - i*z2 + 1/2", 2);
        assert_eq!(r.to_string(), "(1+2*i)*z1 - i*z2 + 1/2");
        assert_eq!(SparsePolynomial::zero(2).to_string(), "0");
        let f = family("z2^2 - t^2*z1^2 - z1^3", 2);
        assert_eq!(f.to_string(), "-z1^2*t^2 - z1^3 + z2^2");
    }

    #[test]
    fn unipoly_normalization_and_eval() {
        let c = UniPoly::new(vec![
            GaussianRational::from_int(1),
            GaussianRational::from_int(2),
            GaussianRational::zero(),
        ]);
        assert_eq!(c.degree(), Some(1));
        assert_eq!(
            c.eval(&GaussianRational::from_int(3)),
            GaussianRational::from_int(7)
        );
        assert_eq!(c.derivative(), UniPoly::constant(GaussianRational::from_int(2)));
        assert!(UniPoly::new(vec![GaussianRational::zero()]).is_zero());
    }
}
