//! Regularity of a polynomial germ: non-degeneracy of the compact face
//! functions and local tameness along the essential non-compact faces.
//!
//! *Non-degeneracy*: for every compact face Δ of the Newton polyhedron, the
//! face function f_Δ must have no critical point in the torus (ℂ*)ⁿ.  Each
//! face is decided exactly by saturating the partial-derivative ideal at
//! the coordinate product; single-monomial faces are decided by the closed
//! form (a nonzero monomial never vanishes on the torus).
//!
//! *Local tameness*: for an essential non-compact face with recession
//! directions I and remaining coordinates J, the face function is viewed
//! as a family over the boundary coordinates u_I.  Critical points in the
//! (z_J, u_I)-torus are projected to u_I by elimination; the resulting
//! obstruction ideal E ⊆ ℚ(i)[u_I] describes where the z_J-criticality
//! accumulates.  The germ is locally tame along the face exactly when the
//! origin avoids V(E) — when E contains an element with a nonzero constant
//! term — and the distance from the origin to V(E) is the tameness radius.
//! For a single boundary direction the radius is computed from the
//! principal generator's minimal root modulus: exactly when the modulus is
//! rational, by a certified rational interval otherwise.

use crate::groebner::{buchberger, eliminate, saturate, GroebnerBasis, GroebnerConfig, Ideal, MonomialOrder};
use crate::poly::{ExponentVector, SparsePolynomial, SubspaceIndex, UniPoly};
use crate::polyhedron::{compact_faces, essential_noncompact_faces, face_function, Face};
use crate::rational::GaussianRational;
use crate::ring::{Ring, VarName};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A three-valued answer: budgets can leave a question undecided, and an
/// undecided question must never be reported as a yes or a no.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn label(&self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        }
    }

    fn and(self, other: Answer) -> Answer {
        match (self, other) {
            (Answer::No, _) | (_, Answer::No) => Answer::No,
            (Answer::Unknown, _) | (_, Answer::Unknown) => Answer::Unknown,
            _ => Answer::Yes,
        }
    }
}

pub(crate) fn require_germ(f: &SparsePolynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::pre("the zero polynomial is not a hypersurface germ"));
    }
    let origin = ExponentVector::zero(f.n());
    if !f.coeff(&origin).is_zero() {
        return Err(Error::pre(
            "the polynomial has a constant term, so it is not a germ through the origin",
        ));
    }
    if f.n() == 0 {
        return Err(Error::pre("a germ needs at least one variable"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Non-degeneracy
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct FaceNondegeneracy {
    pub face: Face,
    pub answer: Answer,
    /// Decided by the single-monomial closed form, without a Gröbner run.
    pub via_monomial_bypass: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NondegeneracyReport {
    pub faces: Vec<FaceNondegeneracy>,
    pub answer: Answer,
    /// True when at least one face ran out of budget.
    pub exhausted: bool,
}

/// Does the face function of `face` have a critical point in the torus?
/// Exact decision via saturation at the coordinate product.
fn face_has_torus_critical_point(
    f: &SparsePolynomial,
    face: &Face,
    config: &GroebnerConfig,
) -> Result<bool> {
    let n = f.n();
    let g = face_function(f, face);
    let mut partials = Vec::with_capacity(n);
    for i in 0..n {
        partials.push(g.partial_derivative(i)?);
    }
    let ideal = Ideal::new(Ring::germ(n), partials)?;
    crate::groebner::torus_has_zero(&ideal, config)
}

/// Non-degeneracy across every compact face of the Newton polyhedron.
pub fn check_nondegenerate(
    f: &SparsePolynomial,
    config: &GroebnerConfig,
) -> Result<NondegeneracyReport> {
    require_germ(f)?;
    let support = f.support();
    let faces = compact_faces(&support, f.n())?;
    let mut out = Vec::with_capacity(faces.len());
    let mut exhausted = false;
    for face in faces {
        if face.support_points.len() == 1 {
            // A single-monomial face function c·z^α with α ≠ 0 has a
            // partial derivative that is itself a nonzero monomial, which
            // cannot vanish on the torus.
            out.push(FaceNondegeneracy {
                face,
                answer: Answer::Yes,
                via_monomial_bypass: true,
                note: None,
            });
            continue;
        }
        match face_has_torus_critical_point(f, &face, config) {
            Ok(critical) => out.push(FaceNondegeneracy {
                face,
                answer: if critical { Answer::No } else { Answer::Yes },
                via_monomial_bypass: false,
                note: None,
            }),
            Err(Error::ResourceExhausted { resource, limit }) => {
                exhausted = true;
                out.push(FaceNondegeneracy {
                    face,
                    answer: Answer::Unknown,
                    via_monomial_bypass: false,
                    note: Some(format!("budget exhausted: {resource} (limit {limit})")),
                });
            }
            Err(e) => return Err(e),
        }
    }
    let answer = out
        .iter()
        .map(|fd| fd.answer)
        .fold(Answer::Yes, Answer::and);
    Ok(NondegeneracyReport {
        faces: out,
        answer,
        exhausted,
    })
}

// ---------------------------------------------------------------------------
// Radii
// ---------------------------------------------------------------------------

/// A tameness radius: how far from the boundary subspace the germ is known
/// to stay regular.
#[derive(Debug, Clone, PartialEq)]
pub enum Radius {
    /// No obstruction at any distance.
    Infinite,
    /// The exact distance from the origin to the obstruction locus.
    Exact(BigRational),
    /// A certified rational enclosure of that distance.
    Interval { lo: BigRational, hi: BigRational },
    /// Positive (the origin avoids the obstruction locus), but the
    /// distance is not computed for multi-dimensional boundaries.
    UncertifiedPositive,
}

impl Radius {
    /// Infimum of two radii, kept conservative: enclosures widen, and an
    /// uncertified value stays uncertified unless the other side is a
    /// certified value known to lie below any positive number — which
    /// never happens, so uncertainty is contagious.
    pub fn combine(&self, other: &Radius) -> Radius {
        use Radius::*;
        match (self, other) {
            (Infinite, r) | (r, Infinite) => r.clone(),
            (UncertifiedPositive, _) | (_, UncertifiedPositive) => UncertifiedPositive,
            (Exact(a), Exact(b)) => Exact(a.min(b).clone()),
            (Exact(a), Interval { lo, hi }) | (Interval { lo, hi }, Exact(a)) => {
                if a <= lo {
                    Exact(a.clone())
                } else if a >= hi {
                    Interval {
                        lo: lo.clone(),
                        hi: hi.clone(),
                    }
                } else {
                    Interval {
                        lo: lo.clone(),
                        hi: a.clone(),
                    }
                }
            }
            (
                Interval { lo: a, hi: b },
                Interval { lo: c, hi: d },
            ) => Interval {
                lo: a.min(c).clone(),
                hi: b.min(d).clone(),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Radius::Infinite => "infinite".to_string(),
            Radius::Exact(q) => format!("exactly {q}"),
            Radius::Interval { lo, hi } => format!("within [{lo}, {hi}]"),
            Radius::UncertifiedPositive => "positive (value not computed)".to_string(),
        }
    }
}

/// `√q` when it is rational: both numerator and denominator must be
/// perfect squares.
fn exact_rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let ns = q.numer().sqrt();
    let ds = q.denom().sqrt();
    if &(&ns * &ns) == q.numer() && &(&ds * &ds) == q.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// A rational `u ≥ q^(1/d)` for nonnegative `q` (tight up to 1/denominator).
fn rational_root_upper(q: &BigRational, d: u32) -> BigRational {
    assert!(d >= 1 && !q.is_negative());
    // q^(1/d) = (numer · denom^{d-1})^(1/d) / denom.
    let denom = q.denom().clone();
    let mut scaled = q.numer().clone();
    for _ in 1..d {
        scaled *= &denom;
    }
    let root = scaled.nth_root(d);
    let exact = num_traits::pow::pow(root.clone(), d as usize) == scaled;
    let up = if exact { root } else { root + BigInt::one() };
    BigRational::new(up, denom)
}

/// A rational `l` with `0 ≤ l ≤ q^(1/d)`.
fn rational_root_lower(q: &BigRational, d: u32) -> BigRational {
    assert!(d >= 1 && !q.is_negative());
    let denom = q.denom().clone();
    let mut scaled = q.numer().clone();
    for _ in 1..d {
        scaled *= &denom;
    }
    BigRational::new(scaled.nth_root(d), denom)
}

/// Minimal root modulus of a univariate polynomial with a nonzero constant
/// term, as an exact rational or a certified interval.
///
/// Exactness is attempted for degree one (modulus² is rational).  In
/// general the interval is
/// `[ 1/(1 + max_k |c_k/c_0|) , |c_0/c_d|^{1/d} ]`:
/// the lower end is a Cauchy bound on the reversed polynomial, the upper
/// end dominates the geometric mean of the root moduli.
fn min_root_modulus(g: &UniPoly) -> Radius {
    let d = g.degree().expect("nonzero polynomial") as u32;
    assert!(d >= 1, "constants have no roots");
    let c0 = g.coeff(0);
    assert!(!c0.is_zero(), "zero constant term has root 0");
    let cd = g.coeff(d as usize);
    let n0 = c0.norm_sqr();
    if d == 1 {
        // Single root −c0/c1 with modulus √(|c0|²/|c1|²).
        let ratio = &n0 / cd.norm_sqr();
        if let Some(m) = exact_rational_sqrt(&ratio) {
            return Radius::Exact(m);
        }
        return Radius::Interval {
            lo: rational_root_lower(&ratio, 2),
            hi: rational_root_upper(&ratio, 2),
        };
    }
    // max_k≥1 |c_k/c_0|, bounded above in ℚ via |x| = √(norm x).
    let mut max_ratio = BigRational::zero();
    for k in 1..=d as usize {
        let ck = g.coeff(k);
        if ck.is_zero() {
            continue;
        }
        let bound = rational_root_upper(&(ck.norm_sqr() / &n0), 2);
        if bound > max_ratio {
            max_ratio = bound;
        }
    }
    let lo = (BigRational::one() + max_ratio).recip();
    let hi = rational_root_upper(&(&n0 / cd.norm_sqr()), 2 * d);
    Radius::Interval { lo, hi }
}

// ---------------------------------------------------------------------------
// Local tameness
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TamenessVerdict {
    LocallyTame,
    NotLocallyTame,
    Unknown,
}

impl TamenessVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            TamenessVerdict::LocallyTame => "locally-tame",
            TamenessVerdict::NotLocallyTame => "not-locally-tame",
            TamenessVerdict::Unknown => "unknown",
        }
    }
}

/// Tameness data for one essential non-compact face.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceTameness {
    pub face: Face,
    pub verdict: TamenessVerdict,
    /// Present exactly for locally tame faces.
    pub radius: Option<Radius>,
    /// Reduced basis of the obstruction ideal E ⊆ ℚ(i)[u_I].
    pub obstruction: GroebnerBasis,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TamenessReport {
    pub faces: Vec<FaceTameness>,
    /// Infimum radius per boundary direction I (None when some face of
    /// that direction is not tame or undecided).
    pub per_direction: Vec<(SubspaceIndex, Option<Radius>)>,
    /// Infimum over all directions: the global non-compact radius.
    pub r_nc: Option<Radius>,
    pub answer: Answer,
    pub exhausted: bool,
}

/// The ring ℚ(i)[z_J, u_I] used for one face's tameness computation: the
/// surviving coordinates keep their names, the boundary coordinates become
/// u-variables, and a map from the original slots is returned alongside.
fn tameness_ring(face: &Face, n: usize) -> (Ring, Vec<usize>, usize) {
    let i_indices = face.direction.indices();
    let j = face.direction.complement(n);
    let j_indices = j.indices();
    let mut names = Vec::with_capacity(n);
    for &jn in j_indices {
        names.push(VarName::Z(jn));
    }
    for &ii in i_indices {
        names.push(VarName::U(ii));
    }
    let mut map = vec![0usize; n];
    for (pos, &jn) in j_indices.iter().enumerate() {
        map[jn] = pos;
    }
    for (pos, &ii) in i_indices.iter().enumerate() {
        map[ii] = j_indices.len() + pos;
    }
    (Ring::new(names), map, j_indices.len())
}

fn empty_obstruction(ring: &Ring) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        order: MonomialOrder::GrevLex,
        elements: Vec::new(),
    }
}

fn face_tameness_inner(
    f: &SparsePolynomial,
    face: &Face,
    config: &GroebnerConfig,
) -> Result<FaceTameness> {
    let n = f.n();
    let (ring, map, j_count) = tameness_ring(face, n);
    let i_count = n - j_count;
    debug_assert!(j_count >= 1 && i_count >= 1);

    let p = face_function(f, face).remap_variables(&map, n)?;
    let mut partials = Vec::with_capacity(j_count);
    for slot in 0..j_count {
        partials.push(p.partial_derivative(slot)?);
    }
    let ideal = Ideal::new(ring.clone(), partials)?;
    let all_vars = SparsePolynomial::new(
        n,
        vec![(ExponentVector::new(vec![1; n]), GaussianRational::one())],
    )?;
    let saturated = saturate(&ideal, &all_vars, config)?;
    let sat_ideal = Ideal::new(ring.clone(), saturated.elements.clone())?;
    let obstruction = eliminate(&sat_ideal, &(0..j_count).collect::<Vec<_>>(), config)?;

    if obstruction.is_unit() {
        return Ok(FaceTameness {
            face: face.clone(),
            verdict: TamenessVerdict::LocallyTame,
            radius: Some(Radius::Infinite),
            obstruction,
            note: None,
        });
    }
    let origin = ExponentVector::zero(i_count);
    let off_origin = obstruction
        .elements
        .iter()
        .any(|e| !e.coeff(&origin).is_zero());
    if !off_origin {
        // The obstruction locus reaches the origin: z-critical points
        // accumulate on the boundary subspace arbitrarily close to 0.
        return Ok(FaceTameness {
            face: face.clone(),
            verdict: TamenessVerdict::NotLocallyTame,
            radius: None,
            obstruction,
            note: None,
        });
    }
    let radius = if i_count == 1 {
        // E is an ideal of ℚ(i)[u] and its reduced basis is a single
        // generator; the radius is the distance from 0 to its root set.
        debug_assert_eq!(obstruction.elements.len(), 1);
        let g = &obstruction.elements[0];
        let coeffs: Vec<GaussianRational> = (0..=g
            .total_degree()
            .expect("nonzero generator") as usize)
            .map(|k| g.coeff(&ExponentVector::new(vec![k as u32])))
            .collect();
        min_root_modulus(&UniPoly::new(coeffs))
    } else {
        Radius::UncertifiedPositive
    };
    Ok(FaceTameness {
        face: face.clone(),
        verdict: TamenessVerdict::LocallyTame,
        radius: Some(radius),
        obstruction,
        note: None,
    })
}

/// Local tameness of one essential non-compact face; budget exhaustion
/// yields an `Unknown` verdict, not an error.
pub fn check_local_tameness(
    f: &SparsePolynomial,
    face: &Face,
    config: &GroebnerConfig,
) -> Result<FaceTameness> {
    require_germ(f)?;
    if face.is_compact() {
        return Err(Error::pre(
            "local tameness concerns non-compact faces; this face is compact",
        ));
    }
    match face_tameness_inner(f, face, config) {
        Ok(t) => Ok(t),
        Err(Error::ResourceExhausted { resource, limit }) => {
            let (ring, _, j_count) = tameness_ring(face, f.n());
            let u_ring = ring.select(&(j_count..f.n()).collect::<Vec<_>>());
            Ok(FaceTameness {
                face: face.clone(),
                verdict: TamenessVerdict::Unknown,
                radius: None,
                obstruction: empty_obstruction(&u_ring),
                note: Some(format!("budget exhausted: {resource} (limit {limit})")),
            })
        }
        Err(e) => Err(e),
    }
}

/// Local tameness across every essential non-compact face, with per-
/// direction infimum radii and the global non-compact radius.
pub fn tameness_report(f: &SparsePolynomial, config: &GroebnerConfig) -> Result<TamenessReport> {
    require_germ(f)?;
    let support = f.support();
    let faces = essential_noncompact_faces(&support, f.n())?;
    let mut results: Vec<FaceTameness> = Vec::with_capacity(faces.len());
    for face in &faces {
        results.push(check_local_tameness(f, face, config)?);
    }
    let mut directions: Vec<SubspaceIndex> = results
        .iter()
        .map(|t| t.face.direction.clone())
        .collect();
    directions.sort_by(|a, b| (a.len(), a.indices()).cmp(&(b.len(), b.indices())));
    directions.dedup();
    let mut per_direction = Vec::with_capacity(directions.len());
    for dir in directions {
        let mut radius: Option<Radius> = Some(Radius::Infinite);
        for t in results.iter().filter(|t| t.face.direction == dir) {
            radius = match (&radius, &t.radius) {
                (Some(acc), Some(r)) => Some(acc.combine(r)),
                _ => None,
            };
        }
        per_direction.push((dir, radius));
    }
    let mut r_nc: Option<Radius> = Some(Radius::Infinite);
    for (_, r) in &per_direction {
        r_nc = match (&r_nc, r) {
            (Some(acc), Some(r)) => Some(acc.combine(r)),
            _ => None,
        };
    }
    let exhausted = results
        .iter()
        .any(|t| t.verdict == TamenessVerdict::Unknown);
    let answer = if results
        .iter()
        .any(|t| t.verdict == TamenessVerdict::NotLocallyTame)
    {
        Answer::No
    } else if exhausted {
        Answer::Unknown
    } else {
        Answer::Yes
    };
    Ok(TamenessReport {
        faces: results,
        per_direction,
        r_nc,
        answer,
        exhausted,
    })
}

/// Convenience wrapper: nondegenerate and locally tame.
pub fn check_regular(
    f: &SparsePolynomial,
    config: &GroebnerConfig,
) -> Result<(NondegeneracyReport, TamenessReport)> {
    let nd = check_nondegenerate(f, config)?;
    let tame = tameness_report(f, config)?;
    Ok((nd, tame))
}

// A tiny helper for tests and the family module: the reduced Gröbner basis
// of the ideal generated by the given polynomials in the germ ring.
#[allow(dead_code)]
pub(crate) fn germ_basis(
    gens: Vec<SparsePolynomial>,
    n: usize,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    let ideal = Ideal::new(Ring::germ(n), gens)?;
    buchberger(&ideal, MonomialOrder::GrevLex, config)
}
