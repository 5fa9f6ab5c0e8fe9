//! Admissibility of a one-parameter family f_t(z): independence of the
//! Newton boundary, non-degeneracy uniformly in the parameter, and uniform
//! local tameness.
//!
//! All three checks compare the family against the *generic* Newton
//! polyhedron (the polyhedron of the union of the members' supports).
//! Boundary independence asks that the special member f_0 has the same
//! polyhedron, which reduces to vertex-set equality; once it holds, the
//! remaining two checks run face by face over the common polyhedron, with
//! the parameter `t` carried through the critical-point elimination as an
//! extra coordinate that is *not* inverted.  A face passes when the
//! eliminated ideal contains an element with a nonzero constant term —
//! the obstruction locus then stays away from t = 0 (and, for tameness,
//! from the boundary subspace), so the property holds uniformly for all
//! small parameter values.

use crate::groebner::{eliminate, saturate, GroebnerBasis, GroebnerConfig, Ideal};
use crate::poly::{ExponentVector, FamilyPolynomial, SparsePolynomial};
use crate::polyhedron::{compact_faces, essential_noncompact_faces, vertices, Face};
use crate::rational::GaussianRational;
use crate::regularity::Answer;
use crate::ring::{Ring, VarName};
use crate::{Error, Result};

pub(crate) fn require_family_germ(fam: &FamilyPolynomial) -> Result<()> {
    if fam.is_zero() {
        return Err(Error::pre("the zero family is not a family of germs"));
    }
    if fam.n() == 0 {
        return Err(Error::pre("a family of germs needs at least one variable"));
    }
    let origin = ExponentVector::zero(fam.n());
    if !fam.coeff(&origin).is_zero() {
        return Err(Error::pre(
            "the family has a constant term in the coordinates, so its members are not germs through the origin",
        ));
    }
    if fam.support_at_zero().is_empty() {
        return Err(Error::pre(
            "the special member f_0 is the zero polynomial, so it is not a hypersurface germ",
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Boundary independence
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryIndependence {
    pub holds: bool,
    pub vertices_at_zero: Vec<ExponentVector>,
    pub vertices_generic: Vec<ExponentVector>,
    /// A vertex of the generic polyhedron that the special member misses
    /// (present exactly when the check fails).
    pub counterexample: Option<ExponentVector>,
}

/// Does the Newton polyhedron of f_0 agree with the generic one?  Vertex
/// sets determine the polyhedra, so equality of the two vertex sets is the
/// whole check.
pub fn check_boundary_independence(fam: &FamilyPolynomial) -> Result<BoundaryIndependence> {
    require_family_germ(fam)?;
    let n = fam.n();
    let vertices_at_zero = vertices(&fam.support_at_zero(), n)?;
    let vertices_generic = vertices(&fam.support_generic(), n)?;
    let holds = vertices_at_zero == vertices_generic;
    // The special polyhedron sits inside the generic one, so whenever they
    // differ some generic vertex lies strictly outside the special
    // polyhedron; it cannot be a special vertex.
    let counterexample = if holds {
        None
    } else {
        vertices_generic
            .iter()
            .find(|v| !vertices_at_zero.contains(v))
            .cloned()
    };
    Ok(BoundaryIndependence {
        holds,
        vertices_at_zero,
        vertices_generic,
        counterexample,
    })
}

fn require_common_boundary(fam: &FamilyPolynomial) -> Result<()> {
    let boundary = check_boundary_independence(fam)?;
    if !boundary.holds {
        return Err(Error::pre(
            "the Newton boundary of the family jumps at t = 0; the common-polyhedron checks do not apply",
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Per-face parametric checks
// ---------------------------------------------------------------------------

/// Outcome of one per-face check, with the eliminated ideal as the
/// certificate and, on a pass, the basis element whose nonzero constant
/// term witnesses it.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceCheck {
    pub face: Face,
    pub answer: Answer,
    /// Reduced basis of the eliminated obstruction ideal.
    pub certificate: GroebnerBasis,
    /// A certificate element with a nonzero constant term, when passing.
    pub witness: Option<SparsePolynomial>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyNondegeneracy {
    pub faces: Vec<FaceCheck>,
    pub answer: Answer,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformTameness {
    pub faces: Vec<FaceCheck>,
    pub answer: Answer,
    pub exhausted: bool,
}

/// Writes the family terms supported on `points` into a polynomial ring
/// with an explicit slot layout: coordinate `i` goes to slot `z_map[i]`
/// and the parameter goes to `t_slot`.
fn flatten_face(
    fam: &FamilyPolynomial,
    points: &[ExponentVector],
    z_map: &[usize],
    t_slot: usize,
    m: usize,
) -> Result<SparsePolynomial> {
    let mut terms: Vec<(ExponentVector, GaussianRational)> = Vec::new();
    for alpha in points {
        let c = fam.coeff(alpha);
        let degree = match c.degree() {
            Some(d) => d,
            None => continue,
        };
        for k in 0..=degree {
            let ck = c.coeff(k);
            if ck.is_zero() {
                continue;
            }
            let mut entries = vec![0u32; m];
            for (i, &slot) in z_map.iter().enumerate() {
                entries[slot] = alpha.get(i);
            }
            entries[t_slot] = u32::try_from(k)
                .map_err(|_| Error::pre("parameter exponent is out of range"))?;
            terms.push((ExponentVector::new(entries), ck));
        }
    }
    SparsePolynomial::new(m, terms)
}

/// Saturate the z-partials of `p` at the monomial with exponent one on
/// `invert` (and zero elsewhere), then eliminate the first `drop` slots.
fn project_critical_locus(
    ring: &Ring,
    p: &SparsePolynomial,
    drop: usize,
    invert: &[usize],
    config: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    let m = ring.len();
    let mut partials = Vec::with_capacity(drop);
    for slot in 0..drop {
        partials.push(p.partial_derivative(slot)?);
    }
    let ideal = Ideal::new(ring.clone(), partials)?;
    let mut entries = vec![0u32; m];
    for &slot in invert {
        entries[slot] = 1;
    }
    let product = SparsePolynomial::new(
        m,
        vec![(ExponentVector::new(entries), GaussianRational::one())],
    )?;
    let saturated = saturate(&ideal, &product, config)?;
    let sat_ideal = Ideal::new(ring.clone(), saturated.elements.clone())?;
    eliminate(&sat_ideal, &(0..drop).collect::<Vec<_>>(), config)
}

fn face_check_from_certificate(face: &Face, certificate: GroebnerBasis) -> FaceCheck {
    let origin = ExponentVector::zero(certificate.ring.len());
    let witness = certificate
        .elements
        .iter()
        .find(|e| !e.coeff(&origin).is_zero())
        .cloned();
    let answer = if witness.is_some() {
        Answer::Yes
    } else {
        Answer::No
    };
    FaceCheck {
        face: face.clone(),
        answer,
        certificate,
        witness,
        note: None,
    }
}

fn exhausted_face_check(face: &Face, ring: Ring, resource: &str, limit: u64) -> FaceCheck {
    FaceCheck {
        face: face.clone(),
        answer: Answer::Unknown,
        certificate: GroebnerBasis {
            ring,
            order: crate::groebner::MonomialOrder::GrevLex,
            elements: Vec::new(),
        },
        witness: None,
        note: Some(format!("budget exhausted: {resource} (limit {limit})")),
    }
}

/// Non-degeneracy of every member f_t for small t, checked per compact
/// face of the common Newton polyhedron.  The parameter rides along as an
/// extra non-inverted coordinate; eliminating the coordinates leaves an
/// ideal E(t) whose zero set is the closure of the degenerate parameter
/// values, and the family passes a face when 0 avoids it.
pub fn check_family_nondegeneracy(
    fam: &FamilyPolynomial,
    config: &GroebnerConfig,
) -> Result<FamilyNondegeneracy> {
    require_common_boundary(fam)?;
    let n = fam.n();
    let ring = Ring::family(n);
    let z_map: Vec<usize> = (0..n).collect();
    let faces = compact_faces(&fam.support_generic(), n)?;
    let mut out = Vec::with_capacity(faces.len());
    let mut exhausted = false;
    for face in &faces {
        let p = flatten_face(fam, &face.support_points, &z_map, n, n + 1)?;
        match project_critical_locus(&ring, &p, n, &z_map, config) {
            Ok(cert) => out.push(face_check_from_certificate(face, cert)),
            Err(Error::ResourceExhausted { resource, limit }) => {
                exhausted = true;
                out.push(exhausted_face_check(face, ring.select(&[n]), resource, limit));
            }
            Err(e) => return Err(e),
        }
    }
    let answer = out
        .iter()
        .map(|fc| fc.answer)
        .fold(Answer::Yes, |a, b| match (a, b) {
            (Answer::No, _) | (_, Answer::No) => Answer::No,
            (Answer::Unknown, _) | (_, Answer::Unknown) => Answer::Unknown,
            _ => Answer::Yes,
        });
    Ok(FamilyNondegeneracy {
        faces: out,
        answer,
        exhausted,
    })
}

/// Local tameness of every member f_t for small t, uniformly: per
/// essential non-compact face, the eliminated obstruction ideal lives in
/// ℚ(i)[t, u_I], and a face passes when its zero set avoids the point
/// (t, u) = 0 — witnessed by an element with a nonzero constant term.
pub fn check_uniform_tameness(
    fam: &FamilyPolynomial,
    config: &GroebnerConfig,
) -> Result<UniformTameness> {
    require_common_boundary(fam)?;
    let n = fam.n();
    let faces = essential_noncompact_faces(&fam.support_generic(), n)?;
    let mut out = Vec::with_capacity(faces.len());
    let mut exhausted = false;
    for face in &faces {
        let i_indices = face.direction.indices();
        let j = face.direction.complement(n);
        let j_indices = j.indices();
        let j_count = j_indices.len();
        let m = n + 1;
        let mut names = Vec::with_capacity(m);
        for &jn in j_indices {
            names.push(VarName::Z(jn));
        }
        names.push(VarName::T);
        for &ii in i_indices {
            names.push(VarName::U(ii));
        }
        let ring = Ring::new(names);
        let mut z_map = vec![0usize; n];
        for (pos, &jn) in j_indices.iter().enumerate() {
            z_map[jn] = pos;
        }
        for (pos, &ii) in i_indices.iter().enumerate() {
            z_map[ii] = j_count + 1 + pos;
        }
        // Invert every coordinate (z_J and u_I) but not the parameter.
        let invert: Vec<usize> = (0..j_count).chain(j_count + 1..m).collect();
        let p = flatten_face(fam, &face.support_points, &z_map, j_count, m)?;
        match project_critical_locus(&ring, &p, j_count, &invert, config) {
            Ok(cert) => out.push(face_check_from_certificate(face, cert)),
            Err(Error::ResourceExhausted { resource, limit }) => {
                exhausted = true;
                let kept: Vec<usize> = (j_count..m).collect();
                out.push(exhausted_face_check(face, ring.select(&kept), resource, limit));
            }
            Err(e) => return Err(e),
        }
    }
    let answer = out
        .iter()
        .map(|fc| fc.answer)
        .fold(Answer::Yes, |a, b| match (a, b) {
            (Answer::No, _) | (_, Answer::No) => Answer::No,
            (Answer::Unknown, _) | (_, Answer::Unknown) => Answer::Unknown,
            _ => Answer::Yes,
        });
    Ok(UniformTameness {
        faces: out,
        answer,
        exhausted,
    })
}

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub boundary: BoundaryIndependence,
    /// Absent when the boundary jumps (the checks do not apply).
    pub nondegeneracy: Option<FamilyNondegeneracy>,
    pub tameness: Option<UniformTameness>,
    pub answer: Answer,
    /// An admissible family is uniformly smooth away from the axes up to
    /// some positive radius; only the existence is asserted.
    pub uniform_smoothness: Option<&'static str>,
    pub exhausted: bool,
}

/// The full admissibility verdict: boundary independence, family
/// non-degeneracy, and uniform local tameness.
pub fn check_admissible(
    fam: &FamilyPolynomial,
    config: &GroebnerConfig,
) -> Result<AdmissibilityReport> {
    require_family_germ(fam)?;
    let boundary = check_boundary_independence(fam)?;
    if !boundary.holds {
        return Ok(AdmissibilityReport {
            boundary,
            nondegeneracy: None,
            tameness: None,
            answer: Answer::No,
            uniform_smoothness: None,
            exhausted: false,
        });
    }
    let nondegeneracy = check_family_nondegeneracy(fam, config)?;
    let tameness = check_uniform_tameness(fam, config)?;
    let answer = match (nondegeneracy.answer, tameness.answer) {
        (Answer::No, _) | (_, Answer::No) => Answer::No,
        (Answer::Unknown, _) | (_, Answer::Unknown) => Answer::Unknown,
        _ => Answer::Yes,
    };
    let exhausted = nondegeneracy.exhausted || tameness.exhausted;
    Ok(AdmissibilityReport {
        boundary,
        nondegeneracy: Some(nondegeneracy),
        tameness: Some(tameness),
        answer,
        uniform_smoothness: if answer == Answer::Yes {
            Some("exists-not-computed")
        } else {
            None
        },
        exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, ParsedInput};
    use crate::regularity::{check_nondegenerate, tameness_report};
    use crate::testutil::SplitMix;
    use crate::poly::UniPoly;

    fn family(text: &str, n: usize) -> FamilyPolynomial {
        match parse_polynomial(text, Some(n)).expect("test family parses") {
            ParsedInput::Family(f) => f,
            ParsedInput::Single(p) => FamilyPolynomial::from_single(&p),
        }
    }

    fn config() -> GroebnerConfig {
        GroebnerConfig::default()
    }

    fn ev(entries: Vec<u32>) -> ExponentVector {
        ExponentVector::new(entries)
    }

    #[test]
    fn boundary_independence_of_curve_families() {
        let f = family("z1^2*z2^3 + z1^3*z2^2 + t*z1^2*z2^4", 2);
        let b = check_boundary_independence(&f).unwrap();
        assert!(b.holds);
        assert_eq!(b.vertices_generic, vec![ev(vec![2, 3]), ev(vec![3, 2])]);
        assert_eq!(b.vertices_at_zero, b.vertices_generic);
        assert!(b.counterexample.is_none());
    }

    #[test]
    fn boundary_jump_is_detected_with_counterexample() {
        let f = family("t^2*z1^2 - z2^2", 2);
        let b = check_boundary_independence(&f).unwrap();
        assert!(!b.holds);
        assert_eq!(b.counterexample, Some(ev(vec![2, 0])));
        assert_eq!(b.vertices_at_zero, vec![ev(vec![0, 2])]);
        assert_eq!(b.vertices_generic, vec![ev(vec![0, 2]), ev(vec![2, 0])]);
        // The common-polyhedron checks refuse to run on such a family.
        assert!(matches!(
            check_family_nondegeneracy(&f, &config()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_uniform_tameness(&f, &config()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn family_nondegeneracy_of_the_curve_family() {
        let f = family("z1^2*z2^3 + z1^3*z2^2 + t*z1^2*z2^4", 2);
        let report = check_family_nondegeneracy(&f, &config()).unwrap();
        assert_eq!(report.answer, Answer::Yes);
        assert_eq!(report.faces.len(), 3, "two vertices and one edge");
        for fc in &report.faces {
            assert_eq!(fc.answer, Answer::Yes);
            assert!(fc.certificate.is_unit(), "every face passes outright");
        }
    }

    #[test]
    fn uniform_tameness_produces_the_expected_certificate() {
        let f = family("z1^2*z2^3 + z1^3*z2^2 + t*z1^2*z2^4", 2);
        let report = check_uniform_tameness(&f, &config()).unwrap();
        assert_eq!(report.answer, Answer::Yes);
        assert_eq!(report.faces.len(), 2);

        let along_z2 = report
            .faces
            .iter()
            .find(|fc| fc.face.direction.to_string() == "{2}")
            .expect("face receding along z2");
        assert_eq!(along_z2.certificate.render_elements(), vec!["t*u2 + 1"]);
        let witness = along_z2.witness.as_ref().expect("passing face has a witness");
        let origin = ExponentVector::zero(2);
        assert_eq!(witness.coeff(&origin), GaussianRational::one());

        let along_z1 = report
            .faces
            .iter()
            .find(|fc| fc.face.direction.to_string() == "{1}")
            .expect("face receding along z1");
        assert!(along_z1.certificate.is_unit());
    }

    #[test]
    fn admissible_curve_families() {
        for text in [
            "z1^2*z2^3 + z1^3*z2^2 + t*z1^2*z2^4",
            "z1^2*z2^3 + z1^3*z2^2 + t*z1^3*z2^3",
        ] {
            let f = family(text, 2);
            let report = check_admissible(&f, &config()).unwrap();
            assert_eq!(report.answer, Answer::Yes, "{text} is admissible");
            assert!(report.boundary.holds);
            assert_eq!(report.uniform_smoothness, Some("exists-not-computed"));
            assert!(!report.exhausted);
        }
    }

    #[test]
    fn admissibility_rejects_a_boundary_jump() {
        let f = family("t^2*z1^2 - z2^2", 2);
        let report = check_admissible(&f, &config()).unwrap();
        assert_eq!(report.answer, Answer::No);
        assert!(!report.boundary.holds);
        assert!(report.nondegeneracy.is_none());
        assert!(report.tameness.is_none());
        assert!(report.uniform_smoothness.is_none());
    }

    #[test]
    fn constant_families_agree_with_the_single_germ_analysis() {
        let mut rng = SplitMix(0xfa111e);
        let mut checked = 0;
        while checked < 12 {
            let k = 2 + (rng.next() % 3) as usize;
            let terms: Vec<(ExponentVector, GaussianRational)> = (0..k)
                .map(|_| {
                    (
                        ev(vec![(rng.next() % 4) as u32, (rng.next() % 4) as u32]),
                        GaussianRational::from_int(1 + (rng.next() % 3) as i64),
                    )
                })
                .collect();
            let p = SparsePolynomial::new(2, terms).unwrap();
            let origin = ExponentVector::zero(2);
            if p.is_zero() || !p.coeff(&origin).is_zero() {
                continue;
            }
            checked += 1;
            let fam = FamilyPolynomial::from_single(&p);
            let adm = check_admissible(&fam, &config()).unwrap();
            assert!(adm.boundary.holds, "a constant family never jumps");
            let nd = check_nondegenerate(&p, &config()).unwrap();
            let tame = tameness_report(&p, &config()).unwrap();
            let single = match (nd.answer, tame.answer) {
                (Answer::No, _) | (_, Answer::No) => Answer::No,
                (Answer::Unknown, _) | (_, Answer::Unknown) => Answer::Unknown,
                _ => Answer::Yes,
            };
            assert_eq!(
                adm.answer, single,
                "constant family must match the single analysis on {p:?}"
            );
        }
    }

    #[test]
    fn budget_exhaustion_is_reported_not_misjudged() {
        let f = family("z1^2*z2^3 + z1^3*z2^2 + t*z1^2*z2^4", 2);
        let tight = GroebnerConfig {
            max_steps: 0,
            ..GroebnerConfig::default()
        };
        let report = check_admissible(&f, &tight).unwrap();
        assert_eq!(report.answer, Answer::Unknown);
        assert!(report.exhausted);
        assert!(report.uniform_smoothness.is_none());
    }

    #[test]
    fn family_preconditions() {
        let zero = FamilyPolynomial::new(2, Vec::new()).unwrap();
        assert!(check_boundary_independence(&zero).is_err());
        // Constant term: not a family of germs.
        let f = family("z1^2 + 1", 1);
        assert!(check_boundary_independence(&f).is_err());
        // f_0 identically zero.
        let f = FamilyPolynomial::new(
            1,
            vec![(
                ev(vec![1]),
                UniPoly::new(vec![GaussianRational::zero(), GaussianRational::one()]),
            )],
        )
        .unwrap();
        assert!(check_boundary_independence(&f).is_err());
    }
}
