//! The stable report schema: one envelope for every command, serialized
//! to JSON with a fixed key set (absent sections are `null`, never
//! missing) and rendered to text with the verdict on the first line.
//!
//! The JSON structs in this module are the compatibility surface: field
//! names and their order are frozen, emission is byte-deterministic
//! (BTree-ordered inputs, struct-ordered keys, shortest-round-trip
//! floats), and `Report::from_json(report.to_json())` reproduces the
//! report exactly.

use serde::{Deserialize, Serialize};

use crate::family::{
    AdmissibilityReport, BoundaryIndependence, FaceCheck, FamilyNondegeneracy, UniformTameness,
};
use crate::groebner::{buchberger, GroebnerBasis, GroebnerConfig, Ideal, MonomialOrder};
use crate::poly::ExponentVector;
use crate::polyhedron::{CoordinateClassification, Face, NewtonPolyhedron};
use crate::regularity::{
    Answer, FaceNondegeneracy, FaceTameness, NondegeneracyReport, Radius, TamenessReport,
};
use crate::strata::{ArcRecord, ProbeReport, StratificationReport};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Envelope
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputJson,
    pub command: String,
    pub polyhedron: Option<PolyhedronJson>,
    pub nondegeneracy: Option<NondegeneracyJson>,
    pub tameness: Option<TamenessJson>,
    pub admissibility: Option<AdmissibilityJson>,
    pub stratification: Option<StratificationJson>,
    pub probe: Option<ProbeJson>,
    pub verdict: String,
    pub meta: MetaJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputJson {
    /// Canonical rendering of the polynomial actually analyzed.
    pub text: String,
    pub n: usize,
    pub family: bool,
    pub variables: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaJson {
    pub version: String,
    pub order: String,
    pub budget: BudgetJson,
    pub seed: Option<u64>,
    pub grid: Option<GridJson>,
    pub tolerance: Option<f64>,
    /// True when a resource budget cut some verdict short; the report is
    /// then partial and unknown answers are budget artifacts.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetJson {
    pub max_steps: u64,
    pub max_degree: u32,
    pub max_basis: usize,
    pub budget_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridJson {
    pub from: u32,
    pub to: u32,
}

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceJson {
    pub dim: usize,
    pub weight: Vec<u64>,
    pub value: u64,
    pub support: Vec<Vec<u32>>,
    pub direction: String,
    pub compact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub vanishing: Vec<String>,
    pub nonvanishing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyhedronJson {
    pub n: usize,
    pub support: Vec<Vec<u32>>,
    pub vertices: Vec<Vec<u32>>,
    pub facets: Vec<FaceJson>,
    pub compact_face_count: usize,
    pub essential_faces: Vec<FaceJson>,
    pub classification: ClassificationJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NondegeneracyJson {
    pub answer: String,
    pub exhausted: bool,
    pub faces: Vec<NdFaceJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NdFaceJson {
    pub face: FaceJson,
    pub answer: String,
    pub monomial_bypass: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusJson {
    pub kind: String,
    pub value: Option<String>,
    pub lo: Option<String>,
    pub hi: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TamenessJson {
    pub answer: String,
    pub exhausted: bool,
    pub r_nc: Option<RadiusJson>,
    pub per_direction: Vec<DirectionRadiusJson>,
    pub faces: Vec<TameFaceJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionRadiusJson {
    pub direction: String,
    pub radius: Option<RadiusJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TameFaceJson {
    pub face: FaceJson,
    pub verdict: String,
    pub radius: Option<RadiusJson>,
    pub obstruction: Vec<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityJson {
    pub answer: String,
    pub exhausted: bool,
    pub boundary: BoundaryJson,
    pub nondegeneracy: Option<FamilyCheckJson>,
    pub tameness: Option<FamilyCheckJson>,
    pub uniform_smoothness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryJson {
    pub holds: bool,
    pub vertices_at_zero: Vec<Vec<u32>>,
    pub vertices_generic: Vec<Vec<u32>>,
    pub counterexample: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyCheckJson {
    pub answer: String,
    pub exhausted: bool,
    pub faces: Vec<CertFaceJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertFaceJson {
    pub face: FaceJson,
    pub answer: String,
    pub certificate: Vec<String>,
    pub witness: Option<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratificationJson {
    pub n: usize,
    pub family: bool,
    pub counts: StratumCountsJson,
    pub hypersurface_is_union_of_strata: bool,
    pub strata: Vec<StratumJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumCountsJson {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumJson {
    pub kind: String,
    pub index: String,
    pub name: String,
    pub dim: usize,
    pub conditions: String,
    pub t_axis: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeJson {
    pub seed: u64,
    pub grid: GridJson,
    pub tolerance: f64,
    pub verdict: String,
    pub disclaimer: String,
    pub counts: ProbeCountsJson,
    pub arcs: Vec<ArcJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeCountsJson {
    pub arcs: usize,
    pub assessed: usize,
    pub no_contact: usize,
    pub suspect: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcJson {
    pub a_stratum: String,
    pub c_stratum: String,
    /// 1-based coordinate receiving the Newton correction.
    pub corrected: usize,
    pub t_velocity: [f64; 2],
    pub base_q: Vec<[f64; 2]>,
    pub i_velocities: Vec<[f64; 2]>,
    /// (1-based coordinate, exponent, coefficient).
    pub leading: Vec<LeadingJson>,
    pub drift: bool,
    pub assessed: bool,
    pub suspect: bool,
    pub last_ratio: Option<f64>,
    pub tail_ratio: Option<f64>,
    pub decay_factor: Option<f64>,
    /// Full sample trace, kept only for suspect arcs.
    pub samples: Option<Vec<SampleJson>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeadingJson {
    pub coordinate: usize,
    pub exponent: u32,
    pub coefficient: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub k: u32,
    pub s: f64,
    pub ratio: Option<f64>,
    pub residual: f64,
    pub converged: bool,
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

fn exps_json(points: &[ExponentVector]) -> Vec<Vec<u32>> {
    points.iter().map(|p| p.entries().to_vec()).collect()
}

pub fn face_json(face: &Face) -> FaceJson {
    FaceJson {
        dim: face.dim,
        weight: face.weight.clone(),
        value: face.value,
        support: exps_json(&face.support_points),
        direction: face.direction.to_string(),
        compact: face.is_compact(),
    }
}

pub fn classification_json(c: &CoordinateClassification) -> ClassificationJson {
    ClassificationJson {
        vanishing: c.vanishing.iter().map(|i| i.to_string()).collect(),
        nonvanishing: c.nonvanishing.iter().map(|i| i.to_string()).collect(),
    }
}

pub fn polyhedron_json(
    polyhedron: &NewtonPolyhedron,
    compact_face_count: usize,
    essential: &[Face],
    classification: &CoordinateClassification,
) -> PolyhedronJson {
    PolyhedronJson {
        n: polyhedron.n,
        support: exps_json(&polyhedron.support),
        vertices: exps_json(&polyhedron.vertices),
        facets: polyhedron.facets.iter().map(face_json).collect(),
        compact_face_count,
        essential_faces: essential.iter().map(face_json).collect(),
        classification: classification_json(classification),
    }
}

fn radius_json(r: &Radius) -> RadiusJson {
    match r {
        Radius::Infinite => RadiusJson {
            kind: "infinite".to_string(),
            value: None,
            lo: None,
            hi: None,
        },
        Radius::Exact(q) => RadiusJson {
            kind: "exact".to_string(),
            value: Some(q.to_string()),
            lo: None,
            hi: None,
        },
        Radius::Interval { lo, hi } => RadiusJson {
            kind: "interval".to_string(),
            value: None,
            lo: Some(lo.to_string()),
            hi: Some(hi.to_string()),
        },
        Radius::UncertifiedPositive => RadiusJson {
            kind: "uncertified-positive".to_string(),
            value: None,
            lo: None,
            hi: None,
        },
    }
}

/// How Gröbner bases are rendered into reports: recompute in the
/// requested order when it differs from the one the basis was built in.
pub struct BasisRendering {
    pub order: MonomialOrder,
    pub config: GroebnerConfig,
}

impl BasisRendering {
    pub fn grevlex(config: &GroebnerConfig) -> BasisRendering {
        BasisRendering {
            order: MonomialOrder::GrevLex,
            config: config.clone(),
        }
    }

    fn render(&self, basis: &GroebnerBasis) -> Vec<String> {
        if basis.order == self.order || basis.elements.is_empty() {
            return basis.render_elements();
        }
        let reordered = Ideal::new(basis.ring.clone(), basis.elements.clone())
            .and_then(|ideal| buchberger(&ideal, self.order, &self.config));
        match reordered {
            Ok(b) => b.render_elements(),
            // The requested order is cosmetic; never let it change the
            // answer or fail the run.
            Err(_) => basis.render_elements(),
        }
    }
}

fn nd_face_json(f: &FaceNondegeneracy) -> NdFaceJson {
    NdFaceJson {
        face: face_json(&f.face),
        answer: f.answer.label().to_string(),
        monomial_bypass: f.via_monomial_bypass,
        note: f.note.clone(),
    }
}

pub fn nondegeneracy_json(report: &NondegeneracyReport) -> NondegeneracyJson {
    NondegeneracyJson {
        answer: report.answer.label().to_string(),
        exhausted: report.exhausted,
        faces: report.faces.iter().map(nd_face_json).collect(),
    }
}

fn tame_face_json(f: &FaceTameness, rendering: &BasisRendering) -> TameFaceJson {
    TameFaceJson {
        face: face_json(&f.face),
        verdict: f.verdict.label().to_string(),
        radius: f.radius.as_ref().map(radius_json),
        obstruction: rendering.render(&f.obstruction),
        note: f.note.clone(),
    }
}

pub fn tameness_json(report: &TamenessReport, rendering: &BasisRendering) -> TamenessJson {
    TamenessJson {
        answer: report.answer.label().to_string(),
        exhausted: report.exhausted,
        r_nc: report.r_nc.as_ref().map(radius_json),
        per_direction: report
            .per_direction
            .iter()
            .map(|(direction, radius)| DirectionRadiusJson {
                direction: direction.to_string(),
                radius: radius.as_ref().map(radius_json),
            })
            .collect(),
        faces: report
            .faces
            .iter()
            .map(|f| tame_face_json(f, rendering))
            .collect(),
    }
}

fn boundary_json(b: &BoundaryIndependence) -> BoundaryJson {
    BoundaryJson {
        holds: b.holds,
        vertices_at_zero: exps_json(&b.vertices_at_zero),
        vertices_generic: exps_json(&b.vertices_generic),
        counterexample: b.counterexample.as_ref().map(|e| e.entries().to_vec()),
    }
}

fn cert_face_json(f: &FaceCheck, rendering: &BasisRendering) -> CertFaceJson {
    CertFaceJson {
        face: face_json(&f.face),
        answer: f.answer.label().to_string(),
        certificate: rendering.render(&f.certificate),
        witness: f
            .witness
            .as_ref()
            .map(|w| w.to_string_ordered(&f.certificate.ring, rendering.order)),
        note: f.note.clone(),
    }
}

fn family_nd_json(r: &FamilyNondegeneracy, rendering: &BasisRendering) -> FamilyCheckJson {
    FamilyCheckJson {
        answer: r.answer.label().to_string(),
        exhausted: r.exhausted,
        faces: r.faces.iter().map(|f| cert_face_json(f, rendering)).collect(),
    }
}

fn family_tame_json(r: &UniformTameness, rendering: &BasisRendering) -> FamilyCheckJson {
    FamilyCheckJson {
        answer: r.answer.label().to_string(),
        exhausted: r.exhausted,
        faces: r.faces.iter().map(|f| cert_face_json(f, rendering)).collect(),
    }
}

pub fn admissibility_json(
    report: &AdmissibilityReport,
    rendering: &BasisRendering,
) -> AdmissibilityJson {
    AdmissibilityJson {
        answer: report.answer.label().to_string(),
        exhausted: report.exhausted,
        boundary: boundary_json(&report.boundary),
        nondegeneracy: report
            .nondegeneracy
            .as_ref()
            .map(|r| family_nd_json(r, rendering)),
        tameness: report
            .tameness
            .as_ref()
            .map(|r| family_tame_json(r, rendering)),
        uniform_smoothness: report.uniform_smoothness.map(str::to_string),
    }
}

pub fn stratification_json(report: &StratificationReport) -> StratificationJson {
    StratificationJson {
        n: report.n,
        family: report.is_family,
        counts: StratumCountsJson {
            a: report.count_a,
            b: report.count_b,
            c: report.count_c,
        },
        hypersurface_is_union_of_strata: report.hypersurface_is_union_of_strata,
        strata: report
            .strata
            .iter()
            .map(|s| StratumJson {
                kind: s.kind.label().to_string(),
                index: s.index.to_string(),
                name: s.name(),
                dim: s.dim,
                conditions: s.conditions.clone(),
                t_axis: s.t_axis,
            })
            .collect(),
    }
}

fn c64_json(z: num_complex::Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn arc_json(arc: &ArcRecord) -> ArcJson {
    ArcJson {
        a_stratum: arc.pair.a_index.to_string(),
        c_stratum: arc.pair.c_index.to_string(),
        corrected: arc.pair.corrected + 1,
        t_velocity: c64_json(arc.pair.t_velocity),
        base_q: arc.pair.base_q.iter().copied().map(c64_json).collect(),
        i_velocities: arc
            .pair
            .i_velocities
            .iter()
            .copied()
            .map(c64_json)
            .collect(),
        leading: arc
            .pair
            .leading
            .iter()
            .map(|&(j, w, a)| LeadingJson {
                coordinate: j + 1,
                exponent: w,
                coefficient: c64_json(a),
            })
            .collect(),
        drift: arc.pair.drift_t != num_complex::Complex64::new(0.0, 0.0)
            || arc
                .pair
                .drift_i
                .iter()
                .any(|d| *d != num_complex::Complex64::new(0.0, 0.0)),
        assessed: arc.assessed,
        suspect: arc.suspect,
        last_ratio: arc.last_ratio,
        tail_ratio: arc.tail_ratio,
        decay_factor: arc.decay_factor.filter(|d| d.is_finite()),
        samples: if arc.suspect {
            Some(
                arc.samples
                    .iter()
                    .map(|r| SampleJson {
                        k: r.k,
                        s: r.s,
                        ratio: r.ratio,
                        residual: r.residual,
                        converged: r.converged,
                    })
                    .collect(),
            )
        } else {
            None
        },
    }
}

pub fn probe_json(report: &ProbeReport) -> ProbeJson {
    ProbeJson {
        seed: report.config.seed,
        grid: GridJson {
            from: crate::strata::GRID_MIN,
            to: report.config.grid_max,
        },
        tolerance: report.config.tolerance,
        verdict: report.verdict.label().to_string(),
        disclaimer: report.disclaimer.to_string(),
        counts: ProbeCountsJson {
            arcs: report.arcs.len(),
            assessed: report.assessed_count,
            no_contact: report.no_contact_count,
            suspect: report.suspect_count,
        },
        arcs: report.arcs.iter().map(arc_json).collect(),
    }
}

/// Fold two three-valued answers: any "no" dominates, then "unknown".
pub fn combined_verdict(nd: Answer, tame: Answer) -> &'static str {
    match (nd, tame) {
        (Answer::Yes, Answer::Yes) => "regular",
        (Answer::No, _) | (_, Answer::No) => "not-regular",
        _ => "unknown",
    }
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

impl Report {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports always serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::pre(format!("malformed report JSON: {e}")))
    }

    /// Plain-text rendering: the verdict line first, then one short
    /// section per populated component.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        lines.push(format!("verdict: {}", self.verdict));
        lines.push(format!(
            "input: {} ({} in {} variable{}{})",
            self.input.text,
            if self.input.family { "family" } else { "germ" },
            self.input.n,
            if self.input.n == 1 { "" } else { "s" },
            if self.input.family { " and t" } else { "" },
        ));
        if let Some(p) = &self.polyhedron {
            lines.push(format!(
                "polyhedron: {} vertices, {} facets, {} compact faces, {} essential non-compact faces",
                p.vertices.len(),
                p.facets.len(),
                p.compact_face_count,
                p.essential_faces.len()
            ));
            lines.push(format!(
                "  vanishing subspaces: {}",
                p.classification.vanishing.join(", ")
            ));
        }
        if let Some(nd) = &self.nondegeneracy {
            lines.push(format!(
                "non-degeneracy: {} ({} compact faces checked{})",
                nd.answer,
                nd.faces.len(),
                if nd.exhausted { ", budget exhausted" } else { "" }
            ));
            for f in nd.faces.iter().filter(|f| f.answer != "yes") {
                lines.push(format!(
                    "  face dim {} weight ({}) -> {}",
                    f.face.dim,
                    f.face
                        .weight
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                    f.answer
                ));
            }
        }
        if let Some(t) = &self.tameness {
            let r = t
                .r_nc
                .as_ref()
                .map(describe_radius)
                .unwrap_or_else(|| "undetermined".to_string());
            lines.push(format!(
                "local tameness: {} (r_nc = {}{})",
                t.answer,
                r,
                if t.exhausted { ", budget exhausted" } else { "" }
            ));
            for f in &t.faces {
                let radius = f
                    .radius
                    .as_ref()
                    .map(describe_radius)
                    .unwrap_or_else(|| "-".to_string());
                lines.push(format!(
                    "  direction {}: {}, radius {}, obstruction [{}]",
                    f.face.direction,
                    f.verdict,
                    radius,
                    f.obstruction.join(", ")
                ));
            }
        }
        if let Some(a) = &self.admissibility {
            lines.push(format!(
                "admissibility: {}{}",
                a.answer,
                if a.exhausted { " (budget exhausted)" } else { "" }
            ));
            lines.push(format!(
                "  boundary independent of t: {}",
                if a.boundary.holds { "yes" } else { "no" }
            ));
            if let Some(ce) = &a.boundary.counterexample {
                lines.push(format!(
                    "  boundary counterexample vertex: ({})",
                    ce.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                ));
            }
            if let Some(nd) = &a.nondegeneracy {
                lines.push(format!("  family non-degeneracy: {}", nd.answer));
            }
            if let Some(tm) = &a.tameness {
                lines.push(format!("  uniform local tameness: {}", tm.answer));
                for f in tm.faces.iter().filter(|f| f.answer != "yes") {
                    lines.push(format!(
                        "    direction {}: certificate [{}]",
                        f.face.direction,
                        f.certificate.join(", ")
                    ));
                }
            }
            if let Some(us) = &a.uniform_smoothness {
                lines.push(format!("  uniform smoothness radius: {us}"));
            }
        }
        if let Some(s) = &self.stratification {
            lines.push(format!(
                "stratification: {} strata (A: {}, B: {}, C: {})",
                s.strata.len(),
                s.counts.a,
                s.counts.b,
                s.counts.c
            ));
            for stratum in &s.strata {
                lines.push(format!(
                    "  {} dim {}: {}",
                    stratum.name, stratum.dim, stratum.conditions
                ));
            }
            lines.push(format!(
                "  the hypersurface is a union of strata: {}",
                if s.hypersurface_is_union_of_strata {
                    "yes"
                } else {
                    "no"
                }
            ));
        }
        if let Some(p) = &self.probe {
            lines.push(format!(
                "whitney probe: {} ({} arcs: {} assessed, {} no-contact, {} suspect)",
                p.verdict, p.counts.arcs, p.counts.assessed, p.counts.no_contact, p.counts.suspect
            ));
            for arc in p.arcs.iter().filter(|a| a.suspect) {
                lines.push(format!(
                    "  suspect pair (A_{}, C_{}): last ratio {}",
                    arc.a_stratum,
                    arc.c_stratum,
                    arc.last_ratio
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "-".to_string())
                ));
            }
            lines.push(format!("  note: {}", p.disclaimer));
        }
        lines.push(format!(
            "meta: version {}, order {}, budget {} steps / degree {}",
            self.meta.version, self.meta.order, self.meta.budget.max_steps, self.meta.budget.max_degree
        ));
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

fn describe_radius(r: &RadiusJson) -> String {
    match r.kind.as_str() {
        "infinite" => "infinite".to_string(),
        "exact" => r.value.clone().unwrap_or_default(),
        "interval" => format!(
            "[{}, {}]",
            r.lo.clone().unwrap_or_default(),
            r.hi.clone().unwrap_or_default()
        ),
        other => other.to_string(),
    }
}
