//! The canonical stratification {A_I, B_I, C_I} of the ambient space by
//! coordinate-subspace type, and a numerical probe of the Whitney
//! (b)-ratio along sampled curve pairs.
//!
//! The stratification is combinatorial: for every non-vanishing subset I
//! the hypersurface meets the torus ℂ^{*I} in a stratum A_I with open
//! complement B_I, and every vanishing subset I contributes the stratum
//! C_I = ℂ^{*I} itself (which lies inside the hypersurface).  For
//! families the parameter axis is adjoined to every stratum and C_∅ is
//! the t-axis.
//!
//! The probe is the only non-exact component of the crate.  For a stratum
//! pair (A_J, C_I) with I ⊆ J it launches arcs
//!     γ(s) = (τ + b₀s, [q_i + b_i s]_{i∈I}, [a_j s^{w_j}]_{j∈J∖I}, 0)
//! toward a base point of C_I, Newton-corrects one coordinate of J∖I
//! until the residual |f(γ(s))| falls below a relative tolerance, and
//! evaluates |⟨ℓ, grad f⟩| / (‖ℓ‖·‖grad f‖) with ℓ the secant from the
//! companion arc γ̃ inside C_I.  Arcs whose correction cannot reach the
//! hypersurface near the base point (the relative residual stalls) are
//! reported as having no contact — exactly the pairs where C_I does not
//! meet the closure of A_J — and are excluded from the verdict.  The
//! whole probe is floating-point but deterministic: a fixed seed, a fixed
//! sample grid s = 2^{-k}, and only +, −, ×, ÷ and square roots.

use crate::parse::ParsedInput;
use crate::poly::{FamilyPolynomial, SubspaceIndex};
use crate::polyhedron::{classify_subspaces, CoordinateClassification};
use crate::rational::rational_to_f64;
use crate::{Error, Result};
use num_complex::Complex64;

// ---------------------------------------------------------------------------
// Stratification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumKind {
    A,
    B,
    C,
}

impl StratumKind {
    pub fn label(&self) -> &'static str {
        match self {
            StratumKind::A => "A",
            StratumKind::B => "B",
            StratumKind::C => "C",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StratumDescriptor {
    pub kind: StratumKind,
    pub index: SubspaceIndex,
    /// Expected complex dimension.
    pub dim: usize,
    /// Symbolic defining conditions.
    pub conditions: String,
    /// True exactly for C_∅ in a family: the parameter axis.
    pub t_axis: bool,
}

impl StratumDescriptor {
    pub fn name(&self) -> String {
        format!("{}_{}", self.kind.label(), self.index)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StratificationReport {
    pub n: usize,
    pub is_family: bool,
    pub strata: Vec<StratumDescriptor>,
    pub count_a: usize,
    pub count_b: usize,
    pub count_c: usize,
    /// The A and C strata together exhaust the hypersurface.
    pub hypersurface_is_union_of_strata: bool,
}

fn torus_condition(index: &SubspaceIndex) -> String {
    if index.len() == 0 {
        "z = 0".to_string()
    } else {
        format!("z_i != 0 exactly for i in {index}")
    }
}

/// Classification underlying a family's stratification; errors when the
/// vanishing subspaces of the special member differ from the generic ones
/// (the strata would then depend on t).
pub(crate) fn family_classification(
    fam: &FamilyPolynomial,
) -> Result<CoordinateClassification> {
    crate::family::require_family_germ(fam)?;
    let n = fam.n();
    let generic = classify_subspaces(&fam.support_generic(), n)?;
    let special = classify_subspaces(&fam.support_at_zero(), n)?;
    if generic != special {
        return Err(Error::pre(
            "the classification of vanishing coordinate subspaces changes at t = 0, so the family has no t-independent stratification",
        ));
    }
    Ok(generic)
}

/// Build the canonical stratification for a single germ or a family.
pub fn build_stratification(input: &ParsedInput) -> Result<StratificationReport> {
    let (classification, n, is_family) = match input {
        ParsedInput::Single(p) => {
            crate::regularity::require_germ(p)?;
            (classify_subspaces(&p.support(), p.n())?, p.n(), false)
        }
        ParsedInput::Family(f) => (family_classification(f)?, f.n(), true),
    };
    let extra = usize::from(is_family);
    let mut strata = Vec::new();
    for index in &classification.nonvanishing {
        strata.push(StratumDescriptor {
            kind: StratumKind::A,
            index: index.clone(),
            dim: index.len() - 1 + extra,
            conditions: if is_family {
                format!("t in C, {}, f = 0", torus_condition(index))
            } else {
                format!("{}, f = 0", torus_condition(index))
            },
            t_axis: false,
        });
    }
    for index in &classification.nonvanishing {
        strata.push(StratumDescriptor {
            kind: StratumKind::B,
            index: index.clone(),
            dim: index.len() + extra,
            conditions: if is_family {
                format!("t in C, {}, f != 0", torus_condition(index))
            } else {
                format!("{}, f != 0", torus_condition(index))
            },
            t_axis: false,
        });
    }
    for index in &classification.vanishing {
        let t_axis = is_family && index.len() == 0;
        let conditions = if t_axis {
            "the t-axis: z = 0, t free".to_string()
        } else if index.len() == 0 {
            "the origin: z = 0".to_string()
        } else if is_family {
            format!(
                "t in C, {}; f vanishes identically",
                torus_condition(index)
            )
        } else {
            format!("{}; f vanishes identically", torus_condition(index))
        };
        strata.push(StratumDescriptor {
            kind: StratumKind::C,
            index: index.clone(),
            dim: index.len() + extra,
            conditions,
            t_axis,
        });
    }
    let count_a = classification.nonvanishing.len();
    let count_b = classification.nonvanishing.len();
    let count_c = classification.vanishing.len();
    Ok(StratificationReport {
        n,
        is_family,
        strata,
        count_a,
        count_b,
        count_c,
        hypersurface_is_union_of_strata: true,
    })
}

// ---------------------------------------------------------------------------
// Numeric evaluation of a family over f64 complex numbers
// ---------------------------------------------------------------------------

/// |z| from primitive operations only (no platform hypot).
fn cabs(z: Complex64) -> f64 {
    (z.re * z.re + z.im * z.im).sqrt()
}

fn cpow(z: Complex64, k: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..k {
        acc *= z;
    }
    acc
}

/// A family flattened to floating-point terms c · t^k · z^α for fast
/// repeated evaluation.
struct Compiled {
    n: usize,
    terms: Vec<(u32, Vec<u32>, Complex64)>,
}

impl Compiled {
    fn from_family(fam: &FamilyPolynomial) -> Compiled {
        let mut terms = Vec::new();
        for (exp, c) in fam.terms() {
            let degree = match c.degree() {
                Some(d) => d,
                None => continue,
            };
            for k in 0..=degree {
                let ck = c.coeff(k);
                if ck.is_zero() {
                    continue;
                }
                let coeff = Complex64::new(rational_to_f64(ck.re()), rational_to_f64(ck.im()));
                terms.push((k as u32, exp.entries().to_vec(), coeff));
            }
        }
        Compiled { n: fam.n(), terms }
    }

    fn eval(&self, t: Complex64, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (tk, exps, c) in &self.terms {
            let mut term = *c * cpow(t, *tk);
            for (j, &e) in exps.iter().enumerate() {
                term *= cpow(z[j], e);
            }
            acc += term;
        }
        acc
    }

    /// Value together with the evaluation scale Σ |c·t^k·z^α|, the natural
    /// yardstick for "numerically zero at this point".
    fn eval_with_scale(&self, t: Complex64, z: &[Complex64]) -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (tk, exps, c) in &self.terms {
            let mut term = *c * cpow(t, *tk);
            for (j, &e) in exps.iter().enumerate() {
                term *= cpow(z[j], e);
            }
            acc += term;
            scale += cabs(term);
        }
        (acc, scale)
    }
}

/// The compiled family together with its gradient in (t, z).
struct CompiledGradient {
    f: Compiled,
    /// grad[0] = ∂f/∂t, grad[1 + j] = ∂f/∂z_j.
    grad: Vec<Compiled>,
}

impl CompiledGradient {
    fn new(fam: &FamilyPolynomial) -> Result<CompiledGradient> {
        let mut grad = Vec::with_capacity(fam.n() + 1);
        grad.push(Compiled::from_family(&fam.t_derivative()));
        for j in 0..fam.n() {
            grad.push(Compiled::from_family(&fam.partial_derivative(j)?));
        }
        Ok(CompiledGradient {
            f: Compiled::from_family(fam),
            grad,
        })
    }
}

// ---------------------------------------------------------------------------
// Curve pairs and the ratio
// ---------------------------------------------------------------------------

/// An arc on (a neighborhood of) the stratum A_J paired with a companion
/// arc in C_I sharing the same base point.  The arc data is the Taylor
/// information: t(s) = τ + b₀s, z_i(s) = q_i + b_i s on I, and leading
/// terms a_j s^{w_j} on J∖I, with one designated coordinate receiving a
/// Newton correction toward the hypersurface at every sample.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePair {
    pub a_index: SubspaceIndex,
    pub c_index: SubspaceIndex,
    /// Base point parameter value τ.
    pub base_t: Complex64,
    /// Base slice values q_i, aligned with c_index.indices().
    pub base_q: Vec<Complex64>,
    /// b₀ in t(s) = τ + b₀ s.
    pub t_velocity: Complex64,
    /// b_i in z_i(s) = q_i + b_i s, aligned with c_index.indices().
    pub i_velocities: Vec<Complex64>,
    /// (coordinate, w_j, a_j) for j ∈ J∖I: z_j(s) = a_j s^{w_j}.
    pub leading: Vec<(usize, u32, Complex64)>,
    /// The coordinate (∈ J∖I) corrected onto the hypersurface.
    pub corrected: usize,
    /// Second-order drift of the companion arc: γ̃ deviates from the
    /// plain projection by drift·s² in t and in each I coordinate.
    pub drift_t: Complex64,
    pub drift_i: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSample {
    pub k: u32,
    pub s: f64,
    /// None when the secant or the gradient vanished at the sample.
    pub ratio: Option<f64>,
    /// Relative residual |f(γ(s))| / scale after the correction.
    pub residual: f64,
    pub converged: bool,
    pub newton_iterations: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    pub seed: u64,
    /// Grid s = 2^{-k} for k = 4..=grid_max.
    pub grid_max: u32,
    /// A pair is suspect when its last ratio exceeds this.
    pub tolerance: f64,
    /// Residual acceptance: |f| ≤ residual_tolerance · scale.
    pub residual_tolerance: f64,
    pub max_newton: u32,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            seed: 0x7461_6d65_6761_6d6d,
            grid_max: 20,
            tolerance: 1e-3,
            residual_tolerance: 1e-12,
            max_newton: 64,
        }
    }
}

pub const GRID_MIN: u32 = 4;

fn gamma_at(pair: &CurvePair, n: usize, s: f64) -> (Complex64, Vec<Complex64>) {
    let sc = Complex64::new(s, 0.0);
    let t = pair.base_t + pair.t_velocity * sc;
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    for (pos, &i) in pair.c_index.indices().iter().enumerate() {
        z[i] = pair.base_q[pos] + pair.i_velocities[pos] * sc;
    }
    for &(j, w, a) in &pair.leading {
        z[j] = a * cpow(sc, w);
    }
    (t, z)
}

fn correct_onto_hypersurface(
    compiled: &CompiledGradient,
    t: Complex64,
    z: &mut [Complex64],
    corrected: usize,
    cfg: &ProbeConfig,
) -> (bool, f64, u32) {
    let df = &compiled.grad[1 + corrected];
    let mut iterations = 0;
    loop {
        let (value, scale) = compiled.f.eval_with_scale(t, z);
        let residual = if scale > 0.0 { cabs(value) / scale } else { cabs(value) };
        if cabs(value) <= cfg.residual_tolerance * scale {
            return (true, residual, iterations);
        }
        if iterations >= cfg.max_newton {
            return (false, residual, iterations);
        }
        let slope = df.eval(t, z);
        if cabs(slope) == 0.0 {
            return (false, residual, iterations);
        }
        let step = value / slope;
        let next = z[corrected] - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            return (false, residual, iterations);
        }
        z[corrected] = next;
        iterations += 1;
    }
}

fn ratio_sample_impl(
    compiled: &CompiledGradient,
    pair: &CurvePair,
    k: u32,
    cfg: &ProbeConfig,
) -> RatioSample {
    let n = compiled.f.n;
    let s = 1.0 / ((1u64 << k) as f64);
    let (t, mut z) = gamma_at(pair, n, s);
    let (converged, residual, newton_iterations) =
        correct_onto_hypersurface(compiled, t, &mut z, pair.corrected, cfg);
    if !converged {
        return RatioSample {
            k,
            s,
            ratio: None,
            residual,
            converged,
            newton_iterations,
        };
    }
    // Secant ℓ = γ − γ̃ in the (t, z) coordinates.
    let s2 = Complex64::new(s * s, 0.0);
    let mut secant = vec![Complex64::new(0.0, 0.0); n + 1];
    secant[0] = -pair.drift_t * s2;
    for (pos, &i) in pair.c_index.indices().iter().enumerate() {
        secant[1 + i] = -pair.drift_i[pos] * s2;
    }
    for &(j, _, _) in &pair.leading {
        secant[1 + j] = z[j];
    }
    let mut inner = Complex64::new(0.0, 0.0);
    let mut secant_sq = 0.0;
    let mut grad_sq = 0.0;
    for c in 0..=n {
        let g = compiled.grad[c].eval(t, &z);
        inner += secant[c] * g;
        secant_sq += secant[c].re * secant[c].re + secant[c].im * secant[c].im;
        grad_sq += g.re * g.re + g.im * g.im;
    }
    let denominator = secant_sq.sqrt() * grad_sq.sqrt();
    let ratio = if denominator > 0.0 {
        let r = cabs(inner) / denominator;
        assert!(r <= 1.0 + 1e-9, "Cauchy-Schwarz violated: {r}");
        Some(if r > 1.0 { 1.0 } else { r })
    } else {
        None
    };
    RatioSample {
        k,
        s,
        ratio,
        residual,
        converged,
        newton_iterations,
    }
}

/// The Whitney (b)-ratio of one curve pair at one parameter value: the
/// arc is Newton-corrected onto the hypersurface, then
/// |⟨ℓ, grad f⟩| / (‖ℓ‖·‖grad f‖) is evaluated with the Hermitian inner
/// product in the (t, z) coordinates.
pub fn whitney_ratio(fam: &FamilyPolynomial, pair: &CurvePair, k: u32) -> Result<RatioSample> {
    let compiled = CompiledGradient::new(fam)?;
    Ok(ratio_sample_impl(&compiled, pair, k, &ProbeConfig::default()))
}

// ---------------------------------------------------------------------------
// The probe
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct ArcRecord {
    pub pair: CurvePair,
    pub samples: Vec<RatioSample>,
    /// Every grid sample converged and produced a defined ratio: the arc
    /// genuinely approaches the hypersurface near its base point.
    pub assessed: bool,
    pub last_ratio: Option<f64>,
    /// Ratio at the start of the tail half of the grid.
    pub tail_ratio: Option<f64>,
    /// last_ratio / tail_ratio: below 1 means the tail is decaying.
    pub decay_factor: Option<f64>,
    pub suspect: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    ConsistentWithB,
    Suspect,
}

impl ProbeVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ProbeVerdict::ConsistentWithB => "consistent-with-b",
            ProbeVerdict::Suspect => "suspect",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub config: ProbeConfig,
    pub arcs: Vec<ArcRecord>,
    pub assessed_count: usize,
    pub no_contact_count: usize,
    pub suspect_count: usize,
    pub verdict: ProbeVerdict,
    /// The probe samples finitely many arcs in floating point; it gathers
    /// evidence and proves nothing.
    pub disclaimer: &'static str,
}

pub const PROBE_DISCLAIMER: &str =
    "numerical evidence from finitely many sampled arcs; not a proof";

/// Unit-modulus leading coefficients: ±1, ±i, and the rational points
/// (3 ± 4i)/5 off the axes.
const UNITS: [Complex64; 6] = [
    Complex64 { re: 1.0, im: 0.0 },
    Complex64 { re: -1.0, im: 0.0 },
    Complex64 { re: 0.0, im: 1.0 },
    Complex64 { re: 0.0, im: -1.0 },
    Complex64 { re: 0.6, im: 0.8 },
    Complex64 { re: 0.6, im: -0.8 },
];

/// SplitMix64: deterministic sampling independent of any external crate.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut x = self.0;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^ (x >> 31)
    }

    fn unit(&mut self) -> Complex64 {
        UNITS[(self.next() % UNITS.len() as u64) as usize]
    }
}

fn is_subset(small: &SubspaceIndex, big: &SubspaceIndex) -> bool {
    small.indices().iter().all(|i| big.indices().contains(i))
}

fn evaluate_arc(compiled: &CompiledGradient, pair: CurvePair, cfg: &ProbeConfig) -> ArcRecord {
    let mut samples = Vec::with_capacity((cfg.grid_max - GRID_MIN + 1) as usize);
    for k in GRID_MIN..=cfg.grid_max {
        samples.push(ratio_sample_impl(compiled, &pair, k, cfg));
    }
    let assessed = samples.iter().all(|r| r.converged && r.ratio.is_some());
    let last_ratio = if assessed {
        samples.last().and_then(|r| r.ratio)
    } else {
        None
    };
    let tail_ratio = if assessed {
        samples.get(samples.len() / 2).and_then(|r| r.ratio)
    } else {
        None
    };
    let decay_factor = match (tail_ratio, last_ratio) {
        (Some(a), Some(b)) if a > 0.0 => Some(b / a),
        (Some(_), Some(b)) if b == 0.0 => Some(0.0),
        _ => None,
    };
    let suspect = matches!(last_ratio, Some(r) if r > cfg.tolerance);
    ArcRecord {
        pair,
        samples,
        assessed,
        last_ratio,
        tail_ratio,
        decay_factor,
        suspect,
    }
}

/// Probe every stratum pair (A_J, C_I) with I ⊆ J along a deterministic
/// battery of arcs.  For each choice of corrected coordinate the probe
/// sweeps the leading exponent w ∈ 1..=4, four leading coefficients and
/// two parameter velocities; the remaining Taylor data is drawn from the
/// seeded generator, with the companion arc drifting on every second arc.
pub fn probe_whitney(fam: &FamilyPolynomial, cfg: &ProbeConfig) -> Result<ProbeReport> {
    if cfg.grid_max < GRID_MIN + 1 {
        return Err(Error::pre(format!(
            "the probe grid must extend past k = {GRID_MIN}"
        )));
    }
    if cfg.grid_max > 48 {
        return Err(Error::pre(
            "probe grids past k = 48 exhaust double precision",
        ));
    }
    let classification = family_classification(fam)?;
    let compiled = CompiledGradient::new(fam)?;
    let mut rng = Rng(cfg.seed);
    let mut arcs = Vec::new();
    for a_index in &classification.nonvanishing {
        for c_index in &classification.vanishing {
            if !is_subset(c_index, a_index) {
                continue;
            }
            let free: Vec<usize> = a_index
                .indices()
                .iter()
                .copied()
                .filter(|j| !c_index.indices().contains(j))
                .collect();
            for &corrected in &free {
                let mut combo = 0usize;
                for w_star in 1..=4u32 {
                    for a_star in 0..4usize {
                        for b0 in [UNITS[0], UNITS[2]] {
                            let leading: Vec<(usize, u32, Complex64)> = free
                                .iter()
                                .map(|&j| {
                                    if j == corrected {
                                        (j, w_star, UNITS[a_star])
                                    } else {
                                        (j, 1 + (rng.next() % 2) as u32, rng.unit())
                                    }
                                })
                                .collect();
                            let base_q: Vec<Complex64> =
                                c_index.indices().iter().map(|_| rng.unit()).collect();
                            let i_velocities: Vec<Complex64> =
                                c_index.indices().iter().map(|_| rng.unit()).collect();
                            let (drift_t, drift_i) = if combo % 2 == 1 {
                                (
                                    rng.unit(),
                                    c_index.indices().iter().map(|_| rng.unit()).collect(),
                                )
                            } else {
                                (
                                    Complex64::new(0.0, 0.0),
                                    vec![Complex64::new(0.0, 0.0); c_index.len()],
                                )
                            };
                            let pair = CurvePair {
                                a_index: a_index.clone(),
                                c_index: c_index.clone(),
                                base_t: Complex64::new(0.0, 0.0),
                                base_q,
                                t_velocity: b0,
                                i_velocities,
                                leading,
                                corrected,
                                drift_t,
                                drift_i,
                            };
                            arcs.push(evaluate_arc(&compiled, pair, cfg));
                            combo += 1;
                        }
                    }
                }
            }
        }
    }
    let assessed_count = arcs.iter().filter(|a| a.assessed).count();
    let no_contact_count = arcs.len() - assessed_count;
    let suspect_count = arcs.iter().filter(|a| a.suspect).count();
    let verdict = if suspect_count > 0 {
        ProbeVerdict::Suspect
    } else {
        ProbeVerdict::ConsistentWithB
    };
    Ok(ProbeReport {
        config: cfg.clone(),
        arcs,
        assessed_count,
        no_contact_count,
        suspect_count,
        verdict,
        disclaimer: PROBE_DISCLAIMER,
    })
}
