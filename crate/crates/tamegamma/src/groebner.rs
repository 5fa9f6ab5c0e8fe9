//! Gröbner bases over ℚ(i), with the ideal operations the regularity
//! analysis is built on: saturation, elimination, and emptiness of torus
//! zero sets.
//!
//! The engine is a plain Buchberger loop with the normal selection
//! strategy (pending S-pairs ordered by the total degree of their lcm),
//! the product and chain criteria, and full tail reduction.  Every run
//! finishes with an S-polynomial zero-reduction check of the reduced
//! basis, so a criterion bug cannot silently produce a wrong basis.
//!
//! All computations are budgeted; exceeding a budget surfaces as
//! [`Error::ResourceExhausted`], which callers translate into `Unknown`
//! verdicts rather than wrong answers.

pub use crate::order::MonomialOrder;

use crate::order::{divides, lcm_exponents};
use crate::poly::{ExponentVector, SparsePolynomial};
use crate::rational::GaussianRational;
use crate::ring::{Ring, VarName};
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::time::Instant;

/// Budgets for a Gröbner computation.
#[derive(Debug, Clone)]
pub struct GroebnerConfig {
    /// Maximum number of reduction/pair-processing steps.
    pub max_steps: u64,
    /// Maximum total degree of any S-polynomial lcm.
    pub max_degree: u32,
    /// Maximum number of basis elements accumulated.
    pub max_basis: usize,
    /// Wall-clock limit in milliseconds, if any.
    pub budget_ms: Option<u64>,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_steps: 200_000,
            max_degree: 512,
            max_basis: 1024,
            budget_ms: None,
        }
    }
}

impl GroebnerConfig {
    /// Default budgets, with the wall-clock limit taken from the
    /// `TAMEGAMMA_BUDGET_MS` environment variable when it is set to a
    /// positive integer.
    pub fn from_env() -> Self {
        let mut config = GroebnerConfig::default();
        if let Ok(value) = std::env::var("TAMEGAMMA_BUDGET_MS") {
            if let Ok(ms) = value.trim().parse::<u64>() {
                if ms > 0 {
                    config.budget_ms = Some(ms);
                }
            }
        }
        config
    }
}

struct Budget<'a> {
    config: &'a GroebnerConfig,
    steps: u64,
    start: Instant,
}

impl<'a> Budget<'a> {
    fn new(config: &'a GroebnerConfig) -> Self {
        Budget {
            config,
            steps: 0,
            start: Instant::now(),
        }
    }

    fn step(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.config.max_steps {
            return Err(Error::ResourceExhausted {
                resource: "reduction steps",
                limit: self.config.max_steps,
            });
        }
        if let Some(ms) = self.config.budget_ms {
            // Check the clock sparsely; Instant::elapsed is not free.
            if self.steps % 64 == 0 && self.start.elapsed().as_millis() as u64 > ms {
                return Err(Error::ResourceExhausted {
                    resource: "milliseconds",
                    limit: ms,
                });
            }
        }
        Ok(())
    }

    fn check_degree(&self, d: u64) -> Result<()> {
        if d > self.config.max_degree as u64 {
            return Err(Error::ResourceExhausted {
                resource: "total degree",
                limit: self.config.max_degree as u64,
            });
        }
        Ok(())
    }
}

/// An ideal presented by generators in a named ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Ideal {
    pub ring: Ring,
    pub gens: Vec<SparsePolynomial>,
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<SparsePolynomial>) -> Result<Self> {
        for g in &gens {
            if g.n() != ring.len() {
                return Err(Error::pre(format!(
                    "generator in {} variables does not fit a ring of {}",
                    g.n(),
                    ring.len()
                )));
            }
        }
        Ok(Ideal { ring, gens })
    }
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted ascending by
/// leading monomial.  Two ideals are equal iff their reduced bases (same
/// ring, same order) are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    pub ring: Ring,
    pub order: MonomialOrder,
    pub elements: Vec<SparsePolynomial>,
}

impl GroebnerBasis {
    /// The whole ring: the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].total_degree() == Some(0)
    }

    /// The zero ideal: no elements at all.
    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    /// Full normal form (head and tail) of `f` modulo the basis.
    pub fn normal_form(&self, f: &SparsePolynomial) -> Result<SparsePolynomial> {
        let config = GroebnerConfig::default();
        let mut budget = Budget::new(&config);
        normal_form_impl(f, &self.elements, self.order, &mut budget)
    }

    /// Ideal membership: the normal form vanishes.
    pub fn contains(&self, f: &SparsePolynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.elements
            .iter()
            .map(|g| leading_term(g, self.order).0.clone())
            .collect()
    }

    /// Renders the elements with this basis's ring names, terms ordered by
    /// this basis's monomial order.
    pub fn render_elements(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|g| g.to_string_ordered(&self.ring, self.order))
            .collect()
    }
}

fn leading_term(p: &SparsePolynomial, order: MonomialOrder) -> (&ExponentVector, &GaussianRational) {
    p.terms()
        .max_by(|a, b| order.cmp(a.0, b.0))
        .expect("leading term of a nonzero polynomial")
}

fn normal_form_impl(
    f: &SparsePolynomial,
    basis: &[SparsePolynomial],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<SparsePolynomial> {
    let n = f.n();
    let mut work = f.clone();
    let mut remainder: Vec<(ExponentVector, GaussianRational)> = Vec::new();
    'outer: while !work.is_zero() {
        budget.step()?;
        let (lm, lc) = {
            let (m, c) = leading_term(&work, order);
            (m.clone(), c.clone())
        };
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (glm, glc) = leading_term(g, order);
            if divides(glm, &lm) {
                let shift = lm.checked_sub(glm).expect("divisibility gives a valid shift");
                let factor = &lc / glc;
                let scaled = g.mul_term(&shift, &factor)?;
                work = work.sub(&scaled);
                continue 'outer;
            }
        }
        remainder.push((lm.clone(), lc.clone()));
        let lt = SparsePolynomial::new(n, vec![(lm, lc)])?;
        work = work.sub(&lt);
    }
    SparsePolynomial::new(n, remainder)
}

fn s_polynomial(
    f: &SparsePolynomial,
    g: &SparsePolynomial,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<SparsePolynomial> {
    let (flm, flc) = leading_term(f, order);
    let (glm, glc) = leading_term(g, order);
    let lcm = lcm_exponents(flm, glm);
    budget.check_degree(lcm.total_degree())?;
    let fs = lcm.checked_sub(flm).expect("lcm divisible by lm");
    let gs = lcm.checked_sub(glm).expect("lcm divisible by lm");
    let one = GaussianRational::one();
    let a = f.mul_term(&fs, &(&one / flc))?;
    let b = g.mul_term(&gs, &(&one / glc))?;
    Ok(a.sub(&b))
}

/// Buchberger's algorithm; returns the reduced basis.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    let mut budget = Budget::new(config);
    let mut basis: Vec<SparsePolynomial> =
        ideal.gens.iter().filter(|g| !g.is_zero()).cloned().collect();

    // Pending S-pairs keyed by (lcm total degree, i, j): the normal
    // selection strategy processes small degrees first.
    let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let pair_key = |basis: &[SparsePolynomial], i: usize, j: usize| {
        let lcm = lcm_exponents(
            leading_term(&basis[i], order).0,
            leading_term(&basis[j], order).0,
        );
        (lcm.total_degree(), i, j)
    };
    for j in 1..basis.len() {
        for i in 0..j {
            pending.insert(pair_key(&basis, i, j));
        }
    }

    while let Some(&key) = pending.iter().next() {
        pending.remove(&key);
        let (_, i, j) = key;
        budget.step()?;

        let (ilm, _) = leading_term(&basis[i], order);
        let (jlm, _) = leading_term(&basis[j], order);
        let lcm = lcm_exponents(ilm, jlm);

        // Product criterion: coprime leading monomials reduce to zero.
        if lcm.total_degree() == ilm.total_degree() + jlm.total_degree() {
            continue;
        }
        // Chain criterion: if some other leading monomial divides the lcm
        // and both companion pairs have already been handled, this pair is
        // redundant.
        let chained = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            if !divides(leading_term(&basis[k], order).0, &lcm) {
                return false;
            }
            let (a, b) = (i.min(k), i.max(k));
            let ik = pair_key(&basis, a, b);
            let (a2, b2) = (j.min(k), j.max(k));
            let jk = pair_key(&basis, a2, b2);
            !pending.contains(&ik) && !pending.contains(&jk)
        });
        if chained {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order, &budget)?;
        let h = normal_form_impl(&s, &basis, order, &mut budget)?;
        if h.is_zero() {
            continue;
        }
        if basis.len() + 1 > config.max_basis {
            return Err(Error::ResourceExhausted {
                resource: "basis elements",
                limit: config.max_basis as u64,
            });
        }
        basis.push(h);
        let newest = basis.len() - 1;
        for k in 0..newest {
            pending.insert(pair_key(&basis, k, newest));
        }
    }

    let reduced = reduce_basis(basis, order, &mut budget)?;
    let gb = GroebnerBasis {
        ring: ideal.ring.clone(),
        order,
        elements: reduced,
    };
    // Certification pass: every S-polynomial of the final basis must
    // reduce to zero.  A fresh budget keeps a hard-won success from being
    // spoiled by the check itself.
    let check_config = config.clone();
    let mut check_budget = Budget::new(&check_config);
    for j in 1..gb.elements.len() {
        for i in 0..j {
            let s = s_polynomial(&gb.elements[i], &gb.elements[j], order, &check_budget)?;
            let r = normal_form_impl(&s, &gb.elements, order, &mut check_budget)?;
            if !r.is_zero() {
                return Err(Error::pre(
                    "internal error: basis failed its S-polynomial certification",
                ));
            }
        }
    }
    Ok(gb)
}

fn reduce_basis(
    mut basis: Vec<SparsePolynomial>,
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<SparsePolynomial>> {
    // Minimalize: drop any element whose leading monomial is divisible by
    // another survivor's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let ilm = leading_term(&basis[i], order).0.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let jlm = leading_term(&basis[j], order).0;
            if divides(&ilm, jlm) && (jlm != &ilm || i < j) {
                keep[j] = false;
            }
        }
    }
    let mut minimal: Vec<SparsePolynomial> = basis
        .drain(..)
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();

    // Inter-reduce: fully reduce each element modulo the others, then
    // normalize to monic.  Leading monomials are pairwise indivisible, so
    // they survive and only tails change.
    for i in 0..minimal.len() {
        let others: Vec<SparsePolynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let reduced = normal_form_impl(&minimal[i], &others, order, budget)?;
        let lc = leading_term(&reduced, order).1.clone();
        let inv = lc.inverse().expect("leading coefficient is nonzero");
        minimal[i] = reduced.scale(&inv);
    }
    minimal.sort_by(|a, b| order.cmp(leading_term(a, order).0, leading_term(b, order).0));
    Ok(minimal)
}

/// Saturation `I : f^∞` by Rabinowitsch's trick: adjoin a fresh inverse
/// variable `y` in front, add `1 − y·f`, compute an elimination basis, and
/// keep the `y`-free part.  The result is a reduced Gröbner basis of the
/// saturated ideal in the original ring.
pub fn saturate(ideal: &Ideal, f: &SparsePolynomial, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    let n = ideal.ring.len();
    if f.n() != n {
        return Err(Error::pre("saturation element is in the wrong ring"));
    }
    if f.is_zero() {
        return Err(Error::pre("cannot saturate by zero"));
    }
    let extended_ring = ideal.ring.prepend(VarName::Sat(0));
    let shift: Vec<usize> = (1..=n).collect();
    let mut gens: Vec<SparsePolynomial> = Vec::with_capacity(ideal.gens.len() + 1);
    for g in &ideal.gens {
        gens.push(g.remap_variables(&shift, n + 1)?);
    }
    let lifted_f = f.remap_variables(&shift, n + 1)?;
    let mut y_exp = vec![0u32; n + 1];
    y_exp[0] = 1;
    let y_f = lifted_f.mul_term(&ExponentVector::new(y_exp), &GaussianRational::one())?;
    gens.push(SparsePolynomial::one(n + 1).sub(&y_f));

    let extended = Ideal::new(extended_ring, gens)?;
    let gb = buchberger(&extended, MonomialOrder::Block { front: 1 }, config)?;
    let keep: Vec<usize> = (1..=n).collect();
    let elements: Vec<SparsePolynomial> = gb
        .elements
        .iter()
        .filter(|g| !g.uses_variable(0))
        .map(|g| g.extract_variables(&keep))
        .collect::<Result<_>>()?;
    Ok(GroebnerBasis {
        ring: ideal.ring.clone(),
        order: MonomialOrder::GrevLex,
        elements,
    })
}

/// Elimination of the variables at the given slots: a Gröbner basis of
/// `I ∩ k[remaining variables]` in the ring of the remaining variables.
pub fn eliminate(ideal: &Ideal, drop: &[usize], config: &GroebnerConfig) -> Result<GroebnerBasis> {
    let n = ideal.ring.len();
    let mut drop_sorted: Vec<usize> = drop.to_vec();
    drop_sorted.sort_unstable();
    drop_sorted.dedup();
    if drop_sorted.iter().any(|&d| d >= n) {
        return Err(Error::pre("elimination slot out of range"));
    }
    if drop_sorted.len() == n {
        return Err(Error::pre("cannot eliminate every variable"));
    }
    if drop_sorted.is_empty() {
        return Err(Error::pre("no variables to eliminate"));
    }
    let keep: Vec<usize> = (0..n).filter(|i| !drop_sorted.contains(i)).collect();

    // Reorder so the dropped block comes first, then block-eliminate it.
    let mut map = vec![0usize; n];
    for (new, &old) in drop_sorted.iter().enumerate() {
        map[old] = new;
    }
    for (offset, &old) in keep.iter().enumerate() {
        map[old] = drop_sorted.len() + offset;
    }
    let mut names: Vec<VarName> = vec![VarName::Sat(0); n];
    for (old, &new) in map.iter().enumerate() {
        names[new] = ideal.ring.name(old);
    }
    let permuted_ring = Ring::new(names);
    let gens: Vec<SparsePolynomial> = ideal
        .gens
        .iter()
        .map(|g| g.remap_variables(&map, n))
        .collect::<Result<_>>()?;
    let permuted = Ideal::new(permuted_ring, gens)?;
    let gb = buchberger(&permuted, MonomialOrder::Block { front: drop_sorted.len() }, config)?;

    let kept_slots: Vec<usize> = (drop_sorted.len()..n).collect();
    let elements: Vec<SparsePolynomial> = gb
        .elements
        .iter()
        .filter(|g| (0..drop_sorted.len()).all(|s| !g.uses_variable(s)))
        .map(|g| g.extract_variables(&kept_slots))
        .collect::<Result<_>>()?;
    Ok(GroebnerBasis {
        ring: ideal.ring.select(&keep),
        order: MonomialOrder::GrevLex,
        elements,
    })
}

/// Does the ideal have a zero with every coordinate nonzero?  Decided by
/// saturating at the product of all variables: the zero set in the torus
/// is empty exactly when the saturation is the unit ideal.
pub fn torus_has_zero(ideal: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    let n = ideal.ring.len();
    if n == 0 {
        return Err(Error::pre("torus membership needs at least one variable"));
    }
    let product = SparsePolynomial::new(
        n,
        vec![(ExponentVector::new(vec![1; n]), GaussianRational::one())],
    )?;
    let saturated = saturate(ideal, &product, config)?;
    Ok(!saturated.is_unit())
}
