//! Newton polyhedra of polynomial supports.
//!
//! For a finite support `S ⊂ ℕⁿ` the Newton polyhedron is
//! `Γ₊(S) = conv(S) + ℝ₊ⁿ`.  Every face arises as the argmin locus of a
//! weight functional `l_w(α) = Σ wᵢαᵢ` with `w ≥ 0`; the face is compact
//! exactly when `w` is strictly positive, and otherwise recedes along the
//! coordinate directions `I(w) = {i : wᵢ = 0}`.
//!
//! Everything here is exact.  Vertices and faces are certified by rational
//! linear programs (see [`crate::lp`]); no floating point is involved.
//!
//! The non-compact faces relevant to regularity analysis are the *essential*
//! ones: for each coordinate subspace `I` on which the polynomial vanishes
//! identically, the faces receding exactly along `I`.  They are obtained by
//! projecting the support onto the complementary coordinates, enumerating
//! the compact faces of the projection, and lifting back.

use crate::lp::{feasible_point, scale_to_integers, Constraint};
use crate::poly::{ExponentVector, SparsePolynomial, SubspaceIndex};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Largest supported number of distinct support points.
const SUPPORT_CAP: usize = 512;
/// Largest number of closed vertex sets examined per face enumeration.
const FACE_CANDIDATE_CAP: usize = 4096;
/// Largest variable count for coordinate-subspace classification.
pub const CLASSIFICATION_VAR_CAP: usize = 16;

/// A face of a Newton polyhedron, recorded with its weight certificate.
///
/// `weight` is a gcd-reduced integer weight vector whose argmin locus on the
/// polyhedron is exactly this face; it vanishes precisely on `direction`.
/// `support_points` are the support points lying on the face, and `value`
/// is the minimal weighted degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub weight: Vec<u64>,
    pub value: u64,
    pub support_points: Vec<ExponentVector>,
    pub direction: SubspaceIndex,
    pub dim: usize,
}

impl Face {
    pub fn is_compact(&self) -> bool {
        self.direction.indices().is_empty()
    }

    /// Human-readable one-line description, e.g.
    /// `dim 1, weight (1,1,3), value 3, support {(3,0,0), (0,1,2)}, direction {3}`.
    pub fn describe(&self) -> String {
        let weight = self
            .weight
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let pts = self
            .support_points
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let tail = if self.is_compact() {
            "compact".to_string()
        } else {
            format!("direction {}", self.direction)
        };
        format!(
            "dim {}, weight ({weight}), value {}, support {{{pts}}}, {tail}",
            self.dim, self.value
        )
    }
}

/// The coordinate subspaces on which a support vanishes identically
/// (`vanishing`, the sets `I` with no support point confined to `I`) and
/// the rest (`nonvanishing`).  Both lists are sorted by size, then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateClassification {
    pub vanishing: Vec<SubspaceIndex>,
    pub nonvanishing: Vec<SubspaceIndex>,
}

/// A Newton polyhedron: deduplicated support, vertices, and facets
/// (the faces of dimension n−1, compact or not).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub n: usize,
    pub support: Vec<ExponentVector>,
    pub vertices: Vec<ExponentVector>,
    pub facets: Vec<Face>,
}

fn check_support(support: &[ExponentVector], n: usize) -> Result<Vec<ExponentVector>> {
    if n == 0 {
        return Err(Error::pre("a Newton polyhedron needs at least one variable"));
    }
    if support.is_empty() {
        return Err(Error::pre("empty support has no Newton polyhedron"));
    }
    let set: BTreeSet<ExponentVector> = support.iter().cloned().collect();
    for p in &set {
        if p.len() != n {
            return Err(Error::pre(format!(
                "support point {p} has {} coordinates, expected {n}",
                p.len()
            )));
        }
    }
    if set.len() > SUPPORT_CAP {
        return Err(Error::ResourceExhausted {
            resource: "support points",
            limit: SUPPORT_CAP as u64,
        });
    }
    Ok(set.into_iter().collect())
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn qint(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Vertices of `Γ₊(S)`: the support points `α` admitting a strictly
/// positive weight that is strictly smaller on `α` than on every other
/// support point.  The separation is sought via the substitution
/// `w = 1 + x, x ≥ 0`; integrality of the data lets "strict" be replaced
/// by "gap ≥ 1".
pub fn vertices(support: &[ExponentVector], n: usize) -> Result<Vec<ExponentVector>> {
    let support = check_support(support, n)?;
    let mut out = Vec::new();
    for alpha in &support {
        let mut constraints = Vec::new();
        for beta in &support {
            if beta == alpha {
                continue;
            }
            // Σ (βᵢ-αᵢ)(1+xᵢ) ≥ 1  ⇔  Σ (βᵢ-αᵢ)xᵢ ≥ 1 − Σ(βᵢ-αᵢ)
            let coeffs: Vec<BigRational> = (0..n)
                .map(|i| qint(beta.get(i) as i128 - alpha.get(i) as i128))
                .collect();
            let shift: BigRational = coeffs.iter().fold(BigRational::zero(), |a, c| a + c);
            constraints.push(Constraint::ge(coeffs, q(1) - shift));
        }
        if feasible_point(n, &constraints).is_some() {
            out.push(alpha.clone());
        }
    }
    Ok(out)
}

/// Tests whether the vertex subset `w_set` is the full vertex set of a
/// compact face; on success returns the gcd-reduced strictly positive
/// integer weight certifying it.
fn face_weight_for_subset(
    w_set: &[ExponentVector],
    others: &[ExponentVector],
    n: usize,
) -> Option<Vec<BigInt>> {
    let base = &w_set[0];
    let mut constraints = Vec::new();
    for p in w_set.iter().skip(1) {
        let coeffs: Vec<BigRational> = (0..n)
            .map(|i| qint(p.get(i) as i128 - base.get(i) as i128))
            .collect();
        let shift: BigRational = coeffs.iter().fold(BigRational::zero(), |a, c| a + c);
        constraints.push(Constraint::eq(coeffs, -shift));
    }
    for p in others {
        let coeffs: Vec<BigRational> = (0..n)
            .map(|i| qint(p.get(i) as i128 - base.get(i) as i128))
            .collect();
        let shift: BigRational = coeffs.iter().fold(BigRational::zero(), |a, c| a + c);
        constraints.push(Constraint::ge(coeffs, q(1) - shift));
    }
    let x = feasible_point(n, &constraints)?;
    let w: Vec<BigRational> = x.into_iter().map(|xi| xi + BigRational::one()).collect();
    Some(scale_to_integers(&w))
}

fn bigint_weight_to_u64(w: &[BigInt]) -> Result<Vec<u64>> {
    w.iter()
        .map(|v| {
            u64::try_from(v.clone()).map_err(|_| Error::pre("face weight does not fit in 64 bits"))
        })
        .collect()
}

/// Argmin of the weight over the support: the face's support points and
/// minimal value.
fn argmin(support: &[ExponentVector], weight: &[u64]) -> Result<(u64, Vec<ExponentVector>)> {
    let mut best: Option<u64> = None;
    let mut pts: Vec<ExponentVector> = Vec::new();
    for p in support {
        let v = p.weighted_value(weight)?;
        match best {
            Some(b) if v > b => {}
            Some(b) if v == b => pts.push(p.clone()),
            _ => {
                best = Some(v);
                pts = vec![p.clone()];
            }
        }
    }
    Ok((best.expect("nonempty support"), pts))
}

/// Rank over ℚ of the span of `{p − p₀}` for the face's points together
/// with the unit vectors of its recession directions.
fn face_dim(points: &[ExponentVector], direction: &SubspaceIndex, n: usize) -> usize {
    let base = &points[0];
    let mut rows: Vec<Vec<BigRational>> = points
        .iter()
        .skip(1)
        .map(|p| {
            (0..n)
                .map(|i| qint(p.get(i) as i128 - base.get(i) as i128))
                .collect()
        })
        .collect();
    for &i in direction.indices() {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        rows.push(e);
    }
    rank_of(rows)
}

fn rank_of(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len());
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &inv;
                for c in col..width {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All compact faces of `Γ₊(S)`, of every dimension, sorted by dimension
/// then by support points.
///
/// Enumeration walks the closure system on vertex sets: the closure of a
/// set `W` is the set of vertices in its affine hull.  Every face's vertex
/// set is closed, and every closed set is reachable from a singleton by
/// repeatedly adjoining one vertex and closing, so a breadth-first walk
/// visits every face.  Each candidate is certified or rejected by an exact
/// LP.
pub fn compact_faces(support: &[ExponentVector], n: usize) -> Result<Vec<Face>> {
    let support = check_support(support, n)?;
    let verts = vertices(&support, n)?;
    let faces_raw = compact_faces_raw(&support, &verts, n)?;
    let mut faces: Vec<Face> = Vec::new();
    for (weight, value, pts) in faces_raw {
        let dim = face_dim(&pts, &SubspaceIndex::empty(), n);
        faces.push(Face {
            weight,
            value,
            support_points: pts,
            direction: SubspaceIndex::empty(),
            dim,
        });
    }
    faces.sort_by(|a, b| {
        (a.dim, &a.support_points, &a.direction).cmp(&(b.dim, &b.support_points, &b.direction))
    });
    Ok(faces)
}

/// Core of the compact-face enumeration; returns `(weight, value, argmin)`
/// triples keyed by distinct argmin sets.
fn compact_faces_raw(
    support: &[ExponentVector],
    verts: &[ExponentVector],
    n: usize,
) -> Result<Vec<(Vec<u64>, u64, Vec<ExponentVector>)>> {
    // Closure of a vertex-index set: vertices in the affine hull.
    let closure = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
        let pts: Vec<&ExponentVector> = set.iter().map(|&i| &verts[i]).collect();
        let base = pts[0];
        let span: Vec<Vec<BigRational>> = pts
            .iter()
            .skip(1)
            .map(|p| {
                (0..n)
                    .map(|i| qint(p.get(i) as i128 - base.get(i) as i128))
                    .collect()
            })
            .collect();
        let base_rank = rank_of(span.clone());
        let mut closed = set.clone();
        for (j, v) in verts.iter().enumerate() {
            if closed.contains(&j) {
                continue;
            }
            let mut rows = span.clone();
            rows.push(
                (0..n)
                    .map(|i| qint(v.get(i) as i128 - base.get(i) as i128))
                    .collect(),
            );
            if rank_of(rows) == base_rank {
                closed.insert(j);
            }
        }
        closed
    };

    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue: Vec<BTreeSet<usize>> = Vec::new();
    for i in 0..verts.len() {
        let single: BTreeSet<usize> = [i].into_iter().collect();
        // Singletons are closed: a vertex is alone in its affine hull.
        seen.insert(single.clone());
        queue.push(single);
    }
    let mut results: BTreeMap<Vec<ExponentVector>, (Vec<u64>, u64)> = BTreeMap::new();
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        let w_set: Vec<ExponentVector> = current.iter().map(|&i| verts[i].clone()).collect();
        let others: Vec<ExponentVector> = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| !current.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        if let Some(w) = face_weight_for_subset(&w_set, &others, n) {
            let weight = bigint_weight_to_u64(&w)?;
            let (value, pts) = argmin(support, &weight)?;
            results.entry(pts).or_insert((weight, value));
        }
        for j in 0..verts.len() {
            if current.contains(&j) {
                continue;
            }
            let mut grown = current.clone();
            grown.insert(j);
            let closed = closure(&grown);
            if seen.insert(closed.clone()) {
                if seen.len() > FACE_CANDIDATE_CAP {
                    return Err(Error::ResourceExhausted {
                        resource: "face candidates",
                        limit: FACE_CANDIDATE_CAP as u64,
                    });
                }
                queue.push(closed);
            }
        }
    }
    Ok(results
        .into_iter()
        .map(|(pts, (weight, value))| (weight, value, pts))
        .collect())
}

/// The face of `Γ₊(S)` selected by an explicit nonnegative weight (not
/// identically zero).  Zero entries of the weight are its recession
/// directions.
pub fn face_of_weight(support: &[ExponentVector], weight: &[u64], n: usize) -> Result<Face> {
    let support = check_support(support, n)?;
    if weight.len() != n {
        return Err(Error::pre(format!(
            "weight has {} entries, expected {n}",
            weight.len()
        )));
    }
    if weight.iter().all(|&w| w == 0) {
        return Err(Error::pre("the zero weight selects no face"));
    }
    let reduced = scale_to_integers(
        &weight
            .iter()
            .map(|&w| BigRational::from_integer(BigInt::from(w)))
            .collect::<Vec<_>>(),
    );
    let weight = bigint_weight_to_u64(&reduced)?;
    let direction: Vec<usize> = (0..n).filter(|&i| weight[i] == 0).collect();
    let direction = SubspaceIndex::new(direction, n)?;
    let (value, pts) = argmin(&support, &weight)?;
    let dim = face_dim(&pts, &direction, n);
    Ok(Face {
        weight,
        value,
        support_points: pts,
        direction,
        dim,
    })
}

/// Coordinate subspaces classified by whether the polynomial with this
/// support vanishes identically on them.  `I` is vanishing exactly when no
/// support point has all its nonzero coordinates inside `I`.
pub fn classify_subspaces(support: &[ExponentVector], n: usize) -> Result<CoordinateClassification> {
    let support = check_support(support, n)?;
    if n > CLASSIFICATION_VAR_CAP {
        return Err(Error::pre(format!(
            "subspace classification supports at most {CLASSIFICATION_VAR_CAP} variables, got {n}"
        )));
    }
    let masks: Vec<u64> = support
        .iter()
        .map(|p| {
            p.entries()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let mut vanishing = Vec::new();
    let mut nonvanishing = Vec::new();
    for imask in 0u64..(1 << n) {
        let confined = masks.iter().any(|&s| s & !imask == 0);
        let idx = SubspaceIndex::from_mask(imask, n);
        if confined {
            nonvanishing.push(idx);
        } else {
            vanishing.push(idx);
        }
    }
    let by_size = |a: &SubspaceIndex, b: &SubspaceIndex| {
        (a.indices().len(), a.indices()).cmp(&(b.indices().len(), b.indices()))
    };
    vanishing.sort_by(by_size);
    nonvanishing.sort_by(by_size);
    Ok(CoordinateClassification {
        vanishing,
        nonvanishing,
    })
}

/// Faces of `Γ₊(S)` receding exactly along `I`: the compact faces of the
/// projection of `S` onto the complementary coordinates `J`, lifted back by
/// taking all support points whose projection lies on the projected face.
/// Requires a proper nonempty `I`.
pub fn faces_with_direction(
    support: &[ExponentVector],
    i_set: &SubspaceIndex,
    n: usize,
) -> Result<Vec<Face>> {
    let support = check_support(support, n)?;
    let i_indices = i_set.indices();
    if i_indices.is_empty() || i_indices.len() >= n {
        return Err(Error::pre(
            "recession direction must be a proper nonempty coordinate subset",
        ));
    }
    let j = i_set.complement(n);
    let j_indices = j.indices();
    let m = j_indices.len();
    // Project onto the J coordinates.
    let projected: BTreeSet<ExponentVector> = support
        .iter()
        .map(|p| ExponentVector::new(j_indices.iter().map(|&c| p.get(c)).collect()))
        .collect();
    let projected: Vec<ExponentVector> = projected.into_iter().collect();
    let verts = vertices(&projected, m)?;
    let faces_raw = compact_faces_raw(&projected, &verts, m)?;
    let mut out = Vec::new();
    for (weight_j, _value_j, _pts_j) in faces_raw {
        // Lift the weight: zeros on I, the projected weight on J.  The
        // argmin of the lifted weight over S is exactly the preimage of
        // the projected face.
        let mut weight = vec![0u64; n];
        for (k, &c) in j_indices.iter().enumerate() {
            weight[c] = weight_j[k];
        }
        let (value, pts) = argmin(&support, &weight)?;
        let dim = face_dim(&pts, i_set, n);
        out.push(Face {
            weight,
            value,
            support_points: pts,
            direction: i_set.clone(),
            dim,
        });
    }
    out.sort_by(|a, b| {
        (a.dim, &a.support_points, &a.direction).cmp(&(b.dim, &b.support_points, &b.direction))
    });
    Ok(out)
}

/// The essential non-compact faces: for every nonempty vanishing coordinate
/// subspace `I`, the faces receding exactly along `I`.  These are the faces
/// whose face functions govern regularity at the boundary of the germ.
pub fn essential_noncompact_faces(support: &[ExponentVector], n: usize) -> Result<Vec<Face>> {
    let classification = classify_subspaces(support, n)?;
    let mut out = Vec::new();
    for i_set in &classification.vanishing {
        if i_set.indices().is_empty() {
            continue;
        }
        out.extend(faces_with_direction(support, i_set, n)?);
    }
    out.sort_by(|a, b| {
        (a.dim, &a.support_points, &a.direction).cmp(&(b.dim, &b.support_points, &b.direction))
    });
    Ok(out)
}

/// The full polyhedron summary: support, vertices, and the facets (faces
/// of dimension n−1 over every recession direction, plus the compact ones).
pub fn newton_polyhedron(support: &[ExponentVector], n: usize) -> Result<NewtonPolyhedron> {
    let support = check_support(support, n)?;
    let verts = vertices(&support, n)?;
    let mut facets: Vec<Face> = compact_faces(&support, n)?
        .into_iter()
        .filter(|f| f.dim + 1 == n)
        .collect();
    if n > 1 {
        // Recession directions are bounded by CLASSIFICATION_VAR_CAP bits.
        if n > CLASSIFICATION_VAR_CAP {
            return Err(Error::pre(format!(
                "facet enumeration supports at most {CLASSIFICATION_VAR_CAP} variables, got {n}"
            )));
        }
        for imask in 1u64..(1 << n) - 1 {
            let i_set = SubspaceIndex::from_mask(imask, n);
            for face in faces_with_direction(&support, &i_set, n)? {
                if face.dim + 1 == n {
                    facets.push(face);
                }
            }
        }
    }
    facets.sort_by(|a, b| {
        (a.dim, &a.support_points, &a.direction).cmp(&(b.dim, &b.support_points, &b.direction))
    });
    Ok(NewtonPolyhedron {
        n,
        support,
        vertices: verts,
        facets,
    })
}

/// Restriction of a polynomial to a face: the terms supported on the
/// face's points.
pub fn face_function(f: &SparsePolynomial, face: &Face) -> SparsePolynomial {
    let keep: BTreeSet<&ExponentVector> = face.support_points.iter().collect();
    let terms: Vec<(ExponentVector, crate::rational::GaussianRational)> = f
        .terms()
        .filter(|(e, _)| keep.contains(e))
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    SparsePolynomial::new(f.n(), terms).expect("restriction of a valid polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::SplitMix;

    fn ev(entries: &[u32]) -> ExponentVector {
        ExponentVector::new(entries.to_vec())
    }

    fn pts(list: &[&[u32]]) -> Vec<ExponentVector> {
        // Canonical sorted order, matching what the library emits.
        let set: BTreeSet<ExponentVector> = list.iter().map(|e| ev(e)).collect();
        set.into_iter().collect()
    }

    /// Independent vertex oracle: α is a vertex of conv(S)+ℝ₊ⁿ iff it is
    /// NOT a nonnegative-shifted convex combination of the other points.
    /// (The production path uses weight separation; this uses the primal
    /// convex-combination formulation.)
    fn vertex_oracle(support: &[ExponentVector], alpha: &ExponentVector, n: usize) -> bool {
        let others: Vec<&ExponentVector> = support.iter().filter(|p| *p != alpha).collect();
        if others.is_empty() {
            return true;
        }
        // Feasibility of: λ ≥ 0, Σλ = 1, Σ λβ ≤ α componentwise
        // (slack absorbs the +ℝ₊ⁿ part).
        let k = others.len();
        let mut constraints = Vec::new();
        constraints.push(Constraint::eq(
            vec![BigRational::one(); k],
            BigRational::one(),
        ));
        for i in 0..n {
            let coeffs: Vec<BigRational> = others.iter().map(|b| qint(b.get(i) as i128)).collect();
            constraints.push(Constraint {
                coeffs,
                cmp: crate::lp::Cmp::Le,
                rhs: qint(alpha.get(i) as i128),
            });
        }
        feasible_point(k, &constraints).is_none()
    }

    #[test]
    fn vertices_of_simple_supports() {
        // (2,4) = (2,3) + (0,1) is absorbed by the orthant.
        let s = pts(&[&[2, 3], &[3, 2], &[2, 4]]);
        let v = vertices(&s, 2).unwrap();
        assert_eq!(v, pts(&[&[2, 3], &[3, 2]]));

        let s = pts(&[&[3, 0, 0], &[0, 3, 0], &[0, 1, 2]]);
        let v = vertices(&s, 3).unwrap();
        assert_eq!(v.len(), 3);

        // A single point is always a vertex.
        let s = pts(&[&[5, 7]]);
        assert_eq!(vertices(&s, 2).unwrap(), s);

        // Points on a line: only the extremes are vertices.
        let s = pts(&[&[0, 4], &[1, 3], &[2, 2], &[3, 1], &[4, 0]]);
        let v = vertices(&s, 2).unwrap();
        assert_eq!(v, pts(&[&[0, 4], &[4, 0]]));
    }

    #[test]
    fn vertices_agree_with_convex_combination_oracle() {
        let mut rng = SplitMix(0x9e3779b9);
        for _ in 0..60 {
            let n = 2 + (rng.next() % 2) as usize;
            let k = 2 + (rng.next() % 6) as usize;
            let support: Vec<ExponentVector> = (0..k)
                .map(|_| ExponentVector::new((0..n).map(|_| (rng.next() % 6) as u32).collect()))
                .collect();
            let support: Vec<ExponentVector> =
                support.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            let computed = vertices(&support, n).unwrap();
            for p in &support {
                let is_vertex = computed.contains(p);
                assert_eq!(
                    is_vertex,
                    vertex_oracle(&support, p, n),
                    "disagreement at {p} for support {support:?}"
                );
            }
        }
    }

    #[test]
    fn compact_faces_of_an_edge_support() {
        let s = pts(&[&[2, 3], &[3, 2], &[2, 4]]);
        let faces = compact_faces(&s, 2).unwrap();
        // Two vertices and the edge between them; (2,4) sits on no compact face.
        assert_eq!(faces.len(), 3);
        assert_eq!(faces[0].dim, 0);
        assert_eq!(faces[0].support_points, pts(&[&[2, 3]]));
        assert_eq!(faces[1].dim, 0);
        assert_eq!(faces[1].support_points, pts(&[&[3, 2]]));
        assert_eq!(faces[2].dim, 1);
        assert_eq!(faces[2].support_points, pts(&[&[2, 3], &[3, 2]]));
        assert_eq!(faces[2].weight, vec![1, 1]);
        assert_eq!(faces[2].value, 5);
        for f in &faces {
            assert!(f.is_compact());
        }
    }

    #[test]
    fn compact_faces_can_contain_every_vertex() {
        // All three points lie on the plane w=(1,1,1), value 3, which is a
        // genuine 2-dimensional compact face.
        let s = pts(&[&[3, 0, 0], &[0, 3, 0], &[0, 1, 2]]);
        let faces = compact_faces(&s, 3).unwrap();
        let two_faces: Vec<&Face> = faces.iter().filter(|f| f.dim == 2).collect();
        assert_eq!(two_faces.len(), 1);
        assert_eq!(two_faces[0].support_points, s);
        assert_eq!(two_faces[0].weight, vec![1, 1, 1]);
        assert_eq!(two_faces[0].value, 3);
        // Plus three vertices and three edges.
        assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim == 1).count(), 3);
    }

    #[test]
    fn faces_found_by_weight_grids_are_enumerated() {
        // Completeness cross-check: every argmin of a strictly positive
        // grid weight must appear among the enumerated compact faces.
        let mut rng = SplitMix(0xfaceface);
        for _ in 0..25 {
            let n = 2 + (rng.next() % 2) as usize;
            let k = 2 + (rng.next() % 5) as usize;
            let support: Vec<ExponentVector> = (0..k)
                .map(|_| ExponentVector::new((0..n).map(|_| (rng.next() % 5) as u32).collect()))
                .collect();
            let support: Vec<ExponentVector> =
                support.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            let faces = compact_faces(&support, n).unwrap();
            let face_supports: BTreeSet<Vec<ExponentVector>> =
                faces.iter().map(|f| f.support_points.clone()).collect();
            let grid: Vec<u64> = vec![1, 2, 3, 5];
            let mut weights: Vec<Vec<u64>> = vec![vec![]];
            for _ in 0..n {
                weights = weights
                    .into_iter()
                    .flat_map(|w| {
                        grid.iter().map(move |&g| {
                            let mut w2 = w.clone();
                            w2.push(g);
                            w2
                        }).collect::<Vec<_>>()
                    })
                    .collect();
            }
            for w in weights {
                let (_, pts) = argmin(&support, &w).unwrap();
                assert!(
                    face_supports.contains(&pts),
                    "grid weight {w:?} found face {pts:?} missing from enumeration for {support:?}"
                );
            }
        }
    }

    #[test]
    fn enumerated_faces_are_certified_by_their_weights() {
        let mut rng = SplitMix(0x1234321);
        for _ in 0..30 {
            let n = 2 + (rng.next() % 2) as usize;
            let k = 2 + (rng.next() % 5) as usize;
            let support: Vec<ExponentVector> = (0..k)
                .map(|_| ExponentVector::new((0..n).map(|_| (rng.next() % 5) as u32).collect()))
                .collect();
            let faces = compact_faces(&support, n).unwrap();
            for f in &faces {
                assert!(f.weight.iter().all(|&w| w > 0));
                let (value, pts) = argmin(&check_support(&support, n).unwrap(), &f.weight).unwrap();
                assert_eq!(value, f.value);
                assert_eq!(pts, f.support_points, "witness weight reproduces the face");
            }
        }
    }

    #[test]
    fn subspace_classification() {
        // z1^3 + z2^3 + z2*z3^2: supports {1}, {2}, {2,3}.
        let s = pts(&[&[3, 0, 0], &[0, 3, 0], &[0, 1, 2]]);
        let c = classify_subspaces(&s, 3).unwrap();
        let names: Vec<String> = c.vanishing.iter().map(|i| i.to_string()).collect();
        assert_eq!(names, vec!["{}", "{3}"]);
        assert_eq!(c.vanishing.len() + c.nonvanishing.len(), 8);

        // A convenient polynomial (all axes occupied) vanishes only on ∅… in
        // fact not even there if it had a constant term.
        let s = pts(&[&[2, 0], &[0, 2]]);
        let c = classify_subspaces(&s, 2).unwrap();
        let names: Vec<String> = c.vanishing.iter().map(|i| i.to_string()).collect();
        assert_eq!(names, vec!["{}"]);

        // With a constant term nothing vanishes at all.
        let s = pts(&[&[0, 0], &[2, 0]]);
        let c = classify_subspaces(&s, 2).unwrap();
        assert!(c.vanishing.is_empty());
    }

    #[test]
    fn essential_faces_by_projection() {
        // z1^3 + z2^3 + z2*z3^2: the only nonempty vanishing subspace is
        // I = {3}; projecting out z3 leaves {(3,0),(0,3),(0,1)} whose
        // compact faces are two vertices and one edge — lifting gives
        // supports {(3,0,0)}, {(0,1,2)}, and both.
        let s = pts(&[&[3, 0, 0], &[0, 3, 0], &[0, 1, 2]]);
        let faces = essential_noncompact_faces(&s, 3).unwrap();
        assert_eq!(faces.len(), 3);
        let supports: Vec<Vec<ExponentVector>> =
            faces.iter().map(|f| f.support_points.clone()).collect();
        assert!(supports.contains(&pts(&[&[3, 0, 0]])));
        assert!(supports.contains(&pts(&[&[0, 1, 2]])));
        assert!(supports.contains(&pts(&[&[3, 0, 0], &[0, 1, 2]])));
        for f in &faces {
            assert_eq!(f.direction.to_string(), "{3}");
            assert!(!f.is_compact());
            // Weight vanishes exactly on I.
            assert_eq!(f.weight[2], 0);
            assert!(f.weight[0] > 0 && f.weight[1] > 0);
        }
        // Dimensions: lifted vertices have dim 1 (the recession ray),
        // the lifted edge has dim 2.
        let mut dims: Vec<usize> = faces.iter().map(|f| f.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2]);
    }

    #[test]
    fn essential_faces_of_the_nontame_example() {
        // z1^2*z3^2 - z2^3*z3^2 + z3^3: support supports are {1,3},{2,3},{3},
        // so the vanishing subspaces are ∅, {1}, {2}, {1,2}.
        let s = pts(&[&[2, 0, 2], &[0, 3, 2], &[0, 0, 3]]);
        let c = classify_subspaces(&s, 3).unwrap();
        let names: Vec<String> = c.vanishing.iter().map(|i| i.to_string()).collect();
        assert_eq!(names, vec!["{}", "{1}", "{2}", "{1,2}"]);
        let faces = essential_noncompact_faces(&s, 3).unwrap();
        // I = {1,2}: projection onto z3 is {2,3}; its single compact face
        // is the point {2}, lifting to {(2,0,2),(0,3,2)} with dim 3… rank
        // of (−2,3,0) plus e1,e2 = 3? e1,e2 and their span already contain
        // (−2,3,0): dim = 2.
        let f12: Vec<&Face> = faces
            .iter()
            .filter(|f| f.direction.to_string() == "{1,2}")
            .collect();
        assert_eq!(f12.len(), 1);
        assert_eq!(f12[0].support_points, pts(&[&[2, 0, 2], &[0, 3, 2]]));
        assert_eq!(f12[0].dim, 2);
        assert_eq!(f12[0].weight, vec![0, 0, 1]);
        assert_eq!(f12[0].value, 2);
    }

    #[test]
    fn face_of_weight_selects_argmin() {
        let s = pts(&[&[2, 3], &[3, 2], &[2, 4]]);
        let f = face_of_weight(&s, &[1, 1], 2).unwrap();
        assert_eq!(f.support_points, pts(&[&[2, 3], &[3, 2]]));
        assert_eq!(f.value, 5);
        assert_eq!(f.dim, 1);
        assert!(f.is_compact());

        // Weight (2,2) reduces to (1,1).
        let f2 = face_of_weight(&s, &[2, 2], 2).unwrap();
        assert_eq!(f2, f);

        // A zero coordinate recedes along that axis.
        let f = face_of_weight(&s, &[1, 0], 2).unwrap();
        assert_eq!(f.direction.to_string(), "{2}");
        assert_eq!(f.support_points, pts(&[&[2, 3], &[2, 4]]));
        assert_eq!(f.dim, 1);

        assert!(face_of_weight(&s, &[0, 0], 2).is_err());
        assert!(face_of_weight(&s, &[1], 2).is_err());
    }

    #[test]
    fn facets_of_the_polyhedron_summary() {
        let s = pts(&[&[2, 3], &[3, 2], &[2, 4]]);
        let p = newton_polyhedron(&s, 2).unwrap();
        assert_eq!(p.vertices, pts(&[&[2, 3], &[3, 2]]));
        // Facets (dim 1): the compact edge, the vertical ray above (2,3)…
        // direction {2} from (2,3)+(2,4); and the horizontal ray right of
        // (3,2), direction {1}.
        assert_eq!(p.facets.len(), 3);
        let descriptions: Vec<String> = p.facets.iter().map(|f| f.describe()).collect();
        assert!(descriptions.iter().any(|d| d.contains("compact")), "{descriptions:?}");
        assert!(descriptions.iter().any(|d| d.contains("direction {1}")));
        assert!(descriptions.iter().any(|d| d.contains("direction {2}")));
    }

    #[test]
    fn face_function_restricts_terms() {
        let f = crate::poly::SparsePolynomial::new(
            2,
            vec![
                (ev(&[2, 3]), crate::rational::GaussianRational::one()),
                (ev(&[3, 2]), crate::rational::GaussianRational::one()),
                (
                    ev(&[2, 4]),
                    crate::rational::GaussianRational::from_int(2),
                ),
            ],
        )
        .unwrap();
        let s: Vec<ExponentVector> = f.support();
        let face = face_of_weight(&s, &[1, 1], 2).unwrap();
        let g = face_function(&f, &face);
        assert_eq!(g.to_string(), "z1^3*z2^2 + z1^2*z2^3");
    }

    #[test]
    fn guards_reject_bad_input() {
        assert!(vertices(&[], 2).is_err());
        assert!(vertices(&pts(&[&[1, 2]]), 0).is_err());
        assert!(vertices(&pts(&[&[1, 2, 3]]), 2).is_err());
        assert!(classify_subspaces(&pts(&[&[1; 17]]), 17).is_err());
        let i = SubspaceIndex::new(vec![0, 1], 2).unwrap();
        assert!(faces_with_direction(&pts(&[&[1, 2]]), &i, 2).is_err());
        let empty = SubspaceIndex::empty();
        assert!(faces_with_direction(&pts(&[&[1, 2]]), &empty, 2).is_err());
    }
}
