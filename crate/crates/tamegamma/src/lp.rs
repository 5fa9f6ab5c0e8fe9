//! Exact rational linear feasibility.
//!
//! The polyhedral layer reduces every geometric question — "is this support
//! point a vertex?", "do these vertices span a face?" — to the feasibility
//! of a small linear system over the nonnegative orthant.  This module
//! answers those questions exactly: a phase-1 simplex over `BigRational`
//! with Bland's pivoting rule, which terminates on every input and never
//! suffers floating-point tie-break artifacts.
//!
//! Only feasibility is needed (no objective), so phase 2 is absent.  The
//! returned point is a basic feasible solution, which for our weight-vector
//! systems doubles as a certificate that can be rescaled to integers with
//! [`scale_to_integers`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sense of one linear constraint on nonnegative variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    /// `coeffs · x >= rhs`
    Ge,
    /// `coeffs · x <= rhs`
    Le,
    /// `coeffs · x == rhs`
    Eq,
}

/// One constraint `coeffs · x  (>=|<=|==)  rhs` with `x >= 0` implicit.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub cmp: Cmp,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn ge(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coeffs, cmp: Cmp::Ge, rhs }
    }

    pub fn eq(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coeffs, cmp: Cmp::Eq, rhs }
    }
}

/// Searches for `x >= 0` satisfying all constraints.  Returns a feasible
/// point, or `None` when the system is infeasible.
///
/// Panics if a constraint's coefficient vector disagrees with `num_vars`
/// (an internal-caller bug, not a data condition).
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<BigRational>> {
    for c in constraints {
        assert_eq!(c.coeffs.len(), num_vars, "constraint arity mismatch");
    }
    if constraints.is_empty() {
        return Some(vec![BigRational::zero(); num_vars]);
    }

    // Normalize to rhs >= 0, then give every row a basic column: a slack
    // for `<=` rows, an artificial for `>=` (after a surplus) and `==`
    // rows.  Phase 1 minimizes the artificial sum.
    let m = constraints.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut senses: Vec<Cmp> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    for c in constraints {
        let (mut coeffs, mut sense, mut b) = (c.coeffs.clone(), c.cmp, c.rhs.clone());
        if b.is_negative() {
            for a in &mut coeffs {
                *a = -&*a;
            }
            b = -b;
            sense = match sense {
                Cmp::Ge => Cmp::Le,
                Cmp::Le => Cmp::Ge,
                Cmp::Eq => Cmp::Eq,
            };
        }
        rows.push(coeffs);
        senses.push(sense);
        rhs.push(b);
    }

    let num_slack = senses.iter().filter(|s| !matches!(s, Cmp::Eq)).count();
    let num_artificial = senses.iter().filter(|s| !matches!(s, Cmp::Le)).count();
    let total = num_vars + num_slack + num_artificial;

    // tableau[i] has `total` columns; `rhs[i]` is kept separately.
    let mut tableau: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![BigRational::zero(); total];
            row[..num_vars].clone_from_slice(r);
            row
        })
        .collect();
    let mut basis: Vec<usize> = vec![0; m];
    let mut next_slack = num_vars;
    let mut next_artificial = num_vars + num_slack;
    let mut artificial_rows: Vec<usize> = Vec::new();
    for (i, sense) in senses.iter().enumerate() {
        match sense {
            Cmp::Le => {
                tableau[i][next_slack] = BigRational::one();
                basis[i] = next_slack;
                next_slack += 1;
            }
            Cmp::Ge => {
                tableau[i][next_slack] = -BigRational::one();
                next_slack += 1;
                tableau[i][next_artificial] = BigRational::one();
                basis[i] = next_artificial;
                next_artificial += 1;
                artificial_rows.push(i);
            }
            Cmp::Eq => {
                tableau[i][next_artificial] = BigRational::one();
                basis[i] = next_artificial;
                next_artificial += 1;
                artificial_rows.push(i);
            }
        }
    }

    // Phase-1 objective: minimize the artificial sum.  Reduced costs of
    // the starting tableau are -(sum of artificial rows) on non-artificial
    // columns; the objective value starts at the artificial rhs sum.
    let first_artificial = num_vars + num_slack;
    let mut cost = vec![BigRational::zero(); total];
    let mut objective = BigRational::zero();
    for &i in &artificial_rows {
        for j in 0..total {
            if j < first_artificial {
                let delta = tableau[i][j].clone();
                cost[j] -= delta;
            }
        }
        objective += &rhs[i];
    }

    loop {
        // Bland's rule: entering column = smallest index with negative
        // reduced cost.
        let Some(enter) = (0..total).find(|&j| cost[j].is_negative()) else {
            break;
        };
        // Ratio test; Bland tie-break on smallest basis index.
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..m {
            if tableau[i][enter].is_positive() {
                let ratio = &rhs[i] / &tableau[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // Unbounded phase-1 objective cannot happen (it is bounded
            // below by 0); an absent leaving row would be a solver bug.
            unreachable!("phase-1 objective is bounded below");
        };

        // Pivot on (leave, enter).
        let pivot = tableau[leave][enter].clone();
        for v in &mut tableau[leave] {
            *v /= &pivot;
        }
        rhs[leave] /= &pivot;
        for i in 0..m {
            if i != leave && !tableau[i][enter].is_zero() {
                let factor = tableau[i][enter].clone();
                for j in 0..total {
                    let delta = &factor * &tableau[leave][j];
                    tableau[i][j] -= delta;
                }
                let delta = &factor * &rhs[leave];
                rhs[i] -= delta;
            }
        }
        if !cost[enter].is_zero() {
            // Substituting the entering variable's row into the objective:
            // d_j' = d_j - d_e * T_rj,  w' = w + d_e * rhs_r.
            let factor = cost[enter].clone();
            for j in 0..total {
                let delta = &factor * &tableau[leave][j];
                cost[j] -= delta;
            }
            let delta = &factor * &rhs[leave];
            objective += delta;
        }
        basis[leave] = enter;
    }

    if !objective.is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); num_vars];
    for i in 0..m {
        if basis[i] < num_vars {
            x[basis[i]] = rhs[i].clone();
        }
    }
    Some(x)
}

/// Rescales a nonnegative rational vector to coprime integers by the least
/// common multiple of the denominators, then divides out the gcd.  The
/// direction (and hence any argmin it selects) is unchanged.
pub fn scale_to_integers(values: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> = values.iter().map(|v| (v * &lcm).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for v in &ints {
        gcd = gcd.gcd(v);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for v in &mut ints {
            *v /= &gcd;
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::SplitMix;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn check_satisfies(x: &[BigRational], cs: &[Constraint]) {
        for c in cs {
            let lhs: BigRational = c
                .coeffs
                .iter()
                .zip(x)
                .map(|(a, v)| a * v)
                .fold(BigRational::zero(), |acc, t| acc + t);
            match c.cmp {
                Cmp::Ge => assert!(lhs >= c.rhs, "{lhs} >= {}", c.rhs),
                Cmp::Le => assert!(lhs <= c.rhs, "{lhs} <= {}", c.rhs),
                Cmp::Eq => assert_eq!(lhs, c.rhs),
            }
        }
    }

    #[test]
    fn simple_systems() {
        // x1 >= 2 with x1 free to grow.
        let cs = vec![Constraint::ge(vec![q(1)], q(2))];
        let x = feasible_point(1, &cs).expect("feasible");
        check_satisfies(&x, &cs);

        // x1 + x2 == 2, x1 - x2 == 0 has the unique solution (1, 1).
        let cs = vec![
            Constraint::eq(vec![q(1), q(1)], q(2)),
            Constraint::eq(vec![q(1), q(-1)], q(0)),
        ];
        let x = feasible_point(2, &cs).expect("feasible");
        assert_eq!(x, vec![q(1), q(1)]);

        // Negative right-hand sides normalize correctly: -x1 >= -3 is x1 <= 3.
        let cs = vec![
            Constraint::ge(vec![q(-1)], q(-3)),
            Constraint::ge(vec![q(1)], q(2)),
        ];
        let x = feasible_point(1, &cs).expect("feasible");
        check_satisfies(&x, &cs);
    }

    #[test]
    fn infeasible_systems() {
        // x1 >= 2 and x1 <= 1.
        let cs = vec![
            Constraint::ge(vec![q(1)], q(2)),
            Constraint { coeffs: vec![q(1)], cmp: Cmp::Le, rhs: q(1) },
        ];
        assert!(feasible_point(1, &cs).is_none());

        // Equality contradiction.
        let cs = vec![
            Constraint::eq(vec![q(1), q(1)], q(1)),
            Constraint::eq(vec![q(1), q(1)], q(2)),
        ];
        assert!(feasible_point(2, &cs).is_none());

        // Nonnegativity alone can make a system infeasible: x1 + x2 <= -1.
        let cs = vec![Constraint { coeffs: vec![q(1), q(1)], cmp: Cmp::Le, rhs: q(-1) }];
        assert!(feasible_point(2, &cs).is_none());
    }

    #[test]
    fn empty_and_rational_data() {
        assert_eq!(feasible_point(2, &[]), Some(vec![q(0), q(0)]));
        let cs = vec![
            Constraint::eq(vec![qr(1, 2), qr(1, 3)], qr(5, 6)),
            Constraint::ge(vec![q(1), q(0)], q(1)),
        ];
        let x = feasible_point(2, &cs).expect("feasible");
        check_satisfies(&x, &cs);
    }

    #[test]
    fn degenerate_pivoting_terminates() {
        // A degenerate vertex (several tight constraints at the origin of
        // the slack space); Bland's rule must still terminate.
        let cs = vec![
            Constraint::ge(vec![q(1), q(-1), q(0)], q(0)),
            Constraint::ge(vec![q(-1), q(1), q(0)], q(0)),
            Constraint::ge(vec![q(1), q(1), q(-1)], q(0)),
            Constraint::eq(vec![q(1), q(1), q(1)], q(2)),
        ];
        let x = feasible_point(3, &cs).expect("feasible");
        check_satisfies(&x, &cs);
    }

    #[test]
    fn randomized_feasible_systems_are_solved() {
        let mut rng = SplitMix(0x51ab5);
        for _ in 0..120 {
            let n = 1 + (rng.next() % 4) as usize;
            let m = 1 + (rng.next() % 5) as usize;
            // Construct a system that is feasible by design: pick a target
            // point, then only emit constraints it satisfies.
            let target: Vec<BigRational> =
                (0..n).map(|_| q((rng.next() % 5) as i64)).collect();
            let mut cs = Vec::new();
            for _ in 0..m {
                let coeffs: Vec<BigRational> = (0..n).map(|_| q(rng.small(4))).collect();
                let value: BigRational = coeffs
                    .iter()
                    .zip(&target)
                    .map(|(a, v)| a * v)
                    .fold(BigRational::zero(), |acc, t| acc + t);
                match rng.next() % 3 {
                    0 => cs.push(Constraint::ge(coeffs, &value - q((rng.next() % 3) as i64))),
                    1 => cs.push(Constraint {
                        coeffs,
                        cmp: Cmp::Le,
                        rhs: &value + q((rng.next() % 3) as i64),
                    }),
                    _ => cs.push(Constraint::eq(coeffs, value)),
                }
            }
            let x = feasible_point(n, &cs).expect("constructed system is feasible");
            check_satisfies(&x, &cs);
        }
    }

    #[test]
    fn randomized_contradictions_are_detected() {
        let mut rng = SplitMix(0xc0ffee);
        for _ in 0..120 {
            let n = 1 + (rng.next() % 4) as usize;
            let mut coeffs: Vec<BigRational> = (0..n).map(|_| q(rng.small(4))).collect();
            if coeffs.iter().all(|c| c.is_zero()) {
                coeffs[0] = q(1);
            }
            let b = q(rng.small(6));
            // coeffs·x >= b + 1 and coeffs·x <= b cannot both hold.
            let cs = vec![
                Constraint::ge(coeffs.clone(), &b + q(1)),
                Constraint { coeffs, cmp: Cmp::Le, rhs: b },
            ];
            assert!(feasible_point(n, &cs).is_none());
        }
    }

    #[test]
    fn integer_scaling() {
        let v = vec![qr(1, 2), qr(3, 2), q(1)];
        assert_eq!(
            scale_to_integers(&v),
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)]
        );
        let v = vec![q(2), q(4), q(6)];
        assert_eq!(
            scale_to_integers(&v),
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]
        );
        let v = vec![q(0), q(0)];
        assert_eq!(scale_to_integers(&v), vec![BigInt::from(0), BigInt::from(0)]);
    }
}
