//! Monomial orders on exponent vectors.
//!
//! Variables are significant in slot order: slot 0 (`z1`) is the largest
//! variable, matching the listing order `z1, .., zn, t, u*` used everywhere
//! in this crate.  Three orders are provided:
//!
//! * `GrevLex` — graded reverse lexicographic, the default for Groebner
//!   bases and the canonical print order;
//! * `Lex` — pure lexicographic;
//! * `Block { front }` — an elimination order: the first `front` slots form
//!   the eliminated block, every monomial touching the block outranks every
//!   monomial free of it, and ties compare grevlex inside the block and then
//!   grevlex on the remainder.

use crate::poly::ExponentVector;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Block { front: usize },
}

impl MonomialOrder {
    /// Compares two exponent vectors of equal length.
    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        debug_assert_eq!(a.len(), b.len(), "order on mismatched rings");
        match self {
            MonomialOrder::GrevLex => grevlex(a.entries(), b.entries()),
            MonomialOrder::Lex => lex(a.entries(), b.entries()),
            MonomialOrder::Block { front } => {
                let f = (*front).min(a.len());
                grevlex(&a.entries()[..f], &b.entries()[..f])
                    .then_with(|| grevlex(&a.entries()[f..], &b.entries()[f..]))
            }
        }
    }

    /// Name used in reports and by the CLI `--order` flag.
    pub fn label(&self) -> &'static str {
        match self {
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Block { .. } => "block",
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Equal degree: the vector with the smaller entry in the rightmost
    // differing slot is the larger monomial.
    for j in (0..a.len()).rev() {
        if a[j] != b[j] {
            return b[j].cmp(&a[j]);
        }
    }
    Ordering::Equal
}

/// Componentwise maximum — the least common multiple of two monomials.
pub fn lcm_exponents(a: &ExponentVector, b: &ExponentVector) -> ExponentVector {
    ExponentVector::new(
        a.entries()
            .iter()
            .zip(b.entries())
            .map(|(&x, &y)| x.max(y))
            .collect(),
    )
}

/// True when the monomial `a` divides the monomial `b`.
pub fn divides(a: &ExponentVector, b: &ExponentVector) -> bool {
    a.entries().iter().zip(b.entries()).all(|(&x, &y)| x <= y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn grevlex_orders_by_degree_first() {
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&ev(&[3, 0]), &ev(&[1, 1])), Ordering::Greater);
        // Equal degree: z1*z3 vs z2^2 — rightmost difference decides.
        assert_eq!(o.cmp(&ev(&[1, 0, 1]), &ev(&[0, 2, 0])), Ordering::Less);
        // z1 > z2 > z3.
        assert_eq!(o.cmp(&ev(&[1, 0, 0]), &ev(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&ev(&[0, 1, 0]), &ev(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_degree() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&ev(&[1, 0]), &ev(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&ev(&[2, 1]), &ev(&[2, 3])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_front() {
        let o = MonomialOrder::Block { front: 1 };
        // Any monomial with the front variable beats any without.
        assert_eq!(o.cmp(&ev(&[1, 0, 0]), &ev(&[0, 9, 9])), Ordering::Greater);
        // Front parts equal: fall back to grevlex on the tail.
        assert_eq!(o.cmp(&ev(&[1, 2, 0]), &ev(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lcm_and_divisibility() {
        assert_eq!(lcm_exponents(&ev(&[2, 0]), &ev(&[1, 3])), ev(&[2, 3]));
        assert!(divides(&ev(&[1, 0]), &ev(&[2, 1])));
        assert!(!divides(&ev(&[3, 0]), &ev(&[2, 1])));
    }
}
