//! Variable bookkeeping for the polynomial rings the analyzer works in.
//!
//! A [`SparsePolynomial`](crate::poly::SparsePolynomial) only knows how many
//! variables it has; a [`Ring`] gives those slots names.  The analyzer moves
//! between several rings: the germ ring `z1..zn`, the family ring
//! `z1..zn, t`, slice rings where some `z` variables become slice parameters
//! `u*`, and saturation rings with an auxiliary inverse variable `y*`.
//!
//! Canonical report order is `z1 < .. < zn < t < u*`; elimination rings
//! instead place the variables to be eliminated first, so a [`Ring`] also
//! records an explicit name per slot.

use std::fmt;

/// The name of one ring slot.  Indices are 0-based in code and printed
/// 1-based (`Z(0)` prints as `z1`), matching the input grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarName {
    /// A germ coordinate `z{i+1}`.
    Z(usize),
    /// The family parameter `t`.
    T,
    /// A slice parameter `u{i+1}` (a former `z{i+1}` frozen by a face
    /// direction).
    U(usize),
    /// An auxiliary variable `y{k}` introduced by saturation.
    Sat(usize),
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarName::Z(i) => write!(f, "z{}", i + 1),
            VarName::T => write!(f, "t"),
            VarName::U(i) => write!(f, "u{}", i + 1),
            VarName::Sat(k) => write!(f, "y{}", k),
        }
    }
}

/// An ordered list of variable names; slot `j` of an exponent vector refers
/// to `names()[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    names: Vec<VarName>,
}

impl Ring {
    pub fn new(names: Vec<VarName>) -> Self {
        Ring { names }
    }

    /// The germ ring `z1..zn`.
    pub fn germ(n: usize) -> Self {
        Ring {
            names: (0..n).map(VarName::Z).collect(),
        }
    }

    /// The family ring `z1..zn, t` in canonical print order.
    pub fn family(n: usize) -> Self {
        let mut names: Vec<VarName> = (0..n).map(VarName::Z).collect();
        names.push(VarName::T);
        Ring { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[VarName] {
        &self.names
    }

    pub fn name(&self, slot: usize) -> VarName {
        self.names[slot]
    }

    /// Slot of a name, if present.
    pub fn slot_of(&self, name: VarName) -> Option<usize> {
        self.names.iter().position(|&v| v == name)
    }

    /// A new ring with `name` prepended in slot 0.
    pub fn prepend(&self, name: VarName) -> Ring {
        let mut names = Vec::with_capacity(self.names.len() + 1);
        names.push(name);
        names.extend_from_slice(&self.names);
        Ring { names }
    }

    /// The ring that keeps exactly the slots in `keep`, in the given order.
    pub fn select(&self, keep: &[usize]) -> Ring {
        Ring {
            names: keep.iter().map(|&j| self.names[j]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_print_one_based() {
        assert_eq!(VarName::Z(0).to_string(), "z1");
        assert_eq!(VarName::U(2).to_string(), "u3");
        assert_eq!(VarName::T.to_string(), "t");
        assert_eq!(VarName::Sat(0).to_string(), "y0");
    }

    #[test]
    fn ring_construction() {
        let r = Ring::family(2);
        assert_eq!(r.len(), 3);
        assert_eq!(r.name(2), VarName::T);
        assert_eq!(r.slot_of(VarName::Z(1)), Some(1));
        assert_eq!(r.slot_of(VarName::U(0)), None);
        let s = r.prepend(VarName::Sat(0));
        assert_eq!(s.name(0), VarName::Sat(0));
        assert_eq!(s.len(), 4);
        let kept = s.select(&[1, 3]);
        assert_eq!(kept.names(), &[VarName::Z(0), VarName::T]);
    }
}
