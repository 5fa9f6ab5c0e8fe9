//! Exact analysis of Newton polyhedra attached to polynomial hypersurface
//! germs and one-parameter families.
//!
//! Given a polynomial `h` in variables `z1..zn` (or a family `f` depending
//! on one extra parameter `t`), the crate derives the Newton polyhedron of
//! its support and decides three regularity conditions exactly:
//!
//! * **non-degeneracy** — no compact-face function of `h` has a critical
//!   point on the torus `(C*)^n`;
//! * **local tameness** — for every essential non-compact face, the critical
//!   values in the slice parameters stay away from the small slices, with a
//!   certified tameness radius where one can be extracted;
//! * **admissibility** (families) — the Newton boundary does not move with
//!   `t` and the two conditions above hold uniformly in `t`.
//!
//! On top of the verdicts the crate builds the canonical coordinate-subspace
//! stratification of the hypersurface and offers a floating-point probe that
//! samples the Whitney condition (b) ratio along arcs.
//!
//! Coefficients live in the field `Q(i)` of Gaussian rationals and every
//! decision runs on exact Groebner-basis computations; the only floating
//! point in the crate is the Whitney-ratio probe in [`strata`].

pub mod cli;
pub mod family;
mod lp;
mod order;
pub mod report;
pub mod polyhedron;
pub mod regularity;
pub mod strata;
pub mod groebner;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ring;

#[cfg(test)]
pub(crate) mod testutil {
    /// Tiny deterministic generator for seeded randomized checks; the crate
    /// keeps its dependency set small rather than pulling an RNG crate for a
    /// few test loops.
    pub struct SplitMix(pub u64);

    impl SplitMix {
        pub fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }

        /// Uniform-ish integer in `[-bound, bound]`.
        pub fn small(&mut self, bound: u64) -> i64 {
            (self.next() % (2 * bound + 1)) as i64 - bound as i64
        }
    }
}

/// Crate-wide error type.
///
/// The three variants map onto the process exit codes of the `tamegamma`
/// binary: `Parse` exits 2, `Precondition` exits 3 and `ResourceExhausted`
/// exits 4.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input text could not be parsed; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    /// An operation was called outside its contract (mismatched rings,
    /// missing parameter, zero polynomial where a nonzero one is required).
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A Groebner task ran over one of its configured budgets.  The verdict
    /// that depended on it is reported as unknown rather than guessed.
    #[error("resource budget exhausted: {resource} (limit {limit})")]
    ResourceExhausted { resource: &'static str, limit: u64 },
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// An input or usage error with no meaningful source location; the
    /// zero position marks it as command-level rather than textual.
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Parse {
            line: 0,
            col: 0,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
