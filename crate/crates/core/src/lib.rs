//! Exact arithmetic for homomorphism densities of partially labeled graphs.

pub mod algebra;
pub mod certificates;
pub mod density;
pub mod graphs;
pub mod polynomials;
pub mod reductions;
pub mod text;

pub use num::BigRational as Rational;

/// `a / b` as an exact rational.
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    struct Overview;
    #[doc = include_str!("../../../book/src/graphs.md")]
    struct Graphs;
    #[doc = include_str!("../../../book/src/algebra.md")]
    struct Algebra;
    #[doc = include_str!("../../../book/src/density.md")]
    struct Density;
    #[doc = include_str!("../../../book/src/polynomials.md")]
    struct Polynomials;
    #[doc = include_str!("../../../book/src/reductions.md")]
    struct Reductions;
    #[doc = include_str!("../../../book/src/certificates.md")]
    struct Certificates;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
