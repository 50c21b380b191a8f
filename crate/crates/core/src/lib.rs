//! Exact construction of Pythagorean triangles whose hypotenuse and sum of
//! arms are both perfect squares:
//!
//! ```text
//! x² + y² = z² = e⁴,    x + y = f²
//! ```
//!
//! Two independent routes produce the same solutions:
//!
//! * [`fermat_chain`]: closed-form rational roots of a pair of quadratics that
//!   must both be squares, chained from one solution to the next;
//! * [`quartic`]: iterated square completion of the arm-sum quartic.
//!
//! Supporting modules cover exact arithmetic ([`arith`]), the Pell equation
//! `u² − 2v² = ±1` ([`pell`]) and triple construction ([`triples`]).
//! [`cli`] holds the JSON-lines commands behind the `fermat-squares` binary.

pub mod arith;
pub mod cli;
pub mod error;
pub mod fermat_chain;
pub mod pell;
pub mod quartic;
pub mod triples;

pub use arith::{gcd, isqrt, rational_reduce, rational_sqrt, Integer, Rational};
pub use error::{Error, Result};
pub use fermat_chain::{
    chain_step, reduce_and_classify, run_chain, substitute, theorem4_t1, theorem4_t2, Branch,
    BranchPolicy, ChainRun, ChainStep, Classification, FermatSolution, QuadraticSystem,
};
pub use pell::{pell_back, pell_double, pell_odd_from_half, pell_pair, PellPair};
pub use quartic::{
    quartic_T, quartic_coeffs, quartic_step, run_quartic, QuarticCoeffs, QuarticRoot, QuarticRun,
    QuarticState, QuarticStep,
};
pub use triples::{
    brute_force_w4, generators_from_triple, hyp_square_family, sum_square_family,
    triple_from_generators, FamilyRow, GeneratorPair, SignedTriple,
};
