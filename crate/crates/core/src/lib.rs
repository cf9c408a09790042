//! Fair allocation for social-choice problems with monetary transfers.
//!
//! A problem is a bargaining set: the closed, convex, comprehensive hull
//! of finitely many utility vectors. The stand-alone claim of a coalition
//! is the maximal total utility it can reach inside the set, and the
//! claims over all coalitions form a transferable-utility game. The main
//! solution implemented here is the Shapley value of that game, which
//! picks an efficient alternative and settles compensations in the
//! numeraire; a surplus variant covers alternatives that carry their own
//! surplus or deficit. The appendix alternatives (equal allocation of
//! non-separable costs and equal sharing from the ideal level) are
//! included for comparison, together with an executable harness for the
//! axioms that single the Shapley solution out: efficiency, anonymity,
//! the dummy property, Lipschitz continuity, additivity, monotonicity,
//! and the compromise bounds.
//!
//! Problems run on one of two numeric backends: exact arbitrary-precision
//! rationals ([`Rational`]) or `f64`.

pub mod axioms;
pub mod claims;
pub mod coalition;
pub mod error;
pub mod problem;
pub mod problems;
pub mod scalar;
pub mod solutions;

pub use claims::{
    common_resource_oracle, waterfill_claim, ClaimOracle, ConcaveUtility, PowerUtility,
    StandAloneGame,
};
pub use coalition::{Coalition, Permutation, MAX_EXACT_PLAYERS};
pub use error::{Error, Result};
pub use problem::{
    hausdorff_upper_bound, Allocation, BargainingProblem, GeneratorMatching, Polytope,
    SurplusProblem,
};
pub use scalar::{Rational, Scalar};
pub use solutions::{
    eans, esil, shapley_montecarlo, shapley_permutation_oracle, shapley_standalone,
    shapley_surplus, solve_eans, solve_esil, solve_shapley, transfers, Alternative,
    EstimateReport, Party, Payment, SolutionReport, MAX_PERMUTATION_PLAYERS,
};
