//! Bayesian persuasion over a two-dimensional binary state with a rational or
//! correlation-neglecting receiver.
//!
//! The sender cares about `sigma`, the receiver about `rho`. Given a correct
//! joint prior the crate computes sender-optimal direct signals in closed form
//! ([`solver`]), compares welfare across receiver types ([`analysis`]), and
//! checks everything against brute-force optimizers ([`oracle`]) and a Monte
//! Carlo playout ([`sim`]).
//!
//! ```
//! use persuasion::{welfare_compare, JointPrior};
//!
//! let prior = JointPrior::new(0.25, 0.1, 0.35, 0.3).unwrap();
//! let report = welfare_compare(&prior);
//! assert!((report.v_rational - 0.95).abs() < 1e-12);
//! assert!(report.nu < 0.0); // naivete helps the receiver here
//! ```

pub mod analysis;
pub mod belief;
pub mod error;
pub mod oracle;
pub mod prior;
pub mod sampling;
pub mod signal;
pub mod sim;
pub mod solver;
pub mod sweep;
pub mod verify;

pub use analysis::{constraint_boundary, posterior_dominance_check, welfare_compare, WelfareReport};
pub use belief::{choice_rule, posterior, Posterior};
pub use error::{Error, Result};
pub use oracle::{oracle_grid4, oracle_vertex, OracleMethod, OracleResult};
pub use prior::{
    prior_from_marginals_and_gap, simplistic_prior, validate_prior, Cells, JointPrior, PerceivedPrior, Worldview,
    EPS_SUM,
};
pub use signal::{evaluate, obedience_holds, receiver_payoff, sender_payoff, Action, DirectSignal, Message, Obedience};
pub use sim::{simulate, SimReport};
pub use solver::{solve, solve_naive, solve_rational, CaseLabel, Regime, SolveResult, EPS_SLOPE};
