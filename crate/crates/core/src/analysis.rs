//! Welfare of a naive receiver relative to a rational one.
//!
//! The sender's gain `nu = V_naive - V_rational` is computed from the optimal
//! signals' payoffs and, independently, from a closed form matched to the
//! active constraints of the naive optimum. The two are reported side by side.

use std::cmp::Ordering;

use serde::Serialize;

use crate::belief::posterior;
use crate::error::{Error, Result};
use crate::prior::{Cells, JointPrior, PerceivedPrior, Worldview};
use crate::signal::{receiver_payoff, sender_payoff, Action, DirectSignal};
use crate::solver::{solve_naive, solve_rational, CaseLabel, Regime, SolveResult};

/// Agreement required between the two routes to `nu`.
pub const NU_AGREEMENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WelfareReport {
    pub v_rational: f64,
    pub v_naive: f64,
    pub u_rational: f64,
    pub u_naive: f64,
    /// `v_naive - v_rational`.
    pub nu: f64,
    /// `nu` from the closed form matching the naive case.
    pub nu_closed_form: f64,
    /// Correlation gap `hat_mu00 - mu00`.
    pub c: f64,
    /// Whether the payoff differences are predicted to be strict.
    pub strict: bool,
    pub case_rational: CaseLabel,
    pub case_naive: CaseLabel,
    pub regime_rational: Regime,
    pub regime_naive: Regime,
    pub rational: SolveResult,
    pub naive: SolveResult,
}

impl WelfareReport {
    /// `2 (mu11 + mu00) + mu10 + mu01`, the common value of `V + U` at both
    /// optima.
    pub fn payoff_sum_constant(prior: &JointPrior) -> f64 {
        let m = prior.cells();
        2.0 * (m.mu11 + m.mu00) + m.mu10 + m.mu01
    }
}

pub fn welfare_compare(prior: &JointPrior) -> WelfareReport {
    let perceived = prior.perceived();
    let rational = solve_rational(prior);
    let naive = solve_naive(prior);
    let m = prior.cells();
    let h = perceived.cells();
    let c = perceived.gap();

    let v_rational = sender_payoff(prior, &rational.signal);
    let v_naive = sender_payoff(prior, &naive.signal);
    let nu = v_naive - v_rational;
    let nu_closed_form = nu_closed_form(prior, &perceived, &rational, &naive);
    debug_assert!(
        (nu - nu_closed_form).abs() <= NU_AGREEMENT_TOL,
        "nu {nu} disagrees with closed form {nu_closed_form}"
    );

    WelfareReport {
        v_rational,
        v_naive,
        u_rational: receiver_payoff(prior, &rational.signal),
        u_naive: receiver_payoff(prior, &naive.signal),
        nu,
        nu_closed_form,
        c,
        strict: (c > 0.0 && m.mu11 < m.mu10) || (c < 0.0 && h.mu11 < h.mu10),
        case_rational: rational.case_label,
        case_naive: naive.case_label,
        regime_rational: rational.regime,
        regime_naive: naive.regime,
        rational,
        naive,
    }
}

/// Closed-form `nu`, chosen by which constraint is active at the naive optimum.
///
/// With the rational optimum on its binding line, `V_rational = mu00 + mu01 +
/// 2 mu11` and
///
/// * `p01 = 0` active: `nu = c (mu11 + mu10) / hat_mu10`
/// * `p01 = 1` active: `nu = c (mu11 + mu01) / hat_mu10`
/// * `p10 = 1` active: `nu = c (mu(rho1) - mu10 + mu01) / hat_mu01`
///
/// When the rational sender instead reaches her first best, `V_rational`
/// exceeds the binding-line value by `mu10 - mu11`, which is subtracted.
pub fn nu_closed_form(
    prior: &JointPrior,
    perceived: &PerceivedPrior,
    rational: &SolveResult,
    naive: &SolveResult,
) -> f64 {
    let m = prior.cells();
    let h = perceived.cells();
    let c = perceived.gap();
    let rational_first_best = rational.regime == Regime::FirstBest;

    if naive.regime == Regime::FirstBest {
        return if rational_first_best { 0.0 } else { m.mu10 - m.mu11 };
    }
    let s = &naive.signal;
    let on_binding_line = if s.p01 == 0.0 || naive.case_label == CaseLabel::KnifeEdge {
        c * (m.mu11 + m.mu10) / h.mu10
    } else if s.p10 == 1.0 {
        c * (m.rho1() - m.mu10 + m.mu01) / h.mu01
    } else {
        c * (m.mu11 + m.mu01) / h.mu10
    };
    if rational_first_best {
        on_binding_line + (m.mu11 - m.mu10)
    } else {
        on_binding_line
    }
}

/// Largest `p10` keeping recommendation 1 obedient for `cells` when
/// `p00 = 0`, `p11 = 1`. Not clamped to `[0, 1]`.
pub fn constraint_boundary(cells: &Cells, p01: f64) -> Result<f64> {
    if cells.mu10 == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok((cells.mu01 * p01 + cells.mu11) / cells.mu10)
}

/// Sign of `hat_mu^1(rho1) - mu^1(rho1)` for a signal with `p00 = 0`,
/// `p11 = 1`.
pub fn posterior_dominance_check(prior: &JointPrior, signal: &DirectSignal) -> Result<Ordering> {
    let rational = posterior(prior.cells(), Worldview::Rational, signal, Action::One)?;
    let naive = posterior(prior.perceived().cells(), Worldview::Naive, signal, Action::One)?;
    Ok(naive
        .marginal_rho1
        .partial_cmp(&rational.marginal_rho1)
        .unwrap_or(Ordering::Equal))
}
