//! Closed-form sender-optimal direct signals.
//!
//! Both programs reduce to the same two-variable linear program once the
//! aligned states are disclosed truthfully (`p00 = 0`, `p11 = 1`):
//!
//! ```text
//! maximize   mu10 * p10 - mu01 * p01
//! subject to w10 * p10 - w01 * p01 <= w11,   (p01, p10) in [0, 1]^2
//! ```
//!
//! where `w` is the prior the receiver updates with. For a rational receiver
//! `w = mu`, the objective is parallel to the constraint and the optimum is a
//! segment. For a naive receiver `w` is the product-of-marginals prior and
//! the slopes generally differ, which pins down a unique vertex.

use serde::Serialize;

use crate::prior::{Cells, JointPrior, PerceivedPrior, Worldview};
use crate::signal::{obedience_holds, DirectSignal};

/// Tolerance on slope cross-products below which the objective and the
/// obedience constraint are treated as parallel.
pub const EPS_SLOPE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    /// The sender gets payoff 1 with `(0, 0, 1, 1)`.
    FirstBest,
    /// The obedience constraint binds.
    Constrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    Rational,
    /// Naive receiver, `p01 = 0` active.
    NaiveA,
    /// Naive receiver, `p01 = 1` active.
    NaiveB,
    /// Naive receiver, `p10 = 1` active (also the b/c boundary).
    NaiveC,
    /// Naive receiver with objective parallel to the constraint.
    KnifeEdge,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Rational => "Rational",
            CaseLabel::NaiveA => "NaiveA",
            CaseLabel::NaiveB => "NaiveB",
            CaseLabel::NaiveC => "NaiveC",
            CaseLabel::KnifeEdge => "KnifeEdge",
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveResult {
    pub worldview: Worldview,
    /// Canonical optimal signal; the `p01 = 0` end of the optimal set when
    /// that set is a segment.
    pub signal: DirectSignal,
    pub regime: Regime,
    pub case_label: CaseLabel,
    pub constraint_binding: bool,
    /// Endpoints of the optimal segment, when the optimum is not unique.
    pub solution_segment: Option<[DirectSignal; 2]>,
}

impl SolveResult {
    /// `FirstBest` when the sender reaches payoff 1, the case label otherwise.
    pub fn case_name(&self) -> &'static str {
        match self.regime {
            Regime::FirstBest => "FirstBest",
            Regime::Constrained => self.case_label.as_str(),
        }
    }

    fn first_best(worldview: Worldview, case_label: CaseLabel) -> Self {
        Self {
            worldview,
            signal: DirectSignal::FIRST_BEST,
            regime: Regime::FirstBest,
            case_label,
            constraint_binding: false,
            solution_segment: None,
        }
    }

    fn constrained(
        worldview: Worldview,
        signal: DirectSignal,
        case_label: CaseLabel,
        solution_segment: Option<[DirectSignal; 2]>,
    ) -> Self {
        Self {
            worldview,
            signal,
            regime: Regime::Constrained,
            case_label,
            constraint_binding: true,
            solution_segment,
        }
    }
}

#[derive(Clone, Copy)]
enum Free {
    P01,
    P10,
}

/// Moves the free coordinate by single ulps toward feasibility until the
/// obedience slack under `cells` is non-negative in floating point, so that a
/// binding signal is actually obeyed.
fn settle(cells: &Cells, mut signal: DirectSignal, free: Free) -> DirectSignal {
    signal.p01 = signal.p01.clamp(0.0, 1.0);
    signal.p10 = signal.p10.clamp(0.0, 1.0);
    for _ in 0..64 {
        if obedience_holds(cells, &signal).slack >= 0.0 {
            break;
        }
        match free {
            Free::P10 => signal.p10 = signal.p10.next_down().max(0.0),
            Free::P01 => signal.p01 = signal.p01.next_up().min(1.0),
        }
    }
    signal
}

/// Endpoints of `{w10 p10 - w01 p01 = w11} ∩ [0, 1]^2`, assuming `w11 < w10`.
/// The first endpoint has `p01 = 0`.
fn binding_segment(w: &Cells) -> [DirectSignal; 2] {
    let low = settle(
        w,
        DirectSignal::truthful_on_aligned(0.0, w.mu11 / w.mu10),
        Free::P10,
    );
    let high = if w.mu01 + w.mu11 >= w.mu10 {
        settle(
            w,
            DirectSignal::truthful_on_aligned((w.mu10 - w.mu11) / w.mu01, 1.0),
            Free::P01,
        )
    } else {
        settle(
            w,
            DirectSignal::truthful_on_aligned(1.0, (w.mu01 + w.mu11) / w.mu10),
            Free::P10,
        )
    };
    [low, high]
}

pub fn solve(prior: &JointPrior, worldview: Worldview) -> SolveResult {
    match worldview {
        Worldview::Rational => solve_rational(prior),
        Worldview::Naive => solve_naive(prior),
    }
}

/// Optimal signal against a receiver who shares the correct prior.
pub fn solve_rational(prior: &JointPrior) -> SolveResult {
    let m = prior.cells();
    if m.mu11 >= m.mu10 {
        return SolveResult::first_best(Worldview::Rational, CaseLabel::Rational);
    }
    let segment = binding_segment(m);
    SolveResult::constrained(Worldview::Rational, segment[0], CaseLabel::Rational, Some(segment))
}

/// Optimal signal against a receiver who neglects the correlation between
/// the two state dimensions.
pub fn solve_naive(prior: &JointPrior) -> SolveResult {
    solve_naive_with(prior, &prior.perceived())
}

pub(crate) fn solve_naive_with(prior: &JointPrior, perceived: &PerceivedPrior) -> SolveResult {
    let m = prior.cells();
    let h = perceived.cells();
    // Unreachable for valid priors (hat_mu11 < hat_mu10 always), kept for
    // completeness.
    if h.mu11 >= h.mu10 {
        return SolveResult::first_best(Worldview::Naive, CaseLabel::NaiveA);
    }

    // Sign of (constraint slope - objective slope), without dividing by mu10.
    let slope_gap = h.mu01 * m.mu10 - m.mu01 * h.mu10;
    if slope_gap.abs() <= EPS_SLOPE {
        let segment = binding_segment(h);
        return SolveResult::constrained(Worldview::Naive, segment[0], CaseLabel::KnifeEdge, Some(segment));
    }
    if slope_gap < 0.0 {
        let signal = settle(h, DirectSignal::truthful_on_aligned(0.0, h.mu11 / h.mu10), Free::P10);
        return SolveResult::constrained(Worldview::Naive, signal, CaseLabel::NaiveA, None);
    }

    let reach = h.mu01 + h.mu11;
    let on_boundary = (reach - h.mu10).abs() <= EPS_SLOPE;
    let (signal, label) = if reach <= h.mu10 {
        let s = settle(h, DirectSignal::truthful_on_aligned(1.0, reach / h.mu10), Free::P10);
        (s, CaseLabel::NaiveB)
    } else {
        let s = settle(
            h,
            DirectSignal::truthful_on_aligned((h.mu10 - h.mu11) / h.mu01, 1.0),
            Free::P01,
        );
        (s, CaseLabel::NaiveC)
    };
    let label = if on_boundary { CaseLabel::NaiveC } else { label };
    SolveResult::constrained(Worldview::Naive, signal, label, None)
}
