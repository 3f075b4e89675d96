//! Bayesian updating and the receiver's choice rule.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::prior::{Cells, Worldview};
use crate::signal::{rho_masses, Action, DirectSignal, Message};

/// Belief after observing a message.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Posterior {
    /// Joint posterior over the four states, in cell order.
    pub joint: Cells,
    /// Posterior probability of `rho1`.
    pub marginal_rho1: f64,
    pub message: Message,
    pub worldview: Worldview,
}

impl Posterior {
    pub fn marginal_rho0(&self) -> f64 {
        self.joint.mu00 + self.joint.mu10
    }
}

/// Updates `cells` (the correct prior or the perceived one, as named by
/// `worldview`) on `message`.
pub fn posterior(
    cells: &Cells,
    worldview: Worldview,
    signal: &DirectSignal,
    message: Message,
) -> Result<Posterior> {
    let (rho0, rho1) = rho_masses(cells, signal, message);
    let total = rho0 + rho1;
    if total <= 0.0 {
        return Err(Error::ZeroProbabilityMessage {
            message: message.index(),
        });
    }
    let [l00, l01, l10, l11] = signal.likelihoods(message);
    let joint = Cells::new(
        cells.mu00 * l00 / total,
        cells.mu01 * l01 / total,
        cells.mu10 * l10 / total,
        cells.mu11 * l11 / total,
    );
    Ok(Posterior {
        joint,
        marginal_rho1: rho1 / total,
        message,
        worldview,
    })
}

/// Action 1 iff the posterior on `rho1` is at least one half. An exact tie
/// switches to action 1.
pub fn choice_rule(post: &Posterior) -> Action {
    Action::from(post.marginal_rho1 >= 0.5)
}

/// Probability that `message` is sent under `cells`.
pub fn message_probability(cells: &Cells, signal: &DirectSignal, message: Message) -> f64 {
    let (rho0, rho1) = rho_masses(cells, signal, message);
    rho0 + rho1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prior::JointPrior;
    use crate::signal::obedience_holds;
    use proptest::prelude::*;

    fn table() -> JointPrior {
        JointPrior::new(0.25, 0.1, 0.35, 0.3).unwrap()
    }

    fn post(marginal_rho1: f64) -> Posterior {
        Posterior {
            joint: Cells::new(1.0 - marginal_rho1, marginal_rho1, 0.0, 0.0),
            marginal_rho1,
            message: Action::One,
            worldview: Worldview::Rational,
        }
    }

    #[test]
    fn example_signal_makes_receiver_indifferent() {
        let s = DirectSignal::new(0.0, 0.5, 1.0, 1.0).unwrap();
        let p = posterior(table().cells(), Worldview::Rational, &s, Action::One).unwrap();
        assert_eq!(p.marginal_rho1, 0.5);
        assert_eq!(choice_rule(&p), Action::One);
    }

    #[test]
    fn full_revelation_is_certain() {
        let p = posterior(
            table().cells(),
            Worldview::Rational,
            &DirectSignal::FULL_REVELATION,
            Action::One,
        )
        .unwrap();
        assert_eq!(p.marginal_rho1, 1.0);
    }

    #[test]
    fn uninformative_signal_keeps_prior() {
        let prior = table();
        let s = DirectSignal::new(0.3, 0.3, 0.3, 0.3).unwrap();
        let p = posterior(prior.cells(), Worldview::Rational, &s, Action::One).unwrap();
        for (a, b) in p.joint.to_array().iter().zip(prior.cells().to_array()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn unsent_message_is_an_error() {
        let err = posterior(
            table().cells(),
            Worldview::Naive,
            &DirectSignal::NO_DISCLOSURE,
            Action::One,
        )
        .unwrap_err();
        assert_eq!(err, Error::ZeroProbabilityMessage { message: 1 });
    }

    #[test]
    fn tie_goes_to_action_one() {
        assert_eq!(choice_rule(&post(0.5)), Action::One);
        assert_eq!(choice_rule(&post(0.49)), Action::Zero);
        assert_eq!(choice_rule(&post(0.51)), Action::One);
    }

    fn prior_and_signal() -> impl Strategy<Value = (JointPrior, DirectSignal)> {
        (
            0.01f64..0.99,
            0.01f64..0.49,
            0.0f64..=1.0,
            prop::array::uniform4(0.0f64..=1.0),
        )
            .prop_map(|(s, r, t, q)| {
                let (lo, hi) = crate::sampling::gap_bounds(s, r);
                let prior = JointPrior::from_marginals_and_gap(s, r, lo + t * (hi - lo))
                    .or_else(|_| JointPrior::from_marginals_and_gap(s, r, 0.0))
                    .unwrap();
                (prior, DirectSignal::new(q[0], q[1], q[2], q[3]).unwrap())
            })
    }

    proptest! {
        #[test]
        fn bayes_plausibility((prior, s) in prior_and_signal()) {
            for w in Worldview::ALL {
                let cells = prior.belief(w);
                let (Ok(p1), Ok(p0)) = (
                    posterior(&cells, w, &s, Action::One),
                    posterior(&cells, w, &s, Action::Zero),
                ) else { continue };
                let pr1 = message_probability(&cells, &s, Action::One);
                let pr0 = message_probability(&cells, &s, Action::Zero);
                let mix = p1.joint.to_array().iter().zip(p0.joint.to_array())
                    .map(|(a, b)| pr1 * a + pr0 * b)
                    .collect::<Vec<_>>();
                for (m, c) in mix.iter().zip(cells.to_array()) {
                    prop_assert!((m - c).abs() < 1e-12);
                }
                prop_assert!((p1.marginal_rho1 - (p1.joint.mu01 + p1.joint.mu11)).abs() < 1e-15);
            }
        }

        #[test]
        fn obeying_one_implies_obeying_zero((prior, s) in prior_and_signal()) {
            if obedience_holds(prior.cells(), &s).holds {
                if let Ok(p0) = posterior(prior.cells(), Worldview::Rational, &s, Action::Zero) {
                    prop_assert!(p0.marginal_rho0() > 0.5);
                    prop_assert_eq!(choice_rule(&p0), Action::Zero);
                }
            }
        }
    }
}
