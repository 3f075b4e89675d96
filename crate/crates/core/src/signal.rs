//! Direct signals, the obedience constraint and expected payoffs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prior::{Cells, JointPrior, Worldview};

/// A binary action, also used as the message alphabet of a direct signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    Zero,
    One,
}

pub type Message = Action;

impl Action {
    pub fn index(self) -> u8 {
        match self {
            Action::Zero => 0,
            Action::One => 1,
        }
    }
}

impl From<bool> for Action {
    fn from(one: bool) -> Self {
        if one {
            Action::One
        } else {
            Action::Zero
        }
    }
}

/// `p_kl` is the probability of sending message 1 in state `(sigma_k, rho_l)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectSignal {
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
}

impl DirectSignal {
    /// The sender's first best: recommend 1 exactly when `sigma = sigma1`.
    pub const FIRST_BEST: DirectSignal = DirectSignal::new_const(0.0, 0.0, 1.0, 1.0);
    /// Message 1 exactly when `rho = rho1`.
    pub const FULL_REVELATION: DirectSignal = DirectSignal::new_const(0.0, 1.0, 0.0, 1.0);
    pub const NO_DISCLOSURE: DirectSignal = DirectSignal::new_const(0.0, 0.0, 0.0, 0.0);

    const fn new_const(p00: f64, p01: f64, p10: f64, p11: f64) -> Self {
        Self { p00, p01, p10, p11 }
    }

    pub fn new(p00: f64, p01: f64, p10: f64, p11: f64) -> Result<Self> {
        let s = Self { p00, p01, p10, p11 };
        for (component, value) in s.named() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidSignal { component, value });
            }
        }
        Ok(s)
    }

    /// A signal with `p00 = 0`, `p11 = 1`, parameterised by the two
    /// misaligned-state probabilities.
    pub fn truthful_on_aligned(p01: f64, p10: f64) -> Self {
        Self {
            p00: 0.0,
            p01,
            p10,
            p11: 1.0,
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.p00, self.p01, self.p10, self.p11]
    }

    /// `Pr(message | state)` for each state, in cell order.
    pub fn likelihoods(&self, message: Message) -> [f64; 4] {
        match message {
            Action::One => self.to_array(),
            Action::Zero => self.to_array().map(|p| 1.0 - p),
        }
    }

    fn named(&self) -> [(&'static str, f64); 4] {
        [
            ("p00", self.p00),
            ("p01", self.p01),
            ("p10", self.p10),
            ("p11", self.p11),
        ]
    }
}

/// Probability mass `cell_kl * Pr(message | state_kl)` on `rho0` and `rho1`
/// states. The posterior and the obedience check share this so that they
/// round identically.
pub(crate) fn rho_masses(cells: &Cells, signal: &DirectSignal, message: Message) -> (f64, f64) {
    let [l00, l01, l10, l11] = signal.likelihoods(message);
    let rho0 = cells.mu00 * l00 + cells.mu10 * l10;
    let rho1 = cells.mu01 * l01 + cells.mu11 * l11;
    (rho0, rho1)
}

/// Result of checking the obedience constraint for message 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Obedience {
    pub holds: bool,
    /// `cell01 p01 + cell11 p11 - (cell00 p00 + cell10 p10)`.
    pub slack: f64,
}

/// Whether a receiver holding `cells` follows recommendation 1.
pub fn obedience_holds(cells: &Cells, signal: &DirectSignal) -> Obedience {
    let (rho0, rho1) = rho_masses(cells, signal, Action::One);
    let slack = rho1 - rho0;
    Obedience {
        holds: slack >= 0.0,
        slack,
    }
}

/// Sender's ex-ante expected payoff, always under the correct prior.
///
/// Total: computed for any signal, obedient or not.
pub fn sender_payoff(prior: &JointPrior, signal: &DirectSignal) -> f64 {
    let m = prior.cells();
    m.mu11 * signal.p11 + m.mu10 * signal.p10 + m.mu01 * (1.0 - signal.p01) + m.mu00 * (1.0 - signal.p00)
}

/// Receiver's ex-ante expected payoff, always under the correct prior even
/// when the receiver himself is naive.
pub fn receiver_payoff(prior: &JointPrior, signal: &DirectSignal) -> f64 {
    let m = prior.cells();
    m.mu11 * signal.p11 + m.mu00 * (1.0 - signal.p00) + m.mu10 * (1.0 - signal.p10) + m.mu01 * signal.p01
}

/// Both payoffs plus the obedience flag under the receiver's own belief.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub sender: f64,
    pub receiver: f64,
    pub obedience: Obedience,
}

pub fn evaluate(prior: &JointPrior, worldview: Worldview, signal: &DirectSignal) -> Evaluation {
    Evaluation {
        sender: sender_payoff(prior, signal),
        receiver: receiver_payoff(prior, signal),
        obedience: obedience_holds(&prior.belief(worldview), signal),
    }
}
