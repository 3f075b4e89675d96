//! Monte Carlo playout of a committed direct signal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::belief::{choice_rule, posterior};
use crate::error::{Error, Result};
use crate::prior::{JointPrior, Worldview};
use crate::signal::{Action, DirectSignal};

/// Identifier of the generator behind [`simulate`]; one stream per run.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub samples: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub worldview: Worldview,
    /// Receiver's action after message 0 and message 1.
    pub actions: [u8; 2],
    pub v_hat: f64,
    pub u_hat: f64,
    pub v_se: f64,
    pub u_se: f64,
    pub action1_frequency: f64,
}

/// Receiver's best response to each message under his own prior. A message
/// he believes is never sent gets the default action 0.
pub fn receiver_strategy(prior: &JointPrior, worldview: Worldview, signal: &DirectSignal) -> [Action; 2] {
    let cells = prior.belief(worldview);
    [Action::Zero, Action::One].map(|m| match posterior(&cells, worldview, signal, m) {
        Ok(post) => choice_rule(&post),
        Err(_) => Action::Zero,
    })
}

/// Mean and standard error of a 0/1 sample with `hits` ones out of `n`.
fn bernoulli_stats(hits: u64, n: u64) -> (f64, f64) {
    let nf = n as f64;
    let mean = hits as f64 / nf;
    if n < 2 {
        return (mean, 0.0);
    }
    // Sample variance with n - 1 in the denominator.
    let var = (hits as f64 - nf * mean * mean) / (nf - 1.0);
    (mean, var.max(0.0).sqrt() / nf.sqrt())
}

/// Draws `samples` i.i.d. rounds `state ~ prior`, `message ~ signal(state)`,
/// `action = strategy(message)` and averages both players' utilities.
pub fn simulate(
    prior: &JointPrior,
    worldview: Worldview,
    signal: &DirectSignal,
    samples: u64,
    seed: u64,
) -> Result<SimReport> {
    if samples == 0 {
        return Err(Error::InvalidSampleCount);
    }
    let strategy = receiver_strategy(prior, worldview, signal);
    let m = prior.cells();
    let cumulative = [m.mu00, m.mu00 + m.mu01, m.mu00 + m.mu01 + m.mu10];
    let send_one = signal.to_array();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sender_hits, mut receiver_hits, mut ones) = (0u64, 0u64, 0u64);
    for _ in 0..samples {
        let u: f64 = rng.random();
        let state = cumulative.iter().take_while(|&&edge| u >= edge).count();
        let (sigma, rho) = ((state >> 1) as u8, (state & 1) as u8);
        let message = usize::from(rng.random::<f64>() < send_one[state]);
        let action = strategy[message].index();
        sender_hits += u64::from(action == sigma);
        receiver_hits += u64::from(action == rho);
        ones += u64::from(action);
    }

    let (v_hat, v_se) = bernoulli_stats(sender_hits, samples);
    let (u_hat, u_se) = bernoulli_stats(receiver_hits, samples);
    Ok(SimReport {
        samples,
        seed,
        rng: RNG_ALGORITHM,
        worldview,
        actions: strategy.map(Action::index),
        v_hat,
        u_hat,
        v_se,
        u_se,
        action1_frequency: ones as f64 / samples as f64,
    })
}
