//! Random valid priors.

use rand::Rng;
use rand_distr::Exp1;

use crate::prior::{Cells, JointPrior};

/// Smallest marginal admitted by [`random_prior`].
pub const MIN_MARGINAL: f64 = 0.01;

/// Range of gaps `c` for which [`JointPrior::from_marginals_and_gap`] keeps
/// every cell non-negative at marginals `(m_sigma1, m_rho1)`.
pub fn gap_bounds(m_sigma1: f64, m_rho1: f64) -> (f64, f64) {
    let (s1, r1) = (m_sigma1, m_rho1);
    let (s0, r0) = (1.0 - s1, 1.0 - r1);
    ((-s1 * r0).max(-s0 * r1), (s1 * r1).min(s0 * r0))
}

/// Uniform draw from the simplex, rejected until `mu(rho1) < 1/2` and every
/// marginal is at least [`MIN_MARGINAL`].
pub fn random_prior<R: Rng + ?Sized>(rng: &mut R) -> JointPrior {
    loop {
        let e: [f64; 4] = std::array::from_fn(|_| rng.sample(Exp1));
        let total: f64 = e.iter().sum();
        let cells = Cells::new(e[0] / total, e[1] / total, e[2] / total, e[3] / total);
        let marginals = [cells.sigma0(), cells.sigma1(), cells.rho0(), cells.rho1()];
        if cells.rho1() >= 0.5 || marginals.iter().any(|&m| m < MIN_MARGINAL) {
            continue;
        }
        if let Ok(prior) = JointPrior::from_cells(cells) {
            return prior;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn draws_are_valid_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(11);
        let mut b = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let p = random_prior(&mut a);
            assert_eq!(p, random_prior(&mut b));
            let m = p.cells();
            assert!(m.rho1() < 0.5);
            assert!([m.sigma0(), m.sigma1(), m.rho0(), m.rho1()].iter().all(|&x| x >= MIN_MARGINAL));
        }
    }

    #[test]
    fn gap_bounds_are_tight() {
        let (lo, hi) = gap_bounds(0.65, 0.40);
        assert!(JointPrior::from_marginals_and_gap(0.65, 0.40, lo).is_ok());
        assert!(JointPrior::from_marginals_and_gap(0.65, 0.40, hi).is_ok());
        assert!(JointPrior::from_marginals_and_gap(0.65, 0.40, lo - 1e-9).is_err());
        assert!(JointPrior::from_marginals_and_gap(0.65, 0.40, hi + 1e-9).is_err());
    }
}
