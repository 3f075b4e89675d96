//! Priors over the four states `(sigma_k, rho_l)`.
//!
//! Cell `mu_kl` is the probability of state `(sigma_k, rho_l)`: the first
//! index is the dimension the sender cares about, the second the dimension the
//! receiver cares about. A [`JointPrior`] is the correct prior shared by the
//! sender and a rational receiver; a [`PerceivedPrior`] is the product of its
//! marginals, which is what a correlation-neglecting receiver believes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance on `|sum of cells - 1|` accepted by validation.
pub const EPS_SUM: f64 = 1e-9;

/// Four state probabilities laid out as `mu00, mu01, mu10, mu11`.
///
/// This is an unvalidated bag of numbers; it also serves as the flat-key
/// prior file format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cells {
    pub mu00: f64,
    pub mu01: f64,
    pub mu10: f64,
    pub mu11: f64,
}

impl Cells {
    pub const fn new(mu00: f64, mu01: f64, mu10: f64, mu11: f64) -> Self {
        Self {
            mu00,
            mu01,
            mu10,
            mu11,
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.mu00, self.mu01, self.mu10, self.mu11]
    }

    pub fn sum(&self) -> f64 {
        self.mu00 + self.mu01 + self.mu10 + self.mu11
    }

    pub fn sigma0(&self) -> f64 {
        self.mu00 + self.mu01
    }

    pub fn sigma1(&self) -> f64 {
        self.mu10 + self.mu11
    }

    pub fn rho0(&self) -> f64 {
        self.mu00 + self.mu10
    }

    pub fn rho1(&self) -> f64 {
        self.mu01 + self.mu11
    }

    fn named(&self) -> [(&'static str, f64); 4] {
        [
            ("mu00", self.mu00),
            ("mu01", self.mu01),
            ("mu10", self.mu10),
            ("mu11", self.mu11),
        ]
    }
}

/// Which prior the receiver updates with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Worldview {
    /// Uses the correct joint prior.
    Rational,
    /// Uses the product of the correct marginals.
    Naive,
}

impl Worldview {
    pub const ALL: [Worldview; 2] = [Worldview::Rational, Worldview::Naive];

    pub fn as_str(self) -> &'static str {
        match self {
            Worldview::Rational => "rational",
            Worldview::Naive => "naive",
        }
    }
}

impl std::fmt::Display for Worldview {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Worldview {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Worldview::Rational),
            "naive" => Ok(Worldview::Naive),
            other => Err(format!("unknown receiver type `{other}`")),
        }
    }
}

/// A validated correct prior.
///
/// Invariants: cells lie in `[0, 1]` and sum to one within the validation
/// tolerance, every marginal is strictly positive, and `mu(rho1) < 1/2` so the
/// receiver's default action is 0. Individual cells may be zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct JointPrior {
    cells: Cells,
}

impl JointPrior {
    /// Validates with the default [`EPS_SUM`] tolerance.
    pub fn new(mu00: f64, mu01: f64, mu10: f64, mu11: f64) -> Result<Self> {
        Self::from_cells(Cells::new(mu00, mu01, mu10, mu11))
    }

    pub fn from_cells(cells: Cells) -> Result<Self> {
        Self::with_tolerance(cells, EPS_SUM)
    }

    /// Validates `cells` against the prior invariants. No normalization is
    /// performed.
    pub fn with_tolerance(cells: Cells, eps_sum: f64) -> Result<Self> {
        for (cell, value) in cells.named() {
            if !value.is_finite() {
                return Err(Error::NonFiniteCell { cell, value });
            }
        }
        for (cell, value) in cells.named() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::NegativeCell { cell, value });
            }
        }
        let sum = cells.sum();
        if (sum - 1.0).abs() > eps_sum {
            return Err(Error::SumNotOne {
                sum,
                tolerance: eps_sum,
            });
        }
        let marginals = [
            ("mu(sigma0)", cells.sigma0()),
            ("mu(sigma1)", cells.sigma1()),
            ("mu(rho0)", cells.rho0()),
            ("mu(rho1)", cells.rho1()),
        ];
        for (marginal, value) in marginals {
            if value <= 0.0 {
                return Err(Error::ZeroMarginal { marginal });
            }
        }
        let rho1 = cells.rho1();
        if rho1 >= 0.5 {
            return Err(Error::DefaultActionViolated { rho1 });
        }
        Ok(Self { cells })
    }

    /// Builds the prior with marginals `mu(sigma1) = m_sigma1`,
    /// `mu(rho1) = m_rho1` whose perceived prior sits at signed gap `gap`
    /// from it.
    pub fn from_marginals_and_gap(m_sigma1: f64, m_rho1: f64, gap: f64) -> Result<Self> {
        if !(m_sigma1 > 0.0 && m_sigma1 < 1.0) {
            return Err(Error::InvalidMarginal {
                name: "m_sigma1",
                value: m_sigma1,
                range: "(0, 1)",
            });
        }
        if !(m_rho1 > 0.0 && m_rho1 < 0.5) {
            return Err(Error::InvalidMarginal {
                name: "m_rho1",
                value: m_rho1,
                range: "(0, 1/2)",
            });
        }
        if !gap.is_finite() {
            return Err(Error::GapOutOfRange {
                gap,
                cell: "mu00",
                value: f64::NAN,
            });
        }
        let s1 = m_sigma1;
        let s0 = 1.0 - m_sigma1;
        let r1 = m_rho1;
        let r0 = 1.0 - m_rho1;
        let cells = Cells::new(s0 * r0 - gap, s0 * r1 + gap, s1 * r0 + gap, s1 * r1 - gap);
        for (cell, value) in cells.named() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::GapOutOfRange { gap, cell, value });
            }
        }
        Self::from_cells(cells)
    }

    /// Wraps cells without any validation. Test-only escape hatch for
    /// branches that valid priors never reach.
    #[cfg(test)]
    pub(crate) fn new_unchecked(cells: Cells) -> Self {
        Self { cells }
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    pub fn mu00(&self) -> f64 {
        self.cells.mu00
    }

    pub fn mu01(&self) -> f64 {
        self.cells.mu01
    }

    pub fn mu10(&self) -> f64 {
        self.cells.mu10
    }

    pub fn mu11(&self) -> f64 {
        self.cells.mu11
    }

    /// The correlation-neglecting receiver's prior.
    pub fn perceived(&self) -> PerceivedPrior {
        PerceivedPrior::from_prior(self)
    }

    /// The cells the receiver of the given type updates with.
    pub fn belief(&self, worldview: Worldview) -> Cells {
        match worldview {
            Worldview::Rational => self.cells,
            Worldview::Naive => *self.perceived().cells(),
        }
    }
}

/// Product-of-marginals prior held by a naive receiver, together with the
/// correlation gap `c = hat_mu00 - mu00`.
///
/// The gap has the same magnitude in every cell: aligned states `00, 11`
/// move by `+c` and misaligned states `01, 10` by `-c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerceivedPrior {
    cells: Cells,
    gap: f64,
}

impl PerceivedPrior {
    pub fn from_prior(prior: &JointPrior) -> Self {
        let c = prior.cells();
        let (s0, s1) = (c.sigma0(), c.sigma1());
        let (r0, r1) = (c.rho0(), c.rho1());
        let cells = Cells::new(s0 * r0, s0 * r1, s1 * r0, s1 * r1);
        Self {
            cells,
            gap: cells.mu00 - c.mu00,
        }
    }

    /// Direct construction, bypassing the product structure. Only used to
    /// exercise solver branches that valid priors cannot reach.
    #[cfg(test)]
    pub(crate) fn new_unchecked(cells: Cells, gap: f64) -> Self {
        Self { cells, gap }
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }
}

/// Free-function form of [`JointPrior::with_tolerance`] with the default tolerance.
pub fn validate_prior(cells: Cells) -> Result<JointPrior> {
    JointPrior::from_cells(cells)
}

pub fn simplistic_prior(prior: &JointPrior) -> PerceivedPrior {
    prior.perceived()
}

pub fn prior_from_marginals_and_gap(m_sigma1: f64, m_rho1: f64, gap: f64) -> Result<JointPrior> {
    JointPrior::from_marginals_and_gap(m_sigma1, m_rho1, gap)
}
