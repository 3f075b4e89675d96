//! Brute-force optimizers used to cross-check the closed-form solvers.
//!
//! Neither routine uses the case analysis in [`crate::solver`]. The vertex
//! oracle enumerates every vertex of the reduced feasible polygon; the grid
//! oracle scans the full four-dimensional signal space and so also checks the
//! `p00 = 0`, `p11 = 1` reduction the vertex oracle relies on.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::prior::{Cells, JointPrior, Worldview};
use crate::signal::{obedience_holds, sender_payoff, DirectSignal};

/// Slack tolerated toward feasibility when testing candidate points.
pub const FEASIBILITY_TOL: f64 = 1e-12;
/// Payoffs closer than this are ties in the vertex oracle; also the pruning
/// margin of the grid oracle.
pub const TIE_TOL: f64 = 1e-12;
pub const MIN_GRID_RESOLUTION: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleMethod {
    VertexEnum,
    Grid4D,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    pub best_signal: DirectSignal,
    /// Sender payoff of `best_signal` under the correct prior.
    pub best_payoff: f64,
    pub candidates_evaluated: usize,
    pub method: OracleMethod,
}

fn feasible(cells: &Cells, signal: &DirectSignal) -> bool {
    obedience_holds(cells, signal).slack >= -FEASIBILITY_TOL
}

fn snap_unit(x: f64) -> Option<f64> {
    if !(-FEASIBILITY_TOL..=1.0 + FEASIBILITY_TOL).contains(&x) {
        None
    } else {
        Some(x.clamp(0.0, 1.0))
    }
}

/// Vertex candidates `(p01, p10)` of `{w10 p10 - w01 p01 <= w11} ∩ [0, 1]^2`:
/// the box corners and the crossings of the constraint line with each edge.
fn vertex_candidates(w: &Cells) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)];
    if w.mu01 > 0.0 {
        // p10 = 0 and p10 = 1 edges.
        for p10 in [0.0, 1.0] {
            if let Some(p01) = snap_unit((w.mu10 * p10 - w.mu11) / w.mu01) {
                out.push((p01, p10));
            }
        }
    }
    if w.mu10 > 0.0 {
        // p01 = 0 and p01 = 1 edges.
        for p01 in [0.0, 1.0] {
            if let Some(p10) = snap_unit((w.mu11 + w.mu01 * p01) / w.mu10) {
                out.push((p01, p10));
            }
        }
    }
    out
}

/// Solves the reduced program by enumerating polygon vertices.
///
/// Ties within [`TIE_TOL`] go to the smallest `p01`, then the largest `p10`.
pub fn oracle_vertex(prior: &JointPrior, worldview: Worldview) -> OracleResult {
    let w = prior.belief(worldview);
    let candidates = vertex_candidates(&w);
    let scored: Vec<(DirectSignal, f64)> = candidates
        .iter()
        .map(|&(p01, p10)| DirectSignal::truthful_on_aligned(p01, p10))
        .filter(|s| feasible(&w, s))
        .map(|s| (s, sender_payoff(prior, &s)))
        .collect();
    // (0, 0) always satisfies the constraint, so `scored` is never empty.
    let top = scored.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
    let (best_signal, best_payoff) = scored
        .iter()
        .filter(|(_, v)| *v >= top - TIE_TOL)
        .min_by(|(a, _), (b, _)| a.p01.total_cmp(&b.p01).then(b.p10.total_cmp(&a.p10)))
        .copied()
        .expect("origin is always feasible");
    OracleResult {
        best_signal,
        best_payoff,
        candidates_evaluated: candidates.len(),
        method: OracleMethod::VertexEnum,
    }
}

/// Grid point: indices `(i00, i01, i10, i11)` into `{0, 1/(r-1), ..., 1}`.
#[derive(Clone, Copy)]
struct GridBest {
    payoff: f64,
    idx: [usize; 4],
}

impl GridBest {
    /// Total order: higher payoff, then smaller `p00`, larger `p11`, smaller
    /// `p01`, larger `p10`. Independent of scan order.
    fn better_than(&self, other: &GridBest) -> bool {
        match self.payoff.total_cmp(&other.payoff) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => {
                let key = |g: &GridBest| (g.idx[0], usize::MAX - g.idx[3], g.idx[1], usize::MAX - g.idx[2]);
                key(self) < key(other)
            }
        }
    }
}

fn pick(a: Option<GridBest>, b: Option<GridBest>) -> Option<GridBest> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.better_than(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Exhaustive search over the `resolution^4` signal grid.
///
/// The sender's payoff is non-decreasing in `p10`, so for each
/// `(p00, p11, p01)` only the largest feasible `p10` on the grid can be
/// optimal; it is located directly and confirmed against the constraint.
/// Branches whose payoff bound (taking `p10 = 1`) falls below the best point
/// found so far by more than [`TIE_TOL`] are skipped, which leaves the result
/// unchanged. `candidates_evaluated` counts the `(p00, p11, p01)` triples
/// actually visited.
/// The returned payoff is within `2 / (resolution - 1)` of the true optimum.
pub fn oracle_grid4(prior: &JointPrior, worldview: Worldview, resolution: usize) -> Result<OracleResult> {
    if resolution < MIN_GRID_RESOLUTION {
        return Err(Error::ResolutionTooLow {
            resolution,
            minimum: MIN_GRID_RESOLUTION,
        });
    }
    let w = prior.belief(worldview);
    let m = *prior.cells();
    let steps = (resolution - 1) as f64;
    let grid: Vec<f64> = (0..resolution).map(|i| i as f64 / steps).collect();
    let signal = |[i00, i01, i10, i11]: [usize; 4]| DirectSignal {
        p00: grid[i00],
        p01: grid[i01],
        p10: grid[i10],
        p11: grid[i11],
    };
    let evaluate = |i00: usize, i11: usize, i01: usize| {
        max_feasible_p10(&w, resolution, &|i10| signal([i00, i01, i10, i11])).map(|i10| GridBest {
            payoff: sender_payoff(prior, &signal([i00, i01, i10, i11])),
            idx: [i00, i01, i10, i11],
        })
    };
    // Any grid point is a valid starting bound; this one is always feasible.
    let floor = evaluate(0, resolution - 1, 0).expect("p01 = 0, p11 = 1 admits p10 = 0");

    let (best, visited) = (0..resolution)
        .into_par_iter()
        .map(|i00| {
            let mut best = floor;
            let mut visited = 0;
            let base = m.mu00 * (1.0 - grid[i00]) + m.mu10;
            for i11 in (0..resolution).rev() {
                let with_p11 = base + m.mu11 * grid[i11];
                if with_p11 + m.mu01 < best.payoff - TIE_TOL {
                    break;
                }
                for (i01, &p01) in grid.iter().enumerate() {
                    if with_p11 + m.mu01 * (1.0 - p01) < best.payoff - TIE_TOL {
                        break;
                    }
                    visited += 1;
                    if let Some(candidate) = evaluate(i00, i11, i01) {
                        best = pick(Some(best), Some(candidate)).expect("both present");
                    }
                }
            }
            (best, visited)
        })
        .reduce(
            || (floor, 0),
            |(a, na), (b, nb)| (pick(Some(a), Some(b)).expect("both present"), na + nb),
        );

    Ok(OracleResult {
        best_signal: signal(best.idx),
        best_payoff: best.payoff,
        candidates_evaluated: visited,
        method: OracleMethod::Grid4D,
    })
}

/// Largest grid index for `p10` that keeps `probe(i10)` feasible, if any.
fn max_feasible_p10(w: &Cells, resolution: usize, probe: &impl Fn(usize) -> DirectSignal) -> Option<usize> {
    let top = resolution - 1;
    let mut i = if w.mu10 > 0.0 {
        let s = probe(0);
        let budget = w.mu01 * s.p01 + w.mu11 * s.p11 - w.mu00 * s.p00;
        let guess = (budget / w.mu10 * top as f64).floor();
        if guess.is_nan() || guess < 0.0 {
            0
        } else {
            (guess as usize).min(top)
        }
    } else {
        top
    };
    while i < top && feasible(w, &probe(i + 1)) {
        i += 1;
    }
    loop {
        if feasible(w, &probe(i)) {
            return Some(i);
        }
        if i == 0 {
            return None;
        }
        i -= 1;
    }
}
