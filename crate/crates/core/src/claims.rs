//! Stand-alone claims: support functions over generator polytopes, total
//! claim tabulation, analytic claim oracles, and the water-filling engine
//! behind the concave-resource closed forms.

use std::sync::Arc;

use crate::coalition::{Coalition, MAX_EXACT_PLAYERS};
use crate::error::{Error, Result};
use crate::problem::{BargainingProblem, Polytope, SurplusProblem};
use crate::scalar::{max_scalar, Scalar};

/// A coalitional game with transferable utility, tabulated on all 2^n
/// coalitions. For plain problems `values(∅) = 0`; for surplus-derived
/// games `values(∅)` is the maximal surplus and may be nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct StandAloneGame<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> StandAloneGame<T> {
    /// Builds a game from a complete value table indexed by coalition mask.
    pub fn from_values(n: usize, values: Vec<T>) -> Result<Self> {
        if n > MAX_EXACT_PLAYERS {
            return Err(Error::TooManyPlayers {
                n,
                max: MAX_EXACT_PLAYERS,
            });
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::IncompleteGame {
                expected,
                found: values.len(),
            });
        }
        Ok(StandAloneGame { n, values })
    }

    /// Tabulates a game from any total claim function.
    pub fn tabulate(n: usize, mut claim: impl FnMut(Coalition) -> T) -> Result<Self> {
        if n > MAX_EXACT_PLAYERS {
            return Err(Error::TooManyPlayers {
                n,
                max: MAX_EXACT_PLAYERS,
            });
        }
        let values = Coalition::all(n).map(|s| claim(s)).collect();
        Ok(StandAloneGame { n, values })
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn value(&self, s: Coalition) -> &T {
        &self.values[s.mask() as usize]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn grand_value(&self) -> &T {
        self.value(Coalition::grand(self.n))
    }

    /// Same game with the empty coalition's value replaced by zero; the
    /// form the surplus solution weights marginals against.
    pub fn with_zero_empty(mut self) -> Self {
        self.values[0] = T::zero();
        self
    }
}

/// Subset sums of one generator over every coalition mask, seeded with
/// `base` at the empty coalition. `out` must have length `2^n`.
fn subset_sums<T: Scalar>(gen: &[T], n: usize, base: T, out: &mut [T]) {
    out[0] = base;
    for mask in 1..(1usize << n) {
        let low = mask.trailing_zeros() as usize;
        out[mask] = out[mask & (mask - 1)].clone() + gen[low].clone();
    }
}

impl<T: Scalar> BargainingProblem<T> {
    /// Support value `max_{x in B} x·v` for a nonnegative direction `v`.
    /// A direction with a negative component is unbounded over a
    /// comprehensive set and is rejected.
    pub fn support(&self, direction: &[T]) -> Result<T> {
        if direction.len() != self.players() {
            return Err(Error::DimensionMismatch {
                expected: self.players(),
                found: direction.len(),
            });
        }
        if let Some(index) = direction.iter().position(|v| v < &T::zero()) {
            return Err(Error::UnboundedDirection { index });
        }
        let mut best: Option<T> = None;
        for g in self.generators() {
            let dot = g
                .iter()
                .zip(direction)
                .fold(T::zero(), |acc, (x, v)| acc + x.clone() * v.clone());
            best = Some(match best {
                None => dot,
                Some(b) => max_scalar(b, dot),
            });
        }
        Ok(best.expect("nonempty generator list"))
    }

    /// Stand-alone claim `v(S) = max_{x in B} x_S`, with `v(∅) = 0`.
    pub fn claim(&self, s: Coalition) -> Result<T> {
        s.check_players(self.players())?;
        if s.is_empty() {
            return Ok(T::zero());
        }
        let mut best: Option<T> = None;
        for g in self.generators() {
            let total = s
                .players()
                .fold(T::zero(), |acc, i| acc + g[i].clone());
            best = Some(match best {
                None => total,
                Some(b) => max_scalar(b, total),
            });
        }
        Ok(best.expect("nonempty generator list"))
    }

    /// Tabulates `v(S)` for all 2^n coalitions.
    pub fn stand_alone_game(&self) -> Result<StandAloneGame<T>> {
        let n = self.players();
        if n > MAX_EXACT_PLAYERS {
            return Err(Error::TooManyPlayers {
                n,
                max: MAX_EXACT_PLAYERS,
            });
        }
        let size = 1usize << n;
        let mut values = vec![T::zero(); size];
        let mut sums = vec![T::zero(); size];
        for (k, g) in self.generators().iter().enumerate() {
            subset_sums(g, n, T::zero(), &mut sums);
            if k == 0 {
                values.clone_from_slice(&sums);
            } else {
                for (v, s) in values.iter_mut().zip(&sums) {
                    if s > v {
                        *v = s.clone();
                    }
                }
            }
        }
        StandAloneGame::from_values(n, values)
    }
}

impl<T: Scalar> SurplusProblem<T> {
    /// Claim `w(S) = max_{x in C} (x_S + x_{n+1})` of the surplus game,
    /// including `w(∅) = max x_{n+1}`.
    pub fn claim(&self, s: Coalition) -> Result<T> {
        let n = self.players();
        s.check_players(n)?;
        let mut best: Option<T> = None;
        for g in self.generators() {
            let total = s
                .players()
                .fold(g[n].clone(), |acc, i| acc + g[i].clone());
            best = Some(match best {
                None => total,
                Some(b) => max_scalar(b, total),
            });
        }
        Ok(best.expect("nonempty generator list"))
    }

    /// Tabulates the surplus game on all 2^n coalitions.
    pub fn surplus_game(&self) -> Result<StandAloneGame<T>> {
        let n = self.players();
        if n > MAX_EXACT_PLAYERS {
            return Err(Error::TooManyPlayers {
                n,
                max: MAX_EXACT_PLAYERS,
            });
        }
        let size = 1usize << n;
        let mut values = vec![T::zero(); size];
        let mut sums = vec![T::zero(); size];
        for (k, g) in self.generators().iter().enumerate() {
            subset_sums(g, n, g[n].clone(), &mut sums);
            if k == 0 {
                values.clone_from_slice(&sums);
            } else {
                for (v, s) in values.iter_mut().zip(&sums) {
                    if s > v {
                        *v = s.clone();
                    }
                }
            }
        }
        StandAloneGame::from_values(n, values)
    }
}

type StatValueFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type MaskValueFn = Arc<dyn Fn(Coalition) -> f64 + Send + Sync>;

#[derive(Clone)]
enum OracleKernel {
    /// `v(S) = f(Σ_{i in S} stat_i)`; supports O(1) incremental
    /// evaluation along a player order, so it scales to large `n`.
    SumStatistic { stats: Arc<Vec<f64>>, f: StatValueFn },
    /// Arbitrary claim function on coalition masks; small `n` only.
    Mask(MaskValueFn),
}

/// An analytic claim function `S -> v(S)`. Oracles expose claims only:
/// set-level surgery (Minkowski sums, point insertion) is unavailable
/// for them and reports `Unsupported` in the axiom harness.
#[derive(Clone)]
pub struct ClaimOracle {
    n: usize,
    description: String,
    kernel: OracleKernel,
}

impl std::fmt::Debug for ClaimOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClaimOracle")
            .field("n", &self.n)
            .field("description", &self.description)
            .finish()
    }
}

impl ClaimOracle {
    /// Oracle of the form `v(S) = f(Σ_{i in S} stats[i])`. All built-in
    /// analytic claims fit this shape.
    pub fn from_sum_statistic(
        stats: Vec<f64>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        description: impl Into<String>,
    ) -> Self {
        ClaimOracle {
            n: stats.len(),
            description: description.into(),
            kernel: OracleKernel::SumStatistic {
                stats: Arc::new(stats),
                f: Arc::new(f),
            },
        }
    }

    /// Oracle from an arbitrary deterministic claim function.
    pub fn from_fn(
        n: usize,
        f: impl Fn(Coalition) -> f64 + Send + Sync + 'static,
        description: impl Into<String>,
    ) -> Self {
        ClaimOracle {
            n,
            description: description.into(),
            kernel: OracleKernel::Mask(Arc::new(f)),
        }
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn evaluate(&self, s: Coalition) -> f64 {
        match &self.kernel {
            OracleKernel::SumStatistic { stats, f } => {
                f(s.players().map(|i| stats[i]).sum())
            }
            OracleKernel::Mask(f) => f(s),
        }
    }

    /// Tabulates the oracle into a float game (`n <= 24`).
    pub fn tabulate(&self) -> Result<StandAloneGame<f64>> {
        StandAloneGame::tabulate(self.n, |s| self.evaluate(s))
    }

    /// Walks `order`, reporting each player's marginal claim
    /// `v(P ∪ i) - v(P)` into `marginals[i]` (which must be zeroed and of
    /// length `n`).
    pub(crate) fn accumulate_marginals(&self, order: &[usize], marginals: &mut [f64]) {
        match &self.kernel {
            OracleKernel::SumStatistic { stats, f } => {
                let mut stat = 0.0;
                let mut prev = f(0.0);
                for &i in order {
                    stat += stats[i];
                    let cur = f(stat);
                    marginals[i] = cur - prev;
                    prev = cur;
                }
            }
            OracleKernel::Mask(f) => {
                let mut set = Coalition::EMPTY;
                let mut prev = f(set);
                for &i in order {
                    set = set.insert(i);
                    let cur = f(set);
                    marginals[i] = cur - prev;
                    prev = cur;
                }
            }
        }
    }
}

/// Closed-form claims of the common-resource problem with benefit
/// `alpha_i * sqrt(w_i)` and budget `wbar`:
/// `v(S) = sqrt(wbar * Σ_{i in S} alpha_i^2)`.
pub fn common_resource_oracle(alpha: &[f64], wbar: f64) -> Result<ClaimOracle> {
    if alpha.is_empty() {
        return Err(Error::InvalidParameter("alpha must be nonempty".into()));
    }
    if alpha.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
        return Err(Error::InvalidParameter(
            "all alpha entries must be positive".into(),
        ));
    }
    if !(wbar > 0.0) || !wbar.is_finite() {
        return Err(Error::InvalidParameter("wbar must be positive".into()));
    }
    let stats: Vec<f64> = alpha.iter().map(|a| a * a).collect();
    Ok(ClaimOracle::from_sum_statistic(
        stats,
        move |s| (wbar * s).sqrt(),
        format!("common resource: sqrt({wbar} * sum of alpha_i^2)"),
    ))
}

/// A strictly concave, increasing utility with a known inverse marginal,
/// as used by the water-filling solver.
pub trait ConcaveUtility: Send + Sync {
    /// `u(w)`.
    fn value(&self, w: f64) -> f64;
    /// `u'(w)`, strictly decreasing in `w > 0`.
    fn marginal(&self, w: f64) -> f64;
    /// `(u')^{-1}(lambda)`.
    fn inverse_marginal(&self, lambda: f64) -> f64;
}

/// `u(w) = alpha * sqrt(w)`, the benefit function of the common-resource
/// example.
#[derive(Clone, Debug)]
pub struct PowerUtility {
    pub alpha: f64,
}

impl ConcaveUtility for PowerUtility {
    fn value(&self, w: f64) -> f64 {
        self.alpha * w.sqrt()
    }

    fn marginal(&self, w: f64) -> f64 {
        self.alpha / (2.0 * w.sqrt())
    }

    fn inverse_marginal(&self, lambda: f64) -> f64 {
        let half = self.alpha / (2.0 * lambda);
        half * half
    }
}

const WATERFILL_MAX_ITERS: usize = 200;

/// Solves `max Σ_{i in S} u_i(w_i)` subject to `Σ w_i <= budget`, `w >= 0`
/// by bisecting on the KKT multiplier: `w_i(λ)` is the inverse marginal
/// clipped to `[0, budget]`, and λ is driven to `|Σ w_i - budget| <=
/// 1e-10 * budget`. Returns the optimal value and the allocation (zero
/// outside the coalition).
pub fn waterfill_claim(
    utilities: &[&dyn ConcaveUtility],
    budget: f64,
    s: Coalition,
) -> Result<(f64, Vec<f64>)> {
    let n = utilities.len();
    s.check_players(n)?;
    if s.is_empty() {
        return Err(Error::InvalidParameter(
            "water-filling needs a nonempty coalition".into(),
        ));
    }
    if !(budget > 0.0) || !budget.is_finite() {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    let members: Vec<usize> = s.players().collect();

    // Marginals must be positive and strictly decreasing; probe a coarse
    // grid to fail loudly on bad inputs.
    for &i in &members {
        let mut prev = f64::INFINITY;
        for k in 1..=8 {
            let w = budget * k as f64 / 8.0;
            let m = utilities[i].marginal(w);
            if !(m > 0.0) || !m.is_finite() || m >= prev {
                return Err(Error::InvalidUtility);
            }
            prev = m;
        }
    }

    let total_at = |lambda: f64| -> f64 {
        members
            .iter()
            .map(|&i| utilities[i].inverse_marginal(lambda).clamp(0.0, budget))
            .sum()
    };

    // Σ w_i(λ) is decreasing in λ; bracket a root of Σ w_i(λ) = budget.
    let mut lo = members
        .iter()
        .map(|&i| utilities[i].marginal(budget))
        .fold(f64::INFINITY, f64::min);
    let mut hi = members
        .iter()
        .map(|&i| utilities[i].marginal(budget / 1e6))
        .fold(0.0f64, f64::max);
    let mut guard = 0;
    while total_at(lo) < budget {
        lo /= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::NoConvergence(WATERFILL_MAX_ITERS));
        }
    }
    guard = 0;
    while total_at(hi) > budget {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::NoConvergence(WATERFILL_MAX_ITERS));
        }
    }

    let tol = 1e-10 * budget;
    let mut lambda = 0.5 * (lo + hi);
    let mut converged = false;
    for _ in 0..WATERFILL_MAX_ITERS {
        lambda = 0.5 * (lo + hi);
        let total = total_at(lambda);
        if (total - budget).abs() <= tol {
            converged = true;
            break;
        }
        if total > budget {
            lo = lambda;
        } else {
            hi = lambda;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(WATERFILL_MAX_ITERS));
    }

    let mut allocation = vec![0.0; n];
    let mut value = 0.0;
    for &i in &members {
        let w = utilities[i].inverse_marginal(lambda).clamp(0.0, budget);
        allocation[i] = w;
        value += utilities[i].value(w);
    }
    Ok((value, allocation))
}
