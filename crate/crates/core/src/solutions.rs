//! Solution concepts over stand-alone games: the Shapley value (plain and
//! surplus variants), the appendix alternatives EANS and ESIL, brute-force
//! and Monte-Carlo oracles, and transfer-schedule derivation.

use itertools::Itertools;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::claims::{ClaimOracle, StandAloneGame};
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::problem::{Allocation, BargainingProblem, SurplusProblem};
use crate::scalar::Scalar;

/// Full n!-order enumeration is capped at 10 players.
pub const MAX_PERMUTATION_PLAYERS: usize = 10;

fn binomial(n: usize, k: usize) -> i64 {
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i64 / (j + 1) as i64;
    }
    acc
}

/// Marginal-claim weights of the Shapley value, by coalition size:
/// `weight[s] = 1 / (n * C(n-1, s))`. For each player the weights sum
/// to one across all coalitions.
fn shapley_weights<T: Scalar>(n: usize) -> Vec<T> {
    (0..n)
        .map(|s| T::from_ratio(1, n as i64 * binomial(n - 1, s)))
        .collect()
}

/// Shapley value of a stand-alone game:
/// `psi_i = (1/n) Σ_{S ⊆ N∖i} C(n-1,|S|)^{-1} (v(S ∪ i) - v(S))`.
/// Exact under the rational backend; `Σ psi_i = v(N) - v(∅)`.
pub fn shapley_standalone<T: Scalar>(game: &StandAloneGame<T>) -> Allocation<T> {
    let n = game.players();
    let values = game.values();
    let weights = shapley_weights::<T>(n);
    let mut psi = vec![T::zero(); n];
    for mask in 0..(1usize << n) {
        let size = mask.count_ones() as usize;
        if size == n {
            continue;
        }
        let w = &weights[size];
        for (i, acc) in psi.iter_mut().enumerate() {
            if mask & (1 << i) == 0 {
                let marginal = values[mask | (1 << i)].clone() - values[mask].clone();
                *acc = acc.clone() + w.clone() * marginal;
            }
        }
    }
    Allocation::new(psi)
}

/// Surplus solution: the claim of each coalition carries the surplus of
/// its best alternative, and the empty coalition claims nothing, so the
/// `S = ∅` term weights the full `w({i})`. `Σ phi_i = w(N)`.
pub fn shapley_surplus<T: Scalar>(problem: &SurplusProblem<T>) -> Result<Allocation<T>> {
    let game = problem.surplus_game()?.with_zero_empty();
    Ok(shapley_standalone(&game))
}

/// Equal allocation of non-separable costs:
/// `psi_i = (1/n)(v(N) + Σ_j v(N∖j)) - v(N∖i)`.
pub fn eans<T: Scalar>(game: &StandAloneGame<T>) -> Allocation<T> {
    let n = game.players();
    let grand = Coalition::grand(n);
    let drop_sum = (0..n).fold(T::zero(), |acc, j| {
        acc + game.value(grand.remove(j)).clone()
    });
    let share = T::from_ratio(1, n as i64) * (game.grand_value().clone() + drop_sum);
    let psi = (0..n)
        .map(|i| share.clone() - game.value(grand.remove(i)).clone())
        .collect();
    Allocation::new(psi)
}

/// Equal sharing from the ideal level:
/// `psi_i = (1/n)(v(N) - Σ_j v({j})) + v({i})`.
pub fn esil<T: Scalar>(game: &StandAloneGame<T>) -> Allocation<T> {
    let n = game.players();
    let singleton_sum = (0..n).fold(T::zero(), |acc, j| {
        acc + game.value(Coalition::singleton(j)).clone()
    });
    let share = T::from_ratio(1, n as i64) * (game.grand_value().clone() - singleton_sum);
    let psi = (0..n)
        .map(|i| share.clone() + game.value(Coalition::singleton(i)).clone())
        .collect();
    Allocation::new(psi)
}

/// Brute-force Shapley oracle: the average of marginal contributions
/// `v(P ∪ i) - v(P)` over all n! player orders. Must agree with
/// [`shapley_standalone`] exactly under the rational backend.
pub fn shapley_permutation_oracle<T: Scalar>(game: &StandAloneGame<T>) -> Result<Allocation<T>> {
    let n = game.players();
    if n > MAX_PERMUTATION_PLAYERS {
        return Err(Error::TooManyPlayers {
            n,
            max: MAX_PERMUTATION_PLAYERS,
        });
    }
    let values = game.values();
    let mut totals = vec![T::zero(); n];
    for order in (0..n).permutations(n) {
        let mut mask = 0usize;
        let mut prev = values[0].clone();
        for i in order {
            mask |= 1 << i;
            let cur = values[mask].clone();
            totals[i] = totals[i].clone() + (cur.clone() - prev);
            prev = cur;
        }
    }
    let fact: i64 = (1..=n as i64).product();
    let inv = T::from_ratio(1, fact);
    Ok(Allocation::new(
        totals.into_iter().map(|t| t * inv.clone()).collect(),
    ))
}

/// A Monte-Carlo Shapley estimate with per-player standard errors.
#[derive(Clone, Debug)]
pub struct EstimateReport {
    pub estimate: Allocation<f64>,
    pub standard_error: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
}

const MC_BLOCK: u64 = 1024;

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// The marginal-contribution vector of one Monte-Carlo draw. The order
/// is generated by a counter-based RNG keyed on `(seed, index)`, so the
/// sample stream is a pure function of the key: extending a run never
/// changes an earlier sample.
pub fn montecarlo_sample(oracle: &ClaimOracle, seed: u64, index: u64) -> Vec<f64> {
    let n = oracle.players();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut sample_rng(seed, index));
    let mut marginals = vec![0.0; n];
    oracle.accumulate_marginals(&order, &mut marginals);
    marginals
}

/// Estimates the Shapley value of a claim oracle by sampling `samples`
/// uniformly random player orders. Samples are accumulated in fixed-size
/// blocks and blocks are reduced in index order, so the result is
/// bit-identical for a given `(seed, samples)` regardless of thread
/// scheduling.
pub fn shapley_montecarlo(
    oracle: &ClaimOracle,
    samples: u64,
    seed: u64,
) -> Result<EstimateReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let n = oracle.players();
    let blocks = samples.div_ceil(MC_BLOCK);
    let partials: Vec<(Vec<f64>, Vec<f64>)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * MC_BLOCK;
            let hi = samples.min(lo + MC_BLOCK);
            let mut sum = vec![0.0; n];
            let mut sumsq = vec![0.0; n];
            let mut order: Vec<usize> = (0..n).collect();
            let mut marginals = vec![0.0; n];
            for k in lo..hi {
                for (i, slot) in order.iter_mut().enumerate() {
                    *slot = i;
                }
                order.shuffle(&mut sample_rng(seed, k));
                oracle.accumulate_marginals(&order, &mut marginals);
                for i in 0..n {
                    let m = marginals[i];
                    sum[i] += m;
                    sumsq[i] += m * m;
                }
            }
            (sum, sumsq)
        })
        .collect();

    let mut sum = vec![0.0; n];
    let mut sumsq = vec![0.0; n];
    for (bs, bq) in &partials {
        for i in 0..n {
            sum[i] += bs[i];
            sumsq[i] += bq[i];
        }
    }
    let m = samples as f64;
    let estimate: Vec<f64> = sum.iter().map(|s| s / m).collect();
    let standard_error: Vec<f64> = if samples < 2 {
        vec![0.0; n]
    } else {
        estimate
            .iter()
            .zip(&sumsq)
            .map(|(&mean, &sq)| {
                let var = ((sq - m * mean * mean) / (m - 1.0)).max(0.0);
                (var / m).sqrt()
            })
            .collect()
    };
    Ok(EstimateReport {
        estimate: Allocation::new(estimate),
        standard_error,
        samples,
        seed,
    })
}

/// A party to a routed payment: a player, or the common pool that funds
/// deficits and distributes surpluses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Party {
    Player(usize),
    Pool,
}

impl std::fmt::Display for Party {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Party::Player(i) => write!(f, "player {}", i + 1),
            Party::Pool => write!(f, "pool"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Payment<T> {
    pub from: Party,
    pub to: Party,
    pub amount: T,
}

/// The chosen efficient alternative: its utility profile and, for
/// surplus problems, its surplus entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Alternative<T> {
    pub utilities: Vec<T>,
    pub surplus: Option<T>,
}

/// A solved problem: the solution vector, the efficient alternative it is
/// implemented against, per-player net transfers, and routed payments.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionReport<T> {
    pub solution: Allocation<T>,
    pub alternative: Alternative<T>,
    pub net_transfers: Vec<T>,
    pub payments: Vec<Payment<T>>,
}

/// Derives the transfer schedule implementing `solution` from the chosen
/// alternative: `net_transfers = solution - alternative_utilities`, and
/// payments are routed by repeatedly matching the payer and receiver
/// with the largest outstanding balance (ties to the lowest player
/// index). A deficit is paid into the pool, a surplus paid out of it, so
/// payments aggregate exactly to the net transfers.
pub fn transfers<T: Scalar>(
    alternative_utilities: &[T],
    alternative_surplus: Option<&T>,
    solution: &Allocation<T>,
) -> Result<SolutionReport<T>> {
    if alternative_utilities.len() != solution.len() {
        return Err(Error::DimensionMismatch {
            expected: solution.len(),
            found: alternative_utilities.len(),
        });
    }
    let net: Vec<T> = solution
        .values()
        .iter()
        .zip(alternative_utilities)
        .map(|(s, a)| s.clone() - a.clone())
        .collect();
    let surplus = alternative_surplus.cloned().unwrap_or_else(T::zero);

    let net_total = net.iter().fold(T::zero(), |acc, t| acc + t.clone());
    let scale = net
        .iter()
        .chain(std::iter::once(&surplus))
        .map(|v| v.to_f64().abs())
        .fold(1.0f64, f64::max);
    let tol = T::default_tolerance() * scale;
    if !net_total.eq_within(&surplus, tol) {
        return Err(Error::InfeasibleTransfer {
            imbalance: (net_total - surplus).to_f64(),
        });
    }

    let mut owing: Vec<(Party, T)> = Vec::new();
    let mut due: Vec<(Party, T)> = Vec::new();
    for (i, t) in net.iter().enumerate() {
        if t < &T::zero() {
            owing.push((Party::Player(i), -t.clone()));
        } else if t > &T::zero() {
            due.push((Party::Player(i), t.clone()));
        }
    }
    if surplus < T::zero() {
        due.push((Party::Pool, -surplus.clone()));
    } else if surplus > T::zero() {
        owing.push((Party::Pool, surplus.clone()));
    }

    let dust = T::default_tolerance() * scale;
    let mut payments = Vec::new();
    loop {
        let payer = largest(&owing, dust);
        let payee = largest(&due, dust);
        let (Some(pi), Some(ri)) = (payer, payee) else {
            break;
        };
        let amount = if owing[pi].1 <= due[ri].1 {
            owing[pi].1.clone()
        } else {
            due[ri].1.clone()
        };
        payments.push(Payment {
            from: owing[pi].0,
            to: due[ri].0,
            amount: amount.clone(),
        });
        owing[pi].1 = owing[pi].1.clone() - amount.clone();
        due[ri].1 = due[ri].1.clone() - amount;
    }

    Ok(SolutionReport {
        solution: solution.clone(),
        alternative: Alternative {
            utilities: alternative_utilities.to_vec(),
            surplus: alternative_surplus.cloned(),
        },
        net_transfers: net,
        payments,
    })
}

fn largest<T: Scalar>(entries: &[(Party, T)], dust: f64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, (party, amount)) in entries.iter().enumerate() {
        if amount.to_f64() <= dust || amount <= &T::zero() {
            continue;
        }
        match best {
            None => best = Some(i),
            Some(b) => {
                let better = amount > &entries[b].1
                    || (amount == &entries[b].1 && *party < entries[b].0);
                if better {
                    best = Some(i);
                }
            }
        }
    }
    best
}

/// Shapley value of the stand-alone game of a polytope problem.
pub fn solve_shapley<T: Scalar>(p: &BargainingProblem<T>) -> Result<Allocation<T>> {
    Ok(shapley_standalone(&p.stand_alone_game()?))
}

pub fn solve_eans<T: Scalar>(p: &BargainingProblem<T>) -> Result<Allocation<T>> {
    Ok(eans(&p.stand_alone_game()?))
}

pub fn solve_esil<T: Scalar>(p: &BargainingProblem<T>) -> Result<Allocation<T>> {
    Ok(esil(&p.stand_alone_game()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::common_resource_oracle;
    use crate::scalar::Rational;

    fn rat(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn ratio(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn problem(gens: &[&[i64]]) -> BargainingProblem<Rational> {
        BargainingProblem::new(
            gens.iter()
                .map(|g| g.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn power_plant() -> BargainingProblem<Rational> {
        problem(&[&[8, 2], &[2, 4]])
    }

    fn table_one() -> SurplusProblem<Rational> {
        SurplusProblem::new(
            2,
            vec![
                vec![rat(10), rat(4), rat(-4)],
                vec![rat(4), rat(6), rat(-4)],
                vec![rat(9), rat(2), rat(-2)],
                vec![rat(2), rat(7), rat(-2)],
            ],
        )
        .unwrap()
    }

    fn appendix() -> BargainingProblem<Rational> {
        problem(&[&[0, 2, 0], &[0, 0, 1]])
    }

    #[test]
    fn shapley_of_power_plant() {
        let psi = solve_shapley(&power_plant()).unwrap();
        assert_eq!(psi.values(), &[rat(7), rat(3)]);
    }

    #[test]
    fn shapley_of_bankruptcy_game() {
        let game = StandAloneGame::tabulate(3, |s| {
            let caps = [100i64, 200, 400];
            let c_s: i64 = s.players().map(|i| caps[i]).sum();
            rat(c_s.min(300))
        })
        .unwrap();
        let psi = shapley_standalone(&game);
        assert_eq!(psi.values(), &[rat(50), rat(100), rat(150)]);
    }

    #[test]
    fn shapley_of_inheritance() {
        let psi = solve_shapley(&problem(&[&[300, 0, 0], &[0, 270, 0], &[0, 0, 240]])).unwrap();
        assert_eq!(psi.values(), &[rat(125), rat(95), rat(80)]);
    }

    #[test]
    fn shapley_of_common_resource_oracle() {
        let oracle = common_resource_oracle(&[1.0, 2.0, 3.0], 100.0).unwrap();
        let psi = shapley_standalone(&oracle.tabulate().unwrap());
        let expect = [4.5, 11.7, 21.3];
        for (v, e) in psi.values().iter().zip(expect) {
            assert!((v - e).abs() <= 0.05, "{v} vs {e}");
        }
    }

    #[test]
    fn shapley_symmetric_two_generators_splits_equally() {
        let psi = solve_shapley(&problem(&[&[9, 4], &[4, 9]])).unwrap();
        assert_eq!(psi.values(), &[ratio(13, 2), ratio(13, 2)]);
    }

    #[test]
    fn surplus_solution_of_table_one() {
        let phi = shapley_surplus(&table_one()).unwrap();
        assert_eq!(phi.values(), &[rat(6), rat(4)]);
    }

    #[test]
    fn surplus_with_zero_column_reduces_to_plain() {
        let c = SurplusProblem::new(
            2,
            vec![vec![rat(8), rat(2), rat(0)], vec![rat(2), rat(4), rat(0)]],
        )
        .unwrap();
        let phi = shapley_surplus(&c).unwrap();
        let psi = solve_shapley(&c.project()).unwrap();
        assert_eq!(phi, psi);
    }

    #[test]
    fn surplus_singleton_splits_surplus_equally() {
        let c = SurplusProblem::new(3, vec![vec![rat(3), rat(0), rat(-1), rat(6)]]).unwrap();
        let phi = shapley_surplus(&c).unwrap();
        assert_eq!(phi.values(), &[rat(5), rat(2), rat(1)]);
    }

    #[test]
    fn permutation_oracle_on_power_plant() {
        let game = power_plant().stand_alone_game().unwrap();
        let psi = shapley_permutation_oracle(&game).unwrap();
        assert_eq!(psi.values(), &[rat(7), rat(3)]);
    }

    #[test]
    fn permutation_oracle_on_additive_game() {
        let x = [rat(3), rat(-1), rat(4)];
        let game = StandAloneGame::tabulate(3, |s| {
            s.players().fold(rat(0), |acc, i| acc + x[i].clone())
        })
        .unwrap();
        let psi = shapley_permutation_oracle(&game).unwrap();
        assert_eq!(psi.values(), &x[..]);
    }

    #[test]
    fn permutation_oracle_matches_weighted_formula() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let n = rng.random_range(1..=5usize);
            let values: Vec<Rational> = (0..(1usize << n))
                .map(|m| {
                    if m == 0 {
                        rat(0)
                    } else {
                        ratio(rng.random_range(-40..40), rng.random_range(1..4))
                    }
                })
                .collect();
            let game = StandAloneGame::from_values(n, values).unwrap();
            assert_eq!(
                shapley_standalone(&game),
                shapley_permutation_oracle(&game).unwrap()
            );
        }
    }

    #[test]
    fn permutation_oracle_caps_players() {
        let game = StandAloneGame::tabulate(11, |_| 0.0f64).unwrap();
        assert!(matches!(
            shapley_permutation_oracle(&game),
            Err(Error::TooManyPlayers { .. })
        ));
    }

    #[test]
    fn eans_and_esil_on_appendix_problem() {
        let game = appendix().stand_alone_game().unwrap();
        let a = eans(&game);
        let e = esil(&game);
        assert_eq!(a.get(0), &ratio(1, 3));
        assert_eq!(e.get(0), &ratio(-1, 3));
        assert_eq!(a.total(), rat(2));
        assert_eq!(e.total(), rat(2));
        let psi = shapley_standalone(&game);
        assert_eq!(psi.get(0), &rat(0));
    }

    #[test]
    fn eans_esil_split_symmetric_games_equally() {
        let game = StandAloneGame::tabulate(3, |s| rat(2 * s.len() as i64)).unwrap();
        assert_eq!(eans(&game).values(), &[rat(2), rat(2), rat(2)]);
        assert_eq!(esil(&game).values(), &[rat(2), rat(2), rat(2)]);
    }

    #[test]
    fn eans_esil_are_efficient_on_random_games() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.random_range(1..=5usize);
            let values: Vec<Rational> = (0..(1usize << n))
                .map(|m| if m == 0 { rat(0) } else { rat(rng.random_range(-30..30)) })
                .collect();
            let game = StandAloneGame::from_values(n, values).unwrap();
            assert_eq!(eans(&game).total(), *game.grand_value());
            assert_eq!(esil(&game).total(), *game.grand_value());
        }
    }

    #[test]
    fn transfers_on_power_plant() {
        let psi = Allocation::new(vec![rat(7), rat(3)]);
        let report = transfers(&[rat(8), rat(2)], None, &psi).unwrap();
        assert_eq!(report.net_transfers, vec![rat(-1), rat(1)]);
        assert_eq!(
            report.payments,
            vec![Payment {
                from: Party::Player(0),
                to: Party::Player(1),
                amount: rat(1)
            }]
        );
    }

    #[test]
    fn transfers_on_inheritance() {
        let psi = Allocation::new(vec![rat(125), rat(95), rat(80)]);
        let report = transfers(&[rat(300), rat(0), rat(0)], None, &psi).unwrap();
        assert_eq!(report.payments.len(), 2);
        assert_eq!(
            report.payments[0],
            Payment {
                from: Party::Player(0),
                to: Party::Player(1),
                amount: rat(95)
            }
        );
        assert_eq!(
            report.payments[1],
            Payment {
                from: Party::Player(0),
                to: Party::Player(2),
                amount: rat(80)
            }
        );
    }

    #[test]
    fn transfers_with_deficit_pay_into_pool() {
        let phi = Allocation::new(vec![rat(6), rat(4)]);
        let surplus = rat(-4);
        let report = transfers(&[rat(10), rat(4)], Some(&surplus), &phi).unwrap();
        assert_eq!(report.net_transfers, vec![rat(-4), rat(0)]);
        assert_eq!(
            report.payments,
            vec![Payment {
                from: Party::Player(0),
                to: Party::Pool,
                amount: rat(4)
            }]
        );
    }

    #[test]
    fn transfers_trivial_when_solution_equals_alternative() {
        let psi = Allocation::new(vec![rat(5), rat(5)]);
        let report = transfers(&[rat(5), rat(5)], None, &psi).unwrap();
        assert!(report.payments.is_empty());
    }

    #[test]
    fn transfers_reject_unbalanced_solutions() {
        let psi = Allocation::new(vec![rat(9), rat(3)]);
        assert!(matches!(
            transfers(&[rat(8), rat(2)], None, &psi),
            Err(Error::InfeasibleTransfer { .. })
        ));
    }

    #[test]
    fn montecarlo_is_exact_on_constant_marginals() {
        let oracle = ClaimOracle::from_sum_statistic(vec![1.0; 6], |s| s, "cardinality");
        let report = shapley_montecarlo(&oracle, 37, 99).unwrap();
        assert_eq!(report.estimate.values(), &[1.0; 6]);
        assert_eq!(report.standard_error, vec![0.0; 6]);
    }

    #[test]
    fn montecarlo_close_to_exact_small_game() {
        let values = [12.0, 7.0, 3.0, 0.0];
        let cost = 15.0;
        let oracle = ClaimOracle::from_sum_statistic(
            values.to_vec(),
            move |s| (s - cost).max(0.0),
            "public good",
        );
        let exact = shapley_standalone(&oracle.tabulate().unwrap());
        let report = shapley_montecarlo(&oracle, 100_000, 7).unwrap();
        for i in 0..4 {
            let err = (report.estimate.get(i) - exact.get(i)).abs();
            let bound = 3.0 * report.standard_error[i] + 1e-9;
            assert!(err <= bound, "player {i}: err {err} > {bound}");
        }
    }

    #[test]
    fn montecarlo_sample_stream_is_keyed_on_seed_and_index() {
        let oracle = ClaimOracle::from_sum_statistic(
            vec![5.0, 3.0, 2.0, 1.0, 1.0],
            |s| (s - 4.0).max(0.0),
            "test",
        );
        let a = shapley_montecarlo(&oracle, 100, 42).unwrap();
        let b = shapley_montecarlo(&oracle, 100, 42).unwrap();
        assert_eq!(a.estimate, b.estimate);
        assert_eq!(a.standard_error, b.standard_error);

        // Extending the run must not change earlier samples.
        for k in [0u64, 1, 17, 99] {
            let s = montecarlo_sample(&oracle, 42, k);
            assert_eq!(s, montecarlo_sample(&oracle, 42, k));
        }
        // The estimate is the block-ordered fold of the keyed stream.
        let n = oracle.players();
        let mut sum = vec![0.0; n];
        for k in 0..100 {
            for (acc, m) in sum.iter_mut().zip(montecarlo_sample(&oracle, 42, k)) {
                *acc += m;
            }
        }
        let mean: Vec<f64> = sum.iter().map(|s| s / 100.0).collect();
        assert_eq!(a.estimate.values(), &mean[..]);
    }

    #[test]
    fn montecarlo_needs_at_least_one_sample() {
        let oracle = ClaimOracle::from_sum_statistic(vec![1.0], |s| s, "unit");
        assert!(shapley_montecarlo(&oracle, 0, 1).is_err());
        let one = shapley_montecarlo(&oracle, 1, 1).unwrap();
        assert_eq!(one.standard_error, vec![0.0]);
    }
}
