//! Constructors for the application classes the solver covers: shared
//! infrastructure, common-resource management, debt settlement, division
//! of an indivisible good, and public-good provision.

use crate::claims::{common_resource_oracle, ClaimOracle};
use crate::error::{Error, Result};
use crate::problem::{BargainingProblem, SurplusProblem};
use crate::scalar::Scalar;

/// Parameters of one application instance. `build` translates it into a
/// polytope problem, an analytic oracle, or both.
#[derive(Clone, Debug)]
pub enum ApplicationSpec<T> {
    /// Mutually exclusive options with known utility profiles and,
    /// optionally, per-option costs borne by the players.
    Infrastructure {
        options: Vec<Vec<T>>,
        costs: Option<Vec<T>>,
    },
    /// Creditors with claims against an estate.
    Bankruptcy { claims: Vec<T>, estate: T },
    /// One indivisible good, valued by each player.
    Division { valuations: Vec<T> },
    /// A public good with per-player values and a provision cost.
    PublicGood { values: Vec<T>, cost: T },
    /// Concave resource users: benefit `alpha_i * sqrt(w_i)` under a
    /// total draw of at most `wbar`.
    CommonResource { alpha: Vec<f64>, wbar: f64 },
}

/// A constructed application: the representations available for solving.
#[derive(Debug)]
pub enum Application<T> {
    Plain {
        problem: BargainingProblem<T>,
        oracle: Option<ClaimOracle>,
    },
    Surplus {
        problem: SurplusProblem<T>,
        oracle: Option<ClaimOracle>,
    },
    Analytic { resource: CommonResource },
}

impl<T: Scalar> ApplicationSpec<T> {
    pub fn build(&self) -> Result<Application<T>> {
        match self {
            ApplicationSpec::Infrastructure { options, costs } => match costs {
                None => Ok(Application::Plain {
                    problem: infrastructure(options.clone())?,
                    oracle: None,
                }),
                Some(costs) => Ok(Application::Surplus {
                    problem: infrastructure_with_costs(options.clone(), costs)?,
                    oracle: None,
                }),
            },
            ApplicationSpec::Bankruptcy { claims, estate } => {
                let (problem, oracle) = bankruptcy(claims, estate)?;
                Ok(Application::Plain {
                    problem,
                    oracle: Some(oracle),
                })
            }
            ApplicationSpec::Division { valuations } => Ok(Application::Plain {
                problem: indivisible_good(valuations)?,
                oracle: None,
            }),
            ApplicationSpec::PublicGood { values, cost } => {
                let problem = public_good(values, cost)?;
                let oracle = public_good_oracle(
                    &values.iter().map(Scalar::to_f64).collect::<Vec<_>>(),
                    cost.to_f64(),
                )?;
                Ok(Application::Surplus {
                    problem,
                    oracle: Some(oracle),
                })
            }
            ApplicationSpec::CommonResource { alpha, wbar } => Ok(Application::Analytic {
                resource: common_resource(alpha, *wbar)?,
            }),
        }
    }
}

/// Options without costs: the bargaining set is the hull of the utility
/// profiles.
pub fn infrastructure<T: Scalar>(options: Vec<Vec<T>>) -> Result<BargainingProblem<T>> {
    BargainingProblem::new(options)
}

/// Options with costs: each profile is extended by `-cost` as the
/// surplus entry.
pub fn infrastructure_with_costs<T: Scalar>(
    options: Vec<Vec<T>>,
    costs: &[T],
) -> Result<SurplusProblem<T>> {
    if options.is_empty() {
        return Err(Error::EmptyProblem);
    }
    if costs.len() != options.len() {
        return Err(Error::DimensionMismatch {
            expected: options.len(),
            found: costs.len(),
        });
    }
    let n = options[0].len();
    let generators = options
        .into_iter()
        .zip(costs)
        .map(|(mut opt, cost)| {
            opt.push(-cost.clone());
            opt
        })
        .collect();
    SurplusProblem::new(n, generators)
}

/// Closed-form bankruptcy claim `v(S) = min(c_S, E)`, exact in `T`.
pub fn bankruptcy_claim<T: Scalar>(claims: &[T], estate: &T, s: crate::Coalition) -> T {
    let c_s = s
        .players()
        .fold(T::zero(), |acc, i| acc + claims[i].clone());
    if c_s < *estate {
        c_s
    } else {
        estate.clone()
    }
}

const MAX_BANKRUPTCY_PLAYERS: usize = 10;

/// The debt-settlement problem `{0 <= x <= claims, x_N <= estate}`:
/// returns a vertex enumeration of the polytope (capped at 10 creditors)
/// and the closed-form oracle `v(S) = min(c_S, E)`. Both yield the same
/// stand-alone game.
pub fn bankruptcy<T: Scalar>(
    claims: &[T],
    estate: &T,
) -> Result<(BargainingProblem<T>, ClaimOracle)> {
    let n = claims.len();
    if n == 0 {
        return Err(Error::InvalidParameter("claims must be nonempty".into()));
    }
    if n > MAX_BANKRUPTCY_PLAYERS {
        return Err(Error::TooManyPlayers {
            n,
            max: MAX_BANKRUPTCY_PLAYERS,
        });
    }
    if claims.iter().any(|c| c < &T::zero()) || estate < &T::zero() {
        return Err(Error::InvalidParameter(
            "claims and estate must be nonnegative".into(),
        ));
    }

    // Vertices: a set S of creditors paid at their cap (feasible only if
    // c_S <= E), plus at most one pivot creditor absorbing the residual.
    let mut generators = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut at_cap = T::zero();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                at_cap = at_cap + claims[i].clone();
            }
        }
        if at_cap > *estate {
            continue;
        }
        let base: Vec<T> = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    claims[i].clone()
                } else {
                    T::zero()
                }
            })
            .collect();
        generators.push(base.clone());
        let residual = estate.clone() - at_cap;
        for j in 0..n {
            if mask >> j & 1 == 0 {
                let mut v = base.clone();
                v[j] = if claims[j] < residual {
                    claims[j].clone()
                } else {
                    residual.clone()
                };
                generators.push(v);
            }
        }
    }
    let problem = BargainingProblem::new(generators)?;

    let stats: Vec<f64> = claims.iter().map(Scalar::to_f64).collect();
    let cap = estate.to_f64();
    let oracle = ClaimOracle::from_sum_statistic(
        stats,
        move |s| s.min(cap),
        format!("bankruptcy: min(c_S, {cap})"),
    );
    Ok((problem, oracle))
}

/// Division of one indivisible good: generators `val_i * e_i`, so
/// `v(S) = max_{i in S} val_i`.
pub fn indivisible_good<T: Scalar>(valuations: &[T]) -> Result<BargainingProblem<T>> {
    let n = valuations.len();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "valuations must be nonempty".into(),
        ));
    }
    if valuations.iter().any(|v| v < &T::zero()) {
        return Err(Error::InvalidParameter(
            "valuations must be nonnegative".into(),
        ));
    }
    let generators = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { valuations[i].clone() } else { T::zero() })
                .collect()
        })
        .collect();
    BargainingProblem::new(generators)
}

/// Public-good provision: build at cost `c` (generator `(values, -c)`)
/// or not (the zero vector), so `w(S) = max(v_S - c, 0)`.
pub fn public_good<T: Scalar>(values: &[T], cost: &T) -> Result<SurplusProblem<T>> {
    let n = values.len();
    if n == 0 {
        return Err(Error::InvalidParameter("values must be nonempty".into()));
    }
    if values.iter().any(|v| v < &T::zero()) || cost < &T::zero() {
        return Err(Error::InvalidParameter(
            "values and cost must be nonnegative".into(),
        ));
    }
    let mut build: Vec<T> = values.to_vec();
    build.push(-cost.clone());
    let zero = vec![T::zero(); n + 1];
    SurplusProblem::new(n, vec![build, zero])
}

/// Claim oracle of the public-good problem, usable at any `n` by the
/// Monte-Carlo estimator.
pub fn public_good_oracle(values: &[f64], cost: f64) -> Result<ClaimOracle> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("values must be nonempty".into()));
    }
    if values.iter().any(|&v| v < 0.0 || !v.is_finite()) || cost < 0.0 || !cost.is_finite() {
        return Err(Error::InvalidParameter(
            "values and cost must be nonnegative".into(),
        ));
    }
    Ok(ClaimOracle::from_sum_statistic(
        values.to_vec(),
        move |s| (s - cost).max(0.0),
        format!("public good: max(v_S - {cost}, 0)"),
    ))
}

/// A common-resource instance: the claim oracle plus the efficient water
/// allocation and its utility profile (the alternative transfers are
/// settled against).
#[derive(Clone, Debug)]
pub struct CommonResource {
    pub oracle: ClaimOracle,
    /// `w_i* = wbar * alpha_i^2 / Σ_j alpha_j^2`.
    pub efficient_allocation: Vec<f64>,
    /// `u_i* = alpha_i * sqrt(w_i*)`.
    pub efficient_utilities: Vec<f64>,
}

/// Builds the common-resource application from benefit coefficients and
/// the total draw budget.
pub fn common_resource(alpha: &[f64], wbar: f64) -> Result<CommonResource> {
    let oracle = common_resource_oracle(alpha, wbar)?;
    let total: f64 = alpha.iter().map(|a| a * a).sum();
    let efficient_allocation: Vec<f64> = alpha.iter().map(|a| wbar * a * a / total).collect();
    let efficient_utilities: Vec<f64> = alpha
        .iter()
        .zip(&efficient_allocation)
        .map(|(a, w)| a * w.sqrt())
        .collect();
    Ok(CommonResource {
        oracle,
        efficient_allocation,
        efficient_utilities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::StandAloneGame;
    use crate::coalition::Coalition;
    use crate::problem::Polytope;
    use crate::scalar::Rational;
    use crate::solutions::{shapley_standalone, shapley_surplus, solve_shapley};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn rat(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn rats(vs: &[i64]) -> Vec<Rational> {
        vs.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn infrastructure_without_costs_is_example_one() {
        let p = infrastructure(vec![rats(&[8, 2]), rats(&[2, 4])]).unwrap();
        assert_eq!(solve_shapley(&p).unwrap().values(), &[rat(7), rat(3)]);
    }

    #[test]
    fn infrastructure_with_costs_builds_table_one() {
        let c = infrastructure_with_costs(
            vec![rats(&[10, 4]), rats(&[4, 6]), rats(&[9, 2]), rats(&[2, 7])],
            &rats(&[4, 4, 2, 2]),
        )
        .unwrap();
        assert_eq!(c.generators()[0], rats(&[10, 4, -4]));
        assert_eq!(shapley_surplus(&c).unwrap().values(), &[rat(6), rat(4)]);
    }

    #[test]
    fn infrastructure_cost_count_must_match() {
        assert!(matches!(
            infrastructure_with_costs(vec![rats(&[1, 2])], &rats(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bankruptcy_example_three() {
        let (p, _) = bankruptcy(&rats(&[100, 200, 400]), &rat(300)).unwrap();
        assert_eq!(
            solve_shapley(&p).unwrap().values(),
            &[rat(50), rat(100), rat(150)]
        );
    }

    #[test]
    fn bankruptcy_rich_estate_pays_everyone() {
        let (p, _) = bankruptcy(&rats(&[10, 20]), &rat(100)).unwrap();
        assert_eq!(solve_shapley(&p).unwrap().values(), &[rat(10), rat(20)]);
    }

    #[test]
    fn bankruptcy_empty_estate_pays_nothing() {
        let (p, _) = bankruptcy(&rats(&[10, 20]), &rat(0)).unwrap();
        assert_eq!(solve_shapley(&p).unwrap().values(), &[rat(0), rat(0)]);
    }

    #[test]
    fn bankruptcy_vertex_game_matches_closed_form_on_random_instances() {
        // Dyadic inputs keep the float oracle exact, so the games must
        // agree to the bit.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let n = rng.random_range(1..=6usize);
            let claims: Vec<Rational> = (0..n)
                .map(|_| Rational::from_ratio(rng.random_range(0..=80), 4))
                .collect();
            let estate = Rational::from_ratio(rng.random_range(0..=120), 4);
            let (p, oracle) = bankruptcy(&claims, &estate).unwrap();
            let game = p.stand_alone_game().unwrap();
            for s in Coalition::all(n) {
                assert_eq!(
                    *game.value(s),
                    bankruptcy_claim(&claims, &estate, s),
                    "closed form mismatch at {s}"
                );
                assert_eq!(game.value(s).to_f64(), oracle.evaluate(s));
            }
        }
    }

    #[test]
    fn bankruptcy_rejects_negative_inputs() {
        assert!(bankruptcy(&rats(&[-1, 2]), &rat(3)).is_err());
        assert!(bankruptcy(&rats(&[1, 2]), &rat(-3)).is_err());
    }

    #[test]
    fn indivisible_good_example_four() {
        let p = indivisible_good(&rats(&[300, 270, 240])).unwrap();
        assert_eq!(
            solve_shapley(&p).unwrap().values(),
            &[rat(125), rat(95), rat(80)]
        );
    }

    #[test]
    fn indivisible_good_equal_values_split_equally() {
        let p = indivisible_good(&rats(&[10, 10])).unwrap();
        assert_eq!(solve_shapley(&p).unwrap().values(), &[rat(5), rat(5)]);
    }

    #[test]
    fn indivisible_good_worthless_rival_gets_nothing() {
        let p = indivisible_good(&rats(&[10, 0])).unwrap();
        assert_eq!(solve_shapley(&p).unwrap().values(), &[rat(10), rat(0)]);
    }

    #[test]
    fn indivisible_good_claims_are_max_valuation() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.random_range(1..=6usize);
            let vals: Vec<Rational> = (0..n).map(|_| rat(rng.random_range(0..50))).collect();
            let p = indivisible_good(&vals).unwrap();
            let game = p.stand_alone_game().unwrap();
            for s in Coalition::all(n) {
                let expect = s
                    .players()
                    .map(|i| vals[i].clone())
                    .fold(rat(0), |a, b| if b > a { b } else { a });
                assert_eq!(*game.value(s), expect);
            }
        }
    }

    #[test]
    fn public_good_claims_are_clipped_net_value() {
        let values = rats(&[20, 20, 10, 10, 10, 10, 0, 0, 0, 0]);
        let cost = rat(40);
        let c = public_good(&values, &cost).unwrap();
        let game = c.surplus_game().unwrap();
        for s in Coalition::all(10) {
            let v_s: i64 = s.players().map(|i| [20, 20, 10, 10, 10, 10, 0, 0, 0, 0][i]).sum();
            assert_eq!(*game.value(s), rat((v_s - 40).max(0)), "coalition {s}");
        }
    }

    #[test]
    fn public_good_zero_cost_awards_values() {
        let c = public_good(&rats(&[3, 7]), &rat(0)).unwrap();
        assert_eq!(
            shapley_surplus(&c).unwrap().values(),
            &[rat(3), rat(7)]
        );
    }

    #[test]
    fn public_good_worthless_park_pays_nothing() {
        let c = public_good(&rats(&[0, 0]), &rat(5)).unwrap();
        assert_eq!(shapley_surplus(&c).unwrap().values(), &[rat(0), rat(0)]);
    }

    #[test]
    fn public_good_oracle_matches_polytope_game() {
        let values = [20.0, 20.0, 10.0, 10.0, 0.0];
        let oracle = public_good_oracle(&values, 30.0).unwrap();
        let exact = public_good(
            &values.iter().map(|&v| Rational::from_f64(v)).collect::<Vec<_>>(),
            &Rational::from_f64(30.0),
        )
        .unwrap();
        let game = exact.surplus_game().unwrap();
        for s in Coalition::all(5) {
            assert_eq!(oracle.evaluate(s), game.value(s).to_f64());
        }
    }

    #[test]
    fn common_resource_reference_profile() {
        let r = common_resource(&[1.0, 2.0, 3.0], 100.0).unwrap();
        let expect_alloc = [100.0 / 14.0, 400.0 / 14.0, 900.0 / 14.0];
        for (a, e) in r.efficient_allocation.iter().zip(expect_alloc) {
            assert!((a - e).abs() < 1e-9);
        }
        let total: f64 = r.efficient_utilities.iter().sum();
        assert!((total - 1400.0f64.sqrt()).abs() < 1e-9);

        let psi = shapley_standalone(&r.oracle.tabulate().unwrap());
        for (v, e) in psi.values().iter().zip([4.5, 11.7, 21.3]) {
            assert!((v - e).abs() <= 0.05);
        }
    }

    #[test]
    fn common_resource_symmetric_players_split_equally() {
        let r = common_resource(&[1.0, 1.0], 50.0).unwrap();
        let psi = shapley_standalone(&r.oracle.tabulate().unwrap());
        assert!((psi.get(0) - psi.get(1)).abs() < 1e-12);
    }

    #[test]
    fn common_resource_solution_monotone_in_alpha() {
        let base = common_resource(&[1.0, 2.0, 3.0], 100.0).unwrap();
        let base_psi = shapley_standalone(&base.oracle.tabulate().unwrap());
        for bump in [1.5, 2.0, 3.0, 5.0] {
            let raised = common_resource(&[bump, 2.0, 3.0], 100.0).unwrap();
            let psi = shapley_standalone(&raised.oracle.tabulate().unwrap());
            assert!(psi.get(0) >= base_psi.get(0));
        }
    }

    #[test]
    fn application_spec_builds_each_kind() {
        let plain = ApplicationSpec::Infrastructure {
            options: vec![rats(&[8, 2]), rats(&[2, 4])],
            costs: None,
        };
        assert!(matches!(plain.build().unwrap(), Application::Plain { .. }));

        let surplus = ApplicationSpec::PublicGood {
            values: rats(&[20, 10]),
            cost: rat(15),
        };
        assert!(matches!(
            surplus.build().unwrap(),
            Application::Surplus { oracle: Some(_), .. }
        ));

        let analytic: ApplicationSpec<Rational> = ApplicationSpec::CommonResource {
            alpha: vec![1.0, 2.0],
            wbar: 10.0,
        };
        assert!(matches!(
            analytic.build().unwrap(),
            Application::Analytic { .. }
        ));
    }

    #[test]
    fn stand_alone_game_type_reexport_compiles() {
        let game: StandAloneGame<Rational> =
            StandAloneGame::tabulate(2, |s| rat(s.len() as i64)).unwrap();
        assert_eq!(*game.grand_value(), rat(2));
    }
}
