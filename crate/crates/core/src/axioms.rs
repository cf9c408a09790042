//! Executable axiom checks: efficiency, anonymity, dummy, continuity,
//! additivity, and monotonicity for plain problems, plus the compromise
//! bounds for surplus problems. Each check applies to an arbitrary
//! solution function and returns a verdict with a replayable witness on
//! failure.

use std::ops::RangeInclusive;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::coalition::Permutation;
use crate::error::{Error, Result};
use crate::problem::{
    hausdorff_upper_bound, Allocation, BargainingProblem, GeneratorMatching, Polytope,
    SurplusProblem,
};
use crate::scalar::Scalar;

/// The axioms the harness can exercise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Efficiency,
    Anonymity,
    Dummy,
    Continuity,
    Additivity,
    Monotonicity,
    Compromise,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Axiom::Efficiency => "efficiency",
            Axiom::Anonymity => "anonymity",
            Axiom::Dummy => "dummy",
            Axiom::Continuity => "continuity",
            Axiom::Additivity => "additivity",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Compromise => "compromise",
        };
        f.write_str(name)
    }
}

/// Evidence of a violation, carrying enough data to replay the predicate.
#[derive(Clone, Debug)]
pub enum Witness<T> {
    /// Solution total differs from the efficient total.
    Total { observed: T, expected: T },
    /// A per-player equality or one-sided bound failed.
    PlayerValue {
        player: usize,
        observed: T,
        expected: T,
    },
    /// A compromise bound failed.
    Bounds {
        player: usize,
        observed: T,
        lower: T,
        upper: T,
    },
    /// A perturbed problem moved the solution further than the Lipschitz
    /// bound allows; `generators` rebuild the perturbed problem.
    Perturbation {
        generators: Vec<Vec<T>>,
        deviation: f64,
        bound: f64,
    },
}

impl<T: Scalar> std::fmt::Display for Witness<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Total { observed, expected } => {
                write!(f, "total {observed} != efficient total {expected}")
            }
            Witness::PlayerValue {
                player,
                observed,
                expected,
            } => write!(
                f,
                "player {}: observed {observed}, expected {expected}",
                player + 1
            ),
            Witness::Bounds {
                player,
                observed,
                lower,
                upper,
            } => write!(
                f,
                "player {}: {observed} outside [{lower}, {upper}]",
                player + 1
            ),
            Witness::Perturbation {
                deviation, bound, ..
            } => write!(f, "deviation {deviation} exceeds bound {bound}"),
        }
    }
}

/// Outcome of one axiom check. A witness is present iff the check failed.
#[derive(Clone, Debug)]
pub struct AxiomVerdict<T> {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Witness<T>>,
    /// Absolute tolerance used for equality comparisons (0 when exact).
    pub tolerance: f64,
    /// For continuity: the largest observed deviation/bound ratio.
    pub observed_ratio: Option<f64>,
}

impl<T: Scalar> AxiomVerdict<T> {
    fn pass(axiom: Axiom, tolerance: f64) -> Self {
        AxiomVerdict {
            axiom,
            passed: true,
            witness: None,
            tolerance,
            observed_ratio: None,
        }
    }

    fn fail(axiom: Axiom, tolerance: f64, witness: Witness<T>) -> Self {
        AxiomVerdict {
            axiom,
            passed: false,
            witness: Some(witness),
            tolerance,
            observed_ratio: None,
        }
    }
}

impl<T: Scalar> std::fmt::Display for AxiomVerdict<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed {
            write!(f, "{}: pass", self.axiom)?;
        } else {
            write!(f, "{}: FAIL", self.axiom)?;
            if let Some(w) = &self.witness {
                write!(f, " ({w})")?;
            }
        }
        if let Some(r) = self.observed_ratio {
            write!(f, " [max ratio {r:.3}]")?;
        }
        Ok(())
    }
}

fn problem_scale<T: Scalar, P: Polytope<T>>(problems: &[&P]) -> f64 {
    problems
        .iter()
        .flat_map(|p| p.generators().iter())
        .flat_map(|g| g.iter())
        .map(|v| v.to_f64().abs())
        .fold(1.0, f64::max)
}

/// Equality tolerance: exact backends compare exactly; the float backend
/// uses 1e-7 absolute, scaled up for problems with claims beyond 1e3.
fn check_tolerance<T: Scalar, P: Polytope<T>>(problems: &[&P]) -> f64 {
    if T::EXACT {
        0.0
    } else {
        1e-7 * (problem_scale(problems) / 1e3).max(1.0)
    }
}

/// Efficiency: the solution total equals the maximal attainable total
/// (`max x_N`, including the surplus entry for surplus problems).
pub fn check_efficiency<T, P, F>(sol: F, p: &P) -> Result<AxiomVerdict<T>>
where
    T: Scalar,
    P: Polytope<T>,
    F: Fn(&P) -> Result<Allocation<T>>,
{
    let tol = check_tolerance::<T, P>(&[p]);
    let total = sol(p)?.total();
    let expected = p.efficient_total();
    if total.eq_within(&expected, tol) {
        Ok(AxiomVerdict::pass(Axiom::Efficiency, tol))
    } else {
        Ok(AxiomVerdict::fail(
            Axiom::Efficiency,
            tol,
            Witness::Total {
                observed: total,
                expected,
            },
        ))
    }
}

/// Anonymity: `sol(rho(B)) = rho(sol(B))`.
pub fn check_anonymity<T, P, F>(sol: F, p: &P, rho: &Permutation) -> Result<AxiomVerdict<T>>
where
    T: Scalar,
    P: Polytope<T>,
    F: Fn(&P) -> Result<Allocation<T>>,
{
    let tol = check_tolerance::<T, P>(&[p]);
    let permuted = p.permute(rho)?;
    let lhs = sol(&permuted)?;
    let base = sol(p)?;
    for i in 0..p.players() {
        let expected = base.get(rho.apply_index(i)).clone();
        if !lhs.get(i).eq_within(&expected, tol) {
            return Ok(AxiomVerdict::fail(
                Axiom::Anonymity,
                tol,
                Witness::PlayerValue {
                    player: i,
                    observed: lhs.get(i).clone(),
                    expected,
                },
            ));
        }
    }
    Ok(AxiomVerdict::pass(Axiom::Anonymity, tol))
}

/// Dummy property: if every Pareto generator gives player `i` zero, the
/// solution must give player `i` zero. Errors with `HypothesisNotMet`
/// when the premise cannot be certified at generator level.
pub fn check_dummy<T, P, F>(sol: F, p: &P, player: usize) -> Result<AxiomVerdict<T>>
where
    T: Scalar,
    P: Polytope<T>,
    F: Fn(&P) -> Result<Allocation<T>>,
{
    let tol = check_tolerance::<T, P>(&[p]);
    let zero = T::zero();
    let hypothesis = p
        .pareto_generators()
        .iter()
        .all(|g| g[player].eq_within(&zero, tol));
    if !hypothesis {
        return Err(Error::HypothesisNotMet(format!(
            "player {} has a nonzero Pareto generator coordinate",
            player + 1
        )));
    }
    let observed = sol(p)?.get(player).clone();
    if observed.eq_within(&zero, tol) {
        Ok(AxiomVerdict::pass(Axiom::Dummy, tol))
    } else {
        Ok(AxiomVerdict::fail(
            Axiom::Dummy,
            tol,
            Witness::PlayerValue {
                player,
                observed,
                expected: zero,
            },
        ))
    }
}

/// Additivity: `sol(A + B) = sol(A) + sol(B)` (Minkowski sum).
pub fn check_additivity<T, P, F>(sol: F, a: &P, b: &P) -> Result<AxiomVerdict<T>>
where
    T: Scalar,
    P: Polytope<T>,
    F: Fn(&P) -> Result<Allocation<T>>,
{
    let tol = check_tolerance::<T, P>(&[a, b]);
    let sum = a.minkowski_sum(b)?;
    let joint = sol(&sum)?;
    let left = sol(a)?;
    let right = sol(b)?;
    for i in 0..a.players() {
        let expected = left.get(i).clone() + right.get(i).clone();
        if !joint.get(i).eq_within(&expected, tol) {
            return Ok(AxiomVerdict::fail(
                Axiom::Additivity,
                tol,
                Witness::PlayerValue {
                    player: i,
                    observed: joint.get(i).clone(),
                    expected,
                },
            ));
        }
    }
    Ok(AxiomVerdict::pass(Axiom::Additivity, tol))
}

/// Monotonicity: adding a point that raises player `i`'s payoff while
/// fixing everyone else's cannot lower `sol_i`. The hypothesis is
/// certified at generator level: some generator must equal `x` off
/// coordinate `i` and not exceed it at `i`.
pub fn check_monotonicity<T, P, F>(sol: F, p: &P, player: usize, x: &[T]) -> Result<AxiomVerdict<T>>
where
    T: Scalar,
    P: Polytope<T>,
    F: Fn(&P) -> Result<Allocation<T>>,
{
    if x.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: x.len(),
        });
    }
    let tol = check_tolerance::<T, P>(&[p]);
    let supported = p.generators().iter().any(|g| {
        x[player].ge_within(&g[player], tol)
            && g.iter()
                .zip(x)
                .enumerate()
                .all(|(j, (gj, xj))| j == player || gj.eq_within(xj, tol))
    });
    if !supported {
        return Err(Error::HypothesisNotMet(
            "no generator matches the added point off the raised coordinate".into(),
        ));
    }
    let before = sol(p)?.get(player).clone();
    let extended = p.add_point(x)?;
    let after = sol(&extended)?.get(player).clone();
    if after.ge_within(&before, tol) {
        Ok(AxiomVerdict::pass(Axiom::Monotonicity, tol))
    } else {
        Ok(AxiomVerdict::fail(
            Axiom::Monotonicity,
            tol,
            Witness::PlayerValue {
                player,
                observed: after,
                expected: before,
            },
        ))
    }
}

/// Lipschitz constant used by the continuity check: each claim is a
/// support value, so a generator displacement of `d` moves any claim by
/// at most `d * sqrt(dim)`, and the solution weights sum to one per
/// player across the added and removed claim, giving `2 * sqrt(dim)`.
pub fn lipschitz_bound(dim: usize) -> f64 {
    2.0 * (dim as f64).sqrt()
}

/// One continuity comparison: the solution may move by at most
/// `lipschitz_bound * hausdorff_upper_bound` between `p` and `perturbed`.
pub fn check_continuity_pair<T, P, F>(sol: F, p: &P, perturbed: &P) -> Result<AxiomVerdict<T>>
where
    T: Scalar,
    P: Polytope<T>,
    F: Fn(&P) -> Result<Allocation<T>>,
{
    let matching = GeneratorMatching::identity(p.generators().len());
    let distance = hausdorff_upper_bound(p, perturbed, &matching)?;
    let bound = lipschitz_bound(p.dim()) * distance;
    let base = sol(p)?;
    let moved = sol(perturbed)?;
    let deviation = base
        .values()
        .iter()
        .zip(moved.values())
        .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
        .fold(0.0, f64::max);
    let slack = 1e-9 * problem_scale::<T, P>(&[p]).max(1.0);
    let ratio = if bound > slack {
        Some(deviation / bound)
    } else {
        None
    };
    let mut verdict = if deviation <= bound + slack {
        AxiomVerdict::pass(Axiom::Continuity, slack)
    } else {
        AxiomVerdict::fail(
            Axiom::Continuity,
            slack,
            Witness::Perturbation {
                generators: perturbed.generators().to_vec(),
                deviation,
                bound,
            },
        )
    };
    verdict.observed_ratio = ratio;
    Ok(verdict)
}

/// Continuity under random perturbations: every generator coordinate is
/// shifted by uniform noise in `[-delta, delta]`, `trials` times, and
/// each perturbed problem must stay within the Lipschitz bound.
pub fn check_continuity<T, P, F>(
    sol: F,
    p: &P,
    delta: f64,
    trials: u32,
    seed: u64,
) -> Result<AxiomVerdict<T>>
where
    T: Scalar,
    P: Polytope<T>,
    F: Fn(&P) -> Result<Allocation<T>>,
{
    if delta < 0.0 {
        return Err(Error::InvalidParameter("delta must be nonnegative".into()));
    }
    let mut worst_ratio: Option<f64> = None;
    let mut tolerance = 0.0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E3779B97F4A7C15));
        let gens = p
            .generators()
            .iter()
            .map(|g| {
                g.iter()
                    .map(|v| v.clone() + T::from_f64(rng.random_range(-delta..=delta)))
                    .collect()
            })
            .collect();
        let perturbed = p.rebuild(gens)?;
        let verdict = check_continuity_pair(&sol, p, &perturbed)?;
        tolerance = verdict.tolerance;
        if let Some(r) = verdict.observed_ratio {
            worst_ratio = Some(worst_ratio.map_or(r, |w: f64| w.max(r)));
        }
        if !verdict.passed {
            return Ok(AxiomVerdict {
                observed_ratio: worst_ratio,
                ..verdict
            });
        }
    }
    let mut verdict = AxiomVerdict::pass(Axiom::Continuity, tolerance);
    verdict.observed_ratio = worst_ratio;
    Ok(verdict)
}

/// Compromise bounds for surplus solutions: each player gets at least
/// their worst efficient alternative and at most their best alternative,
/// with the surplus shared equally.
pub fn check_compromise<T, F>(sol: F, c: &SurplusProblem<T>) -> Result<AxiomVerdict<T>>
where
    T: Scalar,
    F: Fn(&SurplusProblem<T>) -> Result<Allocation<T>>,
{
    let tol = check_tolerance::<T, SurplusProblem<T>>(&[c]);
    let n = c.players();
    let share = T::from_ratio(1, n as i64);
    let phi = sol(c)?;
    let pareto = c.pareto_generators();
    for i in 0..n {
        let value = |g: &[T]| g[i].clone() + share.clone() * g[n].clone();
        let lower = pareto
            .iter()
            .map(|g| value(g))
            .reduce(|a, b| if b < a { b } else { a })
            .expect("nonempty Pareto set");
        let upper = c
            .generators()
            .iter()
            .map(|g| value(g))
            .reduce(|a, b| if b > a { b } else { a })
            .expect("nonempty generator list");
        let ok = phi.get(i).ge_within(&lower, tol)
            && upper.ge_within(phi.get(i), tol);
        if !ok {
            return Ok(AxiomVerdict::fail(
                Axiom::Compromise,
                tol,
                Witness::Bounds {
                    player: i,
                    observed: phi.get(i).clone(),
                    lower,
                    upper,
                },
            ));
        }
    }
    Ok(AxiomVerdict::pass(Axiom::Compromise, tol))
}

/// A reproducible random problem: `k` generators with rational
/// coordinates on the quarter-integer grid inside `range`.
pub fn random_problem<T: Scalar>(
    n: usize,
    k: usize,
    range: RangeInclusive<i64>,
    seed: u64,
) -> BargainingProblem<T> {
    assert!(n >= 1 && k >= 1, "need at least one player and generator");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = random_grid(&mut rng, k, n, &range);
    BargainingProblem::new(gens).expect("valid random problem")
}

/// Random surplus problem: utilities drawn like [`random_problem`], plus
/// a surplus coordinate from the same grid.
pub fn random_surplus_problem<T: Scalar>(
    n: usize,
    k: usize,
    range: RangeInclusive<i64>,
    seed: u64,
) -> SurplusProblem<T> {
    assert!(n >= 1 && k >= 1, "need at least one player and generator");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = random_grid(&mut rng, k, n + 1, &range);
    SurplusProblem::new(n, gens).expect("valid random surplus problem")
}

fn random_grid<T: Scalar>(
    rng: &mut ChaCha8Rng,
    k: usize,
    dim: usize,
    range: &RangeInclusive<i64>,
) -> Vec<Vec<T>> {
    let lo = *range.start() * 4;
    let hi = *range.end() * 4;
    (0..k)
        .map(|_| {
            (0..dim)
                .map(|_| T::from_ratio(rng.random_range(lo..=hi), 4))
                .collect()
        })
        .collect()
}

/// A random permutation of `0..n`, reproducible in `seed`.
pub fn random_permutation(n: usize, seed: u64) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Permutation::new(map).expect("shuffled identity is a bijection")
}

/// A raise-one-coordinate instance for the monotonicity check: copies a
/// random generator and pushes one player's coordinate up by a positive
/// grid step, which always satisfies the axiom's hypothesis.
pub fn raise_instance<T: Scalar, P: Polytope<T>>(problem: &P, seed: u64) -> (usize, Vec<T>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gi = rng.random_range(0..problem.generators().len());
    let player = rng.random_range(0..problem.players());
    let mut point = problem.generators()[gi].clone();
    point[player] = point[player].clone() + T::from_ratio(rng.random_range(1..=12), 4);
    (player, point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::solutions::{solve_eans, solve_esil, solve_shapley, shapley_surplus};

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

    fn appendix() -> BargainingProblem<Rational> {
        problem(&[&[0, 2, 0], &[0, 0, 1]])
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

    #[test]
    fn efficiency_passes_for_shapley_on_power_plant() {
        let v = check_efficiency(solve_shapley, &power_plant()).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn efficiency_fails_for_constant_zero() {
        let zero = |p: &BargainingProblem<Rational>| {
            Ok(Allocation::new(vec![rat(0); p.players()]))
        };
        let v = check_efficiency(zero, &power_plant()).unwrap();
        assert!(!v.passed);
        match v.witness.unwrap() {
            Witness::Total { observed, expected } => {
                assert_eq!(observed, rat(0));
                assert_eq!(expected, rat(10));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn efficiency_passes_for_surplus_solution_on_table_one() {
        let v = check_efficiency(shapley_surplus, &table_one()).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn anonymity_passes_identity_and_swap() {
        let p = power_plant();
        let id = Permutation::identity(2);
        assert!(check_anonymity(solve_shapley, &p, &id).unwrap().passed);
        let swap = Permutation::swap(2, 0, 1).unwrap();
        let v = check_anonymity(solve_shapley, &p, &swap).unwrap();
        assert!(v.passed);
        // sanity: the permuted problem solves to (3, 7)
        let psi = solve_shapley(&p.permute(&swap).unwrap()).unwrap();
        assert_eq!(psi.values(), &[rat(3), rat(7)]);
    }

    #[test]
    fn anonymity_fails_for_index_biased_solution() {
        let biased = |p: &BargainingProblem<Rational>| {
            let mut out = vec![rat(0); p.players()];
            out[0] = p.efficient_total();
            Ok(Allocation::new(out))
        };
        let swap = Permutation::swap(2, 0, 1).unwrap();
        let v = check_anonymity(biased, &power_plant(), &swap).unwrap();
        assert!(!v.passed);
    }

    #[test]
    fn dummy_passes_for_shapley_fails_for_eans_esil() {
        let p = appendix();
        assert!(check_dummy(solve_shapley, &p, 0).unwrap().passed);

        let v = check_dummy(solve_eans, &p, 0).unwrap();
        assert!(!v.passed);
        match v.witness.unwrap() {
            Witness::PlayerValue { observed, .. } => assert_eq!(observed, ratio(1, 3)),
            w => panic!("unexpected witness {w:?}"),
        }

        let v = check_dummy(solve_esil, &p, 0).unwrap();
        assert!(!v.passed);
        match v.witness.unwrap() {
            Witness::PlayerValue { observed, .. } => assert_eq!(observed, ratio(-1, 3)),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn dummy_hypothesis_rejected_when_not_met() {
        assert!(matches!(
            check_dummy(solve_shapley, &power_plant(), 0),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn additivity_passes_for_shapley_on_random_pairs() {
        for seed in 0..20 {
            let a = random_problem::<Rational>(3, 4, -10..=10, seed);
            let b = random_problem::<Rational>(3, 5, -10..=10, seed + 1000);
            assert!(check_additivity(solve_shapley, &a, &b).unwrap().passed);
        }
    }

    #[test]
    fn additivity_doubles_the_power_plant() {
        let p = power_plant();
        assert!(check_additivity(solve_shapley, &p, &p).unwrap().passed);
        let sum = p.minkowski_sum(&p).unwrap();
        assert_eq!(
            solve_shapley(&sum).unwrap().values(),
            &[rat(14), rat(6)]
        );
    }

    #[test]
    fn additivity_fails_for_maxmin_egalitarian() {
        // Max-min point of a two-player hull, computed over generator
        // pairs; egalitarian points of these two problems do not add.
        let maxmin = |p: &BargainingProblem<Rational>| {
            let gens = p.generators();
            let mut best: Option<(Rational, Vec<Rational>)> = None;
            let mut consider = |point: Vec<Rational>| {
                let worst = point.iter().cloned().reduce(|a, b| if b < a { b } else { a }).unwrap();
                if best.as_ref().map_or(true, |(w, _)| worst > *w) {
                    best = Some((worst, point));
                }
            };
            for g in gens {
                consider(g.clone());
            }
            for g in gens {
                for h in gens {
                    let dg = g[0].clone() - g[1].clone();
                    let dh = h[0].clone() - h[1].clone();
                    if dg > rat(0) && dh < rat(0) {
                        // Equal-coordinate point on the segment [g, h].
                        let t = dg.clone() / (dg - dh);
                        let mix = |a: &Rational, b: &Rational| {
                            a.clone() + t.clone() * (b.clone() - a.clone())
                        };
                        consider(vec![mix(&g[0], &h[0]), mix(&g[1], &h[1])]);
                    }
                }
            }
            Ok(Allocation::new(best.unwrap().1))
        };
        let a = problem(&[&[4, 0], &[0, 2]]);
        let b = problem(&[&[2, 0], &[0, 4]]);
        let v = check_additivity(maxmin, &a, &b).unwrap();
        assert!(!v.passed);
    }

    #[test]
    fn monotonicity_raise_first_coordinate() {
        let p = power_plant();
        let x = [rat(9), rat(2)];
        let v = check_monotonicity(solve_shapley, &p, 0, &x).unwrap();
        assert!(v.passed);
        let raised = p.add_point(&x).unwrap();
        assert!(solve_shapley(&raised).unwrap().get(0) > solve_shapley(&p).unwrap().get(0));
    }

    #[test]
    fn monotonicity_existing_generator_is_equality() {
        let p = power_plant();
        let x = [rat(8), rat(2)];
        let v = check_monotonicity(solve_shapley, &p, 0, &x).unwrap();
        assert!(v.passed);
        let same = p.add_point(&x).unwrap();
        assert_eq!(solve_shapley(&same).unwrap(), solve_shapley(&p).unwrap());
    }

    #[test]
    fn monotonicity_hypothesis_rejected_for_detached_point() {
        let p = power_plant();
        let x = [rat(9), rat(100)];
        assert!(matches!(
            check_monotonicity(solve_shapley, &p, 0, &x),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn monotonicity_randomized_raises_pass() {
        for seed in 0..100 {
            let p = random_problem::<Rational>(4, 5, -8..=8, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xABCD);
            let gi = rng.random_range(0..p.generators().len());
            let player = rng.random_range(0..p.players());
            let mut x = p.generators()[gi].clone();
            x[player] = x[player].clone() + Rational::from_ratio(rng.random_range(1..=12), 4);
            let v = check_monotonicity(solve_shapley, &p, player, &x).unwrap();
            assert!(v.passed, "seed {seed}");
        }
    }

    #[test]
    fn continuity_zero_delta_passes() {
        let v = check_continuity(solve_shapley, &power_plant(), 0.0, 5, 1).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn continuity_power_plant_within_bound() {
        let p: BargainingProblem<f64> =
            BargainingProblem::new(vec![vec![8.0, 2.0], vec![2.0, 4.0]]).unwrap();
        let v = check_continuity(solve_shapley, &p, 0.01, 100, 3).unwrap();
        assert!(v.passed);
        assert!(v.observed_ratio.unwrap_or(0.0) <= 1.0);
    }

    #[test]
    fn continuity_fails_for_generator_dictator() {
        // Jumps between argmax generators around a total-utility tie.
        let dictator = |p: &BargainingProblem<f64>| {
            let (_, alt) = p.efficient_alternative();
            Ok(Allocation::new(alt.to_vec()))
        };
        let p = BargainingProblem::new(vec![vec![5.0, 5.0], vec![6.0, 4.0]]).unwrap();
        let v = check_continuity(dictator, &p, 0.01, 100, 11).unwrap();
        assert!(!v.passed);
        // Witness replays to the same violation.
        match v.witness.unwrap() {
            Witness::Perturbation { generators, .. } => {
                let perturbed = BargainingProblem::new(generators).unwrap();
                let replay = check_continuity_pair(dictator, &p, &perturbed).unwrap();
                assert!(!replay.passed);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn compromise_passes_for_surplus_shapley_on_table_one() {
        let v = check_compromise(shapley_surplus, &table_one()).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn compromise_bounds_coincide_on_singletons() {
        let c = SurplusProblem::new(2, vec![vec![rat(3), rat(1), rat(-2)]]).unwrap();
        let v = check_compromise(shapley_surplus, &c).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn compromise_fails_when_player_grabs_the_surplus() {
        let grabber = |c: &SurplusProblem<Rational>| {
            let mut out = vec![rat(0); c.players()];
            out[0] = c.efficient_total();
            Ok(Allocation::new(out))
        };
        let v = check_compromise(grabber, &table_one()).unwrap();
        assert!(!v.passed);
        match v.witness.unwrap() {
            Witness::Bounds { player, .. } => assert_eq!(player, 0),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn random_problem_is_deterministic_in_seed() {
        let a = random_problem::<Rational>(3, 5, -10..=10, 7);
        let b = random_problem::<Rational>(3, 5, -10..=10, 7);
        assert_eq!(a, b);
        let mut distinct = 0;
        for seed in 0..100 {
            let x = random_problem::<Rational>(3, 5, -10..=10, seed);
            let y = random_problem::<Rational>(3, 5, -10..=10, seed + 1);
            if x != y {
                distinct += 1;
            }
        }
        assert_eq!(distinct, 100);
    }
}
