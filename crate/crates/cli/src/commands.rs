//! The solve / check / estimate / convert subcommands.

use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};

use fairshare_core::axioms::{
    self, check_additivity, check_anonymity, check_compromise, check_continuity, check_dummy,
    check_efficiency, check_monotonicity, raise_instance, AxiomVerdict,
};
use fairshare_core::problems::CommonResource;
use fairshare_core::solutions::{
    eans, esil, shapley_montecarlo, shapley_standalone, shapley_surplus, transfers,
};
use fairshare_core::{
    Allocation, BargainingProblem, Error, Polytope, Rational, Scalar, StandAloneGame,
    SurplusProblem,
};

use crate::file::{build_problem, Backend, Loaded, LoadedKind, NumberLit, ProblemFile};
use crate::output::{
    claims_json, format_scalar, format_sig, format_vector, payments_json, print_claims_table,
    scalar_json, vector_json, DEFAULT_PRECISION,
};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SolutionName {
    Shapley,
    Eans,
    Esil,
}

impl SolutionName {
    fn label(self) -> &'static str {
        match self {
            SolutionName::Shapley => "shapley",
            SolutionName::Eans => "eans",
            SolutionName::Esil => "esil",
        }
    }

    fn apply<T: Scalar>(self, game: &StandAloneGame<T>) -> Allocation<T> {
        match self {
            SolutionName::Shapley => shapley_standalone(game),
            SolutionName::Eans => eans(game),
            SolutionName::Esil => esil(game),
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Problem file (JSON)
    pub file: PathBuf,
    /// Solution concept
    #[arg(long, value_enum, default_value = "shapley")]
    pub solution: SolutionName,
    /// Print the full claims table
    #[arg(long)]
    pub claims: bool,
    /// Print the chosen alternative and the routed transfer schedule
    #[arg(long)]
    pub transfers: bool,
    /// Emit a JSON report on stdout (human report moves to stderr)
    #[arg(long)]
    pub json: bool,
    /// Significant digits for float output
    #[arg(long)]
    pub precision: Option<usize>,
    /// Override the file's numeric backend
    #[arg(long, value_enum)]
    pub backend: Option<Backend>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Problem file (JSON)
    pub file: PathBuf,
    /// Axiom to check, or "all"
    pub axiom: String,
    /// Randomized instances per axiom
    #[arg(long, default_value_t = 20)]
    pub trials: u32,
    /// Seed for randomized instances
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Solution concept under test
    #[arg(long, value_enum, default_value = "shapley")]
    pub solution: SolutionName,
    /// Emit a JSON report on stdout
    #[arg(long)]
    pub json: bool,
    /// Override the file's numeric backend
    #[arg(long, value_enum)]
    pub backend: Option<Backend>,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    /// Problem file (JSON); must supply a claim-oracle application
    pub file: PathBuf,
    /// Number of sampled player orders
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    /// Seed of the counter-based sample stream
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit a JSON report on stdout
    #[arg(long)]
    pub json: bool,
    /// Significant digits for float output
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    /// Problem file (JSON)
    pub file: PathBuf,
    /// Override the file's numeric backend
    #[arg(long, value_enum)]
    pub backend: Option<Backend>,
}

fn effective_backend(file: &ProblemFile, flag: Option<Backend>) -> Backend {
    flag.unwrap_or_else(|| file.backend())
}

// ---------------------------------------------------------------------
// solve

pub fn solve(args: &SolveArgs) -> Result<i32, CliError> {
    let file = ProblemFile::load(&args.file)?;
    match effective_backend(&file, args.backend) {
        Backend::Exact => solve_with::<Rational>(&file, args, "exact"),
        Backend::Float => solve_with::<f64>(&file, args, "float"),
    }
}

fn solve_with<T: Scalar>(
    file: &ProblemFile,
    args: &SolveArgs,
    backend: &str,
) -> Result<i32, CliError> {
    let precision = args.precision.unwrap_or(DEFAULT_PRECISION);
    let loaded: Loaded<T> = build_problem(file)?;
    match &loaded.kind {
        LoadedKind::Plain { problem, .. } => {
            let game = problem.stand_alone_game().map_err(CliError::infeasible_from)?;
            let psi = args.solution.apply(&game);
            let (alt_index, alt) = problem.efficient_alternative();
            let report = transfers(alt, None, &psi).map_err(CliError::infeasible_from)?;
            render_solution(
                args,
                backend,
                precision,
                &game,
                &psi,
                alt_index,
                &report,
                None,
            );
            Ok(0)
        }
        LoadedKind::Surplus { problem, .. } => {
            if args.solution != SolutionName::Shapley {
                return Err(CliError::infeasible(
                    "eans and esil are defined for plain problems only",
                ));
            }
            let game = problem.surplus_game().map_err(CliError::infeasible_from)?;
            let phi = shapley_surplus(problem).map_err(CliError::infeasible_from)?;
            let n = problem.players();
            let (alt_index, alt) = problem.efficient_alternative();
            let surplus = alt[n].clone();
            let report =
                transfers(&alt[..n], Some(&surplus), &phi).map_err(CliError::infeasible_from)?;
            render_solution(
                args,
                backend,
                precision,
                &game,
                &phi,
                alt_index,
                &report,
                None,
            );
            Ok(0)
        }
        LoadedKind::Analytic { resource } => {
            let game = resource
                .oracle
                .tabulate()
                .map_err(CliError::infeasible_from)?;
            let psi = args.solution.apply(&game);
            let report = transfers(&resource.efficient_utilities, None, &psi)
                .map_err(CliError::infeasible_from)?;
            render_solution(args, "float", precision, &game, &psi, 0, &report, Some(resource));
            Ok(0)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn render_solution<T: Scalar>(
    args: &SolveArgs,
    backend: &str,
    precision: usize,
    game: &StandAloneGame<T>,
    solution: &Allocation<T>,
    alt_index: usize,
    report: &fairshare_core::SolutionReport<T>,
    resource: Option<&CommonResource>,
) {
    let mut human = Vec::new();
    human.push(format!(
        "solution ({}): {}",
        args.solution.label(),
        format_vector(solution.values(), precision)
    ));
    if args.claims {
        human.push(String::new()); // placeholder, claims table printed below
    }
    if args.transfers {
        human.push(format!(
            "alternative: #{} {}{}",
            alt_index + 1,
            format_vector(&report.alternative.utilities, precision),
            match &report.alternative.surplus {
                Some(s) => format!(" with surplus {}", format_scalar(s, precision)),
                None => String::new(),
            }
        ));
        if let Some(r) = resource {
            let alloc: Vec<String> = r
                .efficient_allocation
                .iter()
                .map(|w| format_sig(*w, precision))
                .collect();
            human.push(format!("efficient allocation: ({})", alloc.join(", ")));
        }
        human.push(format!(
            "net transfers: {}",
            format_vector(&report.net_transfers, precision)
        ));
        if report.payments.is_empty() {
            human.push("payments: none".to_string());
        } else {
            human.push("payments:".to_string());
            for p in &report.payments {
                human.push(format!(
                    "  {} -> {}: {}",
                    p.from,
                    p.to,
                    format_scalar(&p.amount, precision)
                ));
            }
        }
    }

    if args.json {
        let mut obj = json!({
            "n": game.players(),
            "backend": backend,
            "solution": {
                "name": args.solution.label(),
                "values": vector_json(solution.values()),
            },
        });
        let map = obj.as_object_mut().unwrap();
        if args.claims {
            map.insert("claims".to_string(), claims_json(game));
        }
        if args.transfers {
            map.insert(
                "alternative".to_string(),
                json!({
                    "index": alt_index + 1,
                    "utilities": vector_json(&report.alternative.utilities),
                    "surplus": report.alternative.surplus.as_ref().map(scalar_json),
                }),
            );
            if let Some(r) = resource {
                map.insert(
                    "efficient_allocation".to_string(),
                    json!(r.efficient_allocation),
                );
            }
            map.insert(
                "net_transfers".to_string(),
                vector_json(&report.net_transfers),
            );
            map.insert("payments".to_string(), payments_json(&report.payments));
        }
        println!("{}", serde_json::to_string(&obj).unwrap());
        for line in &human {
            if !line.is_empty() {
                eprintln!("{line}");
            }
        }
    } else {
        for line in &human {
            if line.is_empty() {
                print_claims_table(game, precision);
            } else {
                println!("{line}");
            }
        }
    }
}

// ---------------------------------------------------------------------
// check

#[derive(Clone, Copy, PartialEq, Eq)]
enum AxiomChoice {
    Efficiency,
    Anonymity,
    Dummy,
    Additivity,
    Monotonicity,
    Continuity,
    Compromise,
}

const ALL_AXIOMS: [AxiomChoice; 7] = [
    AxiomChoice::Efficiency,
    AxiomChoice::Anonymity,
    AxiomChoice::Dummy,
    AxiomChoice::Additivity,
    AxiomChoice::Monotonicity,
    AxiomChoice::Continuity,
    AxiomChoice::Compromise,
];

impl AxiomChoice {
    fn parse(name: &str) -> Option<Vec<AxiomChoice>> {
        match name {
            "all" => Some(ALL_AXIOMS.to_vec()),
            "efficiency" => Some(vec![AxiomChoice::Efficiency]),
            "anonymity" => Some(vec![AxiomChoice::Anonymity]),
            "dummy" => Some(vec![AxiomChoice::Dummy]),
            "additivity" => Some(vec![AxiomChoice::Additivity]),
            "monotonicity" => Some(vec![AxiomChoice::Monotonicity]),
            "continuity" => Some(vec![AxiomChoice::Continuity]),
            "compromise" => Some(vec![AxiomChoice::Compromise]),
            _ => None,
        }
    }

    fn label(self) -> &'static str {
        match self {
            AxiomChoice::Efficiency => "efficiency",
            AxiomChoice::Anonymity => "anonymity",
            AxiomChoice::Dummy => "dummy",
            AxiomChoice::Additivity => "additivity",
            AxiomChoice::Monotonicity => "monotonicity",
            AxiomChoice::Continuity => "continuity",
            AxiomChoice::Compromise => "compromise",
        }
    }
}

enum CheckOutcome<T> {
    Ran(AxiomVerdict<T>),
    Skipped(&'static str, String),
}

const CONTINUITY_DELTA: f64 = 0.01;

pub fn check(args: &CheckArgs) -> Result<i32, CliError> {
    if args.trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let Some(axioms) = AxiomChoice::parse(&args.axiom) else {
        return Err(CliError::usage(format!(
            "unknown axiom {:?}; expected one of efficiency, anonymity, dummy, additivity, \
             monotonicity, continuity, compromise, all",
            args.axiom
        )));
    };
    let file = ProblemFile::load(&args.file)?;
    match effective_backend(&file, args.backend) {
        Backend::Exact => check_with::<Rational>(&file, args, axioms),
        Backend::Float => check_with::<f64>(&file, args, axioms),
    }
}

fn check_with<T: Scalar>(
    file: &ProblemFile,
    args: &CheckArgs,
    axioms: Vec<AxiomChoice>,
) -> Result<i32, CliError> {
    let loaded: Loaded<T> = build_problem(file)?;
    let mut outcomes: Vec<CheckOutcome<T>> = Vec::new();
    match &loaded.kind {
        LoadedKind::Plain { problem, .. } => {
            let sol = plain_solution::<T>(args.solution);
            for axiom in axioms {
                outcomes.push(run_plain_check(&sol, problem, axiom, args)?);
            }
        }
        LoadedKind::Surplus { problem, .. } => {
            if args.solution != SolutionName::Shapley {
                return Err(CliError::infeasible(
                    "eans and esil are defined for plain problems only",
                ));
            }
            for axiom in axioms {
                outcomes.push(run_surplus_check(problem, axiom, args)?);
            }
        }
        LoadedKind::Analytic { resource } => {
            for axiom in axioms {
                outcomes.push(run_analytic_check(resource, axiom, args)?);
            }
        }
    }
    report_checks(args, &outcomes)
}

fn plain_solution<T: Scalar>(
    name: SolutionName,
) -> impl Fn(&BargainingProblem<T>) -> Result<Allocation<T>, Error> {
    move |p: &BargainingProblem<T>| {
        let game = p.stand_alone_game()?;
        Ok(name.apply(&game))
    }
}

fn derived_seed(seed: u64, k: u64) -> u64 {
    seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn run_plain_check<T, F>(
    sol: &F,
    problem: &BargainingProblem<T>,
    axiom: AxiomChoice,
    args: &CheckArgs,
) -> Result<CheckOutcome<T>, CliError>
where
    T: Scalar,
    F: Fn(&BargainingProblem<T>) -> Result<Allocation<T>, Error>,
{
    let n = problem.players();
    let verdict = match axiom {
        AxiomChoice::Efficiency => check_efficiency(sol, problem),
        AxiomChoice::Anonymity => {
            first_failure((0..args.trials).map(|k| {
                let rho = axioms::random_permutation(n, derived_seed(args.seed, k as u64));
                check_anonymity(sol, problem, &rho)
            }))
        }
        AxiomChoice::Dummy => {
            let mut ran = Vec::new();
            for player in 0..n {
                match check_dummy(sol, problem, player) {
                    Ok(v) => ran.push(Ok(v)),
                    Err(Error::HypothesisNotMet(_)) => continue,
                    Err(e) => ran.push(Err(e)),
                }
            }
            if ran.is_empty() {
                return Ok(CheckOutcome::Skipped(
                    axiom.label(),
                    "no player satisfies the dummy hypothesis".to_string(),
                ));
            }
            first_failure(ran.into_iter())
        }
        AxiomChoice::Additivity => first_failure((0..args.trials).map(|k| {
            let partner = axioms::random_problem::<T>(
                n,
                problem.generators().len().clamp(1, 8),
                -10..=10,
                derived_seed(args.seed, 1000 + k as u64),
            );
            check_additivity(sol, problem, &partner)
        })),
        AxiomChoice::Monotonicity => first_failure((0..args.trials).map(|k| {
            let (player, point) =
                raise_instance(problem, derived_seed(args.seed, 2000 + k as u64));
            check_monotonicity(sol, problem, player, &point)
        })),
        AxiomChoice::Continuity => {
            check_continuity(sol, problem, CONTINUITY_DELTA, args.trials, args.seed)
        }
        AxiomChoice::Compromise => {
            return Ok(CheckOutcome::Skipped(
                axiom.label(),
                "compromise applies to surplus problems".to_string(),
            ))
        }
    };
    Ok(CheckOutcome::Ran(verdict.map_err(CliError::infeasible_from)?))
}

fn run_surplus_check<T: Scalar>(
    problem: &SurplusProblem<T>,
    axiom: AxiomChoice,
    args: &CheckArgs,
) -> Result<CheckOutcome<T>, CliError> {
    let n = problem.players();
    let sol = shapley_surplus::<T>;
    let verdict = match axiom {
        AxiomChoice::Efficiency => check_efficiency(sol, problem),
        AxiomChoice::Anonymity => first_failure((0..args.trials).map(|k| {
            let rho = axioms::random_permutation(n, derived_seed(args.seed, k as u64));
            check_anonymity(sol, problem, &rho)
        })),
        AxiomChoice::Dummy => {
            return Ok(CheckOutcome::Skipped(
                axiom.label(),
                "the surplus suite replaces dummy with compromise".to_string(),
            ))
        }
        AxiomChoice::Additivity => first_failure((0..args.trials).map(|k| {
            let partner = axioms::random_surplus_problem::<T>(
                n,
                problem.generators().len().clamp(1, 8),
                -10..=10,
                derived_seed(args.seed, 1000 + k as u64),
            );
            check_additivity(sol, problem, &partner)
        })),
        AxiomChoice::Monotonicity => first_failure((0..args.trials).map(|k| {
            let (player, point) =
                raise_instance(problem, derived_seed(args.seed, 2000 + k as u64));
            check_monotonicity(sol, problem, player, &point)
        })),
        AxiomChoice::Continuity => {
            check_continuity(sol, problem, CONTINUITY_DELTA, args.trials, args.seed)
        }
        AxiomChoice::Compromise => check_compromise(sol, problem),
    };
    Ok(CheckOutcome::Ran(verdict.map_err(CliError::infeasible_from)?))
}

fn run_analytic_check<T: Scalar>(
    resource: &CommonResource,
    axiom: AxiomChoice,
    args: &CheckArgs,
) -> Result<CheckOutcome<T>, CliError> {
    match axiom {
        AxiomChoice::Efficiency => {
            if args.solution != SolutionName::Shapley {
                return Err(CliError::infeasible(
                    "eans and esil are defined for plain problems only",
                ));
            }
            let game = resource
                .oracle
                .tabulate()
                .map_err(CliError::infeasible_from)?;
            let psi = shapley_standalone(&game);
            let expected = game.grand_value();
            let tol = 1e-7 * (expected.abs() / 1e3).max(1.0);
            let diff = psi.total() - expected;
            let witness = format!("total {} vs claim {}", psi.total(), expected);
            let mut verdict: AxiomVerdict<T> = AxiomVerdict {
                axiom: fairshare_core::axioms::Axiom::Efficiency,
                passed: diff.abs() <= tol,
                witness: None,
                tolerance: tol,
                observed_ratio: None,
            };
            if !verdict.passed {
                verdict.witness = Some(fairshare_core::axioms::Witness::Total {
                    observed: T::from_f64(psi.total()),
                    expected: T::from_f64(*expected),
                });
                let _ = witness;
            }
            Ok(CheckOutcome::Ran(verdict))
        }
        other => Ok(CheckOutcome::Skipped(
            other.label(),
            "unsupported for oracle-backed problems: claims only, no set surgery".to_string(),
        )),
    }
}

fn first_failure<T: Scalar>(
    verdicts: impl Iterator<Item = Result<AxiomVerdict<T>, Error>>,
) -> Result<AxiomVerdict<T>, Error> {
    let mut last = None;
    for v in verdicts {
        let v = v?;
        if !v.passed {
            return Ok(v);
        }
        last = Some(v);
    }
    Ok(last.expect("at least one trial"))
}

fn report_checks<T: Scalar>(
    args: &CheckArgs,
    outcomes: &[CheckOutcome<T>],
) -> Result<i32, CliError> {
    let mut any_failed = false;
    let mut human = Vec::new();
    let mut entries = Vec::new();
    for outcome in outcomes {
        match outcome {
            CheckOutcome::Ran(v) => {
                any_failed |= !v.passed;
                human.push(v.to_string());
                let mut obj = json!({
                    "axiom": v.axiom.to_string(),
                    "passed": v.passed,
                    "tolerance": v.tolerance,
                });
                let map = obj.as_object_mut().unwrap();
                if let Some(w) = &v.witness {
                    map.insert("witness".to_string(), json!(w.to_string()));
                }
                if let Some(r) = v.observed_ratio {
                    map.insert("observed_ratio".to_string(), json!(r));
                }
                entries.push(obj);
            }
            CheckOutcome::Skipped(axiom, reason) => {
                human.push(format!("{axiom}: skipped ({reason})"));
                entries.push(json!({"axiom": axiom, "skipped": reason}));
            }
        }
    }
    if args.json {
        let obj = json!({
            "solution": args.solution.label(),
            "seed": args.seed,
            "trials": args.trials,
            "checks": Value::Array(entries),
        });
        println!("{}", serde_json::to_string(&obj).unwrap());
        for line in &human {
            eprintln!("{line}");
        }
    } else {
        for line in &human {
            println!("{line}");
        }
    }
    Ok(if any_failed { 1 } else { 0 })
}

// ---------------------------------------------------------------------
// estimate

pub fn estimate(args: &EstimateArgs) -> Result<i32, CliError> {
    if args.samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    let precision = args.precision.unwrap_or(DEFAULT_PRECISION);
    let file = ProblemFile::load(&args.file)?;
    // The estimator is float-domain; backend choice does not affect it.
    let loaded: Loaded<f64> = build_problem(&file)?;
    let oracle = match &loaded.kind {
        LoadedKind::Plain { oracle: Some(o), .. } => o.clone(),
        LoadedKind::Surplus { oracle: Some(o), .. } => o.clone(),
        LoadedKind::Analytic { resource } => resource.oracle.clone(),
        _ => {
            return Err(CliError::infeasible(
                "estimate needs a claim-oracle application (public-good or common-resource)",
            ))
        }
    };
    let report =
        shapley_montecarlo(&oracle, args.samples, args.seed).map_err(CliError::infeasible_from)?;

    if let Some(groups) = &loaded.groups {
        let mut rows = Vec::new();
        let mut start = 0usize;
        for &(count, value) in groups {
            let members = &report.estimate.values()[start..start + count];
            let mean = members.iter().sum::<f64>() / count as f64;
            let se = (report.standard_error[start..start + count]
                .iter()
                .map(|s| s * s)
                .sum::<f64>())
            .sqrt()
                / count as f64;
            rows.push((count, value, mean, se));
            start += count;
        }
        if args.json {
            let obj = json!({
                "samples": report.samples,
                "seed": report.seed,
                "groups": rows.iter().map(|(count, value, mean, se)| json!({
                    "count": count,
                    "value": value,
                    "estimate": mean,
                    "standard_error": se,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string(&obj).unwrap());
        } else {
            println!("estimate over {} samples (seed {}):", report.samples, report.seed);
            for (count, value, mean, se) in rows {
                println!(
                    "  {count} players with value {}: {} (stderr {})",
                    format_sig(value, precision),
                    format_sig(mean, precision),
                    format_sig(se, precision)
                );
            }
        }
    } else if args.json {
        let obj = json!({
            "samples": report.samples,
            "seed": report.seed,
            "estimates": report.estimate.values(),
            "standard_errors": report.standard_error,
        });
        println!("{}", serde_json::to_string(&obj).unwrap());
    } else {
        println!("estimate over {} samples (seed {}):", report.samples, report.seed);
        for (i, (e, se)) in report
            .estimate
            .values()
            .iter()
            .zip(&report.standard_error)
            .enumerate()
        {
            println!(
                "  player {}: {} (stderr {})",
                i + 1,
                format_sig(*e, precision),
                format_sig(*se, precision)
            );
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------
// convert

pub fn convert(args: &ConvertArgs) -> Result<i32, CliError> {
    let file = ProblemFile::load(&args.file)?;
    match effective_backend(&file, args.backend) {
        Backend::Exact => convert_with::<Rational>(&file, Backend::Exact),
        Backend::Float => convert_with::<f64>(&file, Backend::Float),
    }
}

fn convert_with<T: Scalar>(file: &ProblemFile, backend: Backend) -> Result<i32, CliError> {
    let loaded: Loaded<T> = build_problem(file)?;
    let (surplus, generators): (bool, Vec<Vec<NumberLit>>) = match &loaded.kind {
        LoadedKind::Plain { problem, .. } => (false, generator_lits(problem.generators())),
        LoadedKind::Surplus { problem, .. } => (true, generator_lits(problem.generators())),
        LoadedKind::Analytic { .. } => {
            return Err(CliError::infeasible(
                "common-resource problems have no finite generator form",
            ))
        }
    };
    let out = ProblemFile {
        n: loaded.n,
        generators: Some(generators),
        surplus,
        application: None,
        backend: Some(backend),
    };
    println!("{}", serde_json::to_string(&out).unwrap());
    Ok(0)
}

fn generator_lits<T: Scalar>(generators: &[Vec<T>]) -> Vec<Vec<NumberLit>> {
    generators
        .iter()
        .map(|g| {
            g.iter()
                .map(|v| {
                    if T::EXACT {
                        NumberLit::Text(v.to_string())
                    } else {
                        NumberLit::Float(v.to_f64())
                    }
                })
                .collect()
        })
        .collect()
}
