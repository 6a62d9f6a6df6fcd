//! `effcert`: exact efficiency checks from the command line.
//!
//! Every command prints JSON (CSV for `sweep`) to stdout or `--out`. The
//! exit status carries the verdict; see [`outcome::Status`].

mod outcome;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use effcert::allocation::{
    allocation_verdict, embed_game, run_mechanism, verify_dic, SelectionRule,
};
use effcert::cheaptalk::{efficiency_predicates, quasiconcave_envelope_1d, verify_pbe};
use effcert::efficiency::{
    counting_bound, ex_ante_efficient_cone, ex_ante_efficient_dominance, Verdict,
};
use effcert::geometry2d::figure_data;
use effcert::io::{
    certificate_to_json, counting_to_json, game_from_json, instance_from_json, outcome_from_json,
    profile_from_json,
};
use effcert::persuasion::{
    build_threshold_env, concavify_1d, solve_bp, value_function_1d, verify_threshold_inefficiency,
    SenderReceiverGame, ThresholdEnv,
};
use effcert::rational::{frac, int, parse, to_json};
use effcert::sweep::{sweep_header, sweep_threshold, sweep_two_state, SweepRow};
use effcert::{sample, Game, Rational};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use outcome::{CliError, CliResult, Status};

#[derive(Parser)]
#[command(
    name = "effcert",
    version,
    about = "Exact ex-ante efficiency certificates for finite games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Counting bound plus an exact efficiency test with certificate.
    Check(CheckArgs),
    /// Support-counting bound only.
    Bound(GameOutcomeArgs),
    /// Sender-optimal persuasion outcome at the game's prior or `--prior`.
    Bp(BpArgs),
    /// Persuasion and efficiency over a grid of priors, as CSV.
    Sweep(SweepArgs),
    /// Check that a cheap-talk profile is an equilibrium.
    CheaptalkVerify(TalkArgs),
    /// Equilibrium check plus the efficiency predicates of its outcome.
    CheaptalkAnalyze(TalkArgs),
    /// Region test and persuasion verdict in the threshold environment.
    Threshold(ThresholdArgs),
    /// Run the ranking mechanism, check incentives and classify the outcome.
    Allocate(AllocateArgs),
    /// Planar feasible sets, outcome points and normal cones (two players).
    Figure(GameOutcomeArgs),
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GameOutcomeArgs {
    #[arg(long)]
    game: PathBuf,
    #[arg(long)]
    outcome: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Cone,
    Dominance,
    Both,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    io: GameOutcomeArgs,
    #[arg(long, value_enum, default_value = "both")]
    method: MethodArg,
}

#[derive(Args)]
struct BpArgs {
    #[arg(long)]
    game: PathBuf,
    /// Comma-separated prior in state order, e.g. `9/10,1/10`.
    #[arg(long)]
    prior: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    /// Two-state sender-receiver game; omit to sweep the threshold environment.
    #[arg(long)]
    game: Option<PathBuf>,
    /// Grid points on [0, 1] for a game, or the simplex denominator for the threshold environment.
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[command(flatten)]
    env: EnvArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EnvArgs {
    /// Number of risky actions.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Receiver threshold in (1/2, 1).
    #[arg(long = "T", value_name = "T")]
    threshold: Option<String>,
    /// Comma-separated sender payoffs of the risky actions (default 1, 2, …, n).
    #[arg(long)]
    sender: Option<String>,
}

#[derive(Args)]
struct TalkArgs {
    #[arg(long)]
    game: PathBuf,
    #[arg(long)]
    profile: PathBuf,
    #[arg(long)]
    prior: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    env: EnvArgs,
    /// Defaults to the uniform prior.
    #[arg(long)]
    prior: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Uniform,
    Scaled,
}

#[derive(Args)]
struct AllocateArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Override the instance's selection share.
    #[arg(long)]
    t: Option<String>,
    #[arg(long, value_enum, default_value = "uniform")]
    rule: RuleArg,
    /// Extra cone tests with random principal values.
    #[arg(long, default_value_t = 0)]
    draws: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn read_game(path: &Path) -> CliResult<Game> {
    Ok(game_from_json(&read_json(path)?)?)
}

fn read_sender_receiver(path: &Path) -> CliResult<SenderReceiverGame> {
    Ok(SenderReceiverGame::new(read_game(path)?)?)
}

fn rationals(text: &str) -> CliResult<Vec<Rational>> {
    Ok(text.split(',').map(parse).collect::<Result<_, _>>()?)
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Internal(format!("cannot write to stdout: {e}")))
        }
    }
}

fn emit_json(output: &Output, v: &Value) -> CliResult<()> {
    emit(output, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn check(a: &CheckArgs) -> CliResult<Status> {
    let game = read_game(&a.io.game)?;
    let mu = outcome_from_json(&game, &read_json(&a.io.outcome)?)?;
    let counting = counting_bound(&game, &mu)?;
    let mut reports = Vec::new();
    if matches!(a.method, MethodArg::Cone | MethodArg::Both) {
        reports.push(ex_ante_efficient_cone(&game, &mu)?);
    }
    if matches!(a.method, MethodArg::Dominance | MethodArg::Both) {
        reports.push(ex_ante_efficient_dominance(&game, &mu)?);
    }
    let verdict = reports[0].verdict;
    if reports.iter().any(|r| r.verdict != verdict) {
        return Err(CliError::Internal(
            "the cone and dominance tests disagree".into(),
        ));
    }
    emit_json(
        &a.io.output,
        &json!({
            "verdict": verdict.as_str(),
            "counting": counting_to_json(&game, &counting),
            "certificates": reports.iter().map(|r| certificate_to_json(&game, r)).collect::<Vec<_>>(),
        }),
    )?;
    Ok(Status::of(verdict))
}

fn bound(a: &GameOutcomeArgs) -> CliResult<Status> {
    let game = read_game(&a.game)?;
    let mu = outcome_from_json(&game, &read_json(&a.outcome)?)?;
    let c = counting_bound(&game, &mu)?;
    emit_json(&a.output, &counting_to_json(&game, &c))?;
    Ok(Status::Ok)
}

fn bp(a: &BpArgs) -> CliResult<Status> {
    let mut g = read_sender_receiver(&a.game)?;
    if let Some(p) = &a.prior {
        g = g.with_prior(rationals(p)?)?;
    }
    let prior = g.game().prior().to_vec();
    let sol = solve_bp(&g, &prior)?;
    let mut out = report::bp(g.game(), &sol);
    if g.num_states() == 2 {
        let cav = concavify_1d(&value_function_1d(&g)?)?.eval(&prior[1])?;
        if cav != sol.value {
            return Err(CliError::Internal(format!(
                "persuasion value {} differs from the concave envelope {cav}",
                sol.value
            )));
        }
        out["cav"] = to_json(&cav);
    }
    let cert = ex_ante_efficient_cone(g.game(), &sol.outcome)?;
    out["efficiency"] = certificate_to_json(g.game(), &cert);
    emit_json(&a.output, &out)?;
    Ok(Status::Ok)
}

fn threshold_env(e: &EnvArgs) -> CliResult<ThresholdEnv> {
    let t = e
        .threshold
        .as_deref()
        .ok_or_else(|| CliError::Input("--T is required for the threshold environment".into()))?;
    let sender = match &e.sender {
        Some(s) => rationals(s)?,
        None => (1..=e.n as i64).map(int).collect(),
    };
    Ok(build_threshold_env(e.n, parse(t)?, sender)?)
}

fn write_csv(output: &Output, header: Vec<String>, rows: &[SweepRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(format!("cannot flush CSV: {e}")))?;
    emit(
        output,
        &String::from_utf8(bytes).expect("CSV of UTF-8 fields"),
    )
}

fn sweep(a: &SweepArgs) -> CliResult<Status> {
    match &a.game {
        Some(path) => {
            let g = read_sender_receiver(path)?;
            let rows = sweep_two_state(&g, a.grid)?;
            write_csv(&a.output, sweep_header(g.game().states()), &rows)?;
        }
        None => {
            let env = threshold_env(&a.env)?;
            let rows = sweep_threshold(&env, a.grid)?;
            write_csv(&a.output, sweep_header(env.game.game().states()), &rows)?;
        }
    }
    Ok(Status::Ok)
}

fn talk_inputs(
    a: &TalkArgs,
) -> CliResult<(
    SenderReceiverGame,
    effcert::cheaptalk::CheapTalkProfile,
    Vec<Rational>,
)> {
    let mut g = read_sender_receiver(&a.game)?;
    if let Some(p) = &a.prior {
        g = g.with_prior(rationals(p)?)?;
    }
    let profile = profile_from_json(&g, &read_json(&a.profile)?)?;
    let prior = g.game().prior().to_vec();
    Ok((g, profile, prior))
}

fn cheaptalk_verify(a: &TalkArgs) -> CliResult<Status> {
    let (g, profile, prior) = talk_inputs(a)?;
    let rep = verify_pbe(&g, &profile, &prior)?;
    emit_json(&a.output, &report::pbe(&g, profile.messages(), &rep))?;
    Ok(if rep.is_equilibrium {
        Status::Ok
    } else {
        Status::NotEquilibrium
    })
}

fn cheaptalk_analyze(a: &TalkArgs) -> CliResult<Status> {
    let (g, profile, prior) = talk_inputs(a)?;
    let rep = verify_pbe(&g, &profile, &prior)?;
    if !rep.is_equilibrium {
        emit_json(
            &a.output,
            &json!({"equilibrium": report::pbe(&g, profile.messages(), &rep)}),
        )?;
        return Ok(Status::NotEquilibrium);
    }
    let eff = efficiency_predicates(&g, &profile, &prior)?;
    let envelopes = if g.num_states() == 2 {
        let v = value_function_1d(&g)?;
        let p1 = &prior[1];
        let quasi = quasiconcave_envelope_1d(&v)
            .ok()
            .map(|q| q.eval(p1))
            .transpose()?;
        Some(json!({
            "value": to_json(&v.eval(p1)?),
            "quasiconcave": quasi.as_ref().map_or(Value::Null, to_json),
            "concave": to_json(&concavify_1d(&v)?.eval(p1)?),
        }))
    } else {
        None
    };
    emit_json(
        &a.output,
        &report::cheaptalk_efficiency(&g, g.game(), profile.messages(), &eff, envelopes),
    )?;
    Ok(Status::of(eff.cone.verdict))
}

fn threshold(a: &ThresholdArgs) -> CliResult<Status> {
    let env = threshold_env(&a.env)?;
    let prior = match &a.prior {
        Some(p) => rationals(p)?,
        None => vec![frac(1, env.n as i64 + 1); env.n + 1],
    };
    let rep = verify_threshold_inefficiency(&env, &prior)?;
    emit_json(&a.output, &report::threshold(&env.game, &rep))?;
    Ok(Status::of(rep.cone_verdict))
}

fn allocate(a: &AllocateArgs) -> CliResult<Status> {
    let mut inst = instance_from_json(&read_json(&a.instance)?)?;
    if let Some(t) = &a.t {
        inst = inst.with_t(parse(t)?)?;
    }
    let rule = match a.rule {
        RuleArg::Uniform => SelectionRule::Uniform,
        RuleArg::Scaled => SelectionRule::Scaled,
    };
    let mech = run_mechanism(&inst, rule)?;
    let dic = verify_dic(&inst, &mech.outcome)?;
    let verdict = allocation_verdict(&inst, &mech, None)?;
    let embedded = embed_game(&inst, inst.values())?;

    let mut draws = Vec::new();
    if verdict.verdict.is_some() {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        for _ in 0..a.draws {
            let values = sample::principal_values(&mut rng, inst.num_states(), inst.agents(), 1000);
            let v = allocation_verdict(&inst, &mech, Some(&values))?;
            draws.push(json!({
                "values": values.iter().map(|r| effcert::rational::vec_to_json(r)).collect::<Vec<_>>(),
                "verdict": v.verdict.map(Verdict::as_str),
            }));
        }
    }
    emit_json(
        &a.output,
        &report::allocation(&inst, &embedded, &mech, &dic, &verdict, &draws),
    )?;
    Ok(match (dic.holds, verdict.verdict) {
        (false, _) => Status::NotEquilibrium,
        (true, None) => Status::NoVerdict,
        (true, Some(v)) => Status::of(v),
    })
}

fn figure(a: &GameOutcomeArgs) -> CliResult<Status> {
    let game = read_game(&a.game)?;
    let mu = outcome_from_json(&game, &read_json(&a.outcome)?)?;
    let fig = figure_data(&game, &mu)?;
    emit_json(&a.output, &fig)?;
    Ok(if fig["efficient"] == Value::Bool(true) {
        Status::Ok
    } else {
        Status::Inefficient
    })
}

fn run(cli: &Cli) -> CliResult<Status> {
    match &cli.command {
        Command::Check(a) => check(a),
        Command::Bound(a) => bound(a),
        Command::Bp(a) => bp(a),
        Command::Sweep(a) => sweep(a),
        Command::CheaptalkVerify(a) => cheaptalk_verify(a),
        Command::CheaptalkAnalyze(a) => cheaptalk_analyze(a),
        Command::Threshold(a) => threshold(a),
        Command::Allocate(a) => allocate(a),
        Command::Figure(a) => figure(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return ExitCode::from(if ok {
                0
            } else {
                Status::InputError.code() as u8
            });
        }
    };
    let status = run(&cli).unwrap_or_else(|e| {
        eprintln!("effcert: {e}");
        e.status()
    });
    ExitCode::from(status.code() as u8)
}
