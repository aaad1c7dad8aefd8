//! `ct`: causal-team reasoning from the command line.
//!
//! Subcommands: `check` (satisfaction), `intervene` (the do-operator),
//! `entail` (brute-force entailment with counterexamples), `charform`
//! (characterization formulas), `resolve` (resolutions), `proofcheck`
//! (derivation files), `enumerate` (universe counts), and `show` (row
//! tables).
//!
//! Exit codes are a stable contract: 0 when the query holds / the check
//! passes, 1 when it fails, 2 on usage, parse, or validation errors.  All
//! output is deterministic given identical inputs, flags, and seeds.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use causal_teams::{
    beta_dc, beta_en, check as check_derivation, chi_k, define_downward_class,
    define_flat_class, entails_ct, entails_gct, enum_assignments, enum_causal_teams,
    enum_function_components, enum_gcts_up_to_size, enum_sem, intervene_ct, intervene_gct,
    leadsto, no_mix, one_fun, parse, parse_derivation, phi_f, render, representatives,
    resolution_disjunction, resolutions, theta_t, unf, validate, xi_star, xi_t, Assignment,
    Calculus, CausalTeam, Counterexample, Dialect, EquationSeq, Formula, FunctionComponent,
    GeneralizedCausalTeam, Signature, TeamClass, UniverseBudget,
};
use ct_cli::tables::{gct_table, team_table};
use ct_cli::workspace::{TeamEntry, Workspace};

#[derive(Parser)]
#[command(
    name = "ct",
    version,
    about = "Model checking, interventions, entailment, characterization \
             formulas, resolutions, and derivation checking for causal teams"
)]
struct Cli {
    /// Number of worker threads for parallel evaluation (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Emit machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check whether teams satisfy a formula.
    Check(CheckArgs),
    /// Apply an intervention do(X=x, ...) to a team.
    Intervene(InterveneArgs),
    /// Decide an entailment by enumerating teams over the signature.
    Entail(EntailArgs),
    /// Emit a characterization formula.
    Charform(CharformArgs),
    /// List the resolutions of a formula.
    Resolve(ResolveArgs),
    /// Check a derivation file against a calculus.
    Proofcheck(ProofcheckArgs),
    /// Count the assignments, components, and teams over a signature.
    Enumerate(EnumerateArgs),
    /// Print teams as row tables.
    Show(ShowArgs),
}

/// Where the signature (and the teams, if any) come from.
#[derive(Args)]
struct Source {
    /// Workspace file providing the signature, components, and teams.
    #[arg(long, short = 'w', value_name = "FILE")]
    workspace: Option<PathBuf>,
    /// Inline signature instead of a workspace, e.g. "X:0,1 Y:1,2,3".
    #[arg(long, short = 's', value_name = "SPEC", conflicts_with = "workspace")]
    signature: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Workspace> {
        match (&self.workspace, &self.signature) {
            (Some(path), _) => load_workspace(path),
            (None, Some(spec)) => Ok(Workspace::bare(parse_signature_spec(spec)?)),
            (None, None) => bail!("pass --workspace FILE or --signature SPEC"),
        }
    }
}

fn load_workspace(path: &Path) -> Result<Workspace> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Workspace::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn parse_signature_spec(spec: &str) -> Result<Arc<Signature>> {
    let mut entries = Vec::new();
    for entry in spec
        .split(|c: char| c == ';' || c.is_whitespace())
        .filter(|e| !e.is_empty())
    {
        let (name, values) = entry.split_once(':').ok_or_else(|| {
            anyhow!("signature entries look like NAME:v1,v2,... (got `{entry}`)")
        })?;
        let values: Vec<String> = values
            .split(',')
            .filter(|v| !v.is_empty())
            .map(str::to_string)
            .collect();
        entries.push((name.to_string(), values));
    }
    Signature::new(entries).map_err(|e| anyhow!("{e}"))
}

/// Enumeration limits; sampling kicks in past the exact cap.
#[derive(Args)]
struct BudgetArgs {
    /// Enumerate generalized teams exactly while |Sem| stays within this cap.
    #[arg(long, value_name = "N", default_value_t = UniverseBudget::default().max_sem_size)]
    max_sem_size: usize,
    /// Number of sampled teams once exact enumeration is out of budget.
    #[arg(long, value_name = "N", default_value_t = UniverseBudget::default().sample_count)]
    samples: usize,
    /// Seed for the sampling RNG.
    #[arg(long, value_name = "SEED", default_value_t = 0)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> UniverseBudget {
        UniverseBudget {
            max_sem_size: self.max_sem_size,
            sample_count: self.samples,
            rng_seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Ct,
    Gct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DialectArg {
    /// Use dependence atoms where constancy must be expressed.
    Cod,
    /// Use global disjunctions instead.
    Coi,
}

impl DialectArg {
    fn dialect(self) -> Dialect {
        match self {
            DialectArg::Cod => Dialect::Cod,
            DialectArg::Coi => Dialect::CoI,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Check(args) => run_check(args, cli.json),
        Cmd::Intervene(args) => run_intervene(args, cli.json),
        Cmd::Entail(args) => run_entail(args, cli.json),
        Cmd::Charform(args) => run_charform(args, cli.json),
        Cmd::Resolve(args) => run_resolve(args, cli.json),
        Cmd::Proofcheck(args) => run_proofcheck(args, cli.json),
        Cmd::Enumerate(args) => run_enumerate(args, cli.json),
        Cmd::Show(args) => run_show(args),
    }
}

fn parse_formula(text: &str, sig: &Arc<Signature>) -> Result<Formula> {
    let phi = parse(text, sig).map_err(|e| anyhow!("in `{text}`: {e}"))?;
    validate(&phi, sig).map_err(|e| anyhow!("in `{text}`: {e}"))?;
    Ok(phi)
}

// ---------------------------------------------------------------- check --

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: Source,
    /// Team to check; repeat to check several (evaluated in parallel).
    #[arg(long, short = 't', value_name = "NAME", required = true)]
    team: Vec<String>,
    /// On a holding top-level disjunction, print a witness split.
    #[arg(long)]
    witness: bool,
    /// Formula to check, e.g. "X=1 -> Y=2".
    formula: String,
}

fn run_check(args: &CheckArgs, json: bool) -> Result<i32> {
    let ws = args.source.load()?;
    let phi = parse_formula(&args.formula, &ws.sig)?;
    let entries: Vec<(&str, &TeamEntry)> = args
        .team
        .iter()
        .map(|name| {
            ws.team(name)
                .map(|t| (name.as_str(), t))
                .ok_or_else(|| anyhow!("unknown team `{name}`"))
        })
        .collect::<Result<_>>()?;
    let verdicts: Vec<bool> = entries
        .par_iter()
        .map(|(_, entry)| match entry {
            TeamEntry::Ct { team, .. } => causal_teams::satisfies_ct(team, &phi),
            TeamEntry::Gct { team } => causal_teams::satisfies_gct(team, &phi),
        })
        .collect::<Result<_, _>>()?;

    let mut results = Vec::new();
    for ((name, entry), holds) in entries.iter().zip(&verdicts) {
        let witness = if args.witness && *holds {
            Some(witness_text(entry, &phi, &ws)?)
        } else {
            None
        };
        results.push((*name, *holds, witness));
    }

    if json {
        let items: Vec<serde_json::Value> = results
            .iter()
            .map(|(name, holds, witness)| {
                serde_json::json!({
                    "team": name,
                    "holds": holds,
                    "witness": witness,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::json!({
                "formula": render(&phi, &ws.sig),
                "results": items,
            })
        );
    } else {
        for (name, holds, witness) in &results {
            println!("{name}: {}", if *holds { "holds" } else { "fails" });
            if let Some(w) = witness {
                for line in w.lines() {
                    println!("  {line}");
                }
            }
        }
    }
    Ok(if verdicts.iter().all(|h| *h) { 0 } else { 1 })
}

fn row_label(row: &Assignment, sig: &Signature) -> String {
    let cells: Vec<&str> = (0..sig.var_count())
        .map(|v| sig.value_name(v, row.get(v)))
        .collect();
    format!("({})", cells.join(" "))
}

/// Describes how a holding disjunction is witnessed: a split of the team
/// for `\/`, a globally holding side for `\\/`.
fn witness_text(entry: &TeamEntry, phi: &Formula, ws: &Workspace) -> Result<String> {
    match phi {
        Formula::Or(a, b) => match entry {
            TeamEntry::Ct { team, .. } => {
                let n = team.len();
                if n > 16 {
                    return Ok("witness: team too large for a split search".into());
                }
                for mask in 0u32..(1 << n) {
                    let pick = |on: bool| -> CausalTeam {
                        let rows = team
                            .rows()
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| (mask >> i & 1 == 1) == on)
                            .map(|(_, r)| r.clone())
                            .collect();
                        CausalTeam::new(team.signature().clone(), team.fc().clone(), rows)
                            .expect("subteam rows stay compatible")
                    };
                    let (left, right) = (pick(true), pick(false));
                    if causal_teams::satisfies_ct(&left, a)?
                        && causal_teams::satisfies_ct(&right, b)?
                    {
                        return Ok(format!(
                            "witness split:\n  {} |= {}\n  {} |= {}",
                            set_label(left.rows(), ws),
                            render(a, &ws.sig),
                            set_label(right.rows(), ws),
                            render(b, &ws.sig),
                        ));
                    }
                }
                Ok("witness: no split found".into())
            }
            TeamEntry::Gct { team } => {
                let n = team.len();
                if n > 16 {
                    return Ok("witness: team too large for a split search".into());
                }
                for mask in 0u32..(1 << n) {
                    let pick = |on: bool| -> GeneralizedCausalTeam {
                        let members = team
                            .members()
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| (mask >> i & 1 == 1) == on)
                            .map(|(_, m)| m.clone())
                            .collect();
                        GeneralizedCausalTeam::new(team.signature().clone(), members)
                            .expect("sub-multiteams stay valid")
                    };
                    let (left, right) = (pick(true), pick(false));
                    if causal_teams::satisfies_gct(&left, a)?
                        && causal_teams::satisfies_gct(&right, b)?
                    {
                        return Ok(format!(
                            "witness split:\n  {} |= {}\n  {} |= {}",
                            member_label(&left, ws),
                            render(a, &ws.sig),
                            member_label(&right, ws),
                            render(b, &ws.sig),
                        ));
                    }
                }
                Ok("witness: no split found".into())
            }
        },
        Formula::IntDisj(a, b) => {
            let side = |phi: &Formula| -> Result<bool> {
                Ok(match entry {
                    TeamEntry::Ct { team, .. } => causal_teams::satisfies_ct(team, phi)?,
                    TeamEntry::Gct { team } => causal_teams::satisfies_gct(team, phi)?,
                })
            };
            if side(a)? {
                Ok(format!(
                    "witness: left disjunct `{}` holds on the whole team",
                    render(a, &ws.sig)
                ))
            } else if side(b)? {
                Ok(format!(
                    "witness: right disjunct `{}` holds on the whole team",
                    render(b, &ws.sig)
                ))
            } else {
                Ok("witness: neither disjunct holds globally".into())
            }
        }
        _ => Ok("witness: the formula has no top-level disjunction to split".into()),
    }
}

fn set_label(rows: &[Assignment], ws: &Workspace) -> String {
    let cells: Vec<String> = rows.iter().map(|r| row_label(r, &ws.sig)).collect();
    format!("{{{}}}", cells.join(", "))
}

fn member_label(team: &GeneralizedCausalTeam, ws: &Workspace) -> String {
    let cells: Vec<String> = team
        .members()
        .iter()
        .map(|(row, fc)| {
            let name = ws.component_name(fc).unwrap_or("?");
            format!("{} @ {name}", row_label(row, &ws.sig))
        })
        .collect();
    format!("{{{}}}", cells.join(", "))
}

// ------------------------------------------------------------ intervene --

#[derive(Args)]
struct InterveneArgs {
    #[command(flatten)]
    source: Source,
    /// Team to intervene on.
    #[arg(long, short = 't', value_name = "NAME")]
    team: String,
    /// Equations to force, e.g. "X=1" or "X=1, Y=2".
    #[arg(long = "do", value_name = "EQS")]
    equations: String,
    /// Write the result as a fresh workspace file.
    #[arg(long, short = 'o', value_name = "FILE")]
    out: Option<PathBuf>,
    /// Team name in the output workspace (default: the input name).
    #[arg(long = "as", value_name = "NAME")]
    rename: Option<String>,
}

fn parse_equations(text: &str, sig: &Arc<Signature>) -> Result<EquationSeq> {
    let mut eqs = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (var, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("equations look like VAR=value (got `{part}`)"))?;
        let (var, value) = (var.trim(), value.trim());
        let v = sig
            .var_index(var)
            .ok_or_else(|| anyhow!("unknown variable `{var}`"))?;
        let x = sig
            .value_index(v, value)
            .ok_or_else(|| anyhow!("`{value}` is not in the range of variable `{var}`"))?;
        eqs.push((v, x));
    }
    EquationSeq::new(eqs).map_err(|e| anyhow!("{e}"))
}

fn run_intervene(args: &InterveneArgs, json: bool) -> Result<i32> {
    let ws = args.source.load()?;
    let eqs = parse_equations(&args.equations, &ws.sig)?;
    let entry = ws
        .team(&args.team)
        .ok_or_else(|| anyhow!("unknown team `{}`", args.team))?;
    let out_name = args.rename.clone().unwrap_or_else(|| args.team.clone());

    let out_ws = match entry {
        TeamEntry::Ct { component, team } => {
            let result = intervene_ct(team, &eqs).map_err(|e| anyhow!("{e}"))?;
            Workspace {
                sig: ws.sig.clone(),
                components: vec![(format!("{component}_do"), result.fc().clone())],
                teams: vec![(
                    out_name.clone(),
                    TeamEntry::Ct { component: format!("{component}_do"), team: result },
                )],
            }
        }
        TeamEntry::Gct { team } => {
            let result = intervene_gct(team, &eqs).map_err(|e| anyhow!("{e}"))?;
            let mask = eqs.var_mask();
            let mut components: Vec<(String, Arc<FunctionComponent>)> = Vec::new();
            for (_, fc) in team.members() {
                let restricted = fc.restrict(mask);
                if !components.iter().any(|(_, g)| g.as_ref() == restricted.as_ref()) {
                    let base = ws.component_name(fc).unwrap_or("F");
                    let mut name = format!("{base}_do");
                    let mut k = 1;
                    while components.iter().any(|(n, _)| *n == name) {
                        k += 1;
                        name = format!("{base}_do{k}");
                    }
                    components.push((name, restricted));
                }
            }
            Workspace {
                sig: ws.sig.clone(),
                components,
                teams: vec![(out_name.clone(), TeamEntry::Gct { team: result })],
            }
        }
    };

    let rendered = out_ws.render();
    // The output contract: whatever is written re-loads and re-validates.
    Workspace::parse(&rendered)
        .map_err(|e| anyhow!("internal error: output workspace does not re-load: {e}"))?;
    if let Some(path) = &args.out {
        fs::write(path, &rendered)
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let result_entry = &out_ws.teams[0].1;
    if json {
        println!(
            "{}",
            serde_json::json!({
                "team": out_name,
                "do": eqs.render(&ws.sig),
                "kind": result_entry.kind(),
                "workspace": rendered,
            })
        );
    } else {
        println!("team {out_name} after do({}):", eqs.render(&ws.sig));
        match result_entry {
            TeamEntry::Ct { team, .. } => print!("{}", team_table(team)),
            TeamEntry::Gct { team } => print!("{}", gct_table(team, Some(&out_ws))),
        }
    }
    Ok(0)
}

// --------------------------------------------------------------- entail --

#[derive(Args)]
struct EntailArgs {
    #[command(flatten)]
    source: Source,
    /// Semantics to decide in.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Premise formula; repeatable.
    #[arg(long = "premise", short = 'p', value_name = "FORMULA")]
    premises: Vec<String>,
    /// Conclusion formula.
    conclusion: String,
    #[command(flatten)]
    budget: BudgetArgs,
    /// On failure, write a refuting team as a workspace file.
    #[arg(long, value_name = "FILE")]
    counterexample_out: Option<PathBuf>,
}

/// Wraps a single team as a standalone workspace, naming components F1,
/// F2, ... in order of first appearance.
fn team_workspace(sig: &Arc<Signature>, cx: &Counterexample, team_name: &str) -> Workspace {
    let mut components: Vec<(String, Arc<FunctionComponent>)> = Vec::new();
    let mut intern = |fc: &Arc<FunctionComponent>| {
        if !components.iter().any(|(_, g)| g.as_ref() == fc.as_ref()) {
            components.push((format!("F{}", components.len() + 1), fc.clone()));
        }
    };
    let entry = match cx {
        Counterexample::Ct(team) => {
            intern(team.fc());
            TeamEntry::Ct { component: "F1".into(), team: team.clone() }
        }
        Counterexample::Gct(team) => {
            for (_, fc) in team.members() {
                intern(fc);
            }
            TeamEntry::Gct { team: team.clone() }
        }
    };
    Workspace {
        sig: sig.clone(),
        components,
        teams: vec![(team_name.to_string(), entry)],
    }
}

fn run_entail(args: &EntailArgs, json: bool) -> Result<i32> {
    let ws = args.source.load()?;
    let premises: Vec<Formula> = args
        .premises
        .iter()
        .map(|p| parse_formula(p, &ws.sig))
        .collect::<Result<_>>()?;
    let conclusion = parse_formula(&args.conclusion, &ws.sig)?;
    let budget = args.budget.budget();
    let verdict = match args.mode {
        ModeArg::Ct => entails_ct(&premises, &conclusion, &ws.sig, &budget),
        ModeArg::Gct => entails_gct(&premises, &conclusion, &ws.sig, &budget),
    }
    .map_err(|e| anyhow!("{e}"))?;

    let cx_ws = verdict
        .counterexample
        .as_ref()
        .map(|cx| team_workspace(&ws.sig, cx, "counterexample"));
    if let (Some(cx_ws), Some(path)) = (&cx_ws, &args.counterexample_out) {
        fs::write(path, cx_ws.render())
            .with_context(|| format!("writing {}", path.display()))?;
    }

    if json {
        println!(
            "{}",
            serde_json::json!({
                "mode": match args.mode { ModeArg::Ct => "ct", ModeArg::Gct => "gct" },
                "holds": verdict.holds,
                "exact": verdict.exact,
                "counterexample": cx_ws.as_ref().map(|w| w.render()),
            })
        );
    } else if verdict.holds {
        if verdict.exact {
            println!("entailment holds (exact)");
        } else {
            println!(
                "entailment holds (sampled: no counterexample among {} teams, seed {})",
                args.budget.samples, args.budget.seed
            );
        }
    } else {
        println!("entailment fails; counterexample:");
        let cx_ws = cx_ws.as_ref().expect("failing verdicts carry a counterexample");
        match &cx_ws.teams[0].1 {
            TeamEntry::Ct { team, .. } => print!("{}", team_table(team)),
            TeamEntry::Gct { team } => print!("{}", gct_table(team, Some(cx_ws))),
        }
    }
    Ok(if verdict.holds { 0 } else { 1 })
}

// ------------------------------------------------------------- charform --

#[derive(Args)]
struct CharformArgs {
    #[command(flatten)]
    source: Source,
    /// Which formula family: phi, theta, chi, xi, xistar, unf, betadc,
    /// betaen, onefun, nomix, leadsto, defineflat, definedown.
    which: String,
    /// Component argument (phi).
    #[arg(long, value_name = "NAME")]
    component: Option<String>,
    /// Team argument (theta, xi, xistar); repeatable for the class
    /// definers, whose seed class is saturated before defining.
    #[arg(long = "team", short = 't', value_name = "NAME")]
    teams: Vec<String>,
    /// Row-count bound (chi).
    #[arg(long, value_name = "K")]
    k: Option<usize>,
    /// First variable (betadc, betaen, leadsto).
    #[arg(long, value_name = "X")]
    var: Option<String>,
    /// Second variable (betadc, leadsto).
    #[arg(long = "to", value_name = "Y")]
    to: Option<String>,
    /// Whether constancy is expressed with dependence atoms or with global
    /// disjunctions.
    #[arg(long, value_enum, default_value_t = DialectArg::Cod)]
    dialect: DialectArg,
}

impl CharformArgs {
    fn need_var(&self, ws: &Workspace, which: &Option<String>, flag: &str) -> Result<usize> {
        let name = which
            .as_ref()
            .ok_or_else(|| anyhow!("`charform {}` needs {flag} VAR", self.which))?;
        ws.sig
            .var_index(name)
            .ok_or_else(|| anyhow!("unknown variable `{name}`"))
    }

    fn need_ct_team<'w>(&self, ws: &'w Workspace, name: &str) -> Result<&'w CausalTeam> {
        match ws.team(name) {
            Some(TeamEntry::Ct { team, .. }) => Ok(team),
            Some(TeamEntry::Gct { .. }) => {
                bail!("team `{name}` is generalized; this formula family needs a causal team")
            }
            None => bail!("unknown team `{name}`"),
        }
    }
}

fn run_charform(args: &CharformArgs, json: bool) -> Result<i32> {
    let ws = args.source.load()?;
    let sig = &ws.sig;
    let one_team = || -> Result<&str> {
        match args.teams.as_slice() {
            [name] => Ok(name),
            _ => bail!("`charform {}` needs exactly one --team", args.which),
        }
    };
    let formula = match args.which.as_str() {
        "phi" => {
            let name = args
                .component
                .as_ref()
                .ok_or_else(|| anyhow!("`charform phi` needs --component NAME"))?;
            let fc = ws
                .component(name)
                .ok_or_else(|| anyhow!("unknown component `{name}`"))?;
            phi_f(fc, sig)
        }
        "theta" => theta_t(args.need_ct_team(&ws, one_team()?)?.rows(), sig),
        "chi" => {
            let k = args.k.ok_or_else(|| anyhow!("`charform chi` needs --k N"))?;
            chi_k(k, sig, args.dialect.dialect())
        }
        "xi" => xi_t(args.need_ct_team(&ws, one_team()?)?, args.dialect.dialect())
            .map_err(|e| anyhow!("{e}"))?,
        "xistar" => {
            let name = one_team()?;
            let team = match ws.team(name) {
                Some(TeamEntry::Gct { team }) => team,
                Some(TeamEntry::Ct { .. }) => {
                    bail!("team `{name}` is a causal team; `xistar` needs a generalized one")
                }
                None => bail!("unknown team `{name}`"),
            };
            xi_star(team, args.dialect.dialect()).map_err(|e| anyhow!("{e}"))?
        }
        "unf" => unf(sig),
        "betadc" => beta_dc(
            args.need_var(&ws, &args.var, "--var")?,
            args.need_var(&ws, &args.to, "--to")?,
            sig,
        )
        .map_err(|e| anyhow!("{e}"))?,
        "betaen" => beta_en(args.need_var(&ws, &args.var, "--var")?, sig),
        "onefun" => one_fun(sig),
        "nomix" => no_mix(sig),
        "leadsto" => leadsto(
            args.need_var(&ws, &args.var, "--var")?,
            args.need_var(&ws, &args.to, "--to")?,
            sig,
        )
        .map_err(|e| anyhow!("{e}"))?,
        "defineflat" | "definedown" => {
            if args.teams.is_empty() {
                bail!("`charform {}` needs at least one --team", args.which);
            }
            let members: Vec<CausalTeam> = args
                .teams
                .iter()
                .map(|n| args.need_ct_team(&ws, n).cloned())
                .collect::<Result<_>>()?;
            let seed = TeamClass::new(sig.clone(), members).map_err(|e| anyhow!("{e}"))?;
            if args.which == "defineflat" {
                define_flat_class(&seed.saturate_flat()).map_err(|e| anyhow!("{e}"))?
            } else {
                define_downward_class(&seed.saturate_downward()).map_err(|e| anyhow!("{e}"))?
            }
        }
        other => bail!(
            "unknown formula family `{other}` (expected phi, theta, chi, xi, xistar, unf, \
             betadc, betaen, onefun, nomix, leadsto, defineflat, definedown)"
        ),
    };
    let text = render(&formula, sig);
    if json {
        println!(
            "{}",
            serde_json::json!({ "which": args.which, "formula": text })
        );
    } else {
        println!("{text}");
    }
    Ok(0)
}

// -------------------------------------------------------------- resolve --

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    source: Source,
    /// One resolution per line instead of the global disjunction.
    #[arg(long)]
    list: bool,
    /// Formula to resolve.
    formula: String,
}

fn run_resolve(args: &ResolveArgs, json: bool) -> Result<i32> {
    let ws = args.source.load()?;
    let phi = parse_formula(&args.formula, &ws.sig)?;
    let set = resolutions(&phi).map_err(|e| anyhow!("{e}"))?;
    let disjunction = resolution_disjunction(&phi).map_err(|e| anyhow!("{e}"))?;
    if json {
        let items: Vec<String> = set.members().iter().map(|r| render(r, &ws.sig)).collect();
        println!(
            "{}",
            serde_json::json!({
                "resolutions": items,
                "disjunction": render(&disjunction, &ws.sig),
            })
        );
    } else if args.list {
        for r in set.members() {
            println!("{}", render(r, &ws.sig));
        }
    } else {
        println!("{}", render(&disjunction, &ws.sig));
    }
    Ok(0)
}

// ----------------------------------------------------------- proofcheck --

#[derive(Args)]
struct ProofcheckArgs {
    /// Derivation file to check.
    file: PathBuf,
    #[command(flatten)]
    source: Source,
    /// Calculus name (co, coi-ct, coi-gct, cod-ct, cod-gct); overrides the
    /// file's `calculus:` header.
    #[arg(long, value_name = "NAME")]
    calculus: Option<String>,
}

fn run_proofcheck(args: &ProofcheckArgs, json: bool) -> Result<i32> {
    let ws = args.source.load()?;
    let text = fs::read_to_string(&args.file)
        .with_context(|| format!("reading {}", args.file.display()))?;
    let (header, derivation) = parse_derivation(&text, &ws.sig)
        .map_err(|e| anyhow!("{}: {e}", args.file.display()))?;
    let calculus = match &args.calculus {
        Some(name) => Calculus::from_name(name).ok_or_else(|| {
            anyhow!("unknown calculus `{name}` (expected co, coi-ct, coi-gct, cod-ct, cod-gct)")
        })?,
        None => header.ok_or_else(|| {
            anyhow!("the file has no `calculus:` header; pass --calculus NAME")
        })?,
    };
    let outcome = check_derivation(&derivation, calculus, &ws.sig);
    let conclusion = derivation.conclusion().map(|phi| render(phi, &ws.sig));
    if json {
        println!(
            "{}",
            serde_json::json!({
                "calculus": calculus.name(),
                "nodes": derivation.nodes.len(),
                "conclusion": conclusion,
                "ok": outcome.is_ok(),
                "error": outcome.as_ref().err().map(|e| serde_json::json!({
                    "node": e.node,
                    "detail": e.to_string(),
                })),
            })
        );
    } else {
        match &outcome {
            Ok(()) => println!(
                "ok: {} nodes, conclusion {} (calculus {})",
                derivation.nodes.len(),
                conclusion.as_deref().unwrap_or("-"),
                calculus.name()
            ),
            Err(e) => println!("check failed: {e}"),
        }
    }
    Ok(if outcome.is_ok() { 0 } else { 1 })
}

// ------------------------------------------------------------ enumerate --

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Also count the generalized teams with at most this many members.
    #[arg(long, value_name = "M")]
    max_members: Option<usize>,
}

/// Upper bound on the number of function components, with saturating
/// arithmetic; used to refuse enumerations that cannot finish.
fn fc_universe_bound(sig: &Signature) -> u128 {
    let mut total: u128 = 1;
    for v in 0..sig.var_count() {
        let others: Vec<usize> = (0..sig.var_count()).filter(|u| *u != v).collect();
        let mut per_var: u128 = 1; // the exogenous option
        for mask in 0u32..(1 << others.len()) {
            let mut tuples: u128 = 1;
            for (i, &p) in others.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    tuples = tuples.saturating_mul(sig.range_size(p) as u128);
                }
            }
            let mut tables: u128 = 1;
            for _ in 0..tuples.min(128) {
                tables = tables.saturating_mul(sig.range_size(v) as u128);
                if tables > u64::MAX as u128 {
                    break;
                }
            }
            per_var = per_var.saturating_add(tables);
        }
        total = total.saturating_mul(per_var);
    }
    total
}

fn run_enumerate(args: &EnumerateArgs, json: bool) -> Result<i32> {
    const ENUM_CAP: u128 = 2_000_000;
    let ws = args.source.load()?;
    let sig = &ws.sig;
    let budget = args.budget.budget();
    let assignments = enum_assignments(sig).len();
    let bound = fc_universe_bound(sig);
    if bound > ENUM_CAP {
        let message = format!(
            "function-component universe too large to enumerate (bound {bound}); \
             use a smaller signature"
        );
        if json {
            println!(
                "{}",
                serde_json::json!({
                    "variables": sig.var_count(),
                    "assignments": assignments,
                    "note": message,
                })
            );
        } else {
            println!("variables: {}", sig.var_count());
            println!("assignments: {assignments}");
            println!("note: {message}");
        }
        return Ok(0);
    }

    let fcs = enum_function_components(sig).len();
    let classes = representatives(sig).len();
    let sem = enum_sem(sig).len();
    let teams = enum_causal_teams(sig).len();
    let gct_count: Option<u128> = (sem < 127).then(|| 1u128 << sem);
    let exact = sem <= budget.max_sem_size;
    let up_to = args
        .max_members
        .map(|m| (m, enum_gcts_up_to_size(sig, m).len()));

    if json {
        println!(
            "{}",
            serde_json::json!({
                "variables": sig.var_count(),
                "assignments": assignments,
                "function_components": fcs,
                "similarity_classes": classes,
                "semantic_pairs": sem,
                "causal_teams": teams,
                "generalized_causal_teams": gct_count.map(|n| n.to_string()),
                "exact_within_budget": exact,
                "up_to_members": up_to.map(|(m, n)| serde_json::json!({
                    "members": m,
                    "count": n,
                })),
            })
        );
    } else {
        println!("variables: {}", sig.var_count());
        println!("assignments: {assignments}");
        println!("function components: {fcs}");
        println!("similarity classes: {classes}");
        println!("semantic pairs: {sem}");
        println!("causal teams: {teams}");
        match gct_count {
            Some(n) => println!("generalized causal teams: {n} (2^{sem})"),
            None => println!("generalized causal teams: 2^{sem}"),
        }
        if exact {
            println!(
                "exact team enumeration within budget: yes (|Sem| = {sem} <= cap {})",
                budget.max_sem_size
            );
        } else {
            println!(
                "exact team enumeration within budget: no (|Sem| = {sem} > cap {}; \
                 sampling {} teams, seed {})",
                budget.max_sem_size, budget.sample_count, budget.rng_seed
            );
        }
        if let Some((m, n)) = up_to {
            println!("generalized causal teams with <= {m} members: {n}");
        }
    }
    Ok(0)
}

// ----------------------------------------------------------------- show --

#[derive(Args)]
struct ShowArgs {
    #[command(flatten)]
    source: Source,
    /// Team to print (default: every team in the workspace).
    #[arg(long, short = 't', value_name = "NAME")]
    team: Option<String>,
}

fn run_show(args: &ShowArgs) -> Result<i32> {
    let ws = args.source.load()?;
    let selected: Vec<(&String, &TeamEntry)> = match &args.team {
        Some(name) => vec![(
            name,
            ws.team(name).ok_or_else(|| anyhow!("unknown team `{name}`"))?,
        )],
        None => ws.teams.iter().map(|(n, t)| (n, t)).collect(),
    };
    for (i, (name, entry)) in selected.iter().enumerate() {
        if i > 0 {
            println!();
        }
        match entry {
            TeamEntry::Ct { component, team } => {
                println!("team {name} (ct over {component}, {} rows)", team.len());
                print!("{}", team_table(team));
            }
            TeamEntry::Gct { team } => {
                println!("team {name} (gct, {} members)", team.len());
                print!("{}", gct_table(team, Some(&ws)));
            }
        }
    }
    Ok(0)
}
