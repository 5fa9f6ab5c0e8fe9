//! Command-line front end: five commands over one report envelope.
//!
//! Exit codes: 0 success, 2 parse failure, 3 precondition violation
//! (wrong input kind, t-dependent classification, bad transform
//! arguments), 4 budget exhaustion — in which case the partial report is
//! still written before exiting.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::family::check_admissible;
use crate::groebner::{GroebnerConfig, MonomialOrder};
use crate::parse::{parse_polynomial, ParsedInput};
use crate::poly::{FamilyPolynomial, SparsePolynomial};
use crate::polyhedron::{
    classify_subspaces, compact_faces, essential_noncompact_faces, newton_polyhedron,
};
use crate::regularity::check_regular;
use crate::report::{
    admissibility_json, combined_verdict, nondegeneracy_json, polyhedron_json, probe_json,
    stratification_json, tameness_json, BasisRendering, BudgetJson, GridJson, InputJson, MetaJson,
    PolyhedronJson, Report,
};
use crate::ring::Ring;
use crate::strata::{build_stratification, probe_whitney, ProbeConfig, GRID_MIN};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "tamegamma",
    version,
    about = "Exact Newton-polyhedral regularity analysis for hypersurface germs and their one-parameter families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a single germ: Newton polyhedron, non-degeneracy, local tameness.
    Analyze(CommonArgs),
    /// Check a one-parameter family (with t) for admissibility.
    CheckFamily(CommonArgs),
    /// Emit the canonical stratification by coordinate-subspace type.
    Stratify(CommonArgs),
    /// Sample the Whitney (b) ratio along arcs toward the small strata.
    Probe(ProbeArgs),
    /// Rewrite the input, then re-run the appropriate analysis.
    Transform(TransformArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

impl OrderArg {
    fn to_order(self) -> MonomialOrder {
        match self {
            OrderArg::Grevlex => MonomialOrder::GrevLex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }

    fn label(self) -> &'static str {
        match self {
            OrderArg::Grevlex => "grevlex",
            OrderArg::Lex => "lex",
        }
    }
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input file containing the polynomial, or '-' for stdin.
    pub input: String,
    /// Number of z variables (inferred from the input when omitted).
    #[arg(long)]
    pub n: Option<usize>,
    /// Monomial order used to present bases and polynomials.
    #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    /// Step budget for the exact ideal computations.
    #[arg(long)]
    pub budget_steps: Option<u64>,
    /// Degree cap for the exact ideal computations.
    #[arg(long)]
    pub budget_degree: Option<u32>,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Seed for the deterministic arc sampler.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Finest grid level K: samples run over s = 2^-k for k = 4..=K.
    #[arg(long)]
    pub grid: Option<u32>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Replace every z_j by z_j^p before analyzing.
    #[arg(long)]
    pub power: Option<u32>,
    /// Comma-separated exponents N1,..,Nn: add the pure powers z_i^{N_i}.
    #[arg(long)]
    pub convenient: Option<String>,
}

pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(outcome) => {
            print!(
                "{}",
                if outcome.json {
                    outcome.report.to_json()
                } else {
                    outcome.report.to_text()
                }
            );
            if outcome.exhausted {
                4
            } else {
                0
            }
        }
        Err(e) => {
            match &e {
                // Position (0, 0) marks a command-level error where the
                // textual location would only be noise.
                Error::Parse { line: 0, col: 0, msg } => eprintln!("error: {msg}"),
                _ => eprintln!("error: {e}"),
            }
            match e {
                Error::Parse { .. } => 2,
                Error::Precondition(_) => 3,
                Error::ResourceExhausted { .. } => 4,
            }
        }
    }
}

struct Outcome {
    report: Report,
    json: bool,
    exhausted: bool,
}

fn execute(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Analyze(args) => {
            let input = load(&args)?;
            let single = expect_single(input)?;
            analyze_single(&single, &args, "analyze")
        }
        Command::CheckFamily(args) => {
            let input = load(&args)?;
            let family = expect_family(input)?;
            check_family(&family, &args, "check-family")
        }
        Command::Stratify(args) => {
            let input = load(&args)?;
            stratify(&input, &args)
        }
        Command::Probe(args) => {
            let input = load(&args.common)?;
            probe(&input, &args)
        }
        Command::Transform(args) => {
            let input = load(&args.common)?;
            let transformed = apply_transform(input, &args)?;
            match transformed {
                ParsedInput::Single(p) => analyze_single(&p, &args.common, "transform"),
                ParsedInput::Family(f) => check_family(&f, &args.common, "transform"),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Input handling
// ---------------------------------------------------------------------------

fn load(args: &CommonArgs) -> Result<ParsedInput> {
    let text = if args.input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| read_error("stdin", &e))?;
        buf
    } else {
        std::fs::read_to_string(&args.input).map_err(|e| read_error(&args.input, &e))?
    };
    parse_polynomial(&text, args.n)
}

fn read_error(source: &str, e: &std::io::Error) -> Error {
    Error::usage(format!("cannot read {source}: {e}"))
}

fn expect_single(input: ParsedInput) -> Result<SparsePolynomial> {
    match input {
        ParsedInput::Single(p) => Ok(p),
        ParsedInput::Family(_) => Err(Error::pre(
            "analyze takes a single germ; the input mentions t, so use check-family",
        )),
    }
}

fn expect_family(input: ParsedInput) -> Result<FamilyPolynomial> {
    match input {
        ParsedInput::Family(f) => Ok(f),
        ParsedInput::Single(_) => Err(Error::pre(
            "check-family takes a one-parameter family; the input never mentions t, so use analyze",
        )),
    }
}

fn budget(args: &CommonArgs) -> GroebnerConfig {
    let mut config = GroebnerConfig::from_env();
    if let Some(steps) = args.budget_steps {
        config.max_steps = steps;
    }
    if let Some(degree) = args.budget_degree {
        config.max_degree = degree;
    }
    config
}

fn meta(
    args: &CommonArgs,
    config: &GroebnerConfig,
    probe: Option<&ProbeConfig>,
    exhausted: bool,
) -> MetaJson {
    MetaJson {
        version: env!("CARGO_PKG_VERSION").to_string(),
        order: args.order.label().to_string(),
        budget: BudgetJson {
            max_steps: config.max_steps,
            max_degree: config.max_degree,
            max_basis: config.max_basis,
            budget_ms: config.budget_ms,
        },
        seed: probe.map(|p| p.seed),
        grid: probe.map(|p| GridJson {
            from: GRID_MIN,
            to: p.grid_max,
        }),
        tolerance: probe.map(|p| p.tolerance),
        exhausted,
    }
}

fn echo(input: &ParsedInput, order: MonomialOrder) -> InputJson {
    match input {
        ParsedInput::Single(p) => {
            let ring = Ring::germ(p.n());
            InputJson {
                text: p.to_string_ordered(&ring, order),
                n: p.n(),
                family: false,
                variables: (0..ring.len()).map(|i| ring.name(i).to_string()).collect(),
            }
        }
        ParsedInput::Family(f) => {
            let ring = Ring::family(f.n());
            InputJson {
                text: f.to_joint().to_string_ordered(&ring, order),
                n: f.n(),
                family: true,
                variables: (0..ring.len()).map(|i| ring.name(i).to_string()).collect(),
            }
        }
    }
}

fn polyhedron_section(input: &ParsedInput) -> Result<PolyhedronJson> {
    let (support, n) = match input {
        ParsedInput::Single(p) => (p.support(), p.n()),
        ParsedInput::Family(f) => (f.support_generic(), f.n()),
    };
    let polyhedron = newton_polyhedron(&support, n)?;
    let compact = compact_faces(&support, n)?;
    let essential = essential_noncompact_faces(&support, n)?;
    let classification = classify_subspaces(&support, n)?;
    Ok(polyhedron_json(
        &polyhedron,
        compact.len(),
        &essential,
        &classification,
    ))
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

fn analyze_single(p: &SparsePolynomial, args: &CommonArgs, command: &str) -> Result<Outcome> {
    let config = budget(args);
    let rendering = BasisRendering {
        order: args.order.to_order(),
        config: config.clone(),
    };
    let input = ParsedInput::Single(p.clone());
    let polyhedron = polyhedron_section(&input)?;
    let (nd, tame) = check_regular(p, &config)?;
    let exhausted = nd.exhausted || tame.exhausted;
    let report = Report {
        input: echo(&input, args.order.to_order()),
        command: command.to_string(),
        polyhedron: Some(polyhedron),
        nondegeneracy: Some(nondegeneracy_json(&nd)),
        tameness: Some(tameness_json(&tame, &rendering)),
        admissibility: None,
        stratification: None,
        probe: None,
        verdict: combined_verdict(nd.answer, tame.answer).to_string(),
        meta: meta(args, &config, None, exhausted),
    };
    Ok(Outcome {
        report,
        json: args.json,
        exhausted,
    })
}

fn check_family(f: &FamilyPolynomial, args: &CommonArgs, command: &str) -> Result<Outcome> {
    let config = budget(args);
    let rendering = BasisRendering {
        order: args.order.to_order(),
        config: config.clone(),
    };
    let input = ParsedInput::Family(f.clone());
    let polyhedron = polyhedron_section(&input)?;
    let adm = check_admissible(f, &config)?;
    let verdict = match adm.answer {
        crate::regularity::Answer::Yes => "admissible",
        crate::regularity::Answer::No => "not-admissible",
        crate::regularity::Answer::Unknown => "unknown",
    };
    let exhausted = adm.exhausted;
    let report = Report {
        input: echo(&input, args.order.to_order()),
        command: command.to_string(),
        polyhedron: Some(polyhedron),
        nondegeneracy: None,
        tameness: None,
        admissibility: Some(admissibility_json(&adm, &rendering)),
        stratification: None,
        probe: None,
        verdict: verdict.to_string(),
        meta: meta(args, &config, None, exhausted),
    };
    Ok(Outcome {
        report,
        json: args.json,
        exhausted,
    })
}

fn stratify(input: &ParsedInput, args: &CommonArgs) -> Result<Outcome> {
    let config = budget(args);
    let polyhedron = polyhedron_section(input)?;
    let strat = build_stratification(input)?;
    let report = Report {
        input: echo(input, args.order.to_order()),
        command: "stratify".to_string(),
        polyhedron: Some(polyhedron),
        nondegeneracy: None,
        tameness: None,
        admissibility: None,
        stratification: Some(stratification_json(&strat)),
        probe: None,
        verdict: "stratified".to_string(),
        meta: meta(args, &config, None, false),
    };
    Ok(Outcome {
        report,
        json: args.json,
        exhausted: false,
    })
}

fn probe(input: &ParsedInput, args: &ProbeArgs) -> Result<Outcome> {
    let config = budget(&args.common);
    let mut probe_cfg = ProbeConfig::default();
    if let Some(seed) = args.seed {
        probe_cfg.seed = seed;
    }
    if let Some(grid) = args.grid {
        probe_cfg.grid_max = grid;
    }
    let polyhedron = polyhedron_section(input)?;
    let strat = build_stratification(input)?;
    let fam = match input {
        ParsedInput::Family(f) => f.clone(),
        ParsedInput::Single(p) => FamilyPolynomial::from_single(p),
    };
    let probe = probe_whitney(&fam, &probe_cfg)?;
    let report = Report {
        input: echo(input, args.common.order.to_order()),
        command: "probe".to_string(),
        polyhedron: Some(polyhedron),
        nondegeneracy: None,
        tameness: None,
        admissibility: None,
        stratification: Some(stratification_json(&strat)),
        probe: Some(probe_json(&probe)),
        verdict: probe.verdict.label().to_string(),
        meta: meta(&args.common, &config, Some(&probe_cfg), false),
    };
    Ok(Outcome {
        report,
        json: args.common.json,
        exhausted: false,
    })
}

fn apply_transform(input: ParsedInput, args: &TransformArgs) -> Result<ParsedInput> {
    match (&args.power, &args.convenient) {
        (Some(_), Some(_)) => Err(Error::usage(
            "transform takes exactly one of --power and --convenient, not both",
        )),
        (None, None) => Err(Error::usage(
            "transform needs --power <p> or --convenient <N1,..,Nn>",
        )),
        (Some(p), None) => Ok(match input {
            ParsedInput::Single(f) => ParsedInput::Single(f.substitute_power(*p)?),
            ParsedInput::Family(f) => ParsedInput::Family(f.substitute_power(*p)?),
        }),
        (None, Some(list)) => {
            let exponents = parse_exponent_list(list)?;
            Ok(match input {
                ParsedInput::Single(f) => ParsedInput::Single(f.make_convenient(&exponents)?),
                ParsedInput::Family(f) => ParsedInput::Family(f.make_convenient(&exponents)?),
            })
        }
    }
}

fn parse_exponent_list(list: &str) -> Result<Vec<u32>> {
    list.split(',')
        .map(|piece| {
            piece.trim().parse::<u32>().map_err(|_| {
                Error::pre(format!(
                    "--convenient expects comma-separated positive integers, got '{piece}'"
                ))
            })
        })
        .collect()
}
