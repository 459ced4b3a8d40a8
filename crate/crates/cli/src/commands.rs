use std::fmt;
use std::io::Write;

use num_bigint::BigUint;

use sylow_core::groups::{cyclo_factorization, order, structural_factorization};
use sylow_core::sylow::{sylow_order, sylow_spectrum};
use sylow_core::theorems::{
    run_alternating, run_artin, run_buekenhout, run_factor_count, run_group_identities, run_q_bound, run_remark2,
    run_table3, run_value_identities, scan_exceptions,
};
use sylow_core::{CheckReport, Error, FactorConfig, Family, GroupId, Outcome, PrimePower, Verdict};

use crate::args::{CheckArgs, CheckName, Cli, Command, FamilySet, Format, GroupArgs, SylowArgs};
use crate::config::Settings;
use crate::output::{write_records, OutputRecord};

const DEFAULT_N_MAX: u32 = 12;
const DEFAULT_Q_MAX: u64 = 32;
const DEFAULT_ALT_N_MAX: u32 = 2000;
const IDENTITY_Q: [u64; 8] = [2, 3, 4, 5, 6, 7, 8, 9];
const LEMMA_Q: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Compute(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::IncompleteFactorization { .. } | Error::Internal(_) => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Violation,
    Usage,
    Failed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Violation => 1,
            Status::Usage => 2,
            Status::Failed => 3,
        }
    }
}

struct Context {
    settings: Settings,
    format: Format,
    pool: rayon::ThreadPool,
}

pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<Status, CliError> {
    let settings = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let format = cli.format.or(settings.format).unwrap_or(Format::Jsonl);
    let jobs = cli.jobs.or(settings.jobs);
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Compute(format!("cannot start worker pool: {e}")))?;
    let ctx = Context { settings, format, pool };
    match &cli.command {
        Command::Order(args) => cmd_order(&ctx, args, out),
        Command::Sylow(args) => cmd_sylow(&ctx, args, out),
        Command::Check(args) => cmd_check(&ctx, args, out),
    }
}

fn parse_group(args: &GroupArgs) -> Result<GroupId, CliError> {
    let family: Family = args.family.parse()?;
    if family == Family::Alternating {
        if args.q.is_some() {
            return Err(CliError::Usage("ALT takes --n only".into()));
        }
        let n = args.n.ok_or_else(|| CliError::Usage("ALT needs --n".into()))?;
        return Ok(GroupId::alternating(n)?);
    }
    let q = args.q.ok_or_else(|| CliError::Usage(format!("{} needs --q", family.tag())))?;
    let q = PrimePower::from_value(q)?;
    Ok(GroupId::new(family, args.n, Some(q))?)
}

fn cmd_order<W: Write>(ctx: &Context, args: &GroupArgs, out: &mut W) -> Result<Status, CliError> {
    let g = parse_group(args)?;
    let mut rec = OutputRecord::for_group("order", &g, "pass")
        .value("group", &g)
        .value("order", order(&g)?);
    if g.family() != Family::Alternating {
        let fact = if g.is_tits() {
            rec = rec.value("factorization_of", "2F4(2)");
            structural_factorization(&g)?
        } else {
            cyclo_factorization(&g)?
        };
        let exponents: Vec<String> = fact.exponents.iter().map(|(i, e)| format!("{i}^{e}")).collect();
        rec = rec
            .value("d", fact.d)
            .value("e0", fact.e0)
            .value("exponents", exponents.join(","))
            .value("M", fact.max_index());
    }
    write_records(out, &[rec], ctx.format)?;
    Ok(Status::Pass)
}

fn cmd_sylow<W: Write>(ctx: &Context, args: &SylowArgs, out: &mut W) -> Result<Status, CliError> {
    let g = parse_group(&args.group)?;
    let records = match &args.r {
        Some(r) => {
            let r: BigUint = r
                .parse()
                .map_err(|_| CliError::Usage(format!("--r expects a positive integer, got {r:?}")))?;
            let mut base = OutputRecord::for_group("sylow", &g, "pass");
            base.r = Some(r.to_string());
            match sylow_order(&g, &r) {
                Ok(order) => vec![base.value("status", "ok").value("sylow_order", order)],
                Err(Error::TrivialSylow { .. }) => vec![base.value("status", "trivial").value("sylow_order", 1)],
                Err(e) => return Err(e.into()),
            }
        }
        None => {
            let spectrum = ctx.pool.install(|| sylow_spectrum(&g, &ctx.settings.factor))?;
            spectrum
                .entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let mut rec = OutputRecord::for_group("sylow", &g, "pass")
                        .value("exponent", e.exponent)
                        .value("sylow_order", &e.order)
                        .value("ratio_approx", format!("{:.6}", spectrum.ratio_estimate(i)))
                        .value("ratio_note", "float estimate, not used for decisions");
                    rec.r = Some(e.prime.to_string());
                    rec
                })
                .collect()
        }
    };
    write_records(out, &records, ctx.format)?;
    Ok(Status::Pass)
}

fn grids(ctx: &Context, args: &CheckArgs) -> Result<Vec<sylow_core::Grid>, CliError> {
    let n_max = args.n_max.or(ctx.settings.n_max).unwrap_or(DEFAULT_N_MAX);
    let q_max = args.q_max.or(ctx.settings.q_max).unwrap_or(DEFAULT_Q_MAX);
    let families = args.families.unwrap_or(FamilySet::All);
    if args.below_q0 && families == FamilySet::Classical {
        return Err(CliError::Usage("--below-q0 applies to exceptional families only".into()));
    }
    let mut out = Vec::new();
    if families != FamilySet::Exceptional {
        out.push(sylow_core::Grid::classical(n_max, q_max));
    }
    if families != FamilySet::Classical {
        out.push(if args.below_q0 {
            sylow_core::Grid::exceptional_below_q0()
        } else {
            sylow_core::Grid::new(
                Family::EXCEPTIONAL.to_vec(),
                1..=1,
                sylow_core::QSelection::Range { min: 2, max: q_max },
            )
        });
    }
    Ok(out)
}

fn run_named(ctx: &Context, args: &CheckArgs) -> Result<CheckReport, CliError> {
    let cfg: &FactorConfig = &ctx.settings.factor;
    let allow = args.allow_expected();
    if args.name == CheckName::Alt {
        let n_max = args.n_max.or(ctx.settings.alt_n_max).unwrap_or(DEFAULT_ALT_N_MAX);
        if n_max < 5 {
            return Err(CliError::Usage("alt needs --n-max of at least 5".into()));
        }
        return Ok(run_alternating(n_max));
    }
    let grids = grids(ctx, args)?;
    let mut parts: Vec<CheckReport> = Vec::new();
    if args.name == CheckName::Identities {
        parts.push(run_value_identities(&IDENTITY_Q, &LEMMA_Q));
    }
    for grid in &grids {
        parts.push(match args.name {
            CheckName::Theorem1 => scan_exceptions(grid, cfg).into_check_report(allow),
            CheckName::FactorCount => run_factor_count(grid, cfg),
            CheckName::Qbound => run_q_bound(grid),
            CheckName::Table3 => run_table3(grid),
            CheckName::Remark2 => run_remark2(grid, cfg),
            CheckName::Artin => run_artin(grid, cfg),
            CheckName::Buekenhout => run_buekenhout(grid, cfg),
            CheckName::Identities => run_group_identities(grid),
            CheckName::Alt => unreachable!(),
        });
    }
    Ok(CheckReport::merge(check_label(args.name), parts))
}

fn check_label(name: CheckName) -> &'static str {
    match name {
        CheckName::Theorem1 => "theorem1",
        CheckName::FactorCount => "factor-count",
        CheckName::Qbound => "qbound",
        CheckName::Table3 => "table3",
        CheckName::Remark2 => "remark2",
        CheckName::Artin => "artin",
        CheckName::Buekenhout => "buekenhout",
        CheckName::Alt => "alt",
        CheckName::Identities => "identities",
    }
}

fn cmd_check<W: Write>(ctx: &Context, args: &CheckArgs, out: &mut W) -> Result<Status, CliError> {
    let report = ctx.pool.install(|| run_named(ctx, args))?;
    let mut records: Vec<OutputRecord> = report.records.iter().map(OutputRecord::from).collect();
    records.push(
        OutputRecord::new("summary", report.verdict.as_str())
            .value("check", &report.check)
            .value("grid", &report.grid)
            .value("records", report.records.len())
            .value("pass", report.count(Outcome::Pass))
            .value("expected", report.count(Outcome::Expected))
            .value("fail", report.count(Outcome::Fail))
            .value("error", report.count(Outcome::Error)),
    );
    write_records(out, &records, ctx.format)?;
    Ok(match report.verdict {
        Verdict::Pass => Status::Pass,
        Verdict::Violation => Status::Violation,
        Verdict::ComputationFailed => Status::Failed,
    })
}
