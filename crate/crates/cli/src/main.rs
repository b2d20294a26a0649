mod config;
mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sumdiff_core::arith::embed_integer_sets;
use sumdiff_core::explorer::{
    exponent_report, find_mstd, scan_streaming, Campaign, Canon, Format as RecordFormat, RecordWriter, SearchRecord,
    Universe,
};
use sumdiff_core::literal::{parse_integers, parse_set_in};
use sumdiff_core::petridis::{
    brute_force_certificate, extract_certificate, find_minimizer, petridis_inequality, trace, ElementOrder,
};
use sumdiff_core::ruzsa::{build_phi, build_psi, check_surjective, domain_size, verify_injective};
use sumdiff_core::theorems::{all_nonempty_subsets, check, sweep, Claim};
use sumdiff_core::{diffset, parse_group, parse_set, sumset, Error, GSet, GroupSpec, Limits, SetLiteral};

use config::Config;

const EXIT_USAGE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

/// Exact sumset and difference-set tools for small abelian groups.
#[derive(Debug, Parser)]
#[command(name = "sumdiff", version)]
struct Cli {
    /// key = value file presetting caps, threads and output_dir.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sizes of A, A+A, A-A and the constants sigma and delta.
    Constants {
        /// Set literal, e.g. "0,1,3@Z8" or "0,2,3@Z".
        set: String,
        #[arg(long, value_enum, default_value = "human")]
        format: OutFormat,
    },
    /// Verify a claim on one set or on a whole group.
    Check {
        /// fact1, ineq1, thm1, thm2, thm3 or thm5.
        claim: String,
        set: Option<String>,
        /// Check every non-empty subset of this group instead.
        #[arg(long, value_name = "GROUP", conflicts_with = "set")]
        sweep: Option<String>,
        /// Number of summands for thm5.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// With --sweep, check this many random subsets instead of all.
        #[arg(long, requires = "sweep")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "human")]
        format: OutFormat,
    },
    /// Dump an explicit witness as JSON.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Exhaustive campaign over the subsets of a group or integer window.
    Scan {
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long)]
        max_size: Option<usize>,
        /// Symmetry used for deduplication.
        #[arg(long, default_value = "translation+negation")]
        mode: String,
        /// Visit every subset, without deduplication.
        #[arg(long)]
        all: bool,
        /// Emit only sets with |A+A| > |A-A|.
        #[arg(long)]
        mstd: bool,
        /// Append the empirical exponent report.
        #[arg(long)]
        exponents: bool,
        /// Half-open range lo..hi of candidate bitmasks, for partitioned runs.
        #[arg(long, value_name = "LO..HI")]
        range: Option<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: OutFormat,
        /// Write records here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print only the summary in human format.
        #[arg(long)]
        quiet: bool,
    },
    /// List sets with more sums than differences.
    Mstd {
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, value_enum, default_value = "human")]
        format: OutFormat,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct UniverseArgs {
    /// Group such as Z12 or Z2xZ4.
    #[arg(long)]
    group: Option<String>,
    /// Inclusive integer window such as 0..14.
    #[arg(long, value_name = "LO..HI")]
    ints: Option<String>,
}

#[derive(Debug, Subcommand)]
enum WitnessKind {
    /// psi and phi tables of the injection A x (A-A) -> (A+A)^2.
    Ruzsa { set: String },
    /// Induction trace of |A+X+C| <= K|X+C|, with a certificate on equality.
    Petridis {
        set: String,
        #[arg(long = "C", visible_alias = "c", value_name = "SET")]
        c: String,
        /// X; defaults to the minimizer of |A+X|/|X| over subsets of -A.
        #[arg(long = "X", visible_alias = "x", value_name = "SET")]
        x: Option<String>,
        /// "ascending" or a comma-separated listing of C.
        #[arg(long, default_value = "ascending")]
        order: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_cap_exceeded() { EXIT_CAP } else { EXIT_USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(n) = cli.threads.or(cfg.threads) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Constants { set, format } => cmd_constants(&mut out, &set, format)?,
        Command::Check {
            claim,
            set,
            sweep,
            n,
            sample,
            seed,
            format,
        } => {
            let claim: Claim = claim.parse()?;
            match (set, sweep) {
                (Some(set), None) => cmd_check_one(&mut out, claim, &set, n, &cfg.limits, format)?,
                (None, Some(g)) => cmd_sweep(&mut out, claim, &g, n, sample, seed, &cfg.limits, format)?,
                _ => return Err(Error::InvalidParameter("give either a set literal or --sweep GROUP".into()).into()),
            }
        }
        Command::Witness { kind } => match kind {
            WitnessKind::Ruzsa { set } => cmd_ruzsa(&mut out, &set)?,
            WitnessKind::Petridis { set, c, x, order } => {
                cmd_petridis(&mut out, &set, &c, x.as_deref(), &order, &cfg.limits)?
            }
        },
        Command::Scan {
            universe,
            min_size,
            max_size,
            mode,
            all,
            mstd,
            exponents,
            range,
            format,
            out: path,
            quiet,
        } => {
            let canon = if all { Canon::None } else { mode.parse()? };
            let mut campaign = Campaign::new(parse_universe(&universe)?).canon(canon).mstd_only(mstd);
            let max = max_size.unwrap_or(campaign.max_size);
            campaign = campaign.sizes(min_size, max);
            if let Some(r) = range {
                let (lo, hi) = parse_range(&r)?;
                campaign = campaign.mask_range(lo, hi);
            }
            let file = path.map(|p| cfg.resolve_output(&p));
            cmd_scan(&mut out, file, &campaign, &cfg.limits, format, exponents, quiet)?
        }
        Command::Mstd {
            universe,
            max_size,
            format,
        } => {
            let u = parse_universe(&universe)?;
            let max = max_size.unwrap_or(u.width());
            cmd_mstd(&mut out, u, max, &cfg.limits, format)?
        }
    };
    out.flush()?;
    Ok(code)
}

fn parse_range(s: &str) -> Result<(u64, u64), Error> {
    let bad = || Error::InvalidParameter(format!("expected LO..HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_universe(u: &UniverseArgs) -> Result<Universe, Error> {
    match (&u.group, &u.ints) {
        (Some(g), None) => Ok(Universe::Group(parse_group(g)?)),
        (None, Some(r)) => {
            let bad = || Error::InvalidParameter(format!("expected an integer window LO..HI, got {r:?}"));
            let (lo, hi) = r.split_once("..").ok_or_else(bad)?;
            Ok(Universe::Integers {
                lo: lo.trim().parse().map_err(|_| bad())?,
                hi: hi.trim().parse().map_err(|_| bad())?,
            })
        }
        _ => Err(Error::InvalidParameter("give exactly one of --group or --ints".into())),
    }
}

/// A set in a finite group, possibly the embedding of an integer literal.
struct Resolved {
    set: GSet,
    source: Option<String>,
    /// Modulus and the integer mapped to index 0.
    embedding: Option<(usize, i64)>,
}

/// Parses a literal; integer literals are embedded so that every `n'A-m'A`
/// with `n'+m' <= n+m` keeps its integer size.
fn resolve(lit: &str, n: usize, m: usize) -> Result<Resolved, Error> {
    match parse_set(lit)? {
        SetLiteral::Group(set) => Ok(Resolved {
            set,
            source: None,
            embedding: None,
        }),
        SetLiteral::Integers(xs) => {
            let (group, mut sets, offset) = embed_integer_sets(&[&xs], n, m)?;
            Ok(Resolved {
                set: sets.remove(0),
                source: Some(lit.trim().to_string()),
                embedding: Some((group.order(), offset)),
            })
        }
    }
}

#[derive(Serialize)]
struct EmbeddingInfo {
    modulus: usize,
    offset: i64,
}

fn embedding_info(e: Option<(usize, i64)>) -> Option<EmbeddingInfo> {
    e.map(|(modulus, offset)| EmbeddingInfo { modulus, offset })
}

fn write_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn no_csv(cmd: &str) -> Failure {
    Error::InvalidParameter(format!("{cmd} supports --format human or json")).into()
}

#[derive(Serialize)]
struct ConstantsReport {
    set: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    embedding: Option<EmbeddingInfo>,
    card: usize,
    sum_card: usize,
    diff_card: usize,
    sigma: sumdiff_core::Ratio64,
    delta: sumdiff_core::Ratio64,
    coset: bool,
}

fn cmd_constants(out: &mut impl Write, lit: &str, format: OutFormat) -> CmdResult {
    let r = resolve(lit, 2, 1)?;
    let a = &r.set;
    let aa = sumset(a, a)?.len();
    let ama = diffset(a, a)?.len();
    let report = ConstantsReport {
        set: a.to_string(),
        source: r.source.clone(),
        embedding: embedding_info(r.embedding),
        card: a.len(),
        sum_card: aa,
        diff_card: ama,
        sigma: sumdiff_core::sigma(a)?,
        delta: sumdiff_core::delta(a)?,
        coset: a.group().is_coset(a)?.is_some(),
    };
    match format {
        OutFormat::Json => write_json(out, &report)?,
        OutFormat::Human => render::constants(out, &report)?,
        OutFormat::Csv => return Err(no_csv("constants")),
    }
    Ok(0)
}

fn cmd_check_one(
    out: &mut impl Write,
    claim: Claim,
    lit: &str,
    n: usize,
    limits: &Limits,
    format: OutFormat,
) -> CmdResult {
    let (sums, diffs) = if claim == Claim::Thm5 {
        (n.max(2) + 1, 1)
    } else {
        (2, 1)
    };
    let r = resolve(lit, sums, diffs)?;
    let mut v = check(claim, &r.set, n, limits)?;
    if let Some(src) = &r.source {
        v = v.with_source(src.clone());
    }
    match format {
        OutFormat::Json => {
            #[derive(Serialize)]
            struct Wrapped<'a> {
                #[serde(flatten)]
                verdict: &'a sumdiff_core::theorems::Verdict,
                #[serde(skip_serializing_if = "Option::is_none")]
                embedding: Option<EmbeddingInfo>,
            }
            write_json(
                out,
                &Wrapped {
                    verdict: &v,
                    embedding: embedding_info(r.embedding),
                },
            )?
        }
        OutFormat::Human => render::verdict(out, &v, r.embedding)?,
        OutFormat::Csv => return Err(no_csv("check")),
    }
    Ok(if v.is_violated() { EXIT_VIOLATION } else { 0 })
}

/// `count` random non-empty subsets, each element kept with probability 1/2.
fn sample_subsets(g: &GroupSpec, count: usize, seed: u64) -> Result<Vec<GSet>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = Vec::with_capacity(count);
    while sets.len() < count {
        let picked: Vec<usize> = (0..g.order()).filter(|_| rng.random_bool(0.5)).collect();
        if !picked.is_empty() {
            sets.push(GSet::from_indices(g, picked)?);
        }
    }
    Ok(sets)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    out: &mut impl Write,
    claim: Claim,
    group: &str,
    n: usize,
    sample: Option<usize>,
    seed: u64,
    limits: &Limits,
    format: OutFormat,
) -> CmdResult {
    let g = parse_group(group)?;
    let (sets, universe) = match sample {
        Some(k) => (
            sample_subsets(&g, k, seed)?,
            format!("{g} ({k} random subsets, seed {seed})"),
        ),
        None => (all_nonempty_subsets(&g, limits)?, g.to_string()),
    };
    let summary = sweep(claim, &universe, &sets, n, limits)?;
    match format {
        OutFormat::Json => write_json(out, &summary)?,
        OutFormat::Human => render::sweep(out, &summary)?,
        OutFormat::Csv => return Err(no_csv("check")),
    }
    Ok(if summary.violated > 0 { EXIT_VIOLATION } else { 0 })
}

fn cmd_ruzsa(out: &mut impl Write, lit: &str) -> CmdResult {
    let r = resolve(lit, 2, 1)?;
    let psi = build_psi(&r.set)?;
    let phi = build_phi(&r.set, &psi)?;
    #[derive(Serialize)]
    struct Dump<'a> {
        set: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        source: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        embedding: Option<EmbeddingInfo>,
        domain_size: usize,
        codomain_size: usize,
        injective: bool,
        surjective: bool,
        psi: &'a [sumdiff_core::ruzsa::PsiEntry],
        phi: &'a [sumdiff_core::ruzsa::PhiEntry],
    }
    let dump = Dump {
        set: r.set.to_string(),
        source: r.source.clone(),
        embedding: embedding_info(r.embedding),
        domain_size: domain_size(&r.set)?,
        codomain_size: phi.codomain_size(),
        injective: verify_injective(&phi),
        surjective: check_surjective(&phi),
        psi: psi.entries(),
        phi: phi.entries(),
    };
    write_json(out, &dump)?;
    Ok(if dump.injective { 0 } else { EXIT_VIOLATION })
}

fn cmd_petridis(
    out: &mut impl Write,
    a_lit: &str,
    c_lit: &str,
    x_lit: Option<&str>,
    order: &str,
    limits: &Limits,
) -> CmdResult {
    let mut source = None;
    let mut embedding = None;
    let (a, c, given_x) = match parse_set(a_lit)? {
        SetLiteral::Group(a) => {
            let c = parse_set_in(c_lit, a.group())?;
            let x = x_lit.map(|l| parse_set_in(l, a.group())).transpose()?;
            (a, c, x)
        }
        SetLiteral::Integers(xs) => {
            let cs = parse_integers(c_lit)?;
            let given: Option<Vec<i64>> = x_lit.map(parse_integers).transpose()?;
            let mut all: Vec<&[i64]> = vec![&xs, &cs];
            if let Some(g) = &given {
                all.push(g);
            }
            let (group, mut sets, offset) = embed_integer_sets(&all, 2, 1)?;
            source = Some(a_lit.trim().to_string());
            embedding = Some((group.order(), offset));
            let a = sets.remove(0);
            let c = sets.remove(0);
            (a, c, sets.pop())
        }
    };
    let (x, k) = match given_x {
        Some(x) => {
            let k = sumdiff_core::scalar::size_ratio(sumset(&a, &x)?.len(), x.len());
            (x, k)
        }
        None => {
            let m = find_minimizer(&a, &a.negate(), limits.minimizer_base)?;
            (m.x, m.k)
        }
    };
    let order = if order.trim().eq_ignore_ascii_case("ascending") {
        ElementOrder::Ascending
    } else {
        ElementOrder::Given(parse_order(order, a.group())?)
    };
    let comparison = petridis_inequality(&a, &x, &k, &c, limits.minimizer_base)?;
    let t = trace(&a, &x, &c, &order)?;
    let certificate = extract_certificate(&t)?.map(|q| q.q.to_string());
    let brute = if c.len() <= limits.certificate_set {
        brute_force_certificate(&a, &x, &c, limits.certificate_set)?.map(|q| q.q.to_string())
    } else {
        None
    };
    #[derive(Serialize)]
    struct Dump {
        a: String,
        x: String,
        c: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        source: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        embedding: Option<EmbeddingInfo>,
        k: sumdiff_core::Ratio64,
        order: Vec<sumdiff_core::Element>,
        comparison: sumdiff_core::petridis::PetridisComparison,
        equality: bool,
        trace: Vec<sumdiff_core::petridis::TraceRecord>,
        certificate: Option<String>,
        brute_force_certificate: Option<String>,
    }
    let dump = Dump {
        a: a.to_string(),
        x: x.to_string(),
        c: c.to_string(),
        source,
        embedding: embedding_info(embedding),
        k,
        order: t.order.clone(),
        comparison,
        equality: t.equality,
        trace: t.records(),
        certificate,
        brute_force_certificate: brute,
    };
    write_json(out, &dump)?;
    // With the strict hypothesis, equality must coincide with a certificate.
    let mut consistent = dump.comparison.bound.holds();
    if dump.comparison.strict_hypothesis && c.len() <= limits.certificate_set {
        consistent &= dump.brute_force_certificate.is_some() == dump.equality;
    }
    Ok(if consistent { 0 } else { EXIT_VIOLATION })
}

fn parse_order(s: &str, g: &GroupSpec) -> Result<Vec<sumdiff_core::Element>, Error> {
    s.split(',')
        .map(|tok| {
            let t = tok.trim();
            let i: usize = t
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("order entry {t:?} is not an element index")))?;
            g.element(i)
        })
        .collect()
}

/// Records go to `file` when given, otherwise to `out`. The summary goes to
/// `out` in human format or when records are in a file, else to stderr so
/// the record stream stays clean.
fn cmd_scan(
    out: &mut dyn Write,
    file: Option<PathBuf>,
    campaign: &Campaign,
    limits: &Limits,
    format: OutFormat,
    exponents: bool,
    quiet: bool,
) -> CmdResult {
    let mut kept: Vec<SearchRecord> = Vec::new();
    let to_file = file.is_some();
    let mut records: Box<dyn Write + '_> = match file {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(&mut *out),
    };
    let summary = match format {
        OutFormat::Csv | OutFormat::Json => {
            let f = if format == OutFormat::Csv {
                RecordFormat::Csv
            } else {
                RecordFormat::Json
            };
            let mut w = RecordWriter::new(f, &mut records, campaign)?;
            let s = scan_streaming(campaign, limits, |r| {
                if exponents {
                    kept.push(r.clone());
                }
                w.write(r)
            })?;
            w.finish()?;
            s
        }
        OutFormat::Human => scan_streaming(campaign, limits, |r| {
            if !quiet {
                render::record(&mut records, r)?;
            }
            if exponents {
                kept.push(r.clone());
            }
            Ok(())
        })?,
    };
    records.flush()?;
    drop(records);
    let mut text = Vec::new();
    render::summary(&mut text, &summary)?;
    if exponents {
        write!(text, "{}", exponent_report(&kept))?;
    }
    if format == OutFormat::Human || to_file {
        out.write_all(&text)?;
    } else {
        io::stderr().write_all(&text)?;
    }
    Ok(0)
}

fn cmd_mstd(out: &mut impl Write, u: Universe, max_size: usize, limits: &Limits, format: OutFormat) -> CmdResult {
    let campaign = Campaign::new(u.clone()).sizes(1, max_size).mstd_only(true);
    let records = find_mstd(u, max_size, limits)?;
    match format {
        OutFormat::Human => {
            writeln!(
                out,
                "{} sets with |A+A| > |A-A| ({})",
                records.len(),
                campaign.describe()
            )?;
            for r in &records {
                render::record(out, r)?;
            }
        }
        OutFormat::Csv => sumdiff_core::explorer::write_csv(out, &campaign, &records)?,
        OutFormat::Json => sumdiff_core::explorer::write_json(out, &campaign, &records)?,
    }
    Ok(0)
}
