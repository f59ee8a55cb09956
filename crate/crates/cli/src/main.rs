use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dmpl::eval::{
    connected_sum, iterated_sum, li_sh_truncated, li_star_truncated, li_tilde, r_value_plain, r_value_twisted,
};
use dmpl::index::DualizablePair;
use dmpl::suite::trend::{adsr_trend, duality_trend, prop25_trend, shuffle_trend, TrendReport};
use dmpl::suite::{run_campaign, Campaign, CampaignFile, Report, ScalarVariant, Tag};
use dmpl::words::{eval_i, eval_l};
use dmpl::{Error, ExactScalar, Field, GaussianRational, Index, ParamPoint, PrimeResidue, Rational, Word, WordCombo};

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "DMPL_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "dmpl-results";

#[derive(Parser)]
#[command(name = "dmpl", version, about = "Exact discrete multiple polylogarithms and identity checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a single finite sum and print its exact value.
    Eval(EvalArgs),
    /// Run a verification campaign and write a JSON report.
    Verify(VerifyArgs),
    /// Tabulate the defect of an asymptotic identity over a ladder of N.
    Trend(TrendArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Subject {
    LiTilde,
    LiSh,
    LiStar,
    Iterated,
    Connected,
    RValue,
    #[value(name = "word-L")]
    WordL,
    #[value(name = "word-I")]
    WordI,
}

#[derive(Args)]
struct EvalArgs {
    subject: Subject,
    /// Index literal `k1,k2,...` (empty string for the empty index).
    #[arg(long, allow_hyphen_values = true)]
    index: Option<String>,
    /// Second index of a connected sum.
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    /// Point `x1,x2,...` for the binomial, iterated and connected sums.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Point `z1,z2,...` for the truncated polylogarithms; for r-value,
    /// groups separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Exponents `a` of r-value.
    #[arg(long)]
    a: Option<String>,
    /// Exponents `b` of r-value.
    #[arg(long)]
    b: Option<String>,
    /// Word literal `z1^k1 . z2^k2`.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    #[arg(long)]
    n: usize,
    /// Inclusive upper ranges for the iterated sum.
    #[arg(long)]
    inclusive: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite tag; optional with --campaign, where it selects campaigns.
    #[arg(value_parser = parse_tag)]
    tag: Option<Tag>,
    /// JSON campaign file.
    #[arg(long)]
    campaign: Option<PathBuf>,
    /// Output directory (default: $DMPL_OUT_DIR, then ./dmpl-results).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_weight: Option<usize>,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    p_min: Option<u64>,
    #[arg(long)]
    p_max: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    height: Option<i64>,
    #[arg(long, value_enum)]
    scalar: Option<ScalarArg>,
    /// Difference-equation case label (1a ... 3d).
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    m_max: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarArg {
    Rational,
    Gaussian,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum TrendKind {
    Prop25,
    Duality,
    Shuffle,
    Adsr,
}

#[derive(Args)]
struct TrendArgs {
    kind: TrendKind,
    #[arg(long, allow_hyphen_values = true)]
    index: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w0: Option<String>,
    /// Strictly increasing list of N.
    #[arg(long, default_value = "20,40,80,160")]
    n_list: String,
    /// Write the CSV here (and the exact JSON next to it) instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Exit status of a failed command.
enum Failure {
    Identity,
    Usage(String),
    Pole(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_pole() {
            Failure::Pole(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn parse_tag(s: &str) -> std::result::Result<Tag, String> {
    Tag::parse(s).map_err(|e| e.to_string())
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> std::result::Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn parse_usizes(s: &str) -> Result<Vec<usize>, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::parse(format!("`{t}` is not a nonnegative integer"))))
        .collect()
}

/// A point in whichever field its literals live in.
enum Point {
    Rational(ParamPoint<Rational>),
    Gaussian(ParamPoint<GaussianRational>),
    Residue(ParamPoint<PrimeResidue>),
}

fn parse_scalars(s: &str) -> Result<Vec<ExactScalar>, Error> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(ExactScalar::parse).collect()
}

fn point_of(vals: Vec<ExactScalar>) -> Result<Point, Error> {
    let modulus = vals.iter().find_map(|v| match v {
        ExactScalar::Residue(r) => Some(r.modulus()),
        _ => None,
    });
    if let Some(p) = modulus {
        let v = vals
            .iter()
            .map(|v| match v {
                ExactScalar::Residue(r) if r.modulus() == p => Ok(*r),
                ExactScalar::Rational(q) => PrimeResidue::from_rational(p, q),
                other => Err(Error::ScalarMismatch { left: other.kind().to_string(), right: format!("residue mod {}", p.get()) }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Point::Residue(ParamPoint::new(p, v)));
    }
    if vals.iter().all(|v| matches!(v, ExactScalar::Rational(_))) {
        let v = vals
            .into_iter()
            .map(|v| match v {
                ExactScalar::Rational(q) => q,
                _ => unreachable!(),
            })
            .collect();
        return Ok(Point::Rational(ParamPoint::new((), v)));
    }
    let v = vals.iter().map(ExactScalar::to_gaussian).collect::<Result<Vec<_>, _>>()?;
    Ok(Point::Gaussian(ParamPoint::new((), v)))
}

fn parse_point(s: &str) -> Result<Point, Error> {
    point_of(parse_scalars(s)?)
}

macro_rules! on_point {
    ($p:expr, |$x:ident| $body:expr) => {
        match $p {
            Point::Rational($x) => ($body).map(|v| v.to_exact()),
            Point::Gaussian($x) => ($body).map(|v| v.to_exact()),
            Point::Residue($x) => ($body).map(|v| v.to_exact()),
        }
    };
}

fn cmd_eval(a: &EvalArgs) -> CmdResult {
    let n = a.n;
    let index = || -> std::result::Result<Index, Failure> { Ok(Index::parse(required(&a.index, "index")?)?) };
    let value: ExactScalar = match a.subject {
        Subject::LiTilde => {
            let k = index()?;
            on_point!(parse_point(required(&a.x, "x")?)?, |x| li_tilde(&k, &x, n))?
        }
        Subject::LiSh => {
            let k = index()?;
            on_point!(parse_point(required(&a.z, "z")?)?, |z| li_sh_truncated(&k, &z, n))?
        }
        Subject::LiStar => {
            let k = index()?;
            on_point!(parse_point(required(&a.z, "z")?)?, |z| li_star_truncated(&k, &z, n))?
        }
        Subject::Iterated => {
            let k = index()?;
            on_point!(parse_point(required(&a.x, "x")?)?, |x| iterated_sum(&k, &x, n, a.inclusive))?
        }
        Subject::Connected => {
            let k = index()?;
            let l = Index::parse(required(&a.l, "l")?)?;
            on_point!(parse_point(required(&a.x, "x")?)?, |x| connected_sum(&k, &l, &x, n))?
        }
        Subject::RValue => {
            let b = parse_usizes(required(&a.b, "b")?)?;
            match (&a.a, &a.z) {
                (Some(av), None) => r_value_plain::<Rational>((), &parse_usizes(av)?, &b, n)?.to_exact(),
                (None, Some(z)) => eval_twisted(z, &b, n)?,
                _ => return Err(Failure::Usage("r-value takes exactly one of --a and --z".into())),
            }
        }
        Subject::WordL | Subject::WordI => {
            let w = WordCombo::single(Word::parse(required(&a.word, "word")?)?);
            if matches!(a.subject, Subject::WordL) {
                eval_l(&w, n)?
            } else {
                eval_i(&w, n)?
            }
        }
    };
    println!("{value}");
    Ok(())
}

/// `--z "z11,z12;z21"`: one group of points per slot.
fn eval_twisted(z: &str, b: &[usize], n: usize) -> Result<ExactScalar, Error> {
    let groups: Vec<Vec<ExactScalar>> = z.split(';').map(parse_scalars).collect::<Result<_, _>>()?;
    let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    match point_of(groups.into_iter().flatten().collect())? {
        Point::Rational(p) => Ok(r_value_twisted((), &split(p.values(), &sizes), b, n)?.to_exact()),
        Point::Gaussian(p) => Ok(r_value_twisted((), &split(p.values(), &sizes), b, n)?.to_exact()),
        Point::Residue(p) => Ok(r_value_twisted(p.ctx(), &split(p.values(), &sizes), b, n)?.to_exact()),
    }
}

fn split<T: Clone>(flat: &[T], sizes: &[usize]) -> Vec<Vec<T>> {
    let mut it = flat.iter().cloned();
    sizes.iter().map(|&s| it.by_ref().take(s).collect()).collect()
}

fn flag_campaign(tag: Tag, a: &VerifyArgs) -> Campaign {
    let d = Campaign::default_for(tag);
    Campaign {
        tag,
        seed: a.seed.unwrap_or(d.seed),
        max_weight: a.max_weight.unwrap_or(d.max_weight),
        max_depth: a.max_depth.unwrap_or(d.max_depth),
        n_min: a.n_min.unwrap_or(d.n_min),
        n_max: a.n_max.unwrap_or(d.n_max),
        p_min: a.p_min.unwrap_or(d.p_min),
        p_max: a.p_max.unwrap_or(d.p_max),
        trials: a.trials.unwrap_or(d.trials),
        height: a.height.unwrap_or(d.height),
        scalar: match a.scalar {
            Some(ScalarArg::Rational) => ScalarVariant::Rational,
            Some(ScalarArg::Gaussian) => ScalarVariant::Gaussian,
            Some(ScalarArg::Mixed) => ScalarVariant::Mixed,
            None => d.scalar,
        },
        case: a.case.clone().or(d.case),
        m_max: a.m_max.unwrap_or(d.m_max),
    }
}

fn out_dir(flag: &Option<PathBuf>, file: Option<&str>) -> PathBuf {
    flag.clone()
        .or_else(|| file.map(PathBuf::from))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let (campaigns, file_dir) = match &a.campaign {
        Some(path) => {
            let file = CampaignFile::parse(&fs::read_to_string(path)?)?;
            let mut cs = file.resolve()?;
            if let Some(t) = a.tag {
                cs.retain(|c| c.tag == t);
            }
            if cs.is_empty() {
                return Err(Failure::Usage("no campaign selected".into()));
            }
            (cs, file.out_dir)
        }
        None => {
            let tag = a.tag.ok_or_else(|| Failure::Usage("verify needs a tag or --campaign".into()))?;
            (vec![flag_campaign(tag, a)], None)
        }
    };
    let dir = out_dir(&a.out, file_dir.as_deref());
    fs::create_dir_all(&dir)?;
    let mut failed = false;
    for (i, c) in campaigns.iter().enumerate() {
        let report: Report = run_campaign(c)?;
        let name = if campaigns.len() == 1 { format!("{}.json", c.tag.name()) } else { format!("{:02}-{}.json", i + 1, c.tag.name()) };
        let path = dir.join(name);
        fs::write(&path, report.to_json() + "\n")?;
        let s = &report.summary;
        println!(
            "{}: {} run, {} passed, {} failed, {} skipped (pole) -> {}",
            c.tag.name(),
            s.run,
            s.passed,
            s.failed,
            s.skipped,
            path.display()
        );
        for case in report.cases.iter().filter(|c| c.status == dmpl::suite::Status::Fail).take(10) {
            eprintln!("  FAIL {}", case.id);
        }
        failed |= !report.all_passed();
    }
    if failed {
        Err(Failure::Identity)
    } else {
        Ok(())
    }
}

fn gaussian_list(s: &str) -> Result<Vec<GaussianRational>, Error> {
    parse_scalars(s)?.iter().map(ExactScalar::to_gaussian).collect()
}

fn cmd_trend(a: &TrendArgs) -> CmdResult {
    let ns = parse_usizes(&a.n_list)?;
    let report: TrendReport = match a.kind {
        TrendKind::Prop25 => {
            let k = Index::parse(required(&a.index, "index")?)?;
            prop25_trend(&k, &gaussian_list(required(&a.z, "z")?)?, &ns)?
        }
        TrendKind::Duality => {
            let k = Index::parse(required(&a.index, "index")?)?;
            duality_trend(&DualizablePair::new(k, gaussian_list(required(&a.z, "z")?)?)?, &ns)?
        }
        TrendKind::Shuffle | TrendKind::Adsr => {
            let w1 = Word::parse(required(&a.w1, "w1")?)?;
            let w0 = Word::parse(required(&a.w0, "w0")?)?;
            if matches!(a.kind, TrendKind::Shuffle) {
                shuffle_trend(&w1, &w0, &ns)?
            } else {
                adsr_trend(&w1, &w0, &ns)?
            }
        }
    };
    match &a.csv {
        Some(path) => {
            fs::write(path, report.to_csv())?;
            fs::write(sidecar(path), report.to_json() + "\n")?;
        }
        None => print!("{}", report.to_csv()),
    }
    eprintln!(
        "{} {}: scale {}, raw decreasing {}, bounded {}, exact zero {} (finite-N evidence, not proof)",
        report.kind, report.label, report.scale, report.raw_decreasing, report.bounded, report.exact_zero
    );
    Ok(())
}

fn sidecar(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Trend(a) => cmd_trend(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Pole(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
