//! Verification campaigns: exact sweeps that report pass/fail per case, and
//! trend runs for the asymptotic statements.

mod algebra;
mod diff;
mod exact;
mod fmzv;
mod misc;
pub mod trend;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::ParamPoint;
use crate::field::{Field, GaussianRational};
use crate::Rational;

pub use algebra::{harmonic_product_sides, sweep_params, underline_identity_sides, words_of_length};
pub use diff::{diff_case_label, diff_rhs, diff_sides, Side, DIFF_CASES};
pub use exact::{binomial_telescope, bridge_sides, connector_identity, main_sides, transport_chain};
pub use fmzv::{cleared_sides, hoffman_sides, underline_sides, zeta_mod_p};
pub use misc::{a_coefficient, stirling_pi4_sides};

/// Outcome of one exact check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedPole,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedPole => "skipped-pole",
        })
    }
}

/// One case of a campaign. Failures carry both sides as a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl CaseResult {
    fn new(id: String, status: Status) -> Self {
        CaseResult { id, status, point: None, lhs: None, rhs: None, note: None }
    }

    fn with_point(mut self, p: Option<String>) -> Self {
        self.point = p;
        self
    }

    /// Compares two exact values.
    pub fn compare<F: Field>(id: String, lhs: &F, rhs: &F) -> Self {
        if lhs == rhs {
            CaseResult::new(id, Status::Pass)
        } else {
            let mut c = CaseResult::new(id, Status::Fail);
            c.lhs = Some(lhs.to_exact().to_string());
            c.rhs = Some(rhs.to_exact().to_string());
            c
        }
    }

    /// Turns an evaluation error into a skipped or failed case.
    pub fn from_error(id: String, e: &Error) -> Self {
        let status = if e.is_pole() { Status::SkippedPole } else { Status::Fail };
        let mut c = CaseResult::new(id, status);
        c.note = Some(e.to_string());
        c
    }

    pub fn from_result<F: Field>(id: String, r: Result<(F, F)>) -> Self {
        match r {
            Ok((a, b)) => CaseResult::compare(id, &a, &b),
            Err(e) => CaseResult::from_error(id, &e),
        }
    }
}

/// Which scalars a sweep samples points from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarVariant {
    Rational,
    Gaussian,
    Mixed,
}

impl ScalarVariant {
    fn rational(self) -> bool {
        self != ScalarVariant::Gaussian
    }

    fn gaussian(self) -> bool {
        self != ScalarVariant::Rational
    }
}

/// The exact suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Main,
    Modified,
    Diff,
    Transport,
    Fmzv,
    Misc,
    Words,
}

impl Tag {
    pub const ALL: [Tag; 7] = [Tag::Main, Tag::Modified, Tag::Diff, Tag::Transport, Tag::Fmzv, Tag::Misc, Tag::Words];

    pub fn parse(s: &str) -> Result<Self> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown suite `{s}`")))
    }

    pub fn name(self) -> &'static str {
        match self {
            Tag::Main => "main",
            Tag::Modified => "modified",
            Tag::Diff => "diff",
            Tag::Transport => "transport",
            Tag::Fmzv => "fmzv",
            Tag::Misc => "misc",
            Tag::Words => "words",
        }
    }
}

/// A fully resolved campaign. Fields a suite does not use are ignored by it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Campaign {
    pub tag: Tag,
    pub seed: u64,
    pub max_weight: usize,
    pub max_depth: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub p_min: u64,
    pub p_max: u64,
    pub trials: usize,
    pub height: i64,
    pub scalar: ScalarVariant,
    /// Restricts the difference-equation suite to one case label (`1a` ... `3d`).
    pub case: Option<String>,
    pub m_max: usize,
}

impl Campaign {
    /// The default campaign of a suite, sized to its acceptance bounds.
    pub fn default_for(tag: Tag) -> Self {
        let base = Campaign {
            tag,
            seed: 1,
            max_weight: 5,
            max_depth: 3,
            n_min: 1,
            n_max: 40,
            p_min: 5,
            p_max: 97,
            trials: 5,
            height: 50,
            scalar: ScalarVariant::Mixed,
            case: None,
            m_max: 3,
        };
        match tag {
            Tag::Main | Tag::Modified => base,
            Tag::Diff => Campaign { max_depth: 5, n_min: 2, n_max: 15, trials: 3, ..base },
            Tag::Transport => Campaign { max_weight: 4, max_depth: 4, n_max: 12, trials: 3, ..base },
            Tag::Fmzv => Campaign { max_weight: 4, max_depth: 4, ..base },
            Tag::Misc => Campaign { n_max: 60, ..base },
            Tag::Words => Campaign { max_weight: 4, max_depth: 4, n_max: 25, ..base },
        }
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 || self.height < 1 || self.n_max < self.n_min || self.p_max < self.p_min {
            return Err(Error::domain("campaign bounds must be positive and ordered"));
        }
        Ok(())
    }
}

/// A campaign record as written in a campaign file: only `tag` is required,
/// everything else falls back to the suite defaults.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignSpec {
    pub tag: Option<Tag>,
    pub seed: Option<u64>,
    pub max_weight: Option<usize>,
    pub max_depth: Option<usize>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub p_min: Option<u64>,
    pub p_max: Option<u64>,
    pub trials: Option<usize>,
    pub height: Option<i64>,
    pub scalar: Option<ScalarVariant>,
    pub case: Option<String>,
    pub m_max: Option<usize>,
}

impl CampaignSpec {
    pub fn resolve(&self, global_seed: Option<u64>) -> Result<Campaign> {
        let tag = self.tag.ok_or_else(|| Error::parse("campaign without `tag`"))?;
        let d = Campaign::default_for(tag);
        let c = Campaign {
            tag,
            seed: self.seed.or(global_seed).unwrap_or(d.seed),
            max_weight: self.max_weight.unwrap_or(d.max_weight),
            max_depth: self.max_depth.unwrap_or(d.max_depth),
            n_min: self.n_min.unwrap_or(d.n_min),
            n_max: self.n_max.unwrap_or(d.n_max),
            p_min: self.p_min.unwrap_or(d.p_min),
            p_max: self.p_max.unwrap_or(d.p_max),
            trials: self.trials.unwrap_or(d.trials),
            height: self.height.unwrap_or(d.height),
            scalar: self.scalar.unwrap_or(d.scalar),
            case: self.case.clone().or(d.case),
            m_max: self.m_max.unwrap_or(d.m_max),
        };
        c.check()?;
        Ok(c)
    }
}

/// A file holding several campaigns.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignFile {
    pub seed: Option<u64>,
    pub out_dir: Option<String>,
    pub campaigns: Vec<CampaignSpec>,
}

impl CampaignFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::parse(format!("campaign file: {e}")))
    }

    pub fn resolve(&self) -> Result<Vec<Campaign>> {
        self.campaigns.iter().map(|c| c.resolve(self.seed)).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub run: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(cases: &[CaseResult]) -> Self {
        let count = |s| cases.iter().filter(|c| c.status == s).count();
        Summary {
            run: cases.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::SkippedPole),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub campaign: Campaign,
    pub summary: Summary,
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs one campaign. Cases are evaluated in parallel; the report keeps
/// their enumeration order.
pub fn run_campaign(c: &Campaign) -> Result<Report> {
    c.check()?;
    let cases = match c.tag {
        Tag::Main => exact::verify_main(c),
        Tag::Modified => exact::verify_modified(c),
        Tag::Diff => diff::verify_difference_equations(c)?,
        Tag::Transport => exact::verify_transport(c),
        Tag::Fmzv => fmzv::verify_fmzv(c)?,
        Tag::Misc => misc::verify_misc(c),
        Tag::Words => algebra::verify_word_algebra(c),
    };
    Ok(Report { campaign: c.clone(), summary: Summary::of(&cases), cases })
}

/// Evaluates jobs in parallel, preserving order.
pub(crate) fn run_jobs<J: Sync>(jobs: &[J], f: impl Fn(usize, &J) -> CaseResult + Sync + Send) -> Vec<CaseResult> {
    jobs.par_iter().enumerate().map(|(i, j)| f(i, j)).collect()
}

/// Seeded sampler; each case gets its own stream so results do not depend
/// on scheduling.
pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
}

/// Attempts per case before a point is reported as a skipped pole.
pub const RESAMPLE_LIMIT: usize = 64;

impl Sampler {
    pub fn new(seed: u64, stream: u64, height: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng, height }
    }

    /// A rational of height at most `height`.
    pub fn rational(&mut self) -> Rational {
        let h = self.height;
        let num = self.rng.random_range(-h..=h);
        let den = self.rng.random_range(1..=h);
        Rational::new(num.into(), den.into())
    }

    /// A rational distinct from every value in `avoid`.
    pub fn rational_avoiding(&mut self, avoid: &[Rational]) -> Rational {
        loop {
            let q = self.rational();
            if !avoid.contains(&q) {
                return q;
            }
        }
    }

    pub fn point(&mut self, r: usize) -> ParamPoint<Rational> {
        ParamPoint::new((), (0..r).map(|_| self.rational()).collect())
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.random_range(0..n)
    }
}

/// The Gaussian sample points `i, -i, 1+i`.
pub fn gaussian_pool() -> [GaussianRational; 3] {
    [GaussianRational::from_ints(0, 1), GaussianRational::from_ints(0, -1), GaussianRational::from_ints(1, 1)]
}

/// Depth-`r` point taking the pool values cyclically from offset `t`.
pub fn gaussian_point(r: usize, t: usize) -> ParamPoint<GaussianRational> {
    let pool = gaussian_pool();
    ParamPoint::new((), (0..r).map(|j| pool[(t + j) % pool.len()].clone()).collect())
}

/// Draws points until `eval` avoids a pole, up to [`RESAMPLE_LIMIT`] tries.
pub(crate) fn sample_case<F: Field>(
    id: String,
    sampler: &mut Sampler,
    mut draw: impl FnMut(&mut Sampler) -> ParamPoint<F>,
    eval: impl Fn(&ParamPoint<F>) -> Result<(F, F)>,
) -> CaseResult {
    let mut last = None;
    for _ in 0..RESAMPLE_LIMIT {
        let x = draw(sampler);
        match eval(&x) {
            Err(e) if e.is_pole() => last = Some((x, e)),
            r => return CaseResult::from_result(id, r).with_point(Some(x.to_string())),
        }
    }
    let (x, e) = last.expect("at least one attempt");
    CaseResult::from_error(id, &e).with_point(Some(x.to_string()))
}

pub(crate) fn sign<F: Field>(negate: bool, v: F) -> F {
    if negate {
        -v
    } else {
        v
    }
}
