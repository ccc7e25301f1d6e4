//! Command-line front end.

mod cache;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use cache::{Cache, MomentRow};

use crate::ansatzfit::{
    collect_moment_data, fit_moment, fit_polynomial, fit_report, FitMode, FitSpec,
};
use crate::error::{Error, Result};
use crate::exactmath::{rational_to_f64, BigRational, RadicalNumber};
use crate::limitdist::{compare_limits, z_moments};
use crate::moments::{brute_polynomial, check_theorem_domain, Engine, MomentSet, TheoremId};
use crate::partitions::{enumerate_st_cores, CorePair};
use crate::pathdp::{calibrate_conventions, default_candidates};

#[derive(Debug, Parser)]
#[command(
    name = "coresize",
    version,
    about = "Exact size statistics of simultaneous (s,t)-core partitions"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Directory for cached polynomials and moment data.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Also print decimal approximations (display only).
    #[arg(long, global = true)]
    pub float: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    /// Path DP, full polynomial.
    Dp,
    /// Path DP over moment jets.
    Fast,
    /// Explicit enumeration.
    Brute,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Dp => Engine::Full,
            EngineArg::Fast => Engine::FastMoments,
            EngineArg::Brute => Engine::Brute,
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub t: u32,
}

impl PairArgs {
    fn pair(&self) -> Result<CorePair> {
        CorePair::new(self.s, self.t)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every (s,t)-core.
    Enumerate(PairArgs),
    /// Size generating polynomial.
    Genpoly {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = EngineArg::Dp)]
        engine: EngineArg,
    },
    /// Exact raw, central and standardized moments of the size.
    Moments {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 6)]
        max: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::Dp)]
        engine: EngineArg,
    },
    /// Check a closed-form moment polynomial against computed moments.
    Verify {
        #[arg(long)]
        theorem: u8,
        /// File of pairs, one `s,t` per line or a JSON list of `[s, t]`.
        #[arg(long, conflicts_with = "range")]
        pairs: Option<PathBuf>,
        /// All admissible pairs with t at most this bound.
        #[arg(long)]
        range: Option<u32>,
        #[arg(long, value_enum, default_value_t = EngineArg::Fast)]
        engine: EngineArg,
    },
    /// Rediscover a moment polynomial from exact data.
    Fit {
        #[arg(long)]
        moment: usize,
        #[arg(long, default_value = "biv")]
        mode: FitMode,
        #[arg(long)]
        degree: Option<u32>,
        /// Use every admissible pair with t at most this bound instead of the minimal schedule.
        #[arg(long)]
        max_st: Option<u32>,
        /// Closed form to compare against.
        #[arg(long)]
        reference: Option<u8>,
        /// Fit without tying symmetric coefficients.
        #[arg(long)]
        asymmetric: bool,
    },
    /// Moments of the limiting distribution.
    Limit {
        #[arg(long, default_value_t = 9)]
        max: usize,
    },
    /// Compare limiting standardized moments of core sizes with those of the limiting law.
    Compare {
        #[arg(long, default_value_t = 9)]
        max: usize,
    },
    /// Determine the DP offset and orientation against enumeration.
    Calibrate {
        #[arg(long, default_value_t = 8)]
        max_t: u32,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command before it is mapped to an exit code.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code:
/// 0 on success, 1 on any mismatch, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(Error::Parse(format!(
            "cannot start {} worker threads: {e}",
            cli.jobs.unwrap_or(0)
        ))),
    };
    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotCoprime { .. }
        | Error::Parse(_)
        | Error::Io(_)
        | Error::UnknownTheorem(_)
        | Error::TheoremDomain { .. }
        | Error::UnsupportedOrder { .. }
        | Error::InvalidFit(_)
        | Error::InvalidPartition(_) => 2,
        _ => 1,
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let cache = Cache::new(cli.cache.as_deref())?;
    let ctx = Context {
        format: cli.format,
        float: cli.float,
        cache,
    };
    match &cli.command {
        Command::Enumerate(p) => ctx.enumerate(p.pair()?),
        Command::Genpoly { pair, engine } => ctx.genpoly(pair.pair()?, (*engine).into()),
        Command::Moments { pair, max, engine } => ctx.moments(pair.pair()?, *max, (*engine).into()),
        Command::Verify {
            theorem,
            pairs,
            range,
            engine,
        } => {
            let id = TheoremId::new(*theorem)?;
            let pairs = match (pairs, range) {
                (Some(path), _) => read_pairs(path)?,
                (None, Some(max_t)) => default_pairs(id, *max_t),
                (None, None) => {
                    return Err(Error::Parse(
                        "verify needs --pairs FILE or --range N".into(),
                    ))
                }
            };
            ctx.verify(id, &pairs, (*engine).into())
        }
        Command::Fit {
            moment,
            mode,
            degree,
            max_st,
            reference,
            asymmetric,
        } => {
            let mut spec = FitSpec::new(*moment, *mode);
            if let Some(d) = degree {
                spec = spec.with_degree(*d);
            }
            if *asymmetric {
                spec = spec.with_symmetry(false);
            }
            let reference = reference.map(TheoremId::new).transpose()?;
            ctx.fit(&spec, *max_st, reference)
        }
        Command::Limit { max } => ctx.limit(*max),
        Command::Compare { max } => ctx.compare(*max),
        Command::Calibrate { max_t, out } => ctx.calibrate(*max_t, out.as_ref()),
    }
}

/// Pairs admissible for `id` with `t ≤ max_t`, ordered by `(s+t, s)`.
fn default_pairs(id: TheoremId, max_t: u32) -> Vec<CorePair> {
    CorePair::coprime_pairs_up_to(max_t)
        .into_iter()
        .filter(|p| check_theorem_domain(id, *p).is_ok())
        .collect()
}

fn read_pairs(path: &PathBuf) -> Result<Vec<CorePair>> {
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with('[') {
        let raw: Vec<(u32, u32)> = serde_json::from_str(&text)?;
        return raw.into_iter().map(|(s, t)| CorePair::new(s, t)).collect();
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let nums: Vec<u32> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse()
                        .map_err(|_| Error::Parse(format!("bad pair line '{line}'")))
                })
                .collect::<Result<_>>()?;
            match nums.as_slice() {
                [s, t] => CorePair::new(*s, *t),
                _ => Err(Error::Parse(format!("bad pair line '{line}'"))),
            }
        })
        .collect()
}

struct Context {
    format: Format,
    float: bool,
    cache: Cache,
}

fn csv_row(out: &mut String, pair: CorePair, r: usize, v: &BigRational) {
    let _ = writeln!(
        out,
        "{},{},{},{},{}",
        pair.s(),
        pair.t(),
        r,
        v.numer(),
        v.denom()
    );
}

const CSV_HEADER: &str = "s,t,r,value_num,value_den\n";

impl Context {
    fn no_csv(&self, what: &str) -> Result<()> {
        if self.format == Format::Csv {
            return Err(Error::Parse(format!(
                "csv output is not available for {what}"
            )));
        }
        Ok(())
    }

    fn rational(&self, v: &BigRational) -> String {
        if self.float {
            format!("{v}  (~{:.6})", rational_to_f64(v))
        } else {
            v.to_string()
        }
    }

    fn radical(&self, v: &RadicalNumber) -> String {
        if self.float {
            format!("{v}  (~{:.6})", v.to_f64())
        } else {
            v.to_string()
        }
    }

    fn json(&self, v: Value) -> Result<Outcome> {
        Ok(Outcome::ok(serde_json::to_string_pretty(&v)? + "\n"))
    }

    fn enumerate(&self, pair: CorePair) -> Result<Outcome> {
        self.no_csv("enumerate")?;
        let cores = enumerate_st_cores(pair);
        match self.format {
            Format::Json => self.json(json!(cores
                .iter()
                .map(|c| c.parts().to_vec())
                .collect::<Vec<_>>())),
            _ => Ok(Outcome::ok(
                cores.iter().map(|c| c.compact() + "\n").collect(),
            )),
        }
    }

    fn genpoly(&self, pair: CorePair, engine: Engine) -> Result<Outcome> {
        self.no_csv("genpoly")?;
        let f = match engine {
            Engine::Brute => brute_polynomial(pair),
            _ => self.cache.size_polynomial(pair)?,
        };
        match self.format {
            Format::Json => self.json(json!({
                "s": pair.s(),
                "t": pair.t(),
                "count": f.coefficient_sum().to_string(),
                "polynomial": f.to_json(),
                "text": f.to_text(),
            })),
            _ => Ok(Outcome::ok(format!("{f}\n"))),
        }
    }

    fn moment_set(&self, pair: CorePair, order: usize, engine: Engine) -> Result<MomentSet> {
        let order = order.max(1);
        match engine {
            Engine::Brute => MomentSet::from_polynomial(&brute_polynomial(pair), order),
            _ => {
                let row = self.cache.moment_rows(&[pair], order, engine)?.remove(0);
                let mut central = vec![
                    BigRational::from_integer(1.into()),
                    BigRational::from_integer(0.into()),
                ];
                central.extend(row[2..].iter().cloned());
                MomentSet::from_central(row[0].clone(), &row[1], central)
            }
        }
    }

    fn moments(&self, pair: CorePair, max: usize, engine: Engine) -> Result<Outcome> {
        let m = self.moment_set(pair, max, engine)?;
        let max = m.order();
        match self.format {
            Format::Csv => {
                let mut out = CSV_HEADER.to_string();
                csv_row(&mut out, pair, 1, m.mean());
                for r in 2..=max {
                    csv_row(&mut out, pair, r, &m.central[r]);
                }
                Ok(Outcome::ok(out))
            }
            Format::Json => self.json(json!({
                "s": pair.s(),
                "t": pair.t(),
                "count": m.total_count.to_string(),
                "raw": m.raw.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "central": m.central.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "standardized": m.standardized.iter().enumerate()
                    .map(|(i, a)| json!({"k": i + 3, "value": a.to_string()}))
                    .collect::<Vec<_>>(),
            })),
            Format::Text => {
                let mut out = format!("{pair}: {} cores\n", m.total_count);
                let _ = writeln!(out, "mean {}", self.rational(m.mean()));
                for r in 2..=max {
                    let _ = writeln!(out, "m_{r} {}", self.rational(&m.central[r]));
                }
                for (i, a) in m.standardized.iter().enumerate() {
                    let _ = writeln!(out, "alpha_{} {}", i + 3, self.radical(a));
                }
                Ok(Outcome::ok(out))
            }
        }
    }

    fn verify(&self, id: TheoremId, pairs: &[CorePair], engine: Engine) -> Result<Outcome> {
        for &p in pairs {
            check_theorem_domain(id, p)?;
        }
        let poly = id.polynomial();
        let r = id.order();
        let computed: Vec<BigRational> = match engine {
            Engine::Brute => pairs
                .iter()
                .map(|&p| {
                    Ok(self
                        .moment_set(p, r, engine)?
                        .theorem_quantity(id)
                        .cloned()
                        .expect("order"))
                })
                .collect::<Result<_>>()?,
            _ => self
                .cache
                .moment_rows(pairs, r, engine)?
                .into_iter()
                .map(|row| row[r].clone())
                .collect(),
        };
        let rows: Vec<(CorePair, BigRational, BigRational)> = pairs
            .iter()
            .zip(computed)
            .map(|(&p, c)| (p, c, poly.eval_at(p.s(), p.t())))
            .collect();
        let ok = rows.iter().all(|(_, c, want)| c == want);
        let text = match self.format {
            Format::Csv => {
                let mut out = CSV_HEADER.to_string();
                for (p, c, _) in &rows {
                    csv_row(&mut out, *p, r, c);
                }
                out
            }
            Format::Json => {
                serde_json::to_string_pretty(&json!({
                    "theorem": id.index(),
                    "all_match": ok,
                    "pairs": rows.iter().map(|(p, c, want)| json!({
                        "s": p.s(), "t": p.t(),
                        "computed": c.to_string(), "predicted": want.to_string(), "match": c == want,
                    })).collect::<Vec<_>>(),
                }))? + "\n"
            }
            Format::Text => {
                let mut out = String::new();
                for (p, c, want) in &rows {
                    let verdict = if c == want { "match" } else { "MISMATCH" };
                    let _ = writeln!(
                        out,
                        "{p}: computed {}  predicted {}  {verdict}",
                        self.rational(c),
                        self.rational(want)
                    );
                }
                let bad = rows.iter().filter(|(_, c, w)| c != w).count();
                let _ = writeln!(out, "{id}: {} pairs, {bad} mismatches", rows.len());
                out
            }
        };
        Ok(Outcome { text, ok })
    }

    fn fit(
        &self,
        spec: &FitSpec,
        max_st: Option<u32>,
        reference: Option<TheoremId>,
    ) -> Result<Outcome> {
        self.no_csv("fit")?;
        let result = match max_st {
            Some(bound) => {
                let pairs: Vec<CorePair> = match spec.mode {
                    FitMode::Bivariate => CorePair::coprime_pairs_up_to(bound),
                    FitMode::Successive => (1..bound)
                        .map(|s| CorePair::new(s, s + 1))
                        .collect::<Result<_>>()?,
                };
                let data = if self.cache.dir().is_some() {
                    let rows = self
                        .cache
                        .moment_rows(&pairs, spec.order, Engine::FastMoments)?;
                    pairs
                        .iter()
                        .zip(rows)
                        .map(|(p, row)| (*p, row[spec.order].clone()))
                        .collect()
                } else {
                    collect_moment_data(spec.order, &pairs, Engine::FastMoments)?
                };
                fit_polynomial(spec, &data)?
            }
            None => fit_moment(spec, 0, Engine::FastMoments)?,
        };
        let report = fit_report(&result, reference);
        let ok = report.residual_check && report.matches_reference != Some(false);
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(&report.to_json())? + "\n",
            _ => report.to_string(),
        };
        Ok(Outcome { text, ok })
    }

    fn limit(&self, max: usize) -> Result<Outcome> {
        self.no_csv("limit")?;
        let z = z_moments(max)?;
        if self.format == Format::Json {
            return self.json(z.to_json());
        }
        let mut out = String::new();
        for k in 1..=max {
            let _ = writeln!(out, "E[Z^{k}] {}", self.rational(&z.straight[k]));
        }
        for k in 2..=max {
            let _ = writeln!(out, "m_{k} {}", self.rational(&z.central[k]));
        }
        for k in 3..=max {
            let _ = writeln!(
                out,
                "alpha_{k} {}",
                self.radical(z.alpha(k).expect("order"))
            );
        }
        Ok(Outcome::ok(out))
    }

    fn compare(&self, max: usize) -> Result<Outcome> {
        self.no_csv("compare")?;
        let report = compare_limits(max)?;
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(&report.to_json())? + "\n",
            _ => report.to_string(),
        };
        Ok(Outcome {
            text,
            ok: report.all_equal(),
        })
    }

    fn calibrate(&self, max_t: u32, out: Option<&PathBuf>) -> Result<Outcome> {
        self.no_csv("calibrate")?;
        let cal = calibrate_conventions(&default_candidates(), max_t)?;
        let report = serde_json::to_string_pretty(&cal.to_json())? + "\n";
        if let Some(path) = out {
            fs::write(path, &report)?;
        }
        if let Some(dir) = self.cache.dir() {
            fs::write(dir.join("calibration.json"), &report)?;
        }
        match self.format {
            Format::Json => Ok(Outcome::ok(report)),
            _ => Ok(Outcome::ok(format!(
                "offset b = {}, orientation {}, checked {} pairs\n",
                cal.conventions.offset,
                cal.conventions.orientation,
                cal.pairs_checked.len()
            ))),
        }
    }
}
