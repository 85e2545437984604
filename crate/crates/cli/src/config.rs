//! Command-line flags, config files and environment defaults.
//!
//! Settings resolve in this order: flag, config file, environment,
//! built-in default.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use exceptional_core::highprec::{Decimal, PrecisionContext, ScheduleMode};
use num_bigint::BigUint;
use num_rational::BigRational;

pub const ENV_BITS: &str = "EXCEPTIONAL_BITS";
pub const ENV_MAX_BITS: &str = "EXCEPTIONAL_MAX_BITS";

#[derive(Parser, Debug)]
#[command(name = "exceptional", version, about = "Certified search for exceptional points over Fibonacci candidate sets")]
pub struct Cli {
    /// key=value file with defaults for the flags below
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PrecisionArgs {
    /// working precision in bits (at least 53)
    #[arg(long)]
    pub bits: Option<u32>,
    /// escalation ceiling in bits
    #[arg(long)]
    pub max_bits: Option<u32>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// write the formatted output here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ScheduleArgs {
    #[arg(long, value_enum)]
    pub schedule: Option<ScheduleKind>,
    /// t_i - 1 values, one per line (with --schedule file)
    #[arg(long, value_name = "PATH")]
    pub schedule_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the three hypotheses at every scheduled t_i and emit a certificate
    Verify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate s_i and the scheduled t_i
    Stable {
        #[arg(long)]
        max_i: usize,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List F_n, F_n^+ or the lattice points
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SetKind::Fplus)]
        set: SetKind,
        /// stop with exit code 5 after this many lattice points
        #[arg(long)]
        limit: Option<usize>,
        /// allow lattice enumeration beyond n = 25
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form cardinalities
    Card {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the F_n^+ minimum with the brute-force lattice minimum
    OracleCheck {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// largest n the oracle accepts (default 20)
        #[arg(long)]
        oracle_max_n: Option<usize>,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Grid scan of the minimizer of H for a prime pair
    Switch {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        /// use psi = phi instead of a prime pair
        #[arg(long, conflicts_with_all = ["p", "q"])]
        synthetic_golden: bool,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t_lo: Option<String>,
        #[arg(long)]
        t_hi: Option<String>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum)]
        set: Option<SwitchSet>,
        /// bisection steps on each switch interval
        #[arg(long, default_value_t = 0)]
        refine: usize,
        #[arg(long)]
        oracle_max_n: Option<usize>,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleKind {
    Figure1,
    Auto,
    Midpoint,
    File,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    F,
    Fplus,
    Lattice,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwitchSet {
    Fplus,
    Lattice,
}

/// A rejected flag or setting.
#[derive(Debug)]
pub struct UsageError {
    pub flag: String,
    pub message: String,
}

impl UsageError {
    pub fn new(flag: &str, message: impl Into<String>) -> Self {
        UsageError {
            flag: flag.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid --{}: {}", self.flag, self.message)
    }
}

impl std::error::Error for UsageError {}

const CONFIG_KEYS: [&str; 10] = [
    "bits",
    "max_bits",
    "format",
    "schedule",
    "schedule_file",
    "oracle_max_n",
    "grid",
    "t_lo",
    "t_hi",
    "set",
];

/// Parsed `key=value` settings.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
    base: PathBuf,
}

impl ConfigFile {
    pub fn parse(text: &str, base: &Path) -> Result<Self, UsageError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                UsageError::new("config", format!("line {}: expected key=value", lineno + 1))
            })?;
            let key = k.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(UsageError::new(
                    "config",
                    format!("line {}: unknown key {key:?}", lineno + 1),
                ));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(ConfigFile {
            values,
            base: base.to_path_buf(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError::new("config", format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, UsageError> {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| UsageError::new(&key.replace('_', "-"), format!("cannot parse {v:?} from config")))
            })
            .transpose()
    }

    fn value_enum<T: ValueEnum>(&self, key: &str) -> Result<Option<T>, UsageError> {
        self.get(key)
            .map(|v| {
                T::from_str(v, true)
                    .map_err(|_| UsageError::new(&key.replace('_', "-"), format!("unknown value {v:?} in config")))
            })
            .transpose()
    }

    /// Paths in a config file are relative to the file.
    fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(|v| self.base.join(v))
    }
}

fn env_u32(name: &str, flag: &str) -> Result<Option<u32>, UsageError> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| UsageError::new(flag, format!("{name}={v:?} is not an integer"))),
        Err(_) => Ok(None),
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub precision: PrecisionContext,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub schedule: Option<ScheduleMode>,
    pub oracle_max_n: usize,
    pub pair: Option<(BigUint, BigUint)>,
    pub t_lo: BigRational,
    pub t_hi: BigRational,
    pub grid: usize,
    pub switch_set: SwitchSet,
}

pub fn resolve_precision(args: &PrecisionArgs, cfg: &ConfigFile) -> Result<PrecisionContext, UsageError> {
    let default = PrecisionContext::default();
    let bits = match args.bits {
        Some(b) => b,
        None => match cfg.parsed("bits")? {
            Some(b) => b,
            None => env_u32(ENV_BITS, "bits")?.unwrap_or(default.bits()),
        },
    };
    let max_bits = match args.max_bits {
        Some(b) => b,
        None => match cfg.parsed("max_bits")? {
            Some(b) => b,
            None => env_u32(ENV_MAX_BITS, "max-bits")?.unwrap_or(default.max_bits().max(bits)),
        },
    };
    PrecisionContext::new(bits, max_bits).map_err(|e| {
        let flag = if bits < PrecisionContext::MIN_BITS { "bits" } else { "max-bits" };
        UsageError::new(flag, e.to_string())
    })
}

pub fn resolve_format(args: &OutputArgs, cfg: &ConfigFile, default: Format) -> Result<Format, UsageError> {
    Ok(match args.format {
        Some(f) => f,
        None => cfg.value_enum("format")?.unwrap_or(default),
    })
}

/// Reads `t_i - 1` decimals, one per line; `#` starts a comment.
pub fn read_schedule_file(path: &Path) -> Result<Vec<Decimal>, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError::new("schedule-file", format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let d: Decimal = line.parse().map_err(|_| {
            UsageError::new("schedule-file", format!("line {}: {line:?} is not a decimal", lineno + 1))
        })?;
        out.push(d);
    }
    Ok(out)
}

pub fn resolve_schedule(
    args: &ScheduleArgs,
    cfg: &ConfigFile,
    default: ScheduleKind,
) -> Result<ScheduleMode, UsageError> {
    let kind = match args.schedule {
        Some(k) => k,
        None => cfg.value_enum("schedule")?.unwrap_or(default),
    };
    let file = args.schedule_file.clone().or_else(|| cfg.path("schedule_file"));
    match (kind, file) {
        (ScheduleKind::File, Some(path)) => Ok(ScheduleMode::File(read_schedule_file(&path)?)),
        (ScheduleKind::File, None) => Err(UsageError::new(
            "schedule-file",
            "required with --schedule file",
        )),
        (_, Some(_)) if args.schedule_file.is_some() => Err(UsageError::new(
            "schedule-file",
            "only valid with --schedule file",
        )),
        (ScheduleKind::Figure1, _) => Ok(ScheduleMode::Figure1),
        (ScheduleKind::Auto, _) => Ok(ScheduleMode::Auto),
        (ScheduleKind::Midpoint, _) => Ok(ScheduleMode::Midpoint),
    }
}

pub fn resolve_oracle_max_n(flag: Option<usize>, cfg: &ConfigFile) -> Result<usize, UsageError> {
    Ok(match flag {
        Some(v) => v,
        None => cfg
            .parsed("oracle_max_n")?
            .unwrap_or(exceptional_core::verifier::ORACLE_MAX_N),
    })
}

pub fn parse_decimal(flag: &str, s: &str) -> Result<BigRational, UsageError> {
    let d: Decimal = s
        .parse()
        .map_err(|_| UsageError::new(flag, format!("{s:?} is not a decimal")))?;
    Ok(d.to_rational())
}

pub fn parse_uint(flag: &str, s: &str) -> Result<BigUint, UsageError> {
    s.trim()
        .parse()
        .map_err(|_| UsageError::new(flag, format!("{s:?} is not a non-negative integer")))
}

pub fn check_n(n: usize) -> Result<(), UsageError> {
    if n < 3 {
        return Err(UsageError::new("n", format!("need n >= 3, got {n}")));
    }
    Ok(())
}

/// Builds the resolved configuration for a subcommand.
pub fn resolve(cli: &Cli) -> Result<RunConfig, UsageError> {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let empty_prec = PrecisionArgs::default();
    let (prec_args, out_args, default_format) = match &cli.command {
        Command::Verify { precision, output, .. } => (precision, output, Format::Json),
        Command::Stable { precision, output, .. } => (precision, output, Format::Csv),
        Command::Enumerate { output, .. } | Command::Card { output, .. } => {
            (&empty_prec, output, Format::Text)
        }
        Command::OracleCheck { precision, output, .. } => (precision, output, Format::Text),
        Command::Switch { precision, output, .. } => (precision, output, Format::Text),
    };
    let precision = resolve_precision(prec_args, &cfg)?;
    let format = resolve_format(out_args, &cfg, default_format)?;

    let mut rc = RunConfig {
        precision,
        format,
        output: out_args.output.clone(),
        schedule: None,
        oracle_max_n: resolve_oracle_max_n(None, &cfg)?,
        pair: None,
        t_lo: BigRational::from_integer(1.into()),
        t_hi: BigRational::from_integer(2.into()),
        grid: 101,
        switch_set: SwitchSet::Fplus,
    };
    match &cli.command {
        Command::Verify { n, schedule, .. } => {
            check_n(*n)?;
            rc.schedule = Some(resolve_schedule(schedule, &cfg, ScheduleKind::Figure1)?);
        }
        Command::Stable { max_i, schedule, .. } => {
            if *max_i < 2 {
                return Err(UsageError::new("max-i", "need max-i >= 2"));
            }
            let default = if *max_i < exceptional_core::highprec::FIGURE1_MAX_N {
                ScheduleKind::Figure1
            } else {
                ScheduleKind::Auto
            };
            rc.schedule = Some(resolve_schedule(schedule, &cfg, default)?);
        }
        Command::Enumerate { n, .. } | Command::Card { n, .. } => check_n(*n)?,
        Command::OracleCheck {
            n,
            schedule,
            oracle_max_n,
            ..
        } => {
            check_n(*n)?;
            rc.schedule = Some(resolve_schedule(schedule, &cfg, ScheduleKind::Auto)?);
            rc.oracle_max_n = resolve_oracle_max_n(*oracle_max_n, &cfg)?;
        }
        Command::Switch {
            p,
            q,
            synthetic_golden,
            n,
            t_lo,
            t_hi,
            grid,
            set,
            oracle_max_n,
            ..
        } => {
            check_n(*n)?;
            rc.pair = match (p, q, synthetic_golden) {
                (Some(p), Some(q), false) => Some((parse_uint("p", p)?, parse_uint("q", q)?)),
                (None, None, true) => None,
                (None, _, false) => return Err(UsageError::new("p", "required unless --synthetic-golden")),
                (_, None, false) => return Err(UsageError::new("q", "required unless --synthetic-golden")),
                _ => return Err(UsageError::new("synthetic-golden", "conflicts with --p/--q")),
            };
            if let Some(v) = t_lo.as_deref().or(cfg.get("t_lo")) {
                rc.t_lo = parse_decimal("t-lo", v)?;
            }
            if let Some(v) = t_hi.as_deref().or(cfg.get("t_hi")) {
                rc.t_hi = parse_decimal("t-hi", v)?;
            }
            rc.grid = match grid {
                Some(g) => *g,
                None => cfg.parsed("grid")?.unwrap_or(101),
            };
            if rc.grid < 2 {
                return Err(UsageError::new("grid", "need at least 2 points"));
            }
            if rc.t_lo <= BigRational::from_integer(0.into()) || rc.t_lo >= rc.t_hi {
                return Err(UsageError::new("t-lo", "need 0 < t-lo < t-hi"));
            }
            rc.switch_set = match set {
                Some(s) => *s,
                None => cfg.value_enum("set")?.unwrap_or(SwitchSet::Fplus),
            };
            rc.oracle_max_n = resolve_oracle_max_n(*oracle_max_n, &cfg)?;
        }
    }
    Ok(rc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_parsing() {
        let cfg = ConfigFile::parse("# defaults\nbits = 128\nmax-bits=512\n\nformat=text\n", Path::new(".")).unwrap();
        assert_eq!(cfg.get("bits"), Some("128"));
        assert_eq!(cfg.get("max_bits"), Some("512"));
        let p = resolve_precision(&PrecisionArgs::default(), &cfg).unwrap();
        assert_eq!((p.bits(), p.max_bits()), (128, 512));
        let flags = PrecisionArgs {
            bits: Some(200),
            max_bits: None,
        };
        let p = resolve_precision(&flags, &cfg).unwrap();
        assert_eq!((p.bits(), p.max_bits()), (200, 512));
        assert!(ConfigFile::parse("colour=red", Path::new(".")).is_err());
        assert!(ConfigFile::parse("bits", Path::new(".")).is_err());
    }

    #[test]
    fn precision_errors_name_the_flag() {
        let cfg = ConfigFile::default();
        let e = resolve_precision(
            &PrecisionArgs {
                bits: Some(20),
                max_bits: None,
            },
            &cfg,
        )
        .unwrap_err();
        assert_eq!(e.flag, "bits");
        let e = resolve_precision(
            &PrecisionArgs {
                bits: Some(128),
                max_bits: Some(64),
            },
            &cfg,
        )
        .unwrap_err();
        assert_eq!(e.flag, "max-bits");
    }
}
