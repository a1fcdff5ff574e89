use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use elliptic_toda::arith::{digits_to_bits, Real};
use elliptic_toda::degenerate::DegenerateParams;
use elliptic_toda::elliptic::EllipticContext;
use elliptic_toda::toda::{CaseTag, TodaParams};
use elliptic_toda::verify::DEFAULT_SEED;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    I,
    Ii,
    Sn,
    Cn,
    Dn,
    Wdot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Mp,
    Meixner,
    Krall,
    Trig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Inputs shared by every subcommand. Numbers are taken as decimal strings
/// and parsed at the working precision.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Largest root e1 (requires --e2).
    #[arg(
        long,
        global = true,
        env = "ELLIPTIC_TODA_E1",
        requires = "e2",
        conflicts_with = "k2"
    )]
    pub e1: Option<String>,
    /// Middle root e2; e3 = -e1 - e2.
    #[arg(long, global = true, env = "ELLIPTIC_TODA_E2", requires = "e1")]
    pub e2: Option<String>,
    /// Modulus k², with the normalization e1 - e3 = 1.
    #[arg(long, global = true, env = "ELLIPTIC_TODA_K2")]
    pub k2: Option<String>,
    /// Frequency w.
    #[arg(long, global = true, env = "ELLIPTIC_TODA_W", default_value = "1")]
    pub w: String,
    /// Time t.
    #[arg(
        long,
        global = true,
        env = "ELLIPTIC_TODA_T",
        default_value = "0",
        allow_hyphen_values = true
    )]
    pub t: String,
    #[arg(
        long = "case",
        global = true,
        env = "ELLIPTIC_TODA_CASE",
        value_enum,
        default_value = "i"
    )]
    pub case: CaseArg,
    /// A degenerate family; takes precedence over --case.
    #[arg(long, global = true, env = "ELLIPTIC_TODA_FAMILY", value_enum)]
    pub family: Option<FamilyArg>,
    /// Family shift q.
    #[arg(
        long,
        global = true,
        env = "ELLIPTIC_TODA_Q",
        default_value = "1",
        allow_hyphen_values = true
    )]
    pub q: String,
    #[arg(long, global = true, env = "ELLIPTIC_TODA_N_MAX", default_value_t = 10)]
    pub n_max: usize,
    /// Working precision in decimal digits.
    #[arg(
        long,
        global = true,
        env = "ELLIPTIC_TODA_PRECISION",
        default_value_t = 40
    )]
    pub precision: u32,
    /// Tail bound for measure truncation.
    #[arg(
        long,
        global = true,
        env = "ELLIPTIC_TODA_TAIL_EPS",
        default_value = "1e-30"
    )]
    pub tail_eps: String,
    /// Output format; tables default to csv and reports to json.
    #[arg(long, global = true, env = "ELLIPTIC_TODA_FORMAT", value_enum)]
    pub format: Option<Format>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, env = "ELLIPTIC_TODA_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "ELLIPTIC_TODA_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// A coefficient source chosen on the command line.
pub enum Subject {
    Elliptic(TodaParams),
    Degenerate(DegenerateParams),
}

impl Common {
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.precision)
    }

    pub fn real(&self, flag: &str, value: &str) -> Result<Real> {
        Real::parse(value, self.bits())
            .with_context(|| format!("--{flag}: cannot parse {value:?} as a number"))
    }

    pub fn t(&self) -> Result<Real> {
        self.real("t", &self.t)
    }

    pub fn tail_eps(&self) -> Result<Real> {
        self.real("tail-eps", &self.tail_eps)
    }

    pub fn context(&self) -> Result<Arc<EllipticContext>> {
        let ctx = match (&self.e1, &self.e2, &self.k2) {
            (Some(e1), Some(e2), None) => EllipticContext::from_decimal(e1, e2, self.precision)?,
            (None, None, Some(k2)) => {
                EllipticContext::from_k2(&self.real("k2", k2)?, self.precision)?
            }
            (None, None, None) => EllipticContext::from_decimal("0.7", "0.1", self.precision)?,
            _ => bail!("give either --e1 and --e2 or --k2"),
        };
        Ok(Arc::new(ctx))
    }

    pub fn elliptic(&self) -> Result<TodaParams> {
        let ctx = self.context()?;
        let w = self.real("w", &self.w)?;
        Ok(match self.case {
            CaseArg::I => TodaParams::case_i(ctx, w)?,
            CaseArg::Ii => TodaParams::case_ii(ctx, w)?,
            CaseArg::Sn => TodaParams::family(ctx, CaseTag::SnFamily)?,
            CaseArg::Cn => TodaParams::family(ctx, CaseTag::CnFamily)?,
            CaseArg::Dn => TodaParams::family(ctx, CaseTag::DnFamily)?,
            CaseArg::Wdot => TodaParams::wdot(ctx)?,
        })
    }

    pub fn degenerate(&self, family: FamilyArg) -> Result<DegenerateParams> {
        let t = self.t()?;
        let w = self.real("w", &self.w)?;
        let q = self.real("q", &self.q)?;
        Ok(match family {
            FamilyArg::Mp => DegenerateParams::mp(t)?,
            FamilyArg::Meixner => DegenerateParams::meixner_modified(w, t, q)?,
            FamilyArg::Krall => DegenerateParams::krall_laguerre(t, q)?,
            FamilyArg::Trig => DegenerateParams::trig(w, t, q)?,
        })
    }

    pub fn subject(&self) -> Result<Subject> {
        Ok(match self.family {
            Some(f) => Subject::Degenerate(self.degenerate(f)?),
            None => Subject::Elliptic(self.elliptic()?),
        })
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn digits(&self) -> u32 {
        self.precision
    }
}

impl Common {
    pub fn subject_name(&self) -> String {
        match self.family {
            Some(f) => format!("{f:?}").to_lowercase(),
            None => format!("case {:?}", self.case).to_lowercase(),
        }
    }
}
