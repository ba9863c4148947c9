//! Job configuration, dispatch and rendering for the `slopekit` binary.

pub mod render;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use slopekit::char_ring::{verma_character, weyl_character, weyl_dimension};
use slopekit::checks::{self, Grid, Sample};
use slopekit::cousin;
use slopekit::newton::{self, BigRational, PValuation};
use slopekit::root_datum::{preset, CustomDatum, RootDatum};
use slopekit::slope_calc::{
    self, hecke_table, BoundVariant, Flavor, HeckeOperator, Kind, TableVariant,
};
use slopekit::weyl::{Parabolic, Sign, WeylGroup};
use slopekit::{Error, ErrorKind, Limits, Result, Weight};

pub use render::{render, Format};

const MODULE: &str = "cli";

/// A complete job: which root datum, which Levi, which computation, and how
/// to print it. Parses from one JSON document or from command-line flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom: Option<CustomDatum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlavorName {
    Nu,
    M,
    Mw,
    B,
    W,
}

fn default_sign() -> Sign {
    Sign::Plus
}

fn default_bound() -> BoundVariant {
    BoundVariant::Conjectural
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum Command {
    Weyl {
        #[serde(default)]
        list_kostant: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        element: Option<String>,
    },
    CharVerma {
        weight: Weight,
        depth: u32,
    },
    CharWeyl {
        weight: Weight,
        depth: u32,
    },
    CharDim {
        weight: Weight,
    },
    SlopesCond {
        kind: Kind,
        flavor: FlavorName,
        #[serde(default = "default_sign")]
        sign: Sign,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kappa: Option<Weight>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nu: Option<Weight>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        w: Option<String>,
        lambda: Weight,
    },
    SlopesTable {
        variant: TableVariant,
    },
    SlopesBound {
        w: String,
        kappa: Weight,
        #[serde(default = "default_bound")]
        variant: BoundVariant,
        #[serde(default = "default_sign")]
        sign: Sign,
    },
    SlopesSets {
        kappa: Weight,
    },
    CousinFlag {
        kappa: Weight,
        depth: u32,
    },
    CousinBwb {
        kappa: Weight,
    },
    CousinRanges {
        kappa: Weight,
    },
    CousinShape {
        kappa: Weight,
        #[serde(default = "default_sign")]
        sign: Sign,
    },
    CousinAmplitude {
        kappa: Weight,
    },
    NewtonPoly {
        p: u64,
        /// Coefficients by increasing degree, as integers or `"a/b"`.
        coeffs: Vec<Rat>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h: Option<Rat>,
    },
    NewtonSlopedim {
        p: u64,
        matrix: Vec<Vec<Rat>>,
        h: Rat,
    },
    Check {
        #[serde(default)]
        suites: Vec<String>,
        #[serde(default)]
        systems: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lo: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hi: Option<i64>,
        /// Number of slopes drawn from the grid with the job seed.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sample: Option<usize>,
    },
}

/// A rational written as a JSON integer or an `"a/b"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rat {
    Int(i64),
    Text(String),
}

impl Rat {
    fn big(&self) -> Result<BigRational> {
        match self {
            Rat::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Rat::Text(s) => newton::parse_big(s),
        }
    }

    fn small(&self) -> Result<slopekit::Q> {
        match self {
            Rat::Int(n) => Ok(slopekit::Q::from_integer(*n)),
            Rat::Text(s) => slopekit::rational::parse_q(s),
        }
    }
}

impl std::str::FromStr for Rat {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(s.trim().parse::<i64>().map(Rat::Int).unwrap_or_else(|_| Rat::Text(s.trim().to_string())))
    }
}

/// The computed value plus, for tables, the structured table itself so
/// non-JSON renderers can lay it out.
#[derive(Clone, Debug)]
pub struct Report {
    pub value: Value,
    pub table: Option<slope_calc::HeckeTable>,
    /// False when a property check found counterexamples.
    pub ok: bool,
}

impl Report {
    fn value(value: Value) -> Self {
        Report { value, table: None, ok: true }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

impl JobConfig {
    /// Default output format: markdown for tables, JSON otherwise.
    pub fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::SlopesTable { .. } => Format::Md,
            _ => Format::Json,
        })
    }

    fn datum(&self, fallback: &str) -> Result<RootDatum> {
        match (&self.preset, &self.custom) {
            (Some(_), Some(_)) => Err(Error::config(MODULE, "config", "give either a preset or a custom datum")),
            (None, Some(c)) => RootDatum::from_custom(c, Limits::from_env()),
            (Some(p), None) => preset(p),
            (None, None) => preset(fallback),
        }
    }

    fn parabolic_with(&self, fallback: &str, flag: bool) -> Result<Parabolic> {
        let datum = self.datum(fallback)?;
        let theta = match &self.levi {
            Some(t) => t.clone(),
            None if flag => Vec::new(),
            None => datum.natural_levi().to_vec(),
        };
        Parabolic::from_datum(datum, &theta)
    }

    fn parabolic(&self) -> Result<Parabolic> {
        self.parabolic_with("GSp4", false)
    }
}

fn need(field: &Option<Weight>, name: &str) -> Result<Weight> {
    field.clone().ok_or_else(|| Error::config(MODULE, "slopes_cond", format!("--{name} is required for this flavor")))
}

fn element(par: &Parabolic, w: &Option<String>) -> Result<usize> {
    let text = w.as_deref().ok_or_else(|| Error::config(MODULE, "slopes_cond", "--w is required for this flavor"))?;
    par.group().parse(text)
}

fn weyl_report(par: &Parabolic, list_kostant: bool, elem: &Option<String>) -> Result<Value> {
    let g = par.group();
    if let Some(text) = elem {
        let w = g.parse(text)?;
        let words: Vec<String> = g.reduced_words(w).iter().map(|x| slopekit::weyl::format_word(x)).collect();
        return Ok(json!({
            "element": g.name(w),
            "length": g.length(w),
            "inverse": g.name(g.inverse(w)),
            "kostant": par.is_kostant(w),
            "reduced_words": words,
        }));
    }
    if list_kostant {
        let rows = par
            .kostant()
            .iter()
            .map(|&w| {
                Ok(json!({
                    "element": g.name(w),
                    "length": g.length(w),
                    "ell_plus": par.ell_pm(w, Sign::Plus)?,
                    "ell_minus": par.ell_pm(w, Sign::Minus)?,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Value::Array(rows));
    }
    Ok(json!({
        "datum": par.datum().name(),
        "order": g.order(),
        "levi": par.levi().theta(),
        "d": par.d(),
        "rho": to_value(par.rho()),
        "two_rho_nc": to_value(par.two_rho_nc()),
        "longest": g.name(par.w0()),
        "kostant_count": par.kostant().len(),
    }))
}

fn check_report(cfg: &JobConfig, suites: &[String], systems: &[String], lo: Option<i64>, hi: Option<i64>, sample: Option<usize>) -> Result<Report> {
    let default = Grid::default();
    let grid = Grid {
        lo: lo.unwrap_or(default.lo),
        hi: hi.unwrap_or(default.hi),
        sample: sample.map(|count| Sample { seed: cfg.seed.unwrap_or(0), count }),
    };
    let suites: Vec<String> =
        if suites.is_empty() { checks::SUITES.iter().map(|s| s.to_string()).collect() } else { suites.to_vec() };
    let systems: Vec<String> = if !systems.is_empty() {
        systems.to_vec()
    } else if let Some(p) = &cfg.preset {
        vec![p.clone()]
    } else {
        checks::DEFAULT_SYSTEMS.iter().map(|s| s.to_string()).collect()
    };
    let mut outcomes = Vec::new();
    for suite in &suites {
        for system in &systems {
            outcomes.push(checks::run_suite(suite, system, grid)?);
        }
    }
    let ok = outcomes.iter().all(|o| o.passed());
    Ok(Report { value: to_value(&outcomes), table: None, ok })
}

/// Runs one job.
pub fn run(cfg: &JobConfig) -> Result<Report> {
    match &cfg.command {
        Command::Weyl { list_kostant, element } => {
            let par = cfg.parabolic()?;
            Ok(Report::value(weyl_report(&par, *list_kostant, element)?))
        }
        Command::CharVerma { weight, depth } => {
            let datum = cfg.datum("A2")?;
            Ok(Report::value(to_value(&verma_character(&datum, weight, *depth)?)))
        }
        Command::CharWeyl { weight, depth } => {
            let group = WeylGroup::new(Arc::new(cfg.datum("A2")?))?;
            Ok(Report::value(to_value(&weyl_character(&group, weight, *depth)?)))
        }
        Command::CharDim { weight } => {
            let datum = cfg.datum("A2")?;
            Ok(Report::value(json!(weyl_dimension(&datum, weight)?)))
        }
        Command::SlopesCond { kind, flavor, sign, kappa, nu, w, lambda } => {
            let par = cfg.parabolic()?;
            let flavor = match flavor {
                FlavorName::Nu => Flavor::Nu(need(nu, "nu")?),
                FlavorName::M => Flavor::M(need(kappa, "kappa")?),
                FlavorName::Mw => Flavor::Mw(need(kappa, "kappa")?, element(&par, w)?),
                FlavorName::B => Flavor::B(need(nu, "nu")?),
                FlavorName::W => Flavor::NuW(need(nu, "nu")?, element(&par, w)?),
            };
            Ok(Report::value(json!(slope_calc::slope_condition(&par, lambda, *kind, &flavor, *sign)?)))
        }
        Command::SlopesTable { variant } => {
            let par = cfg.parabolic()?;
            let g = par.datum().dim().checked_sub(1).filter(|g| *g >= 1).ok_or_else(|| {
                Error::config(MODULE, "slopes_table", "tables need a GSp_2g datum")
            })?;
            let table = hecke_table(&par, &HeckeOperator::standard(g), *variant)?;
            Ok(Report { value: to_value(&table), table: Some(table), ok: true })
        }
        Command::SlopesBound { w, kappa, variant, sign } => {
            let par = cfg.parabolic()?;
            let w = par.group().parse(w)?;
            Ok(Report::value(to_value(&slope_calc::slope_bound(&par, w, kappa, *variant, *sign)?)))
        }
        Command::SlopesSets { kappa } => {
            let par = cfg.parabolic()?;
            let g = par.group();
            let names = |v: Vec<usize>| v.into_iter().map(|w| g.name(w)).collect::<Vec<_>>();
            let (lo, hi) = slope_calc::ell_min_max(&par, kappa)?;
            Ok(Report::value(json!({
                "c_plus": names(slope_calc::c_set(&par, kappa, Sign::Plus)?),
                "c_minus": names(slope_calc::c_set(&par, kappa, Sign::Minus)?),
                "w_plus": names(slope_calc::w_set(&par, kappa, Sign::Plus)?),
                "w_minus": names(slope_calc::w_set(&par, kappa, Sign::Minus)?),
                "ell_min": lo,
                "ell_max": hi,
            })))
        }
        Command::CousinFlag { kappa, depth } => {
            let par = cfg.parabolic_with("A2", true)?;
            Ok(Report::value(to_value(&cousin::flag_cousin(&par, kappa, *depth)?)))
        }
        Command::CousinBwb { kappa } => {
            let par = cfg.parabolic_with("A2", true)?;
            Ok(Report::value(to_value(&cousin::bwb(&par, kappa)?)))
        }
        Command::CousinAmplitude { kappa } => {
            let par = cfg.parabolic_with("A2", true)?;
            Ok(Report::value(to_value(&cousin::bw_amplitude(&par, kappa)?)))
        }
        Command::CousinRanges { kappa } => {
            let par = cfg.parabolic()?;
            Ok(Report::value(to_value(&cousin::classical_ranges(&par, kappa)?)))
        }
        Command::CousinShape { kappa, sign } => {
            let par = cfg.parabolic()?;
            Ok(Report::value(to_value(&cousin::shimura_cousin_shape(&par, kappa, *sign)?)))
        }
        Command::NewtonPoly { p, coeffs, h } => {
            let val = PValuation::new(*p, Limits::from_env())?;
            let poly = coeffs.iter().map(Rat::big).collect::<Result<Vec<_>>>()?;
            let report = newton::slope_report(&poly, &val)?;
            let mut value = to_value(&report);
            if let Some(h) = h {
                let h = h.small()?;
                value["slope_leq_h"] = json!(newton::is_slope_leq_h(&poly, h, &val)?);
            }
            Ok(Report::value(value))
        }
        Command::NewtonSlopedim { p, matrix, h } => {
            let val = PValuation::new(*p, Limits::from_env())?;
            let m = matrix
                .iter()
                .map(|row| row.iter().map(Rat::big).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Report::value(json!(newton::h_slope_dimension(&m, h.small()?, &val)?)))
        }
        Command::Check { suites, systems, lo, hi, sample } => check_report(cfg, suites, systems, *lo, *hi, *sample),
    }
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e.kind {
        ErrorKind::Config => 2,
        ErrorKind::Precondition => 3,
        ErrorKind::ResourceBound => 4,
    }
}

/// The structured error document printed on failure.
pub fn error_document(e: &Error) -> Value {
    json!({ "error": to_value(e) })
}
