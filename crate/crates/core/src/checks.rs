//! Exhaustive property suites over integer grids.
//!
//! Each suite compares two or more independent descriptions of the same
//! object (a literal definition against its characterizations, a set against
//! its duality identities) and reports every disagreement it finds.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cousin::is_regular;
use crate::error::{Error, Result};
use crate::rational::Weight;
use crate::root_datum::{preset, Chamber, RootDatum};
use crate::slope_calc::{self, c_set, equiv, w_set, Condition};
use crate::sweep;
use crate::weyl::{ElemId, Parabolic, Sign, WeylGroup};

const MODULE: &str = "checks";
const MAX_REPORTED: usize = 10;

pub const SUITES: &[&str] = &[
    "ss_equiv",
    "ssnc_equiv",
    "ssc_equiv",
    "small_slope_rel",
    "ssb_equiv",
    "symmetry",
    "c_set",
    "ell_duality",
    "lemmas",
];

/// The root systems the grid suites run on by default.
pub const DEFAULT_SYSTEMS: &[&str] = &["A1", "product:A1xA1", "A2", "C2"];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// The first few counterexamples.
    pub examples: Vec<String>,
}

impl CheckOutcome {
    fn named(name: impl Into<String>) -> Self {
        CheckOutcome { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_REPORTED {
                self.examples.push(what());
            }
        }
    }

    fn absorb(&mut self, other: CheckOutcome) {
        self.cases += other.cases;
        self.failures += other.failures;
        let room = MAX_REPORTED.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
    }
}

/// A seeded subsample of the slope grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub seed: u64,
    pub count: usize,
}

/// Inclusive coordinate range of the grids. Weights `nu` and `kappa` always
/// range over the full grid; slopes may be subsampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub lo: i64,
    pub hi: i64,
    pub sample: Option<Sample>,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { lo: -4, hi: 4, sample: None }
    }
}

impl Grid {
    pub fn new(lo: i64, hi: i64) -> Self {
        Grid { lo, hi, sample: None }
    }

    fn weights(&self, dim: usize) -> Vec<Weight> {
        sweep::int_grid(dim, self.lo, self.hi).iter().map(|v| Weight::from_ints(v)).collect()
    }

    fn slopes(&self, dim: usize) -> Vec<Weight> {
        let all = self.weights(dim);
        match self.sample {
            Some(s) if s.count < all.len() => {
                let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
                let mut idx = rand::seq::index::sample(&mut rng, all.len(), s.count).into_vec();
                idx.sort_unstable();
                idx.into_iter().map(|i| all[i].clone()).collect()
            }
            _ => all,
        }
    }
}

/// One parabolic per subset of the simple roots, sharing a Weyl group.
pub fn all_parabolics(datum: RootDatum) -> Result<Vec<Parabolic>> {
    let group = Arc::new(WeylGroup::new(Arc::new(datum))?);
    let rank = group.datum().rank();
    (0..1usize << rank)
        .map(|mask| {
            let theta: Vec<usize> = (0..rank).filter(|i| mask >> i & 1 == 1).collect();
            Ok(Parabolic::new(group.clone(), group.datum().levi(&theta)?))
        })
        .collect()
}

fn label(par: &Parabolic) -> String {
    format!("{} theta={:?}", par.datum().name(), par.levi().theta())
}

fn rho_dominant(par: &Parabolic, nu: &Weight) -> bool {
    par.datum().is_dominant(&(nu + par.rho()), Chamber::G)
}

fn m_dominant(par: &Parabolic, kappa: &Weight) -> bool {
    par.datum().is_dominant(kappa, Chamber::M(par.levi()))
}

/// Compares compiled conditions pointwise over the slope grid.
fn agree(out: &mut CheckOutcome, par: &Parabolic, lambdas: &[Weight], conds: &[(&str, &Condition)], ctx: &str) {
    let datum = par.datum();
    for l in lambdas {
        let values: Vec<bool> = conds.iter().map(|(_, c)| c.holds(datum, l)).collect();
        out.record(values.iter().all(|v| *v == values[0]), || {
            let parts: Vec<String> = conds.iter().zip(&values).map(|((n, _), v)| format!("{n}={v}")).collect();
            format!("{} {ctx} lambda={l}: {}", label(par), parts.join(" "))
        });
    }
}

fn per_weight<F>(name: &str, weights: &[Weight], f: F) -> CheckOutcome
where
    F: Fn(&Weight) -> Result<CheckOutcome> + Sync + Send,
{
    let mut out = CheckOutcome::named(name);
    for r in sweep::map(weights, |w| f(w)) {
        match r {
            Ok(o) => out.absorb(o),
            Err(e) => out.record(false, || e.to_string()),
        }
    }
    out
}

fn ss_equiv(par: &Parabolic, grid: Grid) -> CheckOutcome {
    let lambdas = grid.slopes(par.datum().dim());
    let nus: Vec<Weight> = grid.weights(par.datum().dim()).into_iter().filter(|n| rho_dominant(par, n)).collect();
    per_weight("ss_equiv", &nus, |nu| {
        let mut out = CheckOutcome::default();
        let literal = slope_calc::ss_nu(par, nu, Sign::Plus)?;
        let simple = equiv::ss_nu_simple(par, nu)?;
        agree(&mut out, par, &lambdas, &[("literal", &literal), ("simple", &simple)], &format!("nu={nu}"));
        for l in &lambdas {
            if let Some(c) = equiv::ss_nu_coefficients(par, l, nu)? {
                let lit = literal.holds(par.datum(), l);
                out.record(c == lit, || format!("{} nu={nu} lambda={l}: coefficients={c} literal={lit}", label(par)));
            }
        }
        Ok(out)
    })
}

fn m_dominant_grid(par: &Parabolic, grid: Grid) -> Vec<Weight> {
    grid.weights(par.datum().dim()).into_iter().filter(|k| m_dominant(par, k)).collect()
}

fn ssnc_equiv(par: &Parabolic, grid: Grid) -> CheckOutcome {
    let lambdas = grid.slopes(par.datum().dim());
    per_weight("ssnc_equiv", &m_dominant_grid(par, grid), |kappa| {
        let mut out = CheckOutcome::default();
        let literal = slope_calc::ss_m(par, kappa, Sign::Plus)?;
        let translated = equiv::ss_m_translated(par, kappa)?;
        let simple = equiv::ss_m_simple(par, kappa)?;
        agree(
            &mut out,
            par,
            &lambdas,
            &[("literal", &literal), ("translated", &translated), ("simple", &simple)],
            &format!("kappa={kappa}"),
        );
        for l in &lambdas {
            if let Some(c) = equiv::ss_m_coefficients(par, l, kappa)? {
                let lit = literal.holds(par.datum(), l);
                out.record(c == lit, || format!("{} kappa={kappa} lambda={l}: coefficients={c} literal={lit}", label(par)));
            }
        }
        Ok(out)
    })
}

fn ssc_equiv(par: &Parabolic, grid: Grid) -> CheckOutcome {
    let lambdas = grid.slopes(par.datum().dim());
    per_weight("ssc_equiv", &m_dominant_grid(par, grid), |kappa| {
        let mut out = CheckOutcome::default();
        for &w in par.kostant() {
            let literal = slope_calc::ss_mw(par, kappa, w, Sign::Plus)?;
            let translated = equiv::ss_mw_translated(par, kappa, w)?;
            let simple = equiv::ss_mw_simple(par, kappa, w)?;
            agree(
                &mut out,
                par,
                &lambdas,
                &[("literal", &literal), ("translated", &translated), ("simple", &simple)],
                &format!("kappa={kappa} w={}", par.group().name(w)),
            );
        }
        Ok(out)
    })
}

fn small_slope_rel(par: &Parabolic, grid: Grid) -> CheckOutcome {
    let lambdas = grid.slopes(par.datum().dim());
    per_weight("small_slope_rel", &m_dominant_grid(par, grid), |kappa| {
        let mut out = CheckOutcome::default();
        let ssm = slope_calc::ss_m(par, kappa, Sign::Plus)?;
        for w in c_set(par, kappa, Sign::Plus)? {
            let nu = slope_calc::nu_from_kappa(par, kappa, w, Sign::Plus);
            let ss = slope_calc::ss_nu(par, &nu, Sign::Plus)?;
            let ssmw = slope_calc::ss_mw(par, kappa, w, Sign::Plus)?;
            for l in &lambdas {
                let lhs = ss.holds(par.datum(), l);
                let rhs = ssm.holds(par.datum(), l) && ssmw.holds(par.datum(), l);
                out.record(lhs == rhs, || {
                    format!("{} kappa={kappa} w={} lambda={l}: ss={lhs} both={rhs}", label(par), par.group().name(w))
                });
            }
        }
        Ok(out)
    })
}

fn ssb_equiv(par: &Parabolic, grid: Grid) -> CheckOutcome {
    let lambdas = grid.slopes(par.datum().dim());
    let nus: Vec<Weight> =
        grid.weights(par.datum().dim()).into_iter().filter(|n| par.datum().is_dominant(n, Chamber::G)).collect();
    per_weight("ssb_equiv", &nus, |nu| {
        let mut out = CheckOutcome::default();
        let literal = slope_calc::ss_b(par, nu, Sign::Plus)?;
        let simple = equiv::ss_b_simple(par, nu)?;
        agree(&mut out, par, &lambdas, &[("literal", &literal), ("simple", &simple)], &format!("nu={nu}"));
        Ok(out)
    })
}

/// `cond(-)(lambda) == cond(+)(w_0 lambda) == cond'(+)(-lambda)`.
fn symmetric(
    out: &mut CheckOutcome,
    par: &Parabolic,
    lambdas: &[Weight],
    minus: &Condition,
    plus: &Condition,
    dual: &Condition,
    ctx: &str,
) {
    let g = par.group();
    let datum = par.datum();
    for l in lambdas {
        let a = minus.holds(datum, l);
        let b = plus.holds(datum, &g.act(par.w0(), l));
        let c = dual.holds(datum, &-l);
        out.record(a == b && b == c, || format!("{} {ctx} lambda={l}: -={a} w0={b} dual={c}", label(par)));
    }
}

fn symmetry(par: &Parabolic, grid: Grid) -> CheckOutcome {
    let g = par.group();
    let lambdas = grid.slopes(par.datum().dim());
    let nus: Vec<Weight> = grid.weights(par.datum().dim()).into_iter().filter(|n| rho_dominant(par, n)).collect();
    let mut out = per_weight("symmetry", &nus, |nu| {
        let mut out = CheckOutcome::default();
        let dual_nu = -g.act(par.w0(), nu);
        symmetric(
            &mut out,
            par,
            &lambdas,
            &slope_calc::ss_nu(par, nu, Sign::Minus)?,
            &slope_calc::ss_nu(par, nu, Sign::Plus)?,
            &slope_calc::ss_nu(par, &dual_nu, Sign::Plus)?,
            &format!("ss nu={nu}"),
        );
        symmetric(
            &mut out,
            par,
            &lambdas,
            &slope_calc::ss_b(par, nu, Sign::Minus)?,
            &slope_calc::ss_b(par, nu, Sign::Plus)?,
            &slope_calc::ss_b(par, &dual_nu, Sign::Plus)?,
            &format!("ss_b nu={nu}"),
        );
        Ok(out)
    });
    out.absorb(per_weight("symmetry", &m_dominant_grid(par, grid), |kappa| {
        let mut out = CheckOutcome::default();
        let dual = serre_dual(par, kappa);
        symmetric(
            &mut out,
            par,
            &lambdas,
            &slope_calc::ss_m(par, kappa, Sign::Minus)?,
            &slope_calc::ss_m(par, kappa, Sign::Plus)?,
            &slope_calc::ss_m(par, &dual, Sign::Plus)?,
            &format!("ss^M kappa={kappa}"),
        );
        for &w in par.kostant() {
            let twisted = g.mul(g.mul(par.w0m(), w), par.w0());
            symmetric(
                &mut out,
                par,
                &lambdas,
                &slope_calc::ss_mw(par, kappa, w, Sign::Minus)?,
                &slope_calc::ss_mw(par, kappa, twisted, Sign::Plus)?,
                &slope_calc::ss_mw(par, &dual, w, Sign::Plus)?,
                &format!("ss_Mw kappa={kappa} w={}", g.name(w)),
            );
        }
        Ok(out)
    }));
    out
}

/// `-w_{0,M} kappa - 2 rho_nc`.
pub fn serre_dual(par: &Parabolic, kappa: &Weight) -> Weight {
    -par.group().act(par.w0m(), kappa) - par.two_rho_nc()
}

fn sorted(mut v: Vec<ElemId>) -> Vec<ElemId> {
    v.sort_unstable();
    v
}

fn c_set_suite(par: &Parabolic, grid: Grid) -> CheckOutcome {
    let g = par.group();
    per_weight("c_set", &m_dominant_grid(par, grid), |kappa| {
        let mut out = CheckOutcome::default();
        let ctx = || format!("{} kappa={kappa}", label(par));
        let plus = c_set(par, kappa, Sign::Plus)?;
        let minus = c_set(par, kappa, Sign::Minus)?;
        for (sign, c) in [(Sign::Plus, &plus), (Sign::Minus, &minus)] {
            let stab = w_set(par, kappa, sign)?;
            let first = c[0];
            let orbit = sorted(stab.iter().map(|&u| g.mul(u, first)).collect());
            out.record(orbit == *c && stab.len() == c.len(), || format!("{} {sign}: not a torsor", ctx()));
            out.record(c.iter().all(|&w| par.is_kostant(w)), || format!("{} {sign}: outside ^M W", ctx()));
            let regular = is_regular(par.datum(), kappa);
            out.record(regular == (c.len() == 1), || format!("{} {sign}: regular={regular} |C|={}", ctx(), c.len()));
        }
        let conj = sorted(minus.iter().map(|&w| g.mul(g.mul(par.w0m(), w), par.w0())).collect());
        out.record(conj == plus, || format!("{}: C+ != w0M C- w0", ctx()));
        let dual = serre_dual(par, kappa);
        out.record(c_set(par, &dual, Sign::Minus)? == plus, || format!("{}: C+ != C-(dual)", ctx()));
        out.record(c_set(par, &dual, Sign::Plus)? == minus, || format!("{}: C- != C+(dual)", ctx()));
        let (lo, hi) = slope_calc::ell_min_max(par, kappa)?;
        let lens: Vec<usize> = minus.iter().map(|&w| par.ell_pm(w, Sign::Minus)).collect::<Result<_>>()?;
        let (mlo, mhi) = (*lens.iter().min().unwrap(), *lens.iter().max().unwrap());
        out.record((lo, hi) == (mlo, mhi), || format!("{}: l+ range {lo}..{hi} vs l- range {mlo}..{mhi}", ctx()));
        Ok(out)
    })
}

fn ell_duality(par: &Parabolic) -> CheckOutcome {
    let g = par.group();
    let mut out = CheckOutcome::named("ell_duality");
    for &w in par.kostant() {
        let twisted = g.mul(g.mul(par.w0m(), w), par.w0());
        let lhs = par.ell_pm(twisted, Sign::Plus);
        let rhs = par.ell_pm(w, Sign::Minus);
        out.record(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
            format!("{} w={}: {lhs:?} vs {rhs:?}", label(par), g.name(w))
        });
    }
    out
}

/// Bruhat inequality, the gallery lemma and the reflection alternative.
fn lemmas(par: &Parabolic, grid: Grid) -> CheckOutcome {
    let g = par.group();
    let datum = par.datum();
    let mut out = CheckOutcome::named("lemmas");
    if par.levi().theta().is_empty() {
        let nus: Vec<Weight> = grid.weights(datum.dim()).into_iter().filter(|n| rho_dominant(par, n)).collect();
        for nu in &nus {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    if g.bruhat_leq(a, b) {
                        let ok = datum.abs_leq(&g.dot(b, nu), &g.dot(a, nu));
                        out.record(ok, || format!("{} bruhat nu={nu} {} <= {}", label(par), g.name(a), g.name(b)));
                    }
                }
            }
        }
    }
    for &w in par.kostant() {
        for &w2 in par.kostant() {
            for word in g.reduced_words(g.mul(g.inverse(w), w2)) {
                let mut cur = w;
                for &s in &word {
                    cur = g.mul_simple_right(cur, s);
                    out.record(par.is_kostant(cur), || {
                        format!("{} gallery {} -> {} word {word:?}", label(par), g.name(w), g.name(w2))
                    });
                }
            }
        }
        for i in 0..datum.rank() {
            let ws = g.mul_simple_right(w, i);
            let ok = par.is_kostant(ws)
                || par.levi().theta().iter().any(|&j| g.mul_simple_left(j, w) == ws);
            out.record(ok, || format!("{} alternative w={} alpha={i}", label(par), g.name(w)));
        }
    }
    out
}

/// Runs one suite on every parabolic of one root system.
pub fn run_suite(suite: &str, system: &str, grid: Grid) -> Result<CheckOutcome> {
    let pars = all_parabolics(preset(system)?)?;
    let mut out = CheckOutcome::named(format!("{suite}[{system}]"));
    for par in &pars {
        let part = match suite {
            "ss_equiv" if par.levi().theta().is_empty() => ss_equiv(par, grid),
            "ss_equiv" => continue,
            "ssnc_equiv" => ssnc_equiv(par, grid),
            "ssc_equiv" => ssc_equiv(par, grid),
            "small_slope_rel" => small_slope_rel(par, grid),
            "ssb_equiv" => ssb_equiv(par, grid),
            "symmetry" => symmetry(par, grid),
            "c_set" => c_set_suite(par, grid),
            "ell_duality" => ell_duality(par),
            "lemmas" => lemmas(par, grid),
            _ => return Err(Error::config(MODULE, "run_suite", format!("unknown suite {suite:?}"))),
        };
        out.absorb(part);
    }
    Ok(out)
}
