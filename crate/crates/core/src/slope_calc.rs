//! Slope vectors, the `kappa <-> nu` dictionary, the sets `C(kappa)` and
//! `W(kappa)`, slope bounds, and the small-slope conditions.
//!
//! Every condition is a conjunction of clauses; a clause lists one or two
//! bound vectors and holds when the slope fails to dominate at least one of
//! them (`>=` for the `+` sign, `<=` for the `-` sign). Conditions are
//! compiled once per weight and then evaluated against many slopes.

pub mod equiv;
pub mod table;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Weight, Q};
use crate::root_datum::{Chamber, RootDatum};
use crate::weyl::{ElemId, Parabolic, Sign};

pub use table::{hecke_table, AffineForm, HeckeOperator, HeckeTable, TableVariant};

const MODULE: &str = "slope_calc";

/// A slope `v(lambda)`, stored restricted to the split part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SlopeVector(Weight);

impl SlopeVector {
    pub fn new(datum: &RootDatum, lambda: &Weight) -> Self {
        SlopeVector(datum.restrict_to_split(lambda))
    }

    pub fn weight(&self) -> &Weight {
        &self.0
    }
}

/// Membership of a valuation `v(t)` in `T^+`, `T^++`, `T^-`, `T^--`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignClass {
    pub plus: bool,
    pub plus_plus: bool,
    pub minus: bool,
    pub minus_minus: bool,
}

/// The valuation of a torus element, as a rational covector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocharacterValuation {
    pub coords: Weight,
}

impl CocharacterValuation {
    pub fn new(coords: Weight) -> Self {
        CocharacterValuation { coords }
    }

    fn root_values(&self, datum: &RootDatum) -> Vec<Q> {
        datum
            .positive_roots()
            .iter()
            .map(|r| r.vector.dot(&self.coords))
            .collect()
    }

    pub fn sign_class(&self, datum: &RootDatum) -> SignClass {
        let v = self.root_values(datum);
        SignClass {
            plus: v.iter().all(|x| !x.is_negative()),
            plus_plus: v.iter().all(|x| x.is_positive()),
            minus: v.iter().all(|x| !x.is_positive()),
            minus_minus: v.iter().all(|x| x.is_negative()),
        }
    }

    /// `(min(t), max(t))` over `Phi^+` for `T^++`, over `Phi^-` for `T^--`.
    pub fn min_max(&self, datum: &RootDatum) -> Result<(Q, Q)> {
        let class = self.sign_class(datum);
        let mut v = self.root_values(datum);
        if class.minus_minus {
            v.iter_mut().for_each(|x| *x = -*x);
        } else if !class.plus_plus {
            return Err(Error::precondition(
                MODULE,
                "min_max",
                format!("{} lies in neither T^++ nor T^--", self.coords),
            ));
        }
        let min = *v.iter().min().expect("nonempty root system");
        let max = *v.iter().max().expect("nonempty root system");
        Ok((min, max))
    }
}

fn require_m_dominant(par: &Parabolic, op: &'static str, kappa: &Weight) -> Result<()> {
    par.datum().check_dim(op, kappa)?;
    if !par.datum().is_dominant(kappa, Chamber::M(par.levi())) {
        return Err(Error::precondition(MODULE, op, format!("{kappa} is not M-dominant")));
    }
    Ok(())
}

fn require_rho_dominant(par: &Parabolic, op: &'static str, nu: &Weight) -> Result<()> {
    par.datum().check_dim(op, nu)?;
    if !par.datum().is_dominant(&(nu + par.rho()), Chamber::G) {
        return Err(Error::precondition(MODULE, op, format!("{nu} + rho is not dominant")));
    }
    Ok(())
}

fn require_kostant(par: &Parabolic, op: &'static str, w: ElemId) -> Result<()> {
    if !par.is_kostant(w) {
        return Err(Error::precondition(
            MODULE,
            op,
            format!("{} is not a Kostant representative", par.group().name(w)),
        ));
    }
    Ok(())
}

fn is_antidominant(datum: &RootDatum, v: &Weight) -> bool {
    datum.simple_coroots().iter().all(|c| !v.dot(c).is_positive())
}

/// `nu = -w^{-1} w_{0,M}(kappa + rho) - rho` for `+`,
/// `nu = -w_0 w^{-1}(kappa + rho) - rho` for `-`.
pub fn nu_from_kappa(par: &Parabolic, kappa: &Weight, w: ElemId, sign: Sign) -> Weight {
    let g = par.group();
    let shifted = kappa + par.rho();
    let inv = g.inverse(w);
    let image = match sign {
        Sign::Plus => g.act(inv, &g.act(par.w0m(), &shifted)),
        Sign::Minus => g.act(par.w0(), &g.act(inv, &shifted)),
    };
    -image - par.rho()
}

/// `kappa = -w_{0,M} w (nu + rho) - rho` for `+`,
/// `kappa = -w w_0 (nu + rho) - rho` for `-`.
pub fn kappa_from_nu(par: &Parabolic, nu: &Weight, w: ElemId, sign: Sign) -> Weight {
    let g = par.group();
    let shifted = nu + par.rho();
    let image = match sign {
        Sign::Plus => g.act(par.w0m(), &g.act(w, &shifted)),
        Sign::Minus => g.act(w, &g.act(par.w0(), &shifted)),
    };
    -image - par.rho()
}

fn c_set_unchecked(par: &Parabolic, kappa: &Weight, sign: Sign) -> Vec<ElemId> {
    let g = par.group();
    let datum = par.datum();
    let shifted = kappa + par.rho();
    match sign {
        Sign::Plus => {
            let top = g.act(par.w0m(), &shifted);
            (0..g.order())
                .filter(|&w| is_antidominant(datum, &g.act(g.inverse(w), &top)))
                .collect()
        }
        Sign::Minus => (0..g.order())
            .filter(|&w| datum.is_dominant(&g.act(g.inverse(w), &shifted), Chamber::G))
            .collect(),
    }
}

/// `C(kappa)^+ = {w : w^{-1} w_{0,M}(kappa + rho) antidominant}`,
/// `C(kappa)^- = {w : w^{-1}(kappa + rho) dominant}`.
pub fn c_set(par: &Parabolic, kappa: &Weight, sign: Sign) -> Result<Vec<ElemId>> {
    require_m_dominant(par, "c_set", kappa)?;
    Ok(c_set_unchecked(par, kappa, sign))
}

/// Stabilizer of `w_{0,M}(kappa + rho)` for `+`, of `kappa + rho` for `-`.
pub fn w_set(par: &Parabolic, kappa: &Weight, sign: Sign) -> Result<Vec<ElemId>> {
    require_m_dominant(par, "w_set", kappa)?;
    let g = par.group();
    let shifted = kappa + par.rho();
    let fixed = match sign {
        Sign::Plus => g.act(par.w0m(), &shifted),
        Sign::Minus => shifted,
    };
    Ok((0..g.order()).filter(|&w| g.act(w, &fixed) == fixed).collect())
}

/// `(min, max)` of `l_+` over `C(kappa)^+`.
pub fn ell_min_max(par: &Parabolic, kappa: &Weight) -> Result<(usize, usize)> {
    let c = c_set(par, kappa, Sign::Plus)?;
    let lengths = c.iter().map(|&w| par.ell_pm(w, Sign::Plus)).collect::<Result<Vec<_>>>()?;
    Ok((
        *lengths.iter().min().expect("C(kappa) is a nonempty torsor"),
        *lengths.iter().max().expect("C(kappa) is a nonempty torsor"),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVariant {
    Conjectural,
    ProvenPair,
}

/// A slope bound: one vector, or the pair whose maximum is proven.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SlopeBound {
    Single(SlopeVector),
    Pair(SlopeVector, SlopeVector),
}

impl SlopeBound {
    /// Pairing with `t`; for a pair, the larger of the two pairings.
    pub fn pair_with(&self, t: &Weight) -> Q {
        match self {
            SlopeBound::Single(v) => v.weight().dot(t),
            SlopeBound::Pair(a, b) => a.weight().dot(t).max(b.weight().dot(t)),
        }
    }
}

fn raw_bound(par: &Parabolic, w: ElemId, kappa: &Weight, variant: BoundVariant, sign: Sign) -> Vec<Weight> {
    let g = par.group();
    let inv = g.inverse(w);
    let rho = par.rho();
    match (variant, sign) {
        (BoundVariant::Conjectural, Sign::Plus) => {
            vec![g.act(inv, &g.act(par.w0m(), &(kappa + rho))) + rho]
        }
        (BoundVariant::Conjectural, Sign::Minus) => vec![g.act(inv, &(kappa + rho)) - rho],
        (BoundVariant::ProvenPair, s) => {
            let base = match s {
                Sign::Plus => g.act(inv, &g.act(par.w0m(), kappa)),
                Sign::Minus => g.act(inv, kappa),
            };
            let shift = g.act(inv, par.two_rho_nc());
            vec![base.clone(), base + shift]
        }
    }
}

/// Conjectural bound `w^{-1} w_{0,M}(kappa + rho) + rho` (`+`) or
/// `w^{-1}(kappa + rho) - rho` (`-`); proven pair `w^{-1} w_{0,M} kappa` and
/// `w^{-1} w_{0,M} kappa + w^{-1} 2 rho_nc` (`+`), `w^{-1} kappa` and
/// `w^{-1} kappa + w^{-1} 2 rho_nc` (`-`). All restricted to the split part.
pub fn slope_bound(
    par: &Parabolic,
    w: ElemId,
    kappa: &Weight,
    variant: BoundVariant,
    sign: Sign,
) -> Result<SlopeBound> {
    par.datum().check_dim("slope_bound", kappa)?;
    require_kostant(par, "slope_bound", w)?;
    let datum = par.datum();
    let mut v = raw_bound(par, w, kappa, variant, sign)
        .into_iter()
        .map(|b| SlopeVector::new(datum, &b));
    Ok(match variant {
        BoundVariant::Conjectural => SlopeBound::Single(v.next().expect("one vector")),
        BoundVariant::ProvenPair => {
            let a = v.next().expect("two vectors");
            SlopeBound::Pair(a, v.next().expect("two vectors"))
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Ss,
    Sss,
}

/// Which family of bound vectors a condition quantifies over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `ss(nu)`, with `nu + rho` dominant.
    Nu(Weight),
    /// `ss^M(kappa)` or `sss^M(kappa)`, with `kappa` M-dominant.
    M(Weight),
    /// `ss_{M,w}(kappa)` or `sss_{M,w}(kappa)`, with `w` in `^M W`.
    Mw(Weight, ElemId),
    /// `ss_b(nu)` or `sss_b(nu)`.
    B(Weight),
    /// `sss_w(nu)`.
    NuW(Weight, ElemId),
}

/// A compiled small-slope condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    sign: Sign,
    clauses: Vec<Vec<Weight>>,
}

impl Condition {
    fn new(par: &Parabolic, sign: Sign, raw: Vec<Vec<Weight>>) -> Self {
        let datum = par.datum();
        let clauses = raw
            .into_iter()
            .map(|c| c.iter().map(|b| datum.restrict_to_split(b)).collect())
            .collect();
        Condition { sign, clauses }
    }

    fn merge(mut self, other: Condition) -> Self {
        debug_assert_eq!(self.sign, other.sign);
        self.clauses.extend(other.clauses);
        self
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Restricted bound vectors, one list per clause.
    pub fn clauses(&self) -> &[Vec<Weight>] {
        &self.clauses
    }

    fn dominates(&self, datum: &RootDatum, lambda: &Weight, bound: &Weight) -> bool {
        match self.sign {
            Sign::Plus => datum.split_leq(bound, lambda),
            Sign::Minus => datum.split_leq(lambda, bound),
        }
    }

    pub fn holds(&self, datum: &RootDatum, lambda: &Weight) -> bool {
        let lambda = datum.restrict_to_split(lambda);
        self.clauses
            .iter()
            .all(|c| c.iter().any(|b| !self.dominates(datum, &lambda, b)))
    }
}

/// `W_nu = {w : w . nu = nu}` as a membership table.
pub fn dot_stabilizer(par: &Parabolic, nu: &Weight) -> Vec<bool> {
    let g = par.group();
    (0..g.order()).map(|w| g.dot(w, nu) == *nu).collect()
}

pub fn ss_nu(par: &Parabolic, nu: &Weight, sign: Sign) -> Result<Condition> {
    require_rho_dominant(par, "ss_nu", nu)?;
    let g = par.group();
    let raw = (0..g.order())
        .filter_map(|w| {
            let image = g.dot(w, nu);
            (image != *nu).then(|| match sign {
                Sign::Plus => vec![-image],
                Sign::Minus => vec![-g.act(par.w0(), &image)],
            })
        })
        .collect();
    Ok(Condition::new(par, sign, raw))
}

fn ss_m_unchecked(par: &Parabolic, kappa: &Weight, sign: Sign) -> Condition {
    let excluded = c_set_unchecked(par, kappa, sign);
    let raw = par
        .kostant()
        .iter()
        .filter(|w| !excluded.contains(w))
        .map(|&w| raw_bound(par, w, kappa, BoundVariant::Conjectural, sign))
        .collect();
    Condition::new(par, sign, raw)
}

pub fn ss_m(par: &Parabolic, kappa: &Weight, sign: Sign) -> Result<Condition> {
    require_m_dominant(par, "ss_m", kappa)?;
    Ok(ss_m_unchecked(par, kappa, sign))
}

pub fn ss_mw(par: &Parabolic, kappa: &Weight, w: ElemId, sign: Sign) -> Result<Condition> {
    par.datum().check_dim("ss_mw", kappa)?;
    require_kostant(par, "ss_mw", w)?;
    let g = par.group();
    let inv = g.inverse(w);
    let rho = par.rho();
    let shifted = kappa + rho;
    let raw = par
        .wm()
        .iter()
        .filter(|&&u| u != g.identity())
        .map(|&u| {
            let moved = g.act(u, &shifted);
            vec![match sign {
                Sign::Plus => g.act(inv, &g.act(par.w0m(), &moved)) + rho,
                Sign::Minus => g.act(inv, &moved) - rho,
            }]
        })
        .collect();
    Ok(Condition::new(par, sign, raw))
}

/// `-w_{0,M} w (nu + rho) - rho`, the weight attached to `nu` and `w`.
fn kappa_of(par: &Parabolic, nu: &Weight, w: ElemId) -> Weight {
    kappa_from_nu(par, nu, w, Sign::Plus)
}

pub fn ss_b(par: &Parabolic, nu: &Weight, sign: Sign) -> Result<Condition> {
    require_rho_dominant(par, "ss_b", nu)?;
    Ok(par
        .kostant()
        .iter()
        .map(|&w| ss_m_unchecked(par, &kappa_of(par, nu, w), sign))
        .fold(Condition::new(par, sign, Vec::new()), Condition::merge))
}

fn sss_m_unchecked(par: &Parabolic, kappa: &Weight, sign: Sign) -> Condition {
    let excluded = c_set_unchecked(par, kappa, sign);
    let raw = par
        .kostant()
        .iter()
        .filter(|w| !excluded.contains(w))
        .map(|&w| raw_bound(par, w, kappa, BoundVariant::ProvenPair, sign))
        .collect();
    Condition::new(par, sign, raw)
}

pub fn sss_m(par: &Parabolic, kappa: &Weight, sign: Sign) -> Result<Condition> {
    require_m_dominant(par, "sss_m", kappa)?;
    Ok(sss_m_unchecked(par, kappa, sign))
}

/// The second bound carries the factor `2 w^{-1} w_{0,M} w' 2 rho_nc`
/// (resp. `2 w^{-1} w' 2 rho_nc`) exactly as the condition is stated.
pub fn sss_mw(par: &Parabolic, kappa: &Weight, w: ElemId, sign: Sign) -> Result<Condition> {
    par.datum().check_dim("sss_mw", kappa)?;
    require_kostant(par, "sss_mw", w)?;
    let g = par.group();
    let inv = g.inverse(w);
    let rho = par.rho();
    let two = Q::from_integer(2);
    let raw = par
        .wm()
        .iter()
        .filter(|&&u| u != g.identity())
        .map(|&u| {
            let outer = match sign {
                Sign::Plus => g.mul(inv, g.mul(par.w0m(), u)),
                Sign::Minus => g.mul(inv, u),
            };
            let twisted = g.act(outer, kappa);
            let nc = g.act(outer, par.two_rho_nc()).scale(two);
            let first = match sign {
                Sign::Plus => twisted.clone(),
                Sign::Minus => g.act(inv, &(g.act(u, &(kappa + rho)) - rho)),
            };
            vec![first, twisted + nc]
        })
        .collect();
    Ok(Condition::new(par, sign, raw))
}

pub fn sss_w(par: &Parabolic, nu: &Weight, w: ElemId, sign: Sign) -> Result<Condition> {
    require_rho_dominant(par, "sss_w", nu)?;
    require_kostant(par, "sss_w", w)?;
    let kappa = match sign {
        Sign::Plus => kappa_of(par, nu, w),
        Sign::Minus => kappa_from_nu(par, nu, w, Sign::Minus),
    };
    Ok(sss_m_unchecked(par, &kappa, sign).merge(sss_mw(par, &kappa, w, sign)?))
}

pub fn sss_b(par: &Parabolic, nu: &Weight, sign: Sign) -> Result<Condition> {
    require_rho_dominant(par, "sss_b", nu)?;
    Ok(par
        .kostant()
        .iter()
        .map(|&w| sss_m_unchecked(par, &kappa_of(par, nu, w), sign))
        .fold(Condition::new(par, sign, Vec::new()), Condition::merge))
}

pub fn condition(par: &Parabolic, kind: Kind, flavor: &Flavor, sign: Sign) -> Result<Condition> {
    match (kind, flavor) {
        (Kind::Ss, Flavor::Nu(nu)) => ss_nu(par, nu, sign),
        (Kind::Ss, Flavor::M(k)) => ss_m(par, k, sign),
        (Kind::Ss, Flavor::Mw(k, w)) => ss_mw(par, k, *w, sign),
        (Kind::Ss, Flavor::B(nu)) => ss_b(par, nu, sign),
        (Kind::Sss, Flavor::M(k)) => sss_m(par, k, sign),
        (Kind::Sss, Flavor::Mw(k, w)) => sss_mw(par, k, *w, sign),
        (Kind::Sss, Flavor::B(nu)) => sss_b(par, nu, sign),
        (Kind::Sss, Flavor::NuW(nu, w)) => sss_w(par, nu, *w, sign),
        (Kind::Ss, Flavor::NuW(..)) => Err(Error::precondition(
            MODULE,
            "slope_condition",
            "the w-indexed flavor exists only for sss",
        )),
        (Kind::Sss, Flavor::Nu(_)) => Err(Error::precondition(
            MODULE,
            "slope_condition",
            "sss has no nu flavor; use the w-indexed flavor",
        )),
    }
}

/// Evaluates one condition on one slope.
pub fn slope_condition(
    par: &Parabolic,
    lambda: &Weight,
    kind: Kind,
    flavor: &Flavor,
    sign: Sign,
) -> Result<bool> {
    par.datum().check_dim("slope_condition", lambda)?;
    Ok(condition(par, kind, flavor, sign)?.holds(par.datum(), lambda))
}
