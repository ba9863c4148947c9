//! Alternative characterizations of the `+` small-slope conditions.
//!
//! Each literal condition quantifies over a coset-like subset of `W`; the
//! forms here rewrite it as `lambda !>= -w . nu` over a translated set, then
//! cut down to simple reflections, then (when `lambda >= -nu`) to explicit
//! coefficient inequalities. They are used as cross-checks.

use crate::error::Result;
use crate::rational::{Weight, Q};
use crate::weyl::{ElemId, Parabolic, Sign};

use super::{c_set, dot_stabilizer, require_kostant, require_m_dominant, require_rho_dominant, Condition};

/// Shorthand for a `+` condition with one bound `-w . nu` per element.
fn minus_dot_bounds(par: &Parabolic, nu: &Weight, elems: impl IntoIterator<Item = ElemId>) -> Condition {
    let g = par.group();
    let raw = elems.into_iter().map(|w| vec![-g.dot(w, nu)]).collect();
    Condition::new(par, Sign::Plus, raw)
}

/// Simple-reflection form of `+,ss(nu)`.
pub fn ss_nu_simple(par: &Parabolic, nu: &Weight) -> Result<Condition> {
    require_rho_dominant(par, "ss_nu_simple", nu)?;
    let stab = dot_stabilizer(par, nu);
    let g = par.group();
    let simples = (0..par.datum().rank()).map(|i| g.simple(i)).filter(|&s| !stab[s]);
    Ok(minus_dot_bounds(par, nu, simples))
}

/// Index of the restricted simple root `r(alpha_i)` in the split basis.
pub fn split_index(par: &Parabolic, i: usize) -> usize {
    let datum = par.datum();
    let r = datum.restrict_to_split(&datum.simple_roots()[i]);
    datum
        .split_cone()
        .basis()
        .iter()
        .position(|b| *b == r)
        .expect("restricted simple roots span the split cone")
}

/// Coefficient form: `None` when `lambda >= -nu` fails (the form does not
/// apply), otherwise whether every coefficient stays below its cap.
/// `allowed[i]` marks the simple roots whose reflections are quantified over.
fn coefficient_form(par: &Parabolic, lambda: &Weight, nu: &Weight, allowed: &[bool]) -> Option<bool> {
    let datum = par.datum();
    let diff = datum.restrict_to_split(&(lambda + nu));
    let coeffs = datum.split_cone().coefficients(&diff)?;
    if coeffs.iter().any(|c| *c < Q::from_integer(0)) {
        return None;
    }
    let mut caps: Vec<Option<Q>> = vec![None; coeffs.len()];
    for (i, coroot) in datum.simple_coroots().iter().enumerate() {
        if !allowed[i] {
            continue;
        }
        let cap = nu.dot(coroot) + Q::from_integer(1);
        let slot = &mut caps[split_index(par, i)];
        *slot = Some(slot.map_or(cap, |c: Q| c.min(cap)));
    }
    Some(coeffs.iter().zip(&caps).all(|(c, cap)| cap.map_or(true, |cap| *c < cap)))
}

/// Coefficient form of `+,ss(nu)`.
pub fn ss_nu_coefficients(par: &Parabolic, lambda: &Weight, nu: &Weight) -> Result<Option<bool>> {
    require_rho_dominant(par, "ss_nu_coefficients", nu)?;
    par.datum().check_dim("ss_nu_coefficients", lambda)?;
    let stab = dot_stabilizer(par, nu);
    let g = par.group();
    let allowed: Vec<bool> = (0..par.datum().rank()).map(|i| !stab[g.simple(i)]).collect();
    Ok(coefficient_form(par, lambda, nu, &allowed))
}

/// `-kappa - rho = v (nu + rho)` with `nu + rho` dominant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub nu: Weight,
    pub v: ElemId,
}

pub fn translation(par: &Parabolic, kappa: &Weight) -> Translation {
    let g = par.group();
    let target = -(kappa + par.rho());
    let (u, dominant) = g.to_dominant(&target);
    Translation { nu: dominant - par.rho(), v: g.inverse(u) }
}

/// `(^M W)^{-1} . C(kappa)^+` minus `W_nu`, as a membership table.
fn translated_set(par: &Parabolic, kappa: &Weight, nu: &Weight) -> Result<Vec<bool>> {
    let g = par.group();
    let stab = dot_stabilizer(par, nu);
    let mut member = vec![false; g.order()];
    for c in c_set(par, kappa, Sign::Plus)? {
        for &a in par.kostant() {
            member[g.mul(g.inverse(a), c)] = true;
        }
    }
    for (m, s) in member.iter_mut().zip(&stab) {
        *m &= !s;
    }
    Ok(member)
}

/// `+,ss^M(kappa)` as `lambda !>= -w . nu` over the translated set.
pub fn ss_m_translated(par: &Parabolic, kappa: &Weight) -> Result<Condition> {
    require_m_dominant(par, "ss_m_translated", kappa)?;
    let t = translation(par, kappa);
    let member = translated_set(par, kappa, &t.nu)?;
    Ok(minus_dot_bounds(par, &t.nu, (0..member.len()).filter(|&w| member[w])))
}

/// `+,ss^M(kappa)` over simple reflections in the translated set.
pub fn ss_m_simple(par: &Parabolic, kappa: &Weight) -> Result<Condition> {
    require_m_dominant(par, "ss_m_simple", kappa)?;
    let t = translation(par, kappa);
    let member = translated_set(par, kappa, &t.nu)?;
    let g = par.group();
    let simples = (0..par.datum().rank()).map(|i| g.simple(i)).filter(|&s| member[s]);
    Ok(minus_dot_bounds(par, &t.nu, simples))
}

pub fn ss_m_coefficients(par: &Parabolic, lambda: &Weight, kappa: &Weight) -> Result<Option<bool>> {
    require_m_dominant(par, "ss_m_coefficients", kappa)?;
    par.datum().check_dim("ss_m_coefficients", lambda)?;
    let t = translation(par, kappa);
    let member = translated_set(par, kappa, &t.nu)?;
    let g = par.group();
    let allowed: Vec<bool> = (0..par.datum().rank()).map(|i| member[g.simple(i)]).collect();
    Ok(coefficient_form(par, lambda, &t.nu, &allowed))
}

/// `v = w_{0,M} w` and `nu = v^{-1}(-kappa - rho) - rho`.
fn mw_translation(par: &Parabolic, kappa: &Weight, w: ElemId) -> Translation {
    let g = par.group();
    let v = g.mul(par.w0m(), w);
    let nu = g.act(g.inverse(v), &-(kappa + par.rho())) - par.rho();
    Translation { nu, v }
}

pub fn ss_mw_translated(par: &Parabolic, kappa: &Weight, w: ElemId) -> Result<Condition> {
    require_m_dominant(par, "ss_mw_translated", kappa)?;
    require_kostant(par, "ss_mw_translated", w)?;
    let g = par.group();
    let t = mw_translation(par, kappa, w);
    let vi = g.inverse(t.v);
    let conj = par
        .wm()
        .iter()
        .filter(|&&u| u != g.identity())
        .map(|&u| g.mul(vi, g.mul(u, t.v)));
    Ok(minus_dot_bounds(par, &t.nu, conj.collect::<Vec<_>>()))
}

pub fn ss_mw_simple(par: &Parabolic, kappa: &Weight, w: ElemId) -> Result<Condition> {
    require_m_dominant(par, "ss_mw_simple", kappa)?;
    require_kostant(par, "ss_mw_simple", w)?;
    let g = par.group();
    let t = mw_translation(par, kappa, w);
    let vi = g.inverse(t.v);
    let conj = par
        .levi()
        .theta()
        .iter()
        .map(|&i| g.mul(vi, g.mul(g.simple(i), t.v)))
        .collect::<Vec<_>>();
    Ok(minus_dot_bounds(par, &t.nu, conj))
}

/// Simple roots in the simple factors on which `M` is a proper Levi.
pub fn delta_b(par: &Parabolic) -> Vec<usize> {
    let levi = par.levi();
    let mut out: Vec<usize> = par
        .datum()
        .components()
        .into_iter()
        .filter(|c| !c.iter().all(|&i| levi.contains_simple(i)))
        .flatten()
        .collect();
    out.sort_unstable();
    out
}

/// `+,ss_b(nu)` as `lambda !>= -s_alpha . nu` over `Delta_b`.
pub fn ss_b_simple(par: &Parabolic, nu: &Weight) -> Result<Condition> {
    require_rho_dominant(par, "ss_b_simple", nu)?;
    let g = par.group();
    Ok(minus_dot_bounds(par, nu, delta_b(par).into_iter().map(|i| g.simple(i))))
}
