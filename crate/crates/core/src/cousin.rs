//! Cousin complexes: the flag-variety model with Verma characters, big
//! weights, Borel-Weil-Bott, and the degree bookkeeping of the Shimura
//! variety complexes.

use num_traits::Zero;
use serde::Serialize;

use crate::char_ring::{verma_character, weyl_dimension, FormalCharacter};
use crate::error::{Error, Result};
use crate::rational::Weight;
use crate::root_datum::{Chamber, RootDatum};
use crate::slope_calc::{ell_min_max, slope_bound, BoundVariant, SlopeBound};
use crate::sweep;
use crate::weyl::{ElemId, Parabolic, Sign, WeylGroup};

const MODULE: &str = "cousin";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CousinVariant {
    Flag,
    Shimura,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CousinTerm {
    #[serde(skip)]
    pub id: ElemId,
    pub element: String,
    pub length: usize,
    /// Flag: the Verma highest weight `(w^{-1} w_0) . kappa`.
    /// Shimura: the conjectural slope bound of the term.
    pub label: Weight,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<FormalCharacter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CousinDescriptor {
    pub variant: CousinVariant,
    pub sign: Sign,
    pub kappa: Weight,
    /// Terms by degree `0..=d`.
    pub degrees: Vec<Vec<CousinTerm>>,
    /// Flag only: the dominant representative of the dot orbit of `kappa`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_top: Option<Weight>,
}

impl CousinDescriptor {
    pub fn term_counts(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &CousinTerm)> {
        self.degrees.iter().enumerate().flat_map(|(p, ts)| ts.iter().map(move |t| (p, t)))
    }

    /// Attaches truncated Verma characters to every flag term.
    pub fn attach_characters(&mut self, datum: &RootDatum, depth: u32) -> Result<()> {
        if self.variant != CousinVariant::Flag {
            return Err(Error::precondition(MODULE, "attach_characters", "only flag terms carry characters"));
        }
        let labels: Vec<Weight> = self.terms().map(|(_, t)| t.label.clone()).collect();
        let chars = sweep::map(&labels, |l| verma_character(datum, l, depth));
        let mut chars = chars.into_iter();
        for t in self.degrees.iter_mut().flatten() {
            t.character = Some(chars.next().expect("one character per term")?);
        }
        Ok(())
    }

    /// `sum_p (-1)^p sum_{terms in p} char`, anchored at the orbit top.
    pub fn euler_sum(&self, datum: &RootDatum) -> Result<FormalCharacter> {
        let top = self.orbit_top.as_ref().ok_or_else(|| {
            Error::precondition(MODULE, "euler_sum", "only flag complexes have an Euler sum")
        })?;
        let mut depth = None;
        let mut parts = Vec::new();
        for (p, t) in self.terms() {
            let c = t.character.as_ref().ok_or_else(|| {
                Error::precondition(MODULE, "euler_sum", "characters are not attached")
            })?;
            depth = Some(c.depth());
            parts.push((p, c));
        }
        let depth = depth.expect("W is nonempty");
        let mut acc = FormalCharacter::zero(datum, top.clone(), depth);
        for (p, c) in parts {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            acc = acc.add_scaled(sign, &c.reanchor(datum, top, depth)?)?;
        }
        Ok(acc)
    }
}

fn require_full_flag(par: &Parabolic, op: &'static str) -> Result<()> {
    if !par.levi().theta().is_empty() {
        return Err(Error::precondition(MODULE, op, "the flag variety needs the Borel (empty levi)"));
    }
    Ok(())
}

/// `(x, nu)` with `nu + rho` dominant and `x . kappa = nu`.
fn orbit_top(group: &WeylGroup, kappa: &Weight) -> (ElemId, Weight) {
    let (x, shifted) = group.to_dominant(&(kappa + group.rho()));
    (x, shifted - group.rho())
}

/// Flag Cousin complex without characters: degree `p` holds the `w` with
/// `l(w) = d - p`, labelled by `(w^{-1} w_0) . kappa`.
pub fn flag_cousin_shape(par: &Parabolic, kappa: &Weight) -> Result<CousinDescriptor> {
    require_full_flag(par, "flag_cousin")?;
    par.datum().check_dim("flag_cousin", kappa)?;
    let g = par.group();
    let d = par.d();
    let mut degrees = vec![Vec::new(); d + 1];
    for e in g.elements() {
        let u = g.mul(g.inverse(e.id), par.w0());
        degrees[d - e.length()].push(CousinTerm {
            id: e.id,
            element: g.name(e.id),
            length: e.length(),
            label: g.dot(u, kappa),
            character: None,
        });
    }
    Ok(CousinDescriptor {
        variant: CousinVariant::Flag,
        sign: Sign::Plus,
        kappa: kappa.clone(),
        degrees,
        orbit_top: Some(orbit_top(g, kappa).1),
    })
}

pub fn flag_cousin(par: &Parabolic, kappa: &Weight, depth: u32) -> Result<CousinDescriptor> {
    let mut c = flag_cousin_shape(par, kappa)?;
    c.attach_characters(par.datum(), depth)?;
    Ok(c)
}

/// Simple-reflection test: `lambda !<= s_alpha . nu` whenever it moves `nu`.
pub fn big_weight(datum: &RootDatum, group: &WeylGroup, lambda: &Weight, nu: &Weight) -> Result<bool> {
    datum.check_dim("big_weight", lambda)?;
    datum.check_dim("big_weight", nu)?;
    if !datum.is_dominant(&(nu + group.rho()), Chamber::G) {
        return Err(Error::precondition(MODULE, "big_weight", format!("{nu} + rho is not dominant")));
    }
    Ok((0..datum.rank()).map(|i| group.dot(group.simple(i), nu)).all(|m| m == *nu || !datum.abs_leq(lambda, &m)))
}

/// Keeps the big-weight part of a character.
pub fn big_weight_part(
    datum: &RootDatum,
    group: &WeylGroup,
    ch: &FormalCharacter,
    nu: &Weight,
) -> Result<Vec<(Weight, i64)>> {
    let mut out = Vec::new();
    for (mu, c) in ch.terms() {
        if big_weight(datum, group, &mu, nu)? {
            out.push((mu, c));
        }
    }
    Ok(out)
}

/// `C(kappa) = {w : (w^{-1} w_0) . kappa = nu}` for the full flag.
pub fn flag_c_set(par: &Parabolic, kappa: &Weight) -> Result<Vec<ElemId>> {
    require_full_flag(par, "flag_c_set")?;
    par.datum().check_dim("flag_c_set", kappa)?;
    let g = par.group();
    let nu = orbit_top(g, kappa).1;
    Ok((0..g.order()).filter(|&w| g.dot(g.mul(g.inverse(w), par.w0()), kappa) == nu).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

/// Amplitude `[min (d - l(w)), max (d - l(w))]` over `C(kappa)`.
pub fn bw_amplitude(par: &Parabolic, kappa: &Weight) -> Result<Interval> {
    let d = par.d();
    let degs: Vec<usize> = flag_c_set(par, kappa)?.iter().map(|&w| d - par.group().length(w)).collect();
    Ok(Interval {
        lo: *degs.iter().min().expect("C(kappa) is nonempty"),
        hi: *degs.iter().max().expect("C(kappa) is nonempty"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BwbResult {
    #[serde(skip)]
    pub id: ElemId,
    pub element: String,
    pub degree: usize,
    pub weight: Weight,
    pub dim: u64,
}

/// Borel-Weil-Bott: the unique `w` with `w . kappa` dominant, if any.
pub fn bwb(par: &Parabolic, kappa: &Weight) -> Result<Option<BwbResult>> {
    require_full_flag(par, "bwb")?;
    par.datum().check_dim("bwb", kappa)?;
    let g = par.group();
    let (x, top) = orbit_top(g, kappa);
    if !par.datum().is_dominant(&top, Chamber::G) {
        return Ok(None);
    }
    Ok(Some(BwbResult {
        id: x,
        element: g.name(x),
        degree: g.length(x),
        dim: weyl_dimension(par.datum(), &top)?,
        weight: top,
    }))
}

fn require_m_dominant(par: &Parabolic, op: &'static str, kappa: &Weight) -> Result<()> {
    par.datum().check_dim(op, kappa)?;
    if !par.datum().is_dominant(kappa, Chamber::M(par.levi())) {
        return Err(Error::precondition(MODULE, op, format!("{kappa} is not M-dominant")));
    }
    Ok(())
}

/// Shimura Cousin complex shape: degree `p` holds `w` in `^M W` with
/// `l_sign(w) = p`.
pub fn shimura_cousin_shape(par: &Parabolic, kappa: &Weight, sign: Sign) -> Result<CousinDescriptor> {
    require_m_dominant(par, "shimura_cousin_shape", kappa)?;
    let g = par.group();
    let mut degrees = vec![Vec::new(); par.d() + 1];
    for &w in par.kostant() {
        let label = match slope_bound(par, w, kappa, BoundVariant::Conjectural, sign)? {
            SlopeBound::Single(v) => v.weight().clone(),
            SlopeBound::Pair(..) => unreachable!("conjectural bounds are single vectors"),
        };
        degrees[par.ell_pm(w, sign)?].push(CousinTerm {
            id: w,
            element: g.name(w),
            length: g.length(w),
            label,
            character: None,
        });
    }
    Ok(CousinDescriptor { variant: CousinVariant::Shimura, sign, kappa: kappa.clone(), degrees, orbit_top: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalRanges {
    pub cuspidal: Interval,
    pub noncuspidal: Interval,
    pub interior: Interval,
}

pub fn classical_ranges(par: &Parabolic, kappa: &Weight) -> Result<ClassicalRanges> {
    require_m_dominant(par, "classical_ranges", kappa)?;
    let (lo, hi) = ell_min_max(par, kappa)?;
    Ok(ClassicalRanges {
        cuspidal: Interval { lo: 0, hi },
        noncuspidal: Interval { lo, hi: par.d() },
        interior: Interval { lo, hi },
    })
}

/// Whether `kappa + rho` lies on no root hyperplane.
pub fn is_regular(datum: &RootDatum, kappa: &Weight) -> bool {
    let shifted = kappa + &datum.rho();
    datum.positive_roots().iter().all(|r| !shifted.dot(&r.coroot).is_zero())
}
