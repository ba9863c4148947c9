//! Truncated formal characters on the weight lattice.
//!
//! A character is stored relative to its anchor `a`: the key `c` stands for
//! the weight `a - sum c_i alpha_i`, and only keys with `sum c_i <= depth`
//! are retained. Coefficients outside that window are unknown, not zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{ConeBasis, Weight, Q};
use crate::root_datum::{Chamber, RootDatum};
use crate::weyl::WeylGroup;

const MODULE: &str = "char_ring";

/// Which cone defines `lambda <= lambda'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Nonnegative rational combinations of the simple roots.
    Absolute,
    /// Nonnegative rational combinations of the restricted simple roots,
    /// after restricting both sides to the split part.
    Split,
}

pub fn leq(datum: &RootDatum, lambda: &Weight, mu: &Weight, order: Order) -> bool {
    match order {
        Order::Absolute => datum.abs_leq(lambda, mu),
        Order::Split => {
            datum.split_leq(&datum.restrict_to_split(lambda), &datum.restrict_to_split(mu))
        }
    }
}

/// Integral simple-root coordinates of `mu - lambda`, if `lambda ⪯ mu`
/// integrally.
pub fn integral_gap(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Option<Vec<i64>> {
    let c = datum.root_cone().coefficients(&(mu - lambda))?;
    if c.iter().any(|x| x.is_negative() || !x.is_integer()) {
        return None;
    }
    Some(c.iter().map(|x| x.to_integer()).collect())
}

#[derive(Clone, Debug)]
pub struct FormalCharacter {
    anchor: Weight,
    depth: u32,
    cone: Arc<ConeBasis>,
    coeffs: BTreeMap<Vec<i64>, i64>,
}

impl PartialEq for FormalCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.anchor == other.anchor && self.depth == other.depth && self.coeffs == other.coeffs
    }
}

impl Eq for FormalCharacter {}

#[derive(Serialize)]
struct Term {
    weight: Weight,
    coefficient: i64,
}

#[derive(Serialize)]
struct CharacterDoc {
    anchor: Weight,
    depth: u32,
    terms: Vec<Term>,
}

impl Serialize for FormalCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterDoc {
            anchor: self.anchor.clone(),
            depth: self.depth,
            terms: self
                .terms()
                .map(|(weight, coefficient)| Term { weight, coefficient })
                .collect(),
        }
        .serialize(s)
    }
}

impl FormalCharacter {
    pub fn zero(datum: &RootDatum, anchor: Weight, depth: u32) -> Self {
        FormalCharacter {
            anchor,
            depth,
            cone: Arc::new(datum.root_cone().clone()),
            coeffs: BTreeMap::new(),
        }
    }

    /// The single term `[anchor]`.
    pub fn monomial(datum: &RootDatum, anchor: Weight, depth: u32) -> Self {
        let mut c = Self::zero(datum, anchor, depth);
        c.coeffs.insert(vec![0; datum.rank()], 1);
        c
    }

    pub fn anchor(&self) -> &Weight {
        &self.anchor
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn weight_of(&self, key: &[i64]) -> Weight {
        key.iter()
            .zip(self.cone.basis())
            .fold(self.anchor.clone(), |acc, (&c, a)| acc.add_scaled(-Q::from_integer(c), a))
    }

    /// Nonzero terms, ordered by height below the anchor.
    pub fn terms(&self) -> impl Iterator<Item = (Weight, i64)> + '_ {
        let mut keys: Vec<&Vec<i64>> = self.coeffs.keys().collect();
        keys.sort_by_key(|k| (k.iter().sum::<i64>(), std::cmp::Reverse((*k).clone())));
        keys.into_iter().map(|k| (self.weight_of(k), self.coeffs[k]))
    }

    /// Coefficient at `mu`; zero outside the support.
    pub fn coefficient(&self, mu: &Weight) -> i64 {
        let Some(c) = self.key_of(mu) else { return 0 };
        self.coeffs.get(&c).copied().unwrap_or(0)
    }

    /// Whether `mu` lies in the window where coefficients are known.
    pub fn in_window(&self, mu: &Weight) -> bool {
        self.key_of(mu)
            .is_some_and(|c| c.iter().sum::<i64>() <= self.depth as i64)
    }

    fn key_of(&self, mu: &Weight) -> Option<Vec<i64>> {
        let diff = &self.anchor - mu;
        let c = self.cone.coefficients(&diff)?;
        if c.iter().any(|x| x.is_negative() || !x.is_integer()) {
            return None;
        }
        Some(c.iter().map(|x| x.to_integer()).collect())
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Moves to a higher anchor and a depth that the current data still
    /// determines.
    pub fn reanchor(&self, datum: &RootDatum, anchor: &Weight, depth: u32) -> Result<Self> {
        let op = "reanchor";
        let e = integral_gap(datum, &self.anchor, anchor).ok_or_else(|| {
            Error::precondition(
                MODULE,
                op,
                format!("{anchor} is not above {} in the root lattice", self.anchor),
            )
        })?;
        let shift: i64 = e.iter().sum();
        if depth as i64 > self.depth as i64 + shift {
            return Err(Error::precondition(
                MODULE,
                op,
                format!("depth {depth} exceeds the known window ({} + {shift})", self.depth),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(k, &v)| {
                let nk: Vec<i64> = k.iter().zip(&e).map(|(a, b)| a + b).collect();
                (nk.iter().sum::<i64>() <= depth as i64).then_some((nk, v))
            })
            .collect();
        Ok(FormalCharacter {
            anchor: anchor.clone(),
            depth,
            cone: self.cone.clone(),
            coeffs,
        })
    }

    fn check_same_anchor(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.anchor != other.anchor {
            return Err(Error::precondition(
                MODULE,
                op,
                format!("anchors differ: {} vs {}", self.anchor, other.anchor),
            ));
        }
        Ok(())
    }

    /// `self + k * other`, truncated to the smaller depth.
    pub fn add_scaled(&self, k: i64, other: &Self) -> Result<Self> {
        self.check_same_anchor(other, "add")?;
        let depth = self.depth.min(other.depth);
        let mut coeffs = BTreeMap::new();
        for (key, &v) in self.coeffs.iter() {
            if key.iter().sum::<i64>() <= depth as i64 {
                coeffs.insert(key.clone(), v);
            }
        }
        for (key, &v) in other.coeffs.iter() {
            if key.iter().sum::<i64>() <= depth as i64 {
                *coeffs.entry(key.clone()).or_insert(0) += k * v;
            }
        }
        coeffs.retain(|_, v| *v != 0);
        Ok(FormalCharacter {
            anchor: self.anchor.clone(),
            depth,
            cone: self.cone.clone(),
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(1, other)
    }

    /// Product of characters; anchors add and the depth is the minimum.
    pub fn convolve(&self, other: &Self) -> Self {
        let depth = self.depth.min(other.depth) as i64;
        let mut coeffs: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (k1, &v1) in &self.coeffs {
            let h1: i64 = k1.iter().sum();
            if h1 > depth {
                continue;
            }
            for (k2, &v2) in &other.coeffs {
                if h1 + k2.iter().sum::<i64>() > depth {
                    continue;
                }
                let k: Vec<i64> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                *coeffs.entry(k).or_insert(0) += v1 * v2;
            }
        }
        coeffs.retain(|_, v| *v != 0);
        FormalCharacter {
            anchor: &self.anchor + &other.anchor,
            depth: depth as u32,
            cone: self.cone.clone(),
            coeffs,
        }
    }
}

/// All `c` in `Z>=0^rank` with `sum c <= depth`, ordered by height.
fn window(rank: usize, depth: u32, budget: usize) -> Result<Vec<Vec<i64>>> {
    // C(depth + rank, rank), computed without overflow surprises.
    let mut count: u128 = 1;
    for i in 1..=rank as u128 {
        count = count * (depth as u128 + i) / i;
        if count > budget as u128 {
            return Err(Error::resource(
                MODULE,
                "verma_character",
                format!("depth {depth} needs more than {budget} coefficients"),
            ));
        }
    }
    let mut out: Vec<Vec<i64>> = vec![vec![0; rank]];
    let mut frontier = out.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for c in &frontier {
            // Increment only at or after the last nonzero slot, so each
            // vector is produced once.
            let start = c.iter().rposition(|&x| x != 0).unwrap_or(0);
            for i in start..rank {
                let mut n = c.clone();
                n[i] += 1;
                next.push(n);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// `[lambda] / prod_{alpha > 0} (1 - [-alpha])`, truncated at `depth`.
/// The coefficient at `lambda - sum c_i alpha_i` is the Kostant partition
/// count of that root-lattice vector.
pub fn verma_character(datum: &RootDatum, lambda: &Weight, depth: u32) -> Result<FormalCharacter> {
    datum.check_dim("verma_character", lambda)?;
    let rank = datum.rank();
    let keys = window(rank, depth, datum.limits().max_char_terms)?;
    let index: BTreeMap<&Vec<i64>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut val = vec![0i64; keys.len()];
    val[0] = 1;
    for root in datum.positive_roots() {
        let b: Vec<i64> = root.coeffs.iter().map(|x| x.to_integer()).collect();
        // Multiply by the geometric series in [-root]; keys are in height
        // order so c - b is always finished before c.
        for (i, c) in keys.iter().enumerate() {
            let prev: Vec<i64> = c.iter().zip(&b).map(|(x, y)| x - y).collect();
            if prev.iter().all(|&x| x >= 0) {
                val[i] += val[index[&prev]];
            }
        }
    }
    let mut ch = FormalCharacter::zero(datum, lambda.clone(), depth);
    for (k, v) in keys.into_iter().zip(val) {
        if v != 0 {
            ch.coeffs.insert(k, v);
        }
    }
    Ok(ch)
}

fn require_dominant_integral(datum: &RootDatum, lambda: &Weight, op: &'static str) -> Result<()> {
    datum.check_dim(op, lambda)?;
    if !datum.is_dominant(lambda, Chamber::G) {
        return Err(Error::precondition(MODULE, op, format!("{lambda} is not dominant")));
    }
    if datum.simple_coroots().iter().any(|c| !lambda.dot(c).is_integer()) {
        return Err(Error::precondition(MODULE, op, format!("{lambda} is not integral")));
    }
    Ok(())
}

/// `sum_w (-1)^{l(w)} verma(w . lambda)`, anchored at `lambda`.
pub fn weyl_character(group: &WeylGroup, lambda: &Weight, depth: u32) -> Result<FormalCharacter> {
    let datum = group.datum();
    require_dominant_integral(datum, lambda, "weyl_character")?;
    alternating_sum(group, lambda, depth, group.elements().iter().map(|e| (e.id, e.length())))
}

/// `sum (-1)^{sign_w} verma(w . lambda)` over the given `(w, sign)` pairs,
/// all re-anchored at the dominant `top`.
pub(crate) fn alternating_sum(
    group: &WeylGroup,
    top: &Weight,
    depth: u32,
    terms: impl Iterator<Item = (usize, usize)>,
) -> Result<FormalCharacter> {
    let datum = group.datum();
    let mut acc = FormalCharacter::zero(datum, top.clone(), depth);
    for (w, parity) in terms {
        let mu = group.dot(w, top);
        let gap = integral_gap(datum, &mu, top).ok_or_else(|| {
            Error::precondition(MODULE, "alternating_sum", format!("{mu} is not below {top}"))
        })?;
        let h: i64 = gap.iter().sum();
        if h > depth as i64 {
            continue;
        }
        let v = verma_character(datum, &mu, depth - h as u32)?.reanchor(datum, top, depth)?;
        let sign = if parity % 2 == 0 { 1 } else { -1 };
        acc = acc.add_scaled(sign, &v)?;
    }
    Ok(acc)
}

/// `prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dimension(datum: &RootDatum, lambda: &Weight) -> Result<u64> {
    require_dominant_integral(datum, lambda, "weyl_dimension")?;
    let rho = datum.rho();
    let shifted = lambda + &rho;
    let dim = datum
        .positive_roots()
        .iter()
        .fold(Q::one(), |acc, r| acc * shifted.dot(&r.coroot) / rho.dot(&r.coroot));
    debug_assert!(dim.is_integer() && !dim.is_zero());
    Ok(dim.to_integer() as u64)
}
