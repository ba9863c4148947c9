//! Weyl groups as explicit matrix groups, with Bruhat order, parabolic
//! subgroups `W_M` and the Kostant representatives `^M W`.
//!
//! Elements are identified by index into [`WeylGroup::elements`]. The list is
//! produced breadth first, so it is sorted by length and, within a length, by
//! the lexicographically least reduced word, which is also the word stored.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Mat, Weight};
use crate::root_datum::{LeviDatum, RootDatum};

const MODULE: &str = "weyl";

/// Index of an element of a [`WeylGroup`].
pub type ElemId = usize;

/// Above this order the Bruhat order is recomputed per query instead of
/// being tabulated.
const BRUHAT_TABLE_MAX: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub id: ElemId,
    /// Lexicographically least reduced word.
    pub word: Vec<usize>,
    /// Action on the ambient weight space; the product of the simple
    /// reflection matrices along `word`.
    pub action: Mat,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Renders a word as `Id` or `s1s0`.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "Id".to_string();
    }
    word.iter().map(|i| format!("s{i}")).collect()
}

/// Parses `Id`, `e`, `1`, `s1s0`, `s1 s0`, `s_1s_0`, or `s1*s0`. The word
/// need not be reduced.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '_').collect();
    if matches!(t.as_str(), "" | "Id" | "id" | "e" | "1") {
        return Ok(Vec::new());
    }
    let bad = || Error::config(MODULE, "parse_word", format!("cannot parse Weyl word {text:?}"));
    let mut out = Vec::new();
    for part in t.split('s').skip(1) {
        out.push(part.parse::<usize>().map_err(|_| bad())?);
    }
    if !t.starts_with('s') || out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

pub struct WeylGroup {
    datum: Arc<RootDatum>,
    elements: Vec<WeylElement>,
    index: HashMap<Mat, ElemId>,
    right: Vec<Vec<ElemId>>,
    left: Vec<Vec<ElemId>>,
    inverse: Vec<ElemId>,
    longest: ElemId,
    rho: Weight,
    bruhat: OnceLock<Vec<Vec<u64>>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylGroup({}, order {})", self.datum.name(), self.order())
    }
}

impl WeylGroup {
    /// Enumerates the group; fails when it exceeds the datum's order bound.
    pub fn new(datum: Arc<RootDatum>) -> Result<Self> {
        let rank = datum.rank();
        let dim = datum.dim();
        let max = datum.limits().max_group_order;
        let gens: Vec<Mat> = datum
            .simple_roots()
            .iter()
            .zip(datum.simple_coroots())
            .map(|(a, c)| Mat::reflection(a, c))
            .collect();

        let mut elements = vec![WeylElement {
            id: 0,
            word: Vec::new(),
            action: Mat::identity(dim),
        }];
        let mut index = HashMap::from([(Mat::identity(dim), 0)]);
        let mut right: Vec<Vec<ElemId>> = vec![vec![usize::MAX; rank]];
        let mut level_start = 0;
        while level_start < elements.len() {
            let level_end = elements.len();
            for id in level_start..level_end {
                for (i, g) in gens.iter().enumerate() {
                    let m = elements[id].action.mul(g);
                    let target = match index.get(&m) {
                        Some(&t) => t,
                        None => {
                            if elements.len() >= max {
                                return Err(Error::resource(
                                    MODULE,
                                    "enumerate_group",
                                    format!("group order exceeds {max}"),
                                ));
                            }
                            let t = elements.len();
                            let mut word = elements[id].word.clone();
                            word.push(i);
                            index.insert(m.clone(), t);
                            elements.push(WeylElement {
                                id: t,
                                word,
                                action: m,
                            });
                            right.push(vec![usize::MAX; rank]);
                            t
                        }
                    };
                    right[id][i] = target;
                    right[target][i] = id;
                }
            }
            level_start = level_end;
        }

        let left: Vec<Vec<ElemId>> = elements
            .iter()
            .map(|e| gens.iter().map(|g| index[&g.mul(&e.action)]).collect())
            .collect();
        let mut inverse = vec![0; elements.len()];
        for e in &elements {
            let inv = e.word.iter().rev().fold(0, |acc, &i| right[acc][i]);
            inverse[e.id] = inv;
        }
        let longest = elements.len() - 1;
        let rho = datum.rho();
        Ok(WeylGroup {
            datum,
            elements,
            index,
            right,
            left,
            inverse,
            longest,
            rho,
            bruhat: OnceLock::new(),
        })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: ElemId) -> &WeylElement {
        &self.elements[id]
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    /// `w_0`.
    pub fn longest(&self) -> ElemId {
        self.longest
    }

    pub fn simple(&self, i: usize) -> ElemId {
        self.right[0][i]
    }

    pub fn length(&self, id: ElemId) -> usize {
        self.elements[id].word.len()
    }

    pub fn word(&self, id: ElemId) -> &[usize] {
        &self.elements[id].word
    }

    pub fn name(&self, id: ElemId) -> String {
        format_word(&self.elements[id].word)
    }

    pub fn matrix(&self, id: ElemId) -> &Mat {
        &self.elements[id].action
    }

    pub fn find_by_matrix(&self, m: &Mat) -> Option<ElemId> {
        self.index.get(m).copied()
    }

    /// `w s_i`
    pub fn mul_simple_right(&self, id: ElemId, i: usize) -> ElemId {
        self.right[id][i]
    }

    /// `s_i w`
    pub fn mul_simple_left(&self, i: usize, id: ElemId) -> ElemId {
        self.left[id][i]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.elements[b].word.iter().fold(a, |acc, &i| self.right[acc][i])
    }

    pub fn inverse(&self, id: ElemId) -> ElemId {
        self.inverse[id]
    }

    /// Product of an arbitrary word of simple reflections.
    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.datum.rank()) {
            return Err(Error::config(
                MODULE,
                "from_word",
                format!("no simple reflection s{bad} (rank {})", self.datum.rank()),
            ));
        }
        Ok(word.iter().fold(0, |acc, &i| self.right[acc][i]))
    }

    /// Parses a word, or `w0` for the longest element.
    pub fn parse(&self, text: &str) -> Result<ElemId> {
        if text.trim() == "w0" {
            return Ok(self.longest);
        }
        self.from_word(&parse_word(text)?)
    }

    pub fn act(&self, id: ElemId, lambda: &Weight) -> Weight {
        self.elements[id].action.apply(lambda)
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `w . lambda = w(lambda + rho) - rho`
    pub fn dot(&self, id: ElemId, lambda: &Weight) -> Weight {
        self.act(id, &(lambda + &self.rho)) - &self.rho
    }

    /// `#{alpha > 0 : w^{-1} alpha < 0}`, computed from the roots.
    pub fn inversion_count(&self, id: ElemId) -> usize {
        let inv = self.inverse[id];
        self.datum
            .positive_roots()
            .iter()
            .filter(|r| self.datum.root_sign(&self.act(inv, &r.vector)) == Some(false))
            .count()
    }

    /// Walks `mu` into the closed dominant chamber by simple reflections.
    /// Returns `w` with `w mu` dominant, together with `w mu`.
    pub fn to_dominant(&self, mu: &Weight) -> (ElemId, Weight) {
        let coroots = self.datum.simple_coroots();
        let roots = self.datum.simple_roots();
        let mut w = 0;
        let mut cur = mu.clone();
        while let Some(i) = (0..coroots.len()).find(|&i| cur.dot(&coroots[i]).is_negative()) {
            cur = cur.add_scaled(-cur.dot(&coroots[i]), &roots[i]);
            w = self.left[w][i];
        }
        (w, cur)
    }

    /// Every reduced word of `id`.
    pub fn reduced_words(&self, id: ElemId) -> Vec<Vec<usize>> {
        let mut memo: HashMap<ElemId, Vec<Vec<usize>>> = HashMap::new();
        self.reduced_words_memo(id, &mut memo)
    }

    fn reduced_words_memo(
        &self,
        id: ElemId,
        memo: &mut HashMap<ElemId, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if id == 0 {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(&id) {
            return v.clone();
        }
        let len = self.length(id);
        let mut out = Vec::new();
        for i in 0..self.datum.rank() {
            let shorter = self.right[id][i];
            if self.length(shorter) < len {
                for mut w in self.reduced_words_memo(shorter, memo) {
                    w.push(i);
                    out.push(w);
                }
            }
        }
        out.sort();
        memo.insert(id, out.clone());
        out
    }

    /// Lower Bruhat interval `[e, v]` as a bitset: the products of all
    /// subwords of one reduced word of `v`.
    fn lower_interval(&self, v: ElemId, known: &[Vec<u64>]) -> Vec<u64> {
        let n = self.order();
        let mut bits = vec![0u64; n.div_ceil(64)];
        if v == 0 {
            bits[0] |= 1;
            return bits;
        }
        let i = *self.elements[v].word.last().expect("non-identity has a letter");
        let prefix = self.right[v][i];
        let owned;
        let below: &Vec<u64> = if prefix < known.len() {
            &known[prefix]
        } else {
            owned = self.lower_interval(prefix, known);
            &owned
        };
        bits.copy_from_slice(below);
        for (block, word) in below.iter().enumerate() {
            let mut w = *word;
            while w != 0 {
                let x = block * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                let y = self.right[x][i];
                bits[y / 64] |= 1 << (y % 64);
            }
        }
        bits
    }

    fn bruhat_table(&self) -> &Vec<Vec<u64>> {
        self.bruhat.get_or_init(|| {
            let mut table: Vec<Vec<u64>> = Vec::with_capacity(self.order());
            for v in 0..self.order() {
                let row = self.lower_interval(v, &table);
                table.push(row);
            }
            table
        })
    }

    /// `u <= v` in the Bruhat order.
    pub fn bruhat_leq(&self, u: ElemId, v: ElemId) -> bool {
        if self.length(u) > self.length(v) {
            return false;
        }
        let test = |row: &Vec<u64>| row[u / 64] >> (u % 64) & 1 == 1;
        if self.order() <= BRUHAT_TABLE_MAX {
            test(&self.bruhat_table()[v])
        } else {
            test(&self.lower_interval(v, &[]))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+" | "plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "m" => Ok(Sign::Minus),
            other => Err(Error::config(MODULE, "sign", format!("expected + or -, got {other:?}"))),
        }
    }
}

/// A Weyl group together with a standard Levi `M`: the subgroup `W_M`, its
/// longest element and the Kostant representatives of `W_M \ W`.
#[derive(Debug)]
pub struct Parabolic {
    group: Arc<WeylGroup>,
    levi: LeviDatum,
    in_wm: Vec<bool>,
    wm: Vec<ElemId>,
    w0m: ElemId,
    in_kostant: Vec<bool>,
    kostant: Vec<ElemId>,
    rho_m: Weight,
    two_rho_nc: Weight,
}

impl Parabolic {
    pub fn new(group: Arc<WeylGroup>, levi: LeviDatum) -> Self {
        let datum = group.datum().clone();
        let in_wm: Vec<bool> = group
            .elements()
            .iter()
            .map(|e| e.word.iter().all(|&i| levi.contains_simple(i)))
            .collect();
        let wm: Vec<ElemId> = (0..group.order()).filter(|&i| in_wm[i]).collect();
        let w0m = *wm.last().expect("W_M contains the identity");
        // w is a Kostant representative iff w^{-1} maps Delta_M into Phi^+.
        let in_kostant: Vec<bool> = (0..group.order())
            .map(|w| {
                let inv = group.inverse(w);
                levi.theta().iter().all(|&i| {
                    datum.root_sign(&group.act(inv, &datum.simple_roots()[i])) == Some(true)
                })
            })
            .collect();
        let kostant = (0..group.order()).filter(|&i| in_kostant[i]).collect();
        let rho_m = datum.rho_m(&levi);
        let two_rho_nc = datum.two_rho_nc(&levi);
        Parabolic {
            group,
            levi,
            in_wm,
            wm,
            w0m,
            in_kostant,
            kostant,
            rho_m,
            two_rho_nc,
        }
    }

    /// Builds the group and the Levi `theta` in one step.
    pub fn from_datum(datum: RootDatum, theta: &[usize]) -> Result<Self> {
        let levi = datum.levi(theta)?;
        let group = WeylGroup::new(Arc::new(datum))?;
        Ok(Parabolic::new(Arc::new(group), levi))
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn datum(&self) -> &RootDatum {
        self.group.datum()
    }

    pub fn levi(&self) -> &LeviDatum {
        &self.levi
    }

    pub fn d(&self) -> usize {
        self.levi.d()
    }

    pub fn rho(&self) -> &Weight {
        self.group.rho()
    }

    pub fn rho_m(&self) -> &Weight {
        &self.rho_m
    }

    pub fn two_rho_nc(&self) -> &Weight {
        &self.two_rho_nc
    }

    pub fn w0(&self) -> ElemId {
        self.group.longest()
    }

    /// `w_{0,M}`.
    pub fn w0m(&self) -> ElemId {
        self.w0m
    }

    pub fn wm(&self) -> &[ElemId] {
        &self.wm
    }

    pub fn in_wm(&self, w: ElemId) -> bool {
        self.in_wm[w]
    }

    /// `^M W`, sorted by length then word.
    pub fn kostant(&self) -> &[ElemId] {
        &self.kostant
    }

    pub fn is_kostant(&self, w: ElemId) -> bool {
        self.in_kostant[w]
    }

    /// `l_+(w) = l(w)`, `l_-(w) = d - l(w)` on Kostant representatives.
    pub fn ell_pm(&self, w: ElemId, sign: Sign) -> Result<usize> {
        if !self.is_kostant(w) {
            return Err(Error::precondition(
                MODULE,
                "ell_pm",
                format!("{} is not a Kostant representative", self.group.name(w)),
            ));
        }
        let l = self.group.length(w);
        Ok(match sign {
            Sign::Plus => l,
            Sign::Minus => self.d() - l,
        })
    }
}
