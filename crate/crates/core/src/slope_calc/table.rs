//! Slope tables for the standard Hecke operators of `GSp_{2g}`.
//!
//! A cell is the pairing of a valuation `t` with a slope bound at the weight
//! `kappa = (k_1, ..., k_g; -sum k_i)`. Cells are affine in the `k_i`, so each
//! one is reconstructed from `g + 1` evaluations and checked at one more.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{qf, Weight, Q};
use crate::weyl::{Parabolic, Sign};

use super::{slope_bound, BoundVariant};

const MODULE: &str = "slope_calc";

/// `c_1 k_1 + ... + c_g k_g + c_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub linear: Vec<Q>,
    pub constant: Q,
}

impl AffineForm {
    pub fn eval(&self, k: &[Q]) -> Q {
        self.linear.iter().zip(k).map(|(a, b)| a * b).sum::<Q>() + self.constant
    }
}

fn coefficient_prefix(c: &Q) -> String {
    if c.is_one() {
        String::new()
    } else if *c == -Q::one() {
        "-".to_string()
    } else {
        format!("{c}*")
    }
}

/// Canonical text: terms in variable order, then the constant; unit
/// coefficients are dropped and the zero form prints as `0`.
impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .linear
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}k{}", coefficient_prefix(c), i + 1))
            .collect();
        if !self.constant.is_zero() {
            terms.push(self.constant.to_string());
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            if i > 0 && !t.starts_with('-') {
                out.push('+');
            }
            out.push_str(t);
        }
        write!(f, "{out}")
    }
}

impl Serialize for AffineForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A Hecke operator named by the valuation of its torus element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeOperator {
    pub name: String,
    pub t: Weight,
}

impl HeckeOperator {
    /// `U_g, U_{g-1}, ..., U_1` for `GSp_{2g}`.
    pub fn standard(g: usize) -> Vec<HeckeOperator> {
        let half = qf(-1, 2);
        let mut ops = vec![HeckeOperator {
            name: format!("U{g}"),
            t: Weight::new(vec![half; g + 1]),
        }];
        for i in (1..g).rev() {
            let mut c = vec![Q::zero(); g - i];
            c.extend(std::iter::repeat(-Q::one()).take(i + 1));
            ops.push(HeckeOperator { name: format!("U{i}"), t: Weight::new(c) });
        }
        ops
    }

    /// `(a,b;c)` with the central coordinate after the semicolon.
    pub fn label(&self) -> String {
        let c = self.t.coords();
        let (last, head) = c.split_last().expect("nonempty valuation");
        let head: Vec<String> = head.iter().map(|x| x.to_string()).collect();
        format!("({};{last})", head.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableVariant {
    /// `<t, w^{-1} w_{0,M}(kappa + rho) + rho>`.
    Ss,
    /// The larger of the two proven-bound pairings.
    Sss,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub operator: String,
    pub t: String,
    pub cells: Vec<AffineForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeTable {
    pub variant: TableVariant,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

/// Siegel-normalized weight `(k_1, ..., k_g; -sum k_i)`.
fn siegel_weight(k: &[Q]) -> Weight {
    let mut c = k.to_vec();
    c.push(-k.iter().sum::<Q>());
    Weight::new(c)
}

fn cell(par: &Parabolic, w: usize, t: &Weight, k: &[Q], variant: TableVariant) -> Result<Q> {
    let kappa = siegel_weight(k);
    let bound = match variant {
        TableVariant::Ss => BoundVariant::Conjectural,
        TableVariant::Sss => BoundVariant::ProvenPair,
    };
    Ok(slope_bound(par, w, &kappa, bound, Sign::Plus)?.pair_with(t))
}

/// Cells indexed by `operators x ^M W`, columns in `^M W` order.
pub fn hecke_table(par: &Parabolic, operators: &[HeckeOperator], variant: TableVariant) -> Result<HeckeTable> {
    let dim = par.datum().dim();
    if dim < 2 || operators.iter().any(|o| o.t.dim() != dim) {
        return Err(Error::config(
            MODULE,
            "hecke_table",
            format!("operators must match the datum dimension {dim}"),
        ));
    }
    let g = dim - 1;
    let g_ = par.group();
    let origin = vec![Q::zero(); g];
    let probe: Vec<Q> = (0..g).map(|i| Q::from_integer(7 - 3 * i as i64)).collect();
    let mut rows = Vec::with_capacity(operators.len());
    for op in operators {
        let mut cells = Vec::with_capacity(par.kostant().len());
        for &w in par.kostant() {
            let constant = cell(par, w, &op.t, &origin, variant)?;
            let mut linear = Vec::with_capacity(g);
            for i in 0..g {
                let mut e = origin.clone();
                e[i] = Q::one();
                linear.push(cell(par, w, &op.t, &e, variant)? - constant);
            }
            let form = AffineForm { linear, constant };
            let actual = cell(par, w, &op.t, &probe, variant)?;
            if form.eval(&probe) != actual {
                return Err(Error::precondition(
                    MODULE,
                    "hecke_table",
                    format!("cell ({}, {}) is not affine in the weight", op.name, g_.name(w)),
                ));
            }
            cells.push(form);
        }
        rows.push(TableRow { operator: op.name.clone(), t: op.label(), cells });
    }
    Ok(HeckeTable {
        variant,
        columns: par.kostant().iter().map(|&w| g_.name(w)).collect(),
        rows,
    })
}

fn latex_form(f: &AffineForm) -> String {
    let text = f.to_string();
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'k' => {
                out.push_str("k_{");
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    out.push(*d);
                    chars.next();
                }
                out.push('}');
            }
            '*' => {}
            _ => out.push(c),
        }
    }
    out
}

fn latex_word(name: &str) -> String {
    if name == "Id" {
        return name.to_string();
    }
    let mut out = String::from("$");
    for part in name.split('s').filter(|p| !p.is_empty()) {
        out.push_str(&format!("s_{{{part}}}"));
    }
    out.push('$');
    out
}

impl HeckeTable {
    pub fn to_markdown(&self) -> String {
        let mut out = format!("| operator | t | {} |\n", self.columns.join(" | "));
        out.push_str(&format!("|---|---|{}\n", "---|".repeat(self.columns.len())));
        for r in &self.rows {
            let cells: Vec<String> = r.cells.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("| {} | {} | {} |\n", r.operator, r.t, cells.join(" | ")));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let n = self.columns.len() + 1;
        let mut out = format!("\\begin{{tabular}}{{|{}|}}\n\\hline\n", vec!["c"; n].join("|"));
        let heads: Vec<String> = self.columns.iter().map(|c| latex_word(c)).collect();
        out.push_str(&format!("&{}\\\\\n\\hline\n", heads.join("&")));
        for r in &self.rows {
            let cells: Vec<String> = r
                .cells
                .iter()
                .map(|c| {
                    let s = latex_form(c);
                    if c.linear.iter().all(Zero::is_zero) && !c.constant.is_negative() {
                        s
                    } else {
                        format!("${s}$")
                    }
                })
                .collect();
            out.push_str(&format!("{}&{} \\\\\n\\hline\n", r.t, cells.join("&")));
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    pub fn to_plain(&self) -> String {
        let mut grid: Vec<Vec<String>> = vec![std::iter::once("operator".to_string())
            .chain(std::iter::once("t".to_string()))
            .chain(self.columns.iter().cloned())
            .collect()];
        for r in &self.rows {
            grid.push(
                [r.operator.clone(), r.t.clone()]
                    .into_iter()
                    .chain(r.cells.iter().map(|c| c.to_string()))
                    .collect(),
            );
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|j| grid.iter().map(|row| row[j].len()).max().unwrap_or(0))
            .collect();
        grid.iter()
            .map(|row| {
                let line: Vec<String> =
                    row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                format!("{}\n", line.join("  ").trim_end())
            })
            .collect()
    }
}
