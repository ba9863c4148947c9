//! Exact rational vectors, matrices and cone membership.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Parses `"3"`, `"-7"` or `"1/2"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::config("rational", "parse", format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => s.parse::<i64>().map(q).map_err(|_| bad()),
    }
}

/// A vector in an ambient rational weight (or coweight) space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Weight(vec![Q::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    /// Unit vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut w = Weight::zeros(dim);
        w.0[i] = Q::one();
        w
    }

    /// Parses a comma separated list; `;` is accepted as a separator so the
    /// central coordinate can be written `5,3;-8`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        s.split([',', ';'])
            .map(parse_q)
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Standard bilinear pairing. Dimensions must agree.
    pub fn dot(&self, other: &Weight) -> Q {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: Q) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: Q, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    pub fn concat(parts: &[&Weight]) -> Weight {
        Weight(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
    }
}

impl From<Vec<Q>> for Weight {
    fn from(v: Vec<Q>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

macro_rules! weight_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Weight> for &Weight {
            type Output = Weight;
            fn $m(self, rhs: &Weight) -> Weight {
                debug_assert_eq!(self.dim(), rhs.dim());
                Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a $op b).collect())
            }
        }
        impl $tr<Weight> for Weight {
            type Output = Weight;
            fn $m(self, rhs: Weight) -> Weight {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Weight> for Weight {
            type Output = Weight;
            fn $m(self, rhs: &Weight) -> Weight {
                (&self).$m(rhs)
            }
        }
    };
}

weight_binop!(Add, add, +);
weight_binop!(Sub, sub, -);

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// JSON form of a scalar: integers as numbers, everything else as `"n/d"`.
pub fn q_to_json(x: &Q) -> serde_json::Value {
    if x.is_integer() {
        serde_json::Value::from(*x.numer())
    } else {
        serde_json::Value::from(x.to_string())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&q_to_json(x))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Weight;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of integers or \"n/d\" strings, or a comma separated string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Weight, E> {
                Weight::parse(v).map_err(E::custom)
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Weight, A::Error> {
                let mut out = Vec::new();
                while let Some(v) = seq.next_element::<serde_json::Value>()? {
                    let x = match &v {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(q)
                            .ok_or_else(|| de::Error::custom(format!("not an integer: {n}")))?,
                        serde_json::Value::String(s) => parse_q(s).map_err(de::Error::custom)?,
                        other => return Err(de::Error::custom(format!("bad coordinate {other}"))),
                    };
                    out.push(x);
                }
                Ok(Weight(out))
            }
        }
        d.deserialize_any(V)
    }
}

/// Square rational matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Q::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Q::one();
        }
        Mat { n, data }
    }

    pub fn from_rows(rows: &[Weight]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.dim(), n, "matrix rows must be square");
            data.extend_from_slice(r.coords());
        }
        Mat { n, data }
    }

    /// The reflection `x -> x - <x, coroot> root`.
    pub fn reflection(root: &Weight, coroot: &Weight) -> Self {
        let n = root.dim();
        let mut m = Mat::identity(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] -= root.0[i] * coroot.0[j];
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i * self.n + j]
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        let n = self.n;
        debug_assert_eq!(v.dim(), n);
        Weight(
            (0..n)
                .map(|i| {
                    self.data[i * n..(i + 1) * n]
                        .iter()
                        .zip(&v.0)
                        .fold(Q::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut data = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Mat { n, data }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn invert(rows: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Q>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The closed cone `Q>=0 * basis` for a linearly independent basis.
///
/// Coefficients are read off with the left inverse `(B^T B)^-1 B^T`; a vector
/// is in the span exactly when re-expanding the coefficients reproduces it.
#[derive(Clone, Debug)]
pub struct ConeBasis {
    dim: usize,
    basis: Vec<Weight>,
    left_inverse: Vec<Weight>,
}

impl ConeBasis {
    /// `None` when the vectors are linearly dependent.
    pub fn new(dim: usize, basis: Vec<Weight>) -> Option<Self> {
        let m = basis.len();
        let gram: Vec<Vec<Q>> = (0..m)
            .map(|i| (0..m).map(|j| basis[i].dot(&basis[j])).collect())
            .collect();
        let ginv = invert(&gram)?;
        let left_inverse = (0..m)
            .map(|i| {
                (0..m).fold(Weight::zeros(dim), |acc, j| acc.add_scaled(ginv[i][j], &basis[j]))
            })
            .collect();
        Some(ConeBasis {
            dim,
            basis,
            left_inverse,
        })
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the basis, or `None` when `v` leaves the span.
    pub fn coefficients(&self, v: &Weight) -> Option<Vec<Q>> {
        debug_assert_eq!(v.dim(), self.dim);
        let c: Vec<Q> = self.left_inverse.iter().map(|l| l.dot(v)).collect();
        let back = c
            .iter()
            .zip(&self.basis)
            .fold(Weight::zeros(self.dim), |acc, (ci, b)| acc.add_scaled(*ci, b));
        (back == *v).then_some(c)
    }

    pub fn contains(&self, v: &Weight) -> bool {
        self.coefficients(v)
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }
}
