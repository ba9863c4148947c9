//! p-adic valuations, Newton polygons, the slope `<= h` predicate and
//! dimensions of slope-`<= h` parts of rational matrices.
//!
//! Slopes of the polygon are the negatives of the root valuations: a
//! segment of slope `s` and length `l` accounts for `l` roots of valuation
//! `-s`.

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{q_to_json, Q};

const MODULE: &str = "newton";
const MAX_PRIME: u64 = 1 << 32;

fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    q_to_json(x).serialize(s)
}

fn ser_qs<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(q_to_json).collect::<Vec<_>>().serialize(s)
}

/// The valuation `v` on `Q` with `v(p) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PValuation {
    p: u64,
    max_bits: u64,
}

impl PValuation {
    pub fn new(p: u64, limits: Limits) -> Result<Self> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime || p >= MAX_PRIME {
            return Err(Error::config(MODULE, "valuation", format!("{p} is not a prime below 2^32")));
        }
        Ok(PValuation { p, max_bits: limits.max_bits })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn int_valuation(&self, n: &BigInt) -> i64 {
        let p = BigInt::from(self.p);
        let mut n = n.clone();
        let mut v = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    }

    /// `None` stands for `v(0) = +infinity`.
    pub fn valuation(&self, x: &BigRational) -> Result<Option<i64>> {
        if x.is_zero() {
            return Ok(None);
        }
        let bits = x.numer().bits().max(x.denom().bits());
        if bits > self.max_bits {
            return Err(Error::resource(
                MODULE,
                "valuation",
                format!("{bits}-bit input exceeds the {}-bit bound", self.max_bits),
            ));
        }
        Ok(Some(self.int_valuation(x.numer()) - self.int_valuation(x.denom())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "ser_q")]
    pub slope: Q,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// `(i, v(a_i))` for the nonzero coefficients.
    pub points: Vec<(usize, i64)>,
    pub hull: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Valuations of the nonzero roots, with multiplicity, ascending.
    pub fn root_valuations(&self) -> Vec<Q> {
        let mut out: Vec<Q> = self
            .segments
            .iter()
            .flat_map(|s| std::iter::repeat(-s.slope).take(s.length))
            .collect();
        out.sort();
        out
    }
}

fn strip(poly: &[BigRational]) -> &[BigRational] {
    let end = poly.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    &poly[..end]
}

/// Lower convex hull of `(i, v(a_i))`; `poly` lists coefficients by
/// increasing degree.
pub fn newton_polygon(poly: &[BigRational], val: &PValuation) -> Result<NewtonPolygon> {
    let poly = strip(poly);
    if poly.is_empty() {
        return Err(Error::precondition(MODULE, "newton_polygon", "the zero polynomial has no Newton polygon"));
    }
    let mut points = Vec::new();
    for (i, c) in poly.iter().enumerate() {
        if let Some(v) = val.valuation(c)? {
            points.push((i, v));
        }
    }
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or above the chord from a to pt.
            let cross = (b.1 - a.1) as i128 * (pt.0 - a.0) as i128 - (pt.1 - a.1) as i128 * (b.0 - a.0) as i128;
            if cross >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let length = w[1].0 - w[0].0;
            Segment { slope: Q::new(w[1].1 - w[0].1, length as i64), length }
        })
        .collect();
    Ok(NewtonPolygon { points, hull, segments })
}

/// Every nonzero root of `q` has valuation `>= -h`; equivalently every root
/// of `X^{deg q} q(1/X)` has valuation `<= h`.
pub fn is_slope_leq_h(q: &[BigRational], h: Q, val: &PValuation) -> Result<bool> {
    if q.last().map_or(true, Zero::is_zero) {
        return Err(Error::precondition(MODULE, "is_slope_leq_h", "the leading coefficient must be a unit"));
    }
    let np = newton_polygon(q, val)?;
    Ok(np.root_valuations().iter().all(|v| *v >= -h))
}

fn require_square(op: &'static str, m: &[Vec<BigRational>]) -> Result<()> {
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::precondition(MODULE, op, "the matrix is not square"));
    }
    Ok(())
}

/// Characteristic polynomial `det(X - T)` by Faddeev-LeVerrier, coefficients
/// by increasing degree.
pub fn characteristic_polynomial(t: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    require_square("characteristic_polynomial", t)?;
    let n = t.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = T M_{k-1} + c_{n-k+1} I, then c_{n-k} = -tr(T M_k) / k.
        let mut next = matmul(t, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let tm = matmul(t, &next);
        let trace: BigRational = (0..n).map(|i| tm[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
        m = next;
    }
    Ok(coeffs)
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter(|&k| !a[i][k].is_zero() && !b[k][j].is_zero())
                        .map(|k| &a[i][k] * &b[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Number of eigenvalues (with multiplicity) of valuation `<= h`; zero
/// eigenvalues have infinite slope and never count.
pub fn h_slope_dimension(t: &[Vec<BigRational>], h: Q, val: &PValuation) -> Result<usize> {
    let chi = characteristic_polynomial(t)?;
    let np = newton_polygon(&chi, val)?;
    Ok(np.root_valuations().iter().filter(|v| **v <= h).count())
}

/// The slope report printed by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeReport {
    pub polygon: NewtonPolygon,
    #[serde(serialize_with = "ser_qs")]
    pub root_valuations: Vec<Q>,
    /// Roots at zero (infinite valuation).
    pub zero_roots: usize,
}

pub fn slope_report(poly: &[BigRational], val: &PValuation) -> Result<SlopeReport> {
    let polygon = newton_polygon(poly, val)?;
    let zero_roots = polygon.points[0].0;
    Ok(SlopeReport { root_valuations: polygon.root_valuations(), polygon, zero_roots })
}

/// Parses `a` or `a/b` into an exact rational.
pub fn parse_big(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::config(MODULE, "parse", format!("bad rational {s:?}: {e}")))
}
