//! Root data with central coordinates, a diagram-automorphism group `Gamma`,
//! and the standard Levi subgroups.
//!
//! Weights and coweights both live in `Q^dim` and are paired by the dot
//! product. Coordinates on which every root vanishes play the role of the
//! similitude or central character.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{q, qf, ConeBasis, Weight, Q};

const MODULE: &str = "root_datum";

/// A root together with its coroot and its coordinates on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub vector: Weight,
    pub coroot: Weight,
    pub coeffs: Vec<Q>,
    pub height: i64,
}

/// Which simple coroots a dominance test uses.
#[derive(Clone, Copy, Debug)]
pub enum Chamber<'a> {
    G,
    M(&'a LeviDatum),
}

/// JSON description of a custom root datum. Gamma generators are 0-based
/// permutations of the coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomDatum {
    pub dim: usize,
    pub simple_roots: Vec<Weight>,
    pub simple_coroots: Vec<Weight>,
    #[serde(default)]
    pub gamma_generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    dim: usize,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Weight>,
    cartan: Vec<Vec<Q>>,
    positive: Vec<Root>,
    positive_index: HashMap<Weight, usize>,
    root_cone: ConeBasis,
    gamma: Vec<Vec<usize>>,
    split_cone: ConeBasis,
    natural_levi: Vec<usize>,
    limits: Limits,
}

impl RootDatum {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        simple_roots: Vec<Weight>,
        simple_coroots: Vec<Weight>,
        gamma_generators: Vec<Vec<usize>>,
        limits: Limits,
    ) -> Result<Self> {
        let op = "new";
        let rank = simple_roots.len();
        if simple_coroots.len() != rank {
            return Err(Error::config(MODULE, op, "simple roots and coroots differ in number"));
        }
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.dim() != dim) {
            return Err(Error::config(MODULE, op, format!("every vector must have dimension {dim}")));
        }
        let cartan: Vec<Vec<Q>> = (0..rank)
            .map(|i| (0..rank).map(|j| simple_roots[j].dot(&simple_coroots[i])).collect())
            .collect();
        for i in 0..rank {
            for j in 0..rank {
                let a = cartan[i][j];
                let ok = if i == j {
                    a == q(2)
                } else {
                    a.is_integer() && a <= Q::zero() && (a.is_zero() == cartan[j][i].is_zero())
                };
                if !ok {
                    return Err(Error::config(MODULE, op, "pairing matrix is not a Cartan matrix"));
                }
            }
        }
        let root_cone = ConeBasis::new(dim, simple_roots.clone())
            .ok_or_else(|| Error::config(MODULE, op, "simple roots are linearly dependent"))?;
        if ConeBasis::new(dim, simple_coroots.clone()).is_none() {
            return Err(Error::config(MODULE, op, "simple coroots are linearly dependent"));
        }

        let positive = close_roots(&simple_roots, &simple_coroots, &root_cone, limits.max_roots)?;
        let positive_index = positive
            .iter()
            .enumerate()
            .map(|(i, r)| (r.vector.clone(), i))
            .collect();
        let gamma = close_gamma(dim, &gamma_generators, &simple_roots, &simple_coroots)?;

        let mut split_basis: Vec<Weight> = Vec::new();
        for a in &simple_roots {
            let r = average(&gamma, a);
            if !split_basis.contains(&r) {
                split_basis.push(r);
            }
        }
        let split_cone = ConeBasis::new(dim, split_basis)
            .ok_or_else(|| Error::config(MODULE, op, "restricted simple roots are dependent"))?;

        Ok(RootDatum {
            name: name.into(),
            dim,
            simple_roots,
            simple_coroots,
            cartan,
            positive,
            positive_index,
            root_cone,
            gamma,
            split_cone,
            natural_levi: Vec::new(),
            limits,
        })
    }

    pub fn from_custom(doc: &CustomDatum, limits: Limits) -> Result<Self> {
        let mut d = RootDatum::new(
            "custom",
            doc.dim,
            doc.simple_roots.clone(),
            doc.simple_coroots.clone(),
            doc.gamma_generators.clone(),
            limits,
        )?;
        if let Some(l) = &doc.levi {
            d = d.with_natural_levi(l.clone())?;
        }
        Ok(d)
    }

    /// Sets the Levi used when a caller does not name one.
    pub fn with_natural_levi(mut self, theta: Vec<usize>) -> Result<Self> {
        self.levi(&theta)?;
        self.natural_levi = theta;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Weight] {
        &self.simple_coroots
    }

    /// `<alpha_j, alpha_i^vee>`
    pub fn cartan(&self, i: usize, j: usize) -> Q {
        self.cartan[i][j]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// `Some(true)` for a positive root, `Some(false)` for a negative one.
    pub fn root_sign(&self, v: &Weight) -> Option<bool> {
        if self.positive_index.contains_key(v) {
            Some(true)
        } else if self.positive_index.contains_key(&-v) {
            Some(false)
        } else {
            None
        }
    }

    /// Index into `positive_roots` of `v` or of `-v`.
    pub fn positive_root_index(&self, v: &Weight) -> Option<usize> {
        self.positive_index
            .get(v)
            .or_else(|| self.positive_index.get(&-v))
            .copied()
    }

    pub fn natural_levi(&self) -> &[usize] {
        &self.natural_levi
    }

    pub fn root_cone(&self) -> &ConeBasis {
        &self.root_cone
    }

    pub fn split_cone(&self) -> &ConeBasis {
        &self.split_cone
    }

    pub fn pairing(&self, lambda: &Weight, covector: &Weight) -> Result<Q> {
        if lambda.dim() != covector.dim() {
            return Err(Error::precondition(
                MODULE,
                "pairing",
                format!("dimension mismatch: {} vs {}", lambda.dim(), covector.dim()),
            ));
        }
        Ok(lambda.dot(covector))
    }

    pub fn check_dim(&self, op: &'static str, v: &Weight) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::precondition(
                MODULE,
                op,
                format!("expected {} coordinates, got {}", self.dim, v.dim()),
            ));
        }
        Ok(())
    }

    pub fn rho(&self) -> Weight {
        self.half_sum(|_| true)
    }

    pub fn rho_m(&self, levi: &LeviDatum) -> Weight {
        self.half_sum(|i| levi.in_m[i])
    }

    pub fn two_rho_nc(&self, levi: &LeviDatum) -> Weight {
        self.positive
            .iter()
            .enumerate()
            .filter(|(i, _)| !levi.in_m[*i])
            .fold(Weight::zeros(self.dim), |acc, (_, r)| acc + &r.vector)
    }

    fn half_sum(&self, keep: impl Fn(usize) -> bool) -> Weight {
        self.positive
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .fold(Weight::zeros(self.dim), |acc, (_, r)| acc + &r.vector)
            .scale(qf(1, 2))
    }

    pub fn is_dominant(&self, lambda: &Weight, chamber: Chamber<'_>) -> bool {
        let test = |i: usize| !lambda.dot(&self.simple_coroots[i]).is_negative();
        match chamber {
            Chamber::G => (0..self.rank()).all(test),
            Chamber::M(levi) => levi.theta.iter().all(|&i| test(i)),
        }
    }

    /// `lambda ⪯ mu` in the absolute order: `mu - lambda` is a nonnegative
    /// rational combination of simple roots.
    pub fn abs_leq(&self, lambda: &Weight, mu: &Weight) -> bool {
        self.root_cone.contains(&(mu - lambda))
    }

    /// `lambda <= mu` in the order of the restricted simple roots.
    pub fn split_leq(&self, lambda: &Weight, mu: &Weight) -> bool {
        self.split_cone.contains(&(mu - lambda))
    }

    /// All elements of `Gamma`, as coordinate permutations.
    pub fn gamma(&self) -> &[Vec<usize>] {
        &self.gamma
    }

    pub fn gamma_is_trivial(&self) -> bool {
        self.gamma.len() == 1
    }

    /// Average over `Gamma`; the projector onto invariants.
    pub fn restrict_to_split(&self, lambda: &Weight) -> Weight {
        if self.gamma_is_trivial() {
            return lambda.clone();
        }
        average(&self.gamma, lambda)
    }

    pub fn is_gamma_invariant(&self, lambda: &Weight) -> bool {
        self.gamma.iter().all(|s| permute(s, lambda) == *lambda)
    }

    pub fn levi(&self, theta: &[usize]) -> Result<LeviDatum> {
        let set: BTreeSet<usize> = theta.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::config(
                MODULE,
                "levi",
                format!("simple root index {bad} out of range (rank {})", self.rank()),
            ));
        }
        let in_m: Vec<bool> = self
            .positive
            .iter()
            .map(|r| r.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || set.contains(&i)))
            .collect();
        let d = in_m.iter().filter(|&&m| !m).count();
        Ok(LeviDatum {
            theta: set.into_iter().collect(),
            in_m,
            d,
        })
    }

    pub fn default_levi(&self) -> LeviDatum {
        self.levi(&self.natural_levi).expect("natural levi validated at construction")
    }

    /// Connected components of the Dynkin diagram, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && !self.cartan[i][j].is_zero() {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Block sum of several data; gamma acts factorwise.
    pub fn product(parts: &[RootDatum]) -> Result<Self> {
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut gens = Vec::new();
        let mut levi = Vec::new();
        let mut offset = 0;
        let mut rank_offset = 0;
        for p in parts {
            let embed = |v: &Weight| {
                let mut c = vec![Q::zero(); dim];
                c[offset..offset + p.dim].copy_from_slice(v.coords());
                Weight::new(c)
            };
            roots.extend(p.simple_roots.iter().map(embed));
            coroots.extend(p.simple_coroots.iter().map(embed));
            for g in &p.gamma {
                let mut perm: Vec<usize> = (0..dim).collect();
                for (i, &t) in g.iter().enumerate() {
                    perm[offset + i] = offset + t;
                }
                gens.push(perm);
            }
            levi.extend(p.natural_levi.iter().map(|i| i + rank_offset));
            offset += p.dim;
            rank_offset += p.rank();
        }
        let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("x");
        let limits = parts.first().map(|p| p.limits).unwrap_or_default();
        RootDatum::new(format!("product:{name}"), dim, roots, coroots, gens, limits)?
            .with_natural_levi(levi)
    }

    /// `r` copies of `base` with `Gamma` cycling the copies.
    pub fn restriction_of_scalars(base: &RootDatum, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::config(MODULE, "res", "need at least one copy"));
        }
        let copies = vec![base.clone(); r];
        let prod = RootDatum::product(&copies)?;
        let n = base.dim;
        let dim = n * r;
        let mut gens: Vec<Vec<usize>> = Vec::new();
        gens.push((0..dim).map(|j| (j + n) % dim).collect());
        for g in &base.gamma {
            let mut perm: Vec<usize> = (0..dim).collect();
            for b in 0..r {
                for (i, &t) in g.iter().enumerate() {
                    perm[b * n + i] = b * n + t;
                }
            }
            gens.push(perm);
        }
        RootDatum::new(
            format!("res:{}^{}", base.name, r),
            dim,
            prod.simple_roots.clone(),
            prod.simple_coroots.clone(),
            gens,
            base.limits,
        )?
        .with_natural_levi(prod.natural_levi.clone())
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {}, dim {})", self.name, self.rank(), self.dim)
    }
}

/// A standard Levi `M`, given by a subset `theta` of the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviDatum {
    theta: Vec<usize>,
    in_m: Vec<bool>,
    d: usize,
}

impl LeviDatum {
    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn contains_simple(&self, i: usize) -> bool {
        self.theta.binary_search(&i).is_ok()
    }

    /// Whether the `i`-th positive root lies in `M`.
    pub fn root_in_m(&self, i: usize) -> bool {
        self.in_m[i]
    }

    /// `#Phi^{+,M}`.
    pub fn d(&self) -> usize {
        self.d
    }
}

fn close_roots(
    simple: &[Weight],
    coroots: &[Weight],
    cone: &ConeBasis,
    max_roots: usize,
) -> Result<Vec<Root>> {
    let op = "root_closure";
    let mut seen: HashMap<Weight, Weight> = HashMap::new();
    let mut queue = VecDeque::new();
    for (a, c) in simple.iter().zip(coroots) {
        if seen.insert(a.clone(), c.clone()).is_none() {
            queue.push_back((a.clone(), c.clone()));
        }
    }
    while let Some((b, bc)) = queue.pop_front() {
        for (a, ac) in simple.iter().zip(coroots) {
            let nb = b.add_scaled(-b.dot(ac), a);
            let nbc = bc.add_scaled(-a.dot(&bc), ac);
            if !seen.contains_key(&nb) {
                if seen.len() >= 2 * max_roots {
                    return Err(Error::resource(
                        MODULE,
                        op,
                        format!("more than {max_roots} roots; input is not of finite type"),
                    ));
                }
                seen.insert(nb.clone(), nbc.clone());
                queue.push_back((nb, nbc));
            }
        }
    }
    let mut positive = Vec::new();
    for (v, c) in seen {
        let coeffs = cone
            .coefficients(&v)
            .ok_or_else(|| Error::config(MODULE, op, "root outside the span of simple roots"))?;
        if coeffs.iter().any(|x| !x.is_integer()) {
            return Err(Error::config(MODULE, op, "root with non-integral simple coordinates"));
        }
        let pos = coeffs.iter().all(|x| !x.is_negative());
        let neg = coeffs.iter().all(|x| !x.is_positive());
        if !(pos || neg) {
            return Err(Error::config(MODULE, op, "root that is neither positive nor negative"));
        }
        if pos {
            let height = coeffs.iter().fold(Q::zero(), |a, b| a + b).to_integer();
            positive.push(Root {
                vector: v,
                coroot: c,
                coeffs,
                height,
            });
        }
    }
    positive.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.coeffs.cmp(&a.coeffs)));
    Ok(positive)
}

fn permute(perm: &[usize], v: &Weight) -> Weight {
    let mut out = vec![Q::zero(); v.dim()];
    for (i, &t) in perm.iter().enumerate() {
        out[t] = v.coords()[i];
    }
    Weight::new(out)
}

fn average(group: &[Vec<usize>], v: &Weight) -> Weight {
    let n = group.len() as i64;
    group
        .iter()
        .fold(Weight::zeros(v.dim()), |acc, s| acc + permute(s, v))
        .scale(qf(1, n))
}

fn close_gamma(
    dim: usize,
    gens: &[Vec<usize>],
    roots: &[Weight],
    coroots: &[Weight],
) -> Result<Vec<Vec<usize>>> {
    let op = "gamma";
    for g in gens {
        let mut sorted = g.clone();
        sorted.sort_unstable();
        if sorted != (0..dim).collect::<Vec<_>>() {
            return Err(Error::config(MODULE, op, format!("{g:?} is not a permutation of 0..{dim}")));
        }
        for (a, c) in roots.iter().zip(coroots) {
            let ga = permute(g, a);
            let gc = permute(g, c);
            let hit = roots.iter().zip(coroots).any(|(b, d)| *b == ga && *d == gc);
            if !hit {
                return Err(Error::config(
                    MODULE,
                    op,
                    format!("{g:?} does not permute the simple roots and coroots"),
                ));
            }
        }
    }
    let id: Vec<usize> = (0..dim).collect();
    let mut group = vec![id.clone()];
    let mut known: BTreeSet<Vec<usize>> = BTreeSet::from([id]);
    let mut k = 0;
    while k < group.len() {
        let h = group[k].clone();
        for g in gens {
            let gh: Vec<usize> = h.iter().map(|&i| g[i]).collect();
            if known.insert(gh.clone()) {
                group.push(gh);
            }
        }
        k += 1;
    }
    Ok(group)
}

fn preset_a1(limits: Limits) -> Result<RootDatum> {
    RootDatum::new(
        "A1",
        1,
        vec![Weight::from_ints(&[2])],
        vec![Weight::from_ints(&[1])],
        vec![],
        limits,
    )
}

fn preset_a2(limits: Limits) -> Result<RootDatum> {
    RootDatum::new(
        "A2",
        2,
        vec![Weight::from_ints(&[2, -1]), Weight::from_ints(&[-1, 2])],
        vec![Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 1])],
        vec![],
        limits,
    )
}

/// `GSp_2g` in coordinates `(k_1, ..., k_g; k)`: simple roots `e_i - e_{i+1}`
/// (compact, indices `0..g-1`) and `-2 e_1` (noncompact, index `g-1`), so that
/// the dominant chamber is `0 >= k_1 >= ... >= k_g`.
fn preset_gsp(name: &str, g: usize, limits: Limits) -> Result<RootDatum> {
    if g == 0 {
        return Err(Error::config(MODULE, "preset", "GSp2g needs g >= 1"));
    }
    let dim = g + 1;
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for i in 0..g - 1 {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v[i + 1] = -1;
        roots.push(Weight::from_ints(&v));
        coroots.push(Weight::from_ints(&v));
    }
    let mut long = vec![0i64; dim];
    long[0] = -2;
    roots.push(Weight::from_ints(&long));
    long[0] = -1;
    coroots.push(Weight::from_ints(&long));
    RootDatum::new(name, dim, roots, coroots, vec![], limits)?.with_natural_levi((0..g - 1).collect())
}

/// Names accepted by [`preset`], for help text.
pub const PRESET_NAMES: &[&str] = &[
    "A1",
    "A2",
    "C2",
    "GL2",
    "GSp4",
    "GSp2g:g=<n>",
    "product:<p1>x<p2>[x...]",
    "res:<preset>^<r>",
];

pub fn preset(name: &str) -> Result<RootDatum> {
    preset_with_limits(name, Limits::from_env())
}

pub fn preset_with_limits(name: &str, limits: Limits) -> Result<RootDatum> {
    let unknown = || Error::config(MODULE, "preset", format!("unknown preset {name:?}"));
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("product:") {
        let parts = rest
            .split('x')
            .map(|p| preset_with_limits(p, limits))
            .collect::<Result<Vec<_>>>()?;
        if parts.len() < 2 {
            return Err(unknown());
        }
        return RootDatum::product(&parts);
    }
    if let Some(rest) = name.strip_prefix("res:") {
        let (base, r) = rest.rsplit_once('^').ok_or_else(unknown)?;
        let r: usize = r.parse().map_err(|_| unknown())?;
        return RootDatum::restriction_of_scalars(&preset_with_limits(base, limits)?, r);
    }
    if let Some(g) = name.strip_prefix("GSp2g:g=") {
        let g: usize = g.parse().map_err(|_| unknown())?;
        return preset_gsp(&format!("GSp2g:g={g}"), g, limits);
    }
    match name {
        "A1" => preset_a1(limits),
        "A2" => preset_a2(limits),
        "GL2" => preset_gsp("GL2", 1, limits),
        "GSp4" => preset_gsp("GSp4", 2, limits),
        "C2" => preset_gsp("C2", 2, limits),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn gsp4_constants() {
        let d = preset("GSp4").unwrap();
        let levi = d.default_levi();
        assert_eq!(levi.theta(), &[0]);
        assert_eq!(d.rho(), w(&[-1, -2, 0]));
        assert_eq!(d.two_rho_nc(&levi), w(&[-3, -3, 0]));
        assert_eq!(d.num_positive(), 4);
        assert_eq!(levi.d(), 3);
    }

    #[test]
    fn rho_pairs_to_one_with_simple_coroots() {
        for name in ["A1", "A2", "GSp4", "GSp2g:g=3", "product:A1xA2", "res:A1^3"] {
            let d = preset(name).unwrap();
            let rho = d.rho();
            for c in d.simple_coroots() {
                assert_eq!(rho.dot(c), q(1), "{name}");
            }
        }
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(preset("A1").unwrap().num_positive(), 1);
        assert_eq!(preset("A2").unwrap().num_positive(), 3);
        for g in 1..=4 {
            let d = preset(&format!("GSp2g:g={g}")).unwrap();
            assert_eq!(d.num_positive(), g * g);
        }
    }

    #[test]
    fn dominance_examples() {
        let d = preset("GSp4").unwrap();
        let levi = d.default_levi();
        let k = w(&[5, 3, -8]);
        assert!(d.is_dominant(&k, Chamber::M(&levi)));
        assert!(!d.is_dominant(&k, Chamber::G));
        assert!(d.is_dominant(&d.rho(), Chamber::G));
        assert!(d.is_dominant(&Weight::zeros(3), Chamber::G));
    }

    #[test]
    fn pairing_checks_dimensions() {
        let d = preset("GSp4").unwrap();
        let u1 = w(&[0, -1, -1]);
        let v = w(&[0, 2, -8]);
        assert_eq!(d.pairing(&v, &u1).unwrap(), q(6));
        assert!(d.pairing(&w(&[1]), &u1).is_err());
        assert_eq!(d.pairing(&v, &Weight::zeros(3)).unwrap(), q(0));
    }

    #[test]
    fn split_order_on_gsp4_example() {
        let d = preset("GSp4").unwrap();
        assert!(!d.split_leq(&w(&[3, -3, -8]), &w(&[-3, 3, -8])));
        assert!(d.split_leq(&w(&[3, -3, -8]), &w(&[3, -3, -8])));
        // Central mismatch is never comparable.
        assert!(!d.split_leq(&w(&[0, 0, 0]), &w(&[0, 0, 1])));
    }

    #[test]
    fn restriction_of_scalars_averages() {
        let d = preset("res:A1^2").unwrap();
        assert_eq!(d.gamma().len(), 2);
        let lam = w(&[1, 3]);
        let r = d.restrict_to_split(&lam);
        assert_eq!(r, Weight::new(vec![q(2), q(2)]));
        assert_eq!(d.restrict_to_split(&r), r);
        assert!(d.is_gamma_invariant(&r));
        assert_eq!(d.split_cone().rank(), 1);
    }

    #[test]
    fn product_and_components() {
        let d = preset("product:A1xA2").unwrap();
        assert_eq!(d.dim(), 3);
        assert_eq!(d.components(), vec![vec![0], vec![1, 2]]);
        assert!(d.gamma_is_trivial());
    }

    #[test]
    fn non_cartan_input_is_rejected() {
        let bad = RootDatum::new(
            "bad",
            2,
            vec![w(&[2, 0]), w(&[1, 2])],
            vec![w(&[1, 0]), w(&[0, 1])],
            vec![],
            Limits::default(),
        );
        assert!(bad.is_err());
        // Hyperbolic Cartan matrix: root closure never terminates.
        let hyper = RootDatum::new(
            "hyp",
            2,
            vec![w(&[2, -3]), w(&[-3, 2])],
            vec![w(&[1, 0]), w(&[0, 1])],
            vec![],
            Limits {
                max_roots: 50,
                ..Limits::default()
            },
        );
        assert_eq!(hyper.unwrap_err().kind, crate::error::ErrorKind::ResourceBound);
    }

    #[test]
    fn custom_json_round_trip() {
        let doc: CustomDatum = serde_json::from_str(
            r#"{"dim":2,"simple_roots":[[2,-1],[-1,2]],"simple_coroots":[[1,0],[0,1]],"gamma_generators":[[1,0]]}"#,
        )
        .unwrap();
        let d = RootDatum::from_custom(&doc, Limits::default()).unwrap();
        assert_eq!(d.num_positive(), 3);
        assert_eq!(d.gamma().len(), 2);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::from_str::<CustomDatum>(&text).unwrap(), doc);
    }
}
