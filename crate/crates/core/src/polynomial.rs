//! Polynomials on Z^k × F in two finite representations.
//!
//! [`NewtonForm`] stores iterated differences at the origin,
//! `coeffs[α] = Δ_{e_1}^{α_1} … Δ_{e_k}^{α_k} p(0)`, and evaluates through
//! generalized binomials C(t_1,α_1)…C(t_k,α_k), so it is defined on all of
//! Z^k including negative coordinates. [`MonomialForm`] stores ordinary
//! coefficients of t^α. Torsion coordinates never enter either form:
//! polynomials are constant along the torsion part.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, binomial_i64, factorial, sign, stirling_first, stirling_second};
use crate::difference::{default_radius, degree_witness, iterated_delta, ProbeRegion};
use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{GroupDescriptor, GroupElement};
use crate::scalar::Scalar;

/// Exponent vector; ordered by total order first, then with larger leading
/// entries first (so t_1 precedes t_2, and t_1² precedes t_1 t_2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: impl Into<Vec<usize>>) -> Self {
        MultiIndex(entries.into())
    }

    pub fn zero(k: usize) -> Self {
        MultiIndex(vec![0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex([self.0.as_slice(), other.0.as_slice()].concat())
    }

    pub fn split_at(&self, k1: usize) -> (MultiIndex, MultiIndex) {
        let (a, b) = self.0.split_at(k1);
        (MultiIndex(a.to_vec()), MultiIndex(b.to_vec()))
    }

    /// Every index of length `k` and order exactly `n`, in graded order.
    pub fn of_order(k: usize, n: usize) -> Vec<MultiIndex> {
        crate::difference::compositions(n, k).into_iter().map(MultiIndex).collect()
    }

    /// Every index of length `k` and order at most `n`, in graded order.
    pub fn up_to(k: usize, n: usize) -> Vec<MultiIndex> {
        (0..=n).flat_map(|d| Self::of_order(k, d)).collect()
    }

    /// All β with β ≤ α componentwise.
    fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &a in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..=a).map(move |b| {
                        let mut v = p.clone();
                        v.push(b);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn validate_polynomial_group(group: &GroupDescriptor) -> Result<()> {
    if group.is_discrete() {
        Ok(())
    } else {
        Err(Error::NotDiscrete(group.formal_real_rank()))
    }
}

fn collect_coeffs<I>(k: usize, coeffs: I) -> Result<BTreeMap<MultiIndex, Scalar>>
where
    I: IntoIterator<Item = (MultiIndex, Scalar)>,
{
    let mut map: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    for (idx, c) in coeffs {
        if idx.len() != k {
            return Err(Error::DescriptorMismatch(format!(
                "index {:?} has length {}, expected {k}",
                idx.0,
                idx.len()
            )));
        }
        *map.entry(idx).or_default() += c;
    }
    map.retain(|_, c| !c.is_zero());
    Ok(map)
}

fn add_maps(
    a: &BTreeMap<MultiIndex, Scalar>,
    b: &BTreeMap<MultiIndex, Scalar>,
    b_weight: &Scalar,
) -> BTreeMap<MultiIndex, Scalar> {
    let mut out = a.clone();
    for (idx, c) in b {
        *out.entry(idx.clone()).or_default() += c * b_weight;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonForm {
    group: GroupDescriptor,
    degree_bound: usize,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl NewtonForm {
    pub fn new<I>(group: GroupDescriptor, degree_bound: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        validate_polynomial_group(&group)?;
        let coeffs = collect_coeffs(group.free_rank(), coeffs)?;
        if let Some(actual) = coeffs.keys().map(MultiIndex::order).max() {
            if actual > degree_bound {
                return Err(Error::DegreeViolation {
                    actual,
                    bound: degree_bound,
                });
            }
        }
        Ok(NewtonForm {
            group,
            degree_bound,
            coeffs,
        })
    }

    pub fn zero(group: GroupDescriptor, degree_bound: usize) -> Result<Self> {
        Self::new(group, degree_bound, [])
    }

    pub fn constant(group: GroupDescriptor, c: Scalar) -> Result<Self> {
        let k = group.free_rank();
        Self::new(group, 0, [(MultiIndex::zero(k), c)])
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn free_rank(&self) -> usize {
        self.group.free_rank()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Scalar {
        self.coeffs.get(idx).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(MultiIndex::order).max()
    }

    /// Re-bounds the form, failing if its degree exceeds `n`.
    pub fn with_degree_bound(&self, n: usize) -> Result<Self> {
        Self::new(self.group.clone(), n, self.coeffs.clone())
    }

    /// The same coefficients on another group with equal free rank.
    pub fn with_group(&self, group: GroupDescriptor) -> Result<Self> {
        if group.free_rank() != self.free_rank() {
            return Err(Error::DescriptorMismatch(format!(
                "free rank {} does not match {}",
                group.free_rank(),
                self.free_rank()
            )));
        }
        Self::new(group, self.degree_bound, self.coeffs.clone())
    }

    pub fn eval(&self, t: &GroupElement) -> Result<Scalar> {
        self.group.check(t)?;
        let coords = t.free_coords();
        let top = self.degree().unwrap_or(0);
        // Binomial table per coordinate, shared across all terms.
        let tables: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|&x| (0..=top).map(|j| binomial_i64(x, j)).collect())
            .collect();
        let mut acc = Scalar::zero();
        for (idx, c) in &self.coeffs {
            let w: BigInt = idx
                .entries()
                .iter()
                .zip(&tables)
                .map(|(&a, row)| row[a].clone())
                .product();
            acc += c.scale_int(&w);
        }
        Ok(acc)
    }

    pub fn to_function(&self) -> GroupFunction {
        let p = self.clone();
        GroupFunction::new(self.group.clone(), move |t| p.eval(t))
    }

    fn same_space(&self, other: &NewtonForm) -> Result<()> {
        if self.group != other.group {
            return Err(Error::DescriptorMismatch("polynomials on different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &NewtonForm) -> Result<Self> {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &NewtonForm) -> Result<Self> {
        self.axpy(&-Scalar::one(), other)
    }

    /// self + c·other, with the larger of the two degree bounds.
    pub fn axpy(&self, c: &Scalar, other: &NewtonForm) -> Result<Self> {
        self.same_space(other)?;
        Ok(NewtonForm {
            group: self.group.clone(),
            degree_bound: self.degree_bound.max(other.degree_bound),
            coeffs: add_maps(&self.coeffs, &other.coeffs, c),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut coeffs: BTreeMap<_, _> = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        coeffs.retain(|_, v: &mut Scalar| !v.is_zero());
        NewtonForm {
            group: self.group.clone(),
            degree_bound: self.degree_bound,
            coeffs,
        }
    }

    /// (p ⊗ r)(s, t) = p(s)·r(t) on Z^{k1+k2}; the Newton basis is a
    /// product basis, so coefficients multiply index-wise.
    pub fn tensor(&self, other: &NewtonForm) -> Result<Self> {
        let group = GroupDescriptor::lattice(self.free_rank() + other.free_rank());
        let coeffs = self
            .coeffs
            .iter()
            .flat_map(|(a, ca)| other.coeffs.iter().map(move |(b, cb)| (a.concat(b), ca * cb)));
        Self::new(group, self.degree_bound + other.degree_bound, coeffs)
    }

    /// Fixes the first `s.len()` free coordinates at `s`, leaving a form in
    /// the remaining coordinates.
    pub fn partial_eval_left(&self, s: &[i64]) -> Result<Self> {
        let k1 = s.len();
        if k1 > self.free_rank() {
            return Err(Error::InvalidArgument(format!(
                "cannot fix {k1} of {} coordinates",
                self.free_rank()
            )));
        }
        let rest = GroupDescriptor::lattice(self.free_rank() - k1);
        let coeffs = self.coeffs.iter().map(|(idx, c)| {
            let (left, right) = idx.split_at(k1);
            let w: BigInt = left
                .entries()
                .iter()
                .zip(s)
                .map(|(&a, &x)| binomial_i64(x, a))
                .product();
            (right, c.scale_int(&w))
        });
        Self::new(rest, self.degree_bound, coeffs)
    }

    pub fn to_monomial(&self) -> MonomialForm {
        newton_to_monomial(self)
    }

    pub fn from_monomial(q: &MonomialForm) -> Self {
        monomial_to_newton(q)
    }
}

impl fmt::Display for NewtonForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "C")
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &BTreeMap<MultiIndex, Scalar>, tag: &str) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let terms: Vec<String> = coeffs
        .iter()
        .map(|(idx, c)| format!("({c}){tag}{:?}", idx.entries()))
        .collect();
    write!(f, "{}", terms.join(" + "))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialForm {
    group: GroupDescriptor,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl MonomialForm {
    pub fn new<I>(group: GroupDescriptor, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        validate_polynomial_group(&group)?;
        let coeffs = collect_coeffs(group.free_rank(), coeffs)?;
        Ok(MonomialForm { group, coeffs })
    }

    pub fn zero(group: GroupDescriptor) -> Result<Self> {
        Self::new(group, [])
    }

    /// The single monomial t^α.
    pub fn monomial(group: GroupDescriptor, idx: MultiIndex) -> Result<Self> {
        Self::new(group, [(idx, Scalar::one())])
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn free_rank(&self) -> usize {
        self.group.free_rank()
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Scalar {
        self.coeffs.get(idx).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(MultiIndex::order).max()
    }

    /// True iff every monomial present has order exactly `j` (zero counts).
    pub fn is_homogeneous(&self, j: usize) -> bool {
        self.coeffs.keys().all(|idx| idx.order() == j)
    }

    pub fn eval(&self, t: &GroupElement) -> Result<Scalar> {
        self.group.check(t)?;
        let x: Vec<BigInt> = t.free_coords().iter().map(|&v| BigInt::from(v)).collect();
        Ok(self
            .coeffs
            .iter()
            .map(|(idx, c)| {
                let w: BigInt = idx
                    .entries()
                    .iter()
                    .zip(&x)
                    .map(|(&a, xi)| xi.pow(a as u32))
                    .product();
                c.scale_int(&w)
            })
            .sum())
    }

    pub fn to_function(&self) -> GroupFunction {
        let p = self.clone();
        GroupFunction::new(self.group.clone(), move |t| p.eval(t))
    }

    pub fn add(&self, other: &MonomialForm) -> Result<Self> {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &MonomialForm) -> Result<Self> {
        self.axpy(&-Scalar::one(), other)
    }

    pub fn axpy(&self, c: &Scalar, other: &MonomialForm) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::DescriptorMismatch("polynomials on different groups".into()));
        }
        Ok(MonomialForm {
            group: self.group.clone(),
            coeffs: add_maps(&self.coeffs, &other.coeffs, c),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut coeffs: BTreeMap<_, _> = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        coeffs.retain(|_, v: &mut Scalar| !v.is_zero());
        MonomialForm {
            group: self.group.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &MonomialForm) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::DescriptorMismatch("polynomials on different groups".into()));
        }
        let terms = self.coeffs.iter().flat_map(|(a, ca)| {
            other.coeffs.iter().map(move |(b, cb)| {
                let idx = MultiIndex(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
                (idx, ca * cb)
            })
        });
        Self::new(self.group.clone(), terms)
    }

    /// The order-`j` part.
    pub fn homogeneous_component(&self, j: usize) -> Self {
        MonomialForm {
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(idx, _)| idx.order() == j)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for MonomialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "t^")
    }
}

/// Newton basis to monomial basis via C(x,a) = (1/a!) Σ_e s(a,e) x^e.
pub fn newton_to_monomial(p: &NewtonForm) -> MonomialForm {
    let mut out: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    for (alpha, c) in &p.coeffs {
        let denom: BigInt = alpha.entries().iter().map(|&a| factorial(a)).product();
        for e in alpha.below() {
            let num: BigInt = alpha
                .entries()
                .iter()
                .zip(e.entries())
                .map(|(&a, &b)| stirling_first(a, b))
                .product();
            if num.is_zero() {
                continue;
            }
            let w = BigRational::new(num, denom.clone());
            *out.entry(e).or_default() += c.scale(&w);
        }
    }
    out.retain(|_, c| !c.is_zero());
    MonomialForm {
        group: p.group.clone(),
        coeffs: out,
    }
}

/// Monomial basis to Newton basis via x^m = Σ_j S(m,j) j! C(x,j). The
/// degree bound of the result is the exact degree (0 for zero).
pub fn monomial_to_newton(q: &MonomialForm) -> NewtonForm {
    let mut out: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    for (beta, c) in &q.coeffs {
        for j in beta.below() {
            let w: BigInt = beta
                .entries()
                .iter()
                .zip(j.entries())
                .map(|(&b, &jj)| stirling_second(b, jj) * factorial(jj))
                .product();
            if w.is_zero() {
                continue;
            }
            *out.entry(j).or_default() += c.scale_int(&w);
        }
    }
    out.retain(|_, c| !c.is_zero());
    NewtonForm {
        group: q.group.clone(),
        degree_bound: q.degree().unwrap_or(0),
        coeffs: out,
    }
}

/// Samples Δ^α f(0) for |α| ≤ n after certifying f on the default orthant
/// probe region. Orthant probing keeps the oracle inside N^k.
pub fn newton_from_oracle(f: &GroupFunction, n: usize) -> Result<NewtonForm> {
    newton_from_oracle_on(f, n, ProbeRegion::Orthant(default_radius(n)))
}

pub fn newton_from_oracle_on(f: &GroupFunction, n: usize, region: ProbeRegion) -> Result<NewtonForm> {
    if degree_witness(f, n, region)?.is_some() {
        return Err(Error::NotAPolynomial(n));
    }
    newton_interpolate(f, n)
}

/// The unique form of degree ≤ n agreeing with f on {β ∈ N^k : |β| ≤ n},
/// with no check that f is a polynomial.
pub fn newton_interpolate(f: &GroupFunction, n: usize) -> Result<NewtonForm> {
    let group = f.group().clone();
    let mut samples: HashMap<MultiIndex, Scalar> = HashMap::new();
    let indices = MultiIndex::up_to(group.free_rank(), n);
    for beta in &indices {
        let point = group.free_element(beta.entries().iter().map(|&b| b as i64).collect())?;
        samples.insert(beta.clone(), f.eval(&point)?);
    }
    let coeffs = indices.iter().map(|alpha| {
        let value: Scalar = alpha
            .below()
            .iter()
            .map(|beta| {
                let w: BigInt = alpha
                    .entries()
                    .iter()
                    .zip(beta.entries())
                    .map(|(&a, &b)| sign(a - b) * binomial(a, b))
                    .product();
                samples[beta].scale_int(&w)
            })
            .sum();
        (alpha.clone(), value)
    });
    NewtonForm::new(group, n, coeffs)
}

/// Splits p into a_0 + … + a_n with a_j homogeneous of order j, so that
/// a_j(m·t) = m^j a_j(t) for every integer m.
pub fn homogeneous_parts(p: &NewtonForm) -> Vec<MonomialForm> {
    let mono = newton_to_monomial(p);
    (0..=p.degree_bound).map(|j| mono.homogeneous_component(j)).collect()
}

/// Coefficient of m^n in p(t + m s) where n is the degree bound, computed
/// as Δ_s^n p(0) / n!. It does not depend on the base point.
pub fn leading_coefficient(p: &NewtonForm, s: &GroupElement) -> Result<Scalar> {
    let zero = p.group.zero()?;
    leading_coefficient_at(p, s, &zero)
}

pub fn leading_coefficient_at(p: &NewtonForm, s: &GroupElement, t: &GroupElement) -> Result<Scalar> {
    let n = p.degree_bound;
    let d = iterated_delta(&p.to_function(), s, n, t)?;
    Ok(d.scale(&BigRational::new(BigInt::one(), factorial(n))))
}

/// Whether p(m s) = m^k p(s) holds identically (i.e. only order-k
/// monomials occur), in which case deg(p) ≤ k as well.
pub fn degree_reduce_check(p: &NewtonForm, k: usize) -> Result<bool> {
    if k >= p.degree_bound {
        return Err(Error::InvalidArgument(format!(
            "k = {k} must be below the degree bound {}",
            p.degree_bound
        )));
    }
    let homogeneous = newton_to_monomial(p).is_homogeneous(k);
    Ok(homogeneous && p.degree().is_none_or(|d| d <= k))
}
