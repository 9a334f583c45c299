//! Difference operators Δ_h f(t) = f(t+h) − f(t) and the identities built
//! on them.
//!
//! Iterated differences use the convention
//! Δ_s^m f(t) = Σ_j (−1)^{m−j} C(m,j) f(t+js),
//! which is the one consistent with the one-step definition.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{binomial, factorial, sign};
use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{GroupDescriptor, GroupElement};
use crate::scalar::Scalar;

/// t ↦ f(t+h) − f(t).
pub fn delta(f: &GroupFunction, h: &GroupElement) -> Result<GroupFunction> {
    f.group().check(h)?;
    let (inner, h) = (f.clone(), h.clone());
    Ok(GroupFunction::new(f.group().clone(), move |t| {
        let shifted = inner.group().add(t, &h)?;
        Ok(inner.eval(&shifted)? - inner.eval(t)?)
    }))
}

/// Δ_s^m f(t) by the closed-form sum (m+1 oracle calls).
pub fn iterated_delta(f: &GroupFunction, s: &GroupElement, m: usize, t: &GroupElement) -> Result<Scalar> {
    let g = f.group();
    let mut acc = Scalar::zero();
    for j in 0..=m {
        let point = g.add(t, &g.scalar_mul(j as i64, s)?)?;
        let weight = sign(m - j) * binomial(m, j);
        acc += f.eval(&point)?.scale_int(&weight);
    }
    Ok(acc)
}

/// Δ_{h_1}^{a_1} … Δ_{h_r}^{a_r} f(t) for `steps = [(h_1, a_1), …]`, expanded
/// into ∏(a_i + 1) oracle calls.
pub fn mixed_delta(f: &GroupFunction, steps: &[(GroupElement, usize)], t: &GroupElement) -> Result<Scalar> {
    mixed_delta_with(steps, t, f.group(), &mut |p| f.eval(p))
}

fn mixed_delta_with(
    steps: &[(GroupElement, usize)],
    t: &GroupElement,
    g: &GroupDescriptor,
    eval: &mut dyn FnMut(&GroupElement) -> Result<Scalar>,
) -> Result<Scalar> {
    let Some(((h, a), rest)) = steps.split_first() else {
        return eval(t);
    };
    let mut acc = Scalar::zero();
    let mut point = t.clone();
    for j in 0..=*a {
        if j > 0 {
            point = g.add(&point, h)?;
        }
        let weight = sign(a - j) * binomial(*a, j);
        acc += mixed_delta_with(rest, &point, g, eval)?.scale_int(&weight);
    }
    Ok(acc)
}

/// `[Δ_s^0 f(t), …, Δ_s^n f(t)]` from the n+1 samples f(t), …, f(t+ns).
pub fn forward_differences(f: &GroupFunction, t: &GroupElement, s: &GroupElement, n: usize) -> Result<Vec<Scalar>> {
    let g = f.group();
    let mut row = Vec::with_capacity(n + 1);
    let mut point = t.clone();
    for j in 0..=n {
        if j > 0 {
            point = g.add(&point, s)?;
        }
        row.push(f.eval(&point)?);
    }
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Ok(out)
}

/// Σ_{j ≤ min(m, n_bound)} C(m,j) Δ_s^j f(t); equals f(t+ms) for f in P^{n_bound}.
pub fn shift_expand(
    f: &GroupFunction,
    t: &GroupElement,
    s: &GroupElement,
    m: usize,
    n_bound: usize,
) -> Result<Scalar> {
    let top = m.min(n_bound);
    let diffs = forward_differences(f, t, s, top)?;
    Ok(diffs
        .iter()
        .enumerate()
        .map(|(j, d)| d.scale_int(&binomial(m, j)))
        .sum())
}

/// Σ_{j=0}^{n} (−1)^j Δ_s^j f(t).
///
/// For f in P^n this is f(t − s), obtained from forward evaluations only
/// (f is queried at t, t+s, …, t+ns). If f is not in P^n the result is
/// meaningless.
pub fn backward_eval(f: &GroupFunction, t: &GroupElement, s: &GroupElement, n: usize) -> Result<Scalar> {
    let diffs = forward_differences(f, t, s, n)?;
    Ok(diffs
        .iter()
        .enumerate()
        .map(|(j, d)| if j % 2 == 0 { d.clone() } else { -d })
        .sum())
}

/// Where degree tests place their base points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeRegion {
    /// Free coordinates in [−r, r].
    Symmetric(i64),
    /// Free coordinates in [0, r]; suits oracles known only on N^k.
    Orthant(i64),
}

/// Radius used when the caller does not choose one.
pub fn default_radius(n: usize) -> i64 {
    n as i64 + 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceWitness {
    pub point: GroupElement,
    /// Generator directions with multiplicities, summing to the order.
    pub steps: Vec<(GroupElement, usize)>,
    pub value: Scalar,
}

/// All ways to write `total` as an ordered sum of `parts` non-negative terms.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// First nonzero order-(n+1) mixed generator difference over the probe
/// region, if any.
pub fn degree_witness(f: &GroupFunction, n: usize, region: ProbeRegion) -> Result<Option<DifferenceWitness>> {
    let g = f.group();
    let gens = g.generators()?;
    let (lo, hi) = match region {
        ProbeRegion::Symmetric(r) => (-r, r),
        ProbeRegion::Orthant(r) => (0, r),
    };
    if hi < lo {
        return Err(Error::InvalidArgument(format!("empty probe region {region:?}")));
    }
    let mut cache: HashMap<GroupElement, Scalar> = HashMap::new();
    let mut eval = |p: &GroupElement| -> Result<Scalar> {
        if let Some(v) = cache.get(p) {
            return Ok(v.clone());
        }
        let v = f.eval(p)?;
        cache.insert(p.clone(), v.clone());
        Ok(v)
    };
    let multisets = compositions(n + 1, gens.len());
    for t in g.box_elements(lo, hi)? {
        for counts in &multisets {
            let steps: Vec<(GroupElement, usize)> = gens
                .iter()
                .zip(counts)
                .filter(|(_, &c)| c > 0)
                .map(|(h, &c)| (h.clone(), c))
                .collect();
            let value = mixed_delta_with(&steps, &t, g, &mut eval)?;
            if !value.is_zero() {
                return Ok(Some(DifferenceWitness { point: t, steps, value }));
            }
        }
    }
    Ok(None)
}

/// True iff every order-(n+1) mixed generator difference vanishes at every
/// base point of the symmetric box of the given radius.
///
/// This certifies membership in P^n over the probe set only; it is not a
/// proof for an arbitrary oracle.
pub fn degree_test(f: &GroupFunction, n: usize, sample_radius: i64) -> Result<bool> {
    degree_test_on(f, n, ProbeRegion::Symmetric(sample_radius))
}

pub fn degree_test_on(f: &GroupFunction, n: usize, region: ProbeRegion) -> Result<bool> {
    Ok(degree_witness(f, n, region)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub m: usize,
    pub k: usize,
    #[serde(serialize_with = "decimal")]
    pub expected: BigInt,
    #[serde(serialize_with = "decimal")]
    pub actual: BigInt,
}

fn decimal<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub failure: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks exhaustively, for 0 ≤ k ≤ m ≤ max_m:
/// Σ_{i=k}^{m} (−1)^i C(m+1,i+1) C(i,k) = (−1)^k, and
/// Σ_j (−1)^{m−j} C(m,j) j^k = m! δ_{k,m}.
pub fn verify_binomial_identities(max_m: usize) -> Result<IdentityReport> {
    if max_m < 1 {
        return Err(Error::InvalidArgument("max_m must be at least 1".into()));
    }
    let mut checked = 0;
    for m in 0..=max_m {
        for k in 0..=m {
            let actual: BigInt = (k..=m)
                .map(|i| sign(i) * binomial(m + 1, i + 1) * binomial(i, k))
                .sum();
            let expected = sign(k);
            checked += 1;
            if actual != expected {
                return Ok(IdentityReport {
                    checked,
                    failure: Some(IdentityFailure {
                        identity: "alternating_binomial",
                        m,
                        k,
                        expected,
                        actual,
                    }),
                });
            }

            let actual: BigInt = (0..=m)
                .map(|j| sign(m - j) * binomial(m, j) * BigInt::from(j).pow(k as u32))
                .sum();
            let expected = if k == m { factorial(m) } else { BigInt::zero() };
            checked += 1;
            if actual != expected {
                return Ok(IdentityReport {
                    checked,
                    failure: Some(IdentityFailure {
                        identity: "power_difference",
                        m,
                        k,
                        expected,
                        actual,
                    }),
                });
            }
        }
    }
    Ok(IdentityReport { checked, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn z() -> GroupDescriptor {
        GroupDescriptor::lattice(1)
    }

    fn poly1(coeffs: &'static [i64]) -> GroupFunction {
        GroupFunction::from_fn(z(), move |t| {
            let x = BigInt::from(t.free_coords()[0]);
            let v: BigInt = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| BigInt::from(*c) * x.pow(i as u32))
                .sum();
            Scalar::from(v)
        })
    }

    fn e(x: i64) -> GroupElement {
        GroupElement::free([x])
    }

    /// Applies `delta` m times; the brute-force reference for the closed form.
    fn nested(f: &GroupFunction, s: &GroupElement, m: usize) -> GroupFunction {
        (0..m).fold(f.clone(), |acc, _| delta(&acc, s).unwrap())
    }

    #[test]
    fn delta_examples() {
        let sq = poly1(&[0, 0, 1]);
        let d = delta(&sq, &e(1)).unwrap();
        for x in -5..5 {
            assert_eq!(d.eval(&e(x)).unwrap(), Scalar::from_int(2 * x + 1));
        }
        let c = GroupFunction::constant(z(), Scalar::from_int(7));
        assert!(delta(&c, &e(3)).unwrap().eval(&e(2)).unwrap().is_zero());
        assert!(delta(&sq, &e(0)).unwrap().eval(&e(4)).unwrap().is_zero());
        assert!(delta(&sq, &GroupElement::free([1, 1])).is_err());
    }

    #[test]
    fn iterated_delta_examples() {
        let cube = poly1(&[0, 0, 0, 1]);
        // Nested oracle: 3!·2³ = 48.
        for t in -3..3 {
            assert_eq!(nested(&cube, &e(2), 3).eval(&e(t)).unwrap(), Scalar::from_int(48));
            assert_eq!(iterated_delta(&cube, &e(2), 3, &e(t)).unwrap(), Scalar::from_int(48));
        }
        assert_eq!(iterated_delta(&cube, &e(2), 0, &e(3)).unwrap(), Scalar::from_int(27));
        assert!(iterated_delta(&cube, &e(5), 4, &e(-2)).unwrap().is_zero());
        // m = 1 must be f(t+s) − f(t), not its negative.
        assert_eq!(iterated_delta(&cube, &e(1), 1, &e(1)).unwrap(), Scalar::from_int(7));
    }

    #[test]
    fn shift_expand_examples() {
        let sq = poly1(&[0, 0, 1]);
        assert_eq!(shift_expand(&sq, &e(1), &e(1), 3, 2).unwrap(), Scalar::from_int(16));
        assert_eq!(shift_expand(&sq, &e(3), &e(2), 0, 2).unwrap(), Scalar::from_int(9));
        assert_eq!(shift_expand(&sq, &e(3), &e(2), 1, 2).unwrap(), Scalar::from_int(25));
    }

    #[test]
    fn backward_eval_examples() {
        let sq = poly1(&[0, 0, 1]);
        assert_eq!(backward_eval(&sq, &e(0), &e(2), 2).unwrap(), Scalar::from_int(4));
        assert_eq!(backward_eval(&sq, &e(3), &e(0), 2).unwrap(), Scalar::from_int(9));
        let c = GroupFunction::constant(z(), Scalar::from_int(-4));
        for n in 0..4 {
            assert_eq!(backward_eval(&c, &e(1), &e(3), n).unwrap(), Scalar::from_int(-4));
        }
    }

    #[test]
    fn backward_eval_only_queries_forward_points() {
        let j = crate::group::SemigroupDescriptor::standard_orthant(z()).unwrap();
        let q = poly1(&[1, -2, 0, 1]).restricted_to(&j).unwrap();
        assert_eq!(backward_eval(&q, &e(0), &e(3), 3).unwrap(), Scalar::from_int(-27 + 6 + 1));
    }

    #[test]
    fn degree_test_examples() {
        let sq = poly1(&[0, 0, 1]);
        assert!(degree_test(&sq, 2, default_radius(2)).unwrap());
        assert!(!degree_test(&sq, 1, default_radius(1)).unwrap());

        let z5 = GroupDescriptor::new(0, vec![5]).unwrap();
        let c = GroupFunction::constant(z5.clone(), Scalar::from_int(3));
        assert!(degree_test(&c, 0, 1).unwrap());
        let nonconst = GroupFunction::from_fn(z5, |t| Scalar::from_int(t.torsion_coords()[0] as i64));
        assert!(!degree_test(&nonconst, 3, 1).unwrap());

        let z2 = GroupDescriptor::lattice(2);
        let st = GroupFunction::from_fn(z2, |t| {
            Scalar::from_int(t.free_coords()[0] * t.free_coords()[1])
        });
        assert!(degree_test(&st, 2, 4).unwrap());
        let w = degree_witness(&st, 1, ProbeRegion::Symmetric(3)).unwrap().unwrap();
        assert_eq!(w.value, Scalar::one());
        assert_eq!(w.steps.len(), 2);
    }

    #[test]
    fn orthant_region_stays_nonnegative() {
        let j = crate::group::SemigroupDescriptor::standard_orthant(z()).unwrap();
        let q = poly1(&[0, 0, 1]).restricted_to(&j).unwrap();
        assert!(degree_test_on(&q, 2, ProbeRegion::Orthant(4)).unwrap());
        assert!(degree_test(&q, 2, 2).is_err());
    }

    #[test]
    fn binomial_identities_hold() {
        let report = verify_binomial_identities(12).unwrap();
        assert!(report.ok());
        assert_eq!(report.checked, 2 * (13 * 14 / 2));
        assert!(verify_binomial_identities(0).is_err());
    }

    #[test]
    fn power_difference_brute_force() {
        // n = 3: k = 3 gives 1·0 − 3·1 + 3·8 − 1·... evaluated directly.
        let sum = |n: i64, k: u32| -> i64 {
            (0..=n)
                .map(|j| {
                    let c = (1..=j).fold(1i64, |acc, i| acc * (n - i + 1) / i);
                    let s = if (n - j) % 2 == 0 { 1 } else { -1 };
                    s * c * j.pow(k)
                })
                .sum()
        };
        assert_eq!(sum(3, 3), 6);
        for k in 0..3 {
            assert_eq!(sum(3, k), 0);
        }
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(1, 0).len(), 0);
    }

    #[test]
    fn differences_commute() {
        let z2 = GroupDescriptor::lattice(2);
        let f = GroupFunction::from_fn(z2.clone(), |t| {
            let (x, y) = (t.free_coords()[0], t.free_coords()[1]);
            Scalar::from_int(x * x * y - 3 * y * y + x)
        });
        let a = GroupElement::free([1, 2]);
        let b = GroupElement::free([-1, 3]);
        let ab = delta(&delta(&f, &a).unwrap(), &b).unwrap();
        let ba = delta(&delta(&f, &b).unwrap(), &a).unwrap();
        for t in z2.box_elements(-2, 2).unwrap() {
            assert_eq!(ab.eval(&t).unwrap(), ba.eval(&t).unwrap());
        }
    }
}
