//! Extension of polynomials from a subsemigroup J to G = J − J.
//!
//! For t = u − v with u, v in J the extension is
//! p(t) = Σ_{j=0}^{n} (−1)^j Δ_v^j q(u),
//! which only queries q at u + jv ∈ J. The identities certifying that this
//! value does not depend on the chosen (u, v) are exposed as verifiers.

use num_traits::Zero;

use crate::difference::{backward_eval, iterated_delta, mixed_delta};
use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{GroupElement, SemigroupDescriptor, SemigroupKind};
use crate::polynomial::{MultiIndex, NewtonForm};
use crate::scalar::Scalar;

/// A pair (u, v) with t = u − v.
pub type Decomposition = (GroupElement, GroupElement);

fn ensure_member(j: &SemigroupDescriptor, x: &GroupElement) -> Result<()> {
    if j.contains(x)? {
        Ok(())
    } else {
        Err(Error::MembershipViolation(x.to_string()))
    }
}

fn check_decomposition(j: &SemigroupDescriptor, t: &GroupElement, (u, v): &Decomposition) -> Result<()> {
    ensure_member(j, u)?;
    ensure_member(j, v)?;
    if &j.ambient().sub(u, v)? != t {
        return Err(Error::DecompositionMismatch);
    }
    Ok(())
}

fn same_group(q: &GroupFunction, j: &SemigroupDescriptor) -> Result<()> {
    if q.group() != j.ambient() {
        return Err(Error::DescriptorMismatch(format!(
            "function on {}, semigroup in {}",
            q.group(),
            j.ambient()
        )));
    }
    Ok(())
}

/// A decomposition of `t` suitable for `j`: the supplied one (validated),
/// the canonical orthant split, or (t, 0) when J is the whole group.
pub fn resolve_decomposition(
    j: &SemigroupDescriptor,
    t: &GroupElement,
    decomposition: Option<Decomposition>,
) -> Result<Decomposition> {
    match decomposition {
        Some(d) => {
            check_decomposition(j, t, &d)?;
            Ok(d)
        }
        None => match j.kind() {
            SemigroupKind::StandardOrthant => j.orthant_decompose(t),
            SemigroupKind::FullGroup => Ok((t.clone(), j.ambient().zero()?)),
            SemigroupKind::GeneratorList => {
                if j.contains(t)? {
                    Ok((t.clone(), j.ambient().zero()?))
                } else {
                    Err(Error::NoDecomposition)
                }
            }
        },
    }
}

/// Value at `t` of the unique polynomial on G extending q ∈ P^n(J).
pub fn extend_eval(
    q: &GroupFunction,
    j: &SemigroupDescriptor,
    n: usize,
    t: &GroupElement,
    decomposition: Option<Decomposition>,
) -> Result<Scalar> {
    same_group(q, j)?;
    let (u, v) = resolve_decomposition(j, t, decomposition)?;
    backward_eval(q, &u, &v, n)
}

/// The extension as a function on G, using canonical decompositions.
pub fn extend(q: &GroupFunction, j: &SemigroupDescriptor, n: usize) -> Result<GroupFunction> {
    same_group(q, j)?;
    let (q, j) = (q.clone(), j.clone());
    Ok(GroupFunction::new(q.group().clone(), move |t| extend_eval(&q, &j, n, t, None)))
}

/// Whether two decompositions of `t` give the same alternating sum.
pub fn well_definedness_check(
    q: &GroupFunction,
    j: &SemigroupDescriptor,
    n: usize,
    t: &GroupElement,
    first: &Decomposition,
    second: &Decomposition,
) -> Result<bool> {
    same_group(q, j)?;
    check_decomposition(j, t, first)?;
    check_decomposition(j, t, second)?;
    let a = backward_eval(q, &first.0, &first.1, n)?;
    let b = backward_eval(q, &second.0, &second.1, n)?;
    Ok(a == b)
}

/// L(q) = q(u) − Δ_v q(ũ). The alternative form q(ũ) − Δ_ṽ q(u) is
/// computed too and must agree.
pub fn l_functional(q: &GroupFunction, first: &Decomposition, second: &Decomposition) -> Result<Scalar> {
    let g = q.group();
    let (u, v) = first;
    let (ut, vt) = second;
    if g.sub(u, v)? != g.sub(ut, vt)? {
        return Err(Error::DecompositionMismatch);
    }
    let one = iterated_delta(q, v, 1, ut)?;
    let lhs = q.eval(u)? - one;
    let other = q.eval(ut)? - iterated_delta(q, vt, 1, u)?;
    if lhs != other {
        return Err(Error::InternalIdentity("L(q) two-sided form"));
    }
    Ok(lhs)
}

/// Δ_v^j Δ_ṽ^j q as an oracle; its points stay in J whenever q's do.
fn double_difference(q: &GroupFunction, v: &GroupElement, vt: &GroupElement, j: usize) -> GroupFunction {
    let (q2, v, vt) = (q.clone(), v.clone(), vt.clone());
    GroupFunction::new(q.group().clone(), move |x| {
        mixed_delta(&q2, &[(v.clone(), j), (vt.clone(), j)], x)
    })
}

/// Both sides of the alternating-sum identity used to prove independence
/// from the decomposition:
/// for n = 2k, Σ_{j<k} L(Δ_v^jΔ_ṽ^j q) + Δ_v^kΔ_ṽ^k q(w);
/// for n = 2k+1, Σ_{j≤k} L(Δ_v^jΔ_ṽ^j q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingSumCheck {
    pub lhs: Scalar,
    pub rhs: Scalar,
    /// In the even case, the remainder at `w` and at `u` (they must agree).
    pub remainder: Option<(Scalar, Scalar)>,
}

impl AlternatingSumCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.remainder.as_ref().is_none_or(|(a, b)| a == b)
    }
}

pub fn alternating_sum_terms(
    q: &GroupFunction,
    j: &SemigroupDescriptor,
    n: usize,
    first: &Decomposition,
    second: &Decomposition,
    w: &GroupElement,
) -> Result<AlternatingSumCheck> {
    same_group(q, j)?;
    for x in [&first.0, &first.1, &second.0, &second.1, w] {
        ensure_member(j, x)?;
    }
    let (u, v) = first;
    let (_, vt) = second;
    let lhs = backward_eval(q, u, v, n)?;
    let k = n / 2;
    let l_terms = if n.is_multiple_of(2) { k } else { k + 1 };
    let mut rhs = Scalar::zero();
    for i in 0..l_terms {
        rhs += l_functional(&double_difference(q, v, vt, i), first, second)?;
    }
    let remainder = if n.is_multiple_of(2) {
        let r = double_difference(q, v, vt, k);
        let at_w = r.eval(w)?;
        let at_u = r.eval(u)?;
        rhs += &at_w;
        Some((at_w, at_u))
    } else {
        None
    };
    Ok(AlternatingSumCheck { lhs, rhs, remainder })
}

pub fn alternating_sum_check(
    q: &GroupFunction,
    j: &SemigroupDescriptor,
    n: usize,
    first: &Decomposition,
    second: &Decomposition,
    w: &GroupElement,
) -> Result<bool> {
    Ok(alternating_sum_terms(q, j, n, first, second, w)?.holds())
}

/// Points of J on which a polynomial of degree ≤ n is determined: the
/// simplex {β ∈ N^k : |β| ≤ n} for orthants and full groups, and all
/// combinations Σ c_i g_i with |c| ≤ n for generator lists.
pub fn injectivity_probe(j: &SemigroupDescriptor, n: usize) -> Result<Vec<GroupElement>> {
    let g = j.ambient();
    match j.kind() {
        SemigroupKind::StandardOrthant | SemigroupKind::FullGroup => MultiIndex::up_to(g.free_rank(), n)
            .into_iter()
            .map(|b| g.free_element(b.entries().iter().map(|&x| x as i64).collect()))
            .collect(),
        SemigroupKind::GeneratorList => {
            let gens = j.generators();
            MultiIndex::up_to(gens.len(), n)
                .into_iter()
                .map(|c| {
                    c.entries().iter().zip(gens).try_fold(g.zero()?, |acc, (&ci, gi)| {
                        g.add(&acc, &g.scalar_mul(ci as i64, gi)?)
                    })
                })
                .collect()
        }
    }
}

/// Restriction to J is one-to-one: p vanishes on the probe set of J
/// exactly when all of its Newton coefficients vanish.
pub fn restriction_injectivity_check(p: &NewtonForm, j: &SemigroupDescriptor) -> Result<bool> {
    if p.group() != j.ambient() {
        return Err(Error::DescriptorMismatch("polynomial and semigroup groups differ".into()));
    }
    let probe = injectivity_probe(j, p.degree_bound())?;
    let mut vanishes = true;
    for t in &probe {
        if !p.eval(t)?.is_zero() {
            vanishes = false;
            break;
        }
    }
    Ok(vanishes == p.is_zero())
}
