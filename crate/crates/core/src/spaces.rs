//! Dimensions and bases of the spaces P^n(G) and the constructive
//! machinery behind them: dual systems, tensor splitting, torsion and H_0
//! constancy, restriction to sublattices, and an infinite-dimensionality
//! certificate for groups of finitely supported sequences.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, sign};
use crate::difference::{compositions, degree_witness, iterated_delta, mixed_delta, DifferenceWitness, ProbeRegion};
use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{integer_box, GroupDescriptor, GroupElement};
use crate::linalg::Matrix;
use crate::polynomial::{MonomialForm, MultiIndex, NewtonForm};
use crate::scalar::Scalar;

/// dim P^n(R^m × Z^k × F) = C(n + m + k, m + k); the finite factor F
/// contributes only constants.
pub fn dim_pn(g: &GroupDescriptor, n: usize) -> Result<u64> {
    let vars = g.free_rank() + g.formal_real_rank();
    binomial(n + vars, vars)
        .to_u64()
        .ok_or(Error::Overflow("dimension"))
}

/// Evaluation matrix (rows = functions, columns = points) of real-valued
/// oracles.
pub fn evaluation_matrix(fns: &[GroupFunction], points: &[GroupElement]) -> Result<Matrix> {
    let rows = fns
        .iter()
        .map(|f| points.iter().map(|t| f.eval(t)?.to_real()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, points.len()));
    }
    Matrix::from_rows(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    pub forms: Vec<MonomialForm>,
    /// Rank of the evaluation matrix on the box [0, n]^k.
    pub evaluation_rank: usize,
}

/// All monomials t^α on Z^k with |α| ≤ n, in graded order.
pub fn monomial_basis(k: usize, n: usize) -> Result<MonomialBasis> {
    let g = GroupDescriptor::lattice(k);
    let forms = MultiIndex::up_to(k, n)
        .into_iter()
        .map(|idx| MonomialForm::monomial(g.clone(), idx))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<GroupElement> = integer_box(k, 0, n as i64).into_iter().map(GroupElement::free).collect();
    let fns: Vec<GroupFunction> = forms.iter().map(MonomialForm::to_function).collect();
    let evaluation_rank = evaluation_matrix(&fns, &points)?.rank();
    if evaluation_rank != forms.len() {
        return Err(Error::InternalIdentity("monomials evaluated dependent"));
    }
    Ok(MonomialBasis { forms, evaluation_rank })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSystem {
    pub forms: Vec<NewtonForm>,
    pub points: Vec<GroupElement>,
}

fn top_difference(p: &NewtonForm, t: &GroupElement, n: usize) -> Result<Scalar> {
    let zero = p.group().zero()?;
    iterated_delta(&p.to_function(), t, n, &zero)
}

/// Candidate points of N^k for dual systems: the grid {0..n}^k in graded
/// order. A nonzero polynomial of degree n cannot vanish on all of it.
fn dual_candidates(g: &GroupDescriptor, n: usize) -> Result<Vec<GroupElement>> {
    MultiIndex::up_to(g.free_rank(), n * g.free_rank())
        .into_iter()
        .filter(|idx| idx.entries().iter().all(|&e| e <= n))
        .map(|idx| g.free_element(idx.entries().iter().map(|&e| e as i64).collect()))
        .collect()
}

/// Given forms spanning a complement of P^{n−1} in P^n, produces a basis
/// q_1…q_r of their span and points t_1…t_r in N^k with
/// Δ_{t_i}^n q_j = δ_ij.
pub fn dual_system(forms: &[NewtonForm], n: usize) -> Result<DualSystem> {
    let Some(first) = forms.first() else {
        return Ok(DualSystem { forms: Vec::new(), points: Vec::new() });
    };
    let g = first.group().clone();
    for p in forms {
        if p.group() != &g {
            return Err(Error::DescriptorMismatch("dual system inputs on different groups".into()));
        }
        if p.degree() != Some(n) {
            return Err(Error::DegenerateInput(format!(
                "form has degree {:?}, expected exactly {n}",
                p.degree()
            )));
        }
    }
    let candidates = dual_candidates(&g, n)?;
    let mut qs: Vec<NewtonForm> = Vec::new();
    let mut ts: Vec<GroupElement> = Vec::new();
    for p in forms {
        // Clear the components along earlier points.
        let mut q = p.clone();
        for (qj, tj) in qs.iter().zip(&ts) {
            let c = top_difference(&q, tj, n)?;
            q = q.axpy(&-c, qj)?;
        }
        let mut chosen = None;
        for t in &candidates {
            let d = top_difference(&q, t, n)?;
            if !d.is_zero() {
                chosen = Some((t.clone(), d));
                break;
            }
        }
        let Some((t, d)) = chosen else {
            return Err(Error::DegenerateInput(
                "forms are dependent modulo lower degree".into(),
            ));
        };
        let q = q.scale(&d.inv().expect("nonzero"));
        // Make earlier forms vanish at the new point.
        for qj in qs.iter_mut() {
            let c = top_difference(qj, &t, n)?;
            if !c.is_zero() {
                *qj = qj.axpy(&-c, &q)?;
            }
        }
        qs.push(q);
        ts.push(t);
    }
    Ok(DualSystem { forms: qs, points: ts })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorTerm {
    /// Degree bound of the left factor; the right factor has bound n − order.
    pub order: usize,
    pub left: NewtonForm,
    pub right: NewtonForm,
}

/// Writes p(s, t) on Z^{k1} × Z^{k2} as Σ q(s)·r(t) with deg q ≤ m and
/// deg r ≤ n − m.
///
/// For h = n down to 0 a dual system (q_i, s_i) of the order-h Newton
/// basis in s is fixed, and r_i = Δ^h_{(s_i, 0)} R(0, ·) is read off the
/// remainder R, which then drops q_i ⊗ r_i. Terms sharing a right factor
/// are merged at the end.
pub fn tensor_split(p: &NewtonForm, k1: usize, n: usize) -> Result<Vec<TensorTerm>> {
    let k = p.free_rank();
    if k1 > k {
        return Err(Error::InvalidArgument(format!("split {k1} exceeds free rank {k}")));
    }
    if let Some(d) = p.degree() {
        if d > n {
            return Err(Error::DegreeViolation { actual: d, bound: n });
        }
    }
    let left_group = GroupDescriptor::lattice(k1);
    let lattice = GroupDescriptor::lattice(k);
    let mut remainder = p.with_group(lattice)?.with_degree_bound(n)?;
    let mut terms: Vec<TensorTerm> = Vec::new();
    for h in (0..=n).rev() {
        let basis = MultiIndex::of_order(k1, h)
            .into_iter()
            .map(|idx| NewtonForm::new(left_group.clone(), h, [(idx, Scalar::one())]))
            .collect::<Result<Vec<_>>>()?;
        let dual = dual_system(&basis, h)?;
        let mut found = Vec::new();
        for (q, s) in dual.forms.iter().zip(&dual.points) {
            let mut r = NewtonForm::zero(GroupDescriptor::lattice(k - k1), n)?;
            for j in 0..=h {
                let point: Vec<i64> = s.free_coords().iter().map(|&x| x * j as i64).collect();
                let w = Scalar::from(sign(h - j) * binomial(h, j));
                r = r.axpy(&w, &remainder.partial_eval_left(&point)?)?;
            }
            let r = r
                .with_degree_bound(n - h)
                .map_err(|_| Error::InternalIdentity("tensor factor exceeds its degree bound"))?;
            found.push((q.clone(), r));
        }
        for (q, r) in found {
            if r.is_zero() {
                continue;
            }
            remainder = remainder.sub(&q.tensor(&r)?.with_degree_bound(n)?)?;
            terms.push(TensorTerm { order: h, left: q, right: r });
        }
    }
    if !remainder.is_zero() {
        return Err(Error::InternalIdentity("tensor split left a remainder"));
    }
    Ok(merge_terms(terms))
}

fn merge_terms(terms: Vec<TensorTerm>) -> Vec<TensorTerm> {
    let mut merged: Vec<TensorTerm> = Vec::new();
    for term in terms {
        // Orders are visited in decreasing order, so an existing entry
        // already carries the larger order.
        match merged.iter_mut().find_map(|m| proportion(&term.right, &m.right).map(|c| (m, c))) {
            Some((m, c)) => m.left = m.left.axpy(&c, &term.left).expect("same group"),
            None => merged.push(term),
        }
    }
    merged.into_iter().filter(|t| !t.left.is_zero()).collect()
}

/// The scalar c with a = c·b, when it exists and b is nonzero.
fn proportion(a: &NewtonForm, b: &NewtonForm) -> Option<Scalar> {
    let (idx, bv) = b.coeffs().iter().next()?;
    let c = a.coeff(idx).checked_div(bv)?;
    (!c.is_zero()
        && a.coeffs().len() == b.coeffs().len()
        && b.coeffs().iter().all(|(i, v)| a.coeff(i) == v * &c))
    .then_some(c)
}

/// Re-expands Σ q ⊗ r into a single form on Z^{k1+k2}.
pub fn tensor_sum(terms: &[TensorTerm], k: usize, n: usize) -> Result<NewtonForm> {
    let mut acc = NewtonForm::zero(GroupDescriptor::lattice(k), n)?;
    for t in terms {
        acc = acc.add(&t.left.tensor(&t.right)?)?;
    }
    acc.with_degree_bound(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub constant: bool,
    /// A nonzero difference of order n+1, when one exists.
    pub witness: Option<DifferenceWitness>,
}

impl TorsionReport {
    /// Passing the degree test forces constancy on a finite group.
    pub fn consistent(&self) -> bool {
        self.witness.is_some() || self.constant
    }
}

/// Runs the order-(n+1) difference test over every point of a finite
/// group and reports either a witness or that f is constant.
pub fn torsion_constancy_check(f: &GroupFunction, n: usize) -> Result<TorsionReport> {
    let g = f.group();
    if !g.is_finite() {
        return Err(Error::InvalidArgument(format!("{g} is not a finite group")));
    }
    let witness = degree_witness(f, n, ProbeRegion::Symmetric(0))?;
    let elems = g.box_elements(0, 0)?;
    let first = f.eval(&elems[0])?;
    let mut constant = true;
    for t in &elems[1..] {
        if f.eval(t)? != first {
            constant = false;
            break;
        }
    }
    Ok(TorsionReport { constant, witness })
}

/// Dimension of the space of functions on a finite group whose order-(n+1)
/// generator differences all vanish: |G| minus the rank of the stacked
/// difference functionals.
pub fn torsion_polynomial_dimension(g: &GroupDescriptor, n: usize) -> Result<usize> {
    if !g.is_finite() {
        return Err(Error::InvalidArgument(format!("{g} is not a finite group")));
    }
    let elems = g.box_elements(0, 0)?;
    let position: HashMap<GroupElement, usize> =
        elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let gens = g.generators()?;
    let mut rows = Vec::new();
    for t in &elems {
        for counts in compositions(n + 1, gens.len()) {
            let mut row = vec![BigRational::zero(); elems.len()];
            accumulate_difference(g, &gens, &counts, 0, t.clone(), BigInt::one(), &position, &mut row)?;
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(elems.len());
    }
    Ok(elems.len() - Matrix::from_rows(rows)?.rank())
}

#[allow(clippy::too_many_arguments)]
fn accumulate_difference(
    g: &GroupDescriptor,
    gens: &[GroupElement],
    counts: &[usize],
    idx: usize,
    point: GroupElement,
    weight: BigInt,
    position: &HashMap<GroupElement, usize>,
    row: &mut [BigRational],
) -> Result<()> {
    if idx == gens.len() {
        row[position[&point]] += BigRational::from_integer(weight);
        return Ok(());
    }
    let a = counts[idx];
    let mut p = point;
    for j in 0..=a {
        if j > 0 {
            p = g.add(&p, &gens[idx])?;
        }
        let w = &weight * sign(a - j) * binomial(a, j);
        accumulate_difference(g, gens, counts, idx + 1, p.clone(), w, position, row)?;
    }
    Ok(())
}

/// Whether f is constant on every coset t + H_0 with t in the symmetric
/// free box of the given radius.
pub fn h0_constancy_check(f: &GroupFunction, probe_radius: i64) -> Result<bool> {
    let g = f.group();
    let tors = g.torsion_elements();
    for free in integer_box(g.free_rank(), -probe_radius, probe_radius) {
        let mut first: Option<Scalar> = None;
        for tor in &tors {
            let t = g.element(free.clone(), tor.iter().map(|&x| x as i64).collect())?;
            let v = f.eval(&t)?;
            match &first {
                None => first = Some(v),
                Some(f0) if *f0 != v => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteDimCertificate {
    pub size: usize,
    /// matrix[i][j] = p_i(δ_j)
    pub matrix: Matrix,
    pub rank: usize,
    pub witness_points: Vec<GroupElement>,
    /// Every p_i has exact degree 1.
    pub degree_one: bool,
    /// Every p_i vanishes at 0 and is additive on the witness points.
    pub additive: bool,
}

impl InfiniteDimCertificate {
    pub fn holds(&self) -> bool {
        self.rank == self.size && self.degree_one && self.additive
    }
}

/// In the group of finitely supported integer sequences, the coordinate
/// evaluations p_i(s) = s(i) are degree-1 polynomials. Restricted to the
/// first N coordinates their evaluation matrix at the unit sequences has
/// rank N, so dim P^1 ≥ N for every N.
pub fn infinite_dim_certificate(size: usize) -> Result<InfiniteDimCertificate> {
    if size < 1 {
        return Err(Error::InvalidArgument("certificate size must be at least 1".into()));
    }
    let g = GroupDescriptor::lattice(size);
    let evals: Vec<NewtonForm> = (0..size)
        .map(|i| NewtonForm::new(g.clone(), 1, [(MultiIndex::unit(size, i), Scalar::one())]))
        .collect::<Result<_>>()?;
    let deltas: Vec<GroupElement> = (0..size)
        .map(|j| {
            let mut v = vec![0; size];
            v[j] = 1;
            GroupElement::free(v)
        })
        .collect();
    let fns: Vec<GroupFunction> = evals.iter().map(NewtonForm::to_function).collect();
    let matrix = evaluation_matrix(&fns, &deltas)?;
    let rank = matrix.rank();
    let zero = g.zero()?;

    let mut degree_one = true;
    'deg: for (p, f) in evals.iter().zip(&fns) {
        if p.degree() != Some(1) {
            degree_one = false;
            break;
        }
        let mut some_first = false;
        for a in 0..size {
            if !iterated_delta(f, &deltas[a], 1, &zero)?.is_zero() {
                some_first = true;
            }
            for b in a..size {
                let steps = [(deltas[a].clone(), 1), (deltas[b].clone(), 1)];
                if !mixed_delta(f, &steps, &zero)?.is_zero() {
                    degree_one = false;
                    break 'deg;
                }
            }
        }
        degree_one &= some_first;
    }

    let mut additive = true;
    'add: for f in &fns {
        if !f.eval(&zero)?.is_zero() {
            additive = false;
            break;
        }
        for a in &deltas {
            let fa = f.eval(a)?;
            for b in &deltas {
                let lhs = f.eval(&g.add(a, b)?)?;
                if lhs != &fa + &f.eval(b)? {
                    additive = false;
                    break 'add;
                }
            }
        }
    }

    Ok(InfiniteDimCertificate {
        size,
        matrix,
        rank,
        witness_points: deltas,
        degree_one,
        additive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub dim: u64,
    /// Rank of the monomial basis evaluated on a sample of (mZ)^k.
    pub restricted_rank: usize,
    /// Rank of q_j(t) = p_j(m·t), built symbolically and evaluated on Z^k.
    pub scaled_rank: usize,
}

impl RestrictionReport {
    pub fn holds(&self) -> bool {
        self.restricted_rank as u64 == self.dim && self.scaled_rank as u64 == self.dim
    }
}

/// Restriction from Z^k to the sublattice (mZ)^k keeps P^n's dimension.
pub fn restriction_dim_check(k: usize, m: i64, n: usize) -> Result<RestrictionReport> {
    if m < 1 {
        return Err(Error::InvalidArgument("sublattice index must be at least 1".into()));
    }
    let g = GroupDescriptor::lattice(k);
    let basis = monomial_basis(k, n)?;
    let sub_points: Vec<GroupElement> = integer_box(k, 0, n as i64)
        .into_iter()
        .map(|x| GroupElement::free(x.into_iter().map(|v| v * m).collect::<Vec<_>>()))
        .collect();
    let fns: Vec<GroupFunction> = basis.forms.iter().map(MonomialForm::to_function).collect();
    let restricted_rank = evaluation_matrix(&fns, &sub_points)?.rank();

    let scaled: Vec<GroupFunction> = basis
        .forms
        .iter()
        .map(|p| {
            let (idx, c) = p.coeffs().iter().next().expect("monomial");
            let factor = Scalar::from(BigInt::from(m).pow(idx.order() as u32));
            MonomialForm::new(g.clone(), [(idx.clone(), c * &factor)]).map(|q| q.to_function())
        })
        .collect::<Result<_>>()?;
    let points: Vec<GroupElement> = integer_box(k, 1, n as i64 + 1).into_iter().map(GroupElement::free).collect();
    let scaled_rank = evaluation_matrix(&scaled, &points)?.rank();
    Ok(RestrictionReport {
        dim: dim_pn(&g, n)?,
        restricted_rank,
        scaled_rank,
    })
}
