use abelpoly::difference::{backward_eval, degree_test, iterated_delta, mixed_delta, shift_expand};
use abelpoly::extension::{extend_eval, alternating_sum_check, well_definedness_check};
use abelpoly::group::{GroupDescriptor, GroupElement, SemigroupDescriptor};
use abelpoly::linalg::Matrix;
use abelpoly::polynomial::{homogeneous_parts, leading_coefficient, monomial_to_newton, newton_to_monomial, MultiIndex, NewtonForm};
use abelpoly::riss::{squares_decomposition, squares_to_form, sylvester_diagonalize, SymmetricForm};
use abelpoly::spaces::{dim_pn, dual_system, tensor_split, tensor_sum};
use abelpoly::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Scalar::ratio(a, b))
}

fn newton(k: usize, n: usize) -> impl Strategy<Value = NewtonForm> {
    let indices = MultiIndex::up_to(k, n);
    proptest::collection::vec(rational(), indices.len()).prop_map(move |cs| {
        NewtonForm::new(GroupDescriptor::lattice(k), n, indices.clone().into_iter().zip(cs)).unwrap()
    })
}

fn any_newton() -> impl Strategy<Value = NewtonForm> {
    (1usize..=2, 0usize..=3).prop_flat_map(|(k, n)| newton(k, n))
}

fn point(k: usize, r: i64) -> impl Strategy<Value = GroupElement> {
    proptest::collection::vec(-r..=r, k).prop_map(GroupElement::free)
}

fn with_point(r: i64) -> impl Strategy<Value = (NewtonForm, GroupElement, GroupElement)> {
    any_newton().prop_flat_map(move |p| {
        let k = p.free_rank();
        (Just(p), point(k, r), point(k, r))
    })
}

fn nonneg(k: usize, r: i64) -> impl Strategy<Value = GroupElement> {
    proptest::collection::vec(0..=r, k).prop_map(GroupElement::free)
}

fn add(a: &GroupElement, b: &GroupElement) -> GroupElement {
    GroupElement::free(a.free_coords().iter().zip(b.free_coords()).map(|(x, y)| x + y).collect::<Vec<_>>())
}

fn symmetric(n: usize) -> impl Strategy<Value = SymmetricForm> {
    proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(v[i.min(j) * n + i.max(j)])))
                    .collect()
            })
            .collect();
        SymmetricForm::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_expansion_reproduces_translates((p, t, s) in with_point(3), m in 0usize..6) {
        let f = p.to_function();
        let g = p.group();
        let target = g.add(&t, &g.scalar_mul(m as i64, &s).unwrap()).unwrap();
        prop_assert_eq!(shift_expand(&f, &t, &s, m, p.degree_bound()).unwrap(), p.eval(&target).unwrap());
    }

    #[test]
    fn backward_evaluation_steps_back((p, t, s) in with_point(3)) {
        let f = p.to_function();
        let target = p.group().sub(&t, &s).unwrap();
        prop_assert_eq!(backward_eval(&f, &t, &s, p.degree_bound()).unwrap(), p.eval(&target).unwrap());
    }

    #[test]
    fn differences_commute((p, a, b) in with_point(2), t in point(2, 2)) {
        let f = p.to_function();
        let t = GroupElement::free(t.free_coords()[..p.free_rank()].to_vec());
        let ab = mixed_delta(&f, &[(a.clone(), 1), (b.clone(), 2)], &t).unwrap();
        let ba = mixed_delta(&f, &[(b, 2), (a, 1)], &t).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn top_difference_vanishes_above_degree((p, t, s) in with_point(3)) {
        let f = p.to_function();
        prop_assert!(iterated_delta(&f, &s, p.degree_bound() + 1, &t).unwrap() == Scalar::from_int(0));
        prop_assert!(degree_test(&f, p.degree_bound(), 2).unwrap());
    }

    #[test]
    fn basis_round_trip(p in any_newton()) {
        let back = monomial_to_newton(&newton_to_monomial(&p));
        prop_assert_eq!(back.coeffs(), p.coeffs());
    }

    #[test]
    fn homogeneous_parts_scale(p in any_newton(), t in point(2, 3), m in -3i64..=3) {
        let t = GroupElement::free(t.free_coords()[..p.free_rank()].to_vec());
        let parts = homogeneous_parts(&p);
        let g = p.group();
        let total: Scalar = parts.iter().map(|a| a.eval(&t).unwrap()).sum();
        prop_assert_eq!(total, p.eval(&t).unwrap());
        let mt = g.scalar_mul(m, &t).unwrap();
        for (j, a) in parts.iter().enumerate() {
            let factor = Scalar::from(BigInt::from(m).pow(j as u32));
            prop_assert_eq!(a.eval(&mt).unwrap(), &factor * &a.eval(&t).unwrap());
        }
    }

    #[test]
    fn leading_coefficient_is_translation_invariant((p, t, s) in with_point(3)) {
        let n = p.degree_bound();
        let lead = leading_coefficient(&p, &s).unwrap();
        let diff = iterated_delta(&p.to_function(), &s, n, &t).unwrap();
        let fact: i64 = (1..=n as i64).product();
        prop_assert_eq!(diff, lead.scale_int(&BigInt::from(fact)));
    }

    #[test]
    fn extension_matches_on_box(p in any_newton(), t in point(2, 4)) {
        let t = GroupElement::free(t.free_coords()[..p.free_rank()].to_vec());
        let j = SemigroupDescriptor::standard_orthant(p.group().clone()).unwrap();
        let q = p.to_function().restricted_to(&j).unwrap();
        prop_assert_eq!(extend_eval(&q, &j, p.degree_bound(), &t, None).unwrap(), p.eval(&t).unwrap());
    }

    #[test]
    fn extension_ignores_decomposition(
        p in newton(2, 3),
        base in nonneg(2, 3),
        shift in nonneg(2, 3),
        other in nonneg(2, 3),
        w in nonneg(2, 3),
    ) {
        let j = SemigroupDescriptor::standard_orthant(p.group().clone()).unwrap();
        let q = p.to_function().restricted_to(&j).unwrap();
        let first = (base.clone(), shift.clone());
        let second = (add(&base, &other), add(&shift, &other));
        let t = p.group().sub(&base, &shift).unwrap();
        for n in [p.degree_bound(), p.degree_bound() + 1] {
            prop_assert!(well_definedness_check(&q, &j, n, &t, &first, &second).unwrap());
            prop_assert!(alternating_sum_check(&q, &j, n, &first, &second, &w).unwrap());
        }
    }

    #[test]
    fn congruence_diagonalizes(c in (1usize..=5).prop_flat_map(symmetric)) {
        let d = sylvester_diagonalize(&c);
        let p = &d.transform;
        let prod = p.transpose().mul(c.matrix()).unwrap().mul(p).unwrap();
        prop_assert!(prod.is_diagonal());
        prop_assert!(p.inverse().is_some());
        prop_assert_eq!(d.signature.positive + d.signature.negative, c.matrix().rank());
        let terms = squares_decomposition(&c).unwrap();
        prop_assert_eq!(squares_to_form(c.dim(), &terms).unwrap(), c);
    }

    #[test]
    fn signature_is_congruence_invariant(
        c in symmetric(4),
        q in proptest::collection::vec(-3i64..=3, 16),
    ) {
        let rows: Vec<Vec<i64>> = q.chunks(4).map(|r| r.to_vec()).collect();
        let q = Matrix::from_int_rows(&rows).unwrap();
        prop_assume!(q.inverse().is_some());
        let moved = SymmetricForm::new(q.transpose().mul(c.matrix()).unwrap().mul(&q).unwrap()).unwrap();
        prop_assert_eq!(sylvester_diagonalize(&moved).signature, sylvester_diagonalize(&c).signature);
    }

    #[test]
    fn tensor_split_re_expands(p in newton(2, 3)) {
        let terms = tensor_split(&p, 1, 3).unwrap();
        let sum = tensor_sum(&terms, 2, 3).unwrap();
        prop_assert_eq!(sum.coeffs(), p.coeffs());
        for term in &terms {
            prop_assert!(term.left.degree().unwrap_or(0) <= term.order);
            prop_assert!(term.right.degree().unwrap_or(0) <= 3 - term.order);
        }
    }
}

#[test]
fn graded_piece_counts() {
    for k in 0..4 {
        for m in 0..3 {
            let g = GroupDescriptor::with_real_rank(k, vec![], m).unwrap();
            for n in 1..6 {
                let step = dim_pn(&g, n).unwrap() - dim_pn(&g, n - 1).unwrap();
                let vars = k + m;
                let expected = if vars == 0 { 0 } else {
                    abelpoly::combinatorics::binomial(n + vars - 1, vars - 1).try_into().unwrap()
                };
                assert_eq!(step, expected);
                let bigger = GroupDescriptor::with_real_rank(k + 1, vec![], m).unwrap();
                assert!(dim_pn(&bigger, n).unwrap() >= dim_pn(&g, n).unwrap());
            }
        }
    }
}

#[test]
fn dual_systems_of_newton_bases() {
    for k in 1..=2 {
        for n in 0..=3 {
            let g = GroupDescriptor::lattice(k);
            let forms: Vec<NewtonForm> = MultiIndex::of_order(k, n)
                .into_iter()
                .map(|i| NewtonForm::new(g.clone(), n, [(i, Scalar::from_int(1))]).unwrap())
                .collect();
            let d = dual_system(&forms, n).unwrap();
            let zero = g.zero().unwrap();
            for (i, t) in d.points.iter().enumerate() {
                assert!(t.free_coords().iter().all(|&x| x >= 0));
                for (j, q) in d.forms.iter().enumerate() {
                    let v = iterated_delta(&q.to_function(), t, n, &zero).unwrap();
                    assert_eq!(v, Scalar::from_int((i == j) as i64));
                }
            }
        }
    }
}
