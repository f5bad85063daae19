mod common;

use common::*;
use num_traits::Zero;
use pcyclic::coefficients::{
    field_arith, scalar_from_json, scalar_to_json, solve_perturbed_unity_root, CyclotomicRational, ExponentGroup,
    FieldOp, NovikovScalar, RootOutcome, UnityTarget,
};
use pcyclic::rational::{int, rat, Rational};
use proptest::prelude::*;

#[test]
fn addition_cancels_matching_terms() {
    let g = ExponentGroup::cyclic(int(1)).unwrap();
    let a = poly(3, &[(2, 1), (5, 3)]);
    let b = poly(3, &[(2, -1)]);
    assert_eq!(field_arith(&g, &a, &b, FieldOp::Add).unwrap(), poly(3, &[(5, 3)]));
}

#[test]
fn product_of_conjugate_binomials() {
    let g = ExponentGroup::cyclic(int(1)).unwrap();
    let a = poly(2, &[(0, 1), (1, 1)]);
    let b = poly(2, &[(0, 1), (1, -1)]);
    assert_eq!(field_arith(&g, &a, &b, FieldOp::Mul).unwrap(), poly(2, &[(0, 1), (2, -1)]));
}

#[test]
fn xi_times_xi_squared_is_one() {
    let x = CyclotomicRational::xi(3);
    assert!((&x * &x.pow(2)).is_one());
    assert_eq!(CyclotomicRational::xi_pow(3, 3), CyclotomicRational::one(3));
}

#[test]
fn exponent_outside_group_is_rejected() {
    let g = ExponentGroup::cyclic(int(1)).unwrap();
    let a = NovikovScalar::monomial(rat(1, 2), CyclotomicRational::one(3));
    assert!(field_arith(&g, &a, &a, FieldOp::Add).is_err());
    let trivial = ExponentGroup::trivial();
    assert!(field_arith(&trivial, &poly(3, &[(1, 1)]), &poly(3, &[(0, 1)]), FieldOp::Mul).is_err());
}

#[test]
fn valuation_examples() {
    assert_eq!(poly(3, &[(2, 1), (5, 3)]).valuation(), Some(&int(2)));
    assert_eq!(NovikovScalar::zero().valuation(), None);
    assert_eq!(poly(3, &[(0, 5)]).valuation(), Some(&int(0)));
}

#[test]
fn inverse_examples() {
    let a = poly(2, &[(0, 1), (1, -1)]);
    let inv = a.invert(&int(3)).unwrap();
    assert_eq!(inv.terms(), poly(2, &[(0, 1), (1, 1), (2, 1)]).terms());
    assert_eq!(inv.truncation(), Some(&int(3)));

    let t2 = poly(5, &[(2, 1)]);
    let inv = t2.invert(&int(1)).unwrap();
    assert_eq!(inv, poly(5, &[(-2, 1)]));
    assert!(inv.is_exact());

    let xi = NovikovScalar::constant(CyclotomicRational::xi(3));
    assert_eq!(xi.invert(&int(0)).unwrap(), NovikovScalar::constant(CyclotomicRational::xi_pow(3, 2)));
}

#[test]
fn inverse_of_zero_is_a_domain_error() {
    assert!(NovikovScalar::zero().invert(&int(3)).is_err());
}

#[test]
fn unperturbed_root_is_one() {
    let r = solve_perturbed_unity_root(3, &[], UnityTarget::One, &int(4), 0).unwrap();
    assert_eq!(r, RootOutcome::Solved(NovikovScalar::one(3)));
}

#[test]
fn primitive_root_target_has_no_solution() {
    for p in [2u32, 3, 5, 7] {
        let r = solve_perturbed_unity_root(p, &[], UnityTarget::XiPower(1), &int(4), 0).unwrap();
        assert_eq!(r, RootOutcome::Unsolvable);
    }
}

#[test]
fn square_root_of_one_plus_t_matches_binomial_series() {
    // binom(1/2, k): 1, 1/2, -1/8
    let r = solve_perturbed_unity_root(2, &[poly(2, &[(1, 1)])], UnityTarget::One, &int(3), 0).unwrap();
    let RootOutcome::Solved(x) = r else { panic!("expected a root") };
    let expected = NovikovScalar::from_terms(
        vec![
            (int(0), CyclotomicRational::one(2)),
            (int(1), CyclotomicRational::from_rational(2, &rat(1, 2))),
            (int(2), CyclotomicRational::from_rational(2, &rat(-1, 8))),
        ],
        Some(int(3)),
    );
    assert_eq!(x, expected);
    let sq = (&x * &x).with_truncation(&int(3));
    assert_eq!(sq.terms(), poly(2, &[(0, 1), (1, 1)]).terms());
}

#[test]
fn root_rejects_nonpositive_coefficients() {
    assert!(solve_perturbed_unity_root(3, &[poly(3, &[(0, 1)])], UnityTarget::One, &int(3), 0).is_err());
}

#[test]
fn root_with_polynomial_perturbation() {
    // x^3 = 1 + t·x + t^2 x^2 solved to order 6, then checked by substitution.
    let p = 3;
    let h = vec![NovikovScalar::zero(), poly(p, &[(1, 1)]), poly(p, &[(2, 1)])];
    let order = int(6);
    let RootOutcome::Solved(x) = solve_perturbed_unity_root(p, &h, UnityTarget::One, &order, 0).unwrap() else {
        panic!()
    };
    let lhs = (&(&x * &x) * &x).with_truncation(&order);
    let rhs = (&(&NovikovScalar::one(p) + &(&h[1] * &x)) + &(&h[2] * &(&x * &x))).with_truncation(&order);
    assert_eq!(lhs.terms(), rhs.terms());
}

#[test]
fn scalar_json_round_trip() {
    let a = NovikovScalar::from_terms(
        vec![(rat(-1, 2), k(5, &[1, 0, -2, 3])), (int(4), k(5, &[0, 1, 0, 0]))],
        Some(int(7)),
    );
    let w = scalar_to_json(&a).unwrap();
    let text = serde_json::to_string(&w).unwrap();
    assert!(text.contains("\"truncation\":[7,1]"));
    let back = scalar_from_json(&serde_json::from_str(&text).unwrap(), 5).unwrap();
    assert_eq!(a, back);
}

#[test]
fn exponent_group_reduces_generators() {
    let g = ExponentGroup::new(vec![rat(2, 3), rat(1, 2)]).unwrap();
    assert_eq!(g.step(), Some(&rat(1, 6)));
    assert!(g.contains(&rat(5, 6)));
    assert!(!g.contains(&rat(1, 4)));
    assert_eq!(g.class_rep(&rat(-1, 12)), rat(1, 12));
    assert!(ExponentGroup::new(vec![int(0)]).is_err());
    assert!(ExponentGroup::trivial().contains(&int(0)));
    assert!(!ExponentGroup::trivial().contains(&int(1)));
}

// Independent model of Q[x]/(x^p - 1): coefficient vectors of length p.
// Two such vectors give the same element of Q(ξ_p) iff their difference is a
// constant multiple of 1 + x + … + x^{p-1}.
#[derive(Clone, Debug)]
enum Expr {
    Leaf(Vec<i64>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

fn ring_eval(e: &Expr, p: usize) -> Vec<Rational> {
    match e {
        Expr::Leaf(c) => {
            let mut v = vec![Rational::zero(); p];
            for (i, x) in c.iter().enumerate() {
                v[i] = int(*x);
            }
            v
        }
        Expr::Add(a, b) => ring_eval(a, p).iter().zip(ring_eval(b, p)).map(|(x, y)| x + y).collect(),
        Expr::Sub(a, b) => ring_eval(a, p).iter().zip(ring_eval(b, p)).map(|(x, y)| x - y).collect(),
        Expr::Mul(a, b) => {
            let (x, y) = (ring_eval(a, p), ring_eval(b, p));
            let mut out = vec![Rational::zero(); p];
            for i in 0..p {
                for j in 0..p {
                    out[(i + j) % p] += &x[i] * &y[j];
                }
            }
            out
        }
    }
}

fn field_eval(e: &Expr, p: u32) -> CyclotomicRational {
    match e {
        Expr::Leaf(c) => c
            .iter()
            .enumerate()
            .fold(CyclotomicRational::zero(p), |acc, (i, x)| {
                &acc + &(&CyclotomicRational::xi_pow(p, i as i64) * &CyclotomicRational::from_integer(p, *x))
            }),
        Expr::Add(a, b) => &field_eval(a, p) + &field_eval(b, p),
        Expr::Sub(a, b) => &field_eval(a, p) - &field_eval(b, p),
        Expr::Mul(a, b) => &field_eval(a, p) * &field_eval(b, p),
    }
}

fn expr_strategy(p: usize) -> impl Strategy<Value = Expr> {
    let leaf = prop::collection::vec(-3i64..=3, p).prop_map(Expr::Leaf);
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

fn same_in_field(ring: &[Rational], field: &CyclotomicRational) -> bool {
    let p = ring.len();
    let mut lifted = vec![Rational::zero(); p];
    for (i, c) in field.coords().into_iter().enumerate() {
        lifted[i] = c;
    }
    let diff: Vec<Rational> = ring.iter().zip(&lifted).map(|(a, b)| a - b).collect();
    diff.iter().all(|d| d == &diff[0])
}

fn cyclo_strategy(p: u32) -> impl Strategy<Value = CyclotomicRational> {
    prop::collection::vec((-6i64..=6, 1i64..=4), (p - 1) as usize).prop_map(move |c| {
        let coords: Vec<Rational> = c.into_iter().map(|(n, d)| rat(n, d)).collect();
        CyclotomicRational::from_coords(p, &coords).unwrap()
    })
}

fn scalar_strategy(p: u32) -> impl Strategy<Value = NovikovScalar> {
    prop::collection::vec((-3i64..=4, cyclo_strategy(p)), 1..4)
        .prop_map(|terms| NovikovScalar::from_terms(terms.into_iter().map(|(e, c)| (int(e), c)), None))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cyclotomic_arithmetic_matches_group_ring(
        (p, e) in prop::sample::select(vec![2u32, 3, 5, 7]).prop_flat_map(|p| (Just(p), expr_strategy(p as usize)))
    ) {
        let f = field_eval(&e, p);
        prop_assert!(same_in_field(&ring_eval(&e, p as usize), &f));
        let all_powers = (0..p as i64).fold(CyclotomicRational::zero(p), |acc, j| &acc + &CyclotomicRational::xi_pow(p, j));
        prop_assert!((&f * &all_powers).is_zero());
        if !f.is_zero() {
            prop_assert!((&f * &f.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn valuation_is_additive_and_ultrametric(a in scalar_strategy(5), b in scalar_strategy(5)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.valuation().cloned(), Some(a.valuation().unwrap() + b.valuation().unwrap()));
        let sum = &a + &b;
        let m = a.valuation().unwrap().min(b.valuation().unwrap()).clone();
        if let Some(v) = sum.valuation() {
            prop_assert!(v >= &m);
        }
        if a.valuation() != b.valuation() {
            prop_assert_eq!(sum.valuation().cloned(), Some(m));
        }
    }

    #[test]
    fn invert_is_two_sided_up_to_order(a in scalar_strategy(3), order in 1i64..6) {
        prop_assume!(!a.is_zero());
        let order = int(order);
        let inv = a.invert(&order).unwrap();
        let left = &a * &inv;
        let right = &inv * &a;
        let one = NovikovScalar::one(3);
        for prod in [left, right] {
            match prod.truncation() {
                None => prop_assert_eq!(&prod, &one),
                Some(t) => {
                    prop_assert!(t >= &order);
                    let expected = one.with_truncation(t);
                    prop_assert_eq!(prod.terms(), expected.terms());
                }
            }
        }
    }

    #[test]
    fn perturbed_roots_satisfy_the_equation(
        p in prop::sample::select(vec![2u32, 3, 5]),
        coeffs in prop::collection::vec((1i64..=3, -3i64..=3), 1..3),
        order in 2i64..6,
    ) {
        let h: Vec<NovikovScalar> = coeffs.iter().map(|(e, c)| poly(p, &[(*e, *c)])).collect();
        let h: Vec<NovikovScalar> = h.into_iter().take(p as usize).collect();
        let order = int(order);
        let RootOutcome::Solved(x) = solve_perturbed_unity_root(p, &h, UnityTarget::One, &order, 0).unwrap() else {
            return Err(TestCaseError::fail("no root"));
        };
        let mut lhs = NovikovScalar::one(p);
        for _ in 0..p { lhs = (&lhs * &x).with_truncation(&order); }
        let mut rhs = NovikovScalar::one(p).with_truncation(&order);
        let mut xp = NovikovScalar::one(p);
        for c in &h {
            rhs = &rhs + &(c * &xp).with_truncation(&order);
            xp = (&xp * &x).with_truncation(&order);
        }
        prop_assert_eq!(lhs.terms(), rhs.terms());
        prop_assert!(x.leading().unwrap().1.is_one() && x.valuation().unwrap().is_zero());
    }
}
