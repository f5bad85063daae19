mod common;

use num_traits::Zero;
use pcyclic::barcode::{full_barcode, Barcode, CodomainMode};
use pcyclic::coefficients::{CyclotomicRational, NovikovScalar};
use pcyclic::complexes::{FilteredChainComplex, GradedMap};
use pcyclic::cyclic::*;
use pcyclic::eggbeater::{build_model, egg_cone};
use pcyclic::filtered_linalg::{
    is_orthogonal, rank_of, solve_in_span, svd, FilteredMap, SparseMatrix, SparseVector,
};
use pcyclic::rational::{int, rat, Rational};

use common::{ints, plain_field, space};

fn cyclic_shift(n: usize, p: u32) -> SparseMatrix {
    SparseMatrix::from_columns(n, (0..n).map(|a| SparseVector::unit(n, (a + 1) % n, p)).collect())
}

fn barcode(c: &FilteredChainComplex) -> Barcode {
    full_barcode(c, CodomainMode::Kernel).unwrap()
}

fn xi(p: u32, i: i64) -> NovikovScalar {
    NovikovScalar::constant(CyclotomicRational::xi_pow(p, i))
}

fn is_identity(c: &FilteredChainComplex, m: &GradedMap) -> bool {
    c.degrees().all(|k| {
        let n = c.dim(k);
        m.at_or_zero(k, n, n) == SparseMatrix::identity(n, c.prime())
    })
}

fn fixture(p: u32, size: usize, seed: u64) -> PowerFixture {
    generate_power_p_fixture(p, size, seed).unwrap()
}

// ---- repair ----

#[test]
fn repair_of_unperturbed_action_is_identity_operation() {
    let mut cfg = FixtureConfig::new(3, 2, 11);
    cfg.density = 0.0;
    let f = generate_power_p_fixture_with(&cfg).unwrap();
    let rep = repair_to_group_action(&f.data, None).unwrap();
    assert!(rep.exact);
    assert_eq!(&rep.t, f.data.t());
    assert_eq!(rep.s.as_ref(), Some(&f.data.root.as_ref().unwrap().map));
}

#[test]
fn repaired_actions_are_exact_group_actions() {
    for (p, seed) in [(2, 1), (2, 2), (3, 3), (3, 4)] {
        let f = fixture(p, 3, seed);
        let c = f.data.source();
        let rep = repair_to_group_action(&f.data, None).unwrap();
        assert!(is_identity(c, &rep.t.pow(p, c)), "p={p} seed={seed}");
        assert!(rep.t.is_chain_map(c, c));
        let s = rep.s.as_ref().unwrap();
        assert!(s.is_chain_map(c, c));
        assert_eq!(s.pow(p, c), rep.t);
        assert!(is_identity(c, &s.pow(p * p, c)));
        let diff = rep.t.sub(f.data.t()).unwrap();
        assert!(strictly_lowering(c, &diff).unwrap());
        assert_eq!(rep.t.compose(f.data.t(), c), f.data.t().compose(&rep.t, c));
    }
}

#[test]
fn perturbation_is_nonzero_for_generic_fixtures() {
    for seed in 0..10 {
        let f = fixture(3, 4, seed);
        let c = f.data.source();
        assert!(f.data.hbar().unwrap().is_some(), "seed {seed}");
        assert!(!is_identity(c, &f.data.t().pow(3, c)));
    }
}

#[test]
fn binomial_series_on_square_zero_argument() {
    let field = plain_field(3);
    let sp = space(&field, &ints(&[2, 0]));
    // e₀ ↦ 5·e₁ lowers filtration by 2
    let e = SparseMatrix::from_triplets(2, 2, vec![(1, 0, NovikovScalar::from_integer(3, 5))]);
    let alpha = rat(-1, 3);
    let (sum, exact) = binomial_series(&sp, &e, &alpha, None).unwrap();
    assert!(exact);
    let expected = SparseMatrix::identity(2, 3).add(&e.scale(&NovikovScalar::constant(CyclotomicRational::from_rational(3, &alpha))));
    assert_eq!(sum, expected);
}

#[test]
fn binomial_series_rejects_non_lowering_argument() {
    let field = plain_field(2);
    let sp = space(&field, &ints(&[0, 0]));
    let e = SparseMatrix::from_triplets(2, 2, vec![(1, 0, NovikovScalar::one(2))]);
    assert!(binomial_series(&sp, &e, &int(2), None).is_err());
}

#[test]
fn invert_perturbed_with_exact_power() {
    let field = plain_field(3);
    let sp = space(&field, &ints(&[0, 0, 0]));
    let a = FilteredMap::new(sp.clone(), sp, cyclic_shift(3, 3)).unwrap();
    let inv = invert_perturbed(&a, 3, None).unwrap();
    assert_eq!(inv.matrix(), &cyclic_shift(3, 3).pow(2, 3));
}

#[test]
fn invert_perturbed_unipotent() {
    let field = plain_field(5);
    let sp = space(&field, &ints(&[1, 0]));
    let n = SparseMatrix::from_triplets(2, 2, vec![(1, 0, NovikovScalar::from_integer(5, 7))]);
    let a = FilteredMap::new(sp.clone(), sp, SparseMatrix::identity(2, 5).add(&n)).unwrap();
    let inv = invert_perturbed(&a, 1, None).unwrap();
    assert_eq!(inv.matrix(), &SparseMatrix::identity(2, 5).sub(&n));
}

#[test]
fn invert_perturbed_twisted_rotation() {
    // rotation on three levels composed with a lowering correction
    let p = 3;
    let field = plain_field(p);
    let sp = space(&field, &ints(&[4, 4, 4, 0, 0, 0]));
    let rot = SparseMatrix::block(&cyclic_shift(3, p), &SparseMatrix::zeros(3, 3), &SparseMatrix::zeros(3, 3), &cyclic_shift(3, p));
    let low = SparseMatrix::from_triplets(6, 6, vec![(3, 0, NovikovScalar::from_integer(p, 2)), (5, 1, xi(p, 1))]);
    let a = FilteredMap::new(sp.clone(), sp, rot.mul(&SparseMatrix::identity(6, p).add(&low))).unwrap();
    let inv = invert_perturbed(&a, p, None).unwrap();
    assert_eq!(a.matrix().mul(inv.matrix()), SparseMatrix::identity(6, p));
}

// ---- invariant complements and eigenspaces ----

#[test]
fn maschke_of_whole_space_is_empty() {
    let field = plain_field(3);
    let sp = space(&field, &ints(&[0, 0, 0]));
    let a = FilteredMap::new(sp.clone(), sp.clone(), cyclic_shift(3, 3)).unwrap();
    let all: Vec<SparseVector> = (0..3).map(|i| sp.unit(i)).collect();
    assert!(maschke_complement(&sp, &a, 3, &all).unwrap().is_empty());
}

#[test]
fn maschke_of_regular_representation() {
    let p = 3;
    let field = plain_field(p);
    let sp = space(&field, &ints(&[0, 0, 0]));
    let g = cyclic_shift(3, p);
    let a = FilteredMap::new(sp.clone(), sp.clone(), g.clone()).unwrap();
    let ones = SparseVector::from_dense(&(0..3).map(|_| NovikovScalar::one(p)).collect::<Vec<_>>());
    let comp = maschke_complement(&sp, &a, 3, &[ones.clone()]).unwrap();
    assert_eq!(comp.len(), 2);
    for v in &comp {
        assert!(solve_in_span(&comp, &g.apply(v)).unwrap().is_some());
    }
    let mut union = comp.clone();
    union.push(ones);
    assert!(is_orthogonal(&sp, &union).unwrap());
    assert_eq!(rank_of(&union), 3);
}

#[test]
fn maschke_rejects_non_invariant_subspace() {
    let field = plain_field(2);
    let sp = space(&field, &ints(&[0, 0]));
    let a = FilteredMap::new(sp.clone(), sp.clone(), cyclic_shift(2, 2)).unwrap();
    assert!(maschke_complement(&sp, &a, 2, &[sp.unit(0)]).is_err());
}

#[test]
fn maschke_rejects_non_isometry() {
    let field = plain_field(2);
    let sp = space(&field, &ints(&[0, 1]));
    let a = FilteredMap::new(sp.clone(), sp.clone(), cyclic_shift(2, 2)).unwrap();
    assert!(maschke_complement(&sp, &a, 2, &[]).is_err());
}

#[test]
fn maschke_complement_of_cycles_in_cone() {
    let model = build_model(2, &int(1), 0).unwrap();
    let cone = egg_cone(&model, 1, None).unwrap();
    let data = CyclicActionData::new(&model.complex, &model.rotation, &model.rotation, None, 1).unwrap();
    assert_eq!(data.cone.complex, cone.complex);
    let lifted = data.on_cone(&data.rotation);
    let c = &cone.complex;
    for k in c.degrees() {
        let sp = c.space(k);
        if sp.dim() == 0 {
            continue;
        }
        let g = lifted.component_map(c, c, k).unwrap();
        let kernel = pcyclic::filtered_linalg::field_kernel(&c.boundary_matrix(k), 2);
        let comp = maschke_complement(&sp, &g, 2, &kernel).unwrap();
        assert_eq!(comp.len() + rank_of(&kernel), sp.dim());
        for v in &comp {
            assert!(solve_in_span(&comp, &g.apply(v)).unwrap().is_some());
        }
    }
}

#[test]
fn eigen_projector_identities() {
    for p in [2u32, 3, 5] {
        let n = p as usize;
        let a = cyclic_shift(n, p);
        let pis = eigen_projectors(&a, p);
        let sum = pis.iter().fold(SparseMatrix::zeros(n, n), |acc, m| acc.add(m));
        assert_eq!(sum, SparseMatrix::identity(n, p));
        for (i, pi) in pis.iter().enumerate() {
            assert_eq!(&pi.mul(pi), pi);
            assert_eq!(a.mul(pi), pi.scale(&xi(p, i as i64)));
            for (j, pj) in pis.iter().enumerate() {
                if i != j {
                    assert!(pi.mul(pj).is_zero());
                }
            }
        }
    }
}

#[test]
fn eigenspaces_of_identity_and_shift() {
    let p = 5;
    let field = plain_field(p);
    let sp = space(&field, &ints(&[0, 0, 0, 0, 0]));
    let id = FilteredMap::identity(sp.clone());
    let parts = eigenspace_decomposition(&sp, &id).unwrap();
    assert_eq!(parts.iter().map(|v| v.len()).collect::<Vec<_>>(), vec![5, 0, 0, 0, 0]);
    let shift = FilteredMap::new(sp.clone(), sp.clone(), cyclic_shift(5, p)).unwrap();
    let parts = eigenspace_decomposition(&sp, &shift).unwrap();
    for (i, part) in parts.iter().enumerate() {
        assert_eq!(part.len(), 1);
        let v = &part[0];
        assert_eq!(shift.apply(v), v.scale(&xi(p, i as i64)));
    }
}

#[test]
fn eigenspaces_of_egg_cone_split_evenly() {
    for p in [2u32, 3] {
        let model = build_model(p, &int(1), 0).unwrap();
        let data = CyclicActionData::new(&model.complex, &model.rotation, &model.rotation, None, 1).unwrap();
        let lifted = data.on_cone(&data.rotation);
        let c = &data.cone.complex;
        for k in c.degrees() {
            let sp = c.space(k);
            if sp.dim() == 0 {
                continue;
            }
            let g = lifted.component_map(c, c, k).unwrap();
            let parts = eigenspace_decomposition(&sp, &g).unwrap();
            for part in &parts {
                assert_eq!(part.len() * p as usize, sp.dim());
                assert!(is_orthogonal(&sp, part).unwrap());
            }
        }
    }
}

// ---- action data ----

#[test]
fn action_data_rejects_bad_input() {
    let f = fixture(2, 2, 3);
    let c = f.data.source().clone();
    let t = f.data.t().clone();
    let r = f.data.rotation.clone();
    assert!(CyclicActionData::new(&c, &t, &r, None, 0).is_err());
    assert!(CyclicActionData::new(&c, &t, &r, None, 2).is_err());
    // a rotation of the wrong order
    let root = f.data.root.as_ref().unwrap();
    assert!(CyclicActionData::new(&c, &t, &root.rotation, None, 1).is_err());
    // T = 2·R is not a perturbation of R
    let doubled = t.scale(&NovikovScalar::from_integer(2, 2));
    assert!(CyclicActionData::new(&c, &doubled, &r, None, 1).is_err());
    assert!(CyclicActionData::new(&c, &t, &r, None, 1).is_ok());
}

#[test]
fn action_commutes_with_cone_boundary() {
    let f = fixture(3, 3, 9);
    assert!(f.data.verify_on_cone().is_empty());
    let rep = repair_to_group_action(&f.data, None).unwrap();
    let cone = &f.data.cone.complex;
    let on = f.data.on_cone(&rep.t);
    assert!(on.is_chain_map(cone, cone));
}

// ---- p-tuple decompositions ----

#[test]
fn p_cyclic_svd_blocks_and_barcode() {
    for (p, seed) in [(2, 1), (2, 5), (3, 2), (3, 8)] {
        let f = fixture(p, 3, seed);
        let rep = repair_to_group_action(&f.data, None).unwrap();
        let cone = &f.data.cone.complex;
        for k in cone.degrees() {
            let res = p_cyclic_svd(&f.data, &rep, k).unwrap();
            assert!(res.blocks_have_size(p as usize), "p={p} seed={seed} k={k}");
            let plain = svd(&cone.boundary(k + 1));
            assert_eq!(res.svd.rank, plain.rank);
            let mut a = res.svd.shifts.clone();
            let mut b = plain.shifts.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b, "p={p} seed={seed} k={k}");
            for blk in &res.blocks {
                let shifts = &res.svd.shifts[blk.start..blk.start + blk.len];
                assert!(shifts.iter().all(|s| s == &shifts[0]));
                if blk.sector == 0 {
                    assert!(blk.zero_length);
                    assert_eq!(blk.len, 1);
                }
                assert_eq!(blk.zero_length, shifts[0].is_zero());
            }
        }
    }
}

#[test]
fn p_tuple_columns_span_orthogonal_cyclic_orbits() {
    let p = 3;
    let f = fixture(p, 4, 21);
    let rep = repair_to_group_action(&f.data, None).unwrap();
    let cone = &f.data.cone.complex;
    let s_on = f.data.on_cone(rep.s.as_ref().unwrap());
    for k in cone.degrees() {
        let res = p_cyclic_svd(&f.data, &rep, k).unwrap();
        let dom = cone.space(k + 1);
        let sk = s_on.at_or_zero(k + 1, dom.dim(), dom.dim());
        for blk in res.blocks.iter().filter(|b| b.len == p as usize) {
            let cols = &res.svd.domain_basis[blk.start..blk.start + blk.len];
            assert!(is_orthogonal(&dom, cols).unwrap());
            for v in cols {
                assert!(solve_in_span(cols, &sk.apply(v)).unwrap().is_some());
            }
        }
    }
}

#[test]
fn cyclic_spans_in_nontrivial_eigenspaces_are_orthogonal() {
    let mut checked = 0;
    for (p, seed) in [(2u32, 3u64), (3, 4), (3, 12)] {
        let f = fixture(p, 4, seed);
        let rep = repair_to_group_action(&f.data, None).unwrap();
        let cone = &f.data.cone.complex;
        let t_on = f.data.on_cone(&rep.t);
        let s_on = f.data.on_cone(rep.s.as_ref().unwrap());
        let mut g = common::rng(seed);
        for k in cone.degrees() {
            let sp = cone.space(k);
            if sp.dim() == 0 {
                continue;
            }
            let parts = eigenspace_decomposition(&sp, &t_on.component_map(cone, cone, k).unwrap()).unwrap();
            let sk = s_on.at_or_zero(k, sp.dim(), sp.dim());
            for part in parts.iter().skip(1).filter(|v| !v.is_empty()) {
                for _ in 0..4 {
                    let x = part.iter().fold(SparseVector::zero(sp.dim()), |acc, v| {
                        acc.add(&v.scale(&NovikovScalar::constant(common::random_cyclo(&mut g, p, 3))))
                    });
                    if x.is_zero() {
                        continue;
                    }
                    let orbit: Vec<SparseVector> =
                        std::iter::successors(Some(x), |y| Some(sk.apply(y))).take(p as usize).collect();
                    assert!(is_orthogonal(&sp, &orbit).unwrap(), "p={p} seed={seed} k={k}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn strategies_agree_on_fixtures() {
    let names: Vec<&str> = strategies().iter().map(|s| s.name()).collect();
    assert_eq!(names, vec!["filtered-svd", "p-cyclic"]);
    assert!(strategy("nope").is_none());
    for (p, seed) in [(2, 4), (3, 6)] {
        let f = fixture(p, 3, seed);
        let rep = repair_to_group_action(&f.data, None).unwrap();
        let input = StrategyInput {
            complex: &f.data.cone.complex,
            action: Some((&f.data, &rep)),
            mode: CodomainMode::Kernel,
        };
        let a = strategy_barcode(strategy("filtered-svd").unwrap().as_ref(), &input).unwrap();
        let b = strategy_barcode(strategy("p-cyclic").unwrap().as_ref(), &input).unwrap();
        assert_eq!(a.concise().collapsed(), b.concise().collapsed());
        assert_eq!(a.len(), b.len());
    }
}

#[test]
fn p_cyclic_strategy_needs_action() {
    let f = fixture(2, 2, 1);
    let input = StrategyInput {
        complex: &f.data.cone.complex,
        action: None,
        mode: CodomainMode::Kernel,
    };
    assert!(PCyclicStrategy.degree_barcode(&input, 0).is_err());
}

// ---- fixtures and divisibility ----

#[test]
fn fixtures_have_p_tuple_barcodes() {
    for p in [2u32, 3] {
        for seed in 0..100u64 {
            let f = fixture(p, 2 + (seed % 3) as usize, seed);
            let b = barcode(&f.data.cone.complex);
            assert!(verify_p_tuple_multiplicity(&b, p), "p={p} seed={seed}");
            assert!(divisibility_invariant_all(&b, p).is_zero(), "p={p} seed={seed}");
        }
    }
}

#[test]
fn fixtures_are_deterministic_and_round_trip() {
    let a = fixture(3, 3, 42);
    let b = fixture(3, 3, 42);
    assert_eq!(a.data.t(), b.data.t());
    let wire = FixtureWire::from_fixture(&a).unwrap();
    let json = serde_json::to_string(&wire).unwrap();
    let back: FixtureWire = serde_json::from_str(&json).unwrap();
    let c = back.to_fixture().unwrap();
    assert_eq!(c.data.t(), a.data.t());
    assert_eq!(c.data.cone.complex, a.data.cone.complex);
    let mut bad = wire.clone();
    bad.version += 1;
    assert!(bad.to_fixture().is_err());
}

#[test]
fn fixture_rejects_zero_size() {
    assert!(generate_power_p_fixture(2, 0, 1).is_err());
    assert!(generate_power_p_fixture(4, 2, 1).is_err());
}

#[test]
fn divisibility_of_length_lists() {
    assert_eq!(divisibility_invariant_of_lengths(&ints(&[5, 5, 5]), 3), int(0));
    assert_eq!(divisibility_invariant_of_lengths(&ints(&[5, 3]), 3), int(5));
    assert_eq!(divisibility_invariant_of_lengths(&ints(&[7, 7, 7, 2]), 3), int(2));
    assert_eq!(divisibility_invariant_of_lengths(&ints(&[3, 5]), 2), int(2));
    assert_eq!(divisibility_invariant_of_lengths(&[], 5), int(0));
    let empty = Barcode::empty(pcyclic::barcode::BarcodeKind::Verbose, pcyclic::coefficients::ExponentGroup::trivial());
    assert!(verify_p_tuple_multiplicity(&empty, 7));
    assert_eq!(divisibility_invariant_all(&empty, 7), Rational::zero());
}

#[test]
fn divisibility_detects_broken_tuples() {
    let p = 3;
    let f = fixture(p, 2, 1);
    let b = barcode(&f.data.cone.complex);
    let extra = pcyclic::barcode::Bar::finite(0, int(0), rat(7, 2));
    let broken = b.merge(&Barcode::new(b.kind(), b.gamma().clone(), vec![extra]));
    assert!(!verify_p_tuple_multiplicity(&broken, p));
    assert!(divisibility_invariant(&broken, p, 0) > Rational::zero());
    assert!(divisibility_invariant_all(&broken, p) > Rational::zero());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn invariant_is_bounded_by_longest(lengths in proptest::collection::vec(0i64..50, 0..12), p in prop::sample::select(vec![2u32, 3, 5])) {
            let ls = ints(&lengths);
            let o = divisibility_invariant_of_lengths(&ls, p);
            let max = ls.iter().cloned().max().unwrap_or_else(Rational::zero);
            prop_assert!(o >= Rational::zero());
            prop_assert!(o <= max);
        }

        #[test]
        fn repeated_lengths_have_zero_invariant(lengths in proptest::collection::vec(1i64..50, 0..6), p in prop::sample::select(vec![2u32, 3, 5])) {
            let mut ls = Vec::new();
            for l in &lengths {
                for _ in 0..p {
                    ls.push(int(*l));
                }
            }
            prop_assert_eq!(divisibility_invariant_of_lengths(&ls, p), Rational::zero());
        }

        #[test]
        fn p_cyclic_matches_plain_barcode(seed in 0u64..10_000, p in prop::sample::select(vec![2u32, 3])) {
            let f = generate_power_p_fixture(p, 2, seed).unwrap();
            let rep = repair_to_group_action(&f.data, None).unwrap();
            let input = StrategyInput { complex: &f.data.cone.complex, action: Some((&f.data, &rep)), mode: CodomainMode::Kernel };
            let a = strategy_barcode(&FilteredSvdStrategy, &input).unwrap();
            let b = strategy_barcode(&PCyclicStrategy, &input).unwrap();
            prop_assert_eq!(a.concise().collapsed(), b.concise().collapsed());
        }
    }
}
