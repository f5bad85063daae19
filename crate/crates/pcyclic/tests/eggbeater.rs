mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use pcyclic::barcode::{CodomainMode, ProbeConfig};
use pcyclic::coefficients::{CyclotomicRational, NovikovScalar};
use pcyclic::eggbeater::*;
use pcyclic::filtered_linalg::{field_rank, svd, FilteredMap, SparseVector};
use pcyclic::rational::{int, rat, Rational};
use rand::Rng;

use common::{oracle_rank, plain_field, rng};

fn choose(n: u64, k: u64) -> u64 {
    binomial_big(n, k).try_into().unwrap()
}

#[test]
fn cz_index_extremes() {
    let s = SignSequence::from_xy(&[1, 1, 1], &[-1, -1, -1]).unwrap();
    assert_eq!(cz_index(&s), 4);
    let s = SignSequence::from_xy(&[-1, -1, -1], &[1, 1, 1]).unwrap();
    assert_eq!(cz_index(&s), -2);
    assert!(SignSequence::new(3, vec![1; 5]).is_err());
    assert!(SignSequence::new(2, vec![1, 0, 1, 1]).is_err());
}

#[test]
fn cz_counts_are_binomial() {
    for p in [2u32, 3, 5] {
        let mut counts = std::collections::BTreeMap::new();
        for mask in 0..1u64 << (2 * p) {
            let s = SignSequence::from_mask(p, mask);
            assert_eq!(s.mask(), mask);
            *counts.entry(cz_index(&s)).or_insert(0u64) += 1;
        }
        let pi = p as i64;
        for k in -pi + 1..=pi + 1 {
            assert_eq!(counts[&k], choose(2 * p as u64, (k + pi - 1) as u64));
        }
        assert_eq!(counts.len(), 2 * p as usize + 1);
        let alt: i64 = counts.iter().map(|(k, c)| if k % 2 == 0 { *c as i64 } else { -(*c as i64) }).sum();
        assert_eq!(alt, 0);
        assert_eq!(counts.values().sum::<u64>(), 1 << (2 * p));
    }
}

#[test]
fn model_dimensions() {
    let m = build_model(2, &int(1), 0).unwrap();
    let dims: Vec<usize> = m.complex.degrees().map(|k| m.complex.dim(k)).collect();
    assert_eq!(m.complex.lo(), -1);
    assert_eq!(dims, vec![2, 8, 12, 8, 2]);
    let m = build_model(3, &int(1), 0).unwrap();
    assert_eq!(m.complex.total_dim(), 192);
}

#[test]
fn model_invariants() {
    for (p, seed) in [(2u32, 3u64), (3, 11)] {
        let lambda = rat(7, 2);
        let m = build_model(p, &lambda, seed).unwrap();
        let c = &m.complex;
        assert!(c.homology_ranks().iter().all(|(_, r)| *r == 0));
        assert!(m.rotation.is_chain_map(c, c));
        assert_eq!(m.rotation.max_shift(c, c).unwrap(), Some(Rational::zero()));
        for k in c.degrees() {
            let sp = c.space(k);
            for i in 0..sp.dim() {
                let g = m.generator(k, i);
                assert_eq!(cz_index(&g.signs), k);
                // orbit members share filtration
                let first = i - i % p as usize;
                assert_eq!(sp.filtration(i), sp.filtration(first));
            }
            // no basis vector fixed by a nontrivial rotation power
            for e in 1..p {
                let r = m.rotation.pow(e, c);
                let comp = r.at(k).unwrap();
                for i in 0..sp.dim() {
                    assert!(comp.get(i, i).is_none());
                }
            }
            if k < c.hi() {
                let top = c.space(k).filtrations().iter().max().unwrap().clone();
                let bottom = c.space(k + 1).filtrations().iter().min().unwrap().clone();
                assert!(bottom - top >= &lambda / int(2));
            }
        }
        assert!(pcyclic::complexes::verify_complex(c).is_empty());
        assert_eq!(c.strictness(), &(&lambda / int(2)));
    }
}

#[test]
fn model_rejects_bad_input() {
    assert!(build_model(4, &int(1), 0).is_err());
    assert!(build_model(3, &int(0), 0).is_err());
    assert!(build_model(3, &int(-1), 0).is_err());
}

#[test]
fn model_is_deterministic() {
    let a = build_model(3, &int(10), 5).unwrap();
    let b = build_model(3, &int(10), 5).unwrap();
    assert_eq!(a.complex, b.complex);
    let c = build_model(3, &int(10), 6).unwrap();
    assert_ne!(a.complex, c.complex);
}

#[test]
fn q_matrix_small_cases() {
    let q = q_matrix(2).unwrap();
    let one = NovikovScalar::one(2);
    // ξ₂ = −1, so −ξ₂ = 1
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_eq!(q.entry(i, j), Some(&one));
    }
    assert_eq!(field_rank(q.matrix()), 1);
    let v = q_kernel_vector(3);
    let xi = CyclotomicRational::xi(3);
    assert_eq!(
        v.to_dense(),
        vec![
            NovikovScalar::constant(xi.pow(2)),
            NovikovScalar::constant(xi.clone()),
            NovikovScalar::one(3)
        ]
    );
}

#[test]
fn q_matrix_structure_up_to_13() {
    for p in [2u32, 3, 5, 7, 11, 13] {
        let q = q_matrix(p).unwrap();
        assert_eq!(field_rank(q.matrix()), p as usize - 1, "p = {p}");
        assert_eq!(oracle_rank(q.matrix(), p), p as usize - 1);
        assert!(q.apply(&q_kernel_vector(p)).is_zero());
    }
}

#[test]
fn egg_cone_totals() {
    for (p, concise, zero) in [(2u32, 16usize, 16usize), (3, 64, 128)] {
        let m = build_model(p, &int(10), 1).unwrap();
        let r = egg_cone_report(&m, 1, None).unwrap();
        assert_eq!(r.concise_total, concise);
        assert_eq!(r.zero_length_total, zero);
        let pi = p as i64;
        for d in &r.per_degree {
            let expect = if d.degree <= pi + 1 {
                p as u64 * choose(2 * p as u64, (d.degree + pi - 1) as u64)
            } else {
                0
            };
            assert_eq!(d.verbose as u64, expect, "p = {p}, k = {}", d.degree);
            assert_eq!(d.concise as u64 * p as u64, expect);
        }
    }
}

#[test]
fn egg_cone_other_roots() {
    let m = build_model(3, &int(2), 4).unwrap();
    let r = egg_cone_report(&m, 2, None).unwrap();
    assert_eq!((r.concise_total, r.zero_length_total), (64, 128));
    assert!(egg_cone_report(&m, 0, None).is_err());
    assert!(egg_cone_report(&m, 3, None).is_err());
}

#[test]
fn worked_degree_minus_two() {
    let m = build_model(3, &int(10), 1).unwrap();
    let cone = egg_cone(&m, 1, None).unwrap();
    let c = &cone.complex;
    let d = c.boundary(-1);
    assert_eq!((d.matrix().rows(), d.matrix().cols()), (3, 21));
    let res = svd(&d);
    assert_eq!(res.rank, 3);
    assert!(res.pivots[..2].iter().all(|pv| pv.col >= 18 && pv.shift.is_zero()));
    assert!(res.pivots[2].shift > Rational::zero());
    let shifts: Vec<_> = res.shifts.iter().filter(|s| s.is_zero()).collect();
    assert_eq!(shifts.len(), 2);
    let r = egg_cone_report(&m, 1, None).unwrap();
    assert_eq!(r.degree(-2).unwrap().concise, 1);
    // kernel vectors supported on the right block sit in ker(R − ξ)
    let q = q_matrix(3).unwrap();
    let survivors: Vec<&SparseVector> = res.domain_basis[res.rank..]
        .iter()
        .filter(|y| y.entries().iter().all(|(i, _)| *i >= 18))
        .collect();
    assert_eq!(survivors.len(), 1);
    let restricted = survivors[0].slice(18, 3);
    let level = pcyclic::filtered_linalg::reduce_to_zero_level(&c.space(-1), &[survivors[0].clone()]).unwrap();
    assert!(level[0].iter().any(|x| !x.is_zero()));
    assert!(q.apply(&restricted).is_zero());
}

#[test]
fn gap_scales_with_lambda() {
    for p in [2u32, 3] {
        let a = egg_cone_report(&build_model(p, &int(5), 2).unwrap(), 1, None).unwrap();
        let b = egg_cone_report(&build_model(p, &int(10), 2).unwrap(), 1, None).unwrap();
        for (x, y) in a.per_degree.iter().zip(&b.per_degree) {
            match (&x.min_positive_length, &y.min_positive_length) {
                (Some(u), Some(v)) => assert_eq!(v, &(u * int(2))),
                (None, None) => {}
                _ => panic!("bar sets differ at degree {}", x.degree),
            }
        }
    }
}

#[test]
fn nondivisible_degree_and_invariant() {
    let m = build_model(3, &int(10), 1).unwrap();
    let r = egg_cone_report(&m, 1, None).unwrap();
    assert!(!r.nondivisible_degrees.is_empty());
    for k in &r.nondivisible_degrees {
        let d = r.degree(*k).unwrap();
        let beta = d.min_positive_length.clone().unwrap();
        assert!(beta > Rational::zero());
        assert!(d.divisibility >= beta);
    }
    assert!(!pcyclic::cyclic::verify_p_tuple_multiplicity(&r.barcode, 3));
}

#[test]
fn perturbation_keeps_barcode() {
    let m = build_model(2, &int(3), 9).unwrap();
    let base = egg_cone_report(&m, 1, None).unwrap();
    for seed in 0..3 {
        let pert = Perturbation { seed, density: 0.05 };
        let t = egg_map(&m, Some(&pert)).unwrap();
        assert_ne!(t, m.rotation);
        let r = egg_cone_report(&m, 1, Some(&pert)).unwrap();
        let a: Vec<_> = base.per_degree.iter().map(|d| (d.degree, d.concise, d.zero_length)).collect();
        let b: Vec<_> = r.per_degree.iter().map(|d| (d.degree, d.concise, d.zero_length)).collect();
        assert_eq!(a, b);
        // γ exceeds every filtration, so classes mod γ are the raw endpoints
        let raw: Vec<_> = base.barcode.concise().bars().iter().map(|b| (b.degree, b.endpoint.clone(), b.length.clone())).collect();
        let moved: Vec<_> = r.barcode.concise().bars().iter().map(|b| (b.degree, b.endpoint.clone(), b.length.clone())).collect();
        assert_eq!(raw, moved);
    }
}

#[test]
fn rotation_double_map_commutes() {
    let m = build_model(2, &int(1), 0).unwrap();
    let cone = egg_cone(&m, 1, None).unwrap();
    let dbl = pcyclic::complexes::double_map(&cone, &m.rotation).unwrap();
    assert!(dbl.is_chain_map(&cone.complex, &cone.complex));
}

#[test]
fn quantum_betti_examples() {
    let cp2 = [1, 0, 1, 0, 1];
    assert_eq!(quantum_betti(&cp2, 3, 0), 1);
    assert_eq!(quantum_betti(&cp2, 3, 2), 1);
    assert_eq!(quantum_betti(&cp2, 3, 3), 0);
    // with N = 1 every even index folds together
    assert_eq!(quantum_betti(&cp2, 1, 0), 3);
    assert_eq!(quantum_betti(&cp2, 1, -2), 3);
    assert_eq!(quantum_betti(&cp2, 1, 1), 0);
    for k in -3..8 {
        let b = if (0..5).contains(&k) { cp2[k as usize] } else { 0 };
        assert_eq!(quantum_betti(&cp2, 0, k), b);
    }
    assert_eq!(quantum_betti(&[1, 2, 1], 0, 3), 0);
}

#[test]
fn product_multiplicity_examples() {
    let r = product_multiplicity(3, &[1, 0, 1], 0).unwrap();
    assert_eq!(r.m1, BigInt::from(26));
    assert_eq!((r.residue, r.divisible), (2, false));
    for p in [3u32, 5, 7, 11] {
        for n in 1..5usize {
            let betti: Vec<u64> = (0..=2 * n).map(|i| (i % 2 == 0) as u64).collect();
            let r = product_multiplicity(p, &betti, n as u32 + 1).unwrap();
            assert_eq!(r.residue, 2, "p = {p}, n = {n}");
            assert!(!r.divisible);
        }
    }
    let mut g = rng(41);
    for _ in 0..20 {
        let p = [3u32, 5, 7][g.gen_range(0..3)];
        let betti: Vec<u64> = (0..g.gen_range(1..9)).map(|_| g.gen_range(0..4)).collect();
        let r = product_multiplicity(p, &betti, 0).unwrap();
        assert_eq!(r.residue as u64, (betti.get(p as usize).copied().unwrap_or(0) + 2 * betti[0]) % p as u64);
    }
    assert!(product_multiplicity(4, &[1], 0).is_err());
}

#[test]
fn product_residue_matches_full_sum() {
    let mut g = rng(5);
    for _ in 0..50 {
        let p = [2u32, 3, 5, 7, 11][g.gen_range(0..5)];
        let betti: Vec<u64> = (0..g.gen_range(1..12)).map(|_| g.gen_range(0..6)).collect();
        let chern = g.gen_range(0..4);
        let r = product_multiplicity(p, &betti, chern).unwrap();
        let pb = BigInt::from(p);
        let full = ((&r.m1 % &pb) + &pb) % &pb;
        assert_eq!(full, BigInt::from(r.residue));
        assert_eq!(r.divisible, r.residue == 0);
    }
}

/// Betti numbers of a closed connected 2n-manifold shape: b_0 = b_2n = 1 and
/// Poincaré symmetry.
fn manifold_betti(g: &mut rand_chacha::ChaCha8Rng) -> Vec<u64> {
    let n = g.gen_range(1..=5usize);
    let half: Vec<u64> = (0..=n).map(|i| if i == 0 { 1 } else { g.gen_range(0..4) }).collect();
    (0..=2 * n).map(|i| if i <= n { half[i] } else { half[2 * n - i] }).collect()
}

#[test]
fn large_primes_never_divide() {
    let mut g = rng(77);
    let primes: Vec<u32> = (3..200).filter(|n| pcyclic::coefficients::is_prime(*n)).collect();
    for _ in 0..50 {
        let betti = manifold_betti(&mut g);
        let total: u64 = betti.iter().sum();
        let p = *primes.iter().find(|p| **p as u64 > total).unwrap();
        let chern = g.gen_range(0..=betti.len() as u32 / 2 + 1);
        assert!(!product_multiplicity(p, &betti, chern).unwrap().divisible, "{betti:?} N = {chern} p = {p}");
    }
}

#[test]
fn small_bound_fails_off_manifold_shape() {
    // b_0 = 2 is not a connected manifold: 2·2 + b_5 = 5 with Σ b = 4 < 5
    let r = product_multiplicity(5, &[2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1], 0).unwrap();
    assert!(r.divisible);
}

#[test]
fn babbage_congruence() {
    for p in (3..=97).filter(|n| pcyclic::coefficients::is_prime(*n)) {
        assert!(babbage_holds(p), "p = {p}");
    }
    assert_eq!(binomial_big(6, 3), BigInt::from(20));
    assert!(binomial_big(3, 5).is_zero());
}

#[test]
fn crosscheck_cp1() {
    let m = build_model(3, &int(10), 1).unwrap();
    let d = betti_complex(&plain_field(3), &[1, 0, 1]).unwrap();
    let x = product_cone_crosscheck(&m, &d, 1).unwrap();
    assert_eq!(x.direct, 26);
    assert!(x.agrees(), "{x:?}");
    let egg = egg_cone_report(&m, 1, None).unwrap();
    let expected = [1, -1]
        .iter()
        .filter_map(|k| egg.degree(*k).unwrap().min_positive_length.clone())
        .min();
    assert_eq!(x.direct_min_positive, expected);
}

#[test]
fn crosscheck_unit_factor() {
    let m = build_model(2, &int(4), 3).unwrap();
    let d = betti_complex(&plain_field(2), &[1]).unwrap();
    let x = product_cone_crosscheck(&m, &d, 1).unwrap();
    let egg = egg_cone_report(&m, 1, None).unwrap();
    assert!(x.agrees());
    assert_eq!(x.direct, egg.degree(1).unwrap().concise);
    assert_eq!(x.direct_min_positive, egg.degree(1).unwrap().min_positive_length);
}

#[test]
fn egg_cone_stability() {
    let m = build_model(2, &int(1), 0).unwrap();
    let cfg = ProbeConfig {
        delta: rat(1, 10),
        seeds: (0..10).collect(),
        mode: CodomainMode::Image,
    };
    let rep = egg_stability_probe(&m, 1, &cfg).unwrap();
    assert!(rep.within_bound(), "{:?}", rep.max_deviation);
    assert_eq!(rep.deviations.len() + rep.skipped.len(), 10);
}

#[test]
fn report_json() {
    let m = build_model(2, &int(10), 1).unwrap();
    let r = egg_cone_report(&m, 1, None).unwrap();
    let w = EggReportWire::from_report(&r);
    let s = serde_json::to_string(&w).unwrap();
    let back: EggReportWire = serde_json::from_str(&s).unwrap();
    assert_eq!(back, w);
    assert_eq!(w.totals.concise, 16);
    assert_eq!(w.lambda, "10/1");
    let _ = FilteredMap::identity;
    let _ = Rational::one();
}
