#![allow(dead_code)]

use num_bigint::BigInt;
use pcyclic::coefficients::{CyclotomicRational, ExponentGroup, NovikovField, NovikovScalar};
use pcyclic::filtered_linalg::{FilteredMap, FilteredSpace, SparseMatrix, SparseVector};
use pcyclic::rational::{int, rat, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn k(p: u32, coords: &[i64]) -> CyclotomicRational {
    let c: Vec<Rational> = coords.iter().map(|x| int(*x)).collect();
    CyclotomicRational::from_coords(p, &c).unwrap()
}

/// c·t^e with integer exponent and integer constant coefficient.
pub fn mono(p: u32, e: i64, c: i64) -> NovikovScalar {
    NovikovScalar::monomial(int(e), CyclotomicRational::from_integer(p, c))
}

pub fn poly(p: u32, terms: &[(i64, i64)]) -> NovikovScalar {
    NovikovScalar::from_terms(
        terms
            .iter()
            .map(|(e, c)| (int(*e), CyclotomicRational::from_integer(p, *c))),
        None,
    )
}

pub fn plain_field(p: u32) -> NovikovField {
    NovikovField::plain(p).unwrap()
}

pub fn unit_gamma_field(p: u32) -> NovikovField {
    NovikovField::new(p, ExponentGroup::cyclic(int(1)).unwrap()).unwrap()
}

pub fn space(field: &NovikovField, filtrations: &[Rational]) -> FilteredSpace {
    FilteredSpace::new(
        (0..filtrations.len()).map(|i| format!("e{i}")).collect(),
        filtrations.to_vec(),
        field.clone(),
    )
    .unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|x| int(*x)).collect()
}

pub fn random_cyclo(r: &mut ChaCha8Rng, p: u32, spread: i64) -> CyclotomicRational {
    loop {
        let coords: Vec<Rational> = (0..p - 1)
            .map(|_| {
                if r.gen_bool(0.5) {
                    Rational::from_integer(BigInt::from(0))
                } else {
                    rat(r.gen_range(-spread..=spread), r.gen_range(1..=3))
                }
            })
            .collect();
        let c = CyclotomicRational::from_coords(p, &coords).unwrap();
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random scalar: a constant when Γ is trivial, a short Laurent polynomial in
/// integer exponents otherwise.
pub fn random_scalar(r: &mut ChaCha8Rng, field: &NovikovField) -> NovikovScalar {
    if field.gamma.is_trivial() {
        return NovikovScalar::constant(random_cyclo(r, field.prime, 3));
    }
    let nterms = r.gen_range(1..=2);
    NovikovScalar::from_terms(
        (0..nterms).map(|_| (int(r.gen_range(-2..=3)), random_cyclo(r, field.prime, 3))),
        None,
    )
}

pub fn random_filtrations(r: &mut ChaCha8Rng, n: usize, spread: i64) -> Vec<Rational> {
    (0..n).map(|_| rat(r.gen_range(-spread..=spread), r.gen_range(1..=2))).collect()
}

pub fn random_map(r: &mut ChaCha8Rng, field: &NovikovField, max_dim: usize, density: f64) -> FilteredMap {
    let n = r.gen_range(1..=max_dim);
    let m = r.gen_range(1..=max_dim);
    let dom = space(field, &random_filtrations(r, n, 4));
    let cod = space(field, &random_filtrations(r, m, 4));
    let mut t = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if r.gen_bool(density) {
                t.push((i, j, random_scalar(r, field)));
            }
        }
    }
    // occasionally force rank deficiency by copying a column
    let mut mat = SparseMatrix::from_triplets(m, n, t);
    if n >= 2 && r.gen_bool(0.4) {
        let mut cols: Vec<SparseVector> = mat.columns().to_vec();
        let c = random_scalar(r, field);
        cols[n - 1] = cols[0].scale(&c);
        mat = SparseMatrix::from_columns(m, cols);
    }
    FilteredMap::new(dom, cod, mat).unwrap()
}

pub fn random_vector(r: &mut ChaCha8Rng, field: &NovikovField, n: usize, density: f64) -> SparseVector {
    loop {
        let mut entries = Vec::new();
        for i in 0..n {
            if r.gen_bool(density) {
                entries.push((i, random_scalar(r, field)));
            }
        }
        let v = SparseVector::from_entries(n, entries);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Rank over Q(ξ_p) after substituting t = value, by dense elimination.
pub fn rank_at(m: &SparseMatrix, p: u32, value: &Rational) -> usize {
    let subst = |s: &NovikovScalar| -> CyclotomicRational {
        s.terms().iter().fold(CyclotomicRational::zero(p), |acc, (e, c)| {
            let e = e.to_integer();
            let e: i32 = e.try_into().unwrap();
            let power = num_traits::pow::Pow::pow(value, e);
            &acc + &c.scale(&power)
        })
    };
    let mut rows: Vec<Vec<CyclotomicRational>> = vec![vec![CyclotomicRational::zero(p); m.cols()]; m.rows()];
    for (i, j, s) in m.triplets() {
        rows[i][j] = subst(s);
    }
    let mut rank = 0;
    let ncols = m.cols();
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|r| !rows[*r][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().unwrap();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] * &inv;
                for c in col..ncols {
                    let d = &f * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Generic rank: the maximum over a few substitutions (exact for trivial Γ).
pub fn oracle_rank(m: &SparseMatrix, p: u32) -> usize {
    [rat(3, 7), rat(-5, 2), rat(11, 13), int(17)].iter().map(|v| rank_at(m, p, v)).max().unwrap()
}

