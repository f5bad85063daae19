//! Singular value decomposition by filtration-optimal column elimination.

use crate::coefficients::NovikovScalar;
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::map::FilteredMap;
use super::oracle::field_rank;
use super::reduction::{filtration_of, is_orthogonal};
use super::vector::SparseVector;

/// A chosen pivot: `shift` is ℓ(y) − ℓ(Ay) for the pivot column at that time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub shift: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvdResult {
    pub rank: usize,
    /// y_1, …, y_n in domain coordinates; the last n − rank span the kernel.
    pub domain_basis: Vec<SparseVector>,
    /// x_1, …, x_m in codomain coordinates; x_i = A y_i for i < rank.
    pub codomain_basis: Vec<SparseVector>,
    /// ℓ(y_i) − ℓ(x_i) for i < rank, non-increasing.
    pub shifts: Vec<Rational>,
    /// The original column each y_i was grown from.
    pub domain_origin: Vec<usize>,
    /// Pivots in the order elimination chose them.
    pub pivots: Vec<Pivot>,
}

/// Value ℓ(w_i) − ν(a) − level of one entry.
fn entry_value(map: &FilteredMap, row: usize, a: &NovikovScalar, level: &Rational) -> Rational {
    map.codomain().filtration(row) - a.valuation().expect("stored entries are nonzero") - level
}

fn better(cand: &(Rational, usize, usize), best: &Option<(Rational, usize, usize)>) -> bool {
    match best {
        None => true,
        Some((v, r, c)) => cand.0 > *v || (cand.0 == *v && (cand.1, cand.2) < (*r, *c)),
    }
}

/// Best entry of one column: maximal value, smallest row on ties.
fn column_best(map: &FilteredMap, image: &SparseVector, level: &Rational) -> Option<(Rational, usize)> {
    let mut best: Option<(Rational, usize)> = None;
    for (i, a) in image.entries() {
        let v = entry_value(map, *i, a, level);
        if best.as_ref().map_or(true, |(b, _)| v > *b) {
            best = Some((v, *i));
        }
    }
    best
}

/// The entry maximizing ℓ_cod(w_i) − ν(A_ij) − ℓ_dom(v_j), ties to the
/// smallest (row, column). Returns `(row, column)`.
pub fn optimal_pair(map: &FilteredMap) -> Result<(usize, usize)> {
    let mut best: Option<(Rational, usize, usize)> = None;
    for (j, col) in map.matrix().columns().iter().enumerate() {
        for (i, a) in col.entries() {
            let cand = (entry_value(map, *i, a, map.domain().filtration(j)), *i, j);
            if better(&cand, &best) {
                best = Some(cand);
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
        .ok_or_else(|| Error::Precondition("optimal pair of the zero map".into()))
}

struct Column {
    coords: SparseVector,
    image: SparseVector,
    level: Rational,
    best: Option<(Rational, usize)>,
}

pub fn svd(map: &FilteredMap) -> SvdResult {
    let n = map.domain().dim();
    let m = map.codomain().dim();
    let mut cols: Vec<Option<Column>> = (0..n)
        .map(|j| {
            let image = map.matrix().column(j).clone();
            let level = map.domain().filtration(j).clone();
            let best = column_best(map, &image, &level);
            Some(Column {
                coords: map.domain().unit(j),
                image,
                level,
                best,
            })
        })
        .collect();

    let mut pairs: Vec<(SparseVector, SparseVector, Rational, usize)> = Vec::new();
    let mut pivots = Vec::new();
    let mut used_rows = vec![false; m];
    loop {
        let mut choice: Option<(Rational, usize, usize)> = None;
        for (j, c) in cols.iter().enumerate() {
            if let Some(Column { best: Some((v, i)), .. }) = c {
                let cand = (v.clone(), *i, j);
                if better(&cand, &choice) {
                    choice = Some(cand);
                }
            }
        }
        let Some((value, i0, j0)) = choice else { break };
        let pivot_col = cols[j0].take().expect("active pivot column");
        let b = pivot_col.image.get(i0).expect("pivot entry").clone();
        let b_monomial = b.is_monomial();
        let nu_b = b.valuation().expect("nonzero pivot").clone();
        for col in cols.iter_mut().flatten() {
            let Some(a) = col.image.get(i0).cloned() else { continue };
            if b_monomial {
                let c = -&a.div_exact(&b).expect("monomial pivot");
                col.coords = col.coords.axpy(&c, &pivot_col.coords);
                col.image = col.image.axpy(&c, &pivot_col.image);
            } else {
                // Multiplying by a non-monomial b is a unit times a strictly
                // lower perturbation, so orthogonality survives.
                let minus_a = -&a;
                col.coords = col.coords.scale(&b).axpy(&minus_a, &pivot_col.coords);
                col.image = col.image.scale(&b).axpy(&minus_a, &pivot_col.image);
                col.level = &col.level - &nu_b;
            }
            col.best = column_best(map, &col.image, &col.level);
        }
        used_rows[i0] = true;
        pivots.push(Pivot {
            row: i0,
            col: j0,
            shift: -value,
        });
        let shift = filtration_of(map.domain(), &pivot_col.coords).expect("dims").expect("nonzero")
            - filtration_of(map.codomain(), &pivot_col.image).expect("dims").expect("nonzero");
        pairs.push((pivot_col.coords, pivot_col.image, shift, j0));
    }

    // Elimination visits shifts in increasing order; present them decreasing.
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|a, b| pairs[*b].2.cmp(&pairs[*a].2).then(a.cmp(b)));
    let rank = pairs.len();
    let mut domain_basis = Vec::with_capacity(n);
    let mut codomain_basis = Vec::with_capacity(m);
    let mut shifts = Vec::with_capacity(rank);
    let mut domain_origin = Vec::with_capacity(n);
    for k in order {
        let (y, x, s, j) = pairs[k].clone();
        domain_basis.push(y);
        codomain_basis.push(x);
        shifts.push(s);
        domain_origin.push(j);
    }
    for (j, c) in cols.into_iter().enumerate() {
        if let Some(c) = c {
            debug_assert!(c.image.is_zero());
            domain_basis.push(c.coords);
            domain_origin.push(j);
        }
    }
    for (i, used) in used_rows.iter().enumerate() {
        if !used {
            codomain_basis.push(map.codomain().unit(i));
        }
    }
    SvdResult {
        rank,
        domain_basis,
        codomain_basis,
        shifts,
        domain_origin,
        pivots,
    }
}

/// Checks every clause of the singular value decomposition definition.
/// Returns the list of violated clauses (empty when valid).
pub fn verify_svd(map: &FilteredMap, res: &SvdResult) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let n = map.domain().dim();
    let m = map.codomain().dim();
    let r = res.rank;
    if res.domain_basis.len() != n {
        bad.push(format!("domain basis has {} vectors, expected {n}", res.domain_basis.len()));
    }
    if res.codomain_basis.len() != m {
        bad.push(format!("codomain basis has {} vectors, expected {m}", res.codomain_basis.len()));
    }
    if res.shifts.len() != r || r > n.min(m) {
        bad.push("rank and shift count disagree".into());
    }
    if !bad.is_empty() {
        return Ok(bad);
    }
    let oracle = field_rank(map.matrix());
    if oracle != r {
        bad.push(format!("rank {r} but unfiltered elimination gives {oracle}"));
    }
    for i in 0..r {
        if map.apply(&res.domain_basis[i]) != res.codomain_basis[i] {
            bad.push(format!("A y_{i} != x_{i}"));
        }
        let ly = filtration_of(map.domain(), &res.domain_basis[i])?;
        let lx = filtration_of(map.codomain(), &res.codomain_basis[i])?;
        match (ly, lx) {
            (Some(ly), Some(lx)) if ly.clone() - lx.clone() == res.shifts[i] => {}
            _ => bad.push(format!("shift {i} does not match the filtrations")),
        }
    }
    for j in r..n {
        if !map.apply(&res.domain_basis[j]).is_zero() {
            bad.push(format!("y_{j} is not in the kernel"));
        }
    }
    if res.shifts.windows(2).any(|w| w[0] < w[1]) {
        bad.push("shifts are not non-increasing".into());
    }
    if res.domain_basis.iter().any(|v| v.is_zero()) || !is_orthogonal(map.domain(), &res.domain_basis)? {
        bad.push("domain basis is not orthogonal".into());
    }
    if res.codomain_basis.iter().any(|v| v.is_zero()) || !is_orthogonal(map.codomain(), &res.codomain_basis)? {
        bad.push("codomain basis is not orthogonal".into());
    }
    Ok(bad)
}
