use num_traits::Zero;

use crate::error::{Error, Result};
use crate::filtered_linalg::{
    field_kernel, filtration_of, is_orthogonal, optimal_pair, orthogonalize, rank_of, svd, verify_svd, FilteredMap,
    FilteredSpace, SparseMatrix, SparseVector, SvdResult,
};
use crate::rational::Rational;

use super::action::CyclicActionData;
use super::maschke::{combine, coords, eigenspace_decomposition, maschke_in_span};
use super::repair::RepairedAction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTupleBlock {
    /// First pair index of the block inside the SVD.
    pub start: usize,
    pub len: usize,
    /// Eigenvalue index i of 𝒟_{T'} (eigenvalue ξ_p^i).
    pub sector: u32,
    pub zero_length: bool,
}

/// A singular value decomposition of ∂_{k+1} on the cone whose pairs come in
/// blocks (y, S'y, …, S'^{p−1}y).
#[derive(Clone, Debug)]
pub struct PTupleSVD {
    pub degree: i64,
    pub svd: SvdResult,
    pub blocks: Vec<PTupleBlock>,
}

impl PTupleSVD {
    /// Blocks that produce positive-length bars all have p members.
    pub fn blocks_have_size(&self, p: usize) -> bool {
        self.blocks.iter().all(|b| b.zero_length || b.len == p)
    }
}

struct Pair {
    y: SparseVector,
    x: SparseVector,
    shift: Rational,
    block: usize,
}

fn level(space: &FilteredSpace, v: &SparseVector) -> Result<Rational> {
    filtration_of(space, v)?.ok_or_else(|| Error::Precondition("zero vector in a basis".into()))
}

/// The map A restricted to orthogonal families `dom` → `cod`, in their coordinates.
fn restricted(
    a: &FilteredMap,
    dom: &[SparseVector],
    cod: &[SparseVector],
) -> Result<FilteredMap> {
    let (v, u) = (a.domain(), a.codomain());
    let field = v.field().clone();
    let dspace = FilteredSpace::new(
        (0..dom.len()).map(|i| format!("w{i}")).collect(),
        dom.iter().map(|b| level(v, b)).collect::<Result<_>>()?,
        field.clone(),
    )?;
    let cspace = FilteredSpace::new(
        (0..cod.len()).map(|i| format!("z{i}")).collect(),
        cod.iter().map(|b| level(u, b)).collect::<Result<_>>()?,
        field,
    )?;
    let cols = dom
        .iter()
        .map(|b| Ok(SparseVector::from_dense(&coords(cod, &a.apply(b))?)))
        .collect::<Result<Vec<_>>>()?;
    FilteredMap::new(dspace, cspace, SparseMatrix::from_columns(cod.len(), cols))
}

/// Splits off p-tuples one optimal pair at a time, keeping invariant
/// orthogonal complements on both sides.
#[allow(clippy::too_many_arguments)]
fn cut_p(
    a: &FilteredMap,
    s_dom: &SparseMatrix,
    s_cod: &SparseMatrix,
    order: u32,
    p: usize,
    sector: u32,
    mut dom: Vec<SparseVector>,
    mut cod: Vec<SparseVector>,
    pairs: &mut Vec<Pair>,
    blocks: &mut Vec<PTupleBlock>,
    kernel: &mut Vec<SparseVector>,
    unpaired: &mut Vec<SparseVector>,
) -> Result<()> {
    let (v, u) = (a.domain(), a.codomain());
    loop {
        let m = restricted(a, &dom, &cod)?;
        if m.matrix().is_zero() {
            kernel.extend(dom);
            unpaired.extend(cod);
            return Ok(());
        }
        let (_, col) = optimal_pair(&m)?;
        let mut ys = vec![dom[col].clone()];
        for _ in 1..p {
            let next = s_dom.apply(ys.last().expect("nonempty"));
            ys.push(next);
        }
        let xs: Vec<SparseVector> = ys.iter().map(|y| a.apply(y)).collect();
        if rank_of(&xs) != p || !is_orthogonal(v, &ys)? || !is_orthogonal(u, &xs)? {
            return Err(Error::Verification(format!(
                "cyclic span in sector {sector} is not a p-dimensional orthogonal tuple"
            )));
        }
        let cod_rest = maschke_in_span(u, s_cod, order, &cod, &xs)?;
        // preimage of the complement: kill the x-block coordinates
        let frame: Vec<SparseVector> = xs.iter().chain(&cod_rest).cloned().collect();
        let k_cols = dom
            .iter()
            .map(|w| {
                let c = coords(&frame, &a.apply(w))?;
                Ok(SparseVector::from_dense(&c[..p]))
            })
            .collect::<Result<Vec<_>>>()?;
        let k = SparseMatrix::from_columns(p, k_cols);
        let pre: Vec<SparseVector> = field_kernel(&k, v.prime())
            .iter()
            .map(|c| combine(&dom, &c.to_dense(), v.dim()))
            .collect();
        let dom_rest = orthogonalize(v, &pre, None)?;
        let union: Vec<SparseVector> = ys.iter().chain(&dom_rest).cloned().collect();
        if dom_rest.len() + p != dom.len() || !is_orthogonal(v, &union)? {
            return Err(Error::Verification(format!("cut-p complement failed in sector {sector}")));
        }
        let shift = level(v, &ys[0])? - level(u, &xs[0])?;
        let id = blocks.len();
        blocks.push(PTupleBlock {
            start: 0,
            len: p,
            sector,
            zero_length: shift.is_zero(),
        });
        for (y, x) in ys.into_iter().zip(xs) {
            pairs.push(Pair {
                y,
                x,
                shift: shift.clone(),
                block: id,
            });
        }
        dom = dom_rest;
        cod = cod_rest;
    }
}

/// p-tuple singular value decomposition of ∂_{k+1} on the cone, using the
/// repaired actions 𝒟_{T'} (for the eigen-sectors) and 𝒟_{S'} (for the tuples).
pub fn p_cyclic_svd(data: &CyclicActionData, repaired: &RepairedAction, k: i64) -> Result<PTupleSVD> {
    let cone = &data.cone.complex;
    if !cone.field().gamma.is_trivial() {
        return Err(Error::Precondition("p-cyclic decomposition is exact only for trivial Γ".into()));
    }
    let s = repaired
        .s
        .as_ref()
        .ok_or_else(|| Error::Precondition("p-cyclic decomposition needs the root action S'".into()))?;
    let p = data.prime();
    let a = cone.boundary(k + 1);
    let (v, u) = (a.domain().clone(), a.codomain().clone());
    let t_dom = FilteredMap::new(v.clone(), v.clone(), data.cone_component(&repaired.t, k + 1))?;
    let t_cod = FilteredMap::new(u.clone(), u.clone(), data.cone_component(&repaired.t, k))?;
    let s_dom = data.cone_component(s, k + 1);
    let s_cod = data.cone_component(s, k);
    let sec_v = eigenspace_decomposition(&v, &t_dom)?;
    let sec_u = eigenspace_decomposition(&u, &t_cod)?;

    let mut pairs = Vec::new();
    let mut blocks = Vec::new();
    let mut kernel = Vec::new();
    let mut unpaired = Vec::new();
    for i in 0..p as usize {
        let (dom, cod) = (sec_v[i].clone(), sec_u[i].clone());
        if dom.is_empty() || cod.is_empty() {
            kernel.extend(dom);
            unpaired.extend(cod);
            continue;
        }
        if i == 0 {
            // S'^p = 𝕀 here, so cyclic spans may collapse; plain pairs suffice
            // because every bar of this sector has length zero.
            let m = restricted(&a, &dom, &cod)?;
            let res = svd(&m);
            for j in 0..res.rank {
                let y = combine(&dom, &res.domain_basis[j].to_dense(), v.dim());
                let x = a.apply(&y);
                let id = blocks.len();
                blocks.push(PTupleBlock {
                    start: 0,
                    len: 1,
                    sector: 0,
                    zero_length: res.shifts[j].is_zero(),
                });
                pairs.push(Pair {
                    y,
                    x,
                    shift: res.shifts[j].clone(),
                    block: id,
                });
            }
            kernel.extend(res.domain_basis[res.rank..].iter().map(|c| combine(&dom, &c.to_dense(), v.dim())));
            unpaired.extend(res.codomain_basis[res.rank..].iter().map(|c| combine(&cod, &c.to_dense(), u.dim())));
        } else {
            cut_p(
                &a,
                &s_dom,
                &s_cod,
                p * p,
                p as usize,
                i as u32,
                dom,
                cod,
                &mut pairs,
                &mut blocks,
                &mut kernel,
                &mut unpaired,
            )?;
        }
    }

    // stable sort keeps each block contiguous
    pairs.sort_by(|x, y| y.shift.cmp(&x.shift));
    let mut seen = vec![false; blocks.len()];
    for (idx, pr) in pairs.iter().enumerate() {
        if !seen[pr.block] {
            seen[pr.block] = true;
            blocks[pr.block].start = idx;
        }
    }
    blocks.sort_by_key(|b| b.start);
    let rank = pairs.len();
    let mut domain_basis: Vec<SparseVector> = pairs.iter().map(|pr| pr.y.clone()).collect();
    let mut codomain_basis: Vec<SparseVector> = pairs.iter().map(|pr| pr.x.clone()).collect();
    let shifts = pairs.iter().map(|pr| pr.shift.clone()).collect();
    domain_basis.extend(kernel);
    codomain_basis.extend(unpaired);
    let res = SvdResult {
        rank,
        domain_origin: (0..domain_basis.len()).collect(),
        domain_basis,
        codomain_basis,
        shifts,
        pivots: Vec::new(),
    };
    let bad = verify_svd(&a, &res)?;
    if !bad.is_empty() {
        return Err(Error::Verification(format!("p-tuple decomposition at degree {k}: {}", bad.join("; "))));
    }
    Ok(PTupleSVD {
        degree: k,
        svd: res,
        blocks,
    })
}
