use std::collections::BTreeMap;

use super::{ChainMap, FreeComplex, TensorComplex};
use crate::error::{Error, Result};
use crate::intlin::{Int, SparseIntMat, SparseVec};

/// `C^{n-*}`: degree `k` is `Hom(C_{n-k}, Z)`, differential `(-1)^k d^T`.
pub fn n_dual(c: &FreeComplex, n: i64) -> FreeComplex {
    if c.is_zero() {
        return FreeComplex::zero();
    }
    let (lo, hi) = (n - c.hi(), n - c.lo());
    let ranks: Vec<usize> = (lo..=hi).map(|k| c.rank(n - k)).collect();
    let diffs = (lo + 1..=hi)
        .map(|k| {
            let t = c.d(n - k + 1).transpose();
            if k.rem_euclid(2) == 0 {
                t
            } else {
                t.neg()
            }
        })
        .collect();
    FreeComplex::new(lo, ranks, diffs).expect("dual of a complex is a complex")
}

/// Adjoint `C^{n-*} -> D` of an `n`-cycle `φ ∈ (C⊗D)_n`.
///
/// Component `k` is `±Φ_{n-k}^T` where `Φ_p` is the `C_p ⊗ D_{n-p}` block of
/// `φ`; the sign `(-1)^{k(n+1)}` is what makes it commute with the dual's
/// differential.
pub fn adjoint_of_cycle(
    cd: &TensorComplex,
    c: &FreeComplex,
    d: &FreeComplex,
    n: i64,
    phi: &SparseVec,
) -> Result<ChainMap> {
    if phi.keys().any(|&i| i >= cd.complex.rank(n)) {
        return Err(Error::DimensionMismatch(format!(
            "chain index outside degree {n}"
        )));
    }
    let boundary = cd.complex.d(n).apply_sparse(phi);
    if !boundary.is_empty() {
        return Err(Error::NotCycle(format!(
            "boundary has {} nonzero coefficients",
            boundary.len()
        )));
    }
    let terms = phi.iter().map(|(idx, v)| {
        let (p, i, _, j) = cd.basis.decode(n, *idx);
        (p, i, j, v.clone())
    });
    adjoint_from_terms(c, d, n, terms)
}

/// Adjoint built from the components `(p, i, j, v)` of `Σ v e_i ⊗ f_j`
/// (`|e_i| = p`, `|f_j| = n - p`) without forming `C ⊗ D`. The result is a
/// chain map exactly when the element is a cycle, so that is what gets
/// checked.
pub fn adjoint_from_terms(
    c: &FreeComplex,
    d: &FreeComplex,
    n: i64,
    terms: impl IntoIterator<Item = (i64, usize, usize, Int)>,
) -> Result<ChainMap> {
    let dual = n_dual(c, n);
    let mut trip: BTreeMap<i64, Vec<(usize, usize, Int)>> = BTreeMap::new();
    for (p, i, j, v) in terms {
        let k = n - p;
        if i >= c.rank(p) || j >= d.rank(k) {
            return Err(Error::DimensionMismatch(format!(
                "term ({p}, {i}, {j}) outside the complexes"
            )));
        }
        let sign = if (k * (n + 1)).rem_euclid(2) == 0 {
            v
        } else {
            -v
        };
        trip.entry(k).or_default().push((j, i, sign));
    }
    let maps = trip
        .into_iter()
        .map(|(k, t)| (k, SparseIntMat::from_triplets(d.rank(k), dual.rank(k), t)))
        .collect();
    ChainMap::new(dual, d.clone(), maps).map_err(|e| match e {
        Error::NotChainMap(m) => Error::NotCycle(m),
        other => other,
    })
}
