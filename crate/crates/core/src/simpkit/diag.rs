use std::collections::BTreeMap;

use super::{SimpComplex, SimplexChain};
use crate::chainkit::{solve_descent, tensor, transposition, ChainMap, TensorComplex};
use crate::error::Result;
use crate::intlin::{Int, SparseIntMat, SparseVec};

/// Simplex chain to local coordinates of `chains(K)` in one degree.
pub fn to_local(k: &SimpComplex, c: &SimplexChain) -> SparseVec {
    c.iter()
        .map(|(id, v)| (k.local_index(*id), v.clone()))
        .collect()
}

/// Alexander-Whitney diagonal `[v_0..v_n] ↦ Σ_i [v_0..v_i] ⊗ [v_i..v_n]`.
pub fn aw_diagonal(k: &SimpComplex) -> (TensorComplex, ChainMap) {
    let c = k.chains();
    let tc = tensor(&c, &c);
    let mut maps = BTreeMap::new();
    for n in 0..=k.dim().max(0) as usize {
        let mut trip = Vec::new();
        for id in k.ids_of_dim(n) {
            let s = k.simplex(id);
            for i in 0..=n {
                let front = k.local_index(k.id_of(&s[..=i]).unwrap());
                let back = k.local_index(k.id_of(&s[i..]).unwrap());
                let row = tc
                    .basis
                    .index(i as i64, front, (n - i) as i64, back)
                    .unwrap();
                trip.push((row, k.local_index(id), Int::ONE));
            }
        }
        maps.insert(
            n as i64,
            SparseIntMat::from_triplets(tc.complex.rank(n as i64), k.count(n), trip),
        );
    }
    let aw = ChainMap::new(c, tc.complex.clone(), maps).expect("Alexander-Whitney is a chain map");
    (tc, aw)
}

/// `φ_0, ..., φ_smax` in `Δ_*(K) ⊗ Δ_*(K)` solving the descent equations,
/// starting from `φ_0` of degree `n`.
pub fn higher_diagonal(
    k: &SimpComplex,
    phi0: &SparseVec,
    n: i64,
    smax: usize,
) -> Result<Vec<SparseVec>> {
    let c = k.chains();
    let tc = tensor(&c, &c);
    let tau = transposition(&tc, &tc);
    solve_descent(&tc.complex, &tau, n, phi0, smax)
}
