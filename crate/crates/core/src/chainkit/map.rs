use std::collections::BTreeMap;

use super::FreeComplex;
use crate::error::{Error, Result};
use crate::intlin::{solve_integer, Int, SparseIntMat};

/// Degree-zero chain map; `at(k)` is `rank D_k x rank C_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    maps: BTreeMap<i64, SparseIntMat>,
}

impl ChainMap {
    /// Checks shapes and `d f = f d` in every degree.
    pub fn new(
        source: FreeComplex,
        target: FreeComplex,
        maps: BTreeMap<i64, SparseIntMat>,
    ) -> Result<Self> {
        for (k, m) in &maps {
            if m.rows() != target.rank(*k) || m.cols() != source.rank(*k) {
                return Err(Error::DimensionMismatch(format!(
                    "f_{k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(*k),
                    source.rank(*k)
                )));
            }
        }
        let f = ChainMap {
            source,
            target,
            maps,
        };
        f.check_commutes()?;
        Ok(f)
    }

    fn check_commutes(&self) -> Result<()> {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        for k in lo..=hi + 1 {
            let left = self.at(k - 1).mul(&self.source.d(k))?;
            let right = self.target.d(k).mul(&self.at(k))?;
            if left != right {
                return Err(Error::NotChainMap(format!("f d != d f in degree {k}")));
            }
        }
        Ok(())
    }

    pub fn identity(c: &FreeComplex) -> Self {
        Self::scalar(c, Int::ONE)
    }

    pub fn scalar(c: &FreeComplex, s: Int) -> Self {
        let maps = c
            .degrees()
            .map(|k| (k, SparseIntMat::scalar(c.rank(k), s.clone())))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn zero(c: &FreeComplex, d: &FreeComplex) -> Self {
        ChainMap {
            source: c.clone(),
            target: d.clone(),
            maps: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn at(&self, k: i64) -> SparseIntMat {
        self.maps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| SparseIntMat::zeros(self.target.rank(k), self.source.rank(k)))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap) -> Result<ChainMap> {
        if g.target != self.source {
            return Err(Error::DimensionMismatch(
                "composable maps need matching complexes".into(),
            ));
        }
        let mut maps = BTreeMap::new();
        for k in g.source.degrees() {
            let m = self.at(k).mul(&g.at(k))?;
            if !m.is_zero() {
                maps.insert(k, m);
            }
        }
        Ok(ChainMap {
            source: g.source.clone(),
            target: self.target.clone(),
            maps,
        })
    }

    pub fn sub(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.source != g.source || self.target != g.target {
            return Err(Error::DimensionMismatch(
                "maps between different complexes".into(),
            ));
        }
        let mut maps = BTreeMap::new();
        for k in self.source.degrees() {
            let m = self.at(k).sub(&g.at(k))?;
            if !m.is_zero() {
                maps.insert(k, m);
            }
        }
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            maps,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().all(SparseIntMat::is_zero)
    }
}

/// `s_k: C_k -> D_{k+1}` with `f - g = d s + s d`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    pub maps: BTreeMap<i64, SparseIntMat>,
}

impl ChainHomotopy {
    pub fn at(&self, k: i64, c: &FreeComplex, d: &FreeComplex) -> SparseIntMat {
        self.maps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| SparseIntMat::zeros(d.rank(k + 1), c.rank(k)))
    }

    /// Verifies the homotopy identity for `f - g`.
    pub fn verifies(&self, f: &ChainMap, g: &ChainMap) -> Result<bool> {
        let (c, d) = (f.source(), f.target());
        for k in c.degrees() {
            let lhs = f.at(k).sub(&g.at(k))?;
            let ds = d.d(k + 1).mul(&self.at(k, c, d))?;
            let sd = self.at(k - 1, c, d).mul(&c.d(k))?;
            if lhs != ds.add(&sd)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Finds a homotopy `f ≃ g` by solving one integer system for all
/// components at once. `Ok(None)` means none exists.
pub fn find_homotopy(f: &ChainMap, g: &ChainMap) -> Result<Option<ChainHomotopy>> {
    let diff = f.sub(g)?;
    let (c, d) = (f.source(), f.target());
    if diff.is_zero() {
        return Ok(Some(ChainHomotopy {
            maps: BTreeMap::new(),
        }));
    }
    // Unknown offsets for each s_k, stored row-major (row in D_{k+1}).
    let mut offset = BTreeMap::new();
    let mut n_unknowns = 0usize;
    for k in c.degrees() {
        let size = d.rank(k + 1) * c.rank(k);
        if size > 0 {
            offset.insert(k, n_unknowns);
            n_unknowns += size;
        }
    }
    let mut eq_offset = BTreeMap::new();
    let mut n_eq = 0usize;
    for k in c.degrees() {
        eq_offset.insert(k, n_eq);
        n_eq += d.rank(k) * c.rank(k);
    }
    let mut trip = Vec::new();
    let mut rhs = vec![Int::ZERO; n_eq];
    for k in c.degrees() {
        let (rk, ck) = (d.rank(k), c.rank(k));
        let e0 = eq_offset[&k];
        for (i, j, v) in diff.at(k).entries() {
            rhs[e0 + i * ck + j] = v.clone();
        }
        // d^D_{k+1} s_k: entry (i, j) gets dD[i][a] * s_k[a][j].
        if let Some(&o) = offset.get(&k) {
            for (i, a, v) in d.d(k + 1).entries() {
                for j in 0..ck {
                    trip.push((e0 + i * ck + j, o + a * ck + j, v.clone()));
                }
            }
        }
        // s_{k-1} d^C_k: entry (i, j) gets s_{k-1}[i][b] * dC[b][j].
        if let Some(&o) = offset.get(&(k - 1)) {
            let cprev = c.rank(k - 1);
            for (b, j, v) in c.d(k).entries() {
                for i in 0..rk {
                    trip.push((e0 + i * ck + j, o + i * cprev + b, v.clone()));
                }
            }
        }
    }
    let a = SparseIntMat::from_triplets(n_eq, n_unknowns, trip);
    let Some(x) = solve_integer(&a, &rhs)? else {
        return Ok(None);
    };
    let mut maps = BTreeMap::new();
    for (&k, &o) in &offset {
        let (r, cc) = (d.rank(k + 1), c.rank(k));
        let m = SparseIntMat::from_triplets(
            r,
            cc,
            (0..r * cc).map(|t| (t / cc, t % cc, x[o + t].clone())),
        );
        if !m.is_zero() {
            maps.insert(k, m);
        }
    }
    Ok(Some(ChainHomotopy { maps }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> FreeComplex {
        // Z <-(−1 1)^T- Z : two vertices, one edge.
        FreeComplex::new(
            0,
            vec![2, 1],
            vec![SparseIntMat::from_dense(&[vec![-1], vec![1]])],
        )
        .unwrap()
    }

    #[test]
    fn non_chain_map_rejected() {
        let i = interval();
        let mut maps = BTreeMap::new();
        maps.insert(1, SparseIntMat::identity(1));
        assert!(matches!(
            ChainMap::new(i.clone(), i, maps),
            Err(Error::NotChainMap(_))
        ));
    }

    #[test]
    fn endpoint_maps_are_homotopic() {
        let i = interval();
        let p = FreeComplex::point(0);
        let at = |v: usize| {
            let mut m = BTreeMap::new();
            m.insert(0, SparseIntMat::from_triplets(2, 1, vec![(v, 0, Int::ONE)]));
            ChainMap::new(p.clone(), i.clone(), m).unwrap()
        };
        let (a, b) = (at(0), at(1));
        let h = find_homotopy(&a, &b).unwrap().unwrap();
        assert!(h.verifies(&a, &b).unwrap());
        let z = ChainMap::zero(&p, &i);
        assert!(find_homotopy(&a, &z).unwrap().is_none());
    }
}
