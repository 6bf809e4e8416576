use std::collections::BTreeMap;

use super::{ChainMap, FreeComplex};
use crate::intlin::{Int, SparseIntMat};

/// Block layout of `(C⊗D)_n`: blocks `C_p ⊗ D_{n-p}` by ascending `p`,
/// each stored row-major (`i * rank D_q + j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorBasis {
    left: Vec<(i64, usize)>,
    right: Vec<(i64, usize)>,
    /// `(n, p) -> offset`.
    offsets: BTreeMap<(i64, i64), usize>,
    ranks: BTreeMap<i64, usize>,
}

impl TensorBasis {
    pub fn new(c: &FreeComplex, d: &FreeComplex) -> Self {
        let left: Vec<(i64, usize)> = c
            .degrees()
            .map(|k| (k, c.rank(k)))
            .filter(|x| x.1 > 0)
            .collect();
        let right: Vec<(i64, usize)> = d
            .degrees()
            .map(|k| (k, d.rank(k)))
            .filter(|x| x.1 > 0)
            .collect();
        let mut offsets = BTreeMap::new();
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        let mut pairs: Vec<(i64, i64, usize)> = Vec::new();
        for (p, rp) in &left {
            for (q, rq) in &right {
                pairs.push((p + q, *p, rp * rq));
            }
        }
        pairs.sort();
        for (n, p, size) in pairs {
            let r = ranks.entry(n).or_default();
            offsets.insert((n, p), *r);
            *r += size;
        }
        TensorBasis {
            left,
            right,
            offsets,
            ranks,
        }
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    fn rank_of(list: &[(i64, usize)], k: i64) -> usize {
        list.iter().find(|x| x.0 == k).map_or(0, |x| x.1)
    }

    /// Index of `e_i ⊗ f_j` with `|e_i| = p`, `|f_j| = q`.
    pub fn index(&self, p: i64, i: usize, q: i64, j: usize) -> Option<usize> {
        let off = self.offsets.get(&(p + q, p))?;
        let rq = Self::rank_of(&self.right, q);
        (i < Self::rank_of(&self.left, p) && j < rq).then(|| off + i * rq + j)
    }

    /// Inverse of [`TensorBasis::index`]: `(p, i, q, j)`.
    pub fn decode(&self, n: i64, idx: usize) -> (i64, usize, i64, usize) {
        let mut found = None;
        for (&(nn, p), &off) in self.offsets.range((n, i64::MIN)..=(n, i64::MAX)) {
            debug_assert_eq!(nn, n);
            if off <= idx {
                found = Some((p, off));
            }
        }
        let (p, off) = found.expect("index within degree");
        let q = n - p;
        let rq = Self::rank_of(&self.right, q);
        let local = idx - off;
        (p, local / rq, q, local % rq)
    }

    /// Pieces `(p, q)` present in degree `n`.
    pub fn blocks(&self, n: i64) -> Vec<(i64, i64)> {
        self.offsets
            .range((n, i64::MIN)..=(n, i64::MAX))
            .map(|(&(_, p), _)| (p, n - p))
            .collect()
    }
}

/// `C ⊗ D` with its basis layout.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: FreeComplex,
    pub basis: TensorBasis,
}

pub fn tensor(c: &FreeComplex, d: &FreeComplex) -> TensorComplex {
    let basis = TensorBasis::new(c, d);
    let degrees: Vec<i64> = basis.ranks.keys().copied().collect();
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        ranks.insert(n, basis.rank(n));
        let mut trip = Vec::new();
        for (p, q) in basis.blocks(n) {
            let dc = c.d(p).col_lists();
            let dd = d.d(q).col_lists();
            for i in 0..c.rank(p) {
                for j in 0..d.rank(q) {
                    let col = basis.index(p, i, q, j).unwrap();
                    for (a, v) in &dc[i] {
                        trip.push((basis.index(p - 1, *a, q, j).unwrap(), col, v.clone()));
                    }
                    for (b, v) in &dd[j] {
                        let s = if p.rem_euclid(2) == 0 { v.clone() } else { -v };
                        trip.push((basis.index(p, i, q - 1, *b).unwrap(), col, s));
                    }
                }
            }
        }
        diffs.insert(
            n,
            SparseIntMat::from_triplets(basis.rank(n - 1), basis.rank(n), trip),
        );
    }
    let complex = FreeComplex::from_maps(&ranks, &diffs).expect("tensor of complexes is a complex");
    TensorComplex { complex, basis }
}

/// `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x` from `C⊗D` to `D⊗C`.
pub fn transposition(cd: &TensorComplex, dc: &TensorComplex) -> ChainMap {
    let mut maps = BTreeMap::new();
    for n in cd.complex.degrees() {
        let mut trip = Vec::new();
        for (p, q) in cd.basis.blocks(n) {
            let sign = if (p * q).rem_euclid(2) == 0 {
                Int::ONE
            } else {
                Int::from(-1)
            };
            let (rp, rq) = (cd.basis.rank_of_left(p), cd.basis.rank_of_right(q));
            for i in 0..rp {
                for j in 0..rq {
                    let src = cd.basis.index(p, i, q, j).unwrap();
                    let dst = dc.basis.index(q, j, p, i).expect("swapped layout");
                    trip.push((dst, src, sign.clone()));
                }
            }
        }
        maps.insert(
            n,
            SparseIntMat::from_triplets(dc.complex.rank(n), cd.complex.rank(n), trip),
        );
    }
    ChainMap::new(cd.complex.clone(), dc.complex.clone(), maps)
        .expect("transposition is a chain map")
}

impl TensorBasis {
    pub fn rank_of_left(&self, p: i64) -> usize {
        Self::rank_of(&self.left, p)
    }

    pub fn rank_of_right(&self, q: i64) -> usize {
        Self::rank_of(&self.right, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> FreeComplex {
        // Two vertices, two edges, both from v0 to v1.
        FreeComplex::new(
            0,
            vec![2, 2],
            vec![SparseIntMat::from_dense(&[vec![-1, -1], vec![1, 1]])],
        )
        .unwrap()
    }

    #[test]
    fn kunneth_for_torus() {
        let s = circle();
        let t = tensor(&s, &s);
        assert_eq!(
            t.complex.betti_numbers(),
            BTreeMap::from([(0, 1), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn transposition_is_an_involution() {
        let s = circle();
        let p = FreeComplex::new(1, vec![1], vec![]).unwrap();
        let a = tensor(&s, &p);
        let b = tensor(&p, &s);
        let ab = transposition(&a, &b);
        let ba = transposition(&b, &a);
        assert_eq!(ba.compose(&ab).unwrap(), ChainMap::identity(&a.complex));
    }

    #[test]
    fn decode_inverts_index() {
        let s = circle();
        let t = tensor(&s, &s.shift(1));
        for n in t.complex.degrees() {
            for idx in 0..t.complex.rank(n) {
                let (p, i, q, j) = t.basis.decode(n, idx);
                assert_eq!(t.basis.index(p, i, q, j), Some(idx));
            }
        }
    }
}
