//! Bounded chain complexes of finitely generated free abelian groups.
//!
//! Sign conventions, fixed once for the whole crate:
//! - tensor products use the Koszul sign, `d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy`;
//! - the mapping cone of `f: C -> D` has `Cone_k = D_k ⊕ C_{k-1}` and
//!   differential `[[d_D, f], [0, -d_C]]`;
//! - the `n`-dual has `rank_k = rank C_{n-k}` and differential
//!   `(-1)^k d^T`.

mod dual;
mod map;
mod tensor;
mod wres;

pub use dual::{adjoint_from_terms, adjoint_of_cycle, n_dual};
pub use map::{find_homotopy, ChainHomotopy, ChainMap};
pub use tensor::{tensor, transposition, TensorBasis, TensorComplex};
pub use wres::{descent_rhs, solve_descent};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::{
    elementary_divisors, homology_unchecked, HomologyInvariants, Int, SparseIntMat,
};

/// Bounded complex `C_lo <- ... <- C_hi` with `d_k: C_k -> C_{k-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeComplex {
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d_{lo+i}`; the bottom one has zero rows.
    diffs: Vec<SparseIntMat>,
}

/// First failing degree of a complex validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub degree: i64,
    pub reason: String,
}

impl FreeComplex {
    /// Builds and validates a complex from ranks starting at degree `lo` and
    /// the differentials `d_{lo+1}, ..., d_hi`.
    pub fn new(lo: i64, ranks: Vec<usize>, upper_diffs: Vec<SparseIntMat>) -> Result<Self> {
        if !ranks.is_empty() && upper_diffs.len() + 1 != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                upper_diffs.len()
            )));
        }
        let mut diffs = Vec::with_capacity(ranks.len());
        if let Some(&r0) = ranks.first() {
            diffs.push(SparseIntMat::zeros(0, r0));
        }
        diffs.extend(upper_diffs);
        let c = FreeComplex { lo, ranks, diffs };
        if let Err(v) = c.validate() {
            return Err(Error::InvalidComplex(format!(
                "degree {}: {}",
                v.degree, v.reason
            )));
        }
        Ok(c.trimmed())
    }

    /// Builds from a degree-indexed map of ranks and differentials.
    pub fn from_maps(
        ranks: &BTreeMap<i64, usize>,
        diffs: &BTreeMap<i64, SparseIntMat>,
    ) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (ranks.keys().next(), ranks.keys().next_back()) else {
            return Ok(FreeComplex::zero());
        };
        let rs: Vec<usize> = (lo..=hi)
            .map(|k| ranks.get(&k).copied().unwrap_or(0))
            .collect();
        let ds = (lo + 1..=hi)
            .map(|k| {
                diffs.get(&k).cloned().unwrap_or_else(|| {
                    SparseIntMat::zeros(rs[(k - 1 - lo) as usize], rs[(k - lo) as usize])
                })
            })
            .collect();
        for k in diffs.keys() {
            if (*k < lo || *k > hi) && !diffs[k].is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "differential in degree {k} outside range"
                )));
            }
        }
        FreeComplex::new(lo, rs, ds)
    }

    pub fn zero() -> Self {
        FreeComplex {
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `Z^rank` concentrated in degree `k`.
    pub fn concentrated(k: i64, rank: usize) -> Self {
        FreeComplex {
            lo: k,
            ranks: vec![rank],
            diffs: vec![SparseIntMat::zeros(0, rank)],
        }
        .trimmed()
    }

    /// `Z[k]`.
    pub fn point(k: i64) -> Self {
        Self::concentrated(k, 1)
    }

    fn trimmed(mut self) -> Self {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            self.diffs.remove(0);
            self.lo += 1;
            if let Some(r) = self.ranks.first() {
                self.diffs[0] = SparseIntMat::zeros(0, *r);
            }
        }
        if self.ranks.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.ranks[(k - self.lo) as usize]
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_k: C_k -> C_{k-1}`, a zero matrix of the right shape outside the range.
    pub fn d(&self, k: i64) -> SparseIntMat {
        if k <= self.lo || k > self.hi() {
            SparseIntMat::zeros(self.rank(k - 1), self.rank(k))
        } else {
            self.diffs[(k - self.lo) as usize].clone()
        }
    }

    /// Checks shapes and `d_{k-1} d_k = 0`; reports the first failing degree.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (i, r) in self.ranks.iter().enumerate() {
            let k = self.lo + i as i64;
            let d = &self.diffs[i];
            let below = if i == 0 { 0 } else { self.ranks[i - 1] };
            if d.cols() != *r || d.rows() != below {
                return Err(Violation {
                    degree: k,
                    reason: format!(
                        "d_{k} is {}x{}, expected {}x{}",
                        d.rows(),
                        d.cols(),
                        below,
                        r
                    ),
                });
            }
        }
        for i in 2..self.ranks.len() {
            let k = self.lo + i as i64;
            let dd = self.diffs[i - 1]
                .mul(&self.diffs[i])
                .expect("shapes checked");
            if !dd.is_zero() {
                return Err(Violation {
                    degree: k,
                    reason: format!("d_{} d_{} != 0", k - 1, k),
                });
            }
        }
        Ok(())
    }

    pub fn homology(&self, k: i64) -> HomologyInvariants {
        if self.rank(k) == 0 {
            return HomologyInvariants::zero();
        }
        homology_unchecked(&self.d(k + 1), &self.d(k))
    }

    pub fn homology_all(&self) -> BTreeMap<i64, HomologyInvariants> {
        self.degrees()
            .map(|k| (k, self.homology(k)))
            .filter(|(_, h)| !h.is_zero())
            .collect()
    }

    pub fn betti_numbers(&self) -> BTreeMap<i64, usize> {
        self.homology_all()
            .into_iter()
            .map(|(k, h)| (k, h.betti))
            .filter(|(_, b)| *b > 0)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| {
                if k.rem_euclid(2) == 0 {
                    self.rank(k) as i64
                } else {
                    -(self.rank(k) as i64)
                }
            })
            .sum()
    }

    /// True iff every homology group vanishes; for bounded free complexes
    /// this is the same as being contractible.
    pub fn is_acyclic(&self) -> bool {
        let divs: Vec<Vec<Int>> = self.diffs.iter().map(elementary_divisors).collect();
        for (i, r) in self.ranks.iter().enumerate() {
            let here = divs[i].len();
            let above = divs.get(i + 1).map_or(0, |d| d.len());
            if here + above != *r {
                return false;
            }
            if divs
                .get(i + 1)
                .is_some_and(|d| d.iter().any(|x| !x.is_one()))
            {
                return false;
            }
        }
        true
    }

    /// `C[n]`: `(ΣⁿC)_k = C_{k-n}` with unchanged differentials.
    pub fn shift(&self, n: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        FreeComplex {
            lo: self.lo + n,
            ranks: self.ranks.clone(),
            diffs: self.diffs.clone(),
        }
    }

    pub fn direct_sum(parts: &[&FreeComplex]) -> Self {
        let nonzero: Vec<&&FreeComplex> = parts.iter().filter(|c| !c.is_zero()).collect();
        let Some(lo) = nonzero.iter().map(|c| c.lo).min() else {
            return FreeComplex::zero();
        };
        let hi = nonzero.iter().map(|c| c.hi()).max().unwrap();
        let ranks: Vec<usize> = (lo..=hi)
            .map(|k| parts.iter().map(|c| c.rank(k)).sum())
            .collect();
        let diffs = (lo + 1..=hi)
            .map(|k| {
                let mut blocks = Vec::new();
                let (mut r0, mut c0) = (0, 0);
                let mats: Vec<SparseIntMat> = parts.iter().map(|c| c.d(k)).collect();
                for m in &mats {
                    blocks.push((r0, c0, m));
                    r0 += m.rows();
                    c0 += m.cols();
                }
                SparseIntMat::from_blocks(r0, c0, &blocks)
            })
            .collect();
        FreeComplex::new(lo, ranks, diffs).expect("direct sum of valid complexes")
    }

    /// Subcomplex spanned by basis vectors; `keep[k]` lists indices in degree
    /// `k` (in the order they should appear). Fails if not closed under `d`.
    pub fn span_subcomplex(&self, keep: &BTreeMap<i64, Vec<usize>>) -> Result<Self> {
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for k in self.degrees() {
            let here = keep.get(&k).cloned().unwrap_or_default();
            ranks.insert(k, here.len());
            let below = keep.get(&(k - 1)).cloned().unwrap_or_default();
            let d = self.d(k);
            let sub = d.select(&below, &here);
            let all_below: Vec<usize> = (0..d.rows()).collect();
            let full = d.select(&all_below, &here);
            let nnz_in = sub.nnz();
            if full.nnz() != nnz_in {
                return Err(Error::InvalidComplex(format!(
                    "span not closed under d in degree {k}"
                )));
            }
            diffs.insert(k, sub);
        }
        FreeComplex::from_maps(&ranks, &diffs)
    }

    /// Quotient by a basis-spanned subcomplex; `drop[k]` lists the killed indices.
    pub fn quotient_by_span(&self, drop: &BTreeMap<i64, Vec<usize>>) -> Result<Self> {
        let keep: BTreeMap<i64, Vec<usize>> = self
            .degrees()
            .map(|k| {
                let gone = drop.get(&k).cloned().unwrap_or_default();
                (k, (0..self.rank(k)).filter(|i| !gone.contains(i)).collect())
            })
            .collect();
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for k in self.degrees() {
            ranks.insert(k, keep[&k].len());
            let below = keep.get(&(k - 1)).cloned().unwrap_or_default();
            diffs.insert(k, self.d(k).select(&below, &keep[&k]));
        }
        FreeComplex::from_maps(&ranks, &diffs)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            lo: self.lo,
            hi: self.hi(),
            ranks: self
                .degrees()
                .map(|k| (k.to_string(), self.rank(k)))
                .collect(),
            differentials: (self.lo + 1..=self.hi())
                .map(|k| (k.to_string(), self.d(k)))
                .collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        let parse = |s: &String| {
            s.parse::<i64>()
                .map_err(|e| Error::Format(format!("degree key {s:?}: {e}")))
        };
        let mut ranks = BTreeMap::new();
        for (k, r) in &j.ranks {
            ranks.insert(parse(k)?, *r);
        }
        let mut diffs = BTreeMap::new();
        for (k, m) in &j.differentials {
            diffs.insert(parse(k)?, m.clone());
        }
        FreeComplex::from_maps(&ranks, &diffs)
    }
}

impl std::fmt::Debug for FreeComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FreeComplex[")?;
        for k in self.degrees() {
            write!(f, " {}:{}", k, self.rank(k))?;
        }
        write!(f, " ]")
    }
}

/// Wire form `{"lo": l, "hi": h, "ranks": {k: r}, "differentials": {k: matrix}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub lo: i64,
    pub hi: i64,
    pub ranks: BTreeMap<String, usize>,
    #[serde(default)]
    pub differentials: BTreeMap<String, SparseIntMat>,
}

/// Mapping cone of `f: C -> D`.
pub fn mapping_cone(f: &ChainMap) -> FreeComplex {
    let (c, d) = (f.source(), f.target());
    let lo = d.lo().min(c.lo() + 1);
    let hi = d.hi().max(c.hi() + 1);
    if c.is_zero() && d.is_zero() {
        return FreeComplex::zero();
    }
    let ranks: Vec<usize> = (lo..=hi).map(|k| d.rank(k) + c.rank(k - 1)).collect();
    let diffs = (lo + 1..=hi)
        .map(|k| {
            let (dk, ck1, dk1, ck2) = (d.rank(k), c.rank(k - 1), d.rank(k - 1), c.rank(k - 2));
            let dd = d.d(k);
            let fk = f.at(k - 1);
            let dc = c.d(k - 1).neg();
            SparseIntMat::from_blocks(
                dk1 + ck2,
                dk + ck1,
                &[(0, 0, &dd), (0, dk, &fk), (dk1, dk, &dc)],
            )
        })
        .collect();
    FreeComplex::new(lo, ranks, diffs).expect("cone of a chain map is a complex")
}

/// Decides chain homotopy equivalence by acyclicity of the mapping cone.
pub fn is_equivalence(f: &ChainMap) -> bool {
    mapping_cone(f).is_acyclic()
}
