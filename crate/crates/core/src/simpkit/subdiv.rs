use std::collections::{BTreeMap, BTreeSet};

use super::{SimpComplex, SimplexChain, SimplexId};
use crate::chainkit::ChainMap;
use crate::error::{Error, Result};
use crate::intlin::{Int, SparseIntMat};

/// `K′` together with its relation to `K`.
///
/// Vertex `v` of `K′` is the barycenter of simplex `v` of `K` (ids are in
/// dimension-then-lexicographic order), so a simplex of `K′` is literally the
/// increasing tuple of `K`-ids of its flag.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub base: SimpComplex,
    pub sd: SimpComplex,
}

pub fn barycentric(k: &SimpComplex) -> Subdivision {
    let mut flags: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = (0..k.len()).map(|s| vec![s]).collect();
    while let Some(f) = stack.pop() {
        let last = *f.last().unwrap();
        for c in k.star(last) {
            if c != last {
                let mut g = f.clone();
                g.push(c);
                stack.push(g);
            }
        }
        flags.insert(f);
    }
    let sd = SimpComplex::from_closed(k.len(), flags);
    Subdivision {
        base: k.clone(),
        sd,
    }
}

impl Subdivision {
    /// The flag of a `K′` simplex, as `K` ids.
    pub fn flag(&self, id: SimplexId) -> &[usize] {
        self.sd.simplex(id)
    }

    /// Smallest element of the flag: the `K`-simplex whose dual cell the
    /// flag lies in the interior of.
    pub fn first(&self, id: SimplexId) -> SimplexId {
        self.sd.simplex(id)[0]
    }

    pub fn last(&self, id: SimplexId) -> SimplexId {
        *self.sd.simplex(id).last().unwrap()
    }

    /// Barycenter of a `K`-simplex as a `K′` vertex id.
    pub fn barycenter(&self, s: SimplexId) -> SimplexId {
        self.sd.id_of(&[s]).expect("every simplex has a barycenter")
    }

    /// `(D(σ), ∂D(σ))` as sets of `K′` ids.
    pub fn dual_cell(&self, s: SimplexId) -> Result<(BTreeSet<SimplexId>, BTreeSet<SimplexId>)> {
        if s >= self.base.len() {
            return Err(Error::UnknownSimplex(format!("#{s}")));
        }
        let mut d = BTreeSet::new();
        let mut bd = BTreeSet::new();
        for id in 0..self.sd.len() {
            let f = self.first(id);
            if self.base.is_face(s, f) {
                d.insert(id);
                if f != s {
                    bd.insert(id);
                }
            }
        }
        Ok((d, bd))
    }

    /// Subdivision chain map `Δ_*(K) -> Δ_*(K′)` as simplex chains:
    /// `sd(σ) = (-1)^k sd(∂σ) * σ̂` with the barycenter joined last.
    pub fn sd_chains(&self) -> Vec<SimplexChain> {
        let mut out: Vec<SimplexChain> = Vec::with_capacity(self.base.len());
        for s in 0..self.base.len() {
            let k = self.base.simplex_dim(s);
            if k == 0 {
                out.push(SimplexChain::from([(self.barycenter(s), Int::ONE)]));
                continue;
            }
            let mut c = SimplexChain::new();
            for (f, sign) in self.base.boundary_of(s) {
                for (x, v) in &out[f] {
                    let mut t = self.sd.simplex(*x).to_vec();
                    t.push(s);
                    let id = self.sd.id_of(&t).expect("joined flag");
                    let mut coeff = &sign * v;
                    if k % 2 == 1 {
                        coeff = -coeff;
                    }
                    c.entry(id).or_default().add_mul(&coeff, &Int::ONE);
                }
            }
            c.retain(|_, v| !v.is_zero());
            out.push(c);
        }
        out
    }

    pub fn sd_map(&self) -> ChainMap {
        let chains = self.sd_chains();
        let mut maps = BTreeMap::new();
        for k in 0..=self.base.dim().max(0) as usize {
            let trip = self.base.ids_of_dim(k).flat_map(|s| {
                let j = self.base.local_index(s);
                chains[s]
                    .iter()
                    .map(move |(x, v)| (self.sd.local_index(*x), j, v.clone()))
                    .collect::<Vec<_>>()
            });
            maps.insert(
                k as i64,
                SparseIntMat::from_triplets(self.sd.count(k), self.base.count(k), trip),
            );
        }
        ChainMap::new(self.base.chains(), self.sd.chains(), maps)
            .expect("subdivision is a chain map")
    }
}
