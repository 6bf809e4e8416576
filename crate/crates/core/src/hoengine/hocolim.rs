use std::collections::BTreeMap;

use super::{colim, FiniteDiagram};
use crate::chainkit::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::intlin::{Int, SparseIntMat};

/// One summand `F(obj)` placed at total degree `internal + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub chain: Vec<usize>,
    pub obj: usize,
    pub shift: i64,
    /// Sign on the internal differential.
    pub inner_sign: i64,
}

/// Total complex of a replacement, with its summand layout.
#[derive(Clone, Debug)]
pub struct Total {
    pub complex: FreeComplex,
    pub parts: Vec<Part>,
}

impl Total {
    /// Offset of each part in total degree `t`.
    pub fn offsets(&self, objects: &[FreeComplex], t: i64) -> Vec<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|p| {
                let o = acc;
                acc += objects[p.obj].rank(t - p.shift);
                o
            })
            .collect()
    }
}

/// A component of the replacement differential from `from` to `to`.
struct Edge {
    from: usize,
    to: usize,
    sign: i64,
    /// `Some((a, b))` applies `F(a ≤ b)`, `None` the identity.
    along: Option<(usize, usize)>,
}

fn totalize(f: &FiniteDiagram, parts: Vec<Part>, edges: &[Edge]) -> Result<Total> {
    let objs = &f.objects;
    let range = parts
        .iter()
        .filter(|p| !objs[p.obj].is_zero())
        .map(|p| (objs[p.obj].lo() + p.shift, objs[p.obj].hi() + p.shift))
        .fold(None, |acc: Option<(i64, i64)>, (l, h)| {
            Some(acc.map_or((l, h), |(a, b)| (a.min(l), b.max(h))))
        });
    let proto = Total {
        complex: FreeComplex::zero(),
        parts,
    };
    let Some((lo, hi)) = range else {
        return Ok(proto);
    };
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for t in lo..=hi {
        let off = proto.offsets(objs, t);
        let below = proto.offsets(objs, t - 1);
        let rank: usize = proto
            .parts
            .iter()
            .map(|p| objs[p.obj].rank(t - p.shift))
            .sum();
        let rows: usize = proto
            .parts
            .iter()
            .map(|p| objs[p.obj].rank(t - 1 - p.shift))
            .sum();
        ranks.insert(t, rank);
        let mut trip = Vec::new();
        for (i, p) in proto.parts.iter().enumerate() {
            let k = t - p.shift;
            for (r, c, v) in objs[p.obj].d(k).entries() {
                trip.push((below[i] + r, off[i] + c, Int::from(p.inner_sign) * v));
            }
        }
        for e in edges {
            let k = t - proto.parts[e.from].shift;
            debug_assert_eq!(proto.parts[e.to].shift, proto.parts[e.from].shift - 1);
            let m = match e.along {
                Some((a, b)) => f.map(a, b)?.at(k),
                None => SparseIntMat::identity(objs[proto.parts[e.from].obj].rank(k)),
            };
            for (r, c, v) in m.entries() {
                trip.push((below[e.to] + r, off[e.from] + c, Int::from(e.sign) * v));
            }
        }
        diffs.insert(t, SparseIntMat::from_triplets(rows, rank, trip));
    }
    let complex = FreeComplex::from_maps(&ranks, &diffs)
        .map_err(|e| Error::InvalidDiagram(format!("replacement is not a complex: {e}")))?;
    Ok(Total {
        complex,
        parts: proto.parts,
    })
}

fn sign(j: usize) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Normalized simplicial replacement and its realization.
///
/// A strict chain `c_0 < ... < c_n` carries `F(c_0)` in simplicial degree
/// `n`; the total differential is `Σ_j (-1)^j d_j + (-1)^n d_F`, where `d_j`
/// drops the `j`-th element counted from the top and `d_n` applies
/// `F(c_0 ≤ c_1)`.
pub fn hocolim_total(f: &FiniteDiagram) -> Result<Total> {
    let chains = f.poset.strict_chains();
    let mut parts = Vec::new();
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (n, cs) in chains.iter().enumerate() {
        for c in cs {
            index.insert(c.clone(), parts.len());
            parts.push(Part {
                chain: c.clone(),
                obj: c[0],
                shift: n as i64,
                inner_sign: sign(n),
            });
        }
    }
    let mut edges = Vec::new();
    for (from, p) in parts.iter().enumerate() {
        let n = p.chain.len() - 1;
        if n == 0 {
            continue;
        }
        for j in 0..=n {
            // Element removed, counted from the top.
            let pos = n - j;
            let mut face = p.chain.clone();
            face.remove(pos);
            let along = (pos == 0).then(|| (p.chain[0], p.chain[1]));
            edges.push(Edge {
                from,
                to: index[&face],
                sign: sign(j),
                along,
            });
        }
    }
    totalize(f, parts, &edges)
}

pub fn hocolim(f: &FiniteDiagram) -> Result<FreeComplex> {
    Ok(hocolim_total(f)?.complex)
}

/// Normalized cosimplicial replacement and its totalization.
///
/// A strict chain `c_0 < ... < c_n` carries `F(c_n)` in degree `-n` shift;
/// the differential is `δ + (-1)^n d_F` with `δ = Σ_j (-1)^j δ^j`, the last
/// coface applying `F(c_{n-1} ≤ c_n)`.
pub fn holim_total(f: &FiniteDiagram) -> Result<Total> {
    let chains = f.poset.strict_chains();
    let mut parts = Vec::new();
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (n, cs) in chains.iter().enumerate() {
        for c in cs {
            index.insert(c.clone(), parts.len());
            parts.push(Part {
                chain: c.clone(),
                obj: *c.last().unwrap(),
                shift: -(n as i64),
                inner_sign: sign(n),
            });
        }
    }
    let mut edges = Vec::new();
    for (to, p) in parts.iter().enumerate() {
        let m = p.chain.len() - 1;
        if m == 0 {
            continue;
        }
        for j in 0..=m {
            let mut face = p.chain.clone();
            face.remove(j);
            let along = (j == m).then(|| (p.chain[m - 1], p.chain[m]));
            edges.push(Edge {
                from: index[&face],
                to,
                sign: sign(j),
                along,
            });
        }
    }
    totalize(f, parts, &edges)
}

pub fn holim(f: &FiniteDiagram) -> Result<FreeComplex> {
    Ok(holim_total(f)?.complex)
}

/// Map `hocolim F -> colim F`: structure maps on simplicial degree zero,
/// zero elsewhere.
pub fn hocolim_to_colim(f: &FiniteDiagram) -> Result<ChainMap> {
    let total = hocolim_total(f)?;
    let c = colim(f)?;
    let mut maps = BTreeMap::new();
    for t in total.complex.degrees() {
        let off = total.offsets(&f.objects, t);
        let mut trip = Vec::new();
        for (i, p) in total.parts.iter().enumerate() {
            if p.shift != 0 {
                continue;
            }
            for (r, col, v) in c.structure[p.obj].at(t).entries() {
                trip.push((*r, off[i] + col, v.clone()));
            }
        }
        maps.insert(
            t,
            SparseIntMat::from_triplets(c.complex.rank(t), total.complex.rank(t), trip),
        );
    }
    ChainMap::new(total.complex, c.complex, maps)
}

/// Map induced on homotopy colimits by a natural transformation `η: F => G`
/// (components indexed by object); naturality is checked on covers.
pub fn hocolim_map(f: &FiniteDiagram, g: &FiniteDiagram, eta: &[ChainMap]) -> Result<ChainMap> {
    if f.poset != g.poset || eta.len() != f.len() {
        return Err(Error::InvalidDiagram(
            "natural transformation between different shapes".into(),
        ));
    }
    for &(a, b) in f.poset.covers() {
        if g.map(a, b)?.compose(&eta[a])? != eta[b].compose(&f.map(a, b)?)? {
            return Err(Error::InvalidDiagram(format!(
                "transformation not natural on {a} -> {b}"
            )));
        }
    }
    let (tf, tg) = (hocolim_total(f)?, hocolim_total(g)?);
    let mut maps = BTreeMap::new();
    for t in tf.complex.degrees() {
        let (of, og) = (tf.offsets(&f.objects, t), tg.offsets(&g.objects, t));
        let mut trip = Vec::new();
        for (i, p) in tf.parts.iter().enumerate() {
            for (r, c, v) in eta[p.obj].at(t - p.shift).entries() {
                trip.push((og[i] + r, of[i] + c, v.clone()));
            }
        }
        maps.insert(
            t,
            SparseIntMat::from_triplets(tg.complex.rank(t), tf.complex.rank(t), trip),
        );
    }
    ChainMap::new(tf.complex, tg.complex, maps)
}
