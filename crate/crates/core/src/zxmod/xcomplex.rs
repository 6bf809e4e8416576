use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chainkit::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::intlin::{Int, SparseIntMat};
use crate::simpkit::{
    barycentric, parse_simplex_key, simplex_key, ComplexFile, SimpComplex, SimplexId, SimplicialMap,
};

/// A basis element of an X-based complex: the simplex it sits over, and a
/// label that orders it among the generators of that piece.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub piece: SimplexId,
    pub label: Vec<usize>,
}

/// Chain complex of free modules graded over the simplices of a base
/// complex, with differential components `d(τ, σ)` vanishing unless `τ ≥ σ`.
///
/// Stored as its assembly together with the piece of each basis element;
/// generators of each degree are sorted by `(piece, label)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XComplex {
    base: Arc<SimpComplex>,
    gens: BTreeMap<i64, Vec<Gen>>,
    assembled: FreeComplex,
}

/// Reorders basis elements of each degree; `pos[k][old] = new`.
pub(crate) fn permute_diffs(
    diffs: &BTreeMap<i64, SparseIntMat>,
    pos: &BTreeMap<i64, Vec<usize>>,
) -> BTreeMap<i64, SparseIntMat> {
    diffs
        .iter()
        .map(|(&k, m)| {
            let (rp, cp) = (pos.get(&(k - 1)), &pos[&k]);
            let t = m
                .entries()
                .iter()
                .map(|(i, j, v)| (rp.expect("rows exist")[*i], cp[*j], v.clone()));
            (k, SparseIntMat::from_triplets(m.rows(), m.cols(), t))
        })
        .collect()
}

impl XComplex {
    /// Validates triangularity and `d² = 0`; generators may come in any order.
    pub fn new(
        base: Arc<SimpComplex>,
        gens: BTreeMap<i64, Vec<Gen>>,
        diffs: BTreeMap<i64, SparseIntMat>,
    ) -> Result<Self> {
        let gens: BTreeMap<i64, Vec<Gen>> =
            gens.into_iter().filter(|(_, g)| !g.is_empty()).collect();
        for g in gens.values().flatten() {
            if g.piece >= base.len() {
                return Err(Error::UnknownSimplex(format!("#{}", g.piece)));
            }
        }
        for (&k, m) in &diffs {
            let rows = gens.get(&(k - 1)).map_or(0, Vec::len);
            let cols = gens.get(&k).map_or(0, Vec::len);
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "component matrix in degree {k}"
                )));
            }
            for (i, j, _) in m.entries() {
                let (to, from) = (gens[&(k - 1)][*i].piece, gens[&k][*j].piece);
                if !base.is_face(from, to) {
                    return Err(Error::InvalidComplex(format!(
                        "component from {} to {} breaks triangularity",
                        simplex_key(base.simplex(from)),
                        simplex_key(base.simplex(to))
                    )));
                }
            }
        }
        let mut sorted = BTreeMap::new();
        let mut pos = BTreeMap::new();
        for (&k, g) in &gens {
            let mut order: Vec<usize> = (0..g.len()).collect();
            order.sort_by(|&a, &b| g[a].cmp(&g[b]));
            if order.windows(2).any(|w| g[w[0]] == g[w[1]]) {
                return Err(Error::InvalidComplex(format!(
                    "duplicate generator in degree {k}"
                )));
            }
            let mut p = vec![0; g.len()];
            for (new, &old) in order.iter().enumerate() {
                p[old] = new;
            }
            pos.insert(k, p);
            sorted.insert(k, order.iter().map(|&i| g[i].clone()).collect::<Vec<_>>());
        }
        let diffs: BTreeMap<i64, SparseIntMat> = diffs
            .into_iter()
            .filter(|(k, m)| !m.is_zero() && gens.contains_key(k) && gens.contains_key(&(k - 1)))
            .collect();
        let diffs = permute_diffs(&diffs, &pos);
        let ranks = sorted.iter().map(|(&k, g)| (k, g.len())).collect();
        let assembled = FreeComplex::from_maps(&ranks, &diffs)?;
        Ok(XComplex {
            base,
            gens: sorted,
            assembled,
        })
    }

    /// Free module on one generator at `(σ, k)`.
    pub fn free_generator(base: Arc<SimpComplex>, sigma: SimplexId, k: i64) -> Result<Self> {
        if sigma >= base.len() {
            return Err(Error::UnknownSimplex(format!("#{sigma}")));
        }
        let gens = BTreeMap::from([(
            k,
            vec![Gen {
                piece: sigma,
                label: vec![sigma, 0],
            }],
        )]);
        XComplex::new(base, gens, BTreeMap::new())
    }

    /// A plain complex, viewed over the one-point base.
    pub fn over_point(c: &FreeComplex) -> Self {
        let base = Arc::new(SimpComplex::from_facets(&[vec![0]]).expect("point"));
        let gens = c
            .degrees()
            .map(|k| {
                (
                    k,
                    (0..c.rank(k))
                        .map(|i| Gen {
                            piece: 0,
                            label: vec![i],
                        })
                        .collect(),
                )
            })
            .collect();
        let diffs = c.degrees().map(|k| (k, c.d(k))).collect();
        XComplex::new(base, gens, diffs).expect("point base is triangular")
    }

    pub fn zero(base: Arc<SimpComplex>) -> Self {
        XComplex {
            base,
            gens: BTreeMap::new(),
            assembled: FreeComplex::zero(),
        }
    }

    pub fn base(&self) -> &SimpComplex {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<SimpComplex> {
        &self.base
    }

    /// The covariant assembly: forget the grading over the base.
    pub fn assemble(&self) -> &FreeComplex {
        &self.assembled
    }

    pub fn gens(&self, k: i64) -> &[Gen] {
        self.gens.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn all_gens(&self) -> &BTreeMap<i64, Vec<Gen>> {
        &self.gens
    }

    pub fn piece(&self, k: i64, i: usize) -> SimplexId {
        self.gens[&k][i].piece
    }

    /// Ranks of `C(σ)` by degree.
    pub fn piece_ranks(&self, sigma: SimplexId) -> BTreeMap<i64, usize> {
        self.gens
            .iter()
            .map(|(&k, g)| (k, g.iter().filter(|x| x.piece == sigma).count()))
            .filter(|(_, r)| *r > 0)
            .collect()
    }

    /// Indices, per degree, of generators whose piece satisfies `keep`.
    pub fn select(&self, keep: impl Fn(SimplexId) -> bool) -> BTreeMap<i64, Vec<usize>> {
        self.gens
            .iter()
            .map(|(&k, g)| {
                (
                    k,
                    (0..g.len())
                        .filter(|&i| keep(g[i].piece))
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    /// `[C][σ]`: generators over cofaces of `σ`, with the induced differential.
    pub fn bracket(&self, sigma: SimplexId) -> Result<(FreeComplex, BTreeMap<i64, Vec<usize>>)> {
        if sigma >= self.base.len() {
            return Err(Error::UnknownSimplex(format!("#{sigma}")));
        }
        let idx = self.select(|p| self.base.is_face(sigma, p));
        Ok((self.assembled.span_subcomplex(&idx)?, idx))
    }

    /// `C(σ)` with its own differential `d(σ, σ)`.
    pub fn local(&self, sigma: SimplexId) -> Result<(FreeComplex, BTreeMap<i64, Vec<usize>>)> {
        if sigma >= self.base.len() {
            return Err(Error::UnknownSimplex(format!("#{sigma}")));
        }
        let idx = self.select(|p| p == sigma);
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&k, ids) in &idx {
            ranks.insert(k, ids.len());
            let below = idx.get(&(k - 1)).cloned().unwrap_or_default();
            diffs.insert(k, self.assembled.d(k).select(&below, ids));
        }
        Ok((FreeComplex::from_maps(&ranks, &diffs)?, idx))
    }

    /// Differentials of the assembly, keyed by degree.
    pub(crate) fn diffs(&self) -> BTreeMap<i64, SparseIntMat> {
        self.assembled
            .degrees()
            .map(|k| (k, self.assembled.d(k)))
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }

    /// Pushforward along a simplicial map: `f_*C(σ) = ⊕_{fτ = σ} C(τ)`.
    pub fn pushforward(&self, f: &SimplicialMap, target: Arc<SimpComplex>) -> Result<XComplex> {
        if f.vertex_map.len() != self.base.n_vertices() {
            return Err(Error::NotSimplicial(
                "map does not start at the base".into(),
            ));
        }
        let gens = self
            .gens
            .iter()
            .map(|(&k, g)| {
                (
                    k,
                    g.iter()
                        .map(|x| Gen {
                            piece: f.image(x.piece),
                            label: x.label.clone(),
                        })
                        .collect(),
                )
            })
            .collect();
        XComplex::new(target, gens, self.diffs())
    }

    pub fn to_json(&self) -> XComplexFile {
        let key = |s: SimplexId| simplex_key(self.base.simplex(s));
        let mut pieces: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        let mut local_index: BTreeMap<(i64, usize), usize> = BTreeMap::new();
        for (&k, g) in &self.gens {
            let mut count: HashMap<SimplexId, usize> = HashMap::new();
            for (i, x) in g.iter().enumerate() {
                let c = count.entry(x.piece).or_default();
                local_index.insert((k, i), *c);
                *c += 1;
                *pieces
                    .entry(key(x.piece))
                    .or_default()
                    .entry(k.to_string())
                    .or_default() += 1;
            }
        }
        let mut components = Vec::new();
        for k in self.assembled.degrees() {
            for (i, j, v) in self.assembled.d(k).entries() {
                components.push(ComponentFile {
                    from: (key(self.piece(k, *j)), k, local_index[&(k, *j)]),
                    to: (key(self.piece(k - 1, *i)), k - 1, local_index[&(k - 1, *i)]),
                    coeff: v.clone(),
                });
            }
        }
        XComplexFile {
            base: self.base.to_json(),
            pieces,
            components,
        }
    }

    pub fn from_json(f: &XComplexFile) -> Result<XComplex> {
        let base = Arc::new(SimpComplex::from_json(&f.base)?);
        let mut gens: BTreeMap<i64, Vec<Gen>> = BTreeMap::new();
        let mut where_: HashMap<(SimplexId, i64, usize), usize> = HashMap::new();
        for (key, ranks) in &f.pieces {
            let s = base.require(&parse_simplex_key(key)?)?;
            for (k, r) in ranks {
                let k: i64 = k
                    .parse()
                    .map_err(|e| Error::Format(format!("degree {k:?}: {e}")))?;
                for i in 0..*r {
                    let list = gens.entry(k).or_default();
                    where_.insert((s, k, i), list.len());
                    list.push(Gen {
                        piece: s,
                        label: vec![s, i],
                    });
                }
            }
        }
        let mut trip: BTreeMap<i64, Vec<(usize, usize, Int)>> = BTreeMap::new();
        for c in &f.components {
            let from_s = base.require(&parse_simplex_key(&c.from.0)?)?;
            let to_s = base.require(&parse_simplex_key(&c.to.0)?)?;
            if c.to.1 != c.from.1 - 1 {
                return Err(Error::Format("component must lower degree by one".into()));
            }
            let j = *where_
                .get(&(from_s, c.from.1, c.from.2))
                .ok_or_else(|| Error::Format(format!("no generator {:?}", c.from)))?;
            let i = *where_
                .get(&(to_s, c.to.1, c.to.2))
                .ok_or_else(|| Error::Format(format!("no generator {:?}", c.to)))?;
            trip.entry(c.from.1)
                .or_default()
                .push((i, j, c.coeff.clone()));
        }
        let diffs = trip
            .into_iter()
            .map(|(k, t)| {
                let rows = gens.get(&(k - 1)).map_or(0, Vec::len);
                let cols = gens.get(&k).map_or(0, Vec::len);
                (k, SparseIntMat::from_triplets(rows, cols, t))
            })
            .collect();
        XComplex::new(base, gens, diffs)
    }
}

/// Wire form of an X-based complex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XComplexFile {
    pub base: ComplexFile,
    /// `σ-key -> degree -> rank`.
    pub pieces: BTreeMap<String, BTreeMap<String, usize>>,
    #[serde(default)]
    pub components: Vec<ComponentFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentFile {
    pub from: (String, i64, usize),
    pub to: (String, i64, usize),
    pub coeff: Int,
}

/// Morphism of X-based complexes: a chain map of assemblies whose components
/// go from `σ` only to cofaces of `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMap {
    pub source: XComplex,
    pub target: XComplex,
    pub map: ChainMap,
}

impl XMap {
    pub fn new(
        source: XComplex,
        target: XComplex,
        maps: BTreeMap<i64, SparseIntMat>,
    ) -> Result<Self> {
        let base = source.base();
        for (&k, m) in &maps {
            for (i, j, _) in m.entries() {
                if !base.is_face(source.piece(k, *j), target.piece(k, *i)) {
                    return Err(Error::InvalidComplex(format!(
                        "map component in degree {k} breaks triangularity"
                    )));
                }
            }
        }
        let map = ChainMap::new(source.assemble().clone(), target.assemble().clone(), maps)?;
        Ok(XMap {
            source,
            target,
            map,
        })
    }

    pub fn compose(&self, g: &XMap) -> Result<XMap> {
        let m = self.map.compose(&g.map)?;
        let maps = g
            .source
            .assemble()
            .degrees()
            .map(|k| (k, m.at(k)))
            .collect();
        XMap::new(g.source.clone(), self.target.clone(), maps)
    }
}

/// `C_f`: the dual-cell complex of a simplicial map `f: Y -> X`, built on
/// `Y′`. The generator for a flag sits over `f` of its smallest element.
/// Also returns the `Y′` flag id of each generator.
pub fn dual_cell_complex(
    y: &SimpComplex,
    x: Arc<SimpComplex>,
    f: &SimplicialMap,
) -> Result<(XComplex, BTreeMap<i64, Vec<SimplexId>>)> {
    if f.vertex_map.len() != y.n_vertices() {
        return Err(Error::NotSimplicial("vertex map length".into()));
    }
    let sub = barycentric(y);
    let c = sub.sd.chains();
    let mut gens = BTreeMap::new();
    for k in 0..=sub.sd.dim().max(-1) {
        let g: Vec<Gen> = sub
            .sd
            .ids_of_dim(k as usize)
            .map(|id| Gen {
                piece: f.image(sub.first(id)),
                label: vec![id],
            })
            .collect();
        gens.insert(k, g);
    }
    let diffs = c.degrees().map(|k| (k, c.d(k))).collect();
    let xc = XComplex::new(x, gens, diffs)?;
    let flags = xc
        .gens
        .iter()
        .map(|(&k, g)| (k, g.iter().map(|x| x.label[0]).collect()))
        .collect();
    Ok((xc, flags))
}
