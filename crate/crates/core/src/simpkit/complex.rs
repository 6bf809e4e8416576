use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::chainkit::FreeComplex;
use crate::error::{Error, Result};
use crate::intlin::{Int, SparseIntMat};

/// Simplex id: position in the enumeration order (dimension, then lexicographic).
pub type SimplexId = usize;

/// Chain with simplex-id keys.
pub type SimplexChain = BTreeMap<SimplexId, Int>;

/// Finite ordered simplicial complex on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpComplex {
    n_vertices: usize,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, SimplexId>,
    /// First id of each dimension, plus a final sentinel.
    dim_start: Vec<usize>,
    faces: Vec<Vec<SimplexId>>,
    cofaces: Vec<Vec<SimplexId>>,
}

impl SimpComplex {
    /// Face closure of `facets`; the vertex set is `0..n_vertices` (all
    /// vertices become 0-simplices, used or not).
    pub fn new(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut set: BTreeSet<Vec<usize>> = (0..n_vertices).map(|v| vec![v]).collect();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Precondition(format!(
                    "repeated vertex in facet {f:?}"
                )));
            }
            if s.is_empty() {
                continue;
            }
            if *s.last().unwrap() >= n_vertices {
                return Err(Error::Precondition(format!(
                    "facet {f:?} uses a vertex outside 0..{n_vertices}"
                )));
            }
            if s.len() > 24 {
                return Err(Error::Precondition("facet dimension too large".into()));
            }
            let m = s.len();
            for mask in 1u32..(1u32 << m) {
                set.insert(
                    (0..m)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| s[i])
                        .collect(),
                );
            }
        }
        Ok(Self::from_closed(n_vertices, set))
    }

    /// Vertex count taken as `1 + max vertex`.
    pub fn from_facets(facets: &[Vec<usize>]) -> Result<Self> {
        let n = facets.iter().flatten().max().map_or(0, |m| m + 1);
        Self::new(n, facets)
    }

    pub(crate) fn from_closed(n_vertices: usize, set: BTreeSet<Vec<usize>>) -> Self {
        let mut simplices: Vec<Vec<usize>> = set.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Vec<usize>, SimplexId> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let top = simplices.last().map_or(0, |s| s.len());
        let mut dim_start = vec![0; top + 1];
        for d in 0..=top {
            dim_start[d] = simplices.partition_point(|s| s.len() < d + 1);
        }
        let mut faces = vec![Vec::new(); simplices.len()];
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (id, s) in simplices.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let fid = index[&f];
                faces[id].push(fid);
                cofaces[fid].push(id);
            }
        }
        for c in &mut cofaces {
            c.sort_unstable();
        }
        SimpComplex {
            n_vertices,
            simplices,
            index,
            dim_start,
            faces,
            cofaces,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.dim_start.len() as i64 - 2
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex(&self, id: SimplexId) -> &[usize] {
        &self.simplices[id]
    }

    pub fn simplex_dim(&self, id: SimplexId) -> usize {
        self.simplices[id].len() - 1
    }

    pub fn id_of(&self, s: &[usize]) -> Option<SimplexId> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &[usize]) -> Result<SimplexId> {
        self.id_of(s)
            .ok_or_else(|| Error::UnknownSimplex(simplex_key(s)))
    }

    /// Ids of all `k`-simplices, in order.
    pub fn ids_of_dim(&self, k: usize) -> std::ops::Range<SimplexId> {
        if k + 1 >= self.dim_start.len() {
            return 0..0;
        }
        self.dim_start[k]..self.dim_start[k + 1]
    }

    pub fn count(&self, k: usize) -> usize {
        self.ids_of_dim(k).len()
    }

    /// Position of a simplex among those of its dimension.
    pub fn local_index(&self, id: SimplexId) -> usize {
        id - self.dim_start[self.simplex_dim(id)]
    }

    pub fn id_from_local(&self, k: usize, i: usize) -> SimplexId {
        self.dim_start[k] + i
    }

    /// Codimension-one faces, `∂_i` in position `i`.
    pub fn faces(&self, id: SimplexId) -> &[SimplexId] {
        &self.faces[id]
    }

    /// Codimension-one cofaces, ascending.
    pub fn cofaces(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofaces[id]
    }

    /// `a ≤ b` in the face poset.
    pub fn is_face(&self, a: SimplexId, b: SimplexId) -> bool {
        let (sa, sb) = (&self.simplices[a], &self.simplices[b]);
        sa.len() <= sb.len() && sa.iter().all(|v| sb.binary_search(v).is_ok())
    }

    /// All faces of `id` (including itself), ascending.
    pub fn closure(&self, id: SimplexId) -> Vec<SimplexId> {
        let s = &self.simplices[id];
        let m = s.len();
        let mut out: Vec<SimplexId> = (1u32..(1u32 << m))
            .map(|mask| {
                self.index[&(0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| s[i])
                    .collect::<Vec<_>>()]
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// All cofaces of `id` (including itself), ascending.
    pub fn star(&self, id: SimplexId) -> Vec<SimplexId> {
        let mut seen = BTreeSet::from([id]);
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for &c in &self.cofaces[x] {
                if seen.insert(c) {
                    stack.push(c);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Intersection of two simplices as a simplex id, if nonempty.
    pub fn meet(&self, a: SimplexId, b: SimplexId) -> Option<SimplexId> {
        let sb = &self.simplices[b];
        let common: Vec<usize> = self.simplices[a]
            .iter()
            .copied()
            .filter(|v| sb.binary_search(v).is_ok())
            .collect();
        (!common.is_empty()).then(|| self.index[&common])
    }

    pub fn facets(&self) -> Vec<SimplexId> {
        (0..self.len())
            .filter(|&i| self.cofaces[i].is_empty())
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets()
            .iter()
            .all(|&f| self.simplex_dim(f) as i64 == d)
    }

    /// Boundary of a simplex: `Σ (-1)^i ∂_i σ`.
    pub fn boundary_of(&self, id: SimplexId) -> SimplexChain {
        self.faces[id]
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, Int::from(if i % 2 == 0 { 1 } else { -1 })))
            .collect()
    }

    pub fn boundary(&self, c: &SimplexChain) -> SimplexChain {
        let mut out = SimplexChain::new();
        for (id, v) in c {
            for (f, s) in self.boundary_of(*id) {
                out.entry(f).or_default().add_mul(&s, v);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Checks that `ids` is closed under taking faces.
    pub fn is_subcomplex(&self, ids: &BTreeSet<SimplexId>) -> bool {
        ids.iter()
            .all(|&i| self.faces[i].iter().all(|f| ids.contains(f)))
    }

    /// Simplicial chain complex, basis in degree `k` = `k`-simplices in order.
    pub fn chains(&self) -> FreeComplex {
        let all: BTreeSet<SimplexId> = (0..self.len()).collect();
        self.chains_on(&all, &BTreeSet::new())
            .expect("whole complex")
            .0
    }

    /// `Δ_*(K, L)` for subcomplexes given by id sets.
    pub fn rel_chains(
        &self,
        k: &BTreeSet<SimplexId>,
        l: &BTreeSet<SimplexId>,
    ) -> Result<(FreeComplex, ChainBasis)> {
        if !self.is_subcomplex(k) || !self.is_subcomplex(l) || !l.is_subset(k) {
            return Err(Error::Precondition(
                "relative chains need nested subcomplexes".into(),
            ));
        }
        self.chains_on(k, l)
    }

    /// Chains on `keep ∖ drop` with the quotient differential; no closure checks.
    pub(crate) fn chains_on(
        &self,
        keep: &BTreeSet<SimplexId>,
        drop: &BTreeSet<SimplexId>,
    ) -> Result<(FreeComplex, ChainBasis)> {
        let basis = ChainBasis::new(self, keep.iter().copied().filter(|i| !drop.contains(i)));
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&k, ids) in &basis.by_degree {
            ranks.insert(k, ids.len());
            if k == 0 {
                continue;
            }
            let rows = basis.by_degree.get(&(k - 1)).map_or(0, Vec::len);
            let mut trip = Vec::new();
            for (j, &id) in ids.iter().enumerate() {
                for (f, s) in self.boundary_of(id) {
                    if let Some(i) = basis.position(f) {
                        trip.push((i, j, s));
                    }
                }
            }
            diffs.insert(k, SparseIntMat::from_triplets(rows, ids.len(), trip));
        }
        Ok((FreeComplex::from_maps(&ranks, &diffs)?, basis))
    }

    pub fn to_json(&self) -> ComplexFile {
        ComplexFile {
            vertices: self.n_vertices,
            facets: self
                .facets()
                .iter()
                .map(|&f| self.simplices[f].clone())
                .collect(),
        }
    }

    pub fn from_json(f: &ComplexFile) -> Result<Self> {
        Self::new(f.vertices, &f.facets)
    }
}

impl std::fmt::Debug for SimpComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SimpComplex(dim {}, counts {:?})",
            self.dim(),
            (0..=self.dim().max(-1) as usize)
                .map(|k| self.count(k))
                .collect::<Vec<_>>()
        )
    }
}

/// Wire form `{"vertices": n, "facets": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexFile {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

/// Dash-joined vertex list, the textual key of a simplex.
pub fn simplex_key(s: &[usize]) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

pub fn parse_simplex_key(key: &str) -> Result<Vec<usize>> {
    key.split('-')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Format(format!("simplex key {key:?}: {e}")))
        })
        .collect()
}

/// Which simplex sits at each basis position of a chain complex built on a
/// set of simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainBasis {
    pub by_degree: BTreeMap<i64, Vec<SimplexId>>,
    pos: HashMap<SimplexId, usize>,
}

impl ChainBasis {
    pub fn new(k: &SimpComplex, ids: impl IntoIterator<Item = SimplexId>) -> Self {
        let mut by_degree: BTreeMap<i64, Vec<SimplexId>> = BTreeMap::new();
        let mut sorted: Vec<SimplexId> = ids.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        for id in sorted {
            by_degree
                .entry(k.simplex_dim(id) as i64)
                .or_default()
                .push(id);
        }
        let pos = by_degree
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(i, &id)| (id, i)))
            .collect();
        ChainBasis { by_degree, pos }
    }

    pub fn position(&self, id: SimplexId) -> Option<usize> {
        self.pos.get(&id).copied()
    }

    pub fn id_at(&self, k: i64, i: usize) -> SimplexId {
        self.by_degree[&k][i]
    }
}

/// Upward-closed set of simplices: a union of open stars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarOpen {
    members: BTreeSet<SimplexId>,
}

impl StarOpen {
    pub fn new(k: &SimpComplex, members: BTreeSet<SimplexId>) -> Result<Self> {
        for &m in &members {
            if m >= k.len() {
                return Err(Error::UnknownSimplex(format!("#{m}")));
            }
            if k.cofaces(m).iter().any(|c| !members.contains(c)) {
                return Err(Error::Precondition(format!(
                    "set is not upward closed at {}",
                    simplex_key(k.simplex(m))
                )));
            }
        }
        Ok(StarOpen { members })
    }

    /// Union of the open stars of the given simplices.
    pub fn of_simplices(k: &SimpComplex, minimal: &[SimplexId]) -> Self {
        let members = minimal.iter().flat_map(|&s| k.star(s)).collect();
        StarOpen { members }
    }

    pub fn whole(k: &SimpComplex) -> Self {
        StarOpen {
            members: (0..k.len()).collect(),
        }
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.members.contains(&id)
    }

    pub fn members(&self) -> &BTreeSet<SimplexId> {
        &self.members
    }

    pub fn intersect(&self, other: &StarOpen) -> StarOpen {
        StarOpen {
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn union(&self, other: &StarOpen) -> StarOpen {
        StarOpen {
            members: self.members.union(&other.members).copied().collect(),
        }
    }
}

/// Simplicial map given by a vertex map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub vertex_map: Vec<usize>,
    images: Vec<SimplexId>,
}

impl SimplicialMap {
    pub fn new(source: &SimpComplex, target: &SimpComplex, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.n_vertices() {
            return Err(Error::NotSimplicial(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                source.n_vertices()
            )));
        }
        let mut images = Vec::with_capacity(source.len());
        for s in source.simplices() {
            let mut img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
            img.sort_unstable();
            img.dedup();
            let id = target.id_of(&img).ok_or_else(|| {
                Error::NotSimplicial(format!(
                    "{} maps to non-simplex {}",
                    simplex_key(s),
                    simplex_key(&img)
                ))
            })?;
            images.push(id);
        }
        Ok(SimplicialMap { vertex_map, images })
    }

    pub fn identity(k: &SimpComplex) -> Self {
        Self::new(k, k, (0..k.n_vertices()).collect()).expect("identity")
    }

    /// Image simplex of a source simplex.
    pub fn is_injective(&self) -> bool {
        let mut seen = self.vertex_map.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn image(&self, id: SimplexId) -> SimplexId {
        self.images[id]
    }

    pub fn compose(
        &self,
        g: &SimplicialMap,
        source: &SimpComplex,
        target: &SimpComplex,
    ) -> Result<SimplicialMap> {
        // self ∘ g
        SimplicialMap::new(
            source,
            target,
            g.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        assert_eq!(SimpComplex::from_facets(&[vec![0, 1, 2]]).unwrap().len(), 7);
        assert_eq!(
            SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]])
                .unwrap()
                .len(),
            6
        );
        let s2 =
            SimpComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
                .unwrap();
        assert_eq!(s2.len(), 14);
        assert!(SimpComplex::from_facets(&[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn chains_of_sphere() {
        let s2 =
            SimpComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
                .unwrap();
        assert_eq!(
            s2.chains().betti_numbers(),
            BTreeMap::from([(0, 1), (2, 1)])
        );
        assert!(s2.chains().homology(1).is_zero());
        let pt = SimpComplex::from_facets(&[vec![0]]).unwrap();
        assert_eq!(pt.chains(), FreeComplex::point(0));
    }

    #[test]
    fn relative_interval() {
        let i = SimpComplex::from_facets(&[vec![0, 1]]).unwrap();
        let all: BTreeSet<_> = (0..3).collect();
        let ends: BTreeSet<_> = [0, 1].into();
        let (c, _) = i.rel_chains(&all, &ends).unwrap();
        assert_eq!(c.betti_numbers(), BTreeMap::from([(1, 1)]));
        let bad: BTreeSet<_> = [2].into();
        assert!(i.rel_chains(&all, &bad).is_err());
    }

    #[test]
    fn star_open_and_maps() {
        let k = SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let u = StarOpen::of_simplices(&k, &[0]);
        assert_eq!(u.members().len(), 3);
        assert!(StarOpen::new(&k, [0].into()).is_err());
        let pt = SimpComplex::from_facets(&[vec![0]]).unwrap();
        let c = SimplicialMap::new(&k, &pt, vec![0, 0, 0]).unwrap();
        assert_eq!(c.image(5), 0);
        let e = SimpComplex::from_facets(&[vec![0, 1]]).unwrap();
        assert!(SimplicialMap::new(
            &k,
            &SimpComplex::new(3, &[vec![0, 1]]).unwrap(),
            vec![0, 1, 2]
        )
        .is_err());
        assert!(SimplicialMap::new(&k, &e, vec![0, 1, 1]).is_ok());
    }
}
