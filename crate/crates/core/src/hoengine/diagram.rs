use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chainkit::{ChainMap, ComplexJson, FreeComplex};
use crate::error::{Error, Result};
use crate::intlin::{Int, SparseIntMat};

/// Finite partial order on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Order generated by the relations `a ≤ b`; fails on cycles.
    pub fn from_relations(n: usize, rel: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in rel {
            if a >= n || b >= n {
                return Err(Error::InvalidDiagram(format!(
                    "relation ({a}, {b}) outside {n} objects"
                )));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidDiagram(format!(
                        "objects {i} and {j} form a cycle"
                    )));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b])
                {
                    covers.push((a, b));
                }
            }
        }
        Ok(Poset { n, leq, covers })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Covering relations `a ⋖ b`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strictly increasing chains `c_0 < ... < c_m` of each length, as
    /// vectors in increasing order. Index `m` holds chains with `m + 1`
    /// elements.
    pub fn strict_chains(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = vec![(0..self.n).map(|i| vec![i]).collect()];
        loop {
            let last = out.last().unwrap();
            let next: Vec<Vec<usize>> = last
                .iter()
                .flat_map(|c| {
                    let top = *c.last().unwrap();
                    (0..self.n).filter(move |&j| self.lt(top, j)).map(move |j| {
                        let mut d = c.clone();
                        d.push(j);
                        d
                    })
                })
                .collect();
            if next.is_empty() {
                break;
            }
            out.push(next);
        }
        if self.n == 0 {
            out.clear();
        }
        out
    }

    /// The down-set `{a : a < b}` as a subposet, with the index map.
    pub fn below(&self, b: usize) -> (Poset, Vec<usize>) {
        let idx: Vec<usize> = (0..self.n).filter(|&a| self.lt(a, b)).collect();
        let rel: Vec<(usize, usize)> = idx
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| {
                idx.iter()
                    .enumerate()
                    .filter(move |(_, &c)| self.leq(a, c))
                    .map(move |(j, _)| (i, j))
            })
            .collect();
        (
            Poset::from_relations(idx.len(), &rel).expect("subposet"),
            idx,
        )
    }
}

/// Functor from a finite poset to free complexes, given on covering
/// relations. Composite maps are computed and checked path-independent.
#[derive(Clone, Debug)]
pub struct FiniteDiagram {
    pub poset: Poset,
    pub names: Vec<String>,
    pub objects: Vec<FreeComplex>,
    maps: HashMap<(usize, usize), ChainMap>,
}

impl FiniteDiagram {
    /// `arrow(a, b)` is called once for each cover `a ⋖ b`.
    pub fn from_fn(
        poset: Poset,
        objects: Vec<FreeComplex>,
        mut arrow: impl FnMut(usize, usize) -> Result<ChainMap>,
    ) -> Result<Self> {
        if objects.len() != poset.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} complexes for {} objects",
                objects.len(),
                poset.len()
            )));
        }
        let mut gen: HashMap<(usize, usize), ChainMap> = HashMap::new();
        for &(a, b) in poset.covers() {
            let f = arrow(a, b)?;
            if f.source() != &objects[a] || f.target() != &objects[b] {
                return Err(Error::InvalidDiagram(format!(
                    "arrow {a} -> {b} has the wrong endpoints"
                )));
            }
            gen.insert((a, b), f);
        }
        let mut maps: HashMap<(usize, usize), ChainMap> = HashMap::new();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); poset.len()];
        for &(a, b) in poset.covers() {
            up[a].push(b);
        }
        for a in 0..poset.len() {
            // Process targets in a linear extension so each composite is built
            // from already-known ones.
            let mut targets: Vec<usize> = (0..poset.len()).filter(|&b| poset.lt(a, b)).collect();
            targets.sort_by_key(|&b| (0..poset.len()).filter(|&c| poset.lt(c, b)).count());
            for b in targets {
                let mut found: Option<ChainMap> = None;
                for &(m, t) in poset.covers() {
                    if t != b || !poset.leq(a, m) {
                        continue;
                    }
                    let g = &gen[&(m, b)];
                    let f = if m == a {
                        g.clone()
                    } else {
                        g.compose(&maps[&(a, m)])?
                    };
                    match &found {
                        None => found = Some(f),
                        Some(h) if *h != f => {
                            return Err(Error::InvalidDiagram(format!(
                                "composites {a} -> {b} disagree"
                            )));
                        }
                        _ => {}
                    }
                }
                maps.insert((a, b), found.expect("a < b has a last cover"));
            }
        }
        let names = (0..poset.len()).map(|i| i.to_string()).collect();
        Ok(FiniteDiagram {
            poset,
            names,
            objects,
            maps,
        })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// `F(a ≤ b)`; the identity when `a = b`.
    pub fn map(&self, a: usize, b: usize) -> Result<ChainMap> {
        if a == b {
            return Ok(ChainMap::identity(&self.objects[a]));
        }
        self.maps
            .get(&(a, b))
            .cloned()
            .ok_or_else(|| Error::InvalidDiagram(format!("no arrow {a} -> {b}")))
    }

    pub(crate) fn map_ref(&self, a: usize, b: usize) -> Option<&ChainMap> {
        self.maps.get(&(a, b))
    }

    /// Restriction to the objects `idx` (which must carry the induced order).
    pub fn restrict(&self, sub: Poset, idx: &[usize]) -> Result<FiniteDiagram> {
        let objects = idx.iter().map(|&i| self.objects[i].clone()).collect();
        let mut d = FiniteDiagram::from_fn(sub, objects, |a, b| self.map(idx[a], idx[b]))?;
        d.names = idx.iter().map(|&i| self.names[i].clone()).collect();
        Ok(d)
    }

    pub fn from_json(j: &DiagramFile) -> Result<Self> {
        let pos: HashMap<&str, usize> = j
            .objects
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut objects = Vec::new();
        for name in &j.objects {
            let c = j
                .complexes
                .get(name)
                .ok_or_else(|| Error::InvalidDiagram(format!("no complex for {name:?}")))?;
            objects.push(FreeComplex::from_json(c)?);
        }
        let mut rel = Vec::new();
        let mut given: HashMap<(usize, usize), &BTreeMap<String, SparseIntMat>> = HashMap::new();
        for a in &j.arrows {
            let s = *pos
                .get(a.src.as_str())
                .ok_or_else(|| Error::InvalidDiagram(format!("unknown object {:?}", a.src)))?;
            let t = *pos
                .get(a.dst.as_str())
                .ok_or_else(|| Error::InvalidDiagram(format!("unknown object {:?}", a.dst)))?;
            rel.push((s, t));
            given.insert((s, t), &a.map);
        }
        let poset = Poset::from_relations(objects.len(), &rel)?;
        let objs = objects.clone();
        let mut d = FiniteDiagram::from_fn(poset, objects, |a, b| {
            let m = given.get(&(a, b)).ok_or_else(|| {
                Error::InvalidDiagram(format!(
                    "arrow {} -> {} is a cover but was not given",
                    j.objects[a], j.objects[b]
                ))
            })?;
            let mut maps = BTreeMap::new();
            for (k, v) in m.iter() {
                let k: i64 = k
                    .parse()
                    .map_err(|e| Error::Format(format!("degree key {k:?}: {e}")))?;
                maps.insert(k, v.clone());
            }
            ChainMap::new(objs[a].clone(), objs[b].clone(), maps)
        })?;
        // Non-cover arrows must agree with composites.
        for ((s, t), m) in &given {
            if d.poset.covers().contains(&(*s, *t)) {
                continue;
            }
            let mut maps = BTreeMap::new();
            for (k, v) in m.iter() {
                maps.insert(
                    k.parse::<i64>().map_err(|e| Error::Format(e.to_string()))?,
                    v.clone(),
                );
            }
            let f = ChainMap::new(d.objects[*s].clone(), d.objects[*t].clone(), maps)?;
            if f != d.map(*s, *t)? {
                return Err(Error::InvalidDiagram(format!(
                    "arrow {s} -> {t} disagrees with the composite"
                )));
            }
        }
        d.names = j.objects.clone();
        Ok(d)
    }

    /// Random forest-shaped diagram with at most `max_objects` objects and
    /// two-term complexes; used to exercise the engine from a seed.
    pub fn random(rng: &mut impl Rng, max_objects: usize) -> FiniteDiagram {
        let n = rng.gen_range(1..=max_objects.max(1));
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
        let poset = Poset::from_relations(n, &rel).expect("forest");
        let objects: Vec<FreeComplex> = (0..n)
            .map(|_| {
                let (r0, r1) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                FreeComplex::new(0, vec![r0, r1], vec![SparseIntMat::zeros(r0, r1)])
                    .expect("zero differential")
            })
            .collect();
        let mut draw = |rows: usize, cols: usize| {
            let trip: Vec<(usize, usize, Int)> = (0..rows)
                .flat_map(|i| (0..cols).map(move |j| (i, j)))
                .map(|(i, j)| (i, j, Int::from(rng.gen_range(-2i64..=2))))
                .collect();
            SparseIntMat::from_triplets(rows, cols, trip)
        };
        let objs = objects.clone();
        FiniteDiagram::from_fn(poset, objects, |a, b| {
            let maps = (0..=1)
                .map(|k| (k, draw(objs[b].rank(k), objs[a].rank(k))))
                .collect();
            ChainMap::new(objs[a].clone(), objs[b].clone(), maps)
        })
        .expect("forest diagrams are functorial")
    }
}

/// Wire form of a diagram.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowFile>,
    pub complexes: BTreeMap<String, ComplexJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowFile {
    pub src: String,
    pub dst: String,
    /// Degree-keyed matrices.
    #[serde(default)]
    pub map: BTreeMap<String, SparseIntMat>,
}
