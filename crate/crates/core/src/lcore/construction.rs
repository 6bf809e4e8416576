use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::structure::{validate_symmetric, SymStructure};
use crate::chainkit::{tensor, transposition};
use crate::error::{Error, Result};
use crate::intlin::{smith_normal_form, solve_with, Int, SparseVec};
use crate::simpkit::{
    barycentric, fundamental_cycle, SimpComplex, SimplexChain, SimplexId, SimplicialMap,
    Subdivision,
};
use crate::zxmod::{dual_cell_complex, Gen, GenRef, WChain, WTerm, XComplex, XMap};

/// `(front, back, coefficient)` with vertices of a standard simplex.
type StdTerms = Vec<(Vec<usize>, Vec<usize>, Int)>;

/// Higher diagonals `Δ_s` on standard simplices, natural for face maps:
/// `dΔ_s(c) = (-1)^s Δ_s(dc) + (1 + (-1)^s τ) Δ_{s-1}(c)`, with `Δ_0`
/// Alexander-Whitney.
#[derive(Clone, Debug)]
pub struct NaturalDiagonal {
    /// `terms[s][m]` is `Δ_s(ι_m)`.
    terms: Vec<Vec<StdTerms>>,
}

fn face_of(i: usize) -> impl Fn(usize) -> usize {
    move |j| if j < i { j } else { j + 1 }
}

impl NaturalDiagonal {
    pub fn new(max_dim: usize, smax: usize) -> Result<Self> {
        let aw: Vec<StdTerms> = (0..=max_dim)
            .map(|m| {
                (0..=m)
                    .map(|i| ((0..=i).collect(), (i..=m).collect(), Int::ONE))
                    .collect()
            })
            .collect();
        let mut terms = vec![aw];
        for s in 1..=smax {
            let mut level: Vec<StdTerms> = Vec::with_capacity(max_dim + 1);
            for m in 0..=max_dim {
                let x = Self::solve(m, s, level.last(), &terms[s - 1][m])?;
                level.push(x);
            }
            terms.push(level);
        }
        Ok(NaturalDiagonal { terms })
    }

    fn solve(m: usize, s: usize, below: Option<&StdTerms>, prev: &StdTerms) -> Result<StdTerms> {
        let simplex = SimpComplex::from_facets(&[(0..=m).collect()])?;
        let c = simplex.chains();
        let tc = tensor(&c, &c);
        let tau = transposition(&tc, &tc);
        let encode = |t: &StdTerms| -> SparseVec {
            let mut out = SparseVec::new();
            for (f, b, v) in t {
                let (p, q) = (f.len() as i64 - 1, b.len() as i64 - 1);
                let i = simplex.local_index(simplex.id_of(f).expect("face"));
                let j = simplex.local_index(simplex.id_of(b).expect("face"));
                *out.entry(tc.basis.index(p, i, q, j).expect("tensor cell"))
                    .or_default() += v;
            }
            out.retain(|_, v| !v.is_zero());
            out
        };
        let deg = (m + s) as i64;
        // (-1)^s Δ_s(∂ι) + (1 + (-1)^s τ) Δ_{s-1}(ι)
        let mut rhs: StdTerms = Vec::new();
        if let Some(below) = below {
            for i in 0..=m {
                let g = face_of(i);
                let sign = if (s + i).is_multiple_of(2) { 1 } else { -1 };
                for (f, b, v) in below {
                    rhs.push((
                        f.iter().map(|&x| g(x)).collect(),
                        b.iter().map(|&x| g(x)).collect(),
                        Int::from(sign) * v,
                    ));
                }
            }
        }
        let mut rhs = encode(&rhs);
        let p = encode(prev);
        let tp = tau.at(deg - 1).apply_sparse(&p);
        for (i, v) in p {
            *rhs.entry(i).or_default() += &v;
        }
        for (i, v) in tp {
            let e = rhs.entry(i).or_default();
            if s.is_multiple_of(2) {
                *e += &v;
            } else {
                *e -= &v;
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        if rhs.is_empty() {
            return Ok(Vec::new());
        }
        let d = tc.complex.d(deg);
        let dense: Vec<Int> = (0..d.rows())
            .map(|i| rhs.get(&i).cloned().unwrap_or_default())
            .collect();
        let x = solve_with(&smith_normal_form(&d), &dense)?
            .ok_or(Error::DescentObstruction { s, degree: deg - 1 })?;
        Ok(x.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| {
                let (p, i, q, j) = tc.basis.decode(deg, idx);
                let f = simplex
                    .simplex(simplex.id_from_local(p as usize, i))
                    .to_vec();
                let b = simplex
                    .simplex(simplex.id_from_local(q as usize, j))
                    .to_vec();
                (f, b, v)
            })
            .collect())
    }

    pub fn smax(&self) -> usize {
        self.terms.len() - 1
    }

    /// `Δ_s` on a simplex with the given increasing vertex tuple.
    pub fn on_simplex<'a>(
        &'a self,
        s: usize,
        verts: &'a [usize],
    ) -> impl Iterator<Item = (Vec<usize>, Vec<usize>, &'a Int)> + 'a {
        self.terms[s][verts.len() - 1].iter().map(move |(f, b, v)| {
            (
                f.iter().map(|&x| verts[x]).collect(),
                b.iter().map(|&x| verts[x]).collect(),
                v,
            )
        })
    }
}

/// A symmetric Poincaré complex candidate: a complex over a base with a
/// symmetric structure.
#[derive(Clone, Debug)]
pub struct Sapc {
    pub complex: XComplex,
    pub structure: SymStructure,
}

/// `sd(z)` as a chain on `K′`.
pub fn subdivide_chain(sub: &Subdivision, z: &SimplexChain) -> SimplexChain {
    let sd = sub.sd_chains();
    let mut out = SimplexChain::new();
    for (s, v) in z {
        for (t, w) in &sd[*s] {
            *out.entry(*t).or_default() += &(v.clone() * w);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Oriented dual cells `[D(σ)]`: the vertex cells are pieces of `sd(z)`, the
/// rest are read off from boundaries. Errors if they do not fit together.
pub fn dual_cell_orientations(
    sub: &Subdivision,
    z: &SimplexChain,
    n: i64,
) -> Result<Vec<SimplexChain>> {
    let k = &sub.base;
    let mut cells = vec![SimplexChain::new(); k.len()];
    for (id, v) in subdivide_chain(sub, z) {
        cells[sub.first(id)].insert(id, v);
    }
    let mut candidate: Vec<Option<SimplexChain>> = vec![None; k.len()];
    for d in 0..=k.dim().max(0) as usize {
        for tau in k.ids_of_dim(d) {
            if d > 0 {
                cells[tau] = candidate[tau].take().unwrap_or_default();
            }
            let bd = sub.sd.boundary(&cells[tau]);
            let mut parts: BTreeMap<SimplexId, SimplexChain> = BTreeMap::new();
            for (id, v) in bd {
                let f = sub.first(id);
                if f == tau {
                    return Err(Error::Support(format!(
                        "dual cell of {:?} is not a relative cycle",
                        k.simplex(tau)
                    )));
                }
                parts.entry(f).or_default().insert(id, v);
            }
            for &sigma in k.cofaces(tau) {
                let i = k.faces(sigma).iter().position(|&f| f == tau).expect("face");
                let flip = (n - k.simplex_dim(sigma) as i64 + i as i64).rem_euclid(2) == 0;
                let c: SimplexChain = parts
                    .remove(&sigma)
                    .unwrap_or_default()
                    .into_iter()
                    .map(|(id, v)| (id, if flip { -v } else { v }))
                    .collect();
                match &candidate[sigma] {
                    None => candidate[sigma] = Some(c),
                    Some(prev) if *prev == c => {}
                    Some(_) => {
                        return Err(Error::Support(format!(
                            "dual cells disagree at {:?}",
                            k.simplex(sigma)
                        )));
                    }
                }
            }
            if let Some((&f, _)) = parts.iter().next() {
                return Err(Error::Support(format!(
                    "boundary of a dual cell reaches {:?}",
                    k.simplex(f)
                )));
            }
        }
    }
    Ok(cells)
}

/// Symmetric construction from the fundamental cycle of `K`.
pub fn symmetric_construction(k: &SimpComplex) -> Result<Sapc> {
    let z = fundamental_cycle(k)?
        .ok_or_else(|| Error::Precondition("complex has no fundamental cycle".into()))?;
    symmetric_construction_from_cycle(k, &z)
}

/// Symmetric construction from any top-dimensional cycle of `K`.
pub fn symmetric_construction_from_cycle(k: &SimpComplex, z: &SimplexChain) -> Result<Sapc> {
    let n = k.dim();
    if n < 0 {
        return Err(Error::Precondition("empty complex".into()));
    }
    if z.keys().any(|&s| k.simplex_dim(s) as i64 != n) {
        return Err(Error::DimensionMismatch(
            "cycle is not top-dimensional".into(),
        ));
    }
    if !k.boundary(z).is_empty() {
        return Err(Error::NotCycle("input chain has nonzero boundary".into()));
    }
    let base = Arc::new(k.clone());
    let (c, _) = dual_cell_complex(k, base, &SimplicialMap::identity(k))?;
    let sub = barycentric(k);
    let cells = dual_cell_orientations(&sub, z, n)?;
    let smax = n as usize;
    let diag = NaturalDiagonal::new(n as usize, smax)?;
    let gen_of = generator_lookup(&c, &sub);
    let mut structure = SymStructure::zero(n, smax);
    for s in 0..=smax {
        let sign = if (s as i64 * n).rem_euclid(2) == 0 {
            Int::ONE
        } else {
            -Int::ONE
        };
        let phi = &mut structure.phi[s];
        for (sigma, cell) in cells.iter().enumerate() {
            for (rho, v) in cell {
                let coeff = sign.clone() * v;
                for (f, b, w) in diag.on_simplex(s, sub.flag(*rho)) {
                    let a = gen_of[&sub.sd.id_of(&f).expect("face of a flag")];
                    let bb = gen_of[&sub.sd.id_of(&b).expect("face of a flag")];
                    *phi.entry(WTerm {
                        a,
                        b: bb,
                        tau: sigma,
                    })
                    .or_default() += &(coeff.clone() * w);
                }
            }
        }
        phi.retain(|_, v| !v.is_zero());
    }
    let check = validate_symmetric(&c, &structure)?;
    if !check.ok {
        return Err(Error::NotCycle(format!(
            "constructed structure fails at {}",
            check.location
        )));
    }
    Ok(Sapc {
        complex: c,
        structure,
    })
}

fn generator_lookup(c: &XComplex, sub: &Subdivision) -> HashMap<SimplexId, GenRef> {
    let mut out = HashMap::new();
    for id in 0..sub.sd.len() {
        let k = sub.sd.simplex_dim(id) as i64;
        let g = Gen {
            piece: sub.first(id),
            label: vec![id],
        };
        out.insert(
            id,
            (k, c.index_of(k, &g).expect("generator for every flag")),
        );
    }
    out
}

/// `Δ_s` applied to a chain on a complex over the point base whose basis is
/// `chains()` of `k`, with the evaluation sign `(-1)^{s|z|}`.
pub(crate) fn point_family(
    k: &SimpComplex,
    z: &SimplexChain,
    deg: i64,
    diag: &NaturalDiagonal,
) -> Vec<WChain> {
    let smax = diag.smax().min(deg.max(0) as usize);
    (0..=smax)
        .map(|s| {
            let sign = if (s as i64 * deg).rem_euclid(2) == 0 {
                Int::ONE
            } else {
                -Int::ONE
            };
            let mut out = WChain::new();
            for (rho, v) in z {
                for (f, b, w) in diag.on_simplex(s, k.simplex(*rho)) {
                    let a = k.id_of(&f).expect("face");
                    let bb = k.id_of(&b).expect("face");
                    let t = WTerm {
                        a: (f.len() as i64 - 1, k.local_index(a)),
                        b: (b.len() as i64 - 1, k.local_index(bb)),
                        tau: 0,
                    };
                    *out.entry(t).or_default() += &(sign.clone() * v * w);
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        })
        .collect()
}

/// A symmetric pair `(f: C -> D, δφ, φ)`.
#[derive(Clone, Debug)]
pub struct Pair {
    pub map: XMap,
    pub delta: SymStructure,
    pub phi: SymStructure,
}

/// Relative symmetric construction over the point base for `L ⊂ K` and a
/// chain `z` of `K` whose boundary lies in `L`.
pub fn relative_construction(k: &SimpComplex, l: &SimpComplex, z: &SimplexChain) -> Result<Pair> {
    let deg = z
        .keys()
        .next()
        .map_or(k.dim(), |&s| k.simplex_dim(s) as i64);
    if z.keys().any(|&s| k.simplex_dim(s) as i64 != deg) {
        return Err(Error::DimensionMismatch("chain is not homogeneous".into()));
    }
    let l_in_k: Vec<SimplexId> = (0..l.len())
        .map(|s| k.require(l.simplex(s)))
        .collect::<Result<_>>()?;
    let ksub = barycentric(k);
    let lsub = barycentric(l);
    let lift = |id: SimplexId| -> Vec<usize> { lsub.flag(id).iter().map(|&s| l_in_k[s]).collect() };
    let mut back: HashMap<SimplexId, SimplexId> = HashMap::new();
    for id in 0..lsub.sd.len() {
        back.insert(ksub.sd.require(&lift(id))?, id);
    }
    let sz = subdivide_chain(&ksub, z);
    let mut bz = SimplexChain::new();
    for (id, v) in ksub.sd.boundary(&sz) {
        let lid = back
            .get(&id)
            .ok_or_else(|| Error::Support("boundary leaves the subcomplex".into()))?;
        bz.insert(*lid, v);
    }
    let smax = deg.max(0) as usize;
    let diag = NaturalDiagonal::new(deg.max(0) as usize, smax)?;
    let (kc, lc) = (ksub.sd.chains(), lsub.sd.chains());
    let d = XComplex::over_point(&kc);
    let c = XComplex::over_point(&lc);
    let mut maps = BTreeMap::new();
    for p in lc.degrees() {
        let trip: Vec<_> = lsub
            .sd
            .ids_of_dim(p as usize)
            .map(|id| {
                (
                    ksub.sd
                        .local_index(ksub.sd.require(&lift(id)).expect("lifted")),
                    lsub.sd.local_index(id),
                    Int::ONE,
                )
            })
            .collect();
        maps.insert(
            p,
            crate::intlin::SparseIntMat::from_triplets(kc.rank(p), lc.rank(p), trip),
        );
    }
    let map = XMap::new(c, d, maps)?;
    let delta = SymStructure {
        n: deg,
        phi: point_family(&ksub.sd, &sz, deg, &diag),
    };
    let phi = SymStructure {
        n: deg - 1,
        phi: point_family(&lsub.sd, &bz, deg - 1, &diag),
    };
    Ok(Pair { map, delta, phi })
}
