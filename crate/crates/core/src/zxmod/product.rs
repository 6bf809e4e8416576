use std::collections::{BTreeMap, HashMap};

use super::XComplex;
use crate::chainkit::{adjoint_from_terms, tensor, ChainMap, FreeComplex, TensorComplex};
use crate::error::{Error, Result};
use crate::hoengine::{coend, colim, Bifunctor, Colimit, FiniteDiagram, Poset};
use crate::intlin::{Int, SparseIntMat};
use crate::simpkit::{ChainBasis, SimplexId};

/// A basis element `(degree, index)` of an assembled complex.
pub type GenRef = (i64, usize);

/// Basis element `a ⊗ b ⊗ e_τ` of the weighted product, `τ ≤ piece(a) ∩ piece(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WTerm {
    pub a: GenRef,
    pub b: GenRef,
    pub tau: SimplexId,
}

/// Sparse element of the weighted product.
pub type WChain = BTreeMap<WTerm, Int>;

type ColLists = HashMap<i64, Vec<Vec<(usize, Int)>>>;

fn col_lists(c: &FreeComplex) -> ColLists {
    c.degrees().map(|k| (k, c.d(k).col_lists())).collect()
}

/// Two complexes over the same base, with cached differentials.
pub struct ProductContext<'a> {
    pub c: &'a XComplex,
    pub d: &'a XComplex,
    c_cols: ColLists,
    d_cols: ColLists,
}

impl<'a> ProductContext<'a> {
    pub fn new(c: &'a XComplex, d: &'a XComplex) -> Result<Self> {
        if c.base() != d.base() {
            return Err(Error::Precondition(
                "chain product needs a common base".into(),
            ));
        }
        Ok(ProductContext {
            c,
            d,
            c_cols: col_lists(c.assemble()),
            d_cols: col_lists(d.assemble()),
        })
    }

    pub fn degree(&self, t: &WTerm) -> i64 {
        t.a.0 + t.b.0 + self.c.base().simplex_dim(t.tau) as i64
    }

    /// Differential of the weighted product:
    /// `d(z ⊗ e_τ) = dz ⊗ e_τ + (-1)^|z| Σ_i (-1)^i z ⊗ e_{∂_i τ}`.
    pub fn boundary(&self, x: &WChain) -> WChain {
        let base = self.c.base();
        let mut out = WChain::new();
        for (t, v) in x {
            let (p, q) = (t.a.0, t.b.0);
            if let Some(cols) = self.c_cols.get(&p) {
                for (i, c) in &cols[t.a.1] {
                    out.entry(WTerm {
                        a: (p - 1, *i),
                        ..*t
                    })
                    .or_default()
                    .add_mul(v, c);
                }
            }
            if let Some(cols) = self.d_cols.get(&q) {
                let s = if p.rem_euclid(2) == 0 { v.clone() } else { -v };
                for (j, c) in &cols[t.b.1] {
                    out.entry(WTerm {
                        b: (q - 1, *j),
                        ..*t
                    })
                    .or_default()
                    .add_mul(&s, c);
                }
            }
            if base.simplex_dim(t.tau) > 0 {
                for (i, &f) in base.faces(t.tau).iter().enumerate() {
                    let s = if (p + q + i as i64).rem_euclid(2) == 0 {
                        v.clone()
                    } else {
                        -v
                    };
                    *out.entry(WTerm { tau: f, ..*t }).or_default() += &s;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Errors unless `t` is a basis element of the weighted product.
    pub fn check_term(&self, t: &WTerm) -> Result<()> {
        let base = self.c.base();
        let ok = self.c.gens(t.a.0).len() > t.a.1
            && self.d.gens(t.b.0).len() > t.b.1
            && t.tau < base.len()
            && base.is_face(t.tau, self.piece_c(t.a))
            && base.is_face(t.tau, self.piece_d(t.b));
        if ok {
            Ok(())
        } else {
            Err(Error::Support(format!(
                "term {t:?} is not a basis element of the product"
            )))
        }
    }

    fn piece_c(&self, g: GenRef) -> SimplexId {
        self.c.piece(g.0, g.1)
    }

    fn piece_d(&self, g: GenRef) -> SimplexId {
        self.d.piece(g.0, g.1)
    }

    /// All pairs `(a, b)` whose pieces meet, with the meet.
    fn meeting_pairs(&self) -> Vec<(GenRef, GenRef, SimplexId)> {
        let base = self.c.base();
        let mut out = Vec::new();
        for (&p, ga) in self.c.all_gens() {
            for (&q, gb) in self.d.all_gens() {
                for (i, x) in ga.iter().enumerate() {
                    for (j, y) in gb.iter().enumerate() {
                        if let Some(m) = base.meet(x.piece, y.piece) {
                            out.push(((p, i), (q, j), m));
                        }
                    }
                }
            }
        }
        out
    }
}

/// A finite model with an explicit basis per degree.
#[derive(Clone, Debug)]
pub struct Model<K: Ord + Clone> {
    pub complex: FreeComplex,
    pub basis: BTreeMap<i64, Vec<K>>,
    index: HashMap<K, usize>,
}

impl<K: Ord + Clone + std::hash::Hash> Model<K> {
    fn build(basis: BTreeMap<i64, Vec<K>>, d: impl Fn(&K) -> Vec<(K, Int)>) -> Result<Self> {
        let index: HashMap<K, usize> = basis
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(i, k)| (k.clone(), i)))
            .collect();
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&n, keys) in &basis {
            ranks.insert(n, keys.len());
            let rows = basis.get(&(n - 1)).map_or(0, Vec::len);
            let mut trip = Vec::new();
            for (j, k) in keys.iter().enumerate() {
                for (t, v) in d(k) {
                    let i = *index
                        .get(&t)
                        .ok_or_else(|| Error::InvalidComplex("boundary leaves the model".into()))?;
                    trip.push((i, j, v));
                }
            }
            diffs.insert(n, SparseIntMat::from_triplets(rows, keys.len(), trip));
        }
        Ok(Model {
            complex: FreeComplex::from_maps(&ranks, &diffs)?,
            basis,
            index,
        })
    }

    pub fn position(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }
}

/// Colimit model: span of `a ⊗ b` in `assemble(C) ⊗ assemble(D)` over
/// pairs whose pieces meet.
pub fn colim_model(ctx: &ProductContext) -> Result<Model<(GenRef, GenRef)>> {
    let mut basis: BTreeMap<i64, Vec<(GenRef, GenRef)>> = BTreeMap::new();
    for (a, b, _) in ctx.meeting_pairs() {
        basis.entry(a.0 + b.0).or_default().push((a, b));
    }
    for v in basis.values_mut() {
        v.sort();
    }
    Model::build(basis, |&(a, b)| {
        let any = ctx
            .c
            .base()
            .meet(ctx.piece_c(a), ctx.piece_d(b))
            .expect("meeting pair");
        ctx.boundary(&WChain::from([(WTerm { a, b, tau: any }, Int::ONE)]))
            .into_iter()
            .filter(|(t, _)| t.tau == any)
            .map(|(t, v)| ((t.a, t.b), v))
            .collect()
    })
}

/// Weighted (coend) model with basis `a ⊗ b ⊗ e_τ`.
pub fn weighted_model(ctx: &ProductContext) -> Result<Model<WTerm>> {
    let base = ctx.c.base();
    let mut basis: BTreeMap<i64, Vec<WTerm>> = BTreeMap::new();
    for (a, b, m) in ctx.meeting_pairs() {
        for tau in base.closure(m) {
            let t = WTerm { a, b, tau };
            basis.entry(ctx.degree(&t)).or_default().push(t);
        }
    }
    for v in basis.values_mut() {
        v.sort();
    }
    Model::build(basis, |t| {
        ctx.boundary(&WChain::from([(*t, Int::ONE)]))
            .into_iter()
            .collect()
    })
}

/// `a ⊗ b ⊗ e_v ↦ a ⊗ b` on vertices, zero on higher cells.
pub fn comparison(
    ctx: &ProductContext,
    w: &Model<WTerm>,
    c: &Model<(GenRef, GenRef)>,
) -> Result<ChainMap> {
    let base = ctx.c.base();
    let mut maps = BTreeMap::new();
    for (&n, keys) in &w.basis {
        let trip = keys
            .iter()
            .enumerate()
            .filter(|(_, t)| base.simplex_dim(t.tau) == 0)
            .map(|(j, t)| {
                (
                    c.position(&(t.a, t.b)).expect("pair in the colimit model"),
                    j,
                    Int::ONE,
                )
            });
        maps.insert(
            n,
            SparseIntMat::from_triplets(c.complex.rank(n), keys.len(), trip.collect::<Vec<_>>()),
        );
    }
    ChainMap::new(w.complex.clone(), c.complex.clone(), maps)
}

/// Face poset in diagram orientation: an arrow from each simplex to each
/// of its codimension-one faces.
fn opposite_face_poset(ctx: &ProductContext) -> Poset {
    let base = ctx.c.base();
    let rel: Vec<(usize, usize)> = (0..base.len())
        .flat_map(|s| base.faces(s).iter().map(move |&f| (s, f)))
        .collect();
    Poset::from_relations(base.len(), &rel).expect("face poset")
}

struct Brackets {
    tc: Vec<TensorComplex>,
    idx_c: Vec<BTreeMap<i64, Vec<usize>>>,
    idx_d: Vec<BTreeMap<i64, Vec<usize>>>,
}

fn brackets(ctx: &ProductContext) -> Result<Brackets> {
    let n = ctx.c.base().len();
    let (mut tc, mut idx_c, mut idx_d) = (Vec::new(), Vec::new(), Vec::new());
    for s in 0..n {
        let (bc, ic) = ctx.c.bracket(s)?;
        let (bd, id) = ctx.d.bracket(s)?;
        tc.push(tensor(&bc, &bd));
        idx_c.push(ic);
        idx_d.push(id);
    }
    Ok(Brackets { tc, idx_c, idx_d })
}

fn pos_in(idx: &BTreeMap<i64, Vec<usize>>, k: i64, g: usize) -> usize {
    idx[&k].binary_search(&g).expect("bracket inclusion")
}

impl Brackets {
    /// Inclusion `[C][big] ⊗ [D][big] -> [C][small] ⊗ [D][small]` for `small ≤ big`,
    /// as a map of basis positions in degree `n`.
    fn include(&self, big: usize, small: usize, n: i64, x: usize) -> usize {
        let (p, i, q, j) = self.tc[big].basis.decode(n, x);
        let gi = self.idx_c[big][&p][i];
        let gj = self.idx_d[big][&q][j];
        self.tc[small]
            .basis
            .index(
                p,
                pos_in(&self.idx_c[small], p, gi),
                q,
                pos_in(&self.idx_d[small], q, gj),
            )
            .expect("included pair")
    }
}

/// The colimit `colim_σ [C][σ] ⊗ [D][σ]` computed by the diagram engine.
pub fn colim_via_engine(ctx: &ProductContext) -> Result<Colimit> {
    let br = brackets(ctx)?;
    let poset = opposite_face_poset(ctx);
    let objects: Vec<FreeComplex> = br.tc.iter().map(|t| t.complex.clone()).collect();
    let diagram = FiniteDiagram::from_fn(poset, objects.clone(), |big, small| {
        let maps = objects[big]
            .degrees()
            .map(|n| {
                let trip: Vec<_> = (0..objects[big].rank(n))
                    .map(|x| (br.include(big, small, n, x), x, Int::ONE))
                    .collect();
                (
                    n,
                    SparseIntMat::from_triplets(objects[small].rank(n), objects[big].rank(n), trip),
                )
            })
            .collect();
        ChainMap::new(objects[big].clone(), objects[small].clone(), maps)
    })?;
    colim(&diagram)
}

/// The coend `∫^σ [C][σ] ⊗ [D][σ] ⊗ Δ_*(σ)` computed by the diagram engine.
pub fn coend_via_engine(ctx: &ProductContext) -> Result<Colimit> {
    let base = ctx.c.base();
    let br = brackets(ctx)?;
    let n = base.len();
    let rel: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| base.faces(s).iter().map(move |&f| (f, s)))
        .collect();
    let poset = Poset::from_relations(n, &rel)?;
    let simplex_chains: Vec<(FreeComplex, ChainBasis)> = (0..n)
        .map(|a| {
            let cl = base.closure(a).into_iter().collect();
            base.chains_on(&cl, &Default::default())
        })
        .collect::<Result<_>>()?;
    let mut values: HashMap<(usize, usize), TensorComplex> = HashMap::new();
    for b in 0..n {
        for a in base.closure(b) {
            values.insert((b, a), tensor(&br.tc[b].complex, &simplex_chains[a].0));
        }
    }
    let value = |b: usize, a: usize| values[&(b, a)].complex.clone();
    let act = |(a, b): (usize, usize), (c, d): (usize, usize)| -> Result<ChainMap> {
        let (src, dst) = (&values[&(b, a)], &values[&(d, c)]);
        let mut maps = BTreeMap::new();
        for deg in src.complex.degrees() {
            let mut trip = Vec::new();
            for x in 0..src.complex.rank(deg) {
                let (p, inner, r, y) = src.basis.decode(deg, x);
                let inner_t = br.include(b, d, p, inner);
                let sid = simplex_chains[a].1.id_at(r, y);
                let y_t = simplex_chains[c].1.position(sid).expect("face of a face");
                trip.push((
                    dst.basis.index(p, inner_t, r, y_t).expect("target cell"),
                    x,
                    Int::ONE,
                ));
            }
            maps.insert(
                deg,
                SparseIntMat::from_triplets(dst.complex.rank(deg), src.complex.rank(deg), trip),
            );
        }
        ChainMap::new(src.complex.clone(), dst.complex.clone(), maps)
    };
    coend(
        &poset,
        &Bifunctor {
            value: &value,
            act: &act,
        },
    )
}

/// A cycle of the chain product, stored in the weighted model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XCycle {
    pub n: i64,
    pub terms: WChain,
}

impl XCycle {
    pub fn new(ctx: &ProductContext, n: i64, terms: WChain) -> Result<Self> {
        for t in terms.keys() {
            if ctx.degree(t) != n {
                return Err(Error::DimensionMismatch(format!(
                    "term of degree {} in a degree-{n} cycle",
                    ctx.degree(t)
                )));
            }
            ctx.check_term(t)?;
        }
        let bd = ctx.boundary(&terms);
        if !bd.is_empty() {
            return Err(Error::NotCycle(format!(
                "{} nonzero boundary terms",
                bd.len()
            )));
        }
        Ok(XCycle { n, terms })
    }

    /// Image under the comparison to `assemble(C) ⊗ assemble(D)`, as
    /// `(|a|, a, b, coefficient)` terms.
    pub fn assembled_terms(&self, ctx: &ProductContext) -> Vec<(i64, usize, usize, Int)> {
        let base = ctx.c.base();
        let mut acc: BTreeMap<(GenRef, GenRef), Int> = BTreeMap::new();
        for (t, v) in &self.terms {
            if base.simplex_dim(t.tau) == 0 {
                *acc.entry((t.a, t.b)).or_default() += v;
            }
        }
        acc.into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((a, b), v)| (a.0, a.1, b.1, v))
            .collect()
    }
}

/// Local piece of a product cycle at `σ`.
#[derive(Clone, Debug)]
pub struct LocalProjection {
    pub sigma: SimplexId,
    /// `C(σ)`.
    pub local: FreeComplex,
    /// `[D][σ]`.
    pub bracket: FreeComplex,
    /// Degree `n - |σ|`.
    pub degree: i64,
    /// `(|a|, a, b, v)` in the bases of `local` and `bracket`.
    pub terms: Vec<(i64, usize, usize, Int)>,
}

impl LocalProjection {
    /// Adjoint `C(σ)^{m-*} -> [D][σ]`.
    pub fn adjoint(&self) -> Result<ChainMap> {
        adjoint_from_terms(
            &self.local,
            &self.bracket,
            self.degree,
            self.terms.iter().cloned(),
        )
    }
}

/// The `e_σ` component of `φ`, with the first factor pushed to `C(σ)`.
pub fn local_projection(
    ctx: &ProductContext,
    phi: &XCycle,
    sigma: SimplexId,
) -> Result<LocalProjection> {
    let base = ctx.c.base();
    let (local, li) = ctx.c.local(sigma)?;
    let (bracket, bi) = ctx.d.bracket(sigma)?;
    let terms = phi
        .terms
        .iter()
        .filter(|(t, _)| t.tau == sigma && ctx.piece_c(t.a) == sigma)
        .map(|(t, v)| {
            (
                t.a.0,
                pos_in(&li, t.a.0, t.a.1),
                pos_in(&bi, t.b.0, t.b.1),
                v.clone(),
            )
        })
        .collect();
    Ok(LocalProjection {
        sigma,
        local,
        bracket,
        degree: phi.n - base.simplex_dim(sigma) as i64,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainkit::is_equivalence;
    use crate::simpkit::{SimpComplex, SimplicialMap};
    use crate::zxmod::dual_cell_complex;
    use std::sync::Arc;

    #[test]
    fn generator_products() {
        let x = Arc::new(SimpComplex::from_facets(&[vec![0, 1], vec![2]]).unwrap());
        let e = x.id_of(&[0, 1]).unwrap();
        let v2 = x.id_of(&[2]).unwrap();
        let v0 = x.id_of(&[0]).unwrap();
        let me = XComplex::free_generator(x.clone(), e, 1).unwrap();
        let m2 = XComplex::free_generator(x.clone(), v2, 0).unwrap();
        let m0 = XComplex::free_generator(x.clone(), v0, 2).unwrap();
        let ctx = ProductContext::new(&me, &m2).unwrap();
        assert!(colim_model(&ctx).unwrap().complex.is_zero());
        let ctx = ProductContext::new(&me, &m0).unwrap();
        assert_eq!(colim_model(&ctx).unwrap().complex, FreeComplex::point(3));
        assert_eq!(
            colim_via_engine(&ctx).unwrap().complex,
            FreeComplex::point(3)
        );
    }

    #[test]
    fn models_agree_on_the_hexagon() {
        let x = Arc::new(SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap());
        let (c, _) = dual_cell_complex(&x, x.clone(), &SimplicialMap::identity(&x)).unwrap();
        let ctx = ProductContext::new(&c, &c).unwrap();
        let cm = colim_model(&ctx).unwrap();
        let wm = weighted_model(&ctx).unwrap();
        assert!(is_equivalence(&comparison(&ctx, &wm, &cm).unwrap()));
        let eng = colim_via_engine(&ctx).unwrap();
        for k in cm.complex.degrees() {
            assert_eq!(eng.complex.rank(k), cm.complex.rank(k));
        }
        let co = coend_via_engine(&ctx).unwrap();
        for k in wm.complex.degrees() {
            assert_eq!(co.complex.rank(k), wm.complex.rank(k));
        }
        assert_eq!(co.complex.homology_all(), wm.complex.homology_all());
    }
}
