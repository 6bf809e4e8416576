use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::chainkit::{is_equivalence, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::hoengine::{hocolim_total, FiniteDiagram, Poset, Total};
use crate::intlin::{Int, SparseIntMat};
use crate::simpkit::{parse_simplex_key, simplex_key, SimpComplex, SimplexId, StarOpen};
use crate::zxmod::XComplex;

/// `C̃(U)` computed as the homotopy colimit of `τ ↦ [C][τ]` over `τ ∈ U`.
#[derive(Clone, Debug)]
pub struct StarEvaluation {
    /// Members of `U`, in the order used as poset elements.
    pub members: Vec<SimplexId>,
    pub diagram: FiniteDiagram,
    pub total: Total,
    /// Structure map `[C][τ] -> hocolim` for each member.
    pub structure: Vec<ChainMap>,
    /// Strict model: span of generators whose piece lies in `U`.
    pub strict: FreeComplex,
    /// Indices of those generators in the assembly.
    pub strict_index: BTreeMap<i64, Vec<usize>>,
    /// `hocolim -> strict`, summing the structure inclusions.
    pub comparison: ChainMap,
}

impl StarEvaluation {
    pub fn complex(&self) -> &FreeComplex {
        &self.total.complex
    }
}

/// Matrix of the inclusion of one index list into a larger one, per degree.
pub(crate) fn inclusion(
    small: &BTreeMap<i64, Vec<usize>>,
    big: &BTreeMap<i64, Vec<usize>>,
    source: &FreeComplex,
    target: &FreeComplex,
) -> Result<ChainMap> {
    let mut maps = BTreeMap::new();
    for (&k, ids) in small {
        if ids.is_empty() {
            continue;
        }
        let b = &big[&k];
        let trip: Vec<_> = ids
            .iter()
            .enumerate()
            .map(|(j, g)| (b.binary_search(g).expect("nested index lists"), j, Int::ONE))
            .collect();
        maps.insert(k, SparseIntMat::from_triplets(b.len(), ids.len(), trip));
    }
    ChainMap::new(source.clone(), target.clone(), maps)
}

type Bracket = (FreeComplex, BTreeMap<i64, Vec<usize>>);

pub(crate) fn brackets(c: &XComplex) -> Result<Vec<Bracket>> {
    (0..c.base().len()).map(|s| c.bracket(s)).collect()
}

pub fn evaluate(c: &XComplex, u: &StarOpen) -> Result<StarEvaluation> {
    let br = brackets(c)?;
    evaluate_with(c, u, &br)
}

pub(crate) fn evaluate_with(c: &XComplex, u: &StarOpen, br: &[Bracket]) -> Result<StarEvaluation> {
    let base = c.base();
    let members: Vec<SimplexId> = u.members().iter().copied().collect();
    if members.iter().any(|&s| s >= base.len()) {
        return Err(Error::UnknownSimplex("open set outside the base".into()));
    }
    let pos: HashMap<SimplexId, usize> = members.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let rel: Vec<(usize, usize)> = members
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| {
            base.faces(s)
                .iter()
                .filter_map(|f| pos.get(f))
                .map(move |&j| (i, j))
                .collect::<Vec<_>>()
        })
        .collect();
    let poset = Poset::from_relations(members.len(), &rel)?;
    let objects: Vec<FreeComplex> = members.iter().map(|&s| br[s].0.clone()).collect();
    let diagram = FiniteDiagram::from_fn(poset, objects, |a, b| {
        let (sa, sb) = (members[a], members[b]);
        inclusion(&br[sa].1, &br[sb].1, &br[sa].0, &br[sb].0)
    })?;
    let total = hocolim_total(&diagram)?;
    let strict_index = c.select(|p| u.contains(p));
    let strict = c.assemble().span_subcomplex(&strict_index)?;
    let mut structure = Vec::new();
    for i in 0..members.len() {
        let part = total
            .parts
            .iter()
            .position(|p| p.chain == [i])
            .expect("vertex part");
        structure.push(part_inclusion(
            &total,
            &diagram.objects,
            part,
            &diagram.objects[i],
        )?);
    }
    let mut maps = BTreeMap::new();
    for t in total.complex.degrees() {
        let off = total.offsets(&diagram.objects, t);
        let mut trip = Vec::new();
        for (i, p) in total.parts.iter().enumerate() {
            if p.shift != 0 {
                continue;
            }
            let s = members[p.obj];
            if let Some(ids) = br[s].1.get(&t) {
                let b = &strict_index[&t];
                for (j, g) in ids.iter().enumerate() {
                    trip.push((
                        b.binary_search(g).expect("bracket inside the open set"),
                        off[i] + j,
                        Int::ONE,
                    ));
                }
            }
        }
        maps.insert(
            t,
            SparseIntMat::from_triplets(strict.rank(t), total.complex.rank(t), trip),
        );
    }
    let comparison = ChainMap::new(total.complex.clone(), strict.clone(), maps)?;
    Ok(StarEvaluation {
        members,
        diagram,
        total,
        structure,
        strict,
        strict_index,
        comparison,
    })
}

fn part_inclusion(
    total: &Total,
    objects: &[FreeComplex],
    part: usize,
    obj: &FreeComplex,
) -> Result<ChainMap> {
    let maps = obj
        .degrees()
        .map(|k| {
            let off = total.offsets(objects, k)[part];
            let trip: Vec<_> = (0..obj.rank(k)).map(|j| (off + j, j, Int::ONE)).collect();
            (
                k,
                SparseIntMat::from_triplets(total.complex.rank(k), obj.rank(k), trip),
            )
        })
        .collect();
    ChainMap::new(obj.clone(), total.complex.clone(), maps)
}

/// Map of evaluations induced by `U ⊂ V`.
pub fn restriction_map(small: &StarEvaluation, big: &StarEvaluation) -> Result<ChainMap> {
    if small
        .members
        .iter()
        .any(|s| big.members.binary_search(s).is_err())
    {
        return Err(Error::Precondition(
            "first open set is not contained in the second".into(),
        ));
    }
    chain_map_between(small, big, Some, |_, _, m| Ok(ChainMap::identity(m)))
}

/// Map of hocolim totals given an order-preserving map of members and maps
/// of values; degenerate image chains go to zero.
pub(crate) fn chain_map_between(
    src: &StarEvaluation,
    dst: &StarEvaluation,
    elem: impl Fn(SimplexId) -> Option<SimplexId>,
    value: impl Fn(SimplexId, SimplexId, &FreeComplex) -> Result<ChainMap>,
) -> Result<ChainMap> {
    let dst_pos: HashMap<SimplexId, usize> = dst
        .members
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();
    let dst_part: HashMap<Vec<usize>, usize> = dst
        .total
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.chain.clone(), i))
        .collect();
    let mut blocks: Vec<(usize, usize, ChainMap)> = Vec::new();
    for (i, p) in src.total.parts.iter().enumerate() {
        let img: Option<Vec<usize>> = p
            .chain
            .iter()
            .map(|&e| elem(src.members[e]).and_then(|s| dst_pos.get(&s).copied()))
            .collect();
        let img = img
            .ok_or_else(|| Error::Precondition("member maps outside the target open set".into()))?;
        if img.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let j = dst_part[&img];
        let (s, t) = (src.members[p.chain[0]], dst.members[img[0]]);
        blocks.push((i, j, value(s, t, &src.diagram.objects[p.obj])?));
    }
    let mut maps = BTreeMap::new();
    for t in src.total.complex.degrees() {
        let (so, doff) = (
            src.total.offsets(&src.diagram.objects, t),
            dst.total.offsets(&dst.diagram.objects, t),
        );
        let mut trip = Vec::new();
        for (i, j, m) in &blocks {
            let k = t - src.total.parts[*i].shift;
            for (r, c, v) in m.at(k).entries() {
                trip.push((doff[*j] + r, so[*i] + c, v.clone()));
            }
        }
        maps.insert(
            t,
            SparseIntMat::from_triplets(dst.total.complex.rank(t), src.total.complex.rank(t), trip),
        );
    }
    ChainMap::new(src.total.complex.clone(), dst.total.complex.clone(), maps)
}

/// Outcome of a Mayer-Vietoris check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvReport {
    pub ok: bool,
    pub intersection_rank: usize,
    pub union_rank: usize,
}

/// Whether `C̃(U∩V) -> C̃(U) ⊕ C̃(V) -> C̃(U∪V)` is a homotopy pushout.
pub fn mv_check(c: &XComplex, u: &StarOpen, v: &StarOpen) -> Result<MvReport> {
    let br = brackets(c)?;
    let (i, a, b, j) = (u.intersect(v), u, v, u.union(v));
    let (ei, ea, eb, ej) = (
        evaluate_with(c, &i, &br)?,
        evaluate_with(c, a, &br)?,
        evaluate_with(c, b, &br)?,
        evaluate_with(c, &j, &br)?,
    );
    let (ia, ib) = (restriction_map(&ei, &ea)?, restriction_map(&ei, &eb)?);
    let (ka, kb) = (restriction_map(&ea, &ej)?, restriction_map(&eb, &ej)?);
    let sum = FreeComplex::direct_sum(&[ea.complex(), eb.complex()]);
    // A -> B ⊕ C by (i, -j)
    let mut to_sum = BTreeMap::new();
    for t in ei.complex().degrees() {
        let ra = ea.complex().rank(t);
        let m = SparseIntMat::from_blocks(
            sum.rank(t),
            ei.complex().rank(t),
            &[(0, 0, &ia.at(t)), (ra, 0, &ib.at(t).neg())],
        );
        to_sum.insert(t, m);
    }
    let g = ChainMap::new(ei.complex().clone(), sum.clone(), to_sum)?;
    let cone = crate::chainkit::mapping_cone(&g);
    // Cone(g) -> D by (k_a, k_b, 0); exact since k_a i = k_b j
    let mut maps = BTreeMap::new();
    for t in cone.degrees() {
        let ra = ea.complex().rank(t);
        let m = SparseIntMat::from_blocks(
            ej.complex().rank(t),
            cone.rank(t),
            &[(0, 0, &ka.at(t)), (0, ra, &kb.at(t))],
        );
        maps.insert(t, m);
    }
    let h = ChainMap::new(cone, ej.complex().clone(), maps)?;
    Ok(MvReport {
        ok: is_equivalence(&h),
        intersection_rank: ei.members.len(),
        union_rank: ej.members.len(),
    })
}

/// `{"stars_of": ["σ-key", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StarOpenFile {
    pub stars_of: Vec<String>,
}

impl StarOpenFile {
    pub fn resolve(&self, k: &SimpComplex) -> Result<StarOpen> {
        let ids = self
            .stars_of
            .iter()
            .map(|key| k.require(&parse_simplex_key(key)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(StarOpen::of_simplices(k, &ids))
    }

    pub fn of(k: &SimpComplex, minimal: &[SimplexId]) -> Self {
        StarOpenFile {
            stars_of: minimal.iter().map(|&s| simplex_key(k.simplex(s))).collect(),
        }
    }
}
