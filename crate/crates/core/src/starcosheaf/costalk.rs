use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::eval::{brackets, chain_map_between, evaluate_with, inclusion};
use crate::chainkit::{is_equivalence, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::simpkit::{barycentric, SimplexId, SimplicialMap, StarOpen, Subdivision};
use crate::zxmod::{Gen, XComplex};

/// Costalk `S^{|τ|} C(τ)` with the excision certificate.
#[derive(Clone, Debug)]
pub struct Costalk {
    pub complex: FreeComplex,
    /// For each `σ ≥ τ`: whether the local pair at the barycenter of `τ`
    /// inside `σ` has the expected homology (`Z` in degree `|τ|` for
    /// `σ = τ`, acyclic otherwise).
    pub certificate: Vec<(SimplexId, bool)>,
}

impl Costalk {
    pub fn certified(&self) -> bool {
        self.certificate.iter().all(|(_, ok)| *ok)
    }
}

/// Chains of `(star of τ̂, link of τ̂)` inside the subdivided closed simplex `σ`.
fn local_pair(sub: &Subdivision, tau: SimplexId, sigma: SimplexId) -> Result<FreeComplex> {
    let base = &sub.base;
    let inside = |id: usize| sub.flag(id).iter().all(|&x| base.is_face(x, sigma));
    let with_tau = |id: usize| {
        sub.flag(id).contains(&tau) || {
            let f = sub.flag(id);
            let mut g: Vec<usize> = f.to_vec();
            g.push(tau);
            g.sort_unstable();
            g.dedup();
            sub.sd.id_of(&g).is_some()
        }
    };
    let star: BTreeSet<usize> = (0..sub.sd.len())
        .filter(|&id| inside(id) && with_tau(id))
        .collect();
    let link: BTreeSet<usize> = star
        .iter()
        .copied()
        .filter(|&id| !sub.flag(id).contains(&tau))
        .collect();
    Ok(sub.sd.rel_chains(&star, &link)?.0)
}

pub fn costalk(c: &XComplex, tau: SimplexId) -> Result<Costalk> {
    let base = c.base();
    if tau >= base.len() {
        return Err(Error::UnknownSimplex(format!("#{tau}")));
    }
    let sub = barycentric(base);
    let dim = base.simplex_dim(tau) as i64;
    let mut certificate = Vec::new();
    for sigma in base.star(tau) {
        let h = local_pair(&sub, tau, sigma)?;
        let ok = if sigma == tau {
            h.betti_numbers() == [(dim, 1)].into()
                && h.homology_all().values().all(|g| g.torsion.is_empty())
        } else {
            h.is_acyclic()
        };
        certificate.push((sigma, ok));
    }
    let (local, _) = c.local(tau)?;
    Ok(Costalk {
        complex: local.shift(dim),
        certificate,
    })
}

/// Comparison of `C̃(f⁻¹U)` with `(f_*C)~(U)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalityReport {
    /// The induced map of homotopy colimits is an equivalence.
    pub equivalence: bool,
    /// The strict models are identified basis by basis.
    pub strict_isomorphism: bool,
    pub injective: bool,
    pub ok: bool,
}

pub fn naturality_eta(
    f: &SimplicialMap,
    c: &XComplex,
    target: &std::sync::Arc<crate::simpkit::SimpComplex>,
    u: &StarOpen,
) -> Result<NaturalityReport> {
    let pushed = c.pushforward(f, target.clone())?;
    let pre = StarOpen::new(
        c.base(),
        (0..c.base().len())
            .filter(|&s| u.contains(f.image(s)))
            .collect(),
    )?;
    let (bx, by) = (brackets(c)?, brackets(&pushed)?);
    let ex = evaluate_with(c, &pre, &bx)?;
    let ey = evaluate_with(&pushed, u, &by)?;
    let eta = chain_map_between(
        &ex,
        &ey,
        |s| Some(f.image(s)),
        |s, t, src| {
            // generator indices of C renamed to those of f_*C
            let moved: std::collections::BTreeMap<i64, Vec<usize>> = bx[s]
                .1
                .iter()
                .map(|(&k, ids)| {
                    let to = |&g: &usize| {
                        let x = &c.gens(k)[g];
                        pushed
                            .index_of(
                                k,
                                &Gen {
                                    piece: f.image(x.piece),
                                    label: x.label.clone(),
                                },
                            )
                            .expect("pushed generator")
                    };
                    (k, ids.iter().map(to).collect())
                })
                .collect();
            inclusion(&moved, &by[t].1, src, &by[t].0)
        },
    )?;
    let equivalence = is_equivalence(&eta);
    let strict_isomorphism = strict_match(
        f,
        c,
        &pushed,
        &ex.strict_index,
        &ey.strict_index,
        &ex.strict,
        &ey.strict,
    );
    let injective = f.is_injective();
    let ok = equivalence && (!injective || strict_isomorphism);
    Ok(NaturalityReport {
        equivalence,
        strict_isomorphism,
        injective,
        ok,
    })
}

/// Whether generators of the two strict models correspond label by label
/// through a chain isomorphism.
fn strict_match(
    f: &SimplicialMap,
    c: &XComplex,
    pushed: &XComplex,
    ix: &std::collections::BTreeMap<i64, Vec<usize>>,
    iy: &std::collections::BTreeMap<i64, Vec<usize>>,
    sx: &FreeComplex,
    sy: &FreeComplex,
) -> bool {
    let mut maps = std::collections::BTreeMap::new();
    for (&k, xs) in ix {
        let ys = iy.get(&k).cloned().unwrap_or_default();
        if xs.len() != ys.len() {
            return false;
        }
        let by_gen: std::collections::HashMap<&Gen, usize> = ys
            .iter()
            .enumerate()
            .map(|(j, &g)| (&pushed.gens(k)[g], j))
            .collect();
        let mut trip = Vec::new();
        for (i, &g) in xs.iter().enumerate() {
            let x = &c.gens(k)[g];
            match by_gen.get(&Gen {
                piece: f.image(x.piece),
                label: x.label.clone(),
            }) {
                Some(&j) => trip.push((j, i, crate::intlin::Int::ONE)),
                None => return false,
            }
        }
        maps.insert(
            k,
            crate::intlin::SparseIntMat::from_triplets(ys.len(), xs.len(), trip),
        );
    }
    if iy.iter().any(|(k, v)| !v.is_empty() && !ix.contains_key(k)) {
        return false;
    }
    ChainMap::new(sx.clone(), sy.clone(), maps).is_ok()
}
