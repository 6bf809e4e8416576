use std::collections::BTreeMap;

use rayon::prelude::*;

use super::structure::{hom_w_differential, sub, validate_symmetric, Check, SymStructure};
use crate::chainkit::{adjoint_from_terms, is_equivalence, mapping_cone, ChainMap};
use crate::error::{Error, Result};
use crate::intlin::Int;
use crate::simpkit::SimplexId;
use crate::zxmod::{local_projection, ProductContext, WChain, WTerm, XComplex, XCycle, XMap};

/// Which form of nondegeneracy to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every local adjoint `C(σ)^{n-|σ|-*} -> [D][σ]` is an equivalence.
    Local,
    /// The assembled adjoint `C^{n-*} -> D` is an equivalence.
    Global,
}

/// Per-simplex outcome of the local test, over simplices with `C(σ) ≠ 0`.
pub fn local_nondegeneracy(
    c: &XComplex,
    d: &XComplex,
    phi0: &WChain,
    n: i64,
) -> Result<Vec<(SimplexId, bool)>> {
    let ctx = ProductContext::new(c, d)?;
    let phi = XCycle::new(&ctx, n, phi0.clone())?;
    let sigmas: Vec<SimplexId> = (0..c.base().len())
        .filter(|&s| !c.piece_ranks(s).is_empty())
        .collect();
    sigmas
        .par_iter()
        .map(|&s| {
            let lp = local_projection(&ctx, &phi, s)?;
            Ok((s, is_equivalence(&lp.adjoint()?)))
        })
        .collect()
}

/// Adjoint of the assembled cycle.
pub fn global_adjoint(c: &XComplex, d: &XComplex, phi0: &WChain, n: i64) -> Result<ChainMap> {
    let ctx = ProductContext::new(c, d)?;
    let phi = XCycle::new(&ctx, n, phi0.clone())?;
    adjoint_from_terms(c.assemble(), d.assemble(), n, phi.assembled_terms(&ctx))
}

pub fn is_nondegenerate(
    c: &XComplex,
    d: &XComplex,
    phi0: &WChain,
    n: i64,
    mode: Mode,
) -> Result<bool> {
    match mode {
        Mode::Local => Ok(local_nondegeneracy(c, d, phi0, n)?
            .iter()
            .all(|(_, ok)| *ok)),
        Mode::Global => Ok(is_equivalence(&global_adjoint(c, d, phi0, n)?)),
    }
}

/// `(f ⊗ f)` on the weighted product.
pub fn push_chain(f: &XMap, x: &WChain) -> WChain {
    let cols: BTreeMap<i64, Vec<Vec<(usize, Int)>>> = f
        .map
        .source()
        .degrees()
        .map(|k| (k, f.map.at(k).col_lists()))
        .collect();
    let mut out = WChain::new();
    for (t, v) in x {
        for (i, a) in &cols[&t.a.0][t.a.1] {
            for (j, b) in &cols[&t.b.0][t.b.1] {
                let w = v.clone() * a * b;
                *out.entry(WTerm {
                    a: (t.a.0, *i),
                    b: (t.b.0, *j),
                    tau: t.tau,
                })
                .or_default() += &w;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Checks a symmetric pair: `φ` on the source is a structure, its image is
/// the boundary of `δφ` in the Hom-from-W complex, and the assembled
/// adjoint `D^{n+1-*} -> Cone(f)` is an equivalence.
pub fn validate_pair(f: &XMap, delta: &SymStructure, phi: &SymStructure) -> Result<Vec<Check>> {
    if delta.n != phi.n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "pair of dimensions {} and {}",
            delta.n, phi.n
        )));
    }
    let (c, d) = (&f.source, &f.target);
    let mut out = vec![validate_symmetric(c, phi)?];
    let ctx = ProductContext::new(d, d)?;
    let dd = hom_w_differential(&ctx, delta.n, &delta.phi);
    let mut rel = Check::pass(
        "pair_boundary",
        format!("s=0..{}", dd.len().saturating_sub(1)),
    );
    for (s, lhs) in dd.iter().enumerate() {
        let img = phi.phi.get(s).map(|x| push_chain(f, x)).unwrap_or_default();
        let r = sub(lhs, &img);
        if !r.is_empty() {
            rel = Check::fail(
                "pair_boundary",
                format!("s={s}"),
                format!("{} nonzero terms", r.len()),
            );
            break;
        }
    }
    let rel_ok = rel.ok && out[0].ok;
    out.push(rel);
    if rel_ok {
        let ok = is_equivalence(&pair_adjoint(f, delta, phi)?);
        out.push(if ok {
            Check::pass("pair_nondegenerate", "global")
        } else {
            Check::fail(
                "pair_nondegenerate",
                "global",
                "cone of the adjoint has homology",
            )
        });
    }
    Ok(out)
}

/// Adjoint `D^{n+1-*} -> Cone(f)` of the cycle `(δφ_0, -(f ⊗ 1) φ_0)`, the
/// second part carried into `D ⊗ ΣC` with the sign `(-1)^{|a|}`.
pub fn pair_adjoint(f: &XMap, delta: &SymStructure, phi: &SymStructure) -> Result<ChainMap> {
    let (c, d) = (&f.source, &f.target);
    let cone = mapping_cone(&f.map);
    let offset = |k: i64| -> usize { d.assemble().rank(k) };
    let mut terms: BTreeMap<(i64, usize, usize), Int> = BTreeMap::new();
    let dctx = ProductContext::new(d, d)?;
    let dz = XCycle {
        n: delta.n,
        terms: delta.phi.first().cloned().unwrap_or_default(),
    };
    for (p, i, j, v) in dz.assembled_terms(&dctx) {
        *terms.entry((p, i, j)).or_default() += &v;
    }
    let cctx = ProductContext::new(c, c)?;
    let cz = XCycle {
        n: phi.n,
        terms: phi.phi.first().cloned().unwrap_or_default(),
    };
    for (p, i, j, v) in cz.assembled_terms(&cctx) {
        let q = phi.n - p;
        for (a, w) in &f.map.at(p).col_lists()[i] {
            // Koszul sign of passing the suspension across the first factor
            let e = terms.entry((p, *a, offset(q + 1) + j)).or_default();
            if p.rem_euclid(2) == 0 {
                *e -= &(v.clone() * w);
            } else {
                *e += &(v.clone() * w);
            }
        }
    }
    adjoint_from_terms(
        d.assemble(),
        &cone,
        delta.n,
        terms
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((p, i, j), v)| (p, i, j, v)),
    )
}
