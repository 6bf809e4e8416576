use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::input::{self, Loaded};
use super::report::CheckEntry;
use super::{Command, ModeArg, Options};
use crate::chainkit::{is_equivalence, FreeComplex};
use crate::error::{Error, Result};
use crate::hoengine::{colim, hocolim, hocolim_to_colim, holim, is_reedy_cofibrant, FiniteDiagram};
use crate::lcore::{
    inertia, is_nondegenerate, local_nondegeneracy, relative_construction, signature,
    symmetric_construction, validate_pair, validate_symmetric, Check, Mode, Sapc,
};
use crate::simpkit::{
    barycentric, parse_simplex_key, relative_fundamental_cycle, simplex_key, SimpComplex, StarOpen,
};
use crate::starcosheaf::{evaluate, mv_check, naturality_eta, subdivide};
use crate::zxmod::{coend_via_engine, colim_model, comparison, weighted_model, ProductContext};

pub type Outcome = (Vec<CheckEntry>, Value);

fn homology_json(c: &FreeComplex) -> Value {
    let m: BTreeMap<String, Value> = c
        .homology_all()
        .into_iter()
        .filter(|(_, h)| !h.is_zero())
        .map(|(k, h)| {
            (
                k.to_string(),
                json!({ "betti": h.betti, "torsion": h.torsion }),
            )
        })
        .collect();
    json!(m)
}

fn ranks_json(c: &FreeComplex) -> Value {
    let m: BTreeMap<String, usize> = c
        .degrees()
        .filter(|&k| c.rank(k) > 0)
        .map(|k| (k.to_string(), c.rank(k)))
        .collect();
    json!(m)
}

fn from_lcore(c: Check) -> CheckEntry {
    CheckEntry::new(&c.check, c.location, c.ok, c.witness.unwrap_or_default())
}

/// `"0-1,2"`: union of the open stars of the listed simplices.
fn star_open(k: &SimpComplex, spec: &str) -> Result<StarOpen> {
    let ids = spec
        .split(',')
        .map(|key| k.require(&parse_simplex_key(key)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(StarOpen::of_simplices(k, &ids))
}

pub fn run(cmd: Command, opts: &Options, doc: &Loaded) -> Result<Outcome> {
    let v = &doc.value;
    match cmd {
        Command::Homology => {
            let c = input::free(v)?;
            Ok(match opts.degree {
                Some(k) => {
                    let h = c.homology(k);
                    (
                        vec![],
                        json!({ "degree": k, "betti": h.betti, "torsion": h.torsion }),
                    )
                }
                None => (
                    vec![],
                    json!({ "homology": homology_json(&c), "euler_characteristic": c.euler_characteristic() }),
                ),
            })
        }
        Command::Assemble => {
            let c = input::xcomplex(v)?;
            let a = c.assemble();
            Ok((
                vec![],
                json!({ "ranks": ranks_json(a), "homology": homology_json(a), "simplices": c.base().len() }),
            ))
        }
        Command::Dualcells => dualcells(v),
        Command::Fundclass => fundclass(v, opts, false),
        Command::VerifySapc => fundclass(v, opts, true),
        Command::CheckDuality => check_duality(v),
        Command::VerifyPair => verify_pair(v),
        Command::Signature => signature_cmd(v),
        Command::Subdivide => subdivide_cmd(v),
        Command::CosheafEval => cosheaf_eval(v, opts),
        Command::Hocolim | Command::Holim => limits(cmd, v, opts),
        Command::Coend => coend_cmd(v),
        Command::MvCheck => mv_cmd(v, opts),
        Command::Naturality => naturality_cmd(v, opts),
    }
}

fn dualcells(v: &Value) -> Result<Outcome> {
    let k = input::simplicial(v)?;
    let arc = std::sync::Arc::new(k.clone());
    let (c, flags) =
        crate::zxmod::dual_cell_complex(&k, arc, &crate::simpkit::SimplicialMap::identity(&k))?;
    let sd = barycentric(&k).sd;
    let chains = sd.chains();
    let mut checks = Vec::new();
    for deg in chains.degrees() {
        let cols: Vec<usize> = flags
            .get(&deg)
            .map_or(vec![], |f| f.iter().map(|&id| sd.local_index(id)).collect());
        let rows: Vec<usize> = flags
            .get(&(deg - 1))
            .map_or(vec![], |f| f.iter().map(|&id| sd.local_index(id)).collect());
        let same = chains.d(deg).select(&rows, &cols) == c.assemble().d(deg)
            && cols.len() == chains.rank(deg);
        checks.push(CheckEntry::new(
            "assembly_equals_subdivision",
            format!("degree {deg}"),
            same,
            "",
        ));
    }
    let pieces: BTreeMap<String, Value> = (0..k.len())
        .map(|s| {
            (
                simplex_key(k.simplex(s)),
                homology_json(
                    &c.local(s)
                        .map(|x| x.0)
                        .unwrap_or_else(|_| FreeComplex::zero()),
                ),
            )
        })
        .collect();
    Ok((
        checks,
        json!({ "ranks": ranks_json(c.assemble()), "local_homology": pieces }),
    ))
}

fn construct(v: &Value) -> Result<(SimpComplex, Sapc)> {
    let k = input::simplicial(v)?;
    let s = symmetric_construction(&k)?;
    Ok((k, s))
}

fn local_checks(k: &SimpComplex, s: &Sapc) -> Result<Vec<CheckEntry>> {
    let per = local_nondegeneracy(&s.complex, &s.complex, &s.structure.phi[0], s.structure.n)?;
    Ok(per
        .into_iter()
        .map(|(t, ok)| CheckEntry::new("local_nondegenerate", simplex_key(k.simplex(t)), ok, ""))
        .collect())
}

fn global_check(s: &Sapc) -> Result<CheckEntry> {
    let ok = is_nondegenerate(
        &s.complex,
        &s.complex,
        &s.structure.phi[0],
        s.structure.n,
        Mode::Global,
    )?;
    Ok(CheckEntry::new("global_nondegenerate", "assembly", ok, ""))
}

fn fundclass(v: &Value, opts: &Options, per_simplex: bool) -> Result<Outcome> {
    let (k, s) = construct(v)?;
    let n = s.structure.n;
    let mut checks = vec![from_lcore(validate_symmetric(&s.complex, &s.structure)?)];
    if matches!(opts.mode, ModeArg::Local | ModeArg::Both) {
        let local = local_checks(&k, &s)?;
        if per_simplex {
            checks.extend(local);
        } else {
            let bad: Vec<String> = local
                .iter()
                .filter(|c| !c.ok)
                .map(|c| c.location.clone())
                .collect();
            let loc = bad
                .first()
                .cloned()
                .unwrap_or_else(|| "all simplices".into());
            checks.push(CheckEntry::new(
                "local_nondegenerate",
                loc,
                bad.is_empty(),
                bad.join(" "),
            ));
        }
    }
    if matches!(opts.mode, ModeArg::Global | ModeArg::Both) {
        checks.push(global_check(&s)?);
    }
    let nondegenerate = checks.iter().skip(1).all(|c| c.ok);
    let sig = if n.rem_euclid(4) == 0 {
        json!(signature(&s)?)
    } else {
        json!("n/a")
    };
    let terms: Vec<usize> = s.structure.phi.iter().map(|p| p.len()).collect();
    Ok((
        checks,
        json!({ "dimension": n, "nondegenerate": nondegenerate, "signature": sig, "phi_terms": terms }),
    ))
}

fn check_duality(v: &Value) -> Result<Outcome> {
    let (k, s) = construct(v)?;
    let local = local_checks(&k, &s)?;
    let bad: Vec<String> = local
        .iter()
        .filter(|c| !c.ok)
        .map(|c| c.location.clone())
        .collect();
    let global = global_check(&s)?.ok;
    let agree = bad.is_empty() == global;
    let check = CheckEntry::new(
        "modes_agree",
        "assembly",
        agree,
        format!("local {}, global {global}", bad.is_empty()),
    );
    Ok((
        vec![check],
        json!({ "local": bad.is_empty(), "local_failures": bad, "global": global, "dimension": s.structure.n }),
    ))
}

fn verify_pair(v: &Value) -> Result<Outcome> {
    let (k, l, z) = input::pair(v)?;
    let z = match z {
        Some(z) => z,
        None => relative_fundamental_cycle(&k, &l)?
            .ok_or_else(|| Error::Precondition("pair has no relative fundamental cycle".into()))?,
    };
    let p = relative_construction(&k, &l, &z)?;
    let checks = validate_pair(&p.map, &p.delta, &p.phi)?
        .into_iter()
        .map(from_lcore)
        .collect();
    Ok((
        checks,
        json!({ "dimension": p.phi.n, "boundary_dimension": p.delta.n }),
    ))
}

fn signature_cmd(v: &Value) -> Result<Outcome> {
    if let Some(m) = input::form(v)? {
        let sym = m
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == m[j][i]));
        let (pos, neg) = inertia(&m);
        let checks = vec![CheckEntry::new("symmetric", "form", sym, "")];
        return Ok((
            checks,
            json!({ "positive": pos, "negative": neg, "signature": pos as i64 - neg as i64 }),
        ));
    }
    let (_, s) = construct(v)?;
    let sig = signature(&s)?;
    Ok((
        vec![],
        json!({ "dimension": s.structure.n, "signature": sig }),
    ))
}

fn subdivide_cmd(v: &Value) -> Result<Outcome> {
    let c = input::xcomplex(v)?;
    let s = subdivide(&c)?;
    let mut checks = vec![CheckEntry::new(
        "projection_equivalence",
        "assembly",
        is_equivalence(&s.to_original),
        "",
    )];
    // dual cells of a closed manifold: every piece of C′ is Z in degree n - |ρ|
    if let Ok(k) = input::simplicial(v) {
        if crate::simpkit::fundamental_cycle(&k)?.is_some() {
            let n = k.dim();
            let base = s.complex.base();
            let bad: Vec<String> = (0..base.len())
                .filter(|&r| {
                    let local = s
                        .complex
                        .local(r)
                        .map(|x| x.0)
                        .unwrap_or_else(|_| FreeComplex::zero());
                    let want = n - base.simplex_dim(r) as i64;
                    let h = local.homology_all();
                    !(local.betti_numbers() == BTreeMap::from([(want, 1)])
                        && h.values().all(|x| x.torsion.is_empty()))
                })
                .map(|r| simplex_key(base.simplex(r)))
                .collect();
            let loc = bad.first().cloned().unwrap_or_else(|| "all flags".into());
            checks.push(CheckEntry::new(
                "local_pieces",
                loc,
                bad.is_empty(),
                bad.join(" "),
            ));
        }
    }
    let a = s.complex.assemble();
    Ok((
        checks,
        json!({ "simplices": s.complex.base().len(), "ranks": ranks_json(a), "homology": homology_json(a) }),
    ))
}

fn opens(k: &SimpComplex, opts: &Options) -> Result<Vec<StarOpen>> {
    opts.star.iter().map(|s| star_open(k, s)).collect()
}

fn cosheaf_eval(v: &Value, opts: &Options) -> Result<Outcome> {
    let c = input::xcomplex(v)?;
    let k = c.base().clone();
    let u = opens(&k, opts)?
        .into_iter()
        .reduce(|a, b| a.union(&b))
        .unwrap_or_else(|| StarOpen::whole(&k));
    let e = evaluate(&c, &u)?;
    let mut checks = vec![CheckEntry::new(
        "hocolim_vs_strict",
        "open set",
        is_equivalence(&e.comparison),
        "",
    )];
    // a single open star: the canonical map from its bracket
    if let [only] = opts.star.as_slice() {
        if !only.contains(',') {
            let t = k.require(&parse_simplex_key(only)?)?;
            let i = e
                .members
                .iter()
                .position(|&m| m == t)
                .expect("star contains its simplex");
            checks.push(CheckEntry::new(
                "bracket_equivalence",
                only.clone(),
                is_equivalence(&e.structure[i]),
                "",
            ));
        }
    }
    let members: Vec<String> = e
        .members
        .iter()
        .map(|&m| simplex_key(k.simplex(m)))
        .collect();
    Ok((
        checks,
        json!({ "members": members, "homology": homology_json(e.complex()), "ranks": ranks_json(e.complex()) }),
    ))
}

fn limits(cmd: Command, v: &Value, opts: &Options) -> Result<Outcome> {
    let d = if v.as_str() == Some("random") {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        FiniteDiagram::random(&mut rng, opts.max_size.unwrap_or(4))
    } else {
        input::diagram(v)?
    };
    if matches!(cmd, Command::Holim) {
        return Ok((
            vec![],
            json!({ "objects": d.len(), "homology": homology_json(&holim(&d)?) }),
        ));
    }
    let h = hocolim(&d)?;
    let reedy = is_reedy_cofibrant(&d);
    let mut checks = Vec::new();
    if reedy {
        checks.push(CheckEntry::new(
            "colim_computes_hocolim",
            "diagram",
            is_equivalence(&hocolim_to_colim(&d)?),
            "",
        ));
    }
    let strict = colim(&d)?.complex;
    Ok((
        checks,
        json!({ "objects": d.len(), "reedy_cofibrant": reedy, "homology": homology_json(&h), "colim_homology": homology_json(&strict) }),
    ))
}

fn coend_cmd(v: &Value) -> Result<Outcome> {
    let (a, b) = input::product(v)?;
    let ctx = ProductContext::new(&a, &b)?;
    let (w, c) = (weighted_model(&ctx)?, colim_model(&ctx)?);
    let cmp = comparison(&ctx, &w, &c)?;
    let engine = coend_via_engine(&ctx)?;
    let checks = vec![
        CheckEntry::new("weighted_vs_colimit", "product", is_equivalence(&cmp), ""),
        CheckEntry::new(
            "engine_agrees",
            "product",
            engine.complex.homology_all() == c.complex.homology_all(),
            "",
        ),
    ];
    Ok((
        checks,
        json!({ "weighted_ranks": ranks_json(&w.complex), "ranks": ranks_json(&c.complex), "homology": homology_json(&c.complex) }),
    ))
}

fn mv_cmd(v: &Value, opts: &Options) -> Result<Outcome> {
    let c = input::xcomplex(v)?;
    let k = c.base().clone();
    let pairs: Vec<(String, StarOpen, StarOpen)> = match opts.star.as_slice() {
        [a, b] => vec![(format!("{a} | {b}"), star_open(&k, a)?, star_open(&k, b)?)],
        [] => {
            let vs: Vec<usize> = k.ids_of_dim(0).collect();
            let mut out = Vec::new();
            for (i, &x) in vs.iter().enumerate() {
                for &y in &vs[i + 1..] {
                    let name = format!(
                        "{} | {}",
                        simplex_key(k.simplex(x)),
                        simplex_key(k.simplex(y))
                    );
                    out.push((
                        name,
                        StarOpen::of_simplices(&k, &[x]),
                        StarOpen::of_simplices(&k, &[y]),
                    ));
                }
            }
            out
        }
        _ => {
            return Err(Error::Precondition(
                "mv-check takes two --star sets or none".into(),
            ))
        }
    };
    let mut checks = Vec::new();
    for (name, u, w) in pairs {
        let r = mv_check(&c, &u, &w)?;
        checks.push(CheckEntry::new(
            "homotopy_pushout",
            name,
            r.ok,
            format!("|U∩V| {}, |U∪V| {}", r.intersection_rank, r.union_rank),
        ));
    }
    let n = checks.len();
    Ok((checks, json!({ "pairs": n })))
}

fn naturality_cmd(v: &Value, opts: &Options) -> Result<Outcome> {
    let (src, target, f) = input::simplicial_map(v)?;
    let c = input::identity_dual_cells(&src)?;
    let sets: Vec<(String, StarOpen)> = if opts.star.is_empty() {
        target
            .ids_of_dim(0)
            .map(|x| {
                (
                    simplex_key(target.simplex(x)),
                    StarOpen::of_simplices(&target, &[x]),
                )
            })
            .collect()
    } else {
        opts.star
            .iter()
            .map(|s| Ok((s.clone(), star_open(&target, s)?)))
            .collect::<Result<_>>()?
    };
    let mut checks = Vec::new();
    for (name, u) in sets {
        let r = naturality_eta(&f, &c, &target, &u)?;
        let what = if r.injective {
            "isomorphism"
        } else {
            "equivalence"
        };
        checks.push(CheckEntry::new(
            &format!("eta_{what}"),
            name,
            r.ok,
            format!(
                "equivalence {}, strict iso {}",
                r.equivalence, r.strict_isomorphism
            ),
        ));
    }
    Ok((checks, json!({ "injective": f.is_injective() })))
}
