//! Acceptance criteria 1-11: one PASS/FAIL line each, exact tolerances.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zxl::chainkit::{is_equivalence, ChainMap, FreeComplex};
use zxl::cli::input::identity_dual_cells;
use zxl::corpus;
use zxl::hoengine::{
    colim, hocolim, hocolim_map, hocolim_to_colim, is_reedy_cofibrant, FiniteDiagram, Poset,
};
use zxl::intlin::{homology_of_pair, smith_normal_form_with_inverse, Int, SparseIntMat};
use zxl::lcore::{
    inertia, is_nondegenerate, local_nondegeneracy, symmetric_construction,
    symmetric_construction_from_cycle, Mode, Sapc,
};
use zxl::simpkit::{barycentric, fundamental_cycle, SimpComplex, SimplicialMap, StarOpen};
use zxl::starcosheaf::{costalk, evaluate, naturality_eta, subdivide};
use zxl::zxmod::{
    colim_model, comparison, dual_cell_complex, weighted_model, ProductContext, XComplex, XCycle,
};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k(name: &str) -> SimpComplex {
    corpus::by_name(name).expect("corpus name")
}

fn exactness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cases = 1000;
    for case in 0..cases {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a = random_dense(&mut rng, r, c, 3);
        let m = to_sparse(&a, r, c);
        let s = smith_normal_form_with_inverse(&m);
        ensure(
            s.u.mul(&m).unwrap().mul(&s.v).unwrap() == s.diagonal(),
            || format!("case {case}: U A V is not D"),
        )?;
        ensure(s.divisors.windows(2).all(|w| w[0].divides(&w[1])), || {
            format!("case {case}: divisibility")
        })?;
        ensure(
            det(&to_i64(&s.u)).abs() == 1 && det(&to_i64(&s.v)).abs() == 1,
            || format!("case {case}: not unimodular"),
        )?;
        let oracle: Vec<String> = invariant_factors(&a, c)
            .iter()
            .map(|x| x.to_string())
            .collect();
        let got: Vec<String> = s.divisors.iter().map(Int::to_string).collect();
        ensure(got == oracle, || {
            format!("case {case}: divisors {got:?} vs minors {oracle:?}")
        })?;

        let (d_hi, p, d_lo, q, mid) = random_pair(&mut rng);
        let h = homology_of_pair(&to_sparse(&d_hi, mid, p), &to_sparse(&d_lo, q, mid))
            .map_err(|e| e.to_string())?;
        let (betti, torsion) = homology_oracle(&d_hi, p, &d_lo, mid);
        let t: Vec<String> = torsion.iter().map(|x| x.to_string()).collect();
        ensure(
            h.betti == betti && h.torsion.iter().map(Int::to_string).collect::<Vec<_>>() == t,
            || format!("case {case}: homology {h:?} vs brute force ({betti}, {t:?})"),
        )?;
    }
    Ok(format!(
        "{cases} SNF cases and {cases} homology pairs, seed 0x5eed"
    ))
}

fn assembly_identity() -> Verdict {
    for name in ["delta1", "circle3", "delta2", "bdry-delta3"] {
        let x = k(name);
        let (c, flags) = dual_cell_complex(&x, Arc::new(x.clone()), &SimplicialMap::identity(&x))
            .map_err(|e| e.to_string())?;
        let sd = barycentric(&x).sd;
        let chains = sd.chains();
        ensure(c.assemble().degrees() == chains.degrees(), || {
            format!("{name}: degree range")
        })?;
        for deg in chains.degrees() {
            let idx = |d: i64| {
                flags.get(&d).map_or(vec![], |f| {
                    f.iter().map(|&id| sd.local_index(id)).collect::<Vec<_>>()
                })
            };
            let (cols, rows) = (idx(deg), idx(deg - 1));
            ensure(cols.len() == chains.rank(deg), || {
                format!("{name}: rank in degree {deg}")
            })?;
            ensure(
                chains.d(deg).select(&rows, &cols) == c.assemble().d(deg),
                || format!("{name}: d_{deg} differs"),
            )?;
        }
    }
    Ok("Δ¹, ∂Δ², Δ², ∂Δ³: boundary matrices identical".into())
}

fn modes(s: &Sapc) -> (Vec<usize>, bool) {
    let n = s.structure.n;
    let local = local_nondegeneracy(&s.complex, &s.complex, &s.structure.phi[0], n).unwrap();
    let bad = local.into_iter().filter(|x| !x.1).map(|x| x.0).collect();
    (
        bad,
        is_nondegenerate(&s.complex, &s.complex, &s.structure.phi[0], n, Mode::Global).unwrap(),
    )
}

fn duality_detection() -> Verdict {
    for name in ["bdry-delta3", "bdry-delta4", "torus7"] {
        let s = symmetric_construction(&k(name)).map_err(|e| format!("{name}: {e}"))?;
        let (bad, global) = modes(&s);
        ensure(bad.is_empty() && global, || {
            format!("{name}: local failures {bad:?}, global {global}")
        })?;
    }
    for name in ["wedge", "pinched-torus"] {
        let x = k(name);
        let s = symmetric_construction(&x).map_err(|e| format!("{name}: {e}"))?;
        let (bad, global) = modes(&s);
        let want = vec![x.require(&corpus::singular_vertex(name).unwrap()).unwrap()];
        ensure(bad == want && !global, || {
            format!("{name}: local failures {bad:?}, global {global}")
        })?;
    }
    Ok("3 manifolds nondegenerate; wedge fails at [0], pinched torus at [6]".into())
}

fn local_global() -> Verdict {
    let mut seen = Vec::new();
    for name in corpus::NAMES {
        let x = k(name);
        if x.is_pure() && fundamental_cycle(&x).unwrap().is_none() {
            continue;
        }
        let Ok(s) = symmetric_construction(&x) else {
            continue;
        };
        let (bad, global) = modes(&s);
        ensure(bad.is_empty() == global, || {
            format!("{name}: local {}, global {global}", bad.is_empty())
        })?;
        seen.push(format!("{name}:{global}"));
    }
    ensure(seen.len() >= 7, || {
        format!("only {} structures built", seen.len())
    })?;
    Ok(format!("agree on {}", seen.join(" ")))
}

fn corpus_xcomplexes() -> Vec<(&'static str, XComplex)> {
    corpus::NAMES
        .iter()
        .map(|n| (*n, identity_dual_cells(&k(n)).unwrap()))
        .collect()
}

fn open_stars() -> Verdict {
    let mut count = 0;
    for (name, c) in corpus_xcomplexes() {
        let x = c.base().clone();
        for t in 0..x.len() {
            let e = evaluate(&c, &StarOpen::of_simplices(&x, &[t])).map_err(|e| e.to_string())?;
            let i = e.members.iter().position(|&m| m == t).unwrap();
            ensure(is_equivalence(&e.structure[i]), || {
                format!("{name}: [C][{t}] -> evaluation not an equivalence")
            })?;
            count += 1;
        }
        let all = evaluate(&c, &StarOpen::whole(&x)).map_err(|e| e.to_string())?;
        ensure(is_equivalence(&all.comparison), || {
            format!("{name}: full cover is not the assembly")
        })?;
    }
    Ok(format!(
        "{count} open stars over {} complexes, plus full covers",
        corpus::NAMES.len()
    ))
}

fn costalks() -> Verdict {
    let mut count = 0;
    for name in [
        "circle3",
        "bdry-delta3",
        "bdry-delta4",
        "octahedron",
        "torus7",
        "rp2",
    ] {
        let x = k(name);
        let c = identity_dual_cells(&x).unwrap();
        for t in 0..x.len() {
            let co = costalk(&c, t).map_err(|e| e.to_string())?;
            let h = co.complex.homology_all();
            let only_top = h.iter().all(|(d, g)| {
                if *d == x.dim() {
                    g.betti == 1 && g.torsion.is_empty()
                } else {
                    g.is_zero()
                }
            });
            ensure(only_top && co.certified(), || {
                format!("{name} at {t}: {h:?}, certificate {}", co.certified())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} costalks are Z in the top degree"))
}

fn acyclic_summand(f: &FiniteDiagram) -> (FiniteDiagram, Vec<ChainMap>) {
    let d = FreeComplex::new(0, vec![1, 1], vec![SparseIntMat::identity(1)]).unwrap();
    let objects: Vec<FreeComplex> = f
        .objects
        .iter()
        .map(|o| FreeComplex::direct_sum(&[o, &d]))
        .collect();
    let block =
        |m: &ChainMap, src: &FreeComplex, dst: &FreeComplex, a: &FreeComplex, b: &FreeComplex| {
            let maps = src
                .degrees()
                .map(|t| {
                    let id = SparseIntMat::identity(d.rank(t));
                    (
                        t,
                        SparseIntMat::from_blocks(
                            dst.rank(t),
                            src.rank(t),
                            &[(0, 0, &m.at(t)), (b.rank(t), a.rank(t), &id)],
                        ),
                    )
                })
                .collect();
            ChainMap::new(src.clone(), dst.clone(), maps).unwrap()
        };
    let objs = objects.clone();
    let g = FiniteDiagram::from_fn(f.poset.clone(), objects, |a, b| {
        Ok(block(
            &f.map(a, b)?,
            &objs[a],
            &objs[b],
            &f.objects[a],
            &f.objects[b],
        ))
    })
    .unwrap();
    let eta = f
        .objects
        .iter()
        .zip(&g.objects)
        .map(|(o, big)| {
            let maps = o
                .degrees()
                .map(|t| {
                    (
                        t,
                        SparseIntMat::from_blocks(
                            big.rank(t),
                            o.rank(t),
                            &[(0, 0, &SparseIntMat::identity(o.rank(t)))],
                        ),
                    )
                })
                .collect();
            ChainMap::new(o.clone(), big.clone(), maps).unwrap()
        })
        .collect();
    (g, eta)
}

/// Random poset with scalar structure maps `2^{h(b)-h(a)}` on one complex.
fn random_scalar_diagram(rng: &mut impl Rng) -> FiniteDiagram {
    let n = rng.gen_range(1..=4);
    let rel: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    let poset = Poset::from_relations(n, &rel).unwrap();
    let height: Vec<u32> = (0..n)
        .map(|i| (0..i).filter(|&a| poset.lt(a, i)).count() as u32)
        .collect();
    let r = rng.gen_range(0..=2);
    let s = rng.gen_range(0..=2);
    let m: Vec<Vec<i64>> = (0..s)
        .map(|_| (0..r).map(|_| rng.gen_range(-2..=2)).collect())
        .collect();
    let obj = FreeComplex::new(0, vec![s, r], vec![to_sparse(&m, s, r)]).unwrap();
    let objs = vec![obj.clone(); n];
    FiniteDiagram::from_fn(poset, objs, |a, b| {
        // heights are counted in a linear extension, so they grow along arrows
        let hb = height[b].max(height[a]);
        Ok(ChainMap::scalar(&obj, Int::from(1i64 << (hb - height[a]))))
    })
    .unwrap()
}

fn engine() -> Verdict {
    // (a) span
    let span = corpus_span();
    let h = hocolim(&span).map_err(|e| e.to_string())?;
    ensure(
        h.betti_numbers() == BTreeMap::from([(1, 1)]) && h.homology(1).torsion.is_empty(),
        || format!("span: {:?}", h.betti_numbers()),
    )?;
    // (b) Reedy-cofibrant diagrams from the corpus: star diagrams and the span
    let mut reedy = 0;
    let mut diagrams = vec![span];
    for (_, c) in corpus_xcomplexes().into_iter().take(6) {
        let x = c.base().clone();
        for t in 0..x.len() {
            diagrams.push(
                evaluate(&c, &StarOpen::of_simplices(&x, &[t]))
                    .unwrap()
                    .diagram,
            );
        }
        diagrams.push(evaluate(&c, &StarOpen::whole(&x)).unwrap().diagram);
    }
    for d in &diagrams {
        if is_reedy_cofibrant(d) {
            reedy += 1;
            ensure(is_equivalence(&hocolim_to_colim(d).unwrap()), || {
                "colim differs from hocolim on a Reedy-cofibrant diagram".into()
            })?;
            colim(d).unwrap();
        }
    }
    ensure(reedy > 0, || {
        "no Reedy-cofibrant diagram in the corpus".into()
    })?;
    // (c) objectwise equivalences
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 200;
    for case in 0..cases {
        let f = if case % 2 == 0 {
            FiniteDiagram::random(&mut rng, 4)
        } else {
            random_scalar_diagram(&mut rng)
        };
        let (g, eta) = acyclic_summand(&f);
        ensure(
            g.objects
                .iter()
                .all(|o| o.degrees().all(|t| o.rank(t) <= 3)),
            || "rank bound".into(),
        )?;
        let m = hocolim_map(&f, &g, &eta).map_err(|e| e.to_string())?;
        ensure(is_equivalence(&m), || {
            format!("case {case}: induced map is not an equivalence")
        })?;
    }
    Ok(format!("span ok; {reedy}/{} corpus diagrams Reedy-cofibrant, all colim ≃ hocolim; {cases} random transformations", diagrams.len()))
}

fn corpus_span() -> FiniteDiagram {
    let z = FreeComplex::point(0);
    let e = FreeComplex::zero();
    let objs = vec![e.clone(), z.clone(), e.clone()];
    let o = objs.clone();
    FiniteDiagram::from_fn(
        Poset::from_relations(3, &[(1, 0), (1, 2)]).unwrap(),
        objs,
        |a, b| Ok(ChainMap::zero(&o[a], &o[b])),
    )
    .unwrap()
}

fn product_models() -> Verdict {
    let mut pairs = 0;
    for name in corpus::NAMES {
        let x = Arc::new(k(name));
        if x.len() > 20 {
            continue;
        }
        let top = x.len() - 1;
        let family = vec![
            identity_dual_cells(&x).unwrap(),
            XComplex::free_generator(x.clone(), top, 0).unwrap(),
            XComplex::free_generator(x.clone(), 0, 1).unwrap(),
        ];
        for a in &family {
            for b in &family {
                let ctx = ProductContext::new(a, b).map_err(|e| e.to_string())?;
                let (w, c) = (weighted_model(&ctx).unwrap(), colim_model(&ctx).unwrap());
                let cmp = comparison(&ctx, &w, &c).map_err(|e| e.to_string())?;
                ensure(is_equivalence(&cmp), || {
                    format!("{name}: comparison is not an equivalence")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} pairs over bases with at most 20 simplices"
    ))
}

fn subdivision() -> Verdict {
    let mut done = Vec::new();
    for (name, c) in corpus_xcomplexes() {
        let s = subdivide(&c).map_err(|e| format!("{name}: {e}"))?;
        ensure(is_equivalence(&s.to_original), || {
            format!("{name}: C′ -> C is not an equivalence")
        })?;
        done.push(name);
    }
    let x = k("bdry-delta3");
    let sapc = symmetric_construction(&x).unwrap();
    let s = subdivide(&sapc.complex).unwrap();
    let base = s.complex.base();
    for r in 0..base.len() {
        let want = BTreeMap::from([(2 - base.simplex_dim(r) as i64, 1)]);
        let local = s.complex.local(r).unwrap().0;
        ensure(
            local.betti_numbers() == want
                && local.homology_all().values().all(|h| h.torsion.is_empty()),
            || {
                format!(
                    "piece {r} of the subdivided structure: {:?}",
                    local.betti_numbers()
                )
            },
        )?;
    }
    let finer = symmetric_construction(&barycentric(&x).sd).unwrap();
    let (bad, _) = modes(&finer);
    ensure(bad.is_empty(), || {
        "fundamental structure of X′ degenerate".into()
    })?;
    Ok(format!(
        "{} complexes; ∂Δ³ pieces over X′ all Z in degree 2 - |ρ|",
        done.len()
    ))
}

fn naturality() -> Verdict {
    let maps: Vec<(&str, &str, Vec<usize>)> = vec![
        ("circle3", "delta2", vec![0, 1, 2]),
        ("delta1", "circle3", vec![0, 1]),
        ("delta2", "bdry-delta3", vec![0, 1, 2]),
        ("bdry-delta3", "bdry-delta3", vec![0, 1, 2, 3]),
        ("circle3", "bdry-delta3", vec![1, 2, 3]),
    ];
    let mut checked = 0;
    for (s, t, vm) in maps {
        let (src, tgt) = (k(s), Arc::new(k(t)));
        let f = SimplicialMap::new(&src, &tgt, vm).unwrap();
        let c = identity_dual_cells(&src).unwrap();
        for tau in 0..tgt.len() {
            let r = naturality_eta(&f, &c, &tgt, &StarOpen::of_simplices(&tgt, &[tau]))
                .map_err(|e| e.to_string())?;
            ensure(r.injective && r.strict_isomorphism && r.equivalence, || {
                format!("{s} -> {t} at star {tau}: {r:?}")
            })?;
            checked += 1;
        }
    }
    let (src, tgt) = (k("circle3"), Arc::new(k("delta1")));
    let f = SimplicialMap::new(&src, &tgt, vec![0, 1, 1]).unwrap();
    let c = identity_dual_cells(&src).unwrap();
    for tau in 0..tgt.len() {
        let r = naturality_eta(&f, &c, &tgt, &StarOpen::of_simplices(&tgt, &[tau]))
            .map_err(|e| e.to_string())?;
        ensure(r.equivalence, || {
            format!("edge collapse at star {tau}: not an equivalence")
        })?;
        checked += 1;
    }
    Ok(format!(
        "{checked} star comparisons (5 inclusions, 1 collapse)"
    ))
}

/// `⟨φ₀, 1 ⊗ w⟩` with `w` dual to one top flag, scaled by its orientation.
fn top_pairing(x: &SimpComplex, s: &Sapc, z_sign: i64) -> Int {
    let n = s.structure.n;
    let ctx = ProductContext::new(&s.complex, &s.complex).unwrap();
    let phi = XCycle::new(&ctx, n, s.structure.phi[0].clone()).unwrap();
    let sub = barycentric(x);
    let flag = sub.sd.ids_of_dim(n as usize).next().unwrap();
    let eps = sub
        .sd_chains()
        .iter()
        .find_map(|ch| ch.get(&flag).cloned())
        .unwrap()
        * Int::from(z_sign);
    let pos = s
        .complex
        .gens(n)
        .iter()
        .position(|g| g.label == vec![flag])
        .unwrap();
    let mut total = Int::ZERO;
    for (p, _, b, v) in phi.assembled_terms(&ctx) {
        if p == 0 && b == pos {
            total += &v;
        }
    }
    total * eps
}

fn signatures() -> Verdict {
    let e8: Vec<Vec<i64>> = vec![
        vec![2, -1, 0, 0, 0, 0, 0, 0],
        vec![-1, 2, -1, 0, 0, 0, 0, 0],
        vec![0, -1, 2, -1, 0, 0, 0, -1],
        vec![0, 0, -1, 2, -1, 0, 0, 0],
        vec![0, 0, 0, -1, 2, -1, 0, 0],
        vec![0, 0, 0, 0, -1, 2, -1, 0],
        vec![0, 0, 0, 0, 0, -1, 2, 0],
        vec![0, 0, -1, 0, 0, 0, 0, 2],
    ];
    let ints = |m: &Vec<Vec<i64>>| {
        m.iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect::<Vec<Vec<Int>>>()
    };
    let sig = |m: &Vec<Vec<i64>>| {
        let (p, q) = inertia(&ints(m));
        p as i64 - q as i64
    };
    ensure(det(&e8) == 1, || "E8 is not unimodular".into())?;
    ensure(sig(&e8) == 8, || format!("E8 signature {}", sig(&e8)))?;
    ensure(sig(&vec![vec![0, 1], vec![1, 0]]) == 0, || {
        "hyperbolic signature".into()
    })?;
    // orientation reversal on ∂Δ⁴
    let x = k("bdry-delta4");
    let z = fundamental_cycle(&x).unwrap().unwrap();
    let neg: BTreeMap<_, _> = z.iter().map(|(s, v)| (*s, -v.clone())).collect();
    let (a, b) = (
        symmetric_construction_from_cycle(&x, &z).unwrap(),
        symmetric_construction_from_cycle(&x, &neg).unwrap(),
    );
    let negated = a.structure.phi.iter().zip(&b.structure.phi).all(|(p, q)| {
        p.len() == q.len()
            && p.iter()
                .all(|(t, v)| q.get(t).is_some_and(|w| *w == -v.clone()))
    });
    ensure(negated, || "structure of -z is not the negative".into())?;
    let (pa, pb) = (top_pairing(&x, &a, 1), top_pairing(&x, &b, 1));
    ensure(pa.abs() == Int::ONE && pb == -pa.clone(), || {
        format!("pairings {pa} and {pb}")
    })?;
    Ok(format!(
        "E8 = 8, hyperbolic = 0, ∂Δ⁴ pairing H⁰×H³ sign {} -> {}",
        pa.signum(),
        pb.signum()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    tolerance: &'static str,
    limit: Option<Duration>,
    run: fn() -> Verdict,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let all = [
        Criterion {
            id: 1,
            name: "exactness substrate",
            tolerance: "exact",
            limit: secs(10),
            run: exactness,
        },
        Criterion {
            id: 2,
            name: "assembly identity",
            tolerance: "exact matrix equality",
            limit: secs(5),
            run: assembly_identity,
        },
        Criterion {
            id: 3,
            name: "Poincaré duality detection",
            tolerance: "exact",
            limit: secs(120),
            run: duality_detection,
        },
        Criterion {
            id: 4,
            name: "local <=> global nondegeneracy",
            tolerance: "exact agreement",
            limit: None,
            run: local_global,
        },
        Criterion {
            id: 5,
            name: "open-star evaluation",
            tolerance: "exact",
            limit: secs(60),
            run: open_stars,
        },
        Criterion {
            id: 6,
            name: "costalk formula",
            tolerance: "exact",
            limit: None,
            run: costalks,
        },
        Criterion {
            id: 7,
            name: "homotopy engine",
            tolerance: "exact",
            limit: secs(60),
            run: engine,
        },
        Criterion {
            id: 8,
            name: "product-model comparison",
            tolerance: "exact",
            limit: None,
            run: product_models,
        },
        Criterion {
            id: 9,
            name: "subdivision",
            tolerance: "exact",
            limit: secs(120),
            run: subdivision,
        },
        Criterion {
            id: 10,
            name: "naturality",
            tolerance: "exact",
            limit: None,
            run: naturality,
        },
        Criterion {
            id: 11,
            name: "signature sanity",
            tolerance: "exact",
            limit: None,
            run: signatures,
        },
    ];
    let mut failed = 0;
    for c in all {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let took = start.elapsed();
        let slow = c.limit.is_some_and(|l| took > l);
        let limit = c
            .limit
            .map_or(String::new(), |l| format!(" < {} s", l.as_secs()));
        let (tag, detail) = match (&verdict, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "{tag} criterion {:>2} ({}): {detail} [tolerance: {}; {:.2} s{limit}]",
            c.id,
            c.name,
            c.tolerance,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
