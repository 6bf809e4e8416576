use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::chainkit::{is_equivalence, FreeComplex};
use crate::lcore::{is_nondegenerate, symmetric_construction, Mode};
use crate::simpkit::{barycentric, SimpComplex, SimplicialMap, StarOpen};
use crate::zxmod::{dual_cell_complex, XComplex};

fn tri() -> SimpComplex {
    SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
}

fn sphere2() -> SimpComplex {
    SimpComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
}

fn c_id(k: &SimpComplex) -> XComplex {
    let arc = Arc::new(k.clone());
    dual_cell_complex(k, arc, &SimplicialMap::identity(k))
        .unwrap()
        .0
}

fn betti(c: &FreeComplex) -> BTreeMap<i64, usize> {
    c.betti_numbers()
}

#[test]
fn stars_recover_brackets() {
    for k in [tri(), sphere2()] {
        let c = c_id(&k);
        for t in 0..k.len() {
            let e = evaluate(&c, &StarOpen::of_simplices(&k, &[t])).unwrap();
            let i = e.members.iter().position(|&m| m == t).unwrap();
            assert!(is_equivalence(&e.structure[i]), "structure map at {t}");
            assert!(is_equivalence(&e.comparison));
            assert_eq!(betti(e.complex()), betti(&c.bracket(t).unwrap().0));
        }
        let all = evaluate(&c, &StarOpen::whole(&k)).unwrap();
        assert!(is_equivalence(&all.comparison));
        assert_eq!(betti(all.complex()), betti(c.assemble()));
    }
    let k = tri();
    let e = evaluate(&c_id(&k), &StarOpen::of_simplices(&k, &[0])).unwrap();
    assert_eq!(betti(e.complex()), BTreeMap::from([(0, 1)]));
}

#[test]
fn restrictions_compose() {
    let k = sphere2();
    let c = c_id(&k);
    let u0 = StarOpen::of_simplices(&k, &[k.require(&[0, 1]).unwrap()]);
    let u1 = StarOpen::of_simplices(&k, &[0]);
    let u2 = StarOpen::whole(&k);
    let (e0, e1, e2) = (
        evaluate(&c, &u0).unwrap(),
        evaluate(&c, &u1).unwrap(),
        evaluate(&c, &u2).unwrap(),
    );
    let direct = restriction_map(&e0, &e2).unwrap();
    let via = restriction_map(&e1, &e2)
        .unwrap()
        .compose(&restriction_map(&e0, &e1).unwrap())
        .unwrap();
    assert_eq!(direct, via);
}

#[test]
fn costalks() {
    let k = tri();
    let c = c_id(&k);
    let v = costalk(&c, 0).unwrap();
    assert!(v.certified());
    assert_eq!(betti(&v.complex), BTreeMap::from([(1, 1)]));

    let d2 = Arc::new(SimpComplex::from_facets(&[vec![0, 1, 2]]).unwrap());
    let top = d2.require(&[0, 1, 2]).unwrap();
    let m = XComplex::free_generator(d2.clone(), top, 0).unwrap();
    assert_eq!(
        betti(&costalk(&m, top).unwrap().complex),
        BTreeMap::from([(2, 1)])
    );
    assert!(costalk(&m, 0).unwrap().complex.is_zero());

    let s = sphere2();
    let cs = c_id(&s);
    for t in 0..s.len() {
        let co = costalk(&cs, t).unwrap();
        assert!(co.certified());
        assert_eq!(betti(&co.complex), BTreeMap::from([(2, 1)]));
    }

    // two boundary tetrahedra sharing vertex 0
    let wedge = SimpComplex::from_facets(&[
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 2, 3],
        vec![1, 2, 3],
        vec![0, 4, 5],
        vec![0, 4, 6],
        vec![0, 5, 6],
        vec![4, 5, 6],
    ])
    .unwrap();
    let co = costalk(&c_id(&wedge), 0).unwrap();
    // link of the wedge point is two circles
    assert_eq!(betti(&co.complex), BTreeMap::from([(1, 1), (2, 2)]));
    assert_eq!(
        betti(&costalk(&c_id(&wedge), 1).unwrap().complex),
        BTreeMap::from([(2, 1)])
    );
}

#[test]
fn mayer_vietoris() {
    let k = tri();
    let c = c_id(&k);
    let (a, b) = (
        StarOpen::of_simplices(&k, &[0]),
        StarOpen::of_simplices(&k, &[1]),
    );
    assert!(mv_check(&c, &a, &a).unwrap().ok);
    assert!(mv_check(&c, &a, &b).unwrap().ok);
    let s = sphere2();
    let cs = c_id(&s);
    for v in 0..4 {
        for w in v + 1..4 {
            let r = mv_check(
                &cs,
                &StarOpen::of_simplices(&s, &[v]),
                &StarOpen::of_simplices(&s, &[w]),
            )
            .unwrap();
            assert!(r.ok, "stars of {v} and {w}");
        }
    }
}

#[test]
fn naturality() {
    let k = tri();
    let c = c_id(&k);
    let arc = Arc::new(k.clone());
    let r = naturality_eta(
        &SimplicialMap::identity(&k),
        &c,
        &arc,
        &StarOpen::of_simplices(&k, &[0]),
    )
    .unwrap();
    assert!(r.ok && r.strict_isomorphism && r.injective);

    let d2 = Arc::new(SimpComplex::from_facets(&[vec![0, 1, 2]]).unwrap());
    let inc = SimplicialMap::new(&k, &d2, vec![0, 1, 2]).unwrap();
    let r = naturality_eta(&inc, &c, &d2, &StarOpen::of_simplices(&d2, &[1])).unwrap();
    assert!(r.ok && r.strict_isomorphism);

    let e = Arc::new(SimpComplex::from_facets(&[vec![0, 1]]).unwrap());
    let collapse = SimplicialMap::new(&k, &e, vec![0, 1, 1]).unwrap();
    for v in 0..2 {
        let r = naturality_eta(&collapse, &c, &e, &StarOpen::of_simplices(&e, &[v])).unwrap();
        assert!(r.ok && r.equivalence && !r.injective);
    }
}

#[test]
fn subdividing_an_edge_generator() {
    let d1 = Arc::new(SimpComplex::from_facets(&[vec![0, 1]]).unwrap());
    let e = d1.require(&[0, 1]).unwrap();
    let m = XComplex::free_generator(d1, e, 0).unwrap();
    let s = subdivide(&m).unwrap();
    let sub = barycentric(m.base());
    let pieces: Vec<usize> = s
        .complex
        .all_gens()
        .values()
        .flatten()
        .map(|g| g.piece)
        .collect();
    assert_eq!(pieces.len(), 3);
    assert!(pieces.iter().all(|&p| sub.last(p) == e));
    assert_eq!(betti(s.complex.assemble()), BTreeMap::from([(0, 1)]));
    assert!(is_equivalence(&s.to_original));
}

#[test]
fn subdivision_preserves_assembly() {
    for k in [tri(), sphere2()] {
        let c = c_id(&k);
        let s = subdivide(&c).unwrap();
        assert!(is_equivalence(&s.to_original));
        assert_eq!(betti(s.complex.assemble()), betti(c.assemble()));
    }
}

#[test]
fn subdivided_fundamental_complex_stays_local() {
    let k = sphere2();
    let sapc = symmetric_construction(&k).unwrap();
    let s = subdivide(&sapc.complex).unwrap();
    assert!(is_equivalence(&s.to_original));
    let finer = symmetric_construction(&barycentric(&k).sd).unwrap();
    assert!(is_nondegenerate(
        &finer.complex,
        &finer.complex,
        &finer.structure.phi[0],
        2,
        Mode::Local
    )
    .unwrap());
    for rho in 0..s.complex.base().len() {
        let dim = s.complex.base().simplex_dim(rho) as i64;
        let here = betti(&s.complex.local(rho).unwrap().0);
        assert_eq!(here, BTreeMap::from([(2 - dim, 1)]), "piece {rho}");
        assert_eq!(here, betti(&finer.complex.local(rho).unwrap().0));
    }
}
