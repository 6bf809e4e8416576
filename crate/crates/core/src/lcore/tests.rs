use std::collections::BTreeMap;

use super::*;
use crate::chainkit::{tensor, transposition, FreeComplex};
use crate::intlin::{Int, SparseVec};
use crate::simpkit::{fundamental_cycle, SimpComplex, SimplexChain};
use crate::zxmod::{WChain, XComplex};

fn point_form(m: &[Vec<i64>]) -> (XComplex, SymStructure) {
    let c = XComplex::over_point(&FreeComplex::concentrated(0, m.len()));
    (
        c,
        SymStructure {
            n: 0,
            phi: vec![form_chain(0, m)],
        },
    )
}

fn boundary_of_simplex(n: usize) -> SimpComplex {
    let facets: Vec<Vec<usize>> = (0..=n + 1)
        .map(|i| (0..=n + 1).filter(|&j| j != i).collect())
        .collect();
    SimpComplex::from_facets(&facets).unwrap()
}

#[test]
fn natural_diagonal_satisfies_its_equation() {
    let diag = NaturalDiagonal::new(3, 3).unwrap();
    for m in 0..=3usize {
        let k = SimpComplex::from_facets(&[(0..=m).collect()]).unwrap();
        let c = k.chains();
        let tc = tensor(&c, &c);
        let tau = transposition(&tc, &tc);
        let top: Vec<usize> = (0..=m).collect();
        let enc = |terms: Vec<(Vec<usize>, Vec<usize>, Int)>| -> SparseVec {
            let mut out = SparseVec::new();
            for (f, b, v) in terms {
                let idx = tc
                    .basis
                    .index(
                        f.len() as i64 - 1,
                        k.local_index(k.id_of(&f).unwrap()),
                        b.len() as i64 - 1,
                        k.local_index(k.id_of(&b).unwrap()),
                    )
                    .unwrap();
                *out.entry(idx).or_default() += &v;
            }
            out.retain(|_, v| !v.is_zero());
            out
        };
        let on = |s: usize, verts: &[usize]| {
            enc(diag
                .on_simplex(s, verts)
                .map(|(f, b, v)| (f, b, v.clone()))
                .collect())
        };
        for s in 1..=3usize {
            let deg = (m + s) as i64;
            let lhs = tc.complex.d(deg).apply_sparse(&on(s, &top));
            let mut rhs = SparseVec::new();
            if m > 0 {
                for i in 0..=m {
                    let face: Vec<usize> = top.iter().copied().filter(|&x| x != i).collect();
                    let sign = if (s + i) % 2 == 0 {
                        Int::ONE
                    } else {
                        -Int::ONE
                    };
                    for (j, v) in on(s, &face) {
                        *rhs.entry(j).or_default() += &(sign.clone() * v);
                    }
                }
            }
            let prev = on(s - 1, &top);
            for (j, v) in &prev {
                *rhs.entry(*j).or_default() += v;
            }
            for (j, v) in tau.at(deg - 1).apply_sparse(&prev) {
                let e = rhs.entry(j).or_default();
                if s % 2 == 0 {
                    *e += &v;
                } else {
                    *e -= &v;
                }
            }
            rhs.retain(|_, v| !v.is_zero());
            assert_eq!(lhs, rhs, "m={m} s={s}");
        }
    }
}

#[test]
fn trivial_validations() {
    let (c, _) = point_form(&[vec![1]]);
    assert!(
        validate_symmetric(&c, &SymStructure::zero(0, 2))
            .unwrap()
            .ok
    );
    // a non-cycle φ_0 on Z --1--> Z
    let x = XComplex::over_point(
        &FreeComplex::new(
            0,
            vec![1, 1],
            vec![crate::intlin::SparseIntMat::from_dense(&[vec![1]])],
        )
        .unwrap(),
    );
    let bad = SymStructure {
        n: 1,
        phi: vec![form_chain(1, &[vec![0]])
            .into_iter()
            .chain([(
                crate::zxmod::WTerm {
                    a: (1, 0),
                    b: (0, 0),
                    tau: 0,
                },
                Int::ONE,
            )])
            .collect()],
    };
    let r = validate_symmetric(&x, &bad).unwrap();
    assert!(!r.ok);
    assert_eq!(r.location, "s=0");
}

#[test]
fn symmetrization_examples() {
    let (c, _) = point_form(&[vec![1]]);
    let q = QuadStructure {
        n: 0,
        psi: vec![form_chain(0, &[vec![1]])],
    };
    assert_eq!(
        symmetrize(&c, &q).unwrap().phi[0],
        form_chain(0, &[vec![2]])
    );
    assert!(symmetrize(&c, &QuadStructure::zero(0, 1))
        .unwrap()
        .phi
        .iter()
        .all(WChain::is_empty));
    let (h, _) = point_form(&[vec![0, 1], vec![0, 0]]);
    let q = QuadStructure {
        n: 0,
        psi: vec![form_chain(0, &[vec![0, 1], vec![0, 0]])],
    };
    let s = symmetrize(&h, &q).unwrap();
    assert_eq!(s.phi[0], form_chain(0, &[vec![0, 1], vec![1, 0]]));
    assert!(validate_symmetric(&h, &s).unwrap().ok);
    assert!(is_nondegenerate(&h, &h, &s.phi[0], 0, Mode::Local).unwrap());
}

#[test]
fn point_forms() {
    for (m, expect) in [
        (vec![vec![1]], true),
        (vec![vec![-1]], true),
        (vec![vec![2]], false),
    ] {
        let (c, s) = point_form(&m);
        for mode in [Mode::Local, Mode::Global] {
            assert_eq!(
                is_nondegenerate(&c, &c, &s.phi[0], 0, mode).unwrap(),
                expect
            );
        }
    }
}

#[test]
fn boundary_of_tetrahedron() {
    let k = boundary_of_simplex(2);
    let s = symmetric_construction(&k).unwrap();
    assert_eq!(s.structure.n, 2);
    assert!(validate_symmetric(&s.complex, &s.structure).unwrap().ok);
    let phi0 = &s.structure.phi[0];
    assert!(local_nondegeneracy(&s.complex, &s.complex, phi0, 2)
        .unwrap()
        .iter()
        .all(|(_, ok)| *ok));
    assert!(is_nondegenerate(&s.complex, &s.complex, phi0, 2, Mode::Global).unwrap());
    // all higher terms are cycles of the right relation: D applied to the family vanishes
    let ctx = crate::zxmod::ProductContext::new(&s.complex, &s.complex).unwrap();
    assert!(hom_w_differential(&ctx, 2, &s.structure.phi)
        .iter()
        .all(WChain::is_empty));
}

#[test]
fn circle_and_wedge() {
    let circle = SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    let s = symmetric_construction(&circle).unwrap();
    assert!(is_nondegenerate(&s.complex, &s.complex, &s.structure.phi[0], 1, Mode::Local).unwrap());
    let wedge = SimpComplex::from_facets(&[
        vec![0, 1],
        vec![1, 2],
        vec![0, 2],
        vec![0, 3],
        vec![3, 4],
        vec![0, 4],
    ])
    .unwrap();
    assert!(fundamental_cycle(&wedge).unwrap().is_none());
    let mut z = SimplexChain::new();
    for (e, v) in [
        ([0, 1], 1),
        ([1, 2], 1),
        ([0, 2], -1),
        ([0, 3], 1),
        ([3, 4], 1),
        ([0, 4], -1),
    ] {
        z.insert(wedge.id_of(&e).unwrap(), Int::from(v));
    }
    let s = symmetric_construction_from_cycle(&wedge, &z).unwrap();
    assert!(validate_symmetric(&s.complex, &s.structure).unwrap().ok);
    let local = local_nondegeneracy(&s.complex, &s.complex, &s.structure.phi[0], 1).unwrap();
    let bad: Vec<_> = local
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(v, _)| wedge.simplex(*v).to_vec())
        .collect();
    assert_eq!(bad, vec![vec![0]]);
    assert!(
        !is_nondegenerate(&s.complex, &s.complex, &s.structure.phi[0], 1, Mode::Global).unwrap()
    );
}

fn e8() -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; 8]; 8];
    for i in 0..8 {
        m[i][i] = 2;
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
        m[a][b] = -1;
        m[b][a] = -1;
    }
    m
}

#[test]
fn signatures() {
    let sig = |m: &[Vec<i64>]| {
        let (c, s) = point_form(m);
        signature(&Sapc {
            complex: c,
            structure: s,
        })
        .unwrap()
    };
    assert_eq!(sig(&[vec![1]]), 1);
    assert_eq!(sig(&[vec![0, 1], vec![1, 0]]), 0);
    assert_eq!(sig(&e8()), 8);
    let neg: Vec<Vec<i64>> = e8()
        .iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect();
    assert_eq!(sig(&neg), -8);
    let (c, s) = point_form(&e8());
    assert!(is_nondegenerate(&c, &c, &s.phi[0], 0, Mode::Global).unwrap());
    let circle = symmetric_construction(
        &SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap(),
    )
    .unwrap();
    assert!(signature(&circle).is_err());
}

#[test]
fn pairs() {
    let edge = SimpComplex::from_facets(&[vec![0, 1]]).unwrap();
    let ends = SimpComplex::new(2, &[vec![0], vec![1]]).unwrap();
    let z = BTreeMap::from([(edge.id_of(&[0, 1]).unwrap(), Int::ONE)]);
    let p = relative_construction(&edge, &ends, &z).unwrap();
    let checks = validate_pair(&p.map, &p.delta, &p.phi).unwrap();
    assert!(checks.iter().all(|c| c.ok), "{checks:?}");
    let disk = SimpComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
    let rim = SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    let z = BTreeMap::from([(disk.id_of(&[0, 1, 2]).unwrap(), Int::ONE)]);
    let p = relative_construction(&disk, &rim, &z).unwrap();
    let checks = validate_pair(&p.map, &p.delta, &p.phi).unwrap();
    assert!(checks.iter().all(|c| c.ok), "{checks:?}");
    // C = 0 reduces to the absolute condition
    let circle = SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    let p = relative_construction(
        &circle,
        &SimpComplex::new(0, &[]).unwrap(),
        &fundamental_cycle(&circle).unwrap().unwrap(),
    )
    .unwrap();
    assert!(p.map.source.assemble().is_zero());
    assert!(validate_pair(&p.map, &p.delta, &p.phi)
        .unwrap()
        .iter()
        .all(|c| c.ok));
    // fold map C ⊕ C -> C with φ ⊕ -φ bounds 0
    let d = p.map.target.clone();
    let dc = d.assemble().clone();
    let cc = XComplex::over_point(&FreeComplex::direct_sum(&[&dc, &dc]));
    let maps = dc
        .degrees()
        .map(|k| {
            let r = dc.rank(k);
            let trip: Vec<_> = (0..r)
                .flat_map(|i| [(i, i, Int::ONE), (i, r + i, Int::ONE)])
                .collect();
            (
                k,
                crate::intlin::SparseIntMat::from_triplets(r, 2 * r, trip),
            )
        })
        .collect();
    let fold = crate::zxmod::XMap::new(cc, d, maps).unwrap();
    let shift = |x: &WChain, sign: i64| -> WChain {
        x.iter()
            .map(|(t, v)| {
                let w = crate::zxmod::WTerm {
                    a: (t.a.0, t.a.1 + dc.rank(t.a.0)),
                    b: (t.b.0, t.b.1 + dc.rank(t.b.0)),
                    tau: 0,
                };
                (w, Int::from(sign) * v.clone())
            })
            .collect()
    };
    let phi = SymStructure {
        n: 1,
        phi: p
            .delta
            .phi
            .iter()
            .map(|x| {
                x.iter()
                    .map(|(t, v)| (*t, v.clone()))
                    .chain(shift(x, -1))
                    .collect()
            })
            .collect(),
    };
    let checks = validate_pair(&fold, &SymStructure::zero(2, 2), &phi).unwrap();
    assert!(checks[0].ok && checks[1].ok, "{checks:?}");
}
