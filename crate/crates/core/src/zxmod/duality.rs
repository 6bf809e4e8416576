use std::collections::{BTreeMap, HashMap};

use super::{Gen, XComplex, XMap};
use crate::chainkit::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::intlin::{solve_integer, Int, SparseIntMat};

fn sign(e: usize) -> Int {
    if e.is_multiple_of(2) {
        Int::ONE
    } else {
        Int::from(-1)
    }
}

impl XComplex {
    /// Sorted position of a generator.
    pub fn index_of(&self, k: i64, g: &Gen) -> Option<usize> {
        self.gens(k).binary_search(g).ok()
    }
}

fn t_gen(g: &Gen, tau: usize) -> Gen {
    let mut label = g.label.clone();
    label.push(tau);
    Gen { piece: tau, label }
}

/// The chain duality `T`.
///
/// A generator `g` of degree `k` over `σ` contributes, for each face `τ ≤ σ`,
/// a generator over `τ` of degree `-k-|τ|`; these carry the simplicial
/// coboundary of the closed simplex `σ̄`, and the differential of `C`
/// enters transposed with sign `(-1)^|τ|`.
pub fn dual_t(c: &XComplex) -> Result<XComplex> {
    let base = c.base();
    let mut gens: BTreeMap<i64, Vec<Gen>> = BTreeMap::new();
    for (&k, gs) in c.all_gens() {
        for g in gs {
            for tau in base.closure(g.piece) {
                gens.entry(-k - base.simplex_dim(tau) as i64)
                    .or_default()
                    .push(t_gen(g, tau));
            }
        }
    }
    // Positions before sorting.
    let pos: HashMap<(i64, Gen), usize> = gens
        .iter()
        .flat_map(|(&t, gs)| gs.iter().enumerate().map(move |(i, g)| ((t, g.clone()), i)))
        .collect();
    let mut trip: BTreeMap<i64, Vec<(usize, usize, Int)>> = BTreeMap::new();
    for (&k, gs) in c.all_gens() {
        for g in gs {
            for tau in base.closure(g.piece) {
                let t = -k - base.simplex_dim(tau) as i64;
                let from = pos[&(t, t_gen(g, tau))];
                for &rho in base.cofaces(tau) {
                    if !base.is_face(rho, g.piece) {
                        continue;
                    }
                    let i = base.faces(rho).iter().position(|&f| f == tau).unwrap();
                    let to = pos[&(t - 1, t_gen(g, rho))];
                    trip.entry(t).or_default().push((to, from, sign(i)));
                }
            }
        }
    }
    // Transposed differential: d has g -> g' (degree k -> k-1); T(d) sends
    // (g', τ) to (g, τ) for τ ≤ piece(g).
    for k in c.assemble().degrees() {
        for (i, j, v) in c.assemble().d(k).entries() {
            let (g, gp) = (&c.gens(k)[*j], &c.gens(k - 1)[*i]);
            for tau in base.closure(g.piece) {
                let dim = base.simplex_dim(tau);
                let t = -(k - 1) - dim as i64;
                let from = pos[&(t, t_gen(gp, tau))];
                let to = pos[&(t - 1, t_gen(g, tau))];
                trip.entry(t).or_default().push((to, from, &sign(dim) * v));
            }
        }
    }
    let diffs = trip
        .into_iter()
        .map(|(t, tr)| {
            let rows = gens.get(&(t - 1)).map_or(0, Vec::len);
            (t, SparseIntMat::from_triplets(rows, gens[&t].len(), tr))
        })
        .collect();
    XComplex::new(c.base_arc().clone(), gens, diffs)
}

/// `T(f): T(B) -> T(A)` for `f: A -> B`, restricting to faces.
pub fn dual_t_map(f: &XMap) -> Result<XMap> {
    let (ta, tb) = (dual_t(&f.source)?, dual_t(&f.target)?);
    let base = f.source.base();
    let mut trip: BTreeMap<i64, Vec<(usize, usize, Int)>> = BTreeMap::new();
    for k in f.source.assemble().degrees() {
        for (i, j, v) in f.map.at(k).entries() {
            let (a, b) = (&f.source.gens(k)[*j], &f.target.gens(k)[*i]);
            for tau in base.closure(a.piece) {
                let t = -k - base.simplex_dim(tau) as i64;
                let from = tb.index_of(t, &t_gen(b, tau)).expect("generator of TB");
                let to = ta.index_of(t, &t_gen(a, tau)).expect("generator of TA");
                trip.entry(t).or_default().push((to, from, v.clone()));
            }
        }
    }
    let maps = trip
        .into_iter()
        .map(|(t, tr)| {
            (
                t,
                SparseIntMat::from_triplets(ta.gens(t).len(), tb.gens(t).len(), tr),
            )
        })
        .collect();
    XMap::new(tb, ta, maps)
}

/// Solves for a triangular chain map `T²C -> C` that is the identity on the
/// summands `((g, σ), σ) -> g`, and checks that it is an equivalence.
pub fn unit_e(c: &XComplex) -> Result<XMap> {
    let tt = dual_t(&dual_t(c)?)?;
    let base = c.base();
    // Unknowns: components x -> y of equal degree with piece(x) ≤ piece(y).
    let mut var: HashMap<(i64, usize, usize), usize> = HashMap::new();
    let mut fixed: HashMap<(i64, usize, usize), Int> = HashMap::new();
    let piece_by_label: HashMap<(i64, &[usize]), usize> = c
        .all_gens()
        .iter()
        .flat_map(|(&k, gs)| gs.iter().map(move |g| ((k, g.label.as_slice()), g.piece)))
        .collect();
    for (&t, xs) in tt.all_gens() {
        for (xi, x) in xs.iter().enumerate() {
            // x = ((g, τ), ρ); the distinguished ones have τ = ρ = piece(g).
            let l = &x.label;
            let g_label = &l[..l.len() - 2];
            let special = l[l.len() - 1] == l[l.len() - 2]
                && piece_by_label.get(&(t, g_label)) == Some(&l[l.len() - 1]);
            for (yi, y) in c.gens(t).iter().enumerate() {
                if !base.is_face(x.piece, y.piece) {
                    continue;
                }
                if special && y.piece == x.piece {
                    let v = if y.label == g_label {
                        Int::ONE
                    } else {
                        Int::ZERO
                    };
                    fixed.insert((t, yi, xi), v);
                } else {
                    let n = var.len();
                    var.insert((t, yi, xi), n);
                }
            }
        }
    }
    // Equations e D = d e, one per (degree t of x, x, y in degree t-1).
    let mut trip = Vec::new();
    let mut rhs = Vec::new();
    let mut eq = 0usize;
    let s = tt.assemble();
    let a = c.assemble();
    for t in s.degrees() {
        let ds = s.d(t).col_lists();
        let da = a.d(t).col_lists();
        // column lists of e at degree t indexed by x: y entries
        for xi in 0..s.rank(t) {
            let mut row_terms: BTreeMap<usize, Vec<(Option<usize>, Int)>> = BTreeMap::new();
            // (e D)[y][x] = Σ_{x'} e[y][x'] D[x'][x], e at degree t-1.
            for (xp, dv) in &ds[xi] {
                for y in 0..a.rank(t - 1) {
                    let key = (t - 1, y, *xp);
                    if let Some(&n) = var.get(&key) {
                        row_terms.entry(y).or_default().push((Some(n), dv.clone()));
                    } else if let Some(f) = fixed.get(&key) {
                        row_terms.entry(y).or_default().push((None, f * dv));
                    }
                }
            }
            // -(d e)[y][x] = -Σ_{y'} d[y][y'] e[y'][x], e at degree t.
            for yp in 0..a.rank(t) {
                let key = (t, yp, xi);
                let (v, f) = (var.get(&key), fixed.get(&key));
                if v.is_none() && f.is_none() {
                    continue;
                }
                for (y, dv) in &da[yp] {
                    match (v, f) {
                        (Some(&n), _) => row_terms.entry(*y).or_default().push((Some(n), -dv)),
                        (None, Some(fv)) => {
                            row_terms.entry(*y).or_default().push((None, -(fv * dv)))
                        }
                        _ => {}
                    }
                }
            }
            for (_, terms) in row_terms {
                let mut constant = Int::ZERO;
                for (n, v) in terms {
                    match n {
                        Some(n) => trip.push((eq, n, v)),
                        None => constant += &v,
                    }
                }
                rhs.push(-constant);
                eq += 1;
            }
        }
    }
    let m = SparseIntMat::from_triplets(eq, var.len(), trip);
    let sol = solve_integer(&m, &rhs)?
        .ok_or_else(|| Error::Lifting("no triangular unit map exists".into()))?;
    let mut maps: BTreeMap<i64, Vec<(usize, usize, Int)>> = BTreeMap::new();
    for ((t, y, x), v) in fixed {
        maps.entry(t).or_default().push((y, x, v));
    }
    for ((t, y, x), n) in var {
        maps.entry(t).or_default().push((y, x, sol[n].clone()));
    }
    let maps = maps
        .into_iter()
        .map(|(t, tr)| (t, SparseIntMat::from_triplets(a.rank(t), s.rank(t), tr)))
        .collect();
    let e = XMap::new(tt, c.clone(), maps)?;
    if !crate::chainkit::is_equivalence(&e.map) {
        return Err(Error::Lifting("unit map is not an equivalence".into()));
    }
    Ok(e)
}

/// Complex of triangular maps `A -> B`: degree `p` holds components from
/// degree-`k` generators of `A` to degree-`(k+p)` generators of `B` over
/// cofaces, with `D f = d f - (-1)^p f d`.
pub fn hom_complex(a: &XComplex, b: &XComplex) -> Result<FreeComplex> {
    let base = a.base();
    let mut basis: BTreeMap<i64, Vec<(i64, usize, usize)>> = BTreeMap::new();
    for (&k, ga) in a.all_gens() {
        for (&l, gb) in b.all_gens() {
            for (i, x) in ga.iter().enumerate() {
                for (j, y) in gb.iter().enumerate() {
                    if base.is_face(x.piece, y.piece) {
                        basis.entry(l - k).or_default().push((k, i, j));
                    }
                }
            }
        }
    }
    let index: HashMap<(i64, usize, usize), usize> = basis
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(n, key)| (*key, n)))
        .collect();
    let (da, db) = (a.assemble(), b.assemble());
    let mut diffs = BTreeMap::new();
    for (&p, elems) in &basis {
        let mut trip = Vec::new();
        for (col, &(k, i, j)) in elems.iter().enumerate() {
            // d_B f: f = e_j e_i^*, d_B e_j has components in degree k+p-1.
            for (r, v) in &db.d(k + p).col_lists()[j] {
                if let Some(&row) = index.get(&(k, i, *r)) {
                    trip.push((row, col, v.clone()));
                }
            }
            // -(-1)^p f d_A: (f d_A)(e_{i'}) = coefficient of e_i in d e_{i'}.
            let dak = da.d(k + 1);
            for (ip, v) in &dak.row_lists()[i] {
                if let Some(&row) = index.get(&(k + 1, *ip, j)) {
                    let s = if p.rem_euclid(2) == 0 { -v } else { v.clone() };
                    trip.push((row, col, s));
                }
            }
        }
        let rows = basis.get(&(p - 1)).map_or(0, Vec::len);
        diffs.insert(p, SparseIntMat::from_triplets(rows, elems.len(), trip));
    }
    let ranks = basis.iter().map(|(&p, v)| (p, v.len())).collect();
    FreeComplex::from_maps(&ranks, &diffs)
}

/// Homotopy version of the coherence `e(TA) ∘ T(e(A)) = id_{TA}`.
pub fn coherence_holds(a: &XComplex) -> Result<bool> {
    let ea = unit_e(a)?;
    let t_ea = dual_t_map(&ea)?;
    let ta = dual_t(a)?;
    let eta = unit_e(&ta)?;
    let comp = eta.compose(&t_ea)?;
    let id = ChainMap::identity(ta.assemble());
    Ok(crate::chainkit::find_homotopy(&comp.map, &id)?.is_some())
}
