use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chainkit::ChainMap;
use crate::error::{Error, Result};
use crate::intlin::{solve_integer, Int, SparseIntMat};
use crate::simpkit::{barycentric, simplex_key, SimpComplex, SimplexId};
use crate::zxmod::{Gen, XComplex};

/// A complex over `X′` with its comparison to the original assembly.
#[derive(Clone, Debug)]
pub struct Subdivided {
    pub complex: XComplex,
    /// `C′ -> C`: `(g, ρ) ↦ ε(ρ) g` on top flags, zero elsewhere.
    pub to_original: ChainMap,
}

/// `(g, ρ)` with `g = (k, i)` a generator of `C` over `last(ρ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Cell {
    k: i64,
    g: usize,
    rho: SimplexId,
    shift: i64,
}

impl Cell {
    fn deg(&self) -> i64 {
        self.k + self.shift
    }
}

/// Subdivision over `X′`.
///
/// Over a flag `ρ` ending at `σ` sits `C(σ)` raised by `|σ| - |ρ|`; the
/// flags ending at `σ` assemble into `C(σ) ⊗ E(σ)`, `E(σ)` being the relative
/// cochains of `(sd σ̄, sd ∂σ̄)`. Components towards larger simplices are
/// solved for, top dimension first, subject to `D² = 0`, support, and `C′ -> C`
/// being a chain map.
pub fn subdivide(c: &XComplex) -> Result<Subdivided> {
    let base = c.base();
    let sub = barycentric(base);
    let sd_chains = sub.sd_chains();
    let eps = |rho: SimplexId| -> Int {
        sd_chains[sub.last(rho)]
            .get(&rho)
            .cloned()
            .unwrap_or_default()
    };
    let contains = |big: SimplexId, small: SimplexId| {
        let b = sub.flag(big);
        sub.flag(small).iter().all(|e| b.binary_search(e).is_ok())
    };
    let mut by_last: Vec<Vec<SimplexId>> = vec![Vec::new(); base.len()];
    for rho in 0..sub.sd.len() {
        by_last[sub.last(rho)].push(rho);
    }
    // δρ = Σ (-1)^i ρ' over ρ = ∂_i ρ' with the same last element
    let delta = |rho: SimplexId| -> Vec<(SimplexId, Int)> {
        sub.sd
            .cofaces(rho)
            .iter()
            .filter(|&&r| sub.last(r) == sub.last(rho))
            .map(|&r| {
                let i = sub
                    .sd
                    .faces(r)
                    .iter()
                    .position(|&f| f == rho)
                    .expect("codimension one");
                (r, Int::pow_sign(i as i64))
            })
            .collect()
    };
    let asm = c.assemble();
    let d_cols: BTreeMap<i64, Vec<Vec<(usize, Int)>>> =
        asm.degrees().map(|k| (k, asm.d(k).col_lists())).collect();
    let dg = |k: i64, g: usize| -> Vec<(usize, Int)> {
        d_cols.get(&k).map_or(Vec::new(), |v| v[g].clone())
    };

    let mut cells: Vec<Cell> = Vec::new();
    let mut built_at: Vec<Vec<usize>> = vec![Vec::new(); sub.sd.len()];
    let mut dmap: Vec<Vec<(usize, Int)>> = Vec::new();
    let mut sigmas: Vec<SimplexId> = (0..base.len()).collect();
    sigmas.sort_by_key(|&s| std::cmp::Reverse(base.simplex_dim(s)));
    for sigma in sigmas {
        let dim = base.simplex_dim(sigma) as i64;
        let start = cells.len();
        for (&k, gs) in c.all_gens() {
            for (g, gen) in gs.iter().enumerate() {
                if gen.piece == sigma {
                    for &rho in &by_last[sigma] {
                        cells.push(Cell {
                            k,
                            g,
                            rho,
                            shift: dim - sub.sd.simplex_dim(rho) as i64,
                        });
                    }
                }
            }
        }
        if cells.len() == start {
            continue;
        }
        let index: HashMap<(i64, usize, SimplexId), usize> = cells[start..]
            .iter()
            .enumerate()
            .map(|(i, x)| ((x.k, x.g, x.rho), start + i))
            .collect();
        let inner: Vec<Vec<(usize, Int)>> = cells[start..]
            .iter()
            .map(|x| {
                let mut out: Vec<(usize, Int)> = dg(x.k, x.g)
                    .into_iter()
                    .filter(|(h, _)| c.piece(x.k - 1, *h) == sigma)
                    .map(|(h, v)| (index[&(x.k - 1, h, x.rho)], v))
                    .collect();
                let s = Int::pow_sign(x.k);
                out.extend(
                    delta(x.rho)
                        .into_iter()
                        .map(|(r, v)| (index[&(x.k, x.g, r)], &s * &v)),
                );
                out
            })
            .collect();

        let phi = match cellwise(
            &cells,
            start,
            &inner,
            &dmap,
            &built_at,
            &sub.sd,
            &eps,
            &dg,
            &|h| c.piece(h.0, h.1) != sigma,
        )? {
            Some(phi) => phi,
            None => jointly(
                &cells,
                start,
                &inner,
                &dmap,
                &eps,
                &dg,
                &|h| c.piece(h.0, h.1) != sigma,
                &contains,
            )?
            .ok_or_else(|| {
                Error::Lifting(format!(
                    "no subdivided differential over {}",
                    simplex_key(base.simplex(sigma))
                ))
            })?,
        };
        for (xi, (mut col, extra)) in (start..cells.len()).zip(inner.into_iter().zip(phi)) {
            col.extend(extra);
            built_at[cells[xi].rho].push(xi);
            dmap.push(col);
        }
    }

    // assemble in sorted generator order so positions are known
    let gen_of = |x: &Cell| Gen {
        piece: x.rho,
        label: c.gens(x.k)[x.g].label.clone(),
    };
    let mut order: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, x) in cells.iter().enumerate() {
        order.entry(x.deg()).or_default().push(i);
    }
    let mut pos = vec![0; cells.len()];
    for list in order.values_mut() {
        list.sort_by_key(|&i| gen_of(&cells[i]));
        for (p, &i) in list.iter().enumerate() {
            pos[i] = p;
        }
    }
    let gens: BTreeMap<i64, Vec<Gen>> = order
        .iter()
        .map(|(&t, list)| (t, list.iter().map(|i| gen_of(&cells[*i])).collect()))
        .collect();
    let rank = |t: i64| order.get(&t).map_or(0, Vec::len);
    let mut diffs = BTreeMap::new();
    let mut proj = BTreeMap::new();
    let pos = &pos;
    for (&t, list) in &order {
        let trip = list.iter().flat_map(|&i| {
            dmap[i]
                .iter()
                .map(move |(r, v)| (pos[*r], pos[i], v.clone()))
        });
        diffs.insert(
            t,
            SparseIntMat::from_triplets(rank(t - 1), list.len(), trip.collect::<Vec<_>>()),
        );
        let trip = list
            .iter()
            .filter(|&&i| cells[i].shift == 0)
            .map(|&i| (cells[i].g, pos[i], eps(cells[i].rho)));
        proj.insert(
            t,
            SparseIntMat::from_triplets(asm.rank(t), list.len(), trip.collect::<Vec<_>>()),
        );
    }
    let complex = XComplex::new(Arc::new(sub.sd.clone()), gens, diffs)?;
    let to_original = ChainMap::new(complex.assemble().clone(), asm.clone(), proj)?;
    Ok(Subdivided {
        complex,
        to_original,
    })
}

type Column = Vec<(usize, Int)>;

/// `Φ(x)` one cell at a time, lowest degree first; `None` if some choice
/// turns out to be obstructed.
#[allow(clippy::too_many_arguments)]
fn cellwise(
    cells: &[Cell],
    start: usize,
    inner: &[Column],
    dmap: &[Column],
    built_at: &[Vec<usize>],
    sd: &SimpComplex,
    eps: &dyn Fn(SimplexId) -> Int,
    dg: &dyn Fn(i64, usize) -> Column,
    outside: &dyn Fn((i64, usize)) -> bool,
) -> Result<Option<Vec<Column>>> {
    let mut todo: Vec<usize> = (start..cells.len()).collect();
    todo.sort_by_key(|&i| cells[i].deg());
    let mut phi: Vec<Column> = vec![Vec::new(); cells.len() - start];
    for xi in todo {
        let x = cells[xi];
        let ys: Vec<usize> = sd
            .star(x.rho)
            .into_iter()
            .flat_map(|r| built_at[r].iter().copied())
            .filter(|&y| cells[y].deg() == x.deg() - 1)
            .collect();
        let mut rows: HashMap<(u8, usize), usize> = HashMap::new();
        let mut row = |key| {
            let n = rows.len();
            *rows.entry(key).or_insert(n)
        };
        let mut trip = Vec::new();
        let mut rhs = Vec::new();
        for (v, &yi) in ys.iter().enumerate() {
            for (zi, w) in &dmap[yi] {
                trip.push((row((0, *zi)), v, w.clone()));
            }
            let y = cells[yi];
            let e = eps(y.rho);
            if y.shift == 0 && !e.is_zero() {
                trip.push((row((1, y.g)), v, e));
            }
        }
        for (ti, w) in &inner[xi - start] {
            for (yi, u) in &phi[ti - start] {
                rhs.push((row((0, *yi)), -(w * u)));
            }
        }
        let e = eps(x.rho);
        if x.shift == 0 && !e.is_zero() {
            for (h, w) in dg(x.k, x.g) {
                if outside((x.k - 1, h)) {
                    rhs.push((row((1, h)), &e * &w));
                }
            }
        }
        let mut b = vec![Int::ZERO; rows.len()];
        for (r, v) in rhs {
            b[r] += &v;
        }
        let Some(sol) =
            solve_integer(&SparseIntMat::from_triplets(rows.len(), ys.len(), trip), &b)?
        else {
            return Ok(None);
        };
        phi[xi - start] = ys
            .into_iter()
            .zip(sol)
            .filter(|(_, v)| !v.is_zero())
            .collect();
    }
    Ok(Some(phi))
}

/// All of `Φ` over one simplex as a single system.
#[allow(clippy::too_many_arguments)]
fn jointly(
    cells: &[Cell],
    start: usize,
    inner: &[Column],
    dmap: &[Column],
    eps: &dyn Fn(SimplexId) -> Int,
    dg: &dyn Fn(i64, usize) -> Column,
    outside: &dyn Fn((i64, usize)) -> bool,
    contains: &dyn Fn(SimplexId, SimplexId) -> bool,
) -> Result<Option<Vec<Column>>> {
    // unknown coefficient of built cell `y` in Φ(x)
    let mut var: HashMap<(usize, usize), usize> = HashMap::new();
    for xi in start..cells.len() {
        let x = cells[xi];
        for (yi, y) in cells[..start].iter().enumerate() {
            if y.deg() == x.deg() - 1 && contains(y.rho, x.rho) {
                let n = var.len();
                var.insert((xi, yi), n);
            }
        }
    }
    let mut rows: HashMap<(u8, usize, usize), usize> = HashMap::new();
    let mut row = |key| {
        let n = rows.len();
        *rows.entry(key).or_insert(n)
    };
    let mut trip = Vec::new();
    let mut rhs: Vec<(usize, Int)> = Vec::new();
    for (&(xi, yi), &v) in &var {
        for (zi, w) in &dmap[yi] {
            trip.push((row((0, xi, *zi)), v, w.clone()));
        }
        let y = cells[yi];
        let e = eps(y.rho);
        if y.shift == 0 && !e.is_zero() {
            trip.push((row((1, xi, y.g)), v, e));
        }
    }
    for xi in start..cells.len() {
        for (ti, w) in &inner[xi - start] {
            for yi in 0..start {
                if let Some(&v) = var.get(&(*ti, yi)) {
                    trip.push((row((0, xi, yi)), v, w.clone()));
                }
            }
        }
        let x = cells[xi];
        let e = eps(x.rho);
        if x.shift == 0 && !e.is_zero() {
            for (h, w) in dg(x.k, x.g) {
                if outside((x.k - 1, h)) {
                    rhs.push((row((1, xi, h)), &e * &w));
                }
            }
        }
    }
    let mut b = vec![Int::ZERO; rows.len()];
    for (r, v) in rhs {
        b[r] += &v;
    }
    let Some(sol) = solve_integer(
        &SparseIntMat::from_triplets(rows.len(), var.len(), trip),
        &b,
    )?
    else {
        return Ok(None);
    };
    let mut phi: Vec<Column> = vec![Vec::new(); cells.len() - start];
    for (&(xi, yi), &v) in &var {
        if !sol[v].is_zero() {
            phi[xi - start].push((yi, sol[v].clone()));
        }
    }
    Ok(Some(phi))
}
