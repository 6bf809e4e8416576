//! Smith normal form by sparse pivoting elimination.
//!
//! Pivots are chosen as the nonzero entry of minimal absolute value in the
//! active submatrix, ties broken by lowest row and then lowest column. The
//! result is deterministic for a fixed input.

use std::collections::{BTreeMap, BTreeSet};

use super::{Int, SparseIntMat};

type Row = BTreeMap<usize, Int>;

/// `U * A * V = diag(divisors)` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub divisors: Vec<Int>,
    pub u: SparseIntMat,
    pub v: SparseIntMat,
    /// Inverse of `u`, filled only when requested.
    pub u_inv: Option<SparseIntMat>,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The diagonal matrix `U * A * V` with the shape of `A`.
    pub fn diagonal(&self) -> SparseIntMat {
        SparseIntMat::from_triplets(
            self.u.rows(),
            self.v.cols(),
            self.divisors
                .iter()
                .enumerate()
                .map(|(i, d)| (i, i, d.clone())),
        )
    }
}

#[derive(Clone, Copy)]
struct Track {
    u: bool,
    u_inv: bool,
    v: bool,
}

struct Work {
    rows: Vec<Row>,
    colsets: Vec<BTreeSet<usize>>,
    u: Option<Vec<Row>>,
    u_inv_t: Option<Vec<Row>>,
    v_t: Option<Vec<Row>>,
}

fn unit_rows(n: usize) -> Vec<Row> {
    (0..n).map(|i| BTreeMap::from([(i, Int::ONE)])).collect()
}

/// `target += c * src`, both sparse rows.
fn axpy(target: &mut Row, c: &Int, src: &Row) {
    for (j, v) in src {
        let e = target.entry(*j).or_default();
        e.add_mul(c, v);
        if e.is_zero() {
            target.remove(j);
        }
    }
}

impl Work {
    fn new(a: &SparseIntMat, track: Track) -> Self {
        let mut rows = vec![Row::new(); a.rows()];
        let mut colsets = vec![BTreeSet::new(); a.cols()];
        for (i, j, v) in a.entries() {
            rows[*i].insert(*j, v.clone());
            colsets[*j].insert(*i);
        }
        Work {
            rows,
            colsets,
            u: track.u.then(|| unit_rows(a.rows())),
            u_inv_t: track.u_inv.then(|| unit_rows(a.rows())),
            v_t: track.v.then(|| unit_rows(a.cols())),
        }
    }

    /// row_i += c * row_r
    fn row_add(&mut self, i: usize, r: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        let src = self.rows[r].clone();
        let target = &mut self.rows[i];
        for (j, v) in &src {
            let e = target.entry(*j).or_default();
            let was_zero = e.is_zero();
            e.add_mul(c, v);
            if e.is_zero() {
                target.remove(j);
                self.colsets[*j].remove(&i);
            } else if was_zero {
                self.colsets[*j].insert(i);
            }
        }
        if let Some(u) = &mut self.u {
            let s = u[r].clone();
            axpy(&mut u[i], c, &s);
        }
        if let Some(ui) = &mut self.u_inv_t {
            let s = ui[i].clone();
            axpy(&mut ui[r], &-c, &s);
        }
    }

    /// col_j += c * col_k
    fn col_add(&mut self, j: usize, k: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        let touched: Vec<usize> = self.colsets[k].iter().copied().collect();
        for i in touched {
            let vk = self.rows[i][&k].clone();
            let e = self.rows[i].entry(j).or_default();
            let was_zero = e.is_zero();
            e.add_mul(c, &vk);
            if e.is_zero() {
                self.rows[i].remove(&j);
                self.colsets[j].remove(&i);
            } else if was_zero {
                self.colsets[j].insert(i);
            }
        }
        if let Some(vt) = &mut self.v_t {
            let s = vt[k].clone();
            axpy(&mut vt[j], c, &s);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for v in self.rows[r].values_mut() {
            *v = -&*v;
        }
        if let Some(u) = &mut self.u {
            for v in u[r].values_mut() {
                *v = -&*v;
            }
        }
        if let Some(ui) = &mut self.u_inv_t {
            for v in ui[r].values_mut() {
                *v = -&*v;
            }
        }
    }

    fn entry(&self, i: usize, j: usize) -> Int {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    fn find_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                let better = match &best {
                    None => true,
                    Some((_, _, b)) => v.cmp_abs(b) == std::cmp::Ordering::Less,
                };
                if better {
                    if v.is_unit() {
                        return Some((i, *j));
                    }
                    best = Some((i, *j, v.clone()));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Runs elimination at a pivot until its row and column are clear and
    /// the pivot divides every remaining active entry. Returns final (r, c).
    fn settle(&mut self, mut r: usize, mut c: usize) -> (usize, usize) {
        loop {
            // column
            let p = self.entry(r, c);
            let others: Vec<usize> = self.colsets[c]
                .iter()
                .copied()
                .filter(|&i| i != r)
                .collect();
            for i in &others {
                let q = self.entry(*i, c).div_rem_trunc(&p).0;
                self.row_add(*i, r, &-q);
            }
            let rest: Vec<usize> = self.colsets[c]
                .iter()
                .copied()
                .filter(|&i| i != r)
                .collect();
            if let Some(&nr) = rest.iter().min_by(|a, b| {
                self.entry(**a, c)
                    .cmp_abs(&self.entry(**b, c))
                    .then(a.cmp(b))
            }) {
                r = nr;
                continue;
            }
            // row
            let p = self.entry(r, c);
            let others: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
            for j in &others {
                let q = self.entry(r, *j).div_rem_trunc(&p).0;
                self.col_add(*j, c, &-q);
            }
            let rest: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
            if let Some(&nc) = rest.iter().min_by(|a, b| {
                self.entry(r, **a)
                    .cmp_abs(&self.entry(r, **b))
                    .then(a.cmp(b))
            }) {
                c = nc;
                continue;
            }
            // divisibility
            let p = self.entry(r, c);
            if !p.is_unit() {
                let bad = self.rows.iter().enumerate().find_map(|(i, row)| {
                    if i == r {
                        return None;
                    }
                    row.iter().find(|(_, v)| !p.divides(v)).map(|_| i)
                });
                if let Some(i) = bad {
                    self.row_add(r, i, &Int::ONE);
                    continue;
                }
            }
            return (r, c);
        }
    }

    fn remove(&mut self, r: usize, c: usize) {
        self.rows[r].clear();
        self.colsets[c].clear();
    }
}

struct Outcome {
    divisors: Vec<Int>,
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    work: Work,
}

fn run(a: &SparseIntMat, track: Track) -> Outcome {
    let mut work = Work::new(a, track);
    let mut divisors = Vec::new();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    while let Some((r0, c0)) = work.find_pivot() {
        let (r, c) = work.settle(r0, c0);
        if work.entry(r, c).is_negative() {
            work.negate_row(r);
        }
        divisors.push(work.entry(r, c));
        pivot_rows.push(r);
        pivot_cols.push(c);
        work.remove(r, c);
    }
    Outcome {
        divisors,
        pivot_rows,
        pivot_cols,
        work,
    }
}

fn order_with_pivots_first(n: usize, pivots: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &p in pivots {
        seen[p] = true;
        order.push(p);
    }
    order.extend((0..n).filter(|i| !seen[*i]));
    order
}

fn rows_to_matrix(rows: &[Row], order: &[usize], ncols: usize) -> SparseIntMat {
    SparseIntMat::from_triplets(
        order.len(),
        ncols,
        order
            .iter()
            .enumerate()
            .flat_map(|(new, &old)| rows[old].iter().map(move |(j, v)| (new, *j, v.clone()))),
    )
}

/// Full decomposition with both transforms.
pub fn smith_normal_form(a: &SparseIntMat) -> SmithDecomposition {
    decompose(a, false)
}

/// Full decomposition that also records `U^{-1}`.
pub fn smith_normal_form_with_inverse(a: &SparseIntMat) -> SmithDecomposition {
    decompose(a, true)
}

fn decompose(a: &SparseIntMat, with_inverse: bool) -> SmithDecomposition {
    let out = run(
        a,
        Track {
            u: true,
            u_inv: with_inverse,
            v: true,
        },
    );
    let row_order = order_with_pivots_first(a.rows(), &out.pivot_rows);
    let col_order = order_with_pivots_first(a.cols(), &out.pivot_cols);
    let u = rows_to_matrix(out.work.u.as_ref().unwrap(), &row_order, a.rows());
    // v_t rows are columns of V; permute them into pivot order
    let v = rows_to_matrix(out.work.v_t.as_ref().unwrap(), &col_order, a.cols()).transpose();
    let u_inv = out
        .work
        .u_inv_t
        .as_ref()
        .map(|t| rows_to_matrix(t, &row_order, a.rows()).transpose());
    SmithDecomposition {
        rank: out.divisors.len(),
        divisors: out.divisors,
        u,
        v,
        u_inv,
    }
}

/// Nonzero elementary divisors only; no transforms are tracked.
pub fn elementary_divisors(a: &SparseIntMat) -> Vec<Int> {
    run(
        a,
        Track {
            u: false,
            u_inv: false,
            v: false,
        },
    )
    .divisors
}

pub fn rank(a: &SparseIntMat) -> usize {
    elementary_divisors(a).len()
}
