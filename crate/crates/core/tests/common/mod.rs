//! Oracles independent of the library's elimination code.
#![allow(dead_code)]

use rand::Rng;
use zxl::intlin::{Int, SparseIntMat};

pub type Dense = Vec<Vec<i64>>;

pub fn det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        n => (0..n)
            .map(|j| {
                let minor: Dense = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Nonzero invariant factors from gcds of minors: `e_k = d_k / d_{k-1}`.
pub fn invariant_factors(a: &Dense, cols: usize) -> Vec<i128> {
    let rows = a.len();
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for r in subsets(rows, k) {
            for c in subsets(cols, k) {
                let m: Dense = r
                    .iter()
                    .map(|&i| c.iter().map(|&j| a[i][j]).collect())
                    .collect();
                g = gcd(g, det(&m));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// `(betti, torsion)` at the middle of `d_lo ∘ d_hi`.
pub fn homology_oracle(
    d_hi: &Dense,
    hi_cols: usize,
    d_lo: &Dense,
    mid: usize,
) -> (usize, Vec<i128>) {
    let r_hi = invariant_factors(d_hi, hi_cols);
    let r_lo = invariant_factors(d_lo, mid).len();
    (
        mid - r_lo - r_hi.len(),
        r_hi.into_iter().filter(|&e| e != 1).collect(),
    )
}

pub fn random_dense(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Dense {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

pub fn to_sparse(a: &Dense, rows: usize, cols: usize) -> SparseIntMat {
    let t = a.iter().enumerate().flat_map(|(i, r)| {
        r.iter()
            .enumerate()
            .map(move |(j, v)| (i, j, Int::from(*v)))
    });
    SparseIntMat::from_triplets(rows, cols, t.collect::<Vec<_>>())
}

pub fn to_i64(m: &SparseIntMat) -> Dense {
    m.to_dense()
        .iter()
        .map(|r| r.iter().map(|v| v.to_i64().unwrap()).collect())
        .collect()
}

fn mul(a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Composable pair `C_{k+1} -> C_k -> C_{k-1}` with `mid ≤ 5`: block
/// matrices with complementary supports, conjugated by a random unimodular
/// change of basis of the middle.
pub fn random_pair(rng: &mut impl Rng) -> (Dense, usize, Dense, usize, usize) {
    let mid = rng.gen_range(1..=5);
    let (p, q) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
    let split = rng.gen_range(0..=mid);
    let mut x = random_dense(rng, mid, p, 3);
    let mut y = random_dense(rng, q, mid, 3);
    for (i, row) in x.iter_mut().enumerate() {
        if i >= split {
            row.iter_mut().for_each(|v| *v = 0);
        }
    }
    for row in y.iter_mut() {
        row[..split].iter_mut().for_each(|v| *v = 0);
    }
    // u and its inverse from elementary operations
    let mut u: Dense = (0..mid)
        .map(|i| (0..mid).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut ui = u.clone();
    for _ in 0..3 {
        if mid < 2 {
            break;
        }
        let (i, j) = (rng.gen_range(0..mid), rng.gen_range(0..mid));
        if i == j {
            continue;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        // u <- (I + c e_ij) u, ui <- ui (I - c e_ij)
        let rj = u[j].clone();
        u[i].iter_mut().zip(rj).for_each(|(a, b)| *a += c * b);
        for r in ui.iter_mut() {
            r[j] -= c * r[i];
        }
    }
    let d_hi = mul(&u, &x, mid, p);
    let d_lo = mul(&y, &ui, mid, mid);
    (d_hi, p, d_lo, q, mid)
}
