use super::construction::Sapc;
use crate::error::{Error, Result};
use crate::intlin::{kernel_basis, Int};
use crate::zxmod::{ProductContext, XCycle};

/// Inertia `(positive, negative)` of a symmetric integer matrix, by
/// congruence diagonalization over the rationals kept fraction-free.
pub fn inertia(m: &[Vec<Int>]) -> (usize, usize) {
    let mut g: Vec<Vec<Int>> = m.to_vec();
    let n = g.len();
    let (mut pos, mut neg) = (0, 0);
    for p in 0..n {
        if g[p][p].is_zero() {
            if let Some(j) = (p + 1..n).find(|&j| !g[j][j].is_zero()) {
                g.swap(p, j);
                for row in g.iter_mut() {
                    row.swap(p, j);
                }
            } else if let Some(j) = (p + 1..n).find(|&j| !g[p][j].is_zero()) {
                // row/column p += row/column j makes the pivot 2 g[p][j]
                for c in 0..n {
                    let v = g[j][c].clone();
                    g[p][c] += &v;
                }
                for r in 0..n {
                    let v = g[r][j].clone();
                    g[r][p] += &v;
                }
            } else {
                continue;
            }
        }
        let a = g[p][p].clone();
        match a.signum() {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        for j in p + 1..n {
            let b = g[j][p].clone();
            if b.is_zero() {
                continue;
            }
            // R_j <- a R_j - b R_p, then the same on columns
            for c in 0..n {
                g[j][c] = a.clone() * &g[j][c] - b.clone() * &g[p][c];
            }
            for r in 0..n {
                g[r][j] = a.clone() * &g[r][j] - b.clone() * &g[r][p];
            }
        }
    }
    (pos, neg)
}

/// Signature of the pairing on middle cohomology modulo torsion of the
/// assembled complex.
pub fn signature(s: &Sapc) -> Result<i64> {
    let n = s.structure.n;
    if n.rem_euclid(4) != 0 {
        return Err(Error::WrongDimension(format!(
            "signature needs dimension divisible by 4, got {n}"
        )));
    }
    let m = n / 2;
    let c = s.complex.assemble();
    let ctx = ProductContext::new(&s.complex, &s.complex)?;
    let phi = XCycle::new(
        &ctx,
        n,
        s.structure.phi.first().cloned().unwrap_or_default(),
    )?;
    // cocycles: kernel of d_{m+1}^T
    let z = kernel_basis(&c.d(m + 1).transpose());
    let r = z.cols();
    let cols = z.col_lists();
    let rows: Vec<Vec<(usize, Int)>> = {
        let mut rows = vec![Vec::new(); c.rank(m)];
        for (k, col) in cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((k, v.clone()));
            }
        }
        rows
    };
    let mut g = vec![vec![Int::ZERO; r]; r];
    for (p, a, b, v) in phi.assembled_terms(&ctx) {
        if p != m {
            continue;
        }
        for (i, x) in &rows[a] {
            for (j, y) in &rows[b] {
                let w = v.clone() * x * y;
                g[*i][*j] += &w;
                g[*j][*i] += &w;
            }
        }
    }
    let (pos, neg) = inertia(&g);
    Ok(pos as i64 - neg as i64)
}
