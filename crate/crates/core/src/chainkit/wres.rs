use super::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::intlin::{smith_normal_form, solve_with, Int, SparseVec};

/// Right-hand side of the `s`-th descent equation for a degree-`n` element
/// of `Hom(W, P)`: `(-1)^n (1 + (-1)^s τ) φ_{s-1}`.
///
/// `W` is the standard resolution with `d e_s = (1 + (-1)^s T) e_{s-1}`; a
/// cycle `φ` of degree `n` satisfies `d φ_s = (-1)^n φ(d e_s)`.
pub fn descent_rhs(tau: &ChainMap, n: i64, s: usize, prev: &SparseVec) -> SparseVec {
    let deg = n + s as i64 - 1;
    let t = tau.at(deg).apply_sparse(prev);
    let mut out = prev.clone();
    for (i, v) in t {
        let e = out.entry(i).or_default();
        if s.is_multiple_of(2) {
            *e += &v;
        } else {
            *e -= &v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    if n.rem_euclid(2) == 1 {
        for v in out.values_mut() {
            *v = -&*v;
        }
    }
    out
}

/// Solves `φ_1, ..., φ_smax` in `p` from a cycle `φ_0` of degree `n`.
pub fn solve_descent(
    p: &FreeComplex,
    tau: &ChainMap,
    n: i64,
    phi0: &SparseVec,
    smax: usize,
) -> Result<Vec<SparseVec>> {
    if !p.d(n).apply_sparse(phi0).is_empty() {
        return Err(Error::NotCycle("φ_0 has nonzero boundary".into()));
    }
    let mut out = vec![phi0.clone()];
    for s in 1..=smax {
        let deg = n + s as i64;
        let rhs = descent_rhs(tau, n, s, &out[s - 1]);
        if rhs.is_empty() {
            out.push(SparseVec::new());
            continue;
        }
        let d = p.d(deg);
        let dense: Vec<Int> = (0..d.rows())
            .map(|i| rhs.get(&i).cloned().unwrap_or_default())
            .collect();
        let x = solve_with(&smith_normal_form(&d), &dense)?
            .ok_or(Error::DescentObstruction { s, degree: deg - 1 })?;
        out.push(
            x.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        );
    }
    Ok(out)
}
