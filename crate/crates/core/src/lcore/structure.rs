use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::Int;
use crate::zxmod::{ProductContext, WChain, WTerm, XComplex};

/// Result of one verification step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub location: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(check: &str, location: impl Into<String>) -> Self {
        Check {
            check: check.into(),
            location: location.into(),
            ok: true,
            witness: None,
        }
    }

    pub fn fail(check: &str, location: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            check: check.into(),
            location: location.into(),
            ok: false,
            witness: Some(witness.into()),
        }
    }
}

/// `φ_s` of degree `n + s` in the weighted product `C ⊠ C`, for `0 ≤ s ≤ s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymStructure {
    pub n: i64,
    pub phi: Vec<WChain>,
}

/// `ψ_s` of degree `n - s` in the weighted product, for `0 ≤ s ≤ s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadStructure {
    pub n: i64,
    pub psi: Vec<WChain>,
}

/// `a ⊗ b ⊗ e_τ ↦ (-1)^{|a||b|} b ⊗ a ⊗ e_τ`.
pub fn transpose(x: &WChain) -> WChain {
    x.iter()
        .map(|(t, v)| {
            let v = if (t.a.0 * t.b.0).rem_euclid(2) == 0 {
                v.clone()
            } else {
                -v
            };
            (
                WTerm {
                    a: t.b,
                    b: t.a,
                    tau: t.tau,
                },
                v,
            )
        })
        .collect()
}

/// `sign · (x + ε τx)` with `ε = ±1`.
pub(crate) fn one_plus_tau(x: &WChain, eps: i64, sign: i64) -> WChain {
    let mut out = WChain::new();
    for (t, v) in x {
        *out.entry(*t).or_default() += &(Int::from(sign) * v.clone());
    }
    for (t, v) in transpose(x) {
        *out.entry(t).or_default() += &(Int::from(sign * eps) * v);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub(crate) fn add_into(acc: &mut WChain, x: &WChain, coeff: i64) {
    for (t, v) in x {
        *acc.entry(*t).or_default() += &(Int::from(coeff) * v.clone());
    }
    acc.retain(|_, v| !v.is_zero());
}

pub(crate) fn sub(a: &WChain, b: &WChain) -> WChain {
    let mut out = a.clone();
    add_into(&mut out, b, -1);
    out
}

fn pow(s: i64) -> i64 {
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(Dφ)_s = dφ_s - (-1)^n (1 + (-1)^s τ) φ_{s-1}` for a family of degree `n`.
pub fn hom_w_differential(ctx: &ProductContext, n: i64, phi: &[WChain]) -> Vec<WChain> {
    (0..phi.len())
        .map(|s| {
            let d = ctx.boundary(&phi[s]);
            if s == 0 {
                d
            } else {
                sub(&d, &one_plus_tau(&phi[s - 1], pow(s as i64), pow(n)))
            }
        })
        .collect()
}

fn check_family(
    ctx: &ProductContext,
    chains: &[WChain],
    degree: impl Fn(usize) -> i64,
) -> Result<()> {
    for (s, x) in chains.iter().enumerate() {
        for t in x.keys() {
            ctx.check_term(t)?;
            if ctx.degree(t) != degree(s) {
                return Err(Error::DimensionMismatch(format!(
                    "term of degree {} at s = {s}, expected {}",
                    ctx.degree(t),
                    degree(s)
                )));
            }
        }
    }
    Ok(())
}

impl SymStructure {
    pub fn zero(n: i64, smax: usize) -> Self {
        SymStructure {
            n,
            phi: vec![WChain::new(); smax + 1],
        }
    }

    pub fn smax(&self) -> usize {
        self.phi.len().saturating_sub(1)
    }
}

impl QuadStructure {
    pub fn zero(n: i64, smax: usize) -> Self {
        QuadStructure {
            n,
            psi: vec![WChain::new(); smax + 1],
        }
    }
}

/// Checks every descent relation `dφ_s = (-1)^n (1 + (-1)^s τ) φ_{s-1}`.
/// Errors only on malformed input; a failing relation is reported in the
/// returned check.
pub fn validate_symmetric(c: &XComplex, phi: &SymStructure) -> Result<Check> {
    let ctx = ProductContext::new(c, c)?;
    check_family(&ctx, &phi.phi, |s| phi.n + s as i64)?;
    for (s, r) in hom_w_differential(&ctx, phi.n, &phi.phi).iter().enumerate() {
        if !r.is_empty() {
            return Ok(Check::fail(
                "symmetric_descent",
                format!("s={s}"),
                format!("{} nonzero terms", r.len()),
            ));
        }
    }
    Ok(Check::pass(
        "symmetric_descent",
        format!("s=0..{}", phi.smax()),
    ))
}

/// Checks `dψ_s = (-1)^{s+1} (1 + (-1)^{s+1} τ) ψ_{s+1}`.
pub fn validate_quadratic(c: &XComplex, psi: &QuadStructure) -> Result<Check> {
    let ctx = ProductContext::new(c, c)?;
    check_family(&ctx, &psi.psi, |s| psi.n - s as i64)?;
    let empty = WChain::new();
    for s in 0..psi.psi.len() {
        let next = psi.psi.get(s + 1).unwrap_or(&empty);
        let e = pow(s as i64 + 1);
        let r = sub(&ctx.boundary(&psi.psi[s]), &one_plus_tau(next, e, e));
        if !r.is_empty() {
            return Ok(Check::fail(
                "quadratic_descent",
                format!("s={s}"),
                format!("{} nonzero terms", r.len()),
            ));
        }
    }
    Ok(Check::pass(
        "quadratic_descent",
        format!("s=0..{}", psi.psi.len().saturating_sub(1)),
    ))
}

/// `φ_0 = (1 + τ) ψ_0`, higher terms zero.
pub fn symmetrize(c: &XComplex, psi: &QuadStructure) -> Result<SymStructure> {
    let check = validate_quadratic(c, psi)?;
    if !check.ok {
        return Err(Error::NotCycle(format!(
            "quadratic structure fails at {}",
            check.location
        )));
    }
    let smax = psi.psi.len().saturating_sub(1);
    let mut out = SymStructure::zero(psi.n, smax);
    if let Some(p0) = psi.psi.first() {
        out.phi[0] = one_plus_tau(p0, 1, 1);
    }
    Ok(out)
}

/// A matrix form `Σ m_ij e_i ⊗ e_j` on a complex concentrated in one degree
/// (over the point base), as a degree-`2k` chain.
pub fn form_chain(k: i64, m: &[Vec<i64>]) -> WChain {
    let mut out = WChain::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                out.insert(
                    WTerm {
                        a: (k, i),
                        b: (k, j),
                        tau: 0,
                    },
                    Int::from(v),
                );
            }
        }
    }
    out
}

/// `[a_deg, a, b_deg, b, tau, coeff]`
pub type TermRow = (i64, usize, i64, usize, usize, Int);

/// JSON form: `{"dimension": n, "phi": {"s": [TermRow, ...]}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureFile {
    pub dimension: i64,
    pub phi: BTreeMap<String, Vec<TermRow>>,
}

impl SymStructure {
    pub fn to_json(&self) -> StructureFile {
        let phi = self
            .phi
            .iter()
            .enumerate()
            .map(|(s, x)| {
                (
                    s.to_string(),
                    x.iter()
                        .map(|(t, v)| (t.a.0, t.a.1, t.b.0, t.b.1, t.tau, v.clone()))
                        .collect(),
                )
            })
            .collect();
        StructureFile {
            dimension: self.n,
            phi,
        }
    }

    pub fn from_json(f: &StructureFile) -> Result<Self> {
        let mut by_s: BTreeMap<usize, WChain> = BTreeMap::new();
        for (k, terms) in &f.phi {
            let s: usize = k
                .parse()
                .map_err(|_| Error::Format(format!("bad descent index {k:?}")))?;
            let x = by_s.entry(s).or_default();
            for (p, i, q, j, tau, v) in terms {
                *x.entry(WTerm {
                    a: (*p, *i),
                    b: (*q, *j),
                    tau: *tau,
                })
                .or_default() += v;
            }
        }
        let smax = by_s.keys().max().copied().unwrap_or(0);
        let mut out = SymStructure::zero(f.dimension, smax);
        for (s, x) in by_s {
            out.phi[s] = x.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(out)
    }
}
