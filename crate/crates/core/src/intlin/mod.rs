//! Exact integer linear algebra: the substrate of every other module.

mod int;
mod matrix;
mod smith;

pub use int::Int;
pub use matrix::{MatrixJson, SparseIntMat, SparseVec};
pub use smith::{
    elementary_divisors, rank, smith_normal_form, smith_normal_form_with_inverse,
    SmithDecomposition,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Isomorphism type of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct HomologyInvariants {
    pub betti: usize,
    /// Entries greater than one, each dividing the next.
    pub torsion: Vec<Int>,
}

impl HomologyInvariants {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(betti: usize) -> Self {
        HomologyInvariants {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.betti)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Solves `A x = b` over the integers. `Ok(None)` when no integral solution exists.
pub fn solve_integer(a: &SparseIntMat, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    if b.iter().all(Int::is_zero) {
        return Ok(Some(vec![Int::ZERO; a.cols()]));
    }
    let snf = smith_normal_form(a);
    solve_with(&snf, b)
}

/// Solves against an existing decomposition of `A`.
pub fn solve_with(snf: &SmithDecomposition, b: &[Int]) -> Result<Option<Vec<Int>>> {
    let c = snf.u.mul_vec(b)?;
    let mut y = vec![Int::ZERO; snf.v.rows()];
    for (t, ct) in c.iter().enumerate() {
        if t < snf.rank {
            let (q, r) = ct.div_rem_trunc(&snf.divisors[t]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[t] = q;
        } else if !ct.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}

/// Homology at the middle of `C_{k+1} --d_hi--> C_k --d_lo--> C_{k-1}`.
pub fn homology_of_pair(d_hi: &SparseIntMat, d_lo: &SparseIntMat) -> Result<HomologyInvariants> {
    if d_lo.cols() != d_hi.rows() {
        return Err(Error::DimensionMismatch(format!(
            "d_lo has {} columns but d_hi has {} rows",
            d_lo.cols(),
            d_hi.rows()
        )));
    }
    if !d_lo.mul(d_hi)?.is_zero() {
        return Err(Error::Precondition("d_lo * d_hi is not zero".into()));
    }
    Ok(homology_unchecked(d_hi, d_lo))
}

pub(crate) fn homology_unchecked(d_hi: &SparseIntMat, d_lo: &SparseIntMat) -> HomologyInvariants {
    let hi = elementary_divisors(d_hi);
    let rank_lo = if d_lo.is_zero() { 0 } else { rank(d_lo) };
    let nullity = d_lo.cols() - rank_lo;
    HomologyInvariants {
        betti: nullity - hi.len(),
        torsion: hi.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Presentation of `coker(R)` for `R: Z^a -> Z^o` when it is free.
#[derive(Clone, Debug)]
pub struct FreeCokernel {
    /// Quotient map `Z^o -> Z^q`.
    pub proj: SparseIntMat,
    /// A section `Z^q -> Z^o` with `proj * section = id`.
    pub section: SparseIntMat,
}

/// Cokernel of `r` with a free basis, or the list of nontrivial divisors.
pub fn free_cokernel(r: &SparseIntMat) -> std::result::Result<FreeCokernel, Vec<Int>> {
    let o = r.rows();
    if r.is_zero() {
        return Ok(FreeCokernel {
            proj: SparseIntMat::identity(o),
            section: SparseIntMat::identity(o),
        });
    }
    let snf = smith_normal_form_with_inverse(r);
    let torsion: Vec<Int> = snf
        .divisors
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    if !torsion.is_empty() {
        return Err(torsion);
    }
    let keep: Vec<usize> = (snf.rank..o).collect();
    let all: Vec<usize> = (0..o).collect();
    let proj = snf.u.select(&keep, &all);
    let section = snf
        .u_inv
        .as_ref()
        .expect("inverse tracked")
        .select(&all, &keep);
    Ok(FreeCokernel { proj, section })
}

/// Columns spanning the kernel of `a` (a basis of a direct summand).
pub fn kernel_basis(a: &SparseIntMat) -> SparseIntMat {
    let snf = smith_normal_form(a);
    let keep: Vec<usize> = (snf.rank..a.cols()).collect();
    let all: Vec<usize> = (0..a.cols()).collect();
    snf.v.select(&all, &keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn solve_examples() {
        let a = SparseIntMat::from_dense(&[vec![2]]);
        assert_eq!(solve_integer(&a, &ints(&[4])).unwrap(), Some(ints(&[2])));
        assert_eq!(solve_integer(&a, &ints(&[3])).unwrap(), None);
        let a = SparseIntMat::from_dense(&[vec![1, 1], vec![0, 2]]);
        assert_eq!(
            solve_integer(&a, &ints(&[3, 4])).unwrap(),
            Some(ints(&[1, 2]))
        );
        assert!(solve_integer(&a, &ints(&[1])).is_err());
    }

    #[test]
    fn pair_examples() {
        let z = SparseIntMat::zeros(1, 1);
        assert_eq!(
            homology_of_pair(&z, &z).unwrap(),
            HomologyInvariants::free(1)
        );
        let two = SparseIntMat::from_dense(&[vec![2]]);
        let h = homology_of_pair(&two, &SparseIntMat::zeros(0, 1)).unwrap();
        assert_eq!(
            h,
            HomologyInvariants {
                betti: 0,
                torsion: ints(&[2])
            }
        );
        let one = SparseIntMat::identity(1);
        assert!(matches!(
            homology_of_pair(&one, &one),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cokernel_section() {
        let r = SparseIntMat::from_dense(&[vec![1], vec![-1], vec![0]]);
        let c = free_cokernel(&r).unwrap();
        assert_eq!(c.proj.rows(), 2);
        assert_eq!(c.proj.mul(&c.section).unwrap(), SparseIntMat::identity(2));
        assert!(c.proj.mul(&r).unwrap().is_zero());
        let t = SparseIntMat::from_dense(&[vec![2]]);
        assert_eq!(free_cokernel(&t).unwrap_err(), ints(&[2]));
    }
}
