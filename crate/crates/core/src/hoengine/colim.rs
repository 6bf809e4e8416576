use std::collections::BTreeMap;

use super::FiniteDiagram;
use crate::chainkit::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::intlin::{elementary_divisors, free_cokernel, Int, SparseIntMat};

/// A colimit with its structure maps `F(i) -> colim`.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub complex: FreeComplex,
    pub structure: Vec<ChainMap>,
}

/// Degree-`k` block offsets of `⊕_i F(i)_k`.
fn offsets(objects: &[FreeComplex], k: i64) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(objects.len());
    let mut total = 0;
    for c in objects {
        off.push(total);
        total += c.rank(k);
    }
    (off, total)
}

fn degree_range(objects: &[FreeComplex]) -> Option<(i64, i64)> {
    let nz: Vec<&FreeComplex> = objects.iter().filter(|c| !c.is_zero()).collect();
    Some((
        nz.iter().map(|c| c.lo()).min()?,
        nz.iter().map(|c| c.hi()).max()?,
    ))
}

/// Relations `x - F(a⋖b) x` in degree `k`, as columns.
fn relations(f: &FiniteDiagram, k: i64, off: &[usize], total: usize) -> SparseIntMat {
    let mut trip = Vec::new();
    let mut col = 0;
    for &(a, b) in f.poset.covers() {
        let m = f.map_ref(a, b).expect("cover").at(k);
        for j in 0..f.objects[a].rank(k) {
            trip.push((off[a] + j, col + j, Int::ONE));
        }
        for (i, j, v) in m.entries() {
            trip.push((off[b] + i, col + j, -v));
        }
        col += f.objects[a].rank(k);
    }
    SparseIntMat::from_triplets(total, col, trip)
}

/// `⊕_i d_i` on the big sum.
fn sum_differential(objects: &[FreeComplex], k: i64) -> SparseIntMat {
    let (ro, rt) = offsets(objects, k - 1);
    let (co, ct) = offsets(objects, k);
    let ds: Vec<SparseIntMat> = objects.iter().map(|c| c.d(k)).collect();
    let blocks: Vec<(usize, usize, &SparseIntMat)> = ds
        .iter()
        .enumerate()
        .map(|(i, d)| (ro[i], co[i], d))
        .collect();
    SparseIntMat::from_blocks(rt, ct, &blocks)
}

/// Colimit as the degreewise cokernel of the arrow relations; fails on torsion.
pub fn colim(f: &FiniteDiagram) -> Result<Colimit> {
    let Some((lo, hi)) = degree_range(&f.objects) else {
        let z = FreeComplex::zero();
        return Ok(Colimit {
            structure: f.objects.iter().map(|c| ChainMap::zero(c, &z)).collect(),
            complex: z,
        });
    };
    let mut proj = BTreeMap::new();
    let mut section = BTreeMap::new();
    for k in lo..=hi {
        let (off, total) = offsets(&f.objects, k);
        let r = relations(f, k, &off, total);
        let cok = free_cokernel(&r).map_err(|t| Error::Torsion {
            degree: k,
            divisors: t
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        })?;
        proj.insert(k, cok.proj);
        section.insert(k, cok.section);
    }
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for k in lo..=hi {
        ranks.insert(k, proj[&k].rows());
        if k > lo {
            let d = sum_differential(&f.objects, k);
            diffs.insert(k, proj[&(k - 1)].mul(&d)?.mul(&section[&k])?);
        }
    }
    let complex = FreeComplex::from_maps(&ranks, &diffs)?;
    let mut structure = Vec::new();
    for (i, c) in f.objects.iter().enumerate() {
        let mut maps = BTreeMap::new();
        for k in c.degrees() {
            let (off, _) = offsets(&f.objects, k);
            let cols: Vec<usize> = (off[i]..off[i] + c.rank(k)).collect();
            let all: Vec<usize> = (0..proj[&k].rows()).collect();
            maps.insert(k, proj[&k].select(&all, &cols));
        }
        structure.push(ChainMap::new(c.clone(), complex.clone(), maps)?);
    }
    Ok(Colimit { complex, structure })
}

/// True iff every latching map `colim_{a<b} F(a) -> F(b)` is a degreewise
/// split injection.
pub fn is_reedy_cofibrant(f: &FiniteDiagram) -> bool {
    (0..f.len()).all(|b| latching_is_split(f, b).unwrap_or(false))
}

fn latching_is_split(f: &FiniteDiagram, b: usize) -> Result<bool> {
    let (sub, idx) = f.poset.below(b);
    if idx.is_empty() {
        return Ok(true);
    }
    let lower = f.restrict(sub, &idx)?;
    let Some((lo, hi)) = degree_range(&lower.objects) else {
        return Ok(true);
    };
    for k in lo..=hi {
        let (off, total) = offsets(&lower.objects, k);
        let r = relations(&lower, k, &off, total);
        let Ok(cok) = free_cokernel(&r) else {
            // Torsion in the latching object cannot inject into a free group.
            return Ok(false);
        };
        // Sum of the maps into F(b), then restricted along the section.
        let mut trip = Vec::new();
        for (pos, &a) in idx.iter().enumerate() {
            for (i, j, v) in f.map(a, b)?.at(k).entries() {
                trip.push((*i, off[pos] + j, v.clone()));
            }
        }
        let sum = SparseIntMat::from_triplets(f.objects[b].rank(k), total, trip);
        let g = sum.mul(&cok.section)?;
        let divs = elementary_divisors(&g);
        if divs.len() != g.cols() || divs.iter().any(|d| !d.is_one()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::Poset;
    use super::*;

    fn chain2(m: i64) -> FiniteDiagram {
        let z = FreeComplex::point(0);
        let p = Poset::from_relations(2, &[(0, 1)]).unwrap();
        FiniteDiagram::from_fn(p, vec![z.clone(), z.clone()], |_, _| {
            Ok(ChainMap::scalar(&z, Int::from(m)))
        })
        .unwrap()
    }

    #[test]
    fn colimit_examples() {
        let one = FiniteDiagram::from_fn(
            Poset::from_relations(1, &[]).unwrap(),
            vec![FreeComplex::point(2)],
            |_, _| unreachable!(),
        )
        .unwrap();
        assert_eq!(colim(&one).unwrap().complex, FreeComplex::point(2));
        assert_eq!(colim(&chain2(1)).unwrap().complex, FreeComplex::point(0));
        assert_eq!(colim(&chain2(2)).unwrap().complex, FreeComplex::point(0));
        let z = FreeComplex::point(0);
        let zero = FreeComplex::zero();
        let span = FiniteDiagram::from_fn(
            Poset::from_relations(3, &[(1, 0), (1, 2)]).unwrap(),
            vec![zero.clone(), z.clone(), zero.clone()],
            |a, b| {
                Ok(ChainMap::zero(
                    &[&zero, &z, &zero][a].clone(),
                    &[&zero, &z, &zero][b].clone(),
                ))
            },
        )
        .unwrap();
        assert!(colim(&span).unwrap().complex.is_zero());
        // Z <-2- Z -> 0 has colimit Z/2.
        let objs = vec![z.clone(), z.clone(), zero.clone()];
        let o = objs.clone();
        let tors = FiniteDiagram::from_fn(
            Poset::from_relations(3, &[(1, 0), (1, 2)]).unwrap(),
            objs,
            |a, b| {
                Ok(if b == 0 {
                    ChainMap::scalar(&z, Int::from(2))
                } else {
                    ChainMap::zero(&o[a], &o[b])
                })
            },
        )
        .unwrap();
        assert!(matches!(
            colim(&tors),
            Err(Error::Torsion { degree: 0, .. })
        ));
    }

    #[test]
    fn reedy_examples() {
        assert!(is_reedy_cofibrant(&chain2(1)));
        assert!(!is_reedy_cofibrant(&chain2(2)));
    }
}
