use std::collections::VecDeque;

use super::{SimpComplex, SimplexChain};
use crate::error::{Error, Result};
use crate::intlin::Int;

/// Fundamental cycle of a closed orientable pseudomanifold.
///
/// Orientations are propagated across codimension-one faces, one connected
/// component of the dual graph at a time; the first facet of each component
/// gets `+1`. Returns `Ok(None)` when some codimension-one face does not have
/// exactly two cofaces or when propagation meets a contradiction.
pub fn fundamental_cycle(k: &SimpComplex) -> Result<Option<SimplexChain>> {
    oriented(k, &|_| false)
}

/// Fundamental cycle of `(K, L)`: codimension-one faces lying in `L` may
/// bound a single facet and orientations are not propagated across them.
pub fn relative_fundamental_cycle(
    k: &SimpComplex,
    l: &SimpComplex,
) -> Result<Option<SimplexChain>> {
    let ids: std::collections::BTreeSet<usize> = (0..l.len())
        .map(|s| k.require(l.simplex(s)))
        .collect::<Result<_>>()?;
    oriented(k, &|f| ids.contains(&f))
}

fn oriented(k: &SimpComplex, in_l: &dyn Fn(usize) -> bool) -> Result<Option<SimplexChain>> {
    if !k.is_pure() {
        return Err(Error::NotPure(format!(
            "facets of several dimensions, top {}",
            k.dim()
        )));
    }
    let n = k.dim();
    if n < 0 {
        return Ok(None);
    }
    if n == 0 {
        // A closed 0-manifold: every point with coefficient one.
        return Ok(Some(k.ids_of_dim(0).map(|v| (v, Int::ONE)).collect()));
    }
    let top: Vec<usize> = k.ids_of_dim(n as usize).collect();
    for f in k.ids_of_dim(n as usize - 1) {
        let m = k.cofaces(f).len();
        if !(m == 2 || (in_l(f) && m == 1)) {
            return Ok(None);
        }
    }
    // Incidence sign of face f in facet s.
    let incidence = |s: usize, f: usize| -> i64 {
        let i = k
            .faces(s)
            .iter()
            .position(|&x| x == f)
            .expect("face of facet");
        if i % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let mut sign: Vec<i64> = vec![0; k.len()];
    for &start in &top {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for &f in k.faces(s) {
                let Some(other) = k.cofaces(f).iter().copied().find(|&t| t != s) else {
                    continue;
                };
                // Need sign[s]*inc(s,f) + sign[other]*inc(other,f) = 0.
                let want = -sign[s] * incidence(s, f) * incidence(other, f);
                if sign[other] == 0 {
                    sign[other] = want;
                    queue.push_back(other);
                } else if sign[other] != want {
                    return Ok(None);
                }
            }
        }
    }
    let cycle: SimplexChain = top.iter().map(|&s| (s, Int::from(sign[s]))).collect();
    Ok(Some(cycle))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_relative_to_its_rim() {
        let d = SimpComplex::from_facets(&[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
        let rim =
            SimpComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let z = relative_fundamental_cycle(&d, &rim).unwrap().unwrap();
        assert_eq!(z.len(), 2);
        let bd = d.boundary(&z);
        assert!(bd.keys().all(|&f| rim.id_of(d.simplex(f)).is_some()));
        assert!(fundamental_cycle(&d).unwrap().is_none());
    }

    #[test]
    fn sphere_has_a_cycle() {
        let s2 =
            SimpComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
                .unwrap();
        let c = fundamental_cycle(&s2).unwrap().unwrap();
        assert_eq!(c.len(), 4);
        assert!(s2.boundary(&c).is_empty());
    }

    #[test]
    fn projective_plane_and_disc_have_none() {
        let rp2 = SimpComplex::from_facets(&[
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 5, 1],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 1],
            vec![4, 5, 2],
            vec![5, 1, 3],
        ])
        .unwrap();
        assert_eq!(fundamental_cycle(&rp2).unwrap(), None);
        let d = SimpComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(fundamental_cycle(&d).unwrap(), None);
        let mixed = SimpComplex::from_facets(&[vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(matches!(fundamental_cycle(&mixed), Err(Error::NotPure(_))));
    }
}
