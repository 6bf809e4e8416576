//! Small triangulations used by the examples, the CLI and the test suites.

use crate::simpkit::{ComplexFile, SimpComplex};

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "delta1",
    "delta2",
    "circle3",
    "bdry-delta3",
    "bdry-delta4",
    "octahedron",
    "torus7",
    "rp2",
    "wedge",
    "pinched-torus",
];

fn boundary_of_simplex(n: usize) -> Vec<Vec<usize>> {
    (0..=n)
        .map(|skip| (0..=n).filter(|&v| v != skip).collect())
        .collect()
}

pub fn facets(name: &str) -> Option<Vec<Vec<usize>>> {
    Some(match name {
        "delta1" => vec![vec![0, 1]],
        "delta2" => vec![vec![0, 1, 2]],
        "circle3" => boundary_of_simplex(2),
        "bdry-delta3" => boundary_of_simplex(3),
        "bdry-delta4" => boundary_of_simplex(4),
        "octahedron" => {
            let mut f = Vec::new();
            for a in [0, 1] {
                for b in [2, 3] {
                    for c in [4, 5] {
                        f.push(vec![a, b, c]);
                    }
                }
            }
            f
        }
        // Möbius' minimal torus
        "torus7" => (0..7)
            .flat_map(|i| {
                let t = |v: usize| (i + v) % 7;
                [vec![t(0), t(1), t(3)], vec![t(0), t(2), t(3)]]
            })
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect(),
        "rp2" => vec![
            vec![0, 1, 3],
            vec![0, 1, 5],
            vec![0, 2, 4],
            vec![0, 2, 5],
            vec![0, 3, 4],
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 4, 5],
            vec![2, 3, 5],
            vec![3, 4, 5],
        ],
        // two boundary tetrahedra sharing vertex 0
        "wedge" => {
            let mut f = boundary_of_simplex(3);
            f.extend(boundary_of_simplex(3).into_iter().map(|s| {
                s.into_iter()
                    .map(|v| if v == 0 { 0 } else { v + 3 })
                    .collect()
            }));
            f
        }
        // annulus on 0,1,2 | 3,4,5 with both rims coned to 6
        "pinched-torus" => {
            let mut f = Vec::new();
            for i in 0..3 {
                let j = (i + 1) % 3;
                f.push(vec![i, j, i + 3]);
                f.push(vec![j, i + 3, j + 3]);
                f.push(vec![i, j, 6]);
                f.push(vec![i + 3, j + 3, 6]);
            }
            f.into_iter()
                .map(|mut s| {
                    s.sort_unstable();
                    s
                })
                .collect()
        }
        _ => return None,
    })
}

pub fn by_name(name: &str) -> Option<SimpComplex> {
    facets(name).map(|f| SimpComplex::from_facets(&f).expect("corpus complexes are valid"))
}

pub fn file(name: &str) -> Option<ComplexFile> {
    by_name(name).map(|k| k.to_json())
}

/// Singular simplex of a control, if the complex is one.
pub fn singular_vertex(name: &str) -> Option<Vec<usize>> {
    match name {
        "wedge" => Some(vec![0]),
        "pinched-torus" => Some(vec![6]),
        _ => None,
    }
}
