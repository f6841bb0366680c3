//! Triangulations of the model spaces.

use super::complex::SimplicialComplex;

fn build(vertices: usize, maximal: Vec<Vec<usize>>) -> SimplicialComplex {
    SimplicialComplex::new(vertices, maximal).expect("fixture is well formed")
}

pub fn point() -> SimplicialComplex {
    build(1, vec![vec![0]])
}

pub fn two_points() -> SimplicialComplex {
    build(2, vec![vec![0], vec![1]])
}

/// S¹ as the 3-cycle.
pub fn circle() -> SimplicialComplex {
    build(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]])
}

/// Sⁿ as the boundary of the (n+1)-simplex.
pub fn sphere(n: usize) -> SimplicialComplex {
    let v = n + 2;
    build(v, (0..v).map(|skip| (0..v).filter(|&i| i != skip).collect()).collect())
}

/// Möbius-Császár 7-vertex torus.
pub fn torus() -> SimplicialComplex {
    let tri = |a: usize, b: usize, c: usize| (0..7).flat_map(move |i| [vec![(i + a) % 7, (i + b) % 7, (i + c) % 7]]);
    build(7, tri(0, 1, 3).chain(tri(0, 2, 3)).collect())
}

/// 6-vertex ℝP²: the hemi-icosahedron.
pub fn projective_plane() -> SimplicialComplex {
    build(
        6,
        vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![2, 4, 5],
            vec![1, 3, 5],
        ],
    )
}

/// Genus-2 surface: two 7-vertex tori glued along the triangle {0, 1, 3},
/// which is removed from both. 11 vertices.
pub fn genus_two() -> SimplicialComplex {
    let first = torus();
    let second_name = |v: usize| match v {
        0 | 1 | 3 => v,
        2 => 7,
        other => other + 4,
    };
    let cut = vec![0, 1, 3];
    let mut maximal: Vec<Vec<usize>> = first.maximal().iter().filter(|t| **t != cut).cloned().collect();
    maximal.extend(first.maximal().iter().filter(|t| **t != cut).map(|t| t.iter().map(|&v| second_name(v)).collect()));
    build(11, maximal)
}

/// Two 3-cycles sharing vertex 0.
pub fn figure_eight() -> SimplicialComplex {
    bouquet(2)
}

/// Wedge of k triangles at vertex 0.
pub fn bouquet(k: usize) -> SimplicialComplex {
    let mut maximal = Vec::new();
    for i in 0..k {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        maximal.extend([vec![0, a], vec![a, b], vec![0, b]]);
    }
    build(2 * k + 1, maximal)
}

/// 9-vertex triangulation of ℂP².
pub fn complex_projective_plane() -> SimplicialComplex {
    const FACETS: [[usize; 5]; 36] = [
        [0, 1, 2, 3, 4],
        [0, 1, 2, 3, 5],
        [0, 1, 2, 4, 5],
        [0, 1, 3, 4, 6],
        [0, 1, 3, 5, 7],
        [0, 1, 3, 6, 7],
        [0, 1, 4, 5, 6],
        [0, 1, 5, 6, 8],
        [0, 1, 5, 7, 8],
        [0, 1, 6, 7, 8],
        [0, 2, 3, 4, 8],
        [0, 2, 3, 5, 8],
        [0, 2, 4, 5, 6],
        [0, 2, 4, 6, 7],
        [0, 2, 4, 7, 8],
        [0, 2, 5, 6, 8],
        [0, 2, 6, 7, 8],
        [0, 3, 4, 6, 7],
        [0, 3, 4, 7, 8],
        [0, 3, 5, 7, 8],
        [1, 2, 3, 4, 8],
        [1, 2, 3, 5, 7],
        [1, 2, 3, 6, 7],
        [1, 2, 3, 6, 8],
        [1, 2, 4, 5, 7],
        [1, 2, 4, 7, 8],
        [1, 2, 6, 7, 8],
        [1, 3, 4, 6, 8],
        [1, 4, 5, 6, 8],
        [1, 4, 5, 7, 8],
        [2, 3, 5, 6, 7],
        [2, 3, 5, 6, 8],
        [2, 4, 5, 6, 7],
        [3, 4, 5, 6, 7],
        [3, 4, 5, 6, 8],
        [3, 4, 5, 7, 8],
    ];
    build(9, FACETS.iter().map(|f| f.to_vec()).collect())
}

/// K × L by the staircase triangulation: vertex (v, w) is v·|L| + w, and
/// each pair of maximal faces contributes one simplex per monotone lattice
/// path through their vertex grid.
pub fn product(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    let m = l.vertex_count();
    let mut maximal = Vec::new();
    for s in k.maximal() {
        for t in l.maximal() {
            let (p, q) = (s.len() - 1, t.len() - 1);
            for mask in 0u64..(1u64 << (p + q)) {
                if mask.count_ones() as usize != p {
                    continue;
                }
                let (mut i, mut j) = (0, 0);
                let mut simplex = vec![s[0] * m + t[0]];
                for step in 0..p + q {
                    if mask >> step & 1 == 1 {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    simplex.push(s[i] * m + t[j]);
                }
                maximal.push(simplex);
            }
        }
    }
    build(k.vertex_count() * m, maximal)
}

/// Names accepted by [`by_name`], in display order.
pub const FIXTURE_NAMES: [&str; 11] =
    ["point", "S1", "S2", "S3", "T2", "RP2", "Sigma2", "CP2", "figure_eight", "S1xS1", "S1xS1xS1"];

pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    Some(match name {
        "point" => point(),
        "S1" => circle(),
        "S2" => sphere(2),
        "S3" => sphere(3),
        "T2" => torus(),
        "RP2" => projective_plane(),
        "Sigma2" => genus_two(),
        "CP2" => complex_projective_plane(),
        "figure_eight" => figure_eight(),
        "S1xS1" => product(&circle(), &circle()),
        "S1xS1xS1" => product(&product(&circle(), &circle()), &circle()),
        _ => return None,
    })
}
