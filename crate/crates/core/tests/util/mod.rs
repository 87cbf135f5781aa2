//! Shared fixtures for the integration suites: the named corpus instances
//! and a seeded random lattice polytope generator.

#![allow(dead_code)]

use rand::Rng;
use reciprocity::exact::{int_vec, Int};
use reciprocity::geometry::{Halfspace, Polytope};

pub fn segment() -> Polytope {
    Polytope::from_i64_vertices(&[&[0], &[1]]).unwrap()
}

pub fn unit_square() -> Polytope {
    Polytope::from_i64_vertices(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
}

pub fn unit_triangle() -> Polytope {
    Polytope::from_i64_vertices(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
}

pub fn cube(k: usize) -> Polytope {
    let mut pts = Vec::new();
    for mask in 0..(1u32 << k) {
        pts.push((0..k).map(|i| Int::from((mask >> i) & 1)).collect());
    }
    Polytope::from_vertices(&pts).unwrap()
}

pub fn hexagon() -> Polytope {
    Polytope::from_i64_vertices(&[&[1, 0], &[2, 0], &[0, 1], &[3, 1], &[1, 2], &[2, 2]]).unwrap()
}

/// Square pyramid: unit square base at height 0, apex above the origin.
pub fn square_pyramid() -> Polytope {
    Polytope::from_i64_vertices(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]])
        .unwrap()
}

/// Facet index by its primitive outer normal and offset.
pub fn facet_index(p: &Polytope, normal: &[i64], offset: i64) -> usize {
    let target = Halfspace {
        normal: int_vec(normal),
        offset: Int::from(offset),
    };
    p.facets()
        .iter()
        .position(|f| *f == target)
        .unwrap_or_else(|| panic!("no facet with normal {normal:?} and offset {offset}"))
}

/// The two solid-torus facet selections of the 4-cube `[0,1]^4 = P1 × P2`:
/// `S1 = P1 × ∂P2` (facets fixing x3 or x4) and `S2 = ∂P1 × P2`.
pub fn four_cube_s1_facets(p: &Polytope) -> Vec<usize> {
    vec![
        facet_index(p, &[0, 0, -1, 0], 0),
        facet_index(p, &[0, 0, 0, -1], 0),
        facet_index(p, &[0, 0, 0, 1], 1),
        facet_index(p, &[0, 0, 1, 0], 1),
    ]
}

pub fn four_cube_s2_facets(p: &Polytope) -> Vec<usize> {
    vec![
        facet_index(p, &[-1, 0, 0, 0], 0),
        facet_index(p, &[0, -1, 0, 0], 0),
        facet_index(p, &[0, 1, 0, 0], 1),
        facet_index(p, &[1, 0, 0, 0], 1),
    ]
}

/// Pyramid counterexample: two non-adjacent boundary triangles (they share
/// only the apex).
pub fn pyramid_two_triangle_facets(p: &Polytope) -> Vec<usize> {
    vec![
        facet_index(p, &[-1, 0, 0], 0),
        facet_index(p, &[1, 0, 1], 1),
    ]
}

/// Full-dimensional lattice polytope with coordinates in `[0, max_coord]`.
pub fn random_lattice_polytope(
    rng: &mut impl Rng,
    ambient: usize,
    max_coord: i64,
    n_points: usize,
) -> Polytope {
    loop {
        let pts: Vec<Vec<Int>> = (0..n_points)
            .map(|_| {
                (0..ambient)
                    .map(|_| Int::from(rng.gen_range(0..=max_coord)))
                    .collect()
            })
            .collect();
        if let Ok(p) = Polytope::from_vertices(&pts) {
            if p.dim() == ambient {
                return p;
            }
        }
    }
}
