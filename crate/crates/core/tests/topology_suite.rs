//! Topological classification of the corpus instances: the solid tori in the
//! boundary of the 4-cube, the pyramid counterexample, bright sides, and the
//! link-level structure theorem behind the duality.

mod util;

use reciprocity::complex::{classify_faces, FaceKey, PolyhedralComplex};
use reciprocity::exact::rat_int;
use reciprocity::geometry::bright_side;
use reciprocity::topology::{
    cm_status, homology_manifold_status, homology_of_complex, reduced_euler_char, CmLevel,
    ManifoldStatus,
};
use util::*;

#[test]
fn four_cube_solid_torus_classification() {
    let p = cube(4);
    let boundary = PolyhedralComplex::boundary_complex(&p).unwrap();
    let s1 = boundary
        .subcomplex_generated(&four_cube_s1_facets(&p), false)
        .unwrap();
    let s2 = boundary
        .subcomplex_generated(&four_cube_s2_facets(&p), false)
        .unwrap();
    for s in [&s1, &s2] {
        assert!(s.is_pure());
        assert_eq!(s.dim(), Some(3));
        let status = cm_status(s.abstract_complex());
        assert_eq!(status.value, CmLevel::WeaklyCM);
        // the defect is the complex's own circle homology
        let w = status.witness.unwrap();
        assert_eq!(w.face, None);
        assert_eq!(w.degree, Some(1));
        // a 3-manifold with boundary
        assert_eq!(
            homology_manifold_status(s.abstract_complex()),
            ManifoldStatus::WithBoundary
        );
        // solid torus: H~_1 = Z and nothing else
        let h = homology_of_complex(s.abstract_complex());
        assert_eq!(h.rank(0), 0);
        assert_eq!(h.rank(1), 1);
        assert_eq!(h.rank(2), 0);
        assert_eq!(h.rank(3), 0);
        assert!((0..=3).all(|d| h.torsion(d).is_empty()));
    }
}

#[test]
fn four_cube_torus_boundary() {
    let p = cube(4);
    let boundary = PolyhedralComplex::boundary_complex(&p).unwrap();
    let s1 = boundary
        .subcomplex_generated(&four_cube_s1_facets(&p), false)
        .unwrap();
    let cls = classify_faces(&boundary, &s1).unwrap();
    let torus = &cls.boundary_complex;
    // ∂S1 = ∂P1 × ∂P2: 16 vertices, 32 edges, 16 squares
    assert_eq!(torus.abstract_complex().len_nonempty(), 16 + 32 + 16);
    let h = homology_of_complex(torus.abstract_complex());
    assert_eq!((h.rank(0), h.rank(1), h.rank(2)), (0, 2, 1));
    assert!((0..=2).all(|d| h.torsion(d).is_empty()));
    assert_eq!(
        homology_manifold_status(torus.abstract_complex()),
        ManifoldStatus::WithoutBoundary
    );
    // ∂S1 = ∂S2 as subcomplexes
    let s2 = boundary
        .subcomplex_generated(&four_cube_s2_facets(&p), false)
        .unwrap();
    let cls2 = classify_faces(&boundary, &s2).unwrap();
    assert_eq!(
        torus.abstract_complex(),
        cls2.boundary_complex.abstract_complex()
    );
}

#[test]
fn polytope_boundaries_are_spheres() {
    for p in [segment(), unit_square(), unit_triangle(), cube(3), cube(4), square_pyramid()] {
        let b = PolyhedralComplex::boundary_complex(&p).unwrap();
        assert_eq!(
            homology_manifold_status(b.abstract_complex()),
            ManifoldStatus::WithoutBoundary,
            "boundary of {:?}-dim polytope",
            p.dim()
        );
        let status = cm_status(b.abstract_complex());
        assert_eq!(status.value, CmLevel::CM, "{:?}", status.witness);
        // sphere homology
        let h = homology_of_complex(b.abstract_complex());
        assert!(h.is_sphere(p.dim() as i64 - 1));
    }
}

#[test]
fn pyramid_two_triangles_not_weakly_cm() {
    let p = square_pyramid();
    let boundary = PolyhedralComplex::boundary_complex(&p).unwrap();
    let delta = boundary
        .subcomplex_generated(&pyramid_two_triangle_facets(&p), false)
        .unwrap();
    let status = cm_status(delta.abstract_complex());
    assert_eq!(status.value, CmLevel::NotWeaklyCM);
    let w = status.witness.unwrap();
    // witness: the apex vertex, whose link is two disjoint segments
    let apex_label = delta
        .points()
        .iter()
        .position(|pt| pt == &reciprocity::exact::int_vec(&[0, 0, 1]))
        .unwrap();
    assert_eq!(w.face, Some(vec![apex_label]));
    assert_eq!(w.degree, Some(0));
    let link = delta.link(&[apex_label]);
    let h = homology_of_complex(link.abstract_complex());
    assert_eq!(h.rank(0), 1);
    // the apex link fails both manifold alternatives
    assert!(matches!(
        homology_manifold_status(delta.abstract_complex()),
        ManifoldStatus::No(_)
    ));
}

#[test]
fn bright_sides_are_cm_balls() {
    let cases: Vec<(reciprocity::geometry::Polytope, Vec<reciprocity::exact::Rat>)> = vec![
        (unit_square(), vec![rat_int(2), rat_int(2)]),
        (cube(3), vec![rat_int(2), rat_int(2), rat_int(2)]),
        (unit_square(), vec![rat_int(2), reciprocity::exact::rat(1, 2)]),
        (
            cube(3),
            vec![rat_int(-1), reciprocity::exact::rat(1, 2), reciprocity::exact::rat(1, 2)],
        ),
    ];
    for (p, q) in cases {
        let b_facets = bright_side(&p, &q).unwrap();
        assert!(!b_facets.is_empty());
        let boundary = PolyhedralComplex::boundary_complex(&p).unwrap();
        let b = boundary.subcomplex_generated(&b_facets, false).unwrap();
        let status = cm_status(b.abstract_complex());
        assert_eq!(status.value, CmLevel::CM, "q = {:?}: {:?}", q, status.witness);
        // a ball: trivial reduced homology
        assert!(homology_of_complex(b.abstract_complex()).is_trivial());
    }
}

/// Link-level structure: inside the boundary sphere of a polytope, a
/// full-dimensional weakly CM subcomplex has links that are homology spheres
/// of complementary dimension exactly at its interior faces and acyclic at
/// its boundary faces.
#[test]
fn wcm_subcomplex_links_are_spheres_or_acyclic() {
    let mut cases: Vec<(reciprocity::geometry::Polytope, Vec<usize>)> = Vec::new();
    let p4 = cube(4);
    cases.push((p4.clone(), four_cube_s1_facets(&p4)));
    let sq = unit_square();
    let bs = bright_side(&sq, &[rat_int(2), rat_int(2)]).unwrap();
    cases.push((sq, bs));
    let c3 = cube(3);
    let bs = bright_side(&c3, &[rat_int(2), rat_int(2), rat_int(2)]).unwrap();
    cases.push((c3, bs));

    for (p, facets) in cases {
        let d = p.dim() as i64;
        let boundary = PolyhedralComplex::boundary_complex(&p).unwrap();
        let delta = boundary.subcomplex_generated(&facets, false).unwrap();
        assert!(cm_status(delta.abstract_complex()).is_weakly_cm());
        let maximal = boundary.abstract_complex().maximal_faces();
        for (f, fdim) in delta.abstract_complex().nonempty_faces() {
            let interior = maximal
                .iter()
                .filter(|h| f.iter().all(|x| h.binary_search(x).is_ok()))
                .all(|h| delta.abstract_complex().contains(h));
            let link = delta.abstract_complex().link(f);
            if link.has_no_nonempty_face() {
                // the (−1)-sphere case: maximal faces, always interior here
                assert_eq!(fdim, d - 1);
                continue;
            }
            let h = homology_of_complex(&link);
            let sphere_degree = d - fdim - 2;
            if interior {
                assert!(
                    h.is_sphere(sphere_degree),
                    "interior face {:?} of dim {} should have an S^{} link",
                    f,
                    fdim,
                    sphere_degree
                );
            } else {
                assert!(
                    h.is_trivial(),
                    "boundary face {:?} of dim {} should have an acyclic link",
                    f,
                    fdim
                );
            }
        }
    }
}

/// Euler–Poincaré across every complex in the corpus.
#[test]
fn euler_poincare_consistency() {
    let p4 = cube(4);
    let boundary = PolyhedralComplex::boundary_complex(&p4).unwrap();
    let s1 = boundary
        .subcomplex_generated(&four_cube_s1_facets(&p4), false)
        .unwrap();
    let torus = classify_faces(&boundary, &s1).unwrap().boundary_complex;
    let pyr = square_pyramid();
    let pyr_boundary = PolyhedralComplex::boundary_complex(&pyr).unwrap();
    let two_triangles = pyr_boundary
        .subcomplex_generated(&pyramid_two_triangle_facets(&pyr), false)
        .unwrap();
    let complexes: Vec<&PolyhedralComplex> =
        vec![&boundary, &s1, &torus, &pyr_boundary, &two_triangles];
    for k in complexes {
        let h = homology_of_complex(k.abstract_complex());
        assert_eq!(
            reduced_euler_char(k.abstract_complex()),
            h.euler_characteristic(),
            "Euler–Poincaré failed"
        );
    }
}

/// CM implies weakly CM on every classified complex, and links of links stay
/// within the hierarchy (spot HTTP checks over the pyramid corpus).
#[test]
fn cm_implies_weakly_cm() {
    let p = square_pyramid();
    let boundary = PolyhedralComplex::boundary_complex(&p).unwrap();
    let n = boundary.maximal_faces().len();
    for mask in 0u32..(1 << n) {
        let sel: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub = boundary.subcomplex_generated(&sel, false).unwrap();
        let status = cm_status(sub.abstract_complex());
        if status.is_cm() {
            assert!(status.is_weakly_cm());
        }
        if status.value == CmLevel::NotWeaklyCM {
            assert!(status.witness.is_some(), "failures must carry a witness");
        }
    }
}

/// Links of faces inside a pure complex classify the same complex seen from
/// every face: spot-check that link computation commutes with viewing a
/// sphere from different faces (spheres have sphere links everywhere).
#[test]
fn sphere_links_are_spheres() {
    let p = cube(3);
    let boundary = PolyhedralComplex::boundary_complex(&p).unwrap();
    let d = p.dim() as i64 - 1;
    for (f, fdim) in boundary.abstract_complex().nonempty_faces() {
        let link = boundary.abstract_complex().link(f);
        if link.has_no_nonempty_face() {
            assert_eq!(fdim, d);
            continue;
        }
        let h = homology_of_complex(&link);
        assert!(h.is_sphere(d - fdim - 1), "link of {f:?}");
    }
}
