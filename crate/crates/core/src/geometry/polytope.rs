use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{input_err, Error, Result};
use crate::exact::{
    self, dot, dot_rat, int_vec, integer_rank, kernel_lattice_basis, rat_vec, sign_canonical,
    solve_linear, sub_vec, IntMatrix, Int, Rat,
};
use crate::geometry::{Halfspace, Hyperplane};

/// Convex lattice polytope in canonical form.
///
/// `vertices` are exactly the extreme points (sorted), `facets` the
/// irredundant facet inequalities with primitive normals, and `equations`
/// the affine hull when the polytope is not full-dimensional. Immutable
/// after construction.
#[derive(Debug, Clone)]
pub struct Polytope {
    ambient: usize,
    dim: usize,
    vertices: Vec<Vec<Int>>,
    facets: Vec<Halfspace>,
    equations: Vec<Hyperplane>,
    faces: OnceLock<Vec<Face>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.facets == other.facets
            && self.equations == other.equations
    }
}

impl Eq for Polytope {}

/// Face of a polytope, identified by its (sorted) vertex index set.
/// `active_facets` is the set of facet inequalities tight on the whole face.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertex_set: Vec<usize>,
    pub active_facets: Vec<usize>,
    pub dim: usize,
}

impl Polytope {
    /// Convex hull with exact facet enumeration.
    ///
    /// Candidate hyperplanes run through affinely independent subsets of the
    /// input; supporting ones are kept and deduplicated by primitive normal.
    /// Lower-dimensional input is handled by first computing the affine hull
    /// and recursing in an integral chart of its direction lattice.
    pub fn from_vertices(points: &[Vec<Int>]) -> Result<Polytope> {
        if points.is_empty() {
            return input_err("polytope needs at least one point");
        }
        let ambient = points[0].len();
        if ambient == 0 || points.iter().any(|p| p.len() != ambient) {
            return input_err("points must share a positive ambient dimension");
        }
        let mut pts: Vec<Vec<Int>> = points.to_vec();
        pts.sort();
        pts.dedup();

        let origin = pts[0].clone();
        let diffs: Vec<Vec<Int>> = pts.iter().map(|p| sub_vec(p, &origin)).collect();
        let equation_normals = kernel_lattice_basis(&IntMatrix::from_rows(diffs.clone()));
        let dim = ambient - equation_normals.len();

        let equations: Vec<Hyperplane> = equation_normals
            .iter()
            .map(|w| {
                let w = sign_canonical(w);
                let offset = dot(&w, &origin);
                Hyperplane { normal: w, offset }
            })
            .sorted()
            .collect();

        if dim == 0 {
            return Ok(Polytope {
                ambient,
                dim: 0,
                vertices: pts,
                facets: Vec::new(),
                equations,
                faces: OnceLock::new(),
            });
        }

        let (vertices, facets) = if dim == ambient {
            hull_full_dim(&pts)?
        } else {
            // Chart: integral basis of the direction lattice of the affine hull.
            let w_rows: Vec<Vec<Int>> = equations.iter().map(|e| e.normal.clone()).collect();
            let basis = kernel_lattice_basis(&IntMatrix::from_rows(w_rows.clone()));
            debug_assert_eq!(basis.len(), dim);
            let intrinsic: Vec<Vec<Int>> = diffs
                .iter()
                .map(|d| to_intrinsic_int(&basis, d))
                .collect::<Result<_>>()?;
            let (int_vertices, int_facets) = hull_full_dim(&intrinsic)?;

            // Map intrinsic vertices back to ambient coordinates.
            let vertex_by_intrinsic: BTreeMap<&Vec<Int>, &Vec<Int>> =
                intrinsic.iter().zip(pts.iter()).collect();
            let ambient_of: Vec<&Vec<Int>> = int_vertices
                .iter()
                .map(|u| *vertex_by_intrinsic.get(u).expect("hull vertex is an input point"))
                .collect();
            let mut vertices: Vec<Vec<Int>> = ambient_of.iter().map(|v| (*v).clone()).collect();
            vertices.sort();

            // Lift each intrinsic facet: its ambient normal is the unique
            // primitive direction inside the affine hull's direction space
            // orthogonal to the facet.
            let mut facets = Vec::new();
            for hs in &int_facets {
                let tight: Vec<usize> = (0..int_vertices.len())
                    .filter(|&k| dot(&hs.normal, &int_vertices[k]) == hs.offset)
                    .collect();
                let base = ambient_of[tight[0]];
                let mut rows = w_rows.clone();
                rows.extend(tight.iter().skip(1).map(|&k| sub_vec(ambient_of[k], base)));
                let kernel = kernel_lattice_basis(&IntMatrix::from_rows_with_cols(rows, ambient));
                if kernel.len() != 1 {
                    return Err(Error::Internal(format!(
                        "facet lift expected a line, got dimension {}",
                        kernel.len()
                    )));
                }
                let mut a = kernel.into_iter().next().unwrap();
                // Tight offset, then orient so every vertex is on the <= side.
                let mut b = dot(&a, ambient_of[tight[0]]);
                if vertices.iter().any(|v| dot(&a, v) > b) {
                    a = exact::neg_vec(&a);
                    b = -b;
                }
                debug_assert!(vertices.iter().all(|v| dot(&a, v) <= b));
                facets.push(Halfspace { normal: a, offset: b });
            }
            facets.sort();
            facets.dedup();
            (vertices, facets)
        };

        Ok(Polytope {
            ambient,
            dim,
            vertices,
            facets,
            equations,
            faces: OnceLock::new(),
        })
    }

    pub fn from_i64_vertices(points: &[&[i64]]) -> Result<Polytope> {
        Polytope::from_vertices(&points.iter().map(|p| int_vec(p)).collect::<Vec<_>>())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Int>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Hyperplane] {
        &self.equations
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    /// Mirror image `-P`.
    pub fn negated(&self) -> Polytope {
        let pts: Vec<Vec<Int>> = self.vertices.iter().map(|v| exact::neg_vec(v)).collect();
        Polytope::from_vertices(&pts).expect("negation of a polytope is a polytope")
    }

    // ---- Membership ------------------------------------------------------

    /// Membership of a rational point in the dilate `n * P`.
    pub fn contains_rat(&self, p: &[Rat], dilation: &Int) -> bool {
        self.equations.iter().all(|e| e.holds_rat(p, dilation))
            && self
                .facets
                .iter()
                .all(|f| !f.slack_rat(p, dilation).is_positive())
    }

    pub fn contains_int(&self, p: &[Int], dilation: &Int) -> bool {
        self.equations.iter().all(|e| e.holds_int(p, dilation))
            && self
                .facets
                .iter()
                .all(|f| !f.slack_int(p, dilation).is_positive())
    }

    /// Membership in the relative interior of `n * P`.
    pub fn contains_int_relint(&self, p: &[Int], dilation: &Int) -> bool {
        self.equations.iter().all(|e| e.holds_int(p, dilation))
            && self
                .facets
                .iter()
                .all(|f| f.slack_int(p, dilation).is_negative())
    }

    /// Facet indices tight at a point of `n * P`, or `None` if outside.
    pub fn tight_facets_int(&self, p: &[Int], dilation: &Int) -> Option<Vec<usize>> {
        if !self.contains_int(p, dilation) {
            return None;
        }
        Some(
            self.facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.slack_int(p, dilation).is_zero())
                .map(|(i, _)| i)
                .collect(),
        )
    }

    pub fn tight_facets_rat(&self, p: &[Rat]) -> Option<Vec<usize>> {
        let one = Int::from(1);
        if !self.contains_rat(p, &one) {
            return None;
        }
        Some(
            self.facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.slack_rat(p, &one).is_zero())
                .map(|(i, _)| i)
                .collect(),
        )
    }

    // ---- Face lattice ------------------------------------------------------

    /// All nonempty faces including the polytope itself, sorted by
    /// (dimension, vertex set). Computed once and cached.
    pub fn face_lattice(&self) -> &[Face] {
        self.faces.get_or_init(|| self.compute_faces())
    }

    fn compute_faces(&self) -> Vec<Face> {
        let n = self.vertices.len();
        let tight_per_facet: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                (0..n)
                    .filter(|&v| f.slack_int(&self.vertices[v], &Int::from(1)).is_zero())
                    .collect()
            })
            .collect();

        let mut seen: BTreeMap<Vec<usize>, Face> = BTreeMap::new();
        let top = Face {
            vertex_set: (0..n).collect(),
            active_facets: Vec::new(),
            dim: self.dim,
        };
        let mut queue = vec![top.vertex_set.clone()];
        seen.insert(top.vertex_set.clone(), top);

        while let Some(vs) = queue.pop() {
            let active = seen[&vs].active_facets.clone();
            for i in 0..self.facets.len() {
                if active.contains(&i) {
                    continue;
                }
                let inter: Vec<usize> = vs
                    .iter()
                    .copied()
                    .filter(|v| tight_per_facet[i].contains(v))
                    .collect();
                if inter.is_empty() || seen.contains_key(&inter) {
                    continue;
                }
                let face_active: Vec<usize> = (0..self.facets.len())
                    .filter(|&j| inter.iter().all(|v| tight_per_facet[j].contains(v)))
                    .collect();
                let dim = self.vertex_span_dim(&inter);
                seen.insert(
                    inter.clone(),
                    Face {
                        vertex_set: inter.clone(),
                        active_facets: face_active,
                        dim,
                    },
                );
                queue.push(inter);
            }
        }

        seen.into_values()
            .sorted_by(|a, b| (a.dim, &a.vertex_set).cmp(&(b.dim, &b.vertex_set)))
            .collect()
    }

    fn vertex_span_dim(&self, vs: &[usize]) -> usize {
        let origin = &self.vertices[vs[0]];
        let diffs: Vec<Vec<Int>> = vs
            .iter()
            .skip(1)
            .map(|&v| sub_vec(&self.vertices[v], origin))
            .collect();
        integer_rank(&diffs)
    }

    /// Proper faces only (everything except the polytope itself).
    pub fn proper_faces(&self) -> impl Iterator<Item = &Face> {
        let n = self.vertices.len();
        self.face_lattice()
            .iter()
            .filter(move |f| f.vertex_set.len() != n)
    }

    /// Look up a face by its sorted vertex index set.
    pub fn face_by_vertex_set(&self, vs: &[usize]) -> Option<&Face> {
        self.face_lattice().iter().find(|f| f.vertex_set == vs)
    }

    /// The unique face whose relative interior contains `p`, or `None` when
    /// `p` is outside the polytope.
    pub fn face_of_point(&self, p: &[Rat]) -> Option<&Face> {
        let tight = self.tight_facets_rat(p)?;
        let vs: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| {
                tight.iter().all(|&i| {
                    self.facets[i]
                        .slack_int(&self.vertices[v], &Int::from(1))
                        .is_zero()
                })
            })
            .collect();
        self.face_by_vertex_set(&vs)
    }

    /// Integer bounding box `[lo, hi]` of the dilate `n * P`, coordinatewise.
    pub fn bounding_box(&self, dilation: &Int) -> (Vec<Int>, Vec<Int>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            for (j, x) in v.iter().enumerate() {
                if *x < lo[j] {
                    lo[j] = x.clone();
                }
                if *x > hi[j] {
                    hi[j] = x.clone();
                }
            }
        }
        for j in 0..self.ambient {
            let (a, b) = (&lo[j] * dilation, &hi[j] * dilation);
            if a <= b {
                lo[j] = a;
                hi[j] = b;
            } else {
                lo[j] = b;
                hi[j] = a;
            }
        }
        (lo, hi)
    }

    /// Vertex enumeration from the halfspace description (basic feasible
    /// solutions). Used to validate hulls and to intersect cells.
    pub fn vertices_from_halfspaces(
        ambient: usize,
        facets: &[Halfspace],
        equations: &[Hyperplane],
    ) -> Vec<Vec<Rat>> {
        let eq_rows: Vec<Vec<Rat>> = equations.iter().map(|e| rat_vec(&e.normal)).collect();
        let eq_rhs: Vec<Rat> = equations
            .iter()
            .map(|e| Rat::from_integer(e.offset.clone()))
            .collect();
        let need = ambient.saturating_sub(equations.len());
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for sel in (0..facets.len()).combinations(need) {
            let mut rows = eq_rows.clone();
            let mut rhs = eq_rhs.clone();
            for &i in &sel {
                rows.push(rat_vec(&facets[i].normal));
                rhs.push(Rat::from_integer(facets[i].offset.clone()));
            }
            if exact::rational_rank(&rows) != ambient {
                continue;
            }
            let Some(x) = solve_linear(&rows, &rhs) else {
                continue;
            };
            let one = Int::from(1);
            let feasible = facets.iter().all(|f| !f.slack_rat(&x, &one).is_positive())
                && equations.iter().all(|e| e.holds_rat(&x, &one));
            if feasible && !out.contains(&x) {
                out.push(x);
            }
        }
        out.sort();
        out
    }
}

/// Solve `basis * u = target` exactly and require an integral solution,
/// which is guaranteed when `basis` spans a saturated lattice.
fn to_intrinsic_int(basis: &[Vec<Int>], target: &[Int]) -> Result<Vec<Int>> {
    let ambient = target.len();
    let rows: Vec<Vec<Rat>> = (0..ambient)
        .map(|i| basis.iter().map(|b| Rat::from_integer(b[i].clone())).collect())
        .collect();
    let rhs: Vec<Rat> = target.iter().map(|x| Rat::from_integer(x.clone())).collect();
    let sol = solve_linear(&rows, &rhs)
        .ok_or_else(|| Error::Internal("point outside its own affine hull".into()))?;
    sol.iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Internal(
                    "non-integral intrinsic coordinate in saturated chart".into(),
                ))
            }
        })
        .collect()
}

/// Full-dimensional hull: candidate hyperplanes through affinely independent
/// d-subsets, keep the supporting ones, then cut the input down to its
/// extreme points.
fn hull_full_dim(pts: &[Vec<Int>]) -> Result<(Vec<Vec<Int>>, Vec<Halfspace>)> {
    let d = pts[0].len();
    if pts.len() <= d {
        return Err(Error::Internal(
            "full-dimensional hull needs more points than the dimension".into(),
        ));
    }
    let mut facets: Vec<Halfspace> = Vec::new();
    for sel in (0..pts.len()).combinations(d) {
        let base = &pts[sel[0]];
        let diffs: Vec<Vec<Int>> = sel[1..].iter().map(|&i| sub_vec(&pts[i], base)).collect();
        let kernel = kernel_lattice_basis(&IntMatrix::from_rows_with_cols(diffs, d));
        if kernel.len() != 1 {
            continue; // affinely dependent subset
        }
        let mut a = kernel.into_iter().next().unwrap();
        let mut b = dot(&a, base);
        let mut above = false;
        let mut below = false;
        for p in pts {
            match dot(&a, p).cmp(&b) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {}
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        if above {
            a = exact::neg_vec(&a);
            b = -b;
        }
        let hs = Halfspace { normal: a, offset: b };
        if !facets.contains(&hs) {
            facets.push(hs);
        }
    }
    facets.sort();

    // Extreme points: tight facet normals span the full dimension.
    let one = Int::from(1);
    let vertices: Vec<Vec<Int>> = pts
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<Int>> = facets
                .iter()
                .filter(|f| f.slack_int(p, &one).is_zero())
                .map(|f| f.normal.clone())
                .collect();
            integer_rank(&tight) == d
        })
        .cloned()
        .collect();
    if vertices.is_empty() {
        return Err(Error::Internal("hull produced no extreme points".into()));
    }
    Ok((vertices, facets))
}

/// Which tangent cone to take at a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangentKind {
    Forward,
    Inverted,
}

/// Tangent cone of `P` at a face, cut out by the facet inequalities active on
/// the face; the inverted variant flips those inequalities. The result is a
/// cone with apex at a vertex of the face and, when the face is a vertex, a
/// full set of extreme ray generators.
pub fn tangent_cone(p: &Polytope, face: &Face, kind: TangentKind) -> Result<crate::geometry::Cone> {
    if !p.is_full_dimensional() {
        return input_err("tangent cones are defined here for full-dimensional polytopes");
    }
    if p.face_by_vertex_set(&face.vertex_set).is_none() {
        return input_err("not a face of the polytope");
    }
    let apex = p.vertices()[face.vertex_set[0]].clone();
    if face.dim == 0 {
        // Vertex cone: generated by the directions to the other vertices.
        let dirs: Vec<Vec<Int>> = p
            .vertices()
            .iter()
            .filter(|v| **v != apex)
            .map(|v| {
                let d = sub_vec(v, &apex);
                match kind {
                    TangentKind::Forward => d,
                    TangentKind::Inverted => exact::neg_vec(&d),
                }
            })
            .collect();
        crate::geometry::Cone::from_generators(apex, &dirs)
    } else {
        let facets: Vec<Halfspace> = face
            .active_facets
            .iter()
            .map(|&i| {
                let f = &p.facets()[i];
                match kind {
                    TangentKind::Forward => f.clone(),
                    TangentKind::Inverted => Halfspace {
                        normal: exact::neg_vec(&f.normal),
                        offset: -f.offset.clone(),
                    },
                }
            })
            .sorted()
            .collect();
        crate::geometry::Cone::from_halfspaces_at(apex, p.ambient_dim(), facets)
    }
}

/// Facet indices of `P` whose relative interior is entirely visible from the
/// light source `q`: exactly those with `<a_i, q> > b_i`. A source on a facet
/// hyperplane leaves that facet dark, matching the open-segment definition of
/// visibility.
pub fn bright_side(p: &Polytope, q: &[Rat]) -> Result<Vec<usize>> {
    if !p.is_full_dimensional() {
        return input_err("bright side needs a full-dimensional polytope");
    }
    let one = Int::from(1);
    Ok(p.facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.slack_rat(q, &one).is_positive())
        .map(|(i, _)| i)
        .collect())
}
