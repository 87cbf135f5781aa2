use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{input_err, Error, Result};
use crate::exact::{
    self, dot, int_vec, integer_rank, kernel_lattice_basis, rat_vec, IntMatrix, Int, Rat,
};
use crate::geometry::{Halfspace, Hyperplane, Polytope};

/// Polyhedral cone `apex + cone(generators)` in canonical form.
///
/// Facet inequalities are tight at the apex. For pointed cones the
/// generators are exactly the primitive extreme ray directions; cones with
/// lineality keep their defining inequalities but no ray description.
#[derive(Debug, Clone)]
pub struct Cone {
    ambient: usize,
    dim: usize,
    apex: Vec<Int>,
    generators: Vec<Vec<Int>>,
    facets: Vec<Halfspace>,
    equations: Vec<Hyperplane>,
    pointed: bool,
    lineality: Vec<Vec<Int>>,
    faces: OnceLock<Vec<ConeFace>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.apex == other.apex
            && self.generators == other.generators
            && self.facets == other.facets
            && self.equations == other.equations
    }
}

impl Eq for Cone {}

/// Face of a pointed cone, identified by the set of extreme rays lying on it.
/// The apex face has an empty ray set; `dim` is the linear dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeFace {
    pub rays: Vec<usize>,
    pub active_facets: Vec<usize>,
    pub dim: usize,
}

impl Cone {
    /// Cone spanned by integer directions at a lattice apex. Directions are
    /// reduced to primitive vectors, deduplicated, and cut down to extreme
    /// rays; facets are enumerated exactly. Lower-dimensional cones carry the
    /// equations of their linear span.
    pub fn from_generators(apex: Vec<Int>, directions: &[Vec<Int>]) -> Result<Cone> {
        let ambient = apex.len();
        if ambient == 0 {
            return input_err("ambient dimension must be positive");
        }
        if directions.iter().any(|d| d.len() != ambient) {
            return input_err("generator dimension mismatch");
        }
        let mut dirs: Vec<Vec<Int>> = directions
            .iter()
            .filter(|d| !exact::is_zero_vec(d))
            .map(|d| exact::primitive(d))
            .collect();
        dirs.sort();
        dirs.dedup();

        if dirs.is_empty() {
            let equations = (0..ambient)
                .map(|i| {
                    let mut normal = vec![Int::zero(); ambient];
                    normal[i] = Int::from(1);
                    let offset = apex[i].clone();
                    Hyperplane { normal, offset }
                })
                .collect();
            return Ok(Cone {
                ambient,
                dim: 0,
                apex,
                generators: Vec::new(),
                facets: Vec::new(),
                equations,
                pointed: true,
                lineality: Vec::new(),
                faces: OnceLock::new(),
            });
        }

        let dim = integer_rank(&dirs);
        let equation_normals = if dim < ambient {
            kernel_lattice_basis(&IntMatrix::from_rows(dirs.clone()))
        } else {
            Vec::new()
        };
        let equations: Vec<Hyperplane> = equation_normals
            .iter()
            .map(|w| {
                let w = exact::sign_canonical(w);
                let offset = dot(&w, &apex);
                Hyperplane { normal: w, offset }
            })
            .sorted()
            .collect();

        // Work in an intrinsic chart of the linear span.
        let (basis, dirs_int): (Option<Vec<Vec<Int>>>, Vec<Vec<Int>>) = if dim < ambient {
            let w_rows: Vec<Vec<Int>> = equations.iter().map(|e| e.normal.clone()).collect();
            let basis = kernel_lattice_basis(&IntMatrix::from_rows(w_rows));
            debug_assert_eq!(basis.len(), dim);
            let ints = dirs
                .iter()
                .map(|d| linear_intrinsic(&basis, d))
                .collect::<Result<Vec<_>>>()?;
            (Some(basis), ints)
        } else {
            (None, dirs.clone())
        };

        // Facet enumeration: hyperplanes through the origin spanned by
        // (dim-1)-subsets of generators, kept when supporting.
        let mut intrinsic_facets: Vec<Vec<Int>> = Vec::new();
        for sel in (0..dirs_int.len()).combinations(dim - 1) {
            let rows: Vec<Vec<Int>> = sel.iter().map(|&i| dirs_int[i].clone()).collect();
            let kernel =
                kernel_lattice_basis(&IntMatrix::from_rows_with_cols(rows, dim));
            if kernel.len() != 1 {
                continue;
            }
            let mut a = kernel.into_iter().next().unwrap();
            let mut above = false;
            let mut below = false;
            for g in &dirs_int {
                match dot(&a, g).sign() {
                    num_bigint::Sign::Plus => above = true,
                    num_bigint::Sign::Minus => below = true,
                    num_bigint::Sign::NoSign => {}
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
            }
            if !intrinsic_facets.contains(&a) {
                intrinsic_facets.push(a);
            }
        }
        intrinsic_facets.sort();

        let pointed = integer_rank(&intrinsic_facets) == dim;

        // Extreme rays: tight facet normals span a hyperplane of the chart.
        let generators: Vec<Vec<Int>> = if pointed {
            dirs.iter()
                .zip(&dirs_int)
                .filter(|(_, gi)| {
                    let tight: Vec<Vec<Int>> = intrinsic_facets
                        .iter()
                        .filter(|a| dot(a, gi).is_zero())
                        .cloned()
                        .collect();
                    integer_rank(&tight) == dim - 1
                })
                .map(|(g, _)| g.clone())
                .collect()
        } else {
            dirs.clone()
        };

        // Lift facet normals to the ambient space: the unique primitive
        // direction inside the span orthogonal to the facet's rays.
        let mut facets: Vec<Halfspace> = Vec::new();
        for a_int in &intrinsic_facets {
            let a = match &basis {
                None => a_int.clone(),
                Some(_) => {
                    let tight_dirs: Vec<Vec<Int>> = dirs
                        .iter()
                        .zip(&dirs_int)
                        .filter(|(_, gi)| dot(a_int, gi).is_zero())
                        .map(|(g, _)| g.clone())
                        .collect();
                    let mut rows: Vec<Vec<Int>> =
                        equations.iter().map(|e| e.normal.clone()).collect();
                    rows.extend(tight_dirs);
                    let kernel = kernel_lattice_basis(&IntMatrix::from_rows_with_cols(
                        rows, ambient,
                    ));
                    if kernel.len() != 1 {
                        return Err(Error::Internal(
                            "cone facet lift expected a line".into(),
                        ));
                    }
                    kernel.into_iter().next().unwrap()
                }
            };
            let mut a = a;
            let mut above = false;
            let mut below = false;
            for g in &dirs {
                match dot(&a, g).sign() {
                    num_bigint::Sign::Plus => above = true,
                    num_bigint::Sign::Minus => below = true,
                    num_bigint::Sign::NoSign => {}
                }
            }
            if above && below {
                return Err(Error::Internal("lifted facet normal not supporting".into()));
            }
            if above {
                a = exact::neg_vec(&a);
            }
            let offset = dot(&a, &apex);
            facets.push(Halfspace { normal: a, offset });
        }
        facets.sort();
        facets.dedup();

        let lineality = if pointed {
            Vec::new()
        } else {
            let mut rows: Vec<Vec<Int>> = facets.iter().map(|f| f.normal.clone()).collect();
            rows.extend(equations.iter().map(|e| e.normal.clone()));
            kernel_lattice_basis(&IntMatrix::from_rows_with_cols(rows, ambient))
        };

        Ok(Cone {
            ambient,
            dim,
            apex,
            generators,
            facets,
            equations,
            pointed,
            lineality,
            faces: OnceLock::new(),
        })
    }

    /// Cone from inequalities all tight at `apex` (tangent cones at faces).
    /// Full-dimensional by construction; pointedness and lineality are
    /// derived, and extreme rays are enumerated when pointed.
    pub fn from_halfspaces_at(apex: Vec<Int>, ambient: usize, facets: Vec<Halfspace>) -> Result<Cone> {
        if facets.iter().any(|f| dot(&f.normal, &apex) != f.offset) {
            return input_err("halfspaces must be tight at the apex");
        }
        let normal_rows: Vec<Vec<Int>> = facets.iter().map(|f| f.normal.clone()).collect();
        let lineality =
            kernel_lattice_basis(&IntMatrix::from_rows_with_cols(normal_rows.clone(), ambient));
        let pointed = lineality.is_empty();
        let generators = if pointed {
            let mut rays: Vec<Vec<Int>> = Vec::new();
            for sel in (0..facets.len()).combinations(ambient - 1) {
                let rows: Vec<Vec<Int>> = sel.iter().map(|&i| normal_rows[i].clone()).collect();
                let kernel = kernel_lattice_basis(&IntMatrix::from_rows_with_cols(rows, ambient));
                if kernel.len() != 1 {
                    continue;
                }
                let dir = kernel.into_iter().next().unwrap();
                for cand in [dir.clone(), exact::neg_vec(&dir)] {
                    if facets.iter().all(|f| !dot(&f.normal, &cand).is_positive())
                        && !rays.contains(&cand)
                    {
                        rays.push(cand);
                    }
                }
            }
            rays.sort();
            rays
        } else {
            Vec::new()
        };
        let mut facets = facets;
        facets.sort();
        facets.dedup();
        Ok(Cone {
            ambient,
            dim: ambient,
            apex,
            generators,
            facets,
            equations: Vec::new(),
            pointed,
            lineality,
            faces: OnceLock::new(),
        })
    }

    /// Homogenization `cone(P x {1})`: a pointed cone one dimension up, with
    /// a generator along `(v, 1)` for every vertex `v`.
    pub fn homogenize(p: &Polytope) -> Cone {
        let apex = vec![Int::zero(); p.ambient_dim() + 1];
        let dirs: Vec<Vec<Int>> = p
            .vertices()
            .iter()
            .map(|v| {
                let mut g = v.clone();
                g.push(Int::from(1));
                g
            })
            .collect();
        Cone::from_generators(apex, &dirs).expect("homogenization is a valid cone")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apex(&self) -> &[Int] {
        &self.apex
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Hyperplane] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn lineality_basis(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    // ---- Membership --------------------------------------------------------

    pub fn contains_rat(&self, p: &[Rat]) -> bool {
        let one = Int::from(1);
        self.equations.iter().all(|e| e.holds_rat(p, &one))
            && self
                .facets
                .iter()
                .all(|f| !f.slack_rat(p, &one).is_positive())
    }

    pub fn contains_int(&self, p: &[Int]) -> bool {
        let one = Int::from(1);
        self.equations.iter().all(|e| e.holds_int(p, &one))
            && self
                .facets
                .iter()
                .all(|f| !f.slack_int(p, &one).is_positive())
    }

    /// Relative interior: all facet inequalities strict, equations tight.
    pub fn contains_int_relint(&self, p: &[Int]) -> bool {
        let one = Int::from(1);
        self.equations.iter().all(|e| e.holds_int(p, &one))
            && self
                .facets
                .iter()
                .all(|f| f.slack_int(p, &one).is_negative())
    }

    pub fn contains_rat_interior(&self, p: &[Rat]) -> bool {
        let one = Int::from(1);
        self.equations.iter().all(|e| e.holds_rat(p, &one))
            && self
                .facets
                .iter()
                .all(|f| f.slack_rat(p, &one).is_negative())
    }

    // ---- Face lattice --------------------------------------------------------

    /// All faces of a pointed cone including the apex face and the cone
    /// itself, sorted by (dimension, ray set).
    pub fn face_lattice(&self) -> &[ConeFace] {
        assert!(self.pointed, "face lattice requires a pointed cone");
        self.faces.get_or_init(|| self.compute_faces())
    }

    fn compute_faces(&self) -> Vec<ConeFace> {
        let m = self.generators.len();
        let tight_per_facet: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                (0..m)
                    .filter(|&j| dot(&f.normal, &self.generators[j]).is_zero())
                    .collect()
            })
            .collect();
        let mut seen: BTreeMap<Vec<usize>, ConeFace> = BTreeMap::new();
        let top = ConeFace {
            rays: (0..m).collect(),
            active_facets: Vec::new(),
            dim: self.dim,
        };
        let mut queue = vec![top.rays.clone()];
        seen.insert(top.rays.clone(), top);
        while let Some(rays) = queue.pop() {
            let active = seen[&rays].active_facets.clone();
            for i in 0..self.facets.len() {
                if active.contains(&i) {
                    continue;
                }
                let inter: Vec<usize> = rays
                    .iter()
                    .copied()
                    .filter(|j| tight_per_facet[i].contains(j))
                    .collect();
                if seen.contains_key(&inter) {
                    continue;
                }
                let face_active: Vec<usize> = (0..self.facets.len())
                    .filter(|&k| inter.iter().all(|j| tight_per_facet[k].contains(j)))
                    .collect();
                let dim = if inter.is_empty() {
                    0
                } else {
                    integer_rank(
                        &inter
                            .iter()
                            .map(|&j| self.generators[j].clone())
                            .collect::<Vec<_>>(),
                    )
                };
                seen.insert(
                    inter.clone(),
                    ConeFace {
                        rays: inter.clone(),
                        active_facets: face_active,
                        dim,
                    },
                );
                queue.push(inter);
            }
        }
        seen.into_values()
            .sorted_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)))
            .collect()
    }

    /// Faces other than the cone itself (the boundary fan plus the apex).
    pub fn proper_faces(&self) -> impl Iterator<Item = &ConeFace> {
        let m = self.generators.len();
        self.face_lattice().iter().filter(move |f| f.rays.len() != m)
    }

    /// Facet faces (codimension one).
    pub fn facet_faces(&self) -> Vec<&ConeFace> {
        self.face_lattice()
            .iter()
            .filter(|f| f.dim + 1 == self.dim)
            .collect()
    }

    pub fn face_by_rays(&self, rays: &[usize]) -> Option<&ConeFace> {
        self.face_lattice().iter().find(|f| f.rays == rays)
    }

    /// The sub-cone spanned by a face's rays (apex kept).
    pub fn face_cone(&self, face: &ConeFace) -> Cone {
        let dirs: Vec<Vec<Int>> = face.rays.iter().map(|&j| self.generators[j].clone()).collect();
        Cone::from_generators(self.apex.clone(), &dirs).expect("face of a cone is a cone")
    }

    /// The unique face whose relative interior contains `p`.
    pub fn face_of_point(&self, p: &[Rat]) -> Option<&ConeFace> {
        if !self.contains_rat(p) {
            return None;
        }
        let one = Int::from(1);
        let tight: Vec<usize> = self
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.slack_rat(p, &one).is_zero())
            .map(|(i, _)| i)
            .collect();
        let rays: Vec<usize> = (0..self.generators.len())
            .filter(|&j| {
                tight
                    .iter()
                    .all(|&i| dot(&self.facets[i].normal, &self.generators[j]).is_zero())
            })
            .collect();
        self.face_by_rays(&rays)
    }
}

/// Express a direction in the chart basis (linear version, no offset).
fn linear_intrinsic(basis: &[Vec<Int>], dir: &[Int]) -> Result<Vec<Int>> {
    let ambient = dir.len();
    let rows: Vec<Vec<Rat>> = (0..ambient)
        .map(|i| basis.iter().map(|b| Rat::from_integer(b[i].clone())).collect())
        .collect();
    let rhs = rat_vec(dir);
    let sol = crate::exact::solve_linear(&rows, &rhs)
        .ok_or_else(|| Error::Internal("direction outside its own span".into()))?;
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
