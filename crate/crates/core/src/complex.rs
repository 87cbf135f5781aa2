//! Polyhedral complexes: boundary complexes, generated subcomplexes, links,
//! stars, interior/boundary classification, and the combinatorial fans of
//! pointed cones.
//!
//! Faces are identified by sorted label sets ([`FaceKey`]); for complexes of
//! polytopes the labels index a shared pool of lattice points, for fans they
//! index the extreme rays of a cone (the apex is the empty key). The empty
//! face is a first-class member of every non-void complex: distinguishing
//! the void complex (no faces at all, reduced Euler characteristic 0) from
//! the complex containing only the empty face (reduced Euler characteristic
//! -1) is what makes link-based alternating sums come out right.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{input_err, Error, Result};
use crate::exact::{Int, Rat};
use crate::geometry::{Cone, ConeFace, Polytope};

/// Sorted label set identifying a face. The empty key is the empty face of a
/// polytopal complex, or the apex of a fan.
pub type FaceKey = Vec<usize>;

/// Purely combinatorial complex: face keys with their dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractComplex {
    faces: BTreeMap<FaceKey, i64>,
}

impl AbstractComplex {
    /// The void complex: no faces, not even the empty one.
    pub fn void() -> Self {
        AbstractComplex {
            faces: BTreeMap::new(),
        }
    }

    /// Build from a downward-closed family of nonempty faces. The empty face
    /// is added automatically whenever the family is nonempty.
    pub fn from_faces(faces: impl IntoIterator<Item = (FaceKey, i64)>) -> Self {
        let mut map: BTreeMap<FaceKey, i64> = faces.into_iter().collect();
        if !map.is_empty() {
            map.insert(Vec::new(), -1);
        }
        AbstractComplex { faces: map }
    }

    /// The complex `{∅}` containing only the empty face (reduced Euler
    /// characteristic −1), as opposed to the void complex.
    pub fn only_empty_face() -> Self {
        let mut faces = BTreeMap::new();
        faces.insert(Vec::new(), -1);
        AbstractComplex { faces }
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// True when the complex has no nonempty face (void or `{∅}` only).
    pub fn has_no_nonempty_face(&self) -> bool {
        self.faces.keys().all(|k| k.is_empty())
    }

    pub fn contains(&self, key: &[usize]) -> bool {
        self.faces.contains_key(key)
    }

    pub fn face_dim(&self, key: &[usize]) -> Option<i64> {
        self.faces.get(key).copied()
    }

    /// Dimension of the complex: max face dimension, `-1` when only the
    /// empty face is present, `None` for the void complex.
    pub fn dim(&self) -> Option<i64> {
        self.faces.values().max().copied()
    }

    pub fn len_nonempty(&self) -> usize {
        self.faces.keys().filter(|k| !k.is_empty()).count()
    }

    /// All faces including the empty one.
    pub fn faces(&self) -> impl Iterator<Item = (&FaceKey, i64)> {
        self.faces.iter().map(|(k, &d)| (k, d))
    }

    pub fn nonempty_faces(&self) -> impl Iterator<Item = (&FaceKey, i64)> {
        self.faces
            .iter()
            .filter(|(k, _)| !k.is_empty())
            .map(|(k, &d)| (k, d))
    }

    /// Inclusion-maximal nonempty faces, sorted by (dim desc, key).
    pub fn maximal_faces(&self) -> Vec<FaceKey> {
        let keys: Vec<&FaceKey> = self.faces.keys().filter(|k| !k.is_empty()).collect();
        keys.iter()
            .filter(|k| {
                !keys
                    .iter()
                    .any(|other| *other != **k && is_subset(k, other))
            })
            .map(|k| (*k).clone())
            .sorted_by(|a, b| {
                let da = self.faces[a];
                let db = self.faces[b];
                db.cmp(&da).then_with(|| a.cmp(b))
            })
            .collect()
    }

    /// All maximal faces share the top dimension.
    pub fn is_pure(&self) -> bool {
        let Some(dim) = self.dim() else { return true };
        self.maximal_faces()
            .iter()
            .all(|k| self.faces[k] == dim)
    }

    /// `Σ_{∅≠F∈K} (−1)^{dim F} − 1` for a non-void complex, `0` for the void
    /// complex. The complex `{∅}` has reduced Euler characteristic `−1`.
    pub fn reduced_euler_char(&self) -> i64 {
        if self.is_void() {
            return 0;
        }
        let mut chi: i64 = -1;
        for (k, d) in self.faces.iter() {
            if k.is_empty() {
                continue;
            }
            chi += if d % 2 == 0 { 1 } else { -1 };
        }
        chi
    }

    /// Link of a face: `{ G : G ∩ F = ∅, G ∪ F ⊆ H ∈ K }`.
    ///
    /// The empty face belongs to the link exactly when `F` itself is a face,
    /// so the link of a face not in the complex is void.
    pub fn link(&self, f: &[usize]) -> AbstractComplex {
        let maximal = self.maximal_faces();
        let mut out = BTreeMap::new();
        for (g, d) in self.faces.iter() {
            if !disjoint(g, f) {
                continue;
            }
            let union: FaceKey = g.iter().chain(f.iter()).copied().sorted().collect();
            let cofacial = if union.is_empty() {
                !self.faces.is_empty()
            } else {
                maximal.iter().any(|h| is_subset(&union, h))
                    || self.faces.contains_key(&union)
            };
            if cofacial {
                out.insert(g.clone(), *d);
            }
        }
        AbstractComplex { faces: out }
    }

    /// Closed star `{ G : F ∪ G ⊆ H ∈ K }`; requires `F ∈ K`.
    pub fn closed_star(&self, f: &[usize]) -> Result<AbstractComplex> {
        if !self.contains(f) {
            return input_err("closed star of a face not in the complex");
        }
        let maximal = self.maximal_faces();
        let mut out = BTreeMap::new();
        for (g, d) in self.faces.iter() {
            let union: FaceKey = g.iter().chain(f.iter()).copied().sorted().dedup().collect();
            let cofacial = union.is_empty()
                || maximal.iter().any(|h| is_subset(&union, h))
                || self.faces.contains_key(&union);
            if cofacial {
                out.insert(g.clone(), *d);
            }
        }
        Ok(AbstractComplex { faces: out })
    }

    /// Subcomplex generated by the given faces: everything below them.
    pub fn generated_by(&self, keys: &[FaceKey]) -> AbstractComplex {
        let mut out = BTreeMap::new();
        for (g, d) in self.faces.iter() {
            if g.is_empty() || keys.iter().any(|k| is_subset(g, k)) {
                out.insert(g.clone(), *d);
            }
        }
        if keys.is_empty() {
            return AbstractComplex::void();
        }
        AbstractComplex { faces: out }
    }

    pub fn is_subcomplex_of(&self, other: &AbstractComplex) -> bool {
        self.faces.keys().all(|k| other.faces.contains_key(k))
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return false,
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    true
}

/// Complex of lattice polytopes glued along common faces. Labels index the
/// shared point pool; face equality across cells is by vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralComplex {
    points: Vec<Vec<Int>>,
    cx: AbstractComplex,
    maximal: Vec<FaceKey>,
}

impl PolyhedralComplex {
    /// The boundary complex: all proper faces of a polytope. Pure of
    /// dimension `dim P − 1`; maximal cells are listed in facet order.
    pub fn boundary_complex(p: &Polytope) -> Result<PolyhedralComplex> {
        if p.dim() == 0 {
            return input_err("boundary complex needs dim >= 1");
        }
        let faces = p
            .proper_faces()
            .map(|f| (f.vertex_set.clone(), f.dim as i64));
        let cx = AbstractComplex::from_faces(faces);
        let maximal: Vec<FaceKey> = facet_cells(p);
        Ok(PolyhedralComplex {
            points: p.vertices().to_vec(),
            cx,
            maximal,
        })
    }

    /// All faces of the polytope including the top cell. This is the complex
    /// summed over in the duality bookkeeping.
    pub fn full_complex(p: &Polytope) -> PolyhedralComplex {
        let faces = p
            .face_lattice()
            .iter()
            .map(|f| (f.vertex_set.clone(), f.dim as i64));
        let cx = AbstractComplex::from_faces(faces);
        let maximal = vec![(0..p.vertices().len()).collect::<FaceKey>()];
        PolyhedralComplex {
            points: p.vertices().to_vec(),
            cx,
            maximal,
        }
    }

    /// Glue standalone cells into a complex, validating the complex axioms
    /// eagerly: the vertex-set intersection of any two cells must be a face
    /// of both, and their geometric intersection must equal that common face
    /// (checked by exact vertex enumeration of the intersection).
    pub fn from_cells(cells: &[Polytope]) -> Result<PolyhedralComplex> {
        if cells.is_empty() {
            return Ok(PolyhedralComplex {
                points: Vec::new(),
                cx: AbstractComplex::void(),
                maximal: Vec::new(),
            });
        }
        let ambient = cells[0].ambient_dim();
        if cells.iter().any(|c| c.ambient_dim() != ambient) {
            return input_err("cells must share an ambient dimension");
        }
        let mut pool: Vec<Vec<Int>> = cells
            .iter()
            .flat_map(|c| c.vertices().iter().cloned())
            .collect();
        pool.sort();
        pool.dedup();
        let index_of = |v: &Vec<Int>| pool.binary_search(v).expect("pooled vertex");

        let mut faces: BTreeMap<FaceKey, i64> = BTreeMap::new();
        let mut cell_keys: Vec<FaceKey> = Vec::new();
        let mut cell_face_keys: Vec<BTreeSet<FaceKey>> = Vec::new();
        for cell in cells {
            let mut keys = BTreeSet::new();
            for f in cell.face_lattice() {
                let key: FaceKey = f
                    .vertex_set
                    .iter()
                    .map(|&i| index_of(&cell.vertices()[i]))
                    .sorted()
                    .collect();
                faces.insert(key.clone(), f.dim as i64);
                keys.insert(key);
            }
            cell_keys.push(
                cell.vertices()
                    .iter()
                    .map(|v| index_of(v))
                    .sorted()
                    .collect(),
            );
            cell_face_keys.push(keys);
        }

        // Pairwise complex axiom.
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                let common: FaceKey = cell_keys[i]
                    .iter()
                    .copied()
                    .filter(|v| cell_keys[j].binary_search(v).is_ok())
                    .collect();
                let combinatorial = common.is_empty()
                    || (cell_face_keys[i].contains(&common)
                        && cell_face_keys[j].contains(&common));
                if !combinatorial {
                    return input_err(format!(
                        "cells {i} and {j} do not meet in a common face"
                    ));
                }
                // Geometric check: every vertex of the intersection polytope
                // must be a shared vertex.
                let mut hs = cells[i].facets().to_vec();
                hs.extend(cells[j].facets().iter().cloned());
                let mut eqs = cells[i].equations().to_vec();
                eqs.extend(cells[j].equations().iter().cloned());
                let inter = Polytope::vertices_from_halfspaces(ambient, &hs, &eqs);
                for v in inter {
                    let as_int: Option<Vec<Int>> = v
                        .iter()
                        .map(|x| x.is_integer().then(|| x.to_integer()))
                        .collect();
                    let ok = as_int
                        .and_then(|vi| pool.binary_search(&vi).ok())
                        .map_or(false, |idx| common.binary_search(&idx).is_ok());
                    if !ok {
                        return input_err(format!(
                            "cells {i} and {j} overlap outside a common face"
                        ));
                    }
                }
            }
        }

        // Maximal cells in input order, skipping cells inside other cells.
        let maximal: Vec<FaceKey> = cell_keys
            .iter()
            .enumerate()
            .filter(|(i, k)| {
                !cell_keys
                    .iter()
                    .enumerate()
                    .any(|(j, other)| *i != j && k.len() < other.len() && is_subset(k, other))
            })
            .map(|(_, k)| k.clone())
            .dedup()
            .collect();

        Ok(PolyhedralComplex {
            points: pool,
            cx: AbstractComplex::from_faces(faces),
            maximal,
        })
    }

    pub fn points(&self) -> &[Vec<Int>] {
        &self.points
    }

    pub fn point(&self, label: usize) -> &[Int] {
        &self.points[label]
    }

    pub fn abstract_complex(&self) -> &AbstractComplex {
        &self.cx
    }

    pub fn dim(&self) -> Option<i64> {
        self.cx.dim()
    }

    pub fn is_pure(&self) -> bool {
        self.cx.is_pure()
    }

    pub fn is_void(&self) -> bool {
        self.cx.is_void()
    }

    pub fn reduced_euler_char(&self) -> i64 {
        self.cx.reduced_euler_char()
    }

    pub fn contains(&self, key: &[usize]) -> bool {
        self.cx.contains(key)
    }

    /// Maximal faces in canonical order (facet order for boundary
    /// complexes, generation order otherwise).
    pub fn maximal_faces(&self) -> &[FaceKey] {
        &self.maximal
    }

    /// Subcomplex generated by a subset of the maximal faces, or by the
    /// complementary subset.
    pub fn subcomplex_generated(&self, indices: &[usize], complement: bool) -> Result<PolyhedralComplex> {
        for &i in indices {
            if i >= self.maximal.len() {
                return input_err(format!(
                    "maximal face index {i} out of range ({} maximal faces)",
                    self.maximal.len()
                ));
            }
        }
        let selected: Vec<FaceKey> = (0..self.maximal.len())
            .filter(|i| indices.contains(i) != complement)
            .map(|i| self.maximal[i].clone())
            .collect();
        let cx = self.cx.generated_by(&selected);
        Ok(PolyhedralComplex {
            points: self.points.clone(),
            cx,
            maximal: selected,
        })
    }

    /// Link as a polyhedral complex over the same point pool.
    pub fn link(&self, f: &[usize]) -> PolyhedralComplex {
        let cx = self.cx.link(f);
        let maximal = cx.maximal_faces();
        PolyhedralComplex {
            points: self.points.clone(),
            cx,
            maximal,
        }
    }

    pub fn closed_star(&self, f: &[usize]) -> Result<PolyhedralComplex> {
        let cx = self.cx.closed_star(f)?;
        let maximal = cx.maximal_faces();
        Ok(PolyhedralComplex {
            points: self.points.clone(),
            cx,
            maximal,
        })
    }
}

/// Facet cells of a polytope as face keys, in facet order.
fn facet_cells(p: &Polytope) -> Vec<FaceKey> {
    (0..p.facets().len())
        .map(|i| {
            p.face_lattice()
                .iter()
                .find(|f| f.active_facets == [i])
                .map(|f| f.vertex_set.clone())
                .expect("every facet inequality supports a facet")
        })
        .collect()
}

/// Interior/boundary partition of the faces of `Δ ⊆ K`: a face is interior
/// when everything cofacial with it in `K` already lies inside `Δ` (its
/// closed star, equivalently all maximal cofaces), and a boundary face
/// otherwise. Returns the interior keys, the boundary keys, and the boundary
/// subcomplex `∂Δ`.
///
/// On simplicial complexes this coincides with the link-containment test
/// `lk_K(F) ⊆ Δ`; on complexes with non-simplicial cells the star test is
/// the one that matches the topological boundary (a cofacet cell outside `Δ`
/// can have all its `F`-disjoint faces inside `Δ`, fooling the link test).
pub struct FaceClassification {
    pub interior: Vec<FaceKey>,
    pub boundary: Vec<FaceKey>,
    pub boundary_complex: PolyhedralComplex,
}

pub fn classify_faces(k: &PolyhedralComplex, delta: &PolyhedralComplex) -> Result<FaceClassification> {
    if !delta.cx.is_subcomplex_of(&k.cx) {
        return input_err("classify_faces needs Δ ⊆ K");
    }
    let maximal = k.cx.maximal_faces();
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    let mut boundary_faces: BTreeMap<FaceKey, i64> = BTreeMap::new();
    for (f, d) in delta.cx.nonempty_faces() {
        let star_inside = maximal
            .iter()
            .filter(|h| is_subset(f, h))
            .all(|h| delta.cx.contains(h));
        if star_inside {
            interior.push(f.clone());
        } else {
            boundary.push(f.clone());
            boundary_faces.insert(f.clone(), d);
        }
    }
    let bc = AbstractComplex::from_faces(boundary_faces);
    let maximal = bc.maximal_faces();
    Ok(FaceClassification {
        interior,
        boundary,
        boundary_complex: PolyhedralComplex {
            points: delta.points.clone(),
            cx: bc,
            maximal,
        },
    })
}

// ---- Fans of pointed cones -------------------------------------------------

/// Combinatorial boundary fan of a pointed cone: labels are extreme ray
/// indices, a cone face of linear dimension `k` enters with dimension
/// `k − 1`, and the apex is the empty key. Links, purity and Euler
/// characteristics of fan subcomplexes are all read off this cross-section.
pub fn fan_boundary_complex(c: &Cone) -> AbstractComplex {
    let total = c.generators().len();
    let faces = c
        .proper_faces()
        .filter(|f| !f.rays.is_empty())
        .map(|f| (f.rays.clone(), f.dim as i64 - 1))
        .collect::<Vec<_>>();
    debug_assert!(faces.iter().all(|(k, _)| k.len() < total || total == 0));
    if faces.is_empty() && c.dim() > 0 {
        // a ray: its only proper face is the apex
        return AbstractComplex::only_empty_face();
    }
    AbstractComplex::from_faces(faces)
}

/// Fan subcomplex generated by a set of facets of the cone (by facet index).
pub fn fan_subcomplex_generated(
    c: &Cone,
    facet_indices: &[usize],
    complement: bool,
) -> Result<AbstractComplex> {
    let nf = c.facets().len();
    for &i in facet_indices {
        if i >= nf {
            return input_err(format!("cone facet index {i} out of range ({nf} facets)"));
        }
    }
    let boundary = fan_boundary_complex(c);
    let mut keys = Vec::new();
    for i in 0..nf {
        if facet_indices.contains(&i) != complement {
            let face = c
                .face_lattice()
                .iter()
                .find(|f| f.active_facets == [i])
                .ok_or_else(|| Error::Internal("facet without a facet face".into()))?;
            keys.push(face.rays.clone());
        }
    }
    Ok(boundary.generated_by(&keys))
}

/// Fan subcomplex generated by arbitrary faces of the cone.
pub fn fan_subcomplex_from_faces(c: &Cone, faces: &[&ConeFace]) -> Result<AbstractComplex> {
    let boundary = fan_boundary_complex(c);
    let keys: Vec<FaceKey> = faces.iter().map(|f| f.rays.clone()).collect();
    for k in &keys {
        if !boundary.contains(k) && !k.is_empty() {
            return input_err("not a proper face of the cone");
        }
    }
    if faces.is_empty() {
        return Ok(AbstractComplex::void());
    }
    Ok(boundary.generated_by(&keys))
}

/// Lattice points of the integer box `[lo, hi]`, guarded against blowup.
pub fn box_lattice_points(lo: &[Int], hi: &[Int], guard: u64) -> Result<Vec<Vec<Int>>> {
    use num_traits::ToPrimitive;
    let mut count: u64 = 1;
    for (a, b) in lo.iter().zip(hi) {
        if a > b {
            return Ok(Vec::new());
        }
        let width = (b - a + 1u32)
            .to_u64()
            .ok_or_else(|| Error::GuardExceeded("box side exceeds u64".into()))?;
        count = count
            .checked_mul(width)
            .ok_or_else(|| Error::GuardExceeded("box volume overflow".into()))?;
        if count > guard {
            return Err(Error::GuardExceeded(format!(
                "box has more than {guard} candidate points"
            )));
        }
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = lo.to_vec();
    loop {
        out.push(cur.clone());
        let mut j = 0;
        loop {
            if j == cur.len() {
                return Ok(out);
            }
            cur[j] += 1;
            if cur[j] <= hi[j] {
                break;
            }
            cur[j] = lo[j].clone();
            j += 1;
        }
    }
}

/// Centroid of a face's vertex set: a rational point in its relative interior.
pub fn face_centroid(points: &[Vec<Int>], key: &[usize]) -> Vec<Rat> {
    let n = Rat::from_integer(Int::from(key.len() as i64));
    let dim = points[key[0]].len();
    (0..dim)
        .map(|j| {
            key.iter()
                .map(|&v| Rat::from_integer(points[v][j].clone()))
                .sum::<Rat>()
                / &n
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_vec;

    fn square() -> Polytope {
        Polytope::from_i64_vertices(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn cube(k: usize) -> Polytope {
        let mut pts = Vec::new();
        for mask in 0..(1u32 << k) {
            pts.push((0..k).map(|i| Int::from((mask >> i) & 1)).collect());
        }
        Polytope::from_vertices(&pts).unwrap()
    }

    #[test]
    fn boundary_complex_of_segment() {
        let p = Polytope::from_i64_vertices(&[&[0], &[1]]).unwrap();
        let b = PolyhedralComplex::boundary_complex(&p).unwrap();
        assert_eq!(b.abstract_complex().len_nonempty(), 2);
        assert_eq!(b.dim(), Some(0));
    }

    #[test]
    fn boundary_complex_of_square() {
        let b = PolyhedralComplex::boundary_complex(&square()).unwrap();
        assert_eq!(b.abstract_complex().len_nonempty(), 8);
        assert!(b.is_pure());
        assert_eq!(b.reduced_euler_char(), -1); // a circle: 4 - 4 - 1
    }

    #[test]
    fn boundary_complex_of_four_cube() {
        let b = PolyhedralComplex::boundary_complex(&cube(4)).unwrap();
        assert_eq!(b.dim(), Some(3));
        assert!(b.is_pure());
        assert_eq!(b.maximal_faces().len(), 8);
        assert_eq!(b.abstract_complex().len_nonempty(), 16 + 32 + 24 + 8);
    }

    #[test]
    fn subcomplex_one_edge_and_complement() {
        let b = PolyhedralComplex::boundary_complex(&square()).unwrap();
        let one = b.subcomplex_generated(&[0], false).unwrap();
        assert_eq!(one.abstract_complex().len_nonempty(), 3); // edge + 2 endpoints
        let rest = b.subcomplex_generated(&[0], true).unwrap();
        assert_eq!(rest.abstract_complex().len_nonempty(), 7); // 3 edges + 4 vertices
        // together they cover all maximal faces
        let mut all: Vec<FaceKey> = one.maximal_faces().to_vec();
        all.extend(rest.maximal_faces().iter().cloned());
        all.sort();
        let mut expect = b.maximal_faces().to_vec();
        expect.sort();
        assert_eq!(all, expect);
    }

    #[test]
    fn subcomplex_rejects_bad_index() {
        let b = PolyhedralComplex::boundary_complex(&square()).unwrap();
        assert!(b.subcomplex_generated(&[9], false).is_err());
    }

    #[test]
    fn link_of_vertex_in_square_boundary() {
        let b = PolyhedralComplex::boundary_complex(&square()).unwrap();
        let lk = b.link(&[0]);
        // two opposite-incident vertices
        assert_eq!(lk.abstract_complex().len_nonempty(), 2);
        assert_eq!(lk.dim(), Some(0));
    }

    #[test]
    fn link_of_missing_face_is_void() {
        let b = PolyhedralComplex::boundary_complex(&square()).unwrap();
        // the diagonal {v0, v3} is not a face
        let diag = vec![0, 3];
        assert!(!b.contains(&diag));
        let lk = b.link(&diag);
        assert!(lk.is_void());
        assert_eq!(lk.reduced_euler_char(), 0);
    }

    #[test]
    fn link_of_vertex_in_cube_boundary_is_hexagon() {
        let b = PolyhedralComplex::boundary_complex(&cube(3)).unwrap();
        let lk = b.link(&[0]);
        // brute-force oracle over face pairs
        let mut expect = 0;
        for (g, _) in b.abstract_complex().nonempty_faces() {
            if g.contains(&0) {
                continue;
            }
            let union: FaceKey = g.iter().copied().chain([0]).sorted().collect();
            let cofacial = b
                .abstract_complex()
                .nonempty_faces()
                .any(|(h, _)| is_subset(&union, h));
            if cofacial {
                expect += 1;
            }
        }
        assert_eq!(lk.abstract_complex().len_nonempty(), expect);
        assert_eq!(lk.abstract_complex().len_nonempty(), 12); // 6 vertices + 6 edges
        assert_eq!(lk.reduced_euler_char(), -1); // a hexagonal circle
    }

    #[test]
    fn closed_star_cases() {
        let b = PolyhedralComplex::boundary_complex(&square()).unwrap();
        let st = b.closed_star(&[0]).unwrap();
        // 2 incident edges + 3 vertices
        assert_eq!(st.abstract_complex().len_nonempty(), 5);
        // star of a maximal face is the face plus its boundary
        let edge = b.maximal_faces()[0].clone();
        let st = b.closed_star(&edge).unwrap();
        assert_eq!(st.abstract_complex().len_nonempty(), 3);
        assert!(b.closed_star(&[0, 3]).is_err());
    }

    #[test]
    fn closed_star_of_edge_in_cube_boundary() {
        let b = PolyhedralComplex::boundary_complex(&cube(3)).unwrap();
        let edge = b
            .abstract_complex()
            .nonempty_faces()
            .find(|(_, d)| *d == 1)
            .map(|(k, _)| k.clone())
            .unwrap();
        let st = b.closed_star(&edge).unwrap();
        // 2 incident squares and all their faces: 2 squares, 7 edges, 6 vertices
        assert_eq!(st.abstract_complex().len_nonempty(), 15);
        // oracle: cofaciality check
        for (g, _) in st.abstract_complex().nonempty_faces() {
            let union: FaceKey = g.iter().chain(edge.iter()).copied().sorted().dedup().collect();
            assert!(b
                .abstract_complex()
                .nonempty_faces()
                .any(|(h, _)| is_subset(&union, h)));
        }
    }

    #[test]
    fn classification_interior_edge() {
        let b = PolyhedralComplex::boundary_complex(&square()).unwrap();
        let one = b.subcomplex_generated(&[0], false).unwrap();
        let cls = classify_faces(&b, &one).unwrap();
        // the edge is interior (its link in K is empty), endpoints are boundary
        assert_eq!(cls.interior.len(), 1);
        assert_eq!(cls.boundary.len(), 2);
    }

    #[test]
    fn classification_whole_boundary_has_no_boundary() {
        let b = PolyhedralComplex::boundary_complex(&cube(3)).unwrap();
        let cls = classify_faces(&b, &b).unwrap();
        assert!(cls.boundary.is_empty());
        assert!(cls.boundary_complex.is_void());
    }

    #[test]
    fn link_monotone_under_containment() {
        // G ⊆ F implies lk(F) ⊆ lk(G)
        let b = PolyhedralComplex::boundary_complex(&cube(3)).unwrap();
        let keys: Vec<FaceKey> = b
            .abstract_complex()
            .nonempty_faces()
            .map(|(k, _)| k.clone())
            .collect();
        for f in &keys {
            let lkf = b.abstract_complex().link(f);
            for g in &keys {
                if is_subset(g, f) {
                    let lkg = b.abstract_complex().link(g);
                    assert!(lkf.is_subcomplex_of(&lkg));
                }
            }
        }
    }

    #[test]
    fn links_are_complexes() {
        let b = PolyhedralComplex::boundary_complex(&cube(3)).unwrap();
        for (f, _) in b.abstract_complex().nonempty_faces() {
            let lk = b.abstract_complex().link(f);
            // closed under subfaces: every subset-face present in b is present
            for (g, _) in lk.nonempty_faces() {
                for (h, _) in b.abstract_complex().nonempty_faces() {
                    if is_subset(h, g) {
                        assert!(lk.contains(h));
                    }
                }
            }
        }
    }

    #[test]
    fn from_cells_accepts_boundary_cells() {
        let p = square();
        let cells: Vec<Polytope> = PolyhedralComplex::boundary_complex(&p)
            .unwrap()
            .maximal_faces()
            .iter()
            .map(|k| {
                Polytope::from_vertices(
                    &k.iter().map(|&i| p.vertices()[i].clone()).collect::<Vec<_>>(),
                )
                .unwrap()
            })
            .collect();
        let k = PolyhedralComplex::from_cells(&cells).unwrap();
        assert_eq!(k.abstract_complex().len_nonempty(), 8);
        assert!(k.is_pure());
    }

    #[test]
    fn from_cells_rejects_overlapping_segments() {
        let a = Polytope::from_i64_vertices(&[&[0], &[2]]).unwrap();
        let b = Polytope::from_i64_vertices(&[&[1], &[3]]).unwrap();
        assert!(PolyhedralComplex::from_cells(&[a, b]).is_err());
    }

    #[test]
    fn from_cells_rejects_crossing_triangles() {
        let a = Polytope::from_i64_vertices(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
        let b = Polytope::from_i64_vertices(&[&[1, 1], &[3, 1], &[1, 3]]).unwrap();
        assert!(PolyhedralComplex::from_cells(&[a, b]).is_err());
    }

    #[test]
    fn fan_of_cone_over_square() {
        let c = Cone::homogenize(&square());
        let fan = fan_boundary_complex(&c);
        // 4 rays + 4 facet cross-sections
        assert_eq!(fan.len_nonempty(), 8);
        assert_eq!(fan.dim(), Some(1));
        // link of the apex (empty key) is the whole cross-section circle
        let lk = fan.link(&[]);
        assert_eq!(lk.len_nonempty(), 8);
        assert_eq!(fan.reduced_euler_char(), -1); // cross-section circle
    }

    #[test]
    fn fan_subcomplex_single_facet() {
        let c = Cone::homogenize(&square());
        let sub = fan_subcomplex_generated(&c, &[0], false).unwrap();
        // one edge + 2 rays
        assert_eq!(sub.len_nonempty(), 3);
        let comp = fan_subcomplex_generated(&c, &[0], true).unwrap();
        assert_eq!(comp.len_nonempty(), 7);
    }

    #[test]
    fn euler_char_conventions() {
        assert_eq!(AbstractComplex::void().reduced_euler_char(), 0);
        let only_empty = AbstractComplex::from_faces(vec![(vec![0], 0)]).link(&[0]);
        // link of a maximal vertex is the complex {∅}
        assert!(only_empty.contains(&[]));
        assert!(only_empty.has_no_nonempty_face());
        assert_eq!(only_empty.reduced_euler_char(), -1);
    }
}
