//! Integral reduced homology of polyhedral complexes and the derived
//! classifications: weakly Cohen-Macaulay, Cohen-Macaulay, homology manifold.
//!
//! Homology of a polyhedral complex is computed on its order complex (the
//! simplicial complex of chains in the face poset), which is homeomorphic to
//! the underlying space and requires no geometric triangulation choices.
//! Coefficients are the integers throughout: ranks and torsion both come out
//! of Smith normal forms of boundary matrices.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::complex::{AbstractComplex, FaceKey};
use crate::exact::{self, Int, IntMatrix};

/// Abstract simplicial complex on `0..vertex_count`, with simplices grouped
/// by dimension and stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Simplices of dimension `k` (each a sorted vertex list of length k+1).
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        static EMPTY: Vec<Vec<usize>> = Vec::new();
        self.simplices.get(k).map_or(&EMPTY, |v| v)
    }

    pub fn dim(&self) -> Option<i64> {
        if self.simplices.is_empty() {
            None
        } else {
            Some(self.simplices.len() as i64 - 1)
        }
    }

    pub fn is_void(&self) -> bool {
        self.simplices.is_empty()
    }
}

/// Order complex of the nonempty faces of a polyhedral complex: one vertex
/// per face, one simplex per chain `F_0 ⊊ F_1 ⊊ … ⊊ F_k`.
pub fn order_complex(k: &AbstractComplex) -> SimplicialComplex {
    let faces: Vec<(&FaceKey, i64)> = k.nonempty_faces().collect();
    let n = faces.len();
    if n == 0 {
        return SimplicialComplex {
            vertex_count: 0,
            simplices: Vec::new(),
        };
    }
    // Strict containment DAG; faces are sorted by key, so sort by (dim, key)
    // to make chain extension scan only earlier entries.
    let order: Vec<usize> = (0..n)
        .sorted_by_key(|&i| (faces[i].1, faces[i].0.clone()))
        .collect();
    let contains = |big: usize, small: usize| -> bool {
        let (b, db) = faces[big];
        let (s, ds) = faces[small];
        ds < db && s.iter().all(|x| b.binary_search(x).is_ok())
    };

    let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    // chains indexed by their top face, grown bottom-up
    let mut chains_ending_at: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for &top in &order {
        let mut chains = vec![vec![top]];
        for &lower in &order {
            if lower == top {
                break;
            }
            if contains(top, lower) {
                for c in &chains_ending_at[lower] {
                    let mut ext = c.clone();
                    ext.push(top);
                    chains.push(ext);
                }
            }
        }
        for c in &chains {
            let d = c.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(Vec::new());
            }
            by_dim[d].push(c.clone());
        }
        chains_ending_at[top] = chains;
    }
    for level in &mut by_dim {
        level.sort();
    }
    SimplicialComplex {
        vertex_count: n,
        simplices: by_dim,
    }
}

/// Reduced integral homology: free rank and torsion divisors per degree.
/// Degree −1 is identically zero by the convention that the empty complex is
/// inert (its reduced Euler characteristic is 0, not that of a (−1)-sphere).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    ranks: Vec<usize>,
    torsion: Vec<Vec<Int>>,
}

impl HomologyProfile {
    pub fn trivial() -> Self {
        HomologyProfile {
            ranks: Vec::new(),
            torsion: Vec::new(),
        }
    }

    pub fn rank(&self, degree: i64) -> usize {
        if degree < 0 {
            return 0;
        }
        self.ranks.get(degree as usize).copied().unwrap_or(0)
    }

    pub fn torsion(&self, degree: i64) -> &[Int] {
        static EMPTY: Vec<Int> = Vec::new();
        if degree < 0 {
            return &EMPTY;
        }
        self.torsion.get(degree as usize).map_or(&EMPTY, |v| v)
    }

    pub fn max_degree(&self) -> i64 {
        self.ranks.len() as i64 - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0) && self.torsion.iter().all(|t| t.is_empty())
    }

    /// Reduced homology of a k-sphere: one free generator in degree k ≥ 0,
    /// nothing else.
    pub fn is_sphere(&self, k: i64) -> bool {
        if k < 0 {
            return false;
        }
        self.rank(k) == 1
            && self.torsion.iter().all(|t| t.is_empty())
            && (0..self.ranks.len() as i64).all(|i| i == k || self.rank(i) == 0)
    }

    /// Alternating sum of free ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Nonzero degrees with their rank and torsion, for witness reporting.
    pub fn nonzero_degrees(&self) -> Vec<(i64, usize, Vec<Int>)> {
        let mut out = Vec::new();
        for i in 0..self.ranks.len() {
            let t = self.torsion.get(i).cloned().unwrap_or_default();
            if self.ranks[i] != 0 || !t.is_empty() {
                out.push((i as i64, self.ranks[i], t));
            }
        }
        out
    }
}

/// Reduced homology of a simplicial complex over the integers, via Smith
/// normal forms of the boundary matrices of the augmented chain complex.
pub fn reduced_homology(s: &SimplicialComplex) -> HomologyProfile {
    if s.is_void() {
        return HomologyProfile::trivial();
    }
    let top = s.simplices.len(); // top dimension + 1
    // boundary_rank[k], and torsion from ∂_{k+1}
    let mut rank = vec![0usize; top + 1];
    let mut tors: Vec<Vec<Int>> = vec![Vec::new(); top + 1];
    // ∂_0: augmentation row of ones
    rank[0] = if s.simplices(0).is_empty() { 0 } else { 1 };
    for k in 1..top {
        let (r, t) = boundary_snf(s, k);
        rank[k] = r;
        tors[k] = t;
    }
    let mut ranks = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..top {
        let nk = s.simplices(k).len();
        let r = nk - rank[k] - rank[k + 1];
        ranks.push(r);
        torsion.push(tors[k + 1].clone());
    }
    HomologyProfile { ranks, torsion }
}

/// Rank and nontrivial invariant factors of the k-th boundary matrix.
fn boundary_snf(s: &SimplicialComplex, k: usize) -> (usize, Vec<Int>) {
    let rows = s.simplices(k - 1);
    let cols = s.simplices(k);
    if rows.is_empty() || cols.is_empty() {
        return (0, Vec::new());
    }
    let row_index: BTreeMap<&Vec<usize>, usize> =
        rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, simplex) in cols.iter().enumerate() {
        for omit in 0..simplex.len() {
            let mut face: Vec<usize> = simplex.clone();
            face.remove(omit);
            let i = row_index[&face];
            m[i][j] = if omit % 2 == 0 { 1 } else { -1 };
        }
    }
    match snf_diag_i128(m.clone()) {
        Some(diag) => {
            let rank = diag.iter().filter(|d| **d != 0).count();
            let torsion = diag
                .iter()
                .filter(|d| d.abs() > 1)
                .map(|d| Int::from(*d))
                .collect();
            (rank, torsion)
        }
        None => {
            // Exceptional fallback: exact big-integer reduction.
            let big = IntMatrix::from_rows(
                m.into_iter()
                    .map(|row| row.into_iter().map(Int::from).collect())
                    .collect(),
            );
            let snf = exact::smith_normal_form(&big);
            let torsion = snf
                .diagonal
                .iter()
                .filter(|d| d.abs() > Int::from(1))
                .cloned()
                .collect();
            (snf.rank, torsion)
        }
    }
}

/// Smith diagonal over i128 with overflow checks; `None` requests the
/// big-integer fallback.
fn snf_diag_i128(mut a: Vec<Vec<i128>>) -> Option<Vec<i128>> {
    let rows = a.len();
    let cols = a[0].len();
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let mut pivot: Option<(usize, usize, i128)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a[i][j];
                if v != 0 {
                    let newv = v.checked_abs()?;
                    match pivot {
                        Some((_, _, best)) if best <= newv => {}
                        _ => pivot = Some((i, j, newv)),
                    }
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let q = div_nearest_i128(a[i][t], a[t][t]);
                if q != 0 {
                    for j in t..cols {
                        let sub = q.checked_mul(a[t][j])?;
                        a[i][j] = a[i][j].checked_sub(sub)?;
                    }
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j] == 0 {
                    continue;
                }
                let q = div_nearest_i128(a[t][j], a[t][t]);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        let sub = q.checked_mul(row[t])?;
                        row[j] = row[j].checked_sub(sub)?;
                    }
                }
                if a[t][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if a[i][j] % a[t][t] != 0 {
                    for jj in t..cols {
                        a[t][jj] = a[t][jj].checked_add(a[i][jj])?;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            if a[t][t] < 0 {
                for j in t..cols {
                    a[t][j] = -a[t][j];
                }
            }
            t += 1;
        }
    }
    Some((0..n).map(|i| a[i][i]).collect())
}

fn div_nearest_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a % b;
    if 2 * r.abs() > b.abs() {
        if (r < 0) == (b < 0) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Homology of a polyhedral complex through its order complex.
pub fn homology_of_complex(k: &AbstractComplex) -> HomologyProfile {
    reduced_homology(&order_complex(k))
}

/// `Σ_{∅≠F∈K} (−1)^{dim F} − 1`, and 0 for the void complex.
pub fn reduced_euler_char(k: &AbstractComplex) -> i64 {
    k.reduced_euler_char()
}

// ---- Cohen-Macaulay classification -----------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CmLevel {
    NotWeaklyCM,
    WeaklyCM,
    CM,
}

/// Failure evidence: the face (or the complex itself when `face` is `None`)
/// with nonzero reduced homology in the offending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmWitness {
    pub face: Option<FaceKey>,
    pub degree: Option<i64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmStatus {
    pub value: CmLevel,
    pub witness: Option<CmWitness>,
}

impl CmStatus {
    pub fn is_weakly_cm(&self) -> bool {
        self.value >= CmLevel::WeaklyCM
    }

    pub fn is_cm(&self) -> bool {
        self.value == CmLevel::CM
    }
}

fn describe(profile: &HomologyProfile, degree: i64) -> String {
    let r = profile.rank(degree);
    let t = profile.torsion(degree);
    let mut parts = Vec::new();
    if r > 0 {
        parts.push(if r == 1 { "Z".to_string() } else { format!("Z^{r}") });
    }
    for d in t {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Weakly Cohen-Macaulay: every nonempty face has a link with vanishing
/// reduced homology below the link's complementary dimension
/// `dim K − dim F − 1`. Cohen-Macaulay: additionally the complex itself has
/// vanishing reduced homology below its dimension. Torsion counts as
/// nonvanishing (the classification is over the integers).
///
/// For complexes with non-simplicial cells the combinatorial link can carry
/// faces of inflated dimension while staying homotopy equivalent to the
/// spherical link; the vanishing bound therefore uses the complementary
/// dimension, which coincides with the link dimension in the simplicial
/// case.
pub fn cm_status(k: &AbstractComplex) -> CmStatus {
    if k.has_no_nonempty_face() {
        // The empty region: both conditions are vacuous.
        return CmStatus {
            value: CmLevel::CM,
            witness: None,
        };
    }
    if !k.is_pure() {
        return CmStatus {
            value: CmLevel::NotWeaklyCM,
            witness: Some(CmWitness {
                face: None,
                degree: None,
                detail: "complex is not pure".into(),
            }),
        };
    }
    let dim = k.dim().expect("nonempty complex has a dimension");
    for (f, fdim) in k.nonempty_faces() {
        let target = dim - fdim - 1;
        if target < 1 {
            continue; // no degrees strictly below the top dimension
        }
        let link = k.link(f);
        let profile = homology_of_complex(&link);
        for degree in 0..target {
            if profile.rank(degree) != 0 || !profile.torsion(degree).is_empty() {
                return CmStatus {
                    value: CmLevel::NotWeaklyCM,
                    witness: Some(CmWitness {
                        face: Some(f.clone()),
                        degree: Some(degree),
                        detail: format!(
                            "link of face {:?} has reduced homology {} in degree {}",
                            f,
                            describe(&profile, degree),
                            degree
                        ),
                    }),
                };
            }
        }
    }
    let profile = homology_of_complex(k);
    for degree in 0..dim {
        if profile.rank(degree) != 0 || !profile.torsion(degree).is_empty() {
            return CmStatus {
                value: CmLevel::WeaklyCM,
                witness: Some(CmWitness {
                    face: None,
                    degree: Some(degree),
                    detail: format!(
                        "complex has reduced homology {} in degree {}",
                        describe(&profile, degree),
                        degree
                    ),
                }),
            };
        }
    }
    CmStatus {
        value: CmLevel::CM,
        witness: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldStatus {
    No(CmWitness),
    WithBoundary,
    WithoutBoundary,
}

/// Homology-manifold test: the link of every nonempty face must have either
/// trivial reduced homology or the reduced homology of a sphere of dimension
/// `dim K − dim F − 1`. All-sphere links mean no boundary. The link `{∅}` of
/// a maximal face counts as the (−1)-sphere.
pub fn homology_manifold_status(k: &AbstractComplex) -> ManifoldStatus {
    if k.has_no_nonempty_face() {
        return ManifoldStatus::WithoutBoundary;
    }
    if !k.is_pure() {
        return ManifoldStatus::No(CmWitness {
            face: None,
            degree: None,
            detail: "complex is not pure".into(),
        });
    }
    let dim = k.dim().expect("nonempty complex has a dimension");
    let mut saw_trivial = false;
    for (f, fdim) in k.nonempty_faces() {
        let target = dim - fdim - 1;
        let link = k.link(f);
        if link.has_no_nonempty_face() {
            // {∅}: the (−1)-sphere; in a pure complex this happens exactly
            // for maximal faces, where target = −1.
            if target == -1 {
                continue;
            }
            return ManifoldStatus::No(CmWitness {
                face: Some(f.clone()),
                degree: None,
                detail: format!("link of {:?} is empty but should be a {target}-sphere", f),
            });
        }
        let profile = homology_of_complex(&link);
        if profile.is_sphere(target) {
            continue;
        }
        if profile.is_trivial() {
            saw_trivial = true;
            continue;
        }
        let bad = profile.nonzero_degrees();
        let degree = bad.first().map(|(d, _, _)| *d);
        return ManifoldStatus::No(CmWitness {
            face: Some(f.clone()),
            degree,
            detail: format!(
                "link of {:?} is neither acyclic nor a {target}-sphere (H in degrees {:?})",
                f, bad
            ),
        });
    }
    if saw_trivial {
        ManifoldStatus::WithBoundary
    } else {
        ManifoldStatus::WithoutBoundary
    }
}
