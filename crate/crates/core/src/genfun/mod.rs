//! Exact rational generating functions of pointed cones and half-open
//! regions.
//!
//! A cone's lattice-point series is materialized as a sum of terms
//! `numerator / ∏ (1 − x^{g})`: the cone is triangulated by pulling its first
//! generator, the simplicial pieces are made half-open against a
//! deterministic generic reference point so every lattice point lands in
//! exactly one piece, and each piece contributes its half-open fundamental
//! parallelepiped as the numerator. Identity testing is randomized exact
//! evaluation at seeded rational points: a refutation is a hard witness, and
//! agreement on all trials is reported as equality (the Schwartz-Zippel
//! regime — false acceptance has astronomically small probability).

mod identities;

pub use identities::{
    check_indicator_identity, enumerate_region_polytope, verify_genf, verify_mr1,
    verify_relative_brion, verify_stanley_reciprocity, BrionReport, GenfReport, IndicatorKind,
    IndicatorObject, IndicatorReport, Mr1Report, StanleyReport,
};

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{box_lattice_points, AbstractComplex, FaceKey};
use crate::error::{input_err, Error, Result};
use crate::exact::{self, rat_vec, solve_linear, Int, Rat};
use crate::geometry::Cone;

/// Guard on fundamental-parallelepiped enumeration (box candidates).
pub const PARALLELEPIPED_GUARD: u64 = 100_000;

// ---- Laurent polynomials ----------------------------------------------------

/// Finite integer-coefficient Laurent polynomial in `ambient` variables.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    ambient: usize,
    terms: BTreeMap<Vec<Int>, Int>,
}

impl LaurentPolynomial {
    pub fn zero(ambient: usize) -> Self {
        LaurentPolynomial {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponent: Vec<Int>) -> Self {
        let ambient = exponent.len();
        let mut terms = BTreeMap::new();
        terms.insert(exponent, Int::one());
        LaurentPolynomial { ambient, terms }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Int>, &Int)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[Int]) -> Int {
        self.terms.get(exponent).cloned().unwrap_or_else(Int::zero)
    }

    pub fn add_term(&mut self, exponent: Vec<Int>, coefficient: Int) {
        debug_assert_eq!(exponent.len(), self.ambient);
        let entry = self.terms.entry(exponent).or_insert_with(Int::zero);
        *entry += coefficient;
        if entry.is_zero() {
            let key: Vec<Vec<Int>> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn negate(&self) -> LaurentPolynomial {
        LaurentPolynomial {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.add(&other.negate())
    }

    /// Multiply by `sign * x^shift`.
    pub fn mul_monomial(&self, shift: &[Int], negative: bool) -> LaurentPolynomial {
        LaurentPolynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        exact::add_vec(e, shift),
                        if negative { -c } else { c.clone() },
                    )
                })
                .collect(),
        }
    }

    /// `x ↦ 1/x`: negate every exponent.
    pub fn negate_exponents(&self) -> LaurentPolynomial {
        LaurentPolynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (exact::neg_vec(e), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (e, c) in self.terms.iter() {
            acc += Rat::from_integer(c.clone()) * monomial_value(point, e)?;
        }
        Ok(acc)
    }
}

fn rat_pow(x: &Rat, e: i64) -> Result<Rat> {
    if e == 0 {
        return Ok(Rat::one());
    }
    let mag = e.unsigned_abs();
    let mag = u32::try_from(mag)
        .map_err(|_| Error::GuardExceeded("exponent too large for evaluation".into()))?;
    let powed = Rat::new(x.numer().pow(mag), x.denom().pow(mag));
    if e > 0 {
        Ok(powed)
    } else {
        if powed.is_zero() {
            return Err(Error::Pole);
        }
        Ok(powed.recip())
    }
}

fn monomial_value(point: &[Rat], exponent: &[Int]) -> Result<Rat> {
    let mut acc = Rat::one();
    for (x, e) in point.iter().zip(exponent) {
        let e = e
            .to_i64()
            .ok_or_else(|| Error::GuardExceeded("exponent exceeds i64".into()))?;
        if x.is_zero() {
            if e < 0 {
                return Err(Error::Pole);
            }
            if e > 0 {
                return Ok(Rat::zero());
            }
            continue;
        }
        acc *= rat_pow(x, e)?;
    }
    Ok(acc)
}

// ---- Rational generating functions --------------------------------------------

/// One summand `numerator / ∏_{g ∈ rays} (1 − x^g)`. Rays are kept
/// sign-canonical (first nonzero coordinate positive); flipping a ray
/// absorbs a compensating monomial and sign into the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfTerm {
    pub numerator: LaurentPolynomial,
    pub rays: Vec<Vec<Int>>,
}

/// Finite sum of rational-function terms representing a lattice-point
/// series. No symbolic simplification is attempted; equality is decided by
/// exact evaluation at random points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGenFun {
    ambient: usize,
    terms: Vec<GfTerm>,
}

impl RationalGenFun {
    pub fn zero(ambient: usize) -> Self {
        RationalGenFun {
            ambient,
            terms: Vec::new(),
        }
    }

    pub fn from_laurent(lp: LaurentPolynomial) -> Self {
        let ambient = lp.ambient_dim();
        let mut out = RationalGenFun::zero(ambient);
        if !lp.is_zero() {
            out.terms.push(GfTerm {
                numerator: lp,
                rays: Vec::new(),
            });
        }
        out
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn terms(&self) -> &[GfTerm] {
        &self.terms
    }

    /// Push `numerator / ∏ (1 − x^g)`, canonicalizing ray signs.
    pub fn push_term(&mut self, mut numerator: LaurentPolynomial, rays: Vec<Vec<Int>>) {
        debug_assert_eq!(numerator.ambient_dim(), self.ambient);
        let mut canonical = Vec::with_capacity(rays.len());
        for g in rays {
            debug_assert!(!exact::is_zero_vec(&g));
            let flipped = exact::sign_canonical(&g);
            if flipped != g {
                // 1/(1 − x^g) = −x^{−g} / (1 − x^{−g})
                numerator = numerator.mul_monomial(&flipped, true);
            }
            canonical.push(flipped);
        }
        canonical.sort();
        if !numerator.is_zero() {
            self.terms.push(GfTerm {
                numerator,
                rays: canonical,
            });
        }
    }

    pub fn add(&self, other: &RationalGenFun) -> RationalGenFun {
        debug_assert_eq!(self.ambient, other.ambient);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        RationalGenFun {
            ambient: self.ambient,
            terms,
        }
    }

    pub fn negate(&self) -> RationalGenFun {
        RationalGenFun {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|t| GfTerm {
                    numerator: t.numerator.negate(),
                    rays: t.rays.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &RationalGenFun) -> RationalGenFun {
        self.add(&other.negate())
    }

    pub fn scale_sign(&self, negative: bool) -> RationalGenFun {
        if negative {
            self.negate()
        } else {
            self.clone()
        }
    }
}

/// `x ↦ 1/x` on a rational generating function: numerator exponents are
/// negated and each denominator factor `(1 − x^{−g})` is renormalized to the
/// canonical ray `g` with the compensating monomial `−x^{g}` absorbed into
/// the numerator.
pub fn substitute_reciprocal(f: &RationalGenFun) -> RationalGenFun {
    let mut out = RationalGenFun::zero(f.ambient);
    for t in &f.terms {
        let mut num = t.numerator.negate_exponents();
        for g in &t.rays {
            num = num.mul_monomial(g, true);
        }
        out.terms.push(GfTerm {
            numerator: num,
            rays: t.rays.clone(),
        });
    }
    out
}

/// Exact value at a point with nonzero coordinates off the pole locus.
pub fn eval_rational(f: &RationalGenFun, point: &[Rat]) -> Result<Rat> {
    if point.len() != f.ambient {
        return input_err("evaluation point has wrong dimension");
    }
    let mut acc = Rat::zero();
    for t in &f.terms {
        let mut denom = Rat::one();
        for g in &t.rays {
            let factor = Rat::one() - monomial_value(point, g)?;
            if factor.is_zero() {
                return Err(Error::Pole);
            }
            denom *= factor;
        }
        acc += t.numerator.eval(point)? / denom;
    }
    Ok(acc)
}

/// Outcome of randomized identity testing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqualityVerdict {
    /// All trials evaluated to the same value ("EQUAL (randomized)").
    Equal { trials: u32 },
    /// Hard counterexample: a point where the two sides differ.
    NotEqual {
        witness: Vec<Rat>,
        lhs: Rat,
        rhs: Rat,
    },
}

impl EqualityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityVerdict::Equal { .. })
    }
}

/// Compare two rational generating functions by exact evaluation at seeded
/// random rational points (numerators and denominators uniform in
/// `[1, 10^6]`, random signs), resampling on poles. Deterministic given the
/// seed.
pub fn rational_equal(
    f: &RationalGenFun,
    g: &RationalGenFun,
    trials: u32,
    seed: u64,
) -> Result<EqualityVerdict> {
    if f.ambient != g.ambient {
        return input_err("generating functions live in different dimensions");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0u32;
    let mut attempts = 0u32;
    let max_attempts = trials.saturating_mul(100).max(100);
    while done < trials {
        if attempts >= max_attempts {
            return Err(Error::GuardExceeded(
                "resampled too many times around pole loci".into(),
            ));
        }
        attempts += 1;
        let point: Vec<Rat> = (0..f.ambient)
            .map(|_| {
                let num = rng.gen_range(1..=1_000_000i64);
                let den = rng.gen_range(1..=1_000_000i64);
                let sign = if rng.gen::<bool>() { 1 } else { -1 };
                exact::rat(sign * num, den)
            })
            .collect();
        let lhs = match eval_rational(f, &point) {
            Ok(v) => v,
            Err(Error::Pole) => continue,
            Err(e) => return Err(e),
        };
        let rhs = match eval_rational(g, &point) {
            Ok(v) => v,
            Err(Error::Pole) => continue,
            Err(e) => return Err(e),
        };
        if lhs != rhs {
            return Ok(EqualityVerdict::NotEqual {
                witness: point,
                lhs,
                rhs,
            });
        }
        done += 1;
    }
    Ok(EqualityVerdict::Equal { trials })
}

// ---- Half-open decomposition ---------------------------------------------------

/// Simplicial cone with linearly independent generators, a subset of whose
/// facets are open (excluded), shifted to a lattice apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfOpenSimplicialCone {
    pub apex: Vec<Int>,
    pub generators: Vec<Vec<Int>>,
    pub open_facets: BTreeSet<usize>,
}

impl HalfOpenSimplicialCone {
    /// Barycentric coordinates of `x − apex` in the generator basis, when
    /// `x` lies in the linear span.
    pub fn coordinates(&self, x: &[Int]) -> Option<Vec<Rat>> {
        let shifted: Vec<Rat> = x
            .iter()
            .zip(&self.apex)
            .map(|(a, b)| Rat::from_integer(a - b))
            .collect();
        self.coordinates_rat(&shifted)
    }

    fn coordinates_rat(&self, shifted: &[Rat]) -> Option<Vec<Rat>> {
        let ambient = self.apex.len();
        let rows: Vec<Vec<Rat>> = (0..ambient)
            .map(|i| {
                self.generators
                    .iter()
                    .map(|h| Rat::from_integer(h[i].clone()))
                    .collect()
            })
            .collect();
        let sol = solve_linear(&rows, &shifted.to_vec())?;
        // verify (solve_linear zero-fills free variables; generators are
        // independent so the system is determined when consistent)
        for i in 0..ambient {
            let mut acc = Rat::zero();
            for (j, h) in self.generators.iter().enumerate() {
                acc += Rat::from_integer(h[i].clone()) * &sol[j];
            }
            if acc != shifted[i] {
                return None;
            }
        }
        Some(sol)
    }

    /// Membership honoring the open facets.
    pub fn contains_int(&self, x: &[Int]) -> bool {
        match self.coordinates(x) {
            None => false,
            Some(lambda) => lambda.iter().enumerate().all(|(i, l)| {
                if self.open_facets.contains(&i) {
                    l.is_positive()
                } else {
                    !l.is_negative()
                }
            }),
        }
    }

    /// Lattice points of the half-open fundamental parallelepiped
    /// `{ apex + Σ λ_i g_i : λ_i ∈ [0,1) closed / (0,1] open }`.
    pub fn parallelepiped_points(&self) -> Result<Vec<Vec<Int>>> {
        let ambient = self.apex.len();
        let r = self.generators.len();
        let mut lo = self.apex.clone();
        let mut hi = self.apex.clone();
        for mask in 0u64..(1 << r) {
            let mut corner = self.apex.clone();
            for (j, g) in self.generators.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    corner = exact::add_vec(&corner, g);
                }
            }
            for i in 0..ambient {
                if corner[i] < lo[i] {
                    lo[i] = corner[i].clone();
                }
                if corner[i] > hi[i] {
                    hi[i] = corner[i].clone();
                }
            }
        }
        let mut out = Vec::new();
        for x in box_lattice_points(&lo, &hi, PARALLELEPIPED_GUARD)? {
            let Some(lambda) = self.coordinates(&x) else {
                continue;
            };
            let inside = lambda.iter().enumerate().all(|(i, l)| {
                let one = Rat::one();
                if self.open_facets.contains(&i) {
                    l.is_positive() && *l <= one
                } else {
                    !l.is_negative() && *l < one
                }
            });
            if inside {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// Pulling triangulation of a pointed cone into simplicial cones on subsets
/// of its extreme rays: the first generator is joined to the recursive
/// triangulation of every facet not containing it.
fn triangulate(c: &Cone) -> Result<Vec<Vec<usize>>> {
    if c.generators().len() == c.dim() {
        return Ok(vec![(0..c.generators().len()).collect()]);
    }
    let v = 0usize;
    let mut pieces = Vec::new();
    for facet_face in c.facet_faces() {
        if facet_face.rays.contains(&v) {
            continue;
        }
        let sub = c.face_cone(facet_face);
        let sub_tri = triangulate(&sub)?;
        // map the sub-cone's generator indices back to parent indices
        let parent_index: Vec<usize> = sub
            .generators()
            .iter()
            .map(|g| {
                c.generators()
                    .iter()
                    .position(|pg| pg == g)
                    .expect("facet ray is a parent ray")
            })
            .collect();
        for piece in sub_tri {
            let mut rays: Vec<usize> = piece.into_iter().map(|j| parent_index[j]).collect();
            rays.push(v);
            rays.sort();
            pieces.push(rays);
        }
    }
    pieces.sort();
    pieces.dedup();
    Ok(pieces)
}

/// Deterministic interior reference point: `apex + Σ 2^{−i} g_i`, with a
/// rational perturbation schedule when a piece facet hyperplane hits it.
fn reference_point(c: &Cone, attempt: u32) -> Vec<Rat> {
    let ambient = c.ambient_dim();
    let mut w: Vec<Rat> = c
        .apex()
        .iter()
        .map(|a| Rat::from_integer(a.clone()))
        .collect();
    for (i, g) in c.generators().iter().enumerate() {
        let mut weight = exact::rat(1, 1 << i.min(30));
        if attempt > 0 {
            // deterministic perturbation, shrinking with the attempt number
            weight += exact::rat(1, (17 + attempt as i64).pow((i as u32 % 5) + 1));
        }
        for j in 0..ambient {
            w[j] += &weight * Rat::from_integer(g[j].clone());
        }
    }
    w
}

/// Whether to force-open piece facets on the cone's boundary (relative
/// interior mode) or keep the reference-side rule only (closed mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeMode {
    Closed,
    Relint,
}

/// Triangulate a pointed cone and assign half-open facets so that the pieces
/// partition it exactly: for each simplicial piece, the facets facing away
/// from a generic interior reference point are opened. The reference is
/// perturbed deterministically until generic.
pub fn triangulate_and_halfopen(
    c: &Cone,
    reference: Option<&[Rat]>,
) -> Result<Vec<HalfOpenSimplicialCone>> {
    decompose(c, reference, ConeMode::Closed)
}

fn decompose(
    c: &Cone,
    reference: Option<&[Rat]>,
    mode: ConeMode,
) -> Result<Vec<HalfOpenSimplicialCone>> {
    if !c.is_pointed() {
        return input_err("half-open decomposition needs a pointed cone");
    }
    if c.dim() == 0 {
        return Ok(Vec::new());
    }
    let pieces = triangulate(c)?;
    'attempt: for attempt in 0..64u32 {
        let w: Vec<Rat> = match (reference, attempt) {
            (Some(r), 0) => r.to_vec(),
            (Some(_), _) => reference_point(c, attempt),
            (None, a) => reference_point(c, a),
        };
        let mut out = Vec::new();
        for rays in &pieces {
            let generators: Vec<Vec<Int>> =
                rays.iter().map(|&j| c.generators()[j].clone()).collect();
            let probe = HalfOpenSimplicialCone {
                apex: c.apex().to_vec(),
                generators: generators.clone(),
                open_facets: BTreeSet::new(),
            };
            // coordinates of w - apex in this piece's basis
            let shifted: Vec<Rat> = w
                .iter()
                .zip(c.apex())
                .map(|(a, b)| a - Rat::from_integer(b.clone()))
                .collect();
            let Some(lambda) = probe.coordinates_rat(&shifted) else {
                continue 'attempt; // reference off the span: perturb
            };
            let mut open = BTreeSet::new();
            for (i, l) in lambda.iter().enumerate() {
                if l.is_zero() {
                    continue 'attempt; // degenerate reference: perturb
                }
                if l.is_negative() {
                    open.insert(i);
                }
            }
            if mode == ConeMode::Relint {
                // force-open the piece facets living on the cone's boundary
                for i in 0..generators.len() {
                    let others: Vec<&Vec<Int>> = generators
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, g)| g)
                        .collect();
                    let on_boundary = c.facets().iter().any(|f| {
                        others.iter().all(|g| exact::dot(&f.normal, g).is_zero())
                    });
                    if on_boundary {
                        open.insert(i);
                    }
                }
            }
            out.push(HalfOpenSimplicialCone {
                apex: c.apex().to_vec(),
                generators,
                open_facets: open,
            });
        }
        return Ok(out);
    }
    Err(Error::Internal(
        "could not find a generic reference point".into(),
    ))
}

/// Rational generating function of the lattice points of a pointed cone
/// (closed) or of its relative interior.
///
/// The open cone of a simplicial cone is the single piece with every facet
/// open. A non-simplicial boundary cannot be excluded facet-by-facet within
/// the pieces (a boundary ray may touch a piece only along internal piece
/// facets), so the general open case recurses:
/// `F_{relint C} = F_C − Σ_{G proper face} F_{relint G}`.
pub fn genfun_cone(c: &Cone, mode: ConeMode) -> Result<RationalGenFun> {
    if !c.is_pointed() {
        return input_err("generating functions need a pointed cone");
    }
    let ambient = c.ambient_dim();
    if c.dim() == 0 {
        // a single lattice point
        return Ok(RationalGenFun::from_laurent(LaurentPolynomial::monomial(
            c.apex().to_vec(),
        )));
    }
    if mode == ConeMode::Relint && c.generators().len() != c.dim() {
        let mut out = genfun_cone(c, ConeMode::Closed)?;
        for face in c.proper_faces() {
            let sub = c.face_cone(face);
            out = out.sub(&genfun_cone(&sub, ConeMode::Relint)?);
        }
        return Ok(out);
    }
    let pieces = decompose(c, None, mode)?;
    let mut out = RationalGenFun::zero(ambient);
    for piece in &pieces {
        let mut numerator = LaurentPolynomial::zero(ambient);
        for p in piece.parallelepiped_points()? {
            numerator.add_term(p, Int::one());
        }
        out.push_term(numerator, piece.generators.clone());
    }
    Ok(out)
}

/// Inclusion-exclusion route to the open cone: alternating sum of the closed
/// generating functions of all faces. Kept as an independent oracle for the
/// direct half-open construction.
pub fn genfun_relint_via_faces(c: &Cone) -> Result<RationalGenFun> {
    if !c.is_pointed() {
        return input_err("generating functions need a pointed cone");
    }
    let mut out = RationalGenFun::zero(c.ambient_dim());
    for face in c.face_lattice() {
        let sub = c.face_cone(face);
        let closed = genfun_cone(&sub, ConeMode::Closed)?;
        let negative = (c.dim() - face.dim) % 2 == 1;
        out = out.add(&closed.scale_sign(negative));
    }
    Ok(out)
}

/// `F_{C ∖ |Δ|} = F_C − Σ_{G ∈ Δ} F_{relint G}` for a subcomplex `Δ` of the
/// boundary fan of `C` (faces keyed by extreme ray sets; the apex is the
/// empty key).
pub fn genfun_region(c: &Cone, delta: &AbstractComplex) -> Result<RationalGenFun> {
    let boundary = crate::complex::fan_boundary_complex(c);
    if !delta.is_subcomplex_of(&boundary) {
        return input_err("Δ is not a subcomplex of the cone's boundary fan");
    }
    let mut out = genfun_cone(c, ConeMode::Closed)?;
    for (key, _) in delta.faces() {
        let relint = relint_of_face(c, key)?;
        out = out.sub(&relint);
    }
    Ok(out)
}

/// Generating function of the relative interior of the face with the given
/// ray key (the apex for the empty key).
pub fn relint_of_face(c: &Cone, key: &FaceKey) -> Result<RationalGenFun> {
    let face = c
        .face_by_rays(key)
        .ok_or_else(|| Error::Input("no face with the given ray set".into()))?;
    let sub = c.face_cone(face);
    genfun_cone(&sub, ConeMode::Relint)
}

/// Box-restricted lattice count of a cone, brute force, as an oracle.
pub fn cone_box_count(c: &Cone, radius: i64) -> Result<usize> {
    let lo = vec![Int::from(-radius); c.ambient_dim()];
    let hi = vec![Int::from(radius); c.ambient_dim()];
    let mut n = 0;
    for x in box_lattice_points(&lo, &hi, BOX_ORACLE_GUARD)? {
        if c.contains_int(&x) {
            n += 1;
        }
    }
    Ok(n)
}

const BOX_ORACLE_GUARD: u64 = 10_000_000;

/// Same box count through a half-open decomposition: each lattice point of
/// the cone must land in exactly one piece.
pub fn pieces_box_count(pieces: &[HalfOpenSimplicialCone], ambient: usize, radius: i64) -> Result<usize> {
    let lo = vec![Int::from(-radius); ambient];
    let hi = vec![Int::from(radius); ambient];
    let mut n = 0;
    for x in box_lattice_points(&lo, &hi, BOX_ORACLE_GUARD)? {
        let hits = pieces.iter().filter(|p| p.contains_int(&x)).count();
        if hits > 1 {
            return Err(Error::Internal(format!(
                "lattice point {:?} lies in {hits} half-open pieces",
                x
            )));
        }
        n += hits;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_vec, rat, rat_int};
    use crate::geometry::Polytope;

    fn unit_square() -> Polytope {
        Polytope::from_i64_vertices(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn hexagon() -> Polytope {
        Polytope::from_i64_vertices(&[&[1, 0], &[2, 0], &[0, 1], &[3, 1], &[1, 2], &[2, 2]])
            .unwrap()
    }

    fn ray1d() -> Cone {
        Cone::from_generators(int_vec(&[0]), &[int_vec(&[1])]).unwrap()
    }

    #[test]
    fn genfun_of_ray() {
        let f = genfun_cone(&ray1d(), ConeMode::Closed).unwrap();
        // 1/(1-x)
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.terms()[0].rays, vec![int_vec(&[1])]);
        assert_eq!(f.terms()[0].numerator.num_terms(), 1);
        let v = eval_rational(&f, &[rat_int(2)]).unwrap();
        assert_eq!(v, rat_int(-1));
    }

    #[test]
    fn genfun_of_ray_relint() {
        let f = genfun_cone(&ray1d(), ConeMode::Relint).unwrap();
        // x/(1-x)
        let v = eval_rational(&f, &[rat_int(2)]).unwrap();
        assert_eq!(v, rat_int(-2));
    }

    #[test]
    fn genfun_cone_over_segment_unimodular() {
        let p = Polytope::from_i64_vertices(&[&[0], &[1]]).unwrap();
        let c = Cone::homogenize(&p);
        let f = genfun_cone(&c, ConeMode::Closed).unwrap();
        // single unimodular piece: 1 / ((1-x2)(1-x1x2))
        assert_eq!(f.terms().len(), 1);
        let point = vec![rat_int(2), rat_int(3)];
        let expect = rat_int(1) / ((rat_int(1) - rat_int(3)) * (rat_int(1) - rat_int(6)));
        assert_eq!(eval_rational(&f, &point).unwrap(), expect);
    }

    #[test]
    fn triangulation_of_cone_over_square() {
        let c = Cone::homogenize(&unit_square());
        let pieces = triangulate_and_halfopen(&c, None).unwrap();
        assert_eq!(pieces.len(), 2);
        // box-count identity against the cone itself
        let direct = cone_box_count(&c, 3).unwrap();
        let via = pieces_box_count(&pieces, 3, 3).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn triangulation_of_cone_over_hexagon() {
        let c = Cone::homogenize(&hexagon());
        let pieces = triangulate_and_halfopen(&c, None).unwrap();
        assert_eq!(pieces.len(), 4);
        let direct = cone_box_count(&c, 3).unwrap();
        let via = pieces_box_count(&pieces, 3, 3).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn relint_modes_agree() {
        for p in [unit_square(), hexagon()] {
            let c = Cone::homogenize(&p);
            let direct = genfun_cone(&c, ConeMode::Relint).unwrap();
            let via_faces = genfun_relint_via_faces(&c).unwrap();
            assert!(rational_equal(&direct, &via_faces, 8, 5)
                .unwrap()
                .is_equal());
        }
    }

    #[test]
    fn substitute_reciprocal_examples() {
        // 1/(1-x) -> -x/(1-x): check by evaluation at x = 2 both give 2
        let f = genfun_cone(&ray1d(), ConeMode::Closed).unwrap();
        let sub = substitute_reciprocal(&f);
        let at2 = eval_rational(&sub, &[rat_int(2)]).unwrap();
        let direct = eval_rational(&f, &[rat(1, 2)]).unwrap();
        assert_eq!(at2, direct);
        assert_eq!(at2, rat_int(2));
        // involution
        let back = substitute_reciprocal(&sub);
        let p = vec![rat(7, 3)];
        assert_eq!(
            eval_rational(&back, &p).unwrap(),
            eval_rational(&f, &p).unwrap()
        );
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let c = Cone::homogenize(&unit_square());
        let f = genfun_cone(&c, ConeMode::Closed).unwrap();
        let sub = substitute_reciprocal(&f);
        let p = vec![rat(3, 2), rat(5, 7), rat(-2, 3)];
        let inv: Vec<Rat> = p.iter().map(|x| x.recip()).collect();
        assert_eq!(
            eval_rational(&sub, &p).unwrap(),
            eval_rational(&f, &inv).unwrap()
        );
    }

    #[test]
    fn rational_equal_detects_difference() {
        let f = genfun_cone(&ray1d(), ConeMode::Closed).unwrap();
        let g = genfun_cone(&ray1d(), ConeMode::Relint).unwrap();
        assert!(rational_equal(&f, &f.clone(), 4, 0).unwrap().is_equal());
        match rational_equal(&f, &g, 16, 0).unwrap() {
            EqualityVerdict::NotEqual { lhs, rhs, .. } => assert_ne!(lhs, rhs),
            _ => panic!("1/(1-x) and x/(1-x) must differ"),
        }
    }

    #[test]
    fn eval_pole_detected() {
        let f = genfun_cone(&ray1d(), ConeMode::Closed).unwrap();
        assert!(matches!(
            eval_rational(&f, &[rat_int(1)]),
            Err(Error::Pole)
        ));
    }

    #[test]
    fn genfun_region_cases() {
        // d=1 ray with Δ = {apex}: x/(1-x)
        let c = ray1d();
        let fan = crate::complex::fan_boundary_complex(&c);
        let f = genfun_region(&c, &fan).unwrap();
        let expect = genfun_cone(&c, ConeMode::Relint).unwrap();
        assert!(rational_equal(&f, &expect, 8, 1).unwrap().is_equal());
        // Δ = ∅ leaves the closed cone
        let f = genfun_region(&c, &AbstractComplex::void()).unwrap();
        let expect = genfun_cone(&c, ConeMode::Closed).unwrap();
        assert!(rational_equal(&f, &expect, 8, 2).unwrap().is_equal());
    }

    #[test]
    fn genfun_region_rejects_non_subcomplex() {
        let c = Cone::homogenize(&unit_square());
        // a fan face of some other cone: key out of range
        let bogus = AbstractComplex::from_faces(vec![(vec![17], 0)]);
        assert!(genfun_region(&c, &bogus).is_err());
    }

    /// Series/rational consistency: summing piece-by-piece box counts equals
    /// the direct count for every homogenized corpus cone.
    #[test]
    fn box_count_consistency() {
        let shapes = vec![
            Polytope::from_i64_vertices(&[&[0], &[1]]).unwrap(),
            unit_square(),
            Polytope::from_i64_vertices(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap(),
            hexagon(),
        ];
        for p in shapes {
            let c = Cone::homogenize(&p);
            let pieces = triangulate_and_halfopen(&c, None).unwrap();
            assert_eq!(
                cone_box_count(&c, 4).unwrap(),
                pieces_box_count(&pieces, c.ambient_dim(), 4).unwrap()
            );
        }
    }

    #[test]
    fn parallelepiped_respects_index() {
        // cone((1,0),(1,2)) has index 2
        let c = Cone::from_generators(int_vec(&[0, 0]), &[int_vec(&[1, 0]), int_vec(&[1, 2])])
            .unwrap();
        let pieces = triangulate_and_halfopen(&c, None).unwrap();
        assert_eq!(pieces.len(), 1);
        let pts = pieces[0].parallelepiped_points().unwrap();
        assert_eq!(pts.len(), 2);
    }
}
