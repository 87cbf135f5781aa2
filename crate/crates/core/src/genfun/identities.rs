//! Mechanical verification of the duality identities: reciprocity of cone
//! generating functions, the facet-complement duality for half-open cones,
//! its link-coefficient refinement for arbitrary boundary subcomplexes, the
//! signed tangent-cone indicator identities, and vertex-cone decompositions
//! of half-open polytopes.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::complex::{
    box_lattice_points, fan_boundary_complex, fan_subcomplex_generated, AbstractComplex,
    PolyhedralComplex,
};
use crate::error::{input_err, Error, Result};
use crate::exact::{self, Int, Rat};
use crate::genfun::{
    eval_rational, genfun_cone, genfun_region, rational_equal, relint_of_face,
    substitute_reciprocal, ConeMode, EqualityVerdict, LaurentPolynomial, RationalGenFun,
};
use crate::geometry::{Cone, Halfspace, Polytope};
use crate::topology::{cm_status, CmStatus};

/// Finite Laurent polynomial of `(P ∖ |Δ|) ∩ Z^d`, with `Δ` the boundary
/// subcomplex generated by the given facets, by direct enumeration. This is
/// the compact side of every polytope identity, independent of the cone
/// machinery.
pub fn enumerate_region_polytope(
    p: &Polytope,
    removed_facets: &BTreeSet<usize>,
) -> Result<LaurentPolynomial> {
    for &i in removed_facets {
        if i >= p.facets().len() {
            return input_err(format!("facet index {i} out of range"));
        }
    }
    let one = Int::from(1);
    let (lo, hi) = p.bounding_box(&one);
    let mut out = LaurentPolynomial::zero(p.ambient_dim());
    for x in box_lattice_points(&lo, &hi, crate::ehrhart::BOX_GUARD)? {
        let inside = p.contains_int(&x, &one)
            && removed_facets
                .iter()
                .all(|&i| p.facets()[i].slack_int(&x, &one).is_negative());
        if inside {
            out.add_term(x, Int::from(1));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct StanleyReport {
    pub verdict: EqualityVerdict,
}

/// Reciprocity for a pointed cone: `(−1)^{dim G} F_G(1/x) = F_{relint G}(x)`,
/// tested as an identity of rational functions.
pub fn verify_stanley_reciprocity(c: &Cone, trials: u32, seed: u64) -> Result<StanleyReport> {
    let closed = genfun_cone(c, ConeMode::Closed)?;
    let relint = genfun_cone(c, ConeMode::Relint)?;
    let lhs = substitute_reciprocal(&closed).scale_sign(c.dim() % 2 == 1);
    let verdict = rational_equal(&lhs, &relint, trials, seed)?;
    Ok(StanleyReport { verdict })
}

#[derive(Debug, Clone)]
pub struct Mr1Report {
    /// Cohen-Macaulay status of the removed fan subcomplex, read off its
    /// cross-section (the link of the apex). The duality is promised exactly
    /// when this is CM.
    pub cm: CmStatus,
    pub verdict: EqualityVerdict,
    pub verified: bool,
}

/// Facet-complement duality for a full-dimensional pointed cone `C` and a
/// facet-generated subcomplex `Δ` of its boundary:
/// `(−1)^{dim C} F_{C∖|Δ|}(1/x) = F_{C∖|Δ'|}(x)` with `Δ'` generated by the
/// complementary facets. When `Δ` consists of all facets, `Δ'` is the void
/// complex and the right side is the closed cone.
pub fn verify_mr1(c: &Cone, delta_facets: &[usize], trials: u32, seed: u64) -> Result<Mr1Report> {
    if !c.is_pointed() || c.dim() != c.ambient_dim() {
        return input_err("duality check needs a pointed full-dimensional cone");
    }
    let delta = fan_subcomplex_generated(c, delta_facets, false)?;
    let delta_prime = fan_subcomplex_generated(c, delta_facets, true)?;
    let cm = cm_status(&delta);
    let lhs = substitute_reciprocal(&genfun_region(c, &delta)?).scale_sign(c.dim() % 2 == 1);
    let rhs = genfun_region(c, &delta_prime)?;
    let verdict = rational_equal(&lhs, &rhs, trials, seed)?;
    let verified = verdict.is_equal();
    Ok(Mr1Report {
        cm,
        verdict,
        verified,
    })
}

#[derive(Debug, Clone)]
pub struct GenfReport {
    pub verdict: EqualityVerdict,
    pub verified: bool,
}

/// Link-coefficient identity for an arbitrary subcomplex `Δ` of the boundary
/// fan of a full-dimensional pointed cone (no Cohen-Macaulay hypothesis):
///
/// `(−1)^{dim C} F_{C∖|Δ|}(1/x) = F_{relint C}(x)
///     + Σ_{G ∈ Δ} (−1)^{dim C + dim G} χ̃(lk_Δ(G)) · F_{relint G}(x)`
///
/// where `dim G` is the fan (cross-section) dimension of the face and the
/// apex enters through the empty key. The right side is also assembled a
/// second way, as the alternating sum of closed faces, and both assemblies
/// must agree before the verdict is computed.
pub fn verify_genf(
    c: &Cone,
    delta: &AbstractComplex,
    trials: u32,
    seed: u64,
) -> Result<GenfReport> {
    if !c.is_pointed() || c.dim() != c.ambient_dim() {
        return input_err("link-coefficient check needs a pointed full-dimensional cone");
    }
    let dim_c = c.dim() as i64;
    let lhs = substitute_reciprocal(&genfun_region(c, delta)?).scale_sign(c.dim() % 2 == 1);

    // Link form: coefficients are Euler characteristics of links in Δ.
    let mut rhs_links = genfun_cone(c, ConeMode::Relint)?;
    for (key, fan_dim) in delta.faces() {
        let chi = delta.link(key).reduced_euler_char();
        if chi == 0 {
            continue;
        }
        let relint = relint_of_face(c, key)?;
        let sign_negative = (dim_c + fan_dim + 1) % 2 != 0;
        let coeff_negative = (chi < 0) != sign_negative;
        let magnitude = chi.unsigned_abs();
        for _ in 0..magnitude {
            rhs_links = rhs_links.add(&relint.scale_sign(coeff_negative));
        }
    }

    // Closed-face form: F_relint C + Σ_{G∈Δ} (−1)^{dim C + dim G} F_G.
    let mut rhs_closed = genfun_cone(c, ConeMode::Relint)?;
    for (key, fan_dim) in delta.faces() {
        let face = c
            .face_by_rays(key)
            .ok_or_else(|| Error::Input("Δ face is not a face of the cone".into()))?;
        let closed = genfun_cone(&c.face_cone(face), ConeMode::Closed)?;
        let sign_negative = (dim_c + fan_dim) % 2 != 0;
        rhs_closed = rhs_closed.add(&closed.scale_sign(sign_negative));
    }

    let cross = rational_equal(&rhs_links, &rhs_closed, trials.max(8), seed.wrapping_add(1))?;
    if !cross.is_equal() {
        return Err(Error::Internal(
            "link-coefficient and closed-face assemblies disagree".into(),
        ));
    }

    let verdict = rational_equal(&lhs, &rhs_links, trials, seed)?;
    let verified = verdict.is_equal();
    Ok(GenfReport { verdict, verified })
}

// ---- Indicator identities ---------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorKind {
    /// `Σ_{∅≠F⊆C} (−1)^{dim F} [T_C(F)] = (−1)^{dim C} [Int(−C)]` for a
    /// full-dimensional cone with apex at the origin.
    ConeBg,
    /// Brianchon-Gram: `[P] = Σ_{∅≠F⊆P} (−1)^{dim F} [T_P(F)]`.
    Bg,
    /// Inverted variant: `(−1)^d [relint P] = Σ_F (−1)^{dim F} [T⁻¹_P(F)]`.
    InvBg,
    /// Relative version: `[P∖|Δ|] = Σ_F (−1)^{dim F} [T_{P,Δ}(F)]`.
    RelBg,
    /// Relative inverted version:
    /// `(−1)^d [P∖|Δ'|] = Σ_F (−1)^{dim F} [T⁻¹_{P,Δ}(F)]`.
    RelBgInv,
}

#[derive(Debug, Clone)]
pub enum IndicatorObject<'a> {
    Cone(&'a Cone),
    Polytope(&'a Polytope),
}

#[derive(Debug, Clone)]
pub struct IndicatorReport {
    pub kind: IndicatorKind,
    pub checked: usize,
    pub failures: Vec<Vec<Rat>>,
    pub pass: bool,
}

/// Evaluate both sides of the selected signed indicator identity at each
/// sample point by direct membership tests over the face lattice.
pub fn check_indicator_identity(
    kind: IndicatorKind,
    object: IndicatorObject<'_>,
    delta: Option<&BTreeSet<usize>>,
    points: &[Vec<Rat>],
) -> Result<IndicatorReport> {
    let mut failures = Vec::new();
    match (kind, &object) {
        (IndicatorKind::ConeBg, IndicatorObject::Cone(c)) => {
            if !c.is_pointed() || c.dim() != c.ambient_dim() {
                return input_err("cone identity needs a pointed full-dimensional cone");
            }
            if !exact::is_zero_vec(c.apex()) {
                return input_err("cone identity needs the apex at the origin");
            }
            for pt in points {
                let mut lhs: i64 = 0;
                for face in c.face_lattice() {
                    let inside = face.active_facets.iter().all(|&i| {
                        !c.facets()[i].slack_rat(pt, &Int::from(1)).is_positive()
                    });
                    if inside {
                        lhs += if face.dim % 2 == 0 { 1 } else { -1 };
                    }
                }
                let in_int_neg = c
                    .facets()
                    .iter()
                    .all(|f| f.slack_rat(pt, &Int::from(1)).is_positive());
                let mut rhs: i64 = if in_int_neg { 1 } else { 0 };
                if c.dim() % 2 != 0 {
                    rhs = -rhs;
                }
                if lhs != rhs {
                    failures.push(pt.clone());
                }
            }
        }
        (IndicatorKind::ConeBg, IndicatorObject::Polytope(_)) => {
            return input_err("cone identity needs a cone");
        }
        (_, IndicatorObject::Cone(_)) => {
            return input_err("polytope identity needs a polytope");
        }
        (_, IndicatorObject::Polytope(p)) => {
            if !p.is_full_dimensional() {
                return input_err("indicator identities need a full-dimensional polytope");
            }
            let d = p.dim();
            let delta_set = delta.cloned().unwrap_or_default();
            if matches!(kind, IndicatorKind::RelBg | IndicatorKind::RelBgInv) {
                for &i in &delta_set {
                    if i >= p.facets().len() {
                        return input_err(format!("facet index {i} out of range"));
                    }
                }
            }
            let complement: BTreeSet<usize> = (0..p.facets().len())
                .filter(|i| !delta_set.contains(i))
                .collect();
            let one = Int::from(1);
            for pt in points {
                let tight = |i: usize| p.facets()[i].slack_rat(pt, &one).is_zero();
                let in_tangent = |face: &crate::geometry::Face, inverted: bool| {
                    face.active_facets.iter().all(|&i| {
                        let s = p.facets()[i].slack_rat(pt, &one);
                        if inverted {
                            !s.is_negative()
                        } else {
                            !s.is_positive()
                        }
                    })
                };
                let removed_hit = |face: &crate::geometry::Face| {
                    face.active_facets
                        .iter()
                        .any(|&i| delta_set.contains(&i) && tight(i))
                };
                let signed_sum = |member: &dyn Fn(&crate::geometry::Face) -> bool| -> i64 {
                    p.face_lattice()
                        .iter()
                        .map(|f| {
                            if member(f) {
                                if f.dim % 2 == 0 {
                                    1
                                } else {
                                    -1
                                }
                            } else {
                                0
                            }
                        })
                        .sum()
                };
                let in_p = p.contains_rat(pt, &one);
                let (lhs, rhs): (i64, i64) = match kind {
                    IndicatorKind::Bg => {
                        let lhs = if in_p { 1 } else { 0 };
                        let rhs = signed_sum(&|f| in_tangent(f, false));
                        (lhs, rhs)
                    }
                    IndicatorKind::InvBg => {
                        let relint = p
                            .facets()
                            .iter()
                            .all(|f| f.slack_rat(pt, &one).is_negative());
                        let mut lhs = if relint { 1 } else { 0 };
                        if d % 2 != 0 {
                            lhs = -lhs;
                        }
                        let rhs = signed_sum(&|f| in_tangent(f, true));
                        (lhs, rhs)
                    }
                    IndicatorKind::RelBg => {
                        let in_region = in_p && !delta_set.iter().any(|&i| tight(i));
                        let lhs = if in_region { 1 } else { 0 };
                        let rhs = signed_sum(&|f| in_tangent(f, false) && !removed_hit(f));
                        (lhs, rhs)
                    }
                    IndicatorKind::RelBgInv => {
                        let in_region = in_p && !complement.iter().any(|&i| tight(i));
                        let mut lhs = if in_region { 1 } else { 0 };
                        if d % 2 != 0 {
                            lhs = -lhs;
                        }
                        let rhs = signed_sum(&|f| in_tangent(f, true) && !removed_hit(f));
                        (lhs, rhs)
                    }
                    IndicatorKind::ConeBg => unreachable!(),
                };
                if lhs != rhs {
                    failures.push(pt.clone());
                }
            }
        }
    }
    Ok(IndicatorReport {
        kind,
        checked: points.len(),
        failures: failures.iter().take(8).cloned().collect(),
        pass: failures.is_empty(),
    })
}

// ---- Relative vertex-cone decomposition ----------------------------------------

#[derive(Debug, Clone)]
pub struct BrionReport {
    /// Weak Cohen-Macaulay status of the removed subcomplex (the theorem's
    /// hypothesis; reported, not enforced).
    pub wcm: CmStatus,
    /// `F_{P∖|Δ|} = Σ_i F_{T_{P,Δ}(v_i)}` by randomized rational equality.
    pub statement1: EqualityVerdict,
    /// `(−1)^d F_{P∖|Δ'|} = Σ_i F_{T⁻¹_{P,Δ}(v_i)}`, the inverted-cone
    /// counterpart, by randomized rational equality.
    pub statement2: EqualityVerdict,
    /// Coefficient-exact consistency of lattice negation on the finite side:
    /// enumerating `−(P∖|Δ'|)` directly equals negating every exponent.
    pub negation_exact: bool,
    pub verified: bool,
}

/// Vertex-cone decomposition of a half-open polytope relative to a
/// facet-generated boundary subcomplex `Δ`, plus the inverted counterpart
/// relating the complementary subcomplex `Δ'`.
pub fn verify_relative_brion(
    p: &Polytope,
    delta_facets: &BTreeSet<usize>,
    trials: u32,
    seed: u64,
) -> Result<BrionReport> {
    if !p.is_full_dimensional() {
        return input_err("vertex-cone decomposition needs a full-dimensional polytope");
    }
    for &i in delta_facets {
        if i >= p.facets().len() {
            return input_err(format!("facet index {i} out of range"));
        }
    }
    let boundary = PolyhedralComplex::boundary_complex(p)?;
    let delta_vec: Vec<usize> = delta_facets.iter().copied().collect();
    let delta_complex = boundary.subcomplex_generated(&delta_vec, false)?;
    let wcm = cm_status(delta_complex.abstract_complex());

    let complement: BTreeSet<usize> = (0..p.facets().len())
        .filter(|i| !delta_facets.contains(i))
        .collect();
    let one = Int::from(1);

    // Statement 1: finite region versus relative forward vertex cones.
    let lhs1 = RationalGenFun::from_laurent(enumerate_region_polytope(p, delta_facets)?);
    let mut rhs1 = RationalGenFun::zero(p.ambient_dim());
    // Statement 2: signed complementary region versus inverted vertex cones.
    let lhs2 = RationalGenFun::from_laurent(enumerate_region_polytope(p, &complement)?)
        .scale_sign(p.dim() % 2 == 1);
    let mut rhs2 = RationalGenFun::zero(p.ambient_dim());

    for v in p.vertices() {
        let tight_delta: Vec<&Halfspace> = delta_facets
            .iter()
            .map(|&i| &p.facets()[i])
            .filter(|f| f.slack_int(v, &one).is_zero())
            .collect();

        for inverted in [false, true] {
            let dirs: Vec<Vec<Int>> = p
                .vertices()
                .iter()
                .filter(|u| *u != v)
                .map(|u| {
                    let d = exact::sub_vec(u, v);
                    if inverted {
                        exact::neg_vec(&d)
                    } else {
                        d
                    }
                })
                .collect();
            let cone = Cone::from_generators(v.clone(), &dirs)?;
            let induced: Vec<usize> = tight_delta
                .iter()
                .map(|f| {
                    let target = if inverted {
                        Halfspace {
                            normal: exact::neg_vec(&f.normal),
                            offset: -f.offset.clone(),
                        }
                    } else {
                        (*f).clone()
                    };
                    cone.facets()
                        .iter()
                        .position(|g| *g == target)
                        .ok_or_else(|| {
                            Error::Internal("polytope facet missing from vertex cone".into())
                        })
                })
                .collect::<Result<_>>()?;
            let induced_fan = fan_subcomplex_generated(&cone, &induced, false)?;
            let summand = genfun_region(&cone, &induced_fan)?;
            if inverted {
                rhs2 = rhs2.add(&summand);
            } else {
                rhs1 = rhs1.add(&summand);
            }
        }
    }

    let statement1 = rational_equal(&lhs1, &rhs1, trials, seed)?;
    let statement2 = rational_equal(&lhs2, &rhs2, trials, seed.wrapping_add(7))?;

    // Exact finite check of lattice negation on the complementary region.
    let direct = enumerate_region_polytope(p, &complement)?;
    let neg = p.negated();
    let mapped: BTreeSet<usize> = complement
        .iter()
        .map(|&i| {
            // facet <a, x> <= b of P becomes <-a, x> <= b of -P
            let f = &p.facets()[i];
            let target = Halfspace {
                normal: exact::neg_vec(&f.normal),
                offset: f.offset.clone(),
            };
            neg.facets()
                .iter()
                .position(|g| *g == target)
                .expect("negated facet exists")
        })
        .collect();
    let negated_direct = enumerate_region_polytope(&neg, &mapped)?;
    let negation_exact = direct.negate_exponents() == negated_direct;

    let verified = statement1.is_equal() && statement2.is_equal() && negation_exact;
    Ok(BrionReport {
        wcm,
        statement1,
        statement2,
        negation_exact,
        verified,
    })
}
