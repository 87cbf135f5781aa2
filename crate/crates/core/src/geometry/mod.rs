//! Polytopes and cones over the integer lattice: hulls, face lattices,
//! tangent cones, homogenization and visibility.
//!
//! All objects are canonical after construction: vertices are exactly the
//! extreme points, facet normals are primitive and irredundant, and faces are
//! identified by their vertex (or extreme ray) sets. Lower-dimensional
//! polytopes carry the affine-hull equations of their span and an intrinsic
//! lattice chart, so faces of complexes are counted correctly.

mod cone;
mod polytope;

pub use cone::{Cone, ConeFace};
pub use polytope::{bright_side, tangent_cone, Face, Polytope, TangentKind};

use crate::exact::{dot, dot_rat, Int, Rat};

/// Closed halfspace `<normal, x> <= offset` with primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl Halfspace {
    /// Sign of `<normal, p> - n*offset` at a rational point, for dilation `n`.
    pub fn slack_rat(&self, p: &[Rat], dilation: &Int) -> Rat {
        dot_rat(&self.normal, p) - Rat::from_integer(&self.offset * dilation)
    }

    pub fn slack_int(&self, p: &[Int], dilation: &Int) -> Int {
        dot(&self.normal, p) - &self.offset * dilation
    }
}

/// Hyperplane `<normal, x> = offset` with primitive, sign-canonical normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl Hyperplane {
    pub fn holds_rat(&self, p: &[Rat], dilation: &Int) -> bool {
        dot_rat(&self.normal, p) == Rat::from_integer(&self.offset * dilation)
    }

    pub fn holds_int(&self, p: &[Int], dilation: &Int) -> bool {
        dot(&self.normal, p) == &self.offset * dilation
    }
}
