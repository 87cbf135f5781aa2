//! Exact rational and integer linear algebra.
//!
//! Every coordinate and coefficient in this crate is an arbitrary-precision
//! integer ([`Int`]) or rational ([`Rat`]); there is no floating point
//! anywhere. This module provides the shared machinery: integer matrices with
//! Smith normal form (the engine behind integral homology), saturated kernel
//! and span lattices (affine hulls, intrinsic coordinates), exact Gaussian
//! elimination over the rationals, and Lagrange interpolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input_err, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

// ---- Small constructors -------------------------------------------------

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

// ---- Vector helpers ------------------------------------------------------

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

pub fn sub_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn neg_vec(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

pub fn scale_vec(a: &[Int], c: &Int) -> Vec<Int> {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(a: &[Int]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Divide out the gcd of the entries, leaving the zero vector untouched.
/// The sign is preserved; use [`sign_canonical`] when an orientation-free
/// representative is needed.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Flip the sign so the first nonzero entry is positive.
pub fn sign_canonical(v: &[Int]) -> Vec<Int> {
    for x in v {
        if x.is_positive() {
            return v.to_vec();
        }
        if x.is_negative() {
            return neg_vec(v);
        }
    }
    v.to_vec()
}

/// Clear denominators: returns the unique primitive integer vector that is a
/// positive multiple of the rational input (zero maps to zero).
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&ints)
}

// ---- Integer matrices and Smith normal form ------------------------------

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let c = rows.first().map_or(0, |row| row.len());
        IntMatrix::from_rows_with_cols(rows, c)
    }

    /// Like [`IntMatrix::from_rows`] but keeps the column count meaningful
    /// when the row list is empty.
    pub fn from_rows_with_cols(rows: Vec<Vec<Int>>, cols: usize) -> Self {
        let r = rows.len();
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        IntMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        for j in 0..self.cols {
            let v = self.get(src, j) * c;
            let cur = self.get(dst, j).clone();
            self.set(dst, j, cur + v);
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        for i in 0..self.rows {
            let v = self.get(i, src) * c;
            let cur = self.get(i, dst).clone();
            self.set(i, dst, cur + v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }
}

/// Diagonal of the Smith normal form: `d_1 | d_2 | ...`, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<Int>,
    pub rank: usize,
}

/// Full decomposition `diag = U * M * V` with `U`, `V` unimodular.
/// `row_inv` is U^{-1}, kept so that saturated span lattices can be read off.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub diagonal: Vec<Int>,
    pub rank: usize,
    pub row: IntMatrix,
    pub row_inv: IntMatrix,
    pub col: IntMatrix,
}

/// Smith normal form by elementary row/column reduction with pivot selection
/// by minimal absolute value. Exact integers throughout; entries stay small
/// at the scales this crate targets.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let d = snf_with_transforms_impl(m, false);
    SnfResult {
        diagonal: d.diagonal,
        rank: d.rank,
    }
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SnfDecomposition {
    snf_with_transforms_impl(m, true)
}

fn snf_with_transforms_impl(m: &IntMatrix, track: bool) -> SnfDecomposition {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut u = IntMatrix::identity(if track { rows } else { 0 });
    let mut uinv = IntMatrix::identity(if track { rows } else { 0 });
    let mut v = IntMatrix::identity(if track { cols } else { 0 });

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Pivot: nonzero entry of minimal absolute value in the submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a.get(i, j).is_zero() {
                    match pivot {
                        Some((pi, pj)) if a.get(pi, pj).abs() <= a.get(i, j).abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if track {
            u.swap_rows(t, pi);
            uinv.swap_cols(t, pi);
            v.swap_cols(t, pj);
        }

        // Clear row and column t; restart whenever a reduction leaves a
        // remainder smaller than the pivot.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = div_nearest(a.get(i, t), a.get(t, t));
                if !q.is_zero() {
                    let c = -q;
                    a.add_row_multiple(i, t, &c);
                    if track {
                        u.add_row_multiple(i, t, &c);
                        let cinv = -&c;
                        uinv.add_col_multiple(t, i, &cinv);
                    }
                }
                if !a.get(i, t).is_zero() {
                    // Remainder is strictly smaller in absolute value; make
                    // it the new pivot and start over.
                    a.swap_rows(t, i);
                    if track {
                        u.swap_rows(t, i);
                        uinv.swap_cols(t, i);
                    }
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = div_nearest(a.get(t, j), a.get(t, t));
                if !q.is_zero() {
                    let c = -q;
                    a.add_col_multiple(j, t, &c);
                    if track {
                        v.add_col_multiple(j, t, &c);
                    }
                }
                if !a.get(t, j).is_zero() {
                    a.swap_cols(t, j);
                    if track {
                        v.swap_cols(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }

        // Divisibility fix-up: the pivot must divide every remaining entry.
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(a.get(i, j) % a.get(t, t)).is_zero() {
                    a.add_row_multiple(t, i, &Int::one());
                    if track {
                        u.add_row_multiple(t, i, &Int::one());
                        let neg_one = -Int::one();
                        uinv.add_col_multiple(i, t, &neg_one);
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                if track {
                    u.negate_row(t);
                    // A row negation is its own inverse (column negation).
                    for i in 0..uinv.rows {
                        let val = -uinv.get(i, t).clone();
                        uinv.set(i, t, val);
                    }
                }
            }
            t += 1;
        }
    }

    let diagonal: Vec<Int> = (0..n).map(|i| a.get(i, i).clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    SnfDecomposition {
        diagonal,
        rank,
        row: u,
        row_inv: uinv,
        col: v,
    }
}

/// Round-to-nearest integer division, which keeps remainders at most half the
/// divisor and speeds up the gcd loops in the reduction.
fn div_nearest(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    let two_r: Int = &r + &r;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis of the saturated kernel lattice `{ x in Z^cols : M x = 0 }`.
pub fn kernel_lattice_basis(m: &IntMatrix) -> Vec<Vec<Int>> {
    if m.cols() == 0 {
        return Vec::new();
    }
    if m.rows() == 0 {
        return (0..m.cols())
            .map(|j| {
                let mut e = vec![Int::zero(); m.cols()];
                e[j] = Int::one();
                e
            })
            .collect();
    }
    let d = smith_normal_form_with_transforms(m);
    (d.rank..m.cols()).map(|j| d.col.column(j)).collect()
}

/// Basis of the saturation `span_R(columns of M) ∩ Z^rows`.
pub fn span_lattice_basis(m: &IntMatrix) -> Vec<Vec<Int>> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let d = smith_normal_form_with_transforms(m);
    (0..d.rank).map(|j| d.row_inv.column(j)).collect()
}

// ---- Rational linear algebra ---------------------------------------------

/// One exact solution of `A x = b` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len());
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistency: a zero row with nonzero rhs.
    for row in m.iter().skip(r) {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }
    for i in 0..r {
        if m[i][..cols].iter().all(|x| x.is_zero()) && !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Rank of a set of rational row vectors.
pub fn rational_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..nrows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for j in c..ncols {
                    let v = &m[rank][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Rank of a set of integer row vectors.
pub fn integer_rank(rows: &[Vec<Int>]) -> usize {
    rational_rank(&rows.iter().map(|r| rat_vec(r)).collect::<Vec<_>>())
}

// ---- Univariate polynomials over the rationals ----------------------------

/// Evaluate a polynomial given by ascending coefficients.
pub fn eval_poly(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

/// The unique polynomial of degree < points.len() through the given points,
/// in Lagrange form over exact rationals. Ascending coefficients.
pub fn interpolate_polynomial(points: &[(Rat, Rat)]) -> Result<Vec<Rat>> {
    if points.is_empty() {
        return input_err("interpolation needs at least one point");
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in points.iter().skip(i + 1) {
            if xi == xj {
                return input_err(format!("duplicate abscissa {xi}"));
            }
        }
    }
    let mut acc = vec![Rat::zero(); points.len()];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![yi.clone()];
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            // (x - xj) / (xi - xj)
            basis = poly_mul(&basis, &[-xj / &denom, denom.recip()]);
        }
        for (k, c) in basis.into_iter().enumerate() {
            acc[k] += c;
        }
    }
    Ok(poly_trim(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn snf_of(rows: &[&[i64]]) -> SnfResult {
        smith_normal_form(&IntMatrix::from_i64_rows(rows))
    }

    #[test]
    fn snf_diag_2_3() {
        let r = snf_of(&[&[2, 0], &[0, 3]]);
        assert_eq!(r.diagonal, int_vec(&[1, 6]));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn snf_identity() {
        let r = snf_of(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(r.diagonal, int_vec(&[1, 1, 1]));
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn snf_zero() {
        let r = snf_of(&[&[0, 0], &[0, 0]]);
        assert_eq!(r.diagonal, int_vec(&[0, 0]));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn snf_transforms_reconstruct_input() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let d = smith_normal_form_with_transforms(&m);
        // U * M * V must equal diag, and U * U^{-1} = I.
        let prod = mat_mul(&mat_mul(&d.row, &m), &d.col);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { d.diagonal[i].clone() } else { Int::zero() };
                assert_eq!(*prod.get(i, j), expect);
            }
        }
        let id = mat_mul(&d.row, &d.row_inv);
        assert_eq!(id, IntMatrix::identity(3));
    }

    fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        assert_eq!(a.cols(), b.rows());
        let mut out = IntMatrix::zero(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = Int::zero();
                for k in 0..a.cols() {
                    s += a.get(i, k) * b.get(k, j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// d_1 = gcd of entries and the product of nonzero d_i equals the gcd of
    /// the maximal-rank minors, checked against brute-force minors.
    #[test]
    fn snf_invariant_factors_match_minor_gcds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rows: Vec<Vec<Int>> = (0..4)
                .map(|_| (0..4).map(|_| Int::from(rng.gen_range(-5i64..=5))).collect())
                .collect();
            let m = IntMatrix::from_rows(rows.clone());
            let snf = smith_normal_form(&m);
            let r = snf.rank;
            if r == 0 {
                continue;
            }
            let entry_gcd = rows
                .iter()
                .flatten()
                .fold(Int::zero(), |acc, x| acc.gcd(x));
            assert_eq!(snf.diagonal[0], entry_gcd);
            let minor_gcd = gcd_of_minors(&rows, r);
            let prod: Int = snf.diagonal[..r].iter().product();
            assert_eq!(prod, minor_gcd);
            for w in snf.diagonal[..r].windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
            }
        }
    }

    fn gcd_of_minors(rows: &[Vec<Int>], r: usize) -> Int {
        use itertools::Itertools;
        let n = rows.len();
        let m = rows[0].len();
        let mut g = Int::zero();
        for rsel in (0..n).combinations(r) {
            for csel in (0..m).combinations(r) {
                let sub: Vec<Vec<Rat>> = rsel
                    .iter()
                    .map(|&i| csel.iter().map(|&j| Rat::from_integer(rows[i][j].clone())).collect())
                    .collect();
                let det = determinant(&sub);
                assert!(det.is_integer());
                g = g.gcd(&det.to_integer());
            }
        }
        g
    }

    fn determinant(m: &[Vec<Rat>]) -> Rat {
        let n = m.len();
        let mut a = m.to_vec();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                a.swap(c, p);
                det = -det;
            }
            det *= &a[c][c];
            let inv = a[c][c].recip();
            for j in c..n {
                a[c][j] *= &inv;
            }
            for i in c + 1..n {
                if !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..n {
                        let v = &a[c][j] * &f;
                        a[i][j] -= v;
                    }
                }
            }
        }
        det
    }

    #[test]
    fn kernel_lattice_is_saturated_kernel() {
        // kernel of [2 4] over Z is generated by (2, -1), not (4, -2)
        let m = IntMatrix::from_i64_rows(&[&[2, 4]]);
        let k = kernel_lattice_basis(&m);
        assert_eq!(k.len(), 1);
        let v = sign_canonical(&k[0]);
        assert_eq!(v, int_vec(&[2, -1]));
    }

    #[test]
    fn span_lattice_saturates() {
        // Columns (2,0) and (0,2) span the plane; the saturated lattice is Z^2.
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let b = span_lattice_basis(&m);
        assert_eq!(b.len(), 2);
        let det = &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0];
        assert_eq!(det.abs(), Int::one());
    }

    #[test]
    fn interpolate_square_shift() {
        // (n+1)^2 through (1,4),(2,9),(3,16)
        let pts = vec![
            (rat_int(1), rat_int(4)),
            (rat_int(2), rat_int(9)),
            (rat_int(3), rat_int(16)),
        ];
        let p = interpolate_polynomial(&pts).unwrap();
        assert_eq!(p, vec![rat_int(1), rat_int(2), rat_int(1)]);
    }

    #[test]
    fn interpolate_constant() {
        let p = interpolate_polynomial(&[(rat_int(0), rat(7, 2))]).unwrap();
        assert_eq!(p, vec![rat(7, 2)]);
    }

    #[test]
    fn interpolate_quartic() {
        // n^4 - 2n^2 + 1 sampled at n = 1..5
        let pts: Vec<(Rat, Rat)> = (1..=5)
            .map(|n: i64| (rat_int(n), rat_int(n * n * n * n - 2 * n * n + 1)))
            .collect();
        let p = interpolate_polynomial(&pts).unwrap();
        assert_eq!(
            p,
            vec![rat_int(1), rat_int(0), rat_int(-2), rat_int(0), rat_int(1)]
        );
    }

    #[test]
    fn interpolate_rejects_duplicate_abscissae() {
        let r = interpolate_polynomial(&[(rat_int(1), rat_int(1)), (rat_int(1), rat_int(2))]);
        assert!(r.is_err());
    }

    #[test]
    fn interpolate_reproduces_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(1..6);
            let mut xs: Vec<i64> = Vec::new();
            while xs.len() < n {
                let x = rng.gen_range(-10i64..10);
                if !xs.contains(&x) {
                    xs.push(x);
                }
            }
            let pts: Vec<(Rat, Rat)> = xs
                .iter()
                .map(|&x| (rat_int(x), rat(rng.gen_range(-50i64..50), rng.gen_range(1i64..9))))
                .collect();
            let p = interpolate_polynomial(&pts).unwrap();
            for (x, y) in &pts {
                assert_eq!(&eval_poly(&p, x), y);
            }
        }
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let a = vec![vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]];
        let b = vec![rat(3, 2), rat_int(-4)];
        assert_eq!(solve_linear(&a, &b), Some(b.clone()));

        let a = vec![vec![rat_int(0), rat_int(0)]];
        let b = vec![rat_int(1)];
        assert_eq!(solve_linear(&a, &b), None);
    }

    #[test]
    fn solve_two_by_two() {
        // x + y = 2, x - y = 0
        let a = vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(-1)],
        ];
        let b = vec![rat_int(2), rat_int(0)];
        assert_eq!(solve_linear(&a, &b), Some(vec![rat_int(1), rat_int(1)]));
    }
}
