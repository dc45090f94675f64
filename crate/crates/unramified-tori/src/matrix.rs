//! Dense matrices over the integers with exact arbitrary-precision entries,
//! Smith normal form and integer kernels.
//!
//! Everything downstream (cohomology, point groups, character actions) is a
//! question about integer matrices, so this module is deliberately small and
//! boring: row-major storage, no sparsity, no floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A rows x cols matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Convenience constructor from machine-integer rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    c
                )));
            }
            entries.extend(row.iter().map(|&e| BigInt::from(e)));
        }
        Self::new(r, c, entries)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| -self.get(r, c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c) + other.get(r, c)
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c) - other.get(r, c)
        }))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * k)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect())
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        Ok(m.get(n - 1, n - 1) * sign)
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Ok(d) if d.abs().is_one())
    }

    /// Exact inverse of a matrix with determinant +-1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let det = self.determinant()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular);
        }
        let n = self.rows;
        let mut inv = Self::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                let minor = self.minor(c, r).determinant()?;
                let sgn = if (r + c) % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                inv.set(r, c, sgn * minor * &det);
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != skip_row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != skip_col).collect();
        Self::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    /// Least k >= 1 with self^k = I, or an error past the bound.
    pub fn multiplicative_order(&self, bound: usize) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Ok(k);
            }
            p = p.mul(self)?;
        }
        Err(Error::NoFiniteOrder { bound })
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                row.push(i64::try_from(self.get(r, c)).ok()?);
            }
            out.push(row);
        }
        Some(out)
    }

    fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, k * self.cols + c);
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + j, r * self.cols + l);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c);
            self.set(i, c, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    /// row_i += c * row_k
    fn row_addmul(&mut self, i: usize, k: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(i, j) + c * self.get(k, j);
            self.set(i, j, v);
        }
    }

    /// col_j += c * col_l
    fn col_addmul(&mut self, j: usize, l: usize, c: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, j) + c * self.get(r, l);
            self.set(r, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// U * A * V = S with U, V unimodular and S diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    u: IntMatrix,
    u_inv: IntMatrix,
    s: IntMatrix,
    v: IntMatrix,
}

impl SmithDecomposition {
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    /// Inverse of U, maintained exactly alongside the elimination.
    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Nearest-integer quotient; the remainder a - q*b has |rem| <= |b|/2.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    // div_mod_floor gives 0 <= r < |b| for b > 0; pivots are kept positive.
    if &(&r * 2u8) > &b.abs() {
        q += 1;
    }
    q
}

/// Smith normal form with minimal-absolute-value pivoting.
///
/// Pivot ties break to the lowest row, then the lowest column, so the output
/// is deterministic for a given input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // Elementary row ops keep u_inv exact: applying E on the left of U
    // applies E^{-1} on the right of U^{-1}.
    macro_rules! row_swap {
        ($i:expr, $k:expr) => {{
            s.swap_rows($i, $k);
            u.swap_rows($i, $k);
            u_inv.swap_cols($i, $k);
        }};
    }
    macro_rules! row_negate {
        ($i:expr) => {{
            s.negate_row($i);
            u.negate_row($i);
            u_inv.negate_col($i);
        }};
    }
    macro_rules! row_addmul {
        ($i:expr, $k:expr, $c:expr) => {{
            let c: BigInt = $c;
            s.row_addmul($i, $k, &c);
            u.row_addmul($i, $k, &c);
            u_inv.col_addmul($k, $i, &(-c));
        }};
    }
    macro_rules! col_swap {
        ($j:expr, $l:expr) => {{
            s.swap_cols($j, $l);
            v.swap_cols($j, $l);
        }};
    }
    macro_rules! col_addmul {
        ($j:expr, $l:expr, $c:expr) => {{
            let c: BigInt = $c;
            s.col_addmul($j, $l, &c);
            v.col_addmul($j, $l, &c);
        }};
    }

    let find_pivot = |s: &IntMatrix, k: usize| -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let e = s.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                match &best {
                    Some((b, _, _)) if *b <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    };

    for k in 0..rows.min(cols) {
        'pivot: loop {
            let Some((pi, pj)) = find_pivot(&s, k) else {
                // Remaining block is zero; diagonal ends here.
                return finish(s, u, u_inv, v);
            };
            row_swap!(k, pi);
            col_swap!(k, pj);
            if s.get(k, k).is_negative() {
                row_negate!(k);
            }

            // Clear below the pivot with nearest-quotient reductions.
            let mut clean = true;
            for i in k + 1..rows {
                if !s.get(i, k).is_zero() {
                    let q = nearest_quotient(s.get(i, k), s.get(k, k));
                    row_addmul!(i, k, -q);
                    if !s.get(i, k).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Clear to the right of the pivot.
            for j in k + 1..cols {
                if !s.get(k, j).is_zero() {
                    let q = nearest_quotient(s.get(k, j), s.get(k, k));
                    col_addmul!(j, k, -q);
                    if !s.get(k, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Pivot must divide the rest of the block for the chain to hold.
            let d = s.get(k, k).clone();
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(s.get(i, j) % &d).is_zero() {
                        row_addmul!(k, i, BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }
    finish(s, u, u_inv, v)
}

fn finish(s: IntMatrix, u: IntMatrix, u_inv: IntMatrix, v: IntMatrix) -> SmithDecomposition {
    SmithDecomposition { u, u_inv, s, v }
}

/// A basis for the integer kernel of `a`, each vector normalized so its
/// first nonzero entry is positive. Empty exactly when the kernel is zero.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let mut basis = Vec::new();
    for j in rank..a.cols() {
        let mut col = snf.v().column(j);
        if let Some(first) = col.iter().find(|e| !e.is_zero()) {
            if first.is_negative() {
                for e in &mut col {
                    *e = -&*e;
                }
            }
        }
        basis.push(col);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_snf_contract(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        let uav = snf.u().mul(a).unwrap().mul(snf.v()).unwrap();
        assert_eq!(&uav, snf.s(), "U*A*V != S for {}", a);
        assert!(snf.u().determinant().unwrap().abs().is_one());
        assert!(snf.v().determinant().unwrap().abs().is_one());
        assert!(snf.u().mul(snf.u_inv()).unwrap().is_identity());
        let d = snf.diagonal();
        for i in 0..d.len() {
            assert!(!d[i].is_negative());
            if i + 1 < d.len() && !d[i + 1].is_zero() {
                assert!(!d[i].is_zero(), "zero before nonzero in chain");
                assert!((&d[i + 1] % &d[i]).is_zero(), "chain broken in {:?}", d);
            }
        }
        // Off-diagonal entries of S vanish.
        for r in 0..snf.s().rows() {
            for c in 0..snf.s().cols() {
                if r != c {
                    assert!(snf.s().get(r, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s(), &IntMatrix::identity(3));
        assert_snf_contract(&a);
    }

    #[test]
    fn snf_two_by_two() {
        // Oracle: d1 = gcd of all entries = 2, d1*d2 = |det| = |2*8 - 4*6| = 8.
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let snf = smith_normal_form(&a);
        assert_eq!(
            snf.diagonal(),
            vec![BigInt::from(2), BigInt::from(4)],
            "expected diagonal (2, 4)"
        );
        assert_snf_contract(&a);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zero(2, 2);
        let snf = smith_normal_form(&a);
        assert!(snf.s().is_zero_matrix());
        assert_snf_contract(&a);
    }

    #[test]
    fn snf_idempotent_on_diagonal_output() {
        let a = IntMatrix::from_rows(&[vec![6, 4, 2], vec![2, 8, 10], vec![4, 4, 4]]).unwrap();
        let first = smith_normal_form(&a);
        let second = smith_normal_form(first.s());
        assert_eq!(second.s(), first.s());
    }

    #[test]
    fn snf_rectangular() {
        let a = IntMatrix::from_rows(&[vec![2, 0, 4], vec![0, 6, 8]]).unwrap();
        assert_snf_contract(&a);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_zero_map_rank_one() {
        // Norm map of the rank-1 norm-one torus: 1 + (-1) = 0.
        let a = IntMatrix::from_rows(&[vec![0]]).unwrap();
        assert_eq!(kernel_basis(&a), vec![vec![BigInt::one()]]);
    }

    #[test]
    fn kernel_of_row_vector() {
        let a = IntMatrix::from_rows(&[vec![1, 1]]).unwrap();
        assert_eq!(
            kernel_basis(&a),
            vec![vec![BigInt::one(), BigInt::from(-1)]]
        );
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 6], vec![1, 2, 3]]).unwrap();
        for v in kernel_basis(&a) {
            assert!(a.apply(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = IntMatrix::from_rows(&[vec![3, 1, -2], vec![0, 4, 5], vec![-1, 2, 2]]).unwrap();
        // 3*(8-10) - 1*(0+5) + (-2)*(0+4) = -6 - 5 - 8 = -19
        assert_eq!(a.determinant().unwrap(), BigInt::from(-19));
        assert_eq!(
            IntMatrix::zero(0, 0).determinant().unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn unimodular_inverse() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = a.inverse_unimodular().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn multiplicative_order_of_cycle() {
        let c = IntMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(c.multiplicative_order(10).unwrap(), 3);
        let neg = IntMatrix::from_rows(&[vec![-1]]).unwrap();
        assert_eq!(neg.multiplicative_order(10).unwrap(), 2);
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(
            shear.multiplicative_order(10),
            Err(Error::NoFiniteOrder { bound: 10 })
        );
    }
}
