//! Dense linear algebra over a prime field `GF(p)`.
//!
//! Entries are residues in `[0, p)` stored row-major. Elimination uses the first
//! nonzero entry as pivot; there are no stability concerns over a finite field.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrices over different fields (GF({0}) vs GF({1}))")]
    FieldMismatch(u32, u32),
    #[error("columns of the subspace basis are linearly dependent")]
    DependentColumns,
    #[error("matrix is singular")]
    Singular,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The field `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p >= 1 << 31 {
            return Err(LinalgError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn gf2() -> Self {
        Self { p: 2 }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn element(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "zero has no inverse");
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (a as u64 % self.p as u64, self.p as u64 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<GF({})>{}x{} [", self.field.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing each entry mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.element(x)).collect();
        Ok(Self { field, rows: rows.len(), cols, data })
    }

    /// Column matrix from a vector of residues.
    pub fn column(field: PrimeField, v: &[u32]) -> Self {
        Self { field, rows: v.len(), cols: 1, data: v.iter().map(|&x| x % field.p).collect() }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field.p, other.field.p));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.p as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, c) as u64) % p;
                }
            }
            for (c, &a) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = a as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, LinalgError> {
        Ok(self.mul(&Matrix::column(self.field, v))?.data)
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x = self.field.mul(*x, s));
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Shape("sum of differently shaped matrices".into()));
        }
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = self.field.add(*x, y);
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::Shape("hstack with different row counts".into()));
        }
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::Shape("vstack with different column counts".into()));
        }
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend_from_slice(&other.data);
        Ok(out)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + k] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for (k, &r) in rows.iter().enumerate() {
            out.data[k * self.cols..(k + 1) * self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = f.inv(self.get(row, c)) as u64;
            for k in c..cols {
                let x = self.data[row * cols + k] as u64;
                self.data[row * cols + k] = (x * inv % p) as u32;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.data[r * cols + c] as u64;
                if factor == 0 {
                    continue;
                }
                let factor = p - factor;
                for k in c..cols {
                    let pivot_entry = self.data[row * cols + k] as u64;
                    if pivot_entry != 0 {
                        let x = self.data[r * cols + k] as u64;
                        self.data[r * cols + k] = ((x + factor * pivot_entry) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rref().1.len()
}

/// Columns span `ker m`; one column per free variable.
pub fn nullspace_basis(m: &Matrix) -> Matrix {
    let f = m.field;
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(f, m.cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, 1);
        for (pr, &pc) in pivots.iter().enumerate() {
            out.set(pc, k, f.neg(r.get(pr, fc)));
        }
    }
    out
}

/// A solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::Shape(format!("rhs of length {} for {} rows", b.len(), m.rows)));
    }
    Ok(solve_many(m, &Matrix::column(m.field, b))?.map(|x| x.data))
}

/// Solves `m X = b` column by column; `None` if any column is inconsistent.
pub fn solve_many(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
    m.check_field(b)?;
    if b.rows != m.rows {
        return Err(LinalgError::Shape("right-hand side has wrong row count".into()));
    }
    let aug = m.hstack(b)?;
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&c| c >= m.cols) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(m.field, m.cols, b.cols);
    for (pr, &pc) in pivots.iter().enumerate() {
        for k in 0..b.cols {
            x.set(pc, k, r.get(pr, m.cols + k));
        }
    }
    Ok(Some(x))
}

/// Indices of a maximal independent subset of columns (leftmost first).
pub fn independent_columns(m: &Matrix) -> Vec<usize> {
    m.rref().1
}

/// A basis of the column space, taken from the columns of `m` itself.
pub fn column_basis(m: &Matrix) -> Matrix {
    m.select_columns(&independent_columns(m))
}

pub fn inverse(m: &Matrix) -> Result<Matrix, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::Shape("inverse of a non-square matrix".into()));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(m.clone());
    }
    let aug = m.hstack(&Matrix::identity(m.field, n))?;
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Ok(r.select_columns(&cols))
}

/// `L` with `L z = I` for a matrix `z` of full column rank.
pub fn left_inverse(z: &Matrix) -> Result<Matrix, LinalgError> {
    let k = z.cols;
    let pivots = independent_columns(&z.transpose());
    // rows of z at `pivots` form an invertible k x k block
    if pivots.len() < k {
        return Err(LinalgError::DependentColumns);
    }
    let block_inv = inverse(&z.select_rows(&pivots))?;
    let mut l = Matrix::zeros(z.field, k, z.rows);
    for (j, &r) in pivots.iter().enumerate() {
        for i in 0..k {
            l.set(i, r, block_inv.get(i, j));
        }
    }
    Ok(l)
}

/// Data for `k^n / span(sub)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// `n x (n - k)`: standard basis vectors completing `sub` to a basis.
    pub complement: Matrix,
    /// `(n - k) x n`: coordinates of a vector's class in the basis `complement`.
    pub projection: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.complement.cols
    }
}

pub fn quotient_map(sub: &Matrix, amb_dim: usize) -> Result<Quotient, LinalgError> {
    if sub.rows != amb_dim {
        return Err(LinalgError::Shape(format!(
            "subspace basis has {} rows, ambient dimension is {amb_dim}",
            sub.rows
        )));
    }
    let f = sub.field;
    let k = sub.cols;
    let aug = sub.hstack(&Matrix::identity(f, amb_dim))?;
    let (_, pivots) = aug.rref();
    if pivots.iter().take_while(|&&c| c < k).count() < k {
        return Err(LinalgError::DependentColumns);
    }
    let extra: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
    let complement = Matrix::identity(f, amb_dim).select_columns(&extra);
    let t = sub.hstack(&complement)?;
    let t_inv = inverse(&t)?;
    let rows: Vec<usize> = (k..amb_dim).collect();
    Ok(Quotient { complement, projection: t_inv.select_rows(&rows) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn random_matrix(p: u64, rows: usize, cols: usize, seed: &[u32]) -> Matrix {
        let f = gf(p);
        let mut m = Matrix::zeros(f, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, seed[(r * cols + c) % seed.len()]);
            }
        }
        m
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![2u64, 3, 5]), 0usize..=30, 0usize..=30)
            .prop_flat_map(|(p, r, c)| {
                (Just(p), Just(r), Just(c), prop::collection::vec(0u32..p as u32, (r * c).max(1)))
            })
            .prop_map(|(p, r, c, data)| random_matrix(p, r, c, &data))
    }

    #[test]
    fn field_rejects_composites() {
        assert_eq!(PrimeField::new(4), Err(LinalgError::NotPrime(4)));
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
        let f = gf(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(gf(2), 3)), 3);
        assert_eq!(rank(&Matrix::zeros(gf(2), 2, 5)), 0);
        assert_eq!(rank(&Matrix::from_rows(gf(2), &[vec![1, 1], vec![1, 1]]).unwrap()), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace_basis(&Matrix::identity(gf(3), 4)).cols(), 0);
        assert_eq!(nullspace_basis(&Matrix::zeros(gf(3), 4, 4)).cols(), 4);
        let k = nullspace_basis(&Matrix::from_rows(gf(2), &[vec![1, 1]]).unwrap());
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col(0), vec![1, 1]);
    }

    #[test]
    fn solve_examples() {
        let f = gf(5);
        let b = vec![3, 1, 4];
        assert_eq!(solve(&Matrix::identity(f, 3), &b).unwrap(), Some(b));
        assert_eq!(solve(&Matrix::zeros(f, 2, 2), &[1, 0]).unwrap(), None);
        let m = Matrix::from_rows(gf(3), &[vec![2]]).unwrap();
        assert_eq!(solve(&m, &[1]).unwrap(), Some(vec![2]));
    }

    #[test]
    fn quotient_examples() {
        let f = gf(2);
        let q = quotient_map(&Matrix::zeros(f, 3, 0), 3).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.projection, Matrix::identity(f, 3));
        let q = quotient_map(&Matrix::identity(f, 3), 3).unwrap();
        assert_eq!(q.dim(), 0);
        let sub = Matrix::from_rows(f, &[vec![1], vec![1]]).unwrap();
        let q = quotient_map(&sub, 2).unwrap();
        assert_eq!(q.dim(), 1);
        // (1,1) is zero in the quotient, (1,0) and (0,1) are the nonzero class
        assert_eq!(q.projection.mul_vec(&[1, 1]).unwrap(), vec![0]);
        assert_eq!(q.projection.mul_vec(&[1, 0]).unwrap(), vec![1]);
        assert_eq!(q.projection.mul_vec(&[0, 1]).unwrap(), vec![1]);
        let dep = Matrix::from_rows(f, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(quotient_map(&dep, 2), Err(LinalgError::DependentColumns));
    }

    #[test]
    fn left_inverse_example() {
        let f = gf(3);
        let z = Matrix::from_rows(f, &[vec![1, 0], vec![2, 1], vec![0, 2]]).unwrap();
        let l = left_inverse(&z).unwrap();
        assert_eq!(l.mul(&z).unwrap(), Matrix::identity(f, 2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_of_transpose(m in matrix_strategy()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn nullspace_is_kernel(m in matrix_strategy()) {
            let k = nullspace_basis(&m);
            prop_assert_eq!(k.cols(), m.cols() - rank(&m));
            prop_assert_eq!(rank(&k), k.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
        }

        #[test]
        fn rank_of_product(a in matrix_strategy(), data in prop::collection::vec(0u32..5, 1..50), c in 0usize..=30) {
            let b = random_matrix(a.field().modulus() as u64, a.cols(), c, &data);
            let ab = a.mul(&b).unwrap();
            prop_assert!(rank(&ab) <= rank(&a).min(rank(&b)));
        }

        #[test]
        fn solve_by_substitution(m in matrix_strategy(), data in prop::collection::vec(0u32..5, 1..31)) {
            let f = m.field();
            // consistent rhs: image of some x
            let x: Vec<u32> = (0..m.cols()).map(|i| data[i % data.len()] % f.modulus()).collect();
            let b = m.mul_vec(&x).unwrap();
            let sol = solve(&m, &b).unwrap().expect("consistent system");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
            // an arbitrary rhs either solves or lies outside the image
            let b2: Vec<u32> = (0..m.rows()).map(|i| data[(i + 1) % data.len()] % f.modulus()).collect();
            match solve(&m, &b2).unwrap() {
                Some(s) => prop_assert_eq!(m.mul_vec(&s).unwrap(), b2),
                None => prop_assert!(rank(&m.hstack(&Matrix::column(f, &b2)).unwrap()) > rank(&m)),
            }
        }

        #[test]
        fn quotient_kills_subspace(m in matrix_strategy()) {
            let sub = column_basis(&m);
            let q = quotient_map(&sub, m.rows()).unwrap();
            prop_assert_eq!(q.dim(), m.rows() - rank(&m));
            prop_assert!(q.projection.mul(&m).unwrap().is_zero());
            prop_assert_eq!(q.projection.mul(&q.complement).unwrap(), Matrix::identity(m.field(), q.dim()));
        }
    }
}
