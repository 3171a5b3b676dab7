//! Exact arithmetic and dense linear algebra over small finite fields GF(p^r).
//!
//! Elements are stored as indices `0..q` encoding the coefficient vector of a
//! residue polynomial in base `p` (least significant digit = constant term),
//! so enumeration order is the lexicographic order on coefficient tuples and
//! is identical across runs.  The modulus is always the lexicographically
//! least monic irreducible of degree `r`, which makes two constructions of
//! GF(p^r) literally equal.

use std::fmt;
use thiserror::Error;

/// A field element, encoded as an index in `0..q`.
pub type Elt = u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field size {0} exceeds the element budget {1}")]
    TooLarge(u64, u64),
    #[error("enumeration of {0} vectors exceeds the budget {1}")]
    BudgetExceeded(u64, u64),
}

/// Default cap on `p^r` for [`field_make`].
pub const DEFAULT_ELEMENT_BUDGET: u64 = 1 << 20;

/// Arithmetic context for GF(p^r).
///
/// Immutable after construction; all operations are `&self` and safe to share.
#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    r: u32,
    q: u64,
    /// Monic modulus, `r + 1` coefficients in ascending degree.
    modulus: Vec<u64>,
    /// Lookup tables, built for r >= table_from_r (and q small enough).
    mul_table: Option<Vec<Elt>>,
    inv_table: Option<Vec<Elt>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.r)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r
    }
}
impl Eq for FiniteField {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial helpers over GF(p), coefficients ascending, mod-p reduced.
mod ppoly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a: Vec<u64> = a.to_vec();
        trim(&mut a);
        let mut bb = b.to_vec();
        trim(&mut bb);
        assert!(!bb.is_empty());
        let db = bb.len() - 1;
        let lead_inv = mod_inv(bb[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let c = (a[da] * lead_inv) % p;
            if c != 0 {
                let shift = da - db;
                for (i, &bc) in bb.iter().enumerate() {
                    let t = (c * bc) % p;
                    a[shift + i] = (a[shift + i] + p - t) % p;
                }
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        a
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn mod_inv(a: u64, p: u64) -> u64 {
        // Fermat; p prime and a != 0.
        pow(a % p, p - 2, p)
    }

    pub fn pow(mut b: u64, mut e: u64, m: u64) -> u64 {
        let mut acc = 1u64;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc
    }
}

/// Is `f` (monic, ascending coefficients) irreducible over GF(p)?
/// Exhaustive trial division by all monic polynomials of degree <= deg(f)/2.
fn poly_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=(deg / 2) {
        // enumerate monic polynomials of degree d: p^d of them
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut k = idx;
            for c in g.iter_mut().take(d) {
                *c = k % p;
                k /= p;
            }
            g[d] = 1;
            if ppoly::rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree `r` over GF(p).
/// Lexicographic on (c_{r-1}, ..., c_0), i.e. numeric order of sum c_i p^i.
fn least_irreducible(p: u64, r: u32) -> Vec<u64> {
    if r == 1 {
        return vec![0, 1]; // x
    }
    let count = p.pow(r);
    for idx in 0..count {
        let mut f = vec![0u64; r as usize + 1];
        let mut k = idx;
        for c in f.iter_mut().take(r as usize) {
            *c = k % p;
            k /= p;
        }
        f[r as usize] = 1;
        if poly_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

/// Construct the canonical GF(p^r) with the default element budget.
pub fn field_make(p: u64, r: u32) -> Result<FiniteField, FieldError> {
    field_make_with_budget(p, r, DEFAULT_ELEMENT_BUDGET)
}

/// As [`field_make`] with an explicit cap on `p^r`.
pub fn field_make_with_budget(p: u64, r: u32, budget: u64) -> Result<FiniteField, FieldError> {
    assert!(r >= 1, "r must be >= 1");
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    let q = p.checked_pow(r).filter(|&q| q <= budget).ok_or_else(|| {
        FieldError::TooLarge(p.saturating_pow(r), budget)
    })?;
    let modulus = least_irreducible(p, r);
    let mut f = FiniteField {
        p,
        r,
        q,
        modulus,
        mul_table: None,
        inv_table: None,
    };
    // Table-free arithmetic for r <= 2, tables above (while they stay small).
    if r >= 3 && q <= (1 << 12) {
        f.build_tables();
    }
    Ok(f)
}

impl FiniteField {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Modulus coefficients, ascending degree, length r + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut mul = vec![0 as Elt; q * q];
        for a in 0..self.q {
            for b in a..self.q {
                let v = self.mul_direct(a, b);
                mul[(a * self.q + b) as usize] = v;
                mul[(b * self.q + a) as usize] = v;
            }
        }
        let mut inv = vec![0 as Elt; q];
        for a in 1..self.q {
            inv[a as usize] = self.inv_direct(a);
        }
        self.mul_table = Some(mul);
        self.inv_table = Some(inv);
    }

    fn coeffs(&self, a: Elt) -> Vec<u64> {
        let mut out = vec![0u64; self.r as usize];
        let mut k = a;
        for c in out.iter_mut() {
            *c = k % self.p;
            k /= self.p;
        }
        out
    }

    fn from_coeffs(&self, c: &[u64]) -> Elt {
        let mut acc = 0u64;
        for &x in c.iter().rev() {
            acc = acc * self.p + (x % self.p);
        }
        acc
    }

    pub fn zero(&self) -> Elt {
        0
    }
    pub fn one(&self) -> Elt {
        1
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.r == 1 {
            return (a + b) % self.p;
        }
        // digitwise base-p addition
        let (mut out, mut pw, mut a, mut b) = (0u64, 1u64, a, b);
        for _ in 0..self.r {
            out += pw * ((a % self.p + b % self.p) % self.p);
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        out
    }

    pub fn neg(&self, a: Elt) -> Elt {
        if self.r == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let (mut out, mut pw, mut a) = (0u64, 1u64, a);
        for _ in 0..self.r {
            out += pw * ((self.p - a % self.p) % self.p);
            a /= self.p;
            pw *= self.p;
        }
        out
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if let Some(t) = &self.mul_table {
            return t[(a * self.q + b) as usize];
        }
        self.mul_direct(a, b)
    }

    fn mul_direct(&self, a: Elt, b: Elt) -> Elt {
        match self.r {
            1 => a * b % self.p,
            2 => {
                // (a0 + a1 x)(b0 + b1 x) mod (x^2 + m1 x + m0)
                let p = self.p;
                let (a0, a1) = (a % p, a / p);
                let (b0, b1) = (b % p, b / p);
                let (m0, m1) = (self.modulus[0], self.modulus[1]);
                let t = a1 * b1 % p; // coefficient of x^2
                let c0 = (a0 * b0 % p + (p - t * m0 % p)) % p;
                let c1 = ((a0 * b1 + a1 * b0) % p + (p - t * m1 % p)) % p;
                c0 + p * c1
            }
            _ => {
                let pa = self.coeffs(a);
                let pb = self.coeffs(b);
                let prod = ppoly::mul(&pa, &pb, self.p);
                let red = ppoly::rem(&prod, &self.modulus, self.p);
                let mut full = vec![0u64; self.r as usize];
                full[..red.len()].copy_from_slice(&red);
                self.from_coeffs(&full)
            }
        }
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elt) -> Option<Elt> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.inv_table {
            return Some(t[a as usize]);
        }
        Some(self.inv_direct(a))
    }

    fn inv_direct(&self, a: Elt) -> Elt {
        self.pow(a, self.q - 2)
    }

    /// All `q^d` coordinate vectors in the fixed lexicographic order
    /// (first coordinate most significant).
    pub fn enumerate_vectors(&self, d: u32, budget: u64) -> Result<VectorIter, FieldError> {
        let total = self
            .q
            .checked_pow(d)
            .ok_or(FieldError::BudgetExceeded(u64::MAX, budget))?;
        if total > budget {
            return Err(FieldError::BudgetExceeded(total, budget));
        }
        Ok(VectorIter {
            q: self.q,
            d: d as usize,
            next: 0,
            total,
        })
    }
}

/// Iterator over all vectors of length `d` over GF(q), lexicographic.
#[derive(Debug)]
pub struct VectorIter {
    q: u64,
    d: usize,
    next: u64,
    total: u64,
}

impl Iterator for VectorIter {
    type Item = Vec<Elt>;
    fn next(&mut self) -> Option<Vec<Elt>> {
        if self.next >= self.total {
            return None;
        }
        let mut v = vec![0 as Elt; self.d];
        let mut k = self.next;
        for slot in v.iter_mut().rev() {
            *slot = k % self.q;
            k /= self.q;
        }
        self.next += 1;
        Some(v)
    }
}

/// Dense matrix over one finite field, entries row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Elt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix, f: &FiniteField) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, b)));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, f: &FiniteField) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(other.data.iter()) {
            *x = f.add(*x, y);
        }
        out
    }

    pub fn sub(&self, other: &Matrix, f: &FiniteField) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(other.data.iter()) {
            *x = f.sub(*x, y);
        }
        out
    }

    pub fn scale(&self, c: Elt, f: &FiniteField) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = f.mul(*x, c);
        }
        out
    }

    pub fn neg(&self, f: &FiniteField) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = f.neg(*x);
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elt], f: &FiniteField) -> Vec<Elt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0;
            for j in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(i, j), v[j]));
            }
            out[i] = acc;
        }
        out
    }

    /// Writes `other` into this matrix with its (0,0) at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, other: &Matrix) {
        assert!(r0 + other.rows <= self.rows && c0 + other.cols <= self.cols);
        for i in 0..other.rows {
            for j in 0..other.cols {
                self.set(r0 + i, c0 + j, other.get(i, j));
            }
        }
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        mat_solve(f, self).rank
    }
}

/// Echelonised view of a matrix: rank, kernel and enough data to solve
/// `M x = b` for any right-hand side.
pub struct LinSolve {
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows of `rref`.
    pub pivots: Vec<usize>,
    /// Reduced row echelon form of the input.
    pub rref: Matrix,
    /// Row transform with `transform * M = rref`.
    pub transform: Matrix,
}

/// Gaussian elimination with full reduction. Deterministic: pivots are chosen
/// top-down, first nonzero entry in column order.
pub fn mat_solve(f: &FiniteField, m: &Matrix) -> LinSolve {
    let mut a = m.clone();
    let mut t = Matrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        // find pivot
        let mut pr = None;
        for i in row..a.rows() {
            if a.get(i, col) != 0 {
                pr = Some(i);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        if pr != row {
            for j in 0..a.cols() {
                let (x, y) = (a.get(row, j), a.get(pr, j));
                a.set(row, j, y);
                a.set(pr, j, x);
            }
            for j in 0..t.cols() {
                let (x, y) = (t.get(row, j), t.get(pr, j));
                t.set(row, j, y);
                t.set(pr, j, x);
            }
        }
        let inv = f.inv(a.get(row, col)).expect("pivot nonzero");
        if inv != 1 {
            for j in 0..a.cols() {
                a.set(row, j, f.mul(a.get(row, j), inv));
            }
            for j in 0..t.cols() {
                t.set(row, j, f.mul(t.get(row, j), inv));
            }
        }
        for i in 0..a.rows() {
            if i == row {
                continue;
            }
            let c = a.get(i, col);
            if c == 0 {
                continue;
            }
            for j in 0..a.cols() {
                let v = f.sub(a.get(i, j), f.mul(c, a.get(row, j)));
                a.set(i, j, v);
            }
            for j in 0..t.cols() {
                let v = f.sub(t.get(i, j), f.mul(c, t.get(row, j)));
                t.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    LinSolve {
        rank: row,
        pivots,
        rref: a,
        transform: t,
    }
}

impl LinSolve {
    /// Kernel basis in reduced echelon form, one vector per free column,
    /// ordered by free column index.
    pub fn kernel_basis(&self, f: &FiniteField) -> Vec<Vec<Elt>> {
        let n = self.rref.cols();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0 as Elt; n];
            v[free] = 1;
            for (row, &pc) in self.pivots.iter().enumerate() {
                v[pc] = f.neg(self.rref.get(row, free));
            }
            out.push(v);
        }
        out
    }

    /// Solve `M x = b`; `None` when inconsistent. Free variables set to zero.
    pub fn solve(&self, f: &FiniteField, b: &[Elt]) -> Option<Vec<Elt>> {
        assert_eq!(b.len(), self.transform.cols());
        let y = self.transform.mul_vec(b, f);
        for &v in y.iter().skip(self.rank) {
            if v != 0 {
                return None;
            }
        }
        let mut x = vec![0 as Elt; self.rref.cols()];
        for (row, &pc) in self.pivots.iter().enumerate() {
            x[pc] = y[row];
        }
        Some(x)
    }
}

/// Kernel of `m` as a fresh basis list (convenience wrapper).
pub fn kernel_basis(f: &FiniteField, m: &Matrix) -> Vec<Vec<Elt>> {
    mat_solve(f, m).kernel_basis(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_and_modulus() {
        let f = field_make(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.modulus(), &[0, 1]); // x

        let f9 = field_make(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        // x^2 + 1 is the least monic irreducible over GF(3): check no root.
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        for x in 0..3u64 {
            assert_ne!((x * x + 1) % 3, 0);
        }

        assert_eq!(field_make(4, 1), Err(FieldError::NonPrime(4)));
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            field_make_with_budget(2, 25, 1 << 20),
            Err(FieldError::TooLarge(_, _))
        ));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, r) in [(2u64, 1u32), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)] {
            let f = field_make(p, r).unwrap();
            let q = f.q();
            assert!(q <= 9 || (p, r) == (2, 3));
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_vectors_examples() {
        let f2 = field_make(2, 1).unwrap();
        let vs: Vec<_> = f2.enumerate_vectors(0, 10).unwrap().collect();
        assert_eq!(vs, vec![Vec::<Elt>::new()]);

        let vs: Vec<_> = f2.enumerate_vectors(2, 10).unwrap().collect();
        assert_eq!(vs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

        let f3 = field_make(3, 1).unwrap();
        assert_eq!(
            f3.enumerate_vectors(8, 1000).unwrap_err(),
            FieldError::BudgetExceeded(6561, 1000)
        );
    }

    #[test]
    fn mat_solve_examples() {
        let f2 = field_make(2, 1).unwrap();
        let id = Matrix::identity(2);
        let s = mat_solve(&f2, &id);
        assert_eq!(s.rank, 2);
        assert!(s.kernel_basis(&f2).is_empty());

        let z = Matrix::zero(2, 3);
        let s = mat_solve(&f2, &z);
        assert_eq!(s.rank, 0);
        assert_eq!(s.kernel_basis(&f2).len(), 3);

        let m = Matrix::from_rows(2, 2, vec![1, 1, 1, 1]);
        let s = mat_solve(&f2, &m);
        assert_eq!(s.rank, 1);
        assert_eq!(s.kernel_basis(&f2), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_roundtrip() {
        let f = field_make(5, 1).unwrap();
        let m = Matrix::from_rows(3, 3, vec![1, 2, 0, 0, 1, 4, 3, 0, 1]);
        let s = mat_solve(&f, &m);
        let x = vec![2, 3, 1];
        let b = m.mul_vec(&x, &f);
        let got = s.solve(&f, &b).unwrap();
        assert_eq!(m.mul_vec(&got, &f), b);
    }

    fn det_cofactor(f: &FiniteField, m: &Matrix) -> Elt {
        let n = m.rows();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m.get(0, 0);
        }
        let mut acc = 0;
        for j in 0..n {
            let c = m.get(0, j);
            if c == 0 {
                continue;
            }
            let mut sub = Matrix::zero(n - 1, n - 1);
            for i in 1..n {
                let mut jj = 0;
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    sub.set(i - 1, jj, m.get(i, k));
                    jj += 1;
                }
            }
            let term = f.mul(c, det_cofactor(f, &sub));
            acc = if j % 2 == 0 {
                f.add(acc, term)
            } else {
                f.sub(acc, term)
            };
        }
        acc
    }

    #[test]
    fn invertibility_agrees_with_cofactor_determinant() {
        for q in [2u64, 3, 4] {
            let (p, r) = if q == 4 { (2, 2) } else { (q, 1) };
            let f = field_make(p, r).unwrap();
            for d in 0..=3u32 {
                let total = f.q().pow(d * d);
                if total > 1 << 16 {
                    continue;
                }
                let mut invertible = 0u64;
                for flat in f.enumerate_vectors(d * d, 1 << 16).unwrap() {
                    let m = Matrix::from_rows(d as usize, d as usize, flat);
                    let full_rank = m.rank(&f) == d as usize;
                    let det = det_cofactor(&f, &m);
                    assert_eq!(full_rank, det != 0);
                    if full_rank {
                        invertible += 1;
                    }
                }
                // |GL_d(F_q)| = prod (q^d - q^i)
                let qq = f.q();
                let mut expect = 1u64;
                for i in 0..d {
                    expect *= qq.pow(d) - qq.pow(i);
                }
                assert_eq!(invertible, expect, "GL count over q={} d={}", qq, d);
            }
        }
    }

    #[test]
    fn gf4_gf9_extension_arithmetic() {
        let f4 = field_make(2, 2).unwrap();
        // x^2 + x + 1 is the least irreducible over GF(2)
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // the generator x satisfies x^3 = 1
        let x = 2; // coeffs (0,1)
        assert_eq!(f4.pow(x, 3), 1);

        let f9 = field_make(3, 2).unwrap();
        for a in 0..9 {
            assert_eq!(f9.pow(a, 9), a, "Frobenius^2 fixes GF(9)");
        }
    }
}
