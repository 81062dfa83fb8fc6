//! Exact linear algebra over the prime field Z_p.
//!
//! Every residue is kept in canonical form `0 <= x < p` at all times.
//! Matrices and vectors are dense, row-major, and immutable once built;
//! elimination routines work on private copies.

use std::fmt;

use crate::error::{Error, Result};

/// Primality by trial division. The toolkit targets small primes, so this
/// is plenty fast and has no failure modes.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Canonicalize a signed literal into `0..p`.
fn reduce(value: i64, p: u64) -> u64 {
    value.rem_euclid(p as i64) as u64
}

fn add_mod(x: u64, y: u64, p: u64) -> u64 {
    let z = x + y;
    if z >= p {
        z - p
    } else {
        z
    }
}

fn sub_mod(x: u64, y: u64, p: u64) -> u64 {
    if x >= y {
        x - y
    } else {
        x + p - y
    }
}

fn mul_mod(x: u64, y: u64, p: u64) -> u64 {
    // p <= 97 in practice; u128 keeps this safe for any u32-sized p.
    ((x as u128 * y as u128) % p as u128) as u64
}

fn neg_mod(x: u64, p: u64) -> u64 {
    if x == 0 {
        0
    } else {
        p - x
    }
}

/// Multiplicative inverse by the extended Euclidean algorithm.
/// Requires `0 < x < p` with p prime.
fn inv_mod(x: u64, p: u64) -> u64 {
    debug_assert!(x > 0 && x < p);
    let (mut r0, mut r1) = (p as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of a nonzero residue modulo a prime");
    t0.rem_euclid(p as i128) as u64
}

/// A single element of Z_p in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Builds a residue from a signed literal, reducing into `0..p`.
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        check_prime(modulus)?;
        Ok(Self {
            value: reduce(value, modulus),
            modulus,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                lhs: self.modulus,
                rhs: other.modulus,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        Ok(Self {
            value: add_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        Ok(Self {
            value: sub_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        Ok(Self {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            value: neg_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::Singular);
        }
        Ok(Self {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A dense vector over Z_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZpVector {
    modulus: u64,
    entries: Vec<u64>,
}

impl ZpVector {
    /// Builds a vector from signed literals, reducing each into `0..p`.
    pub fn new(modulus: u64, entries: &[i64]) -> Result<Self> {
        check_prime(modulus)?;
        if entries.is_empty() {
            return Err(Error::DimensionMismatch("vector must be non-empty".into()));
        }
        Ok(Self {
            modulus,
            entries: entries.iter().map(|&v| reduce(v, modulus)).collect(),
        })
    }

    /// Internal constructor for entries already in canonical form.
    pub(crate) fn from_canonical(modulus: u64, entries: Vec<u64>) -> Self {
        debug_assert!(entries.iter().all(|&v| v < modulus));
        Self { modulus, entries }
    }

    pub fn zero(modulus: u64, len: usize) -> Result<Self> {
        check_prime(modulus)?;
        if len == 0 {
            return Err(Error::DimensionMismatch("vector must be non-empty".into()));
        }
        Ok(Self {
            modulus,
            entries: vec![0; len],
        })
    }

    /// The elementary vector with a single 1 at `index` (0-based).
    pub fn elementary(modulus: u64, len: usize, index: usize) -> Result<Self> {
        let mut v = Self::zero(modulus, len)?;
        if index >= len {
            return Err(Error::DimensionMismatch(format!(
                "elementary index {index} out of range 0..{len}"
            )));
        }
        v.entries[index] = 1;
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entry(&self, i: usize) -> u64 {
        self.entries[i]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().copied()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                lhs: self.modulus,
                rhs: other.modulus,
            });
        }
        if self.len() != other.len() {
            return Err(Error::VectorLength {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| add_mod(a, b, self.modulus))
            .collect();
        Ok(Self {
            modulus: self.modulus,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| sub_mod(a, b, self.modulus))
            .collect();
        Ok(Self {
            modulus: self.modulus,
            entries,
        })
    }

    pub fn scale(&self, factor: i64) -> Self {
        let f = reduce(factor, self.modulus);
        let entries = self
            .entries
            .iter()
            .map(|&a| mul_mod(a, f, self.modulus))
            .collect();
        Self {
            modulus: self.modulus,
            entries,
        }
    }

    /// Vector text format: a header line `p d`, then one line of d digits.
    pub fn to_text(&self) -> String {
        let digits: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        format!("{} {}\n{}\n", self.modulus, self.len(), digits.join(" "))
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let mut next_num = |what: &str| -> Result<u64> {
            tokens
                .next()
                .ok_or_else(|| Error::Malformed(format!("vector text: missing {what}")))?
                .parse::<u64>()
                .map_err(|_| Error::Malformed(format!("vector text: bad {what}")))
        };
        let p = next_num("modulus")?;
        check_prime(p)?;
        let len = next_num("length")? as usize;
        let mut entries = Vec::with_capacity(len);
        for _ in 0..len {
            let v = next_num("entry")?;
            if v >= p {
                return Err(Error::Malformed(format!(
                    "vector text: entry {v} not a canonical residue mod {p}"
                )));
            }
            entries.push(v);
        }
        if tokens.next().is_some() {
            return Err(Error::Malformed("vector text: trailing tokens".into()));
        }
        if entries.is_empty() {
            return Err(Error::Malformed("vector text: empty vector".into()));
        }
        Ok(Self {
            modulus: p,
            entries,
        })
    }
}

/// A dense row-major matrix over Z_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZpMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ZpMatrix {
    /// Builds a matrix from rows of signed literals, reducing each entry.
    pub fn from_rows(modulus: u64, rows: &[Vec<i64>]) -> Result<Self> {
        check_prime(modulus)?;
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::DimensionMismatch("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: expected {cols} columns, got {}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&v| reduce(v, modulus)));
        }
        Ok(Self {
            modulus,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Internal constructor for entries already in canonical form.
    pub(crate) fn from_canonical(modulus: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|&v| v < modulus));
        Self {
            modulus,
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(modulus: u64, rows: usize, cols: usize) -> Result<Self> {
        check_prime(modulus)?;
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("matrix must be non-empty".into()));
        }
        Ok(Self {
            modulus,
            rows,
            cols,
            entries: vec![0; rows * cols],
        })
    }

    pub fn identity(modulus: u64, dim: usize) -> Result<Self> {
        let mut m = Self::zero(modulus, dim, dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn at(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: u64) {
        debug_assert!(value < self.modulus);
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ZpVector {
        let entries = (0..self.rows).map(|i| self.at(i, j)).collect();
        ZpVector::from_canonical(self.modulus, entries)
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Matrix-vector product over Z_p.
    pub fn mat_vec_mul(&self, v: &ZpVector) -> Result<ZpVector> {
        if self.modulus != v.modulus() {
            return Err(Error::ModulusMismatch {
                lhs: self.modulus,
                rhs: v.modulus(),
            });
        }
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        let p = self.modulus;
        let entries = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.entries())
                    .fold(0, |acc, (&m, &x)| add_mod(acc, mul_mod(m, x, p), p))
            })
            .collect();
        Ok(ZpVector::from_canonical(p, entries))
    }

    /// Matrix product over Z_p.
    pub fn mat_mul(&self, other: &ZpMatrix) -> Result<ZpMatrix> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                lhs: self.modulus,
                rhs: other.modulus,
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.modulus;
        let mut entries = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    entries[idx] = add_mod(entries[idx], mul_mod(a, other.at(k, j), p), p);
                }
            }
        }
        Ok(ZpMatrix::from_canonical(p, self.rows, other.cols, entries))
    }

    /// Gauss-Jordan elimination on a working copy augmented with `extra`
    /// columns supplied by `init`. Returns (reduced buffer, rank, det) where
    /// det is the determinant of the leading square part when it is square,
    /// tracked through pivot products and row swaps.
    fn eliminate(&self, extra: usize, init: impl Fn(&mut [u64], usize)) -> (Vec<u64>, usize, u64) {
        let p = self.modulus;
        let width = self.cols + extra;
        let mut a = vec![0u64; self.rows * width];
        for i in 0..self.rows {
            a[i * width..i * width + self.cols].copy_from_slice(self.row(i));
            init(&mut a[i * width..(i + 1) * width], i);
        }
        let mut rank = 0;
        let mut det: u64 = 1;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| a[r * width + col] != 0) else {
                det = 0;
                continue;
            };
            if pivot != rank {
                for k in 0..width {
                    a.swap(pivot * width + k, rank * width + k);
                }
                det = neg_mod(det, p);
            }
            let lead = a[rank * width + col];
            det = mul_mod(det, lead, p);
            let inv = inv_mod(lead, p);
            for k in col..width {
                a[rank * width + k] = mul_mod(a[rank * width + k], inv, p);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = a[r * width + col];
                if factor == 0 {
                    continue;
                }
                for k in col..width {
                    let delta = mul_mod(factor, a[rank * width + k], p);
                    a[r * width + k] = sub_mod(a[r * width + k], delta, p);
                }
            }
            rank += 1;
        }
        if rank < self.rows.min(self.cols) {
            det = 0;
        }
        (a, rank, det)
    }

    pub fn rank(&self) -> usize {
        let (_, rank, _) = self.eliminate(0, |_, _| {});
        rank
    }

    /// True iff elimination yields full rank; square matrices only.
    pub fn is_nonsingular(&self) -> Result<bool> {
        let dim = self.require_square()?;
        Ok(self.rank() == dim)
    }

    /// Determinant via elimination with sign tracking.
    pub fn determinant(&self) -> Result<Residue> {
        self.require_square()?;
        let (_, _, det) = self.eliminate(0, |_, _| {});
        Residue::new(det as i64, self.modulus)
    }

    /// Inverse via Gauss-Jordan on the identity-augmented matrix.
    pub fn invert(&self) -> Result<ZpMatrix> {
        let dim = self.require_square()?;
        let (a, rank, _) = self.eliminate(dim, |row, i| row[dim + i] = 1);
        if rank < dim {
            return Err(Error::Singular);
        }
        let width = 2 * dim;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            entries.extend_from_slice(&a[i * width + dim..(i + 1) * width]);
        }
        Ok(ZpMatrix::from_canonical(self.modulus, dim, dim, entries))
    }

    /// Solves `self * x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &ZpVector) -> Result<ZpVector> {
        let dim = self.require_square()?;
        if rhs.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                lhs: self.modulus,
                rhs: rhs.modulus(),
            });
        }
        if rhs.len() != dim {
            return Err(Error::VectorLength {
                expected: dim,
                got: rhs.len(),
            });
        }
        let (a, rank, _) = self.eliminate(1, |row, i| row[dim] = rhs.entry(i));
        if rank < dim {
            return Err(Error::Singular);
        }
        let width = dim + 1;
        let entries = (0..dim).map(|i| a[i * width + dim]).collect();
        Ok(ZpVector::from_canonical(self.modulus, entries))
    }

    pub fn transposed(&self) -> ZpMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.at(i, j));
            }
        }
        ZpMatrix::from_canonical(self.modulus, self.cols, self.rows, entries)
    }

    /// Matrix text format: a header line `p d1 d2`, then d1 lines of d2
    /// space-separated digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.modulus, self.rows, self.cols);
        for i in 0..self.rows {
            let digits: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&digits.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let mut next_num = |what: &str| -> Result<u64> {
            tokens
                .next()
                .ok_or_else(|| Error::Malformed(format!("matrix text: missing {what}")))?
                .parse::<u64>()
                .map_err(|_| Error::Malformed(format!("matrix text: bad {what}")))
        };
        let p = next_num("modulus")?;
        check_prime(p)?;
        let rows = next_num("row count")? as usize;
        let cols = next_num("column count")? as usize;
        if rows == 0 || cols == 0 {
            return Err(Error::Malformed("matrix text: empty shape".into()));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let v = next_num("entry")?;
            if v >= p {
                return Err(Error::Malformed(format!(
                    "matrix text: entry {v} not a canonical residue mod {p}"
                )));
            }
            entries.push(v);
        }
        if tokens.next().is_some() {
            return Err(Error::Malformed("matrix text: trailing tokens".into()));
        }
        Ok(Self {
            modulus: p,
            rows,
            cols,
            entries,
        })
    }
}

impl fmt::Display for ZpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for ZpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The 6x6 construction matrix over Z_2 used throughout the tests.
    pub(crate) fn order8_matrix() -> ZpMatrix {
        ZpMatrix::from_rows(
            2,
            &[
                vec![1, 1, 0, 1, 1, 1],
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 0, 0, 1, 1, 0],
                vec![1, 1, 1, 1, 1, 0],
                vec![0, 1, 1, 0, 0, 0],
                vec![1, 1, 0, 0, 0, 0],
            ],
        )
        .unwrap()
    }

    /// The 4x4 construction matrix over Z_3.
    pub(crate) fn order9_matrix() -> ZpMatrix {
        ZpMatrix::from_rows(
            3,
            &[
                vec![2, 2, 2, 0],
                vec![0, 0, 1, 1],
                vec![2, 0, 2, 2],
                vec![1, 1, 0, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn primality_by_trial_division() {
        let primes = [2, 3, 5, 7, 11, 13, 89, 97];
        for p in primes {
            assert!(is_prime(p), "{p} is prime");
        }
        for q in [0, 1, 4, 6, 9, 15, 91, 96] {
            assert!(!is_prime(q), "{q} is not prime");
        }
    }

    #[test]
    fn residue_canonical_form() {
        let r = Residue::new(-1, 5).unwrap();
        assert_eq!(r.value(), 4);
        let r = Residue::new(12, 5).unwrap();
        assert_eq!(r.value(), 2);
        assert!(Residue::new(1, 6).is_err());
    }

    #[test]
    fn residue_ops() {
        let a = Residue::new(3, 5).unwrap();
        let b = Residue::new(4, 5).unwrap();
        assert_eq!(a.add(&b).unwrap().value(), 2);
        assert_eq!(a.sub(&b).unwrap().value(), 4);
        assert_eq!(a.mul(&b).unwrap().value(), 2);
        assert_eq!(a.neg().value(), 2);
        assert_eq!(b.inv().unwrap().value(), 4); // 4*4 = 16 = 1 mod 5
        let c = Residue::new(1, 7).unwrap();
        assert!(a.add(&c).is_err());
    }

    #[test]
    fn inverse_of_every_unit() {
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            for x in 1..p {
                let inv = inv_mod(x, p);
                assert_eq!(mul_mod(x, inv, p), 1, "x = {x}, p = {p}");
            }
        }
    }

    #[test]
    fn matvec_order8_example() {
        // Symbol vector of 26 maps to the location vector of (3, 5).
        let m = order8_matrix();
        let v = ZpVector::new(2, &[0, 1, 1, 0, 1, 0]).unwrap();
        let out = m.mat_vec_mul(&v).unwrap();
        assert_eq!(out.entries(), &[0, 1, 1, 1, 0, 1]);
    }

    #[test]
    fn matvec_identity() {
        let id = ZpMatrix::identity(7, 5).unwrap();
        let v = ZpVector::new(7, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(id.mat_vec_mul(&v).unwrap(), v);
    }

    #[test]
    fn matvec_order9_step_vector() {
        // Hand-evaluated row by row mod 3: M * (2,1,2,1) = (1,0,1,0).
        let m = order9_matrix();
        let v = ZpVector::new(3, &[2, 1, 2, 1]).unwrap();
        let out = m.mat_vec_mul(&v).unwrap();
        assert_eq!(out.entries(), &[1, 0, 1, 0]);
    }

    #[test]
    fn matvec_shape_errors() {
        let m = order9_matrix();
        let short = ZpVector::new(3, &[1, 2]).unwrap();
        assert!(matches!(
            m.mat_vec_mul(&short),
            Err(Error::DimensionMismatch(_))
        ));
        let wrong_p = ZpVector::new(5, &[1, 2, 3, 4]).unwrap();
        assert!(matches!(
            m.mat_vec_mul(&wrong_p),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn nonsingularity() {
        assert!(order8_matrix().is_nonsingular().unwrap());
        assert!(order9_matrix().is_nonsingular().unwrap());
        let zero = ZpMatrix::zero(2, 3, 3).unwrap();
        assert!(!zero.is_nonsingular().unwrap());
        let equal_rows = ZpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(!equal_rows.is_nonsingular().unwrap());
        let rect = ZpMatrix::zero(2, 2, 3).unwrap();
        assert!(matches!(rect.is_nonsingular(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn invert_identity_and_small() {
        let id = ZpMatrix::identity(5, 4).unwrap();
        assert_eq!(id.invert().unwrap(), id);
        // 2 * 3 = 6 = 1 mod 5
        let one = ZpMatrix::from_rows(5, &[vec![2]]).unwrap();
        assert_eq!(one.invert().unwrap().at(0, 0), 3);
    }

    #[test]
    fn invert_order9_matrix() {
        let m = order9_matrix();
        let inv = m.invert().unwrap();
        let id = ZpMatrix::identity(3, 4).unwrap();
        assert_eq!(inv.mat_mul(&m).unwrap(), id);
        assert_eq!(m.mat_mul(&inv).unwrap(), id);
    }

    #[test]
    fn invert_singular_errors() {
        let zero = ZpMatrix::zero(3, 2, 2).unwrap();
        assert!(matches!(zero.invert(), Err(Error::Singular)));
    }

    #[test]
    fn determinant_examples() {
        for dim in 1..6 {
            let id = ZpMatrix::identity(3, dim).unwrap();
            assert_eq!(id.determinant().unwrap().value(), 1);
        }
        let zero = ZpMatrix::zero(5, 3, 3).unwrap();
        assert_eq!(zero.determinant().unwrap().value(), 0);
        // det [[0,1],[1,1]] = -1 = 2 mod 3, checking the swap sign path.
        let swapped = ZpMatrix::from_rows(3, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(swapped.determinant().unwrap().value(), 2);
    }

    #[test]
    fn solve_against_invert() {
        let m = order9_matrix();
        let rhs = ZpVector::new(3, &[1, 0, 1, 0]).unwrap();
        let x = m.solve(&rhs).unwrap();
        assert_eq!(x.entries(), &[2, 1, 2, 1]);
        assert_eq!(m.mat_vec_mul(&x).unwrap(), rhs);
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = order9_matrix();
        let text = m.to_text();
        assert_eq!(text, "3 4 4\n2 2 2 0\n0 0 1 1\n2 0 2 2\n1 1 0 0\n");
        assert_eq!(ZpMatrix::parse_text(&text).unwrap(), m);
        assert!(ZpMatrix::parse_text("3 2 2\n1 1\n1").is_err());
        assert!(ZpMatrix::parse_text("4 1 1\n1\n").is_err());
        assert!(ZpMatrix::parse_text("3 1 1\n7\n").is_err());
    }

    #[test]
    fn vector_text_round_trip() {
        let v = ZpVector::new(3, &[2, 1, 2, 1]).unwrap();
        let text = v.to_text();
        assert_eq!(text, "3 4\n2 1 2 1\n");
        assert_eq!(ZpVector::parse_text(&text).unwrap(), v);
    }

    #[test]
    fn transpose_involution() {
        let m = order8_matrix();
        assert_eq!(m.transposed().transposed(), m);
        assert_eq!(m.transposed().at(0, 2), m.at(2, 0));
    }
}
