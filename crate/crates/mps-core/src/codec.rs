//! Bijections between integers and digit vectors over Z_p.
//!
//! A symbol 0 <= s < n^2 and a grid location (row, col) with coordinates in
//! 0..n both correspond to vectors in Z_p^{2r}: the symbol via its base-p
//! expansion, the location via the row digits followed by the column digits.
//! Digits are most-significant first in both encodings.

use crate::error::{Error, Result};
use crate::zp::{is_prime, ZpVector};

/// Order parameters shared by every stage of the pipeline: a prime p and an
/// exponent r >= 2 giving squares of order n = p^r over vectors of length 2r.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    p: u64,
    r: u32,
    n: u64,
}

impl ConstructionParams {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 2 {
            return Err(Error::RankTooSmall);
        }
        // Symbols run up to n^2 - 1, so p^{2r} itself must fit in u64.
        let n = p
            .checked_pow(r)
            .filter(|n| n.checked_mul(*n).is_some())
            .ok_or(Error::OrderOverflow { p, r })?;
        Ok(Self { p, r, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Square order n = p^r.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Vector length 2r.
    pub fn dim(&self) -> usize {
        2 * self.r as usize
    }

    pub fn symbol_count(&self) -> u64 {
        self.n * self.n
    }

    /// Base-p digits of `value`, most-significant first, in `len` positions.
    fn digits(&self, mut value: u64, len: usize) -> Vec<u64> {
        let mut out = vec![0u64; len];
        for slot in out.iter_mut().rev() {
            *slot = value % self.p;
            value /= self.p;
        }
        debug_assert_eq!(value, 0);
        out
    }

    fn undigits(&self, digits: &[u64]) -> u64 {
        digits.iter().fold(0, |acc, &d| acc * self.p + d)
    }

    fn check_vector(&self, v: &ZpVector) -> Result<()> {
        if v.modulus() != self.p {
            return Err(Error::ModulusMismatch {
                lhs: self.p,
                rhs: v.modulus(),
            });
        }
        if v.len() != self.dim() {
            return Err(Error::VectorLength {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Encodes a symbol as its 2r base-p digits, most-significant first.
    pub fn symbol_to_vector(&self, symbol: u64) -> Result<ZpVector> {
        if symbol >= self.symbol_count() {
            return Err(Error::SymbolOutOfRange {
                symbol,
                limit: self.symbol_count(),
            });
        }
        Ok(ZpVector::new(
            self.p,
            &self
                .digits(symbol, self.dim())
                .iter()
                .map(|&d| d as i64)
                .collect::<Vec<_>>(),
        )?)
    }

    pub fn vector_to_symbol(&self, v: &ZpVector) -> Result<u64> {
        self.check_vector(v)?;
        Ok(self.undigits(v.entries()))
    }

    /// Encodes a location as r row digits followed by r column digits,
    /// each group most-significant first. Row 0 is the top row.
    pub fn location_to_vector(&self, loc: GridLocation) -> Result<ZpVector> {
        if loc.row >= self.n || loc.col >= self.n {
            return Err(Error::LocationOutOfRange {
                row: loc.row,
                col: loc.col,
                n: self.n,
            });
        }
        let r = self.r as usize;
        let mut digits = self.digits(loc.row, r);
        digits.extend(self.digits(loc.col, r));
        Ok(ZpVector::new(
            self.p,
            &digits.iter().map(|&d| d as i64).collect::<Vec<_>>(),
        )?)
    }

    pub fn vector_to_location(&self, v: &ZpVector) -> Result<GridLocation> {
        self.check_vector(v)?;
        let r = self.r as usize;
        Ok(GridLocation {
            row: self.undigits(&v.entries()[..r]),
            col: self.undigits(&v.entries()[r..]),
        })
    }

    /// Symbol encoding in a permuted digit basis: the identity permutation
    /// reproduces `symbol_to_vector`.
    pub fn symbol_to_vector_permuted(
        &self,
        symbol: u64,
        perm: &DigitPermutation,
    ) -> Result<ZpVector> {
        perm.apply(&self.symbol_to_vector(symbol)?)
    }

    pub fn vector_to_symbol_permuted(&self, v: &ZpVector, perm: &DigitPermutation) -> Result<u64> {
        self.vector_to_symbol(&perm.inverse().apply(v)?)
    }
}

/// A cell position with row 0 at the top and column 0 at the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridLocation {
    pub row: u64,
    pub col: u64,
}

impl GridLocation {
    pub fn new(row: u64, col: u64) -> Self {
        Self { row, col }
    }
}

/// A reordering of digit positions, usable as an alternate basis for the
/// symbol encoding. `apply` writes input position `images[i]` to output
/// position `i`. Identity is the only ordering the construction theory
/// covers; others are exposed for experimentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitPermutation {
    images: Vec<usize>,
}

impl DigitPermutation {
    pub fn identity(len: usize) -> Self {
        Self {
            images: (0..len).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &img in &images {
            if img >= len || seen[img] {
                return Err(Error::NotPermutation(
                    format!("{images:?}"),
                    len,
                ));
            }
            seen[img] = true;
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    pub fn apply(&self, v: &ZpVector) -> Result<ZpVector> {
        if v.len() != self.len() {
            return Err(Error::VectorLength {
                expected: self.len(),
                got: v.len(),
            });
        }
        let entries: Vec<i64> = self.images.iter().map(|&src| v.entry(src) as i64).collect();
        ZpVector::new(v.modulus(), &entries)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0usize; self.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Self { images }
    }
}
