//! Property checks for squares: line sums, the complementary property on
//! both diagonal slopes, the p x p block property, and the window corner
//! identity, with the first failing anchor reported as a witness.
//!
//! Checks accept arbitrary squares, not only constructed ones, so that
//! imported and mutated grids can be diagnosed. Every sum is exact integer
//! arithmetic; the checkers sweep all anchors rather than one coset
//! representative per class, trading speed for obviousness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::square::Square;

/// The three target sums for a square of order n under type p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MagicConstants {
    line_sum: u64,
    complementary_sum: u64,
    block_sum: u64,
}

impl MagicConstants {
    /// Validates (n, p) and evaluates the targets. For odd p and even n the
    /// complementary and block targets are half-integral, so no natural
    /// square can meet them and the combination is rejected.
    pub fn new(n: u64, p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::TypeTooSmall(p));
        }
        if n == 0 || n % p != 0 {
            return Err(Error::DoesNotDivide { p, n });
        }
        if p % 2 == 1 && n % 2 == 0 {
            return Err(Error::NonIntegralTargets { n, p });
        }
        let cells = n as u128 * n as u128 - 1;
        let exact = |num: u128| -> Result<u64> {
            debug_assert_eq!(num % 2, 0);
            u64::try_from(num / 2)
                .map_err(|_| Error::Malformed(format!("order {n} too large for exact sums")))
        };
        Ok(Self {
            line_sum: exact(n as u128 * cells)?,
            complementary_sum: exact(p as u128 * cells)?,
            block_sum: exact(p as u128 * p as u128 * cells)?,
        })
    }

    /// n(n^2 - 1)/2, the sum of every full line.
    pub fn line_sum(&self) -> u64 {
        self.line_sum
    }

    /// p(n^2 - 1)/2, the sum of p symbols spaced n/p apart on a diagonal.
    pub fn complementary_sum(&self) -> u64 {
        self.complementary_sum
    }

    /// p^2(n^2 - 1)/2, the sum of any wraparound p x p window.
    pub fn block_sum(&self) -> u64 {
        self.block_sum
    }
}

/// First failing anchor of a check: the cell or anchor coordinates plus the
/// observed and expected values. For the natural check the values are
/// appearance counts of the symbol at the cell; for sum checks they are
/// sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub row: u64,
    pub col: u64,
    pub observed: u64,
    pub expected: u64,
}

fn witness(check: &str, row: u64, col: u64, observed: u64, expected: u64) -> Option<Witness> {
    Some(Witness {
        check: check.to_string(),
        row,
        col,
        observed,
        expected,
    })
}

/// Outcome of the full-line checks, one flag per line family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineFlags {
    pub rows: bool,
    pub cols: bool,
    pub main_diagonals: bool,
    pub off_diagonals: bool,
}

impl LineFlags {
    pub fn all(&self) -> bool {
        self.rows && self.cols && self.main_diagonals && self.off_diagonals
    }
}

/// Full report on one square under one type parameter, serializable as a
/// flat JSON object with one key per flag plus the witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub n: u64,
    pub type_p: u64,
    pub natural: bool,
    pub rows_magic: bool,
    pub cols_magic: bool,
    pub main_pandiagonal: bool,
    pub off_pandiagonal: bool,
    pub complementary: bool,
    pub off_diagonal_complementary: bool,
    pub p_by_p: bool,
    pub is_type_p_mps: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

fn natural_witness(sq: &Square) -> Option<Witness> {
    let n = sq.n();
    let mut seen = vec![false; (n * n) as usize];
    for row in 0..n {
        for col in 0..n {
            let v = sq.entry_at(row as i64, col as i64) as usize;
            if seen[v] {
                return witness("natural", row, col, 2, 1);
            }
            seen[v] = true;
        }
    }
    None
}

/// True iff the grid is a permutation of 0..n^2.
pub fn check_natural(sq: &Square) -> bool {
    natural_witness(sq).is_none()
}

/// Sums a line of n cells starting at (row, col), stepping by
/// (row_step, col_step) with wraparound.
fn line_total(sq: &Square, row: i64, col: i64, row_step: i64, col_step: i64) -> u64 {
    (0..sq.n() as i64)
        .map(|k| sq.entry_at(row + k * row_step, col + k * col_step))
        .sum()
}

fn line_witness(
    sq: &Square,
    check: &str,
    anchors: impl Iterator<Item = (u64, u64)>,
    row_step: i64,
    col_step: i64,
    target: u64,
) -> Option<Witness> {
    for (row, col) in anchors {
        let total = line_total(sq, row as i64, col as i64, row_step, col_step);
        if total != target {
            return witness(check, row, col, total, target);
        }
    }
    None
}

fn line_witnesses(sq: &Square) -> [Option<Witness>; 4] {
    let n = sq.n();
    // n(n^2 - 1) is even for every n, so the line target is exact.
    let target = (n as u128 * (n as u128 * n as u128 - 1) / 2) as u64;
    [
        line_witness(sq, "rows", (0..n).map(|i| (i, 0)), 0, 1, target),
        line_witness(sq, "cols", (0..n).map(|j| (0, j)), 1, 0, target),
        line_witness(sq, "main_diagonals", (0..n).map(|j| (0, j)), 1, 1, target),
        line_witness(sq, "off_diagonals", (0..n).map(|j| (0, j)), 1, -1, target),
    ]
}

/// Checks all 4n full lines: rows, columns, and the n broken diagonals of
/// each slope. Works for any order, including the trivial 1 x 1 square.
pub fn check_lines(sq: &Square) -> LineFlags {
    let [rows, cols, main, off] = line_witnesses(sq);
    LineFlags {
        rows: rows.is_none(),
        cols: cols.is_none(),
        main_diagonals: main.is_none(),
        off_diagonals: off.is_none(),
    }
}

fn spaced_diagonal_witness(
    sq: &Square,
    check: &str,
    p: u64,
    col_sign: i64,
    target: u64,
) -> Option<Witness> {
    let n = sq.n();
    let step = (n / p) as i64;
    for row in 0..n {
        for col in 0..n {
            let total: u64 = (0..p as i64)
                .map(|k| sq.entry_at(row as i64 + k * step, col as i64 + col_sign * k * step))
                .sum();
            if total != target {
                return witness(check, row, col, total, target);
            }
        }
    }
    None
}

/// The type-p complementary property: from every cell, the p symbols spaced
/// n/p apart along the broken main-diagonal direction sum to p(n^2 - 1)/2.
pub fn check_complementary(sq: &Square, p: u64) -> Result<bool> {
    let constants = MagicConstants::new(sq.n(), p)?;
    Ok(spaced_diagonal_witness(sq, "complementary", p, 1, constants.complementary_sum()).is_none())
}

/// The same property along the broken off-diagonal direction. Not part of
/// the type-p definition, but a consequence of it, and reported separately.
pub fn check_off_diagonal_complementary(sq: &Square, p: u64) -> Result<bool> {
    let constants = MagicConstants::new(sq.n(), p)?;
    Ok(spaced_diagonal_witness(
        sq,
        "off_diagonal_complementary",
        p,
        -1,
        constants.complementary_sum(),
    )
    .is_none())
}

fn block_witness(sq: &Square, p: u64, target: u64) -> Option<Witness> {
    let n = sq.n();
    for row in 0..n {
        for col in 0..n {
            let mut total = 0u64;
            for dr in 0..p as i64 {
                for dc in 0..p as i64 {
                    total += sq.entry_at(row as i64 + dr, col as i64 + dc);
                }
            }
            if total != target {
                return witness("p_by_p", row, col, total, target);
            }
        }
    }
    None
}

/// The p x p property: every wraparound p x p window sums to p^2(n^2 - 1)/2.
pub fn check_p_by_p(sq: &Square, p: u64) -> Result<bool> {
    let constants = MagicConstants::new(sq.n(), p)?;
    Ok(block_witness(sq, p, constants.block_sum()).is_none())
}

/// Corner identity of a wraparound window of (row_blocks * p + 1) rows and
/// (col_blocks * p + 1) columns anchored at (row, col): the top-left plus
/// bottom-right corners equal the top-right plus bottom-left corners.
/// Holds on every square with the p x p property.
pub fn check_window_corners(
    sq: &Square,
    p: u64,
    row: i64,
    col: i64,
    row_blocks: u64,
    col_blocks: u64,
) -> Result<bool> {
    if p < 2 {
        return Err(Error::TypeTooSmall(p));
    }
    if row_blocks == 0 || col_blocks == 0 {
        return Err(Error::BadWindow {
            m: row_blocks,
            blocks: col_blocks,
        });
    }
    let dr = (row_blocks * p) as i64;
    let dc = (col_blocks * p) as i64;
    let a = sq.entry_at(row, col);
    let b = sq.entry_at(row, col + dc);
    let c = sq.entry_at(row + dr, col);
    let d = sq.entry_at(row + dr, col + dc);
    Ok(a + d == b + c)
}

/// Runs every check and assembles the report. The defining flags for a
/// type-p most-perfect square are naturality, all four line families, the
/// complementary property, and the p x p property; the off-diagonal
/// complementary flag is informational. The witness is the first failure
/// in that order.
pub fn verify_full(sq: &Square, p: u64) -> Result<PropertyReport> {
    let constants = MagicConstants::new(sq.n(), p)?;
    let natural = natural_witness(sq);
    let [rows, cols, main, off] = line_witnesses(sq);
    let complementary =
        spaced_diagonal_witness(sq, "complementary", p, 1, constants.complementary_sum());
    let off_complementary = spaced_diagonal_witness(
        sq,
        "off_diagonal_complementary",
        p,
        -1,
        constants.complementary_sum(),
    );
    let block = block_witness(sq, p, constants.block_sum());

    let report = PropertyReport {
        n: sq.n(),
        type_p: p,
        natural: natural.is_none(),
        rows_magic: rows.is_none(),
        cols_magic: cols.is_none(),
        main_pandiagonal: main.is_none(),
        off_pandiagonal: off.is_none(),
        complementary: complementary.is_none(),
        off_diagonal_complementary: off_complementary.is_none(),
        p_by_p: block.is_none(),
        is_type_p_mps: false,
        witness: [
            natural,
            rows,
            cols,
            main,
            off,
            complementary,
            off_complementary,
            block,
        ]
        .into_iter()
        .flatten()
        .next(),
    };
    Ok(PropertyReport {
        is_type_p_mps: report.natural
            && report.rows_magic
            && report.cols_magic
            && report.main_pandiagonal
            && report.off_pandiagonal
            && report.complementary
            && report.p_by_p,
        ..report
    })
}

/// The reduced decision: naturality, the complementary property, and the
/// p x p property. When p^2 divides n these three imply the rest, so the
/// hypothesis is enforced rather than assumed.
pub fn verify_reduced(sq: &Square, p: u64) -> Result<bool> {
    if p < 2 {
        return Err(Error::TypeTooSmall(p));
    }
    let psq = p * p;
    if sq.n() % psq != 0 {
        return Err(Error::SquareDoesNotDivide { psq, n: sq.n() });
    }
    Ok(check_natural(sq) && check_complementary(sq, p)? && check_p_by_p(sq, p)?)
}
