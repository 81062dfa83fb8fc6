//! The n x n grid of symbols, its linear construction, and its file formats.

use serde::{Deserialize, Serialize};

use crate::codec::ConstructionParams;
use crate::error::{Error, Result};
use crate::zp::ZpMatrix;

/// Output encodings for a square. `GridText` is the human-readable layout,
/// `Csv` is one row per line with comma separators and no header, `Json`
/// carries the order and optional construction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareFormat {
    GridText,
    Csv,
    Json,
}

impl std::str::FromStr for SquareFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" | "grid-text" => Ok(Self::GridText),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Malformed(format!("unknown format {other:?}"))),
        }
    }
}

/// Wire form of the JSON format.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareJson {
    #[serde(default)]
    p: Option<u64>,
    #[serde(default)]
    r: Option<u32>,
    n: u64,
    grid: Vec<Vec<u64>>,
}

/// A square grid of symbols drawn from 0..n^2. Naturality (each symbol
/// exactly once) is a checkable property, not a structural invariant, so
/// the verifier can report on defective imports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    n: u64,
    params: Option<ConstructionParams>,
    grid: Vec<u64>,
}

impl Square {
    /// Places each symbol at the location its image under `matrix` encodes.
    /// The matrix must be square of side 2r and nonsingular over Z_p, which
    /// makes the placement a bijection and the result natural.
    pub fn build(matrix: &ZpMatrix, params: ConstructionParams) -> Result<Self> {
        if matrix.rows() != params.dim() || matrix.cols() != params.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                params.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.modulus() != params.p() {
            return Err(Error::ModulusMismatch {
                lhs: params.p(),
                rhs: matrix.modulus(),
            });
        }
        if !matrix.is_nonsingular()? {
            return Err(Error::Singular);
        }
        let n = params.n() as usize;
        let mut grid = vec![u64::MAX; n * n];
        for symbol in 0..params.symbol_count() {
            let image = matrix.mat_vec_mul(&params.symbol_to_vector(symbol)?)?;
            let loc = params.vector_to_location(&image)?;
            grid[loc.row as usize * n + loc.col as usize] = symbol;
        }
        debug_assert!(grid.iter().all(|&v| v != u64::MAX));
        Ok(Self {
            n: params.n(),
            params: Some(params),
            grid,
        })
    }

    /// Wraps a raw grid. Requires a square shape and in-range symbols;
    /// duplicates are allowed here and surface through the natural check.
    pub fn from_grid(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len() as u64;
        if n == 0 {
            return Err(Error::Malformed("square must have at least one row".into()));
        }
        let limit = n * n;
        let mut grid = Vec::with_capacity((n * n) as usize);
        for row in &rows {
            if row.len() as u64 != n {
                return Err(Error::NotSquare {
                    rows: rows.len(),
                    cols: row.len(),
                });
            }
            for &v in row {
                if v >= limit {
                    return Err(Error::SymbolOutOfRange { symbol: v, limit });
                }
                grid.push(v);
            }
        }
        Ok(Self {
            n,
            params: None,
            grid,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn params(&self) -> Option<ConstructionParams> {
        self.params
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[u64] {
        &self.grid
    }

    pub fn row(&self, i: usize) -> &[u64] {
        let n = self.n as usize;
        &self.grid[i * n..(i + 1) * n]
    }

    /// Entry with both coordinates reduced mod n, so callers can walk
    /// diagonals and windows without wraparound bookkeeping.
    pub fn entry_at(&self, row: i64, col: i64) -> u64 {
        let n = self.n as i64;
        let r = row.rem_euclid(n) as usize;
        let c = col.rem_euclid(n) as usize;
        self.grid[r * self.n as usize + c]
    }

    /// Errors with the first defect that stops the grid being a permutation
    /// of 0..n^2. Symbols out of range are impossible by construction here,
    /// so the only defect is a duplicate.
    pub fn validate_natural(&self) -> Result<()> {
        let mut seen = vec![false; self.grid.len()];
        for &v in &self.grid {
            let idx = v as usize;
            if seen[idx] {
                return Err(Error::DuplicateSymbol(v));
            }
            seen[idx] = true;
        }
        Ok(())
    }

    pub fn is_natural(&self) -> bool {
        self.validate_natural().is_ok()
    }

    pub fn transposed(&self) -> Square {
        let n = self.n as usize;
        let mut grid = Vec::with_capacity(self.grid.len());
        for j in 0..n {
            for i in 0..n {
                grid.push(self.grid[i * n + j]);
            }
        }
        Square {
            n: self.n,
            params: self.params,
            grid,
        }
    }

    /// Fixed-width right-aligned rows. `one_based` adds 1 to every symbol
    /// for display; storage stays 0-based.
    pub fn to_grid_text(&self, one_based: bool) -> String {
        let offset = u64::from(one_based);
        let width = (self.n * self.n - 1 + offset).to_string().len();
        let n = self.n as usize;
        let mut out = String::new();
        for i in 0..n {
            let rendered: Vec<String> = self
                .row(i)
                .iter()
                .map(|&v| format!("{:>width$}", v + offset))
                .collect();
            out.push_str(&rendered.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let n = self.n as usize;
        let mut out = String::new();
        for i in 0..n {
            let rendered: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&rendered.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let n = self.n as usize;
        let grid = (0..n).map(|i| self.row(i).to_vec()).collect();
        let wire = SquareJson {
            p: self.params.map(|pr| pr.p()),
            r: self.params.map(|pr| pr.r()),
            n: self.n,
            grid,
        };
        serde_json::to_string(&wire).expect("square JSON serialization cannot fail")
    }

    pub fn serialize(&self, format: SquareFormat) -> String {
        match format {
            SquareFormat::GridText => self.to_grid_text(false),
            SquareFormat::Csv => self.to_csv(),
            SquareFormat::Json => self.to_json(),
        }
    }

    /// Parses any of the three formats, sniffing JSON by a leading brace
    /// and CSV by a comma in the first line. Imported squares must be
    /// natural and of order at least 2.
    pub fn deserialize(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            Self::from_json(text)
        } else if text.lines().next().is_some_and(|line| line.contains(',')) {
            Self::from_csv(text)
        } else {
            Self::from_grid_text(text)
        }
    }

    fn import(rows: Vec<Vec<u64>>, params: Option<ConstructionParams>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Malformed(
                "imported squares must have order at least 2".into(),
            ));
        }
        let mut sq = Self::from_grid(rows)?;
        sq.validate_natural()?;
        sq.params = params;
        Ok(sq)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: SquareJson = serde_json::from_str(text)?;
        let params = match (wire.p, wire.r) {
            (Some(p), Some(r)) => {
                let params = ConstructionParams::new(p, r)?;
                if params.n() != wire.n {
                    return Err(Error::Malformed(format!(
                        "order {} does not equal p^r for p = {p}, r = {r}",
                        wire.n
                    )));
                }
                Some(params)
            }
            (None, None) => None,
            _ => {
                return Err(Error::Malformed(
                    "p and r must be given together or not at all".into(),
                ))
            }
        };
        if wire.grid.len() as u64 != wire.n {
            return Err(Error::Malformed(format!(
                "declared order {} but grid has {} rows",
                wire.n,
                wire.grid.len()
            )));
        }
        Self::import(wire.grid, params)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<u64>> = line
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Malformed(format!("bad csv cell {tok:?}")))
                })
                .collect();
            rows.push(row?);
        }
        Self::import(rows, None)
    }

    pub fn from_grid_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<u64>> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u64>()
                        .map_err(|_| Error::Malformed(format!("bad grid cell {tok:?}")))
                })
                .collect();
            rows.push(row?);
        }
        Self::import(rows, None)
    }
}
