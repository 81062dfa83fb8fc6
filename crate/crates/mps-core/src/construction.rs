//! Builders for the linear maps that generate most-perfect squares.
//!
//! The chain: a staircase pattern on r digits, its block assembly on all 2r
//! digits, a rank-preserving shift of that assembly, and finally the
//! construction matrix obtained by column corrections. The diagonal step
//! vector is the symbol increment along the main broken diagonals.
//!
//! All index arithmetic below is 0-based; the defining patterns are stated
//! in terms of 0-based row i and column j.

use crate::codec::ConstructionParams;
use crate::error::{Error, Result};
use crate::zp::{ZpMatrix, ZpVector};

/// The r x r 0/1 staircase: ones on and below the anti-diagonal,
/// i.e. entry (i, j) = 1 iff i + j >= r - 1.
pub fn staircase(params: ConstructionParams) -> ZpMatrix {
    let r = params.r() as usize;
    let mut entries = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            entries.push(u64::from(i + j >= r - 1));
        }
    }
    ZpMatrix::from_canonical(params.p(), r, r, entries)
}

/// The 2r x 2r block assembly with the staircase in the off-diagonal blocks
/// and zero blocks on the diagonal.
pub fn staircase_block(params: ConstructionParams) -> ZpMatrix {
    let r = params.r() as usize;
    let dim = 2 * r;
    let steps = staircase(params);
    let mut entries = vec![0u64; dim * dim];
    for i in 0..r {
        for j in 0..r {
            let v = steps.at(i, j);
            entries[i * dim + (r + j)] = v;
            entries[(r + i) * dim + j] = v;
        }
    }
    ZpMatrix::from_canonical(params.p(), dim, dim, entries)
}

/// The block assembly with 1 subtracted from rows 0 and r of every column,
/// so that each shifted column plus the two-row indicator restores the
/// original column. Nonsingular for every supported (p, r).
pub fn shifted_staircase(params: ConstructionParams) -> ZpMatrix {
    let p = params.p();
    let r = params.r() as usize;
    let block = staircase_block(params);
    let dim = 2 * r;
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut v = block.at(i, j);
            if i == 0 || i == r {
                v = (v + p - 1) % p;
            }
            entries.push(v);
        }
    }
    ZpMatrix::from_canonical(p, dim, dim, entries)
}

/// Adds `sign` times column `src` of `m` into column `dst`.
fn add_column(m: &mut ZpMatrix, dst: usize, src: usize, sign: i64) {
    let p = m.modulus();
    let factor = sign.rem_euclid(p as i64) as u64;
    for i in 0..m.rows() {
        let v = (m.at(i, dst) + factor * m.at(i, src)) % p;
        m.set(i, dst, v);
    }
}

/// The construction matrix: the shifted staircase with columns r-1 and
/// 2r-1 corrected by an alternating sum of earlier columns in the same
/// half. For r = 2 the correction is empty and the two matrices coincide.
pub fn construction_matrix(params: ConstructionParams) -> ZpMatrix {
    let r = params.r() as usize;
    let mut m = shifted_staircase(params);
    // 1-based column c of the source matrix is 0-based c - 1 here; the sum
    // runs over offsets 2..r-1 exclusive of r itself, empty when r = 2.
    for offset in 2..r {
        let sign = if offset % 2 == 0 { -1 } else { 1 };
        add_column(&mut m, r - 1, r - 1 - offset, sign);
        add_column(&mut m, 2 * r - 1, 2 * r - 1 - offset, sign);
    }
    m
}

/// The symbol step along the main broken diagonals: alternating plus/minus
/// ones repeated over both halves, nonzero in every component. Satisfies
/// construction_matrix * diagonal_step = step_target.
pub fn diagonal_step(params: ConstructionParams) -> ZpVector {
    let r = params.r() as usize;
    let mut half: Vec<i64> = Vec::with_capacity(r);
    for k in 1..=r {
        half.push(if (r + k) % 2 == 0 { 1 } else { -1 });
    }
    let mut signs = half.clone();
    signs.extend(half);
    ZpVector::new(params.p(), &signs).expect("params guarantee a prime modulus")
}

/// The image that the diagonal step must map to: ones in components 0 and r.
pub fn step_target(params: ConstructionParams) -> ZpVector {
    let dim = params.dim();
    let mut entries = vec![0i64; dim];
    entries[0] = 1;
    entries[dim / 2] = 1;
    ZpVector::new(params.p(), &entries).expect("params guarantee a prime modulus")
}

/// Solves `m * x = step_target` and keeps the solution only when every
/// component is nonzero, the shape a diagonal step must have. Returns
/// `None` when the solution has a zero component; errors if `m` is
/// singular or of the wrong shape.
pub fn find_diagonal_step(m: &ZpMatrix, params: ConstructionParams) -> Result<Option<ZpVector>> {
    if m.rows() != params.dim() || m.cols() != params.dim() {
        return Err(Error::DimensionMismatch(format!(
            "expected a {0}x{0} matrix, got {1}x{2}",
            params.dim(),
            m.rows(),
            m.cols()
        )));
    }
    if m.modulus() != params.p() {
        return Err(Error::ModulusMismatch {
            lhs: params.p(),
            rhs: m.modulus(),
        });
    }
    let x = m.solve(&step_target(params))?;
    Ok(if x.iter().all(|v| v != 0) {
        Some(x)
    } else {
        None
    })
}
