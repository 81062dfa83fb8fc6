//! Shared fixtures: the two published reference squares, transcribed
//! cell-for-cell, and builders for constructed squares.

#![allow(dead_code)]

use mps_core::codec::ConstructionParams;
use mps_core::construction::construction_matrix;
use mps_core::square::Square;

pub const GOLDEN_ORDER8: [[u64; 8]; 8] = [
    [0, 31, 48, 47, 56, 39, 8, 23],
    [59, 36, 11, 20, 3, 28, 51, 44],
    [6, 25, 54, 41, 62, 33, 14, 17],
    [61, 34, 13, 18, 5, 26, 53, 42],
    [7, 24, 55, 40, 63, 32, 15, 16],
    [60, 35, 12, 19, 4, 27, 52, 43],
    [1, 30, 49, 46, 57, 38, 9, 22],
    [58, 37, 10, 21, 2, 29, 50, 45],
];

pub const GOLDEN_ORDER9: [[u64; 9]; 9] = [
    [0, 16, 23, 63, 79, 59, 45, 34, 41],
    [64, 80, 57, 46, 35, 39, 1, 17, 21],
    [47, 33, 40, 2, 15, 22, 65, 78, 58],
    [7, 14, 18, 70, 77, 54, 52, 32, 36],
    [71, 75, 55, 53, 30, 37, 8, 12, 19],
    [51, 31, 38, 6, 13, 20, 69, 76, 56],
    [5, 9, 25, 68, 72, 61, 50, 27, 43],
    [66, 73, 62, 48, 28, 44, 3, 10, 26],
    [49, 29, 42, 4, 11, 24, 67, 74, 60],
];

pub fn golden_order8() -> Square {
    Square::from_grid(GOLDEN_ORDER8.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn golden_order9() -> Square {
    Square::from_grid(GOLDEN_ORDER9.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn params(p: u64, r: u32) -> ConstructionParams {
    ConstructionParams::new(p, r).unwrap()
}

pub fn built(p: u64, r: u32) -> Square {
    let pr = params(p, r);
    Square::build(&construction_matrix(pr), pr).unwrap()
}
