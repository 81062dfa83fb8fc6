#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// Reference order-8 square (p = 2, r = 3).
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

/// Reference order-9 square (p = 3, r = 2).
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

/// Command for the compiled binary with the search budget variable cleared,
/// so ambient environment cannot leak into budget tests.
pub fn mps() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mps"));
    cmd.env_remove("MPS_SEARCH_BUDGET");
    cmd
}

pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = mps().args(args).output().expect("binary should spawn");
    capture(out)
}

pub fn capture(out: Output) -> (i32, String, String) {
    let code = out.status.code().expect("binary should exit, not be killed");
    let stdout = String::from_utf8(out.stdout).expect("stdout should be utf-8");
    let stderr = String::from_utf8(out.stderr).expect("stderr should be utf-8");
    (code, stdout, stderr)
}

/// Parses whitespace-separated grid text into numeric rows.
pub fn parse_grid(text: &str) -> Vec<Vec<u64>> {
    parse_rows(text, char::is_whitespace)
}

/// Parses comma-separated grid text into numeric rows.
pub fn parse_csv(text: &str) -> Vec<Vec<u64>> {
    parse_rows(text, |c| c == ',')
}

fn parse_rows(text: &str, sep: impl Fn(char) -> bool + Copy) -> Vec<Vec<u64>> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            line.split(sep)
                .filter(|tok| !tok.is_empty())
                .map(|tok| tok.trim().parse().expect("grid token should be numeric"))
                .collect()
        })
        .collect()
}

pub fn rows_of<const N: usize>(golden: &[[u64; N]]) -> Vec<Vec<u64>> {
    golden.iter().map(|row| row.to_vec()).collect()
}

/// Per-test scratch path under the system temp directory.
pub fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("mps-cli-{}-{}", std::process::id(), name))
}
