//! Shared fixtures for the benchmark targets.

use mpat_core::{Coord, Family, Tensor01};

pub fn identity(k: usize) -> Tensor01 {
    let ones: Vec<Coord> = (1..=k).map(|i| vec![i, i]).collect();
    Tensor01::from_ones(vec![k, k], &ones).expect("identity fits")
}

/// Extremal I_k avoider: every cell in the first k-1 rows or first k-1
/// columns. Weight (k-1)(2n-(k-1)), and any increasing chain of length k
/// would need a 1 outside both bands.
pub fn cross(n: usize, k: usize) -> Tensor01 {
    let mut ones: Vec<Coord> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i < k || j < k {
                ones.push(vec![i, j]);
            }
        }
    }
    Tensor01::from_ones(vec![n, n], &ones).expect("cross fits")
}

pub fn single_one_2x2() -> Family {
    Family::single(Tensor01::from_ones(vec![2, 2], &[vec![2, 2]]).expect("single one"))
}
