//! Shared unit-test fixtures: the four worked instances used throughout the
//! test suite, plus small helpers.

use std::collections::BTreeSet;

use crate::field::PrimeField;
use crate::matrix::FieldMatrix;
use crate::problem::{ErrorProfile, IndexCode, Problem};

pub(crate) fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn sets(groups: &[&[usize]]) -> Vec<BTreeSet<usize>> {
    groups.iter().map(|g| g.iter().copied().collect()).collect()
}

/// Differential instance: m=n=3, χ1={2}, χ2={1,3}, χ3={1,2} (1-based),
/// δ=(2,1,1), length-7 code.
pub(crate) fn example1() -> (Problem, ErrorProfile, IndexCode) {
    let p = Problem::new(f2(), 3, sets(&[&[1], &[0, 2], &[0, 1]]), vec![0, 1, 2]).unwrap();
    let l = FieldMatrix::from_rows(
        f2(),
        &[
            vec![1, 1, 1, 1, 0, 1, 0],
            vec![0, 0, 1, 0, 1, 1, 0],
            vec![0, 1, 0, 1, 1, 0, 1],
        ],
    )
    .unwrap();
    (
        p,
        ErrorProfile::new(vec![2, 1, 1]),
        IndexCode::new(l).unwrap(),
    )
}

/// Differential instance: m=n=5, δ=(1,2,2,1,1), length-8 code.
pub(crate) fn example2() -> (Problem, ErrorProfile, IndexCode) {
    let p = Problem::new(
        f2(),
        5,
        sets(&[&[1, 4], &[0, 2], &[1, 3], &[2, 4], &[0, 3]]),
        vec![0, 1, 2, 3, 4],
    )
    .unwrap();
    let l = FieldMatrix::from_rows(
        f2(),
        &[
            vec![1, 1, 1, 1, 0, 0, 0, 0],
            vec![0, 1, 1, 1, 0, 1, 1, 0],
            vec![1, 1, 0, 0, 1, 1, 1, 0],
            vec![0, 1, 0, 0, 1, 0, 1, 1],
            vec![1, 0, 0, 1, 0, 0, 1, 1],
        ],
    )
    .unwrap();
    (
        p,
        ErrorProfile::new(vec![1, 2, 2, 1, 1]),
        IndexCode::new(l).unwrap(),
    )
}

/// Complete side information, all-ones 3×3 code, uniform single error
/// correction.
pub(crate) fn example3() -> (Problem, ErrorProfile, IndexCode) {
    let p = complete_side_info_problem(3);
    let l = FieldMatrix::from_rows(f2(), &[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
    (p, ErrorProfile::uniform(3, 1), IndexCode::new(l).unwrap())
}

/// Same problem as [`example3`] but with a code that protects only R1:
/// δ=(1,0,0).
pub(crate) fn example4() -> (Problem, ErrorProfile, IndexCode) {
    let p = complete_side_info_problem(3);
    let l = FieldMatrix::from_rows(f2(), &[vec![1, 1, 1], vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
    (
        p,
        ErrorProfile::new(vec![1, 0, 0]),
        IndexCode::new(l).unwrap(),
    )
}

/// m=n receivers, χ_i = everything except f(i)=i.
pub(crate) fn complete_side_info_problem(n: usize) -> Problem {
    let side: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).collect())
        .collect();
    Problem::new(f2(), n, side, (0..n).collect()).unwrap()
}

/// No side information at all, f(i)=i, together with the identity code.
pub(crate) fn identity_code_empty_side_info(n: usize) -> (Problem, IndexCode) {
    let p = Problem::new(f2(), n, vec![BTreeSet::new(); n], (0..n).collect()).unwrap();
    let c = IndexCode::new(FieldMatrix::identity(f2(), n)).unwrap();
    (p, c)
}
