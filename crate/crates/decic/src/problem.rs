//! The index-coding problem quadruple (m, n, χ, f), per-receiver error
//! demands, candidate code matrices and error patterns.
//!
//! Internally every message/transmission index is 0-based; the file formats
//! and rendered reports use the 1-based convention.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{vec_mat_mul, FieldMatrix, FieldVector};

/// One sender, `n` messages over F_q, `m` receivers. Receiver i knows the
/// messages in `side_info[i]` and demands message `demands[i]`, which it must
/// not already hold.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Problem {
    field: PrimeField,
    message_count: usize,
    side_info: Vec<BTreeSet<usize>>,
    demands: Vec<usize>,
}

impl Problem {
    /// Validates all problem invariants: indices in range, f(i) ∉ χ_i.
    pub fn new(
        field: PrimeField,
        message_count: usize,
        side_info: Vec<BTreeSet<usize>>,
        demands: Vec<usize>,
    ) -> Result<Self> {
        if message_count == 0 {
            return Err(Error::BadProblem("no messages (n = 0)".into()));
        }
        if side_info.len() != demands.len() {
            return Err(Error::BadProblem(format!(
                "{} side-information sets for {} demands",
                side_info.len(),
                demands.len()
            )));
        }
        if side_info.is_empty() {
            return Err(Error::BadProblem("no receivers (m = 0)".into()));
        }
        for (i, (chi, &f)) in side_info.iter().zip(&demands).enumerate() {
            if f >= message_count {
                return Err(Error::IndexOutOfRange {
                    receiver: i + 1,
                    index: f + 1,
                    n: message_count,
                });
            }
            if let Some(&bad) = chi.iter().find(|&&j| j >= message_count) {
                return Err(Error::IndexOutOfRange {
                    receiver: i + 1,
                    index: bad + 1,
                    n: message_count,
                });
            }
            if chi.contains(&f) {
                return Err(Error::DemandInSideInfo { receiver: i + 1 });
            }
        }
        Ok(Problem {
            field,
            message_count,
            side_info,
            demands,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn message_count(&self) -> usize {
        self.message_count
    }

    pub fn receiver_count(&self) -> usize {
        self.demands.len()
    }

    pub fn side_info(&self, receiver: usize) -> &BTreeSet<usize> {
        &self.side_info[receiver]
    }

    pub fn demand(&self, receiver: usize) -> usize {
        self.demands[receiver]
    }

    /// χ̄_i = ⌈n⌋ − χ_i, sorted increasing. Always contains f(i).
    pub fn complement(&self, receiver: usize) -> Vec<usize> {
        (0..self.message_count)
            .filter(|j| !self.side_info[receiver].contains(j))
            .collect()
    }

    /// Position of f(i) within χ̄_i in increasing order.
    pub fn demand_position(&self, receiver: usize) -> usize {
        let f = self.demands[receiver];
        self.complement(receiver)
            .iter()
            .position(|&j| j == f)
            .expect("f(i) ∈ χ̄_i by construction")
    }
}

/// Per-receiver error demands δ_1..δ_m; δ_i = 0 means no correction demanded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ErrorProfile {
    deltas: Vec<usize>,
}

impl ErrorProfile {
    pub fn new(deltas: Vec<usize>) -> Self {
        ErrorProfile { deltas }
    }

    pub fn uniform(receivers: usize, delta: usize) -> Self {
        ErrorProfile {
            deltas: vec![delta; receivers],
        }
    }

    pub fn delta(&self, receiver: usize) -> usize {
        self.deltas[receiver]
    }

    pub fn deltas(&self) -> &[usize] {
        &self.deltas
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    /// True when `other` demands no more correction anywhere.
    pub fn dominates(&self, other: &ErrorProfile) -> bool {
        self.deltas.len() == other.deltas.len()
            && self.deltas.iter().zip(&other.deltas).all(|(a, b)| b <= a)
    }
}

/// A scalar linear index code: the n×N matrix L whose columns are the N
/// transmissions. The broadcast for source vector x is xL.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndexCode {
    matrix: FieldMatrix,
}

impl IndexCode {
    pub fn new(matrix: FieldMatrix) -> Result<Self> {
        if matrix.cols() == 0 {
            return Err(Error::DimensionMismatch(
                "index code must have length N ≥ 1".into(),
            ));
        }
        Ok(IndexCode { matrix })
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    /// Code length N (number of transmissions).
    pub fn length(&self) -> usize {
        self.matrix.cols()
    }

    pub fn message_count(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    /// The broadcast xL.
    pub fn encode(&self, x: &FieldVector) -> Result<FieldVector> {
        vec_mat_mul(x, &self.matrix)
    }

    /// 0-based indices of zero columns (transmissions that send nothing).
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.matrix.cols())
            .filter(|&c| self.matrix.is_zero_column(c))
            .collect()
    }

    /// Consistency with a problem: same field, one row per message.
    pub fn check_against(&self, problem: &Problem) -> Result<()> {
        if self.field() != problem.field() {
            return Err(Error::FieldMismatch {
                left: self.field().q(),
                right: problem.field().q(),
            });
        }
        if self.message_count() != problem.message_count() {
            return Err(Error::DimensionMismatch(format!(
                "code has {} rows for {} messages",
                self.message_count(),
                problem.message_count()
            )));
        }
        Ok(())
    }
}

/// An error pattern: the support set of an error vector, as 0-based
/// transmission indices. Used with size |F| = 2δ_i at receiver i.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct ErrorPattern {
    indices: BTreeSet<usize>,
}

impl ErrorPattern {
    pub fn new(indices: BTreeSet<usize>) -> Self {
        ErrorPattern { indices }
    }

    pub fn from_slice(indices: &[usize]) -> Self {
        ErrorPattern {
            indices: indices.iter().copied().collect(),
        }
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn as_sorted_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }
}

impl std::fmt::Display for ErrorPattern {
    /// Renders 1-based: `{1,2}`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// All k-subsets of {0..n-1} in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
