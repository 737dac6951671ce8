//! Vector matroids M\[A\] over a prime field: rank and independence of label
//! sets, closure, greedy basis extension, and contraction by the
//! pivot-and-delete procedure on representations.
//!
//! Ground-set labels are opaque integers carried verbatim through
//! contraction, so callers can track distinguished elements across minors.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FieldMatrix;

/// A subset of a matroid's ground set.
pub type LabelSet = BTreeSet<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorMatroid {
    rep: FieldMatrix,
    labels: Vec<u32>,
}

/// Enumeration guard for `check_axioms`.
pub const AXIOM_CHECK_MAX_GROUND: usize = 12;

impl VectorMatroid {
    pub fn new(rep: FieldMatrix, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != rep.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} columns",
                labels.len(),
                rep.cols()
            )));
        }
        let mut seen = BTreeSet::new();
        for &l in &labels {
            if !seen.insert(l) {
                return Err(Error::MalformedCertificate(format!(
                    "duplicate ground label {l}"
                )));
            }
        }
        Ok(VectorMatroid { rep, labels })
    }

    /// Labels 1..=cols, the usual convention for freshly built matroids.
    pub fn from_matrix(rep: FieldMatrix) -> Self {
        let labels = (1..=rep.cols() as u32).collect();
        VectorMatroid { rep, labels }
    }

    pub fn field(&self) -> PrimeField {
        self.rep.field()
    }

    pub fn representation(&self) -> &FieldMatrix {
        &self.rep
    }

    /// Ground set E(M) in column order.
    pub fn ground_set(&self) -> &[u32] {
        &self.labels
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn contains(&self, label: u32) -> bool {
        self.labels.contains(&label)
    }

    /// Rank of the whole matroid, r(M).
    pub fn rank(&self) -> usize {
        self.rep.rank()
    }

    fn position(&self, label: u32) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel { label })
    }

    fn positions(&self, set: &LabelSet) -> Result<Vec<usize>> {
        set.iter().map(|&l| self.position(l)).collect()
    }

    /// r_M(S): rank of the column submatrix selected by S.
    pub fn rank_of(&self, set: &LabelSet) -> Result<usize> {
        let cols = self.positions(set)?;
        Ok(self.rep.select_cols(&cols).rank())
    }

    pub fn is_independent(&self, set: &LabelSet) -> Result<bool> {
        Ok(self.rank_of(set)? == set.len())
    }

    /// cl_M(S) = { e : r(S ∪ e) = r(S) }. Always contains S.
    pub fn closure(&self, set: &LabelSet) -> Result<LabelSet> {
        let base_cols = self.positions(set)?;
        let base_rank = self.rep.select_cols(&base_cols).rank();
        let mut out = set.clone();
        for (pos, &label) in self.labels.iter().enumerate() {
            if out.contains(&label) {
                continue;
            }
            let mut cols = base_cols.clone();
            cols.push(pos);
            if self.rep.select_cols(&cols).rank() == base_rank {
                out.insert(label);
            }
        }
        Ok(out)
    }

    /// Extend an independent set to a basis by a greedy scan in ground-set
    /// order; deterministic.
    pub fn extend_to_basis(&self, set: &LabelSet) -> Result<LabelSet> {
        if !self.is_independent(set)? {
            return Err(Error::DependentSet);
        }
        let mut cols = self.positions(set)?;
        let mut rank = cols.len();
        let target = self.rank();
        let mut basis = set.clone();
        for (pos, &label) in self.labels.iter().enumerate() {
            if rank == target {
                break;
            }
            if basis.contains(&label) {
                continue;
            }
            let mut candidate = cols.clone();
            candidate.push(pos);
            if self.rep.select_cols(&candidate).rank() == rank + 1 {
                cols = candidate;
                rank += 1;
                basis.insert(label);
            }
        }
        Ok(basis)
    }

    /// A maximal independent subset of T (greedy in ground-set order); the
    /// B_T of the contraction definition.
    pub fn max_independent_within(&self, set: &LabelSet) -> Result<LabelSet> {
        let mut cols: Vec<usize> = Vec::new();
        let mut out = LabelSet::new();
        for &label in set {
            let pos = self.position(label)?;
            let mut candidate = cols.clone();
            candidate.push(pos);
            if self.rep.select_cols(&candidate).rank() == cols.len() + 1 {
                cols = candidate;
                out.insert(label);
            }
        }
        Ok(out)
    }

    /// The contraction M/T, computed on the representation: for each t ∈ T in
    /// increasing label order, a zero column (a loop) is simply deleted,
    /// otherwise the column is pivoted to a single nonzero entry and that row
    /// and column are removed.
    pub fn contract(&self, set: &LabelSet) -> Result<VectorMatroid> {
        for &l in set {
            self.position(l)?;
        }
        let mut rep = self.rep.clone();
        let mut labels = self.labels.clone();
        for &t in set {
            let pos = labels.iter().position(|&l| l == t).expect("checked above");
            let col = rep.column(pos);
            match col.support().first().copied() {
                None => {
                    rep.remove_col(pos);
                    labels.remove(pos);
                }
                Some(pivot_row) => {
                    let inv = rep.field().inv(col.get(pivot_row));
                    rep.scale_row(pivot_row, inv);
                    for r in 0..rep.rows() {
                        if r != pivot_row && rep.get(r, pos) != 0 {
                            let factor = rep.field().neg(rep.get(r, pos));
                            rep.add_scaled_row(pivot_row, factor, r);
                        }
                    }
                    rep.remove_row(pivot_row);
                    rep.remove_col(pos);
                    labels.remove(pos);
                }
            }
        }
        Ok(VectorMatroid { rep, labels })
    }

    /// Exhaustively verify the independence axioms I1–I3 over all subsets.
    /// True for every vector matroid; used as a property-test oracle on
    /// contraction outputs. Guarded to small ground sets.
    pub fn check_axioms(&self) -> Result<bool> {
        let e = self.ground_size();
        if e > AXIOM_CHECK_MAX_GROUND {
            return Err(Error::GroundSetTooLarge {
                size: e,
                max: AXIOM_CHECK_MAX_GROUND,
            });
        }
        let total = 1usize << e;
        let mut independent = vec![false; total];
        for (mask, slot) in independent.iter_mut().enumerate() {
            let cols: Vec<usize> = (0..e).filter(|&i| mask >> i & 1 == 1).collect();
            *slot = self.rep.select_cols(&cols).rank() == cols.len();
        }
        // I1: the empty set is independent
        if !independent[0] {
            return Ok(false);
        }
        // I2: hereditary — removing any single element preserves independence
        for mask in 0..total {
            if !independent[mask] {
                continue;
            }
            for i in 0..e {
                if mask >> i & 1 == 1 && !independent[mask & !(1 << i)] {
                    return Ok(false);
                }
            }
        }
        // I3: augmentation
        let indep_masks: Vec<usize> = (0..total).filter(|&m| independent[m]).collect();
        for &m1 in &indep_masks {
            let c1 = m1.count_ones();
            for &m2 in &indep_masks {
                if m2.count_ones() <= c1 {
                    continue;
                }
                let candidates = m2 & !m1;
                let found = (0..e).any(|i| candidates >> i & 1 == 1 && independent[m1 | (1 << i)]);
                if !found {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
