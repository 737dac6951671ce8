//! On-disk formats: TOML instance files (problem + error profile + optional
//! code matrix) and certificate files. All indices and labels in files are
//! 1-based, mirroring the usual notation, and are converted at this
//! boundary.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bridge::{Certificate, GroundMap};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FieldMatrix;
use crate::matroid::VectorMatroid;
use crate::problem::{ErrorProfile, IndexCode, Problem};

/// ```toml
/// q = 2
/// m = 3
/// n = 3
/// side_info = [[2], [1, 3], [1, 2]]
/// demands = [1, 2, 3]
/// deltas = [2, 1, 1]
/// code = [
///     [1, 1, 1, 1, 0, 1, 0],
///     [0, 0, 1, 0, 1, 1, 0],
///     [0, 1, 0, 1, 1, 0, 1],
/// ]
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub q: u16,
    pub m: usize,
    pub n: usize,
    pub side_info: Vec<Vec<usize>>,
    pub demands: Vec<usize>,
    pub deltas: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<Vec<Vec<i64>>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("instance serialization cannot fail")
    }

    /// Validate and convert to library types (1-based → 0-based).
    pub fn to_parts(&self) -> Result<(Problem, ErrorProfile, Option<IndexCode>)> {
        let field = PrimeField::new(self.q)?;
        if self.side_info.len() != self.m {
            return Err(Error::Parse(format!(
                "side_info has {} entries, m = {}",
                self.side_info.len(),
                self.m
            )));
        }
        if self.demands.len() != self.m || self.deltas.len() != self.m {
            return Err(Error::Parse(format!(
                "demands/deltas must have m = {} entries",
                self.m
            )));
        }
        let mut side = Vec::with_capacity(self.m);
        for (i, chi) in self.side_info.iter().enumerate() {
            let mut set = BTreeSet::new();
            for &j in chi {
                if j == 0 {
                    return Err(Error::IndexOutOfRange {
                        receiver: i + 1,
                        index: 0,
                        n: self.n,
                    });
                }
                set.insert(j - 1);
            }
            side.push(set);
        }
        let mut demands = Vec::with_capacity(self.m);
        for (i, &f) in self.demands.iter().enumerate() {
            if f == 0 {
                return Err(Error::IndexOutOfRange {
                    receiver: i + 1,
                    index: 0,
                    n: self.n,
                });
            }
            demands.push(f - 1);
        }
        let problem = Problem::new(field, self.n, side, demands)?;
        let profile = ErrorProfile::new(self.deltas.clone());
        let code = match &self.code {
            None => None,
            Some(rows) => {
                if rows.len() != self.n {
                    return Err(Error::Parse(format!(
                        "code has {} rows, n = {}",
                        rows.len(),
                        self.n
                    )));
                }
                let matrix = FieldMatrix::from_rows(field, rows)?;
                let code = IndexCode::new(matrix)?;
                code.check_against(&problem)?;
                Some(code)
            }
        };
        Ok((problem, profile, code))
    }

    pub fn from_parts(problem: &Problem, profile: &ErrorProfile, code: Option<&IndexCode>) -> Self {
        InstanceFile {
            q: problem.field().q(),
            m: problem.receiver_count(),
            n: problem.message_count(),
            side_info: (0..problem.receiver_count())
                .map(|i| problem.side_info(i).iter().map(|&j| j + 1).collect())
                .collect(),
            demands: (0..problem.receiver_count())
                .map(|i| problem.demand(i) + 1)
                .collect(),
            deltas: profile.deltas().to_vec(),
            code: code.map(|c| {
                (0..c.message_count())
                    .map(|r| c.matrix().row(r).iter().map(|&v| v as i64).collect())
                    .collect()
            }),
        }
    }
}

/// ```toml
/// q = 2
/// labels = [1, 2, 3, 4, 5, 6, 7, 8, 9]
/// rep = [[1, 0, ...], ...]
/// message_labels = [1, 2, 3]
/// code_labels = [7, 8, 9]
/// basis = [1, 2, 3, 4, 5, 6]
/// basis_tail = [4, 5, 6]
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub q: u16,
    pub labels: Vec<u32>,
    pub rep: Vec<Vec<i64>>,
    pub message_labels: Vec<u32>,
    pub code_labels: Vec<u32>,
    pub basis: Vec<u32>,
    pub basis_tail: Vec<u32>,
}

impl CertificateFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("certificate serialization cannot fail")
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        let field = PrimeField::new(self.q)?;
        let rep = FieldMatrix::from_rows(field, &self.rep)?;
        let matroid = VectorMatroid::new(rep, self.labels.clone())?;
        Ok(Certificate {
            matroid,
            map: GroundMap {
                message_labels: self.message_labels.clone(),
                code_labels: self.code_labels.clone(),
            },
            basis: self.basis.iter().copied().collect(),
            basis_tail: self.basis_tail.clone(),
        })
    }

    pub fn from_certificate(cert: &Certificate) -> Self {
        let rep = cert.matroid.representation();
        CertificateFile {
            q: cert.matroid.field().q(),
            labels: cert.matroid.ground_set().to_vec(),
            rep: (0..rep.rows())
                .map(|r| rep.row(r).iter().map(|&v| v as i64).collect())
                .collect(),
            message_labels: cert.map.message_labels.clone(),
            code_labels: cert.map.code_labels.clone(),
            basis: cert.basis.iter().copied().collect(),
            basis_tail: cert.basis_tail.clone(),
        }
    }
}
