//! The code ↔ matroid correspondence.
//!
//! A certificate is a vector matroid on n + 2N elements of rank n + N, a
//! ground map g sending messages and code symbols into the ground set, and a
//! distinguished basis B ⊇ g(⌈n⌋) whose tail b_{n+1}..b_{n+N} is *ordered*:
//! condition B2 pairs b_{n+i} with the i-th code symbol and condition C
//! removes tail elements by transmission index, so the pairing is semantic
//! even though set notation leaves it implicit.
//!
//! Conditions:
//!   (A)  g is one-one on messages and g(⌈n⌋) is independent;
//!   (B1) g(c_i) ∉ cl(B − g(⌈n⌋)) for every i;
//!   (B2) r(g(⌈n⌋) ∪ b_{n+i} ∪ g(c_i)) = r(g(⌈n⌋) ∪ b_{n+i}) = r(g(⌈n⌋) ∪ g(c_i));
//!   (C)  for every receiver i and pattern F with |F| = 2δ_i, contracting
//!        B_{F̄,i} = B − g(χ̄_i) − {b_{n+j} : j ∈ F} leaves g(f(i)) inside the
//!        span of the code labels.
//!
//! `code_to_certificate` and `certificate_to_code` realize the two
//! constructive directions; `equivalence_harness` runs all three oracles and
//! reports whether they agree.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::matrix::{FieldMatrix, FieldVector};
use crate::matroid::{LabelSet, VectorMatroid};
use crate::problem::{combinations, ErrorPattern, ErrorProfile, IndexCode, Problem};
use crate::verify::{verify_rank, verify_weight, ReceiverVerdict, VerifierReport, Witness};

/// g restricted to its two domains, as label lists: `message_labels[i]` is
/// g(i+1) and `code_labels[j]` is g(c_{j+1}).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroundMap {
    pub message_labels: Vec<u32>,
    pub code_labels: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub matroid: VectorMatroid,
    pub map: GroundMap,
    pub basis: LabelSet,
    /// b_{n+1}, …, b_{n+N} in pairing order (= B − g(⌈n⌋) as a set).
    pub basis_tail: Vec<u32>,
}

impl Certificate {
    pub fn message_count(&self) -> usize {
        self.map.message_labels.len()
    }

    pub fn code_length(&self) -> usize {
        self.map.code_labels.len()
    }

    /// Definition-level shape: ground-set size n + 2N, rank n + N, a genuine
    /// basis containing the message labels, and a tail that is exactly
    /// B − g(⌈n⌋) in some order. Violations are malformed certificates,
    /// rejected before any condition is evaluated.
    pub fn validate_shape(&self) -> Result<()> {
        let n = self.message_count();
        let n_len = self.code_length();
        if n == 0 || n_len == 0 {
            return Err(Error::MalformedCertificate(
                "empty message or code label list".into(),
            ));
        }
        let expected_ground = n + 2 * n_len;
        if self.matroid.ground_size() != expected_ground {
            return Err(Error::MalformedCertificate(format!(
                "ground set has {} elements, expected n + 2N = {}",
                self.matroid.ground_size(),
                expected_ground
            )));
        }
        let expected_rank = n + n_len;
        if self.matroid.rank() != expected_rank {
            return Err(Error::MalformedCertificate(format!(
                "matroid rank {} ≠ n + N = {}",
                self.matroid.rank(),
                expected_rank
            )));
        }
        for &l in self.map.message_labels.iter().chain(&self.map.code_labels) {
            if !self.matroid.contains(l) {
                return Err(Error::MalformedCertificate(format!(
                    "g maps to unknown label {l}"
                )));
            }
        }
        for &l in self.basis.iter().chain(&self.basis_tail) {
            if !self.matroid.contains(l) {
                return Err(Error::MalformedCertificate(format!(
                    "basis uses unknown label {l}"
                )));
            }
        }
        if self.basis.len() != expected_rank {
            return Err(Error::MalformedCertificate(format!(
                "basis has {} elements, expected {}",
                self.basis.len(),
                expected_rank
            )));
        }
        if !self.matroid.is_independent(&self.basis)? {
            return Err(Error::MalformedCertificate(
                "stored basis is dependent".into(),
            ));
        }
        let msg_set: LabelSet = self.map.message_labels.iter().copied().collect();
        if !msg_set.iter().all(|l| self.basis.contains(l)) {
            return Err(Error::MalformedCertificate(
                "basis does not contain g(⌈n⌋)".into(),
            ));
        }
        if self.basis_tail.len() != n_len {
            return Err(Error::MalformedCertificate(format!(
                "basis tail has {} elements, expected N = {}",
                self.basis_tail.len(),
                n_len
            )));
        }
        let tail_set: LabelSet = self.basis_tail.iter().copied().collect();
        if tail_set.len() != self.basis_tail.len() {
            return Err(Error::MalformedCertificate(
                "basis tail has repeated labels".into(),
            ));
        }
        let expected_tail: LabelSet = self.basis.difference(&msg_set).copied().collect();
        if tail_set != expected_tail {
            return Err(Error::MalformedCertificate(
                "basis tail is not B − g(⌈n⌋)".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConditionAFailure {
    DuplicateMessageLabel(u32),
    DependentMessages,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConditionA {
    pub ok: bool,
    pub failure: Option<ConditionAFailure>,
}

/// Per code symbol: did B1 and B2 hold?
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SymbolConditions {
    pub b1: bool,
    pub b2: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConditionB {
    pub ok: bool,
    pub per_symbol: Vec<SymbolConditions>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BridgeWitness {
    ConditionA(ConditionAFailure),
    /// 0-based code symbol index with its per-part verdicts.
    ConditionB {
        symbol: usize,
        b1: bool,
        b2: bool,
    },
    /// 0-based receiver with the violating error pattern.
    ConditionC {
        receiver: usize,
        pattern: ErrorPattern,
    },
}

impl std::fmt::Display for BridgeWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BridgeWitness::ConditionA(ConditionAFailure::DuplicateMessageLabel(l)) => {
                write!(f, "condition A: g repeats label {l} on messages")
            }
            BridgeWitness::ConditionA(ConditionAFailure::DependentMessages) => {
                write!(f, "condition A: g(⌈n⌋) is dependent")
            }
            BridgeWitness::ConditionB { symbol, b1, b2 } => {
                write!(f, "condition B at c_{}: B1={} B2={}", symbol + 1, b1, b2)
            }
            BridgeWitness::ConditionC { receiver, pattern } => {
                write!(f, "condition C at R{}: pattern={}", receiver + 1, pattern)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BridgeReport {
    pub condition_a: ConditionA,
    pub condition_b: ConditionB,
    /// Present only when A and B both hold (C is evaluated last).
    pub condition_c: Option<VerifierReport>,
    pub overall: bool,
    pub witness: Option<BridgeWitness>,
}

/// Condition (A): g one-one on messages, g(⌈n⌋) independent.
pub fn check_condition_a(cert: &Certificate, problem: &Problem) -> Result<ConditionA> {
    if cert.message_count() != problem.message_count() {
        return Err(Error::DimensionMismatch(format!(
            "certificate has {} message labels for {} messages",
            cert.message_count(),
            problem.message_count()
        )));
    }
    let mut seen = BTreeSet::new();
    for &l in &cert.map.message_labels {
        if !seen.insert(l) {
            return Ok(ConditionA {
                ok: false,
                failure: Some(ConditionAFailure::DuplicateMessageLabel(l)),
            });
        }
    }
    if !cert.matroid.is_independent(&seen)? {
        return Ok(ConditionA {
            ok: false,
            failure: Some(ConditionAFailure::DependentMessages),
        });
    }
    Ok(ConditionA {
        ok: true,
        failure: None,
    })
}

/// Conditions (B1) and (B2) for every code symbol.
pub fn check_condition_b(cert: &Certificate) -> Result<ConditionB> {
    let msg_set: LabelSet = cert.map.message_labels.iter().copied().collect();
    let tail: LabelSet = cert.basis.difference(&msg_set).copied().collect();
    let tail_closure = cert.matroid.closure(&tail)?;

    let mut per_symbol = Vec::with_capacity(cert.code_length());
    for (i, &code_label) in cert.map.code_labels.iter().enumerate() {
        if !cert.matroid.contains(code_label) {
            return Err(Error::UnknownLabel { label: code_label });
        }
        let b1 = !tail_closure.contains(&code_label);

        let b = cert.basis_tail.get(i).copied().ok_or_else(|| {
            Error::MalformedCertificate(format!("no basis tail element paired with c_{}", i + 1))
        })?;
        let mut with_b = msg_set.clone();
        with_b.insert(b);
        let mut with_c = msg_set.clone();
        with_c.insert(code_label);
        let mut with_both = with_b.clone();
        with_both.insert(code_label);
        let r_both = cert.matroid.rank_of(&with_both)?;
        let r_b = cert.matroid.rank_of(&with_b)?;
        let r_c = cert.matroid.rank_of(&with_c)?;
        let b2 = r_both == r_b && r_b == r_c;
        // with A and B1 the common value is forced to n+1
        debug_assert!(!b2 || r_both == msg_set.len() + 1 || !b1);
        per_symbol.push(SymbolConditions { b1, b2 });
    }
    Ok(ConditionB {
        ok: per_symbol.iter().all(|s| s.b1 && s.b2),
        per_symbol,
    })
}

fn check_receiver_condition_c(
    cert: &Certificate,
    problem: &Problem,
    profile: &ErrorProfile,
    receiver: usize,
) -> Result<ReceiverVerdict> {
    let n_len = cert.code_length();
    let comp = problem.complement(receiver);
    let two_delta = 2 * profile.delta(receiver);
    let demand_label = cert.map.message_labels[problem.demand(receiver)];
    let code_set: LabelSet = cert.map.code_labels.iter().copied().collect();
    let expected_ground = comp.len() + n_len + two_delta;

    let comp_labels: LabelSet = comp.iter().map(|&j| cert.map.message_labels[j]).collect();

    for pattern in combinations(n_len, two_delta) {
        let mut contract_out: LabelSet = cert.basis.difference(&comp_labels).copied().collect();
        for &j in &pattern {
            contract_out.remove(&cert.basis_tail[j]);
        }
        let minor = cert.matroid.contract(&contract_out)?;
        if minor.ground_size() != expected_ground {
            return Err(Error::MalformedCertificate(format!(
                "contracted minor for R{} pattern {} has {} elements, expected |χ̄|+N+2δ = {}",
                receiver + 1,
                ErrorPattern::from_slice(&pattern),
                minor.ground_size(),
                expected_ground
            )));
        }
        if !minor.contains(demand_label) || !code_set.iter().all(|&l| minor.contains(l)) {
            return Err(Error::MalformedCertificate(format!(
                "g(f({})) or a code label was contracted out for pattern {}",
                receiver + 1,
                ErrorPattern::from_slice(&pattern)
            )));
        }
        let mut with_demand = code_set.clone();
        with_demand.insert(demand_label);
        if minor.rank_of(&with_demand)? != minor.rank_of(&code_set)? {
            return Ok(ReceiverVerdict {
                receiver,
                pass: false,
                witness: Some(Witness::Pattern {
                    pattern: ErrorPattern::from_slice(&pattern),
                }),
            });
        }
    }
    Ok(ReceiverVerdict {
        receiver,
        pass: true,
        witness: None,
    })
}

fn precheck_condition_c(
    cert: &Certificate,
    problem: &Problem,
    profile: &ErrorProfile,
) -> Result<()> {
    if cert.message_count() != problem.message_count() {
        return Err(Error::DimensionMismatch(format!(
            "certificate has {} message labels for {} messages",
            cert.message_count(),
            problem.message_count()
        )));
    }
    if profile.len() != problem.receiver_count() {
        return Err(Error::BadProblem(format!(
            "{} deltas for {} receivers",
            profile.len(),
            problem.receiver_count()
        )));
    }
    let n_len = cert.code_length();
    for i in 0..problem.receiver_count() {
        let two_delta = 2 * profile.delta(i);
        if two_delta > n_len {
            return Err(Error::InfeasibleProfile {
                receiver: i + 1,
                two_delta,
                code_len: n_len,
            });
        }
    }
    Ok(())
}

/// Condition (C) over the full receiver × pattern grid. The grid is checked
/// receiver-parallel; the witness is always the smallest failing receiver
/// with its lexicographically first failing pattern.
pub fn check_condition_c(
    cert: &Certificate,
    problem: &Problem,
    profile: &ErrorProfile,
) -> Result<VerifierReport> {
    precheck_condition_c(cert, problem, profile)?;
    let results = map_indices(problem.receiver_count(), |i| {
        check_receiver_condition_c(cert, problem, profile, i)
    });
    let verdicts = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(VerifierReport::from_verdicts(verdicts))
}

/// Sequential twin of [`check_condition_c`].
pub fn check_condition_c_seq(
    cert: &Certificate,
    problem: &Problem,
    profile: &ErrorProfile,
) -> Result<VerifierReport> {
    precheck_condition_c(cert, problem, profile)?;
    let verdicts = (0..problem.receiver_count())
        .map(|i| check_receiver_condition_c(cert, problem, profile, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifierReport::from_verdicts(verdicts))
}

/// Full Definition-5 check: shape, then A, B and (when both hold) C, with the
/// first failing witness.
pub fn check_matroidal(
    cert: &Certificate,
    problem: &Problem,
    profile: &ErrorProfile,
) -> Result<BridgeReport> {
    cert.validate_shape()?;
    let condition_a = check_condition_a(cert, problem)?;
    let condition_b = check_condition_b(cert)?;

    if !condition_a.ok || !condition_b.ok {
        let witness = if let Some(f) = condition_a.failure.clone() {
            Some(BridgeWitness::ConditionA(f))
        } else {
            condition_b
                .per_symbol
                .iter()
                .enumerate()
                .find(|(_, s)| !s.b1 || !s.b2)
                .map(|(i, s)| BridgeWitness::ConditionB {
                    symbol: i,
                    b1: s.b1,
                    b2: s.b2,
                })
        };
        return Ok(BridgeReport {
            condition_a,
            condition_b,
            condition_c: None,
            overall: false,
            witness,
        });
    }

    let condition_c = check_condition_c(cert, problem, profile)?;
    let witness = condition_c.first_failure().map(|v| {
        let pattern = match v.witness.as_ref() {
            Some(Witness::Pattern { pattern }) => pattern.clone(),
            _ => ErrorPattern::from_slice(&[]),
        };
        BridgeWitness::ConditionC {
            receiver: v.receiver,
            pattern,
        }
    });
    Ok(BridgeReport {
        condition_a,
        condition_b,
        overall: condition_c.overall,
        condition_c: Some(condition_c),
        witness,
    })
}

/// Forward construction: from a zero-column-free code matrix L build the
/// vector matroid of 𝓨 = [I_{n+N} | ζ] with ζ = [L ; I_N], labels 1..n+2N,
/// g(i) = i, g(c_i) = n+N+i, basis {1..n+N} with tail (n+1, …, n+N).
pub fn code_to_certificate(problem: &Problem, code: &IndexCode) -> Result<Certificate> {
    code.check_against(problem)?;
    if let Some(col) = code.zero_columns().first() {
        return Err(Error::ZeroColumn { col: col + 1 });
    }
    let n = problem.message_count();
    let n_len = code.length();
    let rank = n + n_len;
    let field = problem.field();

    let mut rep = FieldMatrix::zero(field, rank, n + 2 * n_len);
    for r in 0..rank {
        rep.set(r, r, 1);
    }
    for j in 0..n_len {
        for r in 0..n {
            rep.set(r, rank + j, code.matrix().get(r, j));
        }
        rep.set(n + j, rank + j, 1);
    }

    let matroid = VectorMatroid::from_matrix(rep);
    Ok(Certificate {
        matroid,
        map: GroundMap {
            message_labels: (1..=n as u32).collect(),
            code_labels: ((rank + 1) as u32..=(rank + n_len) as u32).collect(),
        },
        basis: (1..=rank as u32).collect(),
        basis_tail: ((n + 1) as u32..=rank as u32).collect(),
    })
}

/// Backward extraction: change basis so the stored basis becomes an ordered
/// identity block (messages first, then the tail), read every code column as
/// Σ a_{i,j} g(i) + d_j b_{n+j} — B2 forces this support with d_j ≠ 0, B1
/// forces some a_{i,j} ≠ 0 — and return L = (a_{i,j}).
pub fn certificate_to_code(cert: &Certificate) -> Result<IndexCode> {
    cert.validate_shape()?;
    let b = check_condition_b(cert)?;
    let mut msg_seen = BTreeSet::new();
    for &l in &cert.map.message_labels {
        if !msg_seen.insert(l) {
            return Err(Error::PreconditionViolated(format!(
                "condition A fails: duplicate message label {l}"
            )));
        }
    }
    if !cert.matroid.is_independent(&msg_seen)? {
        return Err(Error::PreconditionViolated(
            "condition A fails: dependent messages".into(),
        ));
    }
    if let Some((i, s)) = b
        .per_symbol
        .iter()
        .enumerate()
        .find(|(_, s)| !s.b1 || !s.b2)
    {
        return Err(Error::PreconditionViolated(format!(
            "condition B fails at c_{}: B1={} B2={}",
            i + 1,
            s.b1,
            s.b2
        )));
    }

    let n = cert.message_count();
    let n_len = cert.code_length();
    let rank = n + n_len;
    let rep = cert.matroid.representation();
    let ground = cert.matroid.ground_set();
    let pos_of = |label: u32| -> usize {
        ground
            .iter()
            .position(|&l| l == label)
            .expect("validated above")
    };

    // [B-columns | full representation]; rref turns the ordered basis block
    // into an identity, applying the basis change to everything at once.
    let ordered: Vec<usize> = cert
        .map
        .message_labels
        .iter()
        .chain(&cert.basis_tail)
        .map(|&l| pos_of(l))
        .collect();
    let stacked = rep.select_cols(&ordered).hstack(rep)?;
    let (reduced, pivots) = stacked.rref();
    if pivots.len() != rank || pivots.iter().enumerate().any(|(k, &p)| k != p) {
        return Err(Error::MalformedCertificate(
            "stored basis columns do not pivot as a basis".into(),
        ));
    }

    let mut columns = Vec::with_capacity(n_len);
    for (j, &code_label) in cert.map.code_labels.iter().enumerate() {
        let col = rank + pos_of(code_label);
        let mut entries = Vec::with_capacity(n);
        for r in 0..n {
            entries.push(reduced.get(r, col) as i64);
        }
        let d = reduced.get(n + j, col);
        if d == 0 {
            return Err(Error::PreconditionViolated(format!(
                "c_{} has no component on its paired basis element",
                j + 1
            )));
        }
        for r in n..rank {
            if r != n + j && reduced.get(r, col) != 0 {
                return Err(Error::PreconditionViolated(format!(
                    "c_{} leans on an unpaired basis tail element",
                    j + 1
                )));
            }
        }
        columns.push(FieldVector::new(cert.matroid.field(), entries));
    }
    IndexCode::new(FieldMatrix::from_columns(cert.matroid.field(), &columns)?)
}

/// Run all three oracles and report whether they agree. When L has a zero
/// column the certificate route is skipped (the forward construction rejects
/// such codes) and agreement is between the two code-level oracles only.
pub fn equivalence_harness(
    problem: &Problem,
    profile: &ErrorProfile,
    code: &IndexCode,
) -> Result<bool> {
    let w = verify_weight(problem, profile, code)?.overall;
    let r = verify_rank(problem, profile, code)?.overall;
    if !code.zero_columns().is_empty() {
        return Ok(w == r);
    }
    let cert = code_to_certificate(problem, code)?;
    let m = check_matroidal(&cert, problem, profile)?.overall;
    Ok(w == r && r == m)
}

/// Exhaustive-basis variant: Definition 5 only demands *some* basis extending
/// g(⌈n⌋) (with some tail pairing) satisfying B and C; try them all. Guarded
/// to ground sets of at most 14 elements.
pub fn check_matroidal_any_basis(
    cert: &Certificate,
    problem: &Problem,
    profile: &ErrorProfile,
) -> Result<bool> {
    const MAX_GROUND: usize = 14;
    cert.validate_shape()?;
    if cert.matroid.ground_size() > MAX_GROUND {
        return Err(Error::GroundSetTooLarge {
            size: cert.matroid.ground_size(),
            max: MAX_GROUND,
        });
    }
    if !check_condition_a(cert, problem)?.ok {
        return Ok(false);
    }
    let msg_set: LabelSet = cert.map.message_labels.iter().copied().collect();
    let rest: Vec<u32> = cert
        .matroid
        .ground_set()
        .iter()
        .copied()
        .filter(|l| !msg_set.contains(l))
        .collect();
    let n_len = cert.code_length();

    for tail_choice in combinations(rest.len(), n_len) {
        let tail_labels: Vec<u32> = tail_choice.iter().map(|&k| rest[k]).collect();
        let mut basis: LabelSet = msg_set.clone();
        basis.extend(tail_labels.iter().copied());
        if basis.len() != msg_set.len() + n_len || !cert.matroid.is_independent(&basis)? {
            continue;
        }
        for tail in permutations(&tail_labels) {
            let candidate = Certificate {
                matroid: cert.matroid.clone(),
                map: cert.map.clone(),
                basis: basis.clone(),
                basis_tail: tail,
            };
            if !check_condition_b(&candidate)?.ok {
                continue;
            }
            match check_condition_c_seq(&candidate, problem, profile) {
                Ok(report) if report.overall => return Ok(true),
                Ok(_) => {}
                // a tail choice that contracts out needed labels simply
                // fails to witness the definition
                Err(Error::MalformedCertificate(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(false)
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}
