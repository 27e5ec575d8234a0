//! Hat and check transition matrices on the closure alphabet.
//!
//! Both alphabets are the closure triples in lexicographic order. A triple
//! `(a0, a1, a2)` read as an upward triangle is a hat letter, read as a
//! downward triangle a check letter. Entries are decided by incidence, join
//! and meet in the plane of the presentation:
//!
//! ```text
//! hat1(b, a)   = 1  iff  b1 not on line a1,  b0 = join(b1, a2)
//! hat2(b, a)   = 1  iff  a2 not on line b2,  b0 = meet(a1, b2)
//! check1(b, a) = 1  iff  b2 not on line a2,  a0 = meet(b1, a2)
//! check2(b, a) = 1  iff  a1 not on line b1,  a0 = join(a1, b2)
//! ```

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::plane::{CombinatorialPlane, PlaneError};
use crate::presentation::{Triple, ValidatedPresentation};
use crate::zmat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransitionError {
    #[error("plane query failed while building {matrix}: {source}")]
    Plane {
        matrix: &'static str,
        source: PlaneError,
    },
}

/// The closure triples in canonical order, with the reverse index.
#[derive(Debug, Clone)]
pub struct HatAlphabet {
    triples: Vec<Triple>,
    index: HashMap<Triple, usize>,
}

impl HatAlphabet {
    pub fn new(vp: &ValidatedPresentation) -> Self {
        let triples = vp.closure().to_vec();
        let index = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        HatAlphabet { triples, index }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triple(&self, i: usize) -> Triple {
        self.triples[i]
    }

    pub fn index_of(&self, t: Triple) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitionKind {
    Hat,
    Check,
}

impl fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransitionKind::Hat => "hat",
            TransitionKind::Check => "check",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionPair {
    pub kind: TransitionKind,
    pub q: usize,
    pub m1: IntMatrix,
    pub m2: IntMatrix,
}

impl TransitionPair {
    pub fn size(&self) -> usize {
        self.m1.rows()
    }
}

type Rule = fn(&CombinatorialPlane, Triple, Triple) -> Result<bool, PlaneError>;

fn hat1(pl: &CombinatorialPlane, b: Triple, a: Triple) -> Result<bool, PlaneError> {
    // b1 off line a1 forces b1 != a2, since a2 is on line a1
    Ok(!pl.incident(b.a1, a.a1)? && b.a0 == pl.join_points(b.a1, a.a2)?)
}

fn hat2(pl: &CombinatorialPlane, b: Triple, a: Triple) -> Result<bool, PlaneError> {
    Ok(!pl.incident(a.a2, b.a2)? && b.a0 == pl.meet_lines(a.a1, b.a2)?)
}

fn check1(pl: &CombinatorialPlane, b: Triple, a: Triple) -> Result<bool, PlaneError> {
    Ok(!pl.incident(b.a2, a.a2)? && a.a0 == pl.meet_lines(b.a1, a.a2)?)
}

fn check2(pl: &CombinatorialPlane, b: Triple, a: Triple) -> Result<bool, PlaneError> {
    Ok(!pl.incident(a.a1, b.a1)? && a.a0 == pl.join_points(a.a1, b.a2)?)
}

fn build(
    vp: &ValidatedPresentation,
    rule: Rule,
    matrix: &'static str,
) -> Result<IntMatrix, TransitionError> {
    let alphabet = vp.closure();
    let n = alphabet.len();
    let plane = vp.plane();
    let mut entries = vec![0i64; n * n];
    for (bi, &b) in alphabet.iter().enumerate() {
        for (ai, &a) in alphabet.iter().enumerate() {
            if rule(plane, b, a).map_err(|source| TransitionError::Plane { matrix, source })? {
                entries[bi * n + ai] = 1;
            }
        }
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| entries[i * n + j]))
}

/// The hat pair, rows indexed by `b` and columns by `a`.
pub fn build_hat(vp: &ValidatedPresentation) -> Result<TransitionPair, TransitionError> {
    Ok(TransitionPair {
        kind: TransitionKind::Hat,
        q: vp.q(),
        m1: build(vp, hat1, "hat1")?,
        m2: build(vp, hat2, "hat2")?,
    })
}

/// The check pair, rows indexed by `b` and columns by `a`.
pub fn build_check(vp: &ValidatedPresentation) -> Result<TransitionPair, TransitionError> {
    Ok(TransitionPair {
        kind: TransitionKind::Check,
        q: vp.q(),
        m1: build(vp, check1, "check1")?,
        m2: build(vp, check2, "check2")?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Column,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSumFailure {
    /// 1 or 2
    pub matrix: u8,
    pub axis: Axis,
    pub index: usize,
    pub sum: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFailure {
    pub matrix: u8,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

/// Outcome of the structural checks on one transition pair. Failures are
/// recorded with a witness rather than raised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralChecks {
    pub kind: TransitionKind,
    pub size: usize,
    pub expected_line_sum: u64,
    pub line_sums_ok: bool,
    pub line_sum_failure: Option<LineSumFailure>,
    pub zero_one_ok: bool,
    pub zero_one_failure: Option<EntryFailure>,
    /// `check1 = hat2^t` and `check2 = hat1^t`.
    pub transpose_identities_ok: bool,
    pub union_strongly_connected: bool,
}

impl StructuralChecks {
    pub fn all_passed(&self) -> bool {
        self.line_sums_ok
            && self.zero_one_ok
            && self.transpose_identities_ok
            && self.union_strongly_connected
    }
}

/// Checks row/column sums (`q^2`), {0,1} entries, the transpose identities
/// against the other pair built from `vp`, and irreducibility of the union
/// digraph.
pub fn structural_report(tp: &TransitionPair, vp: &ValidatedPresentation) -> StructuralChecks {
    let q2 = (tp.q * tp.q) as u64;
    let expected = BigInt::from(q2);

    let mut line_sum_failure = None;
    'sums: for (idx, m) in [(1u8, &tp.m1), (2, &tp.m2)] {
        for (axis, sums) in [(Axis::Row, m.row_sums()), (Axis::Column, m.col_sums())] {
            if let Some((index, s)) = sums.iter().enumerate().find(|(_, s)| **s != expected) {
                line_sum_failure = Some(LineSumFailure {
                    matrix: idx,
                    axis,
                    index,
                    sum: s.to_string(),
                });
                break 'sums;
            }
        }
    }

    let zero_one_failure = [(1u8, &tp.m1), (2, &tp.m2)].iter().find_map(|(idx, m)| {
        m.first_non_zero_one().map(|(row, col, v)| EntryFailure {
            matrix: *idx,
            row,
            col,
            value: v.to_string(),
        })
    });

    let other = match tp.kind {
        TransitionKind::Hat => build_check(vp),
        TransitionKind::Check => build_hat(vp),
    };
    let transpose_identities_ok = match other {
        Ok(o) => {
            let (hat, check) = match tp.kind {
                TransitionKind::Hat => (tp, &o),
                TransitionKind::Check => (&o, tp),
            };
            check.m1 == hat.m2.transpose() && check.m2 == hat.m1.transpose()
        }
        Err(_) => false,
    };

    StructuralChecks {
        kind: tp.kind,
        size: tp.size(),
        expected_line_sum: q2,
        line_sums_ok: line_sum_failure.is_none(),
        line_sum_failure,
        zero_one_ok: zero_one_failure.is_none(),
        zero_one_failure,
        transpose_identities_ok,
        union_strongly_connected: union_strongly_connected(&tp.m1, &tp.m2),
    }
}

/// Whether the digraph with an edge `a -> b` whenever `m1(b, a)` or
/// `m2(b, a)` is nonzero is strongly connected.
pub fn union_strongly_connected(m1: &IntMatrix, m2: &IntMatrix) -> bool {
    let n = m1.rows();
    if n == 0 {
        return true;
    }
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for m in [m1, m2] {
        for (b, a, _) in m.nonzeros() {
            out[a].push(b);
            inc[b].push(a);
        }
    }
    reaches_all(&out) && reaches_all(&inc)
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
