//! Triangle presentations: parsing, validation and the built-in examples.
//!
//! A presentation lists relators `x y z` (meaning `xyz = 1`) over the
//! `q^2+q+1` generators. Its closure is the set of all cyclic rotations of
//! the relators. Reading off `lambda(x) = { y : (x, y, z) in closure }`
//! gives the line structure of a projective plane on the generators.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use crate::plane::{CombinatorialPlane, PlaneError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: relator must have three generators, found {found}")]
    WrongArity { line: usize, found: usize },
    #[error("closure has {found} triples, expected (q+1)(q^2+q+1) = {expected}{}", degenerate_note(.degenerate))]
    ClosureCountMismatch {
        expected: usize,
        found: usize,
        degenerate: Vec<String>,
    },
    #[error("completion of ({x}, {y}) is not unique: {z1} and {z2}")]
    CompletionNotUnique {
        x: String,
        y: String,
        z1: String,
        z2: String,
    },
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("unknown built-in presentation `{0}` (available: B.2, C.1)")]
    UnknownBuiltin(String),
}

fn degenerate_note(d: &[String]) -> String {
    if d.is_empty() {
        String::new()
    } else {
        format!(
            "; relators of the form xxx contribute a single triple: {}",
            d.join(", ")
        )
    }
}

/// Ordered triple of generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a0: usize,
    pub a1: usize,
    pub a2: usize,
}

impl Triple {
    pub fn new(a0: usize, a1: usize, a2: usize) -> Self {
        Triple { a0, a1, a2 }
    }

    /// `(a0, a1, a2) -> (a1, a2, a0)`
    pub fn rotate(self) -> Self {
        Triple::new(self.a1, self.a2, self.a0)
    }
}

/// A parsed, not yet validated presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrianglePresentation {
    pub q: usize,
    pub names: Vec<String>,
    pub relators: Vec<Triple>,
}

impl TrianglePresentation {
    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Canonical text in the presentation file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("q {}\ngen {}\n", self.q, self.names.join(" "));
        for t in &self.relators {
            let _ = writeln!(
                s,
                "rel {} {} {}",
                self.name(t.a0),
                self.name(t.a1),
                self.name(t.a2)
            );
        }
        s
    }

    /// All cyclic rotations of the relators, as a sorted set.
    pub fn closure(&self) -> BTreeSet<Triple> {
        close_under_rotation(self.relators.iter().copied())
    }
}

pub(crate) fn close_under_rotation(triples: impl IntoIterator<Item = Triple>) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for t in triples {
        out.insert(t);
        out.insert(t.rotate());
        out.insert(t.rotate().rotate());
    }
    out
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// # comment
/// q 2
/// gen x0 x1 x2 x3 x4 x5 x6
/// rel x0 x1 x4
/// ```
pub fn parse_presentation(text: &str) -> Result<TrianglePresentation, PresentationError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let syntax = |line, message: String| PresentationError::Syntax { line, message };

    let (qline, first) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `q <order>` header".into()))?;
    let q =
        match first.split_whitespace().collect::<Vec<_>>()[..] {
            ["q", v] => v.parse::<usize>().ok().filter(|&q| q >= 2).ok_or_else(|| {
                syntax(qline, format!("order must be an integer >= 2, got `{v}`"))
            })?,
            _ => {
                return Err(syntax(
                    qline,
                    format!("expected `q <order>`, got `{first}`"),
                ))
            }
        };
    let expected = q * q + q + 1;

    let (gline, second) = lines
        .next()
        .ok_or_else(|| syntax(qline + 1, "missing `gen` line".into()))?;
    let mut tokens = second.split_whitespace();
    if tokens.next() != Some("gen") {
        return Err(syntax(
            gline,
            format!("expected `gen <names>`, got `{second}`"),
        ));
    }
    let names: Vec<String> = tokens.map(str::to_string).collect();
    if names.len() != expected {
        return Err(syntax(
            gline,
            format!("q = {q} needs {expected} generators, got {}", names.len()),
        ));
    }
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(syntax(gline, format!("duplicate generator `{n}`")));
        }
    }

    let mut relators = Vec::new();
    for (n, line) in lines {
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("rel") {
            return Err(syntax(n, format!("expected `rel x y z`, got `{line}`")));
        }
        let args: Vec<&str> = tokens.collect();
        if args.len() != 3 {
            return Err(PresentationError::WrongArity {
                line: n,
                found: args.len(),
            });
        }
        let mut ix = [0; 3];
        for (slot, name) in ix.iter_mut().zip(&args) {
            *slot = *index
                .get(name)
                .ok_or_else(|| PresentationError::UnknownGenerator {
                    line: n,
                    name: name.to_string(),
                })?;
        }
        relators.push(Triple::new(ix[0], ix[1], ix[2]));
    }
    Ok(TrianglePresentation { q, names, relators })
}

/// A presentation whose closure satisfies the triangle presentation axioms.
#[derive(Debug, Clone)]
pub struct ValidatedPresentation {
    presentation: TrianglePresentation,
    /// Sorted lexicographically; this is the canonical alphabet order.
    closure: Vec<Triple>,
    completion: HashMap<(usize, usize), usize>,
    plane: CombinatorialPlane,
}

pub fn validate(p: &TrianglePresentation) -> Result<ValidatedPresentation, PresentationError> {
    let q = p.q;
    let n = p.num_generators();
    let closure = p.closure();
    let expected = (q + 1) * (q * q + q + 1);
    if closure.len() != expected {
        let degenerate = p
            .relators
            .iter()
            .filter(|t| t.a0 == t.a1 && t.a1 == t.a2)
            .map(|t| format!("{0}{0}{0}", p.name(t.a0)))
            .collect();
        return Err(PresentationError::ClosureCountMismatch {
            expected,
            found: closure.len(),
            degenerate,
        });
    }
    let mut completion = HashMap::new();
    for t in &closure {
        if let Some(&z) = completion.get(&(t.a0, t.a1)) {
            return Err(PresentationError::CompletionNotUnique {
                x: p.name(t.a0).into(),
                y: p.name(t.a1).into(),
                z1: p.name(z).into(),
                z2: p.name(t.a2).into(),
            });
        }
        completion.insert((t.a0, t.a1), t.a2);
    }
    let mut lambda = vec![Vec::new(); n];
    for t in &closure {
        lambda[t.a0].push(t.a1);
    }
    let plane = CombinatorialPlane::from_lambda(q, lambda)?;
    Ok(ValidatedPresentation {
        presentation: p.clone(),
        closure: closure.into_iter().collect(),
        completion,
        plane,
    })
}

impl ValidatedPresentation {
    pub fn q(&self) -> usize {
        self.presentation.q
    }

    pub fn presentation(&self) -> &TrianglePresentation {
        &self.presentation
    }

    pub fn names(&self) -> &[String] {
        &self.presentation.names
    }

    /// Closure triples in canonical (lexicographic) order.
    pub fn closure(&self) -> &[Triple] {
        &self.closure
    }

    pub fn plane(&self) -> &CombinatorialPlane {
        &self.plane
    }

    /// `lambda(x)`, the line labelled by `x`.
    pub fn lambda(&self, x: usize) -> &[usize] {
        self.plane.line(x).expect("generator index")
    }

    /// The unique `z` with `(x, y, z)` in the closure.
    pub fn complete(&self, x: usize, y: usize) -> Option<usize> {
        self.completion.get(&(x, y)).copied()
    }

    /// Renders a triple with generator names, e.g. `(x0, x1, x4)`.
    pub fn display_triple(&self, t: Triple) -> String {
        let n = &self.presentation.names;
        format!("({}, {}, {})", n[t.a0], n[t.a1], n[t.a2])
    }
}

const B2: &str = "\
# B.2: torsion free lattice in PGL(3, Q_2)
q 2
gen x0 x1 x2 x3 x4 x5 x6
rel x0 x1 x4
rel x0 x2 x1
rel x0 x4 x2
rel x1 x5 x5
rel x2 x3 x3
rel x3 x5 x6
rel x4 x6 x6
";

const C1: &str = "\
# C.1: torsion free lattice in PGL(3, Q_2)
q 2
gen x0 x1 x2 x3 x4 x5 x6
rel x0 x0 x6
rel x0 x2 x3
rel x1 x2 x6
rel x1 x3 x5
rel x1 x5 x4
rel x2 x4 x5
rel x3 x4 x6
";

pub const BUILTIN_NAMES: [&str; 2] = ["B.2", "C.1"];

/// File text of a built-in presentation.
pub fn builtin_text(name: &str) -> Result<&'static str, PresentationError> {
    match name {
        "B.2" => Ok(B2),
        "C.1" => Ok(C1),
        other => Err(PresentationError::UnknownBuiltin(other.to_string())),
    }
}

pub fn builtin(name: &str) -> Result<TrianglePresentation, PresentationError> {
    parse_presentation(builtin_text(name)?)
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a0, self.a1, self.a2)
    }
}
