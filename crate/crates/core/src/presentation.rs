//! Finite presentations `<X | R>` and their line-based text format.
//!
//! ```text
//! gens: a b
//! # label: A5
//! a^2
//! b^3
//! (a*b)^5
//! ```

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;
use crate::word::{is_valid_name, parse_word, print_word, Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    label: String,
    permit_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Issue {
    DuplicateName { name: String },
    InvalidName { name: String },
    GeneratorOutOfRange { relator: usize },
    NotCyclicallyReduced { relator: usize },
    IdentityRelator { relator: usize },
}

impl Issue {
    /// Issues that normalization cannot repair.
    pub fn is_fatal(&self, permit_identity: bool) -> bool {
        match self {
            Issue::NotCyclicallyReduced { .. } => false,
            Issue::IdentityRelator { .. } => !permit_identity,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub generators: usize,
    pub relators: usize,
    pub issues: Vec<Issue>,
    /// Copy with every relator cyclically reduced; present when no issue is fatal.
    pub normalized: Option<Presentation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.normalized.is_some()
    }
}

/// Integer matrix whose entry `(i, j)` is the exponent sum of generator `j`
/// in relator `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix(pub IntMatrix);

impl ExponentMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }
}

impl Presentation {
    /// Strict constructor: relators are stored cyclically reduced and identity
    /// relators are rejected.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        Self::build(alphabet, relators, label.into(), false)
    }

    /// Like [`Presentation::new`] but keeps identity relators. Needed for
    /// derived presentations such as `[x, x]`-type commutators.
    pub fn with_identity_relators(alphabet: Alphabet, relators: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        Self::build(alphabet, relators, label.into(), true)
    }

    /// No checks at all; use [`Presentation::validate`] afterwards.
    pub fn from_raw(alphabet: Alphabet, relators: Vec<Word>, label: impl Into<String>) -> Self {
        Presentation { alphabet, relators, label: label.into(), permit_identity: false }
    }

    fn build(alphabet: Alphabet, relators: Vec<Word>, label: String, permit_identity: bool) -> Result<Self> {
        let raw = Presentation { alphabet, relators, label, permit_identity };
        let report = raw.validate();
        match report.normalized {
            Some(p) => Ok(p),
            None => Err(report.issues.iter().find(|i| i.is_fatal(permit_identity)).map(issue_error).unwrap()),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for n in self.alphabet.names() {
            if !is_valid_name(n) {
                issues.push(Issue::InvalidName { name: n.clone() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for n in self.alphabet.names() {
            if !seen.insert(n) {
                issues.push(Issue::DuplicateName { name: n.clone() });
            }
        }
        for (i, r) in self.relators.iter().enumerate() {
            if r.max_gen().is_some_and(|g| g >= self.alphabet.len()) {
                issues.push(Issue::GeneratorOutOfRange { relator: i });
            } else if r.is_identity() {
                issues.push(Issue::IdentityRelator { relator: i });
            } else if !r.is_cyclically_reduced() {
                issues.push(Issue::NotCyclicallyReduced { relator: i });
            }
        }
        let fatal = issues.iter().any(|i| i.is_fatal(self.permit_identity));
        let normalized = (!fatal).then(|| Presentation {
            alphabet: self.alphabet.clone(),
            relators: self.relators.iter().map(|r| r.cyclic_reduce().0).collect(),
            label: self.label.clone(),
            permit_identity: self.permit_identity,
        });
        ValidationReport { generators: self.alphabet.len(), relators: self.relators.len(), issues, normalized }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn num_gens(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn permits_identity(&self) -> bool {
        self.permit_identity
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Appends `suffix` to the label with a `.` separator.
    pub fn derived_label(&self, suffix: &str) -> String {
        if self.label.is_empty() {
            suffix.to_string()
        } else {
            format!("{}.{}", self.label, suffix)
        }
    }

    pub fn exponent_matrix(&self) -> ExponentMatrix {
        let rows = self.relators.len();
        let cols = self.alphabet.len();
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, r) in self.relators.iter().enumerate() {
            for s in r.syllables() {
                *m.get_mut(i, s.gen) += s.exp;
            }
        }
        ExponentMatrix(m)
    }

    /// Isomorphic presentation with every generator renamed `name + suffix`.
    pub fn rename_disjoint(&self, suffix: &str) -> Result<Presentation> {
        let names: Vec<String> = self.alphabet.names().iter().map(|n| format!("{n}{suffix}")).collect();
        if let Some(n) = names.iter().find(|n| self.alphabet.contains(n)) {
            return Err(Error::NameCollision { suffix: suffix.to_string(), name: n.clone() });
        }
        if let Some(n) = names.iter().find(|n| !is_valid_name(n)) {
            return Err(Error::InvalidName(n.clone()));
        }
        Ok(Presentation {
            alphabet: Alphabet::new(&names)?,
            relators: self.relators.clone(),
            label: self.label.clone(),
            permit_identity: self.permit_identity,
        })
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.alphabet)
    }

    pub fn print(&self, w: &Word) -> String {
        print_word(w, &self.alphabet)
    }

    /// Renders the text format. Parsing the output yields `self` again.
    pub fn to_text(&self) -> String {
        let mut out = String::from("gens:");
        for n in self.alphabet.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        if !self.label.is_empty() {
            out.push_str("# label: ");
            out.push_str(&self.label);
            out.push('\n');
        }
        for r in &self.relators {
            out.push_str(&self.print(r));
            out.push('\n');
        }
        out
    }

    /// Parses the text format, rejecting identity relators.
    pub fn parse(text: &str) -> Result<Presentation> {
        Self::parse_with(text, false)
    }

    /// Parses the text format; `permit_identity` keeps relators equal to `1`.
    pub fn parse_with(text: &str, permit_identity: bool) -> Result<Presentation> {
        let raw = parse_raw(text)?;
        let raw = Presentation { permit_identity, ..raw };
        let report = raw.validate();
        match report.normalized {
            Some(p) => Ok(p),
            None => Err(report.issues.iter().find(|i| i.is_fatal(permit_identity)).map(issue_error).unwrap()),
        }
    }
}

fn issue_error(issue: &Issue) -> Error {
    match issue {
        Issue::DuplicateName { name } => Error::DuplicateName(name.clone()),
        Issue::InvalidName { name } => Error::InvalidName(name.clone()),
        Issue::IdentityRelator { relator } => Error::IdentityRelator(*relator),
        Issue::GeneratorOutOfRange { relator } => Error::InvalidArgument(format!("relator {relator} uses an unknown generator")),
        Issue::NotCyclicallyReduced { .. } => unreachable!("not fatal"),
    }
}

/// Syntax-level parse. Duplicate generator names survive so that
/// [`Presentation::validate`] can report them.
pub fn parse_raw(text: &str) -> Result<Presentation> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let mut label = String::new();
    let alphabet = loop {
        let Some((no, line)) = lines.next() else {
            return Err(Error::parse(0, "missing `gens:` line").at_line(1));
        };
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        let Some(rest) = trimmed.strip_prefix("gens:") else {
            return Err(Error::parse(0, "first line must be `gens: ...`").at_line(no + 1));
        };
        let rest = rest.split('#').next().unwrap_or("");
        let names: Vec<&str> = rest.split_whitespace().collect();
        if let Some(bad) = names.iter().find(|n| !is_valid_name(n)) {
            return Err(Error::InvalidName(bad.to_string()).at_line(no + 1));
        }
        break Alphabet::from_names_unchecked(names);
    };
    let mut relators = Vec::new();
    for (no, line) in lines {
        let trimmed = line.trim();
        if let Some(l) = trimmed.strip_prefix("# label:") {
            label = l.trim().to_string();
            continue;
        }
        let body = trimmed.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        relators.push(parse_word(body, &alphabet).map_err(|e| e.at_line(no + 1))?);
    }
    Ok(Presentation { alphabet, relators, label, permit_identity: false })
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.alphabet.names().join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.print(r)).collect();
        write!(f, "{}>", rels.join(", "))
    }
}
