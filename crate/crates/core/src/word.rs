//! Free-group words in run-length (syllable) form.
//!
//! A [`Word`] is always freely reduced: adjacent syllables carry distinct
//! generators and no exponent is zero. Words do not own their alphabet; the
//! generator indices are interpreted against an [`Alphabet`] supplied by the
//! caller when parsing or printing.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Ordered list of generator names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    /// Builds an alphabet, rejecting malformed or repeated names.
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let alphabet = Self::from_names_unchecked(names);
        if let Some(bad) = alphabet.names.iter().find(|n| !is_valid_name(n)) {
            return Err(Error::InvalidName(bad.clone()));
        }
        if let Some(dup) = alphabet.first_duplicate() {
            return Err(Error::DuplicateName(dup.to_string()));
        }
        Ok(alphabet)
    }

    /// Builds an alphabet without checking names. Lookups resolve to the
    /// first occurrence of a repeated name; [`crate::presentation::Presentation::validate`]
    /// reports such repeats.
    pub fn from_names_unchecked<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            index.entry(n.clone()).or_insert(i);
        }
        Alphabet { names, index }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn first_duplicate(&self) -> Option<&str> {
        let mut seen = std::collections::HashSet::new();
        self.names.iter().find(|n| !seen.insert(n.as_str())).map(|s| s.as_str())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }
}

/// A generator raised to a non-zero power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A single generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Freely reduces a sequence of letters over `alphabet`.
pub fn reduce(raw: &[Letter], alphabet: &Alphabet) -> Result<Word> {
    let mut w = Word::identity();
    for l in raw {
        if l.gen >= alphabet.len() {
            return Err(Error::IndexOutOfRange { index: l.gen, size: alphabet.len() });
        }
        w.push(l.gen, if l.inverse { -1 } else { 1 });
    }
    Ok(w)
}

/// `u v u^-1 v^-1`, reduced.
pub fn commutator(u: &Word, v: &Word) -> Word {
    let mut w = u.clone();
    w.append(v);
    w.append(&u.inverse());
    w.append(&v.inverse());
    w
}

impl Word {
    pub fn identity() -> Self {
        Word { syllables: Vec::new() }
    }

    pub fn gen(gen: usize) -> Self {
        Word::power(gen, 1)
    }

    pub fn power(gen: usize, exp: i64) -> Self {
        let mut w = Word::identity();
        w.push(gen, exp);
        w
    }

    /// Builds a word from arbitrary syllables, merging and cancelling as needed.
    pub fn from_syllables(items: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in items {
            w.push(g, e);
        }
        w
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word::from_syllables(letters.into_iter().map(|l| (l.gen, if l.inverse { -1 } else { 1 })))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    pub fn is_positive(&self) -> bool {
        self.syllables.iter().all(|s| s.exp > 0)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.syllables.iter().flat_map(|s| {
            let l = Letter::new(s.gen, s.exp < 0);
            std::iter::repeat(l).take(s.exp.unsigned_abs() as usize)
        })
    }

    /// Multiplies `self` on the right by `gen^exp`.
    pub fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp += exp;
                if last.exp == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable { gen, exp }),
        }
    }

    /// Multiplies `self` on the right by `other`.
    pub fn append(&mut self, other: &Word) {
        for s in &other.syllables {
            self.push(s.gen, s.exp);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|s| Syllable { gen: s.gen, exp: -s.exp }).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        if n == 0 || self.is_identity() {
            return Word::identity();
        }
        if let [s] = self.syllables.as_slice() {
            return Word::power(s.gen, s.exp * n);
        }
        let (core, conj) = self.cyclic_reduce();
        let base = if n < 0 { core.inverse() } else { core };
        let mut body = Word::identity();
        for _ in 0..n.unsigned_abs() {
            body.append(&base);
        }
        conj.mul(&body).mul(&conj.inverse())
    }

    /// `by * self * by^-1`.
    pub fn conjugate_by(&self, by: &Word) -> Word {
        by.mul(self).mul(&by.inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.syllables.first(), self.syllables.last()) {
            (Some(f), Some(l)) if self.syllables.len() > 1 => f.gen != l.gen || (f.exp > 0) == (l.exp > 0),
            _ => true,
        }
    }

    /// Returns `(core, conjugator)` with `self = conjugator * core * conjugator^-1`
    /// and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut s: VecDeque<Syllable> = self.syllables.iter().copied().collect();
        let mut conj = Word::identity();
        while s.len() >= 2 {
            let (f, l) = (s[0], s[s.len() - 1]);
            if f.gen != l.gen || (f.exp > 0) == (l.exp > 0) {
                break;
            }
            let t = f.exp.abs().min(l.exp.abs()) * f.exp.signum();
            conj.push(f.gen, t);
            s[0].exp -= t;
            let back = s.len() - 1;
            s[back].exp += t;
            if s[back].exp == 0 {
                s.pop_back();
            }
            if s.front().is_some_and(|x| x.exp == 0) {
                s.pop_front();
            }
        }
        (Word { syllables: s.into() }, conj)
    }

    /// Total exponent of `gen`.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.syllables.iter().filter(|s| s.gen == gen).map(|s| s.exp).sum()
    }

    /// Applies an injective relabelling of generator indices.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_syllables(self.syllables.iter().map(|s| (f(s.gen), s.exp)))
    }

    /// Image under the homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for s in &self.syllables {
            w.append(&images[s.gen].pow(s.exp));
        }
        w
    }

    /// Image under the endomorphism sending each generator with `kill(g)` to
    /// the identity and fixing the others.
    pub fn delete_generators(&self, kill: impl Fn(usize) -> bool) -> Word {
        Word::from_syllables(self.syllables.iter().filter(|s| !kill(s.gen)).map(|s| (s.gen, s.exp)))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(self.alphabet.name(s.gen))?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

pub fn print_word(w: &Word, alphabet: &Alphabet) -> String {
    w.display(alphabet).to_string()
}

/// Parses a word in the grammar
/// `WORD := term (("*")? term)* | ε`, `term := atom ("^" int)?`,
/// `atom := name | "1" | "(" WORD ")" | "[" WORD "," WORD "]"`.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, alphabet };
    let w = p.word()?;
    p.skip_ws();
    if let Some(&(col, c)) = p.chars.get(p.pos) {
        return Err(match c {
            ')' | ']' => Error::parse(col, "unbalanced parentheses"),
            _ => Error::parse(col, format!("unexpected character `{c}`")),
        });
    }
    Ok(w)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or_else(|| self.chars.last().map_or(0, |&(i, _)| i + 1))
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        let mut have_term = false;
        loop {
            match self.peek() {
                None | Some(')') | Some(']') | Some(',') => return Ok(w),
                Some('*') => {
                    if !have_term {
                        return Err(Error::parse(self.col(), "`*` without left operand"));
                    }
                    self.pos += 1;
                    if matches!(self.peek(), None | Some(')') | Some(']') | Some(',') | Some('*')) {
                        return Err(Error::parse(self.col(), "`*` without right operand"));
                    }
                    have_term = false;
                }
                Some(_) => {
                    let t = self.term()?;
                    w.append(&t);
                    have_term = true;
                }
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.int()?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start_col = self.col();
        let mut s = String::new();
        if let Some(&(_, c)) = self.chars.get(self.pos) {
            if c == '-' || c == '+' {
                s.push(c);
                self.pos += 1;
                self.skip_ws();
            }
        }
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if !s.chars().any(|c| c.is_ascii_digit()) {
            return Err(Error::parse(start_col, "malformed exponent"));
        }
        s.parse::<i64>().map_err(|_| Error::parse(start_col, "malformed exponent"))
    }

    fn atom(&mut self) -> Result<Word> {
        let col = self.col();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse(self.col(), "unbalanced parentheses"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                if self.peek() != Some(',') {
                    return Err(Error::parse(self.col(), "expected `,` in commutator"));
                }
                self.pos += 1;
                let v = self.word()?;
                if self.peek() != Some(']') {
                    return Err(Error::parse(self.col(), "unbalanced parentheses"));
                }
                self.pos += 1;
                Ok(commutator(&u, &v))
            }
            Some('1') => {
                self.pos += 1;
                if self.chars.get(self.pos).is_some_and(|&(_, c)| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(Error::parse(col, "generator names must not start with a digit"));
                }
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.get(self.pos) {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.alphabet.index_of(&name).map(Word::gen).ok_or(Error::UnknownGenerator(name))
            }
            Some('^') => Err(Error::parse(col, "malformed exponent")),
            Some(c) => Err(Error::parse(col, format!("unexpected character `{c}`"))),
            None => Err(Error::parse(col, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    fn l(gen: usize, inverse: bool) -> Letter {
        Letter::new(gen, inverse)
    }

    // letter-array stack cancellation, independent of the syllable code path
    fn stack_reduce(raw: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::new();
        for &x in raw {
            if out.last() == Some(&x.inv()) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn reduce_examples() {
        let a = abc();
        let w = reduce(&[l(0, false), l(0, true), l(1, false)], &a).unwrap();
        assert_eq!(w, Word::gen(1));
        let w = reduce(&[l(1, true), l(0, false), l(0, true), l(1, false)], &a).unwrap();
        assert!(w.is_identity());
        let raw = [l(0, false), l(1, false), l(1, true), l(0, false)];
        let w = reduce(&raw, &a).unwrap();
        assert_eq!(w.letters().collect::<Vec<_>>(), stack_reduce(&raw));
        assert_eq!(w, Word::power(0, 2));
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        let err = reduce(&[l(3, false)], &abc()).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { index: 3, size: 3 });
    }

    #[test]
    fn cyclic_reduce_examples() {
        let a = abc();
        let w = parse_word("a*b*a^-1", &a).unwrap();
        assert_eq!(w.cyclic_reduce(), (Word::gen(1), Word::gen(0)));
        let w = Word::power(0, 2);
        assert_eq!(w.cyclic_reduce(), (w.clone(), Word::identity()));
        let w = parse_word("a b c b^-1 a^-1", &a).unwrap();
        assert_eq!(w.cyclic_reduce(), (Word::gen(2), parse_word("a b", &a).unwrap()));
        // partial cancellation inside one syllable
        let w = parse_word("a^3 b a^-1", &a).unwrap();
        let (core, conj) = w.cyclic_reduce();
        assert_eq!(core, parse_word("a^2 b", &a).unwrap());
        assert_eq!(conj, Word::gen(0));
        let w = parse_word("a^2 b a^-5", &a).unwrap();
        let (core, conj) = w.cyclic_reduce();
        assert_eq!(core, parse_word("b a^-3", &a).unwrap());
        assert_eq!(conj, Word::power(0, 2));
        assert_eq!(core.conjugate_by(&conj), w);
    }

    #[test]
    fn commutator_examples() {
        let a = abc();
        let (x, y) = (Word::gen(0), Word::gen(1));
        assert_eq!(print_word(&commutator(&x, &y), &a), "a*b*a^-1*b^-1");
        assert!(commutator(&x, &x).is_identity());
        let ab = x.mul(&y);
        assert_eq!(commutator(&ab, &y), commutator(&x, &y));
    }

    #[test]
    fn parse_examples() {
        let a = abc();
        assert_eq!(parse_word("a^2", &a).unwrap().syllables(), &[Syllable { gen: 0, exp: 2 }]);
        let w = parse_word("(a*b)^5", &a).unwrap();
        assert_eq!(w.len(), 10);
        assert_eq!(w.syllables().len(), 10);
        assert_eq!(parse_word("[a,b]", &a).unwrap(), commutator(&Word::gen(0), &Word::gen(1)));
        assert_eq!(parse_word("", &a).unwrap(), Word::identity());
        assert_eq!(parse_word("1", &a).unwrap(), Word::identity());
        assert_eq!(parse_word(" a ^ -2 b", &a).unwrap(), Word::from_syllables([(0, -2), (1, 1)]));
        assert_eq!(parse_word("(a b)^-1", &a).unwrap(), parse_word("b^-1 a^-1", &a).unwrap());
    }

    #[test]
    fn parse_errors() {
        let a = abc();
        assert_eq!(parse_word("a*d", &a).unwrap_err(), Error::UnknownGenerator("d".into()));
        assert!(matches!(parse_word("a^", &a), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("a^x", &a), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("(a*b", &a), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("a*b)", &a), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("[a,b", &a), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("*a", &a), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("a**b", &a), Err(Error::Parse { .. })));
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["2a"]).is_err());
        assert!(Alphabet::new(["_x1", "y_2"]).is_ok());
    }

    fn letters_strategy() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0usize..3, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..40)
    }

    proptest! {
        #[test]
        fn reduce_matches_stack_oracle(raw in letters_strategy()) {
            let w = reduce(&raw, &abc()).unwrap();
            prop_assert_eq!(w.letters().collect::<Vec<_>>(), stack_reduce(&raw));
        }

        #[test]
        fn reduce_idempotent(raw in letters_strategy()) {
            let w = reduce(&raw, &abc()).unwrap();
            let again = reduce(&w.letters().collect::<Vec<_>>(), &abc()).unwrap();
            prop_assert_eq!(again, w);
        }

        #[test]
        fn inverse_law(raw in letters_strategy()) {
            let w = reduce(&raw, &abc()).unwrap();
            prop_assert!(w.mul(&w.inverse()).is_identity());
            prop_assert!(w.inverse().mul(&w).is_identity());
        }

        #[test]
        fn cyclic_reduce_laws(raw in letters_strategy()) {
            let w = reduce(&raw, &abc()).unwrap();
            let (core, conj) = w.cyclic_reduce();
            prop_assert!(core.is_cyclically_reduced());
            prop_assert!(core.len() <= w.len());
            prop_assert_eq!(w.len(), core.len() + 2 * conj.len());
            prop_assert_eq!(core.conjugate_by(&conj), w);
        }

        #[test]
        fn print_parse_round_trip(raw in letters_strategy()) {
            let a = abc();
            let w = reduce(&raw, &a).unwrap();
            let text = print_word(&w, &a);
            prop_assert_eq!(&parse_word(&text, &a).unwrap(), &w);
            prop_assert_eq!(print_word(&parse_word(&text, &a).unwrap(), &a), text);
        }

        #[test]
        fn pow_matches_repeated_product(raw in letters_strategy(), n in -4i64..5) {
            let w = reduce(&raw, &abc()).unwrap();
            let mut expect = Word::identity();
            let base = if n < 0 { w.inverse() } else { w.clone() };
            for _ in 0..n.unsigned_abs() {
                expect.append(&base);
            }
            prop_assert_eq!(w.pow(n), expect);
        }
    }
}
