//! Free-group words over named generators.
//!
//! A [`Word`] is always stored freely reduced, so two words denote the same
//! element of the free group exactly when their syllable lists are equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::error::{Error, ParseError};

/// Name of a free generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(String);

impl GeneratorId {
    pub fn new(name: impl Into<String>) -> Result<Self, Error> {
        let name = name.into();
        if is_identifier(&name) && name != "e" {
            Ok(GeneratorId(name))
        } else {
            Err(Error::InvalidGenerator(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A freely reduced word: no zero exponents, no two adjacent syllables on
/// the same generator. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<(GeneratorId, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: GeneratorId) -> Self {
        Word {
            syllables: vec![(g, 1)],
        }
    }

    /// Convenience for tests and fixtures; panics on a malformed name.
    pub fn gen(name: &str) -> Self {
        Word::generator(GeneratorId::new(name).expect("valid generator name"))
    }

    /// Free reduction of an arbitrary syllable sequence.
    pub fn reduce<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (GeneratorId, i64)>,
    {
        let mut out: Vec<(GeneratorId, i64)> = Vec::new();
        for (g, k) in raw {
            push_syllable(&mut out, g, k);
        }
        Word { syllables: out }
    }

    pub fn syllables(&self) -> &[(GeneratorId, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|(_, k)| k.unsigned_abs()).sum()
    }

    pub fn generators(&self) -> BTreeSet<GeneratorId> {
        self.syllables.iter().map(|(g, _)| g.clone()).collect()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.syllables.clone();
        for (g, k) in &other.syllables {
            push_syllable(&mut out, g.clone(), *k);
        }
        Word { syllables: out }
    }

    pub fn inv(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|(g, k)| (g.clone(), -k))
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        if n == 0 || self.is_identity() {
            return Word::identity();
        }
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self^by = by^-1 self by`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inv().mul(self).mul(by)
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    /// Left-normed commutator `[a1, a2, ..., an] = [[a1, ..., a(n-1)], an]`.
    pub fn left_normed(args: &[Word]) -> Result<Word, Error> {
        if args.len() < 2 {
            return Err(Error::Arity {
                op: "left_normed",
                expected: 2,
                got: args.len(),
            });
        }
        let mut acc = args[0].commutator(&args[1]);
        for a in &args[2..] {
            acc = acc.commutator(a);
        }
        Ok(acc)
    }

    /// Word homomorphism determined by generator images.
    pub fn substitute(&self, assignment: &BTreeMap<GeneratorId, Word>) -> Result<Word, Error> {
        let mut out = Word::identity();
        for (g, k) in &self.syllables {
            let image = assignment
                .get(g)
                .ok_or_else(|| Error::MissingAssignment(g.to_string()))?;
            out = out.mul(&image.pow(*k));
        }
        Ok(out)
    }

    /// Renders the word, replacing each generator by the given label.
    pub fn render_with<F>(&self, mut label: F) -> String
    where
        F: FnMut(&GeneratorId) -> String,
    {
        if self.is_identity() {
            return "e".to_string();
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|(g, k)| {
                if *k == 1 {
                    label(g)
                } else {
                    format!("{}^{}", label(g), k)
                }
            })
            .collect();
        parts.join(" ")
    }

    pub fn parse(text: &str) -> Result<Word, ParseError> {
        Parser::new(text).parse_all()
    }
}

/// Equality in the free group.
pub fn free_equal(u: &Word, v: &Word) -> bool {
    u == v
}

fn push_syllable(out: &mut Vec<(GeneratorId, i64)>, g: GeneratorId, k: i64) {
    if k == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.0 == g {
            last.1 += k;
            if last.1 == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push((g, k));
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|g| g.to_string()))
    }
}

impl std::str::FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: 1,
            column: self.pos + 1,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Word, ParseError> {
        let w = self.parse_word()?;
        match self.peek() {
            None => Ok(w),
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }

    fn parse_word(&mut self) -> Result<Word, ParseError> {
        let mut acc = Word::identity();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(' || c == '[' => {
                    let t = self.parse_term()?;
                    acc = acc.mul(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Word, ParseError> {
        let atom = self.parse_atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.parse_int()?;
            Ok(atom.pow(n))
        } else {
            Ok(atom)
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| ParseError {
            line: 1,
            column: start + 1,
            message: format!("exponent out of range: {text}"),
        })
    }

    fn parse_atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.parse_word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let mut args = vec![self.parse_word()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    args.push(self.parse_word()?);
                }
                if args.len() < 2 {
                    return Err(self.err("commutator needs at least two entries"));
                }
                self.expect(']')?;
                Ok(Word::left_normed(&args).expect("arity checked"))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "e" {
                    Ok(Word::identity())
                } else {
                    Ok(Word::generator(GeneratorId(name)))
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{want}'")))
        }
    }
}

/// Random reduced word with at most `max_syllables` syllables and exponents
/// in `[-max_exp, max_exp]`.
pub fn random_word<R: Rng + ?Sized>(
    rng: &mut R,
    gens: &[GeneratorId],
    max_syllables: usize,
    max_exp: i64,
) -> Word {
    let len = rng.gen_range(0..=max_syllables);
    let raw: Vec<(GeneratorId, i64)> = (0..len)
        .map(|_| {
            let g = gens[rng.gen_range(0..gens.len())].clone();
            let mut k = 0;
            while k == 0 {
                k = rng.gen_range(-max_exp..=max_exp);
            }
            (g, k)
        })
        .collect();
    Word::reduce(raw)
}

/// The commutator identities that hold in every group, instantiated at the
/// given words. Each entry is `(label, lhs, rhs)`.
pub fn basic_commutator_identities(x: &Word, y: &Word, z: &Word, w: &Word) -> Vec<(&'static str, Word, Word)> {
    let c = |a: &Word, b: &Word| a.commutator(b);
    let ln = |args: &[&Word]| {
        let owned: Vec<Word> = args.iter().map(|w| (*w).clone()).collect();
        Word::left_normed(&owned).expect("arity >= 2")
    };
    vec![
        ("a1: xy = yx[x,y]", x.mul(y), y.mul(x).mul(&c(x, y))),
        ("a2: x^y = x[x,y]", x.conjugate(y), x.mul(&c(x, y))),
        ("b: [x,y]^-1 = [y,x]", c(x, y).inv(), c(y, x)),
        ("c1: [xy,z] = [x,z]^y [y,z]", c(&x.mul(y), z), c(x, z).conjugate(y).mul(&c(y, z))),
        (
            "c2: [xy,z] = [x,z][x,z,y][y,z]",
            c(&x.mul(y), z),
            c(x, z).mul(&ln(&[x, z, y])).mul(&c(y, z)),
        ),
        ("d1: [x,zw] = [x,w][x,z]^w", c(x, &z.mul(w)), c(x, w).mul(&c(x, z).conjugate(w))),
        (
            "d2: [x,zw] = [x,w][x,z][x,z,w]",
            c(x, &z.mul(w)),
            c(x, w).mul(&c(x, z)).mul(&ln(&[x, z, w])),
        ),
    ]
}
