//! Words over `X ∪ X⁻¹` and terms with `^m` jump markers.
//!
//! Generators are interned into an [`Alphabet`]; a [`Word`] is a flat
//! sequence of [`Letter`]s and an [`FTerm`] is an alternating sequence
//! `u₀ (v₁)^m u₁ ⋯ (vₙ)^m uₙ`. Text syntax:
//!
//! ```text
//! term  := item*
//! item  := atom ( "^-1" | "^m" )?
//! atom  := NAME | "(" term ")"
//! NAME  := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! `^m` may not be applied to anything that already contains a marker.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// The generating set `X`, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if !is_valid_name(&name) {
                return Err(Error::InvalidGeneratorName(name));
            }
            if alphabet.index.contains_key(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            alphabet
                .index
                .insert(name.clone(), alphabet.names.len() as u32);
            alphabet.names.push(name);
        }
        Ok(alphabet)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, generator: u32) -> &str {
        &self.names[generator as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// Every letter `x` and `x⁻¹`, positive letters first per generator.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len() as u32).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }
}

/// A generator or its formal inverse.
///
/// Ordered by generator index, with `x` before `x⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    pub const fn new(generator: u32, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: u32) -> Self {
        Letter::new(generator, false)
    }

    pub const fn neg(generator: u32) -> Self {
        Letter::new(generator, true)
    }

    pub fn generator(self) -> u32 {
        self.generator
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    fn write(self, alphabet: &Alphabet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(alphabet.name(self.generator))?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// An element of the free monoid with involution `(X ∪ X⁻¹)*`.
///
/// Ordering is shortlex, which makes sorted listings of free-group
/// elements read naturally (`1, x, x^-1, y, ...`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Reverses the word and flips every letter.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Cancels every factor `a a⁻¹` until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &letter in &self.0 {
            if out.last() == Some(&letter.inverse()) {
                out.pop();
            } else {
                out.push(letter);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayWord {
            word: self,
            alphabet,
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

struct DisplayWord<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            letter.write(self.alphabet, f)?;
        }
        Ok(())
    }
}

/// A term `u₀ (v₁)^m u₁ ⋯ (vₙ)^m uₙ`.
///
/// `head` is `u₀`; each segment is a jump word `vᵢ` followed by a path
/// word `uᵢ`. With no segments the term is a plain word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FTerm {
    head: Word,
    segments: Vec<(Word, Word)>,
}

impl FTerm {
    pub fn new(head: Word, segments: Vec<(Word, Word)>) -> Self {
        FTerm { head, segments }
    }

    pub fn empty() -> Self {
        FTerm::default()
    }

    /// `(w)^m` on its own.
    pub fn jump(word: Word) -> Self {
        FTerm {
            head: Word::empty(),
            segments: vec![(word, Word::empty())],
        }
    }

    pub fn head(&self) -> &Word {
        &self.head
    }

    pub fn segments(&self) -> &[(Word, Word)] {
        &self.segments
    }

    pub fn jump_count(&self) -> usize {
        self.segments.len()
    }

    /// The underlying word when there are no jumps.
    pub fn as_word(&self) -> Option<&Word> {
        self.segments.is_empty().then_some(&self.head)
    }

    /// `|u₀| + |v₁| + |u₁| + ⋯ + |uₙ|`.
    pub fn len(&self) -> usize {
        self.head.len()
            + self
                .segments
                .iter()
                .map(|(v, u)| v.len() + u.len())
                .sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_empty() && self.segments.is_empty()
    }

    pub fn concat(&self, other: &FTerm) -> FTerm {
        let mut out = self.clone();
        out.append(other);
        out
    }

    fn append(&mut self, other: &FTerm) {
        let last = match self.segments.last_mut() {
            Some((_, u)) => u,
            None => &mut self.head,
        };
        *last = last.concat(&other.head);
        self.segments.extend(other.segments.iter().cloned());
    }

    /// `(u₀ v₁^m ⋯ uₙ)⁻¹ = uₙ⁻¹ (vₙ⁻¹)^m ⋯ u₀⁻¹`.
    pub fn inverse(&self) -> FTerm {
        let mut paths: Vec<&Word> = Vec::with_capacity(self.segments.len() + 1);
        paths.push(&self.head);
        paths.extend(self.segments.iter().map(|(_, u)| u));
        let head = paths.last().map(|w| w.inverse()).unwrap_or_default();
        let segments = (0..self.segments.len())
            .rev()
            .map(|i| (self.segments[i].0.inverse(), paths[i].inverse()))
            .collect();
        FTerm { head, segments }
    }

    /// Drops every marker: `u₀ v₁ u₁ ⋯ vₙ uₙ`.
    pub fn erase_m(&self) -> Word {
        let mut letters = self.head.0.clone();
        for (v, u) in &self.segments {
            letters.extend_from_slice(&v.0);
            letters.extend_from_slice(&u.0);
        }
        Word(letters)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayTerm {
            term: self,
            alphabet,
        }
    }
}

impl From<Word> for FTerm {
    fn from(head: Word) -> Self {
        FTerm {
            head,
            segments: Vec::new(),
        }
    }
}

struct DisplayTerm<'a> {
    term: &'a FTerm,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.alphabet;
        let mut tokens: Vec<String> = Vec::new();
        let path = |word: &Word, tokens: &mut Vec<String>| {
            tokens.extend(
                word.letters()
                    .iter()
                    .map(|l| Word::new(vec![*l]).display(alphabet).to_string()),
            );
        };
        path(&self.term.head, &mut tokens);
        for (v, u) in &self.term.segments {
            tokens.push(format!("({})^m", v.display(alphabet)));
            path(u, &mut tokens);
        }
        f.write_str(&tokens.join(" "))
    }
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Open,
    Close,
    Inverse,
    Jump,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                tokens.push((i, Token::Open));
                i += 1;
            }
            b')' => {
                tokens.push((i, Token::Close));
                i += 1;
            }
            b'^' => {
                let rest = &text[i + 1..];
                if rest.starts_with("-1") {
                    tokens.push((i, Token::Inverse));
                    i += 3;
                } else if rest.starts_with('m')
                    && !rest[1..]
                        .chars()
                        .next()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    tokens.push((i, Token::Jump));
                    i += 2;
                } else {
                    return Err(Error::Syntax {
                        pos: i,
                        message: "malformed exponent, expected ^-1 or ^m".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Name(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    message: format!(
                        "unexpected character `{}`",
                        text[i..].chars().next().unwrap()
                    ),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn sequence(&mut self) -> Result<FTerm> {
        let mut term = FTerm::empty();
        loop {
            match self.peek() {
                None | Some(Token::Close) => return Ok(term),
                _ => {
                    let item = self.item()?;
                    term.append(&item);
                }
            }
        }
    }

    fn item(&mut self) -> Result<FTerm> {
        let start = self.pos();
        let atom = match self.tokens.get(self.at).cloned() {
            Some((_, Token::Name(name))) => {
                self.at += 1;
                let g = self
                    .alphabet
                    .lookup(&name)
                    .ok_or(Error::UnknownGenerator(name))?;
                FTerm::from(Word(vec![Letter::pos(g)]))
            }
            Some((_, Token::Open)) => {
                self.at += 1;
                let inner = self.sequence()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(Error::Syntax {
                        pos: self.pos(),
                        message: "unbalanced parenthesis".into(),
                    });
                }
                self.at += 1;
                inner
            }
            Some((p, tok)) => {
                return Err(Error::Syntax {
                    pos: p,
                    message: format!("unexpected {tok:?}"),
                })
            }
            None => unreachable!("item called at end of input"),
        };
        match self.peek() {
            Some(Token::Inverse) => {
                self.at += 1;
                Ok(atom.inverse())
            }
            Some(Token::Jump) => {
                self.at += 1;
                match atom.as_word() {
                    Some(word) => Ok(FTerm::jump(word.clone())),
                    None => Err(Error::NestedJump { pos: start }),
                }
            }
            _ => Ok(atom),
        }
        .and_then(|t| match self.peek() {
            Some(Token::Inverse) | Some(Token::Jump) => Err(Error::Syntax {
                pos: self.pos(),
                message: "stacked exponents".into(),
            }),
            _ => Ok(t),
        })
    }
}

/// Parses a term; `^m` markers may not nest.
pub fn parse_term(text: &str, alphabet: &Alphabet) -> Result<FTerm> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        at: 0,
        end: text.len(),
        alphabet,
    };
    let term = parser.sequence()?;
    if parser.at != parser.tokens.len() {
        return Err(Error::Syntax {
            pos: parser.pos(),
            message: "unbalanced parenthesis".into(),
        });
    }
    Ok(term)
}

/// Parses a plain word. No reduction is performed.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let term = parse_term(text, alphabet)?;
    term.as_word().cloned().ok_or(Error::UnexpectedJump)
}
