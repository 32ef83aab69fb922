//! Letters, variables and letter contexts.
//!
//! A symbol letter `a` carries the two variables `a0, a1`; a roman letter `x`
//! of Jordan size `d` carries `x0, ..., xd`. Every [`Variable`] records its
//! letter's kind, ordinal and size, so polynomials are self-describing and
//! the sl2 operators need no side table.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

const SYMBOL_NAMES: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
const ROMAN_NAMES: &[u8] = b"xyzwvutsrqponmlkjihgfedcba";

/// Roman letters sort before symbol letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterKind {
    Roman,
    Symbol,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    kind: LetterKind,
    ordinal: u16,
    size: u16,
}

impl Letter {
    pub fn symbol(ordinal: u16) -> Self {
        Letter { kind: LetterKind::Symbol, ordinal, size: 1 }
    }

    /// Panics if `size == 0`.
    pub fn roman(ordinal: u16, size: u16) -> Self {
        assert!(size >= 1, "Jordan size must be at least 1");
        Letter { kind: LetterKind::Roman, ordinal, size }
    }

    pub fn kind(self) -> LetterKind {
        self.kind
    }

    pub fn is_symbol(self) -> bool {
        self.kind == LetterKind::Symbol
    }

    pub fn is_roman(self) -> bool {
        self.kind == LetterKind::Roman
    }

    pub fn ordinal(self) -> u16 {
        self.ordinal
    }

    /// Jordan size `d` (1 for symbol letters).
    pub fn size(self) -> u16 {
        self.size
    }

    /// The same roman letter with another size.
    pub fn with_size(self, size: u16) -> Self {
        match self.kind {
            LetterKind::Roman => Letter::roman(self.ordinal, size),
            LetterKind::Symbol => self,
        }
    }

    /// Default name: symbols are `a, b, c, ...`, roman letters `x, y, z, w, v, ...`.
    pub fn name(self) -> String {
        let table = match self.kind {
            LetterKind::Symbol => SYMBOL_NAMES,
            LetterKind::Roman => ROMAN_NAMES,
        };
        match table.get(self.ordinal as usize) {
            Some(&c) => (c as char).to_string(),
            None => match self.kind {
                LetterKind::Symbol => format!("sym{}_", self.ordinal),
                LetterKind::Roman => format!("rom{}_", self.ordinal),
            },
        }
    }

    /// Panics if `index > size`.
    pub fn var(self, index: u16) -> Variable {
        Variable::new(self, index).expect("variable index out of range")
    }

    pub fn vars(self) -> impl Iterator<Item = Variable> {
        (0..=self.size).map(move |i| Variable { letter: self, index: i })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub(crate) fn symbol_ordinal_of(name: char) -> Option<u16> {
    SYMBOL_NAMES.iter().position(|&c| c as char == name).map(|p| p as u16)
}

pub(crate) fn roman_ordinal_of(name: char) -> Option<u16> {
    ROMAN_NAMES.iter().position(|&c| c as char == name).map(|p| p as u16)
}

/// Ordered by letter (kind, ordinal, size), then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    letter: Letter,
    index: u16,
}

impl Variable {
    pub fn new(letter: Letter, index: u16) -> Option<Self> {
        (index <= letter.size).then_some(Variable { letter, index })
    }

    pub fn letter(self) -> Letter {
        self.letter
    }

    pub fn index(self) -> u16 {
        self.index
    }

    /// Same letter, another index (if in range).
    pub fn shifted(self, index: u16) -> Option<Self> {
        Variable::new(self.letter, index)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.index)
    }
}

/// The alphabet a polynomial lives over: symbol letters and roman letters
/// with their Jordan sizes, i.e. the signature `d = (d1, ..., ds)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LetterContext {
    symbols: Vec<Letter>,
    romans: Vec<Letter>,
}

impl LetterContext {
    pub fn new(symbols: Vec<Letter>, romans: Vec<Letter>) -> Result<Self> {
        if symbols.iter().any(|l| !l.is_symbol()) || romans.iter().any(|l| !l.is_roman()) {
            return Err(Error::InvalidContext("letter listed under the wrong kind".into()));
        }
        let mut names = BTreeSet::new();
        for l in symbols.iter().chain(&romans) {
            if !names.insert(l.name()) {
                return Err(Error::InvalidContext(format!("letter `{l}` declared twice")));
            }
        }
        let mut seen = BTreeSet::new();
        if romans.iter().any(|l| !seen.insert(l.ordinal)) {
            return Err(Error::InvalidContext("roman ordinal declared twice".into()));
        }
        Ok(LetterContext { symbols, romans })
    }

    /// Roman letters `x, y, z, ...` with the given Jordan sizes.
    pub fn roman(signature: &[u16]) -> Result<Self> {
        if signature.contains(&0) {
            return Err(Error::InvalidContext("Jordan sizes must be at least 1".into()));
        }
        if signature.len() > ROMAN_NAMES.len() {
            return Err(Error::InvalidContext("too many roman letters".into()));
        }
        let romans = signature
            .iter()
            .enumerate()
            .map(|(i, &d)| Letter::roman(i as u16, d))
            .collect();
        LetterContext::new(Vec::new(), romans)
    }

    /// Symbol letters `a, b, c, ...`.
    pub fn symbolic(count: usize) -> Result<Self> {
        if count > SYMBOL_NAMES.len() {
            return Err(Error::InvalidContext("too many symbol letters".into()));
        }
        LetterContext::new((0..count as u16).map(Letter::symbol).collect(), Vec::new())
    }

    /// Parses a signature such as `"2,3"`.
    pub fn parse_signature(text: &str) -> Result<Self> {
        let sizes = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u16>()
                    .map_err(|_| Error::InvalidContext(format!("bad Jordan size `{}`", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        LetterContext::roman(&sizes)
    }

    pub fn symbols(&self) -> &[Letter] {
        &self.symbols
    }

    pub fn romans(&self) -> &[Letter] {
        &self.romans
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.romans.iter().chain(&self.symbols).copied()
    }

    pub fn signature(&self) -> Vec<u16> {
        self.romans.iter().map(|l| l.size).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty() && self.romans.is_empty()
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.letters().any(|l| l == letter)
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.letters().find(|l| l.name() == name)
    }

    /// Adds a roman letter of the given size with the next free ordinal.
    pub fn with_fresh_roman(&self, size: u16) -> (Self, Letter) {
        let ordinal = self.romans.iter().map(|l| l.ordinal + 1).max().unwrap_or(0);
        let fresh = Letter::roman(ordinal, size);
        let mut ctx = self.clone();
        ctx.romans.push(fresh);
        (ctx, fresh)
    }

    /// Union of two contexts (letters of `other` not already present).
    pub fn union(&self, other: &LetterContext) -> Result<Self> {
        let mut symbols = self.symbols.clone();
        let mut romans = self.romans.clone();
        for l in other.letters() {
            if !self.contains(l) {
                if l.is_symbol() {
                    symbols.push(l);
                } else {
                    romans.push(l);
                }
            }
        }
        LetterContext::new(symbols, romans)
    }
}
