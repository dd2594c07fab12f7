//! Group elements of F2 x F2 in normal form.
//!
//! An element is a pair of freely reduced words, one per free factor.
//! The pair is unique, so equality and hashing are structural and the
//! canonical key is an injective serialization.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Factor, FreeWord};

/// Normal form of an element: left word over `+-1,+-2`, right over `+-3,+-4`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupElement {
    left: FreeWord,
    right: FreeWord,
}

impl GroupElement {
    pub fn identity() -> GroupElement {
        GroupElement::default()
    }

    /// Pairs two reduced words, checking each sits in its factor.
    pub fn new(left: FreeWord, right: FreeWord) -> Result<GroupElement> {
        if let Some(&l) = left.letters().iter().find(|&&l| l.abs() > 2) {
            return Err(Error::WrongFactor { letter: l, side: "left" });
        }
        if let Some(&l) = right.letters().iter().find(|&&l| l.abs() < 3) {
            return Err(Error::WrongFactor { letter: l, side: "right" });
        }
        Ok(GroupElement { left, right })
    }

    /// Reduces raw letter sequences into an element.
    pub fn from_letters(left: &[i8], right: &[i8]) -> Result<GroupElement> {
        GroupElement::new(FreeWord::reduce(left)?, FreeWord::reduce(right)?)
    }

    pub fn left(&self) -> &FreeWord {
        &self.left
    }

    pub fn right(&self) -> &FreeWord {
        &self.right
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    /// Componentwise concatenate-and-reduce product.
    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            left: self.left.mul(&rhs.left),
            right: self.right.mul(&rhs.right),
        }
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement {
            left: self.left.inverse(),
            right: self.right.inverse(),
        }
    }

    /// Geodesic length under the standard marking s1.
    ///
    /// Every s1 generator moves exactly one factor by one letter, so the
    /// length is `|left| + |right|`. The graph-search tests check this
    /// against BFS distance rather than assuming it.
    pub fn s1_len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Injective text key: left letters, `|`, right letters, both
    /// comma-separated signed decimals. The identity is `"|"`.
    pub fn canonical_key(&self) -> String {
        let mut out = String::with_capacity(3 * (self.left.len() + self.right.len()) + 1);
        push_letters(&mut out, self.left.letters());
        out.push('|');
        push_letters(&mut out, self.right.letters());
        out
    }

    /// Strict inverse of [`canonical_key`]: rejects anything that would
    /// not re-serialize byte-identically (whitespace, signs, leading
    /// zeros, unreduced or wrong-factor letters).
    ///
    /// [`canonical_key`]: GroupElement::canonical_key
    pub fn parse_key(key: &str) -> Result<GroupElement> {
        let bad = || Error::BadKey(key.to_string());
        let mut halves = key.split('|');
        let left = halves.next().ok_or_else(bad)?;
        let right = halves.next().ok_or_else(bad)?;
        if halves.next().is_some() {
            return Err(bad());
        }
        let left = parse_letters(left, key)?;
        let right = parse_letters(right, key)?;
        for w in [&left, &right] {
            if w.windows(2).any(|p| p[0] == -p[1]) {
                return Err(bad());
            }
        }
        if left.iter().any(|&l| Factor::of(l).ok() != Some(Factor::Left))
            || right.iter().any(|&l| Factor::of(l).ok() != Some(Factor::Right))
        {
            return Err(bad());
        }
        GroupElement::from_letters(&left, &right)
    }
}

fn push_letters(out: &mut String, letters: &[i8]) {
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(itoa(*l));
    }
}

fn itoa(l: i8) -> &'static str {
    match l {
        1 => "1",
        2 => "2",
        3 => "3",
        4 => "4",
        -1 => "-1",
        -2 => "-2",
        -3 => "-3",
        -4 => "-4",
        _ => unreachable!("letters are validated on construction"),
    }
}

fn parse_letters(text: &str, key: &str) -> Result<Vec<i8>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in text.split(',') {
        let l = match part {
            "1" => 1,
            "2" => 2,
            "3" => 3,
            "4" => 4,
            "-1" => -1,
            "-2" => -2,
            "-3" => -3,
            "-4" => -4,
            _ => return Err(Error::BadKey(key.to_string())),
        };
        out.push(l);
    }
    Ok(out)
}

/// Sorts elements by the byte order of their canonical keys. This is the
/// tie-break order used everywhere determinism matters.
pub fn sort_by_key(elements: &mut [GroupElement]) {
    elements.sort_by_cached_key(|e| e.canonical_key());
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_key())
    }
}
