//! Generating sets (markings) of F2 x F2 and words over them.
//!
//! A marking is 4 labeled generators, hence 8 directed edge labels in the
//! Cayley graph. Two markings are built in:
//!
//!   s1: a -> (g1|), b -> (g2|), c -> (|g3), d -> (|g4)   (standard)
//!   s2: a -> (g1|g3^-1), b -> (g2|g3^-1), c -> (|g3), t -> (|g4)
//!
//! s2 realizes the substitution a = x c, b = y c linking the two
//! presentations; the twisted images are what break almost convexity.
//!
//! Surface syntax for words: one ASCII letter per token, lowercase for a
//! generator, uppercase for its inverse, no whitespace.

use std::fmt;

use crate::element::GroupElement;
use crate::error::{Error, Result};

/// Identity of a marking. Custom markings compare by their images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenSetId {
    S1,
    S2,
    Custom,
}

/// A marking of the group: 4 labeled generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSet {
    id: GenSetId,
    labels: [char; 4],
    images: [GroupElement; 4],
}

fn elem(left: &[i8], right: &[i8]) -> GroupElement {
    GroupElement::from_letters(left, right).expect("builtin generator images are valid")
}

impl GenSet {
    /// The standard marking a, b, c, d.
    pub fn s1() -> GenSet {
        GenSet {
            id: GenSetId::S1,
            labels: ['a', 'b', 'c', 'd'],
            images: [
                elem(&[1], &[]),
                elem(&[2], &[]),
                elem(&[], &[3]),
                elem(&[], &[4]),
            ],
        }
    }

    /// The twisted marking a, b, c, t.
    pub fn s2() -> GenSet {
        GenSet {
            id: GenSetId::S2,
            labels: ['a', 'b', 'c', 't'],
            images: [
                elem(&[1], &[-3]),
                elem(&[2], &[-3]),
                elem(&[], &[3]),
                elem(&[], &[4]),
            ],
        }
    }

    /// A custom marking from 4 images, labeled a, b, c, d positionally.
    ///
    /// Rejected unless no image is the identity and the 8 directed images
    /// are pairwise distinct (those two conditions make the Cayley graph
    /// 8-regular without parallel edges).
    pub fn custom(images: [GroupElement; 4]) -> Result<GenSet> {
        let gs = GenSet {
            id: GenSetId::Custom,
            labels: ['a', 'b', 'c', 'd'],
            images,
        };
        gs.validate()?;
        Ok(gs)
    }

    fn validate(&self) -> Result<()> {
        for (i, img) in self.images.iter().enumerate() {
            if img.is_identity() {
                return Err(Error::InvalidGenSet(format!(
                    "generator {} is the identity",
                    self.labels[i]
                )));
            }
        }
        let directed: Vec<(char, GroupElement)> = self.directed_edges().collect();
        for i in 0..directed.len() {
            for j in (i + 1)..directed.len() {
                if directed[i].1 == directed[j].1 {
                    return Err(Error::InvalidGenSet(format!(
                        "directed images of {} and {} coincide",
                        directed[i].0, directed[j].0
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> GenSetId {
        self.id
    }

    /// Short name used in reports and cache headers.
    pub fn name(&self) -> &'static str {
        match self.id {
            GenSetId::S1 => "s1",
            GenSetId::S2 => "s2",
            GenSetId::Custom => "custom",
        }
    }

    pub fn labels(&self) -> &[char; 4] {
        &self.labels
    }

    pub fn images(&self) -> &[GroupElement; 4] {
        &self.images
    }

    /// True when the images are exactly the builtin s2 images. Sheet
    /// computations are only meaningful for this marking.
    pub fn is_s2(&self) -> bool {
        self.images == GenSet::s2().images
    }

    /// The 8 directed edge labels with their images, in the fixed order
    /// lowercase a..d then uppercase A..D. Every deterministic iteration
    /// in the crate uses this order.
    pub fn directed_edges(&self) -> impl Iterator<Item = (char, GroupElement)> + '_ {
        let pos = self
            .labels
            .iter()
            .zip(self.images.iter())
            .map(|(&l, img)| (l, img.clone()));
        let neg = self
            .labels
            .iter()
            .zip(self.images.iter())
            .map(|(&l, img)| (l.to_ascii_uppercase(), img.inv()));
        pos.chain(neg)
    }

    /// Image of a single directed token.
    pub fn edge(&self, token: char) -> Result<GroupElement> {
        let lower = token.to_ascii_lowercase();
        for (i, &l) in self.labels.iter().enumerate() {
            if l == lower {
                return Ok(if token.is_ascii_lowercase() {
                    self.images[i].clone()
                } else {
                    self.images[i].inv()
                });
            }
        }
        Err(Error::UnknownToken { token, genset: self.name().to_string() })
    }

    pub fn token_valid(&self, token: char) -> bool {
        token.is_ascii_alphabetic() && self.labels.contains(&token.to_ascii_lowercase())
    }

    /// Evaluates a word left to right; the empty word is the identity.
    pub fn eval(&self, word: &GenWord) -> Result<GroupElement> {
        let mut acc = GroupElement::identity();
        for token in word.tokens() {
            acc = acc.mul(&self.edge(token)?);
        }
        Ok(acc)
    }

    /// Parse-and-evaluate convenience.
    pub fn eval_str(&self, text: &str) -> Result<GroupElement> {
        self.eval(&GenWord::parse(self, text)?)
    }

    /// Successive vertices of the path reading `word` from `base`;
    /// `word.len() + 1` entries starting at `base`.
    pub fn path_vertices(&self, base: &GroupElement, word: &GenWord) -> Result<Vec<GroupElement>> {
        let mut out = Vec::with_capacity(word.len() + 1);
        out.push(base.clone());
        for token in word.tokens() {
            let next = out.last().unwrap().mul(&self.edge(token)?);
            out.push(next);
        }
        Ok(out)
    }

    /// Key used to identify this marking in ball-cache headers:
    /// `s1`, `s2`, or `custom:` followed by the 4 canonical image keys
    /// joined with `;`.
    pub fn cache_key(&self) -> String {
        match self.id {
            GenSetId::S1 => "s1".to_string(),
            GenSetId::S2 => "s2".to_string(),
            GenSetId::Custom => {
                let keys: Vec<String> =
                    self.images.iter().map(|g| g.canonical_key()).collect();
                format!("custom:{}", keys.join(";"))
            }
        }
    }

    /// Inverse of [`cache_key`](GenSet::cache_key).
    pub fn from_cache_key(key: &str) -> Result<GenSet> {
        match key {
            "s1" => return Ok(GenSet::s1()),
            "s2" => return Ok(GenSet::s2()),
            _ => {}
        }
        let body = key
            .strip_prefix("custom:")
            .ok_or_else(|| Error::BadSelector(key.to_string()))?;
        let parts: Vec<&str> = body.split(';').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidGenSet(format!(
                "expected 4 generator keys, got {}",
                parts.len()
            )));
        }
        let mut images = Vec::with_capacity(4);
        for p in parts {
            images.push(GroupElement::parse_key(p)?);
        }
        GenSet::custom(images.try_into().expect("length checked"))
    }

    /// Parses a command-line selector: `s1`, `s2`, or
    /// `custom:<w1,w2,w3,w4>` where each `wi` is a word over the s1
    /// alphabet describing that generator's image.
    pub fn parse_selector(selector: &str) -> Result<GenSet> {
        match selector {
            "s1" => return Ok(GenSet::s1()),
            "s2" => return Ok(GenSet::s2()),
            _ => {}
        }
        let body = selector
            .strip_prefix("custom:")
            .ok_or_else(|| Error::BadSelector(selector.to_string()))?;
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidGenSet(format!(
                "expected 4 comma-separated generator words, got {}",
                parts.len()
            )));
        }
        let s1 = GenSet::s1();
        let mut images = Vec::with_capacity(4);
        for p in parts {
            if p.is_empty() {
                return Err(Error::InvalidGenSet(
                    "empty generator word".to_string(),
                ));
            }
            images.push(s1.eval_str(p)?);
        }
        GenSet::custom(images.try_into().expect("length checked"))
    }
}

/// A word over one marking's directed edge labels.
///
/// Tokens are validated against a marking at parse time; evaluation
/// re-validates, so a word can only be used with markings that share its
/// alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenWord {
    tokens: String,
}

impl GenWord {
    /// Parses surface syntax (lowercase generator, uppercase inverse).
    pub fn parse(gs: &GenSet, text: &str) -> Result<GenWord> {
        for token in text.chars() {
            if !gs.token_valid(token) {
                return Err(Error::UnknownToken { token, genset: gs.name().to_string() });
            }
        }
        Ok(GenWord { tokens: text.to_string() })
    }

    pub(crate) fn from_tokens(tokens: String) -> GenWord {
        GenWord { tokens }
    }

    pub fn empty() -> GenWord {
        GenWord::default()
    }

    pub fn as_str(&self) -> &str {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = char> + '_ {
        self.tokens.chars()
    }

    /// Formal inverse: reverse the tokens and swap case.
    pub fn inverse(&self) -> GenWord {
        let tokens = self
            .tokens
            .chars()
            .rev()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    c.to_ascii_uppercase()
                } else {
                    c.to_ascii_lowercase()
                }
            })
            .collect();
        GenWord { tokens }
    }

    /// Concatenation (no free reduction; words are paths, not elements).
    pub fn concat(&self, rhs: &GenWord) -> GenWord {
        GenWord { tokens: format!("{}{}", self.tokens, rhs.tokens) }
    }

    /// Signed count of occurrences of the generator labeled `label`
    /// (given in lowercase): +1 per lowercase, -1 per uppercase.
    pub fn exponent_sum(&self, label: char) -> i64 {
        let lower = label.to_ascii_lowercase();
        self.tokens
            .chars()
            .map(|c| {
                if c == lower {
                    1
                } else if c == lower.to_ascii_uppercase() {
                    -1
                } else {
                    0
                }
            })
            .sum()
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens)
    }
}

/// `label` repeated `exponent` times (inverse label when negative).
pub fn power_word(label: char, exponent: i64) -> GenWord {
    let c = if exponent >= 0 {
        label.to_ascii_lowercase()
    } else {
        label.to_ascii_uppercase()
    };
    GenWord::from_tokens(
        std::iter::repeat_n(c, exponent.unsigned_abs() as usize)
            .collect(),
    )
}
