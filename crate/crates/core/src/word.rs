//! Freely reduced words in one rank-2 free factor.
//!
//! Letters are signed indices: `+-1, +-2` for the first factor, `+-3, +-4`
//! for the second. A `FreeWord` never mixes the two index sets.

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Inline capacity covers every word that shows up at desk scale.
pub(crate) type Letters = SmallVec<[i8; 16]>;

/// The free factor a letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Left,
    Right,
}

impl Factor {
    /// Factor of a letter, or an error for indices outside `+-1..+-4`.
    pub fn of(letter: i8) -> Result<Factor> {
        match letter {
            1 | -1 | 2 | -2 => Ok(Factor::Left),
            3 | -3 | 4 | -4 => Ok(Factor::Right),
            other => Err(Error::BadLetter(other)),
        }
    }
}

/// A freely reduced word over one factor's letters.
///
/// Invariants: no adjacent pair of letters sums to zero, and all letters
/// come from a single factor's index set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Letters,
}

impl FreeWord {
    pub fn empty() -> FreeWord {
        FreeWord::default()
    }

    /// Free reduction of an arbitrary letter sequence.
    ///
    /// Rejects letters outside the generator range and sequences that mix
    /// the two factors. Idempotent; the result represents the same element
    /// of the free group.
    pub fn reduce(input: &[i8]) -> Result<FreeWord> {
        let mut factor: Option<Factor> = None;
        for &l in input {
            let f = Factor::of(l)?;
            match factor {
                None => factor = Some(f),
                Some(prev) if prev != f => {
                    let first = input.iter().find(|&&x| Factor::of(x).ok() == Some(prev));
                    return Err(Error::MixedFactors(*first.unwrap(), l));
                }
                _ => {}
            }
        }
        let mut stack: Letters = SmallVec::with_capacity(input.len());
        for &l in input {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Ok(FreeWord { letters: stack })
    }

    /// Builds from letters already known to be reduced and single-factor.
    pub(crate) fn from_reduced(letters: Letters) -> FreeWord {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        FreeWord { letters }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The factor this word lives in, if it has any letters.
    pub fn factor(&self) -> Option<Factor> {
        self.letters.first().map(|&l| Factor::of(l).unwrap())
    }

    /// Reverse-and-negate inverse.
    pub fn inverse(&self) -> FreeWord {
        let letters = self.letters.iter().rev().map(|&l| -l).collect();
        FreeWord::from_reduced(letters)
    }

    /// Concatenate-and-reduce. Both operands are already reduced, so only
    /// the seam can cancel.
    pub fn mul(&self, rhs: &FreeWord) -> FreeWord {
        debug_assert!(
            self.is_empty() || rhs.is_empty() || self.factor() == rhs.factor(),
            "free words from different factors"
        );
        let mut out = self.letters.clone();
        for &l in rhs.letters.iter() {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord::from_reduced(out)
    }

    /// Signed count of occurrences of `index` (given as the positive index).
    pub fn exponent_sum(&self, index: i8) -> i64 {
        let index = index.abs();
        self.letters
            .iter()
            .map(|&l| {
                if l == index {
                    1
                } else if l == -index {
                    -1
                } else {
                    0
                }
            })
            .sum()
    }

    /// Drops every occurrence of `+-index` and reduces what remains.
    pub fn delete_letter(&self, index: i8) -> FreeWord {
        let index = index.abs();
        let kept: Vec<i8> = self
            .letters
            .iter()
            .copied()
            .filter(|l| l.abs() != index)
            .collect();
        // Deletion can create new cancellations, so re-reduce.
        FreeWord::reduce(&kept).expect("letters were already validated")
    }

    /// Strips the maximal trailing run of `+-index` letters.
    ///
    /// In a reduced word such a run is a power of a single signed letter,
    /// so the remainder is still reduced.
    pub fn strip_trailing(&self, index: i8) -> FreeWord {
        let index = index.abs();
        let mut letters = self.letters.clone();
        while letters.last().map(|l| l.abs()) == Some(index) {
            letters.pop();
        }
        FreeWord::from_reduced(letters)
    }

    /// `index` repeated `exponent` times (negated when negative).
    pub fn power(index: i8, exponent: i64) -> Result<FreeWord> {
        Factor::of(index)?;
        let letter = if exponent >= 0 { index } else { -index };
        let letters = std::iter::repeat_n(letter, exponent.unsigned_abs() as usize)
            .collect();
        Ok(FreeWord::from_reduced(letters))
    }
}
