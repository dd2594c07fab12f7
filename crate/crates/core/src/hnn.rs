//! HNN structure of the twisted marking.
//!
//! Under s2 the group is an HNN extension of P = F2 x C over the subgroup
//! H generated by ac and bc, with stable letter t acting as the identity
//! on H. In internal coordinates everything becomes concrete:
//!
//!   P = all elements whose right word is a power of g3,
//!   H = all elements with empty right word (the first free factor),
//!   sheets = cosets xP, tagged by the right word minus its trailing
//!   g3-run,
//!
//! together with two homomorphisms that the loop-shortening lower bounds
//! rest on: the retraction killing t and the height map onto an infinite
//! cyclic group.

use std::fmt;

use smallvec::SmallVec;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::genset::{GenSet, GenWord};
use crate::word::FreeWord;

/// Membership in H = <ac, bc>: exactly the elements with empty right
/// component. Equivalently, the elements w c^k with k the exponent sum
/// of the a,b-word w.
pub fn is_in_h(x: &GroupElement) -> bool {
    x.right().is_empty()
}

/// A word in the H-generators: letters +-1 for (ac)^{+-1}, +-2 for
/// (bc)^{+-1}.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HWord {
    letters: SmallVec<[i8; 16]>,
}

impl HWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    /// Product of the generator images: (ac) -> (g1|), (bc) -> (g2|).
    pub fn eval(&self) -> GroupElement {
        let ac = GroupElement::from_letters(&[1], &[]).unwrap();
        let bc = GroupElement::from_letters(&[2], &[]).unwrap();
        let mut acc = GroupElement::identity();
        for &l in self.letters.iter() {
            let g = match l {
                1 => ac.clone(),
                -1 => ac.inv(),
                2 => bc.clone(),
                -2 => bc.inv(),
                _ => unreachable!(),
            };
            acc = acc.mul(&g);
        }
        acc
    }
}

impl fmt::Display for HWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in self.letters.iter() {
            let name = if l.abs() == 1 { "ac" } else { "bc" };
            if l > 0 {
                write!(f, "({name})")?;
            } else {
                write!(f, "({name})^-1")?;
            }
        }
        Ok(())
    }
}

/// Rewrites a word over a, b (s2 alphabet) as a word in the H-generators
/// by replacing each s^{p} with (sc)^{p}.
///
/// Evaluating the result equals `eval(s2, w) * c^k` with k the exponent
/// sum of `w`, and the output has one H-generator per input token.
pub fn express_in_h_generators(w: &GenWord) -> Result<HWord> {
    let mut letters = SmallVec::new();
    for token in w.tokens() {
        let l = match token {
            'a' => 1,
            'A' => -1,
            'b' => 2,
            'B' => -2,
            other => {
                return Err(Error::BadParameter(format!(
                    "expected a word over a, b and inverses, found '{other}'"
                )))
            }
        };
        letters.push(l);
    }
    Ok(HWord { letters })
}

/// The retraction fixing a, b, c and killing t: deletes every +-4 letter
/// from the right component. A homomorphism, and idempotent.
pub fn retraction(x: &GroupElement) -> GroupElement {
    GroupElement::new(x.left().clone(), x.right().delete_letter(4))
        .expect("deletion preserves the factor")
}

/// Height onto the infinite cyclic group <e>: a, b -> e, c -> e^-1,
/// t -> 1. Returns the exponent of e, which in internal coordinates is
/// minus the g3 exponent sum of the right component. Vanishes on H.
pub fn height(x: &GroupElement) -> i64 {
    -x.right().exponent_sum(3)
}

/// Canonical tag of the sheet (coset xP) containing an element: the right
/// word with its maximal trailing g3-run stripped. Only equality of tags
/// is meaningful.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SheetTag(FreeWord);

impl SheetTag {
    pub fn is_base(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SheetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let probe = GroupElement::new(FreeWord::empty(), self.0.clone()).unwrap();
        let key = probe.canonical_key();
        f.write_str(key.trim_start_matches('|'))?;
        Ok(())
    }
}

/// Sheet of an element under the s2 marking.
pub fn sheet(x: &GroupElement) -> SheetTag {
    SheetTag(x.right().strip_trailing(3))
}

/// Indices of the edges along `w` (read from `start`) that change sheet.
/// Only defined for the s2 marking; every returned edge is labeled t or T.
pub fn path_sheet_crossings(
    gs: &GenSet,
    start: &GroupElement,
    w: &GenWord,
) -> Result<Vec<usize>> {
    if !gs.is_s2() {
        return Err(Error::SheetsUnsupported);
    }
    let vertices = gs.path_vertices(start, w)?;
    let mut out = Vec::new();
    for (i, pair) in vertices.windows(2).enumerate() {
        if sheet(&pair[0]) != sheet(&pair[1]) {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s2() -> GenSet {
        GenSet::s2()
    }

    #[test]
    fn h_membership_examples() {
        let s2 = s2();
        assert!(is_in_h(&s2.eval_str("ac").unwrap()));
        assert!(!is_in_h(&s2.eval_str("a").unwrap()));
        // exponent sum of "bA" is 0, so no c-correction is needed
        assert!(is_in_h(&s2.eval_str("bA").unwrap()));
    }

    #[test]
    fn h_generator_rewriting_examples() {
        let s2 = s2();
        let w = GenWord::parse(&s2, "a").unwrap();
        let h = express_in_h_generators(&w).unwrap();
        assert_eq!(h.to_string(), "(ac)");
        assert_eq!(h.eval(), s2.eval_str("ac").unwrap());

        let empty = express_in_h_generators(&GenWord::empty()).unwrap();
        assert!(empty.is_empty());
        assert!(empty.eval().is_identity());

        let w = GenWord::parse(&s2, "aB").unwrap();
        let h = express_in_h_generators(&w).unwrap();
        assert_eq!(h.to_string(), "(ac)(bc)^-1");
        // exponent sum of "aB" is 0, so the rewriting evaluates to eval(s2, "aB") itself
        assert_eq!(h.eval(), s2.eval_str("aB").unwrap());
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn h_generator_rewriting_rejects_other_tokens() {
        let s2 = s2();
        let w = GenWord::parse(&s2, "act").unwrap();
        assert!(express_in_h_generators(&w).is_err());
    }

    #[test]
    fn retraction_examples() {
        let s2 = s2();
        assert!(retraction(&s2.eval_str("t").unwrap()).is_identity());
        assert_eq!(
            retraction(&s2.eval_str("act").unwrap()),
            s2.eval_str("ac").unwrap()
        );
    }

    #[test]
    fn height_examples() {
        let s2 = s2();
        assert_eq!(height(&s2.eval_str("c").unwrap()), -1);
        assert_eq!(height(&s2.eval_str("a").unwrap()), 1);
        assert_eq!(height(&s2.eval_str("t").unwrap()), 0);
        // u2 = a^{2k} b^{-4k} a^{k} has height -k; k = 2 here
        let u2 = s2.eval_str("aaaaBBBBBBBBaa").unwrap();
        assert_eq!(height(&u2), -2);
    }

    #[test]
    fn sheet_examples() {
        let s2 = s2();
        let id = GroupElement::identity();
        assert_eq!(sheet(&s2.eval_str("a").unwrap()), sheet(&id));
        assert_ne!(sheet(&s2.eval_str("t").unwrap()), sheet(&id));
        assert_eq!(
            sheet(&s2.eval_str("tc").unwrap()),
            sheet(&s2.eval_str("t").unwrap())
        );
        assert!(sheet(&id).is_base());
    }

    #[test]
    fn sheet_constant_on_base_moves_only() {
        let s2 = s2();
        let x = s2.eval_str("taBct").unwrap();
        let tag = sheet(&x);
        for tok in ["a", "b", "c", "A", "B", "C"] {
            let moved = x.mul(&s2.eval_str(tok).unwrap());
            assert_eq!(sheet(&moved), tag, "sheet moved under {tok}");
        }
        for tok in ["t", "T"] {
            let moved = x.mul(&s2.eval_str(tok).unwrap());
            assert_ne!(sheet(&moved), tag, "sheet failed to move under {tok}");
        }
    }

    #[test]
    fn crossings_examples() {
        let s2 = s2();
        let id = GroupElement::identity();
        let w = GenWord::parse(&s2, "ab").unwrap();
        assert!(path_sheet_crossings(&s2, &id, &w).unwrap().is_empty());
        let w = GenWord::parse(&s2, "t").unwrap();
        assert_eq!(path_sheet_crossings(&s2, &id, &w).unwrap(), vec![0]);
    }

    #[test]
    fn crossings_unsupported_outside_s2() {
        let s1 = GenSet::s1();
        let w = GenWord::parse(&s1, "d").unwrap();
        assert!(matches!(
            path_sheet_crossings(&s1, &GroupElement::identity(), &w),
            Err(Error::SheetsUnsupported)
        ));
    }

    fn s2_word() -> impl Strategy<Value = String> {
        prop::collection::vec(
            prop::sample::select("abctABCT".chars().collect::<Vec<_>>()),
            0..12,
        )
        .prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn height_is_a_homomorphism(x in s2_word(), y in s2_word()) {
            let s2 = s2();
            let gx = s2.eval_str(&x).unwrap();
            let gy = s2.eval_str(&y).unwrap();
            prop_assert_eq!(height(&gx.mul(&gy)), height(&gx) + height(&gy));
        }

        #[test]
        fn retraction_is_idempotent_homomorphism(x in s2_word(), y in s2_word()) {
            let s2 = s2();
            let gx = s2.eval_str(&x).unwrap();
            let gy = s2.eval_str(&y).unwrap();
            prop_assert_eq!(retraction(&retraction(&gx)), retraction(&gx));
            prop_assert_eq!(
                retraction(&gx.mul(&gy)),
                retraction(&gx).mul(&retraction(&gy))
            );
        }

        #[test]
        fn height_vanishes_on_h(x in s2_word()) {
            let s2 = s2();
            let gx = s2.eval_str(&x).unwrap();
            if is_in_h(&gx) {
                prop_assert_eq!(height(&gx), 0);
            }
        }
    }
}
