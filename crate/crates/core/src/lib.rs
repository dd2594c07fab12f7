//! Exact computations in the group F2 x F2 under two markings whose
//! Cayley graphs behave very differently.
//!
//! The standard marking s1 sends its four generators to the obvious
//! coordinates of the direct product of two rank-2 free groups. The
//! twisted marking s2 = {a, b, c, t} realizes the group as an HNN
//! extension of F2 x C over the subgroup generated by ac and bc, and its
//! Cayley graph fails minimal almost convexity and the loop shortening
//! property, while s1 satisfies much stronger convexity conditions.
//!
//! The crate provides:
//!
//! * normal forms and exact arithmetic ([`element`], [`word`]);
//! * markings, word syntax and evaluation ([`genset`]);
//! * the HNN structure of s2: base subgroup, sheets, homomorphisms
//!   ([`hnn`]);
//! * exhaustive ball enumeration with a validated cache format
//!   ([`ball`]);
//! * exact distance and corridor searches ([`search`], [`travel`]);
//! * per-radius convexity checkers, witness-family verifiers and
//!   evidence scans with structured JSON reports ([`checks`],
//!   [`report`]);
//! * DOT export ([`dot`]).
//!
//! All values are immutable after construction and safe to share across
//! threads; the ball builder and the scans parallelize internally but
//! produce scheduling-independent results.

#![forbid(unsafe_code)]

pub mod ball;
pub mod checks;
pub mod dot;
pub mod element;
pub mod error;
pub mod genset;
pub mod hnn;
pub mod report;
pub mod search;
pub mod travel;
pub mod word;

pub use ball::{build_ball, BallIndex, Limits};
pub use element::GroupElement;
pub use error::{Error, Result};
pub use genset::{GenSet, GenWord};
pub use report::{CheckReport, Verdict, Witness};
pub use search::{distance, inside_distance, sphere_pairs_leq2, Dist, InsideDist};
pub use travel::{fellow_travel_check, fftp_falsify, loop_shorten_search, Loop, ShorterLoop};
pub use word::FreeWord;
