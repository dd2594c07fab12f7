//! Exhaustive ball enumeration and the on-disk ball cache.
//!
//! `build_ball` materializes the ball of a given radius with the exact
//! graph distance of every member, by layered BFS over the implicit
//! Cayley graph. Layers may be expanded in parallel; the result is
//! independent of scheduling because each sphere is sorted by canonical
//! key before it is frozen.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::genset::GenSet;

/// Resource caps threaded through everything that can grow.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Hard cap on enumerated elements; exceeding it is an error, never a
    /// silent truncation.
    pub max_elements: usize,
    /// Optional wall-clock deadline.
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_elements: 5_000_000, deadline: None }
    }
}

impl Limits {
    pub fn with_max_elements(max_elements: usize) -> Limits {
        Limits { max_elements, ..Limits::default() }
    }

    pub(crate) fn check_count(&self, count: usize) -> Result<()> {
        if count > self.max_elements {
            return Err(Error::ElementCapExceeded { cap: self.max_elements });
        }
        Ok(())
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        if let Some(deadline) = self.deadline {
            if Instant::now() > deadline {
                return Err(Error::DeadlineExceeded);
            }
        }
        Ok(())
    }
}

/// A fully enumerated ball: every element within `radius` of the
/// identity, with its exact distance. Immutable once built.
#[derive(Debug, Clone)]
pub struct BallIndex {
    genset: GenSet,
    radius: u32,
    dist: HashMap<GroupElement, u32>,
    spheres: Vec<Vec<GroupElement>>,
}

/// Exhaustive BFS out to `radius`.
pub fn build_ball(gs: &GenSet, radius: u32, limits: &Limits) -> Result<BallIndex> {
    let edges: Vec<GroupElement> = gs.directed_edges().map(|(_, img)| img).collect();
    let mut dist: HashMap<GroupElement, u32> = HashMap::new();
    let mut spheres: Vec<Vec<GroupElement>> = Vec::with_capacity(radius as usize + 1);
    dist.insert(GroupElement::identity(), 0);
    spheres.push(vec![GroupElement::identity()]);
    for d in 0..radius {
        limits.check_deadline()?;
        let frontier = &spheres[d as usize];
        let mut candidates: Vec<GroupElement> = frontier
            .par_iter()
            .flat_map_iter(|x| edges.iter().map(move |g| x.mul(g)))
            .collect();
        candidates.sort_by_cached_key(|e| e.canonical_key());
        candidates.dedup();
        let mut next = Vec::new();
        for y in candidates {
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                next.push(y);
            }
        }
        limits.check_count(dist.len())?;
        spheres.push(next); // already sorted by key
    }
    Ok(BallIndex { genset: gs.clone(), radius, dist, spheres })
}

impl BallIndex {
    pub fn genset(&self) -> &GenSet {
        &self.genset
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Number of elements in the ball.
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains the identity
    }

    /// Exact distance from the identity, when the element is in the ball.
    /// `None` means the distance exceeds the radius.
    pub fn dist(&self, x: &GroupElement) -> Option<u32> {
        self.dist.get(x).copied()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.dist.contains_key(x)
    }

    /// Elements at exactly distance `r`, sorted by canonical key.
    pub fn sphere(&self, r: u32) -> &[GroupElement] {
        &self.spheres[r as usize]
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(|s| s.len()).collect()
    }

    /// All elements with their distances, in (distance, key) order.
    pub fn elements(&self) -> impl Iterator<Item = (&GroupElement, u32)> {
        self.spheres
            .iter()
            .enumerate()
            .flat_map(|(d, sphere)| sphere.iter().map(move |e| (e, d as u32)))
    }

    /// Serializes as the `CAYLEYBALL v1` TSV format: a header line
    /// `CAYLEYBALL\tv1\t<genset>\t<radius>` followed by one
    /// `<key>\t<distance>` line per element, sorted by (distance, key).
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("CAYLEYBALL\tv1\t");
        out.push_str(&self.genset.cache_key());
        out.push('\t');
        out.push_str(&self.radius.to_string());
        out.push('\n');
        for (e, d) in self.elements() {
            out.push_str(&e.canonical_key());
            out.push('\t');
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses and fully re-validates a cache. A successful load proves the
    /// file is a byte-canonical serialization of a correct ball: distances
    /// are exactly the BFS distances and the ball is complete out to its
    /// radius, so `to_tsv` reproduces the input bytes.
    pub fn from_tsv(text: &str) -> Result<BallIndex> {
        if !text.ends_with('\n') {
            return Err(Error::MalformedCache(
                "file must end with a newline".to_string(),
            ));
        }
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedCache("empty file".to_string()))?;
        let fields: Vec<&str> = header.split('\t').collect();
        if fields.len() != 4 || fields[0] != "CAYLEYBALL" {
            return Err(Error::MalformedCache(format!("bad header: {header:?}")));
        }
        if fields[1] != "v1" {
            return Err(Error::MalformedCache(format!(
                "unsupported version: {}",
                fields[1]
            )));
        }
        let genset = GenSet::from_cache_key(fields[2])
            .map_err(|e| Error::MalformedCache(format!("bad genset field: {e}")))?;
        let radius: u32 = parse_canonical_u32(fields[3])
            .ok_or_else(|| Error::MalformedCache(format!("bad radius: {}", fields[3])))?;

        let mut dist: HashMap<GroupElement, u32> = HashMap::new();
        let mut spheres: Vec<Vec<GroupElement>> = vec![Vec::new(); radius as usize + 1];
        let mut prev: Option<(u32, String)> = None;
        for (lineno, line) in lines.enumerate() {
            let mut parts = line.split('\t');
            let (key, d) = match (parts.next(), parts.next(), parts.next()) {
                (Some(k), Some(d), None) => (k, d),
                _ => {
                    return Err(Error::MalformedCache(format!(
                        "record {} is not key<TAB>distance",
                        lineno + 1
                    )))
                }
            };
            let element = GroupElement::parse_key(key)
                .map_err(|e| Error::MalformedCache(format!("record {}: {e}", lineno + 1)))?;
            let d = parse_canonical_u32(d).ok_or_else(|| {
                Error::MalformedCache(format!("record {}: bad distance {d:?}", lineno + 1))
            })?;
            if d > radius {
                return Err(Error::CacheInvariant(format!(
                    "element {key} has distance {d} beyond radius {radius}"
                )));
            }
            let this = (d, key.to_string());
            if let Some(p) = &prev {
                if *p >= this {
                    return Err(Error::MalformedCache(format!(
                        "records not strictly sorted by (distance, key) at record {}",
                        lineno + 1
                    )));
                }
            }
            prev = Some(this);
            if dist.insert(element.clone(), d).is_some() {
                return Err(Error::MalformedCache(format!("duplicate key {key}")));
            }
            spheres[d as usize].push(element);
        }

        let ball = BallIndex { genset, radius, dist, spheres };
        ball.validate()?;
        Ok(ball)
    }

    /// Checks the invariants that pin distances to true BFS distances:
    /// the identity is the unique distance-0 element, adjacent members
    /// differ by at most 1, every positive-distance element has a
    /// neighbor one step closer, and no neighbor of an interior element
    /// is missing.
    fn validate(&self) -> Result<()> {
        if self.dist.get(&GroupElement::identity()) != Some(&0) {
            return Err(Error::CacheInvariant(
                "identity missing or not at distance 0".to_string(),
            ));
        }
        if self.spheres[0].len() != 1 {
            return Err(Error::CacheInvariant(
                "more than one element at distance 0".to_string(),
            ));
        }
        let edges: Vec<GroupElement> =
            self.genset.directed_edges().map(|(_, img)| img).collect();
        for (x, &d) in self.dist.iter() {
            let mut has_down = d == 0;
            for g in &edges {
                let y = x.mul(g);
                match self.dist.get(&y) {
                    Some(&dy) => {
                        if dy + 1 < d || d + 1 < dy {
                            return Err(Error::CacheInvariant(format!(
                                "adjacent elements {} and {} have distances {d} and {dy}",
                                x.canonical_key(),
                                y.canonical_key()
                            )));
                        }
                        if dy + 1 == d {
                            has_down = true;
                        }
                    }
                    None => {
                        if d < self.radius {
                            return Err(Error::CacheInvariant(format!(
                                "ball is not closed: {} at distance {d} has a missing neighbor",
                                x.canonical_key()
                            )));
                        }
                    }
                }
            }
            if !has_down {
                return Err(Error::CacheInvariant(format!(
                    "element {} at distance {d} has no neighbor at distance {}",
                    x.canonical_key(),
                    d - 1
                )));
            }
        }
        Ok(())
    }
}

/// Strict decimal parse that only accepts the canonical serialization
/// (no sign, no leading zeros, no surrounding junk).
fn parse_canonical_u32(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if s.len() > 1 && s.starts_with('0') {
        return None;
    }
    s.parse().ok()
}
