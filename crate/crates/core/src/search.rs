//! Exact distance queries on the implicit Cayley graph.
//!
//! Distances are computed bidirectionally with full layers on each side,
//! so the first recorded meeting certifies minimality once the completed
//! radii add up to it. Everything here is exact or an explicit
//! `BeyondCap`; there is no sampling.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::ball::{BallIndex, Limits};
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::genset::{GenSet, GenWord};

/// Outcome of a capped distance query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dist {
    Exact(u32),
    BeyondCap,
}

impl Dist {
    pub fn exact(self) -> Option<u32> {
        match self {
            Dist::Exact(d) => Some(d),
            Dist::BeyondCap => None,
        }
    }
}

/// Graph distance d(x, y) if it is at most `cap`, else `BeyondCap`.
///
/// Translation invariance reduces this to the distance of x^-1 y from the
/// identity; that is tested, not assumed silently.
pub fn distance(
    gs: &GenSet,
    x: &GroupElement,
    y: &GroupElement,
    cap: u32,
    limits: &Limits,
) -> Result<Dist> {
    let delta = x.inv().mul(y);
    distance_from_identity(gs, &delta, cap, limits)
}

/// d(x, y) <= bound?
pub fn distance_leq(
    gs: &GenSet,
    x: &GroupElement,
    y: &GroupElement,
    bound: u32,
    limits: &Limits,
) -> Result<bool> {
    Ok(matches!(distance(gs, x, y, bound, limits)?, Dist::Exact(_)))
}

fn distance_from_identity(
    gs: &GenSet,
    target: &GroupElement,
    cap: u32,
    limits: &Limits,
) -> Result<Dist> {
    if target.is_identity() {
        return Ok(Dist::Exact(0));
    }
    if cap == 0 {
        return Ok(Dist::BeyondCap);
    }
    let edges: Vec<GroupElement> = gs.directed_edges().map(|(_, g)| g).collect();

    let mut side = [
        Side::new(GroupElement::identity()),
        Side::new(target.clone()),
    ];
    let mut best: Option<u32> = None;

    loop {
        let done = side[0].radius + side[1].radius;
        if let Some(b) = best {
            // No shorter path can still be hidden: a path of length
            // L <= done would already have produced a meeting <= L.
            if done >= b {
                break;
            }
        }
        if done >= cap {
            break;
        }
        limits.check_deadline()?;
        let expand_first = side[0].frontier.len() <= side[1].frontier.len();
        let (lo, hi) = side.split_at_mut(1);
        let (this, that) = if expand_first {
            (&mut lo[0], &mut hi[0])
        } else {
            (&mut hi[0], &mut lo[0])
        };
        let mut next = Vec::new();
        let r = this.radius + 1;
        for x in std::mem::take(&mut this.frontier) {
            for g in &edges {
                let y = x.mul(g);
                if this.dist.contains_key(&y) {
                    continue;
                }
                this.dist.insert(y.clone(), r);
                if let Some(&dy) = that.dist.get(&y) {
                    let total = r + dy;
                    if best.is_none_or(|b| total < b) {
                        best = Some(total);
                    }
                }
                next.push(y);
            }
        }
        this.radius = r;
        this.frontier = next;
        limits.check_count(side[0].dist.len() + side[1].dist.len())?;
        if side[0].frontier.is_empty() && side[1].frontier.is_empty() {
            break; // both sides exhausted (cannot happen in an infinite group)
        }
    }

    match best {
        Some(b) if b <= cap => Ok(Dist::Exact(b)),
        _ => Ok(Dist::BeyondCap),
    }
}

struct Side {
    dist: HashMap<GroupElement, u32>,
    frontier: Vec<GroupElement>,
    radius: u32,
}

impl Side {
    fn new(origin: GroupElement) -> Side {
        let mut dist = HashMap::new();
        dist.insert(origin.clone(), 0);
        Side { dist, frontier: vec![origin], radius: 0 }
    }
}

/// Outcome of a ball-restricted distance query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsideDist {
    Reachable(u32),
    Unreachable,
}

impl InsideDist {
    pub fn reachable(self) -> Option<u32> {
        match self {
            InsideDist::Reachable(d) => Some(d),
            InsideDist::Unreachable => None,
        }
    }
}

/// Length of the shortest path from `u` to `v` all of whose vertices stay
/// in the ball.
pub fn inside_distance(
    ball: &BallIndex,
    u: &GroupElement,
    v: &GroupElement,
) -> Result<InsideDist> {
    inside_distance_within(ball, u, v, ball.radius())
}

/// Same, restricted to the sub-ball of the given radius. This is what the
/// almost-convexity scans use: pairs are enumerated in a radius r+1 ball
/// while paths must stay within radius r.
pub fn inside_distance_within(
    ball: &BallIndex,
    u: &GroupElement,
    v: &GroupElement,
    region_radius: u32,
) -> Result<InsideDist> {
    let inside = |x: &GroupElement| ball.dist(x).is_some_and(|d| d <= region_radius);
    if !inside(u) {
        return Err(Error::NotInBall(u.canonical_key()));
    }
    if !inside(v) {
        return Err(Error::NotInBall(v.canonical_key()));
    }
    if u == v {
        return Ok(InsideDist::Reachable(0));
    }
    let edges: Vec<GroupElement> =
        ball.genset().directed_edges().map(|(_, g)| g).collect();
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut queue: VecDeque<(GroupElement, u32)> = VecDeque::new();
    seen.insert(u.clone());
    queue.push_back((u.clone(), 0));
    while let Some((x, d)) = queue.pop_front() {
        for g in &edges {
            let y = x.mul(g);
            if !inside(&y) || seen.contains(&y) {
                continue;
            }
            if &y == v {
                return Ok(InsideDist::Reachable(d + 1));
            }
            seen.insert(y.clone());
            queue.push_back((y, d + 1));
        }
    }
    Ok(InsideDist::Unreachable)
}

/// BFS from `from` inside the sub-ball, reporting the inside distance to
/// every requested target that is reachable. Stops as soon as all targets
/// are found.
pub(crate) fn inside_distances_to_targets(
    ball: &BallIndex,
    from: &GroupElement,
    targets: &HashSet<GroupElement>,
    region_radius: u32,
) -> HashMap<GroupElement, u32> {
    let inside = |x: &GroupElement| ball.dist(x).is_some_and(|d| d <= region_radius);
    let mut found: HashMap<GroupElement, u32> = HashMap::new();
    if targets.contains(from) {
        found.insert(from.clone(), 0);
    }
    let edges: Vec<GroupElement> =
        ball.genset().directed_edges().map(|(_, g)| g).collect();
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut queue: VecDeque<(GroupElement, u32)> = VecDeque::new();
    seen.insert(from.clone());
    queue.push_back((from.clone(), 0));
    while let Some((x, d)) = queue.pop_front() {
        if found.len() == targets.len() {
            break;
        }
        for g in &edges {
            let y = x.mul(g);
            if !inside(&y) || !seen.insert(y.clone()) {
                continue;
            }
            if targets.contains(&y) {
                found.insert(y.clone(), d + 1);
            }
            queue.push_back((y, d + 1));
        }
    }
    found
}

/// All unordered pairs {u, v} on the sphere of radius `r` with global
/// graph distance 1 or 2, each emitted once, sorted by key pair.
///
/// Requires the ball radius to be at least r+1: the common neighbor
/// witnessing a distance-2 pair can lie on the sphere of radius r+1.
pub fn sphere_pairs_leq2(
    ball: &BallIndex,
    r: u32,
) -> Result<Vec<(GroupElement, GroupElement)>> {
    if ball.radius() < r + 1 {
        return Err(Error::RadiusTooSmall { radius: ball.radius(), needed: r + 1 });
    }
    if r == 0 {
        return Ok(Vec::new());
    }
    let edges: Vec<GroupElement> =
        ball.genset().directed_edges().map(|(_, g)| g).collect();
    let mut pairs: HashSet<(String, String)> = HashSet::new();
    let mut by_key: HashMap<String, GroupElement> = HashMap::new();
    for u in ball.sphere(r) {
        let ku = u.canonical_key();
        by_key.entry(ku.clone()).or_insert_with(|| u.clone());
        for g in &edges {
            let m = u.mul(g);
            let dm = ball
                .dist(&m)
                .expect("neighbor of a sphere-r element lies within r+1");
            if dm == r && m != *u {
                let km = m.canonical_key();
                by_key.entry(km.clone()).or_insert_with(|| m.clone());
                let pair = if ku < km { (ku.clone(), km) } else { (km, ku.clone()) };
                pairs.insert(pair);
            }
            for g2 in &edges {
                let v = m.mul(g2);
                if v == *u {
                    continue;
                }
                if ball.dist(&v) == Some(r) {
                    let kv = v.canonical_key();
                    by_key.entry(kv.clone()).or_insert_with(|| v.clone());
                    let pair = if ku < kv {
                        (ku.clone(), kv)
                    } else {
                        (kv, ku.clone())
                    };
                    pairs.insert(pair);
                }
            }
        }
    }
    let mut sorted: Vec<(String, String)> = pairs.into_iter().collect();
    sorted.sort();
    Ok(sorted
        .into_iter()
        .map(|(a, b)| (by_key[&a].clone(), by_key[&b].clone()))
        .collect())
}

/// True iff the word is a geodesic: its evaluation sits at distance
/// exactly `len(w)` from the identity. The word itself bounds the
/// distance, so the capped query is always exact.
pub fn geodesic_check(gs: &GenSet, w: &GenWord, limits: &Limits) -> Result<bool> {
    let target = gs.eval(w)?;
    let cap = w.len() as u32;
    match distance(gs, &GroupElement::identity(), &target, cap, limits)? {
        Dist::Exact(d) => Ok(d == cap),
        Dist::BeyondCap => unreachable!("the word is a path of length cap"),
    }
}
