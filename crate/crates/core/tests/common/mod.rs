//! Brute-force oracles for the search-completeness cross-checks.
//!
//! Both oracles enumerate explicit candidate words and check the
//! definitions directly, with no layered reachable-set machinery, so
//! they are independent of the corridor searches they validate.

use std::collections::HashSet;

use f2xf2::{
    build_ball, fellow_travel_check, GenSet, GenWord, GroupElement, Limits, Loop,
};

/// Is there a strictly shorter loop that k-fellow travels `l`?
///
/// Tries every admissible start and every corridor-respecting token
/// path by depth-first search, accepting as soon as a path closes at an
/// index whose tail condition holds.
pub fn brute_force_shorten_exists(
    gs: &GenSet,
    l: &Loop,
    k: u32,
    strict: bool,
    basepoint: bool,
) -> bool {
    let rad = if strict {
        match k.checked_sub(1) {
            Some(r) => r,
            None => return false,
        }
    } else {
        k
    };
    let lim = Limits::default();
    let ball = build_ball(gs, rad, &lim).unwrap();
    let ball_elems: Vec<GroupElement> = ball.elements().map(|(e, _)| e.clone()).collect();
    let vertices = l.vertices();
    let n = l.len();
    let sets: Vec<HashSet<GroupElement>> = vertices
        .iter()
        .map(|vj| ball_elems.iter().map(|w| vj.mul(w)).collect())
        .collect();
    let starts: Vec<GroupElement> = if basepoint {
        vec![l.base().clone()]
    } else {
        ball_elems.iter().map(|w| l.base().mul(w)).collect()
    };
    let edges: Vec<GroupElement> = gs.directed_edges().map(|(_, g)| g).collect();
    for u0 in starts {
        let mut tail = vec![false; n + 1];
        let mut ok = true;
        for j in (0..=n).rev() {
            ok = ok && sets[j].contains(&u0);
            tail[j] = ok;
        }
        if dfs_closes(&edges, &sets, &tail, n, &u0, &u0, 0) {
            return true;
        }
    }
    false
}

fn dfs_closes(
    edges: &[GroupElement],
    sets: &[HashSet<GroupElement>],
    tail: &[bool],
    n: usize,
    u0: &GroupElement,
    cur: &GroupElement,
    j: usize,
) -> bool {
    if cur == u0 && tail[j] && j < n {
        return true;
    }
    if j + 1 >= n {
        return false; // a longer path could not stay strictly shorter
    }
    for g in edges {
        let next = cur.mul(g);
        if sets[j + 1].contains(&next)
            && dfs_closes(edges, sets, tail, n, u0, &next, j + 1)
        {
            return true;
        }
    }
    false
}

/// Is there a strictly shorter word with the same evaluation whose
/// padded path k-fellow travels `w`'s path (non-strict)?
///
/// Enumerates every word of length < len(w) and hands candidates with a
/// matching evaluation to the definitional fellow-traveler check.
pub fn brute_force_falsify_exists(gs: &GenSet, w: &GenWord, k: u32) -> bool {
    let ctx = FalsifyCtx {
        gs,
        w,
        k,
        lim: Limits::default(),
        edges: gs.directed_edges().collect(),
        target: gs.eval(w).unwrap(),
        n: w.len(),
    };
    ctx.rec(&GroupElement::identity(), &mut Vec::new())
}

struct FalsifyCtx<'a> {
    gs: &'a GenSet,
    w: &'a GenWord,
    k: u32,
    lim: Limits,
    edges: Vec<(char, GroupElement)>,
    target: GroupElement,
    n: usize,
}

impl FalsifyCtx<'_> {
    fn rec(&self, cur: &GroupElement, tokens: &mut Vec<char>) -> bool {
        if cur == &self.target {
            let q = GenWord::parse(self.gs, &tokens.iter().collect::<String>()).unwrap();
            if fellow_travel_check(self.gs, self.w, &q, self.k, false, &self.lim).unwrap() {
                return true;
            }
        }
        if tokens.len() + 1 >= self.n {
            return false;
        }
        for (tok, g) in &self.edges {
            let next = cur.mul(g);
            tokens.push(*tok);
            if self.rec(&next, tokens) {
                tokens.pop();
                return true;
            }
            tokens.pop();
        }
        false
    }
}
