//! DOT export of enumerated balls.

use std::collections::HashSet;

use crate::ball::BallIndex;
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// Renders the sub-ball of radius `r` as an undirected DOT graph: one
/// node per element (id = canonical key), one labeled edge per generator
/// (the two directions collapse to one undirected edge), highlighted
/// elements drawn bold. Output is deterministic: nodes in (distance, key)
/// order, edges by source then label.
pub fn export_dot(
    ball: &BallIndex,
    r: u32,
    highlight: &[GroupElement],
) -> Result<String> {
    if r > ball.radius() {
        return Err(Error::RadiusTooSmall { radius: ball.radius(), needed: r });
    }
    let bold: HashSet<&GroupElement> = highlight.iter().collect();
    let inside = |x: &GroupElement| ball.dist(x).is_some_and(|d| d <= r);
    let labels = ball.genset().labels();
    let images = ball.genset().images();

    let mut out = String::new();
    out.push_str("graph cayley {\n");
    out.push_str(&format!(
        "  // genset {}, radius {}\n",
        ball.genset().cache_key(),
        r
    ));
    for d in 0..=r {
        for e in ball.sphere(d) {
            let key = e.canonical_key();
            if bold.contains(e) {
                out.push_str(&format!("  \"{key}\" [style=bold];\n"));
            } else {
                out.push_str(&format!("  \"{key}\";\n"));
            }
        }
    }
    for d in 0..=r {
        for e in ball.sphere(d) {
            for (label, image) in labels.iter().zip(images.iter()) {
                let y = e.mul(image);
                if inside(&y) {
                    out.push_str(&format!(
                        "  \"{}\" -- \"{}\" [label=\"{label}\"];\n",
                        e.canonical_key(),
                        y.canonical_key()
                    ));
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Node and undirected edge counts of the radius-r sub-ball, matching
/// what `export_dot` emits.
pub fn ball_census(ball: &BallIndex, r: u32) -> Result<(usize, usize)> {
    if r > ball.radius() {
        return Err(Error::RadiusTooSmall { radius: ball.radius(), needed: r });
    }
    let inside = |x: &GroupElement| ball.dist(x).is_some_and(|d| d <= r);
    let images = ball.genset().images();
    let mut nodes = 0;
    let mut edges = 0;
    for d in 0..=r {
        for e in ball.sphere(d) {
            nodes += 1;
            edges += images.iter().filter(|g| inside(&e.mul(g))).count();
        }
    }
    Ok((nodes, edges))
}
