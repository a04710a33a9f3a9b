//! The graph on monomial ideals whose edges are true flips.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::GroebnerFan2;
use crate::ideals::MonomialIdeal;

use super::flips::{flips, Flip, FlipKind};
use super::ToricHilbertScheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphShape {
    Path,
    Cycle,
}

#[derive(Debug, Clone)]
pub struct FlipGraph {
    pub vertices: Vec<MonomialIdeal>,
    /// `(a, b, flip of a)` with `a < b`.
    pub edges: Vec<(usize, usize, Flip)>,
    /// Fake flips, drawn as self-loops.
    pub fake: Vec<(usize, Flip)>,
    pub shape: GraphShape,
}

pub fn flip_graph(scheme: &ToricHilbertScheme) -> Result<FlipGraph> {
    let vertices = scheme.ideals();
    let mut edges = Vec::new();
    let mut fake = Vec::new();
    let mut back = Vec::new();
    for (a, ideal) in vertices.iter().enumerate() {
        for f in flips(scheme, ideal)? {
            match f.kind {
                FlipKind::Fake => fake.push((a, f)),
                FlipKind::True => {
                    let target = f.target.as_ref().expect("true flips have targets");
                    let b = scheme.position(target).ok_or(Error::NotInFan)?;
                    if a < b {
                        edges.push((a, b, f));
                    } else {
                        back.push((b, a));
                    }
                }
            }
        }
    }
    let mut forward: Vec<(usize, usize)> = edges.iter().map(|(a, b, _)| (*a, *b)).collect();
    forward.sort_unstable();
    back.sort_unstable();
    if forward != back {
        return Err(Error::FlipTargetMismatch("true flips are not symmetric".into()));
    }
    let shape = if vertices.len() >= 3 && edges.len() == vertices.len() {
        GraphShape::Cycle
    } else {
        GraphShape::Path
    };
    Ok(FlipGraph { vertices, edges, fake, shape })
}

impl FlipGraph {
    /// Edge set equals the pairs of fan cones sharing a ray.
    pub fn matches_adjacency(&self, fan: &GroebnerFan2) -> bool {
        let mut adjacent: Vec<(usize, usize)> = (0..fan.cones.len())
            .flat_map(|k| fan.neighbours(k).into_iter().map(move |(t, _)| (k.min(t), k.max(t))))
            .collect();
        adjacent.sort_unstable();
        adjacent.dedup();
        let mut ours: Vec<(usize, usize)> = self.edges.iter().map(|(a, b, _)| (*a, *b)).collect();
        ours.sort_unstable();
        ours == adjacent
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (a, b, _) in &self.edges {
                for (x, y) in [(*a, *b), (*b, *a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph flips {\n");
        for (k, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{k} [label=\"{v}\"];");
        }
        for (a, b, f) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b} [label=\"{f}\"];");
        }
        for (a, f) in &self.fake {
            let _ = writeln!(out, "  v{a} -- v{a} [label=\"{f}\", style=dashed];");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::GaleLattice;

    #[test]
    fn running_is_a_path() {
        let s = ToricHilbertScheme::new(GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]]).unwrap()).unwrap();
        let g = flip_graph(&s).unwrap();
        assert_eq!(g.shape, GraphShape::Path);
        let pairs: Vec<(usize, usize)> = g.edges.iter().map(|(a, b, _)| (*a, *b)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.fake.iter().map(|(a, _)| *a).collect::<Vec<_>>(), vec![0, 3]);
        assert!(g.matches_adjacency(&s.fan));
        assert!(g.is_connected());
        let dot = g.to_dot();
        assert!(dot.contains("v0 -- v0 [label=\"x2*x3 - 1\", style=dashed]"));
    }

    #[test]
    fn cyclic_is_a_cycle() {
        let s = ToricHilbertScheme::new(GaleLattice::new(vec![[1, 0], [0, 1], [-1, -1]]).unwrap()).unwrap();
        let g = flip_graph(&s).unwrap();
        assert_eq!(g.shape, GraphShape::Cycle);
        assert!(g.fake.is_empty());
        assert!(g.matches_adjacency(&s.fan));
    }
}
