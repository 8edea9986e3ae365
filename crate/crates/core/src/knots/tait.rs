//! Checkerboard graphs of a colored diagram.
//!
//! A checkerboard-colored diagram determines two graphs, one per color class:
//! a vertex for each face of that color and an edge for each crossing
//! (joining the two same-colored faces meeting diagonally there).  These
//! graphs are a convenient sanity layer: a diagram and its color-swapped
//! mirror exchange the two classes, and equivalent diagrams give isomorphic
//! reduced graphs.
//!
//! [`tait_graph`] extracts the multigraph of one class, [`reduce_tait`]
//! collapses parallel edges and drops loops, and [`tait_iso`] decides
//! isomorphism of two reduced graphs by backtracking search (sized for the
//! small diagrams handled here).

use std::collections::BTreeSet;

use crate::error::{QError, Result};
use crate::knots::diagram::Diagram;

/// A simple undirected graph distilled from one checkerboard color class:
/// parallel edges collapsed, loops removed, vertices labeled by face id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedTaitGraph {
    /// Number of vertices (faces of the chosen color).
    pub n: usize,
    /// Face id of each vertex, in diagram order.
    pub labels: Vec<String>,
    /// Normalized edge set: each pair stored as `(min, max)`, no duplicates.
    pub edges: BTreeSet<(usize, usize)>,
}

impl ReducedTaitGraph {
    /// Degree of each vertex in the reduced graph.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }
}

/// One color class as a labeled multigraph: face ids of the class (in
/// diagram order) plus one edge per crossing, possibly with repeats.
pub type ColorClassGraph = (Vec<String>, Vec<(usize, usize)>);

/// Extracts the checkerboard multigraph of one color class.
///
/// Returns the vertex labels (face ids of the requested color, in diagram
/// order) and one edge per crossing.  At each crossing the four surrounding
/// faces alternate in color, so exactly one diagonal pair carries the
/// requested color.  `color` must be `"A"` or `"B"`.
pub fn tait_graph(diagram: &Diagram, color: &str) -> Result<ColorClassGraph> {
    if color != "A" && color != "B" {
        return Err(QError::BadParameter(format!(
            "checkerboard color must be \"A\" or \"B\", got {color:?}"
        )));
    }
    diagram.validate()?;
    let labels: Vec<String> = diagram
        .faces
        .iter()
        .filter(|f| f.color == color)
        .map(|f| f.id.clone())
        .collect();
    let index_of = |id: &str| -> Result<usize> {
        labels
            .iter()
            .position(|l| l == id)
            .ok_or_else(|| QError::MalformedDiagram(format!("face {id} missing from color class")))
    };
    let color_of = |id: &str| -> &str {
        diagram
            .faces
            .iter()
            .find(|f| f.id == id)
            .map(|f| f.color.as_str())
            .unwrap_or("")
    };
    let mut edges = Vec::with_capacity(diagram.vertices.len());
    for v in &diagram.vertices {
        // Corner order alternates colors, so positions (0, 2) and (1, 3)
        // each hold a monochromatic diagonal; pick the one in our class.
        let (p, q) = if color_of(&v.faces[0]) == color {
            (&v.faces[0], &v.faces[2])
        } else {
            (&v.faces[1], &v.faces[3])
        };
        edges.push((index_of(p)?, index_of(q)?));
    }
    Ok((labels, edges))
}

/// Collapses a checkerboard multigraph to its reduced simple graph: edges are
/// normalized to `(min, max)`, duplicates merged, and loops discarded.
pub fn reduce_tait(labels: &[String], edges: &[(usize, usize)]) -> ReducedTaitGraph {
    let mut set = BTreeSet::new();
    for &(i, j) in edges {
        if i != j {
            set.insert((i.min(j), i.max(j)));
        }
    }
    ReducedTaitGraph {
        n: labels.len(),
        labels: labels.to_vec(),
        edges: set,
    }
}

/// Maximum vertex count accepted by the backtracking isomorphism search.
const ISO_LIMIT: usize = 12;

/// Decides whether two reduced checkerboard graphs are isomorphic.
///
/// Runs a degree-pruned backtracking search over vertex bijections, which is
/// ample for diagrams with at most [`ISO_LIMIT`] faces per color class;
/// larger inputs are rejected with [`QError::TooLarge`].
pub fn tait_iso(g: &ReducedTaitGraph, h: &ReducedTaitGraph) -> Result<bool> {
    if g.n != h.n || g.edges.len() != h.edges.len() {
        return Ok(false);
    }
    if g.n > ISO_LIMIT {
        return Err(QError::TooLarge {
            limit: ISO_LIMIT,
            actual: g.n,
        });
    }
    let gd = g.degrees();
    let hd = h.degrees();
    let mut gs = gd.clone();
    let mut hs = hd.clone();
    gs.sort_unstable();
    hs.sort_unstable();
    if gs != hs {
        return Ok(false);
    }
    let adj = |graph: &ReducedTaitGraph| -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; graph.n]; graph.n];
        for &(i, j) in &graph.edges {
            m[i][j] = true;
            m[j][i] = true;
        }
        m
    };
    let ga = adj(g);
    let ha = adj(h);

    #[allow(clippy::too_many_arguments)]
    fn assign(
        v: usize,
        n: usize,
        gd: &[usize],
        hd: &[usize],
        ga: &[Vec<bool>],
        ha: &[Vec<bool>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || gd[v] != hd[cand] {
                continue;
            }
            if (0..v).any(|w| ga[v][w] != ha[cand][map[w]]) {
                continue;
            }
            map.push(cand);
            used[cand] = true;
            if assign(v + 1, n, gd, hd, ga, ha, map, used) {
                return true;
            }
            used[cand] = false;
            map.pop();
        }
        false
    }

    let mut map = Vec::with_capacity(g.n);
    let mut used = vec![false; g.n];
    Ok(assign(0, g.n, &gd, &hd, &ga, &ha, &mut map, &mut used))
}
