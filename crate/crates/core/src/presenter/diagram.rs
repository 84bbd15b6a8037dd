use alloc::vec::Vec;
use core::fmt;

use super::PresenterError;

/// Vertex `(row, column)` with `row ∈ {1, 2}` and `column ∈ 1..=ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub row: u32,
    pub col: u32,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.row, self.col)
    }
}

/// Two rows of `ν` vertices; edges along rows, down columns, and on the
/// diagonals `(1,j) — (2,j+1)`. Vertices are sorted lexicographically and
/// edges are stored as index pairs `(a, b)` with `a < b`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub nu: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
}

pub fn bp_diagram(nu: u32) -> Result<DynkinDiagram, PresenterError> {
    if nu < 1 {
        return Err(PresenterError::NuTooSmall(nu));
    }
    let vertices: Vec<Vertex> = (1..=2)
        .flat_map(|row| (1..=nu).map(move |col| Vertex { row, col }))
        .collect();
    let index = |row: u32, col: u32| ((row - 1) * nu + col - 1) as usize;
    let mut edges = Vec::new();
    for row in 1..=2 {
        for col in 1..nu {
            edges.push((index(row, col), index(row, col + 1)));
        }
    }
    for col in 1..=nu {
        edges.push((index(1, col), index(2, col)));
    }
    for col in 1..nu {
        edges.push((index(1, col), index(2, col + 1)));
    }
    edges.sort_unstable();
    Ok(DynkinDiagram { nu, vertices, edges })
}

impl DynkinDiagram {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Triples `i < j < k` with all three pairs joined.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for &(i, j) in &self.edges {
            for k in j + 1..n {
                if self.has_edge(i, k) && self.has_edge(j, k) {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = alloc::vec![false; n];
        let mut stack = alloc::vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(d: &DynkinDiagram, (a, b): (usize, usize)) -> (u32, u32) {
        let v = |i: usize| d.vertices[i].row * 10 + d.vertices[i].col;
        (v(a), v(b))
    }

    #[test]
    fn small_diagrams() {
        assert_eq!(bp_diagram(0), Err(PresenterError::NuTooSmall(0)));
        let d = bp_diagram(1).unwrap();
        assert_eq!(d.edges, [(0, 1)]);
        let d = bp_diagram(2).unwrap();
        let mut labels: Vec<_> = d.edges.iter().map(|&e| label(&d, e)).collect();
        labels.sort_unstable();
        assert_eq!(labels, [(11, 12), (11, 21), (11, 22), (12, 22), (21, 22)]);
        let tri: Vec<_> = d
            .triangles()
            .into_iter()
            .map(|(i, j, k)| (label(&d, (i, j)), d.vertices[k]))
            .collect();
        assert_eq!(tri.len(), 2);
        assert_eq!(tri[0].0, (11, 12));
        assert_eq!(tri[1].0, (11, 21));
    }

    #[test]
    fn counts() {
        for nu in 1..=40 {
            let d = bp_diagram(nu).unwrap();
            assert_eq!(d.vertex_count(), 2 * nu as usize);
            assert_eq!(d.edges.len(), (4 * nu - 3) as usize);
            assert_eq!(d.triangles().len(), 2 * (nu as usize - 1));
            assert!(d.is_connected());
            assert!(d.edges.iter().all(|&(a, b)| a < b && d.vertices[a] < d.vertices[b]));
        }
    }
}
