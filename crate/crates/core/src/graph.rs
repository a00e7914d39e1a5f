//! Graphs of negative curves on the minimal resolution.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, Model, SingularityClass};
use crate::dynkin::{Component, DynkinType};
use crate::error::{Error, Result};
use crate::lattice::{self, LatticeVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    /// A (-2)-curve, contracted to a singular point.
    MinusTwo,
    /// A (-1)-curve ("line").
    MinusOne,
}

impl VertexKind {
    pub fn self_intersection(self) -> i64 {
        match self {
            VertexKind::MinusTwo => -2,
            VertexKind::MinusOne => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub class: LatticeVector,
    pub kind: VertexKind,
    pub label: String,
}

/// Vertices and their full Gram matrix. Off the diagonal `mult[i][j]` is the
/// intersection number of two distinct curves; the diagonal holds the
/// self-intersections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeCurveGraph {
    pub degree: u8,
    pub vertices: Vec<Vertex>,
    pub mult: Vec<Vec<i64>>,
}

impl NegativeCurveGraph {
    /// Builds the graph on the given vertices, computing and checking the
    /// intersection numbers.
    pub fn from_vertices(degree: u8, vertices: Vec<Vertex>) -> Result<Self> {
        let structure = |reason: String| Error::Structure {
            label: format!("degree {degree} graph"),
            reason,
        };
        let k = vertices.len();
        let mut mult = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                mult[i][j] = lattice::pair(&vertices[i].class, &vertices[j].class)?;
            }
            if mult[i][i] != vertices[i].kind.self_intersection() {
                return Err(structure(format!("vertex {} has square {}", vertices[i].label, mult[i][i])));
            }
            for j in 0..i {
                if vertices[i].class == vertices[j].class {
                    return Err(structure(format!("repeated class {}", vertices[i].class)));
                }
                if mult[i][j] < 0 {
                    return Err(structure(format!(
                        "{} and {} meet negatively",
                        vertices[i].label, vertices[j].label
                    )));
                }
            }
        }
        Ok(Self { degree, vertices, mult })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn kind(&self, i: usize) -> VertexKind {
        self.vertices[i].kind
    }

    pub fn minus_two(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.kind(i) == VertexKind::MinusTwo).collect()
    }

    pub fn minus_one(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.kind(i) == VertexKind::MinusOne).collect()
    }

    /// Connected components of the (-2)-subgraph with their types, as
    /// sorted lists of vertex indices.
    pub fn singular_components(&self) -> Result<Vec<(Component, Vec<usize>)>> {
        let idx = self.minus_two();
        let adj: Vec<Vec<usize>> = idx
            .iter()
            .map(|&i| (0..idx.len()).filter(|&b| idx[b] != i && self.mult[i][idx[b]] > 0).collect())
            .collect();
        let comps = DynkinType::classify(&adj).ok_or_else(|| Error::Structure {
            label: format!("degree {} graph", self.degree),
            reason: "(-2)-subgraph is not of ADE type".into(),
        })?;
        Ok(comps
            .into_iter()
            .map(|(t, c)| (t, c.into_iter().map(|b| idx[b]).collect()))
            .collect())
    }

    /// Same graph with vertex `i` moved to position `order[i]`.
    pub fn relabeled(&self, order: &[usize]) -> Self {
        let k = self.len();
        let mut vertices = vec![None; k];
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[order[i]] = Some(v.clone());
        }
        let mut mult = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                mult[order[i]][order[j]] = self.mult[i][j];
            }
        }
        Self {
            degree: self.degree,
            vertices: vertices.into_iter().map(|v| v.expect("order is a permutation")).collect(),
            mult,
        }
    }

    /// Graphviz rendering: filled circles for (-1)-curves, open circles for
    /// (-2)-curves, one edge per unit of intersection.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\""));
        for (i, v) in self.vertices.iter().enumerate() {
            let style = match v.kind {
                VertexKind::MinusOne => "style=filled, fillcolor=black",
                VertexKind::MinusTwo => "style=solid",
            };
            let _ = writeln!(out, "  v{i} [shape=circle, {style}, label=\"\", xlabel=\"{}\"];", v.label);
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                for _ in 0..self.mult[i][j] {
                    let _ = writeln!(out, "  v{i} -- v{j};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Simple roots (in catalog order) followed by the lines (lexicographic).
pub fn negative_curve_graph(c: &SingularityClass) -> Result<NegativeCurveGraph> {
    if c.model == Model::Cone {
        return Err(Error::NoBlowupModel(c.label.clone()));
    }
    let mut vertices: Vec<Vertex> = c
        .simple_roots
        .iter()
        .map(|a| Vertex {
            class: a.clone(),
            kind: VertexKind::MinusTwo,
            label: a.l_notation(),
        })
        .collect();
    vertices.extend(catalog::lines(c).into_iter().map(|l| Vertex {
        label: l.l_notation(),
        class: l,
        kind: VertexKind::MinusOne,
    }));
    NegativeCurveGraph::from_vertices(c.degree, vertices).map_err(|e| match e {
        Error::Structure { reason, .. } => Error::Structure {
            label: c.label.clone(),
            reason,
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    fn graph(label: &str) -> NegativeCurveGraph {
        negative_curve_graph(builtin_catalog().get(label).unwrap()).unwrap()
    }

    fn find(g: &NegativeCurveGraph, label: &str) -> usize {
        g.vertices.iter().position(|v| v.label == label).unwrap_or_else(|| panic!("{label}"))
    }

    #[test]
    fn class_5_4_diagram() {
        let g = graph("5.4");
        assert_eq!(g.len(), 6);
        let a = find(&g, "l1-l2");
        assert_eq!(g.mult[a][find(&g, "l14")], 1);
        assert_eq!(g.mult[a][find(&g, "l2-l3")], 1);
        let b = find(&g, "l2-l3");
        assert_eq!(g.mult[b][find(&g, "l3")], 1);
        assert_eq!(g.mult[b][find(&g, "l12")], 1);
        assert_eq!(g.mult[find(&g, "l4")][find(&g, "l14")], 1);
    }

    #[test]
    fn class_4_17_is_an_eight_cycle() {
        let g = graph("4.17");
        assert_eq!(g.len(), 8);
        for i in 0..8 {
            let nbrs: Vec<usize> = (0..8).filter(|&j| j != i && g.mult[i][j] > 0).collect();
            assert_eq!(nbrs.len(), 2);
            assert!(nbrs.iter().all(|&j| g.mult[i][j] == 1 && g.kind(j) != g.kind(i)));
        }
        // Connected: walk the cycle.
        let (mut prev, mut cur, mut steps) = (usize::MAX, 0, 0);
        loop {
            let next = (0..8).find(|&j| j != cur && j != prev && g.mult[cur][j] > 0).unwrap();
            prev = cur;
            cur = next;
            steps += 1;
            if cur == 0 {
                break;
            }
        }
        assert_eq!(steps, 8);
    }

    #[test]
    fn class_6_2_counts() {
        let g = graph("6.2");
        assert_eq!((g.minus_two().len(), g.minus_one().len()), (1, 3));
    }

    #[test]
    fn cone_has_no_graph() {
        let c = builtin_catalog().get("8.1").unwrap();
        assert_eq!(negative_curve_graph(c), Err(Error::NoBlowupModel("8.1".into())));
    }

    #[test]
    fn dot_repeats_edges() {
        let g = graph("7.1");
        let dot = g.to_dot("7.1");
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert_eq!(dot.matches("fillcolor=black").count(), 2);
    }
}
