//! ADE Dynkin types: parsing the `A2+2A1` notation and recognising the
//! type of a simple-root configuration from its Cartan graph.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    A(u8),
    D(u8),
    E(u8),
}

impl Component {
    pub fn rank(self) -> usize {
        match self {
            Component::A(n) | Component::D(n) | Component::E(n) => n as usize,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::A(n) => write!(f, "A{n}"),
            Component::D(n) => write!(f, "D{n}"),
            Component::E(n) => write!(f, "E{n}"),
        }
    }
}

/// A multiset of ADE components. The empty type is the smooth case.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType(BTreeMap<Component, usize>);

impl DynkinType {
    pub fn from_components(parts: impl IntoIterator<Item = Component>) -> Self {
        let mut m = BTreeMap::new();
        for c in parts {
            *m.entry(c).or_insert(0) += 1;
        }
        Self(m)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of connected components (singular points).
    pub fn component_count(&self) -> usize {
        self.0.values().sum()
    }

    /// Total rank (number of simple roots).
    pub fn rank(&self) -> usize {
        self.0.iter().map(|(c, k)| c.rank() * k).sum()
    }

    pub fn components(&self) -> impl Iterator<Item = Component> + '_ {
        self.0.iter().flat_map(|(&c, &k)| std::iter::repeat_n(c, k))
    }

    /// Classifies the configuration whose Cartan graph has the given
    /// adjacency (pairing +1 between distinct simple roots). Returns each
    /// connected component with its type, in order of smallest vertex, or
    /// `None` when some component is not a finite ADE diagram.
    pub fn classify(adj: &[Vec<usize>]) -> Option<Vec<(Component, Vec<usize>)>> {
        let n = adj.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                for &t in &adj[comp[i]] {
                    if !seen[t] {
                        seen[t] = true;
                        comp.push(t);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            comps.push((classify_tree(adj, &comp)?, comp));
        }
        Some(comps)
    }

    pub fn of_components(comps: &[(Component, Vec<usize>)]) -> Self {
        Self::from_components(comps.iter().map(|(c, _)| *c))
    }
}

fn classify_tree(adj: &[Vec<usize>], comp: &[usize]) -> Option<Component> {
    let size = comp.len();
    let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != size {
        return None;
    }
    let size_u8 = u8::try_from(size).ok()?;
    let branch_points: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    match branch_points.as_slice() {
        [] => Some(Component::A(size_u8)),
        [center] if adj[*center].len() == 3 => {
            let mut arms: Vec<usize> = adj[*center]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*center, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(Component::D(size_u8)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(Component::E(size_u8)),
                _ => None,
            }
        }
        _ => None,
    }
}

impl fmt::Display for DynkinType {
    /// Writes components in ascending order, e.g. `2A1+A3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("none");
        }
        let mut first = true;
        for (c, k) in &self.0 {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if *k > 1 {
                write!(f, "{k}")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Parses sums such as `A2+2A1`, `2A1+A3`, `D4`; `none`, `""` and `∅`
    /// denote the empty type.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "none" || s == "∅" {
            return Ok(Self::default());
        }
        let bad = || Error::CatalogFormat(format!("bad Dynkin type `{s}`"));
        let mut parts = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let letter_at = term.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
            let mult: usize = if letter_at == 0 {
                1
            } else {
                term[..letter_at].parse().map_err(|_| bad())?
            };
            let letter = term.as_bytes()[letter_at];
            let rank: u8 = term[letter_at + 1..].parse().map_err(|_| bad())?;
            let comp = match (letter, rank) {
                (b'A', r) if r >= 1 => Component::A(r),
                (b'D', r) if r >= 4 => Component::D(r),
                (b'E', 6..=8) => Component::E(rank),
                _ => return Err(bad()),
            };
            parts.extend(std::iter::repeat_n(comp, mult));
        }
        Ok(Self::from_components(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t: DynkinType = "A2+2A1".parse().unwrap();
        assert_eq!(t.to_string(), "2A1+A2");
        assert_eq!(t, "A1+A2+A1".parse().unwrap());
        assert_eq!(t.component_count(), 3);
        assert_eq!(t.rank(), 4);
        assert!("none".parse::<DynkinType>().unwrap().is_empty());
        assert!("D3".parse::<DynkinType>().is_err());
        assert!("X2".parse::<DynkinType>().is_err());
    }

    #[test]
    fn classify_shapes() {
        // D4: center 0 with three leaves.
        let d4 = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
        let comps = DynkinType::classify(&d4).unwrap();
        assert_eq!(comps, vec![(Component::D(4), vec![0, 1, 2, 3])]);
        // E6: arms 1, 2, 2.
        let e6 = vec![vec![1, 3, 5], vec![0, 2], vec![1], vec![0, 4], vec![3], vec![0]];
        assert_eq!(DynkinType::classify(&e6).unwrap()[0].0, Component::E(6));
        // A triangle is affine, not finite.
        let tri = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert!(DynkinType::classify(&tri).is_none());
        // Two isolated nodes.
        let two = vec![vec![], vec![]];
        let comps = DynkinType::classify(&two).unwrap();
        assert_eq!(DynkinType::of_components(&comps).to_string(), "2A1");
    }
}
