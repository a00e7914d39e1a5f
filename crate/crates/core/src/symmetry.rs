//! Automorphisms of negative-curve graphs and graph isomorphism, by colour
//! refinement followed by depth-first assignment.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NegativeCurveGraph;

/// Safety cap on the size of an enumerated group.
pub const GROUP_CAP: usize = 10_000_000;

/// A kind- and multiplicity-preserving permutation: vertex `i` goes to
/// `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphPermutation {
    pub perm: Vec<usize>,
    pub order: usize,
}

impl GraphPermutation {
    pub fn new(perm: Vec<usize>) -> Self {
        let order = cycles(&perm).iter().map(Vec::len).fold(1, lcm);
        Self { perm, order }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self` after `other`: `i -> self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(other.perm.iter().map(|&j| self.perm[j]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self::new(inv)
    }

    pub fn fixed_points(&self) -> usize {
        self.perm.iter().enumerate().filter(|(i, p)| *i == **p).count()
    }

    /// Non-trivial cycles in cycle notation, e.g. `(l2 l3)(l12 l14)`; the
    /// identity prints as `()`.
    pub fn cycle_notation(&self, labels: &[String]) -> String {
        let parts: Vec<String> = cycles(&self.perm)
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" ")))
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }

    /// Whether the permutation preserves kinds and the Gram matrix of `g`.
    pub fn preserves(&self, g: &NegativeCurveGraph) -> bool {
        let n = g.len();
        self.perm.len() == n
            && (0..n).all(|i| {
                g.kind(i) == g.kind(self.perm[i]) && (0..n).all(|j| g.mult[i][j] == g.mult[self.perm[i]][self.perm[j]])
            })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut x = perm[s];
        while x != s {
            seen[x] = true;
            c.push(x);
            x = perm[x];
        }
        out.push(c);
    }
    out
}

/// Stable colouring of the disjoint union of the given graphs. Colours are
/// shared across graphs so equal colours are comparable.
fn refine(graphs: &[&NegativeCurveGraph]) -> Vec<Vec<usize>> {
    let mut colors: Vec<Vec<usize>> = graphs
        .iter()
        .map(|g| (0..g.len()).map(|i| g.kind(i) as usize).collect())
        .collect();
    let mut classes = usize::MAX;
    loop {
        type Signature = (usize, Vec<(usize, i64)>);
        let mut intern: BTreeMap<Signature, usize> = BTreeMap::new();
        let sigs: Vec<Vec<Signature>> = graphs
            .iter()
            .zip(&colors)
            .map(|(g, col)| {
                (0..g.len())
                    .map(|i| {
                        let mut nb: Vec<(usize, i64)> = (0..g.len())
                            .filter(|&j| j != i && g.mult[i][j] != 0)
                            .map(|j| (col[j], g.mult[i][j]))
                            .collect();
                        nb.sort_unstable();
                        (col[i], nb)
                    })
                    .collect()
            })
            .collect();
        for s in sigs.iter().flatten() {
            let next = intern.len();
            intern.entry(s.clone()).or_insert(next);
        }
        // Renumber in sorted-signature order so colours do not depend on
        // vertex order.
        let rank: BTreeMap<_, usize> = intern.keys().enumerate().map(|(r, k)| (k.clone(), r)).collect();
        colors = sigs.iter().map(|gs| gs.iter().map(|s| rank[s]).collect()).collect();
        if rank.len() == classes {
            return colors;
        }
        classes = rank.len();
    }
}

/// Assignment order: repeatedly take the unplaced vertex with most placed
/// neighbours, breaking ties by smallest colour class.
fn search_order(g: &NegativeCurveGraph, color: &[usize]) -> Vec<usize> {
    let n = g.len();
    let mut class_size = BTreeMap::new();
    for &c in color {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size[&color[v]], v))
            .expect("vertices remain");
        placed[v] = true;
        order.push(v);
        for u in 0..n {
            if u != v && g.mult[v][u] != 0 {
                links[u] += 1;
            }
        }
    }
    order
}

struct Matcher<'a> {
    a: &'a NegativeCurveGraph,
    b: &'a NegativeCurveGraph,
    ca: &'a [usize],
    cb: &'a [usize],
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    /// Calls `found` for each complete isomorphism; stops when it returns
    /// `false`.
    fn run(&mut self, depth: usize, found: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return found(&self.map);
        }
        let v = self.order[depth];
        for w in 0..self.b.len() {
            if self.used[w] || self.cb[w] != self.ca[v] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.a.mult[v][u] == self.b.mult[w][self.map[u]]);
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            let go_on = self.run(depth + 1, found);
            self.used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn with_matcher<R>(a: &NegativeCurveGraph, b: &NegativeCurveGraph, f: impl FnOnce(Option<Matcher<'_>>) -> R) -> R {
    let colors = refine(&[a, b]);
    let (ca, cb) = (&colors[0], &colors[1]);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if a.len() != b.len() || sa != sb {
        return f(None);
    }
    let order = search_order(a, ca);
    f(Some(Matcher {
        a,
        b,
        ca,
        cb,
        order,
        map: vec![usize::MAX; a.len()],
        used: vec![false; b.len()],
    }))
}

/// The full automorphism group, sorted with the identity first.
pub fn automorphisms(g: &NegativeCurveGraph) -> Result<Vec<GraphPermutation>> {
    automorphisms_capped(g, GROUP_CAP)
}

pub fn automorphisms_capped(g: &NegativeCurveGraph, cap: usize) -> Result<Vec<GraphPermutation>> {
    let mut out = Vec::new();
    let mut over = false;
    with_matcher(g, g, |m| {
        let mut m = m.expect("a graph matches itself");
        m.run(0, &mut |map| {
            if out.len() == cap {
                over = true;
                return false;
            }
            out.push(map.to_vec());
            true
        });
    });
    if over {
        return Err(Error::GroupTooLarge { cap });
    }
    out.sort_unstable();
    let group: Vec<GraphPermutation> = out.into_iter().map(GraphPermutation::new).collect();
    debug_assert!(group.iter().all(|p| p.preserves(g)));
    Ok(group)
}

/// Whether a kind- and multiplicity-preserving bijection exists.
pub fn isomorphic(a: &NegativeCurveGraph, b: &NegativeCurveGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// One isomorphism `a -> b`, if any.
pub fn find_isomorphism(a: &NegativeCurveGraph, b: &NegativeCurveGraph) -> Option<Vec<usize>> {
    let mut hit = None;
    with_matcher(a, b, |m| {
        if let Some(mut m) = m {
            m.run(0, &mut |map| {
                hit = Some(map.to_vec());
                false
            });
        }
    });
    hit
}

/// A small generating set, chosen greedily in group order.
pub fn generators(group: &[GraphPermutation]) -> Vec<GraphPermutation> {
    let Some(first) = group.first() else {
        return Vec::new();
    };
    let mut gens: Vec<GraphPermutation> = Vec::new();
    let mut span: HashSet<Vec<usize>> = HashSet::from([first.perm.clone()]);
    for g in group {
        if span.contains(&g.perm) {
            continue;
        }
        gens.push(g.clone());
        // Closure of the enlarged generating set.
        let mut queue: VecDeque<GraphPermutation> = span.iter().map(|p| GraphPermutation::new(p.clone())).collect();
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = s.compose(&x);
                if span.insert(y.perm.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;
    use crate::graph::negative_curve_graph;

    fn graph(label: &str) -> NegativeCurveGraph {
        negative_curve_graph(builtin_catalog().get(label).unwrap()).unwrap()
    }

    #[test]
    fn small_groups() {
        let g = automorphisms(&graph("6.3")).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g[0].is_identity());
        assert_eq!(g[1].order, 2);
        assert_eq!(automorphisms(&graph("4.21")).unwrap().len(), 2);
    }

    #[test]
    fn group_axioms_hold() {
        let g = automorphisms(&graph("4.6")).unwrap();
        let set: HashSet<_> = g.iter().map(|p| p.perm.clone()).collect();
        for a in &g {
            assert!(set.contains(&a.inverse().perm));
            for b in &g {
                assert!(set.contains(&a.compose(b).perm));
            }
        }
        let gens = generators(&g);
        assert!(gens.len() <= g.len());
    }

    #[test]
    fn cap_is_enforced() {
        let g = graph("4.1");
        assert_eq!(automorphisms_capped(&g, 3), Err(Error::GroupTooLarge { cap: 3 }));
    }

    #[test]
    fn isomorphism_checks() {
        let a = graph("4.3");
        assert!(isomorphic(&a, &a));
        assert!(!isomorphic(&a, &graph("4.5")));
        let n = a.len();
        let shuffled = a.relabeled(&(0..n).map(|i| (i * 5 + 3) % n).collect::<Vec<_>>());
        assert!(isomorphic(&a, &shuffled));
    }

    #[test]
    fn cycle_notation_labels() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(GraphPermutation::new(vec![1, 0, 2]).cycle_notation(&labels), "(a b)");
        assert_eq!(GraphPermutation::identity(3).cycle_notation(&labels), "()");
        assert_eq!(GraphPermutation::new(vec![1, 2, 0]).order, 3);
    }
}
