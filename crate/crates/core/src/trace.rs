//! Frobenius trace profiles.
//!
//! The free module `M` on the vertices of a negative-curve graph maps onto
//! the Picard lattice with kernel `F`, the radical of the Gram form, so for
//! a vertex permutation `tr|Pic = tr|M - tr|F`. With `t = tr|E_N - tr|R`
//! the point count of the surface is `q^2 + q + 1 + q t`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{builtin_catalog, SingularityClass};
use crate::dynkin::{Component, DynkinType};
use crate::error::{Error, Result};
use crate::graph::{negative_curve_graph, NegativeCurveGraph};
use crate::lattice;
use crate::linalg::{self, Q};
use crate::symmetry::{automorphisms, GraphPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceProfile {
    pub class_label: String,
    pub element_order: usize,
    /// Fixed vertices.
    pub tr_m: i64,
    /// Trace on the radical; integral for every permutation of a catalog
    /// graph.
    pub tr_f: i64,
    pub tr_pic: i64,
    pub tr_en: i64,
    /// Fixed (-2)-curves.
    pub tr_r: i64,
    /// Setwise-fixed singular points.
    pub delta: usize,
    pub t: i64,
}

impl TraceProfile {
    /// `q^2 + q + 1 + q t`.
    pub fn count(&self, q: u64) -> i64 {
        point_count(self, q)
    }

    fn key(&self) -> (i64, i64, usize) {
        (self.tr_pic, self.tr_r, self.delta)
    }
}

pub fn point_count(p: &TraceProfile, q: u64) -> i64 {
    let q = q as i64;
    q * q + q + 1 + q * p.t
}

/// Basis of the null space of the Gram matrix. Each basis vector is 1 on its
/// own free column and 0 on the others.
pub fn radical_basis(g: &NegativeCurveGraph) -> Result<Vec<Vec<Q>>> {
    Ok(Radical::new(g, "graph")?.basis)
}

struct Radical {
    basis: Vec<Vec<Q>>,
    free: Vec<usize>,
}

impl Radical {
    fn new(g: &NegativeCurveGraph, label: &str) -> Result<Self> {
        let (basis, free) = linalg::nullspace(&g.mult);
        let pic_rank = 10 - g.degree as usize;
        if g.len() < pic_rank || basis.len() != g.len() - pic_rank {
            return Err(Error::Structure {
                label: label.to_string(),
                reason: format!(
                    "Gram matrix of {} vertices has rank {}, expected {pic_rank}",
                    g.len(),
                    g.len() - basis.len()
                ),
            });
        }
        Ok(Self { basis, free })
    }

    /// Trace of `p` on the radical. `p` sends basis vector `b_j` to a vector
    /// whose `free_m` coordinate is `b_j[p^-1(free_m)]`.
    fn trace(&self, inv: &[usize]) -> Q {
        self.basis
            .iter()
            .zip(&self.free)
            .fold(Q::zero(), |acc, (b, &f)| acc + &b[inv[f]])
    }
}

/// Per-graph data reused across all automorphisms.
pub struct TraceEngine<'g> {
    label: String,
    graph: &'g NegativeCurveGraph,
    radical: Radical,
    components: Vec<(Component, Vec<usize>)>,
}

impl<'g> TraceEngine<'g> {
    pub fn new(label: &str, graph: &'g NegativeCurveGraph) -> Result<Self> {
        Ok(Self {
            label: label.to_string(),
            graph,
            radical: Radical::new(graph, label)?,
            components: graph.singular_components()?,
        })
    }

    pub fn graph(&self) -> &NegativeCurveGraph {
        self.graph
    }

    /// Singular points fixed by `p`, with their types.
    pub fn fixed_components(&self, p: &GraphPermutation) -> Vec<Component> {
        self.components
            .iter()
            .filter(|(_, vs)| vs.iter().all(|&v| vs.binary_search(&p.perm[v]).is_ok()))
            .map(|(c, _)| *c)
            .collect()
    }

    pub fn profile(&self, p: &GraphPermutation) -> Result<TraceProfile> {
        let g = self.graph;
        let inv = p.inverse().perm;
        let tr_m = p.fixed_points() as i64;
        let tr_f = self.radical.trace(&inv);
        let tr_f = linalg::as_integer(&tr_f)
            .ok_or_else(|| Error::Invariant(format!("{}: trace {tr_f} on the radical is not integral", self.label)))?;
        let tr_pic = tr_m - tr_f;
        let tr_r = g.minus_two().iter().filter(|&&i| p.perm[i] == i).count() as i64;
        let tr_en = tr_pic - 1;
        Ok(TraceProfile {
            class_label: self.label.clone(),
            element_order: p.order,
            tr_m,
            tr_f,
            tr_pic,
            tr_en,
            tr_r,
            delta: self.fixed_components(p).len(),
            t: tr_en - tr_r,
        })
    }
}

pub fn trace_profile(label: &str, g: &NegativeCurveGraph, p: &GraphPermutation) -> Result<TraceProfile> {
    TraceEngine::new(label, g)?.profile(p)
}

/// Trace on `Pic` computed in lattice coordinates instead: pick vertices
/// whose classes form a basis `V` of `Pic (x) Q`, then the trace is
/// `tr(V^-1 W)` with `W` the classes of their images.
pub fn trace_pic_direct(g: &NegativeCurveGraph, p: &GraphPermutation) -> Result<i64> {
    let dim = g.vertices.first().map_or(0, |v| v.class.coeffs().len());
    let mut chosen: Vec<usize> = Vec::with_capacity(dim);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..g.len() {
        rows.push(g.vertices[i].class.coeffs().to_vec());
        if linalg::rank(&rows) == rows.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        } else {
            rows.pop();
        }
    }
    let structure = |reason: &str| Error::Structure {
        label: format!("degree {} graph", g.degree),
        reason: reason.to_string(),
    };
    if chosen.len() != dim {
        return Err(structure("vertex classes do not span Pic"));
    }
    // Columns are classes: V[r][c] = class_{chosen[c]}[r].
    let v: Vec<Vec<i64>> = (0..dim).map(|r| chosen.iter().map(|&c| g.vertices[c].class.coeffs()[r]).collect()).collect();
    let w: Vec<Vec<i64>> = (0..dim)
        .map(|r| chosen.iter().map(|&c| g.vertices[p.perm[c]].class.coeffs()[r]).collect())
        .collect();
    let vinv = linalg::inverse(&v).ok_or_else(|| structure("basis matrix is singular"))?;
    let mut tr = Q::zero();
    for (i, row) in vinv.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            tr += x * linalg::q(w[k][i]);
        }
    }
    linalg::as_integer(&tr).ok_or_else(|| Error::Invariant(format!("non-integral trace {tr}")))
}

/// The canonical class as a combination of vertices: the solution `x` of
/// `<x, C> = -2 - C^2` over all vertices, scaled to integers.
pub struct CanonicalCheck<'g> {
    graph: &'g NegativeCurveGraph,
    scaled: Vec<i64>,
    maps_to_k: bool,
}

impl<'g> CanonicalCheck<'g> {
    pub fn new(g: &'g NegativeCurveGraph) -> Result<Self> {
        let n = g.len();
        let rhs: Vec<i64> = (0..n).map(|i| -2 - g.mult[i][i]).collect();
        let x = linalg::solve(&g.mult, &rhs).ok_or_else(|| Error::Structure {
            label: format!("degree {} graph", g.degree),
            reason: "adjunction system has no solution".into(),
        })?;
        let dim = g.vertices[0].class.coeffs().len();
        let mut image = vec![Q::zero(); dim];
        for (i, xi) in x.iter().enumerate() {
            for (r, &c) in g.vertices[i].class.coeffs().iter().enumerate() {
                image[r] += xi * linalg::q(c);
            }
        }
        let k = lattice::canonical_vector(dim - 1)?;
        let maps_to_k = image.iter().zip(k.coeffs()).all(|(a, &b)| *a == linalg::q(b));
        let denom = x.iter().fold(num_bigint::BigInt::from(1), |acc, v| big_lcm(&acc, v.denom()));
        let scaled = x
            .iter()
            .map(|v| {
                let s = v * Q::from_integer(denom.clone());
                linalg::as_integer(&s).ok_or_else(|| Error::Invariant(format!("cannot scale {v} to an integer")))
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(Self {
            graph: g,
            scaled,
            maps_to_k,
        })
    }

    /// `x` represents `k_N` and `p(x) - x` lies in the radical.
    pub fn fixed_by(&self, p: &GraphPermutation) -> bool {
        let n = self.scaled.len();
        let mut diff = vec![0i64; n];
        for i in 0..n {
            diff[p.perm[i]] += self.scaled[i];
            diff[i] -= self.scaled[i];
        }
        self.maps_to_k && self.graph.mult.iter().all(|row| row.iter().zip(&diff).map(|(a, b)| a * b).sum::<i64>() == 0)
    }
}

fn big_lcm(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    a / x * b
}

/// Whether the permutation fixes the canonical class; see [`CanonicalCheck`].
pub fn fixes_canonical_class(g: &NegativeCurveGraph, p: &GraphPermutation) -> Result<bool> {
    Ok(CanonicalCheck::new(g)?.fixed_by(p))
}

/// One profile per automorphism of the class's graph, paired with it.
pub fn profiles_by_element(c: &SingularityClass) -> Result<Vec<(GraphPermutation, TraceProfile)>> {
    let g = negative_curve_graph(c)?;
    let group = automorphisms(&g)?;
    let engine = TraceEngine::new(&c.label, &g)?;
    group
        .into_par_iter()
        .map(|p| engine.profile(&p).map(|t| (p, t)))
        .collect()
}

/// Distinct `(tr_pic, tr_R, delta)` profiles over the whole automorphism
/// group, sorted; each keeps the smallest element order realising it.
/// Results are cached per class.
pub fn all_profiles(c: &SingularityClass) -> Result<Vec<TraceProfile>> {
    type Cache = Mutex<HashMap<String, Vec<(SingularityClass, Vec<TraceProfile>)>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let hit = cache
        .lock()
        .expect("profile cache poisoned")
        .get(&c.label)
        .and_then(|v| v.iter().find(|(k, _)| k == c).map(|(_, p)| p.clone()));
    if let Some(p) = hit {
        return Ok(p);
    }
    let profiles = compute_profiles(c)?;
    cache
        .lock()
        .expect("profile cache poisoned")
        .entry(c.label.clone())
        .or_default()
        .push((c.clone(), profiles.clone()));
    Ok(profiles)
}

fn compute_profiles(c: &SingularityClass) -> Result<Vec<TraceProfile>> {
    let mut best: BTreeMap<(i64, i64, usize), TraceProfile> = BTreeMap::new();
    for (_, prof) in profiles_by_element(c)? {
        best.entry(prof.key())
            .and_modify(|old| {
                if prof.element_order < old.element_order {
                    *old = prof.clone();
                }
            })
            .or_insert(prof);
    }
    Ok(best.into_values().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guarantee {
    pub label: String,
    pub q: u64,
    pub guaranteed: bool,
    /// A profile whose point count equals its number of fixed singular
    /// points, when there is one.
    pub witness: Option<TraceProfile>,
    pub reason: String,
}

/// Whether every candidate Frobenius action forces a smooth `F_q`-point.
///
/// An action is compatible with `q` only if its count is at least its
/// `delta`; a compatible action with count exactly `delta` leaves room
/// for every rational point to be singular.
pub fn smooth_point_guaranteed(c: &SingularityClass, q: u64) -> Result<Guarantee> {
    let profiles = all_profiles(c)?;
    Ok(guarantee_from(c, q, &profiles))
}

fn guarantee_from(c: &SingularityClass, q: u64, profiles: &[TraceProfile]) -> Guarantee {
    let witness = profiles.iter().find(|p| p.count(q) == p.delta as i64).cloned();
    let reason = match &witness {
        Some(w) => format!(
            "action with tr_pic = {}, tr_R = {}, delta = {} has exactly {} points, all of which may be singular",
            w.tr_pic,
            w.tr_r,
            w.delta,
            w.count(q)
        ),
        None => {
            let skipped = profiles.iter().filter(|p| p.count(q) < p.delta as i64).count();
            if skipped == 0 {
                "every action gives more points than fixed singular points".to_string()
            } else {
                format!("every action gives more points than fixed singular points ({skipped} profiles impossible at this q)")
            }
        }
    };
    Guarantee {
        label: c.label.clone(),
        q,
        guaranteed: witness.is_none(),
        witness,
        reason,
    }
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a divisor");
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

/// Degree-2 catalog classes and prime powers `q <= q_max` for which the
/// trace method does not produce a smooth point.
pub fn remaining_cases(q_max: u64) -> Result<Vec<(String, u64)>> {
    let qs: Vec<u64> = (2..=q_max).filter(|&q| is_prime_power(q)).collect();
    let mut out = Vec::new();
    for c in builtin_catalog().of_degree(2) {
        let profiles = all_profiles(c)?;
        for &q in &qs {
            if !guarantee_from(c, q, &profiles).guaranteed {
                out.push((c.label.clone(), q));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizability {
    pub label: String,
    /// Type that the Galois-stable singular points are required to have.
    pub rational: String,
    pub realizable: bool,
    /// An automorphism fixing exactly singular points of that type.
    pub witness: Option<GraphPermutation>,
}

/// Whether some graph automorphism fixes a set of singular points whose
/// type is the class's rational type. `None` when the class does not fix
/// one.
pub fn rational_type_realizable(c: &SingularityClass) -> Result<Option<Realizability>> {
    let Some(want) = c.rational_type()? else {
        return Ok(None);
    };
    let g = negative_curve_graph(c)?;
    let engine = TraceEngine::new(&c.label, &g)?;
    let witness = automorphisms(&g)?
        .into_iter()
        .find(|p| DynkinType::from_components(engine.fixed_components(p)) == want);
    Ok(Some(Realizability {
        label: c.label.clone(),
        rational: want.to_string(),
        realizable: witness.is_some(),
        witness,
    }))
}
