//! Exhaustive search for degree-2 models whose rational points are all
//! singular, orbit deduplication under admissible coordinate changes, and
//! the conjugate-conic scan over `F_3`.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Fq};
use crate::pointcount::{
    eval_form, eval_partial, g2_monomials, g4_monomials, matrix_rank, plane_points, surface_report, DegreeTwoSurface,
    SurfaceReport,
};
use crate::trace::{all_profiles, TraceProfile};

/// An RDP del Pezzo of degree 2 has at most 7 singular points.
pub const SINGULAR_BOUND: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub surface: DegreeTwoSurface,
    pub report: SurfaceReport,
    /// `#B(k)`: points of `V(G2)` in characteristic 2, of `V(G2^2 - 4 G4)`
    /// otherwise.
    pub branch_count: usize,
    pub orbit_canonical: bool,
    pub exceeds_singular_bound: bool,
}

/// Which coefficient tuples a sweep visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sweep {
    /// Every `(g2, g4)`.
    Full,
    /// `g2 = 0`: every odd-characteristic model is a shift of one of these.
    CompletedSquare,
    /// `g2` over orbit representatives, `g4` over a complement of the
    /// shifts `h^2 + h g2`.
    Char2Normal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusHeader {
    pub field: FieldSpec,
    pub sweep: Sweep,
    pub prefilter: bool,
    pub dedup: bool,
    pub surfaces_examined: u64,
    pub entries: usize,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub header: CensusHeader,
    pub entries: Vec<CensusEntry>,
}

impl Census {
    /// One header line, then one entry per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&self.header).expect("plain data serializes");
        out.push('\n');
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("plain data serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let bad = |e: serde_json::Error| Error::SurfaceFormat(e.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: CensusHeader = serde_json::from_str(lines.next().ok_or_else(|| Error::SurfaceFormat("empty census".into()))?).map_err(bad)?;
        let entries = lines.map(|l| serde_json::from_str(l).map_err(bad)).collect::<Result<Vec<CensusEntry>>>()?;
        Ok(Self { header, entries })
    }
}

/// Coefficients of one model; the derived order is the lexicographic order
/// on `(g2, g4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coeffs {
    pub g2: [Fq; 6],
    pub g4: [Fq; 15],
}

impl Coeffs {
    pub fn of(s: &DegreeTwoSurface) -> Self {
        let mut c = Coeffs { g2: [0; 6], g4: [0; 15] };
        c.g2.copy_from_slice(&s.g2);
        c.g4.copy_from_slice(&s.g4);
        c
    }

    pub fn surface(&self, spec: FieldSpec) -> DegreeTwoSurface {
        DegreeTwoSurface {
            spec,
            g2: self.g2.to_vec(),
            g4: self.g4.to_vec(),
        }
    }
}

/// Position of `x^a y^b z^c` in the degree-`d` monomial list.
fn mono_index(d: u32, e: [u32; 3]) -> usize {
    let r = d - e[0];
    (r * (r + 1) / 2 + (r - e[1])) as usize
}

fn poly_mul(f: &Field, a: &[Fq], da: u32, b: &[Fq], db: u32) -> Vec<Fq> {
    let ma = crate::pointcount::monomials(3, da);
    let mb = crate::pointcount::monomials(3, db);
    let d = da + db;
    let mut out = vec![0; ((d + 1) * (d + 2) / 2) as usize];
    for (&ca, ea) in a.iter().zip(&ma) {
        if ca == 0 {
            continue;
        }
        for (&cb, eb) in b.iter().zip(&mb) {
            if cb == 0 {
                continue;
            }
            let i = mono_index(d, [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
            out[i] = f.add(out[i], f.mul(ca, cb));
        }
    }
    out
}

/// `g -> g(Ax)`, stored as the images of the monomials.
#[derive(Debug, Clone)]
struct Linear {
    m2: Vec<Vec<Fq>>,
    m4: Vec<Vec<Fq>>,
}

impl Linear {
    fn new(f: &Field, a: &[[Fq; 3]; 3]) -> Self {
        let images = |d: u32| -> Vec<Vec<Fq>> {
            crate::pointcount::monomials(3, d)
                .iter()
                .map(|e| {
                    let mut p = vec![1];
                    let mut deg = 0;
                    for (v, &k) in e.iter().enumerate() {
                        for _ in 0..k {
                            p = poly_mul(f, &p, deg, &a[v], 1);
                            deg += 1;
                        }
                    }
                    p
                })
                .collect()
        };
        Self { m2: images(2), m4: images(4) }
    }

    fn apply<const N: usize>(f: &Field, images: &[Vec<Fq>], g: &[Fq; N]) -> [Fq; N] {
        let mut out = [0; N];
        for (&c, img) in g.iter().zip(images) {
            if c == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(img) {
                *o = f.add(*o, f.mul(c, m));
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
enum Move {
    Linear(Linear),
    /// `w -> w / c`: `(g2, g4) -> (c g2, c^2 g4)`.
    Scale(Fq),
    /// `w -> w + h`.
    Shift([Fq; 6]),
}

fn apply_move(f: &Field, mv: &Move, c: &Coeffs) -> Coeffs {
    match mv {
        Move::Linear(l) => Coeffs {
            g2: Linear::apply(f, &l.m2, &c.g2),
            g4: Linear::apply(f, &l.m4, &c.g4),
        },
        Move::Scale(s) => {
            let s2 = f.mul(*s, *s);
            Coeffs {
                g2: c.g2.map(|x| f.mul(*s, x)),
                g4: c.g4.map(|x| f.mul(s2, x)),
            }
        }
        Move::Shift(h) => {
            let mut g2 = c.g2;
            for (a, &b) in g2.iter_mut().zip(h) {
                *a = f.add(*a, f.add(b, b));
            }
            let hg = poly_mul(f, h, 2, &c.g2, 2);
            let hh = poly_mul(f, h, 2, h, 2);
            let mut g4 = c.g4;
            for i in 0..15 {
                g4[i] = f.add(g4[i], f.add(hg[i], hh[i]));
            }
            Coeffs { g2, g4 }
        }
    }
}

/// Generators of `GL_3(F_q)` acting on `(x, y, z)`, optionally with the
/// `w`-scalings and the shifts by `a m` for monomials `m` and `a` in an
/// additive basis of `F_q`.
fn generators(f: &Field, scale: bool, shifts: bool) -> Vec<Move> {
    let additive: Vec<Fq> = match f.x() {
        Some(x) => vec![1, x],
        None => vec![1],
    };
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for &a in &additive {
                let mut m = [[0; 3]; 3];
                for (k, row) in m.iter_mut().enumerate() {
                    row[k] = 1;
                }
                m[i][j] = a;
                gens.push(Move::Linear(Linear::new(f, &m)));
            }
        }
    }
    let g = f.primitive();
    if g != 1 {
        gens.push(Move::Linear(Linear::new(f, &[[g, 0, 0], [0, 1, 0], [0, 0, 1]])));
        if scale {
            gens.push(Move::Scale(g));
        }
    }
    if shifts {
        for i in 0..6 {
            for &a in &additive {
                let mut h = [0; 6];
                h[i] = a;
                gens.push(Move::Shift(h));
            }
        }
    }
    gens
}

/// Completes the square in odd characteristic: `g2 = 0`.
fn complete_square(f: &Field, c: &Coeffs) -> Coeffs {
    let minus_half = f.neg(f.inv(2).expect("odd characteristic"));
    let h = c.g2.map(|x| f.mul(minus_half, x));
    apply_move(f, &Move::Shift(h), c)
}

fn check_dedup_field(spec: FieldSpec) -> Result<()> {
    if spec.k == 1 && spec.p <= 3 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("orbit deduplication over F_{}", spec.q())))
    }
}

/// Group used for orbits: everything at `q = 2`; on completed squares only
/// linear changes and `w`-scalings act.
fn dedup_generators(f: &Field) -> Vec<Move> {
    if f.p() == 2 {
        generators(f, true, true)
    } else {
        generators(f, true, false)
    }
}

/// The lexicographically least model in the orbit of `s` under linear
/// changes of `(x, y, z)`, rescaling of `w` and shifts `w -> w + h`.
/// Supported over `F_2` and `F_3`.
pub fn canonicalize(s: &DegreeTwoSurface) -> Result<DegreeTwoSurface> {
    check_dedup_field(s.spec)?;
    let f = s.field();
    let mut start = Coeffs::of(s);
    if f.p() != 2 {
        // The orbit's least element has g2 = 0, and the models with
        // g2 = 0 in the orbit form one orbit of the remaining group.
        start = complete_square(f, &start);
    }
    let gens = dedup_generators(f);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut best = start;
    while let Some(c) = queue.pop_front() {
        for g in &gens {
            let n = apply_move(f, g, &c);
            if seen.insert(n) {
                best = best.min(n);
                queue.push_back(n);
            }
        }
    }
    Ok(best.surface(s.spec))
}

/// An explicit admissible change of coordinates: `(x,y,z) -> A(x,y,z)`,
/// then `w -> w / scale`, then `w -> w + shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub matrix: [[Fq; 3]; 3],
    pub scale: Fq,
    pub shift: [Fq; 6],
}

impl Substitution {
    pub fn random(f: &Field, rng: &mut impl Rng) -> Self {
        let q = f.q();
        let matrix = loop {
            let m: [[Fq; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(0..q) as Fq));
            if matrix_rank(f, &m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()) == 3 {
                break m;
            }
        };
        Self {
            matrix,
            scale: rng.gen_range(1..q) as Fq,
            shift: std::array::from_fn(|_| rng.gen_range(0..q) as Fq),
        }
    }

    pub fn apply(&self, s: &DegreeTwoSurface) -> Result<DegreeTwoSurface> {
        let f = s.field();
        let rows: Vec<Vec<Fq>> = self.matrix.iter().map(|r| r.to_vec()).collect();
        if self.scale == 0 || matrix_rank(f, &rows) != 3 {
            return Err(Error::Unsupported("singular substitution".into()));
        }
        let mut c = Coeffs::of(s);
        for mv in [
            Move::Linear(Linear::new(f, &self.matrix)),
            Move::Scale(self.scale),
            Move::Shift(self.shift),
        ] {
            c = apply_move(f, &mv, &c);
        }
        Ok(c.surface(s.spec))
    }
}

/// Precomputed monomial values and partial derivatives at every plane point.
struct Sweeper {
    f: &'static Field,
    char2: bool,
    chart: Vec<usize>,
    v2: Vec<[Fq; 6]>,
    v4: Vec<[Fq; 15]>,
    d2: Vec<[[Fq; 6]; 3]>,
    d4: Vec<[[Fq; 15]; 3]>,
    two: Fq,
}

fn unit<const N: usize>(i: usize) -> [Fq; N] {
    let mut u = [0; N];
    u[i] = 1;
    u
}

impl Sweeper {
    fn new(spec: FieldSpec) -> Self {
        let f = spec.field();
        let pts = plane_points(f);
        let (m2, m4) = (g2_monomials(), g4_monomials());
        let v2 = pts.iter().map(|p| std::array::from_fn(|i| eval_form(f, &unit::<6>(i), m2, p))).collect();
        let v4 = pts.iter().map(|p| std::array::from_fn(|i| eval_form(f, &unit::<15>(i), m4, p))).collect();
        let d2 = pts
            .iter()
            .map(|p| std::array::from_fn(|v| std::array::from_fn(|i| eval_partial(f, &unit::<6>(i), m2, v, p))))
            .collect();
        let d4 = pts
            .iter()
            .map(|p| std::array::from_fn(|v| std::array::from_fn(|i| eval_partial(f, &unit::<15>(i), m4, v, p))))
            .collect();
        Self {
            f,
            char2: f.p() == 2,
            chart: pts.iter().map(|p| p.iter().position(|&x| x != 0).expect("projective point")).collect(),
            v2,
            v4,
            d2,
            d4,
            two: f.from_int(2),
        }
    }

    #[inline]
    fn dot<const N: usize>(&self, c: &[Fq; N], v: &[Fq; N]) -> Fq {
        let mut acc = 0;
        for i in 0..N {
            if c[i] != 0 && v[i] != 0 {
                acc = self.f.add(acc, self.f.mul(c[i], v[i]));
            }
        }
        acc
    }

    /// `Some(#B(k))` when the model has rational points and all are singular.
    ///
    /// With the prefilter, points of the plane off `B` carrying a rational
    /// point reject at once: over `B` there is exactly one point, so
    /// `#X(k) = #B(k)` forces every other fibre to be empty.
    fn test(&self, c: &Coeffs, prefilter: bool) -> Option<usize> {
        let f = self.f;
        let separable = !self.char2 || c.g2.iter().any(|&x| x != 0);
        let mut branch = 0;
        let mut any = false;
        for p in 0..self.v2.len() {
            let a = self.dot(&c.g2, &self.v2[p]);
            let b = self.dot(&c.g4, &self.v4[p]);
            let on_branch = if self.char2 {
                a == 0
            } else {
                f.sub(f.mul(a, a), f.mul(f.from_int(4), b)) == 0
            };
            if on_branch {
                branch += 1;
            }
            if prefilter && separable && !on_branch {
                if f.quadratic_roots(a, b) > 0 {
                    return None;
                }
                continue;
            }
            for w in f.elements() {
                if f.add(f.mul(w, f.add(w, a)), b) != 0 {
                    continue;
                }
                any = true;
                if f.add(f.mul(self.two, w), a) != 0 {
                    return None;
                }
                for v in 0..3 {
                    if v == self.chart[p] {
                        continue;
                    }
                    let dv = f.add(f.mul(w, self.dot(&c.g2, &self.d2[p][v])), self.dot(&c.g4, &self.d4[p][v]));
                    if dv != 0 {
                        return None;
                    }
                }
            }
        }
        any.then_some(branch)
    }
}

fn digits<const N: usize>(mut idx: u64, q: u64) -> [Fq; N] {
    let mut out = [0; N];
    for slot in out.iter_mut().rev() {
        *slot = (idx % q) as Fq;
        idx /= q;
    }
    out
}

/// Orbit representatives of quadratic forms in `x, y, z` under `GL_3` and
/// scalars, as the least element of each orbit.
fn g2_representatives(f: &Field) -> Vec<[Fq; 6]> {
    let q = f.q() as u64;
    let gens = generators(f, true, false);
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for idx in 0..q.pow(6) {
        let start = Coeffs {
            g2: digits(idx, q),
            g4: [0; 15],
        };
        if !seen.insert(start) {
            continue;
        }
        // Enumeration is in increasing order, so the first unseen element
        // is the least of its orbit.
        reps.push(start.g2);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for g in &gens {
                let n = apply_move(f, g, &c);
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    reps
}

/// Representatives of `F_4^15` modulo the `F_2`-span of `h^2 + h g2`, as
/// bit patterns: each `F_4` coefficient is two bits and addition is xor.
fn char2_complement(f: &Field, g2: &[Fq; 6]) -> Vec<[Fq; 15]> {
    let pack = |v: &[Fq]| v.iter().fold(0u64, |acc, &c| (acc << 2) | c as u64);
    let mut basis: Vec<u64> = Vec::new();
    for i in 0..6 {
        for a in [1, f.x().expect("F_4")] {
            let mut h = [0; 6];
            h[i] = a;
            let c = apply_move(f, &Move::Shift(h), &Coeffs { g2: *g2, g4: [0; 15] });
            let mut v = pack(&c.g4);
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
    }
    let pivots: u64 = basis.iter().fold(0, |acc, b| acc | (1 << (63 - b.leading_zeros())));
    let free: Vec<u32> = (0..30).filter(|&bit| pivots & (1 << bit) == 0).collect();
    (0..1u64 << free.len())
        .map(|mask| {
            let bits = free
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .fold(0u64, |acc, (_, &b)| acc | 1 << b);
            std::array::from_fn(|i| ((bits >> (2 * (14 - i))) & 3) as Fq)
        })
        .collect()
}

pub fn sweep_for(spec: FieldSpec) -> Result<Sweep> {
    match spec.q() {
        2 => Ok(Sweep::Full),
        3 => Ok(Sweep::CompletedSquare),
        4 => Ok(Sweep::Char2Normal),
        q => Err(Error::Unsupported(format!("hunt over F_{q}"))),
    }
}

/// Runs the search. Output is sorted by coefficients and independent of the
/// thread count.
pub fn hunt(spec: FieldSpec, prefilter: bool, dedup: bool) -> Result<Census> {
    let sweep = sweep_for(spec)?;
    if dedup {
        check_dedup_field(spec)?;
    }
    let sw = Sweeper::new(spec);
    let f = sw.f;
    let q = f.q() as u64;
    let (mut hits, examined): (Vec<(Coeffs, usize)>, u64) = match sweep {
        Sweep::Full => {
            let hits = (0..q.pow(6))
                .into_par_iter()
                .flat_map_iter(|i2| {
                    let g2 = digits(i2, q);
                    let sw = &sw;
                    (0..q.pow(15)).filter_map(move |i4| {
                        let c = Coeffs { g2, g4: digits(i4, q) };
                        sw.test(&c, prefilter).map(|b| (c, b))
                    })
                })
                .collect();
            (hits, q.pow(21))
        }
        Sweep::CompletedSquare => {
            let block = q.pow(11);
            let hits = (0..q.pow(4))
                .into_par_iter()
                .flat_map_iter(|hi| {
                    let sw = &sw;
                    (hi * block..(hi + 1) * block).filter_map(move |i4| {
                        let c = Coeffs { g2: [0; 6], g4: digits(i4, q) };
                        sw.test(&c, prefilter).map(|b| (c, b))
                    })
                })
                .collect();
            (hits, q.pow(15))
        }
        Sweep::Char2Normal => {
            let mut hits = Vec::new();
            let mut examined = 0;
            for g2 in g2_representatives(f) {
                let reps = char2_complement(f, &g2);
                examined += reps.len() as u64;
                hits.par_extend(reps.par_iter().filter_map(|g4| {
                    let c = Coeffs { g2, g4: *g4 };
                    sw.test(&c, prefilter).map(|b| (c, b))
                }));
            }
            (hits, examined)
        }
    };
    hits.par_sort_unstable();
    let canonical = match sweep {
        Sweep::Char2Normal => vec![false; hits.len()],
        _ => orbit_minima(f, &hits.iter().map(|h| h.0).collect::<Vec<_>>())?,
    };
    let mut entries = Vec::with_capacity(hits.len());
    for ((c, branch), canon) in hits.into_iter().zip(canonical) {
        if dedup && !canon {
            continue;
        }
        let surface = c.surface(spec);
        let report = surface_report(&surface);
        if report.n_points == 0 || report.n_smooth > 0 {
            return Err(Error::Invariant(format!("sweep and report disagree on {surface}")));
        }
        entries.push(CensusEntry {
            exceeds_singular_bound: report.n_points > SINGULAR_BOUND,
            surface,
            report,
            branch_count: branch,
            orbit_canonical: canon,
        });
    }
    Ok(Census {
        header: CensusHeader {
            field: spec,
            sweep,
            prefilter,
            dedup,
            surfaces_examined: examined,
            entries: entries.len(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        entries,
    })
}

/// For a set closed under the dedup group, whether each element is the
/// least of its orbit. Each orbit is traversed once, inside the set.
fn orbit_minima(f: &Field, set: &[Coeffs]) -> Result<Vec<bool>> {
    let gens = dedup_generators(f);
    let index: HashMap<Coeffs, usize> = set.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut orbit_of = vec![usize::MAX; set.len()];
    let mut minima = vec![false; set.len()];
    for start in 0..set.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        // `set` is sorted, so the first unvisited element is the orbit minimum.
        minima[start] = true;
        orbit_of[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let n = apply_move(f, g, &set[i]);
                let j = *index
                    .get(&n)
                    .ok_or_else(|| Error::Invariant("census is not closed under the coordinate group".into()))?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = start;
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(minima)
}

/// Trace profiles of the degree-2 catalog classes, computed once.
pub struct ProfileTable {
    rows: Vec<(String, Vec<TraceProfile>)>,
}

impl ProfileTable {
    pub fn new(catalog: &Catalog) -> Result<Self> {
        let rows = catalog
            .of_degree(2)
            .map(|c| Ok((c.label.clone(), all_profiles(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    /// Classes with a profile predicting `points` points over `F_q` and
    /// `singular` rational singular points.
    pub fn matches(&self, q: u64, points: usize, singular: usize) -> Vec<(String, TraceProfile)> {
        let mut out = Vec::new();
        for (label, profiles) in &self.rows {
            for p in profiles {
                if p.count(q) == points as i64 && p.delta == singular {
                    out.push((label.clone(), p.clone()));
                }
            }
        }
        out
    }
}

/// Candidate singularity types for a census entry. Empty means no RDP type
/// fits, so the model is probably not a singular del Pezzo surface.
pub fn consistency_match(entry: &CensusEntry, table: &ProfileTable) -> Vec<(String, TraceProfile)> {
    table.matches(entry.surface.spec.q() as u64, entry.report.n_points, entry.report.n_singular)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicPair {
    /// Pencil parameters `(s:t)` of the two members, as `F_9` elements.
    pub first: [Fq; 2],
    pub second: [Fq; 2],
    /// Coefficients of the first member in the order `x^2, xy, xz, y^2, yz, z^2`.
    pub conic: [Fq; 6],
    /// A point of `P^2(F_3)` where `C(P) C'(P)` is a nonzero square.
    pub witness: Option<[Fq; 3]>,
    pub witnesses: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicReport {
    pub field: FieldSpec,
    pub pencil_size: usize,
    pub rational_members: usize,
    pub pairs: Vec<ConicPair>,
}

impl ConicReport {
    pub fn all_pairs_have_witnesses(&self) -> bool {
        self.pairs.iter().all(|p| p.witness.is_some())
    }
}

/// Conics through the frame `(1:0:0), (0:1:0), (0:0:1), (1:1:1)`:
/// `s(yz - xy) + t(xz - xy)` for `(s:t)` in `P^1(F_9)`. Members not defined
/// over `F_3` are paired with their Frobenius conjugates, and each pair is
/// tested for a point of `P^2(F_3)` giving a smooth point on
/// `w^2 = C(P) C'(P)`.
pub fn conic_pair_scan() -> ConicReport {
    let spec = FieldSpec::new(3, 2, None).expect("F_9 is supported");
    let f = spec.field();
    let members: Vec<[Fq; 2]> = std::iter::once([0, 1]).chain(f.elements().map(|t| [1, t])).collect();
    let conic = |[s, t]: [Fq; 2]| -> [Fq; 6] { [0, f.neg(f.add(s, t)), t, 0, s, 0] };
    let rational = |m: &[Fq; 2]| m.iter().all(|&c| f.frobenius(c) == c);
    let f3_points: Vec<[Fq; 3]> = plane_points(FieldSpec::new(3, 1, None).expect("F_3").field());
    let mut pairs = Vec::new();
    let mut used = HashSet::new();
    for m in &members {
        if rational(m) || used.contains(m) {
            continue;
        }
        let conj = m.map(|c| f.frobenius(c));
        used.insert(*m);
        used.insert(conj);
        let c = conic(*m);
        let hits: Vec<[Fq; 3]> = f3_points
            .iter()
            .copied()
            .filter(|p| {
                // C^phi(P) = phi(C(P)) for P over F_3, so the product is a
                // norm, hence in F_3, whose only nonzero square is 1.
                f.norm(eval_form(f, &c, g2_monomials(), p)) == 1
            })
            .collect();
        pairs.push(ConicPair {
            first: *m,
            second: conj,
            conic: c,
            witness: hits.first().copied(),
            witnesses: hits.len(),
        });
    }
    ConicReport {
        field: spec,
        pencil_size: members.len(),
        rational_members: members.iter().filter(|m| rational(m)).count(),
        pairs,
    }
}
