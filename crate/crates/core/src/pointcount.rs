//! Rational points of degree-2 del Pezzo models `w^2 + w G2 + G4 = 0` in
//! `P(1,1,1,2)`, of plane curves, of quadrics in `P^3` and of intersections
//! of two quadrics in `P^4`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Fq};

/// Exponent vectors of the degree-`d` monomials in `vars` variables,
/// graded lex with the first variable largest: for three variables and
/// `d = 2` this is `x^2, xy, xz, y^2, yz, z^2`.
pub fn monomials(vars: usize, d: u32) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(vars - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Renders a monomial such as `x^2yz`.
pub fn monomial_name(exps: &[u32], names: &[&str]) -> String {
    let s: String = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(&e, n)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Value of `sum c_i m_i` at `pt`.
pub fn eval_form(f: &Field, coeffs: &[Fq], mons: &[Vec<u32>], pt: &[Fq]) -> Fq {
    let mut acc = 0;
    for (&c, m) in coeffs.iter().zip(mons) {
        if c == 0 {
            continue;
        }
        let term = m.iter().zip(pt).fold(c, |t, (&e, &x)| f.mul(t, f.pow(x, e as u64)));
        acc = f.add(acc, term);
    }
    acc
}

/// Formal partial derivative in variable `v`, evaluated at `pt`.
pub fn eval_partial(f: &Field, coeffs: &[Fq], mons: &[Vec<u32>], v: usize, pt: &[Fq]) -> Fq {
    let mut acc = 0;
    for (&c, m) in coeffs.iter().zip(mons) {
        if c == 0 || m[v] == 0 {
            continue;
        }
        let mut term = f.mul(c, f.from_int(m[v] as i64));
        for (i, (&e, &x)) in m.iter().zip(pt).enumerate() {
            let e = if i == v { e - 1 } else { e };
            term = f.mul(term, f.pow(x, e as u64));
        }
        acc = f.add(acc, term);
    }
    acc
}

/// Points of `P^{n-1}(F_q)`, normalised so the first nonzero coordinate
/// is 1, in lexicographic order of that normal form.
pub fn projective_points(f: &Field, n: usize) -> Vec<Vec<Fq>> {
    let q = f.q();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        for idx in 0..q.pow(free as u32) {
            let mut pt = vec![0; n];
            pt[lead] = 1;
            let mut r = idx;
            for j in (lead + 1..n).rev() {
                pt[j] = (r % q) as Fq;
                r /= q;
            }
            out.push(pt);
        }
    }
    out
}

pub fn plane_points(f: &Field) -> Vec<[Fq; 3]> {
    projective_points(f, 3).into_iter().map(|p| [p[0], p[1], p[2]]).collect()
}

/// `w^2 + w G2(x,y,z) + G4(x,y,z)` with coefficients in the monomial order
/// of [`monomials`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSurface", into = "RawSurface")]
pub struct DegreeTwoSurface {
    pub spec: FieldSpec,
    pub g2: Vec<Fq>,
    pub g4: Vec<Fq>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    p: u32,
    k: u32,
    modulus: Option<[u32; 2]>,
    g2: Vec<u32>,
    g4: Vec<u32>,
}

impl TryFrom<RawSurface> for DegreeTwoSurface {
    type Error = Error;

    fn try_from(r: RawSurface) -> Result<Self> {
        let spec = FieldSpec::new(r.p, r.k, r.modulus)?;
        Self::new(spec, &r.g2, &r.g4)
    }
}

impl From<DegreeTwoSurface> for RawSurface {
    fn from(s: DegreeTwoSurface) -> Self {
        Self {
            p: s.spec.p,
            k: s.spec.k,
            modulus: s.spec.modulus,
            g2: s.g2.iter().map(|&c| c as u32).collect(),
            g4: s.g4.iter().map(|&c| c as u32).collect(),
        }
    }
}

impl DegreeTwoSurface {
    pub fn new(spec: FieldSpec, g2: &[u32], g4: &[u32]) -> Result<Self> {
        let q = spec.q();
        for (c, want) in [(g2, 6), (g4, 15)] {
            if c.len() != want {
                return Err(Error::CoefficientCount {
                    expected: want,
                    got: c.len(),
                });
            }
            if let Some(&value) = c.iter().find(|&&v| v >= q) {
                return Err(Error::CoefficientRange { value, q });
            }
        }
        Ok(Self {
            spec,
            g2: g2.iter().map(|&c| c as Fq).collect(),
            g4: g4.iter().map(|&c| c as Fq).collect(),
        })
    }

    /// Builds a surface from `(coefficient, [a, b, c])` terms, summing repeats.
    pub fn from_terms(spec: FieldSpec, g2: &[(u32, [u32; 3])], g4: &[(u32, [u32; 3])]) -> Result<Self> {
        let f = spec.field();
        let gather = |terms: &[(u32, [u32; 3])], d: u32| -> Result<Vec<u32>> {
            let mons = monomials(3, d);
            let mut out = vec![0 as Fq; mons.len()];
            for (c, e) in terms {
                let i = mons
                    .iter()
                    .position(|m| m[..] == e[..])
                    .ok_or_else(|| Error::SurfaceFormat(format!("{e:?} is not a degree-{d} monomial")))?;
                out[i] = f.add(out[i], (*c % spec.q()) as Fq);
            }
            Ok(out.into_iter().map(u32::from).collect())
        };
        Self::new(spec, &gather(g2, 2)?, &gather(g4, 4)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::SurfaceFormat(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn field(&self) -> &'static Field {
        self.spec.field()
    }

    /// `G2` and `G4` at a plane point.
    pub fn branch_values(&self, p: &[Fq]) -> (Fq, Fq) {
        let f = self.field();
        (eval_form(f, &self.g2, mons2(), p), eval_form(f, &self.g4, mons4(), p))
    }

    /// `F` at arbitrary coordinates `(x, y, z, w)`.
    pub fn evaluate_at(&self, c: [Fq; 4]) -> Fq {
        let f = self.field();
        let (a, b) = self.branch_values(&c[..3]);
        f.add(f.mul(c[3], f.add(c[3], a)), b)
    }

    /// `(dF/dx, dF/dy, dF/dz, dF/dw)` at `(x, y, z, w)`.
    pub fn gradient(&self, c: [Fq; 4]) -> [Fq; 4] {
        let f = self.field();
        let p = &c[..3];
        let mut g = [0; 4];
        for (v, slot) in g.iter_mut().take(3).enumerate() {
            let d2 = eval_partial(f, &self.g2, mons2(), v, p);
            let d4 = eval_partial(f, &self.g4, mons4(), v, p);
            *slot = f.add(f.mul(c[3], d2), d4);
        }
        let two_w = f.mul(f.from_int(2), c[3]);
        g[3] = f.add(two_w, eval_form(f, &self.g2, mons2(), p));
        g
    }

    /// Singularity verdict in the chart where coordinate `chart` (0, 1 or 2)
    /// is 1; `None` when that coordinate vanishes. The point is assumed to
    /// lie on the surface.
    pub fn singular_in_chart(&self, c: [Fq; 4], chart: usize) -> Option<bool> {
        let f = self.field();
        let lambda = f.inv(c[chart]).ok()?;
        let l2 = f.mul(lambda, lambda);
        let scaled = [f.mul(lambda, c[0]), f.mul(lambda, c[1]), f.mul(lambda, c[2]), f.mul(l2, c[3])];
        let g = self.gradient(scaled);
        Some((0..4).filter(|&v| v != chart).all(|v| g[v] == 0))
    }
}

fn mons2() -> &'static [Vec<u32>] {
    static M: std::sync::OnceLock<Vec<Vec<u32>>> = std::sync::OnceLock::new();
    M.get_or_init(|| monomials(3, 2))
}

fn mons4() -> &'static [Vec<u32>] {
    static M: std::sync::OnceLock<Vec<Vec<u32>>> = std::sync::OnceLock::new();
    M.get_or_init(|| monomials(3, 4))
}

pub fn g2_monomials() -> &'static [Vec<u32>] {
    mons2()
}

pub fn g4_monomials() -> &'static [Vec<u32>] {
    mons4()
}

impl fmt::Display for DegreeTwoSurface {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.field();
        let poly = |coeffs: &[Fq], mons: &[Vec<u32>]| {
            let terms: Vec<String> = coeffs
                .iter()
                .zip(mons)
                .filter(|(c, _)| **c != 0)
                .map(|(&c, m)| {
                    let name = monomial_name(m, &["x", "y", "z"]);
                    if c == 1 {
                        name
                    } else {
                        format!("({}){name}", f.render(c))
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        write!(out, "w^2 + w({}) + ({})", poly(&self.g2, mons2()), poly(&self.g4, mons4()))
    }
}

/// A point of `P(1,1,1,2)`: first nonzero of `x, y, z` equal to 1, or
/// `(0,0,0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WpsPoint {
    pub coords: [Fq; 4],
}

impl WpsPoint {
    /// Normalises arbitrary nonzero coordinates.
    pub fn normalize(f: &Field, c: [Fq; 4]) -> Option<Self> {
        match c[..3].iter().position(|&x| x != 0) {
            Some(i) => {
                let l = f.inv(c[i]).ok()?;
                let l2 = f.mul(l, l);
                Some(Self {
                    coords: [f.mul(l, c[0]), f.mul(l, c[1]), f.mul(l, c[2]), f.mul(l2, c[3])],
                })
            }
            None if c[3] != 0 => Some(Self { coords: [0, 0, 0, 1] }),
            None => None,
        }
    }

    pub fn render(&self, f: &Field) -> String {
        let parts: Vec<String> = self.coords.iter().map(|&c| f.render(c)).collect();
        format!("[{}]", parts.join(":"))
    }
}

pub fn wps_points(spec: FieldSpec) -> Vec<WpsPoint> {
    let f = spec.field();
    let mut out: Vec<WpsPoint> = plane_points(f)
        .into_iter()
        .flat_map(|p| f.elements().map(move |w| WpsPoint { coords: [p[0], p[1], p[2], w] }))
        .collect();
    out.push(WpsPoint { coords: [0, 0, 0, 1] });
    out
}

pub fn evaluate(s: &DegreeTwoSurface, pt: &WpsPoint) -> Fq {
    s.evaluate_at(pt.coords)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub points: Vec<WpsPoint>,
    pub singular: Vec<WpsPoint>,
    pub smooth: Vec<WpsPoint>,
    pub n_points: usize,
    pub n_singular: usize,
    pub n_smooth: usize,
}

pub fn surface_report(s: &DegreeTwoSurface) -> SurfaceReport {
    let points: Vec<WpsPoint> = wps_points(s.spec).into_iter().filter(|p| evaluate(s, p) == 0).collect();
    let (singular, smooth): (Vec<WpsPoint>, Vec<WpsPoint>) = points.iter().partition(|p| {
        let chart = p.coords[..3].iter().position(|&x| x != 0).expect("(0,0,0,1) is never on X");
        s.singular_in_chart(p.coords, chart).expect("chart coordinate is 1")
    });
    SurfaceReport {
        n_points: points.len(),
        n_singular: singular.len(),
        n_smooth: smooth.len(),
        points,
        singular,
        smooth,
    }
}

/// Zeros in `P^2(F_q)` of a homogeneous polynomial of degree `d`.
pub fn plane_curve_points(spec: FieldSpec, d: u32, coeffs: &[u32]) -> Result<Vec<[Fq; 3]>> {
    let mons = monomials(3, d);
    if coeffs.len() != mons.len() {
        return Err(Error::CoefficientCount {
            expected: mons.len(),
            got: coeffs.len(),
        });
    }
    if let Some(&value) = coeffs.iter().find(|&&c| c >= spec.q()) {
        return Err(Error::CoefficientRange { value, q: spec.q() });
    }
    if coeffs.iter().all(|&c| c == 0) {
        return Err(Error::ZeroPolynomial);
    }
    let f = spec.field();
    let c: Vec<Fq> = coeffs.iter().map(|&c| c as Fq).collect();
    Ok(plane_points(f).into_iter().filter(|p| eval_form(f, &c, &mons, p) == 0).collect())
}

/// Geometric type of a quadric in `P^3` over a field of odd order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricKind {
    Everything,
    RepeatedPlane,
    PlanePair,
    Line,
    Cone,
    Hyperbolic,
    Elliptic,
}

impl QuadricKind {
    pub const ALL: [QuadricKind; 6] = [
        QuadricKind::RepeatedPlane,
        QuadricKind::PlanePair,
        QuadricKind::Line,
        QuadricKind::Cone,
        QuadricKind::Hyperbolic,
        QuadricKind::Elliptic,
    ];

    pub fn rank(self) -> usize {
        match self {
            QuadricKind::Everything => 0,
            QuadricKind::RepeatedPlane => 1,
            QuadricKind::PlanePair | QuadricKind::Line => 2,
            QuadricKind::Cone => 3,
            QuadricKind::Hyperbolic | QuadricKind::Elliptic => 4,
        }
    }

    /// Number of `F_q`-points.
    pub fn expected_count(self, q: u64) -> u64 {
        match self {
            QuadricKind::Everything => q * q * q + q * q + q + 1,
            QuadricKind::RepeatedPlane | QuadricKind::Cone => q * q + q + 1,
            QuadricKind::PlanePair => 2 * q * q + q + 1,
            QuadricKind::Line => q + 1,
            QuadricKind::Hyperbolic => (q + 1) * (q + 1),
            QuadricKind::Elliptic => q * q + 1,
        }
    }
}

impl fmt::Display for QuadricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuadricKind::Everything => "zero form",
            QuadricKind::RepeatedPlane => "repeated plane",
            QuadricKind::PlanePair => "pair of planes",
            QuadricKind::Line => "line",
            QuadricKind::Cone => "quadric cone",
            QuadricKind::Hyperbolic => "hyperbolic quadric",
            QuadricKind::Elliptic => "elliptic quadric",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricReport {
    pub rank: usize,
    pub kind: QuadricKind,
    pub count: u64,
    pub expected: u64,
}

/// Diagonal of a congruent diagonal form of the quadratic form with
/// coefficients `coeffs` (monomial order of [`monomials`] in `n` variables).
/// Needs odd characteristic.
pub fn diagonalize(f: &Field, n: usize, coeffs: &[Fq]) -> Result<Vec<Fq>> {
    if f.p() == 2 {
        return Err(Error::EvenCharacteristic(f.q() as u32));
    }
    let mons = monomials(n, 2);
    if coeffs.len() != mons.len() {
        return Err(Error::CoefficientCount {
            expected: mons.len(),
            got: coeffs.len(),
        });
    }
    let half = f.inv(2)?;
    let mut m = vec![vec![0 as Fq; n]; n];
    for (&c, e) in coeffs.iter().zip(&mons) {
        let vars: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let (i, j) = (vars[0], vars[1]);
        if i == j {
            m[i][i] = c;
        } else {
            m[i][j] = f.mul(c, half);
            m[j][i] = m[i][j];
        }
    }
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if (k..n).all(|i| m[i][i] == 0) {
            // Make a diagonal entry nonzero: row/col i += row/col j.
            if let Some((i, j)) = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| m[i][j] != 0) {
                for r in 0..n {
                    m[i][r] = f.add(m[i][r], m[j][r]);
                }
                for r in 0..n {
                    m[r][i] = f.add(m[r][i], m[r][j]);
                }
            }
        }
        let Some(piv) = (k..n).find(|&i| m[i][i] != 0) else {
            diag.extend(std::iter::repeat_n(0, n - k));
            break;
        };
        m.swap(k, piv);
        for row in m.iter_mut() {
            row.swap(k, piv);
        }
        let inv = f.inv(m[k][k])?;
        for i in k + 1..n {
            let factor = f.mul(m[i][k], inv);
            if factor == 0 {
                continue;
            }
            for j in k..n {
                m[i][j] = f.sub(m[i][j], f.mul(factor, m[k][j]));
            }
            for r in k..n {
                m[r][i] = f.sub(m[r][i], f.mul(factor, m[r][k]));
            }
        }
        diag.push(m[k][k]);
    }
    Ok(diag)
}

/// Rank and type from a diagonalisation, point count by exhaustion.
/// Coefficient order: `x^2, xy, xz, xw, y^2, yz, yw, z^2, zw, w^2`.
pub fn quadric_report(spec: FieldSpec, coeffs: &[u32]) -> Result<QuadricReport> {
    let f = spec.field();
    if let Some(&value) = coeffs.iter().find(|&&c| c >= spec.q()) {
        return Err(Error::CoefficientRange { value, q: spec.q() });
    }
    let c: Vec<Fq> = coeffs.iter().map(|&c| c as Fq).collect();
    let diag = diagonalize(f, 4, &c)?;
    let nz: Vec<Fq> = diag.iter().copied().filter(|&d| d != 0).collect();
    let det = nz.iter().fold(1, |a, &d| f.mul(a, d));
    let kind = match nz.len() {
        0 => QuadricKind::Everything,
        1 => QuadricKind::RepeatedPlane,
        2 if f.is_square(f.neg(det)) => QuadricKind::PlanePair,
        2 => QuadricKind::Line,
        3 => QuadricKind::Cone,
        _ if f.is_square(det) => QuadricKind::Hyperbolic,
        _ => QuadricKind::Elliptic,
    };
    let mons = monomials(4, 2);
    let count = projective_points(f, 4)
        .iter()
        .filter(|p| eval_form(f, &c, &mons, p) == 0)
        .count() as u64;
    Ok(QuadricReport {
        rank: nz.len(),
        kind,
        count,
        expected: kind.expected_count(spec.q() as u64),
    })
}

/// Coefficients of `sum_i d_i (row_i . x)^2`.
pub fn form_from_diagonal(f: &Field, d: &[Fq], rows: &[Vec<Fq>]) -> Vec<Fq> {
    let n = d.len();
    let mons = monomials(n, 2);
    let mut out = vec![0; mons.len()];
    for (di, row) in d.iter().zip(rows) {
        for a in 0..n {
            for b in a..n {
                let mut c = f.mul(row[a], row[b]);
                if a != b {
                    c = f.add(c, c);
                }
                let mut e = vec![0; n];
                e[a] += 1;
                e[b] += 1;
                let idx = mons.iter().position(|m| *m == e).expect("degree-2 monomial");
                out[idx] = f.add(out[idx], f.mul(*di, c));
            }
        }
    }
    out
}

fn random_invertible(f: &Field, n: usize, rng: &mut impl Rng) -> Vec<Vec<Fq>> {
    loop {
        let rows: Vec<Vec<Fq>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..f.q()) as Fq).collect())
            .collect();
        if matrix_rank(f, &rows) == n {
            return rows;
        }
    }
}

pub fn matrix_rank(f: &Field, rows: &[Vec<Fq>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(m[rank][c]).expect("pivot is nonzero");
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let factor = f.mul(m[r][c], inv);
                for j in 0..cols {
                    m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A random quadric of the requested type: a diagonal model pushed through
/// a random invertible change of variables. Odd `q` only.
pub fn random_quadric(f: &Field, kind: QuadricKind, rng: &mut impl Rng) -> Vec<Fq> {
    let q = f.q();
    let nonzero = |rng: &mut dyn rand::RngCore| rng.gen_range(1..q) as Fq;
    let nonsquare = (1..q as Fq).find(|&a| !f.is_square(a)).expect("odd q has non-squares");
    let mut d = vec![0 as Fq; 4];
    loop {
        for (i, slot) in d.iter_mut().enumerate() {
            *slot = if i < kind.rank() { nonzero(rng) } else { 0 };
        }
        let det = d[..kind.rank()].iter().fold(1, |a, &x| f.mul(a, x));
        let ok = match kind {
            QuadricKind::PlanePair => f.is_square(f.neg(det)),
            QuadricKind::Line => !f.is_square(f.neg(det)),
            QuadricKind::Hyperbolic => f.is_square(det),
            QuadricKind::Elliptic => !f.is_square(det),
            _ => true,
        };
        if ok {
            break;
        }
        // Nudge the last entry into the other square class.
        if kind.rank() >= 2 {
            let last = kind.rank() - 1;
            d[last] = f.mul(d[last], nonsquare);
            break;
        }
    }
    let rows = random_invertible(f, 4, rng);
    form_from_diagonal(f, &d, &rows)
}

/// Common zeros in `P^4(F_q)` of two quadratic forms in five variables.
pub fn quadric_intersection_points(spec: FieldSpec, a: &[Fq], b: &[Fq]) -> Result<Vec<Vec<Fq>>> {
    let mons = monomials(5, 2);
    for c in [a, b] {
        if c.len() != mons.len() {
            return Err(Error::CoefficientCount {
                expected: mons.len(),
                got: c.len(),
            });
        }
    }
    let f = spec.field();
    Ok(projective_points(f, 5)
        .into_iter()
        .filter(|p| eval_form(f, a, &mons, p) == 0 && eval_form(f, b, &mons, p) == 0)
        .collect())
}

pub fn quadric_intersection_count(spec: FieldSpec, a: &[Fq], b: &[Fq]) -> Result<usize> {
    Ok(quadric_intersection_points(spec, a, b)?.len())
}

/// Whether the Jacobian of `(a, b)` has rank below 2 at `pt`.
pub fn intersection_singular_at(f: &Field, a: &[Fq], b: &[Fq], pt: &[Fq]) -> bool {
    let mons = monomials(5, 2);
    let rows: Vec<Vec<Fq>> = [a, b]
        .iter()
        .map(|c| (0..5).map(|v| eval_partial(f, c, &mons, v, pt)).collect())
        .collect();
    matrix_rank(f, &rows) < 2
}

/// A degree-4 model `x0 x1 - g(x1..x4) = 0, f(x1..x4) = 0` with `f` of rank
/// at least 3. Returns the two five-variable forms.
pub fn random_dp4(f: &Field, rng: &mut impl Rng) -> (Vec<Fq>, Vec<Fq>) {
    let lift = |c4: &[Fq]| -> Vec<Fq> {
        // Forms in x1..x4 occupy the monomials with no x0.
        let m5 = monomials(5, 2);
        let m4 = monomials(4, 2);
        let mut out = vec![0; m5.len()];
        for (c, e) in c4.iter().zip(&m4) {
            let mut full = vec![0];
            full.extend(e);
            let i = m5.iter().position(|m| *m == full).expect("lifted monomial");
            out[i] = *c;
        }
        out
    };
    let q = f.q();
    let ff = loop {
        let c: Vec<Fq> = (0..10).map(|_| rng.gen_range(0..q) as Fq).collect();
        let rank = diagonalize(f, 4, &c).map_or(0, |d| d.iter().filter(|&&x| x != 0).count());
        if rank >= 3 {
            break c;
        }
    };
    let g: Vec<Fq> = (0..10).map(|_| rng.gen_range(0..q) as Fq).collect();
    let mut first: Vec<Fq> = lift(&g).into_iter().map(|c| f.neg(c)).collect();
    let x0x1 = monomials(5, 2).iter().position(|m| *m == [1, 1, 0, 0, 0]).expect("x0x1");
    first[x0x1] = f.add(first[x0x1], 1);
    (first, lift(&ff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u32, k: u32) -> FieldSpec {
        FieldSpec::new(p, k, None).unwrap()
    }

    #[test]
    fn monomial_orders() {
        let names: Vec<String> = monomials(3, 2).iter().map(|m| monomial_name(m, &["x", "y", "z"])).collect();
        assert_eq!(names, ["x^2", "xy", "xz", "y^2", "yz", "z^2"]);
        let m4 = monomials(3, 4);
        assert_eq!(m4.len(), 15);
        assert_eq!(monomial_name(&m4[4], &["x", "y", "z"]), "x^2yz");
        assert_eq!(monomial_name(&m4[9], &["x", "y", "z"]), "xz^3");
        let q4: Vec<String> = monomials(4, 2).iter().map(|m| monomial_name(m, &["x", "y", "z", "w"])).collect();
        assert_eq!(q4, ["x^2", "xy", "xz", "xw", "y^2", "yz", "yw", "z^2", "zw", "w^2"]);
    }

    #[test]
    fn weighted_point_counts() {
        assert_eq!(wps_points(spec(2, 1)).len(), 15);
        assert_eq!(wps_points(spec(3, 1)).len(), 40);
        assert_eq!(wps_points(spec(2, 2)).len(), 85);
        assert!(wps_points(spec(5, 1)).contains(&WpsPoint { coords: [0, 0, 0, 1] }));
    }

    #[test]
    fn point_at_infinity_is_never_on_x() {
        let s = DegreeTwoSurface::new(spec(3, 1), &[1; 6], &[2; 15]).unwrap();
        assert_eq!(evaluate(&s, &WpsPoint { coords: [0, 0, 0, 1] }), 1);
    }

    #[test]
    fn plane_curves() {
        let s3 = spec(3, 1);
        assert_eq!(plane_curve_points(s3, 1, &[1, 0, 0]).unwrap().len(), 4);
        // xz - y^2 over F_2.
        assert_eq!(plane_curve_points(spec(2, 1), 2, &[0, 0, 1, 1, 0, 0]).unwrap().len(), 3);
        assert_eq!(plane_curve_points(s3, 1, &[0, 0, 0]), Err(Error::ZeroPolynomial));
        assert!(plane_curve_points(s3, 2, &[0, 0, 0]).is_err());
    }

    #[test]
    fn quadric_examples() {
        // xw - yz over F_3.
        let r = quadric_report(spec(3, 1), &[0, 0, 0, 1, 0, 2, 0, 0, 0, 0]).unwrap();
        assert_eq!((r.kind, r.count), (QuadricKind::Hyperbolic, 16));
        let r = quadric_report(spec(3, 1), &[1, 0, 0, 0, 1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!((r.rank, r.count), (3, 13));
        let r = quadric_report(spec(5, 1), &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!((r.kind, r.count), (QuadricKind::RepeatedPlane, 31));
        assert_eq!(quadric_report(spec(2, 1), &[1; 10]), Err(Error::EvenCharacteristic(2)));
        // x^2 + y^2 over F_3: -1 is not a square, so a line.
        let r = quadric_report(spec(3, 1), &[1, 0, 0, 0, 1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!((r.kind, r.count), (QuadricKind::Line, 4));
    }

    #[test]
    fn intersections() {
        // x0x1 - x2^2, x3x4 - x2^2 over F_2.
        let m = monomials(5, 2);
        let idx = |e: [u32; 5]| m.iter().position(|x| *x == e).unwrap();
        let mut a = vec![0; 15];
        let mut b = vec![0; 15];
        a[idx([1, 1, 0, 0, 0])] = 1;
        a[idx([0, 0, 2, 0, 0])] = 1;
        b[idx([0, 0, 0, 1, 1])] = 1;
        b[idx([0, 0, 2, 0, 0])] = 1;
        let s2 = spec(2, 1);
        let f = s2.field();
        let want = projective_points(f, 5)
            .iter()
            .filter(|p| f.mul(p[0], p[1]) == f.mul(p[2], p[2]) && f.mul(p[3], p[4]) == f.mul(p[2], p[2]))
            .count();
        assert_eq!(quadric_intersection_count(s2, &a, &b).unwrap(), want);
        assert_eq!(quadric_intersection_count(s2, &a, &a).unwrap(), 15);
    }
}
