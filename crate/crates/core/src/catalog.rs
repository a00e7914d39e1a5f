//! Singularity classes: explicit simple-root configurations, their lines
//! and the text format they are stored in.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::dynkin::DynkinType;
use crate::error::{Error, Result};
use crate::lattice::{self, LatticeVector};

const BUILTIN: &str = include_str!("../data/catalog.txt");

/// How the minimal resolution is presented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Blow-up of the plane in `9 - degree` points; lives in `I^{1,9-degree}`.
    #[default]
    Blowup,
    /// The quadric cone, resolved by the Hirzebruch surface `F_2`. Its
    /// Picard lattice is even, so it has no (-1)-classes and no model in
    /// `I^{1,1}`.
    Cone,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityClass {
    pub degree: u8,
    pub label: String,
    /// Type over the algebraic closure, possibly with a `[..]'` marker.
    pub dynkin: String,
    /// Type of the Galois-stable singular points, when the class fixes it.
    pub rational: Option<String>,
    pub model: Model,
    pub simple_roots: Vec<LatticeVector>,
    pub expected_lines: Option<usize>,
}

impl SingularityClass {
    /// Rank of the ambient lattice, `9 - degree`.
    pub fn n(&self) -> usize {
        9 - self.degree as usize
    }

    pub fn dynkin_type(&self) -> Result<DynkinType> {
        strip_variant(&self.dynkin).parse()
    }

    pub fn rational_type(&self) -> Result<Option<DynkinType>> {
        self.rational.as_deref().map(str::parse).transpose()
    }

    /// Checks the invariants of a catalog entry.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::Catalog {
            label: self.label.clone(),
            reason,
        };
        if !(1..=8).contains(&self.degree) {
            return Err(fail(format!("degree {} out of range", self.degree)));
        }
        let ty = self.dynkin_type().map_err(|e| fail(e.to_string()))?;
        self.rational_type().map_err(|e| fail(e.to_string()))?;
        if self.model == Model::Cone {
            if self.degree != 8 || !self.simple_roots.is_empty() || ty.to_string() != "A1" {
                return Err(fail("cone model is only the degree-8 A1 class".into()));
            }
        } else {
            if self.degree == 8 {
                return Err(fail("degree 8 has no blow-up model".into()));
            }
            let n = self.n();
            for a in &self.simple_roots {
                if a.n() != n {
                    return Err(fail(format!("{a} is not in I^(1,{n})")));
                }
                if !lattice::is_root(a) {
                    return Err(fail(format!("{a} is not a root")));
                }
            }
            let found = cartan_type(&self.simple_roots).map_err(|e| fail(e.to_string()))?;
            if found != ty {
                return Err(fail(format!("roots have type {found}, expected {ty}")));
            }
        }
        if let Some(want) = self.expected_lines {
            let got = lines(self).len();
            if got != want {
                return Err(fail(format!("{got} lines, expected {want}")));
            }
        }
        Ok(())
    }
}

/// `[2A1]''` -> `2A1`.
fn strip_variant(s: &str) -> &str {
    s.trim().trim_end_matches('\'').trim_start_matches('[').trim_end_matches(']')
}

/// Dynkin type of a set of roots whose pairwise pairings are 0 or 1.
pub fn cartan_type(roots: &[LatticeVector]) -> Result<DynkinType> {
    let k = roots.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            match lattice::pair(&roots[i], &roots[j])? {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                m => return Err(Error::CatalogFormat(format!("roots {} and {} pair to {m}", roots[i], roots[j]))),
            }
        }
    }
    DynkinType::classify(&adj)
        .map(|comps| DynkinType::of_components(&comps))
        .ok_or_else(|| Error::CatalogFormat("Cartan graph is not of finite ADE type".into()))
}

/// Exceptional classes `l` with `l.a >= 0` for every simple root `a`:
/// the (-1)-curves of the configuration. Lexicographically ordered.
pub fn lines(c: &SingularityClass) -> Vec<LatticeVector> {
    if c.model == Model::Cone {
        return Vec::new();
    }
    let all = lattice::enumerate_exceptional(c.n()).expect("validated rank");
    all.iter()
        .filter(|l| c.simple_roots.iter().all(|a| lattice::pair(l, a).expect("same rank") >= 0))
        .cloned()
        .collect()
}

#[derive(Debug, Clone)]
pub struct Catalog {
    classes: Vec<SingularityClass>,
}

#[derive(Deserialize)]
struct RawFile {
    #[serde(default)]
    class: Vec<RawClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    degree: u8,
    label: String,
    dynkin: String,
    rational: Option<String>,
    #[serde(default)]
    model: Model,
    #[serde(default)]
    roots: Vec<Vec<i64>>,
    lines: Option<usize>,
}

impl Catalog {
    /// Parses the `[class]` block format and validates every entry.
    pub fn from_text(text: &str) -> Result<Self> {
        // Each `[class]` header opens a new entry: as TOML that is an array
        // of tables.
        let toml_text: String = text
            .lines()
            .map(|l| if l.trim() == "[class]" { "[[class]]" } else { l })
            .collect::<Vec<_>>()
            .join("\n");
        let raw: RawFile = toml::from_str(&toml_text).map_err(|e| Error::CatalogFormat(e.to_string()))?;
        let mut seen = BTreeSet::new();
        let mut classes = Vec::with_capacity(raw.class.len());
        for r in raw.class {
            if !seen.insert(r.label.clone()) {
                return Err(Error::Catalog {
                    label: r.label,
                    reason: "duplicate label".into(),
                });
            }
            let simple_roots = r
                .roots
                .into_iter()
                .map(LatticeVector::new)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Catalog {
                    label: r.label.clone(),
                    reason: e.to_string(),
                })?;
            let c = SingularityClass {
                degree: r.degree,
                label: r.label,
                dynkin: r.dynkin,
                rational: r.rational,
                model: r.model,
                simple_roots,
                expected_lines: r.lines,
            };
            c.validate()?;
            classes.push(c);
        }
        Ok(Self { classes })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            let _ = writeln!(out, "[class]\ndegree = {}\nlabel = {:?}\ndynkin = {:?}", c.degree, c.label, c.dynkin);
            if let Some(r) = &c.rational {
                let _ = writeln!(out, "rational = {r:?}");
            }
            if c.model == Model::Cone {
                out.push_str("model = \"cone\"\n");
            }
            let roots: Vec<String> = c
                .simple_roots
                .iter()
                .map(|a| format!("[{}]", a.coeffs().iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            let _ = writeln!(out, "roots = [{}]", roots.join(", "));
            if let Some(l) = c.expected_lines {
                let _ = writeln!(out, "lines = {l}");
            }
            out.push('\n');
        }
        out
    }

    pub fn classes(&self) -> &[SingularityClass] {
        &self.classes
    }

    pub fn get(&self, label: &str) -> Result<&SingularityClass> {
        self.classes
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::UnknownClass(label.to_string()))
    }

    pub fn of_degree(&self, degree: u8) -> impl Iterator<Item = &SingularityClass> {
        self.classes.iter().filter(move |c| c.degree == degree)
    }
}

/// The embedded catalog. Panics naming the offending class if the bundled
/// data fails validation.
pub fn builtin_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| match Catalog::from_text(BUILTIN) {
        Ok(c) => c,
        Err(e) => panic!("bundled catalog is invalid: {e}"),
    })
}
