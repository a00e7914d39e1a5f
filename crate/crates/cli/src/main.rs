//! `delpezzo`: tables, graphs, point counts and searches for singular del
//! Pezzo surfaces over finite fields.

mod table;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use delpezzo_core::hunt::{conic_pair_scan, consistency_match, hunt, ProfileTable};
use delpezzo_core::lattice::{enumerate_exceptional, enumerate_roots};
use delpezzo_core::symmetry::automorphisms;
use delpezzo_core::trace::{all_profiles, remaining_cases, smooth_point_guaranteed};
use delpezzo_core::verify::{run_all, run_criterion, VerifyOptions, CRITERIA, DEFAULT_SEED};
use delpezzo_core::{
    builtin_catalog, lines, negative_curve_graph, quadric_report, surface_report, DegreeTwoSurface, FieldSpec, Model,
};
use serde::Serialize;

use table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Markdown,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "delpezzo", version, about = "Singular del Pezzo surfaces over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; `dot` only applies to `graph`.
    #[arg(long, global = true, value_enum, default_value = "markdown")]
    format: Format,
    /// Worker threads for `hunt` and `verify`.
    #[arg(long, global = true, env = "DELPEZZO_THREADS")]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VectorKind {
    Roots,
    Exceptional,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Roots or exceptional vectors of I^{1,N}.
    Lattice {
        kind: VectorKind,
        #[arg(long)]
        n: usize,
    },
    /// Catalog rows with computed line counts.
    Classes {
        #[arg(long)]
        degree: u8,
        /// Largest q for the smooth-point verdict.
        #[arg(long, default_value_t = 9)]
        qmax: u64,
    },
    /// Negative-curve graph of a class.
    Graph {
        #[arg(long = "class")]
        class: String,
    },
    /// Automorphisms of the graph of a class.
    Autos {
        #[arg(long = "class")]
        class: String,
    },
    /// Frobenius trace profiles of a class.
    Profiles {
        #[arg(long = "class")]
        class: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Degree-2 classes and q for which no smooth point is forced.
    Remaining {
        #[arg(long, default_value_t = 9)]
        qmax: u64,
    },
    /// Points of a degree-2 model read from a JSON file.
    Count {
        #[arg(long)]
        surface: PathBuf,
        /// Also list catalog classes consistent with the counts.
        #[arg(long = "match")]
        matches: bool,
    },
    /// Rank, type and point count of a quadric in P^3.
    Quadric {
        /// Ten coefficients of x^2, xy, xz, xw, y^2, yz, yw, z^2, zw, w^2.
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// Degree-2 models whose rational points are all singular.
    Hunt {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        prefilter: bool,
        #[arg(long)]
        dedup: bool,
        /// JSON-lines census file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjugate pairs of conics through four points.
    Conics {
        #[arg(long, default_value_t = 3)]
        q: u64,
    },
    /// Replays the acceptance checks.
    Verify {
        #[arg(long, conflicts_with = "criterion")]
        all: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=CRITERIA as i64))]
        criterion: Option<u8>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Domain failures that count as bad input rather than a failed check.
struct Usage(anyhow::Error);

enum Outcome {
    Ok,
    ChecksFailed,
}

fn field_of_order(q: u64) -> Result<FieldSpec> {
    for p in [2u32, 3, 5, 7] {
        for k in 1..=2 {
            if (p as u64).pow(k) == q {
                return Ok(FieldSpec::new(p, k, None)?);
            }
        }
    }
    bail!("unsupported field size q = {q} (expected p or p^2 with p in 2, 3, 5, 7)")
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn run(cli: Cli) -> std::result::Result<Outcome, Usage> {
    let fmt = cli.format;
    if fmt == Format::Dot && !matches!(cli.command, Command::Graph { .. }) {
        return Err(Usage(anyhow!("--format dot is only available for `graph`")));
    }
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Usage(e.into()))?;
    }
    let out = match cli.command {
        Command::Verify { all, criterion, seed } => {
            let opts = VerifyOptions { seed };
            let results = match (all, criterion) {
                (_, Some(id)) => run_criterion(id as usize, &opts).into_iter().collect(),
                (true, None) => run_all(&opts),
                (false, None) => return Err(Usage(anyhow!("give --all or --criterion N"))),
            };
            let text = match fmt {
                Format::Json => json(&results).map_err(Usage)?,
                _ => results.iter().map(|r| r.line() + "\n").collect(),
            };
            print!("{text}");
            return Ok(if results.iter().all(|r| r.passed) {
                Outcome::Ok
            } else {
                Outcome::ChecksFailed
            });
        }
        other => render(other, fmt).map_err(Usage)?,
    };
    print!("{out}");
    Ok(Outcome::Ok)
}

fn render(cmd: Command, fmt: Format) -> Result<String> {
    let cat = builtin_catalog();
    match cmd {
        Command::Lattice { kind, n } => {
            let vs = match kind {
                VectorKind::Roots => enumerate_roots(n)?,
                VectorKind::Exceptional => enumerate_exceptional(n)?,
            };
            match fmt {
                Format::Json => json(&vs.iter().map(|v| v.coeffs().to_vec()).collect::<Vec<_>>()),
                _ => {
                    let mut t = Table::new(["vector", "l-notation"]);
                    for v in vs {
                        t.row([v.to_string(), v.l_notation()]);
                    }
                    Ok(format!("{} vectors\n\n{}", vs.len(), t.render()))
                }
            }
        }
        Command::Classes { degree, qmax } => {
            #[derive(Serialize)]
            struct Row {
                class: String,
                singular_points: String,
                rational_singular: Option<String>,
                lines: Option<usize>,
                expected_lines: Option<usize>,
                no_smooth_point_guarantee: Option<Vec<u64>>,
            }
            let qs: Vec<u64> = (2..=qmax).filter(|&q| delpezzo_core::trace::is_prime_power(q)).collect();
            let mut rows = Vec::new();
            for c in cat.of_degree(degree) {
                let open = if c.model == Model::Cone {
                    None
                } else {
                    let mut open = Vec::new();
                    for &q in &qs {
                        if !smooth_point_guaranteed(c, q)?.guaranteed {
                            open.push(q);
                        }
                    }
                    Some(open)
                };
                rows.push(Row {
                    class: c.label.clone(),
                    singular_points: c.dynkin.clone(),
                    rational_singular: c.rational.clone(),
                    lines: (c.model == Model::Blowup).then(|| lines(c).len()),
                    expected_lines: c.expected_lines,
                    no_smooth_point_guarantee: open,
                });
            }
            if fmt == Format::Json {
                return json(&rows);
            }
            let mut t = Table::new(["Class", "Singular points", "Rational singular", "Lines", "Smooth point verdict"]);
            for r in &rows {
                let lines = match (r.lines, r.expected_lines) {
                    (Some(l), Some(e)) if l == e => l.to_string(),
                    (Some(l), Some(e)) => format!("{l} (table {e})"),
                    (Some(l), None) => l.to_string(),
                    (None, e) => e.map_or("-".into(), |e| e.to_string()),
                };
                let verdict = match &r.no_smooth_point_guarantee {
                    None => "n/a".to_string(),
                    Some(v) if v.is_empty() => format!("forced for q <= {qmax}"),
                    Some(v) => format!("open for q = {}", v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")),
                };
                t.row([r.class.clone(), r.singular_points.clone(), r.rational_singular.clone().unwrap_or_else(|| "-".into()), lines, verdict]);
            }
            Ok(t.render())
        }
        Command::Graph { class } => {
            let g = negative_curve_graph(cat.get(&class)?)?;
            match fmt {
                Format::Dot => Ok(g.to_dot(&class)),
                Format::Json => json(&g),
                Format::Markdown => {
                    let mut t = Table::new(["vertex", "class", "kind", "meets"]);
                    for (i, v) in g.vertices.iter().enumerate() {
                        let meets: Vec<String> = (0..g.len())
                            .filter(|&j| j != i && g.mult[i][j] > 0)
                            .map(|j| {
                                if g.mult[i][j] == 1 {
                                    g.vertices[j].label.clone()
                                } else {
                                    format!("{} (x{})", g.vertices[j].label, g.mult[i][j])
                                }
                            })
                            .collect();
                        t.row([v.label.clone(), v.class.to_string(), v.kind.self_intersection().to_string(), meets.join(", ")]);
                    }
                    Ok(t.render())
                }
            }
        }
        Command::Autos { class } => {
            let g = negative_curve_graph(cat.get(&class)?)?;
            let group = automorphisms(&g)?;
            let labels: Vec<String> = g.vertices.iter().map(|v| v.label.clone()).collect();
            if fmt == Format::Json {
                return json(&group);
            }
            let mut t = Table::new(["order", "fixed vertices", "cycles"]);
            for p in &group {
                t.row([p.order.to_string(), p.fixed_points().to_string(), p.cycle_notation(&labels)]);
            }
            Ok(format!("{class}: {} automorphisms\n\n{}", group.len(), t.render()))
        }
        Command::Profiles { class, q } => {
            let profiles = all_profiles(cat.get(&class)?)?;
            if fmt == Format::Json {
                return json(&profiles);
            }
            let mut head = vec!["tr_pic", "tr_R", "delta", "t", "order"];
            let count_head = q.map(|q| format!("#X(F_{q})"));
            if let Some(h) = &count_head {
                head.push(h);
            }
            let mut t = Table::new(head);
            for p in &profiles {
                let mut row = vec![p.tr_pic.to_string(), p.tr_r.to_string(), p.delta.to_string(), p.t.to_string(), p.element_order.to_string()];
                if let Some(q) = q {
                    row.push(p.count(q).to_string());
                }
                t.row(row);
            }
            Ok(t.render())
        }
        Command::Remaining { qmax } => {
            let cases = remaining_cases(qmax)?;
            if fmt == Format::Json {
                return json(&cases);
            }
            let mut t = Table::new(["Class", "q"]);
            for (l, q) in &cases {
                t.row([l.clone(), q.to_string()]);
            }
            Ok(t.render())
        }
        Command::Count { surface, matches } => {
            let text = fs::read_to_string(&surface).with_context(|| format!("reading {}", surface.display()))?;
            let s = DegreeTwoSurface::from_json(&text)?;
            let r = surface_report(&s);
            let candidates = if matches {
                let entry = delpezzo_core::CensusEntry {
                    branch_count: 0,
                    orbit_canonical: false,
                    exceeds_singular_bound: false,
                    surface: s.clone(),
                    report: r.clone(),
                };
                let table = ProfileTable::new(cat)?;
                Some(consistency_match(&entry, &table))
            } else {
                None
            };
            if fmt == Format::Json {
                #[derive(Serialize)]
                struct Out<'a> {
                    surface: &'a DegreeTwoSurface,
                    report: &'a delpezzo_core::SurfaceReport,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    matches: Option<Vec<(String, delpezzo_core::TraceProfile)>>,
                }
                return json(&Out {
                    surface: &s,
                    report: &r,
                    matches: candidates,
                });
            }
            let f = s.field();
            let mut t = Table::new(["point", "singular"]);
            for p in &r.points {
                t.row([p.render(f), r.singular.contains(p).to_string()]);
            }
            let mut out = format!(
                "{s}\nover {}\n\n{} points, {} singular, {} smooth\n\n{}",
                s.spec, r.n_points, r.n_singular, r.n_smooth, t.render()
            );
            if let Some(c) = candidates {
                out.push_str("\nconsistent classes:\n");
                if c.is_empty() {
                    out.push_str("  none: no RDP type matches\n");
                }
                for (l, p) in c {
                    out.push_str(&format!("  {l} (tr_pic {}, tr_R {}, t {})\n", p.tr_pic, p.tr_r, p.t));
                }
            }
            Ok(out)
        }
        Command::Quadric { file, q } => {
            let spec = field_of_order(q)?;
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let coeffs: Vec<u32> = match serde_json::from_str(&text) {
                Ok(v) => v,
                Err(_) => text
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u32>().with_context(|| format!("bad coefficient `{s}`")))
                    .collect::<Result<_>>()?,
            };
            if coeffs.len() != 10 {
                bail!("expected 10 coefficients, got {}", coeffs.len());
            }
            let r = quadric_report(spec, &coeffs)?;
            match fmt {
                Format::Json => json(&r),
                _ => Ok(format!(
                    "rank {}, {}, {} points over F_{q} (table value {})\n",
                    r.rank, r.kind, r.count, r.expected
                )),
            }
        }
        Command::Hunt { q, prefilter, dedup, out } => {
            let spec = field_of_order(q)?;
            let census = hunt(spec, prefilter, dedup)?;
            let jsonl = census.to_jsonl();
            match (&out, fmt) {
                (Some(path), _) => fs::write(path, &jsonl).with_context(|| format!("writing {}", path.display()))?,
                (None, Format::Json) => return Ok(jsonl),
                _ => {}
            }
            let table = if q <= 9 { Some(ProfileTable::new(cat)?) } else { None };
            let mut t = Table::new(["surface", "points", "#B", "canonical", "consistent classes"]);
            for e in &census.entries {
                let m = table.as_ref().map(|tb| consistency_match(e, tb)).unwrap_or_default();
                let mut labels: Vec<String> = m.into_iter().map(|x| x.0).collect();
                labels.dedup();
                let flag = if e.exceeds_singular_bound { " (over bound)" } else { "" };
                t.row([
                    e.surface.to_string(),
                    format!("{}{flag}", e.report.n_points),
                    e.branch_count.to_string(),
                    e.orbit_canonical.to_string(),
                    if labels.is_empty() { "none".into() } else { labels.join(", ") },
                ]);
            }
            let mut text = format!(
                "{} surfaces examined over {}, {} entries{}\n",
                census.header.surfaces_examined,
                spec,
                census.entries.len(),
                if dedup { " (one per orbit)" } else { "" }
            );
            if census.entries.len() <= 200 {
                text.push('\n');
                text.push_str(&t.render());
            }
            Ok(text)
        }
        Command::Conics { q } => {
            if q != 3 {
                bail!("the conic scan is set up over F_3 only");
            }
            let r = conic_pair_scan();
            if fmt == Format::Json {
                return json(&r);
            }
            let f = r.field.field();
            let st = |m: [u8; 2]| format!("({}:{})", f.render(m[0]), f.render(m[1]));
            let mut t = Table::new(["pair", "witness in P^2(F_3)", "witnesses"]);
            for p in &r.pairs {
                let w = p.witness.map_or("none".into(), |w| format!("[{}:{}:{}]", w[0], w[1], w[2]));
                t.row([format!("{} / {}", st(p.first), st(p.second)), w, p.witnesses.to_string()]);
            }
            Ok(format!(
                "pencil over F_9: {} members, {} defined over F_3, {} conjugate pairs\n\n{}",
                r.pencil_size,
                r.rational_members,
                r.pairs.len(),
                t.render()
            ))
        }
        Command::Verify { .. } => unreachable!("handled by run"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for --help / --version.
            e.exit();
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
