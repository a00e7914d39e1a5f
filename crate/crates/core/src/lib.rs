//! Singular del Pezzo surfaces over finite fields: negative-curve graphs,
//! Frobenius trace profiles, point counts and exhaustive searches for
//! degree-2 surfaces without smooth rational points.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod dynkin;
pub mod error;
pub mod field;
pub mod graph;
pub mod hunt;
pub mod lattice;
pub mod linalg;
pub mod pointcount;
pub mod symmetry;
pub mod trace;
pub mod verify;

pub use catalog::{builtin_catalog, lines, Catalog, Model, SingularityClass};
pub use dynkin::{Component, DynkinType};
pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldSpec, Fq};
pub use graph::{negative_curve_graph, NegativeCurveGraph, Vertex, VertexKind};
pub use hunt::{canonicalize, conic_pair_scan, consistency_match, hunt, Census, CensusEntry, ProfileTable};
pub use lattice::{canonical_vector, enumerate_exceptional, enumerate_roots, pair, LatticeVector};
pub use pointcount::{
    evaluate, plane_curve_points, quadric_intersection_count, quadric_report, surface_report, wps_points,
    DegreeTwoSurface, QuadricKind, QuadricReport, SurfaceReport, WpsPoint,
};
pub use symmetry::{automorphisms, isomorphic, GraphPermutation};
pub use trace::{
    all_profiles, point_count, rational_type_realizable, remaining_cases, smooth_point_guaranteed, TraceProfile,
};
pub use verify::{run_all, CriterionResult, VerifyOptions};
