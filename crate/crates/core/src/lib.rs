//! Filling multicurves on closed orientable surfaces, encoded as clean
//! dessins d'enfants (pairs of permutations), with exact combinatorial
//! classification, hyperbolic length minimization, surgery constructions,
//! and Poincare-disk rendering.

pub mod curve;
pub mod dessin;
pub mod enumerate;
pub mod error;
pub mod fuchsian;
pub mod hypgeom;
pub mod perm;
pub mod render;
pub mod surgery;
#[cfg(test)]
pub(crate) mod testutil;

pub use curve::{decompose, dual, is_filling_curve, is_general_position, medial, CurveSystem};
pub use dessin::{Dessin, DessinClassification, Passport};
pub use enumerate::{
    degree_for, enumerate_uniform, enumerate_uniform_with_progress, summarize, ClassSummary,
    EnumerationReport, EnumerationResult,
};
pub use error::{Error, Result};
pub use fuchsian::{
    eval_word_matrix, eval_word_perm, in_k, matrices_for, parse_word, side_pairings, Gen,
    SidePairing, Word,
};
pub use hypgeom::{
    classify_isometry, face_constraint, is_hyperbolic_triple, min_length_bipartite,
    min_length_clean, nonuniform_upper_bound, triangle_group_matrices, FormulaUsed, Isometry,
    IsometryKind, LengthReport, NonuniformBound,
};
pub use perm::{group_order, orbits, stabilizer_orbit_sizes, CycleStructure, Permutation};
pub use render::{build_scene, render_svg, ArcLayer, GeodesicArc, RenderScene};
pub use surgery::{apply_surgery, grow, seed_dessin, SurgeryCase, SurgeryOutcome};
