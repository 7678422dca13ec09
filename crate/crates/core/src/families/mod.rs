//! Quivers together with the labeled posets whose ideal functions give
//! their DT F-polynomials: acyclic quivers, surface triangulations and the
//! quivers `Q_n` of triangulated simplices.

mod acyclic;
mod qn;
mod surface;

pub use acyclic::ascendant_tree;
pub use qn::{
    lift3d_poset, qn_extended, qn_index, qn_maximal_green, qn_quiver, qn_vertices, ExtendedQn, FrozenFace, QnSpec,
    Triple,
};
pub use surface::{admissible_arcs, quiver_from_triangulation, surface_arc_poset, ArcCase, Triangulation};
