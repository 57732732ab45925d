//! Triangle groups and the dictionary between dessins and coset tables.

mod correspondence;
mod types;

pub use correspondence::{
    aut_normalizer_crosscheck, dessin_to_table, embedding, extended_presentation,
    is_normal_regular, is_torsion_free_uniform, table_to_dessin, triangle_presentation,
    TriangleError, DEFAULT_CROSSCHECK_CAP,
};
pub use types::{Geometry, TriangleType};
