use thiserror::Error;

use super::TriangleType;
use crate::dessin::{Dessin, DessinError};
use crate::fpgroup::{CosetTable, FpError, Presentation, Word};

pub const DEFAULT_CROSSCHECK_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("a dessin table needs exactly 2 generator columns, found {0}")]
    ColumnCount(usize),
    #[error("edge count {edges} exceeds the cross-check cap {cap}")]
    OverCap { edges: usize, cap: usize },
    #[error(transparent)]
    Dessin(#[from] DessinError),
    #[error(transparent)]
    FpGroup(#[from] FpError),
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// `Δ(a,b,c) = < x y | x^a, y^b, (y x)^c >`.
pub fn triangle_presentation(t: &TriangleType) -> Presentation {
    let (x, y) = (Word::generator(0), Word::generator(1));
    let relators = vec![
        x.pow(t.a as i64),
        y.pow(t.b as i64),
        y.concat(&x).pow(t.c as i64),
    ];
    Presentation::new(names(&["x", "y"]), relators).expect("fixed generator names")
}

/// The extended group generated by three reflections:
/// `t1^2, t2^2, t3^2, (t2 t1)^a, (t1 t3)^b, (t3 t2)^c`.
pub fn extended_presentation(t: &TriangleType) -> Presentation {
    let r = |k: usize| Word::generator(k);
    let relators = vec![
        r(0).pow(2),
        r(1).pow(2),
        r(2).pow(2),
        r(1).concat(&r(0)).pow(t.a as i64),
        r(0).concat(&r(2)).pow(t.b as i64),
        r(2).concat(&r(1)).pow(t.c as i64),
    ];
    Presentation::new(names(&["t1", "t2", "t3"]), relators).expect("fixed generator names")
}

/// Images of `x` and `y` in the extended group: `x = t2 t1`, `y = t1 t3`.
/// Pass to [`Word::substitute`] to map words of `Δ` into the extension.
pub fn embedding() -> [Word; 2] {
    [Word::new([2, 1]), Word::new([1, 3])]
}

/// The action of `Δ(a,b,c)` on edges, with `(a,b,c)` the dessin's own
/// type: `x` acts by `sigma` and `y` by `tau`. Edges are renumbered
/// breadth-first from edge 0.
pub fn dessin_to_table(d: &Dessin) -> CosetTable {
    CosetTable::from_actions(
        names(&["x", "y"]),
        vec![d.sigma().clone(), d.tau().clone()],
        0,
    )
    .expect("dessins are transitive")
}

pub fn table_to_dessin(t: &CosetTable) -> Result<Dessin, TriangleError> {
    match t.actions() {
        [x, y] => Ok(Dessin::new(x.clone(), y.clone())?),
        other => Err(TriangleError::ColumnCount(other.len())),
    }
}

/// All black vertices have degree `a`, all white vertices degree `b` and
/// all faces degree `c`, where `(a,b,c)` is the dessin's type.
pub fn is_torsion_free_uniform(d: &Dessin) -> bool {
    let t = d.dessin_type();
    let p = d.passport();
    p.black_degrees.iter().all(|&k| k as u64 == t.a)
        && p.white_degrees.iter().all(|&k| k as u64 == t.b)
        && p.face_degrees.iter().all(|&k| k as u64 == t.c)
}

/// The monodromy group acts regularly, i.e. the edge stabilizer is normal.
pub fn is_normal_regular(d: &Dessin) -> bool {
    d.monodromy_order() == d.edge_count().into()
}

/// `(|Aut⁺(d)|, |N(K)/K|)` where `K` is the edge stabilizer: the second
/// number counts cosets `j` whose rebased table equals the original.
pub fn aut_normalizer_crosscheck(d: &Dessin, cap: usize) -> Result<(usize, usize), TriangleError> {
    let m = d.edge_count();
    if m > cap {
        return Err(TriangleError::OverCap { edges: m, cap });
    }
    let table = dessin_to_table(d);
    let normalizer = (0..table.index())
        .filter(|&j| table.rebased(j) == table)
        .count();
    Ok((d.aut_plus().len(), normalizer))
}
