//! Dessins d'enfants as transitive permutation pairs `(sigma, tau)` on the
//! edge set `0..m`.
//!
//! `sigma` rotates edges around black vertices, `tau` around white
//! vertices, and faces are the cycles of `tau ∘ sigma` (apply `sigma`
//! first).

mod enumerate;
mod io;

pub use enumerate::{enumerate_dessins, lex_min_form, EnumerationOptions, DEFAULT_ENUMERATION_CAP};
pub use io::DessinFile;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::permcore::{self, Perm, PermError};
use crate::triangle::TriangleType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DessinError {
    #[error("disconnected dessin")]
    Disconnected,
    #[error("a dessin needs at least one edge")]
    NoEdges,
    #[error("edge count {requested} exceeds the enumeration cap {cap}")]
    OverCap { requested: usize, cap: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("dessin file: {0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dessin {
    sigma: Perm,
    tau: Perm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Passport {
    pub black_degrees: Vec<usize>,
    pub white_degrees: Vec<usize>,
    pub face_degrees: Vec<usize>,
}

impl std::fmt::Display for Passport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "({}; {}; {})",
            join(&self.black_degrees),
            join(&self.white_degrees),
            join(&self.face_degrees)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub regular: bool,
    pub reflexive: bool,
    pub chiral: bool,
}

impl Dessin {
    pub fn new(sigma: Perm, tau: Perm) -> Result<Self, DessinError> {
        if sigma.degree() != tau.degree() {
            return Err(PermError::DegreeMismatch(sigma.degree(), tau.degree()).into());
        }
        if sigma.degree() == 0 {
            return Err(DessinError::NoEdges);
        }
        if !permcore::is_transitive(&[sigma.clone(), tau.clone()], sigma.degree()) {
            return Err(DessinError::Disconnected);
        }
        Ok(Dessin { sigma, tau })
    }

    /// Builds a dessin from cycle-notation strings on `edges` points.
    pub fn from_cycles(edges: usize, sigma: &str, tau: &str) -> Result<Self, DessinError> {
        Dessin::new(Perm::parse(sigma, Some(edges))?, Perm::parse(tau, Some(edges))?)
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.degree()
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    pub fn tau(&self) -> &Perm {
        &self.tau
    }

    /// The face permutation `tau ∘ sigma`.
    pub fn faces(&self) -> Perm {
        self.tau.compose_unchecked(&self.sigma)
    }

    pub fn passport(&self) -> Passport {
        Passport {
            black_degrees: self.sigma.cycle_decomposition().lengths(),
            white_degrees: self.tau.cycle_decomposition().lengths(),
            face_degrees: self.faces().cycle_decomposition().lengths(),
        }
    }

    /// `V - E + F` with `V` counting black and white vertices.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.sigma.cycle_decomposition().count() + self.tau.cycle_decomposition().count();
        let f = self.faces().cycle_decomposition().count();
        v as i64 - self.edge_count() as i64 + f as i64
    }

    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        assert!(
            chi <= 2 && (2 - chi) % 2 == 0,
            "Euler characteristic {chi} of a transitive pair must be even and at most 2"
        );
        ((2 - chi) / 2) as usize
    }

    /// The minimal triangle type `(a, b, c)`: lcms of the black, white and
    /// face degrees.
    pub fn dessin_type(&self) -> TriangleType {
        TriangleType::new(self.sigma.order(), self.tau.order(), self.faces().order())
    }

    /// Every black vertex has one degree, every white vertex one degree,
    /// every face one degree.
    pub fn is_uniform(&self) -> bool {
        let p = self.passport();
        [p.black_degrees, p.white_degrees, p.face_degrees]
            .iter()
            .all(|v| v.windows(2).all(|w| w[0] == w[1]))
    }

    pub fn is_clean(&self) -> bool {
        self.passport().white_degrees.iter().all(|&d| d == 2)
    }

    /// Finite dessins are always bounded; the witness is the largest
    /// vertex or face degree.
    pub fn degree_bound(&self) -> usize {
        let p = self.passport();
        p.black_degrees
            .iter()
            .chain(&p.white_degrees)
            .chain(&p.face_degrees)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn is_bounded(&self) -> bool {
        true
    }

    pub fn monodromy_order(&self) -> BigUint {
        permcore::group_order(&[self.sigma.clone(), self.tau.clone()])
            .expect("sigma and tau share a degree")
    }

    /// Orientation-preserving automorphisms: the centralizer of the
    /// monodromy group.
    pub fn aut_plus(&self) -> Vec<Perm> {
        permcore::centralizer(&[self.sigma.clone(), self.tau.clone()])
            .expect("dessins are transitive")
    }

    /// Is the dessin isomorphic to its mirror image?
    pub fn has_reversing_automorphism(&self) -> bool {
        let mirror = self.mirror();
        self.isomorphic(&mirror).is_some()
    }

    /// `(|Aut⁺|, |Aut|)`, where `Aut` also counts orientation-reversing
    /// automorphisms.
    pub fn aut_sizes(&self) -> (usize, usize) {
        let plus = self.aut_plus().len();
        if self.has_reversing_automorphism() {
            (plus, 2 * plus)
        } else {
            (plus, plus)
        }
    }

    pub fn classify(&self) -> Classification {
        let (plus, full) = self.aut_sizes();
        let reflexive = full == 2 * plus;
        Classification {
            regular: plus == self.edge_count(),
            reflexive,
            chiral: !reflexive,
        }
    }

    pub fn mirror(&self) -> Dessin {
        Dessin {
            sigma: self.sigma.inverse(),
            tau: self.tau.inverse(),
        }
    }

    /// Relabels edges by `eta`: returns `(eta sigma eta⁻¹, eta tau eta⁻¹)`.
    pub fn relabel(&self, eta: &Perm) -> Result<Dessin, DessinError> {
        Ok(Dessin {
            sigma: self.sigma.conjugate_by(eta)?,
            tau: self.tau.conjugate_by(eta)?,
        })
    }

    /// An edge bijection carrying `self` onto `other`, if one exists.
    pub fn isomorphic(&self, other: &Dessin) -> Option<Perm> {
        if self.edge_count() != other.edge_count() {
            return None;
        }
        permcore::simultaneous_conjugacy((&self.sigma, &self.tau), (&other.sigma, &other.tau))
            .expect("dessins are transitive and share a degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::Geometry;

    fn d(m: usize, s: &str, t: &str) -> Dessin {
        Dessin::from_cycles(m, s, t).unwrap()
    }

    fn segment() -> Dessin {
        d(1, "()", "()")
    }

    fn torus() -> Dessin {
        d(3, "(0 1 2)", "(0 1 2)")
    }

    fn path2() -> Dessin {
        d(2, "(0 1)", "()")
    }

    #[test]
    fn construction() {
        assert_eq!(segment().edge_count(), 1);
        assert_eq!(torus().edge_count(), 3);
        assert_eq!(
            Dessin::from_cycles(3, "(0 1)", "()").unwrap_err(),
            DessinError::Disconnected
        );
        assert_eq!(DessinError::Disconnected.to_string(), "disconnected dessin");
        assert!(matches!(
            Dessin::new(Perm::identity(2), Perm::identity(3)),
            Err(DessinError::Perm(PermError::DegreeMismatch(2, 3)))
        ));
    }

    #[test]
    fn passports() {
        let p = segment().passport();
        assert_eq!(
            (p.black_degrees, p.white_degrees, p.face_degrees),
            (vec![1], vec![1], vec![1])
        );
        let p = path2().passport();
        assert_eq!(
            (p.black_degrees, p.white_degrees, p.face_degrees),
            (vec![2], vec![1, 1], vec![2])
        );
        assert_eq!(torus().passport().to_string(), "(3; 3; 3)");
    }

    #[test]
    fn genera() {
        assert_eq!(segment().genus(), 0);
        assert_eq!(torus().genus(), 1);
        assert_eq!(path2().genus(), 0);
    }

    #[test]
    fn types() {
        let t = torus().dessin_type();
        assert_eq!((t.a, t.b, t.c), (3, 3, 3));
        assert_eq!(t.geometry, Geometry::Euclidean);
        let t = segment().dessin_type();
        assert_eq!((t.a, t.b, t.c, t.geometry), (1, 1, 1, Geometry::Spherical));
    }

    #[test]
    fn hyperbolic_type_237() {
        // sigma of order 2, tau of order 3 and tau∘sigma of order 7 on 7 edges
        let found = enumerate_dessins(7, &EnumerationOptions::default())
            .unwrap()
            .into_iter()
            .find(|x| {
                let t = x.dessin_type();
                (t.a, t.b, t.c) == (2, 3, 7)
            })
            .expect("a (2,3,7) dessin on 7 edges");
        assert_eq!(found.dessin_type().geometry, Geometry::Hyperbolic);
    }

    #[test]
    fn predicates() {
        assert!(torus().is_uniform());
        assert!(!torus().is_clean());
        assert!(path2().is_uniform());
        assert!(!path2().is_clean());
        assert!(segment().is_uniform());
        assert!(!segment().is_clean());
        assert!(segment().is_bounded());
        assert_eq!(segment().degree_bound(), 1);
        assert!(d(2, "()", "(0 1)").is_clean());
        assert!(!d(3, "(0 1)", "(1 2)").is_uniform());
    }

    #[test]
    fn monodromy() {
        assert_eq!(segment().monodromy_order(), 1u32.into());
        assert_eq!(torus().monodromy_order(), 3u32.into());
        assert_eq!(path2().monodromy_order(), 2u32.into());
    }

    #[test]
    fn automorphisms() {
        assert_eq!(torus().aut_plus().len(), 3);
        assert_eq!(segment().aut_sizes(), (1, 2));
        assert_eq!(path2().aut_sizes(), (2, 4));
    }

    #[test]
    fn classification() {
        let c = torus().classify();
        assert!(c.regular && c.reflexive && !c.chiral);
        let c = path2().classify();
        assert!(c.regular && c.reflexive);
        // the swap 1 <-> 2 carries the torus onto its mirror
        let swap = Perm::parse("(1 2)", Some(3)).unwrap();
        assert_eq!(torus().relabel(&swap).unwrap(), torus().mirror());
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(torus().mirror(), d(3, "(0 2 1)", "(0 2 1)"));
        assert_eq!(torus().mirror().mirror(), torus());
    }

    #[test]
    fn isomorphism_examples() {
        assert!(torus().isomorphic(&torus()).is_some());
        assert!(path2().isomorphic(&d(2, "()", "(0 1)")).is_none());
        assert!(torus().isomorphic(&path2()).is_none());
        let eta = Perm::parse("(0 2 1 3)", Some(4)).unwrap();
        let x = d(4, "(0 1)(2 3)", "(1 2)");
        let w = x.isomorphic(&x.relabel(&eta).unwrap()).unwrap();
        assert_eq!(x.relabel(&w).unwrap(), x.relabel(&eta).unwrap());
    }
}
