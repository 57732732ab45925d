//! Finite mod-`m` homology covers of uniform dessins: the cover belonging
//! to the kernel of `K → H₁(K; ℤ/m)`, where `K` is the edge stabilizer in
//! the dessin's triangle group.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::dessin::{Dessin, DessinError};
use crate::fpgroup::{abelian_coordinates, reidemeister_schreier, FpError, Word};
use crate::permcore::Perm;
use crate::triangle::{dessin_to_table, is_torsion_free_uniform, triangle_presentation};

pub const DEFAULT_COVER_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("homology cover requires a torsion-free (uniform) dessin")]
    NotUniform,
    #[error("homology cover of a genus-0 dessin is trivial (H1 = 0)")]
    GenusZero,
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),
    #[error("cover would have {edges} edges, above the cap {cap}")]
    OverCap { edges: u128, cap: usize },
    #[error("edge stabilizer abelianizes to rank {found}, expected {expected} without torsion")]
    UnexpectedHomology { expected: usize, found: usize },
    #[error(transparent)]
    FpGroup(#[from] FpError),
    #[error(transparent)]
    Dessin(#[from] DessinError),
}

/// Everything needed to build the cover: the base, the modulus and the
/// `(ℤ/m)^{2g}`-valued cocycle on `(edge, generator)` pairs.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub base: Dessin,
    pub modulus: u64,
    pub homology_rank: usize,
    /// `cocycle[e][0]` is attached to `sigma` at base edge `e`,
    /// `cocycle[e][1]` to `tau`. Entries are reduced mod `modulus` and
    /// vanish on the spanning tree of the base.
    pub cocycle: Vec<[Vec<u64>; 2]>,
}

impl CoverSpec {
    pub fn new(base: &Dessin, modulus: u64) -> Result<Self, HomologyError> {
        if modulus < 2 {
            return Err(HomologyError::Modulus(modulus));
        }
        if !is_torsion_free_uniform(base) {
            return Err(HomologyError::NotUniform);
        }
        let genus = base.genus();
        if genus == 0 {
            return Err(HomologyError::GenusZero);
        }
        let delta = triangle_presentation(&base.dessin_type());
        let table = dessin_to_table(base);
        let sub = reidemeister_schreier(&delta, &table)?;
        let coords = abelian_coordinates(&sub.presentation);
        let rank = 2 * genus;
        let inv = &coords.invariants;
        if inv.free_rank != rank || !inv.torsion.is_empty() {
            return Err(HomologyError::UnexpectedHomology {
                expected: rank,
                found: inv.free_rank + inv.torsion.len(),
            });
        }
        // table cosets are renumbered breadth-first; map them to base edges
        let to_edge: Vec<usize> = table
            .coset_representatives()
            .iter()
            .map(|w| trace_edges(base, w))
            .collect();
        let m = BigInt::from(modulus);
        let mut cocycle = vec![[vec![0; rank], vec![0; rank]]; base.edge_count()];
        for (c, row) in sub.generator_at.iter().enumerate() {
            for (k, slot) in row.iter().enumerate() {
                if let Some(s) = slot {
                    cocycle[to_edge[c]][k] = coords.images[*s]
                        .iter()
                        .map(|v| {
                            let r = ((v % &m) + &m) % &m;
                            r.to_u64().expect("reduced below the modulus")
                        })
                        .collect();
                }
            }
        }
        Ok(CoverSpec {
            base: base.clone(),
            modulus,
            homology_rank: rank,
            cocycle,
        })
    }

    /// `m^{2g}`, the number of sheets, or `None` on overflow.
    pub fn degree(&self) -> Option<u128> {
        (self.modulus as u128).checked_pow(self.homology_rank as u32)
    }

    pub fn edge_count(&self) -> Option<u128> {
        self.degree()?.checked_mul(self.base.edge_count() as u128)
    }

    fn encode(&self, u: &[u64]) -> usize {
        u.iter().rev().fold(0usize, |acc, &x| acc * self.modulus as usize + x as usize)
    }

    fn decode(&self, mut idx: usize) -> Vec<u64> {
        let m = self.modulus as usize;
        (0..self.homology_rank)
            .map(|_| {
                let d = idx % m;
                idx /= m;
                d as u64
            })
            .collect()
    }

    /// Cover edge `(e, u)` is numbered `e · m^{2g} + Σ u_i m^i`.
    pub fn build(&self, cap: usize) -> Result<Dessin, HomologyError> {
        let edges = self.edge_count().unwrap_or(u128::MAX);
        if edges > cap as u128 {
            return Err(HomologyError::OverCap { edges, cap });
        }
        let sheets = self.degree().expect("bounded by the cap") as usize;
        let base_perms = [self.base.sigma(), self.base.tau()];
        let mut images = [vec![0; edges as usize], vec![0; edges as usize]];
        for e in 0..self.base.edge_count() {
            for s in 0..sheets {
                let u = self.decode(s);
                for k in 0..2 {
                    let shifted: Vec<u64> = u
                        .iter()
                        .zip(&self.cocycle[e][k])
                        .map(|(a, b)| (a + b) % self.modulus)
                        .collect();
                    images[k][e * sheets + s] = base_perms[k].apply(e) * sheets + self.encode(&shifted);
                }
            }
        }
        let [sigma, tau] = images.map(|v| Perm::from_images(v).expect("cocycle shifts are bijective"));
        Ok(Dessin::new(sigma, tau)?)
    }

    /// Deck translations by the unit vectors of `(ℤ/m)^{2g}`.
    pub fn deck_generators(&self) -> Vec<Perm> {
        let sheets = self.degree().expect("cover was buildable") as usize;
        let n = self.base.edge_count() * sheets;
        (0..self.homology_rank)
            .map(|i| {
                let images = (0..n)
                    .map(|x| {
                        let (e, s) = (x / sheets, x % sheets);
                        let mut u = self.decode(s);
                        u[i] = (u[i] + 1) % self.modulus;
                        e * sheets + self.encode(&u)
                    })
                    .collect();
                Perm::from_images(images).expect("translation is bijective")
            })
            .collect()
    }
}

fn trace_edges(d: &Dessin, w: &Word) -> usize {
    let inv = [d.sigma().inverse(), d.tau().inverse()];
    let fwd = [d.sigma(), d.tau()];
    w.letters().iter().fold(0, |e, &l| {
        let k = l.unsigned_abs() as usize - 1;
        if l > 0 {
            fwd[k].apply(e)
        } else {
            inv[k].apply(e)
        }
    })
}

/// The mod-`m` homology cover of a uniform dessin of genus at least one.
pub fn homology_cover(base: &Dessin, modulus: u64) -> Result<Dessin, HomologyError> {
    CoverSpec::new(base, modulus)?.build(DEFAULT_COVER_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverTower {
    /// Genus of each constructed level.
    pub genera: Vec<usize>,
    /// Set when the next level would exceed the edge cap.
    pub truncated: bool,
    /// Predicted edge count of the first level that was not built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub next_edges: Option<String>,
}

/// Genera of the iterated covers `base ← C₁ ← C₂ ← ...`, stopping early
/// (with `truncated` set) once a level would exceed `cap` edges.
pub fn cover_tower_genus(
    base: &Dessin,
    modulus: u64,
    levels: usize,
    cap: usize,
) -> Result<CoverTower, HomologyError> {
    let mut genera = Vec::new();
    let mut current = base.clone();
    for _ in 0..levels {
        let spec = CoverSpec::new(&current, modulus)?;
        match spec.edge_count() {
            Some(e) if e <= cap as u128 => {}
            predicted => {
                let next_edges = predicted.map_or_else(
                    || {
                        let sheets = BigInt::from(modulus).pow(spec.homology_rank as u32);
                        (sheets * current.edge_count()).to_string()
                    },
                    |e| e.to_string(),
                );
                return Ok(CoverTower {
                    genera,
                    truncated: true,
                    next_edges: Some(next_edges),
                });
            }
        }
        current = spec.build(cap)?;
        genera.push(current.genus());
    }
    Ok(CoverTower {
        genera,
        truncated: false,
        next_edges: None,
    })
}
