//! Truncated superelliptic curves `wⁿ = ∏ (z - z_k)`: genus, monodromy of
//! the projection to `z`, truncated Weierstrass products and affine
//! equivalence of zero sets.

mod affine;
mod product;

pub use affine::{affine_equivalent, parse_points, PointInput};
pub use product::{evaluate_truncated, sine_fixture, DegreeRule, TruncatedProduct};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::permcore::{self, Perm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SuperellipticError {
    #[error("invalid parameters n = {n}, d = {d}: need n >= 2 and d >= 1")]
    Parameters { n: i64, d: i64 },
    #[error("{count} branch points is not a multiple of n = {n}; infinity would ramify")]
    Divisibility { count: usize, n: u64 },
    #[error("branch points must be distinct")]
    RepeatedBranchPoint,
    #[error("product overflowed at zero index {k}")]
    Overflow { k: usize },
    #[error("affine matching needs at least 2 points per set")]
    TooFewPoints,
    #[error("{0}")]
    Input(String),
}

/// `g = (n/2)(d(n-1) - 2) + 1`, the genus of `wⁿ = ∏_{k=1}^{dn} (z - z_k)`
/// with distinct `z_k`.
pub fn genus_formula(n: i64, d: i64) -> Result<u64, SuperellipticError> {
    if n < 2 || d < 1 {
        return Err(SuperellipticError::Parameters { n, d });
    }
    let twice = n as i128 * (d as i128 * (n as i128 - 1) - 2) + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(SuperellipticError::Parameters { n, d });
    }
    Ok((twice / 2) as u64)
}

/// Degree `n` cyclic cover of the sphere branched over distinct points,
/// unramified at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchData {
    n: u64,
    branch_points: Vec<Complex64>,
}

impl BranchData {
    pub fn new(n: u64, branch_points: Vec<Complex64>) -> Result<Self, SuperellipticError> {
        if n < 2 {
            return Err(SuperellipticError::Parameters { n: n as i64, d: 0 });
        }
        if !branch_points.len().is_multiple_of(n as usize) {
            return Err(SuperellipticError::Divisibility {
                count: branch_points.len(),
                n,
            });
        }
        for (i, p) in branch_points.iter().enumerate() {
            if branch_points[..i].contains(p) {
                return Err(SuperellipticError::RepeatedBranchPoint);
            }
        }
        Ok(BranchData { n, branch_points })
    }

    /// `count` points `1, 2, ..., count` on the real line.
    pub fn integers(n: u64, count: usize) -> Result<Self, SuperellipticError> {
        Self::new(n, (1..=count).map(|k| Complex64::new(k as f64, 0.0)).collect())
    }

    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn branch_points(&self) -> &[Complex64] {
        &self.branch_points
    }
}

/// Genus from `2 - 2g = 2n - B(n - 1)`: each simple branch point fully
/// ramifies.
pub fn riemann_hurwitz(b: &BranchData) -> Result<u64, SuperellipticError> {
    let n = b.n as i128;
    let chi = 2 * n - b.branch_points.len() as i128 * (n - 1);
    let twice_g = 2 - chi;
    if twice_g < 0 || twice_g % 2 != 0 {
        return Err(SuperellipticError::Parameters {
            n: b.n as i64,
            d: (b.branch_points.len() as u64 / b.n) as i64,
        });
    }
    Ok((twice_g / 2) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyData {
    pub connected: bool,
    pub monodromy_order: u64,
    /// The product of the local monodromies is trivial, so infinity is
    /// not a branch point.
    pub product_is_identity: bool,
}

/// Each branch point turns the sheets by the standard `n`-cycle.
pub fn monodromy_data(b: &BranchData) -> MonodromyData {
    let n = b.n as usize;
    let cycle = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).expect("rotation");
    let locals = vec![cycle; b.branch_points.len()];
    let product = locals
        .iter()
        .fold(Perm::identity(n), |acc, p| p.compose(&acc).expect("same degree"));
    let order = permcore::group_order(&locals).expect("non-empty, same degree");
    MonodromyData {
        connected: permcore::is_transitive(&locals, n),
        monodromy_order: order.try_into().expect("cyclic of order n"),
        product_is_identity: product.is_identity(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(genus_formula(2, 3).unwrap(), 2);
        assert_eq!(genus_formula(2, 1).unwrap(), 0);
        assert_eq!(genus_formula(3, 2).unwrap(), 4);
        assert!(genus_formula(1, 3).is_err());
        assert!(genus_formula(2, 0).is_err());
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(riemann_hurwitz(&BranchData::integers(2, 6).unwrap()).unwrap(), 2);
        assert_eq!(riemann_hurwitz(&BranchData::integers(3, 6).unwrap()).unwrap(), 4);
        assert_eq!(riemann_hurwitz(&BranchData::integers(2, 2).unwrap()).unwrap(), 0);
        assert!(matches!(
            BranchData::integers(3, 4),
            Err(SuperellipticError::Divisibility { count: 4, n: 3 })
        ));
        let z = Complex64::new(1.0, 0.0);
        assert_eq!(BranchData::new(2, vec![z, z]), Err(SuperellipticError::RepeatedBranchPoint));
    }

    #[test]
    fn formulas_agree_exhaustively() {
        for n in 2..=6u64 {
            for d in 1..=6usize {
                let b = BranchData::integers(n, d * n as usize).unwrap();
                assert_eq!(
                    riemann_hurwitz(&b).unwrap(),
                    genus_formula(n as i64, d as i64).unwrap(),
                    "n = {n}, d = {d}"
                );
            }
        }
    }

    #[test]
    fn genus_grows_with_truncation() {
        for n in 2..=6 {
            for d in 1..20 {
                assert!(genus_formula(n, d + 1).unwrap() > genus_formula(n, d).unwrap());
            }
        }
    }

    #[test]
    fn monodromy() {
        for (n, count) in [(2, 4), (2, 8), (5, 10), (3, 6)] {
            let m = monodromy_data(&BranchData::integers(n, count).unwrap());
            assert_eq!(
                m,
                MonodromyData {
                    connected: true,
                    monodromy_order: n,
                    product_is_identity: true
                }
            );
        }
    }
}
