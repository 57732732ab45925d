use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Geometry::Spherical => "spherical",
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
        })
    }
}

/// A triple `(a, b, c)` with the geometry fixed by the sign of
/// `1/a + 1/b + 1/c - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TriangleType {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub geometry: Geometry,
}

impl TriangleType {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        assert!(a >= 1 && b >= 1 && c >= 1, "triangle type entries must be positive");
        // compare bc + ca + ab with abc exactly
        let (a128, b128, c128) = (a as u128, b as u128, c as u128);
        let lhs = b128 * c128 + c128 * a128 + a128 * b128;
        let rhs = a128 * b128 * c128;
        let geometry = match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => Geometry::Spherical,
            std::cmp::Ordering::Equal => Geometry::Euclidean,
            std::cmp::Ordering::Less => Geometry::Hyperbolic,
        };
        TriangleType { a, b, c, geometry }
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trichotomy() {
        assert_eq!(TriangleType::new(2, 3, 7).geometry, Geometry::Hyperbolic);
        assert_eq!(TriangleType::new(3, 3, 3).geometry, Geometry::Euclidean);
        assert_eq!(TriangleType::new(2, 4, 4).geometry, Geometry::Euclidean);
        assert_eq!(TriangleType::new(2, 3, 6).geometry, Geometry::Euclidean);
        assert_eq!(TriangleType::new(2, 3, 5).geometry, Geometry::Spherical);
        assert_eq!(TriangleType::new(1, 1, 1).geometry, Geometry::Spherical);
        assert_eq!(TriangleType::new(2, 2, 1000).geometry, Geometry::Spherical);
    }
}
