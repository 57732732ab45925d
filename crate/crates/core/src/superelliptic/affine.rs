use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Deserialize;

use super::SuperellipticError;

fn canonical(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
}

/// Multiset equality within `tol`, using the real-part order of `target`
/// to restrict candidates.
fn matches(mapped: &[Complex64], target: &[Complex64], tol: f64) -> bool {
    let mut used = vec![false; target.len()];
    for p in mapped {
        let start = target.partition_point(|q| q.re < p.re - tol);
        let mut found = false;
        for (j, q) in target.iter().enumerate().skip(start) {
            if q.re > p.re + tol {
                break;
            }
            if !used[j] && (q - p).norm() <= tol {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return false;
        }
    }
    true
}

/// An affine map `z ↦ az + b` with `a ≠ 0` carrying the multiset `xs` onto
/// `ys` within `tol`, or `None`. Sets of different sizes never match.
///
/// The two smallest distinct points of `xs` in the order (real part,
/// imaginary part) are sent to every ordered pair of `ys` in turn; the
/// first pair that works is returned.
pub fn affine_equivalent(
    xs: &[Complex64],
    ys: &[Complex64],
    tol: f64,
) -> Result<Option<(Complex64, Complex64)>, SuperellipticError> {
    if xs.len() < 2 || ys.len() < 2 {
        return Err(SuperellipticError::TooFewPoints);
    }
    if xs.len() != ys.len() {
        return Ok(None);
    }
    let mut a_sorted = xs.to_vec();
    a_sorted.sort_by(canonical);
    let mut b_sorted = ys.to_vec();
    b_sorted.sort_by(canonical);
    let p0 = a_sorted[0];
    let Some(p1) = a_sorted.iter().copied().find(|p| (p - p0).norm() > tol) else {
        // every point coincides: only a translation is determined
        let shift = b_sorted[0] - p0;
        let one = Complex64::new(1.0, 0.0);
        let mapped: Vec<Complex64> = a_sorted.iter().map(|p| p + shift).collect();
        return Ok(matches(&mapped, &b_sorted, tol).then_some((one, shift)));
    };
    for (i, &qi) in b_sorted.iter().enumerate() {
        for (j, &qj) in b_sorted.iter().enumerate() {
            if i == j {
                continue;
            }
            let a = (qj - qi) / (p1 - p0);
            if a.norm() == 0.0 {
                continue;
            }
            let b = qi - a * p0;
            let mut mapped: Vec<Complex64> = a_sorted.iter().map(|p| a * p + b).collect();
            mapped.sort_by(canonical);
            if matches(&mapped, &b_sorted, tol) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// A point in a JSON zero list: a number, `[re, im]` or `{"re", "im"}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointInput {
    Real(f64),
    Pair([f64; 2]),
    Fields { re: f64, im: f64 },
}

impl From<PointInput> for Complex64 {
    fn from(p: PointInput) -> Self {
        match p {
            PointInput::Real(x) => Complex64::new(x, 0.0),
            PointInput::Pair([re, im]) | PointInput::Fields { re, im } => Complex64::new(re, im),
        }
    }
}

/// Parses a JSON array of points.
pub fn parse_points(text: &str) -> Result<Vec<Complex64>, SuperellipticError> {
    let raw: Vec<PointInput> =
        serde_json::from_str(text).map_err(|e| SuperellipticError::Input(format!("zero list: {e}")))?;
    Ok(raw.into_iter().map(Complex64::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn reals(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let w = affine_equivalent(&reals(&[0.0, 1.0, 2.0]), &reals(&[5.0, 7.0, 9.0]), 0.0).unwrap();
        assert_eq!(w, Some((c(2.0, 0.0), c(5.0, 0.0))));
        let sine = reals(&[0.0, 1.0, 2.0, 3.0]);
        let cosine = reals(&[0.5, 1.5, 2.5, 3.5]);
        assert_eq!(affine_equivalent(&sine, &cosine, 1e-12).unwrap(), Some((c(1.0, 0.0), c(0.5, 0.0))));
        assert_eq!(affine_equivalent(&sine, &sine, 0.0).unwrap(), Some((c(1.0, 0.0), c(0.0, 0.0))));
        let wide = reals(&[-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(affine_equivalent(&wide, &reals(&[-1.5, -0.5, 0.5, 1.5]), 1e-9).unwrap(), None);
        assert_eq!(
            affine_equivalent(&reals(&[1.0]), &reals(&[1.0]), 0.0),
            Err(SuperellipticError::TooFewPoints)
        );
        assert_eq!(affine_equivalent(&reals(&[0.0, 1.0, 3.0]), &reals(&[0.0, 1.0, 2.0]), 1e-9).unwrap(), None);
    }

    fn random_set(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))).collect()
    }

    fn random_map(rng: &mut impl Rng) -> (Complex64, Complex64) {
        let a = loop {
            let a = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if a.norm() > 0.1 {
                break a;
            }
        };
        (a, c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
    }

    #[test]
    fn random_affine_images() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
        for _ in 0..100 {
            let n = rng.gen_range(2..=50);
            let s = random_set(&mut rng, n);
            let (a, b) = random_map(&mut rng);
            let image: Vec<Complex64> = s.iter().map(|z| a * z + b).collect();
            let (fa, fb) = affine_equivalent(&s, &image, 1e-9).unwrap().expect("witness");
            let mapped: Vec<Complex64> = s.iter().map(|z| fa * z + fb).collect();
            let mut m = mapped.clone();
            m.sort_by(canonical);
            let mut t = image.clone();
            t.sort_by(canonical);
            assert!(matches(&m, &t, 1e-9));
        }
    }

    #[test]
    fn equivalence_relation() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..30 {
            let s = random_set(&mut rng, 8);
            let (a1, b1) = random_map(&mut rng);
            let (a2, b2) = random_map(&mut rng);
            let t: Vec<Complex64> = s.iter().map(|z| a1 * z + b1).collect();
            let u: Vec<Complex64> = t.iter().map(|z| a2 * z + b2).collect();
            assert_eq!(affine_equivalent(&s, &s, 1e-9).unwrap(), Some((c(1.0, 0.0), c(0.0, 0.0))));
            assert!(affine_equivalent(&t, &s, 1e-8).unwrap().is_some());
            assert!(affine_equivalent(&s, &u, 1e-8).unwrap().is_some());
        }
    }

    #[test]
    fn json_points() {
        let pts = parse_points(r#"[1, [2, -1], {"re": 0.5, "im": 3}]"#).unwrap();
        assert_eq!(pts, vec![c(1.0, 0.0), c(2.0, -1.0), c(0.5, 3.0)]);
        assert!(parse_points("[\"x\"]").is_err());
    }
}
