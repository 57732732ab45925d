use std::cmp::Ordering;

use num_complex::Complex64;

use super::SuperellipticError;

/// How many terms `d(k)` the convergence factor `E_k` carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeRule {
    /// `d(k) = k`.
    Index,
    /// The same `d` for every zero.
    Constant(u32),
}

impl DegreeRule {
    fn degree(self, k: usize) -> usize {
        match self {
            DegreeRule::Index => k,
            DegreeRule::Constant(d) => d as usize,
        }
    }
}

/// `c · z^{m₀} · ∏_k [(1 - z/z_k) E_k(z)]^{m_k}` with
/// `E_k(z) = exp Σ_{s=1}^{d(k)} (z/z_k)^s / s`. Zeros are ordered by
/// modulus, ties by argument, and `k` counts from 1 in that order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedProduct {
    zeros: Vec<(Complex64, u32)>,
    pub prefactor: Complex64,
    pub m0: u32,
    pub rule: DegreeRule,
}

fn zero_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.norm()
        .total_cmp(&b.norm())
        .then_with(|| a.arg().total_cmp(&b.arg()))
}

impl TruncatedProduct {
    /// Zeros at the origin belong in `m0`; they are rejected here.
    pub fn new(mut zeros: Vec<(Complex64, u32)>, rule: DegreeRule) -> Result<Self, SuperellipticError> {
        if zeros.iter().any(|(z, _)| *z == Complex64::new(0.0, 0.0)) {
            return Err(SuperellipticError::Input("zeros at the origin go in m0".into()));
        }
        zeros.sort_by(|a, b| zero_order(&a.0, &b.0));
        Ok(TruncatedProduct {
            zeros,
            prefactor: Complex64::new(1.0, 0.0),
            m0: 0,
            rule,
        })
    }

    pub fn zeros(&self) -> &[(Complex64, u32)] {
        &self.zeros
    }
}

/// `π z ∏_{0<|n|≤N} (1 - z/n) e^{z/n} = sin(πz)` in the limit. The
/// convergence factors have `d = 1`, which cancels in pairs `±n`.
pub fn sine_fixture(n: usize) -> TruncatedProduct {
    let zeros = (1..=n)
        .flat_map(|k| [(Complex64::new(k as f64, 0.0), 1), (Complex64::new(-(k as f64), 0.0), 1)])
        .collect();
    let mut p = TruncatedProduct::new(zeros, DegreeRule::Constant(1)).expect("no zero at the origin");
    p.prefactor = Complex64::new(std::f64::consts::PI, 0.0);
    p.m0 = 1;
    p
}

/// Evaluates in ascending `k`; exactly zero at a retained zero.
pub fn evaluate_truncated(p: &TruncatedProduct, z: Complex64) -> Result<Complex64, SuperellipticError> {
    let mut value = p.prefactor * z.powu(p.m0);
    for (i, &(zk, mult)) in p.zeros.iter().enumerate() {
        if z == zk {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let w = z / zk;
        let mut exponent = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for s in 1..=p.rule.degree(i + 1) {
            power *= w;
            let term = power / s as f64;
            exponent += term;
            if w.norm() < 1.0 && term.norm() <= f64::EPSILON * exponent.norm() * 1e-3 {
                break;
            }
        }
        let factor = (zk - z) / zk * exponent.exp();
        value *= factor.powu(mult);
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(SuperellipticError::Overflow { k: i + 1 });
        }
    }
    Ok(value)
}
