use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::ModularError;
use crate::fpgroup::Word;

/// A point of `ℚ ∪ {∞}` in lowest terms with non-negative denominator;
/// `∞` is `1/0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveRational {
    num: BigInt,
    den: BigInt,
}

impl ProjectiveRational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, ModularError> {
        if num.is_zero() && den.is_zero() {
            return Err(ModularError::Rational("0/0 is not a point".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_zero() {
            return Self::infinity();
        }
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        ProjectiveRational { num, den }
    }

    pub fn integer(n: i64) -> Self {
        ProjectiveRational {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn infinity() -> Self {
        ProjectiveRational {
            num: BigInt::one(),
            den: BigInt::zero(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Accepts `p`, `p/q`, `inf` or `∞`.
    pub fn parse(text: &str) -> Result<Self, ModularError> {
        let t = text.trim();
        if matches!(t, "inf" | "infinity" | "∞" | "oo") {
            return Ok(Self::infinity());
        }
        let bad = || ModularError::Rational(format!("cannot parse '{t}' as a rational"));
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Self::new(n, d)
    }
}

impl fmt::Display for ProjectiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for ProjectiveRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MobiusLetter {
    /// `z ↦ z + 2`
    A,
    /// `z ↦ z - 2`
    AInv,
    /// `z ↦ -1/z`
    E,
}

impl MobiusLetter {
    fn inverse(self) -> Self {
        match self {
            MobiusLetter::A => MobiusLetter::AInv,
            MobiusLetter::AInv => MobiusLetter::A,
            MobiusLetter::E => MobiusLetter::E,
        }
    }

    fn matrix(self) -> [i64; 4] {
        match self {
            MobiusLetter::A => [1, 2, 0, 1],
            MobiusLetter::AInv => [1, -2, 0, 1],
            MobiusLetter::E => [0, -1, 1, 0],
        }
    }
}

/// A word in `A`, `A⁻¹` and `E` with its matrix in `PSL(2,ℤ)`. The word
/// acts as the composite map, last letter first: `A²E(z) = -1/z + 4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiusWord {
    letters: Vec<MobiusLetter>,
    matrix: [BigInt; 4],
}

fn mat_mul(x: &[BigInt; 4], y: &[BigInt; 4]) -> [BigInt; 4] {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

/// Sign convention for `PSL`: the first non-zero entry is positive.
fn canonical_sign(m: [BigInt; 4]) -> [BigInt; 4] {
    let first = m.iter().find(|v| !v.is_zero()).expect("determinant one");
    if first.is_negative() {
        m.map(|v| -v)
    } else {
        m
    }
}

impl MobiusWord {
    pub fn identity() -> Self {
        MobiusWord {
            letters: Vec::new(),
            matrix: [1, 0, 0, 1].map(BigInt::from),
        }
    }

    /// Freely reduces `A A⁻¹`, `A⁻¹ A` and `E E`.
    pub fn from_letters(letters: impl IntoIterator<Item = MobiusLetter>) -> Self {
        let mut out: Vec<MobiusLetter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        let matrix = out.iter().fold([1, 0, 0, 1].map(BigInt::from), |m, l| {
            mat_mul(&m, &l.matrix().map(BigInt::from))
        });
        MobiusWord {
            letters: out,
            matrix: canonical_sign(matrix),
        }
    }

    pub fn a() -> Self {
        Self::from_letters([MobiusLetter::A])
    }

    pub fn e() -> Self {
        Self::from_letters([MobiusLetter::E])
    }

    pub fn letters(&self) -> &[MobiusLetter] {
        &self.letters
    }

    /// `[p, q, r, s]` for `z ↦ (pz + q)/(rz + s)`, sign-normalized.
    pub fn matrix(&self) -> &[BigInt; 4] {
        &self.matrix
    }

    pub fn concat(&self, other: &MobiusWord) -> Self {
        Self::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Self {
        Self::from_letters(self.letters.iter().rev().map(|l| l.inverse()))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let reps = e.unsigned_abs() as usize;
        Self::from_letters(base.letters.iter().copied().cycle().take(base.letters.len() * reps))
    }

    /// The word over `< S T | ... >` with `A = T²` and `E = S`.
    pub fn to_psl_word(&self) -> Word {
        Word::new(self.letters.iter().flat_map(|l| match l {
            MobiusLetter::A => vec![2, 2],
            MobiusLetter::AInv => vec![-2, -2],
            MobiusLetter::E => vec![1],
        }))
    }

    /// Parses words like `A^2*E*A^-3`, `A2EA-3` or `A^4 E`; `1` is the
    /// identity.
    pub fn parse(text: &str) -> Result<Self, ModularError> {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        let mut letters = Vec::new();
        let err = |i: usize, msg: &str| ModularError::Parse(format!("{msg} at position {i} in '{text}'"));
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '*' {
                i += 1;
                continue;
            }
            if c == '1' && letters.is_empty() && chars[i + 1..].iter().all(|c| c.is_whitespace()) {
                i += 1;
                continue;
            }
            let letter = match c {
                'A' | 'a' => MobiusLetter::A,
                'E' | 'e' => MobiusLetter::E,
                _ => return Err(err(i, "expected A or E")),
            };
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
            }
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let e: i64 = match digits.as_str() {
                "" => 1,
                "-" => -1,
                d => d.parse().map_err(|_| err(start, "bad exponent"))?,
            };
            let (l, reps) = if e < 0 { (letter.inverse(), -e) } else { (letter, e) };
            letters.extend(std::iter::repeat_n(l, reps as usize));
        }
        Ok(Self::from_letters(letters))
    }
}

impl fmt::Display for MobiusWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let (name, sign) = match l {
                MobiusLetter::A => ("A", 1),
                MobiusLetter::AInv => ("A", -1),
                MobiusLetter::E => ("E", 1),
            };
            let e = sign * run as i64;
            parts.push(if e == 1 { name.to_string() } else { format!("{name}^{e}") });
            i += run;
        }
        f.write_str(&parts.join("*"))
    }
}

impl Serialize for MobiusWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact image of `z` under the word's Möbius map.
pub fn mobius_eval(w: &MobiusWord, z: &ProjectiveRational) -> ProjectiveRational {
    let [p, q, r, s] = &w.matrix;
    let num = p * &z.num + q * &z.den;
    let den = r * &z.num + s * &z.den;
    ProjectiveRational::normalized(num, den)
}
