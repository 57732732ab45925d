/// A word over signed generator indices: letter `k + 1` is generator `k`,
/// letter `-(k + 1)` its inverse. Words built through the public
/// constructors are freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Reduces the given letters. Panics on a zero letter.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator(k: usize) -> Self {
        Word {
            letters: vec![k as i32 + 1],
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let reps = e.unsigned_abs() as usize;
        Word::new(base.letters.iter().copied().cycle().take(base.len() * reps))
    }

    /// `self⁻¹ · other · self`.
    pub fn conjugate(&self, other: &Word) -> Word {
        self.inverse().concat(other).concat(self)
    }

    /// Strips matching letters from both ends (`a w a⁻¹ -> w`).
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    /// Exponent sum of each of the first `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n];
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            sums[k] += l.signum() as i64;
        }
        sums
    }

    /// Substitutes a word for every generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for &l in &self.letters {
            let w = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out.extend_from_slice(&w.letters);
            } else {
                out.extend(w.letters.iter().rev().map(|x| -x));
            }
        }
        Word::new(out)
    }

    /// Formats with generator names, e.g. `x^2*y^-1*x`.
    pub fn format(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let name = &names[l.unsigned_abs() as usize - 1];
            let e = run as i64 * l.signum() as i64;
            parts.push(if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            });
            i += run;
        }
        parts.join("*")
    }
}

/// Column of a letter in a coset table: `2k` for generator `k`, `2k + 1`
/// for its inverse.
#[inline]
pub(crate) fn column(letter: i32) -> usize {
    let k = letter.unsigned_abs() as usize - 1;
    2 * k + usize::from(letter < 0)
}
