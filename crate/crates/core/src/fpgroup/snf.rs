use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::Presentation;

/// Diagonal form `D = P A Q` of an integer matrix with `Q` kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Non-zero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub diagonal: Vec<BigInt>,
    /// The column transform `Q` (`columns x columns`).
    pub column_transform: Vec<Vec<BigInt>>,
}

trait Entry:
    Clone + Zero + One + Signed + Integer + CheckedAdd + CheckedSub + CheckedMul
{
}

impl Entry for i128 {}
impl Entry for BigInt {}

struct Work<T> {
    a: Vec<Vec<T>>,
    q: Vec<Vec<T>>,
}

impl<T: Entry> Work<T> {
    fn sub_row_multiple(&mut self, target: usize, source: usize, k: &T) -> Option<()> {
        let (src, dst) = if source < target {
            let (lo, hi) = self.a.split_at_mut(target);
            (&lo[source], &mut hi[0])
        } else {
            let (lo, hi) = self.a.split_at_mut(source);
            (&hi[0], &mut lo[target])
        };
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = d.checked_sub(&k.checked_mul(s)?)?;
            }
        }
        Some(())
    }

    fn add_row(&mut self, target: usize, source: usize) -> Option<()> {
        let row = self.a[source].clone();
        for (d, s) in self.a[target].iter_mut().zip(&row) {
            *d = d.checked_add(s)?;
        }
        Some(())
    }

    /// `col_target -= k * col_source` on both `A` and `Q`.
    fn sub_col_multiple(&mut self, target: usize, source: usize, k: &T) -> Option<()> {
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                if !row[source].is_zero() {
                    row[target] = row[target].checked_sub(&k.checked_mul(&row[source])?)?;
                }
            }
        }
        Some(())
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn negate_col(&mut self, j: usize) {
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                row[j] = -row[j].clone();
            }
        }
    }

    /// Position of the smallest non-zero absolute value in the lower-right
    /// block starting at `(t, t)`.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if best.as_ref().is_none_or(|b| abs < b.2) {
                    best = Some((i, j, abs));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(mut self, cols: usize) -> Option<(Vec<T>, Vec<Vec<T>>)> {
        let rows = self.a.len();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.smallest(t) else {
                break;
            };
            self.a.swap(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if !self.a[i][t].is_zero() {
                        let k = self.a[i][t].div_floor(&self.a[t][t]);
                        self.sub_row_multiple(i, t, &k)?;
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a[t][j].is_zero() {
                        let k = self.a[t][j].div_floor(&self.a[t][t]);
                        self.sub_col_multiple(j, t, &k)?;
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    // a remainder smaller than the pivot is now in row or column t
                    let mut best = (t, t, self.a[t][t].abs());
                    for i in t + 1..rows {
                        let v = self.a[i][t].abs();
                        if !v.is_zero() && v < best.2 {
                            best = (i, t, v);
                        }
                    }
                    for j in t + 1..cols {
                        let v = self.a[t][j].abs();
                        if !v.is_zero() && v < best.2 {
                            best = (t, j, v);
                        }
                    }
                    self.a.swap(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let pivot = self.a[t][t].clone();
                let bad_row = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                match bad_row {
                    Some(i) => self.add_row(t, i)?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_col(t);
            }
            t += 1;
        }
        let diagonal = (0..t).map(|i| self.a[i][i].clone()).collect();
        Some((diagonal, self.q))
    }
}

fn identity<T: Entry>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// Smith normal form with exact arithmetic: a fixed-width pass that
/// restarts in arbitrary precision if any intermediate value overflows.
/// Pivots are chosen by smallest absolute value.
pub fn smith_normal_form(matrix: &[Vec<BigInt>], cols: usize) -> SmithForm {
    assert!(matrix.iter().all(|r| r.len() == cols), "ragged matrix");
    let narrow: Option<Vec<Vec<i128>>> = matrix
        .iter()
        .map(|r| r.iter().map(|v| v.to_i128()).collect())
        .collect();
    if let Some(a) = narrow {
        let work = Work {
            a,
            q: identity::<i128>(cols),
        };
        if let Some((d, q)) = work.run(cols) {
            return SmithForm {
                diagonal: d.into_iter().map(BigInt::from).collect(),
                column_transform: q
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect(),
            };
        }
    }
    let work = Work {
        a: matrix.to_vec(),
        q: identity::<BigInt>(cols),
    };
    let (diagonal, column_transform) = work.run(cols).expect("arbitrary precision cannot overflow");
    SmithForm {
        diagonal,
        column_transform,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    /// Torsion coefficients as machine integers; panics if one is too big.
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|t| t.to_u64().expect("torsion coefficient fits in u64"))
            .collect()
    }
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(small) => seq.serialize_element(&small)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// The abelianized group together with the image of every generator.
#[derive(Clone, Debug)]
pub struct AbelianCoordinates {
    pub invariants: Abelianization,
    /// Per generator: one coordinate per torsion factor (reduced modulo
    /// it) followed by `free_rank` free coordinates.
    pub images: Vec<Vec<BigInt>>,
}

pub fn relation_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    let n = p.generator_count();
    p.relators()
        .iter()
        .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
        .collect()
}

pub fn abelian_coordinates(p: &Presentation) -> AbelianCoordinates {
    let n = p.generator_count();
    let snf = smith_normal_form(&relation_matrix(p), n);
    let rank = snf.diagonal.len();
    let torsion_idx: Vec<usize> = (0..rank).filter(|&i| !snf.diagonal[i].is_one()).collect();
    let torsion: Vec<BigInt> = torsion_idx.iter().map(|&i| snf.diagonal[i].clone()).collect();
    let images = (0..n)
        .map(|k| {
            let row = &snf.column_transform[k];
            torsion_idx
                .iter()
                .map(|&i| row[i].mod_floor(&snf.diagonal[i]))
                .chain((rank..n).map(|i| row[i].clone()))
                .collect()
        })
        .collect();
    AbelianCoordinates {
        invariants: Abelianization {
            free_rank: n - rank,
            torsion,
        },
        images,
    }
}

/// Free rank and invariant factors of `G / [G, G]`.
pub fn abelianization(p: &Presentation) -> Abelianization {
    let n = p.generator_count();
    let snf = smith_normal_form(&relation_matrix(p), n);
    Abelianization {
        free_rank: n - snf.diagonal.len(),
        torsion: snf.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
    }
}
