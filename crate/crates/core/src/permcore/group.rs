use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;

use super::{Perm, PermError};

fn common_degree(gens: &[Perm]) -> Result<usize, PermError> {
    let first = gens.first().ok_or(PermError::EmptyGenerators)?;
    let n = first.degree();
    for g in gens {
        if g.degree() != n {
            return Err(PermError::DegreeMismatch(n, g.degree()));
        }
    }
    Ok(n)
}

/// Orbit of `point` under the group generated by `gens`, in BFS order.
pub fn orbit(gens: &[Perm], point: usize) -> Vec<usize> {
    let n = gens.first().map_or(point + 1, Perm::degree);
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut out = vec![point];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    out
}

/// True when the generated group is transitive on all points. The empty
/// domain counts as transitive; with no generators only degree 1 is.
pub fn is_transitive(gens: &[Perm], degree: usize) -> bool {
    if degree == 0 {
        return true;
    }
    if gens.is_empty() {
        return degree == 1;
    }
    orbit(gens, 0).len() == degree
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    inv_gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// Generator index that first reached each orbit point; `usize::MAX` at
    /// the base, `None` outside the orbit.
    schreier: Vec<Option<usize>>,
    /// Per orbit position, how many generators have had their Schreier
    /// generator sifted.
    checked: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut schreier = vec![None; degree];
        schreier[base] = Some(usize::MAX);
        Level {
            base,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: vec![base],
            schreier,
            checked: vec![0],
        }
    }

    fn add_generator(&mut self, g: Perm) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for (k, s) in self.gens.iter().enumerate() {
                let y = s.apply(x);
                if self.schreier[y].is_none() {
                    self.schreier[y] = Some(k);
                    self.orbit.push(y);
                    self.checked.push(0);
                }
            }
        }
    }

    /// Coset representative `u` with `u(base) = point`.
    fn representative(&self, point: usize) -> Perm {
        let mut path = Vec::new();
        let mut q = point;
        while q != self.base {
            let k = self.schreier[q].expect("point in orbit");
            path.push(k);
            q = self.inv_gens[k].apply(q);
        }
        let mut u = Perm::identity(self.schreier.len());
        for &k in path.iter().rev() {
            u = self.gens[k].compose_unchecked(&u);
        }
        u
    }
}

/// Stabilizer chain built by deterministic Schreier–Sims.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(gens: &[Perm]) -> Result<Self, PermError> {
        let degree = common_degree(gens)?;
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        let nontrivial: Vec<&Perm> = gens.iter().filter(|g| !g.is_identity()).collect();
        if let Some(first) = nontrivial.first() {
            let base = moved_point(first).expect("non-identity");
            let mut level = Level::new(base, degree);
            for g in &nontrivial {
                level.add_generator((*g).clone());
            }
            chain.levels.push(level);
            chain.complete();
        }
        Ok(chain)
    }

    /// Sifts `g` through levels `from..`. Returns the residue and the
    /// level where sifting stopped.
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for i in from..self.levels.len() {
            let level = &self.levels[i];
            let p = g.apply(level.base);
            if level.schreier[p].is_none() {
                return (g, i);
            }
            let u = level.representative(p);
            g = u.inverse().compose_unchecked(&g);
        }
        (g, self.levels.len())
    }

    fn next_failure(&mut self, i: usize) -> Option<(Perm, usize)> {
        let mut pos = 0;
        while pos < self.levels[i].orbit.len() {
            while self.levels[i].checked[pos] < self.levels[i].gens.len() {
                let level = &self.levels[i];
                let k = level.checked[pos];
                let p = level.orbit[pos];
                let s = &level.gens[k];
                let up = level.representative(p);
                let usp = level.representative(s.apply(p));
                let schreier_gen = usp.inverse().compose_unchecked(&s.compose_unchecked(&up));
                self.levels[i].checked[pos] += 1;
                if schreier_gen.is_identity() {
                    continue;
                }
                let (h, j) = self.sift(schreier_gen, i + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
            pos += 1;
        }
        None
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level_index = i as usize;
            match self.next_failure(level_index) {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let base = moved_point(&h).expect("non-identity residue");
                        self.levels.push(Level::new(base, self.degree));
                    }
                    for l in level_index + 1..=j {
                        self.levels[l].add_generator(h.clone());
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        self.sift(g.clone(), 0).0.is_identity()
    }
}

fn moved_point(g: &Perm) -> Option<usize> {
    (0..g.degree()).find(|&i| g.apply(i) != i)
}

/// Exact order of the group generated by `gens`.
pub fn group_order(gens: &[Perm]) -> Result<BigUint, PermError> {
    Ok(StabilizerChain::new(gens)?.order())
}

/// Tries to extend `eta(0) = target` to a bijection with
/// `eta ∘ from[k] = to[k] ∘ eta` for every k. Requires `from` transitive.
fn propagate(from: &[Perm], to: &[Perm], target: usize, n: usize) -> Option<Perm> {
    const UNSET: usize = usize::MAX;
    let mut eta = vec![UNSET; n];
    let mut used = vec![false; n];
    eta[0] = target;
    used[target] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (a, b) in from.iter().zip(to) {
            let y = a.apply(x);
            let image = b.apply(eta[x]);
            if eta[y] == UNSET {
                if used[image] {
                    return None;
                }
                eta[y] = image;
                used[image] = true;
                queue.push_back(y);
            } else if eta[y] != image {
                return None;
            }
        }
    }
    if eta.contains(&UNSET) {
        return None;
    }
    Some(Perm::from_images_unchecked(eta))
}

/// All permutations commuting with every generator. The generated group
/// must be transitive, so the centralizer is semiregular and each element
/// is fixed by its image of point 0.
pub fn centralizer(gens: &[Perm]) -> Result<Vec<Perm>, PermError> {
    let n = common_degree(gens)?;
    if !is_transitive(gens, n) {
        return Err(PermError::NotTransitive);
    }
    Ok((0..n).filter_map(|c| propagate(gens, gens, c, n)).collect())
}

/// Finds `eta` with `eta a_k eta⁻¹ = b_k` for both entries of the pairs.
pub fn simultaneous_conjugacy(
    pair_a: (&Perm, &Perm),
    pair_b: (&Perm, &Perm),
) -> Result<Option<Perm>, PermError> {
    let from = [pair_a.0.clone(), pair_a.1.clone()];
    let to = [pair_b.0.clone(), pair_b.1.clone()];
    let n = from[0].degree();
    for p in from.iter().chain(&to) {
        if p.degree() != n {
            return Err(PermError::DegreeMismatch(n, p.degree()));
        }
    }
    if !is_transitive(&from, n) || !is_transitive(&to, n) {
        return Err(PermError::NotTransitive);
    }
    Ok((0..n).find_map(|c| propagate(&from, &to, c, n)))
}
