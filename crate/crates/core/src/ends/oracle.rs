use super::EndsError;

/// Group elements in a canonical normal form, so equality is equality of
/// vectors.
pub type Element = Vec<i64>;

/// A finitely generated group given by normal forms. The generating list
/// is closed under inversion.
pub trait GroupOracle: Send + Sync {
    fn name(&self) -> String;
    fn identity(&self) -> Element;
    fn generator_count(&self) -> usize;
    /// Index of the inverse of generator `g`.
    fn inverse_of(&self, g: usize) -> usize;
    /// `e · g` in normal form.
    fn multiply(&self, e: &Element, g: usize) -> Element;
}

/// `ℤ^k` with any finite generating set of vectors, symmetrized.
#[derive(Clone, Debug)]
pub struct FreeAbelian {
    rank: usize,
    generators: Vec<Vec<i64>>,
}

impl FreeAbelian {
    /// Standard basis `±e_i`.
    pub fn standard(rank: usize) -> Self {
        let gens = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::with_generators(rank, gens).expect("standard basis")
    }

    /// The given vectors and their negatives, deduplicated in order of
    /// first appearance.
    pub fn with_generators(rank: usize, vectors: Vec<Vec<i64>>) -> Result<Self, EndsError> {
        let mut generators: Vec<Vec<i64>> = Vec::new();
        for v in vectors {
            if v.len() != rank {
                return Err(EndsError::Oracle(format!("generator {v:?} is not in Z^{rank}")));
            }
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            for w in [v, neg] {
                if !generators.contains(&w) {
                    generators.push(w);
                }
            }
        }
        Ok(FreeAbelian { rank, generators })
    }
}

impl GroupOracle for FreeAbelian {
    fn name(&self) -> String {
        if self.rank == 1 {
            "Z".into()
        } else {
            format!("Z^{}", self.rank)
        }
    }

    fn identity(&self) -> Element {
        vec![0; self.rank]
    }

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn inverse_of(&self, g: usize) -> usize {
        let neg: Vec<i64> = self.generators[g].iter().map(|x| -x).collect();
        self.generators.iter().position(|w| *w == neg).expect("symmetric set")
    }

    fn multiply(&self, e: &Element, g: usize) -> Element {
        e.iter().zip(&self.generators[g]).map(|(a, b)| a + b).collect()
    }
}

/// The free group `F_k` on reduced words; generator `2i` is `a_i`,
/// `2i + 1` its inverse. Letters are stored as `±(i + 1)`.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        FreeGroup { rank }
    }
}

impl GroupOracle for FreeGroup {
    fn name(&self) -> String {
        format!("F{}", self.rank)
    }

    fn identity(&self) -> Element {
        Vec::new()
    }

    fn generator_count(&self) -> usize {
        2 * self.rank
    }

    fn inverse_of(&self, g: usize) -> usize {
        g ^ 1
    }

    fn multiply(&self, e: &Element, g: usize) -> Element {
        let letter = (g / 2) as i64 + 1;
        let letter = if g.is_multiple_of(2) { letter } else { -letter };
        let mut out = e.clone();
        if out.last() == Some(&-letter) {
            out.pop();
        } else {
            out.push(letter);
        }
        out
    }
}

/// The free product `ℤ_p ∗ ℤ_q`, with the finite cyclic group `ℤ_p` as
/// the case `q = 1`. Normal forms alternate between the factors: a
/// residue `r` of the first factor is stored as `r`, one of the second as
/// `-r`.
#[derive(Clone, Debug)]
pub struct CyclicFreeProduct {
    orders: [i64; 2],
    /// `(factor, residue)` per generator.
    generators: Vec<(usize, i64)>,
}

impl CyclicFreeProduct {
    pub fn new(p: u64, q: u64) -> Result<Self, EndsError> {
        if p < 1 || q < 1 {
            return Err(EndsError::Oracle("cyclic factors need positive order".into()));
        }
        let orders = [p as i64, q as i64];
        let mut generators = Vec::new();
        for (f, &n) in orders.iter().enumerate() {
            if n == 1 {
                continue;
            }
            generators.push((f, 1));
            if n > 2 {
                generators.push((f, n - 1));
            }
        }
        Ok(CyclicFreeProduct { orders, generators })
    }

    pub fn cyclic(n: u64) -> Result<Self, EndsError> {
        Self::new(n, 1)
    }
}

impl GroupOracle for CyclicFreeProduct {
    fn name(&self) -> String {
        match self.orders {
            [p, 1] => format!("Z{p}"),
            [p, q] => format!("Z{p}*Z{q}"),
        }
    }

    fn identity(&self) -> Element {
        Vec::new()
    }

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn inverse_of(&self, g: usize) -> usize {
        let (f, r) = self.generators[g];
        let inv = (self.orders[f] - r) % self.orders[f];
        self.generators
            .iter()
            .position(|&(f2, r2)| f2 == f && r2 == inv)
            .expect("symmetric set")
    }

    fn multiply(&self, e: &Element, g: usize) -> Element {
        let (f, r) = self.generators[g];
        let n = self.orders[f];
        let factor_of = |x: i64| usize::from(x < 0);
        let mut out = e.clone();
        match out.last().copied() {
            Some(x) if factor_of(x) == f => {
                let sum = (x.abs() + r) % n;
                out.pop();
                if sum != 0 {
                    out.push(if f == 0 { sum } else { -sum });
                }
            }
            _ => out.push(if f == 0 { r } else { -r }),
        }
        out
    }
}

/// `Z`, `Z^k`, `Fk`, `Zn` and `Zp*Zq`.
pub fn parse_group(name: &str) -> Result<Box<dyn GroupOracle>, EndsError> {
    let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || EndsError::Oracle(format!("unknown group '{name}'"));
    let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
    if s == "Z" {
        return Ok(Box::new(FreeAbelian::standard(1)));
    }
    if let Some(k) = s.strip_prefix("Z^") {
        return Ok(Box::new(FreeAbelian::standard(num(k)? as usize)));
    }
    if let Some(k) = s.strip_prefix('F') {
        return Ok(Box::new(FreeGroup::new(num(k.trim_start_matches('_'))? as usize)));
    }
    if let Some((a, b)) = s.split_once('*') {
        let p = num(a.strip_prefix('Z').ok_or_else(bad)?)?;
        let q = num(b.strip_prefix('Z').ok_or_else(bad)?)?;
        return Ok(Box::new(CyclicFreeProduct::new(p, q)?));
    }
    if let Some(n) = s.strip_prefix('Z') {
        return Ok(Box::new(CyclicFreeProduct::cyclic(num(n)?)?));
    }
    Err(bad())
}

/// `Z`, `Z^2`, `Z6`, `F2`, `Z2*Z2`, `Z2*Z3`.
pub fn builtin_oracles() -> Vec<Box<dyn GroupOracle>> {
    ["Z", "Z^2", "Z6", "F2", "Z2*Z2", "Z2*Z3"]
        .iter()
        .map(|n| parse_group(n).expect("builtin name"))
        .collect()
}
