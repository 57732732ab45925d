use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::word::column;
use super::{FpError, Presentation, Word};
use crate::permcore::{self, Perm};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNSET: usize = usize::MAX;

/// A complete coset table: the permutation action of every generator on
/// the right cosets of a subgroup. Coset 0 is the subgroup itself and
/// cosets are numbered in breadth-first order (generators in order, each
/// followed by its inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    names: Vec<String>,
    actions: Vec<Perm>,
    inverses: Vec<Perm>,
}

/// JSON form: `{"index": n, "actions": {"x": "(...)", ...}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CosetTableFile {
    pub index: usize,
    pub actions: BTreeMap<String, String>,
}

impl CosetTable {
    /// Wraps generator actions, renumbering cosets breadth-first from
    /// `base`. The actions must generate a transitive group.
    pub fn from_actions(names: Vec<String>, actions: Vec<Perm>, base: usize) -> Result<Self, FpError> {
        let n = actions.first().map_or(1, Perm::degree);
        if names.len() != actions.len() {
            return Err(FpError::ColumnCount {
                expected: names.len(),
                found: actions.len(),
            });
        }
        if actions.iter().any(|a| a.degree() != n) || base >= n.max(1) {
            return Err(FpError::InvalidTable("generator actions disagree on the coset count".into()));
        }
        if !actions.is_empty() && !permcore::is_transitive(&actions, n) {
            return Err(FpError::InvalidTable("generator actions are not transitive".into()));
        }
        let inverses: Vec<Perm> = actions.iter().map(Perm::inverse).collect();
        let mut order = vec![UNSET; n];
        let mut seen = vec![base];
        order[base] = 0;
        let mut head = 0;
        while head < seen.len() {
            let c = seen[head];
            head += 1;
            for (a, ai) in actions.iter().zip(&inverses) {
                for d in [a.apply(c), ai.apply(c)] {
                    if order[d] == UNSET {
                        order[d] = seen.len();
                        seen.push(d);
                    }
                }
            }
        }
        let relabel = Perm::from_images_unchecked(order);
        let actions = if actions.is_empty() {
            actions
        } else {
            actions
                .iter()
                .map(|a| a.conjugate_by(&relabel).expect("same degree"))
                .collect()
        };
        Ok(CosetTable::assemble(names, actions))
    }

    fn assemble(names: Vec<String>, actions: Vec<Perm>) -> Self {
        let inverses = actions.iter().map(Perm::inverse).collect();
        CosetTable {
            names,
            actions,
            inverses,
        }
    }

    pub fn index(&self) -> usize {
        self.actions.first().map_or(1, Perm::degree)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn actions(&self) -> &[Perm] {
        &self.actions
    }

    pub fn action(&self, generator: usize) -> &Perm {
        &self.actions[generator]
    }

    /// Coset reached from `coset` by reading `word` left to right.
    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| {
            let k = l.unsigned_abs() as usize - 1;
            if l > 0 {
                self.actions[k].apply(c)
            } else {
                self.inverses[k].apply(c)
            }
        })
    }

    /// Breadth-first representative words: `trace(0, reps[c]) == c`.
    pub fn coset_representatives(&self) -> Vec<Word> {
        let n = self.index();
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[0] = Some(Word::empty());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for k in 0..self.actions.len() {
                let letter = k as i32 + 1;
                for (d, l) in [(self.actions[k].apply(c), letter), (self.inverses[k].apply(c), -letter)] {
                    if reps[d].is_none() {
                        let w = reps[c].as_ref().expect("visited").concat(&Word::new([l]));
                        reps[d] = Some(w);
                        queue.push(d);
                    }
                }
            }
        }
        reps.into_iter().map(|r| r.expect("tables are transitive")).collect()
    }

    /// Schreier generators `rep(c) g rep(c·g)⁻¹` of the subgroup fixing
    /// coset 0, trivial ones dropped.
    pub fn subgroup_generators(&self) -> Vec<Word> {
        let reps = self.coset_representatives();
        let mut out = Vec::new();
        for (c, rep) in reps.iter().enumerate() {
            for k in 0..self.actions.len() {
                let d = self.actions[k].apply(c);
                let w = rep.concat(&Word::generator(k)).concat(&reps[d].inverse());
                if !w.is_empty() {
                    out.push(w);
                }
            }
        }
        out
    }

    /// The same table with coset `base` playing the role of coset 0.
    pub fn rebased(&self, base: usize) -> CosetTable {
        CosetTable::from_actions(self.names.clone(), self.actions.clone(), base)
            .expect("rebasing a valid table")
    }

    /// Checks the defining properties against a presentation and subgroup:
    /// relators act trivially, subgroup generators fix coset 0, and the
    /// action is transitive.
    pub fn verify(&self, presentation: &Presentation, subgroup: &[Word]) -> bool {
        let n = self.index();
        self.actions.len() == presentation.generator_count()
            && presentation
                .relators()
                .iter()
                .all(|r| (0..n).all(|c| self.trace(c, r) == c))
            && subgroup.iter().all(|w| self.trace(0, w) == 0)
            && (self.actions.is_empty() || permcore::is_transitive(&self.actions, n))
    }

    pub fn to_file(&self) -> CosetTableFile {
        CosetTableFile {
            index: self.index(),
            actions: self
                .names
                .iter()
                .zip(&self.actions)
                .map(|(name, a)| (name.clone(), a.to_string()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain struct serializes")
    }

    /// Reads a table; generator columns follow `names` order.
    pub fn from_file(file: &CosetTableFile, names: &[String]) -> Result<Self, FpError> {
        if file.actions.len() != names.len() {
            return Err(FpError::ColumnCount {
                expected: names.len(),
                found: file.actions.len(),
            });
        }
        let mut actions = Vec::with_capacity(names.len());
        for name in names {
            let text = file
                .actions
                .get(name)
                .ok_or_else(|| FpError::UnknownGenerator(name.clone()))?;
            let perm = Perm::parse(text, Some(file.index))
                .map_err(|e| FpError::InvalidTable(e.to_string()))?;
            actions.push(perm);
        }
        CosetTable::from_actions(names.to_vec(), actions, 0)
    }
}

/// Todd–Coxeter coset enumeration (HLT strategy) for the subgroup
/// generated by `subgroup` in the group presented by `presentation`.
///
/// At most `max_cosets` cosets may be alive at once and at most
/// `8 * max_cosets` may be defined over the whole run.
pub fn coset_enumeration(
    presentation: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, FpError> {
    if max_cosets == 0 {
        return Err(FpError::CosetLimit(max_cosets));
    }
    let mut e = Enumerator::new(presentation.generator_count(), max_cosets);
    for w in subgroup {
        e.scan_and_fill(0, w.letters())?;
    }
    let mut c = 0;
    while c < e.parent.len() {
        if e.is_live(c) {
            for r in presentation.relators() {
                e.scan_and_fill(c, r.letters())?;
                if !e.is_live(c) {
                    break;
                }
            }
            if e.is_live(c) {
                for col in 0..e.width {
                    if e.get(c, col) == UNSET {
                        e.define(c, col)?;
                    }
                }
            }
        }
        c += 1;
    }
    Ok(e.into_table(presentation.generator_names().to_vec()))
}

struct Enumerator {
    width: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    live: usize,
    max_live: usize,
    max_total: usize,
    queue: Vec<usize>,
}

impl Enumerator {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let width = 2 * generators;
        Enumerator {
            width,
            table: vec![UNSET; width],
            parent: vec![0],
            live: 1,
            max_live: max_cosets,
            max_total: max_cosets.saturating_mul(8),
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> usize {
        self.table[c * self.width + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, d: usize) {
        self.table[c * self.width + col] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, col: usize) -> Result<usize, FpError> {
        if self.live >= self.max_live || self.parent.len() >= self.max_total {
            return Err(FpError::CosetLimit(self.max_live));
        }
        let d = self.parent.len();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNSET, self.width));
        self.live += 1;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    fn scan_and_fill(&mut self, c: usize, word: &[i32]) -> Result<(), FpError> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, column(word[i])) != UNSET {
                f = self.get(f, column(word[i]));
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, column(word[j as usize]) ^ 1) != UNSET {
                b = self.get(b, column(word[j as usize]) ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = column(word[i]);
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            self.define(f, column(word[i]))?;
        }
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let e = self.queue[head];
            head += 1;
            for col in 0..self.width {
                let f = self.get(e, col);
                if f == UNSET {
                    continue;
                }
                if self.get(f, col ^ 1) == e {
                    self.set(f, col ^ 1, UNSET);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let existing = self.get(e1, col);
                if existing != UNSET {
                    self.merge(f1, existing);
                } else if self.get(f1, col ^ 1) != UNSET {
                    let back = self.get(f1, col ^ 1);
                    self.merge(e1, back);
                } else {
                    self.set(e1, col, f1);
                    self.set(f1, col ^ 1, e1);
                }
            }
        }
        self.queue.clear();
    }

    /// Compacts live cosets into breadth-first order from coset 0.
    fn into_table(self, names: Vec<String>) -> CosetTable {
        let generators = self.width / 2;
        let mut order = vec![UNSET; self.parent.len()];
        let mut seen = vec![0usize];
        order[0] = 0;
        let mut head = 0;
        while head < seen.len() {
            let c = seen[head];
            head += 1;
            for col in 0..self.width {
                let d = self.get(c, col);
                debug_assert!(d != UNSET && self.parent[d] == d, "complete table");
                if order[d] == UNSET {
                    order[d] = seen.len();
                    seen.push(d);
                }
            }
        }
        let index = seen.len();
        let actions = (0..generators)
            .map(|k| {
                let mut images = vec![0; index];
                for (new, &old) in seen.iter().enumerate() {
                    images[new] = order[self.get(old, 2 * k)];
                }
                Perm::from_images_unchecked(images)
            })
            .collect();
        CosetTable::assemble(names, actions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::parse_presentation;
    use std::collections::HashSet;

    /// Order of a finite group given by generating permutations, by BFS
    /// over products. Used as an oracle on known permutation models.
    fn closure_order(gens: &[Perm]) -> usize {
        let n = gens[0].degree();
        let mut seen = HashSet::from([Perm::identity(n)]);
        let mut stack = vec![Perm::identity(n)];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.compose(&x).unwrap();
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn spherical_triangle_groups() {
        // permutation models satisfying x^2 = y^3 = (yx)^c = 1 whose
        // closures give the group orders independently
        let a4 = [p("(0 1)(2 3)", 4), p("(0 1 2)", 4)];
        let s4 = [p("(0 1)", 4), p("(1 2 3)", 4)];
        let a5 = [p("(0 1)(2 3)", 5), p("(0 2 4)", 5)];
        for (gens, c) in [(&a4, 3u64), (&s4, 4), (&a5, 5)] {
            let yx = gens[0].compose(&gens[1]).unwrap();
            assert_eq!(gens[0].order(), 2);
            assert_eq!(gens[1].order(), 3);
            assert_eq!(yx.order(), c);
        }
        let expected = [closure_order(&a4), closure_order(&s4), closure_order(&a5)];
        assert_eq!(expected, [12, 24, 60]);

        for (c, order) in [(3, expected[0]), (4, expected[1]), (5, expected[2])] {
            let pres = parse_presentation(&format!("< x y | x^2 y^3 (y*x)^{c} >")).unwrap();
            let t = coset_enumeration(&pres, &[], DEFAULT_MAX_COSETS).unwrap();
            assert_eq!(t.index(), order);
            assert!(t.verify(&pres, &[]));
            assert_eq!(closure_order(t.actions()), order);
        }
    }

    #[test]
    fn free_group_index_two() {
        let pres = Presentation::free(&["x", "y"]);
        let h = pres.parse_words("x, y^2, y*x*y^-1").unwrap();
        let t = coset_enumeration(&pres, &h, 10).unwrap();
        assert_eq!(t.index(), 2);
        assert!(t.verify(&pres, &h));
        assert_eq!(t.action(0), &Perm::identity(2));
        assert_eq!(t.action(1), &p("(0 1)", 2));
    }

    #[test]
    fn coset_limit() {
        let pres = Presentation::free(&["x", "y"]);
        let h = pres.parse_words("x").unwrap();
        let err = coset_enumeration(&pres, &h, 100).unwrap_err();
        assert_eq!(err, FpError::CosetLimit(100));
        assert!(err.to_string().contains("enumeration did not close within max_cosets"));
        assert_eq!(coset_enumeration(&pres, &h, 0).unwrap_err(), FpError::CosetLimit(0));
    }

    #[test]
    fn trivial_group_and_whole_group() {
        let pres = parse_presentation("< x y | x y (y*x) >").unwrap();
        assert_eq!(coset_enumeration(&pres, &[], 10).unwrap().index(), 1);
        let pres = parse_presentation("< x y | x^2 y^3 (y*x)^5 >").unwrap();
        let all = pres.parse_words("x, y").unwrap();
        assert_eq!(coset_enumeration(&pres, &all, 10).unwrap().index(), 1);
    }

    #[test]
    fn subgroup_of_a5() {
        // the cyclic subgroup <y> of order 3 has index 20
        let pres = parse_presentation("< x y | x^2 y^3 (y*x)^5 >").unwrap();
        let h = pres.parse_words("y").unwrap();
        let t = coset_enumeration(&pres, &h, 1000).unwrap();
        assert_eq!(t.index(), 20);
        assert!(t.verify(&pres, &h));
    }

    #[test]
    fn tables_are_breadth_first() {
        let pres = parse_presentation("< x y | x^2 y^3 (y*x)^4 >").unwrap();
        let t = coset_enumeration(&pres, &[], 1000).unwrap();
        assert_eq!(t.rebased(0), t);
        let moved = t.rebased(5);
        assert_eq!(moved.index(), t.index());
        assert!(moved.verify(&pres, &[]));
    }

    #[test]
    fn json_round_trip() {
        let pres = Presentation::free(&["x", "y"]);
        let h = pres.parse_words("x, y^2, y*x*y^-1").unwrap();
        let t = coset_enumeration(&pres, &h, 10).unwrap();
        assert_eq!(t.to_json(), r#"{"index":2,"actions":{"x":"()","y":"(0 1)"}}"#);
        let back: CosetTableFile = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(CosetTable::from_file(&back, pres.generator_names()).unwrap(), t);
    }

    #[test]
    fn schreier_words_recover_the_table() {
        let pres = parse_presentation("< x y | x^2 y^3 (y*x)^5 >").unwrap();
        let h = pres.parse_words("y").unwrap();
        let t = coset_enumeration(&pres, &h, 1000).unwrap();
        let reps = t.coset_representatives();
        for (c, w) in reps.iter().enumerate() {
            assert_eq!(t.trace(0, w), c);
        }
        let gens = t.subgroup_generators();
        assert!(gens.iter().all(|w| t.trace(0, w) == 0));
        assert_eq!(coset_enumeration(&pres, &gens, 1000).unwrap(), t);
    }
}
