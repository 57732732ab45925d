use super::{CosetTable, FpError, Presentation, Word};

/// A presentation of the subgroup behind a coset table, together with the
/// bookkeeping that ties each Schreier generator to its table entry.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    /// `(coset, generator)` of each Schreier generator, in generator order.
    pub entries: Vec<(usize, usize)>,
    /// Schreier generator index for every `(coset, generator)` entry, `None`
    /// on spanning-tree edges.
    pub generator_at: Vec<Vec<Option<usize>>>,
}

impl SubgroupPresentation {
    /// Rewrites a word read from `coset` as a word in Schreier generators.
    pub fn rewrite(&self, table: &CosetTable, coset: usize, word: &Word) -> Word {
        let mut out = Vec::new();
        let mut c = coset;
        for &l in word.letters() {
            let k = l.unsigned_abs() as usize - 1;
            if l > 0 {
                if let Some(s) = self.generator_at[c][k] {
                    out.push(s as i32 + 1);
                }
                c = table.action(k).apply(c);
            } else {
                let d = table.trace(c, &Word::new([l]));
                if let Some(s) = self.generator_at[d][k] {
                    out.push(-(s as i32 + 1));
                }
                c = d;
            }
        }
        Word::new(out)
    }
}

/// Reidemeister–Schreier rewriting. The spanning tree is the breadth-first
/// tree of the table (cosets in order, each generator then its inverse);
/// every other `(coset, generator)` entry gives a Schreier generator named
/// `<generator>_<coset>`.
pub fn reidemeister_schreier(
    presentation: &Presentation,
    table: &CosetTable,
) -> Result<SubgroupPresentation, FpError> {
    let n = presentation.generator_count();
    if table.actions().len() != n {
        return Err(FpError::ColumnCount {
            expected: n,
            found: table.actions().len(),
        });
    }
    let index = table.index();
    let inverses: Vec<_> = table.actions().iter().map(|a| a.inverse()).collect();

    let mut tree = vec![vec![false; n]; index];
    let mut reached = vec![false; index];
    reached[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let c = queue[head];
        head += 1;
        for k in 0..n {
            let forward = table.action(k).apply(c);
            if !reached[forward] {
                reached[forward] = true;
                tree[c][k] = true;
                queue.push(forward);
            }
            let backward = inverses[k].apply(c);
            if !reached[backward] {
                reached[backward] = true;
                tree[backward][k] = true;
                queue.push(backward);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return Err(FpError::InvalidTable("coset table is not connected".into()));
    }

    let names = presentation.generator_names();
    let mut entries = Vec::new();
    let mut generator_at = vec![vec![None; n]; index];
    let mut new_names = Vec::new();
    for c in 0..index {
        for k in 0..n {
            if !tree[c][k] {
                generator_at[c][k] = Some(entries.len());
                entries.push((c, k));
                new_names.push(format!("{}_{}", names[k], c));
            }
        }
    }

    let mut sub = SubgroupPresentation {
        presentation: Presentation::free(&[]),
        entries,
        generator_at,
    };
    let mut relators = Vec::new();
    for c in 0..index {
        for r in presentation.relators() {
            let w = sub.rewrite(table, c, r).cyclically_reduced();
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    relators.sort();
    relators.dedup();
    sub.presentation = Presentation::new(new_names, relators)?;
    Ok(sub)
}
