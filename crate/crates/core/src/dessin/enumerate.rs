use std::collections::BTreeSet;

use super::{Dessin, DessinError};
use crate::permcore::Perm;

pub const DEFAULT_ENUMERATION_CAP: usize = 8;

const UNSET: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub cap: usize,
    /// Permutes the order in which the search visits table entries and
    /// candidate images. The output does not depend on it.
    pub seed: Option<u64>,
    pub threads: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            cap: DEFAULT_ENUMERATION_CAP,
            seed: None,
            threads: 1,
        }
    }
}

/// The lexicographically least conjugate of `(sigma, tau)`, comparing the
/// image arrays of `sigma` and then of `tau`.
///
/// The least `sigma` is fixed by its cycle type (cycles laid out as
/// consecutive blocks, shortest first), so the search only ranges over
/// relabellings that preserve it. Most steps are forced; branching happens
/// only when a block has to be started on an unlabelled cycle.
pub fn lex_min_form(sigma: &Perm, tau: &Perm) -> (Perm, Perm) {
    let n = sigma.degree();
    let decomposition = sigma.cycle_decomposition();
    let mut lengths = decomposition.lengths();
    lengths.sort_unstable();
    let mut block_start = Vec::with_capacity(lengths.len());
    let mut block_of_label = vec![0; n];
    let mut start = 0;
    for (b, &len) in lengths.iter().enumerate() {
        block_start.push(start);
        block_of_label[start..start + len].fill(b);
        start += len;
    }
    let mut cycle_len = vec![0; n];
    for cycle in &decomposition.cycles {
        for &p in cycle {
            cycle_len[p] = cycle.len();
        }
    }

    let canonical_sigma: Vec<usize> = (0..n)
        .map(|label| {
            let b = block_of_label[label];
            let (s, len) = (block_start[b], lengths[b]);
            s + (label - s + 1) % len
        })
        .collect();

    let search = LexSearch {
        sigma,
        tau,
        lengths: &lengths,
        block_start: &block_start,
        block_of_label: &block_of_label,
        cycle_len: &cycle_len,
    };
    let state = LabelState {
        label_of: vec![UNSET; n],
        point_of: vec![UNSET; n],
        block_used: vec![false; lengths.len()],
        tau_prefix: Vec::with_capacity(n),
    };
    let mut best: Option<Vec<usize>> = None;
    search.run(state, &mut best, true);
    let best_tau = best.unwrap_or_default();
    (
        Perm::from_images_unchecked(canonical_sigma),
        Perm::from_images_unchecked(best_tau),
    )
}

#[derive(Clone)]
struct LabelState {
    label_of: Vec<usize>,
    point_of: Vec<usize>,
    block_used: Vec<bool>,
    tau_prefix: Vec<usize>,
}

struct LexSearch<'a> {
    sigma: &'a Perm,
    tau: &'a Perm,
    lengths: &'a [usize],
    block_start: &'a [usize],
    block_of_label: &'a [usize],
    cycle_len: &'a [usize],
}

impl LexSearch<'_> {
    /// Labels the sigma-cycle through `x` with the labels of block `b`,
    /// `x` receiving the first one.
    fn assign(&self, state: &mut LabelState, b: usize, x: usize) {
        state.block_used[b] = true;
        let mut p = x;
        for label in self.block_start[b]..self.block_start[b] + self.lengths[b] {
            state.label_of[p] = label;
            state.point_of[label] = p;
            p = self.sigma.apply(p);
        }
    }

    /// `tight` means the prefix built so far equals the best prefix.
    fn run(&self, mut state: LabelState, best: &mut Option<Vec<usize>>, mut tight: bool) {
        let n = self.sigma.degree();
        while state.tau_prefix.len() < n {
            let i = state.tau_prefix.len();
            if state.point_of[i] == UNSET {
                let b = self.block_of_label[i];
                for x in 0..n {
                    if state.label_of[x] == UNSET && self.cycle_len[x] == self.lengths[b] {
                        let mut branch = state.clone();
                        self.assign(&mut branch, b, x);
                        let now_tight = best
                            .as_ref()
                            .is_some_and(|b| b[..i] == state.tau_prefix[..]);
                        self.run(branch, best, now_tight);
                    }
                }
                return;
            }
            let y = self.tau.apply(state.point_of[i]);
            if state.label_of[y] == UNSET {
                let len = self.cycle_len[y];
                let b = (0..self.lengths.len())
                    .find(|&b| !state.block_used[b] && self.lengths[b] == len)
                    .expect("an unused block of every remaining cycle length");
                self.assign(&mut state, b, y);
            }
            let value = state.label_of[y];
            if tight {
                if let Some(best_tau) = best.as_ref() {
                    match value.cmp(&best_tau[i]) {
                        std::cmp::Ordering::Greater => return,
                        std::cmp::Ordering::Less => tight = false,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            state.tau_prefix.push(value);
        }
        let better = match best.as_ref() {
            None => true,
            Some(b) => state.tau_prefix < *b,
        };
        if better {
            *best = Some(state.tau_prefix);
        }
    }
}

struct LowIndex {
    m: usize,
    /// Columns: sigma, sigma⁻¹, tau, tau⁻¹ (inverse column is `c ^ 1`).
    cols: [Vec<usize>; 4],
    column_order: [usize; 4],
    reverse_targets: bool,
}

impl LowIndex {
    fn new(m: usize, seed: Option<u64>) -> Self {
        let mut column_order = [0, 1, 2, 3];
        let mut reverse_targets = false;
        if let Some(seed) = seed {
            let mut s = seed;
            for i in (1..4).rev() {
                s = splitmix(s);
                column_order.swap(i, (s % (i as u64 + 1)) as usize);
            }
            reverse_targets = splitmix(s) & 1 == 1;
        }
        LowIndex {
            m,
            cols: std::array::from_fn(|_| vec![UNSET; m]),
            column_order,
            reverse_targets,
        }
    }

    fn first_gap(&self, defined: usize) -> Option<(usize, usize)> {
        (0..defined).find_map(|r| {
            self.column_order
                .iter()
                .find(|&&c| self.cols[c][r] == UNSET)
                .map(|&c| (r, c))
        })
    }

    fn candidates(&self, c: usize, defined: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..defined)
            .filter(|&t| self.cols[c ^ 1][t] == UNSET)
            .collect();
        if defined < self.m {
            out.push(defined);
        }
        if self.reverse_targets {
            out.reverse();
        }
        out
    }

    fn set(&mut self, r: usize, c: usize, t: usize) {
        self.cols[c][r] = t;
        self.cols[c ^ 1][t] = r;
    }

    fn unset(&mut self, r: usize, c: usize, t: usize) {
        self.cols[c][r] = UNSET;
        self.cols[c ^ 1][t] = UNSET;
    }

    /// Visits every complete transitive table reachable from the current
    /// partial one, i.e. every index-m subgroup of the free group once.
    fn search(&mut self, defined: usize, emit: &mut dyn FnMut(&[usize], &[usize])) {
        let Some((r, c)) = self.first_gap(defined) else {
            if defined == self.m {
                emit(&self.cols[0], &self.cols[2]);
            }
            return;
        };
        for t in self.candidates(c, defined) {
            self.set(r, c, t);
            self.search(defined.max(t + 1), emit);
            self.unset(r, c, t);
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

type Form = (Vec<usize>, Vec<usize>);

fn canonical(sigma: &[usize], tau: &[usize]) -> Form {
    let s = Perm::from_images_unchecked(sigma.to_vec());
    let t = Perm::from_images_unchecked(tau.to_vec());
    let (s, t) = lex_min_form(&s, &t);
    (s.images().to_vec(), t.images().to_vec())
}

/// One representative per isomorphism class of dessins with `m` edges,
/// each the lexicographically least pair in its class, in ascending order.
pub fn enumerate_dessins(m: usize, options: &EnumerationOptions) -> Result<Vec<Dessin>, DessinError> {
    if m == 0 {
        return Err(DessinError::NoEdges);
    }
    if m > options.cap {
        return Err(DessinError::OverCap {
            requested: m,
            cap: options.cap,
        });
    }

    let root = LowIndex::new(m, options.seed);
    let (r, c) = root.first_gap(1).expect("row 0 starts empty");
    let first_choices = root.candidates(c, 1);
    let threads = options.threads.max(1).min(first_choices.len());

    let run_chunk = |choices: &[usize]| -> BTreeSet<Form> {
        let mut forms = BTreeSet::new();
        let mut table = LowIndex::new(m, options.seed);
        for &t in choices {
            table.set(r, c, t);
            table.search(1.max(t + 1), &mut |s, tau| {
                forms.insert(canonical(s, tau));
            });
            table.unset(r, c, t);
        }
        forms
    };

    let forms: BTreeSet<Form> = if threads <= 1 {
        run_chunk(&first_choices)
    } else {
        let chunks: Vec<Vec<usize>> = (0..threads)
            .map(|k| first_choices.iter().copied().skip(k).step_by(threads).collect())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| scope.spawn(|| run_chunk(chunk)))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };

    Ok(forms
        .into_iter()
        .map(|(s, t)| Dessin {
            sigma: Perm::from_images_unchecked(s),
            tau: Perm::from_images_unchecked(t),
        })
        .collect())
}
