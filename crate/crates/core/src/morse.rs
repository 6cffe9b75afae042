//! Partial matchings on face posets: validity, acyclicity and critical
//! cells, plus the homological check that an acyclic matching on
//! `K_ℓ(a,b) \ K'_ℓ(a,b)` with critical cells only in dimension `ℓ - 2`
//! predicts the relative homology.

use std::collections::HashMap;
use std::fmt;

use crate::ai_complex::{build_pair, relative_homology, Simplex};
use crate::chain::HomologyGroup;
use crate::graph::Graph;

/// A set of simplices with their codimension-one cover relations.
#[derive(Clone, Debug)]
pub struct FacePoset {
    cells: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    /// `facets[c]`: cells covered by `c`.
    facets: Vec<Vec<usize>>,
}

impl FacePoset {
    /// Poset on the given cells; `σ ≺ τ` whenever `σ` is `τ` minus one
    /// element and both are present.
    pub fn new(cells: impl IntoIterator<Item = Simplex>) -> Self {
        let cells: Vec<Simplex> = cells.into_iter().collect();
        let index: HashMap<Simplex, usize> = cells
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let facets = cells
            .iter()
            .map(|s| {
                (0..s.elements().len())
                    .filter_map(|t| s.face(t))
                    .filter_map(|f| index.get(&f).copied())
                    .collect()
            })
            .collect();
        FacePoset {
            cells,
            index,
            facets,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.facets[upper].contains(&lower)
    }

    pub fn cover_count(&self) -> usize {
        self.facets.iter().map(Vec::len).sum()
    }
}

/// Pairs `(lower, upper)` of cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(Simplex, Simplex)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingViolation {
    UnknownCell(Simplex),
    NotACover { lower: Simplex, upper: Simplex },
    Reused(Simplex),
}

impl fmt::Display for MatchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingViolation::UnknownCell(s) => write!(f, "cell {s} is not in the poset"),
            MatchingViolation::NotACover { lower, upper } => {
                write!(f, "{lower} is not a facet of {upper}")
            }
            MatchingViolation::Reused(s) => write!(f, "cell {s} belongs to more than one pair"),
        }
    }
}

/// Checks that every pair is a cover relation and that no cell is used
/// twice.
pub fn verify_matching(p: &FacePoset, m: &Matching) -> Result<(), MatchingViolation> {
    let mut used = vec![false; p.len()];
    for (lower, upper) in &m.pairs {
        let lo = p
            .index_of(lower)
            .ok_or_else(|| MatchingViolation::UnknownCell(lower.clone()))?;
        let up = p
            .index_of(upper)
            .ok_or_else(|| MatchingViolation::UnknownCell(upper.clone()))?;
        if !p.covers(lo, up) {
            return Err(MatchingViolation::NotACover {
                lower: lower.clone(),
                upper: upper.clone(),
            });
        }
        for (c, s) in [(lo, lower), (up, upper)] {
            if std::mem::replace(&mut used[c], true) {
                return Err(MatchingViolation::Reused(s.clone()));
            }
        }
    }
    Ok(())
}

fn partner_up(p: &FacePoset, m: &Matching) -> Vec<Option<usize>> {
    let mut up = vec![None; p.len()];
    for (lower, upper) in &m.pairs {
        let lo = p.index_of(lower).expect("verified matching");
        up[lo] = p.index_of(upper);
    }
    up
}

/// Searches the modified Hasse diagram (matched covers point up, all other
/// covers point down) for a directed cycle. Returns `None` when the matching
/// is acyclic, otherwise the cycle `b¹ ≻ d(b¹) ≺ b² ≻ ... ≺ b¹` as a list of
/// cells starting and ending with the same upper cell.
///
/// Expects a matching that passed [`verify_matching`].
pub fn find_cycle(p: &FacePoset, m: &Matching) -> Option<Vec<Simplex>> {
    let up = partner_up(p, m);
    let mut down_matched = vec![None; p.len()];
    for (lo, u) in up.iter().enumerate() {
        if let Some(u) = *u {
            down_matched[u] = Some(lo);
        }
    }
    // successors of c: its matched upper cell, or its unmatched facets
    let succ = |c: usize| -> Vec<usize> {
        let mut s: Vec<usize> = p.facets[c]
            .iter()
            .copied()
            .filter(|&f| down_matched[c] != Some(f))
            .collect();
        if let Some(u) = up[c] {
            s.push(u);
        }
        s
    };

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; p.len()];
    let mut parent = vec![usize::MAX; p.len()];
    for root in 0..p.len() {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, succ(root))];
        mark[root] = Mark::Active;
        while let Some((c, next)) = stack.last_mut() {
            let c = *c;
            match next.pop() {
                Some(n) => match mark[n] {
                    Mark::New => {
                        mark[n] = Mark::Active;
                        parent[n] = c;
                        stack.push((n, succ(n)));
                    }
                    Mark::Active => {
                        let mut cycle = vec![n];
                        let mut cur = c;
                        while cur != n {
                            cycle.push(cur);
                            cur = parent[cur];
                        }
                        cycle.reverse();
                        // cycle[0] = n ... c, then back to n
                        return Some(rotate_to_upper(p, &cycle));
                    }
                    Mark::Done => {}
                },
                None => {
                    mark[c] = Mark::Done;
                    stack.pop();
                }
            }
        }
    }
    None
}

fn rotate_to_upper(p: &FacePoset, cycle: &[usize]) -> Vec<Simplex> {
    let top = cycle.iter().map(|&c| p.cells[c].dim()).max().unwrap_or(0);
    let start = cycle
        .iter()
        .position(|&c| p.cells[c].dim() == top)
        .unwrap_or(0);
    let mut out: Vec<Simplex> = cycle[start..]
        .iter()
        .chain(&cycle[..start])
        .map(|&c| p.cells[c].clone())
        .collect();
    out.push(out[0].clone());
    out
}

pub fn is_acyclic(p: &FacePoset, m: &Matching) -> bool {
    find_cycle(p, m).is_none()
}

/// Unmatched cells with their dimensions, in poset order.
pub fn critical_cells(p: &FacePoset, m: &Matching) -> Vec<(Simplex, usize)> {
    let mut used = vec![false; p.len()];
    for (lower, upper) in &m.pairs {
        for s in [lower, upper] {
            if let Some(i) = p.index_of(s) {
                used[i] = true;
            }
        }
    }
    p.cells
        .iter()
        .zip(used)
        .filter(|(_, u)| !u)
        .map(|(s, _)| (s.clone(), s.dim()))
        .collect()
}

/// Outcome of [`morse_rank_check`].
#[derive(Clone, Debug)]
pub struct MorseReport {
    /// Critical cell counts per dimension.
    pub critical_counts: Vec<usize>,
    /// Critical cells not of dimension `ℓ - 2`.
    pub off_dimension: Vec<Simplex>,
    pub relative_homology: Vec<HomologyGroup>,
}

impl MorseReport {
    pub fn critical_total(&self) -> usize {
        self.critical_counts.iter().sum()
    }

    /// Critical cells all sit in dimension `ℓ - 2`, and the relative homology
    /// is free of that rank in degree `ℓ - 2` and zero elsewhere.
    pub fn holds(&self, ell: usize) -> bool {
        let top = ell - 2;
        self.off_dimension.is_empty()
            && self.relative_homology.iter().enumerate().all(|(d, h)| {
                if d == top {
                    *h == HomologyGroup::free(self.critical_total())
                } else {
                    h.is_zero()
                }
            })
    }
}

/// Compares the critical cells of `m` on `K_ℓ(a,b) \ K'_ℓ(a,b)` with
/// `H_*(K, K')`. The caller is responsible for `m` being a valid acyclic
/// matching on that poset.
pub fn morse_rank_check(g: &Graph, a: usize, b: usize, ell: usize, m: &Matching) -> MorseReport {
    let pair = build_pair(g, a, b, ell);
    let poset = FacePoset::new(pair.relative_cells().cloned());
    let critical = critical_cells(&poset, m);
    let mut counts = vec![0; ell.saturating_sub(1)];
    let mut off = Vec::new();
    for (s, d) in critical {
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
        if d + 2 != ell {
            off.push(s);
        }
    }
    MorseReport {
        critical_counts: counts,
        off_dimension: off,
        relative_homology: relative_homology(&pair),
    }
}
