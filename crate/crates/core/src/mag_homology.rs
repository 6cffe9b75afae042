//! Magnitude chain complexes `MC_*^ℓ(G)` and their homology.
//!
//! Generators of `MC_k^ℓ` are vertex tuples `(x_0, ..., x_k)` without equal
//! neighbours whose consecutive distances sum to `ℓ`. The differential
//! deletes interior smooth points with sign `(-1)^i`. Bases are kept in
//! lexicographic order so matrices are reproducible.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::chain::{ChainComplex, HomologyGroup};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::snf::{smith, SparseMatrix};

/// Default cap on the number of generators of a single complex.
pub const DEFAULT_MAX_BASIS: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    pub max_basis: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            max_basis: DEFAULT_MAX_BASIS,
        }
    }
}

/// A tuple of vertices (0-based) with no two consecutive entries equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequence(pub Vec<usize>);

impl Sequence {
    pub fn points(&self) -> &[usize] {
        &self.0
    }

    /// Degree `k` of a tuple with `k + 1` points.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn length(&self, g: &Graph) -> usize {
        g.walk_length(&self.0)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, ")")
    }
}

/// Whether deleting the interior point `x_i` keeps the length.
#[inline]
pub fn is_smooth(g: &Graph, x: &[usize], i: usize) -> bool {
    debug_assert!(i > 0 && i + 1 < x.len());
    g.dist(x[i - 1], x[i + 1]) == g.dist(x[i - 1], x[i]) + g.dist(x[i], x[i + 1])
}

/// Depth-first enumeration of all sequences of length `ell`, optionally
/// pinned to start at `a` and end at `b`, with at most `max_points` points.
/// Visits tuples in lexicographic order.
fn for_each_sequence(
    g: &Graph,
    ell: usize,
    endpoints: Option<(usize, usize)>,
    max_points: usize,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn go(
        g: &Graph,
        ell: usize,
        end: Option<usize>,
        max_points: usize,
        stack: &mut Vec<usize>,
        len: usize,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let last = *stack.last().unwrap();
        if len == ell {
            if end.is_none_or(|b| b == last) {
                visit(stack)?;
            }
            return Ok(());
        }
        if stack.len() == max_points {
            return Ok(());
        }
        for v in g.vertices() {
            if v == last {
                continue;
            }
            let next = len + g.dist(last, v);
            if next > ell || end.is_some_and(|b| next + g.dist(v, b) > ell) {
                continue;
            }
            stack.push(v);
            go(g, ell, end, max_points, stack, next, visit)?;
            stack.pop();
        }
        Ok(())
    }

    let starts: Vec<usize> = match endpoints {
        Some((a, _)) => vec![a],
        None => g.vertices().collect(),
    };
    let mut stack = Vec::with_capacity(ell + 1);
    for s in starts {
        if endpoints.is_some_and(|(_, b)| g.dist(s, b) > ell) {
            continue;
        }
        stack.clear();
        stack.push(s);
        go(
            g,
            ell,
            endpoints.map(|e| e.1),
            max_points,
            &mut stack,
            0,
            visit,
        )?;
    }
    Ok(())
}

/// All generators of `MC_k^ℓ` (or of the `(a, b)` summand), in
/// lexicographic order.
pub fn enumerate_sequences(
    g: &Graph,
    k: usize,
    ell: usize,
    endpoints: Option<(usize, usize)>,
) -> Vec<Sequence> {
    let mut out = Vec::new();
    for_each_sequence(g, ell, endpoints, k + 1, &mut |x| {
        if x.len() == k + 1 {
            out.push(Sequence(x.to_vec()));
        }
        Ok(())
    })
    .expect("visitor is infallible");
    out
}

fn check_cap(size: usize, opts: &HomologyOptions) -> Result<()> {
    if size > opts.max_basis {
        Err(Error::BasisCap {
            size,
            cap: opts.max_basis,
        })
    } else {
        Ok(())
    }
}

/// Boundary from `source` (degree `k`) to `target` (degree `k - 1`).
fn boundary_between(g: &Graph, source: &[Sequence], target: &[Sequence]) -> SparseMatrix {
    let index: HashMap<&[usize], usize> = target
        .iter()
        .enumerate()
        .map(|(i, s)| (s.points(), i))
        .collect();
    let mut face = Vec::new();
    let cols = source
        .iter()
        .map(|x| {
            let pts = x.points();
            let mut col = Vec::new();
            for i in 1..pts.len().saturating_sub(1) {
                if !is_smooth(g, pts, i) {
                    continue;
                }
                face.clear();
                face.extend_from_slice(&pts[..i]);
                face.extend_from_slice(&pts[i + 1..]);
                let row = index[face.as_slice()];
                col.push((row, if i % 2 == 0 { 1 } else { -1 }));
            }
            col
        })
        .collect();
    SparseMatrix::from_columns(target.len(), cols)
}

/// Matrix of `∂ : MC_k^ℓ → MC_{k-1}^ℓ` in the lexicographic bases.
pub fn boundary_matrix(
    g: &Graph,
    k: usize,
    ell: usize,
    endpoints: Option<(usize, usize)>,
) -> SparseMatrix {
    let source = enumerate_sequences(g, k, ell, endpoints);
    if k == 0 {
        return SparseMatrix::zeros(0, source.len());
    }
    let target = enumerate_sequences(g, k - 1, ell, endpoints);
    boundary_between(g, &source, &target)
}

/// The whole complex `MC_*^ℓ` (degrees `0..=ℓ`) with its bases.
#[derive(Clone, Debug)]
pub struct MagnitudeComplex {
    pub ell: usize,
    pub basis: Vec<Vec<Sequence>>,
    pub complex: ChainComplex,
}

pub fn magnitude_chain_complex(
    g: &Graph,
    ell: usize,
    endpoints: Option<(usize, usize)>,
    opts: &HomologyOptions,
) -> Result<MagnitudeComplex> {
    let mut basis: Vec<Vec<Sequence>> = vec![Vec::new(); ell + 1];
    let mut total = 0usize;
    for_each_sequence(g, ell, endpoints, ell + 1, &mut |x| {
        total += 1;
        check_cap(total, opts)?;
        basis[x.len() - 1].push(Sequence(x.to_vec()));
        Ok(())
    })?;
    let boundaries = (0..=ell)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                SparseMatrix::zeros(0, basis[0].len())
            } else {
                boundary_between(g, &basis[k], &basis[k - 1])
            }
        })
        .collect();
    let dims = basis.iter().map(Vec::len).collect();
    Ok(MagnitudeComplex {
        ell,
        basis,
        complex: ChainComplex::new(dims, boundaries),
    })
}

fn homology_at(
    g: &Graph,
    k: usize,
    ell: usize,
    endpoints: Option<(usize, usize)>,
    opts: &HomologyOptions,
) -> Result<HomologyGroup> {
    if k > ell {
        return Ok(HomologyGroup::default());
    }
    let here = enumerate_sequences(g, k, ell, endpoints);
    let below = if k > 0 {
        enumerate_sequences(g, k - 1, ell, endpoints)
    } else {
        Vec::new()
    };
    let above = enumerate_sequences(g, k + 1, ell, endpoints);
    check_cap(here.len() + below.len() + above.len(), opts)?;
    let (out_rank, inc) = rayon::join(
        || {
            if k == 0 {
                0
            } else {
                smith(&boundary_between(g, &here, &below)).rank
            }
        },
        || smith(&boundary_between(g, &above, &here)),
    );
    Ok(HomologyGroup {
        rank: here.len() - out_rank - inc.rank,
        torsion: inc.divisors,
    })
}

/// `MH_k^ℓ(G)` computed from the full complex (no splitting by endpoints).
pub fn mh_rank(g: &Graph, k: usize, ell: usize, opts: &HomologyOptions) -> Result<HomologyGroup> {
    homology_at(g, k, ell, None, opts)
}

/// Homology of the summand generated by tuples from `a` to `b`.
pub fn mh_ab(
    g: &Graph,
    a: usize,
    b: usize,
    k: usize,
    ell: usize,
    opts: &HomologyOptions,
) -> Result<HomologyGroup> {
    homology_at(g, k, ell, Some((a, b)), opts)
}

/// `MH_k^ℓ` for `0 <= k <= ℓ <= lmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MHTable {
    pub lmax: usize,
    entries: BTreeMap<(usize, usize), HomologyGroup>,
}

impl MHTable {
    /// Entry at degree `k`, length `ell`; zero outside the computed range.
    pub fn get(&self, k: usize, ell: usize) -> HomologyGroup {
        self.entries.get(&(k, ell)).cloned().unwrap_or_default()
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..=self.lmax).map(|l| self.get(l, l).rank).collect()
    }

    /// Nonzero entries with `k != ℓ`, as `((k, ℓ), group)`.
    pub fn off_diagonal(&self) -> Vec<((usize, usize), HomologyGroup)> {
        self.entries
            .iter()
            .filter(|((k, l), h)| k != l && !h.is_zero())
            .map(|(&kl, h)| (kl, h.clone()))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.off_diagonal().is_empty()
    }

    /// CSV laid out with one row per length and one column per degree;
    /// zero groups are left blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l\\k");
        for k in 0..=self.lmax {
            out.push_str(&format!(",{k}"));
        }
        out.push('\n');
        for ell in 0..=self.lmax {
            out.push_str(&ell.to_string());
            for k in 0..=self.lmax {
                out.push(',');
                let h = self.get(k, ell);
                if h.is_zero() {
                    continue;
                }
                out.push_str(&h.rank.to_string());
                for d in &h.torsion {
                    out.push_str(&format!("+Z/{d}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn mh_table(g: &Graph, lmax: usize, opts: &HomologyOptions) -> Result<MHTable> {
    let rows: Vec<Vec<HomologyGroup>> = (0..=lmax)
        .into_par_iter()
        .map(|ell| magnitude_chain_complex(g, ell, None, opts).map(|c| c.complex.homology()))
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    for (ell, row) in rows.into_iter().enumerate() {
        for (k, h) in row.into_iter().enumerate() {
            entries.insert((k, ell), h);
        }
    }
    Ok(MHTable { lmax, entries })
}

/// Same table restricted to the `(a, b)` summand.
pub fn mh_table_ab(
    g: &Graph,
    a: usize,
    b: usize,
    lmax: usize,
    opts: &HomologyOptions,
) -> Result<MHTable> {
    let rows: Vec<Vec<HomologyGroup>> = (0..=lmax)
        .into_par_iter()
        .map(|ell| {
            magnitude_chain_complex(g, ell, Some((a, b)), opts).map(|c| c.complex.homology())
        })
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    for (ell, row) in rows.into_iter().enumerate() {
        for (k, h) in row.into_iter().enumerate() {
            entries.insert((k, ell), h);
        }
    }
    Ok(MHTable { lmax, entries })
}

/// Whether every off-diagonal group (free part and torsion) vanishes up to
/// length `lmax`.
pub fn is_diagonal_up_to(g: &Graph, lmax: usize, opts: &HomologyOptions) -> Result<bool> {
    Ok(mh_table(g, lmax, opts)?.is_diagonal())
}
