//! The simplicial pair `K_ℓ(a,b) ⊇ K'_ℓ(a,b)` built from length-`ℓ` edge
//! paths, its relative homology, and the comparison with the `(a, b)`
//! summand of magnitude homology.
//!
//! A simplex is a set of `(vertex, position)` pairs with distinct positions
//! in `1..ℓ`. It is oriented by increasing position.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::chain::{ChainComplex, HomologyGroup};
use crate::error::Result;
use crate::graph::Graph;
use crate::mag_homology::{magnitude_chain_complex, HomologyOptions, Sequence};
use crate::snf::SparseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionedVertex {
    pub vertex: usize,
    pub position: usize,
}

/// Nonempty set of positioned vertices, stored in increasing position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<PositionedVertex>);

impl Simplex {
    /// Builds a simplex from `(vertex, position)` pairs. Panics on repeated
    /// positions or an empty set.
    pub fn new(mut elements: Vec<PositionedVertex>) -> Self {
        assert!(!elements.is_empty(), "simplices are nonempty");
        elements.sort_by_key(|e| e.position);
        assert!(
            elements.windows(2).all(|w| w[0].position < w[1].position),
            "positions must be distinct"
        );
        Simplex(elements)
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(vertex, position)| PositionedVertex { vertex, position })
                .collect(),
        )
    }

    pub fn elements(&self) -> &[PositionedVertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|e| e.vertex)
    }

    /// The simplex with its `t`-th element removed, `None` for a vertex.
    pub fn face(&self, t: usize) -> Option<Simplex> {
        if self.0.len() == 1 {
            return None;
        }
        let mut e = self.0.clone();
        e.remove(t);
        Some(Simplex(e))
    }

    /// `(a, x_{i_1}, ..., x_{i_k}, b)`.
    pub fn extended_sequence(&self, a: usize, b: usize) -> Vec<usize> {
        std::iter::once(a)
            .chain(self.vertices())
            .chain(std::iter::once(b))
            .collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", e.vertex + 1, e.position)?;
        }
        write!(f, "}}")
    }
}

/// All edge paths `(a = x_0, ..., x_ℓ = b)` with adjacent consecutive
/// vertices, in lexicographic order.
pub fn enumerate_paths(g: &Graph, a: usize, b: usize, ell: usize) -> Vec<Sequence> {
    fn go(g: &Graph, b: usize, ell: usize, stack: &mut Vec<usize>, out: &mut Vec<Sequence>) {
        let last = *stack.last().unwrap();
        let steps = stack.len() - 1;
        if steps == ell {
            if last == b {
                out.push(Sequence(stack.clone()));
            }
            return;
        }
        for &v in g.neighbors(last) {
            if g.dist(v, b) < ell - steps {
                stack.push(v);
                go(g, b, ell, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    if g.dist(a, b) <= ell {
        go(g, b, ell, &mut vec![a], &mut out);
    }
    out
}

/// `K = K_ℓ(a,b)` and its subcomplex `K' = K'_ℓ(a,b)`.
#[derive(Clone, Debug)]
pub struct SimplicialPair {
    pub a: usize,
    pub b: usize,
    pub ell: usize,
    pub k: BTreeSet<Simplex>,
    pub kprime: BTreeSet<Simplex>,
}

/// Builds the pair by collecting every nonempty set of interior points of
/// every path in `P_ℓ(a, b)`.
pub fn build_pair(g: &Graph, a: usize, b: usize, ell: usize) -> SimplicialPair {
    let mut k = BTreeSet::new();
    let interior = ell.saturating_sub(1);
    for path in enumerate_paths(g, a, b, ell) {
        let pts = path.points();
        for mask in 1u64..(1u64 << interior) {
            let elems = (1..ell)
                .filter(|i| mask >> (i - 1) & 1 == 1)
                .map(|i| PositionedVertex {
                    vertex: pts[i],
                    position: i,
                })
                .collect();
            k.insert(Simplex(elems));
        }
    }
    let kprime = k
        .iter()
        .filter(|s| g.walk_length(&s.extended_sequence(a, b)) < ell)
        .cloned()
        .collect();
    SimplicialPair {
        a,
        b,
        ell,
        k,
        kprime,
    }
}

impl SimplicialPair {
    /// Simplices of `K` outside `K'`.
    pub fn relative_cells(&self) -> impl Iterator<Item = &Simplex> {
        self.k.iter().filter(|s| !self.kprime.contains(*s))
    }

    /// Number of simplices per dimension, `dims[d]` counting `d`-simplices.
    pub fn f_vector(set: &BTreeSet<Simplex>) -> Vec<usize> {
        let mut f = Vec::new();
        for s in set {
            if f.len() <= s.dim() {
                f.resize(s.dim() + 1, 0);
            }
            f[s.dim()] += 1;
        }
        f
    }

    /// Maximal simplices of `K`.
    pub fn maximal_faces(&self) -> Vec<&Simplex> {
        let mut faces_of_others = BTreeSet::new();
        for s in &self.k {
            for t in 0..s.0.len() {
                if let Some(f) = s.face(t) {
                    faces_of_others.insert(f);
                }
            }
        }
        self.k
            .iter()
            .filter(|s| !faces_of_others.contains(*s))
            .collect()
    }

    /// Both `K` and `K'` are closed under taking nonempty faces.
    pub fn is_closed(&self) -> bool {
        let closed = |set: &BTreeSet<Simplex>| {
            set.iter().all(|s| {
                (0..s.0.len())
                    .filter_map(|t| s.face(t))
                    .all(|f| set.contains(&f))
            })
        };
        closed(&self.k) && closed(&self.kprime) && self.kprime.is_subset(&self.k)
    }

    /// For cells outside `K'`, each position equals the distance travelled
    /// along `(a, x_{i_1}, ..., x_{i_k})`.
    pub fn positions_are_cumulative(&self, g: &Graph) -> bool {
        self.relative_cells().all(|s| {
            let mut prev = self.a;
            let mut acc = 0;
            s.elements().iter().all(|e| {
                acc += g.dist(prev, e.vertex);
                prev = e.vertex;
                e.position == acc
            })
        })
    }

    /// Cellular chain complex of `(K, K')`.
    pub fn relative_complex(&self) -> ChainComplex {
        let cells: Vec<&Simplex> = self.relative_cells().collect();
        simplicial_complex(&cells, self.ell.saturating_sub(1), false, |f| {
            !self.kprime.contains(f)
        })
    }
}

/// Chain complex of a set of simplices. Faces rejected by `keep` are treated
/// as zero. With `augmented`, degree 0 is the empty simplex and a
/// `d`-simplex sits in degree `d + 1`.
fn simplicial_complex(
    cells: &[&Simplex],
    ndims: usize,
    augmented: bool,
    keep: impl Fn(&Simplex) -> bool,
) -> ChainComplex {
    let shift = usize::from(augmented);
    let mut by_dim: Vec<Vec<&Simplex>> = vec![Vec::new(); ndims];
    for &s in cells {
        if by_dim.len() <= s.dim() {
            by_dim.resize(s.dim() + 1, Vec::new());
        }
        by_dim[s.dim()].push(s);
    }
    let index: Vec<HashMap<&Simplex, usize>> = by_dim
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    let mut dims = Vec::new();
    let mut boundaries = Vec::new();
    if augmented {
        dims.push(1);
        boundaries.push(SparseMatrix::zeros(0, 1));
    }
    for (d, group) in by_dim.iter().enumerate() {
        let nrows = match (d, augmented) {
            (0, true) => 1,
            (0, false) => 0,
            _ => by_dim[d - 1].len(),
        };
        let cols = group
            .iter()
            .map(|s| {
                if d == 0 {
                    return if augmented { vec![(0, 1)] } else { Vec::new() };
                }
                (0..s.0.len())
                    .filter_map(|t| {
                        let f = s.face(t)?;
                        if !keep(&f) {
                            return None;
                        }
                        let row = *index[d - 1].get(&f)?;
                        Some((row, if t % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect()
            })
            .collect();
        dims.push(group.len());
        boundaries.push(SparseMatrix::from_columns(nrows, cols));
    }
    debug_assert_eq!(dims.len(), ndims.max(by_dim.len()) + shift);
    ChainComplex::new(dims, boundaries)
}

/// `H_d(K, K')` for `d = 0..=ℓ-2`.
pub fn relative_homology(pair: &SimplicialPair) -> Vec<HomologyGroup> {
    let mut h = pair.relative_complex().homology();
    h.resize(pair.ell.saturating_sub(1), HomologyGroup::default());
    h
}

/// Reduced homology `H̃_d` for `d = 0..=max dim` (empty for an empty set).
pub fn reduced_homology(complex: &BTreeSet<Simplex>) -> Vec<HomologyGroup> {
    if complex.is_empty() {
        return Vec::new();
    }
    let cells: Vec<&Simplex> = complex.iter().collect();
    let mut h = simplicial_complex(&cells, 0, true, |_| true).homology();
    // degree 0 of the augmented complex is H̃_{-1}, zero for nonempty K
    h.remove(0);
    h
}

/// One degree of the comparison between `MH_k^ℓ(a,b)` and the homology of
/// the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceRow {
    pub k: usize,
    pub magnitude: HomologyGroup,
    pub complex: HomologyGroup,
}

impl CorrespondenceRow {
    pub fn holds(&self) -> bool {
        self.magnitude == self.complex
    }
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub a: usize,
    pub b: usize,
    pub ell: usize,
    pub rows: Vec<CorrespondenceRow>,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(CorrespondenceRow::holds)
    }
}

/// Compares `MH_k^ℓ(a,b)` with `H_{k-2}(K, K')` for `3 <= k <= ℓ`, and for
/// `k = 2` with `H_0(K, K')` when `d(a,b) < ℓ` or with `H̃_0(K)` when
/// `d(a,b) = ℓ`. Both sides are computed from scratch.
pub fn verify_ai_correspondence(
    g: &Graph,
    a: usize,
    b: usize,
    ell: usize,
    opts: &HomologyOptions,
) -> Result<CorrespondenceReport> {
    assert!(ell >= 3, "the pair is defined for ℓ >= 3");
    let mh = magnitude_chain_complex(g, ell, Some((a, b)), opts)?
        .complex
        .homology();
    let pair = build_pair(g, a, b, ell);
    let rel = relative_homology(&pair);
    let reduced_h0 = || {
        reduced_homology(&pair.k)
            .into_iter()
            .next()
            .unwrap_or_default()
    };
    let rows = (2..=ell)
        .map(|k| {
            let complex = if k == 2 && g.dist(a, b) == ell {
                reduced_h0()
            } else {
                rel[k - 2].clone()
            };
            CorrespondenceRow {
                k,
                magnitude: mh[k].clone(),
                complex,
            }
        })
        .collect();
    Ok(CorrespondenceReport { a, b, ell, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;

    #[test]
    fn single_edge_path() {
        let g = fixtures::complete(2);
        assert_eq!(enumerate_paths(&g, 0, 1, 1), vec![Sequence(vec![0, 1])]);
    }

    #[test]
    fn c4_closed_paths() {
        let g = fixtures::c4();
        let paths = enumerate_paths(&g, A, A, 4);
        assert_eq!(paths.len(), 8);
        let pair = build_pair(&g, A, A, 4);
        let mut maximal: Vec<_> = pair.maximal_faces().into_iter().cloned().collect();
        maximal.sort();
        let mut expected: Vec<_> = [
            [B, A, B],
            [B, A, D],
            [B, C, B],
            [B, C, D],
            [D, A, B],
            [D, A, D],
            [D, C, B],
            [D, C, D],
        ]
        .iter()
        .map(|v| Simplex::from_pairs(&[(v[0], 1), (v[1], 2), (v[2], 3)]))
        .collect();
        expected.sort();
        assert_eq!(maximal, expected);
    }

    #[test]
    fn c4_octahedron() {
        let g = fixtures::c4();
        let pair = build_pair(&g, A, A, 4);
        assert_eq!(SimplicialPair::f_vector(&pair.k), vec![6, 12, 8]);
        let expected: BTreeSet<Simplex> = [
            vec![(B, 1)],
            vec![(A, 2)],
            vec![(B, 3)],
            vec![(D, 3)],
            vec![(D, 1)],
            vec![(A, 2), (B, 3)],
            vec![(B, 1), (B, 3)],
            vec![(B, 1), (A, 2)],
            vec![(A, 2), (D, 3)],
            vec![(D, 1), (A, 2)],
            vec![(D, 1), (D, 3)],
        ]
        .iter()
        .map(|p| Simplex::from_pairs(p))
        .collect();
        assert_eq!(pair.kprime, expected);
        assert!(pair.is_closed());
        assert!(pair.positions_are_cumulative(&g));

        let rel = relative_homology(&pair);
        assert_eq!(
            rel,
            vec![
                HomologyGroup::default(),
                HomologyGroup::default(),
                HomologyGroup::free(3)
            ]
        );
        let red = reduced_homology(&pair.k);
        assert_eq!(
            red,
            vec![
                HomologyGroup::default(),
                HomologyGroup::default(),
                HomologyGroup::free(1)
            ]
        );
    }

    #[test]
    fn complete_graph_maximal_boundaries_in_kprime() {
        let g = fixtures::complete(4);
        for a in 0..4 {
            for b in 0..4 {
                let pair = build_pair(&g, a, b, 3);
                for m in pair.maximal_faces() {
                    for t in 0..m.elements().len() {
                        if let Some(f) = m.face(t) {
                            assert!(pair.kprime.contains(&f), "{m} face {f}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn path_graph_membership_matches_subset_oracle() {
        // independent oracle: a positioned set is in K iff some path has the
        // right vertex at every listed position
        let g = fixtures::path(3);
        for (a, b) in [(0, 1), (1, 2), (1, 0)] {
            let pair = build_pair(&g, a, b, 3);
            let paths = enumerate_paths(&g, a, b, 3);
            for v1 in 0..3 {
                for v2 in 0..3 {
                    for pos in [vec![(v1, 1)], vec![(v1, 2)], vec![(v1, 1), (v2, 2)]] {
                        let s = Simplex::from_pairs(&pos);
                        let member = paths.iter().any(|p| {
                            s.elements()
                                .iter()
                                .all(|e| p.points()[e.position] == e.vertex)
                        });
                        assert_eq!(pair.k.contains(&s), member, "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn empty_pair() {
        let g = fixtures::c4();
        let pair = build_pair(&g, A, A, 3);
        assert!(pair.k.is_empty());
        assert!(relative_homology(&pair).iter().all(HomologyGroup::is_zero));
        assert!(reduced_homology(&pair.k).is_empty());
        let report = verify_ai_correspondence(&g, A, A, 3, &HomologyOptions::default()).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn reduced_homology_small() {
        let point: BTreeSet<_> = [Simplex::from_pairs(&[(0, 1)])].into_iter().collect();
        assert!(reduced_homology(&point).iter().all(HomologyGroup::is_zero));
        let two: BTreeSet<_> = [
            Simplex::from_pairs(&[(0, 1)]),
            Simplex::from_pairs(&[(1, 1)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(reduced_homology(&two), vec![HomologyGroup::free(1)]);
    }

    #[test]
    fn shorter_paths_lie_in_kprime_when_edges_are_in_triangles() {
        for g in [fixtures::complete(4), fixtures::g1()] {
            for a in g.vertices() {
                for b in g.vertices() {
                    for ell in 4..=5 {
                        let shorter = build_pair(&g, a, b, ell - 1);
                        let pair = build_pair(&g, a, b, ell);
                        assert!(shorter.k.is_subset(&pair.kprime));
                    }
                }
            }
        }
    }

    #[test]
    fn c4_correspondence() {
        let g = fixtures::c4();
        let r = verify_ai_correspondence(&g, A, A, 4, &HomologyOptions::default()).unwrap();
        assert!(r.holds());
        assert_eq!(r.rows.last().unwrap().magnitude, HomologyGroup::free(3));
    }

    #[test]
    fn relative_euler_characteristic() {
        let g = fixtures::g3();
        for a in g.vertices() {
            for b in g.vertices() {
                let pair = build_pair(&g, a, b, 4);
                let c = pair.relative_complex();
                assert_eq!(c.squares_to_zero(), Some(true));
                let betti: i64 = c
                    .homology()
                    .iter()
                    .enumerate()
                    .map(|(d, h)| {
                        if d % 2 == 0 {
                            h.rank as i64
                        } else {
                            -(h.rank as i64)
                        }
                    })
                    .sum();
                assert_eq!(betti, c.euler_characteristic());
            }
        }
    }
}
