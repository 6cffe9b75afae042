//! S-structures and the insertion/deletion matching they drive on
//! `K_ℓ(a,b) \ K'_ℓ(a,b)`.
//!
//! A cell of `K \ K'` is identified with its endpoint-extended sequence
//! `x = (a, x_1, ..., x_{k-1}, b)`; the positions are the cumulative
//! distances. With `i(x)` the first place where `x` contains a designated
//! pattern and `j(x)` the first gap of length 2, cells split into
//! `A` (`i = j = ∞`), `P'` (`i > j`) and `P''` (`i < j`). The map `f`
//! fills the first gap of a `P'` cell with its designated middle vertex; the
//! inverse `g` deletes the vertex after `i(y)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use log::debug;

use crate::ai_complex::{build_pair, PositionedVertex, Simplex, SimplicialPair};
use crate::error::{Error, Result};
use crate::graph::{apex, diameter, is_pawful, Graph};
use crate::morse::{FacePoset, Matching};

/// The choice functions of a pawful graph: `p(x, y, z)` is adjacent to all
/// of `x, y, z` for `d(x,y) = d(y,z) = 2`, `d(x,z) = 1`, and `q(x, y)` is a
/// common neighbour of a pair at distance 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelectorMaps {
    pub p: BTreeMap<(usize, usize, usize), usize>,
    pub q: BTreeMap<(usize, usize), usize>,
}

/// Selectors choosing the smallest qualifying vertex.
pub fn default_selectors(g: &Graph) -> Result<SelectorMaps> {
    if let Some(v) = is_pawful(g).violation {
        return Err(Error::NotPawful(v));
    }
    let mut sel = SelectorMaps::default();
    for x in g.vertices() {
        for y in g.vertices() {
            if g.dist(x, y) != 2 {
                continue;
            }
            sel.q.insert((x, y), g.common_neighbors(x, y)[0]);
            for z in g.vertices() {
                if g.dist(y, z) == 2 && g.dist(x, z) == 1 {
                    let v = apex(g, x, y, z).expect("pawful graphs have apexes");
                    sel.p.insert((x, y, z), v);
                }
            }
        }
    }
    Ok(sel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Pawful,
    General,
}

/// Designated triples `(β, γ, δ)` (a middle vertex `γ` for `d(β,δ) = 2`) and
/// quadruples `(α, β, γ, δ)` (a middle vertex `γ` for `d(β,δ) = 2` in the
/// context of the preceding `α`). 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SStructure {
    pub triples: BTreeSet<[usize; 3]>,
    pub quads: BTreeSet<[usize; 4]>,
    pub origin: Origin,
}

impl SStructure {
    pub fn empty(origin: Origin) -> Self {
        SStructure {
            triples: BTreeSet::new(),
            quads: BTreeSet::new(),
            origin,
        }
    }

    /// Structure from 1-based tuples.
    pub fn from_one_based(triples: &[[usize; 3]], quads: &[[usize; 4]]) -> Self {
        SStructure {
            triples: triples.iter().map(|t| t.map(|v| v - 1)).collect(),
            quads: quads.iter().map(|q| q.map(|v| v - 1)).collect(),
            origin: Origin::General,
        }
    }

    /// Quadruples with `d(α, γ) = 2`.
    pub fn far_quads(&self, g: &Graph) -> Vec<[usize; 4]> {
        self.quads
            .iter()
            .filter(|q| g.dist(q[0], q[2]) == 2)
            .copied()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.triples.len() + self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `S` built from pawful selectors: `γ = α` when `d(α,δ) = 1`,
/// `γ = p(α, δ, β)` when `d(α,δ) = 2`, and triples `(β, q(β,δ), δ)`.
pub fn build_pawful_s(g: &Graph, sel: &SelectorMaps) -> SStructure {
    let mut s = SStructure::empty(Origin::Pawful);
    for (&(b, d), &c) in &sel.q {
        s.triples.insert([b, c, d]);
    }
    for beta in g.vertices() {
        for delta in g.vertices() {
            if g.dist(beta, delta) != 2 {
                continue;
            }
            for &alpha in g.neighbors(beta) {
                let gamma = match g.dist(alpha, delta) {
                    1 => alpha,
                    _ => sel.p[&(alpha, delta, beta)],
                };
                s.quads.insert([alpha, beta, gamma, delta]);
            }
        }
    }
    s
}

/// Which rule defines `i(x)` when both a leading triple and a later
/// quadruple match.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precedence {
    /// A leading triple gives `i(x) = 0`.
    #[default]
    TripleFirst,
    /// The first quadruple wins; the triple only applies when there is none.
    QuadFirst,
}

/// `i(x)` and `j(x)`; `None` stands for `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceIndices {
    pub i: Option<usize>,
    pub j: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellClass {
    /// `i = j = ∞`: critical.
    A,
    /// `i > j`: the lower cell of a pair.
    Lower,
    /// `i < j`: the upper cell of a pair.
    Upper,
}

impl SequenceIndices {
    pub fn class(&self) -> CellClass {
        let inf = |v: Option<usize>| v.unwrap_or(usize::MAX);
        match (self.i, self.j) {
            (None, None) => CellClass::A,
            _ if inf(self.i) > inf(self.j) => CellClass::Lower,
            _ => {
                debug_assert!(inf(self.i) < inf(self.j), "i(x) = j(x) is impossible");
                CellClass::Upper
            }
        }
    }
}

/// Indices of an endpoint-extended sequence `x_0, ..., x_k`.
pub fn sequence_indices(
    g: &Graph,
    x: &[usize],
    s: &SStructure,
    precedence: Precedence,
) -> SequenceIndices {
    let k = x.len() - 1;
    let triple = k >= 2 && s.triples.contains(&[x[0], x[1], x[2]]);
    let quad =
        (1..k.saturating_sub(1)).find(|&i| s.quads.contains(&[x[i - 1], x[i], x[i + 1], x[i + 2]]));
    let i = match precedence {
        Precedence::TripleFirst if triple => Some(0),
        Precedence::TripleFirst => quad,
        Precedence::QuadFirst => quad.or(triple.then_some(0)),
    };
    let j = (0..k).find(|&j| g.dist(x[j], x[j + 1]) == 2);
    SequenceIndices { i, j }
}

/// The simplex of an endpoint-extended sequence, positions being cumulative
/// distances. `None` when there are no interior points.
pub fn simplex_of_sequence(g: &Graph, x: &[usize]) -> Option<Simplex> {
    if x.len() < 3 {
        return None;
    }
    let mut pos = 0;
    let elems = x
        .windows(2)
        .take(x.len() - 2)
        .map(|w| {
            pos += g.dist(w[0], w[1]);
            PositionedVertex {
                vertex: w[1],
                position: pos,
            }
        })
        .collect();
    Some(Simplex::new(elems))
}

/// Middle-vertex lookups keyed by the context of a gap.
struct Lookup {
    triples: HashMap<(usize, usize), usize>,
    quads: HashMap<(usize, usize, usize), usize>,
}

impl Lookup {
    fn new(s: &SStructure) -> Result<Self> {
        let mut triples = HashMap::new();
        for &[b, c, d] in &s.triples {
            if let Some(old) = triples.insert((b, d), c) {
                return Err(Error::InvalidCertificate(format!(
                    "two middle vertices {} and {} for the pair ({}, {})",
                    old + 1,
                    c + 1,
                    b + 1,
                    d + 1
                )));
            }
        }
        let mut quads = HashMap::new();
        for &[a, b, c, d] in &s.quads {
            if let Some(old) = quads.insert((a, b, d), c) {
                return Err(Error::InvalidCertificate(format!(
                    "two middle vertices {} and {} for ({}, {}, _, {})",
                    old + 1,
                    c + 1,
                    a + 1,
                    b + 1,
                    d + 1
                )));
            }
        }
        Ok(Lookup { triples, quads })
    }
}

/// A matching on `K_ℓ(a,b) \ K'_ℓ(a,b)` together with the data it was built
/// from.
#[derive(Clone, Debug)]
pub struct MatchingBuild {
    pub pair: SimplicialPair,
    pub poset: FacePoset,
    pub matching: Matching,
    /// The cells of `A`, which are exactly the unmatched ones.
    pub critical: Vec<Simplex>,
}

fn show(x: &[usize]) -> String {
    let v: Vec<String> = x.iter().map(|v| (v + 1).to_string()).collect();
    format!("({})", v.join(","))
}

/// Builds the matching `{(x, f(x)) : x ∈ P'}` and checks `g ∘ f = id` on
/// `P'` and `f ∘ g = id` on `P''` element by element.
///
/// Fails with [`Error::InvalidCertificate`] when `s` has no entry for some
/// gap, or when `f`/`g` leave `P''`/`P'` (possible only for an `s` that
/// violates the structure conditions).
pub fn build_matching(
    g: &Graph,
    a: usize,
    b: usize,
    ell: usize,
    s: &SStructure,
    precedence: Precedence,
) -> Result<MatchingBuild> {
    if ell < 3 {
        return Err(Error::InvalidArgument(format!(
            "matchings are built for ℓ >= 3, got {ell}"
        )));
    }
    if diameter(g) > 2 {
        return Err(Error::InvalidArgument("graph diameter exceeds 2".into()));
    }
    let lookup = Lookup::new(s)?;
    let pair = build_pair(g, a, b, ell);
    let poset = FacePoset::new(pair.relative_cells().cloned());

    let mut critical = Vec::new();
    let mut lower = Vec::new();
    let mut upper: HashSet<Simplex> = HashSet::new();
    for cell in poset.cells() {
        let x = cell.extended_sequence(a, b);
        match sequence_indices(g, &x, s, precedence).class() {
            CellClass::A => critical.push(cell.clone()),
            CellClass::Lower => lower.push(cell.clone()),
            CellClass::Upper => {
                upper.insert(cell.clone());
            }
        }
    }

    let bad = |msg: String| Err(Error::InvalidCertificate(msg));
    let mut f_map: HashMap<Simplex, Simplex> = HashMap::with_capacity(lower.len());
    for cell in &lower {
        let x = cell.extended_sequence(a, b);
        let j = sequence_indices(g, &x, s, precedence)
            .j
            .expect("P' has a gap");
        let z = if j == 0 {
            lookup.triples.get(&(x[0], x[1])).copied()
        } else {
            lookup.quads.get(&(x[j - 1], x[j], x[j + 1])).copied()
        };
        let Some(z) = z else {
            return bad(format!(
                "no middle vertex for the gap at {j} in {}",
                show(&x)
            ));
        };
        let mut y = x.clone();
        y.insert(j + 1, z);
        let image = simplex_of_sequence(g, &y).expect("nonempty");
        if !upper.contains(&image) {
            return bad(format!("f{} = {} is not in P''", show(&x), show(&y)));
        }
        if delete_after_i(g, &y, s, precedence) != x {
            return bad(format!("g(f{}) differs from the original", show(&x)));
        }
        f_map.insert(cell.clone(), image);
    }
    for cell in &upper {
        let y = cell.extended_sequence(a, b);
        let x = delete_after_i(g, &y, s, precedence);
        let back = simplex_of_sequence(g, &x).and_then(|pre| f_map.get(&pre));
        if back != Some(cell) {
            return bad(format!("f(g{}) differs from the original", show(&y)));
        }
    }
    debug!(
        "({}, {}) ℓ={ell}: |P|={} |A|={} |P'|={}",
        a + 1,
        b + 1,
        poset.len(),
        critical.len(),
        lower.len()
    );
    let matching = Matching {
        pairs: lower
            .into_iter()
            .map(|x| {
                let y = f_map[&x].clone();
                (x, y)
            })
            .collect(),
    };
    Ok(MatchingBuild {
        pair,
        poset,
        matching,
        critical,
    })
}

/// `g(y)`: `y` without `y_{i(y)+1}`.
fn delete_after_i(g: &Graph, y: &[usize], s: &SStructure, precedence: Precedence) -> Vec<usize> {
    let i = sequence_indices(g, y, s, precedence)
        .i
        .expect("P'' has a finite i");
    let mut x = y.to_vec();
    x.remove(i + 1);
    x
}

/// Outcome of [`check_star_property`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarProperty {
    Holds,
    /// `d(α,β) = 1`, `d(β,δ) = 2`, and every common neighbour of `β` and
    /// `δ` is at distance 2 from `α`.
    Fails {
        alpha: usize,
        beta: usize,
        delta: usize,
    },
}

/// Whether every `(α, β, δ)` with `d(α,β) = 1`, `d(β,δ) = 2` has a middle
/// vertex `γ` of `β, δ` with `d(α, γ) <= 1`. Reports the lexicographically
/// first failure.
pub fn check_star_property(g: &Graph) -> Result<StarProperty> {
    if diameter(g) > 2 {
        return Err(Error::InvalidArgument("graph diameter exceeds 2".into()));
    }
    for alpha in g.vertices() {
        for &beta in g.neighbors(alpha) {
            for delta in g.vertices() {
                if g.dist(beta, delta) == 2
                    && g.common_neighbors(beta, delta)
                        .iter()
                        .all(|&c| g.dist(alpha, c) == 2)
                {
                    return Ok(StarProperty::Fails { alpha, beta, delta });
                }
            }
        }
    }
    Ok(StarProperty::Holds)
}

/// The first condition an S-structure fails. Vertices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SViolation {
    Diameter,
    /// (i): a triple that is not a path `a - b - c` with `d(a,c) = 2`.
    NotInX([usize; 3]),
    /// (i): a quadruple that is not a path with `d(β,δ) = 2`.
    NotInY([usize; 4]),
    /// (i): a pair at distance 2 with no triple.
    MissingTriple {
        a: usize,
        c: usize,
    },
    /// (i): some `(α, β, δ)` with no quadruple.
    MissingQuad {
        alpha: usize,
        beta: usize,
        delta: usize,
    },
    /// (i): two tuples over the same key, so `f` is not a map.
    NotAMap(String),
    /// (ii): `quad = (α,β,γ,δ)` and `(∗,α,β,γ)` is also a quadruple.
    QuadOverlap {
        quad: [usize; 4],
        other: [usize; 4],
    },
    /// (ii): `quad = (α,β,γ,δ)` and `(α,β,γ)` is a triple.
    TripleOverlap {
        quad: [usize; 4],
    },
    /// (iii): `d(α,γ) = 2` but `alternative` is another middle vertex of
    /// `β, δ`.
    NotUnique {
        quad: [usize; 4],
        alternative: usize,
    },
}

impl SViolation {
    /// The numbered condition that fails; 0 for the diameter precondition.
    pub fn condition(&self) -> u8 {
        match self {
            SViolation::Diameter => 0,
            SViolation::NotInX(_)
            | SViolation::NotInY(_)
            | SViolation::MissingTriple { .. }
            | SViolation::MissingQuad { .. }
            | SViolation::NotAMap(_) => 1,
            SViolation::QuadOverlap { .. } | SViolation::TripleOverlap { .. } => 2,
            SViolation::NotUnique { .. } => 3,
        }
    }
}

fn one_based<const N: usize>(t: &[usize; N]) -> String {
    show(t)
}

impl fmt::Display for SViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SViolation::Diameter => write!(f, "graph diameter exceeds 2"),
            SViolation::NotInX(t) => write!(f, "(i): {} is not in X", one_based(t)),
            SViolation::NotInY(q) => write!(f, "(i): {} is not in Y", one_based(q)),
            SViolation::MissingTriple { a, c } => {
                write!(f, "(i): no triple for ({}, {})", a + 1, c + 1)
            }
            SViolation::MissingQuad { alpha, beta, delta } => write!(
                f,
                "(i): no quadruple for ({}, {}, {})",
                alpha + 1,
                beta + 1,
                delta + 1
            ),
            SViolation::NotAMap(m) => write!(f, "(i): {m}"),
            SViolation::QuadOverlap { quad, other } => write!(
                f,
                "(ii): {} and {} overlap",
                one_based(quad),
                one_based(other)
            ),
            SViolation::TripleOverlap { quad } => write!(
                f,
                "(ii): {} starts with a designated triple",
                one_based(quad)
            ),
            SViolation::NotUnique { quad, alternative } => write!(
                f,
                "(iii): {} has d(α,γ) = 2 but {} is another middle vertex",
                one_based(quad),
                alternative + 1
            ),
        }
    }
}

fn in_x(g: &Graph, [a, b, c]: [usize; 3]) -> bool {
    g.adjacent(a, b) && g.adjacent(b, c) && g.dist(a, c) == 2
}

fn in_y(g: &Graph, [a, b, c, d]: [usize; 4]) -> bool {
    g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) && g.dist(b, d) == 2
}

/// Checks that the triples form a section `f₁` of `X → X'`, the quadruples a
/// section `f₂` of `Y → Y'`, and conditions (ii) and (iii).
pub fn verify_s_structure(g: &Graph, s: &SStructure) -> Result<(), SViolation> {
    if diameter(g) > 2 {
        return Err(SViolation::Diameter);
    }
    if let Some(t) = s.triples.iter().find(|t| !in_x(g, **t)) {
        return Err(SViolation::NotInX(*t));
    }
    if let Some(q) = s.quads.iter().find(|q| !in_y(g, **q)) {
        return Err(SViolation::NotInY(*q));
    }
    let lookup = Lookup::new(s).map_err(|e| SViolation::NotAMap(e.to_string()))?;
    for a in g.vertices() {
        for c in g.vertices() {
            if g.dist(a, c) != 2 {
                continue;
            }
            if !lookup.triples.contains_key(&(a, c)) {
                return Err(SViolation::MissingTriple { a, c });
            }
            for &alpha in g.neighbors(a) {
                if !lookup.quads.contains_key(&(alpha, a, c)) {
                    return Err(SViolation::MissingQuad {
                        alpha,
                        beta: a,
                        delta: c,
                    });
                }
            }
        }
    }
    let by_suffix: HashMap<[usize; 3], [usize; 4]> =
        s.quads.iter().map(|q| ([q[1], q[2], q[3]], *q)).collect();
    for q in &s.quads {
        let prefix = [q[0], q[1], q[2]];
        if let Some(other) = by_suffix.get(&prefix) {
            return Err(SViolation::QuadOverlap {
                quad: *q,
                other: *other,
            });
        }
        if s.triples.contains(&prefix) {
            return Err(SViolation::TripleOverlap { quad: *q });
        }
    }
    for q in s.far_quads(g) {
        if let Some(&alt) = g.common_neighbors(q[1], q[3]).iter().find(|&&c| c != q[2]) {
            return Err(SViolation::NotUnique {
                quad: q,
                alternative: alt,
            });
        }
    }
    for &[b, c, d] in &s.triples {
        for &alpha in g.neighbors(b) {
            if let Some(&c2) = lookup.quads.get(&(alpha, b, d)) {
                if c2 != c {
                    debug!(
                        "triple {} and quadruple {} choose different middles",
                        show(&[b, c, d]),
                        show(&[alpha, b, c2, d])
                    );
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(SStructure),
    /// The whole search tree was explored without success.
    Exhausted,
}

#[derive(Clone, Copy, Debug)]
enum Var {
    /// Middle vertex for `(a, c)` at distance 2.
    Pair(usize, usize),
    /// `γ` for `(α, β, δ)`.
    Quad(usize, usize, usize),
}

struct Search<'g> {
    g: &'g Graph,
    vars: Vec<Var>,
    domains: Vec<Vec<usize>>,
    value: Vec<Option<usize>>,
    pair_var: HashMap<(usize, usize), usize>,
    /// quadruple variables keyed by `(β, δ)`
    quad_vars: HashMap<(usize, usize), Vec<usize>>,
    /// prefixes `(α, β, γ)` of assigned quadruples with `d(α,γ) = 2`
    far: HashMap<(usize, usize, usize), usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn consistent(&self, var: usize, v: usize) -> bool {
        match self.vars[var] {
            Var::Pair(a, c) => !self.far.contains_key(&(a, v, c)),
            Var::Quad(alpha, beta, delta) => {
                // (α,β,v,δ) as the (∗,·,·,·) of an assigned far quadruple
                if self.far.contains_key(&(beta, v, delta)) {
                    return false;
                }
                if self.g.dist(alpha, v) != 2 {
                    return true;
                }
                if self.pair_var.get(&(alpha, v)).and_then(|&p| self.value[p]) == Some(beta) {
                    return false;
                }
                let clash = self
                    .quad_vars
                    .get(&(alpha, v))
                    .is_some_and(|vs| vs.iter().any(|&w| self.value[w] == Some(beta)));
                !clash
            }
        }
    }

    fn set(&mut self, var: usize, v: Option<usize>) {
        if let Var::Quad(alpha, beta, _) = self.vars[var] {
            let old = self.value[var];
            for (val, add) in [(old, false), (v, true)] {
                let Some(gamma) = val else { continue };
                if self.g.dist(alpha, gamma) != 2 {
                    continue;
                }
                let key = (alpha, beta, gamma);
                if add {
                    *self.far.entry(key).or_default() += 1;
                } else if let Some(c) = self.far.get_mut(&key) {
                    *c -= 1;
                    if *c == 0 {
                        self.far.remove(&key);
                    }
                }
            }
        }
        self.value[var] = v;
    }

    fn run(&mut self) -> Result<bool> {
        // fewest consistent candidates first
        let mut best: Option<(usize, Vec<usize>)> = None;
        for var in 0..self.vars.len() {
            if self.value[var].is_some() {
                continue;
            }
            let cands: Vec<usize> = self.domains[var]
                .iter()
                .copied()
                .filter(|&v| self.consistent(var, v))
                .collect();
            let better = best.as_ref().is_none_or(|(_, b)| cands.len() < b.len());
            if better {
                let done = cands.is_empty();
                best = Some((var, cands));
                if done {
                    break;
                }
            }
        }
        let Some((var, cands)) = best else {
            return Ok(true);
        };
        for v in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudget(self.budget));
            }
            self.set(var, Some(v));
            if self.run()? {
                return Ok(true);
            }
            self.set(var, None);
        }
        Ok(false)
    }
}

/// Backtracking search for an S-structure. Each pair at distance 2 needs a
/// middle vertex and each `(α, β, δ)` a `γ`; by (iii) a `γ` with
/// `d(α,γ) = 2` is only allowed when it is the unique middle vertex, and
/// (ii) forbids the resulting overlaps. At most `budget` assignments are
/// tried.
pub fn search_s_structure(g: &Graph, budget: u64) -> Result<SearchOutcome> {
    if diameter(g) > 2 {
        return Err(Error::InvalidArgument("graph diameter exceeds 2".into()));
    }
    let mut vars = Vec::new();
    let mut domains = Vec::new();
    for a in g.vertices() {
        for c in g.vertices() {
            if g.dist(a, c) != 2 {
                continue;
            }
            let mids = g.common_neighbors(a, c);
            vars.push(Var::Pair(a, c));
            domains.push(mids.clone());
            for &alpha in g.neighbors(a) {
                let dom = if mids.len() == 1 {
                    mids.clone()
                } else {
                    mids.iter()
                        .copied()
                        .filter(|&m| g.dist(alpha, m) <= 1)
                        .collect()
                };
                vars.push(Var::Quad(alpha, a, c));
                domains.push(dom);
            }
        }
    }
    let mut pair_var = HashMap::new();
    let mut quad_vars: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, v) in vars.iter().enumerate() {
        match *v {
            Var::Pair(a, c) => {
                pair_var.insert((a, c), i);
            }
            Var::Quad(_, b, d) => quad_vars.entry((b, d)).or_default().push(i),
        }
    }
    let n = vars.len();
    let mut search = Search {
        g,
        vars,
        domains,
        value: vec![None; n],
        pair_var,
        quad_vars,
        far: HashMap::new(),
        nodes: 0,
        budget,
    };
    let found = search.run()?;
    debug!("S search: {} variables, {} nodes", n, search.nodes);
    if !found {
        return Ok(SearchOutcome::Exhausted);
    }
    let mut s = SStructure::empty(Origin::General);
    for (var, v) in search.vars.iter().zip(&search.value) {
        let v = v.expect("complete assignment");
        match *var {
            Var::Pair(a, c) => s.triples.insert([a, v, c]),
            Var::Quad(alpha, b, d) => s.quads.insert([alpha, b, v, d]),
        };
    }
    Ok(SearchOutcome::Found(s))
}

/// Text form: `T β γ δ` and `Q α β γ δ` lines, 1-based, triples first.
pub fn serialize_s(s: &SStructure) -> String {
    let mut out = String::new();
    for t in &s.triples {
        out.push_str(&format!("T {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
    }
    for q in &s.quads {
        out.push_str(&format!(
            "Q {} {} {} {}\n",
            q[0] + 1,
            q[1] + 1,
            q[2] + 1,
            q[3] + 1
        ));
    }
    out
}

/// Parses the text form, checking every tuple against `X` or `Y` of `g`.
/// Blank lines and `#` comments are ignored.
pub fn parse_s(text: &str, g: &Graph) -> Result<SStructure> {
    let mut s = SStructure::empty(Origin::General);
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::SFile {
            line: ln + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let tag = fields.next().expect("nonempty line");
        let nums = fields
            .map(|f| {
                let v: usize = f.parse().map_err(|_| err(format!("bad vertex {f:?}")))?;
                if v == 0 || v > g.vertex_count() {
                    return Err(err(format!("vertex {v} out of range")));
                }
                Ok(v - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        let fresh = match (tag, nums.as_slice()) {
            ("T", &[b, c, d]) => {
                if !in_x(g, [b, c, d]) {
                    return Err(err(format!(
                        "{} is not a path b-c-d with d(b,d) = 2",
                        show(&nums)
                    )));
                }
                s.triples.insert([b, c, d])
            }
            ("Q", &[a, b, c, d]) => {
                if !in_y(g, [a, b, c, d]) {
                    return Err(err(format!(
                        "{} is not a path a-b-c-d with d(b,d) = 2",
                        show(&nums)
                    )));
                }
                s.quads.insert([a, b, c, d])
            }
            ("T", _) => return Err(err("a T line has three vertices".into())),
            ("Q", _) => return Err(err("a Q line has four vertices".into())),
            _ => return Err(err(format!("unknown tag {tag:?}"))),
        };
        if !fresh {
            return Err(err(format!("duplicate tuple {}", show(&nums))));
        }
    }
    Ok(s)
}
