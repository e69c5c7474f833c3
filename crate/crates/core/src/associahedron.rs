//! Cells of the associahedra `K_n` as planar trees, their cellular boundary,
//! the Tamari order on vertices and the signed cellular diagonal.
//!
//! A cell of `K_n` is a planar rooted tree with `n` leaves whose internal
//! nodes all have at least two children. The corolla is the top cell,
//! binary trees are vertices.
//!
//! Orientation: the boundary of the corolla with `n` leaves is
//!
//! ```text
//! ∂c_n = - Σ_{1≤k≤n-2} Σ_{0≤i≤n-k-1} (-1)^{k(n+i+1)} c_{n-k} ∘_i c_{k+1}
//! ```
//!
//! where `c_{n-k} ∘_i c_{k+1}` grafts a corolla with `k+1` leaves above the
//! `(i+1)`-st leaf. This makes `t ↦ ψ(t)` a chain map exactly when the
//! quadratic A∞ relations hold. Boundaries of general trees follow by the
//! Leibniz rule for operadic composition.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{is_odd, q, Graded, TensorElement, Q};
use crate::linalg::{self, SparseVec};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

/// A cellular chain: tensor-arity one combinations of trees.
pub type Chain = TensorElement<PlanarTree>;
/// A chain of `K_n × K_n`: tensor-arity two combinations of trees.
pub type BiChain = TensorElement<PlanarTree>;

impl Graded for PlanarTree {
    fn degree(&self) -> i64 {
        self.dimension() as i64
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => write!(f, "*"),
            PlanarTree::Node(ch) => {
                write!(f, "(")?;
                for c in ch {
                    write!(f, "{}", c)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for PlanarTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlanarTree::parse(s)
    }
}

impl PlanarTree {
    pub fn parse(text: &str) -> Result<Self> {
        let bytes: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let err = |pos: usize, msg: &str| Error::TreeSyntax { text: text.to_string(), pos, msg: msg.to_string() };
        fn go(b: &[u8], pos: &mut usize) -> std::result::Result<PlanarTree, (usize, &'static str)> {
            match b.get(*pos) {
                Some(b'*') => {
                    *pos += 1;
                    Ok(PlanarTree::Leaf)
                }
                Some(b'(') => {
                    *pos += 1;
                    let mut ch = Vec::new();
                    loop {
                        match b.get(*pos) {
                            Some(b')') => {
                                *pos += 1;
                                break;
                            }
                            None => return Err((*pos, "unclosed `(`")),
                            _ => ch.push(go(b, pos)?),
                        }
                    }
                    if ch.len() < 2 {
                        return Err((*pos, "internal node with fewer than two children"));
                    }
                    Ok(PlanarTree::Node(ch))
                }
                Some(_) => Err((*pos, "expected `*` or `(`")),
                None => Err((*pos, "unexpected end of input")),
            }
        }
        let mut pos = 0;
        let t = go(&bytes, &mut pos).map_err(|(p, m)| err(p, m))?;
        if pos != bytes.len() {
            return Err(err(pos, "trailing input"));
        }
        Ok(t)
    }

    pub fn corolla(n: usize) -> Self {
        assert!(n >= 2, "corolla needs at least two leaves");
        PlanarTree::Node(vec![PlanarTree::Leaf; n])
    }

    pub fn left_comb(n: usize) -> Self {
        left_comb_of((0..n).map(|_| PlanarTree::Leaf).collect())
    }

    pub fn right_comb(n: usize) -> Self {
        right_comb_of((0..n).map(|_| PlanarTree::Leaf).collect())
    }

    pub fn arity(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(ch) => ch.iter().map(PlanarTree::arity).sum(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(ch) => 1 + ch.iter().map(PlanarTree::internal_nodes).sum::<usize>(),
        }
    }

    /// `Σ (children - 2)` over internal nodes, i.e. `n - 1 - #internal`.
    pub fn dimension(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(ch) => ch.len() - 2 + ch.iter().map(PlanarTree::dimension).sum::<usize>(),
        }
    }

    pub fn is_binary(&self) -> bool {
        match self {
            PlanarTree::Leaf => true,
            PlanarTree::Node(ch) => ch.len() == 2 && ch.iter().all(PlanarTree::is_binary),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PlanarTree::Leaf)
    }

    pub fn children(&self) -> &[PlanarTree] {
        match self {
            PlanarTree::Leaf => &[],
            PlanarTree::Node(ch) => ch,
        }
    }
}

fn left_comb_of(mut items: Vec<PlanarTree>) -> PlanarTree {
    let mut acc = items.remove(0);
    for it in items {
        acc = PlanarTree::Node(vec![acc, it]);
    }
    acc
}

fn right_comb_of(mut items: Vec<PlanarTree>) -> PlanarTree {
    let mut acc = items.pop().unwrap();
    while let Some(it) = items.pop() {
        acc = PlanarTree::Node(vec![it, acc]);
    }
    acc
}

fn require_cell(t: &PlanarTree) -> Result<()> {
    if t.is_leaf() {
        return Err(Error::Precondition("a single leaf is not a cell of any K_n".into()));
    }
    Ok(())
}

/// Every cell of `K_n` (all planar trees with `n` leaves), sorted.
pub fn all_cells(n: usize) -> Vec<PlanarTree> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<PlanarTree>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.as_ref().clone();
    }
    let mut out = Vec::new();
    if n >= 2 {
        // root with m children whose leaf counts form a composition of n
        fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
            if m == 1 {
                return vec![vec![n]];
            }
            let mut out = Vec::new();
            for first in 1..=n - (m - 1) {
                for mut rest in compositions(n - first, m - 1) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for m in 2..=n {
            for comp in compositions(n, m) {
                let options: Vec<Vec<PlanarTree>> = comp
                    .iter()
                    .map(|&k| if k == 1 { vec![PlanarTree::Leaf] } else { all_cells(k) })
                    .collect();
                for choice in cartesian(&options) {
                    out.push(PlanarTree::Node(choice));
                }
            }
        }
    }
    out.sort();
    cache.lock().unwrap().insert(n, Arc::new(out.clone()));
    out
}

pub fn vertices(n: usize) -> Vec<PlanarTree> {
    all_cells(n).into_iter().filter(PlanarTree::is_binary).collect()
}

fn cartesian(options: &[Vec<PlanarTree>]) -> Vec<Vec<PlanarTree>> {
    let mut acc: Vec<Vec<PlanarTree>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for o in opts {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

/// Codimension-one faces: insert one new internal node grouping a block of
/// `2..k-1` consecutive children of some node with `k` children.
pub fn faces(t: &PlanarTree) -> Result<Vec<PlanarTree>> {
    require_cell(t)?;
    if t.dimension() == 0 {
        return Err(Error::Precondition(format!("{} is a vertex and has no faces", t)));
    }
    fn go(t: &PlanarTree) -> Vec<PlanarTree> {
        let PlanarTree::Node(ch) = t else { return Vec::new() };
        let k = ch.len();
        let mut out = Vec::new();
        for size in 2..k {
            for start in 0..=k - size {
                let mut new = ch[..start].to_vec();
                new.push(PlanarTree::Node(ch[start..start + size].to_vec()));
                new.extend_from_slice(&ch[start + size..]);
                out.push(PlanarTree::Node(new));
            }
        }
        for (j, c) in ch.iter().enumerate() {
            for f in go(c) {
                let mut new = ch.clone();
                new[j] = f;
                out.push(PlanarTree::Node(new));
            }
        }
        out
    }
    let mut out = go(t);
    out.sort();
    out.dedup();
    Ok(out)
}

fn corolla_boundary_terms(m: usize) -> Vec<(usize, usize, i64)> {
    // (i, k, sign): inner node with k+1 children starting at child i
    let mut out = Vec::new();
    for k in 1..=m.saturating_sub(2) {
        for i in 0..=m - k - 1 {
            let e = (k * (m + i + 1)) as i64;
            out.push((i, k, if is_odd(e) { 1 } else { -1 }));
        }
    }
    out
}

fn tree_boundary(t: &PlanarTree) -> Chain {
    let mut out = Chain::zero(1);
    let PlanarTree::Node(ch) = t else { return out };
    let m = ch.len();
    let dims: Vec<i64> = ch.iter().map(|c| c.dimension() as i64).collect();
    // boundary of the children, Koszul sign from the children before
    let mut before = 0i64;
    for j in 0..m {
        if dims[j] > 0 {
            let dj = tree_boundary(&ch[j]);
            let s = if is_odd(before) { -Q::one() } else { Q::one() };
            for (w, c) in dj.terms() {
                let mut new = ch.clone();
                new[j] = w[0].clone();
                out.add_term(vec![PlanarTree::Node(new)], c * &s);
            }
        }
        before += dims[j];
    }
    // boundary of the root corolla, grafted
    let total: i64 = dims.iter().sum();
    for (i, k, s) in corolla_boundary_terms(m) {
        let right: i64 = dims[i + k + 1..].iter().sum();
        let mut sign = s;
        if is_odd(total) {
            sign = -sign;
        }
        if is_odd((k as i64 - 1) * right) {
            sign = -sign;
        }
        let mut new = ch[..i].to_vec();
        new.push(PlanarTree::Node(ch[i..=i + k].to_vec()));
        new.extend_from_slice(&ch[i + k + 1..]);
        out.add_term(vec![PlanarTree::Node(new)], q(sign));
    }
    out
}

/// Cellular boundary of a homogeneous chain of positive dimension.
pub fn boundary(c: &Chain) -> Result<Chain> {
    if c.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: c.arity() });
    }
    let dims = c.degrees();
    if dims.len() > 1 {
        return Err(Error::Precondition(format!("chain mixes dimensions {:?}", dims)));
    }
    if dims.first() == Some(&0) {
        return Err(Error::Precondition("boundary of a vertex chain".into()));
    }
    Ok(c.map_terms(1, |w| tree_boundary(&w[0])))
}

pub fn cell_boundary(t: &PlanarTree) -> Result<Chain> {
    require_cell(t)?;
    boundary(&Chain::basis(vec![t.clone()]))
}

/// `∂ ⊗ 1 + 1 ⊗ ∂` on chains of `K_n × K_n`, Koszul signed. Vertex factors
/// have zero boundary.
pub fn boundary2(x: &BiChain) -> BiChain {
    x.map_terms(2, |w| {
        let (a, b) = (&w[0], &w[1]);
        let mut out = BiChain::zero(2);
        for (fa, c) in tree_boundary(a).terms() {
            out.add_term(vec![fa[0].clone(), b.clone()], c.clone());
        }
        let s = if a.dimension() % 2 == 1 { -Q::one() } else { Q::one() };
        for (fb, c) in tree_boundary(b).terms() {
            out.add_term(vec![a.clone(), fb[0].clone()], c * &s);
        }
        out
    })
}

/// All cells contained in `t`: the trees that contract onto `t`, including
/// `t` itself.
pub fn refinements(t: &PlanarTree) -> Vec<PlanarTree> {
    fn go(t: &PlanarTree) -> Vec<PlanarTree> {
        let PlanarTree::Node(ch) = t else { return vec![PlanarTree::Leaf] };
        let child_options: Vec<Vec<PlanarTree>> = ch.iter().map(go).collect();
        let mut out = Vec::new();
        for shape in all_cells(ch.len()) {
            for choice in cartesian(&child_options) {
                out.push(graft(&shape, &mut choice.into_iter()));
            }
        }
        out
    }
    fn graft(shape: &PlanarTree, fill: &mut impl Iterator<Item = PlanarTree>) -> PlanarTree {
        match shape {
            PlanarTree::Leaf => fill.next().unwrap(),
            PlanarTree::Node(ch) => PlanarTree::Node(ch.iter().map(|c| graft(c, fill)).collect()),
        }
    }
    let mut out = go(t);
    out.sort();
    out.dedup();
    out
}

/// Reachability in the right-rotation graph `(ab)c → a(bc)` on the binary
/// trees with a fixed number of leaves.
pub struct TamariOrder {
    index: HashMap<PlanarTree, usize>,
    reach: Vec<Vec<bool>>,
}

fn right_rotations(t: &PlanarTree) -> Vec<PlanarTree> {
    let PlanarTree::Node(ch) = t else { return Vec::new() };
    let mut out = Vec::new();
    if let PlanarTree::Node(left) = &ch[0] {
        out.push(PlanarTree::Node(vec![
            left[0].clone(),
            PlanarTree::Node(vec![left[1].clone(), ch[1].clone()]),
        ]));
    }
    for r in right_rotations(&ch[0]) {
        out.push(PlanarTree::Node(vec![r, ch[1].clone()]));
    }
    for r in right_rotations(&ch[1]) {
        out.push(PlanarTree::Node(vec![ch[0].clone(), r]));
    }
    out
}

impl TamariOrder {
    pub fn for_arity(n: usize) -> Arc<TamariOrder> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<TamariOrder>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&n) {
            return t.clone();
        }
        let verts = vertices(n);
        let index: HashMap<PlanarTree, usize> = verts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let succ: Vec<Vec<usize>> =
            verts.iter().map(|v| right_rotations(v).iter().map(|r| index[r]).collect()).collect();
        let mut reach = vec![vec![false; verts.len()]; verts.len()];
        for s in 0..verts.len() {
            let mut queue = VecDeque::from([s]);
            reach[s][s] = true;
            while let Some(u) = queue.pop_front() {
                for &v in &succ[u] {
                    if !reach[s][v] {
                        reach[s][v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        let t = Arc::new(TamariOrder { index, reach });
        cache.lock().unwrap().insert(n, t.clone());
        t
    }

    pub fn leq(&self, u: &PlanarTree, v: &PlanarTree) -> bool {
        self.reach[self.index[u]][self.index[v]]
    }
}

pub fn tamari_leq(u: &PlanarTree, v: &PlanarTree) -> Result<bool> {
    if !u.is_binary() || !v.is_binary() || u.is_leaf() {
        return Err(Error::Precondition("Tamari order compares binary trees".into()));
    }
    if u.arity() != v.arity() {
        return Err(Error::Precondition(format!("arity mismatch {} vs {}", u.arity(), v.arity())));
    }
    Ok(TamariOrder::for_arity(u.arity()).leq(u, v))
}

/// Tamari-least binary refinement: every fan becomes a left comb.
pub fn min_vertex(t: &PlanarTree) -> PlanarTree {
    match t {
        PlanarTree::Leaf => PlanarTree::Leaf,
        PlanarTree::Node(ch) => left_comb_of(ch.iter().map(min_vertex).collect()),
    }
}

/// Tamari-greatest binary refinement: every fan becomes a right comb.
pub fn max_vertex(t: &PlanarTree) -> PlanarTree {
    match t {
        PlanarTree::Leaf => PlanarTree::Leaf,
        PlanarTree::Node(ch) => right_comb_of(ch.iter().map(max_vertex).collect()),
    }
}

/// `a ≤ b` iff `max a ≤ min b`.
pub fn cell_leq(a: &PlanarTree, b: &PlanarTree) -> Result<bool> {
    if a.arity() != b.arity() {
        return Err(Error::Precondition(format!("arity mismatch {} vs {}", a.arity(), b.arity())));
    }
    tamari_leq(&max_vertex(a), &min_vertex(b))
}

/// Pairs `(a, b)` of cells of `t` with `|a| + |b| = |t|` and `a ≤ b`.
pub fn comparable_pairs(t: &PlanarTree) -> Vec<(PlanarTree, PlanarTree)> {
    let cells = refinements(t);
    let d = t.dimension();
    let order = TamariOrder::for_arity(t.arity());
    let maxes: Vec<PlanarTree> = cells.iter().map(max_vertex).collect();
    let mins: Vec<PlanarTree> = cells.iter().map(min_vertex).collect();
    let mut out = Vec::new();
    for (i, a) in cells.iter().enumerate() {
        for (j, b) in cells.iter().enumerate() {
            if a.dimension() + b.dimension() == d && order.leq(&maxes[i], &mins[j]) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Row {
    Term(PlanarTree, PlanarTree),
    Normalize(u8),
}

fn solve_diagonal(t: &PlanarTree) -> BiChain {
    if t.dimension() == 0 {
        return BiChain::basis(vec![t.clone(), t.clone()]);
    }
    let pairs = comparable_pairs(t);
    let lo = min_vertex(t);
    let hi = max_vertex(t);
    let columns: Vec<SparseVec<Row>> = pairs
        .iter()
        .map(|(a, b)| {
            let mut col: SparseVec<Row> = boundary2(&BiChain::basis(vec![a.clone(), b.clone()]))
                .terms()
                .map(|(w, c)| (Row::Term(w[0].clone(), w[1].clone()), c.clone()))
                .collect();
            if *a == lo && b == t {
                col.insert(Row::Normalize(0), Q::one());
            }
            if a == t && *b == hi {
                col.insert(Row::Normalize(1), Q::one());
            }
            col
        })
        .collect();
    let mut rhs: SparseVec<Row> = BTreeMap::new();
    for (f, c) in tree_boundary(t).terms() {
        for (w, v) in diagonal(&f[0]).terms() {
            let key = Row::Term(w[0].clone(), w[1].clone());
            let e = rhs.entry(key.clone()).or_insert_with(Q::zero);
            *e += c * v;
            if e.is_zero() {
                rhs.remove(&key);
            }
        }
    }
    rhs.insert(Row::Normalize(0), Q::one());
    rhs.insert(Row::Normalize(1), Q::one());
    let sol = linalg::solve(&columns, &rhs)
        .unwrap_or_else(|| panic!("no diagonal on {} satisfies the chain-map equations", t));
    assert_eq!(sol.free_dimension, 0, "diagonal on {} is not determined by the chain-map equations", t);
    let mut out = BiChain::zero(2);
    for ((a, b), c) in pairs.into_iter().zip(sol.particular) {
        out.add_term(vec![a, b], c);
    }
    out
}

/// `Δ_K(t) = Σ sgn(a,b) a ⊗ b` over comparable pairs of complementary
/// dimension. The signs are the unique ones making `Δ_K` a chain map with
/// `min t ⊗ t` and `t ⊗ max t` carrying `+1`; they are solved cell by cell,
/// lower dimensions first, and memoised.
pub fn diagonal(t: &PlanarTree) -> BiChain {
    static CACHE: OnceLock<Mutex<HashMap<PlanarTree, BiChain>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(t) {
        return d.clone();
    }
    let d = solve_diagonal(t);
    cache.lock().unwrap().insert(t.clone(), d.clone());
    d
}

/// Text table of `Δ_K(t)`: one `sign a b` line per term.
pub fn render_diagonal(t: &PlanarTree) -> String {
    let mut s = format!("# diagonal {} (arity {}, dimension {})\n", t, t.arity(), t.dimension());
    for (w, c) in diagonal(t).terms() {
        s.push_str(&format!("{:>3} {} {}\n", c.to_string(), w[0], w[1]));
    }
    s
}

/// Chain-map defect `(∂⊗1 + 1⊗∂)Δ(t) - Δ(∂t)`; zero on every cell.
pub fn diagonal_defect(t: &PlanarTree) -> BiChain {
    let mut lhs = boundary2(&diagonal(t));
    for (f, c) in tree_boundary(t).terms() {
        lhs.add_scaled(&diagonal(&f[0]), &-c.clone());
    }
    lhs
}

/// Distinct trees appearing in a chain.
pub fn support(c: &Chain) -> BTreeSet<PlanarTree> {
    c.terms().map(|(w, _)| w[0].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PlanarTree {
        PlanarTree::parse(s).unwrap()
    }

    #[test]
    fn parse_render_roundtrip() {
        for s in ["(**)", "((**)*)", "(*(**)*)", "(****)", "((**)(**))"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!(PlanarTree::parse("(*)").is_err());
        assert!(PlanarTree::parse("(**").is_err());
        assert!(PlanarTree::parse("(**)*").is_err());
        assert_eq!(PlanarTree::corolla(4), p("(****)"));
        assert_eq!(PlanarTree::left_comb(3), p("((**)*)"));
        assert_eq!(PlanarTree::right_comb(3), p("(*(**))"));
    }

    #[test]
    fn dimensions() {
        assert_eq!(PlanarTree::corolla(5).dimension(), 3);
        assert_eq!(PlanarTree::left_comb(5).dimension(), 0);
        assert_eq!(p("(*(***))").dimension(), 1);
    }

    #[test]
    fn cell_counts_are_super_catalan() {
        let counts: Vec<usize> = (2..=6).map(|n| all_cells(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 11, 45, 197]);
        let verts: Vec<usize> = (2..=7).map(|n| vertices(n).len()).collect();
        assert_eq!(verts, vec![1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn faces_examples() {
        let f3 = faces(&PlanarTree::corolla(3)).unwrap();
        assert_eq!(f3, vec![p("(*(**))"), p("((**)*)")]);
        assert_eq!(faces(&PlanarTree::corolla(4)).unwrap().len(), 5);
        assert!(faces(&PlanarTree::left_comb(4)).is_err());
    }

    #[test]
    fn boundary_examples() {
        let d = cell_boundary(&PlanarTree::corolla(3)).unwrap();
        let mut expected = Chain::basis(vec![p("(*(**))")]);
        expected.sub_assign(&Chain::basis(vec![p("((**)*)")]));
        assert_eq!(d, expected);
        let d4 = cell_boundary(&PlanarTree::corolla(4)).unwrap();
        assert_eq!(d4.len(), 5);
        assert!(boundary(&d4).unwrap().is_zero());
        assert!(boundary(&Chain::zero(1)).unwrap().is_zero());
        let mut mixed = Chain::basis(vec![PlanarTree::corolla(4)]);
        mixed.add_assign(&Chain::basis(vec![PlanarTree::corolla(3)]));
        assert!(boundary(&mixed).is_err());
    }

    #[test]
    fn tamari_examples() {
        for n in 2..=6 {
            let l = PlanarTree::left_comb(n);
            let r = PlanarTree::right_comb(n);
            assert!(tamari_leq(&l, &r).unwrap());
            assert!(tamari_leq(&l, &l).unwrap());
        }
        assert!(!tamari_leq(&PlanarTree::right_comb(3), &PlanarTree::left_comb(3)).unwrap());
        assert!(tamari_leq(&PlanarTree::corolla(3), &PlanarTree::left_comb(3)).is_err());
    }

    #[test]
    fn min_max_examples() {
        let v = p("((**)(**))");
        assert_eq!(min_vertex(&v), v);
        assert_eq!(max_vertex(&v), v);
        assert_eq!(min_vertex(&PlanarTree::corolla(5)), PlanarTree::left_comb(5));
        assert_eq!(max_vertex(&PlanarTree::corolla(5)), PlanarTree::right_comb(5));
        let t = p("(*(***))");
        assert_eq!(min_vertex(&t), p("(*((**)*))"));
        assert_eq!(max_vertex(&t), p("(*(*(**)))"));
    }

    #[test]
    fn cell_leq_examples() {
        let v = PlanarTree::left_comb(3);
        assert!(cell_leq(&v, &v).unwrap());
        assert!(cell_leq(&v, &PlanarTree::corolla(3)).unwrap());
        let e = PlanarTree::corolla(4);
        assert!(!cell_leq(&e, &e).unwrap());
        assert!(cell_leq(&v, &PlanarTree::corolla(4)).is_err());
    }

    #[test]
    fn diagonal_small_cases() {
        let v = PlanarTree::left_comb(4);
        assert_eq!(diagonal(&v), BiChain::basis(vec![v.clone(), v.clone()]));
        let e = PlanarTree::corolla(3);
        let mut expected = BiChain::basis(vec![p("((**)*)"), e.clone()]);
        expected.add_assign(&BiChain::basis(vec![e.clone(), p("(*(**))")]));
        assert_eq!(diagonal(&e), expected);
        assert!(diagonal_defect(&PlanarTree::corolla(4)).is_zero());
    }
}
