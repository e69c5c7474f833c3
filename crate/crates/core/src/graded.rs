//! Exact linear algebra on graded spaces: tensor words, Koszul signs and
//! the signed permutation actions `S(n)` and `S(i, n-i)`.
//!
//! All grading is homological. A cooperation `psi_r` raises degree by
//! `r - 2`, the differential lowers it by one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficients.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Anything carrying a homological degree.
pub trait Graded: Clone + Ord + fmt::Debug {
    fn degree(&self) -> i64;
}

/// `(-1)^(pq)`.
pub fn koszul_sign(p: i64, q: i64) -> i64 {
    if (p * q).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn is_odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: String,
    pub degree: i64,
}

/// A finite graded basis. The unit `1` of a connected space is not listed
/// among `generators`; it is the empty [`Word`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    generators: Vec<Generator>,
    connected: bool,
}

impl GradedSpace {
    pub fn new(generators: Vec<Generator>, connected: bool) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if g.id == "1" {
                return Err(Error::InvalidSpace("generator id `1` is reserved for the unit".into()));
            }
            if g.degree < 0 {
                return Err(Error::InvalidSpace(format!("generator `{}` has negative degree", g.id)));
            }
            if connected && g.degree == 0 {
                return Err(Error::InvalidSpace(format!(
                    "connected space has a second degree-0 generator `{}`",
                    g.id
                )));
            }
            if !seen.insert(g.id.clone()) {
                return Err(Error::InvalidSpace(format!("duplicate generator id `{}`", g.id)));
            }
        }
        Ok(GradedSpace { generators, connected })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn connected(&self) -> bool {
        self.connected
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.id == id)
    }

    /// The length-one word of generator `index`.
    pub fn gen(&self, index: usize) -> Word {
        Word::from_letters(self, vec![index as u32])
    }

    pub fn gen_by_id(&self, id: &str) -> Option<Word> {
        self.index_of(id).map(|i| self.gen(i))
    }

    /// Basis of the space itself: the unit (if connected) and the generators
    /// of degree at most `cap`.
    pub fn basis(&self, cap: i64) -> Vec<Word> {
        let mut out = Vec::new();
        if self.connected {
            out.push(Word::unit());
        }
        for i in 0..self.len() {
            if self.generators[i].degree <= cap {
                out.push(self.gen(i));
            }
        }
        out.sort();
        out
    }

    /// All nonempty words in the reduced generators with total degree at most
    /// `degree_cap` and at most `length_cap` letters, sorted by degree.
    pub fn words(&self, degree_cap: i64, length_cap: usize) -> Result<Vec<Word>> {
        if self.generators.iter().any(|g| g.degree == 0) {
            return Err(Error::UnboundedBasis);
        }
        let mut out = Vec::new();
        let mut frontier = vec![Word::unit()];
        for _ in 0..length_cap {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.len() {
                    let d = w.degree + self.generators[i].degree;
                    if d <= degree_cap {
                        let mut letters = w.letters.clone();
                        letters.push(i as u32);
                        next.push(Word { degree: d, letters });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        Ok(out)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            return "1".to_string();
        }
        w.letters
            .iter()
            .map(|&l| self.generators[l as usize].id.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn render<K: Graded, F: Fn(&K) -> String>(&self, x: &TensorElement<K>, show: F) -> String {
        x.render_with(show)
    }

    pub fn render_element(&self, x: &TensorElement<Word>) -> String {
        x.render_with(|w| self.render_word(w))
    }
}

/// A monomial of the tensor algebra on the reduced generators. The empty
/// word is the unit; a word of length one is a generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    degree: i64,
    letters: Vec<u32>,
}

impl Word {
    pub fn unit() -> Self {
        Word { degree: 0, letters: Vec::new() }
    }

    pub fn from_letters(space: &GradedSpace, letters: Vec<u32>) -> Self {
        let degree = letters.iter().map(|&l| space.generators[l as usize].degree).sum();
        Word { degree, letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { degree: self.degree + other.degree, letters }
    }

    /// Splits off the first letter.
    pub fn split_first(&self, space: &GradedSpace) -> Option<(Word, Word)> {
        if self.letters.len() < 2 {
            return None;
        }
        let head = space.gen(self.letters[0] as usize);
        let tail = Word { degree: self.degree - head.degree, letters: self.letters[1..].to_vec() };
        Some((head, tail))
    }

    /// Splits off the last letter.
    pub fn split_last(&self, space: &GradedSpace) -> Option<(Word, Word)> {
        let n = self.letters.len();
        if n < 2 {
            return None;
        }
        let last = space.gen(self.letters[n - 1] as usize);
        let init = Word { degree: self.degree - last.degree, letters: self.letters[..n - 1].to_vec() };
        Some((init, last))
    }
}

impl Graded for Word {
    fn degree(&self) -> i64 {
        self.degree
    }
}

/// A basis element of a tensor product `A ⊗ B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: Graded, B: Graded> Graded for Pair<A, B> {
    fn degree(&self) -> i64 {
        self.0.degree() + self.1.degree()
    }
}

pub type TensorWord<K> = Vec<K>;

pub fn word_degree<K: Graded>(w: &[K]) -> i64 {
    w.iter().map(Graded::degree).sum()
}

/// An exact linear combination of tensor words of a fixed tensor-arity.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement<K: Graded> {
    arity: usize,
    terms: BTreeMap<TensorWord<K>, Q>,
}

impl<K: Graded> TensorElement<K> {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn monomial(factors: TensorWord<K>, coeff: Q) -> Self {
        let mut x = TensorElement::zero(factors.len());
        x.add_term(factors, coeff);
        x
    }

    pub fn basis(factors: TensorWord<K>) -> Self {
        Self::monomial(factors, Q::one())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord<K>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[K]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, factors: TensorWord<K>, coeff: Q) {
        assert_eq!(factors.len(), self.arity, "tensor arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement<K>) {
        self.add_scaled(other, &Q::one());
    }

    pub fn sub_assign(&mut self, other: &TensorElement<K>) {
        self.add_scaled(other, &-Q::one());
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = TensorElement::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Q::one())
    }

    /// Degrees of the terms; a homogeneous element has exactly one.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(|w| word_degree(w)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Linear extension of a map on tensor words.
    pub fn map_terms<L: Graded, F>(&self, arity: usize, mut f: F) -> TensorElement<L>
    where
        F: FnMut(&[K]) -> TensorElement<L>,
    {
        let mut out = TensorElement::zero(arity);
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// Drops every term with a factor rejected by `keep`.
    pub fn filter_factors<F: Fn(&K) -> bool>(&self, keep: F) -> Self {
        let mut out = TensorElement::zero(self.arity);
        for (w, c) in &self.terms {
            if w.iter().all(&keep) {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// `x ⊗ y` with no sign (the factors are simply juxtaposed).
    pub fn tensor(&self, other: &TensorElement<K>) -> Self {
        let mut out = TensorElement::zero(self.arity + other.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn render_with<F: Fn(&K) -> String>(&self, show: F) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&mag.to_string());
                s.push(' ');
            }
            if w.is_empty() {
                s.push_str("[]");
            } else {
                s.push_str(&w.iter().map(&show).collect::<Vec<_>>().join(" ⊗ "));
            }
        }
        s
    }
}

impl<K: Graded> fmt::Debug for TensorElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with(|k| format!("{:?}", k)))
    }
}

/// A permutation of `0..n` acting on tensor words by
/// `a_1 ⊗ ... ⊗ a_n ↦ a_{σ(1)} ⊗ ... ⊗ a_{σ(n)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Permutation(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// `sgn(σ)` as ±1.
    pub fn sign(&self) -> i64 {
        let n = self.0.len();
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Koszul sign `ε(σ)` for reordering factors of the given degrees.
    /// Every pair of factors whose relative order is reversed contributes
    /// `(-1)^{|a||b|}`; this equals the product over any decomposition into
    /// adjacent transpositions.
    pub fn koszul(&self, degrees: &[i64]) -> i64 {
        let n = self.0.len();
        let mut odd = false;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] && is_odd(degrees[self.0[i]]) && is_odd(degrees[self.0[j]]) {
                    odd = !odd;
                }
            }
        }
        if odd {
            -1
        } else {
            1
        }
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// The `(i, n-i)`-shuffles: `σ(0) < ... < σ(i-1)` and
    /// `σ(i) < ... < σ(n-1)`.
    pub fn shuffles(i: usize, n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(i);
        fn rec(start: usize, i: usize, n: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if chosen.len() == i {
                let mut images = chosen.clone();
                images.extend((0..n).filter(|k| !chosen.contains(k)));
                out.push(Permutation(images));
                return;
            }
            for k in start..n {
                chosen.push(k);
                rec(k + 1, i, n, chosen, out);
                chosen.pop();
            }
        }
        rec(0, i, n, &mut chosen, &mut out);
        out
    }
}

fn signed(s: i64) -> Q {
    q(s)
}

/// Reorders the factors of every term by `σ` and applies the Koszul sign
/// `ε(σ)` only.
pub fn permute<K: Graded>(sigma: &Permutation, x: &TensorElement<K>) -> Result<TensorElement<K>> {
    if sigma.len() != x.arity() {
        return Err(Error::ArityMismatch { expected: sigma.len(), found: x.arity() });
    }
    Ok(x.map_terms(x.arity(), |w| {
        let degrees: Vec<i64> = w.iter().map(Graded::degree).collect();
        let out: Vec<K> = sigma.images().iter().map(|&i| w[i].clone()).collect();
        TensorElement::monomial(out, signed(sigma.koszul(&degrees)))
    }))
}

fn signed_permute<K: Graded>(sigma: &Permutation, x: &TensorElement<K>) -> TensorElement<K> {
    permute(sigma, x).expect("arity checked").scaled(&signed(sigma.sign()))
}

/// `S(r)`: the sum over all `σ ∈ S_r` of `sgn(σ) ε(σ) σ·x`.
pub fn full_symmetrize<K: Graded>(r: usize, x: &TensorElement<K>) -> Result<TensorElement<K>> {
    if x.arity() != r {
        return Err(Error::ArityMismatch { expected: r, found: x.arity() });
    }
    let mut out = TensorElement::zero(r);
    for sigma in Permutation::all(r) {
        out.add_assign(&signed_permute(&sigma, x));
    }
    Ok(out)
}

/// `S(i, r-i)`: the signed sum over the `C(r, i)` shuffles, each acting so
/// that the first `i` factors land in positions `σ(0) < ... < σ(i-1)` and
/// the remaining factors fill the other positions in order.
pub fn shuffle_sum<K: Graded>(i: usize, r: usize, x: &TensorElement<K>) -> Result<TensorElement<K>> {
    if x.arity() != r {
        return Err(Error::ArityMismatch { expected: r, found: x.arity() });
    }
    if i > r {
        return Err(Error::OutOfRange(format!("shuffle block {} exceeds arity {}", i, r)));
    }
    let mut out = TensorElement::zero(r);
    for sigma in Permutation::shuffles(i, r) {
        out.add_assign(&signed_permute(&sigma.inverse(), x));
    }
    Ok(out)
}

/// Factorwise product `(x_1 ⊗ ... ⊗ x_r)·(y_1 ⊗ ... ⊗ y_r) = ± x_1y_1 ⊗ ... ⊗ x_ry_r`
/// with the Koszul sign of moving each `y_j` past `x_{j+1}, ..., x_r`.
pub fn interleave_product(x: &TensorElement<Word>, y: &TensorElement<Word>) -> TensorElement<Word> {
    assert_eq!(x.arity(), y.arity(), "tensor arity mismatch");
    let r = x.arity();
    let mut out = TensorElement::zero(r);
    for (a, ca) in x.terms() {
        let adeg: Vec<i64> = a.iter().map(Graded::degree).collect();
        // suffix[j] = |a_{j+1}| + ... + |a_r|
        let mut suffix = vec![0i64; r + 1];
        for j in (0..r).rev() {
            suffix[j] = suffix[j + 1] + adeg[j];
        }
        for (b, cb) in y.terms() {
            let mut odd = false;
            for j in 0..r {
                if is_odd(b[j].degree() * suffix[j + 1]) {
                    odd = !odd;
                }
            }
            let w: Vec<Word> = a.iter().zip(b.iter()).map(|(u, v)| u.concat(v)).collect();
            let c = ca * cb;
            out.add_term(w, if odd { -c } else { c });
        }
    }
    out
}

/// `σ_{r,2}`: `(a_1 ⊗ ... ⊗ a_r) ⊗ (b_1 ⊗ ... ⊗ b_r) ↦ ±(a_1 ⊗ b_1) ⊗ ... ⊗ (a_r ⊗ b_r)`.
pub fn interleave_pairs<A: Graded, B: Graded>(
    x: &TensorElement<A>,
    y: &TensorElement<B>,
) -> TensorElement<Pair<A, B>> {
    assert_eq!(x.arity(), y.arity(), "tensor arity mismatch");
    let r = x.arity();
    let mut out = TensorElement::zero(r);
    for (a, ca) in x.terms() {
        let mut suffix = vec![0i64; r + 1];
        for j in (0..r).rev() {
            suffix[j] = suffix[j + 1] + a[j].degree();
        }
        for (b, cb) in y.terms() {
            let mut odd = false;
            for j in 0..r {
                if is_odd(b[j].degree() * suffix[j + 1]) {
                    odd = !odd;
                }
            }
            let w: Vec<Pair<A, B>> =
                a.iter().zip(b.iter()).map(|(u, v)| Pair(u.clone(), v.clone())).collect();
            let c = ca * cb;
            out.add_term(w, if odd { -c } else { c });
        }
    }
    out
}

/// A degree-homogeneous linear map recorded on a finite set of basis
/// elements; unassigned elements map to zero.
#[derive(Clone, Debug)]
pub struct GradedMap<K: Graded> {
    pub degree: i64,
    pub target_arity: usize,
    assignments: BTreeMap<K, TensorElement<K>>,
}

impl<K: Graded> GradedMap<K> {
    pub fn new(degree: i64, target_arity: usize) -> Self {
        GradedMap { degree, target_arity, assignments: BTreeMap::new() }
    }

    pub fn assign(&mut self, x: K, image: TensorElement<K>) -> Result<()> {
        if image.arity() != self.target_arity {
            return Err(Error::ArityMismatch { expected: self.target_arity, found: image.arity() });
        }
        for d in image.degrees() {
            if d != x.degree() + self.degree {
                return Err(Error::DegreeViolation(format!(
                    "image of {:?} has degree {}, expected {}",
                    x,
                    d,
                    x.degree() + self.degree
                )));
            }
        }
        if image.is_zero() {
            self.assignments.remove(&x);
        } else {
            self.assignments.insert(x, image);
        }
        Ok(())
    }

    pub fn apply(&self, x: &K) -> TensorElement<K> {
        self.assignments.get(x).cloned().unwrap_or_else(|| TensorElement::zero(self.target_arity))
    }

    pub fn is_zero(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn assignments(&self) -> impl Iterator<Item = (&K, &TensorElement<K>)> {
        self.assignments.iter()
    }
}

/// Exact basis of the kernel of `f` restricted to the span of `basis`,
/// grouped by degree (every returned vector is homogeneous).
pub fn kernel<K: Graded>(basis: &[K], f: impl Fn(&K) -> TensorElement<K>) -> Vec<TensorElement<K>> {
    let mut by_degree: BTreeMap<i64, Vec<&K>> = BTreeMap::new();
    for b in basis {
        by_degree.entry(b.degree()).or_default().push(b);
    }
    let mut out = Vec::new();
    for (_, elems) in by_degree {
        let columns: Vec<crate::linalg::SparseVec<TensorWord<K>>> = elems
            .iter()
            .map(|b| f(b).terms().map(|(w, c)| (w.clone(), c.clone())).collect())
            .collect();
        for v in crate::linalg::kernel(&columns) {
            let mut x = TensorElement::zero(1);
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    x.add_term(vec![elems[i].clone()], c.clone());
                }
            }
            out.push(x);
        }
    }
    out
}
