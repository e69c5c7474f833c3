//! The tensor algebra `T^a(C̃)` on an A∞-coalgebra: the ψ-extension through
//! the cellular diagonal, the ϱ-extension through primitive tensor
//! cooperations, primitives, the free graded Lie algebra and the checks
//! tying them together.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::ainf::{apply_tree, check_relations, op_degree, psi, AInfCoalgebra, Cooperations, TensorProduct};
use crate::associahedron::{diagonal, PlanarTree};
use crate::error::{Error, Result};
use crate::graded::{interleave_product, is_odd, kernel, q, Graded, Pair, TensorElement, Word, Q};
use crate::linalg::{Echelon, SparseVec};
use crate::report::Report;

/// An element of `T^a(C̃)`: an arity-one combination of words.
pub type Element = TensorElement<Word>;

/// Default truncation: total degree and word length.
pub const DEFAULT_MAX_DEGREE: i64 = 12;
pub const DEFAULT_MAX_LENGTH: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Psi,
    Rho,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi" => Ok(Mode::Psi),
            "rho" => Ok(Mode::Rho),
            _ => Err(Error::Precondition(format!("unknown extension mode `{}` (psi|rho)", s))),
        }
    }
}

/// Degree of a homogeneous element (zero for the zero element).
pub fn element_degree(x: &Element) -> i64 {
    x.terms().next().map(|(w, _)| w[0].degree()).unwrap_or(0)
}

pub fn word_element(w: Word) -> Element {
    TensorElement::basis(vec![w])
}

/// Concatenation product `μ`.
pub fn multiply(x: &Element, y: &Element) -> Element {
    interleave_product(x, y)
}

/// `[x, y] = xy - (-1)^{|x||y|} yx` for homogeneous `x`, `y`.
pub fn bracket(x: &Element, y: &Element) -> Element {
    let mut out = multiply(x, y);
    let s = if is_odd(element_degree(x) * element_degree(y)) { q(1) } else { q(-1) };
    out.add_scaled(&multiply(y, x), &s);
    out
}

/// Multiplicative extension of the differential: `d(xy) = d(x)y + (-1)^{|x|} x d(y)`.
fn extend_differential(base: &AInfCoalgebra, w: &Word) -> Element {
    match w.len() {
        0 => TensorElement::zero(1),
        1 => base.differential(w),
        _ => {
            let (x, y) = w.split_first(base.space()).expect("length ≥ 2");
            let mut out = multiply(&base.differential(&x), &word_element(y.clone()));
            let s = if is_odd(x.degree()) { -Q::one() } else { Q::one() };
            out.add_scaled(&multiply(&word_element(x), &extend_differential(base, &y)), &s);
            out
        }
    }
}

/// `ψ_r` on `T^a(C̃)` by iterating the tensor-product formula, peeling one
/// generator from the left per step.
pub struct PsiExtension<'a> {
    base: &'a AInfCoalgebra,
    max_arity: usize,
    cache: RefCell<BTreeMap<(usize, Word), Element>>,
}

impl<'a> PsiExtension<'a> {
    /// Cooperations of arity above `max_arity` are treated as zero; the
    /// extension itself is not bounded by the base's arity.
    pub fn new(base: &'a AInfCoalgebra, max_arity: usize) -> Self {
        PsiExtension { base, max_arity: max_arity.max(2), cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn base(&self) -> &AInfCoalgebra {
        self.base
    }

    fn compute(&self, r: usize, w: &Word) -> Element {
        let (x, y) = w.split_first(self.base.space()).expect("length ≥ 2");
        let mut out = TensorElement::zero(r);
        for (pair, s) in diagonal(&PlanarTree::corolla(r)).terms() {
            let (a, b) = (&pair[0], &pair[1]);
            let fa = apply_tree(self.base, a, &x);
            if fa.is_zero() {
                continue;
            }
            let fb = apply_tree(self, b, &y);
            if fb.is_zero() {
                continue;
            }
            let sign = if is_odd(b.dimension() as i64 * x.degree()) { -s.clone() } else { s.clone() };
            out.add_scaled(&interleave_product(&fa, &fb), &sign);
        }
        out
    }
}

impl Cooperations for PsiExtension<'_> {
    type Key = Word;

    fn max_arity(&self) -> usize {
        self.max_arity
    }

    fn differential(&self, w: &Word) -> Element {
        extend_differential(self.base, w)
    }

    fn cooperation(&self, r: usize, w: &Word) -> TensorElement<Word> {
        if w.len() <= 1 {
            return psi(self.base, r, w);
        }
        let key = (r, w.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return v.clone();
        }
        let v = self.compute(r, w);
        self.cache.borrow_mut().insert(key, v.clone());
        v
    }

    fn show(&self, w: &Word) -> String {
        self.base.show(w)
    }

    fn is_unit(&self, w: &Word) -> bool {
        w.is_unit()
    }
}

/// `ϱ_r` on `T^a(C̃)`: for `r ≥ 3` the sum of the primitive tensor
/// cooperations `^PΨ_r + Ψ^P_r`, i.e. the rule
/// `ϱ_r(xv) = (-1)^{(r-2)|x|} Δ^{(r-1)}(x)·ϱ_r(v) + ϱ_r(x)·Δ^{(r-1)}(v)`;
/// for `r = 2` the reduced part is `2ψ̄_2` on decomposables.
pub struct RhoExtension<'a> {
    psi: PsiExtension<'a>,
    cache: RefCell<BTreeMap<(usize, Word), Element>>,
    iterated: RefCell<BTreeMap<(usize, Word), Element>>,
}

impl<'a> RhoExtension<'a> {
    pub fn new(base: &'a AInfCoalgebra) -> Self {
        RhoExtension {
            psi: PsiExtension::new(base, base.max_arity()),
            cache: RefCell::new(BTreeMap::new()),
            iterated: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn base(&self) -> &AInfCoalgebra {
        self.psi.base
    }

    pub fn psi(&self) -> &PsiExtension<'a> {
        &self.psi
    }

    /// The iterated coproduct `Δ^{(r-1)} : T → T^{⊗r}` (counital, with units).
    pub fn iterated_coproduct(&self, r: usize, w: &Word) -> Element {
        if r == 1 {
            return word_element(w.clone());
        }
        let key = (r, w.clone());
        if let Some(v) = self.iterated.borrow().get(&key) {
            return v.clone();
        }
        let v = apply_tree(&self.psi, &PlanarTree::left_comb(r), w);
        self.iterated.borrow_mut().insert(key, v.clone());
        v
    }

    fn compute(&self, r: usize, w: &Word) -> Element {
        let (x, v) = w.split_first(self.base().space()).expect("length ≥ 2");
        let mut out = interleave_product(&self.iterated_coproduct(r, &x), &self.cooperation(r, &v));
        if is_odd(op_degree(r) * x.degree()) {
            out = out.neg();
        }
        out.add_assign(&interleave_product(&self.cooperation(r, &x), &self.iterated_coproduct(r, &v)));
        out
    }

    /// The closed form: `Σ_j ± Δ^{(r-1)}(g_1…g_{j-1}) · Δ_r(g_j) · Δ^{(r-1)}(g_{j+1}…g_m)`.
    pub fn closed_form(&self, r: usize, w: &Word) -> Element {
        if r == 2 || w.len() <= 1 {
            return self.cooperation(r, w);
        }
        let space = self.base().space();
        let letters = w.letters();
        let mut out = TensorElement::zero(r);
        for j in 0..letters.len() {
            let pre = Word::from_letters(space, letters[..j].to_vec());
            let g = Word::from_letters(space, vec![letters[j]]);
            let post = Word::from_letters(space, letters[j + 1..].to_vec());
            let mut t = interleave_product(&self.iterated_coproduct(r, &pre), &psi(self.base(), r, &g));
            t = interleave_product(&t, &self.iterated_coproduct(r, &post));
            let s = if is_odd(op_degree(r) * pre.degree()) { -Q::one() } else { Q::one() };
            out.add_scaled(&t, &s);
        }
        out
    }
}

impl Cooperations for RhoExtension<'_> {
    type Key = Word;

    fn max_arity(&self) -> usize {
        self.base().max_arity()
    }

    fn differential(&self, w: &Word) -> Element {
        extend_differential(self.base(), w)
    }

    fn cooperation(&self, r: usize, w: &Word) -> TensorElement<Word> {
        if w.len() <= 1 || r > self.max_arity() {
            return psi(self.base(), r, w);
        }
        if r == 2 {
            let mut out = self.psi.cooperation(2, w).filter_factors(|f| !f.is_unit()).scaled(&q(2));
            out.add_term(vec![Word::unit(), w.clone()], Q::one());
            out.add_term(vec![w.clone(), Word::unit()], Q::one());
            return out;
        }
        let key = (r, w.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return v.clone();
        }
        let v = self.compute(r, w);
        self.cache.borrow_mut().insert(key, v.clone());
        v
    }

    fn show(&self, w: &Word) -> String {
        self.base().show(w)
    }

    fn is_unit(&self, w: &Word) -> bool {
        w.is_unit()
    }
}

/// Either extension behind one interface.
pub enum Extension<'a> {
    Psi(PsiExtension<'a>),
    Rho(RhoExtension<'a>),
}

impl<'a> Extension<'a> {
    pub fn new(base: &'a AInfCoalgebra, mode: Mode, max_arity: usize) -> Self {
        match mode {
            Mode::Psi => Extension::Psi(PsiExtension::new(base, max_arity)),
            Mode::Rho => Extension::Rho(RhoExtension::new(base)),
        }
    }

    pub fn base(&self) -> &AInfCoalgebra {
        match self {
            Extension::Psi(e) => e.base,
            Extension::Rho(e) => e.base(),
        }
    }
}

impl Cooperations for Extension<'_> {
    type Key = Word;
    fn max_arity(&self) -> usize {
        match self {
            Extension::Psi(e) => e.max_arity(),
            Extension::Rho(e) => e.max_arity(),
        }
    }
    fn differential(&self, w: &Word) -> Element {
        extend_differential(self.base(), w)
    }
    fn cooperation(&self, r: usize, w: &Word) -> Element {
        match self {
            Extension::Psi(e) => e.cooperation(r, w),
            Extension::Rho(e) => e.cooperation(r, w),
        }
    }
    fn show(&self, w: &Word) -> String {
        self.base().show(w)
    }
    fn is_unit(&self, w: &Word) -> bool {
        w.is_unit()
    }
}

/// The reduced cooperations on `T^a(C̃)`: terms with a unit factor dropped.
pub struct Reduced<'c, C: Cooperations>(pub &'c C);

impl<C: Cooperations> Cooperations for Reduced<'_, C> {
    type Key = C::Key;
    fn max_arity(&self) -> usize {
        self.0.max_arity()
    }
    fn differential(&self, x: &C::Key) -> TensorElement<C::Key> {
        self.0.differential(x)
    }
    fn cooperation(&self, r: usize, x: &C::Key) -> TensorElement<C::Key> {
        self.0.cooperation(r, x).filter_factors(|k| !self.0.is_unit(k))
    }
    fn show(&self, x: &C::Key) -> String {
        self.0.show(x)
    }
    fn is_unit(&self, x: &C::Key) -> bool {
        self.0.is_unit(x)
    }
}

/// Applies a cooperation to an element by linearity.
pub fn apply<C: Cooperations<Key = Word> + ?Sized>(c: &C, r: usize, x: &Element) -> Element {
    x.map_terms(r, |w| psi(c, r, &w[0]))
}

/// Nonempty words in degree ≤ `max_degree` and length ≤ `max_length`.
pub fn words(base: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Result<Vec<Word>> {
    base.space().words(max_degree, max_length)
}

/// Exact basis of the primitives among `basis` (kernel of the reduced `ψ_2`).
pub fn primitives<C: Cooperations<Key = Word> + ?Sized>(c: &C, basis: &[Word]) -> Vec<Element> {
    kernel(basis, |w| psi(c, 2, w).filter_factors(|f| !f.is_unit()))
}

/// Primitives of `C̃` itself.
pub fn coalgebra_primitives(a: &AInfCoalgebra) -> Vec<Element> {
    let gens: Vec<Word> = (0..a.space().len()).map(|i| a.space().gen(i)).collect();
    primitives(a, &gens)
}

/// A basis of the free graded Lie algebra on homogeneous generators, given
/// by bracketed Lyndon words together with `[l, l]` for odd-degree Lyndon `l`.
#[derive(Clone, Debug)]
pub struct LieBasis {
    pub elements: Vec<Element>,
    /// The Lyndon word over generator indices (doubled for squares).
    pub labels: Vec<Vec<usize>>,
    pub degrees: Vec<i64>,
}

impl LieBasis {
    pub fn dimensions(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for d in &self.degrees {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn in_degree(&self, degree: i64) -> Vec<&Element> {
        self.elements.iter().zip(&self.degrees).filter(|(_, &d)| d == degree).map(|(e, _)| e).collect()
    }
}

/// Lyndon words of length `1..=max_len` over `k` letters (Duval's algorithm).
pub fn lyndon_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(l) => *l += 1,
        }
    }
    out
}

fn is_lyndon(w: &[usize]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w)
}

fn standard_bracketing(w: &[usize], gens: &[Element]) -> Element {
    if w.len() == 1 {
        return gens[w[0]].clone();
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("a single letter is Lyndon");
    bracket(&standard_bracketing(&w[..split], gens), &standard_bracketing(&w[split..], gens))
}

/// Bracket notation for a basis label, e.g. `[x,[x,y]]`; doubled labels of
/// odd elements print as a square `[l,l]`.
pub fn bracket_label(label: &[usize], names: &[String]) -> String {
    fn go(w: &[usize], names: &[String]) -> String {
        if w.len() == 1 {
            return names[w[0]].clone();
        }
        let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("a single letter is Lyndon");
        format!("[{},{}]", go(&w[..split], names), go(&w[split..], names))
    }
    let h = label.len() / 2;
    if label.len().is_multiple_of(2) && label[..h] == label[h..] {
        let l = go(&label[..h], names);
        return format!("[{},{}]", l, l);
    }
    go(label, names)
}

/// The Lie basis on the homogeneous elements `gens` within the caps.
pub fn lie_basis(gens: &[Element], max_degree: i64, max_length: usize) -> LieBasis {
    let gdeg: Vec<i64> = gens.iter().map(element_degree).collect();
    let mut basis = LieBasis { elements: Vec::new(), labels: Vec::new(), degrees: Vec::new() };
    for w in lyndon_words(gens.len(), max_length) {
        let d: i64 = w.iter().map(|&i| gdeg[i]).sum();
        if d > max_degree {
            continue;
        }
        let e = standard_bracketing(&w, gens);
        if is_odd(d) && 2 * d <= max_degree && 2 * w.len() <= max_length {
            basis.elements.push(bracket(&e, &e));
            basis.labels.push(w.iter().chain(w.iter()).cloned().collect());
            basis.degrees.push(2 * d);
        }
        basis.elements.push(e);
        basis.labels.push(w);
        basis.degrees.push(d);
    }
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by_key(|&i| (basis.degrees[i], basis.labels[i].len(), basis.labels[i].clone()));
    LieBasis {
        elements: idx.iter().map(|&i| basis.elements[i].clone()).collect(),
        labels: idx.iter().map(|&i| basis.labels[i].clone()).collect(),
        degrees: idx.iter().map(|&i| basis.degrees[i]).collect(),
    }
}

/// Per-degree dimensions of the primitives of `T^a(C̃)` within the caps,
/// computed as the kernel of the reduced coproduct.
pub fn primitive_dimensions(a: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Result<BTreeMap<i64, usize>> {
    let ext = PsiExtension::new(a, 2);
    let ws = words(a, max_degree, max_length)?;
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    for w in &ws {
        out.entry(w.degree()).or_insert(0);
    }
    for p in primitives(&ext, &ws) {
        *out.entry(element_degree(&p)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Compares the Lie basis count with the primitive kernel, degree by degree.
pub fn check_milnor_moore(a: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("milnor-moore").param("max-degree", max_degree).param("max-length", max_length);
    let kernel_dims = primitive_dimensions(a, max_degree, max_length)?;
    let lie = lie_basis(&coalgebra_primitives(a), max_degree, max_length).dimensions();
    for (&d, &k) in &kernel_dims {
        let l = lie.get(&d).copied().unwrap_or(0);
        if k != l {
            report.fail(format!("degree {}", d), format!("kernel dimension {} vs Lie basis {}", k, l));
        }
    }
    report.note(format!(
        "dimensions: {}",
        kernel_dims.iter().map(|(d, k)| format!("{}:{}", d, k)).collect::<Vec<_>>().join(" ")
    ));
    report.elapsed = start.elapsed();
    Ok(report)
}

fn pairs_within(ws: &[Word], max_degree: i64, max_length: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for u in ws {
        for v in ws {
            if u.degree() + v.degree() <= max_degree && u.len() + v.len() <= max_length {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

fn multiply_pairs(x: &TensorElement<Pair<Word, Word>>) -> Element {
    x.map_terms(x.arity(), |w| TensorElement::basis(w.iter().map(|Pair(a, b)| a.concat(b)).collect()))
}

/// The bialgebra relation `ψ_r ∘ μ = μ^{⊗r} ∘ Ψ_r` on pairs of words, for
/// `r = 2 ..= max_arity`. `dropped` omits one term of the cellular diagonal
/// on the right-hand side.
pub fn check_bialgebra(
    a: &AInfCoalgebra,
    max_degree: i64,
    max_length: usize,
    max_arity: usize,
    dropped: Option<(usize, usize)>,
) -> Result<Report> {
    let start = Instant::now();
    let ext = PsiExtension::new(a, max_arity);
    let mut tp = TensorProduct::new(&ext, &ext, max_arity);
    if let Some((r, i)) = dropped {
        tp = tp.with_dropped_term(r, i);
    }
    let ws = words(a, max_degree, max_length)?;
    let mut report = Report::new("check-bialgebra")
        .param("max-degree", max_degree)
        .param("max-length", max_length)
        .param("max-arity", max_arity);
    for r in 2..=max_arity {
        for (u, v) in pairs_within(&ws, max_degree, max_length) {
            let lhs = ext.cooperation(r, &u.concat(&v));
            let mut res = multiply_pairs(&tp.cooperation(r, &Pair(u.clone(), v.clone())));
            res.sub_assign(&lhs);
            if !res.is_zero() {
                report.fail(
                    format!("r={}, x={}, y={}", r, a.show(&u), a.show(&v)),
                    res.render_with(|k| a.show(k)),
                );
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Quadratic relations for the reduced ϱ-extension on all words within caps.
pub fn check_primitive_ainf(a: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Result<Report> {
    let rho = RhoExtension::new(a);
    let ws = words(a, max_degree, max_length)?;
    let mut report = check_relations(&Reduced(&rho), "check-primitive", &ws, a.relation_range())
        .param("max-degree", max_degree)
        .param("max-length", max_length);
    let gens_primitive = coalgebra_primitives(a).len() == a.space().len();
    if !gens_primitive {
        report.note("not every generator is primitive; the ϱ-extension is outside its hypotheses");
    }
    Ok(report)
}

/// `2ψ_2 = ϱ_2` and `ψ_3 = ϱ_3` on decomposable words (reduced parts).
pub fn check_rho_identities(a: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Result<Report> {
    let start = Instant::now();
    let rho = RhoExtension::new(a);
    let psi_ext = rho.psi();
    let mut report = Report::new("rho-identities").param("max-degree", max_degree).param("max-length", max_length);
    for w in words(a, max_degree, max_length)?.into_iter().filter(|w| w.len() >= 2) {
        let mut two = psi_ext.cooperation(2, &w).scaled(&q(2));
        two.sub_assign(&rho.cooperation(2, &w));
        two = two.filter_factors(|f| !f.is_unit());
        if !two.is_zero() {
            report.fail(format!("2ψ₂ vs ϱ₂ at {}", a.show(&w)), two.render_with(|k| a.show(k)));
        }
        let mut three = psi_ext_arity(a, 3).cooperation(3, &w);
        three.sub_assign(&rho.cooperation(3, &w));
        if !three.is_zero() {
            report.fail(format!("ψ₃ vs ϱ₃ at {}", a.show(&w)), three.render_with(|k| a.show(k)));
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn psi_ext_arity(a: &AInfCoalgebra, r: usize) -> PsiExtension<'_> {
    PsiExtension::new(a, r)
}

/// The recursive and closed-form ϱ-extensions agree.
pub fn check_rho_closed_form(a: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Result<Report> {
    let start = Instant::now();
    let rho = RhoExtension::new(a);
    let mut report = Report::new("rho-closed-form").param("max-degree", max_degree).param("max-length", max_length);
    for w in words(a, max_degree, max_length)? {
        for r in 3..=a.max_arity() {
            let mut d = rho.cooperation(r, &w);
            d.sub_assign(&rho.closed_form(r, &w));
            if !d.is_zero() {
                report.fail(format!("r={}, x={}", r, a.show(&w)), d.render_with(|k| a.show(k)));
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// The span of `r`-fold tensor products of Lie basis elements and the unit,
/// restricted to one total degree.
pub struct TensorSpan {
    echelon: Echelon<Vec<Word>>,
    pub generators: usize,
}

impl TensorSpan {
    pub fn new(lie: &LieBasis, r: usize, degree: i64) -> Self {
        let mut factors: Vec<(Element, i64)> = vec![(word_element(Word::unit()), 0)];
        factors.extend(lie.elements.iter().cloned().zip(lie.degrees.iter().cloned()));
        let mut echelon = Echelon::new();
        let mut count = 0;
        let mut stack: Vec<(TensorElement<Word>, i64)> = vec![(TensorElement::basis(Vec::new()), 0)];
        for _ in 0..r {
            let mut next = Vec::new();
            for (t, d) in &stack {
                for (f, fd) in &factors {
                    if d + fd <= degree {
                        next.push((t.tensor(f), d + fd));
                    }
                }
            }
            stack = next;
        }
        for (t, d) in stack {
            if d == degree {
                echelon.insert(&to_sparse(&t));
                count += 1;
            }
        }
        TensorSpan { echelon, generators: count }
    }

    pub fn contains(&self, x: &TensorElement<Word>) -> bool {
        self.echelon.contains(&to_sparse(x))
    }
}

fn to_sparse(x: &TensorElement<Word>) -> SparseVec<Vec<Word>> {
    x.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

fn lie_basis_for(a: &AInfCoalgebra, max_degree: i64, max_length: usize) -> LieBasis {
    lie_basis(&coalgebra_primitives(a), max_degree, max_length)
}

/// Checks that `c_r` maps every Lie basis element into the span of tensor
/// words of Lie basis elements, for `r = 2 ..= max_arity`. Returns the
/// report; a failure locates the offending element.
pub fn check_preserves_primitives<C: Cooperations<Key = Word>>(
    c: &C,
    name: &str,
    lie: &LieBasis,
    max_degree: i64,
    arities: std::ops::RangeInclusive<usize>,
) -> Report {
    let start = Instant::now();
    let mut report = Report::new(name).param("max-degree", max_degree).param("lie-basis", lie.len());
    let mut spans: BTreeMap<(usize, i64), TensorSpan> = BTreeMap::new();
    for r in arities {
        for (b, &d) in lie.elements.iter().zip(&lie.degrees) {
            if d > max_degree {
                continue;
            }
            let img = apply(c, r, b);
            if img.is_zero() {
                continue;
            }
            let target = d + op_degree(r);
            let span = spans.entry((r, target)).or_insert_with(|| TensorSpan::new(lie, r, target));
            if !span.contains(&img) {
                report.fail(
                    format!("r={}, b={}", r, b.render_with(|w| c.show(w))),
                    img.render_with(|w| c.show(w)),
                );
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

pub fn check_rho_preserves_primitives(a: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Report {
    let rho = RhoExtension::new(a);
    let lie = lie_basis_for(a, max_degree, max_length);
    check_preserves_primitives(&rho, "rho-preserves-primitives", &lie, max_degree, 2..=a.max_arity())
        .param("max-length", max_length)
}

/// Searches for a Lie basis element whose `ψ_r`-image (ψ-extension) leaves
/// the span of Lie tensor words. Returns `None` if none exists within caps.
pub fn find_psi_nonpreservation(
    a: &AInfCoalgebra,
    max_degree: i64,
    max_length: usize,
    arities: std::ops::RangeInclusive<usize>,
) -> Option<(usize, Element, Element)> {
    let ext = PsiExtension::new(a, *arities.end());
    let lie = lie_basis_for(a, max_degree, max_length);
    for r in arities {
        for (b, &d) in lie.elements.iter().zip(&lie.degrees) {
            let img = apply(&ext, r, b);
            if img.is_zero() {
                continue;
            }
            if !TensorSpan::new(&lie, r, d + op_degree(r)).contains(&img) {
                return Some((r, b.clone(), img));
            }
        }
    }
    None
}

/// Right side of the bracket formula: `x` inserted into each factor of `ϱ(y)`
/// and `y` into each factor of `ϱ(x)`, as brackets with Koszul signs.
pub fn bracket_insertion(x: &Element, cx: &TensorElement<Word>, y: &Element, cy: &TensorElement<Word>) -> TensorElement<Word> {
    let r = cx.arity();
    let dx = element_degree(x);
    let dy = element_degree(y);
    let mut out = TensorElement::zero(r);
    for (ys, c) in cy.terms() {
        let mut prefix = 0;
        for i in 0..r {
            let odd = is_odd(op_degree(r) * dx + dx * prefix);
            let br = bracket(x, &word_element(ys[i].clone()));
            let mut t = TensorElement::basis(ys[..i].to_vec());
            t = t.tensor(&br).tensor(&TensorElement::basis(ys[i + 1..].to_vec()));
            out.add_scaled(&t, &if odd { -c.clone() } else { c.clone() });
            prefix += ys[i].degree();
        }
    }
    for (xs, c) in cx.terms() {
        let mut suffix: i64 = xs.iter().map(Graded::degree).sum();
        for i in 0..r {
            suffix -= xs[i].degree();
            let odd = is_odd(dy * suffix);
            let br = bracket(&word_element(xs[i].clone()), y);
            let mut t = TensorElement::basis(xs[..i].to_vec());
            t = t.tensor(&br).tensor(&TensorElement::basis(xs[i + 1..].to_vec()));
            out.add_scaled(&t, &if odd { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// The bracket formula for a family `f` on ordered pairs of Lie basis elements.
pub fn check_bracket_formula(
    name: &str,
    lie: &LieBasis,
    max_degree: i64,
    arities: std::ops::RangeInclusive<usize>,
    f: impl Fn(usize, &Element) -> TensorElement<Word>,
    show: impl Fn(&Word) -> String,
) -> Report {
    let start = Instant::now();
    let mut report = Report::new(name).param("max-degree", max_degree).param("lie-basis", lie.len());
    for r in arities {
        for (x, &dx) in lie.elements.iter().zip(&lie.degrees) {
            for (y, &dy) in lie.elements.iter().zip(&lie.degrees) {
                if dx + dy > max_degree {
                    continue;
                }
                let mut res = f(r, &bracket(x, y));
                res.sub_assign(&bracket_insertion(x, &f(r, x), y, &f(r, y)));
                if !res.is_zero() {
                    report.fail(
                        format!("r={}, x={}, y={}", r, x.render_with(&show), y.render_with(&show)),
                        res.render_with(&show),
                    );
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// The bracket formula for the reduced ϱ-extension.
pub fn check_rho_bracket_formula(a: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Report {
    let rho = RhoExtension::new(a);
    let red = Reduced(&rho);
    let lie = lie_basis_for(a, max_degree, max_length);
    check_bracket_formula("rho-bracket-formula", &lie, max_degree, 2..=a.max_arity(), |r, x| apply(&red, r, x), |w| {
        a.show(w)
    })
    .param("max-length", max_length)
}

/// Coefficient of a single word in an element (helper for callers).
pub fn coefficient(x: &Element, w: &Word) -> Q {
    x.terms().find(|(v, _)| v[0] == *w).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
}
