//! A∞- and C∞-coalgebra structures: operadic evaluation of trees, the
//! quadratic relation checker, the shuffle-vanishing check and tensor
//! products via the cellular diagonal.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::One;

use crate::associahedron::{diagonal, PlanarTree};
use crate::error::{Error, Result};
use crate::graded::{
    interleave_pairs, is_odd, q, word_degree, Graded, GradedMap, GradedSpace, Pair, Permutation, TensorElement,
    Word, Q,
};
use crate::report::Report;

/// A family of cooperations `ψ_r : C → C^{⊗r}` of degree `r - 2` together
/// with a differential `ψ_1 = d` of degree `-1`, given on basis elements.
pub trait Cooperations {
    type Key: Graded;

    /// Cooperations of higher arity are zero.
    fn max_arity(&self) -> usize;
    fn differential(&self, x: &Self::Key) -> TensorElement<Self::Key>;
    fn cooperation(&self, r: usize, x: &Self::Key) -> TensorElement<Self::Key>;
    fn show(&self, x: &Self::Key) -> String;
    fn is_unit(&self, _x: &Self::Key) -> bool {
        false
    }
}

/// `ψ_r(x)` with `ψ_1 = d`.
pub fn psi<C: Cooperations + ?Sized>(c: &C, r: usize, x: &C::Key) -> TensorElement<C::Key> {
    match r {
        0 => TensorElement::zero(0),
        1 => c.differential(x),
        r if r > c.max_arity() => TensorElement::zero(r),
        r => c.cooperation(r, x),
    }
}

pub fn op_degree(r: usize) -> i64 {
    r as i64 - 2
}

/// `(1^{⊗slot} ⊗ ψ_r ⊗ 1^{⊗...})(x)` with the Koszul sign of moving `ψ_r`
/// past the first `slot` factors.
pub fn apply_at<C: Cooperations + ?Sized>(
    c: &C,
    r: usize,
    x: &TensorElement<C::Key>,
    slot: usize,
) -> TensorElement<C::Key> {
    let arity = x.arity() + r - 1;
    x.map_terms(arity, |w| {
        let img = psi(c, r, &w[slot]);
        let mut out = TensorElement::zero(arity);
        if img.is_zero() {
            return out;
        }
        let sign = if is_odd(op_degree(r) * word_degree(&w[..slot])) { -Q::one() } else { Q::one() };
        for (iw, ic) in img.terms() {
            let mut nw = w[..slot].to_vec();
            nw.extend(iw.iter().cloned());
            nw.extend(w[slot + 1..].iter().cloned());
            out.add_term(nw, ic * &sign);
        }
        out
    })
}

/// Applies `f_1 ⊗ ... ⊗ f_m` (maps of degrees `degs`) to `x`, with
/// `(f_1 ⊗ ... ⊗ f_m)(a_1 ⊗ ... ⊗ a_m) = ± f_1(a_1) ⊗ ... ⊗ f_m(a_m)`.
fn apply_tensor_of_maps<K: Graded>(
    x: &TensorElement<K>,
    degs: &[i64],
    out_arity: usize,
    mut f: impl FnMut(usize, &K) -> TensorElement<K>,
) -> TensorElement<K> {
    x.map_terms(out_arity, |w| {
        let mut acc = TensorElement::basis(Vec::new());
        let mut prefix = 0i64;
        let mut odd = false;
        for (j, a) in w.iter().enumerate() {
            if is_odd(degs[j] * prefix) {
                odd = !odd;
            }
            prefix += a.degree();
            let img = f(j, a);
            acc = acc.tensor(&img);
            if acc.is_zero() {
                return TensorElement::zero(out_arity);
            }
        }
        if odd {
            acc.neg()
        } else {
            acc
        }
    })
}

/// The composite cooperation `ψ(t)(x)`: `ψ_m` at the root, then the
/// children's composites on the corresponding tensor slots. Degree is the
/// dimension of `t`.
pub fn apply_tree<C: Cooperations + ?Sized>(c: &C, t: &PlanarTree, x: &C::Key) -> TensorElement<C::Key> {
    match t {
        PlanarTree::Leaf => TensorElement::basis(vec![x.clone()]),
        PlanarTree::Node(ch) => {
            let top = psi(c, ch.len(), x);
            if top.is_zero() {
                return TensorElement::zero(t.arity());
            }
            let degs: Vec<i64> = ch.iter().map(|s| s.dimension() as i64).collect();
            apply_tensor_of_maps(&top, &degs, t.arity(), |j, a| apply_tree(c, &ch[j], a))
        }
    }
}

/// `d` on a tensor power: `Σ_i 1^{⊗i} ⊗ d ⊗ 1^{⊗...}` with Koszul signs.
pub fn tensor_differential<C: Cooperations + ?Sized>(c: &C, x: &TensorElement<C::Key>) -> TensorElement<C::Key> {
    let mut out = TensorElement::zero(x.arity());
    for slot in 0..x.arity() {
        out.add_assign(&apply_at(c, 1, x, slot));
    }
    out
}

/// Residual of the quadratic relation of arity `n` at `x`:
/// `Σ (-1)^{k(n+i+1)} (1^{⊗i} ⊗ ψ_{k+1} ⊗ 1^{⊗n-k-1-i}) ψ_{n-k}(x)`.
pub fn relation_residual<C: Cooperations + ?Sized>(c: &C, n: usize, x: &C::Key) -> TensorElement<C::Key> {
    let mut out = TensorElement::zero(n);
    for k in 0..n {
        let outer = psi(c, n - k, x);
        if outer.is_zero() {
            continue;
        }
        for i in 0..n - k {
            let term = apply_at(c, k + 1, &outer, i);
            let sign = if is_odd((k * (n + i + 1)) as i64) { -Q::one() } else { Q::one() };
            out.add_scaled(&term, &sign);
        }
    }
    out
}

/// Checks the quadratic relations for `n = 1 ..= max_n` on every element
/// of `basis`.
pub fn check_relations<C: Cooperations + ?Sized>(
    c: &C,
    name: &str,
    basis: &[C::Key],
    max_n: usize,
) -> Report {
    let start = Instant::now();
    let mut report = Report::new(name).param("max-n", max_n).param("basis", basis.len());
    for n in 1..=max_n {
        for x in basis {
            let res = relation_residual(c, n, x);
            if !res.is_zero() {
                report.fail(format!("n={}, x={}", n, c.show(x)), res.render_with(|k| c.show(k)));
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// Signed unshuffle sum `Σ_{σ ∈ Sh(p, r-p)} sgn(σ) ε(σ) a_{σ(1)} ⊗ ... ⊗ a_{σ(r)}`.
pub fn unshuffle_sum<K: Graded>(p: usize, x: &TensorElement<K>) -> TensorElement<K> {
    let r = x.arity();
    let mut out = TensorElement::zero(r);
    for sigma in Permutation::shuffles(p, r) {
        let moved = crate::graded::permute(&sigma, x).expect("arity matches");
        out.add_scaled(&moved, &q(sigma.sign()));
    }
    out
}

/// The C∞ condition: every signed `(p, q)`-unshuffle sum of the reduced
/// `ψ_r(x)` vanishes (dually, `ψ_r^*` kills shuffle products).
pub fn check_shuffle_vanishing<C: Cooperations + ?Sized>(c: &C, name: &str, basis: &[C::Key]) -> Report {
    let start = Instant::now();
    let mut report = Report::new(name).param("max-arity", c.max_arity()).param("basis", basis.len());
    for r in 2..=c.max_arity() {
        for x in basis {
            let img = psi(c, r, x).filter_factors(|k| !c.is_unit(k));
            if img.is_zero() {
                continue;
            }
            for p in 1..r {
                let res = unshuffle_sum(p, &img);
                if !res.is_zero() {
                    report.fail(
                        format!("r={}, split=({},{}), x={}", r, p, r - p, c.show(x)),
                        res.render_with(|k| c.show(k)),
                    );
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// An A∞-coalgebra on a finite connected graded space. `ψ_2` is the
/// counital coproduct `1 ⊗ c + c ⊗ 1 + (reduced part)`; `ψ_2(1) = 1 ⊗ 1`
/// and `ψ_r(1) = 0` for `r ≥ 3`.
#[derive(Clone, Debug)]
pub struct AInfCoalgebra {
    pub name: String,
    space: GradedSpace,
    differential: BTreeMap<u32, TensorElement<Word>>,
    /// arity → generator → image; for arity two only the reduced part.
    cooperations: BTreeMap<usize, BTreeMap<u32, TensorElement<Word>>>,
    max_arity: usize,
}

fn check_factors(space: &GradedSpace, x: &TensorElement<Word>) -> Result<()> {
    for (w, _) in x.terms() {
        for f in w {
            if f.len() > 1 || f.letters().iter().any(|&l| l as usize >= space.len()) {
                return Err(Error::Structure(format!("factor {:?} is not a basis element of the space", f)));
            }
        }
    }
    Ok(())
}

impl AInfCoalgebra {
    pub fn new(name: impl Into<String>, space: GradedSpace) -> Self {
        AInfCoalgebra { name: name.into(), space, differential: BTreeMap::new(), cooperations: BTreeMap::new(), max_arity: 2 }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    fn degree_check(&self, gen: usize, shift: i64, img: &TensorElement<Word>, what: &str) -> Result<()> {
        let g = &self.space.generators()[gen];
        for d in img.degrees() {
            if d != g.degree + shift {
                return Err(Error::DegreeViolation(format!(
                    "{} of `{}` (degree {}) has a term of degree {}, expected {}",
                    what,
                    g.id,
                    g.degree,
                    d,
                    g.degree + shift
                )));
            }
        }
        Ok(())
    }

    pub fn set_differential(&mut self, gen: usize, img: TensorElement<Word>) -> Result<()> {
        if img.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: img.arity() });
        }
        check_factors(&self.space, &img)?;
        self.degree_check(gen, -1, &img, "differential")?;
        if img.is_zero() {
            self.differential.remove(&(gen as u32));
        } else {
            self.differential.insert(gen as u32, img);
        }
        Ok(())
    }

    /// Sets `Δ_r(gen)`; for `r = 2` give only the reduced part.
    pub fn set_cooperation(&mut self, r: usize, gen: usize, img: TensorElement<Word>) -> Result<()> {
        if r < 2 {
            return Err(Error::OutOfRange(format!("cooperation arity {} < 2", r)));
        }
        if img.arity() != r {
            return Err(Error::ArityMismatch { expected: r, found: img.arity() });
        }
        check_factors(&self.space, &img)?;
        self.degree_check(gen, op_degree(r), &img, &format!("Δ_{}", r))?;
        let table = self.cooperations.entry(r).or_default();
        if img.is_zero() {
            table.remove(&(gen as u32));
        } else {
            table.insert(gen as u32, img);
        }
        self.max_arity = self
            .cooperations
            .iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(&r, _)| r)
            .max()
            .unwrap_or(2)
            .max(2);
        Ok(())
    }

    pub fn reduced_cooperation(&self, r: usize, gen: usize) -> TensorElement<Word> {
        self.cooperations
            .get(&r)
            .and_then(|t| t.get(&(gen as u32)))
            .cloned()
            .unwrap_or_else(|| TensorElement::zero(r))
    }

    pub fn differential_of(&self, gen: usize) -> TensorElement<Word> {
        self.differential.get(&(gen as u32)).cloned().unwrap_or_else(|| TensorElement::zero(1))
    }

    pub fn has_differential(&self) -> bool {
        !self.differential.is_empty()
    }

    pub fn basis(&self, degree_cap: i64) -> Vec<Word> {
        self.space.basis(degree_cap)
    }

    /// `ψ_r` recorded on the whole (finite) basis.
    pub fn cooperation_map(&self, r: usize) -> GradedMap<Word> {
        let mut m = GradedMap::new(op_degree(r), r);
        for b in self.basis(i64::MAX) {
            m.assign(b.clone(), psi(self, r, &b)).expect("validated on construction");
        }
        m
    }

    /// `ψ(t)` recorded on the whole basis.
    pub fn evaluate_cell(&self, t: &PlanarTree) -> Result<GradedMap<Word>> {
        if t.is_leaf() {
            return Err(Error::Precondition("evaluate_cell needs a tree with at least two leaves".into()));
        }
        let mut m = GradedMap::new(t.dimension() as i64, t.arity());
        for b in self.basis(i64::MAX) {
            m.assign(b.clone(), apply_tree(self, t, &b))?;
        }
        Ok(m)
    }

    /// Relation arities `1 ..= 2·max_arity - 1`; beyond that every summand
    /// vanishes.
    pub fn relation_range(&self) -> usize {
        2 * self.max_arity - 1
    }
}

impl Cooperations for AInfCoalgebra {
    type Key = Word;

    fn max_arity(&self) -> usize {
        self.max_arity
    }

    fn differential(&self, x: &Word) -> TensorElement<Word> {
        match x.letters() {
            [g] => self.differential_of(*g as usize),
            _ => TensorElement::zero(1),
        }
    }

    fn cooperation(&self, r: usize, x: &Word) -> TensorElement<Word> {
        match x.letters() {
            [] => {
                if r == 2 {
                    TensorElement::basis(vec![Word::unit(), Word::unit()])
                } else {
                    TensorElement::zero(r)
                }
            }
            [g] => {
                let mut out = self.reduced_cooperation(r, *g as usize);
                if r == 2 {
                    out.add_term(vec![Word::unit(), x.clone()], Q::one());
                    out.add_term(vec![x.clone(), Word::unit()], Q::one());
                }
                out
            }
            _ => TensorElement::zero(r),
        }
    }

    fn show(&self, x: &Word) -> String {
        self.space.render_word(x)
    }

    fn is_unit(&self, x: &Word) -> bool {
        x.is_unit()
    }
}

pub fn check_ainf(a: &AInfCoalgebra, degree_cap: i64) -> Report {
    let basis = a.basis(degree_cap);
    check_relations(a, "check-ainf", &basis, a.relation_range()).param("max-degree", degree_cap)
}

pub fn check_cinf(a: &AInfCoalgebra, degree_cap: i64) -> Report {
    let basis = a.basis(degree_cap);
    check_shuffle_vanishing(a, "check-cinf", &basis).param("max-degree", degree_cap)
}

/// The tensor product `(A ⊗ B, {Ψ_r})` with
/// `Ψ_r = χ ∘ (ψ^A ⊗ ψ^B) ∘ Δ_K(e^{r-2})`.
pub struct TensorProduct<'a, A: Cooperations, B: Cooperations> {
    a: &'a A,
    b: &'a B,
    max_arity: usize,
    flipped: Vec<(usize, usize)>,
    dropped: Option<(usize, usize)>,
}

impl<'a, A: Cooperations, B: Cooperations> TensorProduct<'a, A, B> {
    pub fn new(a: &'a A, b: &'a B, max_arity: usize) -> Self {
        TensorProduct { a, b, max_arity, flipped: Vec::new(), dropped: None }
    }

    /// Negates the `index`-th term of `Δ_K(e^{r-2})` (mutation testing).
    pub fn with_flipped_term(mut self, r: usize, index: usize) -> Self {
        self.flipped.push((r, index));
        self
    }

    /// Omits the `index`-th term of `Δ_K(e^{r-2})` (mutation testing).
    pub fn with_dropped_term(mut self, r: usize, index: usize) -> Self {
        self.dropped = Some((r, index));
        self
    }

    pub fn basis(&self, a_basis: &[A::Key], b_basis: &[B::Key], degree_cap: i64) -> Vec<Pair<A::Key, B::Key>> {
        let mut out = Vec::new();
        for x in a_basis {
            for y in b_basis {
                if x.degree() + y.degree() <= degree_cap {
                    out.push(Pair(x.clone(), y.clone()));
                }
            }
        }
        out
    }
}

impl<A: Cooperations, B: Cooperations> Cooperations for TensorProduct<'_, A, B> {
    type Key = Pair<A::Key, B::Key>;

    fn max_arity(&self) -> usize {
        self.max_arity
    }

    fn differential(&self, p: &Self::Key) -> TensorElement<Self::Key> {
        let Pair(x, y) = p;
        let mut out = TensorElement::zero(1);
        for (w, c) in self.a.differential(x).terms() {
            out.add_term(vec![Pair(w[0].clone(), y.clone())], c.clone());
        }
        let s = if is_odd(x.degree()) { -Q::one() } else { Q::one() };
        for (w, c) in self.b.differential(y).terms() {
            out.add_term(vec![Pair(x.clone(), w[0].clone())], c * &s);
        }
        out
    }

    fn cooperation(&self, r: usize, p: &Self::Key) -> TensorElement<Self::Key> {
        let Pair(x, y) = p;
        let mut out = TensorElement::zero(r);
        for (idx, (w, s)) in diagonal(&PlanarTree::corolla(r)).terms().enumerate() {
            if self.dropped == Some((r, idx)) {
                continue;
            }
            let (ta, tb) = (&w[0], &w[1]);
            let fa = apply_tree(self.a, ta, x);
            if fa.is_zero() {
                continue;
            }
            let fb = apply_tree(self.b, tb, y);
            if fb.is_zero() {
                continue;
            }
            let mut sign = s.clone();
            if is_odd(tb.dimension() as i64 * x.degree()) {
                sign = -sign;
            }
            if self.flipped.contains(&(r, idx)) {
                sign = -sign;
            }
            out.add_scaled(&interleave_pairs(&fa, &fb), &sign);
        }
        out
    }

    fn show(&self, p: &Self::Key) -> String {
        format!("({}|{})", self.a.show(&p.0), self.b.show(&p.1))
    }

    fn is_unit(&self, p: &Self::Key) -> bool {
        self.a.is_unit(&p.0) && self.b.is_unit(&p.1)
    }
}

pub fn check_tensor_ainf(a: &AInfCoalgebra, b: &AInfCoalgebra, degree_cap: i64, max_arity: usize) -> Report {
    let t = TensorProduct::new(a, b, max_arity);
    let basis = t.basis(&a.basis(degree_cap), &b.basis(degree_cap), degree_cap);
    check_relations(&t, "check-tensor-ainf", &basis, max_arity)
        .param("max-degree", degree_cap)
        .param("factors", format!("{} ⊗ {}", a.name, b.name))
}

/// Chain-map defect of `t ↦ ψ(t)` at `x`:
/// `ψ(∂t)(x) - (d ψ(t) - (-1)^{|t|} ψ(t) d)(x)`.
pub fn cell_chain_map_defect<C: Cooperations + ?Sized>(c: &C, t: &PlanarTree, x: &C::Key) -> TensorElement<C::Key> {
    let n = t.arity();
    let mut out = TensorElement::zero(n);
    if t.dimension() > 0 {
        for (f, coeff) in crate::associahedron::cell_boundary(t).expect("cell").terms() {
            out.add_scaled(&apply_tree(c, &f[0], x), coeff);
        }
    }
    let ft = apply_tree(c, t, x);
    out.sub_assign(&tensor_differential(c, &ft));
    let sign = if t.dimension() % 2 == 1 { -Q::one() } else { Q::one() };
    for (w, coeff) in c.differential(x).terms() {
        out.add_scaled(&apply_tree(c, t, &w[0]), &(coeff * &sign));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;

    /// `d b = a`, both primitive.
    fn small_dgc() -> AInfCoalgebra {
        let space = GradedSpace::new(
            vec![Generator { id: "a".into(), degree: 1 }, Generator { id: "b".into(), degree: 2 }],
            true,
        )
        .unwrap();
        let a = space.gen(0);
        let mut c = AInfCoalgebra::new("dgc", space);
        c.set_differential(1, TensorElement::basis(vec![a])).unwrap();
        c
    }

    #[test]
    fn corolla_evaluates_to_cooperation() {
        let c = small_dgc();
        let b = c.space().gen(1);
        assert_eq!(apply_tree(&c, &PlanarTree::corolla(2), &b), psi(&c, 2, &b));
        let lc = apply_tree(&c, &PlanarTree::left_comb(3), &b);
        let manual = apply_at(&c, 2, &psi(&c, 2, &b), 0);
        assert_eq!(lc, manual);
    }

    #[test]
    fn dgc_passes_relations() {
        let c = small_dgc();
        assert!(check_ainf(&c, 10).passed());
    }

    #[test]
    fn chain_map_on_dgc() {
        let c = small_dgc();
        for n in 2..=5 {
            for t in crate::associahedron::all_cells(n) {
                for x in c.basis(10) {
                    assert!(cell_chain_map_defect(&c, &t, &x).is_zero(), "{} at {:?}", t, x);
                }
            }
        }
    }

    #[test]
    fn wrong_degree_rejected() {
        let mut c = small_dgc();
        let a = c.space().gen(0);
        let b = c.space().gen(1);
        assert!(c.set_cooperation(3, 1, TensorElement::basis(vec![b, a.clone(), a.clone()])).is_err());
        assert!(c.set_cooperation(3, 1, TensorElement::basis(vec![a.clone(), a.clone(), a])).is_ok());
    }
}
