//! Symmetrization of A∞-coalgebras to L∞-coalgebras, the L∞ axioms, the
//! L∞-bialgebra bracket compatibility and the ℓ³ rank invariant.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::One;

use crate::ainf::{psi, AInfCoalgebra, Cooperations};
use crate::error::Result;
use crate::graded::{full_symmetrize, is_odd, q, shuffle_sum, TensorElement, Word, Q};
use crate::hopf::{
    apply, check_bracket_formula, coalgebra_primitives, element_degree, lie_basis, LieBasis, Reduced, RhoExtension,
};
use crate::linalg;
use crate::report::Report;

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `ℓ^r = S(r) ∘ c_r` on top of a family of (reduced) cooperations, with
/// `ℓ^1 = d`. No `1/r!` normalization.
pub struct LInf<'c, C: Cooperations<Key = Word>> {
    c: &'c C,
    max_arity: usize,
    broken: Option<(usize, usize)>,
    unsymmetrized: bool,
}

impl<'c, C: Cooperations<Key = Word>> LInf<'c, C> {
    pub fn new(c: &'c C) -> Self {
        LInf { c, max_arity: c.max_arity(), broken: None, unsymmetrized: false }
    }

    /// Negates the `index`-th term of every `ℓ^r` output (mutation testing).
    pub fn with_broken_sign(mut self, r: usize, index: usize) -> Self {
        self.broken = Some((r, index));
        self
    }

    /// Uses `c_r` in place of `S(r) ∘ c_r` (mutation testing).
    pub fn unsymmetrized(mut self) -> Self {
        self.unsymmetrized = true;
        self
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn show(&self, w: &Word) -> String {
        self.c.show(w)
    }

    /// `ℓ^r` on a single word.
    pub fn ell_word(&self, r: usize, w: &Word) -> TensorElement<Word> {
        let img = psi(self.c, r, w);
        if r == 1 || self.unsymmetrized {
            return img;
        }
        let mut out = full_symmetrize(r, &img).expect("arity matches");
        if let Some((br, idx)) = self.broken {
            if br == r {
                let picked = out.terms().nth(idx).map(|(t, c)| (t.clone(), c.clone()));
                if let Some((t, c)) = picked {
                    out.add_term(t, -(c * q(2)));
                }
            }
        }
        out
    }

    /// `ℓ^r` on an element of `T^a(C̃)`.
    pub fn ell(&self, r: usize, x: &TensorElement<Word>) -> TensorElement<Word> {
        x.map_terms(r, |w| self.ell_word(r, &w[0]))
    }

    /// `S(i, n-i) ∘ (ℓ^i ⊗ 1^{⊗n-i}) ∘ ℓ^{1+n-i}` at `x`.
    fn axiom_term(&self, n: usize, i: usize, x: &TensorElement<Word>) -> TensorElement<Word> {
        let inner = self.ell(1 + n - i, x);
        if inner.is_zero() {
            return TensorElement::zero(n);
        }
        let outer = inner.map_terms(n, |w| {
            let head = self.ell_word(i, &w[0]);
            head.tensor(&TensorElement::basis(w[1..].to_vec()))
        });
        shuffle_sum(i, n, &outer).expect("arity matches")
    }

    /// Left side of axiom (ii) in arity `n`.
    pub fn axiom_residual(&self, n: usize, x: &TensorElement<Word>) -> TensorElement<Word> {
        let mut out = TensorElement::zero(n);
        for i in 1..=n {
            let s = if is_odd((i * (n - i)) as i64) { -Q::one() } else { Q::one() };
            out.add_scaled(&self.axiom_term(n, i, x), &s);
        }
        out
    }
}

/// Axiom (i) in the scaled form `S(r) ∘ ℓ^r = r!·ℓ^r` and axiom (ii) for
/// arities up to `max_n`, on every element of `basis`.
pub fn check_linf<C: Cooperations<Key = Word>>(
    l: &LInf<'_, C>,
    basis: &[TensorElement<Word>],
    max_n: usize,
) -> Report {
    let start = Instant::now();
    let mut report = Report::new("check-linf").param("max-n", max_n).param("basis", basis.len());
    let show = |w: &Word| l.show(w);
    for x in basis {
        for r in 2..=max_n {
            let e = l.ell(r, x);
            let mut res = full_symmetrize(r, &e).expect("arity matches");
            res.sub_assign(&e.scaled(&q(factorial(r))));
            if !res.is_zero() {
                report.fail(format!("axiom (i), r={}, x={}", r, x.render_with(show)), res.render_with(show));
            }
        }
        for n in 1..=max_n {
            let res = l.axiom_residual(n, x);
            if !res.is_zero() {
                report.fail(format!("axiom (ii), n={}, x={}", n, x.render_with(show)), res.render_with(show));
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// The symmetrization of the coalgebra itself on its generators.
pub fn check_linf_coalgebra(a: &AInfCoalgebra, max_n: usize) -> Report {
    let red = Reduced(a);
    let l = LInf::new(&red);
    let basis: Vec<TensorElement<Word>> =
        (0..a.space().len()).map(|i| TensorElement::basis(vec![a.space().gen(i)])).collect();
    check_linf(&l, &basis, max_n).param("structure", &a.name)
}

/// The L∞-bialgebra on `L(PC)` built from the ϱ-extension, within caps.
pub struct PlStructure<'a> {
    pub rho: RhoExtension<'a>,
    pub lie: LieBasis,
    pub max_degree: i64,
    pub max_length: usize,
}

impl<'a> PlStructure<'a> {
    pub fn new(a: &'a AInfCoalgebra, max_degree: i64, max_length: usize) -> Self {
        PlStructure {
            rho: RhoExtension::new(a),
            lie: lie_basis(&coalgebra_primitives(a), max_degree, max_length),
            max_degree,
            max_length,
        }
    }

    pub fn base(&self) -> &AInfCoalgebra {
        self.rho.base()
    }

    /// `ℓ^r` on a Lie basis element.
    pub fn ell(&self, r: usize, x: &TensorElement<Word>) -> TensorElement<Word> {
        let red = Reduced(&self.rho);
        LInf::new(&red).ell(r, x)
    }

    /// `(Lie basis element, r, ℓ^r(element))` for every nonzero value.
    pub fn table(&self, max_arity: usize) -> Vec<(TensorElement<Word>, usize, TensorElement<Word>)> {
        let mut out = Vec::new();
        for b in &self.lie.elements {
            for r in 2..=max_arity {
                let e = self.ell(r, b);
                if !e.is_zero() {
                    out.push((b.clone(), r, e));
                }
            }
        }
        out
    }

    /// Checks `ℓ² = 0`, then the axioms through arity `max_n`.
    pub fn check_linf(&self, max_n: usize) -> Report {
        let red = Reduced(&self.rho);
        let l = LInf::new(&red);
        let mut report = check_linf(&l, &self.lie.elements, max_n)
            .param("max-degree", self.max_degree)
            .param("max-length", self.max_length);
        for b in &self.lie.elements {
            let e = l.ell(2, b);
            if !e.is_zero() {
                report.fail(
                    format!("ℓ² ≠ 0 (Δ₂ on primitives is not cocommutative) at {}", b.render_with(|w| l.show(w))),
                    e.render_with(|w| l.show(w)),
                );
            }
        }
        report
    }

    /// The bracket formula for `ℓ^r` on ordered pairs of Lie basis elements.
    pub fn check_bialgebra(&self, max_degree: i64) -> Report {
        let red = Reduced(&self.rho);
        let l = LInf::new(&red);
        self.check_bialgebra_with(&l, max_degree)
    }

    pub fn check_bialgebra_with<C: Cooperations<Key = Word>>(&self, l: &LInf<'_, C>, max_degree: i64) -> Report {
        let a = self.base();
        check_bracket_formula("check-lbialgebra", &self.lie, max_degree, 2..=a.max_arity(), |r, x| l.ell(r, x), |w| {
            a.show(w)
        })
        .param("max-length", self.max_length)
    }

    /// Rank of `ℓ³` restricted to the Lie basis elements of `degree`.
    pub fn ell3_rank(&self, degree: i64) -> usize {
        let cols: Vec<linalg::SparseVec<Vec<Word>>> = self
            .lie
            .in_degree(degree)
            .into_iter()
            .map(|b| self.ell(3, b).terms().map(|(w, c)| (w.clone(), c.clone())).collect())
            .collect();
        linalg::rank(&cols)
    }
}

/// Rank of `ℓ³` on the span of the given elements (any basis of a degree).
pub fn ell3_rank_on(pl: &PlStructure<'_>, elements: &[TensorElement<Word>]) -> usize {
    let cols: Vec<linalg::SparseVec<Vec<Word>>> =
        elements.iter().map(|b| pl.ell(3, b).terms().map(|(w, c)| (w.clone(), c.clone())).collect()).collect();
    linalg::rank(&cols)
}

pub fn ell3_rank_invariant(a: &AInfCoalgebra, degree: i64, max_length: usize) -> usize {
    PlStructure::new(a, degree, max_length).ell3_rank(degree)
}

/// Result of comparing two structures.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Comparison {
    pub lie_dimensions: (BTreeMap<i64, usize>, BTreeMap<i64, usize>),
    pub ell3_ranks: (BTreeMap<i64, usize>, BTreeMap<i64, usize>),
    pub lie_isomorphic: bool,
    pub distinguished_by_ell3: bool,
}

impl Comparison {
    pub fn verdict(&self) -> &'static str {
        match (self.lie_isomorphic, self.distinguished_by_ell3) {
            (true, true) => "Lie-isomorphic, distinguished by ℓ³ as L∞-bialgebras",
            (true, false) => "Lie-isomorphic, not distinguished by ℓ³",
            (false, _) => "not Lie-isomorphic",
        }
    }
}

/// Per-degree Lie dimensions and ℓ³ ranks of two structures.
pub fn compare(a: &AInfCoalgebra, b: &AInfCoalgebra, max_degree: i64, max_length: usize) -> Result<Comparison> {
    let pa = PlStructure::new(a, max_degree, max_length);
    let pb = PlStructure::new(b, max_degree, max_length);
    let da = pa.lie.dimensions();
    let db = pb.lie.dimensions();
    let ranks = |p: &PlStructure<'_>, dims: &BTreeMap<i64, usize>| -> BTreeMap<i64, usize> {
        dims.keys().map(|&d| (d, p.ell3_rank(d))).collect()
    };
    let ra = ranks(&pa, &da);
    let rb = ranks(&pb, &db);
    let lie_isomorphic = da == db;
    let distinguished_by_ell3 = ra != rb;
    Ok(Comparison { lie_dimensions: (da, db), ell3_ranks: (ra, rb), lie_isomorphic, distinguished_by_ell3 })
}

/// Degree of a homogeneous element, re-exported for callers of this module.
pub fn degree_of(x: &TensorElement<Word>) -> i64 {
    element_degree(x)
}

/// `ℓ^r` image of a single element under the plain symmetrization of `a`.
pub fn symmetrize_element(a: &AInfCoalgebra, r: usize, x: &TensorElement<Word>) -> TensorElement<Word> {
    let red = Reduced(a);
    LInf::new(&red).ell(r, x)
}

/// The ϱ-family on an element, reduced (for callers comparing with ℓ).
pub fn rho_element(rho: &RhoExtension<'_>, r: usize, x: &TensorElement<Word>) -> TensorElement<Word> {
    apply(&Reduced(rho), r, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{Generator, GradedSpace};

    /// The deconcatenation coproduct on the tensor coalgebra; its
    /// antisymmetrization is a Lie cobracket.
    struct Deconcatenation(GradedSpace);

    impl Cooperations for Deconcatenation {
        type Key = Word;
        fn max_arity(&self) -> usize {
            2
        }
        fn differential(&self, _: &Word) -> TensorElement<Word> {
            TensorElement::zero(1)
        }
        fn cooperation(&self, r: usize, w: &Word) -> TensorElement<Word> {
            let mut out = TensorElement::zero(r);
            if r == 2 {
                let l = w.letters();
                for k in 1..l.len() {
                    out.add_term(
                        vec![Word::from_letters(&self.0, l[..k].to_vec()), Word::from_letters(&self.0, l[k..].to_vec())],
                        Q::one(),
                    );
                }
            }
            out
        }
        fn show(&self, w: &Word) -> String {
            self.0.render_word(w)
        }
    }

    #[test]
    fn co_jacobi_for_antisymmetrized_deconcatenation() {
        let space = GradedSpace::new(
            vec![
                Generator { id: "a".into(), degree: 1 },
                Generator { id: "b".into(), degree: 2 },
                Generator { id: "c".into(), degree: 3 },
            ],
            true,
        )
        .unwrap();
        let d = Deconcatenation(space.clone());
        let l = LInf::new(&d);
        let basis: Vec<TensorElement<Word>> =
            space.words(9, 4).unwrap().into_iter().map(|w| TensorElement::basis(vec![w])).collect();
        let report = check_linf(&l, &basis, 3);
        assert!(report.passed(), "{}", report);
    }

    #[test]
    fn broken_sign_detected() {
        let space = GradedSpace::new(
            vec![Generator { id: "a".into(), degree: 1 }, Generator { id: "b".into(), degree: 2 }],
            true,
        )
        .unwrap();
        let d = Deconcatenation(space.clone());
        let l = LInf::new(&d).with_broken_sign(2, 0);
        let basis = vec![TensorElement::basis(vec![Word::from_letters(&space, vec![0, 1])])];
        assert!(!check_linf(&l, &basis, 3).passed());
    }
}
