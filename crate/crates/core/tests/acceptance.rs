//! Acceptance suite: one line per criterion. All comparisons are exact
//! (rational arithmetic, tolerance zero); time budgets are pinned below.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use hocoalg::ainf::{check_ainf, check_cinf};
use hocoalg::associahedron::{all_cells, boundary, cell_boundary, diagonal, diagonal_defect, max_vertex, min_vertex};
use hocoalg::graded::{q, TensorElement, Word};
use hocoalg::hopf;
use hocoalg::linf::{self, PlStructure};
use hocoalg::report::Report;
use hocoalg::structure::{example1, example2, parse_word};

const BUDGET_BOUNDARY: Duration = Duration::from_secs(10);
const BUDGET_DIAGONAL: Duration = Duration::from_secs(30);
const BUDGET_MILNOR_MOORE: Duration = Duration::from_secs(60);
const BUDGET_SUITE: Duration = Duration::from_secs(300);

struct Line {
    id: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn line(id: &'static str, start: Instant, passed: bool, detail: impl Into<String>) -> Line {
    Line { id, passed, detail: detail.into(), elapsed: start.elapsed() }
}

fn summary(r: &Report) -> String {
    match r.witnesses.first() {
        None => format!("{}: pass", r.check),
        Some(w) => format!("{}: {} failing location(s), first at {}", r.check, r.failures, w.location),
    }
}

fn c1() -> Line {
    let t = Instant::now();
    let mut cells = 0;
    let mut bad = Vec::new();
    for n in 2..=7 {
        for c in all_cells(n) {
            cells += 1;
            if c.dimension() < 2 {
                continue;
            }
            let d = cell_boundary(&c).expect("positive dimension");
            if !boundary(&d).expect("homogeneous").is_zero() {
                bad.push(c.to_string());
            }
        }
    }
    let ok = bad.is_empty() && t.elapsed() < BUDGET_BOUNDARY;
    line("1 associahedron ∂∂ = 0, n ≤ 7", t, ok, format!("{} cells, {} failing {:?}", cells, bad.len(), bad))
}

fn c2() -> Line {
    let t = Instant::now();
    let mut cells = 0;
    let mut bad = Vec::new();
    for n in 2..=6 {
        for c in all_cells(n) {
            cells += 1;
            let d = diagonal(&c);
            let normalized = d.coeff(&[min_vertex(&c), c.clone()]) == q(1) && d.coeff(&[c.clone(), max_vertex(&c)]) == q(1);
            if !diagonal_defect(&c).is_zero() || !normalized {
                bad.push(c.to_string());
            }
        }
    }
    let ok = bad.is_empty() && t.elapsed() < BUDGET_DIAGONAL;
    line(
        "2 diagonal chain map + normalization, n ≤ 6",
        t,
        ok,
        format!("{} cells, {} failing {:?}", cells, bad.len(), bad),
    )
}

fn c3() -> Vec<Line> {
    let a = example1();
    let t = Instant::now();
    let r = check_ainf(&a, 12);
    let l1 = line("3a example1 passes check_ainf", t, r.passed(), summary(&r));
    let t = Instant::now();
    let r = check_cinf(&a, 12);
    let l2 = line("3b example1 passes check_cinf", t, r.passed(), summary(&r));
    let t = Instant::now();
    let r = hopf::check_primitive_ainf(&a, 12, 4).expect("caps valid");
    let l3 = line("3c example1 primitive (D=12, L=4)", t, r.passed(), summary(&r));
    vec![l1, l2, l3]
}

fn c4() -> Line {
    let t = Instant::now();
    let r = hopf::check_rho_identities(&example1(), 12, 4).expect("caps valid");
    line("4 2ψ₂ = ϱ₂ and ψ₃ = ϱ₃ on decomposables", t, r.passed(), summary(&r))
}

fn c5() -> Line {
    let a = example1();
    let t = Instant::now();
    let r = hopf::check_rho_preserves_primitives(&a, 10, 5);
    let witness = match hopf::find_psi_nonpreservation(&a, 10, 4, 4..=5) {
        Some((r, b, _)) => format!("ψ-extension leaves primitives at r={} on {}", r, a.space().render_element(&b)),
        None => "no witness at this truncation".to_string(),
    };
    line("5 ϱ_r preserves primitives (deg ≤ 10)", t, r.passed(), format!("{}; {}", summary(&r), witness))
}

fn c6() -> Line {
    let a = example1();
    let t = Instant::now();
    let mut r = PlStructure::new(&a, 9, 4).check_bialgebra(9);
    r.absorb(hopf::check_rho_bracket_formula(&a, 9, 4));
    line("6 bracket formula, pairs of total degree ≤ 9", t, r.passed(), summary(&r))
}

fn c7() -> Line {
    let t = Instant::now();
    let r = PlStructure::new(&example1(), 12, 4).check_linf(4);
    line("7 ℓ² = 0 and L∞ axioms (i), (ii) through arity 4", t, r.passed(), summary(&r))
}

/// Parses `c word ± c word ...` with `⊗`-separated generator ids.
fn printed_tensor(text: &str) -> TensorElement<Word> {
    let a = example1();
    let mut x = TensorElement::zero(3);
    let mut sign = 1;
    for tok in text.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t => {
                let w: Vec<Word> = t.split('⊗').map(|g| parse_word(a.space(), g).unwrap()).collect();
                x.add_term(w, q(sign));
            }
        }
    }
    x
}

fn c8() -> Line {
    let t = Instant::now();
    let a = example1();
    let expected = printed_tensor("x⊗y⊗z - y⊗x⊗z + y⊗z⊗x - x⊗z⊗y + z⊗x⊗y - z⊗y⊗x");
    let w = TensorElement::basis(vec![parse_word(a.space(), "w").unwrap()]);
    let got = PlStructure::new(&a, 5, 4).ell(3, &w);
    let ok = got == expected && got.len() == 6;
    line("8 ℓ³(w₅) equals the six-term tensor", t, ok, a.space().render_element(&got))
}

fn c9() -> Line {
    let t = Instant::now();
    let (a, b) = (example1(), example2());
    let (ra, rb) = (linf::ell3_rank_invariant(&a, 5, 4), linf::ell3_rank_invariant(&b, 5, 4));
    let c = linf::compare(&a, &b, 10, 4).expect("caps valid");
    let ok = ra == 1 && rb == 0 && c.lie_isomorphic && c.distinguished_by_ell3;
    line("9 ℓ³ rank 1 vs 0 in degree 5; compare verdict", t, ok, format!("ranks {} / {}; {}", ra, rb, c.verdict()))
}

/// Free graded Lie dimensions from the PBW identity
/// `Π_even (1 - t^d)^{-L_d} Π_odd (1 + t^d)^{L_d} = 1 / (1 - Σ t^{|g|})`.
fn pbw_dimensions(gen_degrees: &[i64], max_degree: i64) -> BTreeMap<i64, usize> {
    let n = max_degree as usize;
    let mut tensor = vec![0i64; n + 1];
    tensor[0] = 1;
    for d in 1..=n {
        tensor[d] = gen_degrees.iter().filter(|&&g| g as usize <= d).map(|&g| tensor[d - g as usize]).sum();
    }
    let mut product = vec![0i64; n + 1];
    product[0] = 1;
    let mut dims = BTreeMap::new();
    for d in 1..=n {
        let l = tensor[d] - product[d];
        dims.insert(d as i64, l as usize);
        for _ in 0..l {
            if d % 2 == 0 {
                // multiply by 1 / (1 - t^d)
                for k in d..=n {
                    product[k] += product[k - d];
                }
            } else {
                // multiply by (1 + t^d)
                for k in (d..=n).rev() {
                    product[k] += product[k - d];
                }
            }
        }
    }
    dims.retain(|_, v| *v > 0);
    dims
}

fn c10() -> Line {
    let t = Instant::now();
    let a = example1();
    let r = hopf::check_milnor_moore(&a, 10, 5).expect("caps valid");
    let mut kernel = hopf::primitive_dimensions(&a, 10, 5).expect("caps valid");
    kernel.retain(|_, v| *v > 0);
    let degs: Vec<i64> = a.space().generators().iter().map(|g| g.degree).collect();
    let pbw = pbw_dimensions(&degs, 10);
    let ok = r.passed() && kernel == pbw && t.elapsed() < BUDGET_MILNOR_MOORE;
    let dims: Vec<String> = kernel.iter().map(|(d, n)| format!("{}:{}", d, n)).collect();
    line(
        "10 Milnor–Moore: kernel dims = Lyndon count = PBW count, deg ≤ 10",
        t,
        ok,
        format!("{}; dims {}", summary(&r), dims.join(" ")),
    )
}

fn main() {
    let start = Instant::now();
    let mut lines = vec![c1(), c2()];
    lines.extend(c3());
    lines.extend([c4(), c5(), c6(), c7(), c8(), c9(), c10()]);
    println!();
    println!("acceptance (exact arithmetic; budgets 10 s / 30 s / 60 s / suite 300 s)");
    for l in &lines {
        println!(
            "{} criterion {:<62} ({:>7.2?})  {}",
            if l.passed { "PASS" } else { "FAIL" },
            l.id,
            l.elapsed,
            l.detail
        );
    }
    let total = start.elapsed();
    let failed = lines.iter().filter(|l| !l.passed).count();
    println!(
        "{} of {} criteria passed in {:.2?} (suite budget {})",
        lines.len() - failed,
        lines.len(),
        total,
        if total < BUDGET_SUITE { "met" } else { "EXCEEDED" }
    );
    if failed > 0 || total >= BUDGET_SUITE {
        std::process::exit(1);
    }
}
