//! Python bindings. Structures are loaded from JSON text, files or the
//! built-ins; checks return `Report` objects; elements are returned as text.

use pyo3::prelude::*;

#[pymodule]
pub mod hocoalg {
    use std::collections::BTreeMap;

    use pyo3::exceptions::{PyIOError, PyValueError};
    use pyo3::prelude::*;

    use hc::ainf::{check_ainf, check_cinf, Cooperations};
    use hc::associahedron::{diagonal as cell_diagonal, PlanarTree};
    use hc::hopf::{self, Extension, Mode, DEFAULT_MAX_DEGREE, DEFAULT_MAX_LENGTH};
    use hc::linf::{self, PlStructure};
    use hc::pipeline::{run_pipeline, Caps};
    use hc::structure;

    fn err(e: hc::Error) -> PyErr {
        match e {
            hc::Error::Io(e) => PyIOError::new_err(e.to_string()),
            e => PyValueError::new_err(e.to_string()),
        }
    }

    /// The outcome of one check.
    #[pyclass(frozen)]
    pub struct Report(hc::report::Report);

    #[pymethods]
    impl Report {
        #[getter]
        fn check(&self) -> String {
            self.0.check.clone()
        }

        #[getter]
        fn passed(&self) -> bool {
            self.0.passed()
        }

        #[getter]
        fn verdict(&self) -> &'static str {
            self.0.verdict()
        }

        #[getter]
        fn failures(&self) -> usize {
            self.0.failures
        }

        /// `(location, residual)` pairs for the first few failures.
        #[getter]
        fn witnesses(&self) -> Vec<(String, String)> {
            self.0.witnesses.iter().map(|w| (w.location.clone(), w.residual.clone())).collect()
        }

        #[getter]
        fn notes(&self) -> Vec<String> {
            self.0.notes.clone()
        }

        #[getter]
        fn parameters(&self) -> BTreeMap<String, String> {
            self.0.parameters.iter().cloned().collect()
        }

        #[getter]
        fn elapsed(&self) -> f64 {
            self.0.elapsed.as_secs_f64()
        }

        fn to_json(&self) -> String {
            serde_json::to_string(&self.0).expect("serializable")
        }

        fn __bool__(&self) -> bool {
            self.0.passed()
        }

        fn __str__(&self) -> String {
            self.0.to_string()
        }

        fn __repr__(&self) -> String {
            format!("<Report {} {}>", self.0.check, self.0.verdict())
        }
    }

    /// A validated A∞-coalgebra structure with its flags.
    #[pyclass(frozen)]
    pub struct Structure(structure::Structure);

    impl Structure {
        fn a(&self) -> &hc::ainf::AInfCoalgebra {
            &self.0.coalgebra
        }
    }

    #[pymethods]
    impl Structure {
        #[staticmethod]
        fn from_json(text: &str) -> PyResult<Self> {
            structure::parse_str(text).map(Structure).map_err(err)
        }

        #[staticmethod]
        fn load(path: std::path::PathBuf) -> PyResult<Self> {
            structure::parse_path(&path).map(Structure).map_err(err)
        }

        #[staticmethod]
        fn builtin(name: &str) -> PyResult<Self> {
            structure::builtin(name).map(Structure).map_err(err)
        }

        fn to_json(&self) -> String {
            structure::to_json(&self.0)
        }

        #[getter]
        fn name(&self) -> String {
            self.a().name.clone()
        }

        /// `(id, degree)` for each reduced generator.
        #[getter]
        fn generators(&self) -> Vec<(String, i64)> {
            self.a().space().generators().iter().map(|g| (g.id.clone(), g.degree)).collect()
        }

        #[getter]
        fn max_arity(&self) -> usize {
            self.a().max_arity()
        }

        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE))]
        fn check_ainf(&self, max_degree: i64) -> Report {
            Report(check_ainf(self.a(), max_degree))
        }

        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE))]
        fn check_cinf(&self, max_degree: i64) -> Report {
            Report(check_cinf(self.a(), max_degree))
        }

        /// Primitives of the coalgebra, rendered.
        fn primitives(&self) -> Vec<String> {
            hopf::coalgebra_primitives(self.a()).iter().map(|p| self.a().space().render_element(p)).collect()
        }

        /// Per-degree dimensions of the primitives of the tensor algebra.
        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH))]
        fn primitive_dimensions(&self, max_degree: i64, max_length: usize) -> PyResult<BTreeMap<i64, usize>> {
            hopf::primitive_dimensions(self.a(), max_degree, max_length).map_err(err)
        }

        /// `(degree, bracket)` for each Lie basis element.
        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH))]
        fn lie_basis(&self, max_degree: i64, max_length: usize) -> Vec<(i64, String)> {
            let prims = hopf::coalgebra_primitives(self.a());
            let names = self.primitive_names(&prims);
            let lie = hopf::lie_basis(&prims, max_degree, max_length);
            lie.labels.iter().zip(&lie.degrees).map(|(l, &d)| (d, hopf::bracket_label(l, &names))).collect()
        }

        /// `ψ_r` or `ϱ_r` of a word such as `"x.w"`, rendered.
        #[pyo3(signature = (arity, word, mode = "rho"))]
        fn extend(&self, arity: usize, word: &str, mode: &str) -> PyResult<String> {
            let mode: Mode = mode.parse().map_err(err)?;
            let w = structure::parse_word(self.a().space(), word).map_err(err)?;
            let ext = Extension::new(self.a(), mode, arity.max(2));
            let v = hopf::apply(&ext, arity, &hopf::word_element(w));
            Ok(v.render_with(|k| self.a().show(k)))
        }

        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH))]
        fn check_primitive(&self, max_degree: i64, max_length: usize) -> PyResult<Report> {
            hopf::check_primitive_ainf(self.a(), max_degree, max_length).map(Report).map_err(err)
        }

        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH, max_arity = 4))]
        fn check_bialgebra(&self, max_degree: i64, max_length: usize, max_arity: usize) -> PyResult<Report> {
            hopf::check_bialgebra(self.a(), max_degree, max_length, max_arity, None).map(Report).map_err(err)
        }

        /// `(bracket, r, ℓ^r(bracket))` for every nonzero value on the Lie basis.
        #[pyo3(signature = (max_arity = 3, max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH))]
        fn symmetrize(&self, max_arity: usize, max_degree: i64, max_length: usize) -> Vec<(String, usize, String)> {
            let pl = PlStructure::new(self.a(), max_degree, max_length);
            let names = self.primitive_names(&hopf::coalgebra_primitives(self.a()));
            let mut out = Vec::new();
            for (b, label) in pl.lie.elements.iter().zip(&pl.lie.labels) {
                for r in 2..=max_arity {
                    let e = pl.ell(r, b);
                    if !e.is_zero() {
                        out.push((hopf::bracket_label(label, &names), r, e.render_with(|k| self.a().show(k))));
                    }
                }
            }
            out
        }

        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH, max_arity = 4))]
        fn check_linf(&self, max_degree: i64, max_length: usize, max_arity: usize) -> Report {
            Report(PlStructure::new(self.a(), max_degree, max_length).check_linf(max_arity))
        }

        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH))]
        fn check_lbialgebra(&self, max_degree: i64, max_length: usize) -> Report {
            Report(PlStructure::new(self.a(), max_degree, max_length).check_bialgebra(max_degree))
        }

        #[pyo3(signature = (degree, max_length = DEFAULT_MAX_LENGTH))]
        fn ell3_rank(&self, degree: i64, max_length: usize) -> usize {
            linf::ell3_rank_invariant(self.a(), degree, max_length)
        }

        /// The full chain of checks, in order.
        #[pyo3(signature = (max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH))]
        fn pipeline(&self, max_degree: i64, max_length: usize) -> PyResult<Vec<Report>> {
            let caps = Caps { max_degree, max_length, ..Caps::default() };
            let b = run_pipeline(&self.0, caps).map_err(err)?;
            Ok(b.reports.into_iter().map(Report).collect())
        }

        fn __repr__(&self) -> String {
            format!("<Structure {} ({} generators)>", self.a().name, self.a().space().len())
        }
    }

    impl Structure {
        fn primitive_names(&self, prims: &[hc::graded::TensorElement<hc::graded::Word>]) -> Vec<String> {
            let sp = self.a().space();
            prims
                .iter()
                .enumerate()
                .map(|(i, p)| match p.terms().next() {
                    Some((w, c)) if p.len() == 1 && *c == hc::graded::q(1) => sp.render_word(&w[0]),
                    _ => format!("p{}", i),
                })
                .collect()
        }
    }

    /// Signed terms `(sign, left, right)` of the cellular diagonal of a cell
    /// (the top cell of `K_arity` by default).
    #[pyfunction]
    #[pyo3(signature = (arity, cell = None))]
    fn diagonal(arity: usize, cell: Option<&str>) -> PyResult<Vec<(i64, String, String)>> {
        let t = match cell {
            Some(c) => PlanarTree::parse(c).map_err(err)?,
            None => PlanarTree::corolla(arity),
        };
        if t.arity() != arity {
            return Err(PyValueError::new_err(format!("cell {} has arity {}, not {}", t, t.arity(), arity)));
        }
        Ok(cell_diagonal(&t)
            .terms()
            .map(|(w, c)| (if *c > hc::graded::q(0) { 1 } else { -1 }, w[0].to_string(), w[1].to_string()))
            .collect())
    }

    type Ranks = BTreeMap<i64, usize>;

    /// `(verdict, (ranks of a, ranks of b))` comparing ℓ³ ranks by degree.
    #[pyfunction]
    #[pyo3(signature = (a, b, max_degree = DEFAULT_MAX_DEGREE, max_length = DEFAULT_MAX_LENGTH))]
    fn compare(
        a: &Structure,
        b: &Structure,
        max_degree: i64,
        max_length: usize,
    ) -> PyResult<(String, (Ranks, Ranks))> {
        let c = linf::compare(a.a(), b.a(), max_degree, max_length).map_err(err)?;
        Ok((c.verdict().to_string(), c.ell3_ranks))
    }

    #[pyfunction]
    fn builtin_names() -> Vec<&'static str> {
        structure::builtin_names().to_vec()
    }
}
