//! Python bindings for `domkit`.
//!
//! Groups are exchanged by reference (`Group`), elements by index. Subgroups
//! are passed and returned as sorted lists of element indices.

use std::sync::Arc;

use domkit::certify::{self, Certificate};
use domkit::dominion::{self, TestFamily, DEFAULT_MAX_ORDER};
use domkit::fingroup::{parse_cayley, read_cayley, write_cayley};
use domkit::nil2::{self, element_index};
use domkit::word::free_equal as words_free_equal;
use domkit::{ElementSet, FiniteGroup, Nil2Element, Nil2Params};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(domkit_py, DomkitError, PyException);

fn err(e: domkit::Error) -> PyErr {
    DomkitError::new_err(e.to_string())
}

fn parse_err(e: domkit::ParseError) -> PyErr {
    DomkitError::new_err(e.to_string())
}

#[pyclass(name = "Word", frozen, skip_from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWord(domkit::Word);

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        domkit::Word::parse(text).map(PyWord).map_err(parse_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }

    fn __mul__(&self, other: &PyWord) -> PyWord {
        PyWord(self.0.mul(&other.0))
    }

    fn inv(&self) -> PyWord {
        PyWord(self.0.inv())
    }

    fn pow(&self, n: i64) -> PyWord {
        PyWord(self.0.pow(n))
    }

    fn commutator(&self, other: &PyWord) -> PyWord {
        PyWord(self.0.commutator(&other.0))
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn length(&self) -> u64 {
        self.0.length()
    }
}

/// Equality in the free group.
#[pyfunction]
fn free_equal(u: &PyWord, v: &PyWord) -> bool {
    words_free_equal(&u.0, &v.0)
}

#[pyclass(name = "Nil2Params", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNil2Params(Nil2Params);

#[pymethods]
impl PyNil2Params {
    /// `K(a0, b0, k0)`; a zero modulus means infinite order.
    #[new]
    fn new(a0: u64, b0: u64, k0: u64) -> PyResult<Self> {
        Nil2Params::k(a0, b0, k0).map(PyNil2Params).map_err(err)
    }

    fn group_order(&self) -> Option<u128> {
        self.0.group_order()
    }

    fn collect(&self, word: &PyWord) -> PyResult<PyNil2Element> {
        nil2::collect(&word.0, &self.0).map(PyNil2Element).map_err(err)
    }

    fn element(&self, a: i64, b: i64, c: i64) -> PyResult<PyNil2Element> {
        Nil2Element::triple(&self.0, a, b, c).map(PyNil2Element).map_err(err)
    }

    fn realize(&self) -> PyResult<PyGroup> {
        nil2::realize_finite(&self.0).map(|g| PyGroup(Arc::new(g))).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Nil2Params({})", self.0)
    }
}

#[pyclass(name = "Nil2Element", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq, Eq)]
struct PyNil2Element(Nil2Element);

#[pymethods]
impl PyNil2Element {
    fn __mul__(&self, other: &PyNil2Element) -> PyResult<PyNil2Element> {
        self.0.mul(&other.0).map(PyNil2Element).map_err(err)
    }

    fn inv(&self) -> PyNil2Element {
        PyNil2Element(self.0.inv())
    }

    fn pow(&self, n: i64) -> PyNil2Element {
        PyNil2Element(self.0.pow(n))
    }

    fn commutator(&self, other: &PyNil2Element) -> PyResult<PyNil2Element> {
        self.0.commutator(&other.0).map(PyNil2Element).map_err(err)
    }

    /// Element order; 0 for infinite order.
    fn order(&self) -> u64 {
        self.0.order()
    }

    fn member_subgroup_p(&self, p: u64) -> PyResult<bool> {
        self.0.member_subgroup_p(p).map_err(err)
    }

    /// Index in the realized finite group.
    fn index(&self) -> PyResult<usize> {
        element_index(&self.0).map_err(err)
    }

    fn exponents(&self) -> (Vec<String>, Vec<String>) {
        (
            self.0.gen_exps().iter().map(|b| b.to_string()).collect(),
            self.0.comm_exps().iter().map(|b| b.to_string()).collect(),
        )
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "Group", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup(Arc<FiniteGroup>);

fn subgroup(g: &FiniteGroup, elems: Vec<usize>) -> PyResult<ElementSet> {
    let s = ElementSet::new(elems);
    if s.iter().any(|a| a >= g.order()) {
        return Err(DomkitError::new_err("element index out of range"));
    }
    Ok(s)
}

fn family(g: &Arc<FiniteGroup>, max_order: Option<usize>) -> PyResult<TestFamily> {
    TestFamily::quotient_closed(Arc::clone(g), "G", max_order.unwrap_or(DEFAULT_MAX_ORDER)).map_err(err)
}

/// `(target label, f images, g images)`.
type WitnessTuple = (String, Vec<usize>, Vec<usize>);

#[pymethods]
impl PyGroup {
    #[staticmethod]
    fn read(path: &str) -> PyResult<PyGroup> {
        read_cayley(path).map(|g| PyGroup(Arc::new(g))).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyGroup> {
        parse_cayley(text).map(|g| PyGroup(Arc::new(g))).map_err(err)
    }

    fn to_cayley(&self) -> String {
        write_cayley(&self.0)
    }

    fn order(&self) -> usize {
        self.0.order()
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.0.inv(a)
    }

    fn pow(&self, a: usize, n: i64) -> usize {
        self.0.pow(a, n)
    }

    fn commutator(&self, a: usize, b: usize) -> usize {
        self.0.commutator(a, b)
    }

    fn element_order(&self, a: usize) -> usize {
        self.0.element_order(a)
    }

    fn name(&self, a: usize) -> String {
        self.0.name(a)
    }

    fn find(&self, label: &str) -> Option<usize> {
        self.0.find_element(label)
    }

    fn generators(&self) -> Option<Vec<usize>> {
        self.0.generators().map(<[usize]>::to_vec)
    }

    fn generated_subgroup(&self, seeds: Vec<usize>) -> Vec<usize> {
        self.0.generated_subgroup(&seeds).as_slice().to_vec()
    }

    /// Orders of the derived series terms, from `G` down.
    fn derived_series(&self) -> Vec<usize> {
        self.0.derived_series().terms.iter().map(ElementSet::len).collect()
    }

    fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.0.normal_subgroups().iter().map(|s| s.as_slice().to_vec()).collect()
    }

    /// Quotient by a normal subgroup, with the projection as a list.
    fn quotient(&self, normal: Vec<usize>) -> PyResult<(PyGroup, Vec<usize>)> {
        let n = subgroup(&self.0, normal)?;
        let (q, map) = self.0.quotient(&n).map_err(err)?;
        Ok((PyGroup(Arc::new(q)), map))
    }

    /// Dominion of `h` relative to the quotient-closed family of this group.
    #[pyo3(signature = (h, max_order=None))]
    fn dominion(&self, h: Vec<usize>, max_order: Option<usize>) -> PyResult<Vec<usize>> {
        let h = subgroup(&self.0, h)?;
        let fam = family(&self.0, max_order)?;
        let d = dominion::dominion_overapprox(&self.0, &h, &fam).map_err(err)?;
        Ok(d.as_slice().to_vec())
    }

    /// A pair of homomorphisms agreeing on `h` and differing on `a`, as
    /// `(target_label, f_images, g_images)`, or `None` if none exists.
    #[pyo3(signature = (h, a, max_order=None))]
    fn witness(
        &self,
        h: Vec<usize>,
        a: usize,
        max_order: Option<usize>,
    ) -> PyResult<Option<WitnessTuple>> {
        let h = subgroup(&self.0, h)?;
        let fam = family(&self.0, max_order)?;
        let w = dominion::find_witness(&self.0, &h, &fam, a).map_err(err)?;
        Ok(w.map(|w| (fam.provenance()[w.target].to_string(), w.f, w.g)))
    }

    #[pyo3(signature = (h, v, w, n, max_order=None))]
    fn certify_half_nontrivial(
        &self,
        h: Vec<usize>,
        v: usize,
        w: usize,
        n: i64,
        max_order: Option<usize>,
    ) -> PyResult<PyCertificate> {
        let h = subgroup(&self.0, h)?;
        let fam = family(&self.0, max_order)?;
        certify::certify_half_nontrivial(&self.0, &h, v, w, n, &fam)
            .map(PyCertificate)
            .map_err(err)
    }

    #[pyo3(signature = (h, x, y, z, d=2, max_order=None))]
    #[allow(clippy::too_many_arguments)]
    fn certify_metabelian(
        &self,
        h: Vec<usize>,
        x: usize,
        y: usize,
        z: usize,
        d: usize,
        max_order: Option<usize>,
    ) -> PyResult<PyCertificate> {
        let h = subgroup(&self.0, h)?;
        let fam = family(&self.0, max_order)?;
        certify::certify_metabelian(&self.0, &h, x, y, z, &fam, d)
            .map(PyCertificate)
            .map_err(err)
    }

    /// `(triples, hypotheses_hold, violations)` of the exchange scan.
    fn exchange_scan(&self) -> (u64, u64, u64) {
        let r = certify::verify_lemma31_scan(&self.0);
        (r.triples, r.hypotheses_hold, r.violations)
    }

    fn __repr__(&self) -> String {
        format!("Group(order={})", self.0.order())
    }
}

#[pyclass(name = "Certificate", frozen)]
struct PyCertificate(Certificate);

#[pymethods]
impl PyCertificate {
    #[getter]
    fn valid(&self) -> bool {
        self.0.is_valid()
    }

    #[getter]
    fn element(&self) -> usize {
        self.0.element
    }

    #[getter]
    fn element_name(&self) -> String {
        self.0.element_name.clone()
    }

    #[getter]
    fn steps(&self) -> usize {
        self.0.steps.len()
    }

    fn render(&self) -> String {
        self.0.render_text()
    }
}

/// Runs the command-line front end; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = domkit::cli::run(std::iter::once("domkit".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn domkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DomkitError", m.py().get_type::<DomkitError>())?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyNil2Params>()?;
    m.add_class::<PyNil2Element>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(free_equal, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
