use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wreath_eq as core;
use wreath_eq::{GroupElem, Instance, Problem, SolveOptions, Verdict};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solver_err(e: core::Error) -> PyErr {
    match e {
        core::Error::BudgetExceeded(_) | core::Error::SizeGuard(_) | core::Error::WitnessRejected(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => value_err(e),
    }
}

#[pyclass(name = "AbelianGroup", module = "wreatheq", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyAbelianGroup(core::AbelianGroup);

#[pymethods]
impl PyAbelianGroup {
    #[new]
    #[pyo3(signature = (free_rank, torsion = Vec::new()))]
    fn new(free_rank: usize, torsion: Vec<i64>) -> PyResult<Self> {
        core::AbelianGroup::new(free_rank, torsion).map(PyAbelianGroup).map_err(value_err)
    }

    #[getter]
    fn free_rank(&self) -> usize {
        self.0.free_rank()
    }

    #[getter]
    fn torsion(&self) -> Vec<i64> {
        self.0.torsion().to_vec()
    }

    fn min_generators(&self) -> usize {
        self.0.min_generators()
    }

    fn commutator_width(&self) -> usize {
        core::commutator_width(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup({})", self.0)
    }
}

#[pyclass(name = "RingElement", module = "wreatheq", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRingElement(core::RingElement);

impl PyRingElement {
    fn element(&self, coords: Vec<i64>) -> PyResult<core::GroupElement> {
        self.0.group().element(coords).map_err(value_err)
    }
}

#[pymethods]
impl PyRingElement {
    #[staticmethod]
    fn parse(group: &PyAbelianGroup, text: &str) -> PyResult<Self> {
        core::RingElement::parse(&group.0, text).map(PyRingElement).map_err(value_err)
    }

    fn group(&self) -> PyAbelianGroup {
        PyAbelianGroup(self.0.group().clone())
    }

    fn terms(&self) -> Vec<(Vec<i64>, i64)> {
        self.0.terms().iter().map(|(g, &c)| (g.coords().to_vec(), c)).collect()
    }

    fn augmentation(&self) -> i64 {
        self.0.augmentation()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn translate(&self, shift: Vec<i64>) -> PyResult<Self> {
        Ok(PyRingElement(self.0.translate(&self.element(shift)?)))
    }

    /// Whether the element lies in the augmentation ideal of the subgroup
    /// generated by `gens`.
    fn in_varpi(&self, gens: Vec<Vec<i64>>) -> PyResult<bool> {
        let gens = gens.into_iter().map(|v| self.element(v)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.0.in_varpi(&core::Subgroup::new(self.0.group(), gens)))
    }

    fn divide_one_minus_monomial(&self, t: Vec<i64>) -> PyResult<Self> {
        let t = self.element(t)?;
        self.0.divide_one_minus_monomial(&t).map(PyRingElement).map_err(value_err)
    }

    /// Pairs `(x, y)` of wreath elements with product of commutators equal to
    /// `(self, 0)`, or `None`.
    #[pyo3(signature = (n, budget = None))]
    fn commutator_pairs(&self, n: usize, budget: Option<u64>) -> PyResult<Option<Vec<(PyWreathElement, PyWreathElement)>>> {
        let found = core::is_n_commutator_product(&self.0, n, &mut core::Budget::from_option(budget))
            .map_err(solver_err)?;
        Ok(found.map(|p| {
            p.pairs
                .into_iter()
                .map(|(x, y)| (PyWreathElement(x), PyWreathElement(y)))
                .collect()
        }))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        same_group(&self.0, &other.0)?;
        Ok(PyRingElement(self.0.add(&other.0)))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        same_group(&self.0, &other.0)?;
        Ok(PyRingElement(self.0.sub(&other.0)))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        same_group(&self.0, &other.0)?;
        Ok(PyRingElement(self.0.mul(&other.0)))
    }

    fn __neg__(&self) -> Self {
        PyRingElement(self.0.neg())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RingElement('{}')", self.0)
    }
}

fn same_group(a: &core::RingElement, b: &core::RingElement) -> PyResult<()> {
    if a.group() == b.group() {
        Ok(())
    } else {
        Err(PyValueError::new_err("elements live over different groups"))
    }
}

#[pyclass(name = "WreathElement", module = "wreatheq", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyWreathElement(core::WreathElement);

#[pymethods]
impl PyWreathElement {
    #[staticmethod]
    fn parse(group: &PyAbelianGroup, text: &str) -> PyResult<Self> {
        core::WreathElement::parse(&group.0, text).map(PyWreathElement).map_err(value_err)
    }

    #[getter]
    fn poly(&self) -> PyRingElement {
        PyRingElement(self.0.poly().clone())
    }

    #[getter]
    fn point(&self) -> Vec<i64> {
        self.0.point().coords().to_vec()
    }

    fn inverse(&self) -> Self {
        PyWreathElement(self.0.inverse())
    }

    fn commutator(&self, other: &Self) -> PyResult<Self> {
        self.check(other)?;
        Ok(PyWreathElement(self.0.commutator(&other.0)))
    }

    fn conjugate(&self, by: &Self) -> PyResult<Self> {
        self.check(by)?;
        Ok(PyWreathElement(self.0.conjugate(&by.0)))
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.check(other)?;
        Ok(PyWreathElement(self.0.mul(&other.0)))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("WreathElement('{}')", self.0)
    }
}

impl PyWreathElement {
    fn check(&self, other: &Self) -> PyResult<()> {
        if self.0.group() == other.0.group() {
            Ok(())
        } else {
            Err(PyValueError::new_err("elements live over different groups"))
        }
    }
}

#[pyclass(name = "BaumslagElement", module = "wreatheq", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyBaumslagElement(core::BaumslagElement);

#[pymethods]
impl PyBaumslagElement {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::BaumslagElement::parse(text).map(PyBaumslagElement).map_err(value_err)
    }

    #[staticmethod]
    fn a() -> Self {
        PyBaumslagElement(core::BaumslagElement::a())
    }

    #[staticmethod]
    fn t() -> Self {
        PyBaumslagElement(core::BaumslagElement::t())
    }

    #[staticmethod]
    fn u() -> Self {
        PyBaumslagElement(core::BaumslagElement::u())
    }

    fn inverse(&self) -> Self {
        PyBaumslagElement(self.0.inverse())
    }

    fn commutator(&self, other: &Self) -> Self {
        PyBaumslagElement(self.0.commutator(&other.0))
    }

    fn conjugate(&self, by: &Self) -> Self {
        PyBaumslagElement(self.0.conjugate(&by.0))
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyBaumslagElement(self.0.mul(&other.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BaumslagElement('{}')", self.0)
    }
}

fn witness_strings<G: GroupElem>(p: &Problem<G>, v: Verdict<G>) -> Option<Vec<(String, String)>> {
    match v {
        Verdict::Unsat => None,
        Verdict::Sat(w) => Some(
            p.word
                .variables()
                .into_iter()
                .map(|x| (format!("X{x}"), w[&x].to_string()))
                .collect(),
        ),
    }
}

/// Decides an equation given in the file format. Returns `None` when
/// unsolvable, otherwise the witness as `(variable, element)` strings.
#[pyfunction]
#[pyo3(signature = (text, genus_cap = None, budget = None))]
fn solve(text: &str, genus_cap: Option<usize>, budget: Option<u64>) -> PyResult<Option<Vec<(String, String)>>> {
    let opts = SolveOptions { genus_cap, budget };
    let inst = core::parse_problem(text).map_err(value_err)?;
    Ok(match inst {
        Instance::Wreath(b, p) => witness_strings(&p, core::solve_wreath(&b, &p.word, &opts).map_err(solver_err)?),
        Instance::Baumslag(p) => witness_strings(&p, core::solve_baumslag(&p.word, &opts).map_err(solver_err)?),
        Instance::Symmetric(n, p) => {
            let v = core::solve_finite(&p.word, &core::Perm::all(n), &opts).map_err(solver_err)?;
            witness_strings(&p, v)
        }
        Instance::Cyclic(n, p) => {
            let v = core::solve_finite(&p.word, &core::Cyclic::all(n), &opts).map_err(solver_err)?;
            witness_strings(&p, v)
        }
    })
}

/// Shifts `u_i` with `sum f_i Z^{u_i} = 0`, or `None`.
#[pyfunction]
#[pyo3(signature = (polys, budget = None))]
fn solve_translate_sum(polys: Vec<PyRingElement>, budget: Option<u64>) -> PyResult<Option<Vec<Vec<i64>>>> {
    let Some(first) = polys.first() else {
        return Err(PyValueError::new_err("need at least one polynomial"));
    };
    let g = first.0.group().clone();
    let inst = core::TranslateSumInstance::new(&g, polys.into_iter().map(|p| p.0).collect()).map_err(value_err)?;
    let found = core::solve_translate_sum(&inst, &mut core::Budget::from_option(budget)).map_err(solver_err)?;
    Ok(found.map(|u| u.into_iter().map(|x| x.into_coords()).collect()))
}

#[pyfunction]
fn commutator_width(group: &PyAbelianGroup) -> usize {
    core::commutator_width(&group.0)
}

#[pymodule]
fn wreatheq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAbelianGroup>()?;
    m.add_class::<PyRingElement>()?;
    m.add_class::<PyWreathElement>()?;
    m.add_class::<PyBaumslagElement>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_translate_sum, m)?)?;
    m.add_function(wrap_pyfunction!(commutator_width, m)?)?;
    Ok(())
}
