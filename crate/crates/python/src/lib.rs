use std::collections::BTreeMap;
use std::sync::Arc;

use burnside::burnside::{BurnsideRing, RingElement};
use burnside::cellsearch::{
    cell_search_json, parabolic_families, run_cell_search, solve_effective, table3_text, table4_text, CharacterTarget,
    ParabolicData, SearchConstraints,
};
use burnside::characters::{green_multiplicities, GreenFunctionData, F4A3_GREEN};
use burnside::functor_spec::{builtin_mu, Functor, FunctorSpec};
use burnside::permgroup::parse_group;
use burnside::subgroups::SubgroupClassification;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: burnside::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A generalised Burnside ring over a permutation group.
///
/// `functor` is `"builtin-mu"`, `"trivial"`, or a functor description in JSON.
#[pyclass(frozen, name = "BurnsideRing", module = "burnside_py")]
struct PyBurnsideRing {
    ring: Arc<BurnsideRing>,
}

impl PyBurnsideRing {
    fn element(&self, x: &str) -> PyResult<RingElement> {
        self.ring.parse(x).map_err(err)
    }
}

#[pymethods]
impl PyBurnsideRing {
    #[new]
    #[pyo3(signature = (group = "S4", functor = "builtin-mu", degree = None))]
    fn new(py: Python<'_>, group: &str, functor: &str, degree: Option<usize>) -> PyResult<Self> {
        let spec = match functor {
            "builtin-mu" => builtin_mu(group).map_err(err)?,
            "trivial" => FunctorSpec::trivial(group),
            json => FunctorSpec::from_json(json).map_err(err)?,
        };
        let ring = py.detach(|| -> burnside::Result<BurnsideRing> {
            let g = parse_group(group, degree)?;
            let cls = Arc::new(SubgroupClassification::new(&g)?);
            BurnsideRing::new(Functor::new(spec, cls)?)
        });
        Ok(Self {
            ring: Arc::new(ring.map_err(err)?),
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.ring.rank()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.ring.labels().to_vec()
    }

    #[getter]
    fn column_labels(&self) -> Vec<String> {
        self.ring.column_labels().to_vec()
    }

    /// Coefficients of an element such as `"21*S4 + 6*K1'"`, by basis label.
    fn terms(&self, x: &str) -> PyResult<BTreeMap<String, i64>> {
        let e = self.element(x)?;
        Ok(e.terms().map(|(i, c)| (self.ring.label(i).to_string(), c)).collect())
    }

    fn multiply(&self, x: &str, y: &str) -> PyResult<String> {
        Ok(self
            .ring
            .format(&self.ring.multiply(&self.element(x)?, &self.element(y)?)))
    }

    fn dual(&self, x: &str) -> PyResult<String> {
        Ok(self.ring.format(&self.ring.dual(&self.element(x)?)))
    }

    fn euler(&self, x: &str) -> PyResult<i64> {
        self.ring.euler(&self.element(x)?).map_err(err)
    }

    fn marks(&self, x: &str) -> PyResult<Vec<i64>> {
        Ok(self.ring.mark_vector(&self.element(x)?))
    }

    /// Rows of the extended table of marks; the last entry of each row is the
    /// twisted count, or `None` where it is unknown.
    fn table_of_marks(&self) -> Vec<(String, Vec<i64>, Option<u64>)> {
        let t = self.ring.extended_table_of_marks();
        (0..t.row_labels.len())
            .map(|r| (t.row_labels[r].clone(), t.values[r].clone(), t.euler[r]))
            .collect()
    }

    fn table_of_marks_csv(&self) -> String {
        self.ring.extended_table_of_marks().to_csv()
    }

    /// Effective undecorated solutions for S4 character multiplicities.
    fn solve_effective(&self, multiplicities: Vec<u64>) -> PyResult<Vec<String>> {
        let sols = solve_effective(&self.ring, &CharacterTarget::new(multiplicities), None).map_err(err)?;
        Ok(sols.iter().map(|x| self.ring.format(x)).collect())
    }

    /// Run the cell search; returns the result as plain Python data, or as the
    /// text table when `text` is true.
    #[allow(clippy::too_many_arguments)]
    #[pyo3(signature = (multiplicities = None, min_left_cell = 151, big_cell = 175, min_big_cells = 30, min_double_cell = 7400, text = false))]
    fn cell_search<'py>(
        &self,
        py: Python<'py>,
        multiplicities: Option<Vec<u64>>,
        min_left_cell: i64,
        big_cell: i64,
        min_big_cells: usize,
        min_double_cell: i64,
        text: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let target = match multiplicities {
            Some(m) => CharacterTarget::new(m),
            None => CharacterTarget::new(green(None)?),
        };
        let k = SearchConstraints {
            min_left_cell,
            big_cell_threshold: big_cell,
            min_big_cells,
            min_double_cell,
        };
        let ring = self.ring.clone();
        let result = py.detach(move || run_cell_search(&ring, &target, &k)).map_err(err)?;
        if text {
            Ok(table3_text(&self.ring, &result).into_pyobject(py)?.into_any())
        } else {
            from_json(py, &cell_search_json(&self.ring, &result))
        }
    }

    /// Parabolic block sets; `targets` is a targets file's text, default the shipped one.
    #[pyo3(signature = (targets = None, text = false))]
    fn parabolic<'py>(&self, py: Python<'py>, targets: Option<&str>, text: bool) -> PyResult<Bound<'py, PyAny>> {
        let data = match targets {
            Some(t) => ParabolicData::parse(t).map_err(err)?,
            None => ParabolicData::f4a3(),
        };
        let blocks = parabolic_families(&self.ring, &data).map_err(err)?;
        if text {
            Ok(table4_text(&self.ring, &blocks).into_pyobject(py)?.into_any())
        } else {
            let v = serde_json::Value::Array(blocks.iter().map(|b| b.to_json(&self.ring)).collect());
            from_json(py, &v)
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "BurnsideRing(order={}, rank={})",
            self.ring.group().order(),
            self.ring.rank()
        )
    }
}

/// S4 multiplicities of a Green function file; the shipped F4(a3) data by default.
#[pyfunction]
#[pyo3(signature = (text = None))]
fn green(text: Option<&str>) -> PyResult<Vec<u64>> {
    let data = GreenFunctionData::parse(text.unwrap_or(F4A3_GREEN)).map_err(err)?;
    green_multiplicities(&data).map_err(err)
}

#[pymodule]
fn burnside_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyBurnsideRing>()?;
    m.add_function(wrap_pyfunction!(green, m)?)?;
    Ok(())
}
