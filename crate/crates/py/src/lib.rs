//! Python bindings: build codes over Z_{2^s}, map them through the Gray map
//! and compute the invariants of their binary images.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use z2s_codes::invariants::{image_min_distance, image_rank};
use z2s_codes::table1::{self, TableSelection};
use z2s_codes::text::{parse_matrix, write_matrix};
use z2s_codes::verify::{self, Suite, VerifyConfig};
use z2s_codes::{
    gray_image, is_linear, kernel_additive, phi, phi_inverse, BitVector, Budget, Error, FamilySpec,
    GeneratorMatrix, RingScalar,
};

create_exception!(
    z2s,
    BudgetExceeded,
    PyException,
    "An exhaustive computation would exceed its budget."
);
create_exception!(
    z2s,
    StructureViolation,
    PyException,
    "A structural invariant of a construction failed."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::StructureViolation(_) => StructureViolation::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn budget(max_codewords: Option<u64>) -> Budget {
    match max_codewords {
        Some(m) => Budget::default().with_max_codewords(m),
        None => Budget::default(),
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn rows_of(g: &GeneratorMatrix) -> Vec<Vec<u32>> {
    (0..g.row_count())
        .map(|r| (0..g.n()).map(|c| g.entry(r, c)).collect())
        .collect()
}

/// A Z_{2^s}-additive code given by a generator matrix.
#[pyclass(name = "Code", module = "z2s", frozen)]
struct PyCode {
    code: z2s_codes::AdditiveCode,
    family: String,
    k: Option<u32>,
    u: Option<u32>,
}

impl PyCode {
    fn from_spec(spec: FamilySpec) -> PyResult<Self> {
        Ok(Self {
            code: spec.code().map_err(to_py)?,
            family: spec.family.name().to_string(),
            k: spec.k,
            u: spec.u,
        })
    }
}

#[pymethods]
impl PyCode {
    /// Code spanned by the given rows of integers modulo 2^s.
    #[new]
    fn new(s: u32, rows: Vec<Vec<u32>>) -> PyResult<Self> {
        let code = z2s_codes::AdditiveCode::from_rows(s, rows).map_err(to_py)?;
        Ok(Self {
            code,
            family: "matrix".into(),
            k: None,
            u: None,
        })
    }

    #[staticmethod]
    fn simplex_alpha(s: u32, k: u32) -> PyResult<Self> {
        Self::from_spec(FamilySpec::simplex_alpha(s, k))
    }

    #[staticmethod]
    fn simplex_beta(s: u32, k: u32) -> PyResult<Self> {
        Self::from_spec(FamilySpec::simplex_beta(s, k))
    }

    /// Hadamard code of type `(t_1, …, t_s)`.
    #[staticmethod]
    fn hadamard(s: u32, ts: Vec<usize>) -> PyResult<Self> {
        Self::from_spec(FamilySpec::hadamard(s, ts))
    }

    #[staticmethod]
    fn macdonald_alpha(s: u32, k: u32, u: u32) -> PyResult<Self> {
        Self::from_spec(FamilySpec::macdonald_alpha(s, k, u))
    }

    #[staticmethod]
    fn macdonald_beta(s: u32, k: u32, u: u32) -> PyResult<Self> {
        Self::from_spec(FamilySpec::macdonald_beta(s, k, u))
    }

    /// Parse the `s=<s> rows=<k> cols=<n>` matrix text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let g = parse_matrix(text).map_err(to_py)?;
        Ok(Self {
            code: z2s_codes::AdditiveCode::new(g),
            family: "matrix".into(),
            k: None,
            u: None,
        })
    }

    #[getter]
    fn s(&self) -> u32 {
        self.code.s()
    }

    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn log2_size(&self) -> u32 {
        self.code.log2_size()
    }

    /// Generator rows as lists of integers.
    #[getter]
    fn generator(&self) -> Vec<Vec<u32>> {
        rows_of(self.code.generator())
    }

    /// Rows of the canonical echelon form.
    fn normal_form(&self) -> Vec<Vec<u32>> {
        rows_of(&self.code.normal_form())
    }

    /// The type `(n; t_1, …, t_s)` as a string.
    fn code_type(&self) -> String {
        self.code.code_type().to_string()
    }

    fn to_text(&self) -> String {
        write_matrix(self.code.generator())
    }

    fn contains(&self, word: Vec<u32>) -> PyResult<bool> {
        let v = z2s_codes::RingVector::new(word, self.code.s()).map_err(to_py)?;
        self.code.contains(&v).map_err(to_py)
    }

    #[pyo3(signature = (max_codewords=None))]
    fn codewords(&self, max_codewords: Option<u64>) -> PyResult<Vec<Vec<u32>>> {
        let words = self.code.codewords(&budget(max_codewords)).map_err(to_py)?;
        Ok(words.iter().map(|w| w.coords().to_vec()).collect())
    }

    /// Gray image as 0/1 strings, in codeword enumeration order.
    #[pyo3(signature = (max_codewords=None))]
    fn gray_image(&self, max_codewords: Option<u64>) -> PyResult<Vec<String>> {
        let image = gray_image(&self.code, &budget(max_codewords)).map_err(to_py)?;
        Ok(image.words().iter().map(BitVector::to_string).collect())
    }

    /// Dimension of the kernel of the Gray image.
    #[pyo3(signature = (max_codewords=None))]
    fn kernel_dimension(&self, max_codewords: Option<u64>) -> PyResult<usize> {
        Ok(kernel_additive(&self.code, &budget(max_codewords))
            .map_err(to_py)?
            .dimension())
    }

    /// Rank (dimension of the linear span) of the Gray image.
    #[pyo3(signature = (max_codewords=None))]
    fn rank(&self, max_codewords: Option<u64>) -> PyResult<usize> {
        image_rank(&self.code, &budget(max_codewords)).map_err(to_py)
    }

    #[pyo3(signature = (max_codewords=None))]
    fn min_distance(&self, max_codewords: Option<u64>) -> PyResult<Option<usize>> {
        image_min_distance(&self.code, &budget(max_codewords)).map_err(to_py)
    }

    #[pyo3(signature = (max_codewords=None))]
    fn is_linear(&self, max_codewords: Option<u64>) -> PyResult<bool> {
        let b = budget(max_codewords);
        let image = gray_image(&self.code, &b).map_err(to_py)?;
        is_linear(&image, &b).map_err(to_py)
    }

    /// Every invariant as a dict with the same keys as the CLI's JSON report.
    #[pyo3(signature = (max_codewords=None))]
    fn invariants<'py>(
        &self,
        py: Python<'py>,
        max_codewords: Option<u64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = z2s_codes::code_report(
            &self.family,
            self.k,
            self.u,
            &self.code,
            &budget(max_codewords),
        )
        .map_err(to_py)?;
        json_to_py(py, &report.to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(family={}, s={}, n={}, type={})",
            self.family,
            self.code.s(),
            self.code.n(),
            self.code.code_type()
        )
    }
}

/// Gray image of `value` in Z_{2^s} as a 0/1 string.
#[pyfunction(name = "phi")]
fn py_phi(value: u32, s: u32) -> PyResult<String> {
    Ok(phi(RingScalar::new(value, s).map_err(to_py)?).to_string())
}

/// Inverse of [`py_phi`]; raises `ValueError` for strings outside the image.
#[pyfunction(name = "phi_inverse")]
fn py_phi_inverse(bits: &str, s: u32) -> PyResult<u32> {
    let digits: Vec<u8> = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(PyValueError::new_err(format!("not a bit: {c:?}"))),
        })
        .collect::<PyResult<_>>()?;
    let v = BitVector::from_bits(&digits).map_err(to_py)?;
    Ok(phi_inverse(&v, s).map_err(to_py)?.value())
}

/// Recompute the published kernel/rank table; one dict per cell.
#[pyfunction(signature = (s_values=vec![2, 3, 4], k_max=4, include_extended=false, max_codewords=None))]
fn table<'py>(
    py: Python<'py>,
    s_values: Vec<u32>,
    k_max: u32,
    include_extended: bool,
    max_codewords: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let selection = TableSelection {
        s_values,
        k_max,
        include_extended,
    };
    let cells = py
        .detach(|| table1::reproduce(&selection, &budget(max_codewords)))
        .map_err(to_py)?;
    json_to_py(py, &serde_json::to_string(&cells).expect("cells serialize"))
}

/// Run a named check suite; one dict per check.
#[pyfunction(signature = (suite="all", s_values=vec![2, 3, 4], k_max=3))]
fn run_checks<'py>(
    py: Python<'py>,
    suite: &str,
    s_values: Vec<u32>,
    k_max: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let cfg = VerifyConfig {
        s_values,
        k_max,
        ..VerifyConfig::default()
    };
    let results = py.detach(|| verify::run_suite(suite, &cfg));
    let list = pyo3::types::PyList::empty(py);
    for r in results {
        let d = PyDict::new(py);
        d.set_item("name", r.name)?;
        d.set_item("params", &r.params)?;
        d.set_item("verdict", r.verdict.to_string())?;
        d.set_item("detail", &r.detail)?;
        list.append(d)?;
    }
    Ok(list.into_any())
}

#[pymodule]
pub fn z2s(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(py_phi, m)?)?;
    m.add_function(wrap_pyfunction!(py_phi_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add(
        "StructureViolation",
        m.py().get_type::<StructureViolation>(),
    )?;
    Ok(())
}
