//! Python bindings for `homexp`.
//!
//! Build with `cargo build -p homexp-py --features extension-module` and load
//! the resulting shared library as `homexp`.

use homexp::arith::{self, OddPrime};
use homexp::bounds::{self, Engine, RuleContext};
use homexp::exceptional::{crosscheck_table, default_table_primes};
use homexp::output::JsonTableRow;
use homexp::spaces::{self, BoundInterval};
use homexp::splittings;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: homexp::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn prime(p: u64) -> PyResult<OddPrime> {
    OddPrime::new(p).map_err(value_error)
}

/// A parsed p-local space expression.
#[pyclass(name = "Space", module = "homexp", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySpace(spaces::Space);

#[pymethods]
impl PySpace {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        spaces::parse_space(expr).map(PySpace).map_err(value_error)
    }

    /// The space after the mod-p splittings of its group factors.
    fn decompose(&self, p: u64) -> PyResult<Self> {
        splittings::decompose(&self.0, prime(p)?)
            .map(PySpace)
            .map_err(value_error)
    }

    #[pyo3(signature = (p, strict = false))]
    fn interval(&self, p: u64, strict: bool) -> PyResult<Interval> {
        interval_of(&self.0, p, strict)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Space('{}')", self.0)
    }
}

/// Certified bounds on `exp_p` of a space.
#[pyclass(module = "homexp", frozen)]
struct Interval {
    #[pyo3(get)]
    space: String,
    #[pyo3(get)]
    p: u64,
    inner: BoundInterval,
}

#[pymethods]
impl Interval {
    #[getter]
    fn lower(&self) -> u64 {
        self.inner.lower()
    }

    /// `None` when no upper bound is known.
    #[getter]
    fn upper(&self) -> Option<u64> {
        self.inner.upper()
    }

    #[getter]
    fn exact(&self) -> bool {
        self.inner.is_exact()
    }

    fn __contains__(&self, v: u64) -> bool {
        self.inner.contains(v)
    }

    /// The lower and upper certificate trees as a JSON string.
    fn certificate_json(&self) -> String {
        format!(
            "{{\"lower\":{},\"upper\":{}}}",
            self.inner.lower_cert().to_json(),
            self.inner.upper_cert().to_json()
        )
    }

    fn __repr__(&self) -> String {
        format!("Interval(exp_{}({}) {})", self.p, self.space, self.inner)
    }
}

fn interval_of(s: &spaces::Space, p: u64, strict: bool) -> PyResult<Interval> {
    let p = prime(p)?;
    let ctx = RuleContext { p, strict };
    let inner = bounds::exponent_interval(s, &ctx).map_err(value_error)?;
    Ok(Interval {
        space: s.to_string(),
        p: p.get(),
        inner,
    })
}

/// One row of the exceptional-group table.
#[pyclass(module = "homexp", frozen, get_all)]
struct TableRow {
    group: String,
    p: String,
    primes: Vec<u64>,
    lower: u64,
    upper: Option<u64>,
    factor: String,
    mode: String,
    references: Vec<String>,
}

impl From<JsonTableRow> for TableRow {
    fn from(r: JsonTableRow) -> Self {
        TableRow {
            group: r.group,
            p: r.p,
            primes: r.primes,
            lower: r.lower,
            upper: r.upper,
            factor: r.factor,
            mode: r.mode,
            references: r.references,
        }
    }
}

#[pymethods]
impl TableRow {
    fn __repr__(&self) -> String {
        let upper = self.upper.map_or("inf".to_string(), |u| u.to_string());
        format!(
            "TableRow({} p={} [{}, {}] {})",
            self.group, self.p, self.lower, upper, self.factor
        )
    }
}

/// The p-adic valuation of `n`.
#[pyfunction]
fn nu(p: u64, n: u64) -> PyResult<u32> {
    arith::nu(prime(p)?, n).map_err(value_error)
}

/// The p-adic valuation of `m!`.
#[pyfunction]
fn nu_factorial(p: u64, m: u64) -> PyResult<u64> {
    if m > arith::MAX_INPUT {
        return Err(PyValueError::new_err(format!(
            "{m} exceeds {}",
            arith::MAX_INPUT
        )));
    }
    Ok(arith::nu_factorial(prime(p)?, m))
}

#[pyfunction]
fn choose2(a: i64) -> u64 {
    arith::choose2(a)
}

#[pyfunction]
fn parse_space(expr: &str) -> PyResult<PySpace> {
    PySpace::new(expr)
}

#[pyfunction]
#[pyo3(signature = (expr, p, strict = false))]
fn exponent_interval(expr: &str, p: u64, strict: bool) -> PyResult<Interval> {
    interval_of(&PySpace::new(expr)?.0, p, strict)
}

#[pyfunction]
fn su_lower(p: u64, n: u64) -> PyResult<u64> {
    Ok(bounds::su_lower(prime(p)?, n))
}

#[pyfunction]
fn su_upper_closed(p: u64, n: u64) -> PyResult<u64> {
    Ok(bounds::su_upper_closed(prime(p)?, n))
}

#[pyfunction]
fn su_upper_recursive(p: u64, n: u64) -> PyResult<u64> {
    Ok(bounds::su_upper_recursive(prime(p)?, n))
}

/// Table rows for the given primes, or for all odd primes up to 31.
#[pyfunction]
#[pyo3(signature = (primes = None, strict = false))]
fn exceptional_table(primes: Option<Vec<u64>>, strict: bool) -> PyResult<Vec<TableRow>> {
    let primes = match primes {
        Some(ps) => ps.into_iter().map(prime).collect::<PyResult<Vec<_>>>()?,
        None => default_table_primes(),
    };
    let table = Engine::standard()
        .exceptional_table(&primes, strict)
        .map_err(value_error)?;
    Ok(table
        .rows
        .iter()
        .map(|r| JsonTableRow::from(r).into())
        .collect())
}

/// Recomputes the table against its stated intervals; returns
/// `(exit_code, summary)`.
#[pyfunction]
#[pyo3(signature = (strict = false))]
fn crosscheck(strict: bool) -> (i32, String) {
    let report = crosscheck_table(Engine::standard(), strict);
    (report.exit_code(), report.summary())
}

#[pymodule(name = "homexp")]
pub fn homexp_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<Interval>()?;
    m.add_class::<TableRow>()?;
    m.add_function(wrap_pyfunction!(nu, m)?)?;
    m.add_function(wrap_pyfunction!(nu_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(choose2, m)?)?;
    m.add_function(wrap_pyfunction!(parse_space, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_interval, m)?)?;
    m.add_function(wrap_pyfunction!(su_lower, m)?)?;
    m.add_function(wrap_pyfunction!(su_upper_closed, m)?)?;
    m.add_function(wrap_pyfunction!(su_upper_recursive, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_table, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck, m)?)?;
    Ok(())
}
