//! Python bindings for the fixture commands.

use std::path::Path;

use grothendieck::cli::{run_command, run_text, Command, Options, Outcome};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn command(name: &str) -> PyResult<Command> {
    Command::from_name(name).ok_or_else(|| {
        PyValueError::new_err(format!(
            "unknown command `{name}`; expected one of {}",
            Command::names().join(", ")
        ))
    })
}

fn outcome<'py>(py: Python<'py>, o: Outcome) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("code", o.code)?;
    d.set_item("passed", o.report.passed_count())?;
    d.set_item("failed", o.report.failed_count())?;
    d.set_item("report", o.report.to_jsonl())?;
    d.set_item("fixture", o.fixture)?;
    Ok(d)
}

/// Runs a command on fixture text. Returns a dict with `code`, `passed`,
/// `failed`, `report` (JSON lines) and `fixture` (text or None).
#[pyfunction]
#[pyo3(signature = (name, text, budget = 50, seed = 0))]
fn run<'py>(py: Python<'py>, name: &str, text: &str, budget: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let c = command(name)?;
    let o = py.detach(|| run_text(c, text, &Options { budget, seed }));
    outcome(py, o)
}

/// Runs a command on a fixture file. Same return shape as `run`.
#[pyfunction]
#[pyo3(signature = (name, path, budget = 50, seed = 0))]
fn run_file<'py>(py: Python<'py>, name: &str, path: &str, budget: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let c = command(name)?;
    let o = py.detach(|| run_command(c, Path::new(path), &Options { budget, seed }));
    outcome(py, o)
}

/// Command names accepted by `run` and `run_file`.
#[pyfunction]
fn commands() -> Vec<String> {
    Command::names()
}

/// The generated fixtures as `(file, expected validate code, text)`.
#[pyfunction]
fn shipped_fixtures() -> PyResult<Vec<(String, i32, String)>> {
    let fx = grothendieck::corpus::shipped_fixtures().map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(fx
        .into_iter()
        .map(|f| (f.file.to_string(), f.validate_code, f.text))
        .collect())
}

#[pymodule]
fn grothendieck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(run_file, m)?)?;
    m.add_function(wrap_pyfunction!(commands, m)?)?;
    m.add_function(wrap_pyfunction!(shipped_fixtures, m)?)?;
    m.add("EXIT_PASS", grothendieck::cli::EXIT_PASS)?;
    m.add("EXIT_FAIL", grothendieck::cli::EXIT_FAIL)?;
    m.add("EXIT_PARSE", grothendieck::cli::EXIT_PARSE)?;
    Ok(())
}
