//! Python bindings. Structured results cross the boundary as JSON strings.

use jsbo::exact::{parse_rat, fmt_rat, Partition, Rational};
use jsbo::jordan::{Domain, Kind};
use jsbo::sbo::{PairId, PairSpec};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: jsbo::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rats(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| parse_rat(s).map_err(err)).collect()
}

fn pair(tag: &str, sizes: Vec<usize>, k: u32, l: u32) -> PyResult<PairSpec> {
    PairSpec::new(PairId::parse(tag).map_err(err)?, &sizes, k, l).map_err(err)
}

/// Renormalized Jack polynomial at `diag(t)`, as an exact rational string.
#[pyfunction]
fn jack_eval(d: &str, m: Vec<u32>, t: Vec<String>) -> PyResult<String> {
    let d = parse_rat(d).map_err(err)?;
    let m = Partition::new(m).map_err(err)?;
    let t = rats(&t)?;
    Ok(fmt_rat(&jsbo::spaces::jack_phi_tilde(&d, t.len(), &m).eval_diag(&t)))
}

/// Power-sum expansion of the renormalized Jack polynomial, as JSON.
#[pyfunction]
fn jack_terms(d: &str, m: Vec<u32>, r: usize) -> PyResult<String> {
    let d = parse_rat(d).map_err(err)?;
    let m = Partition::new(m).map_err(err)?;
    Ok(serde_json::to_string(&jsbo::spaces::jack_phi_tilde(&d, r, &m).terms_json()).unwrap())
}

/// Whether the two expansions of `h^(-lambda)` agree up to `degree`.
#[pyfunction]
fn kernel_expansion_agrees(domain: &str, degree: u32) -> PyResult<bool> {
    let dom = Domain::standard(Kind::parse(domain).map_err(err)?, "x");
    Ok(jsbo::expansion::expand_h_power(&dom, degree).map_err(err)?.agree())
}

/// Jordan identity reports, as JSON.
#[pyfunction]
#[pyo3(signature = (domain, seed=42, points=100))]
fn jordan_suite(domain: &str, seed: u64, points: usize) -> PyResult<String> {
    let reps = jsbo::jordan::verify::jordan_suite(Kind::parse(domain).map_err(err)?, seed, points).map_err(err)?;
    Ok(serde_json::to_string(&reps).unwrap())
}

/// The action convention fixed by the commutation relations up to degree `n`, as JSON.
#[pyfunction]
#[pyo3(signature = (domain, n=3))]
fn calibrate(domain: &str, n: u32) -> PyResult<String> {
    let dom = Domain::standard(Kind::parse(domain).map_err(err)?, "x");
    Ok(serde_json::to_string(&jsbo::lie::search(&dom, n).map_err(err)?).unwrap())
}

/// Closed-form operator of a pair with symbolic lambda, as JSON.
#[pyfunction]
#[pyo3(signature = (tag, sizes, k=0, l=0, budget=6))]
fn operator(tag: &str, sizes: Vec<usize>, k: u32, l: u32, budget: u32) -> PyResult<String> {
    let op = pair(tag, sizes, k, l)?.closed_form(budget).map_err(err)?;
    Ok(op.to_json().to_string())
}

/// Order of the pole of a holographic family at `lambda0`.
#[pyfunction]
#[pyo3(signature = (tag, sizes, lambda0, k=0, l=0, budget=10))]
fn pole_order(tag: &str, sizes: Vec<usize>, lambda0: &str, k: u32, l: u32, budget: u32) -> PyResult<u32> {
    let lam = parse_rat(lambda0).map_err(err)?;
    jsbo::residue::pole_order(&pair(tag, sizes, k, l)?, &lam, budget).map_err(err)
}

#[pymodule]
fn jsbo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(jack_eval, m)?)?;
    m.add_function(wrap_pyfunction!(jack_terms, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_expansion_agrees, m)?)?;
    m.add_function(wrap_pyfunction!(jordan_suite, m)?)?;
    m.add_function(wrap_pyfunction!(calibrate, m)?)?;
    m.add_function(wrap_pyfunction!(operator, m)?)?;
    m.add_function(wrap_pyfunction!(pole_order, m)?)?;
    Ok(())
}
