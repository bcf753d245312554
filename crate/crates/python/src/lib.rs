//! Python module `pygenus2cm`. Prime-field elements come back as ints, extension
//! elements as coefficient lists, rationals as "a/b" strings.

use genus2cm::bounds::{class_poly_coeff_bound, verify_fixture};
use genus2cm::cmfield::QuarticCMField;
use genus2cm::field::format_rational;
use genus2cm::galois_tables::{predict as predict_rows, verify_rows, GroupKind};
use genus2cm::hasse_witt::{af_numbers, hasse_witt as hw_matrix};
use genus2cm::invariants::{absolute_from_igusa_clebsch, igusa_clebsch, HyperellipticModel, IgusaClebsch};
use genus2cm::theta::{invariants_from_tau, PeriodMatrix};
use genus2cm::{FieldDescriptor, FieldElement, Fq, Poly};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

create_exception!(pygenus2cm, Genus2Error, PyValueError);

fn err(e: genus2cm::Error) -> PyErr {
    Genus2Error::new_err(e.to_string())
}

/// Coefficient vector of an element, padded to the extension degree.
pub fn fq_coeffs(x: &Fq) -> Vec<u64> {
    let mut c = x.coeffs().to_vec();
    c.resize(x.ctx().degree(), 0);
    c
}

fn fq_py<'py>(py: Python<'py>, x: &Fq) -> PyResult<Bound<'py, PyAny>> {
    let c = fq_coeffs(x);
    if c.len() == 1 {
        Ok(c[0].into_pyobject(py)?.into_any())
    } else {
        Ok(PyList::new(py, c)?.into_any())
    }
}

fn elem_py<'py>(py: Python<'py>, e: &FieldElement) -> PyResult<Bound<'py, PyAny>> {
    match e {
        FieldElement::Rational(q) => Ok(format_rational(q).into_pyobject(py)?.into_any()),
        FieldElement::Finite(x) => fq_py(py, x),
    }
}

fn parse_coeffs(field: &str, coeffs: &[String]) -> PyResult<(FieldDescriptor, Vec<FieldElement>)> {
    let desc = FieldDescriptor::parse(field).map_err(err)?;
    let v = coeffs.iter().map(|s| desc.parse_element(s)).collect::<genus2cm::Result<Vec<_>>>().map_err(err)?;
    Ok((desc, v))
}

fn ic_dict<'py, T: genus2cm::invariants::InvariantField>(
    py: Python<'py>,
    u: Vec<T>,
    wrap: fn(T) -> FieldElement,
) -> PyResult<Bound<'py, PyDict>> {
    let m = HyperellipticModel::new(u).map_err(err)?;
    let ic: IgusaClebsch<T> = igusa_clebsch(&m).map_err(err)?;
    let d = PyDict::new(py);
    for (k, v) in ["A", "B", "C", "D"].iter().zip(ic.to_vec()) {
        d.set_item(*k, elem_py(py, &wrap(v))?)?;
    }
    match absolute_from_igusa_clebsch(&ic) {
        Ok(a) => {
            let l: Vec<Bound<'py, PyAny>> =
                a.to_vec().into_iter().map(|x| elem_py(py, &wrap(x))).collect::<PyResult<_>>()?;
            d.set_item("i", PyList::new(py, l)?)?;
        }
        Err(_) => d.set_item("i", py.None())?,
    }
    Ok(d)
}

/// Igusa-Clebsch invariants A, B, C, D and absolute invariants i (None if A or D vanishes)
/// of y^2 = u0 x^6 + ... + u6, coefficients as strings, x^6 first.
#[pyfunction]
fn invariants<'py>(py: Python<'py>, field: &str, coeffs: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
    let (desc, v) = parse_coeffs(field, &coeffs)?;
    match desc {
        FieldDescriptor::Rational => {
            let u = v.into_iter().filter_map(|e| if let FieldElement::Rational(q) = e { Some(q) } else { None });
            ic_dict(py, u.collect(), FieldElement::Rational)
        }
        FieldDescriptor::Finite(_) => {
            let u = v.into_iter().filter_map(|e| if let FieldElement::Finite(x) = e { Some(x) } else { None });
            ic_dict(py, u.collect(), FieldElement::Finite)
        }
    }
}

/// Hasse-Witt matrix and (a, f) of y^2 = f(x) over a finite field, coefficients x^6 (or x^5) first.
#[pyfunction]
fn hasse_witt<'py>(py: Python<'py>, field: &str, coeffs: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
    let (desc, v) = parse_coeffs(field, &coeffs)?;
    let FieldDescriptor::Finite(ctx) = desc else {
        return Err(Genus2Error::new_err("Hasse-Witt data needs a finite field"));
    };
    let mut c: Vec<Fq> = v.into_iter().filter_map(|e| if let FieldElement::Finite(x) = e { Some(x) } else { None }).collect();
    c.reverse();
    let hw = hw_matrix(&Poly::new(&Fq::from_i64(&ctx, 0), c)).map_err(err)?;
    let pr = af_numbers(&hw).map_err(err)?;
    let rows: Vec<Bound<'py, PyList>> = hw
        .m
        .iter()
        .map(|r| PyList::new(py, r.iter().map(|x| fq_py(py, x)).collect::<PyResult<Vec<_>>>()?))
        .collect::<PyResult<_>>()?;
    let d = PyDict::new(py);
    d.set_item("M", PyList::new(py, rows)?)?;
    d.set_item("a", pr.a_number)?;
    d.set_item("f", pr.f_number)?;
    d.set_item("superspecial", pr.superspecial)?;
    d.set_item("ordinary", pr.ordinary)?;
    Ok(d)
}

/// Galois type, minimal polynomial (constant term first) and discriminant of
/// Q(sqrt(alpha + beta sqrt d)).
#[pyfunction]
fn cm_field<'py>(py: Python<'py>, d: BigInt, alpha: BigInt, beta: BigInt) -> PyResult<Bound<'py, PyDict>> {
    let k = QuarticCMField::new(d, alpha, beta).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("galois_type", k.galois_type().to_string())?;
    out.set_item("minpoly", k.minpoly())?;
    out.set_item("discriminant", k.discriminant().map_err(err)?)?;
    Ok(out)
}

/// Table rows consistent with the splitting of p, as dicts with row, a, f, superspecial.
#[pyfunction]
fn predict<'py>(py: Python<'py>, d: BigInt, alpha: BigInt, beta: BigInt, p: u64) -> PyResult<Bound<'py, PyList>> {
    let k = QuarticCMField::new(d, alpha, beta).map_err(err)?;
    let r = predict_rows(&k, p).map_err(err)?;
    let rows: Vec<Bound<'py, PyDict>> = r
        .matches
        .iter()
        .map(|m| {
            let d = PyDict::new(py);
            d.set_item("row", &m.row)?;
            d.set_item("a", m.profile.a_number)?;
            d.set_item("f", m.profile.f_number)?;
            d.set_item("superspecial", m.profile.superspecial)?;
            Ok(d)
        })
        .collect::<PyResult<_>>()?;
    PyList::new(py, rows)
}

/// Anomalies found when rebuilding a table ("cyclic", "biquadratic" or "nongalois").
#[pyfunction]
fn table_report<'py>(py: Python<'py>, kind: &str) -> PyResult<Bound<'py, PyDict>> {
    let kind = match kind {
        "cyclic" => GroupKind::C4,
        "biquadratic" => GroupKind::V4,
        "nongalois" => GroupKind::D4,
        _ => return Err(Genus2Error::new_err(format!("unknown table {kind}"))),
    };
    let r = verify_rows(kind);
    let d = PyDict::new(py);
    d.set_item("rows_checked", r.rows_checked)?;
    d.set_item("inconsistencies", r.inconsistencies.clone())?;
    d.set_item("duplicate_pairs", r.duplicate_pairs.clone())?;
    d.set_item("missing_pairs", r.missing_pairs.clone())?;
    d.set_item("shapes_consistent", r.shapes_consistent())?;
    Ok(d)
}

/// Lower bound for the p-adic valuation of the coefficient `a` places below the top of h_i.
#[pyfunction]
fn coefficient_bound(i: u8, a: usize, p: u64, d: BigInt, trace_r: BigInt, e: u32) -> PyResult<f64> {
    Ok(class_poly_coeff_bound(i, a, p, &d, &trace_r, e).map_err(err)?.value)
}

/// Whether every coefficient of a shipped fixture meets its valuation bound at p.
#[pyfunction]
fn fixture_passes(fixture: &str, p: u64) -> PyResult<bool> {
    Ok(verify_fixture(fixture, p).map_err(err)?.passed)
}

/// Absolute invariants (i1, i2, i3) at a period matrix given as three (re, im) decimal strings.
#[pyfunction]
#[pyo3(signature = (tau, digits = 30))]
fn theta_invariants(tau: [(String, String); 3], digits: u32) -> PyResult<Vec<(f64, f64)>> {
    let t = PeriodMatrix::parse(
        [(&tau[0].0, &tau[0].1), (&tau[1].0, &tau[1].1), (&tau[2].0, &tau[2].1)],
        digits,
    )
    .map_err(err)?;
    let a = invariants_from_tau(&t, 10f64.powi(-(digits.min(300) as i32))).map_err(err)?;
    Ok(vec![a.i1.to_c64(), a.i2.to_c64(), a.i3.to_c64()])
}

#[pymodule]
fn pygenus2cm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("Genus2Error", m.py().get_type::<Genus2Error>())?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(hasse_witt, m)?)?;
    m.add_function(wrap_pyfunction!(cm_field, m)?)?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(table_report, m)?)?;
    m.add_function(wrap_pyfunction!(coefficient_bound, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_passes, m)?)?;
    m.add_function(wrap_pyfunction!(theta_invariants, m)?)?;
    Ok(())
}
