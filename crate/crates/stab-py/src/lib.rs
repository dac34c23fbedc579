//! Python bindings over the exact stability engine. Documents cross the
//! boundary as JSON strings, matching the CLI file formats, so the Python
//! side needs nothing beyond `json`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use stab_core::model::SlopeRule;
use stab_core::*;

fn domain(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.kind()))
}

fn parse<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> PyResult<T> {
    serde_json::from_str(s).map_err(|e| PyValueError::new_err(format!("malformed {what}: {e}")))
}

fn dump<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable output")
}

fn ambient(s: &str) -> PyResult<ValidatedAmbient> {
    if s == "quintic" {
        return Ok(stab_core::quintic_ambient());
    }
    let raw: AmbientData = parse("ambient", s)?;
    validate_ambient(raw).map_err(domain)
}

fn params(s: &str, amb: &ValidatedAmbient) -> PyResult<StabilityParameter> {
    let p: StabilityParameter = parse("parameters", s)?;
    p.validate(amb).map_err(domain)?;
    Ok(p)
}

fn model(s: &str) -> PyResult<ValidatedModel> {
    let doc: ObjectModel = parse("model", s)?;
    validate_model(&doc).map_err(domain)
}

/// The built-in rank-2 scenario ambient as a JSON document.
#[pyfunction]
#[pyo3(name = "quintic_ambient")]
fn quintic_ambient_py() -> String {
    dump(&quintic_ambient_data())
}

/// Validate an ambient document; raises ValueError when invalid.
#[pyfunction]
#[pyo3(name = "validate_ambient")]
fn validate_ambient_py(ambient_json: &str) -> PyResult<bool> {
    ambient(ambient_json).map(|_| true)
}

/// Central charge of a class, returned as {"re": ..., "im": ...}.
#[pyfunction]
#[pyo3(name = "central_charge")]
fn central_charge_py(ambient_json: &str, params_json: &str, class_json: &str) -> PyResult<String> {
    let amb = ambient(ambient_json)?;
    let p = params(params_json, &amb)?;
    let n: NumClass = parse("class", class_json)?;
    Ok(dump(&stab_core::central_charge(&amb, &p, &n)))
}

/// (mu_z, mu_p) of a class as rational strings ("inf" for chi-only classes).
#[pyfunction]
fn slopes(ambient_json: &str, params_json: &str, class_json: &str) -> PyResult<(String, String)> {
    let amb = ambient(ambient_json)?;
    let p = params(params_json, &amb)?;
    let n: NumClass = parse("class", class_json)?;
    let mu_z = z_slope(&amb, &p, &n).map_err(domain)?;
    let mu_p = p_slope(&amb, &n).map_err(domain)?;
    Ok((mu_z.to_string(), mu_p.to_string()))
}

/// Admissible classes with the given charge, as a JSON list.
#[pyfunction]
fn classes_with_charge(
    ambient_json: &str,
    params_json: &str,
    charge_json: &str,
) -> PyResult<String> {
    let amb = ambient(ambient_json)?;
    let p = params(params_json, &amb)?;
    let c: ChargeValue = parse("charge", charge_json)?;
    Ok(dump(
        &enumerate_classes_with_charge(&amb, &p, &c).map_err(domain)?,
    ))
}

/// Harder-Narasimhan filtration as a JSON document.
#[pyfunction]
fn hn(ambient_json: &str, params_json: &str, model_json: &str) -> PyResult<String> {
    let amb = ambient(ambient_json)?;
    let p = params(params_json, &amb)?;
    let m = model(model_json)?;
    let rule = SlopeRule::Z {
        ambient: &amb,
        param: &p,
    };
    Ok(dump(&hn_filtration(&m, &rule).map_err(domain)?))
}

/// Jordan-Holder factor multiset as a JSON document.
#[pyfunction]
fn jh(ambient_json: &str, params_json: &str, model_json: &str) -> PyResult<String> {
    let amb = ambient(ambient_json)?;
    let p = params(params_json, &amb)?;
    let m = model(model_json)?;
    let rule = SlopeRule::Z {
        ambient: &amb,
        param: &p,
    };
    Ok(dump(&jh_filtration(&m, &rule).map_err(domain)?))
}

/// (semistable, stable, witness-or-None) for a model.
#[pyfunction]
fn stability(
    ambient_json: &str,
    params_json: &str,
    model_json: &str,
) -> PyResult<(bool, bool, Option<String>)> {
    let amb = ambient(ambient_json)?;
    let p = params(params_json, &amb)?;
    let m = model(model_json)?;
    let rule = SlopeRule::Z {
        ambient: &amb,
        param: &p,
    };
    let semi = semistability(&m, &rule, false).map_err(domain)?;
    let strict = semistability(&m, &rule, true).map_err(domain)?;
    Ok((semi.ok, strict.ok, semi.witness))
}

/// Global-section bounds: JSON {"h0_bound_p": ..., "h0_bound_z": ...}.
#[pyfunction]
fn h0_bounds(ambient_json: &str, params_json: &str, model_json: &str) -> PyResult<String> {
    let amb = ambient(ambient_json)?;
    let p = params(params_json, &amb)?;
    let m = model(model_json)?;
    let p_bound = h0_bound_p(&m, &amb).map_err(domain)?;
    let c = stab_core::central_charge(&amb, &p, m.top_class());
    let rule = SlopeRule::Z {
        ambient: &amb,
        param: &p,
    };
    let z_bound = if is_semistable(&m, &rule).map_err(domain)? && c.im.is_negative() {
        Some(h0_bound_z(&m, &amb, &p, &c).map_err(domain)?)
    } else {
        None
    };
    Ok(dump(&serde_json::json!({
        "h0_bound_p": p_bound,
        "h0_bound_z": z_bound,
    })))
}

/// All walls for a total class meeting a parameter box, as a JSON list.
#[pyfunction]
fn walls_in_box(ambient_json: &str, class_json: &str, box_json: &str) -> PyResult<String> {
    let amb = ambient(ambient_json)?;
    let total: NumClass = parse("class", class_json)?;
    let bx: ParameterBox = parse("box", box_json)?;
    Ok(dump(
        &enumerate_walls_in_box(&amb, &total, &bx).map_err(domain)?,
    ))
}

/// Sign (-1, 0, 1) of a wall at a parameter point.
#[pyfunction]
#[pyo3(name = "wall_sign")]
fn wall_sign_py(ambient_json: &str, wall_json: &str, point_json: &str) -> PyResult<i32> {
    let amb = ambient(ambient_json)?;
    let w: WallSpec = parse("wall", wall_json)?;
    let w = WallSpec::new(w.chi0, w.beta0, w.e, w.xi).map_err(domain)?;
    let pt = params(point_json, &amb)?;
    Ok(stab_core::wall_sign(&amb, &w, &pt))
}

/// Whether two parameter points lie in the same chamber of a wall list.
#[pyfunction]
#[pyo3(name = "same_chamber")]
fn same_chamber_py(
    ambient_json: &str,
    walls_json: &str,
    p1_json: &str,
    p2_json: &str,
) -> PyResult<bool> {
    let amb = ambient(ambient_json)?;
    let walls: Vec<WallSpec> = parse("wall list", walls_json)?;
    let a = params(p1_json, &amb)?;
    let b = params(p2_json, &amb)?;
    stab_core::same_chamber(&amb, &walls, &a, &b).map_err(domain)
}

/// Wall-crossing report over a catalog given as JSON {"name": model, ...}.
#[pyfunction]
#[pyo3(name = "crossing_report")]
fn crossing_report_py(
    ambient_json: &str,
    catalog_json: &str,
    p_minus_json: &str,
    p_plus_json: &str,
    p_zero_json: &str,
) -> PyResult<String> {
    let amb = ambient(ambient_json)?;
    let docs: std::collections::BTreeMap<String, ObjectModel> = parse("catalog", catalog_json)?;
    let mut models = Vec::new();
    for (name, doc) in &docs {
        models.push((name.clone(), validate_model(doc).map_err(domain)?));
    }
    let named: Vec<(&str, &ValidatedModel)> =
        models.iter().map(|(n, m)| (n.as_str(), m)).collect();
    let pm = params(p_minus_json, &amb)?;
    let pp = params(p_plus_json, &amb)?;
    let pz = params(p_zero_json, &amb)?;
    Ok(dump(
        &stab_core::crossing_report(&amb, &named, &pm, &pp, &pz).map_err(domain)?,
    ))
}

#[pymodule]
fn stab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(quintic_ambient_py, m)?)?;
    m.add_function(wrap_pyfunction!(validate_ambient_py, m)?)?;
    m.add_function(wrap_pyfunction!(central_charge_py, m)?)?;
    m.add_function(wrap_pyfunction!(slopes, m)?)?;
    m.add_function(wrap_pyfunction!(classes_with_charge, m)?)?;
    m.add_function(wrap_pyfunction!(hn, m)?)?;
    m.add_function(wrap_pyfunction!(jh, m)?)?;
    m.add_function(wrap_pyfunction!(stability, m)?)?;
    m.add_function(wrap_pyfunction!(h0_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(walls_in_box, m)?)?;
    m.add_function(wrap_pyfunction!(wall_sign_py, m)?)?;
    m.add_function(wrap_pyfunction!(same_chamber_py, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_report_py, m)?)?;
    Ok(())
}
