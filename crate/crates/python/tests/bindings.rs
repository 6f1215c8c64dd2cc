use homexp_py::homexp_module;
use pyo3::prelude::*;
use std::ffi::CString;

fn run(code: &str) -> PyResult<()> {
    static INIT: std::sync::Once = std::sync::Once::new();
    INIT.call_once(|| {
        pyo3::append_to_inittab!(homexp_module);
        Python::initialize();
    });
    let code = CString::new(code).unwrap();
    Python::attach(|py| py.run(&code, None, None))
}

#[test]
fn intervals_and_spaces() {
    run(r#"
import homexp, json
iv = homexp.exponent_interval("SU(18)", 5)
assert (iv.lower, iv.upper, iv.exact) == (18, 20, False)
assert json.loads(iv.certificate_json())["lower"]["value"] == 18
assert homexp.Space("S^3 x S^5") == homexp.parse_space("S^3xS^5")
assert str(homexp.Space("Spin(10)").decompose(5)) == "Sp(4) x S^9"
assert homexp.exponent_interval("B(23,35,47)", 7, strict=True).upper == 25
"#)
    .unwrap();
}

#[test]
fn arithmetic_and_tables() {
    run(r#"
import homexp
assert [homexp.nu(5, 250), homexp.nu_factorial(3, 12), homexp.choose2(0)] == [3, 5, 0]
assert homexp.su_upper_closed(3, 12) == 18
rows = homexp.exceptional_table([7])
assert [r.group for r in rows] == ["G2", "F4,E6", "E7", "E8"]
assert homexp.crosscheck()[0] == 0
"#)
    .unwrap();
}

#[test]
fn errors_become_value_error() {
    for code in [
        "homexp.nu(4, 8)",
        "homexp.Space('SU(')",
        "homexp.exponent_interval('E7', 3)",
    ] {
        let script = format!("import homexp\ntry:\n    {code}\nexcept ValueError:\n    pass\nelse:\n    raise AssertionError({code:?})\n");
        run(&script).unwrap();
    }
}
