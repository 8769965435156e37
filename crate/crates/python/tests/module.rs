use std::ffi::CString;
use std::sync::Once;

use abramowitz_py::abramowitz_py;
use pyo3::prelude::*;

static INIT: Once = Once::new();

fn run(code: &str) {
    INIT.call_once(|| {
        pyo3::append_to_inittab!(abramowitz_py);
        Python::initialize();
    });
    Python::attach(|py| {
        let code = CString::new(code).unwrap();
        if let Err(e) = py.run(&code, None, None) {
            e.print(py);
            panic!("python code failed");
        }
    });
}

#[test]
fn evaluation() {
    run(r#"
import abramowitz_py as ab, math, cmath
assert abs(ab.j(2, 0) - math.sqrt(math.pi) / 4) < 1e-16
z = 2 + 3j
assert abs(ab.j(1, z) - ab.j_scaled(1, z) * cmath.exp(-ab.nu(z))) <= 1e-15 * abs(ab.j(1, z))
assert ab.j(1, z.conjugate()) == ab.j(1, z).conjugate()
assert [ab.classify(x) for x in (0.5, 2, 5, 50, 500)] == ["S", "Q1", "Q2", "Q3", "A"]
ev = ab.Evaluator()
assert ev.eval(0, 1.5) == ab.j(0, 1.5)
a = ev.eval_in_region(0, 3.0, "Q1")
b = ev.eval_in_region(0, 3.0, "Q2")
assert abs(a - b) <= 1e-14 * abs(b)
for bad in (lambda: ab.j(0, -1), lambda: ab.j(-1, 0), lambda: ab.j(-2, 1), lambda: ab.table(0, "A")):
    try:
        bad()
        raise AssertionError("expected ValueError")
    except ValueError:
        pass
"#);
}

#[test]
fn oracle_and_tables() {
    run(r#"
import abramowitz_py as ab
from decimal import Decimal
re, im = ab.oracle_j(-1, 1.0, 35)
assert abs(Decimal(re) - Decimal("0.18692873226152801862105169258431284")) < Decimal("1e-34"), re
assert Decimal(im) == 0
z = 20 + 5j
re, im = ab.oracle_j(0, z, 30, True)
assert abs(complex(float(re), float(im)) - ab.j_scaled(0, z)) <= 5e-15 * abs(ab.j_scaled(0, z))
text = ab.table(-1, "Q1")
assert "N2=10" in text.splitlines()[0] and "NT=32" in text.splitlines()[0]
s = ab.error_sweep(0, "Q2", 100, 3)
assert s.count == 100 and s.region == "Q2" and s.max_rel_err < 5e-15
zc = ab.zero_count(2, 2.0, 10.0)
assert zc.zeros == 0 and zc.residual < 1e-3
"#);
}

#[test]
fn fitting_round_trip() {
    let dir = std::env::temp_dir().join(format!("abramowitz-py-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q3.txt");
    run(&format!(
        r#"
import abramowitz_py as ab
r = ab.fit(0, 15.0, 120.0)
assert (r.nt, r.n2, r.n1) == (20, 0, 19), r
assert r.residual <= 1e-20 and len(r.coefficients) == 20
open({path:?}, "w").write(r.to_text())
ev = ab.Evaluator([{path:?}])
for z in (16.0, 40 + 30j, 100j, 119 - 2j):
    a, b = ev.eval_scaled(0, z), ab.j_scaled(0, z)
    assert abs(a - b) <= 1e-14 * abs(b)
"#,
        path = path.to_str().unwrap()
    ));
    std::fs::remove_dir_all(&dir).unwrap();
}
