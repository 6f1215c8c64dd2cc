"""Smoke test for the homexp extension module.

Build first:
    cargo build -p homexp-py --features extension-module
then run:
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libhomexp_py.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "homexp.so")
            sys.path.insert(0, str(tmp))
            import homexp

            return homexp
    sys.exit("libhomexp_py.so not found; build the homexp-py crate first")


def main():
    hx = load()

    assert hx.nu(3, 18) == 2
    assert hx.nu_factorial(5, 100) == 24
    assert hx.choose2(5) == 10

    iv = hx.exponent_interval("SU(18)", 5)
    assert (iv.lower, iv.upper, iv.exact) == (18, 20, False), iv
    assert 19 in iv
    cert = json.loads(iv.certificate_json())
    assert cert["upper"]["value"] == 20

    s = hx.Space("Spin(9)")
    assert str(s.decompose(5)) == "Sp(4)"
    assert (s.interval(5).lower, s.interval(5).upper) == (7, 8)
    assert hx.exponent_interval("K5", 5).upper is None

    assert (hx.su_lower(3, 12), hx.su_upper_recursive(3, 12), hx.su_upper_closed(3, 12)) == (12, 17, 18)

    rows = hx.exceptional_table()
    assert len(rows) == 17
    e8 = [r for r in rows if r.group == "E8" and r.p == "7"][0]
    assert (e8.lower, e8.upper, e8.factor) == (29, 32, "B(23,35,47,59)")

    code, summary = hx.crosscheck()
    assert code == 0, summary

    try:
        hx.exponent_interval("B(3,11)", 7)
    except ValueError as e:
        assert "q = 12" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("smoke test passed:", summary)


if __name__ == "__main__":
    main()
