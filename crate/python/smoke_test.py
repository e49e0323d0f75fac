"""Smoke test for the Python bindings.

Builds nothing itself: run `cargo build -p jsbo-py` first, or point JSBO_PY_LIB
at a built `libjsbo_py.so`. Also works after `maturin develop` in crates/py.
Runs under pytest or as a plain script.
"""

import importlib.util
import json
import os
import shutil
import sys
import tempfile
from fractions import Fraction
from math import factorial
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def _load():
    try:
        import jsbo_py

        return jsbo_py
    except ImportError:
        pass
    candidates = [os.environ.get("JSBO_PY_LIB")] + [str(ROOT / "target" / p / "libjsbo_py.so") for p in ("release", "debug")]
    lib = next((c for c in candidates if c and Path(c).is_file()), None)
    if lib is None:
        raise RuntimeError("libjsbo_py.so not found; run `cargo build -p jsbo-py`")
    dst = Path(tempfile.mkdtemp()) / "jsbo_py.so"
    shutil.copy(lib, dst)
    spec = importlib.util.spec_from_file_location("jsbo_py", dst)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


jsbo = _load()


def test_jack_exponential_sum():
    t = [Fraction(1, 2), Fraction(-2, 3)]
    for n in range(4):
        parts = [[a, n - a] for a in range(n, (n - 1) // 2, -1)]
        total = sum(Fraction(jsbo.jack_eval("2", p, [str(x) for x in t])) for p in parts)
        assert total == sum(t) ** n / factorial(n)


def test_jack_terms_are_json():
    terms = json.loads(jsbo.jack_terms("1", [2, 1], 2))
    assert isinstance(terms, list) and terms


def test_kernel_expansion():
    assert jsbo.kernel_expansion_agrees("sym:2", 4)


def test_jordan_suite():
    reps = json.loads(jsbo.jordan_suite("sym:2", seed=7, points=20))
    assert reps and all(r["failed"] == 0 for r in reps)


def test_calibration():
    conv = json.loads(jsbo.calibrate("mat:2x2"))
    assert [conv[k] for k in ("s0", "s1", "s2", "c1", "c2")] == ["-1", "1", "1", "-1", "-1"]


def test_operator_and_poles():
    op = json.loads(jsbo.operator("sp-u", [1, 1]))
    assert op["terms"]
    assert jsbo.pole_order("u-uu", [1, 1, 1, 1], "0") == 1
    assert jsbo.pole_order("u-uu", [1, 1, 1, 1], "37/5") == 0


def test_bad_input_raises():
    try:
        jsbo.calibrate("nope:3")
    except ValueError:
        return
    raise AssertionError("expected ValueError")


if __name__ == "__main__":
    tests = [(k, v) for k, v in sorted(globals().items()) if k.startswith("test_")]
    for name, f in tests:
        f()
        print("ok", name)
    sys.exit(0)
