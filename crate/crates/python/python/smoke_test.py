"""Smoke test for the gramcalc_py extension module.

Build and run from the workspace root:

    cargo build --release -p gramcalc-python --features extension-module
    cp target/release/libgramcalc_py.so crates/python/python/gramcalc_py.so
    python3 crates/python/python/smoke_test.py
"""

import json
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import gramcalc_py as gc  # noqa: E402


def main() -> None:
    p = gc.Polynomial("x*(y + 3*y^2 + y^3)")
    assert str(p) == "x*y + 3*x*y^2 + x*y^3"
    assert p.coefficient("x*y^2") == 3
    assert p.terms()[0] == ("x*y", 1)
    assert p.letters() == ["x", "y"]
    assert (p - p).terms() == [] and not (p - p)
    assert gc.Polynomial("x + y") ** 2 == gc.Polynomial("x^2 + 2*x*y + y^2")
    assert len({gc.Polynomial("x*y"), gc.Polynomial("y*x")}) == 1

    g = gc.Grammar("x -> x*y; y -> y")
    assert g.rules() == {"x": "x*y", "y": "y"}
    assert g.iterate(gc.Polynomial("x"), 3)[-1] == p
    assert g.derive(gc.Polynomial("x")) == gc.Polynomial("x*y")
    try:
        g.derive(gc.Polynomial("w"), strict=True)
        raise AssertionError("strict mode accepted an unruled letter")
    except ValueError:
        pass

    t1 = gc.derive("x -> x*y; y -> x*y", "x", 2, op="xD")
    assert str(t1[-1]) == "x^4*y + 2*x^3*y^2"

    assert "c4" in gc.case_ids() and "c4[r=3]" in gc.case_labels()
    b = gc.case_triangle("c1", 3)
    assert [b.row(n) for n in (1, 2, 3)] == [[1, 1], [1, 6, 1], [1, 23, 23, 1]]
    assert json.loads(b.to_json())["case"] == "c1"

    big = gc.oracle_triangle("eulerian", 25)
    assert sum(big.row(25)) == math.factorial(25)
    assert gc.oracle_triangle("typeB", 3, method="explicit").rows[3] == [1, 23, 23, 1]
    try:
        gc.oracle_triangle("matchings", 7)
        raise AssertionError("cap not enforced")
    except ValueError:
        pass

    report = gc.verify(max_n=8)
    assert report.passed and report.failures() == []
    assert len(report.labels()) == 22
    assert gc.verify("c11", max_n=6).labels() == ["c11[r=4]", "c11[r=5]"]
    assert json.loads(gc.verify("P1", max_n=5).to_json())["pass"] is True

    print("smoke test passed:", gc.__version__)


if __name__ == "__main__":
    main()
