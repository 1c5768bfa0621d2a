"""Smoke test for the pyvancycle extension.

Build and install first:  pip install --no-build-isolation ./crates/py
Then run:                 python python/smoke_test.py
"""

import json
from fractions import Fraction

import pyvancycle as vc


def main():
    assert vc.monomial_matrix(2, 2) == [[0]]
    m = vc.monomial_matrix(4, 6)
    assert len(m) == 15 and all(m[i][j] == -m[j][i] for i in range(15) for j in range(15))

    f = vc.Fibration.monomial(4, 6)
    assert f.size == 15
    assert f.intersection_matrix() == m
    span = f.orbit(5)
    assert span["positions"] == [5, 11], span["positions"]
    assert f.orbit(2)["positions"] == [2, 5, 8, 11, 14]
    assert f.orbit((2, 1)) == f.orbit(2) == f.orbit("2-1")
    assert span["distinct_eigenvalues"] > 0

    h = [0, 0, 9, 0, -1]
    g = ["0", "8", "16", "0", "-1"]
    pair = vc.Fibration.from_polys(h, g)
    assert pair.pattern == "a b a / c d c / e f e", pair.pattern
    assert sum(not v["simple"] for v in pair.verdicts()) == 3
    assert vc.classify(h, g)["tag"] == "O2"
    assert vc.classify([0, 0, 0, 0, 1], [0, 0, 0, 0, 1])["tag"] == "O1"
    assert vc.critical_degrees([0, 1, 9, 0, -1]) == [1, 1, 1]
    assert vc.critical_degrees([Fraction(1, 2), 0, -2, 0, 1]) == [2, 1]

    one = vc.Fibration.from_grid(json.dumps({"e": 4, "d": 4, "grid": [["a"] * 3] * 3}))
    assert one.orbit("1-1")["dim"] == 5
    assert vc.Fibration.from_critical_values([0], [0, 2, 1]).size == 3

    for bad in (lambda: vc.critical_degrees([0, 1, 0, 0, 1]), lambda: f.orbit(16), lambda: vc.verify("nope")):
        try:
            bad()
        except vc.VancycleError:
            pass
        else:
            raise AssertionError("expected VancycleError")

    report = vc.verify("classes")
    assert report["pass"] and "elapsed_ms" not in report
    assert set(vc.SUITES) >= {"intersection", "pure-powers", "tables"}
    print("pyvancycle smoke test: ok")


if __name__ == "__main__":
    main()
