"""Smoke test for the timescales_py extension module."""

import math

import timescales_py as ts


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    q = ts.TimeScale("q:2")
    assert (q.sigma(4), q.rho(4), q.mu(4), q.nu(4)) == (8, 2, 4, 2)
    assert q.classify(4) == "isolated"
    assert ts.TimeScale.from_json(q.to_json()).sigma(4) == 8

    z = ts.TimeScale("Z")
    square = ts.Expression("t*t")
    assert str(square) == "t^2"
    assert square.catalog_id == "B02"
    assert square.diff(z, 3)["value"] == 7
    assert square.diff(z, 3, nabla=True)["value"] == 5
    assert square.integrate(z, 0, 3) == 5

    fallback = ts.Expression("t^2 + sin(t)")
    d = fallback.diff(z, 0)
    assert d["provenance"] == "fallback"
    assert close(d["value"], 1 + math.sin(1))
    assert close(fallback.quadrature(z, 0)["value"], d["value"], 1e-10)

    hz = ts.TimeScale("hZ:0.5")
    assert close(ts.Expression("sin(t)").diff(hz, 0)["value"], math.sin(0.5) / 0.5)
    assert close(ts.cos_t(hz, 0), math.sin(0.5) / 0.5)
    assert close(ts.sin_t(hz, 0), (1 - math.cos(0.5)) / 0.5)
    assert close(ts.cosh_t(hz, 0), math.sinh(0.5) / 0.5)

    assert len(ts.list_catalog()) == 20
    assert ts.eval_delta("B03", 3, 0, k=2) == 8 * math.log(2)
    assert ts.eval_delta("R01", 4, 0) == 0.25
    row = ts.cross_check("E01", z, 1, k=0.3)
    assert row["max_abs_gap"] <= 1e-10

    p = ts.pythagorean_defect(z, 2)
    assert close(p["rhs"], 2 * (1 - math.cos(1)))
    assert p["within_tolerance"]
    assert ts.hyperbolic_defect(ts.TimeScale("R"), 1)["rhs"] == 1

    try:
        ts.Expression("tan(t)")
    except ValueError:
        pass
    else:
        raise AssertionError("tan(t) should not parse")
    try:
        z.sigma(0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("0.5 is not in Z")

    print("smoke test passed")


if __name__ == "__main__":
    main()
