"""Smoke test for the pyloewner extension.

Build and install first:
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
then run `python python/smoke_test.py`.
"""

import math

import pyloewner as pl


def closed_form(c):
    return -12.0 * sum(math.log(1.0 - c ** (2 * n)) for n in range(1, 200))


def main():
    w = pl.DrivingFunction.linear(1.0, 1.0)
    assert abs(w.dirichlet_energy() - 0.5) < 1e-12

    trace = pl.solve_forward(w, steps=400)
    assert len(trace) == 401 and all(z.imag >= 0.0 for z in trace.points)
    caps = trace.capacities
    assert all(b > a for a, b in zip(caps, caps[1:]))
    back = pl.extract_driving(trace)
    assert back.sup_distance(w) < 0.05, back.sup_distance(w)

    circle = pl.Curve.circle(complex(1.0, -2.0), 3.0)
    report = circle.energy_report()
    for route in ("dirichlet", "liouville", "grunsky"):
        assert report[route]["status"] == "ok" and abs(report[route]["value"]) < 1e-6, report[route]

    ellipse = pl.Curve.joukowski(0.3)
    g, l = ellipse.grunsky_energy(), ellipse.liouville_energy()
    assert abs(g - closed_form(0.3)) < 1e-8 and abs(g - l) < 1e-4, (g, l)
    same = pl.Curve.from_json('{"kind": "named", "name": "joukowski", "params": {"c": 0.3}}')
    assert abs(same.grunsky_energy() - g) < 1e-12

    tent = pl.DrivingFunction.from_knots([(0.0, 0.0), (0.5, 0.5), (1.0, 0.0)])
    e = pl.infinite_curve_energy(tent)
    assert abs(e - 0.5) < 0.025, e

    a = pl.sle_trace(2.0, horizon=1.0, dt=1e-3, seed=7)
    b = pl.sle_trace(2.0, horizon=1.0, dt=1e-3, seed=7)
    assert a.points == b.points
    assert len(pl.sle_driving(1.0, dt=0.01, seed=1)) == 101
    assert pl.central_charge(2.0) == -2.0

    est = pl.schilder_estimate(w, [1.0, 0.5], eps=0.8, samples=5000, seed=3, steps=200)
    rates = [row["rate_estimate"] for row in est["rows"]]
    assert rates[1] < rates[0], rates

    u = [complex(1.0, 0.5), complex(0.0, -0.3), complex(0.2, 0.0)]
    v = [complex(-0.4, 0.1), complex(0.7, 0.0), complex(0.0, 0.9)]
    assert abs(pl.wp_symplectic(u, v) + pl.wp_symplectic(v, u)) < 1e-12
    assert abs(pl.wp_symplectic(u, pl.hilbert_j(v)) - pl.wp_inner(u, v)) < 1e-12
    assert pl.check_identities(16)["passes"]

    try:
        pl.Curve.joukowski(1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("pyloewner smoke test passed")


if __name__ == "__main__":
    main()
