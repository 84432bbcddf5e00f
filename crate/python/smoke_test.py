"""Smoke test for the compiled `weingarten` extension module.

Build it first, e.g.

    cargo build --release -p weingarten-py --features extension-module
    cp target/release/libweingarten.so python/weingarten.so

then run `python3 python/smoke_test.py`.
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import weingarten as w  # noqa: E402


def check(cond, msg):
    if not cond:
        raise SystemExit(f"FAIL: {msg}")
    print(f"ok  {msg}")


def main():
    # Metric and cross product.
    e1, e2, e3 = w.MVec3(1, 0, 0), w.MVec3(0, 1, 0), w.MVec3(0, 0, 1)
    check(w.lorentz_dot(e3, e3) == -1.0, "<e3, e3> = -1")
    check(e1.cross(e2) == w.MVec3(0, 0, -1), "e1 x e2 = -e3")
    check(w.causal_character(w.MVec3(1, 0, 1)) == "Lightlike", "(1,0,1) is lightlike")

    # First integral and phi for a timelike-axis problem.
    p = w.WeingartenProblem("timelike", 2.0, 1.0, 1.0, 1, 2.0)
    phi = p.solve_phi(1.0)
    check(abs(phi) < 1e-14, f"phi(1) = {phi}")
    check(abs(p.first_integral(1.0, 0.0, p.slope(1.0)) - 2.0) < 1e-12, "first integral at u=1 equals lambda")

    curve = p.integrate(0.2, 0.9)
    check(curve.completed and curve.stop_reason == "completed", "integration completes")
    check(curve.conservation_error() < 1e-8, f"first integral conserved ({curve.conservation_error():.1e})")
    rep = curve.residual(30, 15)
    check(rep["max_residual"] < 1e-6, f"aH + bK - c residual {rep['max_residual']:.1e}")

    # Closed form against the integrator.
    cf = p.closed_form("timelike-zero-discriminant", (0.2, 0.9))
    twin = p.integrate(0.2, 0.9, z_start=cf.height(0.2))
    check(cf.compare(twin) < 1e-6, "closed form matches numeric profile")

    # The lambda = b family traces a pseudo-quadric; fit it from a sampled surface.
    h = w.WeingartenProblem("timelike", 2.0, 1.0, 0.0, 1, 1.0, branch="minus")
    cf = h.closed_form("timelike-lambda-eq-b", (0.5, 3.0))
    kind, center, radius = cf.expected_quadric()
    pts = []
    for i in range(20):
        u = 0.5 + 2.5 * i / 19
        z = cf.height(u)
        for j in range(12):
            v = 2 * math.pi * j / 12
            pts.append((u * math.cos(v), u * math.sin(v), z))
    fit = w.identify_quadric(pts)
    check(fit["kind"] == kind and abs(fit["radius"] - radius) < 1e-6, f"quadric {fit['kind']} r={fit['radius']:.6f}")

    try:
        w.WeingartenProblem("timelike", 0.0, 0.0, 1.0, 1, 0.0)
    except w.WeingartenError as e:
        check(True, f"degenerate problem rejected ({e})")
    else:
        check(False, "degenerate problem rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
