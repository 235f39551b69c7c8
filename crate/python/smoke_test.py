"""Smoke test for the noneuclid extension module.

    cd crates/python && maturin develop --release
    python python/smoke_test.py
"""
import math

import noneuclid

PI = math.pi


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    # Λ(π/4) is half of Catalan's constant
    close(noneuclid.lobachevsky(PI / 4), 0.915965594177219 / 2, 1e-14)

    cube = noneuclid.Cube(2 * PI / 3, 2 * PI / 3, 3 * PI / 4)
    assert cube.geometry == "spherical"
    exact = 31 * PI**2 / 576
    for method in ("delta", "integral", "ray"):
        close(cube.volume(method=method), exact, 1e-10)
    est = cube.volume_estimate()
    assert est.converged and est.err_estimate < 1e-9

    pd = cube.principal()
    close(pd.T, -1.0, 1e-12)
    close(pd.theta, 3 * PI / 4, 1e-12)
    assert pd.quartic_residual() < 1e-12
    assert all(0 < l < PI / 2 for l in cube.edge_lengths())

    hyp = noneuclid.Cube(PI / 4, PI / 4, PI / 4)
    assert hyp.geometry == "hyperbolic" and hyp.principal().abc is None
    assert hyp.volume() > 0
    try:
        hyp.edge_lengths()
    except noneuclid.DomainError:
        pass
    else:
        raise AssertionError("hyperbolic edge lengths should raise DomainError")

    d = noneuclid.delta(2 * PI / 3, 3 * PI / 4)
    close(d.value, PI**2 / 16 - (PI / 3) ** 2, 1e-12)
    close(noneuclid.delta_closed(2 * PI / 3, 3 * PI / 4), d.value, 1e-12)

    gamma, v = noneuclid.volume_special_family(2.2, 2.4)
    close(noneuclid.Cube(2.2, 2.4, gamma).volume(), v, 1e-10)

    q = noneuclid.Orthoscheme(PI / 3, 1.4, PI / 3)
    assert q.curvature == "spherical"
    vs = [q.volume(method=m) for m in ("schlaefli", "delta", "integral")]
    assert max(vs) - min(vs) < 1e-11, vs

    assert isinstance(noneuclid.DomainError(), ValueError)
    reports = noneuclid.selfcheck(seed=42)
    failed = [r for r in reports if not r.passed]
    assert not failed, failed

    print(f"ok: {len(reports)} checks passed, V = {cube.volume():.10f}")


if __name__ == "__main__":
    main()
