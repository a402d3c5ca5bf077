"""Smoke test for the fellcoact Python bindings.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import fellcoact_py as fc


def close(a, b, tol=1e-9):
    return all(abs(x - y) <= tol for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def main():
    g = fc.Group("s3")
    assert g.order == 6 and not g.is_abelian()
    assert g.mul(1, g.inv(1)) == 0

    # φ(λ(f)) = f(e) and the scalar coefficients recover f
    f = [complex(t + 1, -t) for t in range(g.order)]
    x = g.regular_of(f)
    assert abs(g.plancherel(x) - f[0]) < 1e-12
    coeffs = g.fourier_coefficients(x)
    assert all(abs(c - v) < 1e-12 for c, v in zip(coeffs, f))

    b = fc.Bundle.fixture("c2-semidirect")
    assert b.fiber_dims() == [2, 2]
    assert b.check_axioms()["verdict"] == "pass"
    assert fc.Bundle.from_json(b.to_json()).fiber_dims() == [2, 2]

    alg = fc.BundleAlgebra(b)
    assert alg.spectral_dims() == b.fiber_dims()
    assert alg.is_injective()
    xi = alg.random_section(seed=7)
    rx = alg.embed(xi)
    values = xi.values()
    for t, v in enumerate(values):
        assert close(alg.fourier_coefficient(rx, t), alg.generator(t, v))
    assert close(alg.average(rx), alg.generator(0, values[0]))
    assert fc.operator_norm(rx) > 0

    cert = fc.verify("dual-coaction", "c2-semidirect", samples=5)
    assert cert["verdict"] == "pass", cert
    assert fc.verify("abelian-dictionary", "s3-group") is None
    assert "gauge-m2" in fc.fixture_names()
    assert "inversion" in fc.suite_names()

    cyc = fc.Group("c3")
    assert abs(cyc.plancherel(cyc.regular(0)) - 1) < 1e-12
    assert abs(cyc.plancherel(cyc.regular(1))) < 1e-12

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
