"""Smoke test for the Python bindings.

Build and install first:  pip install ./crates/py --no-build-isolation
(or `maturin develop -m crates/py/Cargo.toml`), then run this file.
"""

import sphereprod as sp


def main() -> None:
    octa = sp.cross_polytope(3)
    assert octa.f_vector() == [6, 12, 8], octa.f_vector()
    assert octa.check_balanced()["passed"]
    assert octa.check_cs()["passed"]
    assert octa.betti() == {2: 1}

    square = sp.SimplicialComplex([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]], name="square")
    assert square.betti(reduced=False) == {0: 1, 1: 1}
    assert sp.SimplicialComplex.parse(square.to_plain()) == square
    assert sp.SimplicialComplex.parse(square.to_json()).name == "square"

    cs = sp.cs_product(5)
    assert cs.f_vector()[0] == 12
    assert cs.betti() == {2: 2, 4: 1}, cs.betti()  # S^2 x S^2
    assert cs.check_cs()["passed"]

    sigma = sp.balanced_product(4)
    assert sigma.f_vector() == [16, 80, 128, 64]
    assert sigma.check_balanced()["passed"]
    assert sigma.isomorphism(sigma) is not None

    assert sp.check_shelling(6, 3)[-1] is not None
    try:
        sp.check_shelling(6, 4)
    except ValueError as e:
        assert "step 22" in str(e)
    else:
        raise AssertionError("d=6, i=4 should not shell")

    try:
        cs.isomorphism(cs, budget=1)
    except sp.BudgetExceeded:
        pass
    else:
        raise AssertionError("budget of one node should run out")

    cert = sp.certify("b-complex", i=2, d=5)
    assert cert["passed"], cert
    print(f"ok: {len(cert['reports'])} checks on B(2,5); sigma-4 {sigma!r}")


if __name__ == "__main__":
    main()
