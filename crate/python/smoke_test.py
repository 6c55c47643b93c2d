"""Smoke test for the domkit Python bindings.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`.
"""

import os

import domkit_py as dk

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "fixtures")


def main():
    x, y = dk.Word("x"), dk.Word("y")
    assert dk.free_equal(x * y, y * x * x.commutator(y))
    assert str(dk.Word("x y y^-1")) == "x"

    k = dk.Nil2Params(4, 4, 4)
    assert k.group_order() == 64
    e = k.collect(dk.Word("y x"))
    assert str(e) == "(1,1,3)", str(e)
    assert e.order() == 8

    g = k.realize()
    a, b = g.generators()
    h = g.generated_subgroup([g.pow(a, 2), g.pow(b, 2)])
    assert len(h) == 4
    c2 = g.find("(0,0,2)")
    assert c2 not in h
    cert = g.certify_half_nontrivial(h, a, b, 2)
    assert cert.valid and cert.element == c2
    assert c2 in g.dominion(h)
    assert g.witness(h, a) is not None

    g21 = dk.Group.read(os.path.join(FIXTURES, "g21.cay"))
    assert g21.derived_series() == [21, 7, 1]
    x, y, z = g21.find("a"), g21.find("b"), g21.find("ab")
    hm = g21.generated_subgroup([x, g21.commutator(x, y), g21.commutator(x, z)])
    assert g21.certify_metabelian(hm, x, y, z).valid
    assert g21.exchange_scan()[2] == 0

    try:
        dk.Nil2Params(4, 4, 4).element(0, 0, 0).member_subgroup_p(4)
    except dk.DomkitError:
        pass
    else:
        raise AssertionError("expected DomkitError")

    code, out, _ = dk.run_cli(["word", "reduce", "x y y^-1"])
    assert code == 0 and out == "x\n"
    print("smoke test passed")


if __name__ == "__main__":
    main()
