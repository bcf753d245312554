"""Quick end-to-end check of the pygenus2cm extension.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import math
import sys

import pygenus2cm as g


def main() -> int:
    # y^2 = x^6 + 16 over GF(17)
    inv = g.invariants("GF(17)", ["1", "0", "0", "0", "0", "0", "16"])
    assert inv["i"] == [4, 5, 15], inv

    # x^5 + 1: ordinary at p = 1 mod 5, superspecial at p = 4 mod 5
    assert g.hasse_witt("GF(11)", ["1", "0", "0", "0", "0", "1"])["ordinary"]
    assert g.hasse_witt("GF(19)", ["1", "0", "0", "0", "0", "1"])["superspecial"]

    k = g.cm_field(17, -119, 28)
    assert k["galois_type"] == "cyclic", k
    assert g.cm_field(11, -67, 20)["discriminant"] == 172304

    rows = g.predict(11, -67, 20, 13)
    assert [(r["a"], r["f"]) for r in rows] == [(1, 0)], rows

    for kind in ("cyclic", "biquadratic"):
        assert g.table_report(kind)["shapes_consistent"], kind
    # the dihedral table carries one misprinted ramification index
    bad = g.table_report("nongalois")["inconsistencies"]
    assert [(r, c) for r, c, _ in bad] == [("nonGalois.xxvi", "N")], bad

    assert g.fixture_passes("cyclic17", 7)
    assert g.fixture_passes("dihedral11", 89)
    assert abs(g.coefficient_bound(1, 2, 7, 17, -238, 2) + 370.8) < 0.05

    i = g.theta_invariants([("0.1", "1.1"), ("0.3", "0.2"), ("0.05", "1.3")], 30)
    assert len(i) == 3 and all(math.isfinite(x) and math.isfinite(y) for x, y in i)

    try:
        g.invariants("Q", ["0"] * 7)
    except g.Genus2Error as e:
        assert isinstance(e, ValueError)
    else:
        raise AssertionError("zero polynomial accepted")

    print("pygenus2cm smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
