"""Smoke test for the wreatheq extension module.

Build first with `cargo build -p wreath-eq-py`, then run `python3 python/smoke_test.py`.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("debug", "release"):
        lib = ROOT / "target" / profile / "libwreatheq.so"
        if lib.exists():
            break
    else:
        sys.exit("libwreatheq.so not found; run cargo build -p wreath-eq-py")
    tmp = tempfile.mkdtemp()
    shutil.copy(lib, pathlib.Path(tmp) / "wreatheq.so")
    sys.path.insert(0, tmp)
    import wreatheq

    return wreatheq


def main():
    w = load()

    z2 = w.AbelianGroup(2)
    z3 = w.AbelianGroup(3)
    assert w.commutator_width(z2) == 1
    assert w.commutator_width(z3) == 2
    assert w.AbelianGroup(2, [2]).min_generators() == 3

    f = w.RingElement.parse(z2, "1 - Z(1,0)")
    g = w.RingElement.parse(z2, "Z(0,1)")
    assert (f * g).augmentation() == 0
    assert f.in_varpi([[1, 0]])
    assert not g.in_varpi([[1, 0]])
    assert str(f.divide_one_minus_monomial([1, 0])) == "1"

    x = w.WreathElement.parse(z2, "(1 ; (1,0))")
    y = w.WreathElement.parse(z2, "(Z(0,1) ; (0,1))")
    assert (x * x.inverse()).is_identity()
    c = x.commutator(y)
    assert c.point == [0, 0]

    d = w.RingElement.parse(z3, "-3 + Z(1,0,0) + Z(0,1,0) + Z(0,0,1)")
    assert d.commutator_pairs(1) is None
    pairs = d.commutator_pairs(2)
    assert pairs is not None and len(pairs) == 2

    shifts = w.solve_translate_sum([w.RingElement.parse(z2, "1 - Z(1,0)"), w.RingElement.parse(z2, "Z(4,3) - Z(3,3)")])
    assert shifts is not None

    a, t = w.BaumslagElement.a(), w.BaumslagElement.t()
    assert (t.inverse() * a * t) == w.BaumslagElement.parse("(Y ; 0, 0)")

    src = "group free=3\nconst c = (-3 + Z(1,0,0) + Z(0,1,0) + Z(0,0,1) ; (0,0,0))\nword: [X1,X2] [X3,X4] c^X5\n"
    sol = w.solve(src)
    assert sol is not None and [v for v, _ in sol] == ["X1", "X2", "X3", "X4", "X5"]
    assert w.solve(src, genus_cap=1) is None

    try:
        w.solve("group free=2\nword: X1 X1 [")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed input accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
