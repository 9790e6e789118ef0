"""Smoke test for the Python extension.

Run after `cargo build -p symplectic-vo-py` (or with the module installed):

    python3 python/smoke_test.py
"""

import os
import shutil
import sys
import tempfile
from fractions import Fraction

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    try:
        import symplectic_vo

        return symplectic_vo
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = os.path.join(ROOT, "target", profile, "libsymplectic_vo.so")
        if os.path.exists(lib):
            break
    else:
        sys.exit("build the extension first: cargo build -p symplectic-vo-py")
    tmp = tempfile.mkdtemp()
    shutil.copy(lib, os.path.join(tmp, "symplectic_vo.so"))
    sys.path.insert(0, tmp)
    import symplectic_vo

    return symplectic_vo


def main():
    svo = load()
    S = svo.Scalar

    # scalars
    two = svo.q_int(2, 1)
    assert two == S.q(1) + S.q(-1), two
    assert two.classical_limit() == 2
    assert svo.q_binom(4, 2, "1/2").classical_limit() == 6
    assert svo.q_factorial(3, 1).classical_limit() == 6
    assert svo.q_int_frac("1/2", 3).classical_limit() == Fraction(3, 2)
    x = S("q^1/2+1")
    assert (x * x.inverse()) == S(1)
    assert (x - x).is_zero()
    assert x.bar() == S("q^-1/2+1")
    try:
        S(0).inverse()
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("inverse of zero")

    # series
    a = svo.qpow_exp("1/2", 6)
    b = svo.qpow_product("1/2", 6)
    assert a == b

    # the realization
    r = svo.Realization(2)
    v = svo.FockVector("e[0,0] t[]", 2)
    assert str(r.act("x+_2[-1]", v)) == "e[0,2] t[]"
    w = svo.FockVector("e[1,0] t[1]")
    out = r.x("-", 1, 0, w)
    assert str(out) == "(-1) e[0,1] t[-1]", out
    assert r.x("-", 1, 1, w).is_zero()
    for i in (1, 2):
        assert r.e(i, w).is_zero()
    assert r.e0(w).is_zero()
    assert (w + w - 2 * w).is_zero()
    try:
        svo.FockVector("e[1,0 t[1]")
    except ValueError as e:
        assert "position" in str(e), e
    else:
        raise AssertionError("malformed literal accepted")

    # reports
    for which in ("1", "2", "3"):
        rep = svo.check_identities(which)
        assert rep["summary"]["failed"] == 0, rep
    assert svo.check_cocycle(3)["summary"]["failed"] == 0
    rep = svo.verify_relations(2, relation="r8", mode_min=0, mode_max=0, vectors=[w])
    assert rep["summary"]["total"] == 4 and rep["summary"]["failed"] == 0, rep
    rep = svo.verify_hwv(2)
    assert sum(c["name"] == "hwv" for c in rep["checks"]) == 3
    assert rep["summary"]["failed"] == 0

    print("smoke test passed")


if __name__ == "__main__":
    main()
