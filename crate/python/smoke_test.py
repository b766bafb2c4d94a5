"""Smoke test for the gjla_py extension module.

Build and run from the repository root:

    cargo build --release -p gjla-python --features extension-module
    cp target/release/libgjla_py.so python/gjla_py.so
    python3 python/smoke_test.py
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import gjla_py  # noqa: E402
from gjla_py import Matrix  # noqa: E402


def main():
    a = Matrix.from_rows([[1, 2], [3, 4]], "rat")
    assert a.shape == (2, 2)
    assert a.field == "rat"
    assert a.det() == Fraction(-2)
    inv = a.inverse()
    assert inv.rows() == [[Fraction(-2), Fraction(1)], [Fraction(3, 2), Fraction(-1, 2)]]
    assert (a @ inv) == Matrix.from_rows([[1, 0], [0, 1]], "rat")

    singular = Matrix.parse("2 2\n1 2\n2 4\n", "rat")
    assert singular.inverse() is None
    assert singular.rank() == 1 and singular.nullity() == 1

    r, rank, pivots = Matrix.from_rows([[1, 2, 3], [2, 4, 6]], "rat").rref()
    assert r.to_text() == "2 3\n1 2 3\n0 0 0\n" and rank == 1 and pivots == [0]

    b = Matrix.from_rows([["1/2", 1], [1, 2]], "rat")
    p, rref = b.rref_tracked()
    assert p @ b == rref and rref.is_rref()

    s = Matrix.from_rows([[1, 1], [1, 1]], "rat").solve([2, 2])
    assert s["status"] == "INFINITE"
    assert s["particular"] == [2, 0]
    assert s["null_basis"] == [[-1, 1]]
    assert Matrix.from_rows([[1, 1], [1, 1]], "rat").solve([1, 2])["status"] == "INCONSISTENT"

    g = Matrix.random(64, 64, "gf2", seed=7)
    bases = g.bases()
    assert len(bases["row_space"]) == bases["rank"] == g.rank()
    assert len(bases["null_space"]) == 64 - bases["rank"]
    assert all(x in (0, 1) for row in g.rows() for x in row)

    x = Matrix.from_rows([[0.5, 1.0], [1.0, 2.0 + 1e-15]], "real", eps=1e-12)
    assert x.rank() == 1

    big = Matrix.random(14, 14, "rat", seed=3, big_int=True)
    assert big.det() == big.det() == big.transpose().det()

    clean, report = gjla_py.field_laws_check("rat", samples=200)
    assert clean, report
    clean, report = gjla_py.field_laws_check("real", samples=1000)
    assert not clean and "VIOLATED" in report

    try:
        Matrix.parse("2 2\n1 2\n3\n", "rat")
    except ValueError as e:
        assert "line 3" in str(e)
    else:
        raise AssertionError("malformed input was accepted")

    print(repr(a))
    print("smoke test OK")


if __name__ == "__main__":
    main()
