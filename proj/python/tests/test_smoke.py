import random
from fractions import Fraction

import pytest
import sympy

import ffdep

X1, X2, X3 = sympy.symbols("x1 x2 x3")


def test_psi3_matches_closed_form():
    # Psi_3 = 3X^4 + 6aX^2 + 12bX - a^2
    for a, b in [(0, 1), (2, -3), (-1, 1)]:
        psi3 = ffdep.division_polynomials(f"a={a},b={b}", 3)[2]["psi"]
        assert psi3 == [Fraction(-a * a), Fraction(12 * b), Fraction(6 * a), Fraction(0), Fraction(3)]


def sylvester_det(f, g):
    m, n = len(f) - 1, len(g) - 1
    rows = []
    for r in range(n):
        rows.append([0] * r + f[::-1] + [0] * (n - 1 - r))
    for r in range(m):
        rows.append([0] * r + g[::-1] + [0] * (m - 1 - r))
    return int(sympy.Matrix(rows).det())


def test_resultant_agrees_with_sylvester_determinant():
    rng = random.Random(3)
    for _ in range(50):
        f = [rng.randint(-20, 20) for _ in range(rng.randint(2, 6))] + [rng.randint(1, 9)]
        g = [rng.randint(-20, 20) for _ in range(rng.randint(2, 6))] + [rng.randint(1, 9)]
        assert ffdep.resultant(f, g) == sylvester_det(f, g)


def test_sigma3_matches_closed_form():
    a, b = 1, 1
    s = ffdep.summation_polynomial(f"a={a},b={b}", 3)
    assert s["degrees"] == [2, 2, 2]
    ours = sum(c * X1**e[0] * X2**e[1] * X3**e[2] for c, e in s["terms"])
    known = ((X1 - X2) ** 2 * X3**2 - 2 * ((X1 + X2) * (X1 * X2 + a) + 2 * b) * X3
             + (X1 * X2 - a) ** 2 - 4 * b * (X1 + X2))
    assert sympy.expand(ours - known) == 0 or sympy.expand(ours + known) == 0


def test_dependence_witnesses():
    assert ffdep.is_K_mult_dependent(7, [2, 4], 2) == (1, -2)
    assert ffdep.is_K_mult_dependent(7, [3], 2) is None
    assert ffdep.is_L_linear_dependent(5, 0, 1, [0, 0], 1) == (1, -1)
    assert ffdep.is_L_linear_dependent(5, 0, 1, [0], 3) == (3,)


def test_relation_table_and_locus():
    t = ffdep.resultant_table("X, X+1", 2, 2)
    assert t["W"] == [1, 1, 1]
    assert any(r["k"] == (1, 0) and r["l"] == (0, 1) and r["R"] == 1 for r in t["records"])
    rep = ffdep.locus("A", 7, 2, 2, phis="X, X+1")
    assert 2 in [e["alpha"] for e in rep["elements"]]
    assert rep["within_bound"]


def test_errors_are_exceptions():
    with pytest.raises(ValueError):
        ffdep.resultant_table("X, X", 1, 1)
    with pytest.raises(ffdep.BudgetExceeded):
        ffdep.summation_polynomial("a=-1,b=1", 7)
