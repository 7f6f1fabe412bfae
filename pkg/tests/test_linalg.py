from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from momentangle import linalg
from momentangle.linalg import I, Gaussian

small = st.integers(-6, 6)
fractions = st.builds(F, st.integers(-9, 9), st.integers(1, 5))


def matrices(elements=small, max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elements, min_size=c, max_size=c), min_size=r, max_size=r)))


gaussians = st.builds(Gaussian, fractions, fractions)


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, F) else x
                          for x in row] for row in m])


# --- examples -------------------------------------------------------------

def test_rref_identity():
    eye = linalg.identity(3)
    reduced, r, piv = linalg.rref_rank(eye)
    assert reduced == eye and r == 3 and piv == [0, 1, 2]


def test_rref_dependent_rows():
    reduced, r, _ = linalg.rref_rank([[1, 2], [2, 4]])
    assert reduced == [[1, 2], [0, 0]] and r == 1


def test_rank_of_hopf_generator_row():
    assert linalg.rank([[0, 1, -1]]) == 1


def test_null_space_of_hopf_generator_row():
    assert linalg.null_space([[0, 1, -1]]) == [[1, 0, 0], [0, 1, 1]]


def test_null_space_of_identity_is_empty():
    assert linalg.null_space(linalg.identity(3)) == []


def test_left_null_space_of_gaussian_column():
    psi = [[1], [1], [I], [I], [I]]
    basis = linalg.null_space(psi, "left")
    assert len(basis) == 4
    for phi in basis:
        assert sum((a * b[0] for a, b in zip(phi, psi)), Gaussian()) == 0


def test_smith_identity_and_diagonal():
    assert linalg.smith_normal_form([[1, 0], [0, 1]])[0] == [1, 1]
    assert linalg.smith_normal_form([[2, 0], [0, 3]])[0] == [1, 6]


def test_smith_singular_rays():
    m = [[1, 2], [1, -2], [-1, 0]]
    factors, U, V = linalg.smith_normal_form(m)
    assert factors == [1, 2]
    # the oracle agrees
    from sympy.matrices.normalforms import smith_normal_form
    assert [abs(x) for x in smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ).diagonal() if x] == [1, 2]


def test_strictly_positive_kernel_square():
    lam = linalg.strictly_positive_kernel([[1, 0, -1, 0], [0, 1, 0, -1]])
    assert lam is not None and all(x > 0 for x in lam)
    assert linalg.matvec([[1, 0, -1, 0], [0, 1, 0, -1]], lam) == [0, 0]


def test_strictly_positive_kernel_infeasible():
    assert linalg.strictly_positive_kernel([[1, 1]]) is None


def test_strictly_positive_kernel_hopf():
    lam = linalg.strictly_positive_kernel([[0, 1, -1]])
    assert lam[1] == lam[2] and min(lam) > 0


def test_linprog_statuses():
    assert linalg.linprog_max([1], [[1]], [-1])[0] == "infeasible"
    assert linalg.linprog_max([1, 0], [[1, -1]], [0])[0] == "unbounded"
    status, value, x = linalg.linprog_max([1, 1], [[1, 2]], [4])
    assert status == "optimal" and value == 4 and x == [4, 0]


def test_gaussian_printing():
    assert str(Gaussian(0, -1)) == "-i"
    assert str(Gaussian(1, 1)) == "1+i"
    assert str(Gaussian(F(1, 2), F(-3, 2))) == "1/2-3/2i"


def test_inverse_of_singular_matrix_raises():
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


# --- properties -----------------------------------------------------------

@given(matrices())
def test_rref_idempotent_and_matches_oracle(m):
    reduced, pivots = linalg.rref(m)
    again, pivots2 = linalg.rref(reduced)
    assert again == reduced and pivots == pivots2
    oracle, opiv = to_sympy(m).rref()
    assert to_sympy(reduced) == oracle and tuple(pivots) == opiv


@given(matrices(fractions))
def test_rank_equals_rank_of_transpose(m):
    assert linalg.rank(m) == linalg.rank(linalg.transpose(m))
    assert linalg.rank(m) == len(linalg.rref(m)[1])


@given(matrices())
def test_null_space_properties(m):
    cols = len(m[0])
    basis = linalg.null_space(m)
    for v in basis:
        assert linalg.matvec(m, v) == [0] * len(m)
    assert len(basis) + linalg.rank(m) == cols
    if basis:
        assert linalg.rank(basis) == len(basis)
    oracle = to_sympy(m).nullspace()
    assert [list(v) for v in oracle] == [[sympy.Rational(x.numerator, x.denominator) for x in v]
                                         for v in basis]
    left = linalg.null_space(m, "left")
    for y in left:
        assert linalg.matvec(linalg.transpose(m), y) == [0] * cols
    assert len(left) + linalg.rank(m) == len(m)


@given(matrices(st.integers(-12, 12), 4, 4))
def test_smith_normal_form_properties(m):
    factors, U, V = linalg.smith_normal_form(m)
    d = linalg.matmul(linalg.matmul(U, m), V)
    rows, cols = len(m), len(m[0])
    for i in range(rows):
        for j in range(cols):
            expected = factors[i] if i == j and i < len(factors) else 0
            assert d[i][j] == expected
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0
    assert all(f > 0 for f in factors)
    assert abs(linalg.integer_determinant(U)) == 1 and abs(linalg.integer_determinant(V)) == 1
    from sympy.matrices.normalforms import invariant_factors
    oracle = [abs(int(x)) for x in invariant_factors(sympy.Matrix(m), domain=sympy.ZZ) if x]
    assert factors == oracle


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_strictly_positive_kernel_property(m):
    lam = linalg.strictly_positive_kernel(m)
    # floating-point oracle: max t with m lam = 0, sum lam = 1, lam_i >= t
    from scipy.optimize import linprog
    cols = len(m[0])
    a_eq = [row + [0] for row in m] + [[1] * cols + [0]]
    b_eq = [0] * len(m) + [1]
    a_ub = [[-int(i == j) for j in range(cols)] + [1] for i in range(cols)]
    res = linprog([0] * cols + [-1], A_ub=a_ub, b_ub=[0] * cols, A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0, None)] * cols + [(None, None)])
    oracle_feasible = res.status == 0 and -res.fun > 1e-9
    assert (lam is not None) == oracle_feasible
    if lam is not None:
        assert all(x > 0 for x in lam)
        assert all(v == 0 for v in linalg.matvec(m, lam))


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert a - a == 0
    assert a.conjugate().conjugate() == a


@given(matrices(fractions, 4, 4))
def test_inverse_and_determinant(m):
    n = len(m)
    sq = [row[:n] + [F(0)] * max(0, n - len(row)) for row in m]
    det = linalg.determinant(sq)
    assert det == to_sympy(sq).det()
    if det:
        inv = linalg.inverse(sq)
        assert linalg.matmul(sq, inv) == linalg.identity(n)


@given(matrices(st.builds(Gaussian, small, small), 4, 4))
def test_gaussian_rank_matches_realification_half(m):
    # rank over Q(i) of M equals half the real rank of [[Re, -Im], [Im, Re]]
    re, im = linalg.real_part(m), linalg.imag_part(m)
    top = [r + [-x for x in i] for r, i in zip(re, im)]
    bottom = [i + r for r, i in zip(re, im)]
    assert 2 * linalg.rank(m) == linalg.rank(top + bottom)
