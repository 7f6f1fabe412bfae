"""Exact linear algebra over Q and Q(i).

Matrices are plain lists of rows. Entries are :class:`fractions.Fraction`
(rational matrices) or :class:`Gaussian` (Gaussian-rational matrices); every
routine here is written against the field operations only, so the same code
serves both scalar kinds. Integer matrices (lists of ``int``) are used for
Smith normal form.

Pivoting is deterministic everywhere: the pivot is the first nonzero column,
and within it the topmost nonzero row at or below the current pivot row.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[Fraction, "Gaussian"]
Matrix = list  # list[list[Scalar]]


class Gaussian:
    """Element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _lift(x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, (int, Fraction)):
            return Gaussian(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = Gaussian._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Gaussian._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = Gaussian._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re * other, self.im * other)
        if not isinstance(other, Gaussian):
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return Gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re / other, self.im / other)
        if not isinstance(other, Gaussian):
            return NotImplemented
        c, d = other.re, other.im
        norm = c * c + d * d
        if norm == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        a, b = self.re, self.im
        return Gaussian((a * c + b * d) / norm, (b * c - a * d) / norm)

    def __rtruediv__(self, other):
        o = Gaussian._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Gaussian({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        mag = abs(self.im)
        unit = "i" if mag == 1 else f"{mag}i"
        if self.re == 0:
            return unit if self.im > 0 else f"-{unit}"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{unit}"


I = Gaussian(0, 1)


def to_fraction_matrix(rows: Iterable[Iterable]) -> Matrix:
    """Copy with every non-Gaussian entry converted to Fraction."""
    return [[x if type(x) is Fraction or isinstance(x, Gaussian) else Fraction(x) for x in row]
            for row in rows]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(size: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def transpose(m: Sequence[Sequence], cols: Optional[int] = None) -> Matrix:
    """Transpose; ``cols`` gives the column count when ``m`` has no rows."""
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: Optional[int] = None) -> Matrix:
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    if not b:
        cols = 0
    else:
        cols = len(b[0])
    out = []
    for row in a:
        new = []
        for j in range(cols):
            s = Fraction(0)
            for t in range(k):
                x = row[t]
                if x:
                    y = b[t][j]
                    if y:
                        s = s + x * y
            new.append(s)
        out.append(new)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        s = Fraction(0)
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def is_zero_matrix(m: Sequence[Sequence]) -> bool:
    return all(not x for row in m for x in row)


def real_part(m: Sequence[Sequence]) -> Matrix:
    return [[x.re if isinstance(x, Gaussian) else Fraction(x) for x in row] for row in m]


def imag_part(m: Sequence[Sequence]) -> Matrix:
    return [[x.im if isinstance(x, Gaussian) else Fraction(0) for x in row] for row in m]


# ---------------------------------------------------------------------------
# Row reduction

def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns of ``m``.

    The input is not modified. Rank is ``len(pivots)``.
    """
    a = to_fraction_matrix(m)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        pivot_row = a[r]
        inv = 1 / pivot_row[c]
        if inv != 1:
            pivot_row = [x * inv if x else x for x in pivot_row]
            a[r] = pivot_row
        nz = [j for j in range(c, cols) if pivot_row[j]]
        for i in range(rows):
            if i == r:
                continue
            f = a[i][c]
            if not f:
                continue
            row = a[i]
            for j in nz:
                row[j] = row[j] - f * pivot_row[j]
        pivots.append(c)
        r += 1
    return a, pivots


def rref_rank(m: Sequence[Sequence]) -> tuple[Matrix, int, list[int]]:
    reduced, pivots = rref(m)
    return reduced, len(pivots), pivots


def rank(m: Sequence[Sequence]) -> int:
    """Rank via forward elimination only (cheaper than a full rref)."""
    a = to_fraction_matrix(m)
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[p], a[r] = a[r], a[p]
        pivot_row = a[r]
        pv = pivot_row[c]
        for i in range(r + 1, rows):
            f = a[i][c]
            if not f:
                continue
            f = f / pv
            row = a[i]
            for j in range(c, cols):
                if pivot_row[j]:
                    row[j] = row[j] - f * pivot_row[j]
        r += 1
    return r


def null_space(m: Sequence[Sequence], side: str = "right", cols: Optional[int] = None) -> Matrix:
    """Deterministic basis of the right or left null space of ``m``.

    Right: returns a list of vectors ``x`` (as rows) with ``m x = 0``. Each
    basis vector corresponds to one free column, in increasing order, with
    that free coordinate set to 1 and the other free coordinates 0.

    Left: returns rows ``y`` with ``y m = 0``; computed as the right null
    space of the transpose. ``cols`` supplies the column count of ``m`` when
    it has no rows.
    """
    if side == "left":
        if not m:
            return []
        return null_space(transpose(m), "right", cols=len(m))
    if side != "right":
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    ncols = len(m[0]) if m else (cols or 0)
    if not m:
        return identity(ncols)
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x = reduced[r][f]
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def inverse(m: Sequence[Sequence]) -> Matrix:
    size = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(m)]
    reduced, pivots = rref(aug)
    if pivots[:size] != list(range(size)):
        raise ZeroDivisionError("matrix is singular")
    return [row[size:] for row in reduced]


def solve(m: Sequence[Sequence], rhs: Sequence) -> Optional[list]:
    """One solution of ``m x = rhs`` (free variables zero), or None."""
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = reduced[r][ncols]
    return x


def determinant(m: Sequence[Sequence]) -> Fraction:
    a = [list(map(Fraction, row)) if not any(isinstance(x, Gaussian) for x in row) else list(row)
         for row in m]
    size = len(a)
    det = Fraction(1)
    for c in range(size):
        p = next((i for i in range(c, size) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[p], a[c] = a[c], a[p]
            det = -det
        pv = a[c][c]
        det = det * pv
        for i in range(c + 1, size):
            f = a[i][c]
            if f:
                f = f / pv
                for j in range(c, size):
                    a[i][j] = a[i][j] - f * a[c][j]
    return det


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns ``(factors, U, V)`` where ``U`` and ``V`` are unimodular and
    ``U @ m @ V`` is diagonal with entries ``factors`` (followed by zeros),
    ``factors[i]`` dividing ``factors[i + 1]``. Only the nonzero invariant
    factors are returned; their count is the rank.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    clean = clean and a[t][j] == 0
            if not clean:
                cands = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, i0, j0 = min(cands)
                swap_rows(t, i0)
                swap_cols(t, j0)
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            # Pull the offending row into the pivot row; the next pass shrinks the pivot.
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    factors = [a[i][i] for i in range(min(rows, cols)) if a[i][i]]
    return factors, U, V


def integer_determinant(m: Sequence[Sequence[int]]) -> int:
    return int(determinant([[Fraction(x) for x in row] for row in m]))


def primitive_integer_vector(v: Sequence) -> list[int]:
    """Smallest positive multiple of a rational vector that is integral."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]


# ---------------------------------------------------------------------------
# Exact linear programming

def linprog_max(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> tuple[str, Optional[Fraction], Optional[list]]:
    """Maximize ``c.x`` subject to ``a_eq x = b_eq`` and ``x >= 0``.

    Two-phase tableau simplex over exact rationals with Bland's rule.
    Returns ``(status, value, x)`` with status one of ``"optimal"``,
    ``"infeasible"``, ``"unbounded"``.
    """
    nvars = len(c)
    rows = []
    for row, b in zip(a_eq, b_eq):
        row = [Fraction(x) for x in row]
        b = Fraction(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row + [b])
    m = len(rows)
    # Phase 1: artificial variable per row.
    tab = [row[:nvars] + [Fraction(int(i == j)) for j in range(m)] + [row[nvars]]
           for i, row in enumerate(rows)]
    basis = [nvars + i for i in range(m)]
    total = nvars + m
    phase1_cost = [Fraction(0)] * nvars + [Fraction(-1)] * m
    status = _run_simplex(tab, basis, phase1_cost, allowed=total)
    if status != "optimal":  # phase 1 is always bounded
        raise RuntimeError("phase-one simplex did not terminate at an optimum")
    value = sum(phase1_cost[b] * tab[i][-1] for i, b in enumerate(basis))
    if value < 0:
        return "infeasible", None, None
    # Drive artificials out of the basis; drop rows that stay artificial.
    i = 0
    while i < len(tab):
        if basis[i] >= nvars:
            j = next((j for j in range(nvars) if tab[i][j]), None)
            if j is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, j)
        i += 1
    tab = [row[:nvars] + [row[-1]] for row in tab]
    cost = [Fraction(x) for x in c]
    status = _run_simplex(tab, basis, cost, allowed=nvars)
    if status == "unbounded":
        return "unbounded", None, None
    x = [Fraction(0)] * nvars
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    return "optimal", sum(ci * xi for ci, xi in zip(cost, x)), x


def _pivot(tab, basis, r, c):
    pr = tab[r]
    pv = pr[c]
    pr = [x / pv for x in pr]
    tab[r] = pr
    for i, row in enumerate(tab):
        if i != r and row[c]:
            f = row[c]
            tab[i] = [x - f * y for x, y in zip(row, pr)]
    basis[r] = c


def _run_simplex(tab, basis, cost, allowed):
    while True:
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            reduced = cost[j] - sum(cost[b] * tab[i][j] for i, b in enumerate(basis))
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        best = None
        for i, row in enumerate(tab):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(tab, basis, best[1], entering)


def strictly_positive_kernel(m: Sequence[Sequence]) -> Optional[list[Fraction]]:
    """A vector ``lam`` with ``m lam = 0`` and every entry positive, or None.

    Solves ``max t`` subject to ``m lam = 0``, ``sum(lam) = 1``,
    ``lam_i >= t`` with the substitution ``lam_i = t + s_i``, ``s_i >= 0``.
    None means the optimum has ``t <= 0`` (no strictly positive kernel
    vector exists).
    """
    if not m:
        raise ValueError("strictly_positive_kernel needs at least one row")
    ncols = len(m[0])
    a_eq = []
    b_eq = []
    for row in m:
        row = [Fraction(x) for x in row]
        a_eq.append([sum(row, Fraction(0))] + row)
        b_eq.append(Fraction(0))
    a_eq.append([Fraction(ncols)] + [Fraction(1)] * ncols)
    b_eq.append(Fraction(1))
    c = [Fraction(1)] + [Fraction(0)] * ncols
    status, value, x = linprog_max(c, a_eq, b_eq)
    if status != "optimal" or value <= 0:
        return None
    t = x[0]
    return [t + s for s in x[1:]]
