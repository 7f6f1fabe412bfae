"""The graded ring ``C[v_1..v_m] / (I_K + J)`` of a complete simplicial fan.

``I_K`` is the Stanley-Reisner ideal of the underlying complex and ``J`` is
generated by the linear forms ``sum_k a_kj v_k``. The ring is computed degree
by degree: the ``n`` variables of the lexicographically least maximal cone
are eliminated through ``J``, the Stanley-Reisner generators are rewritten
in the remaining ``m - n`` variables, and each graded piece is obtained by
row reducing the span of monomial multiples of the generators. Monomials are
ordered graded-lexicographically with lower variable index more
significant; the non-pivot monomials form the basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .errors import DegreeOverflow, HVectorMismatch, MalformedFan
from .fan import Fan, SimplicialComplex, f_h_vectors, minimal_non_faces

Exponent = tuple[int, ...]
Poly = dict  # Exponent -> scalar


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Exponent, ...]:
    """All exponent vectors of the given degree, in descending lexicographic order."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return tuple(out)


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _unit(nvars: int, j: int) -> Exponent:
    return tuple(int(i == j) for i in range(nvars))


def _graded_pieces(nvars: int, generators: Sequence[tuple[int, Poly]], top: int):
    """Row-reduce monomial multiples of ``generators`` in degrees ``0..top``.

    Returns per degree ``(monomials, basis, normal_forms)`` where
    ``normal_forms`` maps every monomial to its coordinate tuple over ``basis``.
    """
    pieces = []
    for d in range(top + 1):
        mons = monomials(nvars, d)
        index = {mon: i for i, mon in enumerate(mons)}
        rows = []
        for deg, g in generators:
            if deg > d or not g:
                continue
            for mu in monomials(nvars, d - deg):
                row = [Fraction(0)] * len(mons)
                for e, c in g.items():
                    row[index[tuple(a + b for a, b in zip(e, mu))]] += c
                rows.append(row)
        reduced, pivots = linalg.rref(rows) if rows else ([], [])
        pivot_set = set(pivots)
        free = [c for c in range(len(mons)) if c not in pivot_set]
        basis = [mons[c] for c in free]
        nf = {}
        for pos, c in enumerate(free):
            nf[mons[c]] = tuple(Fraction(int(pos == j)) for j in range(len(free)))
        for r, p in enumerate(pivots):
            nf[mons[p]] = tuple(-reduced[r][c] for c in free)
        pieces.append((mons, basis, nf))
    return pieces


@dataclass(frozen=True)
class RingClass:
    degree: int
    coords: tuple

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "RingClass") -> "RingClass":
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degree")
        return RingClass(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "RingClass":
        return RingClass(self.degree, tuple(c * x for x in self.coords))


class GradedRing:
    """Finite-dimensional graded quotient ring with explicit bases and normal forms.

    Degree ``d`` means polynomial degree (cohomological degree ``2d``). Only
    the variables ``survivors`` remain after elimination; ``linear_forms[k]``
    expresses the original ``v_k`` in them.
    """

    def __init__(self, fan: Fan, eliminated: tuple[int, ...], survivors: tuple[int, ...],
                 linear_forms: list[list[Fraction]], pieces):
        self.fan = fan
        self.n = fan.n
        self.m = fan.m
        self.eliminated = eliminated
        self.survivors = survivors
        self.linear_forms = linear_forms
        self._pieces = pieces
        self._products: dict = {}

    @property
    def nvars(self) -> int:
        return len(self.survivors)

    def dim(self, d: int) -> int:
        if d < 0 or d >= len(self._pieces):
            return 0
        return len(self._pieces[d][1])

    def dims(self) -> list[int]:
        """Dimensions in degrees ``0..n+1``."""
        return [self.dim(d) for d in range(self.n + 2)]

    def basis(self, d: int) -> list[Exponent]:
        return list(self._pieces[d][1]) if 0 <= d < len(self._pieces) else []

    def zero(self, d: int) -> RingClass:
        return RingClass(d, tuple(Fraction(0) for _ in range(self.dim(d))))

    def one(self) -> RingClass:
        return RingClass(0, (Fraction(1),))

    def basis_class(self, d: int, i: int) -> RingClass:
        return RingClass(d, tuple(Fraction(int(i == j)) for j in range(self.dim(d))))

    def normal_form(self, poly: Poly, degree: int) -> RingClass:
        """Reduce a homogeneous polynomial in the surviving variables."""
        if degree > self.n + 1:
            return RingClass(degree, ())
        nf = self._pieces[degree][2]
        coords = [Fraction(0)] * self.dim(degree)
        for e, c in poly.items():
            if not c:
                continue
            for j, x in enumerate(nf[e]):
                if x:
                    coords[j] = coords[j] + c * x
        return RingClass(degree, tuple(coords))

    def linear_form_poly(self, k: int) -> Poly:
        return {_unit(self.nvars, j): c for j, c in enumerate(self.linear_forms[k]) if c}

    def variable_class(self, k: int) -> RingClass:
        """The class of the original variable ``v_k`` (0-based)."""
        return self.normal_form(self.linear_form_poly(k), 1)

    def linear_class(self, coefficients: Sequence) -> RingClass:
        """The class of ``sum_k coefficients[k] v_k``; scalars may be Gaussian."""
        out: Poly = {}
        for k, c in enumerate(coefficients):
            if not c:
                continue
            for e, x in self.linear_form_poly(k).items():
                out[e] = out.get(e, 0) + c * x
        return self.normal_form(out, 1)

    def basis_product(self, d1: int, i: int, d2: int, j: int) -> tuple:
        """Coordinates of (basis_i in degree d1) * (basis_j in degree d2)."""
        key = (d1, i, d2, j)
        hit = self._products.get(key)
        if hit is None:
            a = self._pieces[d1][1][i]
            b = self._pieces[d2][1][j]
            e = tuple(x + y for x, y in zip(a, b))
            hit = self.normal_form({e: Fraction(1)}, d1 + d2).coords
            self._products[key] = hit
        return hit

    def multiply(self, a: RingClass, b: RingClass) -> RingClass:
        d = a.degree + b.degree
        if d > self.n + 1:
            raise DegreeOverflow(f"product degree {d} exceeds n + 1 = {self.n + 1}")
        coords = [Fraction(0)] * self.dim(d)
        for i, x in enumerate(a.coords):
            if not x:
                continue
            for j, y in enumerate(b.coords):
                if not y:
                    continue
                xy = x * y
                for t, z in enumerate(self.basis_product(a.degree, i, b.degree, j)):
                    if z:
                        coords[t] = coords[t] + xy * z
        return RingClass(d, tuple(coords))

    def multiplication_operator(self, cls: RingClass, d: int) -> list[list]:
        """Matrix of ``x -> cls * x`` from degree ``d`` to degree ``d + cls.degree``.

        Columns index the source basis, rows the target basis.
        """
        target = d + cls.degree
        cols = [self.multiply(cls, self.basis_class(d, i)).coords for i in range(self.dim(d))]
        return [[cols[i][r] for i in range(len(cols))] for r in range(self.dim(target))]

    def describe_basis(self, d: int) -> list[str]:
        names = [f"v{k + 1}" for k in self.survivors]
        out = []
        for e in self.basis(d):
            parts = [n if p == 1 else f"{n}^{p}" for n, p in zip(names, e) if p]
            out.append("*".join(parts) or "1")
        return out


def _least_maximal_cone(K: SimplicialComplex, n: int) -> tuple[int, ...]:
    full = [tuple(sorted(s)) for s in K.maximal if len(s) == n]
    if not full:
        raise MalformedFan(f"fan has no {n}-dimensional cone; it is not complete")
    return min(full)


def face_ring_quotient(fan: Fan, check: bool = True) -> GradedRing:
    """Build the ring; with ``check`` the graded dimensions must equal the h-vector."""
    K = fan.complex
    n, m = fan.n, fan.m
    cone = _least_maximal_cone(K, n)
    survivors = tuple(k for k in range(m) if k not in cone)
    s = len(survivors)
    # v_cone = -B^{-1} sum_{k not in cone} a_k v_k with B the n x n matrix of columns a_i.
    forms: list[list[Fraction]] = [[Fraction(0)] * s for _ in range(m)]
    for j, k in enumerate(survivors):
        forms[k][j] = Fraction(1)
    if n:
        B = linalg.transpose(fan.generator_rows(cone))
        Binv = linalg.inverse(B)
        for j, k in enumerate(survivors):
            coeffs = linalg.matvec(Binv, fan.generators[k])
            for t, i in enumerate(cone):
                forms[i][j] = -coeffs[t]
    generators = []
    for face in minimal_non_faces(K):
        poly: Poly = {tuple([0] * s): Fraction(1)}
        for k in sorted(face):
            poly = poly_mul(poly, {_unit(s, j): c for j, c in enumerate(forms[k]) if c})
        generators.append((len(face), poly))
    pieces = _graded_pieces(s, generators, n + 1)
    ring = GradedRing(fan, cone, survivors, forms, pieces)
    if check:
        report = check_h_vector(ring, K, n)
        if not report.passed:
            raise HVectorMismatch(report.message)
    return ring


@dataclass
class HVectorReport:
    passed: bool
    dims: list[int]
    h_vector: list[int]
    message: str = ""


def check_h_vector(R: GradedRing, K: SimplicialComplex, n: int) -> HVectorReport:
    _, h = f_h_vectors(K, n)
    dims = R.dims()
    bad = [d for d in range(n + 1) if dims[d] != h[d]]
    msgs = [f"degree {d}: dimension {dims[d]} but h_{d} = {h[d]}" for d in bad]
    if dims[n + 1]:
        msgs.append(f"degree {n + 1} has dimension {dims[n + 1]}, expected 0")
    return HVectorReport(not msgs, dims[: n + 1], h, "; ".join(msgs))


def face_ring_dimensions_direct(fan: Fan) -> list[int]:
    """Graded dimensions in degrees ``0..n+1`` without eliminating variables.

    Works in all ``m`` variables with the linear forms and Stanley-Reisner
    monomials as generators; an independent check on :func:`face_ring_quotient`.
    """
    m, n = fan.m, fan.n
    generators = []
    for j in range(n):
        poly = {_unit(m, k): fan.generators[k][j] for k in range(m) if fan.generators[k][j]}
        generators.append((1, poly))
    for face in minimal_non_faces(fan.complex):
        generators.append((len(face), {tuple(int(k in face) for k in range(m)): Fraction(1)}))
    return [len(p[1]) for p in _graded_pieces(m, generators, n + 1)]
