"""Polytope presentations and their quadric systems.

A presentation is ``P = {x : A x + b >= 0}`` with rows ``a_i`` of ``A``.
The relation matrix ``gamma`` (rows spanning the linear relations among the
``a_i``) turns the image of ``P`` into the quadric system
``sum_k gamma[j][k] |z_k|^2 = (gamma b)_j`` in ``C^m``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import linalg
from .errors import EmptyPolytope, NotGeneric, RankDeficient, ShapeMismatch, Unbounded
from .fan import Fan, SimplicialComplex


@dataclass(frozen=True)
class PolytopePresentation:
    n: int
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]

    @classmethod
    def from_data(cls, n: int, A: Sequence[Sequence], b: Sequence) -> "PolytopePresentation":
        rows = tuple(tuple(Fraction(x) for x in row) for row in A)
        if len(rows) != len(b):
            raise ShapeMismatch(f"A has {len(rows)} rows but b has {len(b)} entries")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ShapeMismatch(f"row {i + 1} of A has {len(row)} entries, expected {n}")
        return cls(n, rows, tuple(Fraction(x) for x in b))

    @property
    def m(self) -> int:
        return len(self.A)

    def values(self, x: Sequence) -> list[Fraction]:
        """The vector ``A x + b``."""
        return [sum((a * xi for a, xi in zip(row, x)), Fraction(0)) + bi
                for row, bi in zip(self.A, self.b)]

    def with_row(self, a: Sequence, b) -> "PolytopePresentation":
        return PolytopePresentation(self.n, self.A + (tuple(Fraction(x) for x in a),),
                                    self.b + (Fraction(b),))


@dataclass(frozen=True)
class QuadricSystem:
    gamma: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.gamma[0]) if self.gamma else 0

    def equations(self) -> list[str]:
        out = []
        for row, r in zip(self.gamma, self.rhs):
            terms = []
            for k, c in enumerate(row):
                if c:
                    coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                    terms.append(f"{coef}|z{k + 1}|^2")
            lhs = " + ".join(terms).replace("+ -", "- ") or "0"
            out.append(f"{lhs} = {r}")
        return out


@dataclass(frozen=True)
class LinkForm:
    """Homogeneous quadrics ``D`` plus the unit sphere.

    ``scaling[k]`` records the positive factor applied to ``|z_k|^2``:
    a point ``y`` of the original system corresponds to
    ``scaling[k] * y[k]`` here.
    """

    D: tuple[tuple[Fraction, ...], ...]
    scaling: tuple[Fraction, ...]
    gamma: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]


@dataclass
class GenericityReport:
    generic: bool
    redundant: frozenset
    vertices: list[tuple[Fraction, ...]]
    tight_sets: list[frozenset]
    full_dimensional: bool = True
    diagnostics: list[str] = field(default_factory=list)


@dataclass
class TransversalityResult:
    transverse: bool
    witness: Optional[frozenset] = None

    def __bool__(self):
        return self.transverse


def gamma_matrix(P: PolytopePresentation) -> QuadricSystem:
    """Relation matrix of the rows of ``A`` and the right-hand side ``gamma b``."""
    A = [list(r) for r in P.A]
    if linalg.rank(A) < P.n:
        raise RankDeficient(f"rank of A is below n={P.n}")
    gamma = linalg.null_space(A, "left") if A else []
    rhs = linalg.matvec(gamma, P.b)
    return QuadricSystem(tuple(tuple(r) for r in gamma), tuple(rhs))


def is_bounded(P: PolytopePresentation) -> bool:
    """True iff ``{x : A x >= 0} = {0}``.

    By Stiemke's alternative this holds exactly when ``A`` has full column
    rank and the rows ``a_i`` admit a strictly positive linear relation.
    """
    A = [list(r) for r in P.A]
    if P.n == 0:
        return True
    if not A or linalg.rank(A) < P.n:
        return False
    return linalg.strictly_positive_kernel(linalg.transpose(A)) is not None


def interior_depth(P: PolytopePresentation) -> Optional[Fraction]:
    """Largest ``t >= 0`` with some ``x`` satisfying ``A x + b >= t``.

    None if ``P`` is empty. Requires ``P`` bounded.
    """
    n, m = P.n, P.m
    # variables: x+ (n), x- (n), t, slack w (m);  A x+ - A x- - t - w = -b
    a_eq = []
    for row in P.A:
        a_eq.append(list(row) + [-x for x in row] + [Fraction(-1)] + [Fraction(0)] * m)
    for i in range(m):
        a_eq[i][2 * n + 1 + i] = Fraction(-1)
    b_eq = [-x for x in P.b]
    c = [Fraction(0)] * (2 * n) + [Fraction(1)] + [Fraction(0)] * m
    status, value, _ = linalg.linprog_max(c, a_eq, b_eq)
    if status == "infeasible":
        return None
    if status == "unbounded":
        raise Unbounded("polytope is unbounded")
    return value


def _enumerate_vertices(P: PolytopePresentation) -> tuple[list[tuple], list[frozenset]]:
    vertices: dict[tuple, frozenset] = {}
    for subset in combinations(range(P.m), P.n):
        rows = [list(P.A[i]) for i in subset]
        if P.n and linalg.rank(rows) < P.n:
            continue
        x = linalg.solve(rows, [-P.b[i] for i in subset]) if P.n else []
        key = tuple(x)
        if key in vertices:
            continue
        vals = P.values(x)
        if all(v >= 0 for v in vals):
            vertices[key] = frozenset(i for i, v in enumerate(vals) if v == 0)
    ordered = sorted(vertices)
    return ordered, [vertices[v] for v in ordered]


def genericity_check(P: PolytopePresentation) -> GenericityReport:
    """Enumerate vertices and decide whether at most n hyperplanes meet anywhere on P."""
    if not is_bounded(P):
        raise Unbounded("recession cone {x : A x >= 0} is nonzero")
    vertices, tight = _enumerate_vertices(P)
    if not vertices:
        raise EmptyPolytope("no vertex satisfies every inequality")
    diag = []
    depth = interior_depth(P)
    full = depth is not None and depth > 0
    if not full:
        diag.append("polytope is not full-dimensional")
    generic = full
    for v, t in zip(vertices, tight):
        if len(t) != P.n:
            generic = False
            diag.append(f"vertex {tuple(str(x) for x in v)} lies on {len(t)} hyperplanes")
    touched = frozenset().union(*tight)
    redundant = frozenset(i for i in range(P.m) if i not in touched)
    return GenericityReport(generic, redundant, vertices, tight, full, diag)


def tight_complex(P: PolytopePresentation, report: Optional[GenericityReport] = None) -> SimplicialComplex:
    """Complex whose maximal simplices are the tight sets of the vertices of P.

    For a generic presentation this is the underlying complex of the normal
    fan; for a degenerate one it records which hyperplanes actually meet.
    """
    report = report or genericity_check(P)
    return SimplicialComplex.from_simplices(P.m, report.tight_sets)


def transversality_check(Q: QuadricSystem, K: SimplicialComplex) -> TransversalityResult:
    """Rank test: deleting the columns of any face must leave ``gamma`` of full row rank."""
    m = len(Q.gamma[0]) if Q.gamma else K.m
    if K.m != m:
        raise ShapeMismatch(f"complex has {K.m} vertices but the quadric system has {m} variables")
    target = len(Q.gamma)
    for face in K.faces:
        keep = [k for k in range(m) if k not in face]
        reduced = [[row[k] for k in keep] for row in Q.gamma]
        r = linalg.rank(reduced) if keep else 0
        if r < target:
            return TransversalityResult(False, face)
    return TransversalityResult(True, None)


def normal_fan(P: PolytopePresentation, primitive: bool = True,
               report: Optional[GenericityReport] = None) -> Fan:
    """Normal fan of a generic presentation; redundant rows become zero (ghost) rows.

    With ``primitive`` each irredundant normal is replaced by the primitive
    integral vector in its direction.
    """
    report = report or genericity_check(P)
    if not report.generic:
        raise NotGeneric("; ".join(report.diagnostics) or "presentation is not generic")
    rows = []
    for i, a in enumerate(P.A):
        if i in report.redundant:
            if any(a):
                warnings.warn(f"redundant row {i + 1} has a nonzero normal; its fan generator is "
                              "set to zero", stacklevel=2)
            rows.append([0] * P.n)
        elif primitive:
            rows.append(linalg.primitive_integer_vector(a))
        else:
            rows.append(list(a))
    return Fan.from_data(P.n, rows, report.tight_sets)


def normalize_to_link(P: PolytopePresentation) -> LinkForm:
    """Rescale the inequalities so the system becomes homogeneous quadrics plus a unit sphere.

    Row ``i`` is multiplied by ``lam_i > 0`` with ``sum lam_i a_i = 0`` (from
    an exact LP), then everything by ``1 / sum(lam_i b_i)``. The relation
    matrix is rebuilt with the all-ones relation last, and that sphere row is
    subtracted from the others to make them homogeneous.
    """
    report = genericity_check(P)
    if not report.generic:
        raise NotGeneric("; ".join(report.diagnostics) or "presentation is not generic")
    A = [list(r) for r in P.A]
    lam = linalg.strictly_positive_kernel(linalg.transpose(A, cols=P.m) if P.n else [[Fraction(0)] * P.m])
    if lam is None:
        raise Unbounded("no strictly positive relation among the normals")
    total = sum(l * b for l, b in zip(lam, P.b))
    if total <= 0:
        raise EmptyPolytope("rescaled right-hand sides do not sum to a positive number")
    scaling = [l / total for l in lam]
    scaled_A = [[s * x for x in row] for s, row in zip(scaling, A)]
    scaled_b = [s * b for s, b in zip(scaling, P.b)]
    ones = [Fraction(1)] * P.m
    relations = linalg.null_space(scaled_A, "left") if P.n else linalg.identity(P.m)
    chosen: list[list[Fraction]] = []
    for row in relations:
        if len(chosen) == P.m - P.n - 1:
            break
        if linalg.rank([ones] + chosen + [row]) == len(chosen) + 2:
            chosen.append(row)
    gamma = chosen + [ones]
    rhs = linalg.matvec(gamma, scaled_b)
    D = [[x - r for x in row] for row, r in zip(chosen, rhs)]
    return LinkForm(tuple(tuple(r) for r in D), tuple(scaling),
                    tuple(tuple(r) for r in gamma), tuple(rhs))
