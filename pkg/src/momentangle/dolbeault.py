"""Dolbeault and de Rham models of the moment-angle manifold and their cohomology.

The Dolbeault model is ``Lambda[xi_1..xi_l, eta_1..eta_l] (x) R`` with ``R``
the toric cohomology ring, ``xi`` of bidegree (1,0), ``eta`` of (0,1), ring
degree ``r`` of bidegree ``(r, r)``, and ``d xi_j = c_j``, ``d eta = d v = 0``.
The de Rham model is ``Lambda[u_1..u_{m-n}] (x) R`` with ``du_j`` the
relation classes ``sum_k gamma[j][k] v_k``.

Signs follow the graded Leibniz rule with generators ordered
``xi_1 < ... < xi_l < eta_1 < ... < eta_l``: removing the generator in
0-based position ``t`` of the exterior word contributes ``(-1)^t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from . import linalg
from .complex_structure import chern_matrix, relation_matrix
from .ring import GradedRing, RingClass


def binom(x: int, p: int) -> int:
    """Binomial coefficient that vanishes whenever ``x < p`` or ``x < 0``."""
    if p < 0 or x < 0 or x < p:
        return 0
    return comb(x, p)


class _ExteriorKoszul:
    """``Lambda[x_1..x_g] (x) R`` with ``d x_j = classes[j]`` (degree one ring classes).

    Graded by ``(s, r)``: exterior word length and ring degree. The
    differential maps ``(s, r)`` to ``(s - 1, r + 1)``.
    """

    def __init__(self, ring: GradedRing, classes: Sequence[RingClass]):
        self.ring = ring
        self.classes = list(classes)
        self.g = len(self.classes)
        n = ring.n
        # products[j][r][i] = coordinates of classes[j] * basis_i(degree r)
        self.products = [[[ring.multiply(c, ring.basis_class(r, i)).coords
                           for i in range(ring.dim(r))] for r in range(n + 1)]
                         for c in self.classes]

    def words(self, s: int) -> list[tuple[int, ...]]:
        return list(combinations(range(self.g), s)) if 0 <= s <= self.g else []

    def terms(self, word: tuple[int, ...], r: int, i: int):
        """Yield ``(shorter_word, sign, coords in degree r+1)`` for ``d(x_word * b_i)``."""
        if r + 1 > self.ring.n:
            return
        for t, j in enumerate(word):
            coords = self.products[j][r][i]
            if any(coords):
                yield word[:t] + word[t + 1:], (-1) ** t, coords

    def basis(self, s: int, r: int) -> list[tuple[tuple[int, ...], int]]:
        return [(w, i) for w in self.words(s) for i in range(self.ring.dim(r))]

    def differential(self, s: int, r: int) -> list[list]:
        src = self.basis(s, r)
        tgt = self.basis(s - 1, r + 1)
        index = {b: k for k, b in enumerate(tgt)}
        mat = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
        for col, (w, i) in enumerate(src):
            for w2, sign, coords in self.terms(w, r, i):
                for t, x in enumerate(coords):
                    if x:
                        row = index[(w2, t)]
                        mat[row][col] = mat[row][col] + sign * x
        return mat

    def cohomology(self) -> dict[tuple[int, int], int]:
        n = self.ring.n
        ranks = {}
        for s in range(self.g + 1):
            for r in range(n + 1):
                mat = self.differential(s, r)
                ranks[(s, r)] = linalg.rank(mat) if mat and mat[0] else 0
        out = {}
        for s in range(self.g + 1):
            for r in range(n + 1):
                dim = comb(self.g, s) * self.ring.dim(r)
                out[(s, r)] = dim - ranks[(s, r)] - ranks.get((s + 1, r - 1), 0)
        return out


@dataclass
class HodgeTable:
    """``table[p][q] = h^{p,q}`` for ``0 <= p, q <= dimension``."""

    dimension: int
    table: list[list[int]]

    def __call__(self, p: int, q: int) -> int:
        if 0 <= p <= self.dimension and 0 <= q <= self.dimension:
            return self.table[p][q]
        return 0

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {(p, q): v for p, row in enumerate(self.table) for q, v in enumerate(row) if v}

    def euler(self) -> int:
        return sum((-1) ** (p + q) * v for (p, q), v in self.nonzero().items())

    def totals(self) -> list[int]:
        """``sum_{p+q=k} h^{p,q}`` for ``k = 0..2*dimension``."""
        out = [0] * (2 * self.dimension + 1)
        for (p, q), v in self.nonzero().items():
            out[p + q] += v
        return out

    def render(self) -> str:
        width = max(len(str(v)) for row in self.table for v in row)
        width = max(width, len(str(self.dimension)))
        head = "p\\q " + " ".join(str(q).rjust(width) for q in range(self.dimension + 1))
        lines = [head]
        for p, row in enumerate(self.table):
            lines.append(f"{p:>3} " + " ".join(str(v).rjust(width) for v in row))
        return "\n".join(lines)


@dataclass
class BettiTable:
    numbers: list[int]

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.numbers))

    def __getitem__(self, k: int) -> int:
        return self.numbers[k] if 0 <= k < len(self.numbers) else 0


class DolbeaultModel:
    """The bigraded model for one choice of Chern matrix."""

    def __init__(self, ring: GradedRing, chern_rows: Sequence[Sequence]):
        self.ring = ring
        self.ell = len(chern_rows)
        self.chern_rows = [list(r) for r in chern_rows]
        self.chern = [ring.linear_class(row) for row in self.chern_rows]
        self._xi = _ExteriorKoszul(ring, self.chern)

    @property
    def dimension(self) -> int:
        """Complex dimension ``m - l`` of the manifold."""
        return self.ring.m - self.ell

    def basis(self, p: int, q: int) -> list[tuple]:
        """Triples ``(S, T, r, i)`` spanning bidegree ``(p, q)``."""
        out = []
        ell = self.ell
        for r in range(self.ring.n + 1):
            a, b = p - r, q - r
            if not (0 <= a <= ell and 0 <= b <= ell):
                continue
            for S in combinations(range(ell), a):
                for T in combinations(range(ell), b):
                    for i in range(self.ring.dim(r)):
                        out.append((S, T, r, i))
        return out

    def differential(self, p: int, q: int) -> list[list]:
        """Matrix of ``d: A^{p,q} -> A^{p,q+1}`` (rows index the target basis)."""
        src = self.basis(p, q)
        tgt = self.basis(p, q + 1)
        index = {b: k for k, b in enumerate(tgt)}
        mat = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
        for col, (S, T, r, i) in enumerate(src):
            for S2, sign, coords in self._xi.terms(S, r, i):
                for t, x in enumerate(coords):
                    if x:
                        row = index[(S2, T, r + 1, t)]
                        mat[row][col] = mat[row][col] + sign * x
        return mat

    def chern_kernel_dimension(self) -> int:
        """``l`` minus the rank of the Chern classes in the degree-one ring basis."""
        coeffs = [list(c.coords) for c in self.chern]
        if not coeffs or not coeffs[0]:
            return self.ell
        return self.ell - linalg.rank(coeffs)

    def xi_cohomology(self) -> dict[tuple[int, int], int]:
        """Cohomology of the eta-free part, keyed by bidegree ``(p, q)``."""
        return {(s + r, r): v for (s, r), v in self._xi.cohomology().items()}

    def check_d_squared(self) -> bool:
        D = self.dimension
        for p in range(D + 1):
            for q in range(D - 1):
                first = self.differential(p, q)
                second = self.differential(p, q + 1)
                if not first or not second or not first[0]:
                    continue
                if not linalg.is_zero_matrix(linalg.matmul(second, first)):
                    return False
        return True


def build_dolbeault_model(ring: GradedRing, chern_rows: Sequence[Sequence]) -> DolbeaultModel:
    return DolbeaultModel(ring, chern_rows)


def hodge_numbers(model: DolbeaultModel, factorize: bool = True) -> HodgeTable:
    """Hodge numbers ``dim A^{p,q} - rank d^{p,q} - rank d^{p,q-1}``.

    With ``factorize`` the eta factor is split off (``d`` ignores it) and
    ``h^{p,q} = sum_t C(l, t) kappa^{p,q-t}``; otherwise every bidegree of
    the full model is row reduced.
    """
    D = model.dimension
    table = [[0] * (D + 1) for _ in range(D + 1)]
    if factorize:
        kappa = model.xi_cohomology()
        for p in range(D + 1):
            for q in range(D + 1):
                table[p][q] = sum(comb(model.ell, t) * kappa.get((p, q - t), 0)
                                  for t in range(model.ell + 1))
        return HodgeTable(D, table)
    ranks = {}
    for p in range(D + 1):
        for q in range(D + 1):
            mat = model.differential(p, q)
            ranks[(p, q)] = linalg.rank(mat) if mat and mat[0] else 0
    for p in range(D + 1):
        for q in range(D + 1):
            table[p][q] = len(model.basis(p, q)) - ranks[(p, q)] - ranks.get((p, q - 1), 0)
    return HodgeTable(D, table)


def de_rham_betti(ring: GradedRing, gamma: Sequence[Sequence]) -> BettiTable:
    """Betti numbers from ``Lambda[u_1..u_g] (x) R`` with ``deg u = 1``, ``deg v = 2``."""
    classes = [ring.linear_class(row) for row in gamma]
    koszul = _ExteriorKoszul(ring, classes)
    top = ring.m + ring.n
    numbers = [0] * (top + 1)
    for (s, r), v in koszul.cohomology().items():
        if v:
            numbers[s + 2 * r] += v
    return BettiTable(numbers)


# ---------------------------------------------------------------------------
# Consistency checks

@dataclass
class CheckReport:
    """Named boolean checks with human-readable details for failures."""

    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and bool(ok)
        if not ok and detail:
            self.details.setdefault(name, detail)

    def merge(self, other: "CheckReport", prefix: str = "") -> None:
        for name, ok in other.checks.items():
            self.record(prefix + name, ok, other.details.get(name, ""))

    def as_dict(self) -> dict:
        return {"passed": self.passed, "checks": dict(self.checks), "details": dict(self.details)}


def check_hodge_bounds(table: HodgeTable, ell: int, ghosts: int, h_vector: Sequence[int],
                       chern_kernel: Optional[int] = None) -> CheckReport:
    """Bounds on ``h^{p,0}``, ``h^{0,q}``, ``h^{1,q}``, ``h^{2,1}`` and on the kernel of ``c``."""
    k = ghosts
    rep = CheckReport()
    D = table.dimension
    h10, h20 = table(1, 0), table(2, 0)
    for p in range(D + 1):
        lo, hi = binom(k - ell, p), binom(k // 2, p)
        rep.record("holomorphic_forms", lo <= table(p, 0) <= hi,
                   f"h^{p},0 = {table(p, 0)} outside [{lo}, {hi}]")
    for q in range(D + 1):
        rep.record("antiholomorphic_forms", table(0, q) == binom(ell, q),
                   f"h^0,{q} = {table(0, q)} != C({ell},{q})")
    for q in range(1, D + 1):
        expected = (ell - k) * binom(ell, q - 1) + h10 * binom(ell + 1, q)
        rep.record("first_row", table(1, q) == expected,
                   f"h^1,{q} = {table(1, q)} but formula gives {expected}")
    h2 = h_vector[2] if len(h_vector) > 2 else 0
    base = ell * (3 * ell + 1) // 2 - ell * k + (ell + 1) * h20
    rep.record("h21_bounds", base - h2 <= table(2, 1) <= base,
               f"h^2,1 = {table(2, 1)} outside [{base - h2}, {base}]")
    if chern_kernel is not None:
        rep.record("chern_kernel", k - ell <= chern_kernel <= k // 2,
                   f"dim ker c = {chern_kernel} outside [{k - ell}, {k // 2}]")
        rep.record("chern_kernel_is_h10", chern_kernel == h10,
                   f"dim ker c = {chern_kernel} but h^1,0 = {h10}")
    return rep


def frolicher_euler_check(hodge: HodgeTable, betti: BettiTable) -> CheckReport:
    rep = CheckReport()
    totals = hodge.totals()
    for k in range(max(len(totals), len(betti.numbers))):
        tk = totals[k] if k < len(totals) else 0
        rep.record("betti_below_hodge", betti[k] <= tk, f"b_{k} = {betti[k]} > {tk}")
    rep.record("euler_equal", betti.euler() == hodge.euler(),
               f"Betti Euler {betti.euler()} != Hodge Euler {hodge.euler()}")
    return rep


def structural_checks(table: HodgeTable, ell: int, is_torus: bool) -> CheckReport:
    """Serre duality, ``h^{0,0} = 1``, vanishing Euler number and the non-Kähler inequality."""
    rep = CheckReport()
    D = table.dimension
    for p in range(D + 1):
        for q in range(D + 1):
            rep.record("serre_duality", table(p, q) == table(D - p, D - q),
                       f"h^{p},{q} != h^{D - p},{D - q}")
    rep.record("h00", table(0, 0) == 1)
    if ell >= 1:
        rep.record("euler_zero", table.euler() == 0, f"Euler number {table.euler()}")
    if not is_torus:
        rep.record("not_kahler", table(1, 0) < table(0, 1),
                   f"h^1,0 = {table(1, 0)} >= h^0,1 = {table(0, 1)}")
    else:
        rep.record("torus_h10", table(1, 0) == ell == table(0, 1))
    return rep


def chern_matrix_for(ring: GradedRing, psi: Sequence[Sequence]) -> list[list]:
    return chern_matrix(ring.fan, relation_matrix(ring.fan), psi)
