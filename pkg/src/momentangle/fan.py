"""Simplicial complexes with ghost vertices and simplicial fans.

Vertices are 0-based indices into the generator matrix. A ghost vertex is an
index that belongs to no simplex; its generator row is normally zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import linalg
from .errors import DimensionMismatch, MalformedFan


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on ``range(m)`` given by its maximal simplices.

    The empty simplex is always a face; a complex with no listed simplices
    has exactly the empty face and every vertex is a ghost.
    """

    m: int
    maximal: tuple[frozenset, ...]

    @classmethod
    def from_simplices(cls, m: int, simplices: Iterable[Iterable[int]]) -> "SimplicialComplex":
        sets = {frozenset(s) for s in simplices}
        for s in sets:
            if any(not 0 <= v < m for v in s):
                raise MalformedFan(f"simplex {sorted(s)} has a vertex outside 0..{m - 1}")
        maximal = [s for s in sets if not any(s < t for t in sets)]
        if not maximal:
            maximal = [frozenset()]
        return cls(m, tuple(sorted(maximal, key=lambda s: sorted(s))))

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset().union(*self.maximal)

    @cached_property
    def ghosts(self) -> frozenset:
        return frozenset(range(self.m)) - self.vertices

    def is_face(self, simplex: Iterable[int]) -> bool:
        s = frozenset(simplex)
        return any(s <= t for t in self.maximal)

    @cached_property
    def faces(self) -> tuple[frozenset, ...]:
        """All faces including the empty one, sorted by size then lexicographically."""
        out = set()
        for top in self.maximal:
            items = sorted(top)
            for k in range(len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, k))
        return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))

    @cached_property
    def dimension(self) -> int:
        return max(len(s) for s in self.maximal) - 1

    def to_one_based(self) -> list[list[int]]:
        return [[v + 1 for v in sorted(s)] for s in self.maximal]


@dataclass(frozen=True)
class Fan:
    """Simplicial fan: generator rows ``a_i`` plus cones as index sets.

    ``generators`` has ``m`` rows of length ``n`` (rational entries).
    ``cones`` lists the maximal cones as 0-based index sets.
    """

    n: int
    generators: tuple[tuple[Fraction, ...], ...]
    cones: tuple[frozenset, ...] = field(default=())

    @classmethod
    def from_data(cls, n: int, generators: Sequence[Sequence], cones: Iterable[Iterable[int]]) -> "Fan":
        rows = tuple(tuple(Fraction(x) for x in row) for row in generators)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise MalformedFan(f"generator {i + 1} has {len(row)} coordinates, expected {n}")
        return cls(n, rows, tuple(frozenset(c) for c in cones))

    @property
    def m(self) -> int:
        return len(self.generators)

    @cached_property
    def complex(self) -> SimplicialComplex:
        return build_complex_from_fan(self)

    @property
    def ghosts(self) -> frozenset:
        return self.complex.ghosts

    @cached_property
    def lam(self) -> list[list[Fraction]]:
        """The n x m matrix whose columns are the generators."""
        return linalg.transpose([list(r) for r in self.generators], cols=self.n)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.generators for x in row)

    def integer_generators(self) -> list[list[int]]:
        if not self.is_integral:
            raise MalformedFan("generators are not integral")
        return [[int(x) for x in row] for row in self.generators]

    def generator_rows(self, simplex: Iterable[int]) -> list[list[Fraction]]:
        return [list(self.generators[i]) for i in sorted(simplex)]

    def with_cones(self, cones: Iterable[Iterable[int]]) -> "Fan":
        return Fan(self.n, self.generators, tuple(frozenset(c) for c in cones))

    def add_ghost(self) -> "Fan":
        """The same fan with one extra zero generator row appended."""
        zero = tuple(Fraction(0) for _ in range(self.n))
        return Fan(self.n, self.generators + (zero,), self.cones)


def build_complex_from_fan(fan: Fan) -> SimplicialComplex:
    """Underlying complex of ``fan``; raises MalformedFan on a dependent cone."""
    for cone in fan.cones:
        if any(not 0 <= i < fan.m for i in cone):
            raise MalformedFan(f"cone {sorted(i + 1 for i in cone)} refers to a missing generator")
        rows = fan.generator_rows(cone)
        if rows and linalg.rank(rows) < len(rows):
            raise MalformedFan(f"cone {sorted(i + 1 for i in cone)} has linearly dependent generators")
    return SimplicialComplex.from_simplices(fan.m, fan.cones)


@dataclass
class FanReport:
    is_simplicial: bool
    is_complete: bool
    is_regular: bool
    diagnostics: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "is_simplicial": self.is_simplicial,
            "is_complete": self.is_complete,
            "is_regular": self.is_regular,
            "diagnostics": list(self.diagnostics),
        }


def _one_based(s: Iterable[int]) -> list[int]:
    return [i + 1 for i in sorted(s)]


def validate_fan(fan: Fan, samples: int = 64, seed: int = 20120501) -> FanReport:
    """Check simpliciality, completeness and regularity; never raises.

    Completeness is decided combinatorially (every maximal cone is
    full-dimensional, every wall lies in exactly two maximal cones with the
    opposite generators strictly on opposite sides, the wall graph is
    connected) and cross-checked by locating ``samples`` pseudo-random
    rational points in the closed maximal cones.
    """
    diag: list[str] = []
    n = fan.n
    simplicial = True
    for cone in fan.cones:
        if any(i < 0 or i >= fan.m for i in cone):
            diag.append(f"cone {_one_based(cone)} refers to a missing generator")
            simplicial = False
            continue
        rows = fan.generator_rows(cone)
        if rows and linalg.rank(rows) < len(rows):
            diag.append(f"cone {_one_based(cone)} has dependent generators")
            simplicial = False
    if not simplicial:
        return FanReport(False, False, False, diag)

    K = fan.complex
    for g in sorted(K.ghosts):
        if any(fan.generators[g]):
            diag.append(f"ghost vertex {g + 1} has a nonzero generator")

    complete = _combinatorially_complete(fan, K, diag)
    sampled = _sample_cover(fan, K, samples, seed)
    if complete and not sampled:
        diag.append("internal error: wall criterion accepts the fan but sampled points are not "
                    "covered exactly once")
        complete = False
    elif sampled and not complete and all(len(s) == n for s in K.maximal):
        diag.append("internal error: sampled points are covered but the wall criterion fails")

    regular = fan.is_integral
    if not regular:
        diag.append("generators are not integral; regularity undefined")
    else:
        for s in K.maximal:
            rows = [[int(x) for x in row] for row in fan.generator_rows(s)]
            if not rows:
                continue
            if complete:
                det = linalg.integer_determinant(rows)
                if abs(det) != 1:
                    diag.append(f"cone {_one_based(s)} has determinant {det}")
                    regular = False
            else:
                factors, _, _ = linalg.smith_normal_form(rows)
                if any(f != 1 for f in factors):
                    diag.append(f"cone {_one_based(s)} is not part of a lattice basis")
                    regular = False
    return FanReport(True, complete, regular, diag)


def _combinatorially_complete(fan: Fan, K: SimplicialComplex, diag: list[str]) -> bool:
    n = fan.n
    ok = True
    for s in K.maximal:
        if len(s) != n:
            diag.append(f"maximal cone {_one_based(s)} has dimension {len(s)}, expected {n}")
            ok = False
    if not ok:
        return False
    if n == 0:
        return True
    walls: dict[frozenset, list[tuple[int, int]]] = {}
    for idx, s in enumerate(K.maximal):
        for j in s:
            walls.setdefault(s - {j}, []).append((idx, j))
    adjacency = {idx: set() for idx in range(len(K.maximal))}
    for wall, owners in sorted(walls.items(), key=lambda kv: sorted(kv[0])):
        if len(owners) != 2:
            diag.append(f"wall {_one_based(wall)} lies in {len(owners)} maximal cone(s), expected 2")
            ok = False
            continue
        rows = fan.generator_rows(wall)
        normal = linalg.null_space(rows, "right", cols=n)[0] if rows else [Fraction(1)]
        (c1, j1), (c2, j2) = owners
        s1 = sum(x * y for x, y in zip(normal, fan.generators[j1]))
        s2 = sum(x * y for x, y in zip(normal, fan.generators[j2]))
        if s1 * s2 >= 0:
            diag.append(f"cones across wall {_one_based(wall)} lie on the same side")
            ok = False
        adjacency[c1].add(c2)
        adjacency[c2].add(c1)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(K.maximal):
        diag.append("wall adjacency graph of maximal cones is disconnected")
        ok = False
    return ok


def _sample_cover(fan: Fan, K: SimplicialComplex, samples: int, seed: int) -> bool:
    n = fan.n
    if n == 0:
        return K.maximal == (frozenset(),)
    inverses = []
    for s in K.maximal:
        if len(s) != n:
            continue
        inverses.append(linalg.inverse(fan.generator_rows(s)))
    rng = random.Random(seed)
    for _ in range(samples):
        p = [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)) for _ in range(n)]
        if not any(p):
            continue
        closed = 0
        interior = 0
        for inv in inverses:
            # coordinates mu with p = sum mu_i a_i, i.e. mu = p B^{-1}
            mu = [sum(p[k] * inv[k][j] for k in range(n)) for j in range(n)]
            if all(x >= 0 for x in mu):
                closed += 1
                if all(x > 0 for x in mu):
                    interior += 1
        if closed == 0 or interior > 1 or (interior == 1 and closed > 1):
            return False
    return True


def minimal_non_faces(K: SimplicialComplex) -> list[frozenset]:
    """Inclusion-minimal non-faces, sorted by size then lexicographically.

    Every minimal non-face ``I`` equals ``F + {max I}`` for the face
    ``F = I - {max I}``, so extending faces by one larger vertex is exhaustive.
    """
    faces = set(K.faces)
    out = set()
    for f in faces:
        top = max(f) if f else -1
        for v in range(top + 1, K.m):
            cand = f | {v}
            if cand in faces:
                continue
            if all(cand - {u} in faces for u in cand):
                out.add(cand)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def f_h_vectors(K: SimplicialComplex, n: int) -> tuple[list[int], list[int]]:
    """f-vector ``(f_0, ..., f_{n-1})`` and h-vector ``(h_0, ..., h_n)``."""
    f = [0] * n
    for face in K.faces:
        size = len(face)
        if size > n:
            raise DimensionMismatch(f"face {_one_based(face)} has {size} vertices, more than n={n}")
        if size:
            f[size - 1] += 1
    fext = [1] + f  # fext[j] = f_{j-1}
    h = []
    for i in range(n + 1):
        h.append(sum((-1) ** (i - j) * comb(n - j, i - j) * fext[j] for j in range(i + 1)))
    return f, h
