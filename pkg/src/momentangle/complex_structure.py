"""Matrices that fix a complex structure on the moment-angle manifold.

* ``psi``: an ``m x l`` Gaussian matrix whose real and imaginary column parts
  span the kernel of the generator map (``m - n = 2l``).
* the Chern matrix ``M``: ``l x m`` with ``M psi = 0`` and ``gamma M^t`` of
  rank ``l``; its rows give the degree-one classes ``sum_k M[j][k] v_k``.
* partial-quotient data ``(N, omega)`` and the Cox group of a rational fan.

All groups are represented only by these matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import linalg
from .errors import (BadPairing, InternalInvariantViolation, MalformedFan,
                     NonPrimitiveGenerator, OddCodimension)
from .fan import Fan
from .linalg import Gaussian


def half_codimension(fan: Fan) -> int:
    d = fan.m - fan.n
    if d % 2:
        raise OddCodimension(f"m - n = {d} is odd; add a ghost vertex first")
    return d // 2


def require_zero_ghosts(fan: Fan) -> None:
    for g in sorted(fan.ghosts):
        if any(fan.generators[g]):
            raise MalformedFan(f"ghost vertex {g + 1} must have a zero generator row")


def kernel_basis(fan: Fan) -> list[list[Fraction]]:
    """Deterministic rational basis of the kernel of the generator map R^m -> R^n."""
    return linalg.null_space(fan.lam, "right", cols=fan.m)


def relation_matrix(fan: Fan) -> list[list[Fraction]]:
    """Rows spanning the linear relations among the generators, ``(m - n) x m``."""
    rows = [list(r) for r in fan.generators]
    return linalg.null_space(rows, "left")


def default_pairing(ell: int) -> list[tuple[int, int]]:
    return [(2 * j, 2 * j + 1) for j in range(ell)]


def default_psi(fan: Fan, pairing: Optional[Sequence[tuple[int, int]]] = None) -> list[list[Gaussian]]:
    """Column ``j`` is ``beta_p + i*beta_q`` for the ``j``-th pair ``(p, q)`` of kernel basis vectors.

    Pair indices are 0-based positions in :func:`kernel_basis`.
    """
    ell = half_codimension(fan)
    require_zero_ghosts(fan)
    pairing = default_pairing(ell) if pairing is None else [tuple(p) for p in pairing]
    used = [i for pair in pairing for i in pair]
    if len(pairing) != ell or any(len(p) != 2 for p in pairing):
        raise BadPairing(f"expected {ell} pairs, got {len(pairing)}")
    if len(set(used)) != len(used):
        raise BadPairing("pairing repeats a kernel basis index")
    if any(not 0 <= i < 2 * ell for i in used):
        raise BadPairing(f"pairing indices must lie in 1..{2 * ell}")
    basis = kernel_basis(fan)
    return [[Gaussian(basis[p][k], basis[q][k]) for p, q in pairing] for k in range(fan.m)]


def random_pairing(ell: int, rng: random.Random) -> list[tuple[int, int]]:
    idx = list(range(2 * ell))
    rng.shuffle(idx)
    return [(idx[2 * j], idx[2 * j + 1]) for j in range(ell)]


def random_psi(fan: Fan, rng: random.Random, bound: int = 3) -> list[list[Gaussian]]:
    """A valid psi whose columns are random Gaussian-integer combinations of the kernel basis."""
    ell = half_codimension(fan)
    basis = kernel_basis(fan)
    while True:
        weights = [[Gaussian(rng.randint(-bound, bound), rng.randint(-bound, bound))
                    for _ in range(ell)] for _ in range(2 * ell)]
        psi = [[sum((weights[t][j] * basis[t][k] for t in range(2 * ell)), Gaussian())
                for j in range(ell)] for k in range(fan.m)]
        if validate_psi(fan, psi).valid:
            return psi


@dataclass
class PsiReport:
    valid: bool
    monomorphic: bool
    in_kernel: bool
    diagnostics: list[str] = field(default_factory=list)


def _realified(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """The real ``rows x 2cols`` matrix ``[Re m | -Im m]``."""
    re = linalg.real_part(m)
    im = linalg.imag_part(m)
    return [r + [-x for x in i] for r, i in zip(re, im)]


def validate_psi(fan: Fan, psi: Sequence[Sequence]) -> PsiReport:
    diag = []
    ell = (fan.m - fan.n) // 2
    if len(psi) != fan.m or any(len(row) != ell for row in psi) or (fan.m - fan.n) % 2:
        return PsiReport(False, False, False,
                         [f"psi must be {fan.m} x {ell} with m - n even"])
    mono = linalg.rank(_realified(psi)) == 2 * ell if fan.m else True
    if not mono:
        diag.append("real part of psi is not injective")
    lam = fan.lam
    in_kernel = (not lam or (linalg.is_zero_matrix(linalg.matmul(lam, linalg.real_part(psi), fan.m))
                             and linalg.is_zero_matrix(linalg.matmul(lam, linalg.imag_part(psi), fan.m))))
    if not in_kernel:
        diag.append("generator map does not annihilate psi")
    return PsiReport(mono and in_kernel, mono, in_kernel, diag)


def chern_matrix(fan: Fan, gamma: Sequence[Sequence], psi: Sequence[Sequence]) -> list[list[Gaussian]]:
    """Greedy ``l x m`` matrix ``M`` with ``M psi = 0`` and ``rank(gamma M^t) = l``.

    Candidate rows come from the deterministic left null space of ``psi``;
    a candidate is kept iff it raises the rank of ``gamma M^t``.
    """
    ell = len(psi[0]) if psi and psi[0] else (fan.m - fan.n) // 2
    if ell == 0:
        return []
    candidates = linalg.null_space([list(r) for r in psi], "left")
    chosen: list[list] = []
    images: list[list] = []
    for phi in candidates:
        img = linalg.matvec(gamma, phi)
        if linalg.rank(images + [img]) == len(images) + 1:
            chosen.append(phi)
            images.append(img)
            if len(chosen) == ell:
                break
    if len(chosen) < ell:
        raise InternalInvariantViolation(
            f"only {len(chosen)} of {ell} Chern rows found; psi is probably invalid")
    if not linalg.is_zero_matrix(linalg.matmul(chosen, psi)):
        raise InternalInvariantViolation("M psi is not zero")
    return chosen


@dataclass
class PartialQuotientReport:
    valid: bool
    primitive: bool
    n_in_kernel: bool
    omega_in_kernel: bool
    monomorphic: bool
    diagnostics: list[str] = field(default_factory=list)


def validate_partial_quotient(fan: Fan, N: Sequence[Sequence[int]], omega: Sequence[Sequence]) -> PartialQuotientReport:
    """Check a sublattice ``N`` (rows) and a map ``omega`` against the generator map."""
    diag = []
    k = len(N)
    rest = fan.m - fan.n - k
    if rest < 0 or rest % 2:
        return PartialQuotientReport(False, False, False, False, False,
                                     [f"m - n - k = {rest} must be even and nonnegative"])
    ell = rest // 2
    if len(omega) != fan.m or any(len(r) != ell for r in omega):
        return PartialQuotientReport(False, False, False, False, False,
                                     [f"omega must be {fan.m} x {ell}"])
    if any(len(r) != fan.m for r in N):
        return PartialQuotientReport(False, False, False, False, False,
                                     [f"rows of N must have {fan.m} entries"])
    if k:
        factors, _, _ = linalg.smith_normal_form(N)
        primitive = len(factors) == k and all(f == 1 for f in factors)
    else:
        primitive = True
    if not primitive:
        diag.append("N is not a primitive sublattice of rank k")
    lam = fan.lam
    nt = linalg.transpose([[Fraction(x) for x in r] for r in N], cols=fan.m)
    n_in = not lam or not k or linalg.is_zero_matrix(linalg.matmul(lam, nt, fan.m))
    if not n_in:
        diag.append("generator map does not annihilate N")
    om_in = not lam or not ell or (
        linalg.is_zero_matrix(linalg.matmul(lam, linalg.real_part(omega), fan.m))
        and linalg.is_zero_matrix(linalg.matmul(lam, linalg.imag_part(omega), fan.m)))
    if not om_in:
        diag.append("generator map does not annihilate omega")
    block = [a + b for a, b in zip(nt, _realified(omega))]
    mono = (k + 2 * ell == 0) or linalg.rank(block) == k + 2 * ell
    if not mono:
        diag.append("N together with the real part of omega is not injective")
    return PartialQuotientReport(primitive and n_in and om_in and mono, primitive, n_in, om_in, mono, diag)


@dataclass
class CoxGroupStructure:
    torus_rank: int
    finite_part: list[int]


def cox_group_structure(fan: Fan) -> CoxGroupStructure:
    """Rank and torsion of the kernel of the exponentiated generator map.

    The torsion is that of ``Z^m / image(A)`` where ``A`` is the ``m x n``
    generator matrix, read off from its Smith invariant factors.
    """
    if not fan.is_integral:
        raise NonPrimitiveGenerator("generators must be integral")
    rows = fan.integer_generators()
    for i, row in enumerate(rows):
        g = 0
        for x in row:
            g = gcd(g, x)
        if any(row) and g != 1:
            raise NonPrimitiveGenerator(f"generator {i + 1} = {row} is not primitive")
    factors, _, _ = linalg.smith_normal_form(rows) if fan.n else ([], None, None)
    return CoxGroupStructure(fan.m - fan.n, [f for f in factors if f > 1])
