"""End-to-end computations shared by the CLI and the test suites."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg
from .complex_structure import (chern_matrix, default_psi, half_codimension, random_pairing,
                                random_psi, relation_matrix, require_zero_ghosts, validate_psi)
from .dolbeault import (BettiTable, CheckReport, DolbeaultModel, HodgeTable, check_hodge_bounds,
                        de_rham_betti, frolicher_euler_check, hodge_numbers, structural_checks)
from .errors import InvalidPsi, MalformedFan, NotRegular
from .fan import Fan, FanReport, f_h_vectors, validate_fan
from .ring import GradedRing, face_ring_quotient

SINGULAR_NOTE = ("singular fan: the Dolbeault model is only proven for nonsingular fans; "
                 "these numbers are outside that setting")


def gate_fan(fan: Fan, allow_singular: bool = False, assume_fan: bool = False) -> tuple[FanReport, list[str]]:
    """Validate ``fan`` for the complex-structure pipeline; returns the report and notes.

    ``assume_fan`` skips the completeness test (the caller vouches for it).
    """
    report = validate_fan(fan)
    notes: list[str] = []
    if not report.is_simplicial:
        raise MalformedFan("; ".join(report.diagnostics) or "fan is not simplicial")
    if not report.is_complete:
        if not assume_fan:
            raise MalformedFan("; ".join(report.diagnostics) or "fan is not complete")
        notes.append("completeness assumed, not verified")
    if not report.is_regular:
        if not allow_singular:
            raise NotRegular("; ".join(report.diagnostics) or "fan is not regular")
        notes.append(SINGULAR_NOTE)
    return report, notes


@dataclass
class HodgeRun:
    fan: Fan
    ring: GradedRing
    gamma: list
    psi: list
    chern: list
    model: DolbeaultModel
    hodge: HodgeTable
    betti: Optional[BettiTable]
    checks: CheckReport
    notes: list[str] = field(default_factory=list)

    @property
    def ell(self) -> int:
        return self.model.ell

    @property
    def ghosts(self) -> int:
        return len(self.fan.ghosts)


def run_hodge(fan: Fan, psi: Optional[Sequence[Sequence]] = None,
              pairing: Optional[Sequence[tuple[int, int]]] = None,
              allow_singular: bool = False, assume_fan: bool = False,
              factorize: bool = True, with_betti: bool = True,
              ring: Optional[GradedRing] = None, gated: bool = False) -> HodgeRun:
    """Hodge (and optionally Betti) numbers plus every consistency check.

    ``pairing`` uses 0-based kernel-basis indices. ``gated`` skips fan
    validation when the caller already did it.
    """
    notes: list[str] = []
    if not gated:
        _, notes = gate_fan(fan, allow_singular, assume_fan)
    require_zero_ghosts(fan)
    half_codimension(fan)
    ring = ring or face_ring_quotient(fan)
    gamma = relation_matrix(fan)
    if psi is None:
        psi = default_psi(fan, pairing)
    else:
        rep = validate_psi(fan, psi)
        if not rep.valid:
            raise InvalidPsi("; ".join(rep.diagnostics))
    M = chern_matrix(fan, gamma, psi)
    model = DolbeaultModel(ring, M)
    hodge = hodge_numbers(model, factorize=factorize)
    betti = de_rham_betti(ring, gamma) if with_betti else None
    _, h = f_h_vectors(fan.complex, fan.n)
    checks = check_hodge_bounds(hodge, model.ell, len(fan.ghosts), h, model.chern_kernel_dimension())
    checks.merge(structural_checks(hodge, model.ell, is_torus=fan.n == 0))
    if betti is not None:
        checks.merge(frolicher_euler_check(hodge, betti))
    return HodgeRun(fan, ring, gamma, psi, M, model, hodge, betti, checks, notes)


def random_psi_runs(fan: Fan, count: int, seed: int, ring: Optional[GradedRing] = None,
                    with_betti: bool = False) -> list[HodgeRun]:
    """Runs for ``count`` seeded random valid psi matrices (both random pairings and random combinations)."""
    rng = random.Random(seed)
    ring = ring or face_ring_quotient(fan)
    ell = half_codimension(fan)
    out = []
    for t in range(count):
        if t % 2 == 0 and ell:
            psi = default_psi(fan, random_pairing(ell, rng))
        else:
            psi = random_psi(fan, rng)
        out.append(run_hodge(fan, psi=psi, ring=ring, gated=True, with_betti=with_betti))
    return out


def poincare_pairing_ok(ring: GradedRing) -> bool:
    """Multiplication ``R_d x R_{n-d} -> R_n`` is nondegenerate in every degree."""
    n = ring.n
    if ring.dim(n) != 1:
        return False
    for d in range(n + 1):
        gram = [[ring.basis_product(d, i, n - d, j)[0] for j in range(ring.dim(n - d))]
                for i in range(ring.dim(d))]
        if ring.dim(d) != ring.dim(n - d):
            return False
        if gram and linalg.rank(gram) != len(gram):
            return False
    return True
