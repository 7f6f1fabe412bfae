import functools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import HODGE_FANS, load_fan
from momentangle import linalg
from momentangle.dolbeault import (BettiTable, DolbeaultModel, HodgeTable, binom,
                                   check_hodge_bounds, frolicher_euler_check,
                                   hodge_numbers, structural_checks)
from momentangle.linalg import Gaussian
from momentangle.pipeline import run_hodge
from oracles import calabi_eckmann_hodge, convolve, hopf_hodge, sphere_product_betti


@functools.lru_cache(maxsize=None)
def run(name, pairing=None):
    return run_hodge(load_fan(name), pairing=list(pairing) if pairing else None)


def test_binomial_convention():
    assert binom(3, 2) == 3 and binom(-1, 0) == 0 and binom(1, 2) == 0 and binom(0, 0) == 1


def test_hopf_model_differential():
    r = run("hopf1")
    assert r.model.chern[0] == r.ring.variable_class(1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hopf_hodge(n):
    assert run(f"hopf{n}").hodge.nonzero() == hopf_hodge(n)


@pytest.mark.parametrize("name,p,q", [("ce11", 1, 1), ("ce12", 1, 2), ("ce22", 2, 2)])
def test_calabi_eckmann_hodge(name, p, q):
    assert run(name).hodge.nonzero() == calabi_eckmann_hodge(p, q)


def test_ce12_table_literal():
    assert run("ce12").hodge.nonzero() == {(0, 0): 1, (1, 1): 1, (0, 1): 1, (1, 2): 1,
                                           (3, 2): 1, (4, 3): 1, (3, 3): 1, (4, 4): 1}


def test_product_pairings_follow_kunneth():
    a = run("d1d1d2d2", ((0, 1), (2, 3))).hodge
    b = run("d1d1d2d2", ((0, 2), (1, 3))).hodge
    assert a.nonzero() == convolve(calabi_eckmann_hodge(1, 1), calabi_eckmann_hodge(2, 2))
    assert b.nonzero() == convolve(calabi_eckmann_hodge(1, 2), calabi_eckmann_hodge(1, 2))
    assert (a(2, 1), b(2, 1)) == (1, 0)


def test_sign_rule_on_two_xi_word():
    r = run("d1d1d2d2", ((0, 1), (2, 3)))
    model = r.model
    src = model.basis(2, 0)
    tgt = model.basis(2, 1)
    d = model.differential(2, 0)
    col = src.index(((0, 1), (), 0, 0))
    image = {tgt[i]: d[i][col] for i in range(len(tgt)) if d[i][col]}
    c1, c2 = model.chern
    expected = {}
    for t, x in enumerate(c1.coords):
        if x:
            expected[((1,), (), 1, t)] = x
    for t, x in enumerate(c2.coords):
        if x:
            expected[((0,), (), 1, t)] = expected.get(((0,), (), 1, t), 0) - x
    assert image == {k: v for k, v in expected.items() if v}


@pytest.mark.parametrize("name", HODGE_FANS)
def test_d_squared_and_factorization_oracle(name):
    r = run(name)
    assert r.model.check_d_squared()
    assert hodge_numbers(r.model, factorize=False).table == r.hodge.table


@pytest.mark.parametrize("name", HODGE_FANS)
def test_all_checks_pass(name):
    r = run(name)
    assert r.checks.passed, r.checks.details


def test_hopf_betti():
    assert run("hopf1").betti.numbers == [1, 1, 0, 1, 1]
    for n in (2, 3):
        assert run(f"hopf{n}").betti.numbers == sphere_product_betti(1, 2 * n + 1)


def test_ce_and_product_betti():
    assert run("ce12").betti.numbers == [1, 0, 0, 1, 0, 1, 0, 0, 1]
    assert run("ce12").betti.numbers == sphere_product_betti(3, 5)
    assert run("ce22").betti.numbers == sphere_product_betti(5, 5)
    assert run("d1d1d2d2").betti.numbers == sphere_product_betti(3, 3, 5, 5)


@pytest.mark.parametrize("ell", [1, 2])
def test_torus_betti_and_forms(ell):
    r = run(f"torus{2 * ell}")
    assert r.betti.numbers == [comb(2 * ell, k) for k in range(2 * ell + 1)]
    assert r.hodge(1, 0) == ell == r.hodge(0, 1)
    assert r.model.chern_kernel_dimension() == ell


def test_frolicher_examples():
    h = run("hopf1")
    assert h.hodge.totals() == h.betti.numbers
    ce = run("ce12")
    strict = [k for k, (t, b) in enumerate(zip(ce.hodge.totals(), ce.betti.numbers)) if t > b]
    assert strict == [1, 2, 6, 7]
    assert frolicher_euler_check(ce.hodge, ce.betti).passed


@pytest.mark.parametrize("name", ["hopf1", "hopf2", "ce12", "cp2_ghost"])
def test_few_ghosts_means_no_holomorphic_forms(name):
    r = run(name)
    assert r.ghosts <= 1
    assert r.model.chern_kernel_dimension() == 0
    assert all(r.hodge(p, 0) == 0 for p in range(1, r.hodge.dimension + 1))


def test_hopf_first_row_formula():
    r = run("hopf1")
    assert all(r.hodge(1, q) == 0 for q in range(1, 3))


def test_bounds_detect_a_doctored_table():
    r = run("ce12")
    table = [row[:] for row in r.hodge.table]
    table[2][1] += 5
    rep = check_hodge_bounds(HodgeTable(r.hodge.dimension, table), 1, 0, [1, 2, 2, 1], 0)
    assert not rep.passed and not rep.checks["h21_bounds"]
    table = [row[:] for row in r.hodge.table]
    table[0][1] = 0
    rep = structural_checks(HodgeTable(r.hodge.dimension, table), 1, is_torus=False)
    assert not rep.checks["serre_duality"] and not rep.checks["not_kahler"]


def test_frolicher_detects_excess_betti():
    r = run("hopf1")
    rep = frolicher_euler_check(r.hodge, BettiTable([1, 2, 0, 1, 1]))
    assert not rep.checks["betti_below_hodge"] and not rep.checks["euler_equal"]


gaussian_small = st.builds(Gaussian, st.integers(-2, 2), st.integers(-2, 2))


@pytest.mark.parametrize("name", ["hopf2", "ce12", "cp1_three_ghosts", "hirzebruch1", "d1d1d2d2"])
@settings(max_examples=15)
@given(data=st.data())
def test_hodge_invariant_under_chern_matrix_moves(name, data):
    r = run(name)
    ell, n = r.ell, r.fan.n
    U = data.draw(st.lists(st.lists(gaussian_small, min_size=ell, max_size=ell), min_size=ell, max_size=ell))
    if not linalg.rank(U) == ell:
        U = [[Gaussian(int(i == j)) for j in range(ell)] for i in range(ell)]
    W = data.draw(st.lists(st.lists(gaussian_small, min_size=n, max_size=n), min_size=ell, max_size=ell))
    M = linalg.matmul(U, r.chern)
    if n:
        shift = linalg.matmul(W, r.fan.lam)
        M = [[a + b for a, b in zip(row, srow)] for row, srow in zip(M, shift)]
    table = hodge_numbers(DolbeaultModel(r.ring, M)).table
    assert table == r.hodge.table


@pytest.mark.parametrize("name", ["hopf1", "ce11", "cp2_ghost", "cp1_three_ghosts", "torus4"])
def test_random_psi_choices_respect_bounds(name):
    from momentangle.pipeline import random_psi_runs
    for r in random_psi_runs(load_fan(name), 6, seed=7, with_betti=True):
        assert r.checks.passed, r.checks.details
