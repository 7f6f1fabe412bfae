import random
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import HODGE_FANS, load_fan
from momentangle import linalg
from momentangle.complex_structure import (chern_matrix, cox_group_structure, default_psi,
                                           kernel_basis, random_psi, relation_matrix,
                                           validate_partial_quotient, validate_psi)
from momentangle.errors import BadPairing, NonPrimitiveGenerator, OddCodimension
from momentangle.fan import Fan
from momentangle.linalg import I, Gaussian

HOPF1 = Fan.from_data(1, [[0], [1], [-1]], [[1], [2]])


def col(psi, j=0):
    return [row[j] for row in psi]


def test_hopf_kernel_and_default_psi():
    assert kernel_basis(HOPF1) == [[1, 0, 0], [0, 1, 1]]
    assert col(default_psi(HOPF1)) == [1, I, I]


def test_torus_default_psi():
    assert col(default_psi(load_fan("torus2"))) == [1, I]


def test_product_block_pairings():
    fan = load_fan("d1d1d2d2")
    psi = default_psi(fan, [(0, 1), (2, 3)])
    assert col(psi, 0) == [1, 1, I, I, 0, 0, 0, 0, 0, 0]
    assert col(psi, 1) == [0, 0, 0, 0, 1, 1, 1, I, I, I]


def test_default_psi_errors():
    with pytest.raises(OddCodimension):
        default_psi(load_fan("cp2"))
    with pytest.raises(BadPairing):
        default_psi(load_fan("d1d1d2d2"), [(0, 0), (1, 2)])
    with pytest.raises(BadPairing):
        default_psi(load_fan("d1d1d2d2"), [(0, 1)])
    with pytest.raises(BadPairing):
        default_psi(HOPF1, [(0, 2)])


def test_validate_psi_examples():
    assert validate_psi(HOPF1, [[1], [I], [I]]).valid
    r = validate_psi(HOPF1, [[1], [1], [1]])
    assert not r.valid and not r.monomorphic and r.in_kernel
    r = validate_psi(HOPF1, [[1], [I], [0]])
    assert not r.valid and r.monomorphic and not r.in_kernel
    assert not validate_psi(HOPF1, [[1, 1], [I, 1], [I, 1]]).valid


def test_chern_matrix_hopf():
    gamma = relation_matrix(HOPF1)
    assert gamma == [[1, 0, 0], [0, 1, 1]]
    assert chern_matrix(HOPF1, gamma, [[1], [I], [I]]) == [[-I, 1, 0]]
    # a row killing psi but also killed by gamma is never chosen
    rejected = [0, 1, -1]
    assert sum((a * b[0] for a, b in zip(rejected, [[1], [I], [I]])), Gaussian()) == 0
    assert linalg.matvec(gamma, rejected) == [0, 0]


def test_chern_matrix_ce12():
    fan = load_fan("ce12")
    psi = default_psi(fan)
    assert col(psi) == [1, 1, I, I, I]
    assert chern_matrix(fan, relation_matrix(fan), psi) == [[-I, 0, 1, 0, 0]]


def test_partial_quotient_examples():
    assert validate_partial_quotient(HOPF1, [], [[1], [I], [I]]).valid
    lvm = load_fan("cp2_ghost").add_ghost()
    omega = [[0], [0], [0], [1], [I]]
    assert validate_partial_quotient(lvm, [[1, 1, 1, 1, 1]], omega).valid
    r = validate_partial_quotient(lvm, [[2, 0, 0, 0, 0]], omega)
    assert not r.valid and not r.primitive
    r = validate_partial_quotient(lvm, [[1, 0, 0, 0, 0]], omega)
    assert not r.valid and not r.n_in_kernel


def test_cox_groups():
    c = cox_group_structure(HOPF1)
    assert (c.torus_rank, c.finite_part) == (2, [])
    c = cox_group_structure(load_fan("singular_fan"))
    assert (c.torus_rank, c.finite_part) == (1, [2])
    c = cox_group_structure(load_fan("cp2"))
    assert (c.torus_rank, c.finite_part) == (1, [])
    with pytest.raises(NonPrimitiveGenerator):
        cox_group_structure(Fan.from_data(1, [[2], [-1]], [[0], [1]]))


def all_pairings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, other in enumerate(rest):
        for tail in all_pairings(rest[:k] + rest[k + 1:]):
            for pair in ((first, other), (other, first)):
                yield [pair] + tail


@pytest.mark.parametrize("name", HODGE_FANS)
def test_every_legal_pairing_gives_valid_psi(name):
    fan = load_fan(name)
    ell = (fan.m - fan.n) // 2
    gamma = relation_matrix(fan)
    for pairing in all_pairings(list(range(2 * ell))):
        for order in ([pairing] if len(pairing) < 2 else list(permutations(pairing))[:2]):
            psi = default_psi(fan, list(order))
            assert validate_psi(fan, psi).valid
            M = chern_matrix(fan, gamma, psi)
            assert linalg.is_zero_matrix(linalg.matmul(M, psi))
            assert linalg.rank(linalg.matmul(gamma, linalg.transpose(M))) == ell


@pytest.mark.parametrize("name", HODGE_FANS)
@given(seed=st.integers(0, 10**6))
def test_random_psi_and_chern_invariants(name, seed):
    fan = load_fan(name)
    psi = random_psi(fan, random.Random(seed))
    assert validate_psi(fan, psi).valid
    assert validate_partial_quotient(fan, [], psi).valid
    gamma = relation_matrix(fan)
    M = chern_matrix(fan, gamma, psi)
    ell = len(M)
    assert linalg.is_zero_matrix(linalg.matmul(M, psi))
    if ell:
        assert linalg.rank(linalg.matmul(gamma, linalg.transpose(M))) == ell


gaussian_ints = st.builds(Gaussian, st.integers(-2, 2), st.integers(-2, 2))


@given(st.lists(st.lists(gaussian_ints, min_size=1, max_size=1), min_size=3, max_size=3))
def test_partial_quotient_with_k0_agrees_with_psi_validation(psi):
    assert validate_partial_quotient(HOPF1, [], psi).valid == validate_psi(HOPF1, psi).valid
