import math

import numpy as np
import pytest
from hypothesis import given

from conftest import coins, walk_types
from pqrswalk.coin import (
    LABELS,
    STATE_SYM,
    WalkType,
    basis_product,
    expand,
    hadamard,
    make_coin,
    named_coin,
    parse_coin,
    parse_state,
    pqrs,
)
from pqrswalk.errors import NotUnitary, ParamOutOfRange


def test_hadamard_entries():
    h = hadamard()
    s = 1 / math.sqrt(2)
    assert (h.a, h.b, h.c, h.d) == (s, s, s, -s)
    assert abs(h.det + 1) < 1e-15
    assert h.abcd_nonzero


def test_non_unitary_rejected_without_renormalizing():
    with pytest.raises(NotUnitary) as info:
        make_coin(1, 0, 0, 1 + 1e-6)
    assert info.value.residual > 1e-10
    # inside the tolerance the entries are kept as given
    coin = make_coin(1, 0, 0, 1 + 1e-12)
    assert coin.d == 1 + 1e-12


def test_coin_with_zero_entry_is_flagged():
    assert not make_coin(1, 0, 0, 1).abcd_nonzero


@pytest.mark.parametrize(
    "spec, entries",
    [
        ("hadamard", [1, 1, 1, -1] / np.sqrt(2)),
        ("h_rho:0.25", [0.5, math.sqrt(0.75), math.sqrt(0.75), -0.5]),
        ("gudder:0.6", [0.6, 0.8j, 0.8j, 0.6]),
        ("raw:0,0,1,0,1,0,0,0", [0, 1, 1, 0]),
    ],
)
def test_parse_coin(spec, entries):
    coin = parse_coin(spec)
    assert np.allclose([coin.a, coin.b, coin.c, coin.d], entries, atol=1e-15)


def test_u_eta_phi_psi_reduces_to_hadamard():
    assert named_coin("u_eta_phi_psi", [0, 0, 0]).close_to(hadamard())


@pytest.mark.parametrize("spec", ["hadamard:1", "h_rho:1.5", "gudder:1", "u:1,2", "raw:1,2", "pauli", "raw:a,b"])
def test_parse_coin_rejects(spec):
    with pytest.raises(ParamOutOfRange):
        parse_coin(spec)


def test_parse_state():
    assert parse_state("L").vector.tolist() == [1, 0]
    assert parse_state("R").vector.tolist() == [0, 1]
    assert parse_state("sym") == STATE_SYM
    st = parse_state("raw:0.6,0,0,0.8")
    assert st.beta == 0.8j
    with pytest.raises(ParamOutOfRange):
        parse_state("raw:1,0,1,0")
    with pytest.raises(ParamOutOfRange):
        WalkType.parse("b")


@given(coins(), walk_types)
def test_basis_is_orthonormal(coin, wt):
    assert np.max(np.abs(pqrs(coin, wt).gram() - np.eye(4))) < 1e-12


@given(coins(), walk_types)
def test_product_table_matches_matrix_products(coin, wt):
    basis = pqrs(coin, wt)
    for lhs in LABELS:
        for rhs in LABELS:
            scalar, label = basis_product(lhs, rhs, coin)
            assert np.max(np.abs(basis[lhs] @ basis[rhs] - scalar * basis[label])) < 1e-12


def test_product_table_examples():
    h = hadamard()
    assert basis_product("P", "Q", h) == (h.b, "R")
    assert basis_product("Q", "P", h) == (h.c, "S")
    assert basis_product("R", "S", h) == (h.d, "P")


@given(coins(), walk_types)
def test_identity_expansion(coin, wt):
    combo = expand(np.eye(2), pqrs(coin, wt))
    want = np.conj([coin.a, coin.d, coin.c, coin.b])
    assert np.max(np.abs(combo.as_array() - want)) < 1e-12


@given(coins(), walk_types)
def test_expand_roundtrip(coin, wt):
    basis = pqrs(coin, wt)
    X = np.arange(4).reshape(2, 2) + 1j * np.array([[1, -2], [0.5, 3]])
    assert np.allclose(expand(X, basis).matrix(basis), X, atol=1e-12)


def test_basis_is_immutable():
    basis = pqrs(hadamard(), WalkType.A)
    with pytest.raises(ValueError):
        basis.P[0, 0] = 2
