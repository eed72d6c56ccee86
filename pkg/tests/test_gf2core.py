import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canonical_degree import gf2core
from canonical_degree.errors import SingularMatrixError
from canonical_degree.gf2core import PAPER_A, Gf2Mat4, check_admissible, element_order, mat_mul

import oracles

PAPER_A2 = Gf2Mat4(((1, 1, 0, 1), (0, 0, 1, 1), (1, 1, 0, 0), (1, 0, 1, 1)))
IDENT = Gf2Mat4.identity()
SWAP12 = Gf2Mat4(((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))

# frozen from oracles.brute_force_admissible_codes()
ADMISSIBLE_CODES = [15815, 15996, 22506, 23223, 26525, 27003, 47590, 47709, 54219, 56982, 58300, 60762]

matrices = st.integers(0, (1 << 16) - 1).map(Gf2Mat4.from_int)


def test_square_matches_displayed_matrix():
    assert mat_mul(PAPER_A, PAPER_A) == PAPER_A2
    assert PAPER_A2.rows[0] == (1, 1, 0, 1)


def test_identity_is_neutral():
    assert mat_mul(IDENT, PAPER_A) == PAPER_A
    assert mat_mul(PAPER_A, IDENT) == PAPER_A


def test_cube_is_identity():
    assert mat_mul(PAPER_A, PAPER_A2) == IDENT


@pytest.mark.parametrize("m, order", [(PAPER_A, 3), (IDENT, 1), (SWAP12, 2)])
def test_element_order(m, order):
    assert element_order(m) == order


def test_element_order_rejects_singular():
    with pytest.raises(SingularMatrixError):
        element_order(Gf2Mat4.from_int(0))


def test_reference_matrix_is_admissible():
    r = check_admissible(PAPER_A)
    assert (r.invertible, r.order, r.order_three, r.sum_identity, r.partition, r.admissible) == (
        True, 3, True, True, True, True)


def test_identity_fails_partition():
    r = check_admissible(IDENT)
    assert r.invertible and r.order == 1
    assert not r.partition and not r.admissible


@pytest.mark.parametrize("code", [0, 0b1000_1000_0000_0000, 0xFFFF])
def test_singular_matrix_is_not_admissible(code):
    r = check_admissible(Gf2Mat4.from_int(code))
    assert not r.invertible and r.order is None and not r.admissible


def test_translates_use_recomputed_e0():
    vs = gf2core.translates(PAPER_A)
    assert vs[0] == (1, 1, 1, 1)
    assert sorted(vs) == sorted(v for v in gf2core.all_vectors() if v != gf2core.ZERO)


def test_enumeration_matches_frozen_list():
    found = gf2core.enumerate_admissible()
    assert [m.to_int() for m in found] == ADMISSIBLE_CODES
    assert PAPER_A in found


def test_frozen_list_matches_brute_force_oracle():
    assert oracles.brute_force_admissible_codes() == ADMISSIBLE_CODES


def test_admissible_matrices_satisfy_all_properties():
    for m in gf2core.enumerate_admissible():
        assert element_order(m) == 3
        assert (IDENT + m + m @ m).is_zero()
        vs = gf2core.translates(m)
        assert len(set(vs)) == 15 and gf2core.ZERO not in vs
        assert mat_mul(m, m @ m) == IDENT


def test_inverse_twist_is_admissible():
    for m in gf2core.enumerate_admissible():
        assert check_admissible(m @ m).partition


@settings(max_examples=1000, deadline=None)
@given(matrices, matrices, matrices)
def test_mat_mul_associative(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@given(matrices)
def test_partition_of_a_implies_partition_of_square(a):
    if check_admissible(a).partition and a.is_invertible():
        assert check_admissible(a @ a).partition


@given(matrices)
def test_int_encoding_roundtrip(a):
    assert Gf2Mat4.from_int(a.to_int()) == a


def test_lexicographic_encoding():
    assert Gf2Mat4.from_int(1 << 15).rows[0] == (1, 0, 0, 0)
    assert PAPER_A.to_int() == 0b0101_0111_1110_1010


def test_text_and_json_serialization():
    text = PAPER_A.to_text()
    assert text == "0101\n0111\n1110\n1010"
    assert Gf2Mat4.from_text(text) == PAPER_A
    payload = json.dumps(PAPER_A.to_json())
    assert payload == "[[0, 1, 0, 1], [0, 1, 1, 1], [1, 1, 1, 0], [1, 0, 1, 0]]"
    assert Gf2Mat4.from_json(payload) == PAPER_A
    assert Gf2Mat4.from_json(["0101", "0111", "1110", "1010"]) == PAPER_A


@pytest.mark.parametrize("rows", [((0, 1),) * 4, ((0, 2, 0, 0),) * 4, ((0, 0, 0, 0),) * 3])
def test_malformed_matrices_rejected(rows):
    with pytest.raises(ValueError):
        Gf2Mat4(rows)


def test_matrix_vector_convention():
    # columns are images of basis vectors: A e_i is column i
    for i in range(1, 5):
        assert PAPER_A.apply(gf2core.basis(i)) == PAPER_A.column(i - 1)
