import math

import numpy as np
from hypothesis import given, settings, strategies as st

import oracle
from conftest import oracle_ring
from sdtring.invariants import (
    center,
    delta,
    delta_alt1,
    delta_alt2,
    ideal_generated_by,
    idempotents,
    jacobson_nilpotency_index,
    jacobson_radical,
    left_annihilator,
    lr_image,
    nilpotents,
    potents,
    right_annihilator,
    structural_sets,
    tripotents,
    units,
)
from sdtring.ring import make_gf4, make_full_matrix, make_upper_triangular, make_zmod


def test_pinned_small_sets():
    assert units(make_zmod(8)).to_list() == [1, 3, 5, 7]
    assert units(make_zmod(1)).to_list() == [0]
    assert jacobson_radical(make_zmod(12)).to_list() == [0, 6]
    assert delta(make_zmod(4)).to_list() == [0, 2]
    assert delta(make_zmod(6)).to_list() == [0]
    assert delta(make_zmod(8)).to_list() == [0, 2, 4, 6]
    assert nilpotents(make_zmod(8)).to_list() == [0, 2, 4, 6]
    assert potents(make_zmod(4), 3).to_list() == [0, 1, 3]
    assert tripotents(make_gf4()).to_list() == [0, 1]


def test_triangular_sets():
    T = make_upper_triangular(make_zmod(2), 2)
    assert units(T).to_list() == [5, 7]
    assert center(T).to_list() == [0, 5]
    assert delta(T).to_list() == [0, 2]
    M = make_full_matrix(make_zmod(2), 2)
    assert len(units(M)) == 6
    assert center(M).to_list() == [0, 9]


def test_sets_match_oracle(small_entries):
    for e in small_entries:
        R, O = e.build(), oracle_ring(e.expr, e.corner)
        assert units(R).to_list() == oracle.as_list(oracle.units(O)), e.name
        assert jacobson_radical(R).to_list() == oracle.as_list(oracle.jacobson(O)), e.name
        assert delta(R).to_list() == oracle.as_list(oracle.delta(O)), e.name
        assert delta_alt1(R).to_list() == oracle.as_list(oracle.delta_via_products(O)), e.name
        assert nilpotents(R).to_list() == oracle.as_list(oracle.nilpotents(O)), e.name
        assert tripotents(R).to_list() == oracle.as_list(oracle.tripotents(O)), e.name
        assert idempotents(R).to_list() == oracle.as_list(oracle.idempotents(O)), e.name
        assert center(R).to_list() == oracle.as_list(oracle.center(O)), e.name


def test_delta_characterizations_agree(small_entries):
    for e in small_entries:
        R = e.build()
        assert delta(R) == delta_alt1(R) == delta_alt2(R), e.name


def test_ideals_and_images():
    Z6 = make_zmod(6)
    assert ideal_generated_by(Z6, [2]).to_list() == [0, 2, 4]
    assert ideal_generated_by(Z6, []).to_list() == [0]
    Z4 = make_zmod(4)
    assert lr_image(Z4, 1, 2).is_full()
    assert lr_image(make_zmod(2), 1, 1).to_list() == [0]
    Z12 = make_zmod(12)
    assert left_annihilator(Z12, 4).to_list() == [0, 3, 6, 9]
    assert right_annihilator(Z12, 6).to_list() == [0, 2, 4, 6, 8, 10]


def test_jacobson_nilpotency_index():
    assert jacobson_nilpotency_index(make_zmod(8)) == 3
    assert jacobson_nilpotency_index(make_zmod(6)) == 1
    assert jacobson_nilpotency_index(make_upper_triangular(make_zmod(2), 3)) == 3


def test_structural_sets_keys():
    sets = structural_sets(make_zmod(4))
    assert sets["jacobson"] == [0, 2] and sets["idempotents"] == [0, 1]
    assert list(sets) == ["units", "jacobson", "delta", "nilpotents", "idempotents",
                          "tripotents", "center"]


def _radical(n):
    r, p, m = 1, 2, n
    while m > 1:
        if m % p == 0:
            r *= p
            while m % p == 0:
                m //= p
        p += 1
    return r


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 200))
def test_cyclic_rings_closed_forms(n):
    R = make_zmod(n)
    assert units(R).to_list() == [x for x in range(n) if math.gcd(x, n) == 1]
    rad = _radical(n)
    assert jacobson_radical(R).to_list() == list(range(0, n, rad))
    assert nilpotents(R) == jacobson_radical(R)
    J = jacobson_radical(R)
    assert J.issubset(delta(R))
    assert np.array_equal(delta(R).mask, delta_alt1(R).mask)
