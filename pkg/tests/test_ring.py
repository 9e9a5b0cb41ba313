import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle_ring
from sdtring.errors import AxiomViolation, CapExceeded, NotAnIdeal, NotIdempotent, OrderOverflow
from sdtring.invariants import ElementSubset, units_bruteforce
from sdtring.ring import (
    GF4_ADD,
    GF4_MUL,
    GF4_NEG,
    TriangularElement,
    encode_roundtrip_ok,
    make_corner,
    make_full_matrix,
    make_gf4,
    make_product,
    make_quotient,
    make_table_ring,
    make_trivial_extension,
    make_truncated_poly,
    make_upper_triangular,
    make_zmod,
    validate_ring,
)


def test_zmod_basics():
    R = make_zmod(8)
    assert (R.order, R.zero, R.one) == (8, 0, 1)
    assert R.add(5, 6) == 3 and R.mul(3, 3) == 1 and R.neg(3) == 5
    assert R.int_elem(11) == 3
    z1 = make_zmod(1)
    assert z1.one == z1.zero == 0


def test_product_encoding_and_identity():
    R = make_product(make_zmod(4), make_zmod(3))
    assert R.order == 12
    assert R.one == 1 + 4 * 1
    assert R.decode(7) == (3, 1)
    assert R.encode((3, 1)) == 7


def test_gf4_field():
    F = make_gf4()
    w = 2
    assert F.mul(w, w) == F.add(w, 1)
    assert all(F.add(x, x) == 0 for x in range(4))
    assert units_bruteforce(F).to_list() == [1, 2, 3]


def test_triangular_encoding():
    T = make_upper_triangular(make_zmod(3), 2)
    el = TriangularElement.from_matrix(make_zmod(3), [[1, 2], [0, 1]])
    assert el.index() == 1 + 3 * 2 + 9 * 1
    assert T.decode(el.index()).matrix() == [[1, 2], [0, 1]]
    assert T.one == 1 + 9


@pytest.mark.parametrize("builder, order", [
    (lambda: make_full_matrix(make_zmod(2), 2), 16),
    (lambda: make_trivial_extension(make_zmod(3)), 9),
    (lambda: make_truncated_poly(make_zmod(3), 3), 27),
    (lambda: make_upper_triangular(make_zmod(4), 3), 4096),
])
def test_constructor_orders(builder, order):
    assert builder().order == order


def test_order_cap():
    with pytest.raises(OrderOverflow):
        make_upper_triangular(make_zmod(9), 3, max_order=2**18)
    with pytest.raises(OrderOverflow):
        make_zmod(10, max_order=9)


def test_tables_match_oracle(small_entries):
    for e in small_entries:
        R, O = e.build(), oracle_ring(e.expr, e.corner)
        add, mul, neg = R.tables()
        assert (add == O.add).all() and (mul == O.mul).all() and (neg == O.neg).all(), e.name
        assert (R.zero, R.one) == (O.zero, O.one), e.name


def test_encoding_roundtrip(catalog):
    for e in catalog:
        R = e.build()
        if R.structure_tag not in ("corner",) and R.order <= 4096:
            assert encode_roundtrip_ok(R), e.name


def test_fast_units_agree_with_bruteforce(small_entries):
    for e in small_entries:
        R = e.build()
        if R.is_unit_fast is not None:
            fast = np.asarray(R.is_unit_fast(R.elements()), dtype=bool)
            assert (fast == units_bruteforce(R).mask).all(), e.name


def test_validate_exhaustive_passes(small_entries):
    for e in small_entries:
        R = e.build()
        if R.order <= 64:
            assert validate_ring(R).ok, e.name


def test_validate_sampled_large_structured():
    report = validate_ring(make_upper_triangular(make_zmod(4), 3), cap=512)
    assert report.mode == "sampled" and report.ok


def test_bad_tables_rejected():
    mul = [row[:] for row in GF4_MUL]
    mul[2][3], mul[3][2] = 2, 2
    with pytest.raises(AxiomViolation):
        make_table_ring(4, GF4_ADD, mul, GF4_NEG, 0, 1)
    # a magma without identity
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    with pytest.raises(AxiomViolation) as info:
        make_table_ring(3, add, [[0] * 3 for _ in range(3)], [0, 2, 1], 0, 1)
    assert info.value.kind in ("mul-identity", "one-nonzero")


def test_table_ring_over_cap():
    R = make_zmod(20)
    add, mul, neg = R.tables()
    with pytest.raises(CapExceeded):
        make_table_ring(20, add, mul, neg, 0, 1, cap=10)


def test_quotient_examples():
    Z12 = make_zmod(12)
    Q, proj = make_quotient(Z12, ElementSubset.from_indices(Z12, [0, 6]))
    assert Q.order == 6
    assert list(Q.meta["representatives"]) == [0, 1, 2, 3, 4, 5]
    assert proj[7] == 1 and proj[11] == 5
    with pytest.raises(NotAnIdeal):
        make_quotient(Z12, ElementSubset.from_indices(Z12, [0, 3]))


def test_corner_examples():
    T = make_upper_triangular(make_zmod(2), 2)
    C = make_corner(T, 1)
    assert C.order == 2 and C.one == 1
    assert make_corner(T, T.one) is T
    with pytest.raises(NotIdempotent):
        make_corner(T, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12))
def test_products_of_cyclic_rings_are_rings(n, m):
    R = make_product(make_zmod(n), make_zmod(m))
    assert validate_ring(R).ok
    phi = lambda k: sum(1 for x in range(k) if np.gcd(x, k) == 1) if k > 1 else 1
    assert len(units_bruteforce(R)) == phi(n) * phi(m)
