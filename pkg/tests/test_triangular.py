import numpy as np
import pytest

import oracle
from sdtring.errors import (
    CompatibilityViolation,
    HypothesisViolation,
    PreconditionFailed,
    TwoNotUnit,
)
from sdtring.invariants import delta, jacobson_radical
from sdtring.parser import parse_and_build
from sdtring.ring import make_gf4, make_upper_triangular, make_zmod
from sdtring.triangular import (
    BlockView,
    WorkhorseCase,
    check_theorem_local,
    from_matrix,
    lift_commuting_tripotent,
    mat_cube,
    mat_mul,
    sample_workhorse_configs,
    sdt_representation_triangular,
    sylvester_solve,
    to_matrix,
    workhorse_z,
)

Z9 = make_zmod(9)


def blocks(R, rows):
    return BlockView.from_matrix(R, rows)


def test_sylvester_examples():
    assert sylvester_solve(make_zmod(4), 3, 2, 1) == 1
    assert sylvester_solve(Z9, 1, 8, 4) == 2
    assert sylvester_solve(make_zmod(2), 1, 1, 1) is None


def test_blockview_roundtrip():
    rows = [[1, 2, 3, 4], [0, 5, 6, 7], [0, 0, 8, 0], [0, 0, 0, 1]]
    bv = blocks(Z9, rows)
    assert (bv.a, bv.alpha, bv.c, bv.B, bv.beta, bv.b) == (1, [2, 3], 4, [[5, 6], [0, 8]], [7, 0], 1)
    assert bv.matrix() == rows
    small = blocks(Z9, [[1, 4], [0, 2]])
    assert small.alpha == [] and small.B == [] and small.matrix() == [[1, 4], [0, 2]]


def test_case_lookup():
    assert WorkhorseCase.from_signs(1, -1) is WorkhorseCase.IV
    assert WorkhorseCase.from_signs(0, -1) is WorkhorseCase.W
    assert len({c.value for c in WorkhorseCase}) == 9


def test_case_i_example():
    A = blocks(Z9, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    E = blocks(Z9, [[1, 1, 0], [0, 0, 1], [0, 0, 1]])
    z = workhorse_z(WorkhorseCase.I, A, E)
    assert z == 8
    M = E.with_corner(z).matrix()
    assert mat_cube(Z9, M) == M


def test_case_iii_zero_gamma():
    A = blocks(Z9, [[2, 0, 5], [0, 3, 0], [0, 0, 4]])
    E = blocks(Z9, [[0, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert workhorse_z(WorkhorseCase.III, A, E) == 0


def test_case_iv_example():
    A = blocks(Z9, [[1, 0, 0], [0, 0, 0], [0, 0, 8]])
    E = blocks(Z9, [[1, 0, 0], [0, 0, 0], [0, 0, 8]])
    z = workhorse_z(WorkhorseCase.IV, A, E)
    assert z == 0
    Am, Em = A.matrix(), E.with_corner(z).matrix()
    assert mat_mul(Z9, Am, Em) == mat_mul(Z9, Em, Am)


def test_hypothesis_violation():
    A = blocks(Z9, [[1, 1, 0], [0, 2, 0], [0, 0, 1]])
    E = blocks(Z9, [[1, 1, 0], [0, 0, 0], [0, 0, 1]])
    with pytest.raises(HypothesisViolation):
        workhorse_z(WorkhorseCase.I, A, E)
    with pytest.raises(HypothesisViolation):
        workhorse_z(WorkhorseCase.II, A, E)  # corners do not match the case


def test_two_not_unit():
    Z4 = make_zmod(4)
    A = blocks(Z4, [[1, 0], [0, 1]])
    E = blocks(Z4, [[1, 0], [0, 1]])
    with pytest.raises(TwoNotUnit):
        workhorse_z(WorkhorseCase.I, A, E)


def test_sampled_configs_are_sound():
    for case in WorkhorseCase:
        for A, E in sample_workhorse_configs(Z9, case, 150, seed=7):
            z = workhorse_z(case, A, E)
            if z is None:
                continue
            Am, Em = A.matrix(), E.with_corner(z).matrix()
            assert mat_cube(Z9, Em) == Em
            assert mat_mul(Z9, Am, Em) == mat_mul(Z9, Em, Am)


def test_lift_t2_example():
    T = make_upper_triangular(make_zmod(3), 2)
    A = from_matrix(T, [[1, 1], [0, 0]])
    E = lift_commuting_tripotent(T, A, [1, 0])
    assert to_matrix(T, E) == [[1, 1], [0, 0]]


def test_lift_diagonal_is_identity_map():
    R = make_zmod(3)
    T = make_upper_triangular(R, 3)
    A = from_matrix(T, [[2, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert lift_commuting_tripotent(T, A, [2, 1, 0]) == A


def test_lift_random_t3_z9():
    T = make_upper_triangular(Z9, 3, max_order=9 ** 6)
    J = jacobson_radical(Z9)
    rng = np.random.default_rng(11)
    done = 0
    for A in rng.integers(0, T.order, 200):
        Am = to_matrix(T, int(A))
        diag = []
        for i in range(3):
            x = Am[i][i]
            diag.append(0 if x in J else 1 if (x - 1) % 9 in J else 8 if (x + 1) % 9 in J else None)
        if None in diag:
            continue
        E = lift_commuting_tripotent(T, int(A), diag)
        Em = to_matrix(T, E)
        assert mat_cube(Z9, Em) == Em
        assert mat_mul(Z9, Am, Em) == mat_mul(Z9, Em, Am)
        assert [Em[i][i] for i in range(3)] == diag
        done += 1
    assert done > 100


def test_lift_incompatible_diagonal():
    R = make_zmod(5)
    T = make_upper_triangular(R, 2)
    A = from_matrix(T, [[1, 0], [0, 1]])
    with pytest.raises(CompatibilityViolation):
        lift_commuting_tripotent(T, A, [1, 0])
    with pytest.raises(CompatibilityViolation):
        lift_commuting_tripotent(T, A, [2, 2])


def test_sdt_representation_examples():
    T = make_upper_triangular(make_zmod(3), 2)
    A = from_matrix(T, [[1, 1], [0, 1]])
    E, D = sdt_representation_triangular(T, A)
    assert to_matrix(T, E) == [[1, 0], [0, 1]] and to_matrix(T, D) == [[0, 1], [0, 0]]
    A = from_matrix(T, [[2, 1], [0, 0]])
    E, D = sdt_representation_triangular(T, A)
    Em = to_matrix(T, E)
    assert (Em[0][0], Em[1][1]) == (2, 0)
    assert D in jacobson_radical(T)


@pytest.mark.parametrize("expr", ["T2(Z3)", "T3(Z3)", "T3(Z2)", "T2(Z4)"])
def test_sdt_representation_everywhere(expr):
    T = parse_and_build(expr)
    O = oracle.from_expr(expr)
    D_mask = oracle.delta(O)
    for A in range(T.order):
        E, D = sdt_representation_triangular(T, A)
        assert O.add[E, D] == A
        assert O.mul[O.mul[E, E], E] == E
        assert D_mask[D]
        assert O.mul[E, D] == O.mul[D, E]


def test_sdt_representation_preconditions():
    with pytest.raises(PreconditionFailed) as info:
        sdt_representation_triangular(parse_and_build("T2(Z5)"), 0)
    assert info.value.condition == "residue field"
    with pytest.raises(PreconditionFailed) as info:
        sdt_representation_triangular(parse_and_build("T2(Z6)"), 0)
    assert info.value.condition == "local"


@pytest.mark.parametrize("R, expected, branch", [
    (make_zmod(2), True, "2.1"),
    (make_zmod(3), True, "2.2"),
    (make_zmod(4), True, "2.1"),
    (make_gf4(), False, "neither"),
])
def test_theorem_local(R, expected, branch):
    rep = check_theorem_local(R, 3)
    assert rep.lhs_sdt == rep.rhs_condition == expected
    assert rep.branch == branch
    assert set(rep.to_json()) == {"lhs_sdt", "rhs_condition", "branch", "elapsed_ms"}


def test_theorem_local_preconditions():
    with pytest.raises(PreconditionFailed):
        check_theorem_local(make_zmod(3), 2)
    with pytest.raises(PreconditionFailed):
        check_theorem_local(make_zmod(6), 3)
