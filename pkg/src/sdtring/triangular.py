"""Commuting tripotents and SDT representations in upper-triangular rings.

Matrices here are lists of rows of base-ring indices.  A ``BlockView``
splits an n x n upper-triangular matrix as

    [ a  alpha  c    ]
    [    B      beta ]
    [           b    ]

and the same container is reused for a candidate tripotent, whose blocks
are conventionally called (e, gamma, z, F, delta, f).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .classifiers import (
    delta_shift_surjectivity,
    is_bleached,
    is_local,
    is_sdt,
    residue_class_order,
)
from .errors import (
    CompatibilityViolation,
    HypothesisViolation,
    ImplicationViolation,
    InternalInvariant,
    LiftFailed,
    PreconditionFailed,
    TwoNotUnit,
)
from .invariants import jacobson_radical, lr_image, units
from .ring import FiniteRing, TriangularElement, make_upper_triangular


# -- matrix arithmetic over a base ring -----------------------------------

def mat_zero(R: FiniteRing, n: int) -> list[list[int]]:
    return [[R.zero] * n for _ in range(n)]


def mat_mul(R: FiniteRing, X, Y) -> list[list[int]]:
    n = len(X)
    out = mat_zero(R, n)
    for i in range(n):
        for j in range(i, n):
            acc = R.zero
            for k in range(i, j + 1):
                acc = R.add(acc, R.mul(X[i][k], Y[k][j]))
            out[i][j] = acc
    return out


def mat_sub(R: FiniteRing, X, Y) -> list[list[int]]:
    return [[R.sub(x, y) for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]


def mat_cube(R: FiniteRing, X):
    return mat_mul(R, mat_mul(R, X, X), X)


def to_matrix(T: FiniteRing, index: int) -> list[list[int]]:
    return TriangularElement.from_index(T.meta["base"], T.meta["n"], int(index)).matrix()


def from_matrix(T: FiniteRing, rows) -> int:
    return TriangularElement.from_matrix(T.meta["base"], rows).index()


def _dot(R: FiniteRing, xs, ys) -> int:
    acc = R.zero
    for x, y in zip(xs, ys):
        acc = R.add(acc, R.mul(x, y))
    return acc


@dataclass
class BlockView:
    ring: FiniteRing
    n: int
    a: int
    alpha: list[int]
    c: int
    B: list[list[int]]
    beta: list[int]
    b: int

    @classmethod
    def from_matrix(cls, R: FiniteRing, M) -> "BlockView":
        n = len(M)
        if n < 2:
            raise ValueError("block views need n >= 2")
        inner = [row[1:n - 1] for row in M[1:n - 1]]
        return cls(R, n, M[0][0], list(M[0][1:n - 1]), M[0][n - 1], inner,
                   [M[i][n - 1] for i in range(1, n - 1)], M[n - 1][n - 1])

    def matrix(self) -> list[list[int]]:
        R, n = self.ring, self.n
        M = mat_zero(R, n)
        M[0][0], M[0][n - 1], M[n - 1][n - 1] = self.a, self.c, self.b
        for k in range(n - 2):
            M[0][k + 1] = self.alpha[k]
            M[k + 1][n - 1] = self.beta[k]
            for l in range(n - 2):
                M[k + 1][l + 1] = self.B[k][l]
        return M

    def with_corner(self, c: int) -> "BlockView":
        return BlockView(self.ring, self.n, self.a, self.alpha, c, self.B, self.beta, self.b)


class WorkhorseCase(Enum):
    I = (1, 1)
    II = (-1, -1)
    III = (0, 0)
    IV = (1, -1)
    V = (-1, 1)
    VI = (1, 0)
    VII = (0, 1)
    VIII = (-1, 0)
    W = (0, -1)

    @property
    def e(self) -> int:
        return self.value[0]

    @property
    def f(self) -> int:
        return self.value[1]

    @classmethod
    def from_signs(cls, e: int, f: int) -> "WorkhorseCase":
        return cls((e, f))


def signed_unit(R: FiniteRing, s: int) -> int:
    return {0: R.zero, 1: R.one, -1: R.neg(R.one)}[s]


def sign_of(R: FiniteRing, x: int) -> int | None:
    if x == R.zero:
        return 0
    if x == R.one:
        return 1
    if x == R.neg(R.one):
        return -1
    return None


def sylvester_solve(R: FiniteRing, a: int, b: int, v: int) -> int | None:
    """Smallest-index x with a x - x b = v, or None."""
    els = R.elements()
    image = R.vadd(R.vmul(a, els), R.vneg(R.vmul(els, b)))
    hits = np.flatnonzero(image == v)
    return int(hits[0]) if len(hits) else None


def _off_corner_ok(R: FiniteRing, A, E, power: int) -> tuple[int, int] | None:
    n = len(E)
    Ep = mat_cube(R, E) if power == 3 else mat_mul(R, E, E)
    comm = mat_sub(R, mat_mul(R, A, E), mat_mul(R, E, A))
    for i in range(n):
        for j in range(i, n):
            if (i, j) == (0, n - 1):
                continue
            if Ep[i][j] != E[i][j] or comm[i][j] != R.zero:
                return (i + 1, j + 1)
    return None


def _two_inverse(R: FiniteRing) -> int:
    two = R.int_elem(2)
    for x in range(R.order):
        if R.mul(two, x) == R.one:
            return x
    raise TwoNotUnit(f"2 is not a unit of {R.name}")


def _forms(R: FiniteRing, A: BlockView, E: BlockView) -> dict[str, int]:
    gF = [_dot(R, E.alpha, [row[k] for row in E.B]) for k in range(E.n - 2)]
    return {
        "gFd": _dot(R, gF, E.beta),
        "gd": _dot(R, E.alpha, E.beta),
        "gb": _dot(R, E.alpha, A.beta),
        "ad": _dot(R, A.alpha, E.beta),
    }


def workhorse_z(case: WorkhorseCase, A: BlockView, E: BlockView) -> int | None:
    """The (1, n) entry making E a tripotent commuting with A.

    ``E.c`` is ignored.  Cases I-III return the closed form; the mixed cases
    return the smallest solution of the case's Sylvester equation, or None
    when it has none.
    """
    R = A.ring
    if case in (WorkhorseCase.I, WorkhorseCase.II, WorkhorseCase.IV, WorkhorseCase.V) \
            and R.int_elem(2) not in units(R):
        raise TwoNotUnit(f"case {case.name} needs 2 to be a unit of {R.name}")
    if E.a != signed_unit(R, case.e) or E.b != signed_unit(R, case.f):
        raise HypothesisViolation(f"corner entries do not match case {case.name}")
    Am, Em = A.matrix(), E.with_corner(R.zero).matrix()
    bad = _off_corner_ok(R, Am, Em, 3)
    if bad is not None:
        raise HypothesisViolation(f"E^3 = E or AE = EA fails at entry {bad}")

    t = _forms(R, A, E)
    two = R.int_elem(2)
    if case is WorkhorseCase.I:
        z = R.neg(R.mul(_two_inverse(R), R.add(t["gFd"], R.mul(two, t["gd"]))))
    elif case is WorkhorseCase.II:
        z = R.neg(R.mul(_two_inverse(R), R.sub(t["gFd"], R.mul(two, t["gd"]))))
    elif case is WorkhorseCase.III:
        z = t["gFd"]
    else:
        shift = {
            WorkhorseCase.IV: R.mul(two, A.c),
            WorkhorseCase.V: R.neg(R.mul(two, A.c)),
            WorkhorseCase.VI: A.c,
            WorkhorseCase.W: A.c,
            WorkhorseCase.VII: R.neg(A.c),
            WorkhorseCase.VIII: R.neg(A.c),
        }[case]
        rhs = R.add(R.sub(t["gb"], t["ad"]), shift)
        z = sylvester_solve(R, A.a, A.b, rhs)
        if z is None:
            return None
    _post_verify(R, Am, E.with_corner(z).matrix(), 3, case.name)
    return z


def workhorse_z_idempotent(A: BlockView, E: BlockView) -> int | None:
    """Idempotent analogue (corner entries in {0, 1}) used when 2 lies in J(R)."""
    R = A.ring
    if E.a not in (R.zero, R.one) or E.b not in (R.zero, R.one):
        raise HypothesisViolation("corner entries must be 0 or 1")
    e = 0 if E.a == R.zero else 1
    f = 0 if E.b == R.zero else 1
    Am, Em = A.matrix(), E.with_corner(R.zero).matrix()
    bad = _off_corner_ok(R, Am, Em, 2)
    if bad is not None:
        raise HypothesisViolation(f"E^2 = E or AE = EA fails at entry {bad}")
    t = _forms(R, A, E)
    if (e, f) == (1, 1):
        z = R.neg(t["gd"])
    elif (e, f) == (0, 0):
        z = t["gd"]
    else:
        c = A.c if (e, f) == (1, 0) else R.neg(A.c)
        z = sylvester_solve(R, A.a, A.b, R.add(R.sub(t["gb"], t["ad"]), c))
        if z is None:
            return None
    _post_verify(R, Am, E.with_corner(z).matrix(), 2, f"idempotent{(e, f)}")
    return z


def _post_verify(R: FiniteRing, A, E, power: int, label: str) -> None:
    Ep = mat_cube(R, E) if power == 3 else mat_mul(R, E, E)
    if Ep != E:
        raise InternalInvariant(f"workhorse {label}: E^{power} != E")
    if mat_mul(R, A, E) != mat_mul(R, E, A):
        raise InternalInvariant(f"workhorse {label}: AE != EA")


def _sub_block(M, i: int, j: int):
    return [row[i:j + 1] for row in M[i:j + 1]]


def lift_commuting_tripotent(T: FiniteRing, A: int, diag) -> int:
    """A tripotent E of T_n(R) with AE = EA and prescribed diagonal.

    Entries are filled along increasing superdiagonals; each one comes from
    the workhorse applied to the principal sub-block it closes.
    """
    R, n = T.meta["base"], T.meta["n"]
    if not is_local(R):
        raise PreconditionFailed("local", f"{R.name} is not local")
    diag = [int(d) for d in diag]
    if len(diag) != n:
        raise CompatibilityViolation(f"need {n} diagonal entries")
    two_unit = R.int_elem(2) in units(R)
    allowed = {R.zero, R.one, R.neg(R.one)} if two_unit else {R.zero, R.one}
    if any(d not in allowed for d in diag):
        raise CompatibilityViolation(f"diagonal entries must lie in {sorted(allowed)}")
    Am = to_matrix(T, A)
    for i in range(n):
        for j in range(i + 1, n):
            if diag[i] != diag[j] and not lr_image(R, Am[i][i], Am[j][j]).is_full():
                raise CompatibilityViolation(
                    f"diagonal entries {i + 1},{j + 1} differ but l_a - r_b is not onto")
    Em = mat_zero(R, n)
    for i in range(n):
        Em[i][i] = diag[i]
    for d in range(1, n):
        for i in range(n - d):
            j = i + d
            Ab = BlockView.from_matrix(R, _sub_block(Am, i, j))
            Eb = BlockView.from_matrix(R, _sub_block(Em, i, j))
            if two_unit:
                case = WorkhorseCase.from_signs(sign_of(R, diag[i]), sign_of(R, diag[j]))
                z = workhorse_z(case, Ab, Eb)
            else:
                z = workhorse_z_idempotent(Ab, Eb)
            if z is None:
                raise LiftFailed(f"no solution for entry ({i + 1},{j + 1})")
            Em[i][j] = z
    if mat_cube(R, Em) != Em or mat_mul(R, Am, Em) != mat_mul(R, Em, Am):
        raise InternalInvariant("lifted matrix fails E^3 = E or AE = EA")
    return from_matrix(T, Em)


def theorem_local_branch(R: FiniteRing) -> str:
    """Report label for a local base ring.

    '2.1': bleached with residue field of order 2; '2.2': bleached with
    residue field of order 3 and the Delta-shift maps onto; otherwise 'neither'.
    """
    if not is_bleached(R):
        return "neither"
    k = residue_class_order(R)
    if k == 2:
        return "2.1"
    if k == 3 and delta_shift_surjectivity(R):
        return "2.2"
    return "neither"


def diagonal_rule(R: FiniteRing, x: int) -> int:
    """0, 1 or -1 according as x lies in J, 1 + J or -1 + J."""
    J = jacobson_radical(R)
    if x in J:
        return R.zero
    if R.sub(x, R.one) in J:
        return R.one
    if R.add(x, R.one) in J:
        return R.neg(R.one)
    raise PreconditionFailed("residue field", f"{x} is not in J, 1 + J or -1 + J")


def sdt_representation_triangular(T: FiniteRing, A: int) -> tuple[int, int]:
    """(E, D) with A = E + D, E^3 = E, D in J(T_n(R)) and ED = DE."""
    R, n = T.meta["base"], T.meta["n"]
    if not is_local(R):
        raise PreconditionFailed("local", f"{R.name} is not local")
    if not is_bleached(R):
        raise PreconditionFailed("bleached", f"{R.name} is not bleached")
    k = residue_class_order(R)
    if k not in (2, 3):
        raise PreconditionFailed("residue field", f"|R/J| = {k}, need 2 or 3")
    if k == 3 and not delta_shift_surjectivity(R):
        raise PreconditionFailed("delta-shift", "l_a - r_b not onto for some a in 1+D, b in -1+D")
    Am = to_matrix(T, A)
    diag = [diagonal_rule(R, Am[i][i]) for i in range(n)]
    E = lift_commuting_tripotent(T, A, diag)
    D = T.sub(int(A), E)
    Dm = to_matrix(T, D)
    J = jacobson_radical(R)
    if any(Dm[i][i] not in J for i in range(n)):
        raise InternalInvariant("A - E has a diagonal entry outside J(R)")
    if T.mul(E, D) != T.mul(D, E):
        raise InternalInvariant("E and A - E do not commute")
    return E, D


@dataclass
class TheoremLocalReport:
    ring: str
    n: int
    lhs_sdt: bool
    rhs_condition: bool
    branch: str
    elapsed_ms: int

    def to_json(self) -> dict:
        return {"lhs_sdt": self.lhs_sdt, "rhs_condition": self.rhs_condition,
                "branch": self.branch, "elapsed_ms": self.elapsed_ms}


def check_theorem_local(R: FiniteRing, n: int, max_order: int | None = None) -> TheoremLocalReport:
    """Brute-force SDT test of T_n(R) against the bleached/residue-field criterion."""
    if not is_local(R):
        raise PreconditionFailed("local", f"{R.name} is not local")
    if n <= 2:
        raise PreconditionFailed("n > 2", "the criterion is stated for n > 2")
    start = time.perf_counter()
    T = make_upper_triangular(R, n, max_order=max_order)
    lhs = is_sdt(T)[0]
    branch = theorem_local_branch(R)
    rhs = branch != "neither"
    elapsed = int((time.perf_counter() - start) * 1000)
    if lhs != rhs:
        raise ImplicationViolation(f"T{n} SDT = {lhs}", f"criterion = {rhs}", R.name)
    return TheoremLocalReport(R.name, n, lhs, rhs, branch, elapsed)


# -- sampling workhorse configurations (n = 3) ------------------------------

def _t3(R: FiniteRing) -> FiniteRing:
    return R.cached("t3_unbounded", lambda: make_upper_triangular(R, 3, max_order=R.order ** 6))


def valid_frames(R: FiniteRing, case: WorkhorseCase) -> np.ndarray:
    """Rows (gamma, delta, F) for which the 3x3 candidate with the case's
    corners satisfies E^3 = E away from the (1, 3) entry."""
    def compute():
        T = _t3(R)
        e, f = signed_unit(R, case.e), signed_unit(R, case.f)
        g, d, F = (x.ravel() for x in np.meshgrid(R.elements(), R.elements(), R.elements(),
                                                   indexing="ij"))
        k = len(g)
        digits = np.stack([np.full(k, e), g, np.full(k, R.zero), F, d, np.full(k, f)], axis=1)
        Ei = T.encode_digits(digits)
        cube = T.decode_digits(T.vmul(T.vmul(Ei, Ei), Ei))
        keep = [0, 1, 3, 4, 5]
        ok = (cube[:, keep] == digits[:, keep]).all(axis=1)
        return np.stack([g[ok], d[ok], F[ok]], axis=1)
    return R.cached(("workhorse_frames", case), compute)


def _random_solution(R: FiniteRing, rng, left: int, right: int, target: int) -> int | None:
    # uniform choice among x with left x - x right = target
    els = R.elements()
    sols = np.flatnonzero(R.vadd(R.vmul(left, els), R.vneg(R.vmul(els, right))) == target)
    return int(rng.choice(sols)) if len(sols) else None


def sample_workhorse_configs(R: FiniteRing, case: WorkhorseCase, count: int, seed: int = 0,
                             max_attempts: int | None = None) -> list[tuple[BlockView, BlockView]]:
    """Random n = 3 pairs (A, E) meeting the case hypotheses (E's corner left 0).

    E's off-corner part is drawn from the admissible frames; A's diagonal and
    corner are uniform and its (1,2), (2,3) entries are drawn uniformly from
    the solutions of the commuting equations.
    """
    frames = valid_frames(R, case)
    rng = np.random.default_rng(seed)
    out: list[tuple[BlockView, BlockView]] = []
    if not len(frames):
        return out
    e, f = signed_unit(R, case.e), signed_unit(R, case.f)
    attempts = 0
    limit = max_attempts if max_attempts is not None else 50 * count
    while len(out) < count and attempts < limit:
        attempts += 1
        g, d, F = (int(v) for v in frames[rng.integers(len(frames))])
        a, B, b, c = (int(v) for v in rng.integers(0, R.order, 4))
        if R.mul(B, F) != R.mul(F, B):
            continue
        alpha = _random_solution(R, rng, e, F, R.sub(R.mul(a, g), R.mul(g, B)))
        beta = _random_solution(R, rng, F, f, R.sub(R.mul(B, d), R.mul(d, b)))
        if alpha is None or beta is None:
            continue
        A = BlockView(R, 3, a, [alpha], c, [[B]], [beta], b)
        E = BlockView(R, 3, e, [g], R.zero, [[F]], [d], f)
        out.append((A, E))
    return out


def cube_holds_for_every_corner(E: BlockView) -> bool:
    """E^3 = E for all values of the (1, n) entry (n = 3 only)."""
    R = E.ring
    T = _t3(R)
    base = np.array([E.a, E.alpha[0], R.zero, E.B[0][0], E.beta[0], E.b], dtype=np.int64)
    digits = np.tile(base, (R.order, 1))
    digits[:, 2] = R.elements()
    Ei = T.encode_digits(digits)
    return bool((T.vmul(T.vmul(Ei, Ei), Ei) == Ei).all())


def gamma_f_delta(E: BlockView) -> int:
    return _forms(E.ring, E, E)["gFd"]
