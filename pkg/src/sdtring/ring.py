"""Finite unital rings with canonical integer element indices.

Every ring has elements ``0 .. order-1``.  Arithmetic is vectorized: the
operations accept Python ints (returning ints) or numpy integer arrays
(broadcasting like ufuncs).

Canonical encodings
-------------------
``Z_n``
    index = residue.
product ``R x S``
    index = i_R + |R| * i_S.
digit algebras (``T_n(R)``, ``M_n(R)``, ``T(R,R)``, ``R[x]/(x^m)``)
    mixed radix, base |R| per digit, least-significant digit first, over
    positions in this order:

    * ``T_n``: (1,1),(1,2),...,(1,n),(2,2),...,(2,n),...,(n,n)
    * ``M_n``: row-major (1,1),(1,2),...,(1,n),(2,1),...,(n,n)
    * ``T(R,R)``: (a, v), i.e. index = a + |R| * v
    * ``R[x]/(x^m)``: coefficients c_0, c_1, ..., c_{m-1}
quotients and corners
    the k-th element is the k-th smallest parent index among the chosen
    representatives (smallest index per coset, resp. the set {ere}).
``GF4``
    elements 0, 1, w, w+1 with index = c_0 + 2 c_1, so w = 2 and w^2 = w + 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import (
    AxiomViolation,
    CapExceeded,
    NotAnIdeal,
    NotIdempotent,
    OrderOverflow,
)

DEFAULT_ORDER_CAP = 2**20
DEFAULT_VALIDATION_CAP = 512
# Structured rings at or below this order get cached full operation tables.
AUTO_TABLE_LIMIT = 1024

STRUCTURE_TAGS = (
    "zmod",
    "table",
    "product",
    "upper_triangular",
    "full_matrix",
    "trivial_extension",
    "truncated_poly",
    "quotient",
    "corner",
)

_CHUNK = 1 << 20
# Tables are mirrored as nested lists (fast scalar lookups) only up to this order.
_LIST_TABLE_LIMIT = 256


def _idx(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64)


def _is_scalar(x) -> bool:
    return isinstance(x, (int, np.integer))


def check_order(order: int, max_order: int | None) -> None:
    cap = DEFAULT_ORDER_CAP if max_order is None else max_order
    if order > cap:
        raise OrderOverflow(order, cap)


class FiniteRing:
    """A finite unital ring on the index set ``0 .. order-1``.

    Instances are immutable after construction.  Derived data (tables,
    structural subsets) is cached lazily under a per-ring lock.
    """

    def __init__(
        self,
        order: int,
        add: Callable,
        mul: Callable,
        neg: Callable,
        zero: int,
        one: int,
        structure_tag: str,
        name: str,
        *,
        is_unit_fast: Callable | None = None,
        decode: Callable | None = None,
        encode: Callable | None = None,
        meta: dict | None = None,
        tables: tuple | None = None,
        auto_tables: bool = True,
    ):
        if structure_tag not in STRUCTURE_TAGS:
            raise ValueError(f"unknown structure tag {structure_tag!r}")
        self.order = int(order)
        self.zero_index = int(zero)
        self.one_index = int(one)
        self.structure_tag = structure_tag
        self.name = name
        self.is_unit_fast = is_unit_fast
        self.meta = dict(meta or {})
        self._sadd, self._smul, self._sneg = add, mul, neg
        self._decode = decode
        self._encode = encode
        self._lock = threading.RLock()
        self._cache: dict[Any, Any] = {}
        self._tables: tuple | None = None
        self._lists: tuple | None = None
        self._auto_tables = auto_tables and self.order <= AUTO_TABLE_LIMIT
        if tables is not None:
            self._install_tables(*tables)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name}, order={self.order})"

    # -- element arithmetic -------------------------------------------------

    @property
    def zero(self) -> int:
        return self.zero_index

    @property
    def one(self) -> int:
        return self.one_index

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def _ensure_tables(self) -> bool:
        if self._tables is None and self._auto_tables:
            self._build_tables()
        return self._tables is not None

    def vadd(self, x, y) -> np.ndarray:
        if self._ensure_tables():
            return self._tables[0][x, y]
        return self._sadd(x, y)

    def vmul(self, x, y) -> np.ndarray:
        if self._ensure_tables():
            return self._tables[1][x, y]
        return self._smul(x, y)

    def vneg(self, x) -> np.ndarray:
        if self._ensure_tables():
            return self._tables[2][x]
        return self._sneg(x)

    def add(self, x, y):
        if _is_scalar(x) and _is_scalar(y):
            if self._ensure_tables():
                if self._lists is not None:
                    return self._lists[0][x][y]
                return int(self._tables[0][x, y])
            return int(self._sadd(_idx(x), _idx(y)))
        return self.vadd(_idx(x), _idx(y))

    def mul(self, x, y):
        if _is_scalar(x) and _is_scalar(y):
            if self._ensure_tables():
                if self._lists is not None:
                    return self._lists[1][x][y]
                return int(self._tables[1][x, y])
            return int(self._smul(_idx(x), _idx(y)))
        return self.vmul(_idx(x), _idx(y))

    def neg(self, x):
        if _is_scalar(x):
            if self._ensure_tables():
                if self._lists is not None:
                    return self._lists[2][x]
                return int(self._tables[2][x])
            return int(self._sneg(_idx(x)))
        return self.vneg(_idx(x))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def power(self, x, k: int):
        """x**k for k >= 1 by repeated squaring."""
        if k < 1:
            raise ValueError("exponent must be >= 1")
        result = None
        base = x
        while k:
            if k & 1:
                result = base if result is None else self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def int_elem(self, k: int) -> int:
        """The element k·1 (k may be negative)."""
        acc = self.zero_index
        step = self.one_index if k >= 0 else self.neg(self.one_index)
        for _ in range(abs(k)):
            acc = self.add(acc, step)
        return acc

    def decode(self, i):
        if self._decode is None:
            return int(i)
        return self._decode(int(i))

    def encode(self, value) -> int:
        if self._encode is None:
            return int(value)
        return int(self._encode(value))

    # -- tables -------------------------------------------------------------

    def _install_tables(self, add_t, mul_t, neg_t) -> None:
        add_t = np.asarray(add_t, dtype=np.int64)
        mul_t = np.asarray(mul_t, dtype=np.int64)
        neg_t = np.asarray(neg_t, dtype=np.int64)
        for t in (add_t, mul_t, neg_t):
            t.setflags(write=False)
        self._tables = (add_t, mul_t, neg_t)
        if self.order <= _LIST_TABLE_LIMIT:
            self._lists = (add_t.tolist(), mul_t.tolist(), neg_t.tolist())

    def _build_tables(self) -> None:
        with self._lock:
            if self._tables is not None:
                return
            add_t, mul_t = self._compute_tables()
            self._install_tables(add_t, mul_t, self._sneg(self.elements()))

    def _compute_tables(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.order
        els = self.elements()
        add_t = np.empty((n, n), dtype=np.int64)
        mul_t = np.empty((n, n), dtype=np.int64)
        step = max(1, _CHUNK // max(n, 1))
        for lo in range(0, n, step):
            rows = els[lo:lo + step, None]
            add_t[lo:lo + step] = self._sadd(rows, els[None, :])
            mul_t[lo:lo + step] = self._smul(rows, els[None, :])
        return add_t, mul_t

    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Full (add, mul, neg) tables; computed on demand for any order."""
        if self._tables is not None:
            return self._tables
        if self._auto_tables:
            self._build_tables()
            return self._tables
        add_t, mul_t = self._compute_tables()
        return add_t, mul_t, self._sneg(self.elements())

    # -- caching ------------------------------------------------------------

    def cached(self, key, compute: Callable[[], Any]):
        value = self._cache.get(key)
        if value is not None:
            return value
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]


# -- constructors ----------------------------------------------------------


def make_zmod(n: int, max_order: int | None = None) -> FiniteRing:
    if n < 1:
        raise ValueError("n must be >= 1")
    check_order(n, max_order)
    return FiniteRing(
        n,
        lambda x, y: (x + y) % n,
        lambda x, y: (x * y) % n,
        lambda x: (-x) % n,
        0,
        1 % n,
        "zmod",
        f"Z{n}",
        is_unit_fast=lambda x: np.gcd(_idx(x), n) == 1,
        meta={"n": n},
        auto_tables=False,
    )


def ring_from_tables(order, add_table, mul_table, neg_table, zero_index, one_index,
                     *, name: str = "table", structure_tag: str = "table",
                     meta: dict | None = None) -> FiniteRing:
    """Wrap explicit tables as a ring without validating them."""
    add_t = np.asarray(add_table, dtype=np.int64).reshape(order, order)
    mul_t = np.asarray(mul_table, dtype=np.int64).reshape(order, order)
    neg_t = np.asarray(neg_table, dtype=np.int64).reshape(order)
    return FiniteRing(
        order,
        lambda x, y: add_t[x, y],
        lambda x, y: mul_t[x, y],
        lambda x: neg_t[x],
        zero_index,
        one_index,
        structure_tag,
        name,
        meta=meta,
        tables=(add_t, mul_t, neg_t),
    )


def make_table_ring(order, add_table, mul_table, neg_table, zero_index, one_index,
                    *, name: str = "table", cap: int = DEFAULT_VALIDATION_CAP) -> FiniteRing:
    """Build a ring from explicit tables; raises AxiomViolation on bad tables."""
    try:
        R = ring_from_tables(order, add_table, mul_table, neg_table, zero_index, one_index,
                             name=name)
    except ValueError as exc:
        raise AxiomViolation("shape", (order,)) from exc
    report = validate_ring(R, cap=cap, mode="exhaustive")
    failure = report.first_failure()
    if failure is not None:
        raise AxiomViolation(failure.axiom, failure.counterexample)
    return R


GF4_ADD = [[a ^ b for b in range(4)] for a in range(4)]


def _gf4_mul(a: int, b: int) -> int:
    # carry-less product reduced by w^2 = w + 1
    p = 0
    for k in range(2):
        if (b >> k) & 1:
            p ^= a << k
    if p & 4:
        p ^= 0b111
    return p


GF4_MUL = [[_gf4_mul(a, b) for b in range(4)] for a in range(4)]
GF4_NEG = [0, 1, 2, 3]


def make_gf4() -> FiniteRing:
    return make_table_ring(4, GF4_ADD, GF4_MUL, GF4_NEG, 0, 1, name="GF4")


def make_product(R: FiniteRing, S: FiniteRing, max_order: int | None = None) -> FiniteRing:
    m = R.order
    order = m * S.order
    check_order(order, max_order)

    def split(x):
        return x % m, x // m

    def add(x, y):
        (xr, xs), (yr, ys) = split(x), split(y)
        return R.vadd(xr, yr) + m * S.vadd(xs, ys)

    def mul(x, y):
        (xr, xs), (yr, ys) = split(x), split(y)
        return R.vmul(xr, yr) + m * S.vmul(xs, ys)

    def neg(x):
        xr, xs = split(x)
        return R.vneg(xr) + m * S.vneg(xs)

    def is_unit(x):
        from .invariants import units
        xr, xs = split(_idx(x))
        return units(R).mask[xr] & units(S).mask[xs]

    return FiniteRing(
        order, add, mul, neg,
        R.zero + m * S.zero, R.one + m * S.one,
        "product", f"{_paren_product(R.name)} x {_paren_right(S.name)}",
        is_unit_fast=is_unit,
        decode=lambda i: (i % m, i // m),
        encode=lambda v: v[0] + m * v[1],
        meta={"factors": (R, S)},
    )


def _paren_product(name: str) -> str:
    return name


def _paren_right(name: str) -> str:
    return f"({name})" if " x " in name else name


def _digit_algebra(base: FiniteRing, positions: list, triples: list, tag: str, name: str,
                   max_order: int | None, is_unit=None, meta=None) -> FiniteRing:
    """Ring of k-tuples over ``base`` with a bilinear product.

    ``triples`` lists (s, u, t): digit s of the left factor times digit u of
    the right factor contributes to digit t of the product.
    """
    q = base.order
    k = len(positions)
    order = q ** k
    check_order(order, max_order)
    weights = np.array([q ** i for i in range(k)], dtype=np.int64)
    by_target: dict[int, list[tuple[int, int]]] = {}
    for s, u, t in triples:
        by_target.setdefault(t, []).append((s, u))

    def decode_arr(x):
        return (_idx(x)[..., None] // weights) % q

    def encode_arr(d):
        return (d * weights).sum(axis=-1)

    def add(x, y):
        return encode_arr(base.vadd(decode_arr(x), decode_arr(y)))

    def neg(x):
        return encode_arr(base.vneg(decode_arr(x)))

    def mul(x, y):
        dx, dy = decode_arr(x), decode_arr(y)
        shape = np.broadcast_shapes(dx.shape, dy.shape)
        out = np.full(shape, base.zero, dtype=np.int64)
        for t, pairs in by_target.items():
            acc = None
            for s, u in pairs:
                term = base.vmul(dx[..., s], dy[..., u])
                acc = term if acc is None else base.vadd(acc, term)
            out[..., t] = acc
        return encode_arr(out)

    def one_digits():
        return [base.zero] * k

    info = dict(meta or {})
    info.update(base=base, positions=positions, digit_weights=weights)
    one = info.pop("one_digits", one_digits())
    ring = FiniteRing(
        order, add, mul, neg,
        0 if base.zero == 0 else int(encode_arr(np.full(k, base.zero))),
        int(encode_arr(np.array(one, dtype=np.int64))),
        tag, name,
        is_unit_fast=None,
        meta=info,
    )
    ring._decode = lambda i: tuple(int(d) for d in decode_arr(i))
    ring._encode = lambda digits: int(encode_arr(np.array(digits, dtype=np.int64)))
    ring.decode_digits = decode_arr
    ring.encode_digits = encode_arr
    if is_unit is not None:
        ring.is_unit_fast = lambda x: is_unit(decode_arr(x))
    return ring


@dataclass(frozen=True)
class TriangularElement:
    """An upper-triangular matrix over ``base_ring`` given by its entries.

    ``entries`` maps 1-based positions (i, j), i <= j, to base indices.
    """

    base_ring: FiniteRing = field(compare=False)
    n: int
    entries: dict = field(hash=False)

    def __post_init__(self):
        if len(self.entries) != self.n * (self.n + 1) // 2:
            raise ValueError("a triangular element needs n(n+1)/2 entries")

    @staticmethod
    def positions(n: int) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]

    def matrix(self) -> list[list[int]]:
        z = self.base_ring.zero
        return [[self.entries[(i, j)] if j >= i else z for j in range(1, self.n + 1)]
                for i in range(1, self.n + 1)]

    def index(self) -> int:
        q = self.base_ring.order
        return sum(self.entries[p] * q ** k for k, p in enumerate(self.positions(self.n)))

    @classmethod
    def from_index(cls, base: FiniteRing, n: int, index: int) -> "TriangularElement":
        q = base.order
        entries = {}
        for p in cls.positions(n):
            entries[p] = index % q
            index //= q
        return cls(base, n, entries)

    @classmethod
    def from_matrix(cls, base: FiniteRing, rows) -> "TriangularElement":
        n = len(rows)
        return cls(base, n, {(i, j): int(rows[i - 1][j - 1]) for i, j in cls.positions(n)})


def make_upper_triangular(R: FiniteRing, n: int, max_order: int | None = None) -> FiniteRing:
    if n < 1:
        raise ValueError("n must be >= 1")
    positions = TriangularElement.positions(n)
    pos = {p: k for k, p in enumerate(positions)}
    triples = [(pos[(i, l)], pos[(l, j)], pos[(i, j)])
               for (i, j) in positions for l in range(i, j + 1)]
    diag = [pos[(i, i)] for i in range(1, n + 1)]
    one = [R.one if i == j else R.zero for (i, j) in positions]

    def is_unit(d):
        from .invariants import units
        mask = units(R).mask
        ok = np.ones(d.shape[:-1], dtype=bool)
        for k in diag:
            ok &= mask[d[..., k]]
        return ok

    T = _digit_algebra(R, positions, triples, "upper_triangular", f"T{n}({R.name})",
                       max_order, is_unit=is_unit,
                       meta={"n": n, "one_digits": one, "diagonal_digits": diag})
    T._decode = lambda i: TriangularElement.from_index(R, n, int(i))
    T._encode = lambda v: (v.index() if isinstance(v, TriangularElement)
                           else TriangularElement.from_matrix(R, v).index())
    return T


def make_full_matrix(R: FiniteRing, n: int, max_order: int | None = None) -> FiniteRing:
    if n < 1:
        raise ValueError("n must be >= 1")
    positions = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    pos = {p: k for k, p in enumerate(positions)}
    triples = [(pos[(i, l)], pos[(l, j)], pos[(i, j)])
               for (i, j) in positions for l in range(1, n + 1)]
    one = [R.one if i == j else R.zero for (i, j) in positions]
    M = _digit_algebra(R, positions, triples, "full_matrix", f"M{n}({R.name})", max_order,
                       meta={"n": n, "one_digits": one})
    base_decode = M._decode
    M._decode = lambda i: tuple(tuple(row) for row in
                                np.array(base_decode(i)).reshape(n, n).tolist())
    M._encode = lambda rows: int(M.encode_digits(np.array(rows, dtype=np.int64).reshape(-1)))
    return M


def make_trivial_extension(R: FiniteRing, max_order: int | None = None) -> FiniteRing:
    # digit 0 = a, digit 1 = v; (a,v)(a',v') = (aa', av' + va')
    triples = [(0, 0, 0), (0, 1, 1), (1, 0, 1)]

    def is_unit(d):
        from .invariants import units
        return units(R).mask[d[..., 0]]

    return _digit_algebra(R, ["a", "v"], triples, "trivial_extension", f"TE({R.name})",
                          max_order, is_unit=is_unit,
                          meta={"one_digits": [R.one, R.zero]})


def make_truncated_poly(R: FiniteRing, m: int, max_order: int | None = None) -> FiniteRing:
    if m < 1:
        raise ValueError("m must be >= 1")
    triples = [(s, u, s + u) for s in range(m) for u in range(m) if s + u < m]

    def is_unit(d):
        from .invariants import units
        return units(R).mask[d[..., 0]]

    return _digit_algebra(R, [f"x^{k}" for k in range(m)], triples, "truncated_poly",
                          f"P{m}({R.name})", max_order, is_unit=is_unit,
                          meta={"m": m, "one_digits": [R.one] + [R.zero] * (m - 1)})


def _as_mask(R: FiniteRing, subset) -> np.ndarray:
    mask = getattr(subset, "mask", None)
    if mask is not None:
        return np.asarray(mask, dtype=bool)
    arr = np.asarray(subset)
    if arr.dtype == bool and arr.shape == (R.order,):
        return arr.copy()
    mask = np.zeros(R.order, dtype=bool)
    mask[_idx(list(subset) if not isinstance(subset, np.ndarray) else subset)] = True
    return mask


def ideal_violation(R: FiniteRing, mask: np.ndarray) -> tuple[str, tuple] | None:
    """First failure of the two-sided ideal axioms for the subset ``mask``."""
    members = np.flatnonzero(mask)
    if not mask[R.zero]:
        return "zero", (R.zero, R.zero)
    negs = R.vneg(members)
    bad = ~mask[negs]
    if bad.any():
        i = members[bad.argmax()]
        return "negation", (i, i)
    els = R.elements()
    for i in members:
        sums = R.vadd(i, members)
        bad = ~mask[sums]
        if bad.any():
            return "addition", (i, members[bad.argmax()])
        left = R.vmul(els, i)
        bad = ~mask[left]
        if bad.any():
            return "left-multiple", (els[bad.argmax()], i)
        right = R.vmul(i, els)
        bad = ~mask[right]
        if bad.any():
            return "right-multiple", (i, els[bad.argmax()])
    return None


# pairs at or below this count get the literal pairwise well-definedness check
_QUOTIENT_PAIRWISE_LIMIT = 1 << 22


def make_quotient(R: FiniteRing, I, name: str | None = None) -> tuple[FiniteRing, np.ndarray]:
    """The coset ring R/I and the projection array (parent index -> quotient index)."""
    mask = _as_mask(R, I)
    problem = ideal_violation(R, mask)
    if problem is not None:
        raise NotAnIdeal(*problem)
    members = np.flatnonzero(mask)
    els = R.elements()
    rep = els.copy()
    for i in members:
        np.minimum(rep, R.vadd(els, i), out=rep)
    reps = np.unique(rep)
    proj = np.searchsorted(reps, rep)
    k = len(reps)
    add_t = proj[R.vadd(reps[:, None], reps[None, :])]
    mul_t = proj[R.vmul(reps[:, None], reps[None, :])]
    neg_t = proj[R.vneg(reps)]
    if R.order ** 2 <= _QUOTIENT_PAIRWISE_LIMIT:
        _check_projection(R, proj, add_t, mul_t)
    if mask.all() and k != 1:
        raise AssertionError("quotient by R must be the zero ring")
    Q = ring_from_tables(k, add_t, mul_t, neg_t, proj[R.zero], proj[R.one],
                         name=name or f"{R.name}/I", structure_tag="quotient",
                         meta={"parent": R, "representatives": reps, "projection": proj})
    return Q, proj


def _check_projection(R: FiniteRing, proj, add_t, mul_t) -> None:
    els = R.elements()
    step = max(1, _CHUNK // max(R.order, 1))
    for lo in range(0, R.order, step):
        x = els[lo:lo + step, None]
        px = proj[x]
        py = proj[els][None, :]
        if not (proj[R.vadd(x, els[None, :])] == add_t[px, py]).all():
            raise AssertionError("coset addition is not well defined")
        if not (proj[R.vmul(x, els[None, :])] == mul_t[px, py]).all():
            raise AssertionError("coset multiplication is not well defined")


def make_corner(R: FiniteRing, e: int) -> FiniteRing:
    """The corner ring eRe for an idempotent e; identity is e."""
    e = int(e)
    if R.mul(e, e) != e:
        raise NotIdempotent(f"element {e} of {R.name} is not idempotent")
    if e == R.one:
        return R
    els = R.elements()
    members = np.unique(R.vmul(R.vmul(e, els), e))
    lookup = np.full(R.order, -1, dtype=np.int64)
    lookup[members] = np.arange(len(members))
    add_t = lookup[R.vadd(members[:, None], members[None, :])]
    mul_t = lookup[R.vmul(members[:, None], members[None, :])]
    neg_t = lookup[R.vneg(members)]
    if (add_t < 0).any() or (mul_t < 0).any() or (neg_t < 0).any():
        raise AssertionError("eRe is not closed under the ring operations")
    return ring_from_tables(len(members), add_t, mul_t, neg_t, lookup[R.zero], lookup[e],
                            name=f"{R.name}[e={e}]", structure_tag="corner",
                            meta={"parent": R, "idempotent": e, "embedding": members})


# -- validation ------------------------------------------------------------

AXIOMS = (
    "closure",
    "abelian-add",
    "add-identity",
    "add-inverse",
    "add-assoc",
    "mul-identity",
    "mul-assoc",
    "left-distrib",
    "right-distrib",
    "one-nonzero",
)


@dataclass
class AxiomCheck:
    axiom: str
    passed: bool
    counterexample: tuple = ()


@dataclass
class ValidationReport:
    ring: str
    mode: str
    checks: list[AxiomCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> AxiomCheck | None:
        return next((c for c in self.checks if not c.passed), None)

    def get(self, axiom: str) -> AxiomCheck:
        return next(c for c in self.checks if c.axiom == axiom)


def _first_true(mask: np.ndarray):
    return np.unravel_index(int(mask.argmax()), mask.shape) if mask.any() else None


def _exhaustive_checks(R: FiniteRing) -> list[AxiomCheck]:
    n = R.order
    A, M, N = R.tables()
    idx = np.arange(n)
    checks = []

    def record(axiom, bad, prefix=()):
        where = _first_true(bad) if bad is not None else None
        checks.append(AxiomCheck(axiom, where is None,
                                 () if where is None else tuple(prefix) + tuple(int(w) for w in where)))

    in_range = ((A >= 0) & (A < n)).all() and ((M >= 0) & (M < n)).all() \
        and ((N >= 0) & (N < n)).all() and 0 <= R.zero < n and 0 <= R.one < n
    if not in_range:
        bad = (A < 0) | (A >= n) | (M < 0) | (M >= n)
        checks.append(AxiomCheck("closure", False,
                                 tuple(int(w) for w in _first_true(bad)) if bad.any() else ()))
        return checks
    record("closure", None)
    record("abelian-add", np.triu(A != A.T, 1))
    record("add-identity", (A[R.zero] != idx) | (A[:, R.zero] != idx))
    record("add-inverse", A[idx, N] != R.zero)

    def scan(axiom, check):
        for a in range(n):
            bad = check(a)
            if bad.any():
                where = tuple(int(w) for w in _first_true(bad))
                checks.append(AxiomCheck(axiom, False, (a,) + where))
                return
        checks.append(AxiomCheck(axiom, True))

    scan("add-assoc", lambda a: A[A[a]] != A[a][A])
    record("mul-identity", (M[R.one] != idx) | (M[:, R.one] != idx))
    scan("mul-assoc", lambda a: M[M[a]] != M[a][M])
    scan("left-distrib", lambda a: M[a][A] != A[M[a][:, None], M[a][None, :]])
    scan("right-distrib", lambda a: M[A, a] != A[M[:, a][:, None], M[:, a][None, :]])
    checks.append(AxiomCheck("one-nonzero", n == 1 or R.one != R.zero,
                             () if n == 1 or R.one != R.zero else (R.one,)))
    return checks


def _sampled_checks(R: FiniteRing, samples: int, seed: int) -> list[AxiomCheck]:
    rng = np.random.default_rng(seed)
    x, y, z = (rng.integers(0, R.order, samples) for _ in range(3))
    checks = []

    def record(axiom, bad, *cols):
        if bad.any():
            k = int(bad.argmax())
            checks.append(AxiomCheck(axiom, False, tuple(int(c[k]) for c in cols)))
        else:
            checks.append(AxiomCheck(axiom, True))

    add, mul, neg = R.vadd, R.vmul, R.vneg
    record("abelian-add", add(x, y) != add(y, x), x, y)
    record("add-identity", add(x, R.zero) != x, x)
    record("add-inverse", add(x, neg(x)) != R.zero, x)
    record("add-assoc", add(add(x, y), z) != add(x, add(y, z)), x, y, z)
    record("mul-identity", (mul(x, R.one) != x) | (mul(R.one, x) != x), x)
    record("mul-assoc", mul(mul(x, y), z) != mul(x, mul(y, z)), x, y, z)
    record("left-distrib", mul(x, add(y, z)) != add(mul(x, y), mul(x, z)), x, y, z)
    record("right-distrib", mul(add(y, z), x) != add(mul(y, x), mul(z, x)), x, y, z)
    checks.append(AxiomCheck("one-nonzero", R.order == 1 or R.one != R.zero))
    return checks


def brute_force_is_unit(R: FiniteRing, u: int) -> bool:
    els = R.elements()
    return bool(((R.vmul(u, els) == R.one) & (R.vmul(els, u) == R.one)).any())


def validate_ring(R: FiniteRing, cap: int = DEFAULT_VALIDATION_CAP, mode: str = "auto",
                  samples: int = 4000, seed: int = 0) -> ValidationReport:
    """Check the ring axioms and any fast unit predicate.

    ``mode`` is ``"exhaustive"`` (cubic loops, needs order <= cap),
    ``"sampled"`` (random triples), or ``"auto"`` (exhaustive when within the
    cap, sampled for structured rings above it).
    """
    structured = R.structure_tag not in ("table", "quotient", "corner")
    if mode == "auto":
        mode = "exhaustive" if R.order <= cap else "sampled"
        if mode == "sampled" and not structured:
            raise CapExceeded(f"{R.name} has order {R.order} > validation cap {cap}")
    if mode == "exhaustive" and R.order > cap:
        raise CapExceeded(f"{R.name} has order {R.order} > validation cap {cap}")
    if mode == "exhaustive":
        checks = _exhaustive_checks(R)
    elif mode == "sampled":
        checks = _sampled_checks(R, samples, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if R.is_unit_fast is not None and all(c.passed for c in checks):
        if R.order <= cap:
            probe = R.elements()
        else:
            probe = np.random.default_rng(seed).integers(0, R.order, min(samples, 256))
        fast = np.asarray(R.is_unit_fast(probe), dtype=bool)
        bad = [int(u) for u, f in zip(probe, fast) if f != brute_force_is_unit(R, int(u))]
        checks.append(AxiomCheck("fast-units", not bad, tuple(bad[:1])))
    return ValidationReport(R.name, mode, checks)


def encode_roundtrip_ok(R: FiniteRing) -> bool:
    return all(R.encode(R.decode(i)) == i for i in range(R.order))


