"""Structural subsets of a finite ring.

All scans are vectorized over element indices.  Universally quantified
definitions ("x such that P(x, r) for every r") are evaluated by filtering:
the candidate set shrinks chunk by chunk, so the cost is driven by the
survivors rather than by order**2.
"""

from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from .errors import InternalInvariant
from .ring import FiniteRing, ideal_violation

_BUDGET = 1 << 21

SET_KEYS = ("units", "jacobson", "delta", "nilpotents", "idempotents", "tripotents", "center")


class ElementSubset:
    """A set of element indices of one ring, stored as a boolean mask."""

    def __init__(self, ring: FiniteRing, mask, label: str = "custom"):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (ring.order,):
            raise ValueError("mask length must equal the ring order")
        mask.setflags(write=False)
        self.ring = ring
        self.mask = mask
        self.label = label

    @classmethod
    def from_indices(cls, ring: FiniteRing, indices: Iterable[int], label: str = "custom"):
        mask = np.zeros(ring.order, dtype=bool)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size:
            mask[idx] = True
        return cls(ring, mask, label)

    @property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def to_list(self) -> list[int]:
        return [int(i) for i in self.members]

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __iter__(self):
        return iter(self.to_list())

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSubset):
            return NotImplemented
        return other.ring is self.ring and bool((other.mask == self.mask).all())

    def __repr__(self) -> str:
        return f"ElementSubset({self.label}, {self.to_list()[:12]}{'...' if len(self) > 12 else ''})"

    def _same_ring(self, other: "ElementSubset") -> None:
        if other.ring is not self.ring:
            raise ValueError("subsets belong to different rings")

    def union(self, other: "ElementSubset") -> "ElementSubset":
        self._same_ring(other)
        return ElementSubset(self.ring, self.mask | other.mask)

    def intersection(self, other: "ElementSubset") -> "ElementSubset":
        self._same_ring(other)
        return ElementSubset(self.ring, self.mask & other.mask)

    def complement(self) -> "ElementSubset":
        return ElementSubset(self.ring, ~self.mask)

    def issubset(self, other: "ElementSubset") -> bool:
        self._same_ring(other)
        return not (self.mask & ~other.mask).any()

    def sumset(self, other: "ElementSubset") -> "ElementSubset":
        self._same_ring(other)
        R = self.ring
        out = np.zeros(R.order, dtype=bool)
        b = other.members
        for chunk in _chunks(self.members, len(b)):
            out[R.vadd(chunk[:, None], b[None, :])] = True
        return ElementSubset(R, out)

    def is_full(self) -> bool:
        return bool(self.mask.all())


def _chunks(arr: np.ndarray, width: int):
    step = max(1, _BUDGET // max(width, 1))
    for lo in range(0, len(arr), step):
        yield arr[lo:lo + step]


def _forall(R: FiniteRing, quantified: np.ndarray,
            holds: Callable[[np.ndarray, np.ndarray], np.ndarray],
            candidates: np.ndarray | None = None) -> np.ndarray:
    """Mask of candidates x with ``holds(x, q)`` true for every q in ``quantified``.

    ``holds`` receives x with shape (1, c) and q with shape (k, 1).
    """
    cand = R.elements() if candidates is None else np.asarray(candidates, dtype=np.int64)
    lo = 0
    while lo < len(quantified) and len(cand):
        step = max(1, _BUDGET // len(cand))
        q = quantified[lo:lo + step]
        ok = np.asarray(holds(cand[None, :], q[:, None])).all(axis=0)
        cand = cand[ok]
        lo += step
    mask = np.zeros(R.order, dtype=bool)
    mask[cand] = True
    return mask


def units_bruteforce(R: FiniteRing) -> ElementSubset:
    """Units by an explicit two-sided inverse scan, ignoring fast predicates."""
    els = R.elements()
    found = np.zeros(R.order, dtype=bool)
    for chunk in _chunks(els, R.order):
        right = R.vmul(chunk[:, None], els[None, :]) == R.one
        left = R.vmul(els[None, :], chunk[:, None]) == R.one
        found[chunk] = (right & left).any(axis=1)
    return ElementSubset(R, found, "units")


def units(R: FiniteRing) -> ElementSubset:
    def compute():
        if R.is_unit_fast is not None:
            return ElementSubset(R, np.asarray(R.is_unit_fast(R.elements()), dtype=bool), "units")
        return units_bruteforce(R)
    return R.cached("units", compute)


def _one_minus(R: FiniteRing, x):
    return R.vadd(R.one, R.vneg(x))


def jacobson_radical(R: FiniteRing) -> ElementSubset:
    """{x : 1 - r x is a unit for every r}, checked to be a two-sided ideal."""
    def compute():
        U = units(R).mask
        mask = _forall(R, R.elements(), lambda x, r: U[_one_minus(R, R.vmul(r, x))])
        problem = ideal_violation(R, mask)
        if problem is not None:
            raise InternalInvariant(f"J({R.name}) failed the ideal check: {problem}")
        return ElementSubset(R, mask, "jacobson")
    return R.cached("jacobson", compute)


def delta(R: FiniteRing) -> ElementSubset:
    """{x : x + u is a unit for every unit u}."""
    def compute():
        U = units(R)
        return ElementSubset(R, _forall(R, U.members, lambda x, u: U.mask[R.vadd(x, u)]), "delta")
    return R.cached("delta", compute)


def delta_alt1(R: FiniteRing) -> ElementSubset:
    """{x : 1 - x u is a unit for every unit u}."""
    def compute():
        U = units(R)
        mask = _forall(R, U.members, lambda x, u: U.mask[_one_minus(R, R.vmul(x, u))])
        return ElementSubset(R, mask, "delta")
    return R.cached("delta_alt1", compute)


def delta_alt2(R: FiniteRing) -> ElementSubset:
    """{x : 1 - u x is a unit for every unit u}."""
    def compute():
        U = units(R)
        mask = _forall(R, U.members, lambda x, u: U.mask[_one_minus(R, R.vmul(u, x))])
        return ElementSubset(R, mask, "delta")
    return R.cached("delta_alt2", compute)


def nilpotents(R: FiniteRing) -> ElementSubset:
    # x^k = 0 for some k <= order  iff  x^(2^m) = 0 once 2^m >= order
    def compute():
        p = R.elements()
        reach = 1
        while reach < R.order:
            p = R.vmul(p, p)
            reach *= 2
        return ElementSubset(R, p == R.zero, "nilpotents")
    return R.cached("nilpotents", compute)


def potents(R: FiniteRing, n: int) -> ElementSubset:
    """{x : x^n = x}; n = 2 gives the idempotents, n = 3 the tripotents."""
    if n < 2:
        raise ValueError("n must be >= 2")

    def compute():
        els = R.elements()
        return ElementSubset(R, R.power(els, n) == els, f"potents({n})")
    return R.cached(("potents", n), compute)


def idempotents(R: FiniteRing) -> ElementSubset:
    return potents(R, 2)


def tripotents(R: FiniteRing) -> ElementSubset:
    return potents(R, 3)


def center(R: FiniteRing) -> ElementSubset:
    def compute():
        mask = _forall(R, R.elements(), lambda z, r: R.vmul(z, r) == R.vmul(r, z))
        return ElementSubset(R, mask, "center")
    return R.cached("center", compute)


def additive_closure(R: FiniteRing, mask: np.ndarray) -> np.ndarray:
    """The additive subgroup generated by ``mask``."""
    group = np.zeros(R.order, dtype=bool)
    group[R.zero] = True
    for g in np.flatnonzero(mask):
        if group[g]:
            continue
        # group + <g>
        members = np.flatnonzero(group)
        cyclic = [R.zero]
        x = int(g)
        while x != R.zero:
            cyclic.append(x)
            x = R.add(x, int(g))
        cyc = np.asarray(cyclic, dtype=np.int64)
        for chunk in _chunks(members, len(cyc)):
            group[R.vadd(chunk[:, None], cyc[None, :])] = True
    return group


def ideal_generated_by(R: FiniteRing, S) -> ElementSubset:
    """Smallest two-sided ideal containing S, by closure iteration."""
    mask = np.zeros(R.order, dtype=bool)
    mask[R.zero] = True
    seeds = S.members if isinstance(S, ElementSubset) else np.asarray(list(S), dtype=np.int64)
    if len(seeds):
        mask[seeds] = True
    els = R.elements()
    while True:
        members = np.flatnonzero(mask)
        grown = mask.copy()
        for chunk in _chunks(members, R.order):
            grown[R.vmul(els[None, :], chunk[:, None])] = True
            grown[R.vmul(chunk[:, None], els[None, :])] = True
        grown = additive_closure(R, grown)
        if (grown == mask).all():
            return ElementSubset(R, mask, "ideal")
        mask = grown


def lr_image(R: FiniteRing, a: int, b: int) -> ElementSubset:
    """Image of x -> a x - x b."""
    els = R.elements()
    image = R.vadd(R.vmul(a, els), R.vneg(R.vmul(els, b)))
    mask = np.zeros(R.order, dtype=bool)
    mask[image] = True
    return ElementSubset(R, mask, "image")


def left_annihilator(R: FiniteRing, a: int) -> ElementSubset:
    return ElementSubset(R, R.vmul(R.elements(), a) == R.zero, "custom")


def right_annihilator(R: FiniteRing, a: int) -> ElementSubset:
    return ElementSubset(R, R.vmul(a, R.elements()) == R.zero, "custom")


def jacobson_nilpotency_index(R: FiniteRing) -> int:
    """Smallest k with J^k = 0; raises InternalInvariant if none k <= order exists."""
    def compute():
        J = jacobson_radical(R).members
        power = jacobson_radical(R).mask.copy()
        k = 1
        while power.sum() > 1:
            if k > R.order:
                raise InternalInvariant(f"J({R.name}) is not nilpotent")
            members = np.flatnonzero(power)
            products = np.zeros(R.order, dtype=bool)
            for chunk in _chunks(members, len(J)):
                products[R.vmul(chunk[:, None], J[None, :])] = True
            power = additive_closure(R, products)
            k += 1
        return k
    return R.cached("jacobson_nilpotency", compute)


def structural_sets(R: FiniteRing, names: Iterable[str] = SET_KEYS) -> dict[str, list[int]]:
    """Sorted index lists keyed as in the JSON interface."""
    getters = {
        "units": units,
        "jacobson": jacobson_radical,
        "delta": delta,
        "nilpotents": nilpotents,
        "idempotents": idempotents,
        "tripotents": tripotents,
        "center": center,
    }
    return {name: getters[name](R).to_list() for name in names}
