"""Ring-class membership tests built on one sum-decomposition engine.

Every "each element is p + q with p in P, q in Q (commuting)" definition is
an instance of :func:`sum_decomposition`; the remaining predicates are
direct structural scans.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ImplicationViolation
from .invariants import (
    ElementSubset,
    center,
    delta,
    idempotents,
    jacobson_nilpotency_index,
    jacobson_radical,
    lr_image,
    nilpotents,
    potents,
    tripotents,
    units,
)
from .ring import FiniteRing


@dataclass
class WitnessTable:
    """Per-element witnesses (p, q) with a = p + q; -1 marks "no witness"."""

    ring: FiniteRing
    p: np.ndarray
    q: np.ndarray
    p_label: str
    q_label: str
    commute: bool

    @property
    def complete(self) -> bool:
        return bool((self.p >= 0).all())

    def witness(self, a: int) -> tuple[int, int] | None:
        if self.p[a] < 0:
            return None
        return int(self.p[a]), int(self.q[a])

    def first_missing(self) -> int | None:
        missing = np.flatnonzero(self.p < 0)
        return int(missing[0]) if len(missing) else None

    def to_json(self) -> dict[str, list[int]]:
        return {str(a): [int(self.p[a]), int(self.q[a])]
                for a in range(self.ring.order) if self.p[a] >= 0}


def sum_decomposition(R: FiniteRing, P: ElementSubset, Q: ElementSubset,
                      commute: bool) -> WitnessTable:
    """For each a, the first p in P (by index) with a - p in Q (and p, a - p commuting)."""
    n = R.order
    wp = np.full(n, -1, dtype=np.int64)
    wq = np.full(n, -1, dtype=np.int64)
    pending = R.elements()
    for p in P.members:
        if not len(pending):
            break
        q = R.vadd(pending, R.vneg(p))
        ok = Q.mask[q]
        if commute and ok.any():
            sel = np.flatnonzero(ok)
            ok[sel] = R.vmul(p, q[sel]) == R.vmul(q[sel], p)
        if ok.any():
            wp[pending[ok]] = p
            wq[pending[ok]] = q[ok]
            pending = pending[~ok]
    return WitnessTable(R, wp, wq, P.label, Q.label, commute)


def count_decompositions(R: FiniteRing, P: ElementSubset, Q: ElementSubset,
                         commute: bool) -> np.ndarray:
    """Number of pairs (p, q) in P x Q with p + q = a, per element a."""
    counts = np.zeros(R.order, dtype=np.int64)
    els = R.elements()
    for p in P.members:
        q = R.vadd(els, R.vneg(p))
        ok = Q.mask[q]
        if commute:
            ok &= R.vmul(p, q) == R.vmul(q, p)
        counts += ok
    return counts


def is_sdt(R: FiniteRing) -> tuple[bool, WitnessTable]:
    table = R.cached("sdt", lambda: sum_decomposition(R, tripotents(R), delta(R), True))
    return table.complete, table


def is_sdi(R: FiniteRing) -> tuple[bool, WitnessTable]:
    table = R.cached("sdi", lambda: sum_decomposition(R, idempotents(R), delta(R), True))
    return table.complete, table


def is_semi_tripotent(R: FiniteRing) -> bool:
    return R.cached("semi_tripotent", lambda: sum_decomposition(
        R, tripotents(R), jacobson_radical(R), False)).complete


def is_strongly_delta_npotent(R: FiniteRing, n: int) -> bool:
    if n < 2:
        raise ValueError("n must be >= 2")
    return R.cached(("sdnp", n), lambda: sum_decomposition(
        R, potents(R, n), delta(R), True)).complete


def is_c_delta(R: FiniteRing) -> bool:
    return R.cached("c_delta", lambda: sum_decomposition(
        R, center(R), delta(R), False)).complete


def clean_family(R: FiniteRing) -> dict[str, bool]:
    Id, U = idempotents(R), units(R)
    clean_counts = count_decompositions(R, Id, U, False)
    return {
        "clean": bool((clean_counts >= 1).all()),
        "uniquely_clean": bool((clean_counts == 1).all()),
        "strongly_nil_clean": sum_decomposition(R, Id, nilpotents(R), True).complete,
        "strongly_2_nil_clean": sum_decomposition(R, tripotents(R), nilpotents(R), True).complete,
        "strongly_j_clean": sum_decomposition(R, Id, jacobson_radical(R), True).complete,
    }


def is_boolean(R: FiniteRing) -> bool:
    return potents(R, 2).is_full()


def is_tripotent_ring(R: FiniteRing) -> bool:
    return potents(R, 3).is_full()


def is_yaqub(R: FiniteRing) -> bool:
    """Non-zero tripotent ring in which 3 is nilpotent."""
    return R.order > 1 and is_tripotent_ring(R) and R.int_elem(3) in nilpotents(R)


def is_local(R: FiniteRing) -> bool:
    # local rings are non-zero by convention
    return R.order > 1 and units(R).union(jacobson_radical(R)).is_full()


def is_bleached(R: FiniteRing) -> bool:
    """Local, and l_a - r_b, l_b - r_a are onto for every unit a and radical b."""
    if not is_local(R):
        return False

    def compute():
        for a in units(R).members:
            for b in jacobson_radical(R).members:
                if not lr_image(R, int(a), int(b)).is_full():
                    return False
                if not lr_image(R, int(b), int(a)).is_full():
                    return False
        return True
    return R.cached("bleached", compute)


def is_domain(R: FiniteRing) -> bool:
    if R.order == 1:
        return False
    nonzero = np.flatnonzero(R.elements() != R.zero)
    for x in nonzero:
        if (R.vmul(int(x), nonzero) == R.zero).any():
            return False
    return True


def is_reduced(R: FiniteRing) -> bool:
    return len(nilpotents(R)) == 1


def is_delta_u(R: FiniteRing) -> bool:
    shifted = ElementSubset.from_indices(R, R.vadd(R.one, delta(R).members))
    return shifted == units(R)


def is_two_primal(R: FiniteRing) -> bool:
    # For finite rings the lower nilradical is J(R); J^k = 0 is asserted on the way.
    jacobson_nilpotency_index(R)
    return nilpotents(R) == jacobson_radical(R)


def delta_shift_surjectivity(R: FiniteRing) -> bool:
    """l_a - r_b is onto for all a in 1 + Delta(R), b in -1 + Delta(R)."""
    D = delta(R).members
    left = np.unique(R.vadd(R.one, D))
    right = np.unique(R.vadd(R.neg(R.one), D))
    return all(lr_image(R, int(a), int(b)).is_full() for a in left for b in right)


def idempotents_central(R: FiniteRing) -> bool:
    return idempotents(R).issubset(center(R))


def residue_class_order(R: FiniteRing) -> int:
    """|R / J(R)|."""
    return R.order // len(jacobson_radical(R))


def locate(R: FiniteRing, x: int) -> str:
    if x in units(R):
        return "U"
    if x in jacobson_radical(R):
        return "J"
    return "neither"


def char_data(R: FiniteRing) -> dict:
    J = jacobson_radical(R)
    data = {}
    orders = {}
    for k, key in ((2, "two_in"), (3, "three_in"), (6, "six_in")):
        x = R.int_elem(k)
        data[key] = locate(R, x)
        m, acc = 1, x
        while acc not in J:
            acc = R.add(acc, x)
            m += 1
        orders[str(k)] = m
    data["orders_mod_j"] = orders
    return data


BASE_FLAGS = (
    "boolean", "yaqub", "tripotent_ring", "reduced", "domain", "local", "bleached",
    "two_primal", "clean", "uniquely_clean", "strongly_nil_clean", "strongly_2_nil_clean",
    "strongly_j_clean", "semi_tripotent", "sdt", "sdi", "delta_u", "c_delta",
)


@dataclass
class ClassificationReport:
    ring: str
    order: int
    flags: dict[str, bool]
    char_data: dict
    witnesses: dict | None = field(default=None)

    def to_json(self, with_witnesses: bool = False) -> dict:
        out = {"ring": self.ring, "order": self.order, "flags": dict(self.flags),
               "char_data": self.char_data}
        if with_witnesses and self.witnesses is not None:
            out["witnesses"] = self.witnesses
        return out


def _implications(R: FiniteRing, f: dict[str, bool]) -> list[tuple[str, str, bool, bool]]:
    two, three, six = R.int_elem(2), R.int_elem(3), R.int_elem(6)
    U, J = units(R), jacobson_radical(R)
    rules = [
        ("boolean", "tripotent_ring", f["boolean"], f["tripotent_ring"]),
        ("yaqub", "tripotent_ring", f["yaqub"], f["tripotent_ring"]),
        ("sdi", "sdt", f["sdi"], f["sdt"]),
        ("strongly_j_clean", "sdi", f["strongly_j_clean"], f["sdi"]),
        ("strongly_nil_clean", "strongly_2_nil_clean",
         f["strongly_nil_clean"], f["strongly_2_nil_clean"]),
        ("uniquely_clean", "clean", f["uniquely_clean"], f["clean"]),
        ("sdi", "delta_u", f["sdi"], f["delta_u"]),
        ("uniquely_clean", "sdi and central idempotents",
         f["uniquely_clean"], f["sdi"] and idempotents_central(R)),
        ("sdi and central idempotents", "uniquely_clean",
         f["sdi"] and idempotents_central(R), f["uniquely_clean"]),
        ("sdt", "6 in J", f["sdt"], six in J),
        ("sdt and 3 in U", "sdi", f["sdt"] and three in U, f["sdi"]),
        ("sdt and 2 in U", "3 in J", f["sdt"] and two in U, three in J),
        ("sdt and 3 in U", "2 in J", f["sdt"] and three in U, two in J),
        ("sdt and domain", "local", f["sdt"] and f["domain"], f["local"]),
        ("strongly_2_nil_clean and local", "sdt",
         f["strongly_2_nil_clean"] and f["local"], f["sdt"]),
        ("semi_tripotent and local", "sdt", f["semi_tripotent"] and f["local"], f["sdt"]),
        ("bleached", "local", f["bleached"], f["local"]),
    ]
    for n, value in f.items():
        if n.startswith("strongly_delta_npotent("):
            k = int(n[len("strongly_delta_npotent("):-1])
            if k == 2:
                rules.append((n, "sdi", value, f["sdi"]))
                rules.append(("sdi", n, f["sdi"], value))
            if k == 3:
                rules.append((n, "sdt", value, f["sdt"]))
                rules.append(("sdt", n, f["sdt"], value))
    return rules


def classify_ring(R: FiniteRing, npotent_ns=(), witnesses: bool = False) -> ClassificationReport:
    """Fill every flag and check the unconditional implications between them."""
    sdt, sdt_table = is_sdt(R)
    flags = {
        "boolean": is_boolean(R),
        "yaqub": is_yaqub(R),
        "tripotent_ring": is_tripotent_ring(R),
        "reduced": is_reduced(R),
        "domain": is_domain(R),
        "local": is_local(R),
        "bleached": is_bleached(R),
        "two_primal": is_two_primal(R),
    }
    flags.update(clean_family(R))
    flags.update({
        "semi_tripotent": is_semi_tripotent(R),
        "sdt": sdt,
        "sdi": is_sdi(R)[0],
        "delta_u": is_delta_u(R),
        "c_delta": is_c_delta(R),
    })
    for n in npotent_ns:
        flags[f"strongly_delta_npotent({n})"] = is_strongly_delta_npotent(R, n)
    for premise, conclusion, lhs, rhs in _implications(R, flags):
        if lhs and not rhs:
            raise ImplicationViolation(premise, conclusion, R.name)
    return ClassificationReport(R.name, R.order, flags, char_data(R),
                                sdt_table.to_json() if witnesses else None)
