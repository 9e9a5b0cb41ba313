"""R/J(R) and its splitting into a Boolean factor and a Yaqub factor."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classifiers import is_boolean, is_sdt, is_yaqub
from .errors import CharacteristicError, ImplicationViolation, InternalInvariant, PreconditionNotSDT
from .invariants import ideal_generated_by, jacobson_radical
from .ring import FiniteRing, make_quotient

TABLE_REPORT_LIMIT = 64


def mod_jacobson(R: FiniteRing) -> tuple[FiniteRing, np.ndarray]:
    def compute():
        Q, proj = make_quotient(R, jacobson_radical(R), name=f"{R.name}/J")
        if len(jacobson_radical(Q)) != 1:
            raise InternalInvariant(f"J({R.name}/J) is not zero")
        return Q, proj
    return R.cached("mod_jacobson", compute)


@dataclass
class DecompositionReport:
    source: str
    quotient: FiniteRing = field(repr=False)
    ideal2: list[int]
    ideal3: list[int]
    r1: FiniteRing = field(repr=False)
    r2: FiniteRing = field(repr=False)
    crt_bijective: bool
    r1_boolean: bool
    r2_yaqub: bool

    @property
    def r2_yaqub_or_zero(self) -> bool:
        return self.r2.order == 1 or self.r2_yaqub

    @property
    def verdict(self) -> bool:
        return self.crt_bijective and self.r1_boolean and self.r2_yaqub_or_zero

    def to_json(self) -> dict:
        def factor(ring, key, flag):
            out = {"order": ring.order, key: flag}
            if ring.order <= TABLE_REPORT_LIMIT:
                add_t, mul_t, _ = ring.tables()
                out["tables"] = {"add": add_t.tolist(), "mul": mul_t.tolist()}
            return out

        return {
            "quotient_order": self.quotient.order,
            "ideal2": self.ideal2,
            "ideal3": self.ideal3,
            "r1": factor(self.r1, "boolean", self.r1_boolean),
            "r2": factor(self.r2, "yaqub", self.r2_yaqub),
            "crt_bijective": self.crt_bijective,
            "verdict": self.verdict,
        }


def crt_split_mod6(Rbar: FiniteRing, source: str | None = None) -> DecompositionReport:
    """Split a ring with 6 = 0 as Rbar/2Rbar x Rbar/3Rbar."""
    if Rbar.int_elem(6) != Rbar.zero:
        raise CharacteristicError(f"6 != 0 in {Rbar.name}")
    I2 = ideal_generated_by(Rbar, [Rbar.int_elem(2)])
    I3 = ideal_generated_by(Rbar, [Rbar.int_elem(3)])
    R1, p1 = make_quotient(Rbar, I2, name=f"{Rbar.name}/2")
    R2, p2 = make_quotient(Rbar, I3, name=f"{Rbar.name}/3")
    pairs = p1 + R1.order * p2
    injective = len(np.unique(pairs)) == Rbar.order
    bijective = injective and Rbar.order == R1.order * R2.order
    if bijective and len(I2.intersection(I3)) != 1:
        raise InternalInvariant("CRT map is bijective but 2R and 3R intersect")
    return DecompositionReport(
        source or Rbar.name, Rbar, I2.to_list(), I3.to_list(), R1, R2,
        bijective, is_boolean(R1), is_yaqub(R2),
    )


def verify_boolean_yaqub(R: FiniteRing) -> DecompositionReport:
    """For an SDT ring, R/J must be Boolean x (Yaqub or zero)."""
    if not is_sdt(R)[0]:
        raise PreconditionNotSDT(f"{R.name} is not SDT")
    Rbar, _ = mod_jacobson(R)
    report = crt_split_mod6(Rbar, source=R.name)
    if not report.verdict:
        raise ImplicationViolation("sdt", "R/J = Boolean x Yaqub", R.name)
    return report

