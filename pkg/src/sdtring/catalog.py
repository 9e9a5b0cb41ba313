"""Built-in catalog of small rings used by the CLI, the suite and the tests."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .parser import parse_and_build
from .ring import FiniteRing, make_corner

SDT_TRUE = (
    "Z1", "Z2", "Z3", "Z4", "Z6", "Z8", "Z9", "Z12", "Z16", "Z27",
    "Z2 x Z3", "Z4 x Z3", "Z2 x Z9", "P2(Z2)", "P2(Z3)", "P3(Z3)",
    "TE(Z2)", "TE(Z3)", "TE(Z4)", "T2(Z2)", "T2(Z3)", "T3(Z2)", "T3(Z3)", "T3(Z4)",
)
SDT_FALSE = ("Z5", "Z7", "Z10", "Z11", "GF4", "M2(Z2)", "T2(Z5)")


@dataclass(frozen=True)
class CatalogEntry:
    """A named ring: an expression, optionally followed by a corner at an idempotent."""

    name: str
    expr: str
    corner: int | None = None
    expected: dict = field(default_factory=dict, hash=False, compare=False)

    def build(self, max_order: int | None = None) -> FiniteRing:
        return build_entry(self, max_order)


_built: dict = {}
_built_lock = threading.Lock()


def build_entry(entry: CatalogEntry, max_order: int | None = None) -> FiniteRing:
    """Build (once per process) the ring of a catalog entry.

    Rings cache their structural sets, so sharing instances keeps repeated
    sweeps over the catalog cheap.
    """
    key = (entry.expr, entry.corner, max_order)
    with _built_lock:
        if key not in _built:
            R = parse_and_build(entry.expr, max_order=max_order)
            if entry.corner is not None:
                R = make_corner(R, entry.corner)
            _built[key] = R
        return _built[key]


def _pins(name: str) -> dict:
    pins = {}
    if name in SDT_TRUE:
        pins["sdt"] = True
    elif name in SDT_FALSE:
        pins["sdt"] = False
    if name == "Z4":
        pins["uniquely_clean"] = True
    return pins


def builtin_catalog() -> list[CatalogEntry]:
    exprs = [f"Z{n}" for n in range(1, 13)] + ["Z16", "Z27", "GF4"]
    exprs += ["Z2 x Z3", "Z4 x Z3", "Z2 x Z9"]
    exprs += [f"T{n}({b})" for n in (2, 3) for b in ("Z2", "Z3", "Z4", "Z9") if (n, b) != (3, "Z9")]
    exprs += ["T2(Z5)", "M2(Z2)", "TE(Z2)", "TE(Z3)", "TE(Z4)", "P2(Z2)", "P2(Z3)", "P3(Z3)"]
    entries = [CatalogEntry(e, e, expected=_pins(e)) for e in exprs]
    # nontrivial idempotents of T2(Z2): diag(1,0)=1, [[1,1],[0,0]]=3, diag(0,1)=4, [[0,1],[0,1]]=6
    for e in (1, 3, 4, 6):
        entries.append(CatalogEntry(f"T2(Z2)[e={e}]", "T2(Z2)", corner=e, expected={"sdt": True}))
    return entries


def catalog_by_name() -> dict[str, CatalogEntry]:
    return {entry.name: entry for entry in builtin_catalog()}
