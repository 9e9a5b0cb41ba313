"""JSON table format for user-supplied rings, plus export of built rings."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import AxiomViolation, PreconditionFailed
from .ring import DEFAULT_VALIDATION_CAP, FiniteRing, make_table_ring

EXPORT_LIMIT = 4096

_ENCODINGS = {
    "zmod": "index = residue",
    "table": "indices as given by the tables",
    "product": "index = i_left + |left| * i_right",
    "upper_triangular": "mixed radix over the base ring, least significant digit first, "
                        "positions (1,1),(1,2),...,(1,n),(2,2),...,(n,n)",
    "full_matrix": "mixed radix over the base ring, least significant digit first, "
                   "row-major positions",
    "trivial_extension": "index = a + |R| * v for the pair (a, v)",
    "truncated_poly": "mixed radix over the base ring, coefficients c_0, c_1, ... "
                      "least significant first",
    "quotient": "k-th smallest parent index among smallest coset representatives",
    "corner": "k-th smallest parent index among the elements e r e",
}


def describe_encoding(R: FiniteRing) -> dict:
    out = {"ring": R.name, "order": R.order, "structure": R.structure_tag,
           "zero": R.zero, "one": R.one, "encoding": _ENCODINGS[R.structure_tag]}
    base = R.meta.get("base")
    if base is not None:
        out["base"] = describe_encoding(base)
        out["positions"] = [list(p) if isinstance(p, tuple) else p for p in R.meta["positions"]]
    factors = R.meta.get("factors")
    if factors is not None:
        out["factors"] = [describe_encoding(f) for f in factors]
    parent = R.meta.get("parent")
    if parent is not None:
        out["parent"] = describe_encoding(parent)
        key = "representatives" if R.structure_tag == "quotient" else "embedding"
        out[key] = [int(i) for i in R.meta[key]]
    if R.name == "GF4":
        out["encoding"] = "index = c0 + 2 c1 for c0 + c1 w, w^2 = w + 1"
    return out


def export_tables(R: FiniteRing, limit: int = EXPORT_LIMIT) -> dict:
    if R.order > limit:
        raise PreconditionFailed(f"order <= {limit}",
                                 f"{R.name} has order {R.order}; table export allows at most {limit}")
    add_t, mul_t, neg_t = R.tables()
    return {
        "order": R.order,
        "zero": R.zero,
        "one": R.one,
        "add": add_t.tolist(),
        "mul": mul_t.tolist(),
        "neg": neg_t.tolist(),
        "encoding": describe_encoding(R),
    }


def ring_from_json(data: dict, name: str = "table", cap: int = DEFAULT_VALIDATION_CAP) -> FiniteRing:
    """Validate and build a ring from the table JSON format."""
    try:
        order = int(data["order"])
        args = [np.asarray(data[k], dtype=np.int64) for k in ("add", "mul", "neg")]
        zero, one = int(data["zero"]), int(data["one"])
    except (KeyError, TypeError, ValueError) as exc:
        raise AxiomViolation("format", ()) from exc
    for table in args:
        if table.size and (table.min() < 0 or table.max() >= order):
            raise AxiomViolation("closure", ())
    return make_table_ring(order, *args, zero, one, name=name, cap=cap)


def load_table_ring(path, cap: int = DEFAULT_VALIDATION_CAP) -> FiniteRing:
    path = Path(path)
    with path.open() as fh:
        data = json.load(fh)
    return ring_from_json(data, name=data.get("name", path.stem), cap=cap)
