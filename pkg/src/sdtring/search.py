"""Descriptive sweeps for the open questions about SDT rings.

Nothing here asserts an answer; each problem returns a JSON-ready list of
findings over the rings it is given.
"""

from __future__ import annotations

from .classifiers import is_c_delta, is_sdt, is_semi_tripotent, is_strongly_delta_npotent
from .invariants import idempotents
from .ring import FiniteRing, make_corner

PROBLEMS = ("semitripotent-vs-sdt", "corner-converse", "npotent-hierarchy", "c-delta")
NPOTENT_RANGE = range(2, 9)


def semitripotent_vs_sdt(rings) -> dict:
    scanned, discrepancies = [], []
    for R in rings:
        st, sdt = is_semi_tripotent(R), is_sdt(R)[0]
        scanned.append(R.name)
        if st != sdt:
            discrepancies.append({"ring": R.name, "semi_tripotent": st, "sdt": sdt})
    return {"scanned": scanned, "discrepancies": discrepancies}


def corner_converse(rings) -> dict:
    """Pairs (R, e) with eRe and (1-e)R(1-e) both SDT, and whether R is."""
    findings = []
    for R in rings:
        for e in idempotents(R).to_list():
            if e in (R.zero, R.one):
                continue
            f = R.sub(R.one, e)
            if is_sdt(make_corner(R, e))[0] and is_sdt(make_corner(R, f))[0]:
                findings.append({"ring": R.name, "idempotent": e, "complement": f,
                                 "ring_sdt": is_sdt(R)[0]})
    return {"instances": findings,
            "counterexamples": [x for x in findings if not x["ring_sdt"]]}


def npotent_hierarchy(rings) -> dict:
    rows = []
    for R in rings:
        flags = {str(n): is_strongly_delta_npotent(R, n) for n in NPOTENT_RANGE}
        first = next((int(n) for n, v in flags.items() if v), None)
        rows.append({"ring": R.name, "flags": flags, "first_true": first})
    return {"rings": rows}


def c_delta(rings) -> dict:
    return {"rings": [{"ring": R.name, "c_delta": is_c_delta(R), "sdt": is_sdt(R)[0]}
                      for R in rings]}


def run_search(problem: str, rings: list[FiniteRing], max_order: int) -> dict:
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    kept = [R for R in rings if R.order <= max_order]
    fn = {
        "semitripotent-vs-sdt": semitripotent_vs_sdt,
        "corner-converse": corner_converse,
        "npotent-hierarchy": npotent_hierarchy,
        "c-delta": c_delta,
    }[problem]
    out = {"problem": problem, "max_order": max_order}
    out.update(fn(kept))
    return out
