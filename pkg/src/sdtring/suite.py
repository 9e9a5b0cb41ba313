"""Executable checks of the structure results, run per ring.

Each check returns pass, fail (with a counterexample of element indices) or
skipped (with the unmet hypothesis).  A check never passes vacuously: when
its hypotheses fail on a ring it is reported as skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .classifiers import (
    clean_family,
    idempotents_central,
    is_delta_u,
    is_domain,
    is_local,
    is_sdi,
    is_sdt,
    is_semi_tripotent,
    residue_class_order,
)
from .decomposition import mod_jacobson, verify_boolean_yaqub
from .errors import (
    CompatibilityViolation,
    ImplicationViolation,
    InternalInvariant,
    LiftFailed,
    PreconditionFailed,
)
from .invariants import (
    ElementSubset,
    _chunks,
    center,
    delta,
    delta_alt1,
    delta_alt2,
    ideal_generated_by,
    idempotents,
    jacobson_nilpotency_index,
    jacobson_radical,
    nilpotents,
    tripotents,
    units,
)
from .ring import (
    FiniteRing,
    make_corner,
    make_product,
    make_quotient,
    make_trivial_extension,
    make_truncated_poly,
    make_upper_triangular,
)
from .triangular import (
    WorkhorseCase,
    check_theorem_local,
    cube_holds_for_every_corner,
    diagonal_rule,
    gamma_f_delta,
    lift_commuting_tripotent,
    sample_workhorse_configs,
    sdt_representation_triangular,
    theorem_local_branch,
    to_matrix,
    workhorse_z,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class SuiteConfig:
    seed: int = 0
    # rings paired with the ring under test for the product check
    partners: tuple = ()
    pair_limit: int = 256
    # largest derived ring (T_3(R), T(R,R), R[x]/(x^m)) a check may build
    derived_limit: int = 4096
    # full pairwise scans above this order are replaced by seeded samples
    scan_limit: int = 1024
    samples: int = 32
    corner_limit: int = 12


@dataclass
class CheckResult:
    check_id: str
    status: str
    reason: str = ""
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"id": self.check_id, "status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class VerificationSuiteResult:
    ring: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def get(self, check_id: str) -> CheckResult:
        for r in self.results:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)

    def to_json(self) -> dict:
        return {"ring": self.ring, "ok": self.ok, "checks": [r.to_json() for r in self.results]}


class Skip(Exception):
    pass


class Failure(Exception):
    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.payload = {k: _plain(v) for k, v in payload.items()}


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_plain(x) for x in v]
    return v


def need(condition: bool, reason: str) -> None:
    if not condition:
        raise Skip(reason)


def expect(condition: bool, message: str, **payload) -> None:
    if not condition:
        raise Failure(message, **payload)


CHECKS: dict[str, Callable[[FiniteRing, SuiteConfig], None]] = {}


def check(check_id: str):
    def register(fn):
        CHECKS[check_id] = fn
        return fn
    return register


def _sdt(R: FiniteRing) -> bool:
    return is_sdt(R)[0]


def _first(mask) -> int:
    return int(np.flatnonzero(mask)[0])


def _probe(R: FiniteRing, cfg: SuiteConfig) -> np.ndarray:
    """All elements, or a seeded sample when the ring is large."""
    if R.order <= cfg.scan_limit:
        return R.elements()
    rng = np.random.default_rng(cfg.seed)
    return np.sort(rng.choice(R.order, size=cfg.scan_limit // 4, replace=False))


# -- Delta machinery --------------------------------------------------------

@check("delta-agreement")
def _delta_agreement(R, cfg):
    D, D1, D2 = delta(R), delta_alt1(R), delta_alt2(R)
    for other, label in ((D1, "1 - x u"), (D2, "1 - u x")):
        diff = D.mask ^ other.mask
        expect(not diff.any(), f"x + U vs {label} characterizations differ", element=_first(diff) if diff.any() else None)


@check("j-in-delta")
def _j_in_delta(R, cfg):
    bad = jacobson_radical(R).mask & ~delta(R).mask
    expect(not bad.any(), "element of J outside Delta", element=_first(bad) if bad.any() else None)


@check("delta-subring")
def _delta_subring(R, cfg):
    D, U = delta(R), units(R)
    d = D.members
    expect(R.zero in D, "0 not in Delta")
    for chunk in _chunks(d, len(d)):
        x, y = chunk[:, None], d[None, :]
        for label, vals in (("difference", R.vadd(x, R.vneg(y))), ("product", R.vmul(x, y))):
            bad = ~D.mask[vals]
            if bad.any():
                i, j = np.argwhere(bad)[0]
                raise Failure(f"Delta not closed under {label}", pair=[chunk[i], d[j]])
    u = U.members
    for chunk in _chunks(u, len(d)):
        x, y = chunk[:, None], d[None, :]
        for label, vals in (("u d", R.vmul(x, y)), ("d u", R.vmul(y, x))):
            bad = ~D.mask[vals]
            if bad.any():
                i, j = np.argwhere(bad)[0]
                raise Failure(f"Delta not closed under unit multiples ({label})", pair=[chunk[i], d[j]])


@check("delta-idempotents")
def _delta_idempotents(R, cfg):
    common = delta(R).intersection(idempotents(R)).to_list()
    expect(common == [R.zero], "Delta meets Id outside 0", elements=common)


@check("one-plus-delta-units")
def _one_plus_delta(R, cfg):
    shifted = R.vadd(R.one, delta(R).members)
    bad = ~units(R).mask[shifted]
    expect(not bad.any(), "1 + d is not a unit", element=delta(R).members[bad][0] if bad.any() else None)


@check("nil-star-eq-j")
def _nil_star(R, cfg):
    k = jacobson_nilpotency_index(R)
    expect(k <= max(R.order, 1), "J is not nilpotent")
    # no non-zero nil ideal in R/J: every non-zero nilpotent generates an
    # ideal containing a non-nilpotent element
    Q, _ = mod_jacobson(R)
    N = nilpotents(Q)
    for x in N.members:
        if x != Q.zero:
            expect(not ideal_generated_by(Q, [int(x)]).issubset(N), "R/J has a non-zero nil ideal",
                   generator=x)


# -- products, quotients, units and local rings ------------------------------

@check("lemma0-product")
def _lemma0_product(R, cfg):
    partners = [S for S in cfg.partners if R.order * S.order <= cfg.pair_limit]
    need(bool(partners), f"no partner ring keeps the product within order {cfg.pair_limit}")
    for S in partners:
        P = make_product(R, S)
        expect(_sdt(P) == (_sdt(R) and _sdt(S)), "SDT of product differs from the factors",
               partner=S.name)


def _sub_ideals_of_j(R: FiniteRing, cfg: SuiteConfig) -> list[ElementSubset]:
    J = jacobson_radical(R)
    gens = [int(x) for x in J.members if x != R.zero]
    if len(gens) > 8:
        rng = np.random.default_rng(cfg.seed)
        gens = sorted(int(x) for x in rng.choice(gens, size=8, replace=False))
    seen, out = set(), []
    for I in [J] + [ideal_generated_by(R, [g]) for g in gens]:
        key = I.mask.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(I)
    return out


@check("lemma0-quotient")
def _lemma0_quotient(R, cfg):
    need(_sdt(R), "ring is not SDT")
    need(len(jacobson_radical(R)) > 1, "J = 0, the only ideal inside J is 0")
    for I in _sub_ideals_of_j(R, cfg):
        Q, _ = make_quotient(R, I)
        expect(_sdt(Q), "quotient by an ideal inside J is not SDT", ideal=I.to_list()[:16])


@check("lemma1")
def _lemma1(R, cfg):
    need(_sdt(R), "ring is not SDT")
    D = delta(R)
    e = tripotents(R).members
    d = D.members
    two = R.int_elem(2)
    for chunk in _chunks(e, len(d)):
        x, y = chunk[:, None], d[None, :]
        x2 = R.vmul(x, x)
        terms = {
            "(e + e^2) d": R.vmul(R.vadd(x, x2), y),
            "(e - e^2) d": R.vmul(R.vadd(x, R.vneg(x2)), y),
            "d (e + e^2)": R.vmul(y, R.vadd(x, x2)),
            "d (e - e^2)": R.vmul(y, R.vadd(x, R.vneg(x2))),
            "2 e d": R.vmul(R.vmul(two, x), y),
            "2 e^2 d": R.vmul(R.vmul(two, x2), y),
        }
        for label, vals in terms.items():
            bad = ~D.mask[np.broadcast_to(vals, (len(chunk), len(d)))]
            if bad.any():
                i, j = np.argwhere(bad)[0]
                raise Failure(f"{label} not in Delta", tripotent=chunk[i], delta=d[j])


@check("lemma2")
def _lemma2(R, cfg):
    need(_sdt(R), "ring is not SDT")
    els = R.elements()
    D = delta(R).mask
    bad = D[R.vmul(els, els)] & ~D
    expect(not bad.any(), "a^2 in Delta but a not", element=_first(bad) if bad.any() else None)


@check("lemma3")
def _lemma3(R, cfg):
    need(_sdt(R), "ring is not SDT")
    els = R.elements()
    bad = ~delta(R).mask[R.vadd(els, R.vneg(R.power(els, 3)))]
    expect(not bad.any(), "a - a^3 not in Delta", element=_first(bad) if bad.any() else None)


@check("lemma4")
def _lemma4(R, cfg):
    need(_sdt(R), "ring is not SDT")
    Q, _ = mod_jacobson(R)
    expect(len(nilpotents(Q)) == 1, "R/J is not reduced")


@check("lemma5")
def _lemma5(R, cfg):
    need(_sdt(R), "ring is not SDT")
    expect(R.int_elem(6) in jacobson_radical(R), "6 not in J", six=R.int_elem(6))


@check("cor1")
def _cor1(R, cfg):
    need(_sdt(R), "ring is not SDT")
    U, J = units(R), jacobson_radical(R)
    two, three = R.int_elem(2), R.int_elem(3)
    expect((two in U) == (three in J), "2 in U and 3 in J disagree")
    expect((three in U) == (two in J), "3 in U and 2 in J disagree")


@check("pro3")
def _pro3(R, cfg):
    need(_sdt(R) and R.int_elem(2) in units(R), "needs SDT with 2 a unit")
    expect(delta(R) == jacobson_radical(R), "Delta differs from J",
           delta=delta(R).to_list()[:16], jacobson=jacobson_radical(R).to_list()[:16])


@check("pro4")
def _pro4(R, cfg):
    need(_sdt(R) and R.int_elem(3) in units(R), "needs SDT with 3 a unit")
    ok, table = is_sdi(R)
    expect(ok, "ring is not SDI", element=table.first_missing())


@check("sdi-delta-u")
def _sdi_delta_u(R, cfg):
    need(is_sdi(R)[0], "ring is not SDI")
    expect(is_delta_u(R), "SDI ring is not Delta-U")


@check("sum-unit")
def _sum_unit(R, cfg):
    U, D = units(R), delta(R)
    uu = U.sumset(U)
    expect(is_delta_u(R) == uu.issubset(D), "Delta-U disagrees with U + U inside Delta")
    if is_delta_u(R):
        expect(uu == D, "U + U differs from Delta on a Delta-U ring")


@check("cor2")
def _cor2(R, cfg):
    lhs = clean_family(R)["uniquely_clean"]
    rhs = is_sdi(R)[0] and idempotents_central(R)
    expect(lhs == rhs, "uniquely clean disagrees with SDI plus central idempotents",
           uniquely_clean=lhs, sdi_central=rhs)


@check("prop-local")
def _prop_local(R, cfg):
    need(_sdt(R) and is_domain(R), "needs an SDT domain")
    expect(is_local(R), "SDT domain is not local")
    expect(units(R).union(delta(R)).is_full(), "R is not U together with Delta")


@check("cor-2nilclean-local")
def _cor_2nil(R, cfg):
    need(clean_family(R)["strongly_2_nil_clean"] and is_local(R),
         "needs a local strongly 2-nil-clean ring")
    expect(_sdt(R), "ring is not SDT", element=is_sdt(R)[1].first_missing())


@check("prop-semitrip")
def _prop_semitrip(R, cfg):
    need(is_semi_tripotent(R) and is_local(R), "needs a local semi-tripotent ring")
    expect(_sdt(R), "ring is not SDT", element=is_sdt(R)[1].first_missing())


# -- R/J splitting, annihilators and corners ---------------------------------

@check("thm-boolean-yaqub")
def _boolean_yaqub(R, cfg):
    need(_sdt(R), "ring is not SDT")
    try:
        report = verify_boolean_yaqub(R)
    except ImplicationViolation as exc:
        raise Failure(str(exc))
    expect(report.verdict, "R/J is not Boolean x Yaqub")


@check("lemma-ann")
def _lemma_ann(R, cfg):
    need(_sdt(R), "ring is not SDT")
    table = is_sdt(R)[1]
    els = R.elements()
    probe = _probe(R, cfg)
    for chunk in _chunks(probe, R.order):
        e = table.p[chunk]
        r = els[:, None]
        for side, fa, fe in (("left", R.vmul(r, chunk[None, :]), R.vmul(r, e[None, :])),
                             ("right", R.vmul(chunk[None, :], r), R.vmul(e[None, :], r))):
            bad = (fa == R.zero) & (fe != R.zero)
            if bad.any():
                i, j = np.argwhere(bad)[0]
                raise Failure(f"{side} annihilator of a not inside that of e",
                              a=chunk[j], e=e[j], r=i)


def _corners(R: FiniteRing, cfg: SuiteConfig) -> list[int]:
    idem = [e for e in idempotents(R).to_list() if e not in (R.zero, R.one)]
    if len(idem) > cfg.corner_limit:
        rng = np.random.default_rng(cfg.seed)
        idem = sorted(int(x) for x in rng.choice(idem, size=cfg.corner_limit, replace=False))
    return idem


@check("corner-delta")
def _corner_delta(R, cfg):
    idem = _corners(R, cfg)
    need(bool(idem), "no non-trivial idempotents")
    D = delta(R)
    for e in idem:
        C = make_corner(R, e)
        emb = C.meta["embedding"]
        bad = D.mask[emb] & ~delta(C).mask
        expect(not bad.any(), "element of eRe in Delta(R) but not in Delta(eRe)",
               idempotent=e, element=emb[bad][0] if bad.any() else None)


@check("cor-corner")
def _cor_corner(R, cfg):
    need(_sdt(R), "ring is not SDT")
    idem = _corners(R, cfg)
    need(bool(idem), "no non-trivial idempotents")
    for e in idem:
        expect(_sdt(make_corner(R, e)), "corner ring is not SDT", idempotent=e)


# -- triangular and trivial-extension rings ----------------------------------

def _trivial_tripotents(R: FiniteRing) -> bool:
    return set(tripotents(R).to_list()) <= {R.zero, R.one, R.neg(R.one)}


@check("lemma-trivial-tripotent")
def _trivial_tripotent(R, cfg):
    need(is_local(R) and R.int_elem(2) in units(R), "needs a local ring with 2 a unit")
    expect(_trivial_tripotents(R), "non-trivial tripotent", tripotents=tripotents(R).to_list())


def _is_z2_or_z3(R: FiniteRing) -> bool:
    # a ring of order 2 or 3 is Z2 or Z3
    return residue_class_order(R) in (2, 3)


@check("prop-trivial-ext")
def _prop_trivial_ext(R, cfg):
    need(R.order > 1, "zero ring")
    need(_trivial_tripotents(R), "ring has non-trivial tripotents")
    need(R.order ** 2 <= cfg.derived_limit, f"T(R,R) would exceed order {cfg.derived_limit}")
    TE = make_trivial_extension(R)
    expect(_sdt(TE) == _is_z2_or_z3(R), "SDT of T(R,R) disagrees with |R/J| in {2, 3}",
           te_sdt=_sdt(TE), residue_order=residue_class_order(R))


@check("example-final")
def _example_final(R, cfg):
    need(tripotents(R).issubset(center(R)), "some tripotent is not central")
    built = []
    for m in (2, 3):
        if R.order ** m <= cfg.derived_limit:
            built.append(make_truncated_poly(R, m))
    if R.order ** 2 <= cfg.derived_limit:
        built.append(make_trivial_extension(R))
    need(bool(built), f"extensions would exceed order {cfg.derived_limit}")
    for S in built:
        expect(_sdt(S) == _sdt(R), "SDT differs between R and its extension", extension=S.name)


@check("thm-local")
def _thm_local(R, cfg):
    need(is_local(R), "ring is not local")
    need(R.order ** 6 <= cfg.derived_limit, f"T_3(R) would exceed order {cfg.derived_limit}")
    try:
        check_theorem_local(R, 3)
    except ImplicationViolation as exc:
        raise Failure(str(exc))


def _workhorse_check(case: WorkhorseCase):
    def run(R, cfg):
        need(is_local(R) and R.int_elem(2) in units(R), "needs a local ring with 2 a unit")
        need(R.order ** 6 <= 2**31, "T_3(R) indices would not fit the sampler")
        configs = sample_workhorse_configs(R, case, cfg.samples, seed=cfg.seed)
        need(bool(configs), "no configuration meets the case hypotheses")
        mixed = case not in (WorkhorseCase.I, WorkhorseCase.II, WorkhorseCase.III)
        for A, E in configs:
            try:
                workhorse_z(case, A, E)
            except InternalInvariant as exc:
                raise Failure(str(exc), A=A.matrix(), E=E.matrix())
            if mixed:
                expect(cube_holds_for_every_corner(E), "E^3 = E fails for some corner entry",
                       E=E.matrix())
            if case is WorkhorseCase.IV:
                expect(gamma_f_delta(E) == R.zero, "gamma F delta is not 0", E=E.matrix())
    return run


for _case in WorkhorseCase:
    check(f"workhorse-{_case.name.lower()}")(_workhorse_check(_case))


def _triangular_for(R: FiniteRing, cfg: SuiteConfig) -> FiniteRing | None:
    for n in (3, 2):
        if R.order ** (n * (n + 1) // 2) <= 2**20:
            return make_upper_triangular(R, n)
    return None


@check("lift-tripotent")
def _lift(R, cfg):
    need(is_local(R), "ring is not local")
    T = _triangular_for(R, cfg)
    need(T is not None, "T_2(R) exceeds the order cap")
    rng = np.random.default_rng(cfg.seed)
    n = T.meta["n"]
    lifted = 0
    for A in rng.integers(0, T.order, cfg.samples):
        Am = to_matrix(T, A)
        try:
            diag = [diagonal_rule(R, Am[i][i]) for i in range(n)]
            E = lift_commuting_tripotent(T, int(A), diag)
        except (PreconditionFailed, CompatibilityViolation):
            # residue field other than Z2 / Z3, or an incompatible diagonal
            continue
        except (LiftFailed, InternalInvariant) as exc:
            raise Failure(str(exc), A=int(A))
        Em = to_matrix(T, E)
        expect([Em[i][i] for i in range(n)] == diag, "diagonal not preserved", A=int(A))
        expect(T.power(E, 3) == E and T.mul(A, E) == T.mul(E, A), "lift is not a commuting tripotent",
               A=int(A), E=E)
        lifted += 1
    need(lifted > 0, "no sampled element admits a compatible diagonal")


@check("sdt-rep-triangular")
def _sdt_rep(R, cfg):
    need(is_local(R), "ring is not local")
    need(theorem_local_branch(R) != "neither", "base ring fails the triangular SDT criterion")
    T = _triangular_for(R, cfg)
    need(T is not None, "T_2(R) exceeds the order cap")
    rng = np.random.default_rng(cfg.seed)
    direct = T.order <= 729
    for A in rng.integers(0, T.order, cfg.samples):
        A = int(A)
        E, D = sdt_representation_triangular(T, A)
        expect(T.add(E, D) == A and T.power(E, 3) == E and T.mul(E, D) == T.mul(D, E),
               "invalid SDT representation", A=A, E=E, D=D)
        if direct:
            expect(D in delta(T), "D outside Delta(T)", A=A, D=D)


CHECK_IDS = tuple(CHECKS)


def run_suite(R: FiniteRing, ids=None, cfg: SuiteConfig | None = None) -> VerificationSuiteResult:
    cfg = cfg or SuiteConfig()
    ids = CHECK_IDS if ids in (None, "all") else tuple(ids)
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check ids: {unknown}")
    result = VerificationSuiteResult(R.name)
    for cid in ids:
        try:
            CHECKS[cid](R, cfg)
            result.results.append(CheckResult(cid, PASS))
        except Skip as exc:
            result.results.append(CheckResult(cid, SKIPPED, str(exc)))
        except Failure as exc:
            result.results.append(CheckResult(cid, FAIL, str(exc), exc.payload))
        except (ImplicationViolation, InternalInvariant) as exc:
            result.results.append(CheckResult(cid, FAIL, str(exc)))
    return result


@dataclass
class CatalogSuiteResult:
    rings: list[VerificationSuiteResult]
    ids: tuple

    @property
    def uncovered(self) -> list[str]:
        """Requested checks that did not pass on any ring."""
        passed = {r.check_id for s in self.rings for r in s.results if r.status == PASS}
        return [i for i in self.ids if i not in passed]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.rings) and not self.uncovered

    def to_json(self) -> dict:
        return {"ok": self.ok, "uncovered": self.uncovered,
                "rings": [s.to_json() for s in self.rings]}


def run_catalog_suite(rings, ids=None, cfg: SuiteConfig | None = None) -> CatalogSuiteResult:
    """Run the suite on every ring; products pair catalog rings with each other."""
    rings = list(rings)
    cfg = cfg or SuiteConfig()
    if not cfg.partners:
        cfg = SuiteConfig(**{**cfg.__dict__, "partners": tuple(rings)})
    ids = CHECK_IDS if ids in (None, "all") else tuple(ids)
    return CatalogSuiteResult([run_suite(R, ids, cfg) for R in rings], ids)
