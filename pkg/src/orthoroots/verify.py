"""The one-shot verification suite: every exhaustive check for one root
system, collected as flat JSON-friendly records."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import exceptional as exc
from . import macdonald as mac
from . import qpar, special
from .errors import UsageError
from .nroots import classify_d4, format_matching, matching_of, nroot_of_matching, space
from .report import Report
from .rootsys import SUPPORTED, RootSystem, SystemType, system

NROOT_COUNTS = {"D4": 3, "D6": 15, "D8": 105, "D10": 945, "E7": 135, "E8": 2025}
SQUARE_SUMS = {"D4": 28, "D6": 110, "D8": 280, "D10": 570, "E7": 399, "E8": 1240}
DIMENSIONS = {"D4": 2, "D6": 5, "D8": 14, "D10": 42, "E7": 15, "E8": 50}
THETA_C_SUMS = {"D4": 2, "D6": 5, "D8": 16, "D10": 61, "E7": 17, "E8": 88}
XI_SIZES = {"D4": 2, "D6": 6, "D8": 24, "D10": 120, "E7": 30, "E8": 240}

# Reduced words for w_N, compared up to commutation.
REFERENCE_WN = {
    "D8": [2, 4, 6, 3, 5, 4],
    "E7": [1, 3, 5, 2, 4, 3, 7],
    "E8": [1, 4, 6, 8, 3, 5, 7, 4, 6, 2, 5, 4, 3, 1],
}


def _simple(n, i):
    return tuple(int(j == i - 1) for j in range(n))


# Components of theta_A, theta_C and theta_N in the exceptional types.
EXTREMAL_COMPONENTS = {
    "E7": {
        "A": [_simple(7, 2), _simple(7, 4), _simple(7, 6), _simple(7, 7),
              (0, 1, 2, 1, 0, 0, 1), (0, 1, 2, 2, 2, 1, 1), (2, 3, 4, 3, 2, 1, 2)],
        "C": [(0, 1, 1, 1, 1, 0, 1), (0, 1, 2, 1, 0, 0, 1), (0, 0, 1, 1, 1, 1, 1), (1, 1, 1, 1, 0, 0, 1),
              (1, 1, 2, 1, 1, 0, 1), (1, 2, 2, 1, 1, 1, 1), (1, 2, 3, 3, 2, 1, 1)],
        "N": [_simple(7, 7), (0, 1, 2, 1, 0, 0, 1), (1, 1, 2, 1, 1, 0, 1), (1, 1, 2, 2, 1, 1, 1),
              (1, 2, 2, 1, 1, 1, 1), (1, 2, 2, 2, 1, 0, 1), (0, 1, 2, 2, 2, 1, 1)],
    },
    "E8": {
        "A": [_simple(8, 2), _simple(8, 3), _simple(8, 5), _simple(8, 7), (0, 1, 1, 2, 1, 0, 0, 0),
              (0, 1, 1, 2, 2, 2, 1, 0), (2, 2, 3, 4, 3, 2, 1, 0), (2, 3, 4, 6, 5, 4, 3, 2)],
        "C": [(1, 1, 1, 1, 1, 1, 1, 1), (1, 1, 1, 2, 1, 1, 1, 0), (1, 1, 1, 2, 2, 1, 0, 0),
              (1, 1, 2, 2, 1, 1, 0, 0), (1, 1, 2, 2, 2, 1, 1, 0), (1, 1, 2, 3, 2, 1, 1, 1),
              (1, 1, 2, 3, 3, 3, 2, 1), (1, 3, 3, 5, 4, 3, 2, 1)],
        "N": [_simple(8, 1), (1, 1, 2, 2, 1, 0, 0, 0), (1, 1, 2, 2, 2, 2, 1, 0), (1, 1, 2, 3, 2, 2, 1, 1),
              (1, 1, 2, 3, 3, 2, 2, 1), (1, 2, 2, 3, 2, 2, 2, 1), (1, 2, 2, 3, 3, 2, 1, 1),
              (1, 2, 2, 4, 3, 2, 1, 0)],
    },
}

FANO_C = ["127", "136", "145", "235", "246", "347", "567"]
FANO_N = ["123", "145", "167", "246", "257", "347", "356"]

# Rows of the sign matrix of theta_C in E8, coordinates e_1..e_8.
HADAMARD_ROWS = ["++----++", "+-+--+-+", "+--++--+", "-++-+--+", "-+-+-+-+", "--++--++", "----++++", "++++++++"]


def extremal_matchings(n: int) -> dict[str, list[tuple[int, int]]]:
    k = n // 2
    return {
        "A": [(2 * i + 1, 2 * i + 2) for i in range(k)],
        "C": [(i + 1, i + 1 + k) for i in range(k)],
        "N": [(i + 1, n - i) for i in range(k)],
    }


@dataclass
class VerifyConfig:
    stype: SystemType
    full: bool = False
    seed: int = 0
    workers: int = 1
    confluence_elements: int = 100
    confluence_strategies: int = 100


@dataclass
class VerifyRecord:
    check: str
    type: str
    parameters: dict
    passed: bool | None
    expected: object
    actual: object
    elapsed: float
    skipped: bool = False
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


Outcome = tuple  # (passed, expected, actual[, witnesses])


@dataclass(frozen=True)
class Check:
    name: str
    criterion: int
    fn: Callable[[RootSystem, VerifyConfig], Outcome]
    applies: Callable[[SystemType], bool] = lambda t: True
    full_only: Callable[[SystemType], bool] = lambda t: False


CHECKS: list[Check] = []


def check(name, criterion, applies=None, full_only=None):
    def wrap(fn):
        CHECKS.append(Check(name, criterion, fn, applies or (lambda t: True), full_only or (lambda t: False)))
        return fn

    return wrap


def _from_report(rep: Report, expected="no violations") -> Outcome:
    actual = {"checked": rep.checked, "failures": rep.failures, **rep.details}
    return rep.passed, expected, actual, rep.witnesses


def _is_d(t):
    return t.is_type_d


def _is(*names):
    return lambda t: t.name in names


# -- counts and labels --------------------------------------------------------


@check("nroot_count", 1)
def _count(rs, cfg):
    n = len(space(rs))
    return n == NROOT_COUNTS[rs.stype.name], NROOT_COUNTS[rs.stype.name], n


@check("quadruple_constant", 3)
def _mcount(rs, cfg):
    X = space(rs)
    M = rs.stype.quadruple_count
    totals = sorted({sum(c.astuple()) for c in X.counts})
    return totals == [M], [M], totals


@check("height_square_sum", 3)
def _squares(rs, cfg):
    X = space(rs)
    sums = sorted({sum(rs.heights[b] ** 2 for b in x) for x in X.elements})
    exp = [SQUARE_SUMS[rs.stype.name]]
    return sums == exp, exp, sums


@check("d4_label_oracle", 3)
def _d4(rs, cfg):
    X = space(rs)
    rep = Report("d4_label_oracle")
    seen = set()
    for quads in X.quads:
        for q, _, lab in quads:
            if q not in seen:
                seen.add(q)
                rep.expect(classify_d4(rs, q) == lab, q)
    rep.details["distinct_quadruples"] = len(seen)
    return _from_report(rep)


# -- quasiparabolic structure -------------------------------------------------


@check("qp_scaled", 2)
def _scaled(rs, cfg):
    return _from_report(qpar.verify_scaled(rs))


@check("qp1", 2)
def _qp1(rs, cfg):
    return _from_report(qpar.verify_qp1(rs))


@check("qp2", 2)
def _qp2(rs, cfg):
    return _from_report(qpar.verify_qp2(rs))


@check("level_change_laws", 2)
def _laws(rs, cfg):
    return _from_report(qpar.level_change_laws(rs))


@check("order_extremes", 4)
def _order(rs, cfg):
    return _from_report(qpar.covers_report(rs))


@check("abstract_characterizations", 4)
def _abstract(rs, cfg):
    return _from_report(qpar.abstract_characterizations(rs))


@check("extremal_matchings", 4, applies=_is_d)
def _ext_d(rs, cfg):
    P = qpar.build_order(rs)
    X = space(rs)
    exp = {k: format_matching(m) for k, m in extremal_matchings(rs.rank).items()}
    got = {
        k: format_matching(matching_of(rs, X.elements[x]))
        for k, x in zip("ACN", (P.theta_A, P.theta_C, P.theta_N))
    }
    return exp == got, exp, got


@check("extremal_components", 4, applies=_is("E7", "E8"))
def _ext_e(rs, cfg):
    P = qpar.build_order(rs)
    X = space(rs)
    exp = {k: sorted(v) for k, v in EXTREMAL_COMPONENTS[rs.stype.name].items()}
    got = {
        k: sorted(rs.positive_roots[b] for b in X.elements[x])
        for k, x in zip("ACN", (P.theta_A, P.theta_C, P.theta_N))
    }
    return exp == got, exp, got


@check("alignment_free_parity", 10)
def _xi(rs, cfg):
    return _from_report(qpar.xi_parity_report(rs))


# -- Macdonald representation -------------------------------------------------


@check("basis_sizes", 5)
def _bases(rs, cfg):
    nc, nn = mac.bases(rs)
    d = DIMENSIONS[rs.stype.name]
    return len(nc) == len(nn) == d, [d, d], [len(nc), len(nn)]


@check("polynomial_oracle", 5, full_only=_is("E8"))
def _oracle(rs, cfg):
    return _from_report(mac.oracle_report(rs), expected={"basis_rank": DIMENSIONS[rs.stype.name]})


@check("confluence", 6)
def _confluence(rs, cfg):
    rep = mac.confluence_report(rs, cfg.seed, cfg.confluence_elements, cfg.confluence_strategies)
    return _from_report(rep)


@check("sign_coherence", 7)
def _coherent(rs, cfg):
    return _from_report(mac.sign_coherence_check(rs))


@check("theta_C_coefficient_sum", 7)
def _tc_sum(rs, cfg):
    P = qpar.build_order(rs)
    s = sum(mac.normalize_noncrossing(rs, P.theta_C).terms.values())
    exp = THETA_C_SUMS[rs.stype.name]
    if rs.stype.is_type_d:
        exp_euler = mac.euler_numbers(rs.stype.k + 2)[rs.stype.k + 1]
        return s == exp == exp_euler, exp, s
    return s == exp, exp, s


@check("theta_C_dominates", 7)
def _tc_max(rs, cfg):
    P = qpar.build_order(rs)
    top = mac.maximal_in_B_order(rs)
    return top == P.theta_C, P.theta_C, top


@check("simple_reflections_on_basis", 7)
def _simple_refl(rs, cfg):
    nc, _ = mac.bases(rs)
    rep = Report("simple_reflections_on_basis")
    for i in range(1, rs.rank + 1):
        for g in nc:
            try:
                mac.simple_reflection_on_basis(rs, i, g)
                rep.expect(True, None)
            except Exception as err:  # recorded as a failing witness
                rep.expect(False, (i, g, str(err)))
    return _from_report(rep)


@check("odd_heights", 7)
def _odd(rs, cfg):
    return _from_report(mac.odd_height_report(rs))


@check("change_of_basis", 8)
def _cob(rs, cfg):
    cob = mac.change_of_basis(rs)
    d = len(cob.ordering)
    ident = [[int(i == j) for j in range(d)] for i in range(d)]
    ok = (
        mac.is_unitriangular(cob.matrix)
        and mac.is_unitriangular(cob.inverse)
        and mac.matmul(cob.matrix, cob.inverse) == ident
    )
    off = sum(1 for i in range(d) for j in range(i) if cob.matrix[i][j])
    return ok, "unitriangular, inverse", {"dimension": d, "offdiagonal_nonzero": off}


# -- special elements ---------------------------------------------------------


@check("nonnesting_element", 9)
def _wn(rs, cfg):
    rep = special.nonnesting_report(rs, REFERENCE_WN.get(rs.stype.name))
    return _from_report(rep, expected={"length": rs.stype.quadruple_count, "reference": REFERENCE_WN.get(rs.stype.name)})


@check("heap_filters", 9)
def _heap(rs, cfg):
    lat = special.weak_interval_lattice(rs)
    d = DIMENSIONS[rs.stype.name]
    return len(lat.filters) == d, d, len(lat.filters)


@check("sigma_classes", 10)
def _sigma(rs, cfg):
    rep = special.sigma_class_report(rs)
    size = XI_SIZES[rs.stype.name]
    rep.expect(rep.details["top_size"] == size, ("top size", rep.details["top_size"]))
    return _from_report(rep, expected={"classes": DIMENSIONS[rs.stype.name], "top_size": size})


@check("eulerian_intervals", 10)
def _euler(rs, cfg):
    return _from_report(special.mobius_eulerian_check(rs))


@check("sigma_congruence", 10)
def _congruence(rs, cfg):
    return _from_report(special.congruence_check(rs))


@check("poincare", 11)
def _poincare(rs, cfg):
    exp = {
        "PS_X": special.format_poly(special.closed_form_X(rs.stype)),
        "PS_XI": special.format_poly(special.closed_form_XI(rs.stype)),
    }
    return _from_report(special.poincare_report(rs), expected=exp)


@check("cyclic_sieving", 12, full_only=_is("E8"))
def _csp(rs, cfg):
    return _from_report(special.cyclic_sieving(rs))


@check("covering_orbit", 12)
def _covering(rs, cfg):
    word = special.coxeter_word(rs)
    h2 = rs.stype.coxeter_number // 2
    if rs.stype.is_type_d:
        orb = special.coxeter_orbit(rs, word, qpar.build_order(rs).theta_N)
        seed = "theta_N"
    else:
        orb = special.find_covering_orbit(rs, word)
        seed = None if orb is None else orb.seed
    ok = orb is not None and orb.covering and len(orb.orbit) == h2
    actual = {"seed": seed, "orbit_length": None if orb is None else len(orb.orbit), "word": word}
    return ok, {"orbit_length": h2, "covering": True}, actual


# -- exceptional types --------------------------------------------------------


@check("fano_labellings", 13, applies=_is("E7"))
def _fano(rs, cfg):
    rep = exc.fano_report(rs)
    rep.expect(rep.details["L_C"] == FANO_C, ("L_C", rep.details["L_C"]))
    rep.expect(rep.details["L_N"] == FANO_N, ("L_N", rep.details["L_N"]))
    return _from_report(rep, expected={"L_C": FANO_C, "L_N": FANO_N, "labellings": 30})


@check("fano_pair_intersections", 13, applies=_is("E7"))
def _fano_pairs(rs, cfg):
    return _from_report(exc.labelling_pair_intersections(rs))


@check("fano_level_formula", 13, applies=_is("E7"))
def _fano_level(rs, cfg):
    return _from_report(exc.e7_level_formula(rs))


@check("x_height_one", 14, applies=_is("E7", "E8"))
def _xht(rs, cfg):
    return _from_report(exc.xht_report(rs))


@check("steiner_quadruples", 14, applies=_is("E8"))
def _steiner(rs, cfg):
    return _from_report(exc.steiner_all(rs))


@check("hadamard", 14, applies=_is("E8"))
def _hadamard(rs, cfg):
    rep = exc.hadamard_check(rs)
    rep.expect(rep.details["rows"] == HADAMARD_ROWS, "rows differ from the reference matrix")
    return _from_report(rep, expected={"rows": HADAMARD_ROWS, "det": 4096})


@check("same_parity_intersections", 14, applies=_is("E8"))
def _inter(rs, cfg):
    return _from_report(exc.gamma_intersections(rs))


@check("srg_gamma", 14, applies=_is("E8"))
def _srg_gamma(rs, cfg):
    res = exc.srg_certify(exc.build_gamma(rs))
    exp = (120, 63, 30, 36)
    return res.params == exp, list(exp), res.params or res.witness


@check("srg_orthogonality", 14, applies=_is("E8"))
def _srg_ortho(rs, cfg):
    res = exc.srg_certify(exc.build_orthogonality_graph(rs))
    exp = (120, 63, 30, 36)
    return res.params == exp, list(exp), res.params or res.witness


@check("orthogonality_cliques", 14, applies=_is("E8"))
def _cliques(rs, cfg):
    g = exc.build_orthogonality_graph(rs)
    cl = exc.maximum_cliques(g, 8, cfg.workers)
    same = sorted(cl) == sorted(space(rs).elements)
    return len(cl) == 2025 and same, 2025, len(cl)


@check("distinguish_graphs", 14, applies=_is("E8"), full_only=_is("E8"))
def _distinguish(rs, cfg):
    g, o = exc.build_gamma(rs), exc.build_orthogonality_graph(rs)
    rep = exc.distinguish_graphs(g, o, cfg.workers)
    return _from_report(rep, expected="gamma takes >= 2 values, orthogonality graph 1")


# -- type D consistency -------------------------------------------------------


@check("phi_action", 15, applies=_is_d)
def _phi(rs, cfg):
    return _from_report(qpar.phi_action_report(rs))


@check("bruhat_isomorphism", 15, applies=_is_d)
def _bruhat(rs, cfg):
    return _from_report(qpar.bruhat_iso_typeD(rs))


@check("matching_roundtrip", 15, applies=_is_d)
def _roundtrip(rs, cfg):
    X = space(rs)
    bad = [x for x in X.elements if nroot_of_matching(rs, matching_of(rs, x)) != x]
    return not bad, 0, len(bad)


def checks_for(stype: SystemType) -> list[Check]:
    return [c for c in CHECKS if c.applies(stype)]


def run_check(c: Check, rs: RootSystem, cfg: VerifyConfig) -> VerifyRecord:
    params = {"full": cfg.full, "seed": cfg.seed, "criterion": c.criterion}
    if c.full_only(rs.stype) and not cfg.full:
        return VerifyRecord(c.name, rs.stype.name, params,
                            None, None, None, 0.0, skipped=True)
    start = time.perf_counter()
    out = c.fn(rs, cfg)
    elapsed = round(time.perf_counter() - start, 3)
    passed, expected, actual = out[:3]
    witnesses = list(out[3]) if len(out) > 3 else []
    return VerifyRecord(c.name, rs.stype.name, params, bool(passed), expected, actual, elapsed,
                        witnesses=witnesses)


def run_suite(cfg: VerifyConfig, progress: Callable[[VerifyRecord], None] | None = None) -> list[VerifyRecord]:
    if cfg.stype.name not in SUPPORTED:
        raise UsageError(f"unsupported type {cfg.stype}")
    rs = system(cfg.stype.name)
    records = []
    for c in checks_for(cfg.stype):
        rec = run_check(c, rs, cfg)
        records.append(rec)
        if progress:
            progress(rec)
    return records


def summary(records: list[VerifyRecord]) -> dict:
    return {
        "checks": len(records),
        "passed": sum(1 for r in records if r.passed),
        "failed": sum(1 for r in records if r.passed is False),
        "skipped": sum(1 for r in records if r.skipped),
    }
