"""Command-line front end.

    python -m orthoroots verify --type D6
    python -m orthoroots nroots list --type E7 --format json
    python -m orthoroots exc gamma --certify-srg --format edges --out gamma.txt
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import exceptional as exc
from . import macdonald as mac
from . import qpar, special
from .errors import ConfigError, UsageError
from .nroots import format_matching, matching_of, space
from .report import Report
from .rootsys import SUPPORTED, SystemType, system
from .verify import VerifyConfig, run_suite, summary

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "text", "dot", "edges")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--type", dest="stype", default="D6", help="one of " + ", ".join(SUPPORTED))
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", type=Path)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--full", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="orthoroots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("roots", parents=[common], help="positive roots and embedding")

    nr = sub.add_parser("nroots", help="positive n-roots").add_subparsers(dest="action", required=True)
    nr.add_parser("list", parents=[common])

    qp = sub.add_parser("qpar", help="quasiparabolic structure").add_subparsers(dest="action", required=True)
    v = qp.add_parser("verify", parents=[common])
    v.add_argument("--axioms", action="store_true", help="only QP1 and QP2")
    qp.add_parser("hasse", parents=[common])

    md = sub.add_parser("macd", help="bases of the Macdonald representation").add_subparsers(
        dest="action", required=True
    )
    b = md.add_parser("basis", parents=[common])
    b.add_argument("--kind", choices=("noncrossing", "nonnesting"), default="noncrossing")
    md.add_parser("cob", parents=[common])

    sp = sub.add_parser("special", help="sigma classes, w_N, cyclic sieving").add_subparsers(
        dest="action", required=True
    )
    sp.add_parser("sigma-classes", parents=[common])
    sp.add_parser("wn", parents=[common])
    sp.add_parser("csp", parents=[common])

    ex = sub.add_parser("exc", help="E7 and E8 structures").add_subparsers(dest="action", required=True)
    g = ex.add_parser("gamma", parents=[common])
    g.add_argument("--certify-srg", action="store_true")
    g.add_argument("--graph", choices=("gamma", "orthogonality"), default="gamma")
    f = ex.add_parser("fano", parents=[common])
    f.add_argument("--element", default="thetaC", help="thetaC, thetaN or an element ID")

    sub.add_parser("verify", parents=[common], help="run every check for one type")
    return parser


def _stype(args) -> SystemType:
    try:
        t = SystemType.parse(args.stype)
    except ConfigError as err:
        raise UsageError(str(err)) from err
    if t.name not in SUPPORTED:
        raise UsageError(f"unsupported type {t}; choose from {', '.join(SUPPORTED)}")
    return t


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out is None:
        sys.stdout.write(text)
        return
    try:
        args.out.write_text(text)
    except OSError as err:
        raise OSError(f"cannot write {args.out}: {err.strerror}") from err


def _json(obj) -> str:
    return json.dumps(obj, indent=2, default=_jsonable)


def _jsonable(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_dict"):
        return o.to_dict()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _components(rs, x):
    return [list(rs.positive_roots[b]) for b in space(rs).elements[x]]


def _record(rs, x) -> dict:
    X = space(rs)
    rec = {"id": x, "components": _components(rs, x), "level": X.level[x],
           "counts": dict(zip("ACN", X.counts[x].astuple())), "sigma": list(X.sigma(x))}
    if rs.stype.is_type_d:
        rec["matching"] = format_matching(matching_of(rs, X.elements[x]))
    return rec


def _report_status(reps: list[Report]) -> int:
    return EXIT_OK if all(r.passed for r in reps) else EXIT_FAIL


def cmd_roots(args) -> int:
    rs = system(_stype(args).name)
    if args.format == "json":
        _emit(args, _json(rs.to_json_dict()))
    else:
        lines = [f"{rs.stype}: {rs.num_positive} positive roots, highest {rs.highest_root()}"]
        lines += [f"{i}\t{r}\tht={rs.heights[i]}" for i, r in enumerate(rs.positive_roots)]
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_nroots(args) -> int:
    rs = system(_stype(args).name)
    X = space(rs)
    records = [_record(rs, x) for x in range(len(X))]
    if args.format == "json":
        _emit(args, _json(records))
    else:
        lines = [f"{rs.stype}: {len(X)} positive {rs.rank}-roots"]
        for r in records:
            tag = r.get("matching", r["components"])
            lines.append(f"{r['id']}\tlevel={r['level']}\tA,C,N={tuple(r['counts'].values())}\t{tag}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_qpar(args) -> int:
    rs = system(_stype(args).name)
    if args.action == "hasse":
        P = qpar.build_order(rs)
        if args.format == "dot":
            lines = ["digraph hasse {"]
            lines += [f'  {x} [label="{x}:{lam}"];' for x, lam in enumerate(P.level)]
            lines += [f"  {u} -> {v};" for u, v in P.covers]
            _emit(args, "\n".join(lines + ["}"]))
        elif args.format == "json":
            _emit(args, _json({"levels": P.level, "covers": P.covers}))
        else:
            _emit(args, P.hasse_edges())
        return EXIT_OK
    fns = [qpar.verify_qp1, qpar.verify_qp2]
    if not args.axioms:
        fns += [qpar.verify_scaled, qpar.level_change_laws, qpar.covers_report,
                qpar.abstract_characterizations, qpar.xi_parity_report]
    reps = [f(rs) for f in fns]
    _emit_reports(args, reps)
    return _report_status(reps)


def _emit_reports(args, reps: list[Report]) -> None:
    if args.format == "json":
        _emit(args, _json([r.to_dict() for r in reps]))
    else:
        _emit(args, "\n".join(
            f"{'PASS' if r.passed else 'FAIL'} {r.check}: {r.checked} checked, {r.failures} failed" for r in reps
        ))


def cmd_macd(args) -> int:
    rs = system(_stype(args).name)
    if args.action == "basis":
        nc, nn = mac.bases(rs)
        ids = nc if args.kind == "noncrossing" else nn
        records = [_record(rs, x) for x in ids]
        if args.format == "json":
            _emit(args, _json({"kind": args.kind, "dimension": len(ids), "elements": records}))
        else:
            lines = [f"{rs.stype}: {args.kind} basis, dimension {len(ids)}"]
            lines += [f"{r['id']}\t{r.get('matching', r['components'])}" for r in records]
            _emit(args, "\n".join(lines))
        return EXIT_OK
    cob = mac.change_of_basis(rs)
    ok = mac.is_unitriangular(cob.matrix) and mac.is_unitriangular(cob.inverse)
    if args.format == "json":
        _emit(args, _json({**cob.to_json_dict(), "unitriangular": ok}))
    else:
        lines = [f"# rows: nonnesting {cob.nonnesting}", f"# columns: noncrossing {cob.ordering}"]
        lines += [" ".join(f"{v:3d}" for v in row) for row in cob.matrix]
        _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_special(args) -> int:
    rs = system(_stype(args).name)
    if args.action == "sigma-classes":
        rows = [
            {"sigma": list(c.sigma), "size": len(c.members), "members": c.members,
             "min_nonnesting": c.min_nonnesting, "max_noncrossing": c.max_noncrossing,
             "poincare": special.format_poly(p), "factors": dec}
            for c, p, dec in special.class_poincare(rs)
        ]
        if args.format == "json":
            _emit(args, _json(rows))
        else:
            _emit(args, "\n".join(
                f"{r['sigma']}\tsize={r['size']}\t[{r['min_nonnesting']}, {r['max_noncrossing']}]\t{r['poincare']}"
                for r in rows
            ))
        return EXIT_OK
    if args.action == "wn":
        rep = special.nonnesting_report(rs)
        lat = special.weak_interval_lattice(rs)
        data = {"word": rep.details["word"], "length": len(rep.details["word"]), "filters": len(lat.filters),
                "passed": rep.passed}
        if args.format == "json":
            _emit(args, _json(data))
        else:
            word = " ".join(f"s{i}" for i in data["word"])
            _emit(args, f"w_N = {word}\nlength {data['length']}, {data['filters']} order filters")
        return _report_status([rep])
    rep = special.cyclic_sieving(rs)
    if args.format == "json":
        _emit(args, _json(rep.to_dict()))
    else:
        _emit(args, f"{'PASS' if rep.passed else 'FAIL'} fixed points of c^d: {rep.details['fixed_points']}")
    return _report_status([rep])


def cmd_exc(args) -> int:
    t = _stype(args)
    rs = system(t.name)
    if args.action == "fano":
        labels = exc.fano_labellings(rs)
        P = qpar.build_order(rs)
        key = {"thetac": P.theta_C, "thetan": P.theta_N}.get(args.element.lower())
        if key is None:
            try:
                key = int(args.element)
            except ValueError as err:
                raise UsageError(f"unknown element {args.element!r}") from err
        if key not in labels:
            raise UsageError(f"element {key} is not alignment-free")
        triples = list(labels[key].triples)
        _emit(args, _json({"element": key, "triples": triples}) if args.format == "json" else " ".join(triples))
        return EXIT_OK
    g = exc.build_gamma(rs) if args.graph == "gamma" else exc.build_orthogonality_graph(rs)
    status = EXIT_OK
    if args.certify_srg:
        res = exc.srg_certify(g)
        print(f"{g.source}: " + (f"strongly regular {res.params}" if res.ok else f"not strongly regular {res.witness}"),
              file=sys.stderr)
        status = EXIT_OK if res.ok else EXIT_FAIL
    if args.format == "dot":
        _emit(args, g.to_dot())
    elif args.format == "json":
        _emit(args, _json({"source": g.source, "vertices": g.labels, "edges": g.edges()}))
    else:
        _emit(args, g.to_edge_list())
    return status


def cmd_verify(args) -> int:
    cfg = VerifyConfig(_stype(args), full=args.full, seed=args.seed, workers=max(1, args.workers))

    def progress(rec):
        state = "SKIP" if rec.skipped else ("PASS" if rec.passed else "FAIL")
        print(f"{state} {rec.type} {rec.check} ({rec.elapsed:.2f}s)", file=sys.stderr)

    records = run_suite(cfg, progress)
    summ = summary(records)
    if args.format == "json" or args.out is not None:
        _emit(args, _json([r.to_dict() for r in records]))
    print(f"{cfg.stype}: {summ['passed']} passed, {summ['failed']} failed, {summ['skipped']} skipped "
          f"of {summ['checks']} checks", file=sys.stderr)
    return EXIT_OK if summ["failed"] == 0 else EXIT_FAIL


COMMANDS = {"roots": cmd_roots, "nroots": cmd_nroots, "qpar": cmd_qpar, "macd": cmd_macd,
            "special": cmd_special, "exc": cmd_exc, "verify": cmd_verify}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
