"""Wall-clock cost of the main stages, from a cold start per type."""

import argparse
import time

from orthoroots import build
from orthoroots import macdonald as mac
from orthoroots import qpar, special
from orthoroots.nroots import space
from orthoroots.rootsys import SUPPORTED

STAGES = [
    ("roots", lambda rs: rs),
    ("n-roots", space),
    ("order", qpar.build_order),
    ("qp axioms", lambda rs: (qpar.verify_qp1(rs), qpar.verify_qp2(rs))),
    ("normal forms", lambda rs: mac.change_of_basis(rs)),
    ("sigma classes", special.sigma_class_report),
    ("eulerian", special.mobius_eulerian_check),
    ("oracle", mac.oracle_report),
]


def run(name: str) -> list[tuple[str, float]]:
    start = time.perf_counter()
    rs = build(name)
    out = [("roots", time.perf_counter() - start)]
    for label, fn in STAGES[1:]:
        start = time.perf_counter()
        fn(rs)
        out.append((label, time.perf_counter() - start))
    return out


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("types", nargs="*", default=list(SUPPORTED))
    names = p.parse_args().types
    print("type  " + "  ".join(f"{label:>13s}" for label, _ in STAGES))
    for name in names:
        print(f"{name:4s}  " + "  ".join(f"{t:12.2f}s" for _, t in run(name)))
