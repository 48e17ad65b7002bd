"""Search for Coxeter-element orbits that cover every positive root exactly once.

For each type, report the first covering seed for c = s_1 s_2 ... s_n, whether
theta_N is such a seed, and how many seeds cover in total.
"""

import argparse

from orthoroots import system
from orthoroots.nroots import space
from orthoroots.qpar import build_order
from orthoroots.rootsys import SUPPORTED
from orthoroots.special import coxeter_orbit, coxeter_word


def survey(name: str) -> dict:
    rs = system(name)
    X = space(rs)
    word = coxeter_word(rs)
    covering = [x for x in range(len(X)) if coxeter_orbit(rs, word, x).covering]
    theta_n = build_order(rs).theta_N
    return {
        "type": name,
        "orbit_length": rs.stype.coxeter_number // 2,
        "covering_seeds": len(covering),
        "first_seed": covering[0] if covering else None,
        "first_seed_components": [rs.positive_roots[b] for b in X.elements[covering[0]]] if covering else None,
        "theta_N_covers": theta_n in covering,
    }


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("types", nargs="*", default=list(SUPPORTED))
    for name in p.parse_args().types:
        r = survey(name)
        print(f"{r['type']:4s} h/2={r['orbit_length']:2d} covering seeds={r['covering_seeds']:4d} "
              f"first={r['first_seed']} theta_N covers={r['theta_N_covers']}")
        print(f"     components of first seed: {r['first_seed_components']}")
