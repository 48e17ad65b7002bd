"""Run the verification suite for several types and write one JSON report each."""

import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from orthoroots.rootsys import SUPPORTED, SystemType
from orthoroots.verify import VerifyConfig, run_suite, summary


@dataclass
class Experiment:
    types: list[str] = field(default_factory=lambda: list(SUPPORTED))
    full: bool = False
    seed: int = 0
    out_dir: Path = Path("reports")


def main(exp: Experiment) -> int:
    exp.out_dir.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in exp.types:
        start = time.perf_counter()
        records = run_suite(VerifyConfig(SystemType.parse(name), full=exp.full, seed=exp.seed))
        s = summary(records)
        failed += s["failed"]
        path = exp.out_dir / f"verify_{name}.json"
        path.write_text(json.dumps([r.to_dict() for r in records], indent=2, default=str) + "\n")
        print(f"{name:4s} {s['passed']:3d}/{s['checks']} passed, {s['skipped']} skipped, "
              f"{time.perf_counter() - start:6.1f}s -> {path}")
    return 1 if failed else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("types", nargs="*", default=list(SUPPORTED))
    p.add_argument("--full", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", type=Path, default=Path("reports"))
    a = p.parse_args()
    raise SystemExit(main(Experiment(a.types, a.full, a.seed, a.out_dir)))
