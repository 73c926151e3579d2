#!/usr/bin/env python3
"""Random sweep comparing LB2 with CF2 (and, for the record, LB3 with LB4).

    python3 scripts/check_lb2_cf2.py --per-cell 30 --seed 1
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, field

from afeq.figures import random_framework
from afeq.framework import serialize
from afeq.semantics import cf2_extensions, compare, lb_extensions


@dataclass
class SweepConfig:
    seed: int = 1
    sizes: tuple[int, ...] = (2, 3, 4, 5, 6, 7)
    probabilities: tuple[float, ...] = (0.15, 0.3, 0.5)
    per_cell: int = 28
    self_loops: bool = True


@dataclass
class SweepResult:
    config: SweepConfig
    frameworks: int = 0
    lb2_cf2_mismatches: list[str] = field(default_factory=list)
    lb3_lb4_differ: int = 0
    lb3_not_in_lb4: int = 0
    seconds: float = 0.0


def sweep(cfg: SweepConfig) -> SweepResult:
    rng = random.Random(cfg.seed)
    res = SweepResult(cfg)
    t0 = time.perf_counter()
    for n in cfg.sizes:
        for p in cfg.probabilities:
            for _ in range(cfg.per_cell):
                f = random_framework(rng, n, p, cfg.self_loops)
                res.frameworks += 1
                if not compare(cf2_extensions(f), lb_extensions(f, "lb2")[0]).equal:
                    res.lb2_cf2_mismatches.append(serialize(f))
                lb3 = lb_extensions(f, "lb3")[0].as_sets()
                lb4 = lb_extensions(f, "lb4")[0].as_sets()
                res.lb3_lb4_differ += lb3 != lb4
                res.lb3_not_in_lb4 += not lb3 <= lb4
    res.seconds = round(time.perf_counter() - t0, 2)
    return res


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--per-cell", type=int, default=SweepConfig.per_cell)
    ap.add_argument("--no-self-loops", action="store_true")
    args = ap.parse_args()
    cfg = SweepConfig(seed=args.seed, per_cell=args.per_cell, self_loops=not args.no_self_loops)
    res = sweep(cfg)
    print(json.dumps(asdict(res), indent=2))
    raise SystemExit(1 if res.lb2_cf2_mismatches else 0)


if __name__ == "__main__":
    main()
