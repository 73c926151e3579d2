#!/usr/bin/env python3
"""Every semantics on every bundled fixture, as one JSON document.

    python3 scripts/survey_figures.py > survey.json
    python3 scripts/survey_figures.py --export data/   # also write .apx files
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from afeq.figures import ALL, BUDGET_JAPX
from afeq.framework import serialize
from afeq.joint import encode_standard, originals, parse_joint
from afeq.semantics import cf2_extensions, classical_extensions, lb_extensions

CLASSICAL = ("grounded", "stable", "preferred")
POLICIES = ("lb1", "lb2", "lb3", "lb4")


def survey(f) -> dict:
    row = {s: [list(e) for e in classical_extensions(f, s).extensions] for s in CLASSICAL}
    row["cf2"] = [list(e) for e in cf2_extensions(f).extensions]
    for p in POLICIES:
        row[p] = [list(e) for e in lb_extensions(f, p)[0].extensions]
    return row


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--export", type=Path, help="directory to write fixture .apx/.japx files into")
    args = ap.parse_args()
    out = {name: survey(make()) for name, make in sorted(ALL.items())}
    enc, prov = encode_standard(parse_joint(BUDGET_JAPX))
    keep = set(originals(prov))
    budget = survey(enc)
    out["budget_encoded_restricted"] = {
        k: sorted({tuple(x for x in e if x in keep) for e in v}) for k, v in budget.items()
    }
    print(json.dumps(out, indent=1, sort_keys=True))
    if args.export:
        args.export.mkdir(parents=True, exist_ok=True)
        for name, make in ALL.items():
            (args.export / f"{name}.apx").write_text(serialize(make()))
        (args.export / "budget.japx").write_text(BUDGET_JAPX)


if __name__ == "__main__":
    main()
