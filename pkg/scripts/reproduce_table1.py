#!/usr/bin/env python3
"""Clamp sets of the five-node example with an even and a two-node loop.

Prints, for each clamp set, the extensions read off the {0,1}-valued
solutions of the clamped max-equations, on both readings of the network
(with and without the phi -> gamma attack).
"""

from __future__ import annotations

from dataclasses import dataclass

from afeq.equations import build_equations, perturb
from afeq.figures import fig1b, fig1b_as_written
from afeq.solver import enumerate_crisp_solutions


@dataclass(frozen=True)
class Row:
    label: str
    clamp: frozenset[str]
    listed: tuple[tuple[str, ...], ...]


ROWS = [
    Row("a", frozenset({"gamma"}), (("alpha", "beta", "phi"),)),
    Row("b", frozenset({"alpha"}), (("delta", "gamma"),)),
    Row("c", frozenset({"delta"}), (("alpha", "beta", "phi"),)),
    Row("d", frozenset({"beta"}), (("delta", "gamma"),)),
    Row("e", frozenset({"phi"}), (("alpha", "beta"), ("delta", "gamma"))),
    Row("f", frozenset({"alpha", "gamma"}), (("delta", "phi"),)),
]


def crisp(f, clamp):
    sols = enumerate_crisp_solutions(perturb(build_equations(f, "max"), clamp))
    out = {tuple(x for x, v in s.items() if v == 1) for s in sols if all(v in (0, 1) for v in s.values())}
    return tuple(sorted(out))


def fmt(exts):
    return " ".join("{" + ",".join(e) + "}" for e in exts)


def main():
    print(f"{'row':4} {'clamp':16} {'listed':28} {'without phi->gamma':28} with phi->gamma")
    for r in ROWS:
        plain = crisp(fig1b_as_written(), r.clamp)
        drawn = crisp(fig1b(), r.clamp)
        mark = "" if plain == r.listed else "  <- differs"
        print(f"{r.label:4} {fmt([sorted(r.clamp)]):16} {fmt(r.listed):28} {fmt(plain):28} {fmt(drawn)}{mark}")


if __name__ == "__main__":
    main()
