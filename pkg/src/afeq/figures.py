"""Small frameworks used as worked examples and golden fixtures.

Greek letters are spelled out (alpha, beta, gamma, delta, phi) so the names
are valid APX identifiers.
"""

from __future__ import annotations

import random

from .framework import Framework


def _fw(args, attacks) -> Framework:
    if isinstance(args, str):
        args = args.split()
    return Framework(tuple(args), frozenset(tuple(a.split(">")) for a in attacks.split()))


def fig1a() -> Framework:
    """3-cycle alpha->beta->gamma->alpha with gamma and phi attacking each other."""
    return _fw("alpha beta gamma phi", "alpha>beta beta>gamma gamma>alpha gamma>phi phi>gamma")


def fig1b() -> Framework:
    """4-cycle alpha->delta->beta->gamma->alpha plus the 2-cycle gamma<->phi, as drawn."""
    return _fw(
        "alpha beta gamma delta phi",
        "alpha>delta delta>beta beta>gamma gamma>alpha gamma>phi phi>gamma",
    )


def fig1b_as_written() -> Framework:
    """The same network as listed by its equations, which omit phi->gamma."""
    return _fw("alpha beta gamma delta phi", "alpha>delta delta>beta beta>gamma gamma>alpha gamma>phi")


def fig2() -> Framework:
    """3-cycle alpha->beta->phi->alpha, all three attacking gamma, gamma->delta."""
    return _fw(
        "alpha beta gamma delta phi",
        "alpha>beta beta>phi phi>alpha alpha>gamma beta>gamma phi>gamma gamma>delta",
    )


def fig_a_to_i() -> Framework:
    """Two strongly connected parts {a,b,c} and {e,f,g,h,i} joined through d."""
    return _fw(
        "a b c d e f g h i",
        "c>a a>b b>c b>d b>e f>e e>f d>f i>f f>g g>h h>i",
    )


def self_loop_tail() -> Framework:
    """a->b->c with c also attacked by the self-attacking d."""
    return _fw("a b c d", "a>b b>c d>c d>d")


def fig5() -> Framework:
    """Cycles a->b->c->a and b->x->y->b sharing b."""
    return _fw("a b c x y", "a>b b>c c>a b>x x>y y>b")


def fig7() -> Framework:
    """9-cycle a1..a9 with chords a6->a2, a3->a8, a9->a5."""
    names = [f"a{i}" for i in range(1, 10)]
    ring = " ".join(f"{names[i]}>{names[(i + 1) % 9]}" for i in range(9))
    return _fw(names, ring + " a6>a2 a3>a8 a9>a5")


def cycle(n: int, prefix: str = "a") -> Framework:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Framework(tuple(names), frozenset((names[i], names[(i + 1) % n]) for i in range(n)))


def cycle_with_pendant(n: int, source: int) -> Framework:
    """``cycle(n)`` plus a node ``b`` attacked by ``a<source>``."""
    c = cycle(n)
    return Framework(c.arguments + ("b",), c.attacks | {(f"a{source}", "b")})


def nine_cycle() -> Framework:
    return cycle(9)


def ten_cycle_with_pendant() -> Framework:
    return cycle_with_pendant(10, 6)


def even_cycle_with_pendant(k: int) -> Framework:
    return cycle_with_pendant(2 * k, k + 1)


def random_framework(rng: random.Random, n: int, p: float, self_loops: bool = True) -> Framework:
    """Erdos-Renyi style digraph on ``n0..n<n-1>``; each ordered pair is an attack with probability ``p``."""
    names = [f"n{i}" for i in range(n)]
    atts = {(x, y) for x in names for y in names if (self_loops or x != y) and rng.random() < p}
    return Framework(tuple(names), frozenset(atts))


BUDGET_JAPX = """\
arg(a). arg(b). arg(c).
jatt([a,b],c).
jatt([a,c],b).
jatt([b,c],a).
"""

ALL = {
    "fig1a": fig1a,
    "fig1b": fig1b,
    "fig1b_as_written": fig1b_as_written,
    "fig2": fig2,
    "fig_a_to_i": fig_a_to_i,
    "self_loop_tail": self_loop_tail,
    "fig5": fig5,
    "fig7": fig7,
    "nine_cycle": nine_cycle,
    "ten_cycle_with_pendant": ten_cycle_with_pendant,
}
