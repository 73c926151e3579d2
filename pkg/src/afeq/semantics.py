"""Dung semantics, CF2, and the loop-busting (LB) protocol.

An LB run works stage by stage on the still-undecided part of the
framework: pick a clamp set inside the current top classes, clamp it to 0,
propagate, and repeat until everything has a value in {0, 1}.  The four
policies differ only in which clamp sets a stage may pick:

    LB1  computational busters of minimum size
    LB2  the complement of a maximal conflict-free set of each top class
    LB3  inclusion-minimal computational busters
    LB4  a single argument on a cycle of some top class
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping

from .framework import (
    Framework,
    FrameworkError,
    Label,
    check_bound,
    maximal_conflict_free_sets,
    restrict,
)
from .loops import (
    BusterKind,
    BusterSet,
    computational_busters,
    scc_decompose,
    top_classes,
)
from .solver import grounded_propagate

LABEL_BOUND = 24
CF2_BOUND = 20
LB_BOUND = 20


class ProtocolError(RuntimeError):
    """An LB run broke one of its own invariants."""


@dataclass(frozen=True)
class ExtensionSet:
    semantics: str
    extensions: tuple[tuple[str, ...], ...]

    @classmethod
    def of(cls, semantics: str, sets: Iterable[Iterable[str]]) -> "ExtensionSet":
        exts = sorted({tuple(sorted(s)) for s in sets})
        return cls(semantics, tuple(exts))

    def as_sets(self) -> set[frozenset[str]]:
        return {frozenset(e) for e in self.extensions}

    def __iter__(self) -> Iterator[frozenset[str]]:
        return (frozenset(e) for e in self.extensions)

    def __len__(self) -> int:
        return len(self.extensions)

    def __contains__(self, item: object) -> bool:
        return tuple(sorted(item)) in self.extensions  # type: ignore[arg-type]


# --- classical semantics -------------------------------------------------


class Semantics(enum.Enum):
    GROUNDED = "grounded"
    COMPLETE = "complete"
    STABLE = "stable"
    PREFERRED = "preferred"


def complete_labellings(f: Framework, bound: int | None = LABEL_BOUND) -> list[dict[str, Label]]:
    """All complete labellings, by backtracking in SCC order.

    An argument is checked as soon as it and all its attackers carry a
    label: IN needs every attacker OUT, OUT needs some attacker IN, UND
    needs neither.
    """
    check_bound("labelling enumeration", len(f), bound)
    order = [x for cls in scc_decompose(f).classes for x in cls]
    out: list[dict[str, Label]] = []

    def legal(x: str, lab: dict[str, Label]) -> bool:
        atk = [lab[a] for a in f.attackers[x]]
        if lab[x] is Label.IN:
            return all(a is Label.OUT for a in atk)
        if lab[x] is Label.OUT:
            return any(a is Label.IN for a in atk)
        return not all(a is Label.OUT for a in atk) and not any(a is Label.IN for a in atk)

    def ready(x: str, lab: dict[str, Label]) -> bool:
        return x in lab and all(a in lab for a in f.attackers[x])

    def search(i: int, lab: dict[str, Label]) -> None:
        if i == len(order):
            out.append(dict(lab))
            return
        x = order[i]
        for label in (Label.IN, Label.OUT, Label.UND):
            lab[x] = label
            if all(legal(y, lab) for y in (x,) + f.targets[x] if ready(y, lab)):
                search(i + 1, lab)
            del lab[x]

    search(0, {})
    return out


def _in_set(lab: Mapping[str, Label]) -> frozenset[str]:
    return frozenset(x for x, l in lab.items() if l is Label.IN)


def classical_extensions(f: Framework, sem: Semantics | str, bound: int | None = LABEL_BOUND) -> ExtensionSet:
    sem = Semantics(sem)
    if sem is Semantics.GROUNDED:
        decided, _ = grounded_propagate(f)
        return ExtensionSet.of(sem.value, [[x for x, v in decided.items() if v == 1]])
    labs = complete_labellings(f, bound)
    if sem is Semantics.COMPLETE:
        sets = [_in_set(l) for l in labs]
    elif sem is Semantics.STABLE:
        sets = [_in_set(l) for l in labs if Label.UND not in l.values()]
    else:
        ins = {_in_set(l) for l in labs}
        sets = [s for s in ins if not any(s < t for t in ins)]
    return ExtensionSet.of(sem.value, sets)


# --- CF2 -------------------------------------------------------------------


def cf2_extensions(f: Framework, bound: int | None = CF2_BOUND) -> ExtensionSet:
    check_bound("CF2", len(f), bound)
    return ExtensionSet.of("cf2", _cf2(f))


def _cf2(f: Framework) -> list[frozenset[str]]:
    if not f.arguments:
        return [frozenset()]
    d = scc_decompose(f)
    if len(d.classes) == 1:
        return [frozenset(s) for s in maximal_conflict_free_sets(f)]
    results: list[frozenset[str]] = []

    def walk(i: int, ext: frozenset[str]) -> None:
        if i == len(d.classes):
            results.append(ext)
            return
        cls = set(d.classes[i])
        # drop members attacked by the extension from outside the class
        survivors = [x for x in d.classes[i] if not any(a in ext and a not in cls for a in f.attackers[x])]
        for sub in _cf2(restrict(f, survivors)):
            walk(i + 1, ext | sub)

    walk(0, frozenset())
    return results


def cf2_busters_for_class(f: Framework, cls: Iterable[str]) -> list[BusterSet]:
    """Clamp sets ``cls - C`` for each maximal conflict-free ``C`` of the class."""
    members = f.check_subset(cls, "class")
    tops = {frozenset(c) for c in top_classes(scc_decompose(f))}
    if members not in tops:
        raise FrameworkError(f"{sorted(members)} is not a top class")
    sub = restrict(f, members)
    out = [BusterSet(tuple(sorted(members - set(c))), BusterKind.RAW) for c in maximal_conflict_free_sets(sub)]
    return sorted(out, key=lambda b: b.members)


# --- LB protocol -----------------------------------------------------------


class Policy(enum.Enum):
    LB1 = "lb1"
    LB2 = "lb2"
    LB3 = "lb3"
    LB4 = "lb4"


@dataclass(frozen=True)
class Step:
    buster: tuple[str, ...]
    decided: dict[str, int]


@dataclass(frozen=True)
class LbTrace:
    steps: tuple[Step, ...]
    rank: dict[str, int] = field(init=False)
    extension: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        rank = {x: i for i, s in enumerate(self.steps, start=1) for x in s.decided}
        ext = sorted(x for s in self.steps for x, v in s.decided.items() if v == 1)
        object.__setattr__(self, "rank", dict(sorted(rank.items())))
        object.__setattr__(self, "extension", tuple(ext))

    @property
    def busters(self) -> list[tuple[str, ...]]:
        return [s.buster for s in self.steps]

    def to_dict(self) -> dict:
        return {
            "steps": [{"buster": list(s.buster), "decided": dict(sorted(s.decided.items()))} for s in self.steps],
            "rank": self.rank,
            "extension": list(self.extension),
        }


def _stage(residual: Framework, clamp: Iterable[str]) -> tuple[Step, Framework]:
    b = frozenset(clamp)
    decided, rest = grounded_propagate(residual, b)
    if not decided:
        raise ProtocolError(f"stage with clamp {sorted(b)} decided nothing on {residual!r}")
    if any(v not in (0, 1) for v in decided.values()):
        raise ProtocolError("stage produced a non-crisp value")
    return Step(tuple(sorted(b)), decided), rest


def run_protocol(f: Framework, busters: Iterable[Iterable[str]]) -> LbTrace:
    """Replay an explicit sequence of clamp sets, one per stage.

    The run must end with every argument decided.
    """
    residual = f
    steps = []
    for b in busters:
        clamp = residual.check_subset(b, "stage clamp set")
        step, residual = _stage(residual, clamp)
        steps.append(step)
    if residual.arguments:
        raise ProtocolError(f"arguments left undecided: {', '.join(residual.arguments)}")
    return LbTrace(tuple(steps))


def _cyclic_top_classes(f: Framework) -> list[tuple[str, ...]]:
    d = scc_decompose(f)
    idx = {c: i for i, c in enumerate(d.classes)}
    return [c for c in top_classes(d) if not d.is_trivial(idx[c], f)]


def policy_busters(residual: Framework, policy: Policy | str, per_class: bool = False) -> list[frozenset[str]]:
    """Clamp sets the policy allows for the next stage of ``residual``.

    Top classes never attack one another, so choosing per class and taking
    the product gives the same sets as choosing over their union;
    ``per_class`` selects the former for LB1/LB3.  Returns ``[frozenset()]``
    when no top class is cyclic (propagation alone makes progress).
    """
    policy = Policy(policy)
    tops = _cyclic_top_classes(residual)
    if not tops:
        return [frozenset()]
    if policy is Policy.LB4:
        return [frozenset([x]) for x in sorted(x for c in tops for x in c)]
    if policy is Policy.LB2:
        per = [[frozenset(b.members) for b in cf2_busters_for_class(residual, c)] for c in tops]
        return sorted({frozenset().union(*combo) for combo in product(*per)}, key=sorted)
    absolute = policy is Policy.LB1
    if per_class:
        per = [[b for b, _ in computational_busters(restrict(residual, c), absolute)] for c in tops]
        return sorted({frozenset().union(*combo) for combo in product(*per)}, key=sorted)
    union = restrict(residual, [x for c in tops for x in c])
    return [b for b, _ in computational_busters(union, absolute)]


def lb_extensions(
    f: Framework,
    policy: Policy | str,
    bound: int | None = LB_BOUND,
    traces: bool = False,
    per_class: bool = False,
) -> tuple[ExtensionSet, list[LbTrace]]:
    """All extensions reachable under ``policy``, with optional run traces.

    Decided arguments never influence what is left (an undecided argument
    has no attacker at 1), so the continuation depends only on the
    undecided set and is memoised on it.
    """
    policy = Policy(policy)
    check_bound("LB", len(f), bound)
    choice_memo: dict[frozenset[str], list[frozenset[str]]] = {}

    def choices(residual: Framework) -> list[frozenset[str]]:
        key = residual.argument_set
        if key not in choice_memo:
            got = policy_busters(residual, policy, per_class)
            if not got:
                raise ProtocolError(f"{policy.value} offered no clamp set for {residual!r}")
            choice_memo[key] = got
        return choice_memo[key]

    ext_memo: dict[frozenset[str], frozenset[frozenset[str]]] = {}

    def extensions(residual: Framework) -> frozenset[frozenset[str]]:
        key = residual.argument_set
        if not key:
            return frozenset([frozenset()])
        if key not in ext_memo:
            acc: set[frozenset[str]] = set()
            for b in choices(residual):
                step, rest = _stage(residual, b)
                ones = frozenset(x for x, v in step.decided.items() if v == 1)
                acc.update(ones | e for e in extensions(rest))
            ext_memo[key] = frozenset(acc)
        return ext_memo[key]

    result = ExtensionSet.of(policy.value, extensions(f))
    if not traces:
        return result, []

    run_memo: dict[frozenset[str], list[tuple[Step, ...]]] = {}

    def runs(residual: Framework) -> list[tuple[Step, ...]]:
        key = residual.argument_set
        if not key:
            return [()]
        if key not in run_memo:
            acc: list[tuple[Step, ...]] = []
            for b in choices(residual):
                step, rest = _stage(residual, b)
                acc.extend((step,) + tail for tail in runs(rest))
            run_memo[key] = acc
        return run_memo[key]

    return result, [LbTrace(r) for r in runs(f)]


# --- comparison --------------------------------------------------------------


@dataclass(frozen=True)
class DiffReport:
    equal: bool
    only_left: tuple[tuple[str, ...], ...]
    only_right: tuple[tuple[str, ...], ...]

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "only_left": [list(e) for e in self.only_left],
            "only_right": [list(e) for e in self.only_right],
        }


def compare(a: ExtensionSet, b: ExtensionSet) -> DiffReport:
    left, right = set(a.extensions), set(b.extensions)
    return DiffReport(left == right, tuple(sorted(left - right)), tuple(sorted(right - left)))
