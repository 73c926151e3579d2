"""Strongly connected components, top classes and loop-busters.

A loop-buster is a set of arguments meeting every directed cycle (a
self-attack is a cycle of length 1), i.e. a directed feedback vertex set.
The definition this follows states the condition as ``E & S != {}`` for every
loop ``E``, which is vacuous; every worked example reads it as ``E & B != {}``
and that is what ``is_loop_buster`` checks.
"""

from __future__ import annotations

import enum
import heapq
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .framework import Framework, FrameworkError, check_bound, restrict
from .solver import grounded_propagate

BUSTER_BOUND = 20


@dataclass(frozen=True)
class SccDecomposition:
    """Classes are listed in a topological order of the quotient graph
    (attackers first), ties broken by the sorted member tuple."""

    classes: tuple[tuple[str, ...], ...]
    class_of: dict[str, int]
    quotient_attacks: frozenset[tuple[int, int]]

    def is_trivial(self, i: int, f: Framework) -> bool:
        cls = self.classes[i]
        return len(cls) == 1 and cls[0] not in f.self_attacking


def _tarjan(f: Framework) -> list[list[str]]:
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in f.arguments:
        if root in index:
            continue
        work = [(root, iter(f.targets[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(f.targets[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def scc_decompose(f: Framework) -> SccDecomposition:
    comps = _tarjan(f)
    raw_of = {x: i for i, c in enumerate(comps) for x in c}
    edges = {(raw_of[x], raw_of[y]) for x, y in f.attacks if raw_of[x] != raw_of[y]}
    indeg = [0] * len(comps)
    succ: list[set[int]] = [set() for _ in comps]
    for i, j in edges:
        succ[i].add(j)
    for i, j in edges:
        indeg[j] += 1
    heap = [(tuple(comps[i]), i) for i in range(len(comps)) if indeg[i] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (tuple(comps[j]), j))
    new_index = {old: new for new, old in enumerate(order)}
    classes = tuple(tuple(comps[i]) for i in order)
    class_of = {x: new_index[raw_of[x]] for x in f.arguments}
    quotient = frozenset((new_index[i], new_index[j]) for i, j in edges)
    return SccDecomposition(classes, class_of, quotient)


def top_classes(d: SccDecomposition, f: Framework | None = None) -> list[tuple[str, ...]]:
    """Classes no other class attacks, unattacked singletons included."""
    attacked = {j for _, j in d.quotient_attacks}
    return [cls for i, cls in enumerate(d.classes) if i not in attacked]


def cyclic_arguments(f: Framework) -> frozenset[str]:
    """Arguments lying on some directed cycle."""
    d = scc_decompose(f)
    return frozenset(x for i, cls in enumerate(d.classes) if not d.is_trivial(i, f) for x in cls)


def is_acyclic(f: Framework) -> bool:
    indeg = {x: len(f.attackers[x]) for x in f.arguments}
    queue = deque(x for x in f.arguments if indeg[x] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for t in f.targets[u]:
            indeg[t] -= 1
            if indeg[t] == 0:
                queue.append(t)
    return seen == len(f)


def is_loop_buster(f: Framework, busters: Iterable[str]) -> bool:
    b = f.check_subset(busters, "buster set")
    return is_acyclic(restrict(f, f.argument_set - b))


def is_complete_loop(f: Framework) -> bool:
    """Every argument lies on some cycle."""
    return cyclic_arguments(f) == f.argument_set


class BusterKind(enum.Enum):
    ABSOLUTE = "absolute"
    RELATIVE = "relative"
    COMPUTATIONAL_ABSOLUTE = "comp-absolute"
    COMPUTATIONAL_RELATIVE = "comp-relative"
    RAW = "raw"


@dataclass(frozen=True)
class BusterSet:
    members: tuple[str, ...]
    kind: BusterKind
    induced_zero: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"members": list(self.members), "kind": self.kind.value, "induced_zero": list(self.induced_zero)}


# --- exact feedback vertex set search ------------------------------------


def _core(nodes: set[str], f: Framework) -> set[str]:
    """Drop nodes with no in- or out-neighbour inside ``nodes`` until stable;
    such nodes lie on no cycle and never belong to a minimal buster."""
    core = set(nodes)
    indeg = {x: sum(1 for a in f.attackers[x] if a in core) for x in core}
    outdeg = {x: sum(1 for t in f.targets[x] if t in core) for x in core}
    queue = deque(x for x in core if indeg[x] == 0 or outdeg[x] == 0)
    while queue:
        u = queue.popleft()
        if u not in core:
            continue
        core.discard(u)
        for t in f.targets[u]:
            if t in core:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
        for a in f.attackers[u]:
            if a in core:
                outdeg[a] -= 1
                if outdeg[a] == 0:
                    queue.append(a)
    return core


def _shortest_cycle_through(s: str, core: set[str], f: Framework) -> list[str] | None:
    if s in f.self_attacking:
        return [s]
    parent = {s: None}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for t in f.targets[u]:
            if t not in core:
                continue
            if t == s:
                path = [u]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if t not in parent:
                parent[t] = u
                queue.append(t)
    return None


def _branch_cycle(core: set[str], kept: frozenset[str], f: Framework) -> list[str]:
    """Unkept vertices of the cycle with fewest unkept vertices (shortest on ties)."""
    best: tuple[int, int, list[str]] | None = None
    for s in sorted(core):
        cyc = _shortest_cycle_through(s, core, f)
        if cyc is None:
            continue
        free = [x for x in cyc if x not in kept]
        key = (len(free), len(cyc), free)
        if best is None or key[:2] < best[:2]:
            best = key
            if not free:
                break
    assert best is not None
    return best[2]


def _fvs_candidates(f: Framework, cap: int | None) -> Iterator[frozenset[str]]:
    """Yield feedback vertex sets covering every inclusion-minimal one.

    Branch on a cycle ``c_1..c_m``: branch ``i`` deletes ``c_i`` and keeps
    ``c_1..c_{i-1}`` for good, so each minimal set is reached on exactly
    one path.  ``cap`` bounds the size of what is yielded.
    """

    def search(removed: frozenset[str], kept: frozenset[str]) -> Iterator[frozenset[str]]:
        core = _core(f.argument_set - removed, f)
        if not core:
            yield removed
            return
        if cap is not None and len(removed) >= cap:
            return
        free = _branch_cycle(core, kept, f)
        for i, v in enumerate(free):
            yield from search(removed | {v}, kept | frozenset(free[:i]))

    yield from search(frozenset(), frozenset())


def _is_minimal(f: Framework, b: frozenset[str]) -> bool:
    return all(not is_loop_buster(f, b - {x}) for x in b)


def minimal_busters(f: Framework) -> list[frozenset[str]]:
    """All inclusion-minimal loop-busters."""
    found = {b for b in _fvs_candidates(f, None) if _is_minimal(f, b)}
    return sorted(found, key=lambda s: sorted(s))


def minimum_busters(f: Framework) -> list[frozenset[str]]:
    """All loop-busters of minimum cardinality (iterative deepening)."""
    k = 0
    while True:
        found = {b for b in _fvs_candidates(f, k)}
        if found:
            return sorted(found, key=lambda s: sorted(s))
        k += 1


# --- computational busters -------------------------------------------------


def induced_zero_set(f: Framework, clamp: Iterable[str]) -> frozenset[str]:
    decided, _ = grounded_propagate(f, clamp)
    return frozenset(x for x, v in decided.items() if v == 0)


def computational_busters(f: Framework, absolute: bool) -> list[tuple[frozenset[str], frozenset[str]]]:
    """Clamp sets whose propagated zeros bust every loop, minimised by
    cardinality (``absolute``) or by inclusion.

    Clamps are drawn from arguments on cycles.  The property is not
    monotone (clamping more can release an argument another clamp had
    pinned), so every smaller subset is examined rather than just the
    one-element-smaller ones.
    """
    candidates = sorted(cyclic_arguments(f))
    found: list[tuple[frozenset[str], frozenset[str]]] = []
    for k in range(len(candidates) + 1):
        if absolute and found:
            break
        for combo in combinations(candidates, k):
            b = frozenset(combo)
            if not absolute and any(m <= b for m, _ in found):
                continue
            zeros = induced_zero_set(f, b)
            if is_loop_buster(f, zeros):
                found.append((b, zeros))
    return sorted(found, key=lambda p: sorted(p[0]))


def enumerate_busters(f: Framework, kind: BusterKind | str, bound: int | None = BUSTER_BOUND) -> list[BusterSet]:
    kind = BusterKind(kind)
    check_bound("buster enumeration", len(f), bound)
    if kind is BusterKind.ABSOLUTE:
        return [BusterSet(tuple(sorted(b)), kind) for b in minimum_busters(f)]
    if kind is BusterKind.RELATIVE:
        return [BusterSet(tuple(sorted(b)), kind) for b in minimal_busters(f)]
    if kind in (BusterKind.COMPUTATIONAL_ABSOLUTE, BusterKind.COMPUTATIONAL_RELATIVE):
        pairs = computational_busters(f, absolute=kind is BusterKind.COMPUTATIONAL_ABSOLUTE)
        return [BusterSet(tuple(sorted(b)), kind, tuple(sorted(z))) for b, z in pairs]
    raise FrameworkError(f"cannot enumerate busters of kind {kind.value!r}")
