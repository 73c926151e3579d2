"""Argumentation frameworks: data model, TGF/APX I/O, restriction and
conflict-free set machinery."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

ZERO_PREFIX = "__z_"

_NAME = r"[A-Za-z0-9_]+"
_APX_STATEMENT = re.compile(
    rf"\s*(arg|att)\(\s*({_NAME})\s*(?:,\s*({_NAME})\s*)?\)\s*\."
)


class FrameworkError(ValueError):
    """Structurally invalid framework or argument set."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeBoundExceeded(RuntimeError):
    """An exhaustive search was asked to run on an input above its size bound."""

    def __init__(self, what: str, size: int, bound: int):
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: {size} exceeds the size bound {bound}")


def check_bound(what: str, size: int, bound: int | None) -> None:
    if bound is not None and size > bound:
        raise SizeBoundExceeded(what, size, bound)


class Label(enum.Enum):
    IN = "in"
    OUT = "out"
    UND = "undec"


@dataclass(frozen=True)
class Framework:
    """A finite attack graph.

    ``arguments`` is kept sorted and ``attacks`` is a frozenset of
    ``(attacker, target)`` pairs; both are normalised on construction so two
    frameworks with the same content compare equal.
    """

    arguments: tuple[str, ...] = ()
    attacks: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self):
        args = tuple(self.arguments)
        for a in args:
            if not isinstance(a, str) or not a:
                raise FrameworkError(f"argument names must be nonempty strings, got {a!r}")
        if len(set(args)) != len(args):
            dup = sorted({a for a in args if args.count(a) > 1})
            raise FrameworkError(f"duplicate argument(s): {', '.join(dup)}")
        attacks = frozenset((str(x), str(y)) for x, y in self.attacks)
        names = set(args)
        for x, y in sorted(attacks):
            if x not in names or y not in names:
                raise FrameworkError(f"attack ({x},{y}) names an unknown argument")
        object.__setattr__(self, "arguments", tuple(sorted(args)))
        object.__setattr__(self, "attacks", attacks)

    def __len__(self) -> int:
        return len(self.arguments)

    def __contains__(self, name: object) -> bool:
        return name in self.argument_set

    @cached_property
    def argument_set(self) -> frozenset[str]:
        return frozenset(self.arguments)

    @cached_property
    def attackers(self) -> dict[str, tuple[str, ...]]:
        acc: dict[str, list[str]] = {a: [] for a in self.arguments}
        for x, y in self.attacks:
            acc[y].append(x)
        return {a: tuple(sorted(v)) for a, v in acc.items()}

    @cached_property
    def targets(self) -> dict[str, tuple[str, ...]]:
        acc: dict[str, list[str]] = {a: [] for a in self.arguments}
        for x, y in self.attacks:
            acc[x].append(y)
        return {a: tuple(sorted(v)) for a, v in acc.items()}

    @cached_property
    def self_attacking(self) -> frozenset[str]:
        return frozenset(x for x, y in self.attacks if x == y)

    def check_subset(self, members: Iterable[str], what: str = "argument set") -> frozenset[str]:
        s = frozenset(members)
        unknown = s - self.argument_set
        if unknown:
            raise FrameworkError(f"{what} names unknown argument(s): {', '.join(sorted(unknown))}")
        return s

    def __repr__(self) -> str:
        atts = ", ".join(f"{x}->{y}" for x, y in sorted(self.attacks))
        return f"Framework({{{', '.join(self.arguments)}}}, {{{atts}}})"


# --- parsing and serialisation -------------------------------------------


def parse(text: str, fmt: str = "apx") -> Framework:
    fmt = fmt.lower()
    if fmt == "apx":
        return _parse_apx(text)
    if fmt == "tgf":
        return _parse_tgf(text)
    raise ValueError(f"unknown format {fmt!r}")


def _check_user_name(name: str, line: int) -> None:
    if name.startswith(ZERO_PREFIX):
        raise ParseError(f"argument {name!r} uses the reserved prefix {ZERO_PREFIX!r}", line)


def _build(args: list[tuple[str, int]], atts: list[tuple[str, str, int]]) -> Framework:
    seen: dict[str, int] = {}
    for name, line in args:
        if name in seen:
            raise ParseError(f"duplicate argument {name!r} (first declared on line {seen[name]})", line)
        _check_user_name(name, line)
        seen[name] = line
    for x, y, line in atts:
        for n in (x, y):
            if n not in seen:
                raise ParseError(f"attack ({x},{y}) references undeclared argument {n!r}", line)
    return Framework(tuple(seen), frozenset((x, y) for x, y, _ in atts))


def _parse_apx(text: str) -> Framework:
    args: list[tuple[str, int]] = []
    atts: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        pos = 0
        while pos < len(line):
            m = _APX_STATEMENT.match(line, pos)
            if m is None:
                rest = line[pos:].strip()
                if not rest:
                    break
                raise ParseError(f"cannot parse {rest!r}", lineno)
            kind, a, b = m.groups()
            if kind == "arg":
                if b is not None:
                    raise ParseError("arg/1 takes a single name", lineno)
                args.append((a, lineno))
            else:
                if b is None:
                    raise ParseError("att/2 takes two names", lineno)
                atts.append((a, b, lineno))
            pos = m.end()
    return _build(args, atts)


def _parse_tgf(text: str) -> Framework:
    args: list[tuple[str, int]] = []
    atts: list[tuple[str, str, int]] = []
    in_edges = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "#":
            if in_edges:
                raise ParseError("second '#' separator", lineno)
            in_edges = True
            continue
        parts = line.split()
        if not in_edges:
            if len(parts) != 1:
                raise ParseError(f"expected a single argument name, got {line!r}", lineno)
            args.append((parts[0], lineno))
        else:
            if len(parts) != 2:
                raise ParseError(f"expected 'attacker target', got {line!r}", lineno)
            atts.append((parts[0], parts[1], lineno))
    if not in_edges and args:
        raise ParseError("missing '#' separator")
    return _build(args, atts)


def serialize(f: Framework, fmt: str = "apx") -> str:
    fmt = fmt.lower()
    attacks = sorted(f.attacks)
    if fmt == "apx":
        lines = [f"arg({a})." for a in f.arguments]
        lines += [f"att({x},{y})." for x, y in attacks]
    elif fmt == "tgf":
        lines = list(f.arguments) + ["#"] + [f"{x} {y}" for x, y in attacks]
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return "".join(line + "\n" for line in lines)


# --- structural operations -----------------------------------------------


def restrict(f: Framework, keep: Iterable[str]) -> Framework:
    """Induced subframework on ``keep``."""
    k = f.check_subset(keep, "restriction set")
    return Framework(tuple(k), frozenset((x, y) for x, y in f.attacks if x in k and y in k))


def zero_name(x: str) -> str:
    return ZERO_PREFIX + x


def add_zero_attackers(f: Framework, zeroed: Iterable[str]) -> Framework:
    """Add one fresh unattacked attacker per member of ``zeroed``.

    In the max-equations the fresh node always evaluates to 1, so its target
    is pinned to 0: this is the ordinary-framework form of clamping.
    """
    b = f.check_subset(zeroed, "zero set")
    if not b:
        return f
    clash = [a for a in f.arguments if a.startswith(ZERO_PREFIX)]
    if clash:
        raise FrameworkError(f"argument(s) {', '.join(clash)} collide with the reserved prefix {ZERO_PREFIX!r}")
    new = tuple(zero_name(x) for x in sorted(b))
    return Framework(f.arguments + new, f.attacks | {(zero_name(x), x) for x in b})


def is_conflict_free(f: Framework, s: Iterable[str]) -> bool:
    members = f.check_subset(s)
    return not any(x in members and y in members for x, y in f.attacks)


def maximal_conflict_free_sets(f: Framework) -> list[tuple[str, ...]]:
    """All inclusion-maximal conflict-free sets, each sorted, list sorted.

    These are the maximal independent sets of the symmetrised attack graph
    once self-attackers are dropped, enumerated as maximal cliques of the
    complement with Bron-Kerbosch and pivoting.
    """
    nodes = [a for a in f.arguments if a not in f.self_attacking]
    conflict: dict[str, set[str]] = {a: set() for a in nodes}
    for x, y in f.attacks:
        if x != y and x in conflict and y in conflict:
            conflict[x].add(y)
            conflict[y].add(x)
    compatible = {a: set(nodes) - conflict[a] - {a} for a in nodes}

    out: list[tuple[str, ...]] = []

    def expand(r: list[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(compatible[u] & p), u))
        for v in sorted(p - compatible[pivot]):
            expand(r + [v], p & compatible[v], x & compatible[v])
            p = p - {v}
            x = x | {v}

    expand([], set(nodes), set())
    return sorted(out)
