"""Joint attacks and their encoding into ordinary frameworks.

A joint attack ``A ~> c`` succeeds only when every member of ``A`` is
accepted.  ``encode_standard`` simulates it with auxiliary nodes: each
source ``a`` gets ``x(a)`` (attacked by ``a``), each attack gets a ``y``
node attacked by all the ``x(a)``, and ``y`` attacks ``c``.  So ``y`` is
in exactly when all sources are in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .equations import EquationSystem, as_op, make_equation
from .framework import (
    ZERO_PREFIX,
    Framework,
    FrameworkError,
    ParseError,
)

X_PREFIX = "__x_"
Y_PREFIX = "__y_"
RESERVED = (ZERO_PREFIX, X_PREFIX, Y_PREFIX)

_NAME = r"[A-Za-z0-9_]+"
_STATEMENT = re.compile(
    rf"\s*(?:(arg)\(\s*({_NAME})\s*\)"
    rf"|(att)\(\s*({_NAME})\s*,\s*({_NAME})\s*\)"
    rf"|(jatt)\(\s*\[\s*({_NAME}(?:\s*,\s*{_NAME})*)\s*\]\s*,\s*({_NAME})\s*\))\s*\."
)


@dataclass(frozen=True)
class JointFramework:
    arguments: tuple[str, ...] = ()
    joint_attacks: frozenset[tuple[tuple[str, ...], str]] = field(default_factory=frozenset)

    def __post_init__(self):
        args = tuple(sorted(self.arguments))
        if len(set(args)) != len(args):
            raise FrameworkError("duplicate argument names")
        names = set(args)
        norm = set()
        for sources, target in self.joint_attacks:
            src = tuple(sorted(set(sources)))
            if not src:
                raise FrameworkError(f"joint attack on {target} has no sources")
            for n in src + (target,):
                if n not in names:
                    raise FrameworkError(f"joint attack names unknown argument {n!r}")
            norm.add((src, target))
        object.__setattr__(self, "arguments", args)
        object.__setattr__(self, "joint_attacks", frozenset(norm))

    def groups_on(self, x: str) -> list[tuple[str, ...]]:
        return sorted(src for src, t in self.joint_attacks if t == x)

    @classmethod
    def from_framework(cls, f: Framework) -> "JointFramework":
        return cls(f.arguments, frozenset(((x,), y) for x, y in f.attacks))


def parse_joint(text: str) -> JointFramework:
    """Read APX extended with ``jatt([a,b],c).`` clauses."""
    args: dict[str, int] = {}
    atts: list[tuple[tuple[str, ...], str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        pos = 0
        while pos < len(line):
            m = _STATEMENT.match(line, pos)
            if m is None:
                rest = line[pos:].strip()
                if not rest:
                    break
                raise ParseError(f"cannot parse {rest!r}", lineno)
            if m.group(1):
                name = m.group(2)
                if name in args:
                    raise ParseError(f"duplicate argument {name!r} (first declared on line {args[name]})", lineno)
                if name.startswith(RESERVED):
                    raise ParseError(f"argument {name!r} uses a reserved prefix", lineno)
                args[name] = lineno
            elif m.group(3):
                atts.append(((m.group(4),), m.group(5), lineno))
            else:
                sources = tuple(s.strip() for s in m.group(7).split(","))
                atts.append((sources, m.group(8), lineno))
            pos = m.end()
    for sources, target, lineno in atts:
        for n in sources + (target,):
            if n not in args:
                raise ParseError(f"attack on {target} references undeclared argument {n!r}", lineno)
    return JointFramework(tuple(args), frozenset((s, t) for s, t, _ in atts))


def serialize_joint(jf: JointFramework) -> str:
    lines = [f"arg({a})." for a in jf.arguments]
    for src, t in sorted(jf.joint_attacks):
        if len(src) == 1:
            lines.append(f"att({src[0]},{t}).")
        else:
            lines.append(f"jatt([{','.join(src)}],{t}).")
    return "".join(line + "\n" for line in lines)


def joint_equations(jf: JointFramework, kind="max") -> EquationSystem:
    op = as_op(kind)
    return EquationSystem(jf.arguments, {x: make_equation(op, jf.groups_on(x)) for x in jf.arguments})


def x_name(a: str) -> str:
    return X_PREFIX + a


def y_name(sources: Iterable[str], target: str) -> str:
    return f"{Y_PREFIX}{target}__{'_'.join(sorted(sources))}"


def encode_standard(jf: JointFramework) -> tuple[Framework, dict[str, str]]:
    """Ordinary framework simulating ``jf``, plus provenance for every node.

    Provenance is ``"original"`` for input arguments, ``"x:<a>"`` for the
    shared auxiliary of source ``a`` and ``"y:<a,b>-><c>"`` for the
    per-attack node.
    """
    clash = [a for a in jf.arguments if a.startswith(RESERVED)]
    if clash:
        raise FrameworkError(f"argument(s) {', '.join(clash)} collide with reserved prefixes")
    prov = {a: "original" for a in jf.arguments}
    attacks: set[tuple[str, str]] = set()
    for src, t in sorted(jf.joint_attacks):
        if len(src) == 1:
            attacks.add((src[0], t))
            continue
        y = y_name(src, t)
        if y in prov:
            raise FrameworkError(f"auxiliary name {y!r} is ambiguous")
        prov[y] = f"y:{','.join(src)}->{t}"
        for a in src:
            xa = x_name(a)
            prov.setdefault(xa, f"x:{a}")
            attacks.add((a, xa))
            attacks.add((xa, y))
        attacks.add((y, t))
    return Framework(tuple(prov), frozenset(attacks)), dict(sorted(prov.items()))


def originals(prov: dict[str, str]) -> list[str]:
    return [n for n, p in prov.items() if p == "original"]
