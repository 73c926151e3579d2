"""Equation systems over argument values in [0, 1].

Each argument ``x`` gets one equation ``x = h_x(...)``.  Attackers are kept
as a list of *groups*: an ordinary attack by ``y`` is the singleton group
``(y,)``, a joint attack by ``a`` and ``b`` is ``(a, b)``.  With all groups
singletons the two combinators are

    MAX:      x = 1 - max(y_1, ..., y_k)
    PRODUCT:  x = (1 - y_1) * ... * (1 - y_k)

and a group contributes ``min`` (MAX) or the product (PRODUCT) of its
members in place of a single ``y``.  A clamped equation always evaluates to
0, which is what ``x = h_x * Z(x)`` with ``Z(x) = 0`` reduces to.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .framework import Framework, FrameworkError

VALUE_SLACK = 1e-12


class Op(enum.Enum):
    MAX = "max"
    PRODUCT = "prod"
    CONST_ONE = "one"


_KIND_ALIASES = {
    "max": Op.MAX,
    "inverse": Op.PRODUCT,
    "prod": Op.PRODUCT,
    "product": Op.PRODUCT,
}


def as_op(kind: Op | str) -> Op:
    if isinstance(kind, Op):
        if kind is Op.CONST_ONE:
            raise ValueError("CONST_ONE is not an equation kind")
        return kind
    try:
        return _KIND_ALIASES[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown equation kind {kind!r}; expected max or inverse") from None


@dataclass(frozen=True)
class Equation:
    op: Op
    groups: tuple[tuple[str, ...], ...] = ()
    clamped: bool = False

    @property
    def attackers(self) -> tuple[str, ...]:
        return tuple(sorted({m for g in self.groups for m in g}))

    def value(self, v: Mapping[str, float]):
        # integer constants keep Fraction inputs exact
        if self.clamped:
            return 0
        if self.op is Op.CONST_ONE:
            return 1
        if self.op is Op.MAX:
            return 1 - max(min(v[m] for m in g) for g in self.groups)
        return math.prod(1 - math.prod(v[m] for m in g) for g in self.groups)


def make_equation(kind: Op, groups: Iterable[Iterable[str]], clamped: bool = False) -> Equation:
    gs = tuple(sorted({tuple(sorted(set(g))) for g in groups}))
    if any(not g for g in gs):
        raise ValueError("attack groups must be nonempty")
    return Equation(kind if gs else Op.CONST_ONE, gs, clamped)


@dataclass(frozen=True, eq=True)
class EquationSystem:
    variables: tuple[str, ...]
    equations: Mapping[str, Equation]

    def __post_init__(self):
        if set(self.variables) != set(self.equations):
            raise ValueError("every variable needs exactly one equation")
        known = set(self.variables)
        for x, eq in self.equations.items():
            missing = set(eq.attackers) - known
            if missing:
                raise ValueError(f"equation for {x} uses unknown variable(s) {sorted(missing)}")
        object.__setattr__(self, "variables", tuple(sorted(self.variables)))

    def __getitem__(self, x: str) -> Equation:
        return self.equations[x]

    def __len__(self) -> int:
        return len(self.variables)

    @property
    def clamped(self) -> frozenset[str]:
        return frozenset(x for x, e in self.equations.items() if e.clamped)

    def h(self, v: Mapping[str, float]) -> dict[str, float]:
        return {x: self.equations[x].value(v) for x in self.variables}

    def to_dict(self) -> dict:
        eqs = {}
        for x in self.variables:
            e = self.equations[x]
            rec = {"op": e.op.value, "atk": list(e.attackers), "clamped": e.clamped}
            if any(len(g) > 1 for g in e.groups):
                rec["groups"] = [list(g) for g in e.groups]
            eqs[x] = rec
        return {"vars": list(self.variables), "eqs": eqs}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "EquationSystem":
        eqs = {}
        for x, rec in data["eqs"].items():
            op = Op(rec["op"])
            groups = rec.get("groups") or [[a] for a in rec["atk"]]
            eqs[x] = make_equation(Op.MAX if op is Op.CONST_ONE else op, groups, bool(rec["clamped"]))
        return cls(tuple(data["vars"]), eqs)

    @classmethod
    def from_json(cls, text: str) -> "EquationSystem":
        return cls.from_dict(json.loads(text))


def build_equations(f: Framework, kind: Op | str = Op.MAX) -> EquationSystem:
    op = as_op(kind)
    eqs = {x: make_equation(op, [(y,) for y in f.attackers[x]]) for x in f.arguments}
    return EquationSystem(f.arguments, eqs)


def perturb(sys: EquationSystem, zeroed: Iterable[str]) -> EquationSystem:
    """Clamp every variable in ``zeroed`` to 0. Idempotent."""
    b = frozenset(zeroed)
    unknown = b - set(sys.variables)
    if unknown:
        raise FrameworkError(f"cannot clamp unknown variable(s): {', '.join(sorted(unknown))}")
    if not b:
        return sys
    eqs = dict(sys.equations)
    for x in b:
        eqs[x] = replace(eqs[x], clamped=True)
    return EquationSystem(sys.variables, eqs)


@dataclass(frozen=True)
class Residual:
    per_variable: Mapping[str, float]
    max_residual: float


def check_valuation(sys: EquationSystem, v: Mapping[str, float]) -> None:
    missing = set(sys.variables) - set(v)
    if missing:
        raise ValueError(f"valuation is partial; missing {', '.join(sorted(missing))}")
    for x in sys.variables:
        val = float(v[x])
        if not (-VALUE_SLACK <= val <= 1 + VALUE_SLACK):
            raise ValueError(f"value {val!r} for {x} is outside [0, 1]")


def evaluate(sys: EquationSystem, v: Mapping[str, float]) -> Residual:
    check_valuation(sys, v)
    dev = {x: abs(float(v[x]) - sys.equations[x].value(v)) for x in sys.variables}
    return Residual(dev, max(dev.values(), default=0.0))


def reduce_equations(sys: EquationSystem) -> tuple[dict[str, int], EquationSystem]:
    """Substitute whatever is forced and return the leftover system.

    A variable is forced to 0 when it is clamped or one of its attack groups
    is entirely 1, and forced to 1 when every group contains a 0.  Forced
    values are substituted until nothing changes; the remaining equations
    mention only undetermined variables.
    """
    val: dict[str, int] = {}
    changed = True
    while changed:
        changed = False
        for x in sys.variables:
            if x in val:
                continue
            e = sys.equations[x]
            if e.clamped or any(all(val.get(m) == 1 for m in g) for g in e.groups):
                val[x] = 0
                changed = True
            elif all(any(val.get(m) == 0 for m in g) for g in e.groups):
                val[x] = 1
                changed = True
    rest = [x for x in sys.variables if x not in val]
    eqs = {}
    for x in rest:
        e = sys.equations[x]
        groups = [
            tuple(m for m in g if m not in val)
            for g in e.groups
            if not any(val.get(m) == 0 for m in g)
        ]
        eqs[x] = make_equation(e.op, groups)
    return val, EquationSystem(tuple(rest), eqs)


def network_from_equations(sys: EquationSystem) -> Framework:
    """The argumentation network read off an equation system.

    ``y`` attacks ``x`` when setting ``y = 1`` alone drives ``h_x`` to 0,
    i.e. when ``(y,)`` is one of x's attack groups.  For ordinary
    max/product equations that is every variable occurring in ``h_x``;
    members of a joint group attack only together and produce no edge.
    Clamped variables are dropped, as substituting their 0 removes them.
    """
    keep = [x for x in sys.variables if not sys.equations[x].clamped]
    ks = set(keep)
    attacks = {
        (g[0], x)
        for x in keep
        for g in sys.equations[x].groups
        if len(g) == 1 and g[0] in ks
    }
    return Framework(tuple(keep), frozenset(attacks))
