"""Numerical fixed-point iteration, exact enumeration of crisp solutions,
and grounded propagation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .equations import EquationSystem, Op, evaluate
from .framework import Framework, check_bound, restrict

HALF = Fraction(1, 2)
CRISP_GRID = (Fraction(0), HALF, Fraction(1))
CRISP_BOUND = 24


class NonConvergence(RuntimeError):
    """Iteration stopped at ``max_iterations`` above tolerance.

    This says the iteration oscillated or crawled, not that no solution
    exists: every system here has one.
    """

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"no convergence after {iterations} iterations (max residual {residual:.3e})")


@dataclass(frozen=True)
class IterationParams:
    damping: float = 0.5
    tolerance: float = 1e-9
    max_iterations: int = 100_000
    initial: float | Mapping[str, float] = 0.5

    def __post_init__(self):
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer")


@dataclass(frozen=True)
class NumericResult:
    values: dict[str, float]
    iterations: int
    max_residual: float


def iterate_fixed_point(sys: EquationSystem, params: IterationParams | None = None) -> NumericResult:
    """Damped successive approximation ``v <- (1-d) v + d h(v)``.

    Updates are synchronous, so the result does not depend on variable
    order.  Clamped variables sit at 0 throughout.
    """
    p = params or IterationParams()
    if isinstance(p.initial, Mapping):
        v = {x: float(p.initial[x]) for x in sys.variables}
    else:
        v = {x: float(p.initial) for x in sys.variables}
    for x in sys.clamped:
        v[x] = 0.0
    lam = p.damping
    res = evaluate(sys, v).max_residual
    it = 0
    while res > p.tolerance:
        if it >= p.max_iterations:
            raise NonConvergence(it, res)
        hv = sys.h(v)
        v = {x: (1 - lam) * v[x] + lam * hv[x] for x in sys.variables}
        it += 1
        res = evaluate(sys, v).max_residual
    return NumericResult(v, it, res)


def _variable_order(sys: EquationSystem) -> list[str]:
    # attackers before targets where the dependency graph allows it, so
    # forward checking fires early
    from .loops import scc_decompose

    f = Framework(
        sys.variables,
        frozenset((a, x) for x in sys.variables for a in sys.equations[x].attackers),
    )
    return [x for cls in scc_decompose(f).classes for x in cls]


def enumerate_crisp_solutions(sys: EquationSystem, bound: int | None = CRISP_BOUND) -> list[dict[str, Fraction]]:
    """Every exact solution with all values in {0, 1/2, 1}.

    Backtracking in dependency order; a variable whose attackers are all
    assigned is forced to its equation's value, and an assigned variable is
    rejected as soon as a completed attack group caps ``h_x`` below it.
    """
    check_bound("crisp enumeration", len(sys), bound)
    order = _variable_order(sys)
    eqs = sys.equations
    dependents: dict[str, list[str]] = {x: [] for x in sys.variables}
    for x in sys.variables:
        for a in eqs[x].attackers:
            dependents[a].append(x)
    grid = set(CRISP_GRID)
    out: list[dict[str, Fraction]] = []

    def upper_bound(x: str, v: dict) -> Fraction:
        e = eqs[x]
        if e.clamped:
            return Fraction(0)
        ub = Fraction(1)
        for g in e.groups:
            if all(m in v for m in g):
                if e.op is Op.MAX:
                    ub = min(ub, 1 - min(v[m] for m in g))
                else:
                    prod = Fraction(1)
                    for m in g:
                        prod *= v[m]
                    ub = min(ub, 1 - prod)
        return ub

    def consistent(x: str, v: dict) -> bool:
        e = eqs[x]
        if all(a in v for a in e.attackers):
            return v[x] == e.value(v)
        return v[x] <= upper_bound(x, v)

    def assign(x: str, val: Fraction, v: dict) -> dict | None:
        v = dict(v)
        v[x] = val
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for y in [u] + dependents[u]:
                if y in v:
                    if not consistent(y, v):
                        return None
                elif all(a in v for a in eqs[y].attackers):
                    hv = eqs[y].value(v)
                    if hv not in grid:
                        return None
                    v[y] = Fraction(hv)
                    queue.append(y)
        return v

    def search(i: int, v: dict) -> None:
        while i < len(order) and order[i] in v:
            i += 1
        if i == len(order):
            out.append(v)
            return
        x = order[i]
        choices = (Fraction(0),) if eqs[x].clamped else CRISP_GRID
        for val in choices:
            nv = assign(x, val, v)
            if nv is not None:
                search(i + 1, nv)

    start: dict | None = {}
    for x in order:
        if not eqs[x].attackers and x not in start:
            start = assign(x, Fraction(eqs[x].value({})), start)
            if start is None:
                return []
    search(0, start)
    out.sort(key=lambda s: tuple(s[x] for x in sys.variables))
    return [{x: s[x] for x in sys.variables} for s in out]


def grounded_propagate(f: Framework, forced_zero: Iterable[str] = ()) -> tuple[dict[str, int], Framework]:
    """Least fixed point of the crisp decision rules.

    ``x`` becomes 0 if it is forced or some attacker is 1, and 1 if every
    attacker is 0.  Returns the decided values and the framework induced
    on what is left undecided.  With nothing forced the decided part is
    the grounded labelling (1 = IN, 0 = OUT).
    """
    zero = f.check_subset(forced_zero, "forced-zero set")
    val: dict[str, int] = {}
    pending = {x: len(f.attackers[x]) for x in f.arguments}
    queue: deque[str] = deque()
    for x in f.arguments:
        if x in zero:
            val[x] = 0
            queue.append(x)
    for x in f.arguments:
        if x not in val and pending[x] == 0:
            val[x] = 1
            queue.append(x)
    while queue:
        u = queue.popleft()
        for t in f.targets[u]:
            if t in val:
                continue
            if val[u] == 1:
                val[t] = 0
                queue.append(t)
            else:
                pending[t] -= 1
                if pending[t] == 0:
                    val[t] = 1
                    queue.append(t)
    rest = [x for x in f.arguments if x not in val]
    return {x: val[x] for x in f.arguments if x in val}, restrict(f, rest)
