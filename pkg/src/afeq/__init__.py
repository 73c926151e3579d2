"""Equational semantics for abstract argumentation frameworks."""

from .equations import EquationSystem, build_equations, evaluate, network_from_equations, perturb, reduce_equations
from .framework import (
    Framework,
    FrameworkError,
    ParseError,
    SizeBoundExceeded,
    add_zero_attackers,
    is_conflict_free,
    maximal_conflict_free_sets,
    parse,
    restrict,
    serialize,
)
from .joint import JointFramework, encode_standard, joint_equations, parse_joint
from .loops import BusterKind, enumerate_busters, is_loop_buster, scc_decompose, top_classes
from .semantics import (
    Policy,
    Semantics,
    cf2_busters_for_class,
    cf2_extensions,
    classical_extensions,
    compare,
    lb_extensions,
    run_protocol,
)
from .solver import IterationParams, NonConvergence, enumerate_crisp_solutions, grounded_propagate, iterate_fixed_point

__version__ = "0.1.0"
