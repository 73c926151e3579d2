"""``afeq`` command-line front end.

Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 ``compare``
found a difference, 4 non-convergence or a size bound was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .equations import build_equations, perturb
from .framework import Framework, FrameworkError, ParseError, SizeBoundExceeded, parse, serialize
from .joint import JointFramework, encode_standard, parse_joint
from .loops import enumerate_busters
from .semantics import (
    ExtensionSet,
    ProtocolError,
    Semantics,
    cf2_extensions,
    classical_extensions,
    compare,
    lb_extensions,
)
from .solver import IterationParams, NonConvergence, iterate_fixed_point

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_DIFFERENT, EXIT_SOLVER = 0, 1, 2, 3, 4

SEMANTICS = ["grounded", "complete", "stable", "preferred", "cf2", "lb1", "lb2", "lb3", "lb4"]

_NAMES = {"type": "array", "items": {"type": "string"}}
_EXTS = {"type": "array", "items": _NAMES}

SCHEMAS = {
    "validate": {
        "type": "object",
        "required": ["valid", "arguments", "attacks"],
        "properties": {
            "valid": {"const": True},
            "arguments": {"type": "integer", "minimum": 0},
            "attacks": {"type": "integer", "minimum": 0},
        },
    },
    "solve": {
        "type": "object",
        "required": ["semantics", "extensions"],
        "properties": {
            "semantics": {"enum": SEMANTICS},
            "extensions": _EXTS,
            "traces": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["steps", "rank", "extension"],
                    "properties": {
                        "steps": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["buster", "decided"],
                                "properties": {
                                    "buster": _NAMES,
                                    "decided": {"type": "object", "additionalProperties": {"enum": [0, 1]}},
                                },
                            },
                        },
                        "rank": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 1}},
                        "extension": _NAMES,
                    },
                },
            },
        },
    },
    "numeric": {
        "type": "object",
        "required": ["eq", "values", "iterations", "max_residual"],
        "properties": {
            "eq": {"enum": ["max", "inverse"]},
            "values": {"type": "object", "additionalProperties": {"type": "number", "minimum": 0, "maximum": 1}},
            "iterations": {"type": "integer", "minimum": 0},
            "max_residual": {"type": "number", "minimum": 0},
        },
    },
    "busters": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["members", "kind", "induced_zero"],
            "properties": {"members": _NAMES, "kind": {"type": "string"}, "induced_zero": _NAMES},
        },
    },
    "compare": {
        "type": "object",
        "required": ["left", "right", "equal", "only_left", "only_right"],
        "properties": {
            "left": {"enum": SEMANTICS},
            "right": {"enum": SEMANTICS},
            "equal": {"type": "boolean"},
            "only_left": _EXTS,
            "only_right": _EXTS,
        },
    },
    "encode-joint": {
        "type": "object",
        "required": ["framework", "provenance"],
        "properties": {"framework": {"type": "string"}, "provenance": {"type": "object"}},
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _names(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="afeq", description="Equational semantics for argumentation frameworks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp, joint_ok=False):
        sp.add_argument("input", help="framework file, or - for stdin")
        sp.add_argument("--format", choices=["apx", "tgf"] + (["japx"] if joint_ok else []))
        sp.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
        sp.add_argument("--bound", type=int, default=None, help="override the exhaustive-search size bound")
        return sp

    with_input(sub.add_parser("validate", help="parse and check a framework"))

    sp = with_input(sub.add_parser("solve", help="compute extensions"))
    sp.add_argument("--sem", choices=SEMANTICS, required=True)
    sp.add_argument("--trace", action="store_true", help="include LB run traces")

    sp = with_input(sub.add_parser("numeric", help="damped fixed-point iteration"))
    sp.add_argument("--eq", choices=["max", "inverse"], default="max")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--damping", type=float, default=0.5)
    sp.add_argument("--max-iter", type=int, default=100_000)
    sp.add_argument("--force-zero", type=_names, default=[], metavar="A,B")

    sp = with_input(sub.add_parser("busters", help="enumerate loop-busters"))
    sp.add_argument("--kind", choices=["absolute", "relative", "comp-absolute", "comp-relative"], required=True)

    sp = with_input(sub.add_parser("compare", help="compare two semantics"))
    sp.add_argument("--left", choices=SEMANTICS, required=True)
    sp.add_argument("--right", choices=SEMANTICS, required=True)

    sp = with_input(sub.add_parser("encode-joint", help="encode joint attacks as an ordinary framework"), joint_ok=True)
    sp.add_argument("--out-format", choices=["apx", "tgf"], default="apx")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _fmt(args) -> str:
    if args.format:
        return args.format
    suffix = Path(args.input).suffix.lower().lstrip(".")
    if suffix in ("apx", "tgf", "japx"):
        return suffix
    return "apx"


def load_framework(args) -> Framework:
    fmt = _fmt(args)
    text = _read(args.input)
    if fmt == "japx":
        raise ParseError("joint-attack input is only accepted by encode-joint")
    return parse(text, fmt)


def extensions_for(f: Framework, sem: str, bound, traces=False):
    if sem in ("lb1", "lb2", "lb3", "lb4"):
        kw = {} if bound is None else {"bound": bound}
        return lb_extensions(f, sem, traces=traces, **kw)
    if sem == "cf2":
        return (cf2_extensions(f) if bound is None else cf2_extensions(f, bound)), []
    s = Semantics(sem)
    return (classical_extensions(f, s) if bound is None else classical_extensions(f, s, bound)), []


def _ext_text(exts: ExtensionSet) -> str:
    return "\n".join("{" + ", ".join(e) + "}" for e in exts.extensions) or "(none)"


def cmd_validate(args):
    f = load_framework(args)
    out = {"valid": True, "arguments": len(f), "attacks": len(f.attacks)}
    return out, f"ok: {len(f)} arguments, {len(f.attacks)} attacks", EXIT_OK


def cmd_solve(args):
    f = load_framework(args)
    exts, traces = extensions_for(f, args.sem, args.bound, traces=args.trace)
    out = {"semantics": args.sem, "extensions": [list(e) for e in exts.extensions]}
    text = _ext_text(exts)
    if args.trace and args.sem.startswith("lb"):
        recs = sorted((t.to_dict() for t in traces), key=lambda d: json.dumps(d, sort_keys=True))
        out["traces"] = recs
        for r in recs:
            text += "\ntrace: " + " ; ".join("{" + ",".join(s["buster"]) + "}" for s in r["steps"])
            text += " -> {" + ", ".join(r["extension"]) + "}"
    return out, text, EXIT_OK


def cmd_numeric(args):
    f = load_framework(args)
    try:
        params = IterationParams(args.damping, args.tol, args.max_iter)
    except ValueError as e:
        raise UsageError(str(e)) from None
    sys_ = perturb(build_equations(f, args.eq), f.check_subset(args.force_zero, "--force-zero"))
    res = iterate_fixed_point(sys_, params)
    out = {"eq": args.eq, "values": res.values, "iterations": res.iterations, "max_residual": res.max_residual}
    text = "\n".join(f"{x} = {v:.12g}" for x, v in res.values.items())
    text += f"\n({res.iterations} iterations, max residual {res.max_residual:.3e})"
    return out, text, EXIT_OK


def cmd_busters(args):
    f = load_framework(args)
    kw = {} if args.bound is None else {"bound": args.bound}
    bs = enumerate_busters(f, args.kind, **kw)
    out = [b.to_dict() for b in bs]
    lines = []
    for b in bs:
        line = "{" + ", ".join(b.members) + "}"
        if b.induced_zero:
            line += "  zeros {" + ", ".join(b.induced_zero) + "}"
        lines.append(line)
    return out, "\n".join(lines) or "(none)", EXIT_OK


def cmd_compare(args):
    f = load_framework(args)
    left, _ = extensions_for(f, args.left, args.bound)
    right, _ = extensions_for(f, args.right, args.bound)
    rep = compare(left, right)
    out = {"left": args.left, "right": args.right, **rep.to_dict()}
    if rep.equal:
        text = f"{args.left} and {args.right} agree ({len(left)} extensions)"
    else:
        text = f"{args.left} and {args.right} differ"
        text += "".join(f"\n  only {args.left}: {{{', '.join(e)}}}" for e in rep.only_left)
        text += "".join(f"\n  only {args.right}: {{{', '.join(e)}}}" for e in rep.only_right)
    return out, text, EXIT_OK if rep.equal else EXIT_DIFFERENT


def cmd_encode_joint(args):
    fmt = _fmt(args)
    text = _read(args.input)
    if fmt == "tgf":
        jf = JointFramework.from_framework(parse(text, "tgf"))
    else:
        jf = parse_joint(text)
    f, prov = encode_standard(jf)
    body = serialize(f, args.out_format)
    return {"framework": body, "provenance": prov}, body.rstrip("\n"), EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "solve": cmd_solve,
    "numeric": cmd_numeric,
    "busters": cmd_busters,
    "compare": cmd_compare,
    "encode-joint": cmd_encode_joint,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # usage errors and --help; hand back the code instead of exiting
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        out, text, code = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"afeq: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, FrameworkError) as e:
        print(f"afeq: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (NonConvergence, SizeBoundExceeded) as e:
        print(f"afeq: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except ProtocolError as e:
        print(f"afeq: internal error: {e}", file=sys.stderr)
        return EXIT_SOLVER
    if args.text:
        print(text)
    else:
        print(json.dumps(out, sort_keys=True))
    return code


def main() -> None:
    sys.exit(run())
