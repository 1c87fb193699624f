"""Command-line interface: ``constraint-minors {check,certify,realize,verify,export}``.

Exit codes: 0 positive answer, 1 negative answer (with certificate),
2 input error, 3 precondition error, 4 resource cap, 5 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import formats
from .bonds import certify
from .catalog import catalog
from .connectivity import is_3_connected
from .errors import GraphInputError, InvariantViolation, PreconditionError, ResourceLimitError
from .graph import MinorCertificate, x_components
from .realizer import Realization, cycle_matroid_equal, realize
from .verify import SWEEPS, run_sweep

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_PRECONDITION, EXIT_CAP, EXIT_INTERNAL = range(6)


def _emit(args, text: str, data: dict) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _load(args):
    return formats.read_graph(args.path, args.input_format)


def _recheck(g, cert_json: dict) -> None:
    """Independent replay of a serialized certificate before it is reported."""
    cert = MinorCertificate.from_json(cert_json)
    if not cert.check(g, catalog()[cert.target]):
        raise InvariantViolation("emitted certificate does not replay")


def cmd_check(args) -> int:
    g = _load(args)
    comps = x_components(g)
    connected = len(comps) <= 1
    word = "connected" if connected else f"{len(comps)} components"
    lines = [word] + [f"  component {i}: {sorted(c)}" for i, c in enumerate(comps)]
    _emit(args, "\n".join(lines), {"connected": connected, "components": [sorted(c) for c in comps]})
    return EXIT_OK if connected else EXIT_NEGATIVE


def cmd_certify(args) -> int:
    g = _load(args)
    if not is_3_connected(g):
        raise PreconditionError("certify needs a 3-connected graph; use `realize` for other inputs")
    outcome = certify(g)
    data = {"schema": 1, **outcome.to_json()}
    if outcome.connected:
        _emit(args, "connected", data)
        return EXIT_OK
    _recheck(g, data["certificate"])
    ops = " ".join(repr(op) for op in outcome.certificate.ops) or "(none)"
    _emit(args, f"forbidden {outcome.name}\n  ops: {ops}", data)
    return EXIT_NEGATIVE


def cmd_realize(args) -> int:
    g = _load(args)
    result = realize(g)
    data = result.to_json()
    if isinstance(result, Realization):
        if not cycle_matroid_equal(g, result.result) or len(x_components(result.result)) > 1:
            raise InvariantViolation("emitted realization failed its check")
        text = [f"realization with {len(result.flips_applied)} flip(s)"
                + (", blocks reglued" if result.reglued else "")]
        text += [f"  flip at {sep}: {sorted(part)}" for sep, part in result.flips_applied]
        text.append(formats.dump_text(result.result).rstrip())
        _emit(args, "\n".join(text), data)
        return EXIT_OK
    if result.name is not None:
        _recheck(g, data["certificate"])
        ops = " ".join(repr(op) for op in result.certificate.ops) or "(none)"
        _emit(args, f"forbidden {result.name}\n  ops: {ops}", data)
    else:
        _emit(args, "not realizable, and none of the six obstructions is a constraint minor\n"
                    f"  minimal unrealizable minor: {result.minor}", data)
    return EXIT_NEGATIVE


def cmd_verify(args) -> int:
    report = run_sweep(args.which, args.n_max, jobs=args.jobs, cap_seconds=args.cap,
                       reproducers=args.reproducers)
    _emit(args, report.to_text(), report.to_json())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_export(args) -> int:
    g = catalog()[args.name]
    sys.stdout.write(formats.dump(g, args.format))
    return EXIT_OK


def _assert_seed_free() -> None:
    """All algorithms are deterministic: no package module may hold a random generator."""
    import types

    for name, mod in list(sys.modules.items()):
        if not name.startswith(__package__ + ".") or mod is None:
            continue
        for value in vars(mod).values():
            if isinstance(value, types.ModuleType) and value.__name__ in ("random", "numpy.random"):
                raise InvariantViolation(f"{name} imports {value.__name__}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="constraint-minors",
                                     description="Constraint connectedness, forbidden constraint minors "
                                                 "and realizations of graphic constraint matroids.")
    parser.add_argument("--format", choices=formats.FORMATS, default="text", help="output format")
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes for sweeps")
    parser.add_argument("--cap", type=float, default=None, metavar="SECONDS", help="wall-clock cap for sweeps")
    parser.add_argument("--seed-free", action="store_true", help="assert that no random generator is used")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_path(p):
        p.add_argument("path", help="graph file (text, or JSON if it ends in .json)")
        p.add_argument("--input-format", choices=formats.FORMATS, default=None)
        return p

    with_path(sub.add_parser("check", help="is X connected?")).set_defaults(func=cmd_check)
    with_path(sub.add_parser("certify", help="3-connected input: connected, or a forbidden minor")
              ).set_defaults(func=cmd_certify)
    with_path(sub.add_parser("realize", help="realize with X connected, or a forbidden minor")
              ).set_defaults(func=cmd_realize)
    v = sub.add_parser("verify", help="exhaustive small-scale verification")
    v.add_argument("which", choices=SWEEPS)
    v.add_argument("n_max", type=int)
    v.add_argument("--reproducers", default=None, metavar="DIR", help="write failing instances here")
    v.set_defaults(func=cmd_verify)
    e = sub.add_parser("export", help="print a named catalog graph")
    e.add_argument("name", choices=sorted(catalog().named_graphs()))
    e.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed_free:
            _assert_seed_free()
        return args.func(args)
    except GraphInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceLimitError as exc:
        print(f"resource cap reached: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
