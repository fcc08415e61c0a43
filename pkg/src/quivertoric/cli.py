"""Command-line front end: ``quivertoric <subcommand> FILE [--json]``.

Exit codes: 0 success, 1 usage error, 2 invalid quiver, 3 precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import quiver as qv
from .classify import classify
from .errors import ParseError, PreconditionError, QuiverError
from .gale import gale_matrix, rays
from .polytope import aggregate_by_bundle, invariant_monomials, is_smooth, polytope_vertices
from .quiver import ArrowIndex, canonical_weight, require_valid, serialize
from .structure import contract, contractible_arrows, cycle_space_dimension, decompose, has_proper_cycle, simplify

EXIT_USAGE, EXIT_INVALID, EXIT_PRECONDITION = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _vec(v) -> str:
    return " ".join(str(a) for a in v)


def cmd_info(q, args):
    theta = canonical_weight(q)
    data = {
        "vertices": list(q.vertices),
        "bundles": len(q.bundles),
        "arrows": q.num_arrows,
        "dimension": cycle_space_dimension(q),
        "weight": theta.as_dict(),
        "proper_cycle": has_proper_cycle(q),
        "contractible": [q.arrow_label(x) for x in contractible_arrows(q)],
    }
    if args.json:
        return _dump(data)
    return "\n".join([
        f"vertices: {len(q.vertices)} ({' '.join(q.vertices)})",
        f"bundles: {len(q.bundles)}",
        f"arrows: {q.num_arrows}",
        f"dimension: {data['dimension']}",
        "weight: " + " ".join(f"{v}={w}" for v, w in data["weight"].items()),
        f"proper cycle: {'yes' if data['proper_cycle'] else 'no'}",
        "contractible: " + (" ".join(data["contractible"]) or "none"),
    ])


def cmd_weight(q, args):
    theta = canonical_weight(q).as_dict()
    if args.json:
        return _dump(theta)
    return "\n".join(f"{v} {w}" for v, w in theta.items())


def cmd_rays(q, args):
    cols = rays(gale_matrix(q))
    if args.json:
        return _dump([list(c) for c in cols])
    return "\n".join(f"{q.arrow_label(i)}\t{_vec(c)}" for i, c in enumerate(cols))


def cmd_monomials(q, args):
    if args.degree < 1:
        raise UsageError("--degree must be at least 1")
    flows = invariant_monomials(q, args.degree)
    if args.aggregate:
        agg = aggregate_by_bundle(q, flows)
        if args.json:
            return _dump([{"exponents": list(e), "count": c} for e, c in agg])
        return "\n".join(f"{_vec(e)}\t({c} arrow-level)" for e, c in agg)
    if args.json:
        return _dump([list(f) for f in flows])
    return "\n".join(_vec(f) for f in flows)


def cmd_vertices(q, args):
    verts = polytope_vertices(q)
    if args.json:
        return _dump([list(v.coords) for v in verts])
    return "\n".join(_vec(v.coords) for v in verts)


def cmd_smooth(q, args):
    report = is_smooth(q)
    if args.json:
        return _dump(report.to_dict())
    lines = [report.verdict, report.summary()]
    if report.witness is not None:
        lines.append("edge directions:")
        lines += [f"  {_vec(d)}" for d in report.witness.edge_directions]
        lines.append("edge matrix (lattice coordinates):")
        lines += [f"  {_vec(r)}" for r in report.witness.edge_matrix]
    return "\n".join(lines)


def cmd_classify(q, args):
    report = classify(q)
    if args.json:
        return _dump(report.to_dict())
    lines = [
        f"verdict: {report.verdict}",
        f"oracle: {report.oracle_verdict}",
        f"consistent: {'yes' if report.consistent else 'no'}",
    ]
    for i, f in enumerate(report.factors):
        lines.append(f"factor {i}: {' '.join(f.factor.vertices)} -> {f.describe()}")
        for s in f.contraction_log:
            lines.append(f"  contract {s.src}->{s.dst} ({s.kind})")
    if report.witness is not None:
        lines.append(f"witness vertex: {_vec(report.witness.vertex)}")
    return "\n".join(lines)


def cmd_simplify(q, args):
    core, log = simplify(q)
    if args.json:
        return _dump({"core": qv.to_dict(core), "log": [s.to_dict() for s in log]})
    lines = [f"# contract {s.src}->{s.dst} into {s.merged} ({s.kind})" for s in log]
    return "\n".join(lines) + ("\n" if lines else "") + serialize(core).rstrip("\n")


def cmd_decompose(q, args):
    factors = decompose(q)
    if args.json:
        return _dump([{"quiver": qv.to_dict(sub), "weights": w.as_dict()} for sub, w in factors])
    chunks = []
    for i, (sub, w) in enumerate(factors):
        head = f"# factor {i}: weights " + " ".join(f"{v}={x}" for v, x in w.as_dict().items())
        chunks.append(head + "\n" + serialize(sub).rstrip("\n"))
    return "\n".join(chunks)


def _arrow_arg(q, spec: str) -> ArrowIndex:
    bundle, _, copy = spec.partition(":")
    try:
        x = ArrowIndex(int(bundle), int(copy) if copy else 0)
    except ValueError:
        raise UsageError(f"--arrow expects <bundle>[:<copy>], got {spec!r}") from None
    try:
        q.flat_index(x)
    except IndexError:
        raise PreconditionError(f"arrow {spec} does not exist") from None
    return x


def cmd_contract(q, args):
    require_valid(q)
    result = contract(q, _arrow_arg(q, args.arrow))
    if args.json:
        return _dump({"quiver": qv.to_dict(result.quiver), "vertex_map": result.vertex_map})
    return serialize(result.quiver).rstrip("\n")


COMMANDS = {
    "info": (cmd_info, "summary of the quiver"),
    "weight": (cmd_weight, "canonical weight"),
    "rays": (cmd_rays, "fan rays (Gale matrix columns), one per arrow"),
    "monomials": (cmd_monomials, "invariant monomials as exponent vectors"),
    "vertices": (cmd_vertices, "vertices of the flow polytope"),
    "smooth": (cmd_smooth, "Delzant smoothness test with witness"),
    "classify": (cmd_classify, "structural classification plus oracle verdict"),
    "simplify": (cmd_simplify, "contract to a simple quiver"),
    "decompose": (cmd_decompose, "split into product factors"),
    "contract": (cmd_contract, "contract one arrow"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quivertoric", description="Combinatorics of toric quiver varieties.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="quiver file (.qv text format or .json)")
        p.add_argument("--json", action="store_true", help="emit JSON")
        if name == "monomials":
            p.add_argument("--degree", type=int, default=1)
            p.add_argument("--aggregate", action="store_true", help="sum exponents within each bundle")
        if name == "contract":
            p.add_argument("--arrow", required=True, metavar="BUNDLE[:COPY]")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    func = COMMANDS[args.command][0]
    try:
        q = qv.load(args.path)
        require_valid(q)
        out = func(q, args)
    except OSError as exc:
        print(f"quivertoric: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"quivertoric: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, QuiverError) as exc:
        print(f"quivertoric: invalid quiver: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PreconditionError as exc:
        print(f"quivertoric: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if out:
        print(out)
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
