"""Command-line front end.

Subcommands: align, build, ran, slice, mechanisms, check-cone,
check-pedigrad.  Exit codes: 0 success, 1 validation failure, 2 resource
cap exceeded, 3 parse error.
"""

import argparse
import json
import sys

from . import io_json
from .alignment_functor import FunctorError, build_from_pairwise
from .chromology import (
    Chromology,
    SegCone,
    canonical_arrow,
    chromology,
    environment_table,
    verify_pedigrad,
)
from .dp_align import align_all_pairs
from .environment import PointedAlphabet
from .finset import CapExceeded, classify
from .io_json import ParseError
from .kan import ran_eval
from .preorder import chain_preorder
from .segments import Segment, quasi_homologous_morphism
from .slices import DUPLICATION, INVERSION, detect_mechanisms, slice_eval


class ValidationFailure(RuntimeError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path}: {exc}") from exc


def _config(args) -> io_json.Config:
    if args.config:
        return io_json.Config(_load_json(args.config))
    raise ParseError("this command needs --config")


def cmd_align(args) -> int:
    individuals = io_json.read_individuals(_read(args.input))
    pairwise = align_all_pairs(individuals, args.mode, jobs=args.jobs)
    _write(args.output, io_json.dumps(io_json.alignments_doc(pairwise, args.eps)))
    return 0


def cmd_build(args) -> int:
    config = _config(args)
    individuals = io_json.read_individuals(_read(args.input))
    if set(individuals) != set(config.names):
        raise ParseError("input individuals do not match the configured names")
    individuals = {n: individuals[n] for n in config.names}
    pairwise = align_all_pairs(individuals, args.mode, jobs=args.jobs)
    try:
        functor = build_from_pairwise(
            config.setup, config.alphabet, pairwise, config.policy
        )
    except FunctorError as exc:
        raise ValidationFailure(str(exc)) from exc
    _write(args.output, io_json.dumps(io_json.functor_doc(functor, config.epsilon_out)))
    return 0


def _load_functor(args):
    functor, setup = io_json.functor_from_doc(_load_json(args.functor))
    return functor, setup


def _parse_tau(args, functor, setup) -> Segment:
    return io_json.parse_segment_literal(
        args.tau, setup.omega, len(setup.names)
    )


def cmd_ran(args) -> int:
    functor, setup = _load_functor(args)
    tau = _parse_tau(args, functor, setup)
    ev = ran_eval(functor, tau, cap=args.cap)
    materialized = list(ev.elements(args.cap)) if args.materialize else None
    _write(args.output, io_json.dumps(io_json.ran_doc(ev, materialized=materialized)))
    return 0


def cmd_slice(args) -> int:
    functor, setup = _load_functor(args)
    tau = _parse_tau(args, functor, setup)
    if args.index not in setup.names:
        raise ParseError(f"unknown index {args.index!r}")
    sl = slice_eval(functor, args.index, tau, cap=args.cap)
    elements = sl.elements(args.cap)
    _write(args.output, io_json.dumps(io_json.slice_doc(sl, elements)))
    return 0


def cmd_mechanisms(args) -> int:
    functor, setup = _load_functor(args)
    tau = _parse_tau(args, functor, setup)
    templates = []
    for kind in args.templates.split(","):
        kind = kind.strip()
        if kind == "duplication":
            templates.append(DUPLICATION)
        elif kind == "inversion":
            templates.append(INVERSION)
        elif kind:
            raise ParseError(f"unknown template {kind!r}")
    findings = detect_mechanisms(functor, args.index, tau, templates, cap=args.cap)
    _write(args.output, io_json.dumps(io_json.mechanisms_doc(findings)))
    return 0


def _cones_from_doc(doc) -> tuple[Chromology, PointedAlphabet | None]:
    if not isinstance(doc, dict) or doc.get("schema") != "catalign/cones/1":
        raise ParseError("expected a 'catalign/cones/1' document")
    preorder = io_json.preorder_from_doc(doc["preorder"])
    cones = []
    for cone_doc in doc["cones"]:
        apex = io_json.segment_from_doc(cone_doc["apex"], preorder)
        nodes = tuple(
            io_json.segment_from_doc(d, preorder) for d in cone_doc["nodes"]
        )
        legs = []
        for node in nodes:
            leg = quasi_homologous_morphism(apex, node)
            if leg is None:
                raise ParseError("no quasi-homologous leg onto a declared node")
            legs.append(leg)
        edges = []
        for a, b in cone_doc.get("edges", []):
            g = quasi_homologous_morphism(nodes[a], nodes[b])
            if g is None:
                raise ParseError("no quasi-homologous morphism along a declared edge")
            edges.append((a, b, g))
        cones.append(SegCone(apex, nodes, tuple(edges), tuple(legs)))
    alphabet = None
    if "alphabet" in doc:
        alphabet = PointedAlphabet(
            tuple(doc["alphabet"]["symbols"]), doc["alphabet"]["basepoint"]
        )
    return chromology(preorder, cones), alphabet


def cmd_check_cone(args) -> int:
    chrom, _ = _cones_from_doc(_load_json(args.cones))
    results = []
    for cone in chrom.all_cones():
        arrow, _ = canonical_arrow(cone, args.level)
        cls = classify(arrow)
        name = {
            "bijective": "exactly-distributive",
            "injective_only": "injective",
        }.get(cls, cls)
        results.append((cone.apex.display(), args.level, name))
    _write(args.output, io_json.dumps(io_json.cone_report_doc(results)))
    return 0


def cmd_check_pedigrad(args) -> int:
    chrom, alphabet = _cones_from_doc(_load_json(args.cones))
    if alphabet is None:
        alphabet = PointedAlphabet(("A", "e"), "e")
    table = environment_table(list(chrom.all_cones()), args.level, alphabet,
                              cap=args.cap)
    report = verify_pedigrad(table, chrom, args.mode, cap=args.cap)
    _write(args.output, io_json.dumps(io_json.pedigrad_report_doc(report)))
    if not report.passed:
        raise ValidationFailure("some cones failed the pedigrad check")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catalign",
        description="Sequence alignment through finite limits of segment diagrams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, functor=False):
        p.add_argument("--output", default="-")
        p.add_argument("--cap", type=int, default=10_000_000)
        p.add_argument("--jobs", type=int, default=1)
        if functor:
            p.add_argument("--functor", required=True)
            p.add_argument("--tau", required=True)

    p = sub.add_parser("align", help="pairwise alignments with all tracebacks")
    p.add_argument("--input", required=True, help="FASTA or JSON file, '-' for stdin")
    p.add_argument("--mode", choices=("global", "local", "semiglobal"),
                   default="global")
    p.add_argument("--eps", default="ε", help="gap symbol used on output")
    common(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("build", help="build and validate the alignment functor")
    p.add_argument("--input", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--mode", choices=("global", "local", "semiglobal"),
                   default="global")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("ran", help="evaluate the gluing (Kan extension) at a segment")
    p.add_argument("--materialize", action="store_true")
    common(p, functor=True)
    p.set_defaults(func=cmd_ran)

    p = sub.add_parser("slice", help="lift glued elements along one individual")
    p.add_argument("--index", required=True)
    common(p, functor=True)
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("mechanisms", help="detect duplication/inversion patterns")
    p.add_argument("--index", required=True)
    p.add_argument("--templates", default="duplication,inversion")
    common(p, functor=True)
    p.set_defaults(func=cmd_mechanisms)

    p = sub.add_parser("check-cone", help="classify cones of segments")
    p.add_argument("--cones", required=True)
    p.add_argument("--level", required=True)
    common(p)
    p.set_defaults(func=cmd_check_cone)

    p = sub.add_parser("check-pedigrad",
                       help="check the word functor against a chromology")
    p.add_argument("--cones", required=True)
    p.add_argument("--level", required=True)
    p.add_argument("--mode", choices=("bij", "surj"), required=True)
    common(p)
    p.set_defaults(func=cmd_check_pedigrad)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except CapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 2
    except ValidationFailure as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
