"""Command line: bxlens {check,compose,convert,equiv,demo}.

Exit status: 0 when every check passes, 1 when a law or equivalence check
fails, 2 on usage, parse or validation errors.
"""
from __future__ import annotations

import argparse
import sys
import warnings

from .carrier import render
from .demos import DEMOS
from .effects import IDENTITY, Identity
from .equivalence import (BACKWARD, FORWARD, BisimWitness, IsoWitness, SpanEquivWitness,
                          search_equivalence, verify_equivalence)
from .errors import BxError, EmptyStateWithNonemptyViews, NotFound
from .lens_core import PureLens, check_pure_laws, compose_pure
from .lensfile import ParseError, load, render_object
from .mlens import MLens, check_mlens_laws, compose_m, lens2mlens
from .report import LawReport
from .spans import Span, check_span_wb, compose_span, smlens2span, span2smlens
from .symmetric import (SLens, SMLens, check_symmetric_laws, compose_s, compose_sm,
                        slens_to_smlens)


class UsageError(Exception):
    pass


def _kind(obj) -> str:
    return {PureLens: "pure-lens", MLens: "mlens", SLens: "slens", SMLens: "smlens",
            Span: "span"}.get(type(obj), type(obj).__name__)


def check_object(obj) -> LawReport:
    if isinstance(obj, PureLens):
        return check_pure_laws(obj)
    if isinstance(obj, MLens):
        return check_mlens_laws(obj)
    if isinstance(obj, (SLens, SMLens)):
        return check_symmetric_laws(obj)
    if isinstance(obj, Span):
        return check_span_wb(obj)
    raise UsageError(f"cannot check a {type(obj).__name__}")


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return load(text)
    except ParseError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _get(model, name: str, *kinds):
    if name not in model.objects:
        raise UsageError(f"no definition named {name!r}")
    obj = model.objects[name]
    if kinds and not isinstance(obj, kinds):
        raise UsageError(f"{name!r} is a {_kind(obj)}, expected {' or '.join(k.__name__ for k in kinds)}")
    return obj


def _emit(out, lines: list[str], reports: list[tuple[str, LawReport]], extra: list[str] = ()):
    for line in lines:
        print(line, file=out)
    for _, rep in reports:
        print(rep.text(), file=out)
    print("--- machine", file=out)
    ok = all(rep.passed for _, rep in reports)
    print(f"status={'pass' if ok else 'fail'}", file=out)
    for prefix, rep in reports:
        for line in rep.machine(prefix):
            if prefix or not line.startswith("status="):
                print(line, file=out)
    for line in extra:
        print(line, file=out)
    return 0 if ok else 1


def cmd_check(args, out) -> int:
    model = _load(args.file)
    names = [args.name] if args.name else (model.checks or list(model.objects))
    reports = []
    for name in names:
        obj = _get(model, name)
        reports.append((f"{name}.", check_object(obj)))
    return _emit(out, [], reports)


def cmd_compose(args, out) -> int:
    model = _load(args.file)
    kind = args.kind
    if kind == "pure":
        a, b = _get(model, args.left, PureLens), _get(model, args.right, PureLens)
        result = compose_pure(a, b)
    elif kind == "mlens":
        a, b = _get(model, args.left, MLens, PureLens), _get(model, args.right, MLens, PureLens)
        if isinstance(a, PureLens):
            a = lens2mlens(b.effect if isinstance(b, MLens) else IDENTITY, a)
        if isinstance(b, PureLens):
            b = lens2mlens(a.effect, b)
        result = compose_m(a, b)
    elif kind == "slens":
        result = compose_s(_get(model, args.left, SLens), _get(model, args.right, SLens))
    elif kind == "smlens":
        a, b = _get(model, args.left, SMLens, SLens), _get(model, args.right, SMLens, SLens)
        a = slens_to_smlens(a) if isinstance(a, SLens) else a
        b = slens_to_smlens(b) if isinstance(b, SLens) else b
        result = compose_sm(a, b)
    else:
        result = compose_span(_get(model, args.left, Span), _get(model, args.right, Span))
    name = f"{args.left}_{args.right}"
    lines = [render_object(name, result, set(model.carriers) | set(model.objects)).rstrip()]
    reports = [(f"{name}.", check_object(result))] if args.check else []
    return _emit(out, lines, reports)


def cmd_convert(args, out) -> int:
    model = _load(args.file)
    lines = []
    if args.op == "span2smlens":
        result = span2smlens(_get(model, args.name, Span))
    else:
        sl = _get(model, args.name, SMLens, SLens)
        sl = slens_to_smlens(sl) if isinstance(sl, SLens) else sl
        if not isinstance(sl.effect, Identity):
            lines.append("note: spans built from effectful symmetric lenses are not guaranteed "
                         "to be well-behaved; only the identity-effect case is")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", EmptyStateWithNonemptyViews)
            result = smlens2span(sl)
        lines += [f"warning: {w.message}" for w in caught]
    name = f"{args.name}_{args.op.split('2')[1]}"
    lines.insert(0, render_object(name, result, set(model.carriers) | set(model.objects)).rstrip())
    reports = [(f"{name}.", check_object(result))] if args.check else []
    return _emit(out, lines, reports)


def _iso_witness(model, name: str, sp1: Span, sp2: Span) -> IsoWitness:
    h = _get(model, name, PureLens)
    if h.source != sp1.state or h.view != sp2.state:
        raise UsageError(f"{name!r} must map {sp1.state.name} to {sp2.state.name}")
    return IsoWitness(h.get, h.create)


def _span_witness(model, name: str, sp1: Span, sp2: Span, direction: str | None) -> SpanEquivWitness:
    h = _get(model, name, PureLens)
    if direction is None:
        if h.source == sp1.state and h.view == sp2.state:
            direction = FORWARD
        elif h.source == sp2.state and h.view == sp1.state:
            direction = BACKWARD
        else:
            raise UsageError(f"{name!r} relates neither {sp1.state.name} ~> {sp2.state.name} "
                             f"nor the reverse")
    return SpanEquivWitness(h, direction)


def _describe_witness(kind: str, w, sp1: Span) -> list[str]:
    if kind == "iso":
        return ["witness iso: " + "; ".join(f"{render(s)} -> {render(w.h(s))}" for s in sp1.state)]
    if kind == "span":
        return [f"witness lens ({w.direction}):", render_object("h", w.h).rstrip()]
    return ["witness relation: {" + " ".join(render(p) for p in w.relation) + "}"]


def cmd_equiv(args, out) -> int:
    model = _load(args.file)
    sp1, sp2 = _get(model, args.a, Span), _get(model, args.b, Span)
    kind = args.kind
    lines: list[str] = []
    if args.search:
        w = search_equivalence(kind, sp1, sp2)
        if w is NotFound:
            print(f"{kind} search: NotFound", file=out)
            print("--- machine", file=out)
            print("status=fail", file=out)
            print("witness=NotFound", file=out)
            return 1
        lines.append(f"{kind} search: found")
    elif kind == "iso":
        w = _iso_witness(model, args.witness, sp1, sp2)
    elif kind == "span":
        w = _span_witness(model, args.witness, sp1, sp2, args.direction)
    else:
        sp = _get(model, args.witness, Span)
        w = BisimWitness(sp.state, sp)
    lines += _describe_witness(kind, w, sp1)
    return _emit(out, lines, [("", verify_equivalence(kind, sp1, sp2, w))], ["witness=found"])


def cmd_demo(args, out) -> int:
    code, lines = DEMOS[args.name]()
    for line in lines:
        print(line, file=out)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bxlens", description="Check and relate finite lenses.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check the laws of a named definition")
    c.add_argument("file")
    c.add_argument("--name", help="definition to check (default: the file's check lines, else all)")
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("compose", help="compose two definitions and print the result")
    c.add_argument("file")
    c.add_argument("--kind", required=True, choices=["pure", "mlens", "slens", "smlens", "span"])
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)
    c.add_argument("--check", action="store_true", help="also check the composite's laws")
    c.set_defaults(run=cmd_compose)

    c = sub.add_parser("convert", help="convert between spans and symmetric lenses")
    c.add_argument("file")
    c.add_argument("--op", required=True, choices=["span2smlens", "smlens2span"])
    c.add_argument("--name", required=True)
    c.add_argument("--check", action="store_true", help="also check the result's laws")
    c.set_defaults(run=cmd_convert)

    c = sub.add_parser("equiv", help="verify or search an equivalence between two spans")
    c.add_argument("file")
    c.add_argument("--kind", required=True, choices=["iso", "span", "bisim"])
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--witness")
    g.add_argument("--search", action="store_true")
    c.add_argument("--direction", choices=[FORWARD, BACKWARD])
    c.set_defaults(run=cmd_equiv)

    c = sub.add_parser("demo", help="run a built-in demonstration")
    c.add_argument("name", choices=sorted(DEMOS))
    c.set_defaults(run=cmd_demo)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.run(args, out)
    except UsageError as exc:
        print(f"bxlens: {exc}", file=sys.stderr)
        return 2
    except BxError as exc:
        print(f"bxlens: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
