"""Text format for finite lenses given by lookup tables.

    carrier S { s0 s1 }
    carrier V { v }
    effect maybe
    mlens L : S ~> V {
      get { s0 -> v; s1 -> v }
      put { s0 v -> just s0; s1 v -> just s1 }
      create { v -> just s0 }
    }
    span sp = (L, L)
    check L

`effect` applies to every monadic definition after it. Values are atoms or
parenthesised tuples. Effect literals: `just x` / `nothing`, `[x y]`,
`([w1 w2]; x)` for writer logs and `{s0 -> (x, s1); s1 -> (x, s0)}` for state.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from .carrier import FiniteCarrier, Just
from .effects import (IDENTITY, MAYBE, Effect, EffectValue, Identity, ListEffect, Maybe, State,
                      Writer, free_list)
from .errors import BxError
from .lens_core import PureLens, from_tables
from .mlens import MLens, lens2mlens, mlens_from_tables
from .spans import Span
from .symmetric import SLens, SMLens, slens_from_tables, smlens_from_tables


class ParseError(BxError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(message)
        self.message, self.line, self.col = message, line, col

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}" if self.line else self.message


# ---------------------------------------------------------------- model


@dataclass(frozen=True)
class Lit:
    """An effect literal: kind is one of pure, just, nothing, list, writer, state."""

    kind: str
    data: Any = None


@dataclass(frozen=True)
class EffectSpec:
    kind: str
    carrier: str | None = None


@dataclass(frozen=True)
class CarrierDecl:
    name: str
    elements: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class LensDecl:
    kind: str  # pure-lens | mlens
    name: str
    source: str
    view: str
    effect: EffectSpec | None
    get: tuple  # ((a, b), ...)
    put: tuple  # (((a, b), lit), ...)
    create: tuple  # ((b, lit), ...)
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SymDecl:
    kind: str  # slens | smlens
    name: str
    left: str
    right: str
    complement: str
    effect: EffectSpec | None
    put_r: tuple
    put_l: tuple
    missing: Any
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SpanDecl:
    name: str
    left: str
    right: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Directive:
    verb: str
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass
class LensFile:
    decls: list

    def names(self) -> list[str]:
        return [d.name for d in self.decls if hasattr(d, "name")]

    def directives(self) -> list[Directive]:
        return [d for d in self.decls if isinstance(d, Directive)]


# ---------------------------------------------------------------- lexer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<sym>pure-lens|<->|->|~>|[{}()\[\];,:=])
  | (?P<atom>-?[A-Za-z0-9_'.]+)
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Tok]:
    toks, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind != "ws":
            toks.append(Tok(kind, m.group(), line, m.start() - start + 1))
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - start + 1))
    return toks


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.carriers: dict[str, CarrierDecl] = {}
        self.objects: dict[str, Any] = {}
        self.effect: EffectSpec | None = None

    # -- token helpers
    def peek(self, k: int = 0) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Tok:
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg: str, tok: Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, text: str) -> Tok:
        t = self.next()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of file'!r}", t)
        return t

    def atom(self) -> str:
        t = self.next()
        if t.kind != "atom":
            self.error(f"expected a name, found {t.text or 'end of file'!r}", t)
        return t.text

    # -- values
    def value(self) -> Any:
        t = self.peek()
        if t.text == "(":
            self.next()
            if self.peek().text == ")":
                self.next()
                return ()
            items = [self.value()]
            while self.peek().text == ",":
                self.next()
                items.append(self.value())
            self.expect(")")
            return items[0] if len(items) == 1 else tuple(items)
        return self.atom()

    def literal(self, spec: EffectSpec) -> Lit:
        kind = spec.kind
        if kind == "identity":
            return Lit("pure", self.value())
        if kind == "maybe":
            t = self.next()
            if t.text == "nothing":
                return Lit("nothing")
            if t.text == "just":
                return Lit("just", self.value())
            self.error(f"expected 'just x' or 'nothing', found {t.text!r}", t)
        if kind == "list":
            return Lit("list", self.bracket())
        if kind == "writer":
            self.expect("(")
            log = self.bracket()
            self.expect(";")
            v = self.value()
            self.expect(")")
            return Lit("writer", (log, v))
        if kind == "state":
            self.expect("{")
            cells = []
            while True:
                s0 = self.value()
                self.expect("->")
                self.expect("(")
                x = self.value()
                self.expect(",")
                s1 = self.value()
                self.expect(")")
                cells.append((s0, x, s1))
                if self.peek().text == ";":
                    self.next()
                    if self.peek().text == "}":
                        break
                    continue
                break
            self.expect("}")
            return Lit("state", tuple(cells))
        self.error(f"unknown effect {kind}")

    def bracket(self) -> tuple:
        self.expect("[")
        items = []
        while self.peek().text != "]":
            items.append(self.value())
        self.expect("]")
        return tuple(items)

    # -- declarations
    def file(self) -> LensFile:
        decls = []
        while self.peek().kind != "eof":
            decls.append(self.decl())
        return LensFile(decls)

    def decl(self):
        t = self.peek()
        word = t.text
        if word == "carrier":
            return self.carrier_decl()
        if word == "effect":
            self.next()
            self.effect = self.effect_spec()
            return Directive("effect", _effect_args(self.effect), t.line)
        if word in ("pure-lens", "mlens"):
            return self.lens_decl()
        if word in ("slens", "smlens"):
            return self.sym_decl()
        if word == "span":
            return self.span_decl()
        if word == "check":
            self.next()
            nt = self.peek()
            name = self.atom()
            self.known_object(name, nt)
            return Directive("check", (name,), t.line)
        self.error(f"expected a declaration, found {word or 'end of file'!r}")

    def effect_spec(self) -> EffectSpec:
        t = self.next()
        if t.text in ("identity", "maybe", "list"):
            return EffectSpec(t.text)
        if t.text == "state":
            name = self.atom()
            self.known_carrier(name, t)
            return EffectSpec("state", name)
        if t.text == "writer":
            self.expect("list")
            name = self.atom()
            self.known_carrier(name, t)
            return EffectSpec("writer", name)
        self.error(f"unknown effect {t.text!r}", t)

    def known_carrier(self, name: str, tok: Tok) -> CarrierDecl:
        if name not in self.carriers:
            self.error(f"unknown carrier {name!r}", tok)
        return self.carriers[name]

    def known_object(self, name: str, tok: Tok):
        if name not in self.objects:
            self.error(f"unknown definition {name!r}", tok)
        return self.objects[name]

    def fresh(self, name: str, tok: Tok):
        if name in self.objects or name in self.carriers:
            self.error(f"{name!r} is already defined", tok)

    def carrier_decl(self) -> CarrierDecl:
        t = self.expect("carrier")
        nt = self.peek()
        name = self.atom()
        self.fresh(name, nt)
        self.expect("{")
        elems = []
        while self.peek().text != "}":
            vt = self.peek()
            v = self.value()
            if v in elems:
                self.error(f"duplicate element {_show(v)} in carrier {name}", vt)
            elems.append(v)
        self.expect("}")
        d = CarrierDecl(name, tuple(elems), t.line)
        self.carriers[name] = d
        return d

    def rows(self, arity: int, rhs) -> list[tuple]:
        """Rows `k1 .. kn -> rhs` separated by ';' inside braces."""
        self.expect("{")
        out = []
        while self.peek().text != "}":
            t = self.peek()
            keys = tuple(self.value() for _ in range(arity))
            self.expect("->")
            vt = self.peek()
            out.append((keys if arity > 1 else keys[0], rhs(), t, vt))
            if self.peek().text == ";":
                self.next()
            elif self.peek().text != "}":
                self.error(f"expected ';' or '}}', found {self.peek().text!r}")
        self.expect("}")
        return out

    def sections(self, allowed: dict) -> dict:
        self.expect("{")
        got = {}
        while self.peek().text != "}":
            t = self.next()
            if t.text not in allowed:
                self.error(f"unexpected section {t.text!r}; expected one of {', '.join(allowed)}", t)
            if t.text in got:
                self.error(f"section {t.text!r} given twice", t)
            got[t.text] = (allowed[t.text](), t)
        end = self.expect("}")
        for sec in allowed:
            if sec not in got:
                self.error(f"missing section {sec!r}", end)
        return got

    def lens_decl(self) -> LensDecl:
        t = self.next()
        kind = t.text
        nt = self.peek()
        name = self.atom()
        self.fresh(name, nt)
        self.expect(":")
        st = self.peek()
        src = self.known_carrier(self.atom(), st)
        self.expect("~>")
        vt = self.peek()
        view = self.known_carrier(self.atom(), vt)
        spec = EffectSpec("identity") if kind == "pure-lens" else self.effect
        if spec is None:
            self.error("monadic lens declared before any 'effect' line", t)
        lit = (lambda: Lit("pure", self.value())) if kind == "pure-lens" else (lambda: self.literal(spec))
        secs = self.sections({"get": lambda: self.rows(1, self.value),
                              "put": lambda: self.rows(2, lit),
                              "create": lambda: self.rows(1, lit)})
        get = self.table(secs["get"], [(a,) for a in src.elements], "get",
                         lambda v, tok: self.element(view, v, tok))
        put = self.table(secs["put"], [(a, b) for a in src.elements for b in view.elements], "put",
                         lambda v, tok: self.check_lit(spec, v, src, tok))
        create = self.table(secs["create"], [(b,) for b in view.elements], "create",
                            lambda v, tok: self.check_lit(spec, v, src, tok))
        if kind == "pure-lens":
            put = tuple((k, v.data) for k, v in put)
            create = tuple((k, v.data) for k, v in create)
        d = LensDecl(kind, name, src.name, view.name, None if kind == "pure-lens" else spec,
                     get, put, create, t.line)
        self.objects[name] = d
        return d

    def table(self, sec, cells: list[tuple], what: str, check) -> tuple:
        rows, tok = sec
        seen = {}
        arity = len(cells[0]) if cells else 1
        for key, rhs, rt, vt in rows:
            k = key if arity > 1 else (key,)
            if k not in cells:
                self.error(f"{what} row for {' '.join(map(_show, k))} is outside the declared carriers", rt)
            if k in seen:
                self.error(f"{what} row for {' '.join(map(_show, k))} given twice", rt)
            check(rhs, vt)
            seen[k] = rhs
        for k in cells:
            if k not in seen:
                self.error(f"{what} table is not total: missing row for {' '.join(map(_show, k))}", tok)
        return tuple((k if len(k) > 1 else k[0], seen[k]) for k in cells)

    def element(self, c: CarrierDecl, v, tok: Tok):
        if v not in c.elements:
            self.error(f"{_show(v)} is not an element of {c.name}", tok)
        return v

    def check_lit(self, spec: EffectSpec, lit: Lit, result: CarrierDecl | None, tok: Tok, pair=None):
        """Validate carrier membership of every value inside a literal.

        `pair` (for symmetric lenses) is (value carrier, complement carrier).
        """
        def res(v):
            if pair is None:
                self.element(result, v, tok)
            else:
                if not (isinstance(v, tuple) and len(v) == 2):
                    self.error(f"expected a pair (value, complement), found {_show(v)}", tok)
                self.element(pair[0], v[0], tok)
                self.element(pair[1], v[1], tok)

        if lit.kind in ("pure", "just"):
            res(lit.data)
        elif lit.kind == "list":
            for v in lit.data:
                res(v)
        elif lit.kind == "writer":
            log, v = lit.data
            logc = self.carriers[spec.carrier]
            for w in log:
                self.element(logc, w, tok)
            res(v)
        elif lit.kind == "state":
            states = self.carriers[spec.carrier]
            got = [s0 for s0, _, _ in lit.data]
            if set(got) != set(states.elements) or len(got) != len(states.elements):
                self.error(f"state literal must give exactly one cell per element of {states.name}", tok)
            for _, x, s1 in lit.data:
                res(x)
                self.element(states, s1, tok)
        return lit

    def sym_decl(self) -> SymDecl:
        t = self.next()
        kind = t.text
        nt = self.peek()
        name = self.atom()
        self.fresh(name, nt)
        self.expect(":")
        lt = self.peek()
        left = self.known_carrier(self.atom(), lt)
        self.expect("<->")
        rt = self.peek()
        right = self.known_carrier(self.atom(), rt)
        self.expect("with")
        ct = self.peek()
        comp = self.known_carrier(self.atom(), ct)
        spec = EffectSpec("identity") if kind == "slens" else self.effect
        if spec is None:
            self.error("monadic symmetric lens declared before any 'effect' line", t)
        lit = (lambda: Lit("pure", self.value())) if kind == "slens" else (lambda: self.literal(spec))
        secs = self.sections({"putR": lambda: self.rows(2, lit), "putL": lambda: self.rows(2, lit),
                              "missing": lambda: (self.value(), self.toks[self.i - 1])})
        put_r = self.table(secs["putR"], [(a, c) for a in left.elements for c in comp.elements], "putR",
                           lambda v, tok: self.check_lit(spec, v, None, tok, (right, comp)))
        put_l = self.table(secs["putL"], [(b, c) for b in right.elements for c in comp.elements], "putL",
                           lambda v, tok: self.check_lit(spec, v, None, tok, (left, comp)))
        missing, mt = secs["missing"][0]
        self.element(comp, missing, mt)
        if kind == "slens":
            put_r = tuple((k, v.data) for k, v in put_r)
            put_l = tuple((k, v.data) for k, v in put_l)
        d = SymDecl(kind, name, left.name, right.name, comp.name,
                    None if kind == "slens" else spec, put_r, put_l, missing, t.line)
        self.objects[name] = d
        return d

    def span_decl(self) -> SpanDecl:
        t = self.expect("span")
        nt = self.peek()
        name = self.atom()
        self.fresh(name, nt)
        self.expect("=")
        self.expect("(")
        lt = self.peek()
        left = self.atom()
        ld = self.known_object(left, lt)
        self.expect(",")
        rt = self.peek()
        right = self.atom()
        rd = self.known_object(right, rt)
        self.expect(")")
        for d, tok in ((ld, lt), (rd, rt)):
            if not isinstance(d, LensDecl):
                self.error(f"span legs must be lenses, {d.name!r} is not", tok)
        if ld.source != rd.source:
            self.error(f"span legs read different carriers ({ld.source} and {rd.source})", rt)
        if ld.effect and rd.effect and ld.effect != rd.effect:
            self.error("span legs use different effects", rt)
        d = SpanDecl(name, left, right, t.line)
        self.objects[name] = d
        return d


def _show(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(_show(x) for x in v) + ")"
    return str(v)


def parse_lens_file(text: str) -> LensFile:
    return _Parser(text).file()


# ---------------------------------------------------------------- printer


def _lit_text(lit) -> str:
    if not isinstance(lit, Lit):
        return _show(lit)
    if lit.kind == "pure":
        return _show(lit.data)
    if lit.kind == "nothing":
        return "nothing"
    if lit.kind == "just":
        return f"just {_show(lit.data)}"
    if lit.kind == "list":
        return "[" + " ".join(map(_show, lit.data)) + "]"
    if lit.kind == "writer":
        log, v = lit.data
        return "([" + " ".join(map(_show, log)) + f"]; {_show(v)})"
    if lit.kind == "state":
        return "{" + "; ".join(f"{_show(a)} -> ({_show(x)}, {_show(b)})" for a, x, b in lit.data) + "}"
    raise ValueError(lit.kind)


def _keys(k, arity) -> str:
    return " ".join(map(_show, k)) if arity > 1 else _show(k)


def _section(name: str, rows, arity: int) -> str:
    body = "; ".join(f"{_keys(k, arity)} -> {_lit_text(v)}" for k, v in rows)
    return f"  {name} {{ {body} }}"


def _effect_line(spec: EffectSpec) -> str:
    if spec.kind == "writer":
        return f"effect writer list {spec.carrier}"
    if spec.kind == "state":
        return f"effect state {spec.carrier}"
    return f"effect {spec.kind}"


def render_lens_file(lf: LensFile) -> str:
    out = []
    for d in lf.decls:
        if isinstance(d, CarrierDecl):
            out.append(f"carrier {d.name} {{ {' '.join(map(_show, d.elements))} }}")
        elif isinstance(d, Directive):
            out.append(f"{d.verb} {' '.join(d.args)}")
        elif isinstance(d, LensDecl):
            out.append(f"{d.kind} {d.name} : {d.source} ~> {d.view} {{")
            out.append(_section("get", d.get, 1))
            out.append(_section("put", d.put, 2))
            out.append(_section("create", d.create, 1))
            out.append("}")
        elif isinstance(d, SymDecl):
            out.append(f"{d.kind} {d.name} : {d.left} <-> {d.right} with {d.complement} {{")
            out.append(_section("putR", d.put_r, 2))
            out.append(_section("putL", d.put_l, 2))
            out.append(f"  missing {_show(d.missing)}")
            out.append("}")
        elif isinstance(d, SpanDecl):
            out.append(f"span {d.name} = ({d.left}, {d.right})")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- building


@dataclass
class Model:
    carriers: dict
    objects: dict
    checks: list


def effect_of(spec: EffectSpec, carriers: dict) -> Effect:
    if spec.kind == "identity":
        return IDENTITY
    if spec.kind == "maybe":
        return MAYBE
    if spec.kind == "list":
        return ListEffect()
    if spec.kind == "state":
        return State(carriers[spec.carrier])
    if spec.kind == "writer":
        return Writer(free_list(carriers[spec.carrier]))
    raise ValueError(spec.kind)


def _value_of(e: Effect, lit: Lit) -> EffectValue:
    if lit.kind == "pure":
        return e.ret(lit.data)
    if lit.kind == "nothing":
        return EffectValue(e, ())
    if lit.kind == "just":
        return EffectValue(e, (lit.data,))
    if lit.kind == "list":
        return EffectValue(e, tuple(lit.data))
    if lit.kind == "writer":
        return EffectValue(e, (tuple(lit.data[0]), lit.data[1]))
    if lit.kind == "state":
        cells = {s0: (x, s1) for s0, x, s1 in lit.data}
        return EffectValue(e, tuple(cells[s] for s in e.states))
    raise ValueError(lit.kind)


_INT = re.compile(r"-?(0|[1-9][0-9]*)")


def lib_value(v) -> Any:
    """Inverse of file_value: T/F, none, (some, x) and integers become
    library values; other atoms stay strings."""
    if isinstance(v, tuple):
        if len(v) == 2 and v[0] == "some":
            return Just(lib_value(v[1]))
        return tuple(lib_value(x) for x in v)
    if v == "T":
        return True
    if v == "F":
        return False
    if v == "none":
        return None
    if _INT.fullmatch(v):
        return int(v)
    return v


def _lib_lit(lit: Lit) -> Lit:
    d = lit.data
    if lit.kind in ("pure", "just"):
        return Lit(lit.kind, lib_value(d))
    if lit.kind == "list":
        return Lit("list", tuple(lib_value(x) for x in d))
    if lit.kind == "writer":
        return Lit("writer", (tuple(lib_value(w) for w in d[0]), lib_value(d[1])))
    if lit.kind == "state":
        return Lit("state", tuple(tuple(lib_value(x) for x in cell) for cell in d))
    return lit


def _rows(rows, arity: int, lit: bool = False) -> dict:
    key = (lambda k: tuple(lib_value(x) for x in k)) if arity > 1 else lib_value
    return {key(k): (_lib_lit(v) if lit else lib_value(v)) for k, v in rows}


def build(lf: LensFile) -> Model:
    carriers: dict = {}
    objects: dict = {}
    checks: list = []
    for d in lf.decls:
        if isinstance(d, CarrierDecl):
            carriers[d.name] = FiniteCarrier(d.name, tuple(lib_value(v) for v in d.elements))
        elif isinstance(d, Directive):
            if d.verb == "check":
                checks.append(d.args[0])
        elif isinstance(d, LensDecl):
            src, view = carriers[d.source], carriers[d.view]
            get = _rows(d.get, 1)
            if d.kind == "pure-lens":
                objects[d.name] = from_tables(src, view, get, _rows(d.put, 2), _rows(d.create, 1), d.name)
            else:
                e = effect_of(d.effect, carriers)
                objects[d.name] = mlens_from_tables(
                    e, src, view, get,
                    {k: _value_of(e, v) for k, v in _rows(d.put, 2, lit=True).items()},
                    {k: _value_of(e, v) for k, v in _rows(d.create, 1, lit=True).items()}, d.name)
        elif isinstance(d, SymDecl):
            A, B, C = carriers[d.left], carriers[d.right], carriers[d.complement]
            missing = lib_value(d.missing)
            if d.kind == "slens":
                objects[d.name] = slens_from_tables(A, B, C, _rows(d.put_r, 2), _rows(d.put_l, 2),
                                                    missing, d.name)
            else:
                e = effect_of(d.effect, carriers)
                objects[d.name] = smlens_from_tables(
                    e, A, B, C, {k: _value_of(e, v) for k, v in _rows(d.put_r, 2, lit=True).items()},
                    {k: _value_of(e, v) for k, v in _rows(d.put_l, 2, lit=True).items()}, missing, d.name)
        elif isinstance(d, SpanDecl):
            l, r = objects[d.left], objects[d.right]
            if isinstance(l, PureLens) and isinstance(r, PureLens):
                l, r = lens2mlens(IDENTITY, l), lens2mlens(IDENTITY, r)
            elif isinstance(l, PureLens):
                l = lens2mlens(r.effect, l)
            elif isinstance(r, PureLens):
                r = lens2mlens(l.effect, r)
            objects[d.name] = Span(l, r, d.name)
    return Model(carriers, objects, checks)


def load(text: str) -> Model:
    return build(parse_lens_file(text))


# ---------------------------------------------------------------- objects back to text


def file_value(x) -> Any:
    """Map a library value onto the file's atom/tuple syntax."""
    if x is True:
        return "T"
    if x is False:
        return "F"
    if x is None:
        return "none"
    if isinstance(x, Just):
        return ("some", file_value(x.value))
    if isinstance(x, tuple):
        return tuple(file_value(v) for v in x)
    return str(x)


class _Namer:
    def __init__(self, taken: set):
        self.taken = set(taken)
        self.by_elements: dict = {}
        self.decls: list = []

    def carrier(self, c: FiniteCarrier, hint: str) -> str:
        elems = tuple(file_value(x) for x in c.elements)
        if elems in self.by_elements:
            return self.by_elements[elems]
        base = re.sub(r"[^A-Za-z0-9_]", "", hint) or "C"
        name, i = base, 1
        while name in self.taken:
            i += 1
            name = f"{base}{i}"
        self.taken.add(name)
        self.by_elements[elems] = name
        self.decls.append(CarrierDecl(name, elems))
        return name


def _spec_for(e: Effect, namer: _Namer) -> EffectSpec:
    if isinstance(e, Identity):
        return EffectSpec("identity")
    if isinstance(e, Maybe):
        return EffectSpec("maybe")
    if isinstance(e, ListEffect):
        return EffectSpec("list")
    if isinstance(e, State):
        return EffectSpec("state", namer.carrier(e.states, "St"))
    if isinstance(e, Writer):
        logs = [w for w in e.monoid.elements if len(w) == 1]
        base = FiniteCarrier("Log", tuple(w[0] for w in logs))
        return EffectSpec("writer", namer.carrier(base, "Log"))
    raise ValueError(f"cannot print effect {e.name}")


def _lit_of(m: EffectValue) -> Lit:
    e, p = m.effect, m.payload
    if isinstance(e, Identity):
        return Lit("pure", file_value(p))
    if isinstance(e, Maybe):
        return Lit("just", file_value(p[0])) if p else Lit("nothing")
    if isinstance(e, ListEffect):
        return Lit("list", tuple(file_value(x) for x in p))
    if isinstance(e, Writer):
        return Lit("writer", (tuple(file_value(w) for w in p[0]), file_value(p[1])))
    if isinstance(e, State):
        return Lit("state", tuple((file_value(s), file_value(x), file_value(s1))
                                  for s, (x, s1) in zip(e.states, p)))
    raise ValueError(e.name)


def object_decls(name: str, obj, taken: set = frozenset()) -> list:
    """Declarations (carriers, effect, definition) that print `obj`."""
    namer = _Namer(taken)
    fv = file_value
    if isinstance(obj, PureLens):
        s, v = namer.carrier(obj.source, name + "S"), namer.carrier(obj.view, name + "V")
        g, p, c = obj.tables()
        body = LensDecl("pure-lens", name, s, v, None,
                        tuple((fv(a), fv(b)) for a, b in g.items()),
                        tuple(((fv(a), fv(b)), fv(x)) for (a, b), x in p.items()),
                        tuple((fv(b), fv(a)) for b, a in c.items()))
        return namer.decls + [body]
    if isinstance(obj, MLens):
        s, v = namer.carrier(obj.source, name + "S"), namer.carrier(obj.view, name + "V")
        spec = _spec_for(obj.effect, namer)
        g, p, c = obj.tables()
        body = LensDecl("mlens", name, s, v, spec,
                        tuple((fv(a), fv(b)) for a, b in g.items()),
                        tuple(((fv(a), fv(b)), _lit_of(m)) for (a, b), m in p.items()),
                        tuple((fv(b), _lit_of(m)) for b, m in c.items()))
        return namer.decls + [Directive("effect", _effect_args(spec)), body]
    if isinstance(obj, (SLens, SMLens)):
        A = namer.carrier(obj.left, name + "A")
        B = namer.carrier(obj.right, name + "B")
        C = namer.carrier(obj.complement, name + "C")
        if isinstance(obj, SLens):
            pr = tuple(((fv(a), fv(c)), fv(obj.put_r(a, c))) for a in obj.left for c in obj.complement)
            pl = tuple(((fv(b), fv(c)), fv(obj.put_l(b, c))) for b in obj.right for c in obj.complement)
            return namer.decls + [SymDecl("slens", name, A, B, C, None, pr, pl, fv(obj.missing))]
        spec = _spec_for(obj.effect, namer)
        pr = tuple(((fv(a), fv(c)), _lit_of(obj.mput_r(a, c))) for a in obj.left for c in obj.complement)
        pl = tuple(((fv(b), fv(c)), _lit_of(obj.mput_l(b, c))) for b in obj.right for c in obj.complement)
        return namer.decls + [Directive("effect", _effect_args(spec)),
                              SymDecl("smlens", name, A, B, C, spec, pr, pl, fv(obj.missing))]
    if isinstance(obj, Span):
        left = object_decls(name + "_left", obj.left, namer.taken)
        taken = set(namer.taken) | {d.name for d in left if hasattr(d, "name")}
        right = object_decls(name + "_right", obj.right, taken)
        seen = {d.name for d in left if isinstance(d, CarrierDecl)}
        right = [d for d in right if not (isinstance(d, CarrierDecl) and d.name in seen)]
        return left + right + [SpanDecl(name, name + "_left", name + "_right")]
    raise TypeError(f"cannot print {type(obj).__name__}")


def _effect_args(spec: EffectSpec) -> tuple:
    if spec.kind == "writer":
        return ("writer", "list", spec.carrier)
    return (spec.kind,) + ((spec.carrier,) if spec.carrier else ())


def render_object(name: str, obj, taken: set = frozenset()) -> str:
    return render_lens_file(LensFile(object_decls(name, obj, taken)))
