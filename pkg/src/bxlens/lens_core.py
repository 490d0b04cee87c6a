"""Pure full lenses: get, put and create over finite carriers."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Iterator

from .carrier import FiniteCarrier, budget_default, product as carrier_product, render
from .errors import BoundExceeded, CarrierMismatch
from .report import LawReport


@dataclass(frozen=True, eq=False)
class PureLens:
    source: FiniteCarrier
    view: FiniteCarrier
    get: Callable[[Any], Any]
    put: Callable[[Any, Any], Any]
    create: Callable[[Any], Any]
    name: str = "lens"

    def tables(self) -> tuple[dict, dict, dict]:
        get = {a: self.get(a) for a in self.source}
        put = {(a, b): self.put(a, b) for a in self.source for b in self.view}
        create = {b: self.create(b) for b in self.view}
        return get, put, create

    def renamed(self, name: str) -> "PureLens":
        return PureLens(self.source, self.view, self.get, self.put, self.create, name)


def from_tables(source: FiniteCarrier, view: FiniteCarrier, get: dict, put: dict,
                create: dict, name: str = "lens") -> PureLens:
    """Build a lens from lookup tables (must be total over the carriers)."""
    for a in source:
        view.require(get[a], f"get({render(a)})")
        for b in view:
            source.require(put[(a, b)], f"put({render(a)}, {render(b)})")
    for b in view:
        source.require(create[b], f"create({render(b)})")
    get, put, create = dict(get), dict(put), dict(create)
    return PureLens(source, view, get.__getitem__, lambda a, b: put[(a, b)],
                    create.__getitem__, name)


def tabulate(l: PureLens) -> PureLens:
    """Freeze a closure-built lens into tables (same behaviour, faster)."""
    g, p, c = l.tables()
    return from_tables(l.source, l.view, g, p, c, l.name)


def id_lens(c: FiniteCarrier) -> PureLens:
    return PureLens(c, c, lambda a: a, lambda _a, b: b, lambda b: b, f"id[{c.name}]")


def fst_lens(a: FiniteCarrier, b: FiniteCarrier, dflt) -> PureLens:
    b.require(dflt, "default")
    return PureLens(carrier_product(a, b), a, lambda s: s[0], lambda s, x: (x, s[1]),
                    lambda x: (x, dflt), "fst")


def snd_lens(a: FiniteCarrier, b: FiniteCarrier, dflt) -> PureLens:
    a.require(dflt, "default")
    return PureLens(carrier_product(a, b), b, lambda s: s[1], lambda s, y: (s[0], y),
                    lambda y: (dflt, y), "snd")


def compose_pure(l1: PureLens, l2: PureLens) -> PureLens:
    if l1.view != l2.source:
        raise CarrierMismatch(f"cannot compose {l1.name} : {l1.source.name} ~> {l1.view.name} "
                              f"with {l2.name} : {l2.source.name} ~> {l2.view.name}")
    return PureLens(
        l1.source, l2.view,
        lambda a: l2.get(l1.get(a)),
        lambda a, c: l1.put(a, l2.put(l1.get(a), c)),
        lambda c: l1.create(l2.create(c)),
        f"{l1.name};{l2.name}")


def check_pure_laws(l: PureLens) -> LawReport:
    rep = LawReport(f"pure lens {l.name}").declare("Closure", "GetPut", "PutGet", "CreateGet")
    for a in l.source:
        b = l.get(a)
        rep.case("Closure", b in l.view, (("op", "get"), ("a", a)), b, l.view.name)
        rep.case("GetPut", l.put(a, b) == a, (("a", a),), l.put(a, b), a)
        for b2 in l.view:
            a2 = l.put(a, b2)
            rep.case("Closure", a2 in l.source, (("op", "put"), ("a", a), ("b", b2)), a2, l.source.name)
            got = l.get(a2) if a2 in l.source else None
            rep.case("PutGet", got == b2, (("a", a), ("b", b2)), got, b2)
    for b in l.view:
        a = l.create(b)
        rep.case("Closure", a in l.source, (("op", "create"), ("b", b)), a, l.source.name)
        got = l.get(a) if a in l.source else None
        rep.case("CreateGet", got == b, (("b", b),), got, b)
    return rep


def pure_mismatches(l1: PureLens, l2: PureLens) -> list[tuple]:
    """Pointwise differences between two lenses over the same carriers."""
    if l1.source != l2.source or l1.view != l2.view:
        raise CarrierMismatch("lenses range over different carriers")
    out = []
    for a in l1.source:
        if l1.get(a) != l2.get(a):
            out.append(("get", (a,), l1.get(a), l2.get(a)))
        for b in l1.view:
            if l1.put(a, b) != l2.put(a, b):
                out.append(("put", (a, b), l1.put(a, b), l2.put(a, b)))
    for b in l1.view:
        if l1.create(b) != l2.create(b):
            out.append(("create", (b,), l1.create(b), l2.create(b)))
    return out


def pure_equal(l1: PureLens, l2: PureLens) -> bool:
    return not pure_mismatches(l1, l2)


def enumerate_pure_lenses(source: FiniteCarrier, view: FiniteCarrier, *,
                          budget: int | None = None) -> Iterator[PureLens]:
    """Every well-behaved full lens source ~> view, in table order.

    get ranges over surjections; put and create then range over the
    preimages the laws allow (put a (get a) = a is forced).
    """
    budget = budget_default() if budget is None else budget
    spent = 0
    S, V = list(source), list(view)
    for gt in product(range(len(V)), repeat=len(S)):
        spent += 1
        if spent > budget:
            raise BoundExceeded(f"lens enumeration exceeded the budget {budget}")
        if len(set(gt)) != len(V):
            continue
        pre = {v: [s for s, i in zip(S, gt) if V[i] == v] for v in V}
        get = {s: V[i] for s, i in zip(S, gt)}
        cells = [(a, b) for a in S for b in V]
        choices = [[a] if get[a] == b else pre[b] for a, b in cells]
        for pt in product(*choices):
            put = dict(zip(cells, pt))
            for ct in product(*(pre[b] for b in V)):
                spent += 1
                if spent > budget:
                    raise BoundExceeded(f"lens enumeration exceeded the budget {budget}")
                yield from_tables(source, view, get, put, dict(zip(V, ct)),
                                  f"L{len(S)}{len(V)}#{spent}")
