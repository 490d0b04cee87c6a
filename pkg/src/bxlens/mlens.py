"""Monadic lenses, plus the naive (effectful get) and put-lens variants."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Iterator, NamedTuple

from .carrier import FiniteCarrier, budget_default, int_range, render, sized
from .effects import (IDENTITY, MAYBE, Effect, EffectValue, Identity, Writer, bind,
                      free_list)
from .errors import BoundExceeded, CarrierMismatch, EffectMismatch, NotFound, UnsupportedMembership
from .lens_core import PureLens
from .report import LawReport, Violation


@dataclass(frozen=True, eq=False)
class MLens:
    effect: Effect
    source: FiniteCarrier
    view: FiniteCarrier
    mget: Callable[[Any], Any]
    mput: Callable[[Any, Any], EffectValue]
    mcreate: Callable[[Any], EffectValue]
    name: str = "mlens"

    def renamed(self, name: str) -> "MLens":
        return MLens(self.effect, self.source, self.view, self.mget, self.mput, self.mcreate, name)

    def tables(self) -> tuple[dict, dict, dict]:
        get = {a: self.mget(a) for a in self.source}
        put = {(a, b): self.mput(a, b) for a in self.source for b in self.view}
        create = {b: self.mcreate(b) for b in self.view}
        return get, put, create


def mlens_from_tables(effect: Effect, source: FiniteCarrier, view: FiniteCarrier,
                      get: dict, put: dict, create: dict, name: str = "mlens") -> MLens:
    get, put, create = dict(get), dict(put), dict(create)
    for a in source:
        view.require(get[a], f"mget({render(a)})")
        for b in view:
            _check_effect(effect, put[(a, b)])
    for b in view:
        _check_effect(effect, create[b])
    return MLens(effect, source, view, get.__getitem__, lambda a, b: put[(a, b)],
                 create.__getitem__, name)


def tabulate_m(l: MLens) -> MLens:
    g, p, c = l.tables()
    return mlens_from_tables(l.effect, l.source, l.view, g, p, c, l.name)


def _check_effect(effect: Effect, m):
    if not isinstance(m, EffectValue) or m.effect != effect:
        raise EffectMismatch(f"expected a {effect.name} computation, got {m!r}")


def lens2mlens(effect: Effect, l: PureLens) -> MLens:
    return MLens(effect, l.source, l.view, l.get,
                 lambda a, b: effect.ret(l.put(a, b)),
                 lambda b: effect.ret(l.create(b)), l.name)


def mlens2lens(l: MLens) -> PureLens:
    """Lower an Identity-effect lens back to a pure lens."""
    if not isinstance(l.effect, Identity):
        raise EffectMismatch(f"only identity lenses are pure, {l.name} uses {l.effect.name}")
    return PureLens(l.source, l.view, l.mget,
                    lambda a, b: l.mput(a, b).payload,
                    lambda b: l.mcreate(b).payload, l.name)


def compose_m(l1: MLens, l2: MLens) -> MLens:
    if l1.effect != l2.effect:
        raise EffectMismatch(f"{l1.name} uses {l1.effect.name} but {l2.name} uses {l2.effect.name}")
    if l1.view != l2.source:
        raise CarrierMismatch(f"{l1.name} views {l1.view.name} but {l2.name} reads {l2.source.name}")
    return MLens(
        l1.effect, l1.source, l2.view,
        lambda a: l2.mget(l1.mget(a)),
        lambda a, c: bind(l2.mput(l1.mget(a), c), lambda b: l1.mput(a, b)),
        lambda c: bind(l2.mcreate(c), l1.mcreate),
        f"{l1.name};{l2.name}")


def id_mlens(effect: Effect, c: FiniteCarrier) -> MLens:
    return MLens(effect, c, c, lambda a: a, lambda _a, b: effect.ret(b), effect.ret, f"id[{c.name}]")


# ---------------------------------------------------------------- builtins


def const_mlens(source: FiniteCarrier, view: FiniteCarrier, b, dflt=None) -> MLens:
    """View fixed at `b`; any attempt to change it fails."""
    view.require(b, "constant")
    if dflt is None:
        dflt = source.elements[0]
    source.require(dflt, "default")
    return MLens(
        MAYBE, source, view, lambda _a: b,
        lambda a, b2: MAYBE.ret(a) if b2 == b else MAYBE.nothing(),
        lambda b2: MAYBE.ret(dflt) if b2 == b else MAYBE.nothing(),
        f"const {render(b)}")


def abs_lens(n: int, signed_view: bool = False) -> MLens:
    """Absolute value on [-n, n], restoring the sign on put and failing on
    negative views.

    The view carrier is [0, n]; with `signed_view` it is [-n, n] so that the
    failing branch is also quantified over by the law checker.
    """
    src = int_range(-n, n)
    view = int_range(-n if signed_view else 0, n)

    def mput(a, b):
        if b < 0:
            return MAYBE.nothing()
        return MAYBE.ret(-b if a < 0 else b)

    return MLens(MAYBE, src, view, abs, mput,
                 lambda b: MAYBE.nothing() if b < 0 else MAYBE.ret(b), f"abs{n}")


def log_lens(l: PureLens, effect: Writer | None = None) -> MLens:
    """Wrap `l` so every put that changes the source logs the old source."""
    effect = effect or Writer(free_list(l.source))

    def mput(a, b):
        a2 = l.put(a, b)
        told = effect.tell((a,)) if a2 != a else effect.ret(())
        return bind(told, lambda _: effect.ret(a2))

    return MLens(effect, l.source, l.view, l.get, mput,
                 lambda b: effect.ret(l.create(b)), f"log({l.name})")


# ---------------------------------------------------------------- laws


def _pair(effect: Effect):
    return lambda a2, b: effect.ret((a2, b))


def check_mlens_laws(l: MLens) -> LawReport:
    """MGetPut, MPutGet and MCreateGet, the latter two at the pair-return
    continuation, plus a closure check that every outcome stays in the
    declared carriers."""
    e = l.effect
    rep = LawReport(f"mlens {l.name} [{e.name}]").declare("Closure", "MGetPut", "MPutGet", "MCreateGet")
    pair = _pair(e)
    for a in l.source:
        b0 = l.mget(a)
        rep.case("Closure", b0 in l.view, (("op", "mget"), ("a", a)), b0, l.view.name)
        lhs, rhs = l.mput(a, b0), e.ret(a)
        rep.case("MGetPut", e.eq(lhs, rhs), (("a", a),), lhs, rhs)
        for b in l.view:
            m = l.mput(a, b)
            bad = [x for x in e.outcomes(m) if x not in l.source]
            rep.case("Closure", not bad, (("op", "mput"), ("a", a), ("b", b)), m, l.source.name)
            if bad:
                continue
            lhs = bind(m, lambda a2: pair(a2, l.mget(a2)))
            rhs = bind(m, lambda a2: pair(a2, b))
            rep.case("MPutGet", e.eq(lhs, rhs), (("a", a), ("b", b)), lhs, rhs)
    for b in l.view:
        m = l.mcreate(b)
        bad = [x for x in e.outcomes(m) if x not in l.source]
        rep.case("Closure", not bad, (("op", "mcreate"), ("b", b)), m, l.source.name)
        if bad:
            continue
        lhs = bind(m, lambda a2: pair(a2, l.mget(a2)))
        rhs = bind(m, lambda a2: pair(a2, b))
        rep.case("MCreateGet", e.eq(lhs, rhs), (("b", b),), lhs, rhs)
    return rep


def mlens_mismatches(l1: MLens, l2: MLens) -> list[tuple]:
    """Pointwise differences (op, args, lhs, rhs) between two monadic lenses."""
    if l1.effect != l2.effect:
        raise EffectMismatch(f"{l1.effect.name} vs {l2.effect.name}")
    if l1.source != l2.source or l1.view != l2.view:
        raise CarrierMismatch(f"{l1.name} and {l2.name} range over different carriers")
    e, out = l1.effect, []
    for a in l1.source:
        if l1.mget(a) != l2.mget(a):
            out.append(("mget", (a,), l1.mget(a), l2.mget(a)))
        for b in l1.view:
            x, y = l1.mput(a, b), l2.mput(a, b)
            if not e.eq(x, y):
                out.append(("mput", (a, b), x, y))
    for b in l1.view:
        x, y = l1.mcreate(b), l2.mcreate(b)
        if not e.eq(x, y):
            out.append(("mcreate", (b,), x, y))
    return out


def mlens_equal(l1: MLens, l2: MLens) -> bool:
    return not mlens_mismatches(l1, l2)


# ---------------------------------------------------------------- generation


def _candidates(effect: Effect, source: FiniteCarrier, get: dict, b) -> list[EffectValue]:
    pre = source.filter(lambda a: get[a] == b)
    return effect.values(pre)


def enumerate_mlenses(effect: Effect, source: FiniteCarrier, view: FiniteCarrier, *,
                      budget: int | None = None) -> Iterator[MLens]:
    """Every well-behaved monadic lens over the effect's enumerable values."""
    budget = budget_default() if budget is None else budget
    spent = 0
    S, V = list(source), list(view)
    for gt in product(V, repeat=len(S)):
        get = dict(zip(S, gt))
        cand = {b: _candidates(effect, source, get, b) for b in V}
        cells = [(a, b) for a in S for b in V]
        choices = [[effect.ret(a)] if get[a] == b else cand[b] for a, b in cells]
        if any(not c for c in choices) or any(not cand[b] for b in V):
            continue
        for pt in product(*choices):
            put = dict(zip(cells, pt))
            for ct in product(*(cand[b] for b in V)):
                spent += 1
                if spent > budget:
                    raise BoundExceeded(f"mlens enumeration exceeded the budget {budget}")
                yield mlens_from_tables(effect, source, view, get, put, dict(zip(V, ct)),
                                        f"M#{spent}")


def random_mlens(effect: Effect, source: FiniteCarrier, view: FiniteCarrier,
                 rng: random.Random, tries: int = 1000) -> MLens | None:
    """A random lens whose tables are drawn from law-respecting cells.

    Returns None when no mget drawn in `tries` attempts admits any lens.
    """
    S, V = list(source), list(view)
    for _ in range(tries):
        get = {a: rng.choice(V) for a in S}
        cand = {b: _candidates(effect, source, get, b) for b in V}
        if any(not c for c in cand.values()):
            continue
        put = {(a, b): effect.ret(a) if get[a] == b else rng.choice(cand[b]) for a in S for b in V}
        create = {b: rng.choice(cand[b]) for b in V}
        return mlens_from_tables(effect, source, view, get, put, create, "random")
    return None


# ---------------------------------------------------------------- naive lenses


@dataclass(frozen=True, eq=False)
class NaiveMLens:
    """A lens whose get is effectful too."""

    effect: Effect
    source: FiniteCarrier
    view: FiniteCarrier
    mget: Callable[[Any], EffectValue]
    mput: Callable[[Any, Any], EffectValue]
    name: str = "naive"

    def tables(self) -> tuple[dict, dict]:
        return ({a: self.mget(a) for a in self.source},
                {(a, b): self.mput(a, b) for a in self.source for b in self.view})


def naive_from_tables(effect, source, view, get: dict, put: dict, name="naive") -> NaiveMLens:
    get, put = dict(get), dict(put)
    return NaiveMLens(effect, source, view, get.__getitem__, lambda a, b: put[(a, b)], name)


def naive_of_mlens(l: MLens) -> NaiveMLens:
    e = l.effect
    return NaiveMLens(e, l.source, l.view, lambda a: e.ret(l.mget(a)), l.mput, l.name)


def compose_naive(l1: NaiveMLens, l2: NaiveMLens) -> NaiveMLens:
    if l1.effect != l2.effect:
        raise EffectMismatch(f"{l1.effect.name} vs {l2.effect.name}")
    if l1.view != l2.source:
        raise CarrierMismatch(f"{l1.view.name} vs {l2.source.name}")
    return NaiveMLens(
        l1.effect, l1.source, l2.view,
        lambda a: bind(l1.mget(a), l2.mget),
        lambda a, c: bind(l1.mget(a), lambda b: bind(l2.mput(b, c), lambda b2: l1.mput(a, b2))),
        f"{l1.name};{l2.name}")


def _naive_getput(l: NaiveMLens, a):
    return bind(l.mget(a), lambda b: l.mput(a, b)), l.effect.ret(a)


def _naive_putget(l: NaiveMLens, a, b):
    m = l.mput(a, b)
    return bind(m, l.mget), bind(m, lambda _a: l.effect.ret(b))


def check_naive_laws(l: NaiveMLens) -> LawReport:
    e = l.effect
    rep = LawReport(f"naive lens {l.name} [{e.name}]").declare("MGetPut0", "MPutGet0")
    for a in l.source:
        lhs, rhs = _naive_getput(l, a)
        rep.case("MGetPut0", e.eq(lhs, rhs), (("a", a),), lhs, rhs)
        for b in l.view:
            lhs, rhs = _naive_putget(l, a, b)
            rep.case("MPutGet0", e.eq(lhs, rhs), (("a", a), ("b", b)), lhs, rhs)
    return rep


def enumerate_naive_lenses(effect: Effect, source: FiniteCarrier, view: FiniteCarrier,
                           *, budget: list | None = None) -> Iterator[NaiveMLens]:
    """Every law-passing naive lens; `budget` is a one-item list used as a
    shared countdown."""
    budget = budget if budget is not None else [budget_default()]
    S, V = list(source), list(view)
    gvals, pvals = effect.values(view), effect.values(source)
    for gt in product(gvals, repeat=len(S)):
        _spend(budget)
        get = dict(zip(S, gt))
        probe = NaiveMLens(effect, source, view, get.__getitem__, lambda a, b: None)
        # MPutGet0 only involves one put cell at a time
        cell_ok = {}
        for a in S:
            for b in V:
                ok = []
                for m in pvals:
                    lhs, rhs = bind(m, probe.mget), bind(m, lambda _a: effect.ret(b))
                    if effect.eq(lhs, rhs):
                        ok.append(m)
                cell_ok[(a, b)] = ok
        rows = []
        for a in S:
            good = []
            for row in product(*(cell_ok[(a, b)] for b in V)):
                _spend(budget)
                cell = dict(zip(V, row))
                lhs = bind(get[a], cell.__getitem__)
                if effect.eq(lhs, effect.ret(a)):
                    good.append(row)
            rows.append(good)
        for choice in product(*rows):
            _spend(budget)
            put = {(a, b): m for a, row in zip(S, choice) for b, m in zip(V, row)}
            yield naive_from_tables(effect, source, view, get, put,
                                    f"naive[{source.name}~>{view.name}]")


def _spend(budget: list, n: int = 1):
    budget[0] -= n
    if budget[0] < 0:
        raise BoundExceeded("enumeration budget exhausted")


class NaiveCounterexample(NamedTuple):
    first: NaiveMLens
    second: NaiveMLens
    composite: NaiveMLens
    violation: Violation


def search_naive_counterexample(effect: Effect, max_a: int, max_b: int, *,
                                budget: int | None = None):
    """First law-passing pair whose naive composite breaks a law.

    Carriers: the outer source A has at most `max_a` elements; the middle
    carrier B and the final view C have at most `max_b`. Sizes are tried in
    lexicographic order (|A|, |B|, |C|), then lens pairs in table order.
    """
    budget = budget_default() if budget is None else budget
    if budget <= 0:
        raise BoundExceeded("budget must be positive")
    left = [budget]
    for na in range(1, max_a + 1):
        for nb in range(1, max_b + 1):
            for nc in range(1, max_b + 1):
                A, B, C = sized(na, "a"), sized(nb, "b"), sized(nc, "c")
                seconds = list(enumerate_naive_lenses(effect, B, C, budget=left))
                for l1 in enumerate_naive_lenses(effect, A, B, budget=left):
                    for l2 in seconds:
                        _spend(left)
                        comp = compose_naive(l1, l2)
                        rep = check_naive_laws(comp)
                        if not rep.passed:
                            return NaiveCounterexample(l1, l2, comp, rep.violations[0])
    return NotFound


# ---------------------------------------------------------------- put-lenses


@dataclass(frozen=True, eq=False)
class PutLens:
    effect: Effect
    source: FiniteCarrier
    view: FiniteCarrier
    mget: Callable[[Any], Any]
    mput: Callable[[Any, Any], EffectValue]
    name: str = "putlens"


def put_lens_of(l: MLens) -> PutLens:
    return PutLens(l.effect, l.source, l.view, l.mget, l.mput, l.name)


def check_put_lens_laws(l: PutLens, member: Callable[[Any, EffectValue], bool] | None = None) -> LawReport:
    """(MGetPut1) and (MPutGet1); needs a membership test for the effect."""
    e = l.effect
    mem = member or e.member
    if member is None and len(l.source):
        mem(l.source.elements[0], e.ret(l.source.elements[0]))  # UnsupportedMembership early
    rep = LawReport(f"put-lens {l.name} [{e.name}]").declare("MGetPut1", "MPutGet1")
    for s in l.source:
        v0 = l.mget(s)
        lhs, rhs = l.mput(s, v0), e.ret(s)
        rep.case("MGetPut1", e.eq(lhs, rhs), (("s", s), ("v", v0)), lhs, rhs)
        for v in l.view:
            m = l.mput(s, v)
            for s2 in l.source:
                if mem(s2, m):
                    got = l.mget(s2)
                    rep.case("MPutGet1", got == v, (("s", s), ("v'", v), ("s'", s2)), got, v)
    return rep
