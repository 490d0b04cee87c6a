"""Spans of monadic lenses: leg extension, join, composition and the
conversions to and from symmetric monadic lenses."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .carrier import FiniteCarrier, Just, maybe_lift, product as carrier_product, render
from .effects import IDENTITY, Effect, bind
from .errors import CarrierMismatch, ConsistencyViolation, EffectMismatch, EmptyStateWithNonemptyViews
from .lens_core import PureLens
from .mlens import MLens, check_mlens_laws, compose_m, id_mlens, lens2mlens
from .report import LawReport
from .symmetric import SMLens


@dataclass(frozen=True, eq=False)
class Span:
    """Two lenses out of one state carrier.

    `ambient` is the representation carrier the legs are defined on when
    `state` is a filtered subset of it (smlens2span); the law checker falls
    back to it only when the filtered state space is empty.
    """

    left: MLens
    right: MLens
    name: str = "span"
    ambient: FiniteCarrier | None = field(default=None)

    def __post_init__(self):
        if self.left.effect != self.right.effect:
            raise EffectMismatch(f"span legs use {self.left.effect.name} and {self.right.effect.name}")
        if self.left.source != self.right.source:
            raise CarrierMismatch(f"span legs read {self.left.source.name} and {self.right.source.name}")

    @property
    def state(self) -> FiniteCarrier:
        return self.left.source

    @property
    def effect(self) -> Effect:
        return self.left.effect


def pure_span(left: PureLens, right: PureLens, name: str = "span", effect: Effect = IDENTITY) -> Span:
    return Span(lens2mlens(effect, left), lens2mlens(effect, right), name)


def identity_span(effect: Effect, c: FiniteCarrier) -> Span:
    return Span(id_mlens(effect, c), id_mlens(effect, c), f"id[{c.name}]")


def extend_left(ml: MLens, sp: Span) -> Span:
    return Span(compose_m(sp.left, ml), sp.right, f"{ml.name}◁{sp.name}")


def extend_right(sp: Span, ml: MLens) -> Span:
    return Span(sp.left, compose_m(sp.right, ml), f"{sp.name}▷{ml.name}")


def consistent_pairs(l1: MLens, l2: MLens) -> FiniteCarrier:
    both = carrier_product(l1.source, l2.source, name=f"{l1.source.name}⋈{l2.source.name}")
    return both.filter(lambda p: l1.mget(p[0]) == l2.mget(p[1]))


def join(l1: MLens, l2: MLens, *, strict: bool = False) -> Span:
    """Span over the consistent pairs of a cospan l1, l2 into one view.

    With `strict`, every produced pair is audited up front and a
    ConsistencyViolation is raised; otherwise check_span_wb reports it.
    """
    if l1.effect != l2.effect:
        raise EffectMismatch(f"{l1.effect.name} vs {l2.effect.name}")
    if l1.view != l2.view:
        raise CarrierMismatch(f"cospan views differ: {l1.view.name} vs {l2.view.name}")
    e = l1.effect
    state = consistent_pairs(l1, l2)

    def put_l(p, s1):
        return bind(l2.mput(p[1], l1.mget(s1)), lambda s2: e.ret((s1, s2)))

    def create_l(s1):
        return bind(l2.mcreate(l1.mget(s1)), lambda s2: e.ret((s1, s2)))

    def put_r(p, s2):
        return bind(l1.mput(p[0], l2.mget(s2)), lambda s1: e.ret((s1, s2)))

    def create_r(s2):
        return bind(l1.mcreate(l2.mget(s2)), lambda s1: e.ret((s1, s2)))

    left = MLens(e, state, l1.source, lambda p: p[0], put_l, create_l, f"⋈left")
    right = MLens(e, state, l2.source, lambda p: p[1], put_r, create_r, f"⋈right")
    sp = Span(left, right, f"{l1.name}⋈{l2.name}")
    if strict:
        for leg in (left, right):
            for p in state:
                for v in leg.view:
                    _audit(leg, leg.mput(p, v), ("mput", p, v))
            for v in leg.view:
                _audit(leg, leg.mcreate(v), ("mcreate", v))
    return sp


def _audit(leg: MLens, m, where):
    for p in leg.effect.outcomes(m):
        if p not in leg.source:
            raise ConsistencyViolation(
                f"{where[0]}({', '.join(render(x) for x in where[1:])}) produced the "
                f"inconsistent pair {render(p)}")


def compose_span(sp1: Span, sp2: Span) -> Span:
    middle = join(sp1.right, sp2.left)
    out = extend_right(extend_left(sp1.left, middle), sp2.right)
    return Span(out.left, out.right, f"{sp1.name};{sp2.name}")


def check_span_wb(sp: Span) -> LawReport:
    """Both legs' monadic-lens laws.

    The legs' Closure law doubles as the consistency audit for spans built
    by join or smlens2span, whose state carriers are filtered subsets.
    """
    rep = LawReport(f"span {sp.name} [{sp.effect.name}]")
    left, right = sp.left, sp.right
    if (len(sp.state) == 0 and sp.ambient is not None and len(sp.ambient)
            and len(left.view) and len(right.view)):
        rep.notes.append(
            f"consistent state space is empty while both views are inhabited; "
            f"laws checked over the representation carrier {sp.ambient.name}")
        left = MLens(left.effect, sp.ambient, left.view, left.mget, left.mput, left.mcreate, left.name)
        right = MLens(right.effect, sp.ambient, right.view, right.mget, right.mput, right.mcreate, right.name)
    rep.merge(check_mlens_laws(left), "left.")
    rep.merge(check_mlens_laws(right), "right.")
    return rep


# ---------------------------------------------------------------- conversions


def span2smlens(sp: Span) -> SMLens:
    """Symmetric lens whose complement is an optional span state."""
    e, left, right = sp.effect, sp.left, sp.right
    comp = maybe_lift(sp.state)

    def mput_r(a, c):
        m = left.mcreate(a) if c is None else left.mput(c.value, a)
        return bind(m, lambda s: e.ret((right.mget(s), Just(s))))

    def mput_l(b, c):
        m = right.mcreate(b) if c is None else right.mput(c.value, b)
        return bind(m, lambda s: e.ret((left.mget(s), Just(s))))

    return SMLens(e, left.view, right.view, comp, mput_r, mput_l, None, f"smlens({sp.name})")


def consistent_triples(sl: SMLens) -> FiniteCarrier:
    e = sl.effect
    every = carrier_product(sl.left, sl.right, sl.complement, name=f"triples({sl.name})")
    return every.filter(lambda t: e.eq(sl.mput_r(t[0], t[2]), e.ret((t[1], t[2])))
                        and e.eq(sl.mput_l(t[1], t[2]), e.ret((t[0], t[2]))))


def smlens2span(sl: SMLens) -> Span:
    """Span over the consistent triples (a, b, c) of a symmetric lens."""
    e = sl.effect
    state = consistent_triples(sl)
    if len(state) == 0 and len(sl.left) and len(sl.right):
        warnings.warn(f"{sl.name} has no consistent triples although both views are inhabited",
                      EmptyStateWithNonemptyViews, stacklevel=2)

    def put_l(t, a):
        return bind(sl.mput_r(a, t[2]), lambda r: e.ret((a, r[0], r[1])))

    def create_l(a):
        return bind(sl.mput_r(a, sl.missing), lambda r: e.ret((a, r[0], r[1])))

    def put_r(t, b):
        return bind(sl.mput_l(b, t[2]), lambda r: e.ret((r[0], b, r[1])))

    def create_r(b):
        return bind(sl.mput_l(b, sl.missing), lambda r: e.ret((r[0], b, r[1])))

    left = MLens(e, state, sl.left, lambda t: t[0], put_l, create_l, "left")
    right = MLens(e, state, sl.right, lambda t: t[1], put_r, create_r, "right")
    ambient = carrier_product(sl.left, sl.right, sl.complement)
    return Span(left, right, f"span({sl.name})", ambient)
