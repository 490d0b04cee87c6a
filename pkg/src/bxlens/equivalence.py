"""Base maps and the three span equivalences (isomorphism, span, bisimulation).

Each equivalence has a witness type, a verifier returning a LawReport, and a
finite search. The constructions converting between witnesses are executable
and their results are re-verified rather than trusted.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Any, Callable, NamedTuple, Sequence

from .carrier import FiniteCarrier, budget_default, product as carrier_product, render
from .effects import Identity
from .errors import (BoundExceeded, CarrierMismatch, EffectMismatch, InvalidChain,
                     InvalidWitness, NonPureInput, NotFound)
from .lens_core import PureLens, check_pure_laws, compose_pure, from_tables, id_lens
from .mlens import MLens, compose_m, lens2mlens, mlens2lens
from .report import LawReport
from .spans import Span, check_span_wb, join

FORWARD, BACKWARD = "forward", "backward"


@dataclass(frozen=True, eq=False)
class IsoWitness:
    h: Callable[[Any], Any]
    h_inv: Callable[[Any], Any]


@dataclass(frozen=True, eq=False)
class SpanEquivWitness:
    """forward: h : S1 ~> S2 with sp1 = h;sp2.  backward: h : S2 ~> S1 with
    sp2 = h;sp1."""

    h: PureLens
    direction: str = FORWARD

    def __post_init__(self):
        if self.direction not in (FORWARD, BACKWARD):
            raise ValueError(f"direction must be {FORWARD} or {BACKWARD}")


@dataclass(frozen=True, eq=False)
class BisimWitness:
    relation: FiniteCarrier
    span: Span


class SpanWitness(NamedTuple):
    """A pure span l : S ~> S1, r : S ~> S2 relating two spans, with the
    report of its postconditions."""

    left: PureLens
    right: PureLens
    report: LawReport


# ---------------------------------------------------------------- base maps


def check_base_map(h: Callable[[Any], Any], l1: MLens, l2: MLens, report: LawReport | None = None,
                   prefix: str = "") -> LawReport:
    """h commutes with mget, mput and mcreate from l1 to l2."""
    if l1.effect != l2.effect:
        raise EffectMismatch(f"{l1.effect.name} vs {l2.effect.name}")
    if l1.view != l2.view:
        raise CarrierMismatch(f"views differ: {l1.view.name} vs {l2.view.name}")
    e = l1.effect
    rep = report if report is not None else LawReport(f"base map {l1.name} -> {l2.name}")
    names = [prefix + n for n in ("BaseClosure", "BaseGet", "BasePut", "BaseCreate")]
    rep.declare(*names)
    closure, get_, put_, create_ = names
    for s in l1.source:
        t = h(s)
        if not rep.case(closure, t in l2.source, (("s", s),), t, l2.source.name):
            continue
        rep.case(get_, l1.mget(s) == l2.mget(t), (("s", s),), l1.mget(s), l2.mget(t))
        for v in l1.view:
            lhs = e.fmap(l1.mput(s, v), h)
            rhs = l2.mput(t, v)
            rep.case(put_, e.eq(lhs, rhs), (("s", s), ("v", v)), lhs, rhs)
    for v in l1.view:
        lhs, rhs = e.fmap(l1.mcreate(v), h), l2.mcreate(v)
        rep.case(create_, e.eq(lhs, rhs), (("v", v),), lhs, rhs)
    return rep


def _leg_equation(rep: LawReport, law: str, lhs: MLens, rhs: MLens):
    """Record one case per operation point of lhs = rhs."""
    e = lhs.effect
    rep.declare(law)
    for a in lhs.source:
        rep.case(law, lhs.mget(a) == rhs.mget(a), (("op", "mget"), ("s", a)), lhs.mget(a), rhs.mget(a))
        for b in lhs.view:
            x, y = lhs.mput(a, b), rhs.mput(a, b)
            rep.case(law, e.eq(x, y), (("op", "mput"), ("s", a), ("v", b)), x, y)
    for b in lhs.view:
        x, y = lhs.mcreate(b), rhs.mcreate(b)
        rep.case(law, e.eq(x, y), (("op", "mcreate"), ("v", b)), x, y)


def _same_shape(sp1: Span, sp2: Span):
    if sp1.effect != sp2.effect:
        raise EffectMismatch(f"{sp1.name} uses {sp1.effect.name}, {sp2.name} uses {sp2.effect.name}")
    if sp1.left.view != sp2.left.view or sp1.right.view != sp2.right.view:
        raise CarrierMismatch(f"{sp1.name} and {sp2.name} have different views")


def iso_as_lens(w: IsoWitness, s1: FiniteCarrier, s2: FiniteCarrier) -> PureLens:
    return PureLens(s1, s2, w.h, lambda _s, t: w.h_inv(t), w.h_inv, "iso")


def precompose(h: PureLens, sp: Span, name: str | None = None) -> Span:
    """The span h;sp with both legs precomposed by the (lifted) lens h."""
    lh = lens2mlens(sp.effect, h)
    return Span(compose_m(lh, sp.left), compose_m(lh, sp.right), name or f"{h.name};{sp.name}")


# ---------------------------------------------------------------- verification


def verify_equivalence(kind: str, sp1: Span, sp2: Span, w) -> LawReport:
    _same_shape(sp1, sp2)
    if kind == "iso":
        return _verify_iso(sp1, sp2, w)
    if kind == "span":
        return _verify_span(sp1, sp2, w)
    if kind == "bisim":
        return _verify_bisim(sp1, sp2, w)
    raise ValueError(f"unknown equivalence kind {kind!r}")


def _verify_iso(sp1: Span, sp2: Span, w: IsoWitness) -> LawReport:
    S1, S2 = sp1.state, sp2.state
    rep = LawReport(f"iso {sp1.name} ≡ {sp2.name}").declare("Bijection", "LeftLeg", "RightLeg")
    ok = True
    for s in S1:
        t = w.h(s)
        back = w.h_inv(t) if t in S2 else None
        ok &= rep.case("Bijection", t in S2 and back == s, (("s1", s),), back, s)
    for t in S2:
        s = w.h_inv(t)
        fwd = w.h(s) if s in S1 else None
        ok &= rep.case("Bijection", s in S1 and fwd == t, (("s2", t),), fwd, t)
    if ok:
        lifted = precompose(iso_as_lens(w, S1, S2), sp2)
        _leg_equation(rep, "LeftLeg", lifted.left, sp1.left)
        _leg_equation(rep, "RightLeg", lifted.right, sp1.right)
    return rep


def _verify_span(sp1: Span, sp2: Span, w: SpanEquivWitness) -> LawReport:
    src, dst = (sp1, sp2) if w.direction == FORWARD else (sp2, sp1)
    rep = LawReport(f"span step {sp1.name} {'↷' if w.direction == FORWARD else '↶'} {sp2.name}")
    rep.declare("Carriers", "LeftLeg", "RightLeg")
    h = w.h
    fits = h.source == src.state and h.view == dst.state
    rep.case("Carriers", fits, (("h", h.name),), f"{h.source.name} ~> {h.view.name}",
             f"{src.state.name} ~> {dst.state.name}")
    if not fits:
        return rep
    rep.merge(check_pure_laws(h), "witness.")
    if not rep.passed:
        return rep
    lifted = precompose(h, dst)
    _leg_equation(rep, "LeftLeg", lifted.left, src.left)
    _leg_equation(rep, "RightLeg", lifted.right, src.right)
    return rep


def _verify_bisim(sp1: Span, sp2: Span, w: BisimWitness) -> LawReport:
    R, sp = w.relation, w.span
    rep = LawReport(f"bisimulation {sp1.name} ≡ {sp2.name}").declare("Relation")
    inside = True
    for p in R:
        ok = isinstance(p, tuple) and len(p) == 2 and p[0] in sp1.state and p[1] in sp2.state
        inside &= rep.case("Relation", ok, (("pair", p),), p, f"{sp1.state.name}×{sp2.state.name}")
    rep.case("Relation", sp.state == R, (("span state", sp.state.name),), sp.state, R)
    if sp.effect != sp1.effect:
        rep.case("Relation", False, (("span effect", sp.effect.name),), sp.effect.name, sp1.effect.name)
        return rep
    if not inside or sp.state != R:
        return rep
    # R must carry a genuine span: legs closed over R and lawful
    rep.merge(check_span_wb(sp), "span.")
    fst, snd = (lambda p: p[0]), (lambda p: p[1])
    check_base_map(fst, sp.left, sp1.left, rep, "fst.left.")
    check_base_map(fst, sp.right, sp1.right, rep, "fst.right.")
    check_base_map(snd, sp.left, sp2.left, rep, "snd.left.")
    check_base_map(snd, sp.right, sp2.right, rep, "snd.right.")
    return rep


def verify_span_witness(sp1: Span, sp2: Span, l: PureLens, r: PureLens) -> LawReport:
    """l;sp1.left = r;sp2.left, l;sp1.right = r;sp2.right, and both l, r
    well-behaved full lenses."""
    _same_shape(sp1, sp2)
    rep = LawReport(f"span witness {sp1.name} ≡ {sp2.name}").declare("Carriers")
    fits = l.source == r.source and l.view == sp1.state and r.view == sp2.state
    rep.case("Carriers", fits, (("l", l.name), ("r", r.name)),
             f"{l.source.name} ~> {l.view.name}, {r.source.name} ~> {r.view.name}",
             f"S ~> {sp1.state.name}, S ~> {sp2.state.name}")
    if not fits:
        return rep
    rep.merge(check_pure_laws(l), "l.")
    rep.merge(check_pure_laws(r), "r.")
    for law in ("l.Closure", "r.Closure"):
        if rep.failed(law):
            return rep
    a, b = precompose(l, sp1), precompose(r, sp2)
    _leg_equation(rep, "LeftLeg", a.left, b.left)
    _leg_equation(rep, "RightLeg", a.right, b.right)
    return rep


# ---------------------------------------------------------------- search


def search_equivalence(kind: str, sp1: Span, sp2: Span, *, budget: int | None = None):
    """First witness in enumeration order, or NotFound."""
    _same_shape(sp1, sp2)
    budget = budget_default() if budget is None else budget
    if kind == "iso":
        return _search_iso(sp1, sp2, budget)
    if kind == "span":
        w = _search_span_step(sp1, sp2, FORWARD, budget)
        if w is NotFound:
            w = _search_span_step(sp2, sp1, BACKWARD, budget)
        return w
    if kind == "bisim":
        return _search_bisim(sp1, sp2, budget)
    raise ValueError(f"unknown equivalence kind {kind!r}")


def _search_iso(sp1, sp2, budget):
    S1, S2 = list(sp1.state), list(sp2.state)
    if len(S1) != len(S2):
        return NotFound
    spent = 0
    for perm in permutations(S2):
        spent += 1
        if spent > budget:
            raise BoundExceeded(f"iso search exceeded the budget {budget}")
        fwd = dict(zip(S1, perm))
        back = {t: s for s, t in fwd.items()}
        w = IsoWitness(fwd.__getitem__, back.__getitem__)
        if _verify_iso(sp1, sp2, w).passed:
            return w
    return NotFound


def _search_span_step(src: Span, dst: Span, direction: str, budget: int):
    """Full lens h : src.state ~> dst.state with h;dst = src."""
    e = src.effect
    S, T = list(src.state), list(dst.state)
    spent = [0]

    def spend():
        spent[0] += 1
        if spent[0] > budget:
            raise BoundExceeded(f"span-witness search exceeded the budget {budget}")

    get_opts = [[t for t in T if dst.left.mget(t) == src.left.mget(s)
                 and dst.right.mget(t) == src.right.mget(s)] for s in S]
    legs = ((src.left, dst.left), (src.right, dst.right))
    for gt in product(*get_opts):
        spend()
        if set(gt) != set(T) or not S:
            continue
        get = dict(zip(S, gt))
        pre = {t: [s for s in S if get[s] == t] for t in T}
        rows = {}
        for s in S:
            cells = [[s] if get[s] == t else pre[t] for t in T]
            found = None
            for row in product(*cells):
                spend()
                put = dict(zip(T, row))
                if all(_commutes(e, mine.mput(s, v), theirs.mput(get[s], v), put)
                       for mine, theirs in legs for v in mine.view):
                    found = put
                    break
            if found is None:
                break
            rows[s] = found
        if len(rows) != len(S):
            continue
        for ct in product(*(pre[t] for t in T)):
            spend()
            create = dict(zip(T, ct))
            if all(_commutes(e, mine.mcreate(v), theirs.mcreate(v), create)
                   for mine, theirs in legs for v in mine.view):
                put = {(s, t): rows[s][t] for s in S for t in T}
                h = from_tables(src.state, dst.state, get, put, create, "h")
                return SpanEquivWitness(h, direction)
    return NotFound


def _commutes(e, expected, theirs, table: dict) -> bool:
    if any(x not in table for x in e.outcomes(theirs)):
        return False
    return e.eq(e.fmap(theirs, table.__getitem__), expected)


def _search_bisim(sp1: Span, sp2: Span, budget: int):
    """Least relation containing the paired creates and closed under paired
    puts. For effects where pairing is forced (all but List) this is
    complete: every bisimulation contains it."""
    e = sp1.effect
    seen: list = []
    index: set = set()
    todo: list = []

    def add(m1, m2):
        z = e.zip(m1, m2)
        if z is None:
            return False
        for p in e.outcomes(z):
            if p not in index:
                if len(index) >= budget:
                    raise BoundExceeded(f"bisimulation search exceeded the budget {budget}")
                index.add(p)
                seen.append(p)
                todo.append(p)
        return True

    for mine, theirs in ((sp1.left, sp2.left), (sp1.right, sp2.right)):
        for v in mine.view:
            if not add(mine.mcreate(v), theirs.mcreate(v)):
                return NotFound
    while todo:
        s1, s2 = todo.pop(0)
        if s1 not in sp1.state or s2 not in sp2.state:
            return NotFound
        for mine, theirs in ((sp1.left, sp2.left), (sp1.right, sp2.right)):
            if mine.mget(s1) != theirs.mget(s2):
                return NotFound
            for v in mine.view:
                if not add(mine.mput(s1, v), theirs.mput(s2, v)):
                    return NotFound
    seen.sort(key=lambda p: (sp1.state.index(p[0]), sp2.state.index(p[1])))
    R = FiniteCarrier(f"R({sp1.state.name},{sp2.state.name})", tuple(seen))

    def leg(mine: MLens, theirs: MLens, name: str) -> MLens:
        return MLens(e, R, mine.view, lambda p: mine.mget(p[0]),
                     lambda p, v: e.zip(mine.mput(p[0], v), theirs.mput(p[1], v)),
                     lambda v: e.zip(mine.mcreate(v), theirs.mcreate(v)), name)

    w = BisimWitness(R, Span(leg(sp1.left, sp2.left, "l0"), leg(sp1.right, sp2.right, "r0"), "bisim"))
    return w if _verify_bisim(sp1, sp2, w).passed else NotFound


# ---------------------------------------------------------------- constructions


def swap_bisim(w: BisimWitness) -> BisimWitness:
    """The same bisimulation read with the two spans exchanged."""
    old = w.span
    e = old.effect
    swap = lambda p: (p[1], p[0])
    R = FiniteCarrier(f"swap {w.relation.name}", tuple(sorted(
        (swap(p) for p in w.relation), key=lambda p: w.relation.index(swap(p)))))

    def leg(l: MLens) -> MLens:
        return MLens(e, R, l.view, lambda p: l.mget(swap(p)),
                     lambda p, v: e.fmap(l.mput(swap(p), v), swap),
                     lambda v: e.fmap(l.mcreate(v), swap), l.name)

    return BisimWitness(R, Span(leg(old.left), leg(old.right), old.name))


def bisim_from_span_witness(sp1: Span, sp2: Span, w: SpanEquivWitness) -> BisimWitness:
    """Graph of the witness lens as a bisimulation.

    R = {(s1, h.get s1)}; the span over R runs sp1's puts and re-tags each
    result with its image under h.get.
    """
    if not verify_equivalence("span", sp1, sp2, w).passed:
        raise InvalidWitness("the span-equivalence witness does not verify")
    if w.direction == BACKWARD:
        return swap_bisim(bisim_from_span_witness(sp2, sp1, SpanEquivWitness(w.h, FORWARD)))
    e, h = sp1.effect, w.h
    R = FiniteCarrier(f"graph({h.name})", tuple((s, h.get(s)) for s in sp1.state))
    tag = lambda s: (s, h.get(s))

    def leg(l: MLens, name: str) -> MLens:
        return MLens(e, R, l.view, lambda p: l.mget(p[0]),
                     lambda p, v: e.fmap(l.mput(p[0], v), tag),
                     lambda v: e.fmap(l.mcreate(v), tag), name)

    return BisimWitness(R, Span(leg(sp1.left, "l0"), leg(sp1.right, "r0"), "bisim"))


def _require_pure(*spans: Span):
    for sp in spans:
        if not isinstance(sp.effect, Identity):
            raise NonPureInput(f"{sp.name} uses {sp.effect.name}; this construction needs pure spans")


def span_witness_from_bisim(sp1: Span, sp2: Span, w: BisimWitness) -> SpanWitness:
    """The textbook construction of a pure span from a bisimulation.

    l.get = fst, l.put p s1' = l0.put p (l1.get s1'), l.create s1 =
    l0.create (l1.get s1), and symmetrically for r. The result is returned
    with its verification report; it is not guaranteed to pass.
    """
    _require_pure(sp1, sp2, w.span)
    if not verify_equivalence("bisim", sp1, sp2, w).passed:
        raise InvalidWitness("the bisimulation witness does not verify")
    R = w.relation
    l0 = mlens2lens(w.span.left)
    l1, l2 = mlens2lens(sp1.left), mlens2lens(sp2.left)
    l = PureLens(R, sp1.state, lambda p: p[0],
                 lambda p, s1: l0.put(p, l1.get(s1)),
                 lambda s1: l0.create(l1.get(s1)), "l")
    r = PureLens(R, sp2.state, lambda p: p[1],
                 lambda p, s2: l0.put(p, l2.get(s2)),
                 lambda s2: l0.create(l2.get(s2)), "r")
    return SpanWitness(l, r, verify_span_witness(sp1, sp2, l, r))


def _lower_join(h1: PureLens, h2: PureLens) -> tuple[PureLens, PureLens]:
    sp = join(lens2mlens(_ID, h1), lens2mlens(_ID, h2))
    return mlens2lens(sp.left), mlens2lens(sp.right)


_ID = Identity()


def normalize_equiv_chain(chain: Sequence[tuple[Span, SpanEquivWitness | None]]) -> SpanWitness:
    """Collapse a chain of single span-equivalence steps into one pure span.

    chain[0] is (sp1, None); every later entry (sp_k, w_k) relates the
    previous span to sp_k. Forward steps compose onto the right leg; a
    backward step h : S_k ~> S_{k-1} joins the right leg with h.
    """
    if not chain:
        raise InvalidChain("a chain needs at least one span")
    first = chain[0][0]
    _require_pure(*(sp for sp, _ in chain))
    left = right = id_lens(first.state)
    prev = first
    for k, (sp, w) in enumerate(chain[1:], start=1):
        if w is None:
            raise InvalidChain(f"step {k} has no witness")
        if not verify_equivalence("span", prev, sp, w).passed:
            raise InvalidChain(f"step {k} ({w.direction}) does not verify")
        if w.direction == FORWARD:
            right = compose_pure(right, w.h)
        else:
            p1, p2 = _lower_join(right, w.h)
            left, right = compose_pure(p1, left), p2
        prev = sp
    return SpanWitness(left, right, verify_span_witness(first, prev, left, right))
