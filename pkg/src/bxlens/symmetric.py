"""Symmetric lenses, pure and monadic, with complement-based equivalence."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Iterator

from .carrier import UNIT, FiniteCarrier, budget_default, product as carrier_product, render
from .effects import IDENTITY, MAYBE, STATE_BOOL, Effect, EffectValue, Identity, bind
from .errors import BoundExceeded, CarrierMismatch, EffectMismatch, NotFound
from .report import LawReport


@dataclass(frozen=True, eq=False)
class SLens:
    left: FiniteCarrier
    right: FiniteCarrier
    complement: FiniteCarrier
    put_r: Callable[[Any, Any], tuple]
    put_l: Callable[[Any, Any], tuple]
    missing: Any
    name: str = "slens"


@dataclass(frozen=True, eq=False)
class SMLens:
    effect: Effect
    left: FiniteCarrier
    right: FiniteCarrier
    complement: FiniteCarrier
    mput_r: Callable[[Any, Any], EffectValue]
    mput_l: Callable[[Any, Any], EffectValue]
    missing: Any
    name: str = "smlens"


def slens_from_tables(left, right, complement, put_r: dict, put_l: dict, missing,
                      name="slens") -> SLens:
    put_r, put_l = dict(put_r), dict(put_l)
    for a in left:
        for c in complement:
            b, c2 = put_r[(a, c)]
            right.require(b, "putR value")
            complement.require(c2, "putR complement")
    for b in right:
        for c in complement:
            a, c2 = put_l[(b, c)]
            left.require(a, "putL value")
            complement.require(c2, "putL complement")
    complement.require(missing, "missing")
    return SLens(left, right, complement, lambda a, c: put_r[(a, c)],
                 lambda b, c: put_l[(b, c)], missing, name)


def smlens_from_tables(effect, left, right, complement, put_r: dict, put_l: dict, missing,
                       name="smlens") -> SMLens:
    put_r, put_l = dict(put_r), dict(put_l)
    complement.require(missing, "missing")
    return SMLens(effect, left, right, complement, lambda a, c: put_r[(a, c)],
                  lambda b, c: put_l[(b, c)], missing, name)


def slens_to_smlens(sl: SLens, effect: Effect = IDENTITY) -> SMLens:
    return SMLens(effect, sl.left, sl.right, sl.complement,
                  lambda a, c: effect.ret(sl.put_r(a, c)),
                  lambda b, c: effect.ret(sl.put_l(b, c)), sl.missing, sl.name)


def smlens_to_slens(sl: SMLens) -> SLens:
    if not isinstance(sl.effect, Identity):
        raise EffectMismatch(f"{sl.name} uses {sl.effect.name}; only identity lenses are pure")
    return SLens(sl.left, sl.right, sl.complement,
                 lambda a, c: sl.mput_r(a, c).payload,
                 lambda b, c: sl.mput_l(b, c).payload, sl.missing, sl.name)


def id_slens(c: FiniteCarrier) -> SLens:
    return SLens(c, c, UNIT, lambda a, u: (a, u), lambda b, u: (b, u), (), f"id[{c.name}]")


def compose_s(sl1: SLens, sl2: SLens) -> SLens:
    if sl1.right != sl2.left:
        raise CarrierMismatch(f"{sl1.right.name} vs {sl2.left.name}")

    def put_r(a, cc):
        b, c1 = sl1.put_r(a, cc[0])
        c, c2 = sl2.put_r(b, cc[1])
        return c, (c1, c2)

    def put_l(c, cc):
        b, c2 = sl2.put_l(c, cc[1])
        a, c1 = sl1.put_l(b, cc[0])
        return a, (c1, c2)

    return SLens(sl1.left, sl2.right, carrier_product(sl1.complement, sl2.complement),
                 put_r, put_l, (sl1.missing, sl2.missing), f"{sl1.name};{sl2.name}")


def compose_sm(sl1: SMLens, sl2: SMLens) -> SMLens:
    """Complement-threading composition; only law-preserving for
    commutative effects."""
    if sl1.effect != sl2.effect:
        raise EffectMismatch(f"{sl1.effect.name} vs {sl2.effect.name}")
    if sl1.right != sl2.left:
        raise CarrierMismatch(f"{sl1.right.name} vs {sl2.left.name}")
    e = sl1.effect

    def put_r(a, cc):
        return bind(sl1.mput_r(a, cc[0]), lambda r1: bind(
            sl2.mput_r(r1[0], cc[1]), lambda r2: e.ret((r2[0], (r1[1], r2[1])))))

    def put_l(c, cc):
        return bind(sl2.mput_l(c, cc[1]), lambda r2: bind(
            sl1.mput_l(r2[0], cc[0]), lambda r1: e.ret((r1[0], (r1[1], r2[1])))))

    return SMLens(e, sl1.left, sl2.right, carrier_product(sl1.complement, sl2.complement),
                  put_r, put_l, (sl1.missing, sl2.missing), f"{sl1.name};{sl2.name}")


def set_bool(b: bool) -> SMLens:
    """Unit views; every put sets the shared boolean state to `b`."""
    e = STATE_BOOL

    def m(_x, _c):
        return bind(e.set(b), lambda _: e.ret(((), ())))

    return SMLens(e, UNIT, UNIT, UNIT, m, m, (), f"setBool {render(b)}")


def fail_smlens() -> SMLens:
    """Both puts always fail."""
    return SMLens(MAYBE, UNIT, UNIT, UNIT, lambda _a, _c: MAYBE.nothing(),
                  lambda _b, _c: MAYBE.nothing(), (), "fail")


# ---------------------------------------------------------------- laws


def check_symmetric_laws(sl: SLens | SMLens) -> LawReport:
    if isinstance(sl, SLens):
        return _check_pure(sl)
    return _check_monadic(sl)


def _check_pure(sl: SLens) -> LawReport:
    rep = LawReport(f"slens {sl.name}").declare("Closure", "PutRL", "PutLR")
    rep.case("Closure", sl.missing in sl.complement, (("op", "missing"),), sl.missing, sl.complement.name)
    for x, y, fwd, back, law, op in ((sl.left, sl.right, sl.put_r, sl.put_l, "PutRL", "putR"),
                                     (sl.right, sl.left, sl.put_l, sl.put_r, "PutLR", "putL")):
        for a in x:
            for c in sl.complement:
                b, c1 = fwd(a, c)
                ok = b in y and c1 in sl.complement
                rep.case("Closure", ok, (("op", op), ("x", a), ("c", c)), (b, c1), f"{y.name}×{sl.complement.name}")
                if not ok:
                    continue
                lhs = back(b, c1)
                rep.case(law, lhs == (a, c1), (("x", a), ("c", c)), lhs, (a, c1))
    return rep


def _check_monadic(sl: SMLens) -> LawReport:
    e = sl.effect
    rep = LawReport(f"smlens {sl.name} [{e.name}]").declare("Closure", "PutRLM", "PutLRM")
    rep.case("Closure", sl.missing in sl.complement, (("op", "missing"),), sl.missing, sl.complement.name)
    for x, y, fwd, back, law, op in ((sl.left, sl.right, sl.mput_r, sl.mput_l, "PutRLM", "mputR"),
                                     (sl.right, sl.left, sl.mput_l, sl.mput_r, "PutLRM", "mputL")):
        for a in x:
            for c in sl.complement:
                m = fwd(a, c)
                bad = [r for r in e.outcomes(m) if r[0] not in y or r[1] not in sl.complement]
                rep.case("Closure", not bad, (("op", op), ("x", a), ("c", c)), m, f"{y.name}×{sl.complement.name}")
                if bad:
                    continue
                lhs = bind(m, lambda r: back(r[0], r[1]))
                rhs = bind(m, lambda r, a=a: e.ret((a, r[1])))
                rep.case(law, e.eq(lhs, rhs), (("x", a), ("c", c)), lhs, rhs)
    return rep


def smlens_mismatches(s1: SMLens, s2: SMLens) -> list[tuple]:
    """Operation-for-operation differences between two lenses over the same
    carriers and complement."""
    if s1.effect != s2.effect:
        raise EffectMismatch(f"{s1.effect.name} vs {s2.effect.name}")
    out = []
    if s1.missing != s2.missing:
        out.append(("missing", (), s1.missing, s2.missing))
    for a in s1.left:
        for c in s1.complement:
            x, y = s1.mput_r(a, c), s2.mput_r(a, c)
            if not s1.effect.eq(x, y):
                out.append(("mputR", (a, c), x, y))
    for b in s1.right:
        for c in s1.complement:
            x, y = s1.mput_l(b, c), s2.mput_l(b, c)
            if not s1.effect.eq(x, y):
                out.append(("mputL", (b, c), x, y))
    return out


# ---------------------------------------------------------------- equivalence


def verify_slens_equiv(sl1: SLens, sl2: SLens, relation) -> LawReport:
    """Check that `relation` (pairs of complements) witnesses sl1 ≡ sl2."""
    if sl1.left != sl2.left or sl1.right != sl2.right:
        raise CarrierMismatch("symmetric lenses must share both view carriers")
    R = frozenset(relation)
    rep = LawReport(f"slens equivalence {sl1.name} ~ {sl2.name}").declare(
        "Subset", "Missing", "PutRSim", "PutLSim")
    for c1, c2 in sorted(R, key=lambda p: (sl1.complement.index(p[0]) if p[0] in sl1.complement else -1,
                                          sl2.complement.index(p[1]) if p[1] in sl2.complement else -1)):
        rep.case("Subset", c1 in sl1.complement and c2 in sl2.complement, (("pair", (c1, c2)),),
                 (c1, c2), "C1×C2")
    pair = (sl1.missing, sl2.missing)
    rep.case("Missing", pair in R, (("pair", pair),), "absent", "member of R")
    for c1, c2 in _ordered(sl1, sl2, R):
        for law, xs, f, g in (("PutRSim", sl1.left, sl1.put_r, sl2.put_r),
                              ("PutLSim", sl1.right, sl1.put_l, sl2.put_l)):
            for x in xs:
                y1, d1 = f(x, c1)
                y2, d2 = g(x, c2)
                ok = y1 == y2 and (d1, d2) in R
                rep.case(law, ok, (("x", x), ("c1", c1), ("c2", c2)), (y1, d1), (y2, d2),
                         "" if ok else ("outputs differ" if y1 != y2 else "successor pair not in R"))
    return rep


def _ordered(sl1, sl2, R):
    inside = [p for p in R if p[0] in sl1.complement and p[1] in sl2.complement]
    return sorted(inside, key=lambda p: (sl1.complement.index(p[0]), sl2.complement.index(p[1])))


def search_slens_equiv(sl1: SLens, sl2: SLens, *, bound: int | None = None):
    """Least relation closed under both puts from the missing pair.

    Any witness must contain this closure, so a mismatch found while
    building it refutes equivalence outright.
    """
    bound = budget_default() if bound is None else bound
    if len(sl1.complement) * len(sl2.complement) > bound:
        raise BoundExceeded(f"|C1|·|C2| exceeds the bound {bound}")
    start = (sl1.missing, sl2.missing)
    seen, todo = {start}, [start]
    while todo:
        c1, c2 = todo.pop(0)
        for xs, f, g in ((sl1.left, sl1.put_r, sl2.put_r), (sl1.right, sl1.put_l, sl2.put_l)):
            for x in xs:
                y1, d1 = f(x, c1)
                y2, d2 = g(x, c2)
                if y1 != y2:
                    return NotFound
                if (d1, d2) not in seen:
                    seen.add((d1, d2))
                    todo.append((d1, d2))
    return frozenset(seen)


def compose_relations(r1, r2) -> frozenset:
    return frozenset((a, c) for a, b in r1 for b2, c in r2 if b == b2)


# ---------------------------------------------------------------- generation


def enumerate_slenses(left: FiniteCarrier, right: FiniteCarrier, complement: FiniteCarrier,
                      *, budget: int | None = None) -> Iterator[SLens]:
    """Every well-behaved pure symmetric lens; missing is the first complement."""
    budget = budget_default() if budget is None else budget
    spent = 0
    A, B, C = list(left), list(right), list(complement)
    rcells = [(a, c) for a in A for c in C]
    lcells = [(b, c) for b in B for c in C]
    bc = list(product(B, C))
    ac = list(product(A, C))
    for rt in product(bc, repeat=len(rcells)):
        spent += 1
        if spent > budget:
            raise BoundExceeded(f"slens enumeration exceeded the budget {budget}")
        put_r = dict(zip(rcells, rt))
        forced: dict = {}
        clash = False
        for (a, c), (b, c1) in put_r.items():
            if forced.setdefault((b, c1), (a, c1)) != (a, c1):
                clash = True
                break
        if clash:
            continue
        choices = []
        for b, c in lcells:
            opts = [forced[(b, c)]] if (b, c) in forced else ac
            opts = [(a, c1) for a, c1 in opts if put_r[(a, c1)] == (b, c1)]
            if not opts:
                break
            choices.append(opts)
        else:
            for lt in product(*choices):
                spent += 1
                if spent > budget:
                    raise BoundExceeded(f"slens enumeration exceeded the budget {budget}")
                yield slens_from_tables(left, right, complement, put_r, dict(zip(lcells, lt)),
                                        C[0], f"S#{spent}")


def enumerate_smlenses(effect: Effect, left: FiniteCarrier, right: FiniteCarrier,
                       complement: FiniteCarrier, *, budget: int | None = None) -> Iterator[SMLens]:
    """Every well-behaved monadic symmetric lens over the effect's enumerable
    values, missing fixed to the first complement."""
    budget = budget_default() if budget is None else budget
    spent = 0
    A, B, C = list(left), list(right), list(complement)
    rvals = effect.values(carrier_product(right, complement))
    lvals = effect.values(carrier_product(left, complement))
    rcells = [(a, c) for a in A for c in C]
    lcells = [(b, c) for b in B for c in C]
    for rt in product(rvals, repeat=len(rcells)):
        for lt in product(lvals, repeat=len(lcells)):
            spent += 1
            if spent > budget:
                raise BoundExceeded(f"smlens enumeration exceeded the budget {budget}")
            sl = smlens_from_tables(effect, left, right, complement, dict(zip(rcells, rt)),
                                    dict(zip(lcells, lt)), C[0], f"SM#{spent}")
            if check_symmetric_laws(sl).passed:
                yield sl
