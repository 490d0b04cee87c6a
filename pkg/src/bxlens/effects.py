"""Enumerable effects: return, bind, equality, membership and law checkers.

Every effect is a small frozen object; computations are `EffectValue`s whose
payload is plain immutable data, so structural equality of payloads is the
effect equality (State payloads are tabulated over all initial states, which
makes structural equality extensional).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, NamedTuple

from .carrier import BOOL, FiniteCarrier, budget_default, render
from .errors import BoundExceeded, EffectMismatch, UnsupportedMembership
from .report import LawReport

MAX_FUNCTIONS = 10**6
DEFAULT_LAW_BUDGET = 10**7


@dataclass(frozen=True)
class EffectValue:
    effect: "Effect"
    payload: Any

    def __str__(self):
        return self.effect.render(self.payload)

    def __repr__(self):
        return f"<{self.effect.name} {self}>"


# ---------------------------------------------------------------- monoids


def _render_log(log) -> str:
    return "[" + " ".join(render(x) for x in log) + "]"


@dataclass(frozen=True)
class Monoid:
    """A monoid for Writer logs.

    `elements` is the full carrier for finite monoids and an enumeration
    sample (used by law checks) for the free list and multiset monoids.
    """

    name: str
    unit: Any
    elements: tuple
    finite: bool
    op: Callable[[Any, Any], Any] = field(compare=False, repr=False)
    show: Callable[[Any], str] = field(compare=False, repr=False, default=render)
    commutative: bool = False

    def __call__(self, x, y):
        return self.op(x, y)

    def check_laws(self) -> LawReport:
        rep = LawReport(f"monoid {self.name}").declare("LeftUnit", "RightUnit", "Assoc")
        for x in self.elements:
            rep.case("LeftUnit", self.op(self.unit, x) == x, (("x", x),), self.op(self.unit, x), x)
            rep.case("RightUnit", self.op(x, self.unit) == x, (("x", x),), self.op(x, self.unit), x)
        for x, y, z in product(self.elements, repeat=3):
            lhs, rhs = self.op(self.op(x, y), z), self.op(x, self.op(y, z))
            rep.case("Assoc", lhs == rhs, (("x", x), ("y", y), ("z", z)), lhs, rhs)
        return rep


def free_list(base: FiniteCarrier, max_len: int = 1) -> Monoid:
    """Free monoid of lists over `base`; the default Writer log."""
    sample = tuple(t for n in range(max_len + 1) for t in product(base.elements, repeat=n))
    return Monoid(f"list {base.name}", (), sample, False, lambda x, y: x + y, _render_log)


def multiset(base: FiniteCarrier, max_size: int = 1) -> Monoid:
    """Multisets over `base` as index-sorted tuples, combined by union."""
    order = base.index

    def union(x, y):
        return tuple(sorted(x + y, key=order))

    sample = tuple(
        t for n in range(max_size + 1) for t in product(base.elements, repeat=n)
        if list(map(order, t)) == sorted(map(order, t)))
    return Monoid(f"bag {base.name}", (), sample, False, union,
                  lambda b: "{" + " ".join(render(x) for x in b) + "}", True)


def xor_bool() -> Monoid:
    return Monoid("xor", False, (False, True), True, lambda x, y: x != y, commutative=True)


def finite_monoid(name: str, elements, unit, op, commutative: bool = False) -> Monoid:
    return Monoid(name, unit, tuple(elements), True, op, commutative=commutative)


# ---------------------------------------------------------------- effects


class Effect:
    name = "effect"
    kind = "effect"

    def ret(self, a) -> EffectValue:
        raise NotImplementedError

    def _bind(self, payload, f) -> Any:
        raise NotImplementedError

    def bind(self, m: EffectValue, f: Callable[[Any], EffectValue]) -> EffectValue:
        self._own(m)

        def g(x):
            r = f(x)
            self._own(r)
            return r.payload

        return EffectValue(self, self._bind(m.payload, g))

    def _own(self, m):
        if not isinstance(m, EffectValue) or m.effect != self:
            got = m.effect.name if isinstance(m, EffectValue) else type(m).__name__
            raise EffectMismatch(f"expected a {self.name} computation, got {got}")

    def eq(self, m1: EffectValue, m2: EffectValue) -> bool:
        self._own(m1)
        self._own(m2)
        return m1.payload == m2.payload

    def outcomes(self, m: EffectValue) -> tuple:
        """Result values the computation can produce, in order, without repeats."""
        raise NotImplementedError

    def values(self, c: FiniteCarrier) -> list[EffectValue]:
        raise NotImplementedError

    def render(self, payload) -> str:
        raise NotImplementedError

    def member(self, x, m: EffectValue) -> bool:
        raise UnsupportedMembership(f"membership is not defined for {self.name}")

    def zip(self, m1: EffectValue, m2: EffectValue) -> EffectValue | None:
        """Pair two computations with the same effect shape, or None."""
        raise NotImplementedError

    def fmap(self, m: EffectValue, f: Callable[[Any], Any]) -> EffectValue:
        return self.bind(m, lambda x: self.ret(f(x)))

    def __str__(self):
        return self.name


def _dedup(xs):
    seen, out = set(), []
    for x in xs:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Identity(Effect):
    name = "identity"
    kind = "identity"

    def ret(self, a):
        return EffectValue(self, a)

    def _bind(self, payload, f):
        return f(payload)

    def outcomes(self, m):
        return (m.payload,)

    def values(self, c):
        return [self.ret(x) for x in c]

    def render(self, payload):
        return render(payload)

    def zip(self, m1, m2):
        return self.ret((m1.payload, m2.payload))


@dataclass(frozen=True)
class Maybe(Effect):
    name = "maybe"
    kind = "maybe"

    def ret(self, a):
        return EffectValue(self, (a,))

    def nothing(self):
        return EffectValue(self, ())

    def _bind(self, payload, f):
        return f(payload[0]) if payload else ()

    def outcomes(self, m):
        return m.payload

    def values(self, c):
        return [self.nothing()] + [self.ret(x) for x in c]

    def render(self, payload):
        return f"just {render(payload[0])}" if payload else "nothing"

    def member(self, x, m):
        self._own(m)
        return bool(m.payload) and m.payload[0] == x

    def zip(self, m1, m2):
        if bool(m1.payload) != bool(m2.payload):
            return None
        return self.ret((m1.payload[0], m2.payload[0])) if m1.payload else self.nothing()


@dataclass(frozen=True)
class ListEffect(Effect):
    """Finite nondeterminism; enumerated lists are capped at `max_len`."""

    max_len: int = 2
    name = "list"
    kind = "list"

    def ret(self, a):
        return EffectValue(self, (a,))

    def of(self, *xs):
        return EffectValue(self, tuple(xs))

    def _bind(self, payload, f):
        return tuple(y for x in payload for y in f(x))

    def outcomes(self, m):
        return _dedup(m.payload)

    def values(self, c):
        return [EffectValue(self, t) for n in range(self.max_len + 1)
                for t in product(c.elements, repeat=n)]

    def render(self, payload):
        return "[" + " ".join(render(x) for x in payload) + "]"

    def member(self, x, m):
        self._own(m)
        return x in m.payload

    def zip(self, m1, m2):
        if len(m1.payload) != len(m2.payload):
            return None
        return EffectValue(self, tuple(zip(m1.payload, m2.payload)))


@dataclass(frozen=True)
class Writer(Effect):
    monoid: Monoid
    kind = "writer"

    @property
    def name(self):
        return f"writer {self.monoid.name}"

    def ret(self, a):
        return EffectValue(self, (self.monoid.unit, a))

    def tell(self, w):
        return EffectValue(self, (w, ()))

    def _bind(self, payload, f):
        log, x = payload
        log2, y = f(x)
        return (self.monoid(log, log2), y)

    def outcomes(self, m):
        return (m.payload[1],)

    def values(self, c):
        return [EffectValue(self, (w, x)) for w in self.monoid.elements for x in c]

    def render(self, payload):
        return f"({self.monoid.show(payload[0])}; {render(payload[1])})"

    def zip(self, m1, m2):
        if m1.payload[0] != m2.payload[0]:
            return None
        return EffectValue(self, (m1.payload[0], (m1.payload[1], m2.payload[1])))


@dataclass(frozen=True)
class State(Effect):
    """State over a finite carrier; payload[i] is (value, final state) when
    started in states.elements[i]."""

    states: FiniteCarrier
    kind = "state"

    @property
    def name(self):
        return f"state {self.states.name}"

    def ret(self, a):
        return EffectValue(self, tuple((a, s) for s in self.states))

    def set(self, s):
        self.states.require(s, "state")
        return EffectValue(self, tuple(((), s) for _ in self.states))

    def get(self):
        return EffectValue(self, tuple((s, s) for s in self.states))

    def from_function(self, fn: Callable[[Any], tuple]) -> EffectValue:
        return EffectValue(self, tuple(fn(s) for s in self.states))

    def run(self, m: EffectValue, s) -> tuple:
        self._own(m)
        return m.payload[self.states.index(s)]

    def _bind(self, payload, f):
        out = []
        for x, s1 in payload:
            out.append(f(x)[self.states.index(s1)])
        return tuple(out)

    def outcomes(self, m):
        return _dedup(x for x, _ in m.payload)

    def values(self, c):
        n = len(self.states)
        cells = [(x, s) for x in c for s in self.states]
        tables = list(product(cells, repeat=n))
        # simplest first: fewer distinct final states, then table order
        tables.sort(key=lambda t: (len({self.states.index(s) for _, s in t}),
                                   [(c.index(x), self.states.index(s)) for x, s in t]))
        return [EffectValue(self, t) for t in tables]

    def render(self, payload):
        cells = "; ".join(f"{render(s0)} -> ({render(x)}, {render(s1)})"
                          for s0, (x, s1) in zip(self.states, payload))
        return "{" + cells + "}"

    def zip(self, m1, m2):
        out = []
        for (x, s1), (y, s2) in zip(m1.payload, m2.payload):
            if s1 != s2:
                return None
            out.append(((x, y), s1))
        return EffectValue(self, tuple(out))


IDENTITY = Identity()
MAYBE = Maybe()
LIST = ListEffect()
STATE_BOOL = State(BOOL)


# ---------------------------------------------------------------- functional API


def ret(effect: Effect, a) -> EffectValue:
    return effect.ret(a)


def bind(m: EffectValue, f: Callable[[Any], EffectValue]) -> EffectValue:
    return m.effect.bind(m, f)


def effect_eq(m1: EffectValue, m2: EffectValue) -> bool:
    if m1.effect != m2.effect:
        raise EffectMismatch(f"cannot compare {m1.effect.name} with {m2.effect.name}")
    return m1.effect.eq(m1, m2)


def member(x, m: EffectValue) -> bool:
    return m.effect.member(x, m)


def outcomes(m: EffectValue) -> tuple:
    return m.effect.outcomes(m)


# ---------------------------------------------------------------- checkers


def _function_tables(values: list, carrier: FiniteCarrier, max_functions: int) -> list[tuple]:
    count = len(values) ** len(carrier)
    if count > max_functions:
        raise BoundExceeded(
            f"{count} functions {carrier.name} -> M {carrier.name} exceed the bound {max_functions}")
    return list(product(range(len(values)), repeat=len(carrier)))


def check_monad_laws(effect: Effect, carrier: FiniteCarrier, *,
                     max_functions: int = MAX_FUNCTIONS,
                     budget: int | None = None) -> LawReport:
    """Unit and associativity laws over every tabulated continuation."""
    budget = DEFAULT_LAW_BUDGET if budget is None else budget
    values = effect.values(carrier)
    tables = _function_tables(values, carrier, max_functions)
    nv, nf = len(values), len(tables)
    if nv * nf * nf > budget:
        raise BoundExceeded(f"{nv * nf * nf} associativity instances exceed the budget {budget}")

    def fn(t):
        return lambda x: values[t[carrier.index(x)]]

    fns = [fn(t) for t in tables]
    rep = LawReport(f"monad laws {effect.name} over {carrier.name}").declare(
        "LeftUnit", "RightUnit", "Assoc")
    for a in carrier:
        for t, f in zip(tables, fns):
            lhs, rhs = bind(effect.ret(a), f), f(a)
            rep.case("LeftUnit", effect.eq(lhs, rhs), (("a", a), ("f", _show_fn(t, values, carrier))), lhs, rhs)
    for m in values:
        lhs = bind(m, effect.ret)
        rep.case("RightUnit", effect.eq(lhs, m), (("m", m),), lhs, m)

    # B[v][g] = v >>= g for enumerated v; reused by both sides
    bound_ = [[bind(v, g) for g in fns] for v in values]
    memo: dict = {}
    for mi, m in enumerate(values):
        for fi, ft in enumerate(tables):
            mf = bound_[mi][fi]
            for gi, g in enumerate(fns):
                key = (mf, gi)
                lhs = memo.get(key)
                if lhs is None:
                    lhs = memo[key] = bind(mf, g)
                rhs = bind(m, lambda x, ft=ft, gi=gi: bound_[ft[carrier.index(x)]][gi])
                if lhs.payload != rhs.payload or rep.cases.get("Assoc", 0) == 0:
                    rep.case("Assoc", lhs.payload == rhs.payload,
                             (("m", m), ("f", _show_fn(ft, values, carrier)),
                              ("g", _show_fn(tables[gi], values, carrier))), lhs, rhs)
                else:
                    rep.cases["Assoc"] += 1
    return rep


def _show_fn(t, values, carrier) -> str:
    return "{" + "; ".join(f"{render(x)} -> {values[i]}" for x, i in zip(carrier, t)) + "}"


class Commutativity(NamedTuple):
    holds: bool
    witness: tuple | None  # (x, y) with x;y and y;x observably different

    def __bool__(self):
        return self.holds


def check_commutative(effect: Effect, carrier: FiniteCarrier, *, budget: int | None = None) -> Commutativity:
    """Test do{a<-x; b<-y; ret(a,b)} = do{b<-y; a<-x; ret(a,b)} on all pairs.

    Pairs are visited with y in the outer loop and x in the inner loop, both
    in the effect's enumeration order; the first failing (x, y) is returned.
    """
    budget = budget_default() if budget is None else budget
    values = effect.values(carrier)
    if len(values) ** 2 > budget:
        raise BoundExceeded(f"{len(values) ** 2} pairs exceed the budget {budget}")
    for y in values:
        for x in values:
            lhs = bind(x, lambda a: bind(y, lambda b: effect.ret((a, b))))
            rhs = bind(y, lambda b: bind(x, lambda a: effect.ret((a, b))))
            if not effect.eq(lhs, rhs):
                return Commutativity(False, (x, y))
    return Commutativity(True, None)


def check_membership_laws(effect: Effect, carrier: FiniteCarrier, *,
                          member: Callable[[Any, EffectValue], bool] | None = None,
                          max_functions: int = MAX_FUNCTIONS) -> LawReport:
    """(∈-ID) and (∈->>=) over every value and tabulated continuation."""
    mem = member or effect.member
    values = effect.values(carrier)
    tables = _function_tables(values, carrier, max_functions)
    rep = LawReport(f"membership laws {effect.name} over {carrier.name}").declare("MemberId", "MemberBind")
    for x in carrier:
        got = mem(x, effect.ret(x))
        rep.case("MemberId", got is True, (("x", x),), got, True)
    for m in values:
        for t in tables:
            f = lambda x, t=t: values[t[carrier.index(x)]]
            mf = bind(m, f)
            for y in carrier:
                lhs = mem(y, mf)
                rhs = any(mem(x, m) and mem(y, f(x)) for x in carrier)
                rep.case("MemberBind", lhs == rhs,
                         (("m", m), ("f", _show_fn(t, values, carrier)), ("y", y)), lhs, rhs)
    return rep
