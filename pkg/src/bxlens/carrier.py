"""Finite carriers: the value domains every law is quantified over."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product as _product
from typing import Any, Callable, Iterable

from .errors import OutOfCarrier

DEFAULT_BUDGET = 10**6


def budget_default() -> int:
    """Enumeration cap, overridable with BXLENS_BUDGET."""
    raw = os.environ.get("BXLENS_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError("BXLENS_BUDGET must be a positive integer")
    return value


@dataclass(frozen=True)
class Just:
    value: Any

    def __repr__(self):
        return f"Just({self.value!r})"


def render(x: Any) -> str:
    if x is True:
        return "T"
    if x is False:
        return "F"
    if x is None:
        return "Nothing"
    if isinstance(x, Just):
        return f"just {render(x.value)}"
    if isinstance(x, tuple):
        return "(" + ", ".join(render(v) for v in x) + ")"
    return str(x)


@dataclass(frozen=True, eq=False)
class FiniteCarrier:
    """A named, ordered, duplicate-free set of values.

    Two carriers are equal when their elements are, in order; the name is
    only a label.
    """

    name: str
    elements: tuple
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        index = {}
        for i, x in enumerate(elements):
            key = _key(x)
            if key in index:
                raise ValueError(f"duplicate element {render(x)} in carrier {self.name}")
            index[key] = i
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", index)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return _key(x) in self._index

    def __eq__(self, other):
        if not isinstance(other, FiniteCarrier):
            return NotImplemented
        return tuple(map(_key, self.elements)) == tuple(map(_key, other.elements))

    def __hash__(self):
        return hash(tuple(map(_key, self.elements)))

    def __repr__(self):
        return f"{self.name}{{{' '.join(render(x) for x in self.elements)}}}"

    def index(self, x) -> int:
        try:
            return self._index[_key(x)]
        except KeyError:
            raise OutOfCarrier(f"{render(x)} is not an element of {self.name}") from None

    def require(self, x, what: str = "value"):
        if x not in self:
            raise OutOfCarrier(f"{what} {render(x)} is not an element of {self.name}")
        return x

    def filter(self, pred: Callable[[Any], bool], name: str | None = None) -> "FiniteCarrier":
        return FiniteCarrier(name or self.name, tuple(x for x in self.elements if pred(x)))


def _key(x):
    # keep True/1 and False/0 apart
    if isinstance(x, bool):
        return ("bool", x)
    if isinstance(x, tuple):
        return tuple(_key(v) for v in x)
    if isinstance(x, Just):
        return ("just", _key(x.value))
    return x


def carrier(name: str, elements: Iterable) -> FiniteCarrier:
    return FiniteCarrier(name, tuple(elements))


def product(*carriers: FiniteCarrier, name: str | None = None) -> FiniteCarrier:
    label = name or "×".join(c.name for c in carriers)
    return FiniteCarrier(label, tuple(_product(*(c.elements for c in carriers))))


def maybe_lift(c: FiniteCarrier) -> FiniteCarrier:
    """None first, then Just x for every x in declaration order."""
    return FiniteCarrier(f"Maybe {c.name}", (None,) + tuple(Just(x) for x in c.elements))


def int_range(lo: int, hi: int, name: str | None = None) -> FiniteCarrier:
    return FiniteCarrier(name or f"[{lo},{hi}]", tuple(range(lo, hi + 1)))


def sized(n: int, prefix: str) -> FiniteCarrier:
    """Carrier with elements prefix0 .. prefix{n-1}."""
    return FiniteCarrier(prefix.upper() + str(n), tuple(f"{prefix}{i}" for i in range(n)))


UNIT = FiniteCarrier("()", ((),))
BOOL = FiniteCarrier("Bool", (False, True))
EMPTY = FiniteCarrier("∅", ())
