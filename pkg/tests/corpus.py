"""Shared finite corpora of pure spans, span-equivalence steps and
bisimulations, all over state carriers of size at most 2."""
from functools import lru_cache
from itertools import combinations

from bxlens import (BACKWARD, FORWARD, IDENTITY, BisimWitness, FiniteCarrier, MLens, Span,
                    SpanEquivWitness, enumerate_pure_lenses, pure_span, sized,
                    verify_equivalence)
from bxlens.equivalence import precompose

VIEWS = {"unit": sized(1, "u"), "bool": sized(2, "b")}
STATES = [sized(1, "p"), sized(2, "p"), sized(1, "q"), sized(2, "q")]


def view_pairs():
    return [(VIEWS[a], VIEWS[b]) for a in VIEWS for b in VIEWS]


@lru_cache(maxsize=None)
def spans_over(state, left, right):
    return tuple(pure_span(a, b, f"sp{i}")
                 for i, (a, b) in enumerate((a, b) for a in enumerate_pure_lenses(state, left)
                                            for b in enumerate_pure_lenses(state, right)))


def all_spans(left, right, states=STATES):
    return [sp for s in states for sp in spans_over(s, left, right)]


def span_steps(sp1, sp2):
    """Every verifying single step sp1 ~ sp2 (both directions)."""
    out = []
    for h in enumerate_pure_lenses(sp1.state, sp2.state):
        w = SpanEquivWitness(h, FORWARD)
        if verify_equivalence("span", sp1, sp2, w).passed:
            out.append(w)
    for h in enumerate_pure_lenses(sp2.state, sp1.state):
        w = SpanEquivWitness(h, BACKWARD)
        if verify_equivalence("span", sp1, sp2, w).passed:
            out.append(w)
    return out


def two_step_chains():
    """Chains sp0 ~ sp1 ~ sp2 built by precomposition, so every step verifies
    by construction; covers all four direction patterns."""
    chains = []
    for left, right in view_pairs():
        for base in all_spans(left, right, [sized(1, "p"), sized(2, "p")]):
            hs_in = [(s, h) for s in (sized(1, "m"), sized(2, "m"))
                     for h in enumerate_pure_lenses(s, base.state)]
            for _, h1 in hs_in:
                for _, h2 in hs_in:
                    a, b = precompose(h1, base, "a"), precompose(h2, base, "b")
                    # forward then backward: a = h1;base, b = h2;base
                    chains.append([(a, None), (base, SpanEquivWitness(h1, FORWARD)),
                                   (b, SpanEquivWitness(h2, BACKWARD))])
                # backward then forward, and forward then forward
                mid = precompose(h1, base, "mid")
                for h0 in (h for s in (sized(1, "k"), sized(2, "k"))
                           for h in enumerate_pure_lenses(s, mid.state)):
                    first = precompose(h0, mid, "first")
                    chains.append([(first, None), (mid, SpanEquivWitness(h0, FORWARD)),
                                   (base, SpanEquivWitness(h1, FORWARD))])
                    chains.append([(base, None), (mid, SpanEquivWitness(h1, BACKWARD)),
                                   (first, SpanEquivWitness(h0, BACKWARD))])
                chains.append([(mid, None), (base, SpanEquivWitness(h1, FORWARD)),
                               (mid, SpanEquivWitness(h1, BACKWARD))])
    return chains


def relations(s1, s2):
    pairs = [(a, b) for a in s1 for b in s2]
    for n in range(1, len(pairs) + 1):
        for sub in combinations(pairs, n):
            yield FiniteCarrier("R", sub)


def forced_span(sp1, sp2, R):
    """The only candidate span over R: in the pure case the base-map
    conditions on fst and snd fix every operation to the paired results."""
    e = IDENTITY

    def leg(mine, theirs, name):
        return MLens(e, R, mine.view, lambda p: mine.mget(p[0]),
                     lambda p, v: e.ret((mine.mput(p[0], v).payload, theirs.mput(p[1], v).payload)),
                     lambda v: e.ret((mine.mcreate(v).payload, theirs.mcreate(v).payload)), name)

    return Span(leg(sp1.left, sp2.left, "l0"), leg(sp1.right, sp2.right, "r0"), "R")


def bisimulations(sp1, sp2):
    """Every pure bisimulation witness between sp1 and sp2."""
    out = []
    for R in relations(sp1.state, sp2.state):
        w = BisimWitness(R, forced_span(sp1, sp2, R))
        if verify_equivalence("bisim", sp1, sp2, w).passed:
            out.append(w)
    return out


def bisim_corpus():
    """(sp1, sp2, witness) for all pure span pairs over p/q carriers <= 2."""
    out = []
    for left, right in view_pairs():
        ps = all_spans(left, right, [sized(1, "p"), sized(2, "p")])
        qs = all_spans(left, right, [sized(1, "q"), sized(2, "q")])
        for sp1 in ps:
            for sp2 in qs:
                out.extend((sp1, sp2, w) for w in bisimulations(sp1, sp2))
    return out
