"""Acceptance criteria 1-13.

Each test records a one-line verdict; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""
import functools
import io
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import corpus  # noqa: E402
from bxlens import (BOOL, IDENTITY, LIST, MAYBE, STATE_BOOL, UNIT, NotFound, Span,  # noqa: E402
                    Writer, abs_lens, bisim_from_span_witness, carrier, check_commutative,
                    check_membership_laws, check_mlens_laws, check_naive_laws,
                    check_pure_laws, check_put_lens_laws, check_span_wb, check_symmetric_laws,
                    compose_m, compose_naive, compose_pure, compose_sm, compose_span,
                    const_mlens, enumerate_mlenses, enumerate_pure_lenses, fail_smlens, id_lens,
                    join, lens2mlens, log_lens, mlens_equal, normalize_equiv_chain, pure_span,
                    put_lens_of, random_mlens, search_equivalence, search_naive_counterexample,
                    set_bool, sized, slens_to_smlens, smlens2span, span2smlens,
                    span_witness_from_bisim, verify_equivalence, xor_bool)
from bxlens.cli import main  # noqa: E402
from bxlens.demos import bool_unit_fixture  # noqa: E402
from bxlens.lensfile import parse_lens_file, render_lens_file  # noqa: E402
from bxlens.spans import consistent_triples  # noqa: E402
from bxlens.symmetric import enumerate_slenses, enumerate_smlenses  # noqa: E402

RESULTS: dict = {}


def criterion(key, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **k):
            try:
                detail = fn(*a, **k)
            except BaseException as exc:
                msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                RESULTS[key] = f"FAIL criterion {key}: {title} -- {msg[:160]}"
                raise
            RESULTS[key] = f"PASS criterion {key}: {title}" + (f" ({detail})" if detail else "")
        return run
    return wrap


def failures(items, check):
    bad = [x for x in items if not check(x)]
    return bad


# ---------------------------------------------------------------- 1


@criterion("1", "pure composition preserves the lens laws")
def test_criterion_01_pure_composition():
    carriers = [sized(n, "a") for n in (0, 1, 2, 3)]
    lenses = {(s, v): list(enumerate_pure_lenses(s, v)) for s in carriers for v in carriers}
    pairs = [(l1, l2) for (s, m), ls in lenses.items() for l1 in ls
             for (m2, v), ls2 in lenses.items() if m2 == m for l2 in ls2]
    bad = failures(pairs, lambda p: check_pure_laws(compose_pure(*p)).passed)
    assert not bad, f"{len(bad)} of {len(pairs)} composites fail"
    return f"{len(pairs)} pairs, 0 failures"


# ---------------------------------------------------------------- 2


def mlens_corpus(effect, rng):
    cs = [sized(n, "c") for n in (1, 2, 3)]
    out = {}
    for s in cs:
        for v in cs:
            ls = [lens2mlens(effect, l) for l in enumerate_pure_lenses(s, v)]
            ls += [l for l in (random_mlens(effect, s, v, rng) for _ in range(3)) if l]
            if effect == MAYBE:
                ls += [const_mlens(s, v, x) for x in v] if len(v) == 1 else [const_mlens(s, v, v.elements[0])]
            out[(s, v)] = [l for l in ls if check_mlens_laws(l).passed]
    if effect == MAYBE:
        a = abs_lens(1)
        out.setdefault((a.source, a.view), []).append(a)
    return out


@criterion("2", "monadic composition preserves the laws (Maybe, State{F,T})")
def test_criterion_02_monadic_composition():
    rng = random.Random(2024)
    total = 0
    for effect in (MAYBE, STATE_BOOL):
        lib = mlens_corpus(effect, rng)
        pairs = [(l1, l2) for (s, m), ls in lib.items() for l1 in ls
                 for (m2, v), ls2 in lib.items() if m2 == m for l2 in ls2]
        bad = failures(pairs, lambda p: check_mlens_laws(compose_m(*p)).passed)
        assert not bad, f"{effect.name}: {len(bad)} of {len(pairs)} composites fail"
        total += len(pairs)
    assert total >= 200, f"only {total} pairs"
    return f"{total} pairs, 0 failures"


# ---------------------------------------------------------------- 3


@criterion("3", "lifted pure lenses are well-behaved under every effect")
def test_criterion_03_lifting():
    effects = [IDENTITY, MAYBE, LIST, STATE_BOOL, Writer(xor_bool())]
    cs = [sized(n, "c") for n in (1, 2, 3)]
    n = 0
    for s in cs:
        for v in cs:
            for l in enumerate_pure_lenses(s, v):
                for e in effects:
                    n += 1
                    rep = check_mlens_laws(lens2mlens(e, l))
                    assert rep.passed, f"{l.name} under {e.name}: {rep.violations[0].describe()}"
    return f"{n} lifted lenses, 0 failures"


# ---------------------------------------------------------------- 4


@criterion("4", "absLens, constMLens and logLens(idLens) gallery")
def test_criterion_04_gallery():
    a = abs_lens(3)
    assert a.source.elements == tuple(range(-3, 4))
    for l in (a, abs_lens(3, signed_view=True), const_mlens(sized(3, "s"), sized(2, "v"), "v0"),
              log_lens(id_lens(sized(3, "s")))):
        rep = check_mlens_laws(l)
        assert rep.passed, rep.text()
    assert a.mput(-3, 5) == MAYBE.ret(-5)
    assert a.mput(4, -2) == MAYBE.nothing()
    return "mput(-3,5) = just -5, mput(4,-2) = nothing"


# ---------------------------------------------------------------- 5


@criterion("5", "setBool T;setBool F breaks PutRLM with final states T / F")
def test_criterion_05_setbool():
    t, f = set_bool(True), set_bool(False)
    assert check_symmetric_laws(t).passed and check_symmetric_laws(f).passed
    rep = check_symmetric_laws(compose_sm(t, f))
    assert rep.failed("PutRLM")
    v = rep.first("PutRLM")
    assert STATE_BOOL.run(v.lhs, False)[1] is True
    assert STATE_BOOL.run(v.rhs, False)[1] is False
    return "lhs ends in T, rhs ends in F"


# ---------------------------------------------------------------- 6


@criterion("6", "commutative Writer composition is lawful; State{F,T} is not commutative")
def test_criterion_06_commutative():
    w = Writer(xor_bool())
    lib = [s for n in (1, 2) for s in enumerate_smlenses(w, UNIT, UNIT, sized(n, "c"))]
    pairs = [(a, b) for a in lib for b in lib]
    bad = failures(pairs, lambda p: check_symmetric_laws(compose_sm(*p)).passed)
    assert not bad, f"{len(bad)} of {len(pairs)} composites fail"
    res = check_commutative(STATE_BOOL, carrier("Unit", [()]))
    assert not res.holds
    assert res.witness == (STATE_BOOL.set(True), STATE_BOOL.set(False))
    return f"{len(pairs)} pairs, 0 failures; witness (set T, set F)"


# ---------------------------------------------------------------- 7


@criterion("7", "join, the pure commuting square and span composition")
def test_criterion_07_spans():
    cs = [sized(n, "c") for n in (1, 2, 3)]
    n = 0
    for v in cs:
        ls = [l for s in cs for l in enumerate_pure_lenses(s, v)]
        for a in ls:
            for b in ls:
                la, lb = lens2mlens(IDENTITY, a), lens2mlens(IDENTITY, b)
                sp = join(la, lb)
                assert check_span_wb(sp).passed
                assert mlens_equal(compose_m(sp.left, la), compose_m(sp.right, lb))
                n += 1
        for a in list(enumerate_mlenses(MAYBE, sized(2, "s"), v))[:6] if len(v) < 3 else []:
            for b in list(enumerate_mlenses(MAYBE, sized(2, "t"), v))[:6]:
                assert check_span_wb(join(a, b)).passed
    views = cs[:2]
    spans = [pure_span(a, b) for s in cs[:2] for lv in views for rv in views
             for a in enumerate_pure_lenses(s, lv) for b in enumerate_pure_lenses(s, rv)]
    spans += [Span(l, lens2mlens(MAYBE, r)) for s in cs[:2] for l in enumerate_mlenses(MAYBE, s, cs[1])
              for r in enumerate_pure_lenses(s, cs[0])]
    m = 0
    for s1 in spans:
        for s2 in spans:
            if s1.right.view == s2.left.view and s1.effect == s2.effect:
                assert check_span_wb(compose_span(s1, s2)).passed
                m += 1
    assert m > 0
    return f"{n} joins, {m} span composites, 0 failures"


# ---------------------------------------------------------------- 8


@criterion("8", "span/smlens conversions and the fail example")
def test_criterion_08_conversions():
    cs = [sized(n, "c") for n in (1, 2, 3)]
    n = 0
    for e in (IDENTITY, MAYBE, STATE_BOOL):
        for s in cs:
            for a in enumerate_pure_lenses(s, cs[0]):
                for b in enumerate_pure_lenses(s, cs[1]) if len(s) > 1 else [a]:
                    assert check_symmetric_laws(span2smlens(pure_span(a, b, effect=e))).passed
                    n += 1
    for l in enumerate_mlenses(MAYBE, cs[1], cs[0]):
        assert check_symmetric_laws(span2smlens(Span(l, l))).passed
    m = 0
    for na, nb, nc in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (1, 2, 2), (2, 1, 2), (2, 2, 2)]:
        for sl in enumerate_slenses(sized(na, "a"), sized(nb, "b"), sized(nc, "k")):
            assert check_span_wb(smlens2span(slens_to_smlens(sl))).passed
            m += 1
    with pytest.warns(UserWarning):
        sp = smlens2span(fail_smlens())
    assert len(consistent_triples(fail_smlens())) == 0 and len(sp.state) == 0
    rep = check_span_wb(sp)
    assert rep.failed("left.MGetPut") and rep.failed("right.MGetPut")
    return f"{n} spans -> smlens, {m} slenses -> span, fail: MGetPut violated, 0 triples"


# ---------------------------------------------------------------- 9


@criterion("9a", "Bool~>() fixture: iso NotFound, span witness, graph bisimulation")
def test_criterion_09a_fixture():
    sp1, sp2, _ = bool_unit_fixture()
    assert search_equivalence("iso", sp1, sp2) is NotFound
    w = search_equivalence("span", sp1, sp2)
    assert w is not NotFound and verify_equivalence("span", sp1, sp2, w).passed
    b = bisim_from_span_witness(sp1, sp2, w)
    assert verify_equivalence("bisim", sp1, sp2, b).passed
    return f"witness {w.direction}, |R| = {len(b.relation)}"


@criterion("9b", "span witnesses built from every pure bisimulation (states <= 2)")
def test_criterion_09b_span_from_bisim():
    cases = corpus.bisim_corpus()
    bad = [(sp1, sp2, w) for sp1, sp2, w in cases
           if not span_witness_from_bisim(sp1, sp2, w).report.passed]
    assert not bad, (f"{len(bad)} of {len(cases)} constructed witnesses fail; first: "
                     + span_witness_from_bisim(*bad[0]).report.violations[0].describe())
    return f"{len(cases)} bisimulations, 0 failures"


# ---------------------------------------------------------------- 10


@criterion("10", "two-step equivalence chains normalize to one commuting span")
def test_criterion_10_chains():
    chains = corpus.two_step_chains()
    bad = [c for c in chains if not normalize_equiv_chain(c).report.passed]
    assert not bad, f"{len(bad)} of {len(chains)} chains fail"
    return f"{len(chains)} chains, 0 failures"


# ---------------------------------------------------------------- 11


@criterion("11", "naive composition counterexample with |A| = |B| = 1")
def test_criterion_11_naive():
    cx = search_naive_counterexample(STATE_BOOL, 1, 1)
    assert cx is not NotFound, "search over |A| = |B| = 1 returned NotFound"
    assert check_naive_laws(cx.first).passed and check_naive_laws(cx.second).passed
    assert check_naive_laws(compose_naive(cx.first, cx.second)).failed(cx.violation.law)
    return f"{cx.violation.law} at {cx.violation.binding_text()}"


# ---------------------------------------------------------------- 12


@criterion("12", "membership laws and put-lens laws")
def test_criterion_12_membership():
    two = sized(2, "x")
    for e in (MAYBE, LIST):
        assert check_membership_laws(e, two).passed
    for l in (abs_lens(3), const_mlens(sized(3, "s"), sized(2, "v"), "v1")):
        assert check_put_lens_laws(put_lens_of(l)).passed
    return "Maybe, List; absLens, constMLens"


# ---------------------------------------------------------------- 13


DEMO_EXPECT = {
    "setbool-compose": (1, ["composite.law.PutRLM=fail", "final_state.lhs=T", "final_state.rhs=F"]),
    "fail-span": (1, ["consistent_triples=0", "span.law.left.MGetPut=fail"]),
    "bool-unit-equiv": (0, ["iso=NotFound", "span=found", "bisim.verified=yes"]),
    "naive-compose-search": (1, ["search.1_1=NotFound", "search.1_2=found", "violation.law=MPutGet0"]),
}


@criterion("13", "CLI demos and lens-file round trip")
def test_criterion_13_cli():
    for name, (code, lines) in DEMO_EXPECT.items():
        out = io.StringIO()
        got = main(["demo", name], out=out)
        assert got == code, f"demo {name} exited {got}"
        text = out.getvalue().splitlines()
        for line in lines:
            assert line in text, f"demo {name} lacks {line!r}"
    files = sorted((Path(__file__).parent / "fixtures").glob("*.lens"))
    assert files
    for f in files:
        lf = parse_lens_file(f.read_text())
        assert parse_lens_file(render_lens_file(lf)) == lf, f.name
    return f"4 demos, {len(files)} fixture files"


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for t in tests:
        try:
            t()
        except BaseException:
            pass
    for key in sorted(RESULTS, key=lambda k: (int(k.rstrip("ab")), k)):
        print(RESULTS[key])
