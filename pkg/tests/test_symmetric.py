from itertools import product as iproduct

import pytest

from bxlens import (BOOL, IDENTITY, MAYBE, STATE_BOOL, UNIT, EffectMismatch, NotFound, Writer,
                    carrier, check_symmetric_laws, compose_s, compose_sm, fail_smlens, id_slens,
                    set_bool, sized, slens_from_tables, slens_to_smlens, smlens_to_slens,
                    xor_bool)
from bxlens.effects import multiset
from bxlens.symmetric import (compose_relations, enumerate_slenses, enumerate_smlenses,
                              search_slens_equiv, smlens_mismatches, verify_slens_equiv)

UNIT_C = carrier("Unit", [()])


def oracle_slens_count(A, B, C):
    """Brute force over both transfer tables; missing is C[0]."""
    A, B, C = list(A), list(B), list(C)
    rc, lc = [(a, c) for a in A for c in C], [(b, c) for b in B for c in C]
    n = 0
    for rt in iproduct(list(iproduct(B, C)), repeat=len(rc)):
        pr = dict(zip(rc, rt))
        for lt in iproduct(list(iproduct(A, C)), repeat=len(lc)):
            pl = dict(zip(lc, lt))
            n += (all(pl[pr[(a, c)]] == (a, pr[(a, c)][1]) for a, c in rc)
                  and all(pr[pl[(b, c)]] == (b, pl[(b, c)][1]) for b, c in lc))
    return n


@pytest.mark.parametrize("na,nb,nc", [(1, 1, 1), (2, 1, 1), (2, 2, 1), (1, 1, 2), (2, 1, 2)])
def test_slens_enumeration_matches_brute_force(na, nb, nc):
    A, B, C = sized(na, "a"), sized(nb, "b"), sized(nc, "c")
    ours = list(enumerate_slenses(A, B, C))
    assert all(check_symmetric_laws(s).passed for s in ours)
    assert len(ours) == oracle_slens_count(A, B, C)


def test_pure_composition_preserves_laws():
    A, B, C = sized(2, "a"), sized(2, "b"), sized(1, "c")
    firsts = list(enumerate_slenses(A, B, C))
    seconds = list(enumerate_slenses(B, sized(1, "d"), sized(2, "k")))
    assert firsts and seconds
    for s1 in firsts:
        for s2 in seconds:
            assert check_symmetric_laws(compose_s(s1, s2)).passed


def test_set_bool_laws_and_composite_failure():
    t, f = set_bool(True), set_bool(False)
    assert check_symmetric_laws(t).passed and check_symmetric_laws(f).passed
    rep = check_symmetric_laws(compose_sm(t, f))
    assert rep.failed("PutRLM") and rep.failed("PutLRM")
    v = rep.first("PutRLM")
    # started in F: the composite's putR-then-putL ends in T, putR alone ends in F
    assert STATE_BOOL.run(v.lhs, False)[1] is True
    assert STATE_BOOL.run(v.rhs, False)[1] is False


def test_fail_lens_is_vacuously_lawful():
    rep = check_symmetric_laws(fail_smlens())
    assert rep.passed
    assert fail_smlens().mput_r((), ()) == MAYBE.nothing()


@pytest.mark.parametrize("monoid", [xor_bool(), multiset(sized(1, "w"), 2)],
                         ids=["xor", "multiset"])
def test_commutative_writer_composition_preserves_laws(monoid):
    w = Writer(monoid)
    corpus = [s for n in (1, 2) for s in enumerate_smlenses(w, UNIT, UNIT, sized(n, "c"))]
    assert len(corpus) > 2
    for s1 in corpus:
        for s2 in corpus:
            assert check_symmetric_laws(compose_sm(s1, s2)).passed


def test_lift_and_lower_round_trip():
    A, B, C = sized(2, "a"), sized(1, "b"), sized(2, "c")
    for s in enumerate_slenses(A, B, C):
        m = slens_to_smlens(s)
        assert check_symmetric_laws(m).passed
        back = smlens_to_slens(m)
        assert not smlens_mismatches(slens_to_smlens(back), m)
    with pytest.raises(EffectMismatch):
        smlens_to_slens(fail_smlens())


def test_identity_is_unit_up_to_equivalence():
    A, B, C = sized(2, "a"), sized(2, "b"), sized(2, "c")
    for s in enumerate_slenses(A, B, C):
        composite = compose_s(id_slens(A), s)
        R = search_slens_equiv(composite, s)
        assert R is not NotFound
        assert verify_slens_equiv(composite, s, R).passed
        assert ((), s.missing) in {(p[0][0], p[1]) for p in R}


def test_equivalence_search_refutes_different_behaviour():
    A, B = sized(2, "a"), sized(2, "b")
    one = sized(1, "c")
    swap = slens_from_tables(A, B, one, {("a0", "c0"): ("b1", "c0"), ("a1", "c0"): ("b0", "c0")},
                             {("b0", "c0"): ("a1", "c0"), ("b1", "c0"): ("a0", "c0")}, "c0")
    straight = slens_from_tables(A, B, one, {("a0", "c0"): ("b0", "c0"), ("a1", "c0"): ("b1", "c0")},
                                 {("b0", "c0"): ("a0", "c0"), ("b1", "c0"): ("a1", "c0")}, "c0")
    assert search_slens_equiv(swap, straight) is NotFound
    rep = verify_slens_equiv(swap, straight, {("c0", "c0")})
    assert rep.failed("PutRSim")


def test_verify_reports_missing_pair():
    s = id_slens(BOOL)
    rep = verify_slens_equiv(s, s, set())
    assert rep.failed("Missing")


def test_compose_relations():
    assert compose_relations({(1, "a"), (2, "b")}, {("a", "x"), ("a", "y")}) == {(1, "x"), (1, "y")}


def test_identity_effect_set_bool_is_state_only():
    assert set_bool(True).effect == STATE_BOOL
    assert slens_to_smlens(id_slens(BOOL)).effect == IDENTITY
