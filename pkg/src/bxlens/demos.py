"""Built-in demonstrations with fixed fixtures; each returns (exit code, lines)."""
from __future__ import annotations

import warnings

from .carrier import BOOL, UNIT, render
from .effects import STATE_BOOL
from .equivalence import (bisim_from_span_witness, precompose, search_equivalence,
                          verify_equivalence)
from .errors import EmptyStateWithNonemptyViews, NotFound
from .lens_core import PureLens, id_lens
from .lensfile import render_object
from .mlens import check_naive_laws, search_naive_counterexample
from .spans import check_span_wb, consistent_triples, pure_span, smlens2span
from .symmetric import check_symmetric_laws, compose_sm, fail_smlens, set_bool


def setbool_compose() -> tuple[int, list[str]]:
    t, f = set_bool(True), set_bool(False)
    lines, kv = [], []
    for sl in (t, f):
        rep = check_symmetric_laws(sl)
        lines.append(rep.text())
        kv.append(f"{'setBool_T' if sl is t else 'setBool_F'}.status={'pass' if rep.passed else 'fail'}")
    comp = compose_sm(t, f)
    rep = check_symmetric_laws(comp)
    lines.append(rep.text())
    kv += rep.machine("composite.")
    v = rep.first("PutRLM")
    if v is not None:
        lhs_state = STATE_BOOL.run(v.lhs, False)[1]
        rhs_state = STATE_BOOL.run(v.rhs, False)[1]
        lines.append(f"started in state F: the PutRLM left side ends in {render(lhs_state)}, "
                     f"the right side in {render(rhs_state)}")
        kv += [f"initial_state=F", f"final_state.lhs={render(lhs_state)}",
               f"final_state.rhs={render(rhs_state)}"]
    return (0 if rep.passed else 1), lines + ["--- machine"] + kv


def fail_span() -> tuple[int, list[str]]:
    sl = fail_smlens()
    rep = check_symmetric_laws(sl)
    lines = [rep.text()]
    kv = [f"fail.status={'pass' if rep.passed else 'fail'}"]
    triples = consistent_triples(sl)
    lines.append(f"consistent triples of fail: {{{' '.join(render(x) for x in triples)}}}")
    kv.append(f"consistent_triples={len(triples)}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyStateWithNonemptyViews)
        sp = smlens2span(sl)
    span_rep = check_span_wb(sp)
    lines.append(span_rep.text())
    kv += span_rep.machine("span.")
    return (0 if span_rep.passed else 1), lines + ["--- machine"] + kv


def bool_unit_fixture():
    """sp1 = identity span over (); sp2 = sp1 precomposed with h : Bool ~> ()."""
    h = PureLens(BOOL, UNIT, lambda _b: (), lambda a, _u: a, lambda _u: True, "h")
    sp1 = pure_span(id_lens(UNIT), id_lens(UNIT), "sp1")
    return sp1, precompose(h, sp1, "sp2"), h


def bool_unit_equiv() -> tuple[int, list[str]]:
    sp1, sp2, _ = bool_unit_fixture()
    lines, kv, ok = [], [], True
    iso = search_equivalence("iso", sp1, sp2)
    lines.append(f"iso search: {'NotFound' if iso is NotFound else 'found'}")
    kv.append(f"iso={'NotFound' if iso is NotFound else 'found'}")
    w = search_equivalence("span", sp1, sp2)
    if w is NotFound:
        lines.append("span search: NotFound")
        kv.append("span=NotFound")
        return 1, lines + ["--- machine"] + kv
    rep = verify_equivalence("span", sp1, sp2, w)
    ok &= rep.passed
    lines.append(f"span search: found a {w.direction} witness")
    lines.append(render_object("h", w.h).rstrip())
    lines.append(rep.text())
    kv += [f"span=found", f"span.direction={w.direction}",
           f"span.h.create={render(w.h.create(()))}", f"span.verified={'yes' if rep.passed else 'no'}"]
    bis = bisim_from_span_witness(sp1, sp2, w)
    brep = verify_equivalence("bisim", sp1, sp2, bis)
    ok &= brep.passed
    lines.append(f"bisimulation from the span witness: R = {{{' '.join(render(p) for p in bis.relation)}}}")
    lines.append(brep.text())
    kv += [f"bisim.relation_size={len(bis.relation)}", f"bisim.verified={'yes' if brep.passed else 'no'}"]
    ok &= iso is NotFound
    kv.insert(0, f"status={'pass' if ok else 'fail'}")
    return (0 if ok else 1), lines + ["--- machine"] + kv


def naive_compose_search() -> tuple[int, list[str]]:
    lines, kv = [], []
    small = search_naive_counterexample(STATE_BOOL, 1, 1)
    lines.append(f"search over state Bool with |A| <= 1, |B|, |C| <= 1: "
                 f"{'NotFound' if small is NotFound else 'found'}")
    kv.append(f"search.1_1={'NotFound' if small is NotFound else 'found'}")
    found = search_naive_counterexample(STATE_BOOL, 1, 2)
    if found is NotFound:
        lines.append("search with |B|, |C| <= 2: NotFound")
        kv.append("search.1_2=NotFound")
        return 0, lines + ["--- machine"] + kv
    lines.append("search over state Bool with |A| <= 1, |B|, |C| <= 2: found")
    for label, l in (("first", found.first), ("second", found.second)):
        rep = check_naive_laws(l)
        g, p = l.tables()
        lines.append(f"{label} lens {l.source!r} ~> {l.view!r}: laws {'pass' if rep.passed else 'FAIL'}")
        lines += [f"  mget {render(a)} = {m}" for a, m in g.items()]
        lines += [f"  mput {render(a)} {render(b)} = {m}" for (a, b), m in p.items()]
        kv.append(f"{label}.status={'pass' if rep.passed else 'fail'}")
    v = found.violation
    lines.append(f"composite: {v.describe()}")
    kv += ["search.1_2=found", f"violation.law={v.law}", f"violation.at={v.binding_text()}",
           f"violation.lhs={v.lhs}", f"violation.rhs={v.rhs}"]
    return 1, lines + ["--- machine"] + kv


DEMOS = {
    "setbool-compose": setbool_compose,
    "fail-span": fail_span,
    "bool-unit-equiv": bool_unit_equiv,
    "naive-compose-search": naive_compose_search,
}
