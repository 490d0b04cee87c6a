import io
from pathlib import Path

import pytest

from bxlens import (MAYBE, abs_lens, check_mlens_laws, fail_smlens, mlens_equal, set_bool)
from bxlens.cli import main
from bxlens.lensfile import ParseError, load, parse_lens_file, render_lens_file, render_object

FIXTURES = sorted((Path(__file__).parent / "fixtures").glob("*.lens"))


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def machine(text):
    tail = text.split("--- machine\n", 1)[1]
    return dict(line.split("=", 1) for line in tail.splitlines() if "=" in line)


# ---------------------------------------------------------------- lens files


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_fixture_round_trip(path):
    lf = parse_lens_file(path.read_text())
    text = render_lens_file(lf)
    assert parse_lens_file(text) == lf
    assert render_lens_file(parse_lens_file(text)) == text


@pytest.mark.parametrize("text,where,needle", [
    ("carrier S { a b }\ncarrier S { c }\n", (2, 9), "already"),
    ("carrier S { a }\npure-lens l : S ~> V { }\n", (2, 20), "V"),
    ("carrier S { a }\npure-lens l : S ~> S {\n get { a -> b }\n put { a a -> a }\n create { a -> a }\n}\n",
     (3, 13), "b"),
    ("carrier S { a b }\npure-lens l : S ~> S {\n get { a -> a }\n put { a a -> a }\n create { a -> a }\n}\n",
     None, "b"),
    ("carrier S { a }\ncheck nope\n", (2, 7), "nope"),
    ("carrier S { a \n", None, ""),
])
def test_parse_errors_are_located(text, where, needle):
    with pytest.raises(ParseError) as ei:
        parse_lens_file(text)
    err = ei.value
    assert err.line >= 1
    if where:
        assert (err.line, err.col) == where, str(err)
    assert needle in err.message


def test_render_object_loads_back_equal():
    for obj in (abs_lens(2), abs_lens(2, signed_view=True)):
        model = load(render_object("x", obj))
        again = model.objects["x"]
        assert mlens_equal(again, obj)
        assert check_mlens_laws(again).passed


def test_render_object_of_symmetric_lenses():
    for obj in (set_bool(True), fail_smlens()):
        model = load(render_object("s", obj))
        again = model.objects["s"]
        assert again.effect == obj.effect
        for a in obj.left:
            for c in obj.complement:
                assert again.mput_r(a, c) == obj.mput_r(a, c)


def test_lens_file_model():
    model = load((Path(__file__).parent / "fixtures" / "maybe.lens").read_text())
    assert model.checks == ["partial", "both"]
    partial = model.objects["partial"]
    assert partial.effect == MAYBE
    assert partial.mput("s0", "v1") == MAYBE.nothing()


# ---------------------------------------------------------------- commands


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_check_exit_codes(path):
    code, out = run("check", str(path))
    expected = 1 if path.name == "state.lens" else 0
    assert code == expected
    assert machine(out)["status"] == ("fail" if expected else "pass")


def test_check_failure_reports_witness():
    code, out = run("check", str(FIXTURES[0].parent / "state.lens"), "--name", "flip")
    m = machine(out)
    assert code == 1 and m["flip.law.MGetPut"] == "fail"
    assert m["flip.witness.MGetPut"] == "a=F"
    assert m["flip.lhs.MGetPut"] == "{F -> (F, T); T -> (F, F)}"


def test_compose_output_reloads(tmp_path):
    code, out = run("compose", str(FIXTURES[0].parent / "pure.lens"), "--kind", "pure",
                    "--left", "fst", "--right", "bang", "--check")
    assert code == 0
    text = out.split("== ", 1)[0]
    f = tmp_path / "c.lens"
    f.write_text(text)
    assert run("check", str(f))[0] == 0


def test_convert_both_ways():
    d = FIXTURES[0].parent
    code, out = run("convert", str(d / "maybe.lens"), "--op", "span2smlens", "--name", "both", "--check")
    assert code == 0 and "smlens both_smlens" in out
    code, out = run("convert", str(d / "symmetric.lens"), "--op", "smlens2span", "--name", "guarded")
    assert code == 0 and out.startswith("") and "note:" in out
    code, out = run("convert", str(d / "symmetric.lens"), "--op", "smlens2span", "--name", "keep")
    assert "note:" not in out


def test_equiv_commands():
    f = str(FIXTURES[0].parent / "equiv.lens")
    code, out = run("equiv", f, "--kind", "iso", "--a", "sp1", "--b", "sp2", "--search")
    assert code == 1 and machine(out)["witness"] == "NotFound"
    code, out = run("equiv", f, "--kind", "span", "--a", "sp1", "--b", "sp2", "--witness", "h")
    assert code == 0 and "witness lens (backward)" in out
    code, out = run("equiv", f, "--kind", "bisim", "--a", "sp1", "--b", "sp2", "--search")
    assert code == 0 and machine(out)["witness"] == "found"


@pytest.mark.parametrize("argv", [
    ("check", "missing.lens"),
    ("check", "tests/fixtures/pure.lens", "--name", "zzz"),
    ("compose", "tests/fixtures/pure.lens", "--kind", "slens", "--left", "fst", "--right", "bang"),
    ("demo", "nope"),
    ("equiv", "tests/fixtures/equiv.lens", "--kind", "iso", "--a", "sp1", "--b", "sp2"),
])
def test_usage_errors_exit_2(argv, capsys):
    code, out = run(*argv)
    assert code == 2
    assert "--- machine" not in out


def test_parse_error_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.lens"
    f.write_text("carrier S { a }\ncarrier S { b }\n")
    assert run("check", str(f))[0] == 2
    assert "2:9" in capsys.readouterr().err


# ---------------------------------------------------------------- demos


def test_demo_setbool_compose():
    code, out = run("demo", "setbool-compose")
    m = machine(out)
    assert code == 1
    assert m["composite.law.PutRLM"] == "fail"
    assert (m["initial_state"], m["final_state.lhs"], m["final_state.rhs"]) == ("F", "T", "F")


def test_demo_fail_span():
    code, out = run("demo", "fail-span")
    m = machine(out)
    assert code == 1
    assert m["consistent_triples"] == "0"
    assert m["span.law.left.MGetPut"] == "fail"
    assert m["span.lhs.left.MGetPut"] == "nothing"


def test_demo_bool_unit_equiv():
    code, out = run("demo", "bool-unit-equiv")
    m = machine(out)
    assert code == 0
    assert m["iso"] == "NotFound" and m["span"] == "found" and m["span.h.create"] == "T"
    assert m["bisim.verified"] == "yes"


def test_demo_naive_compose_search():
    code, out = run("demo", "naive-compose-search")
    m = machine(out)
    assert code == 1
    assert m["search.1_1"] == "NotFound" and m["search.1_2"] == "found"
    assert m["violation.law"] == "MPutGet0"
