import pytest

from intgc.errors import FormulaSyntaxError
from intgc.syntax import (
    BOT, MAX_DEPTH, TOP, And, Down, Imp, Not, Or, Up, Var, closure_basis, parse, render, tokenize,
)

p, q, r = Var("p"), Var("q"), Var("r")


@pytest.mark.parametrize("text, expected", [
    ("p -> p", Imp(p, p)),
    ("<>(p | q) -> <>p | <>q", Imp(Up(Or(p, q)), Or(Up(p), Up(q)))),
    ("true", TOP),
    ("false -> p", Imp(BOT, p)),
    ("!!p", Not(Not(p))),
    ("[]<>p", Down(Up(p))),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("p & q & r", And(And(p, q), r)),
    ("p | q | r", Or(Or(p, q), r)),
    ("p & q | r", Or(And(p, q), r)),
    ("!p & q", And(Not(p), q)),
    ("p <-> q", And(Imp(p, q), Imp(q, p))),
    ("  ( p )  ", p),
    ("x_1 & fooBar", And(Var("x_1"), Var("fooBar"))),
])
def test_parse(text, expected):
    assert parse(text) == expected


def test_truncated_input_reports_offset():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("p ->")
    assert info.value.offset == 4
    assert info.value.expected


@pytest.mark.parametrize("text, offset", [
    ("(p & q", 6),
    ("p q", 2),
    ("p <-> q <-> r", 8),
    ("p & ?", 4),
    ("", 0),
])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


def test_offsets_count_utf8_bytes():
    # 全角空格占 3 个字节
    with pytest.raises(FormulaSyntaxError) as info:
        parse("p　->")
    assert info.value.offset == 6


def test_tokenize_prefers_longest_symbol():
    kinds = [t.kind for t in tokenize("p<->q<>[]r")]
    assert kinds == ["ident", "<->", "ident", "<>", "[]", "ident", "eof"]


def test_uppercase_identifier_rejected():
    with pytest.raises(FormulaSyntaxError):
        parse("P")


@pytest.mark.parametrize("f, text", [
    (Imp(p, p), "p -> p"),
    (Down(Up(p)), "[]<>p"),
    (And(Or(p, q), r), "(p | q) & r"),
    (Imp(Imp(p, q), r), "(p -> q) -> r"),
    (Imp(p, Imp(q, r)), "p -> q -> r"),
    (And(p, And(q, r)), "p & (q & r)"),
    (Not(And(p, q)), "!(p & q)"),
    (Up(Down(TOP)), "<>[]true"),
])
def test_render(f, text):
    assert render(f) == text
    assert str(f) == text
    assert parse(text) == f


def test_render_round_trips_iff():
    f = parse("<>p <-> []q")
    assert parse(render(f)) == f


def test_nesting_beyond_limit_is_a_syntax_error():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("!" * 1200 + "p")
    # 由内向外第 MAX_DEPTH 个 '!' 使深度超限
    assert info.value.offset == 1200 - MAX_DEPTH
    assert str(MAX_DEPTH) in info.value.expected

    with pytest.raises(FormulaSyntaxError):
        parse(" & ".join(["p"] * 600))


def test_deep_formula_within_limit():
    text = "!" * 400 + "<>[]p"
    f = parse(text)
    assert f.depth() == 403
    assert render(f) == text
    assert parse(render(f)) == f
    assert len(closure_basis(f).sub) == 403

    chain = parse(" & ".join(["p"] * 300))
    assert chain.depth() == 300
    assert len(closure_basis(chain).sub) == 300
    assert parse(render(chain)) == chain


@pytest.mark.parametrize("name", ["true", "false", "P", "1p", "", "p-q"])
def test_var_rejects_names_that_do_not_parse_back(name):
    with pytest.raises(ValueError):
        Var(name)
