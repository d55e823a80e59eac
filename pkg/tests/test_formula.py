import numpy as np
import pytest

from intgc.errors import NotInSigma
from intgc.search import random_formula
from intgc.semantics import KripkeFrame, complex_algebra, eval_formula, extension_mask
from intgc.syntax import (
    And, Down, Imp, Not, Up, Var, agreement_corpus, closure_basis, from_dict, iff, in_sigma, normalize, parse,
    scheme_instances, sigma_members, star, star_case, subformulas,
)


def texts(formulas):
    return [str(f) for f in formulas]


@pytest.mark.parametrize("text, expected", [
    ("<>p", ["p", "<>p"]),
    ("[]p -> p", ["p", "[]p", "[]p -> p"]),
    ("<>[]<>p", ["p", "<>p", "[]<>p", "<>[]<>p"]),
])
def test_subformulas(text, expected):
    assert texts(subformulas(parse(text))) == expected


@pytest.mark.parametrize("text, gamma", [
    ("<>p", ["p", "<>p", "[]<>p"]),
    ("[]p -> p", ["p", "[]p", "[]p -> p", "<>[]p"]),
    ("p & q", ["p", "q", "p & q"]),
])
def test_closure_basis(text, gamma):
    basis = closure_basis(parse(text))
    assert texts(basis.gamma) == gamma
    assert [basis.index(g) for g in basis.gamma] == list(range(len(gamma)))
    assert set(basis.sub) <= set(basis.gamma)


def test_gamma_is_closed_under_subformulas():
    rng = np.random.default_rng(11)
    for _ in range(200):
        basis = closure_basis(random_formula(rng, 4))
        for g in basis.gamma:
            for s in subformulas(g):
                assert basis.in_gamma(s), (str(basis.root), str(s))


def test_variables_in_gamma_order():
    basis = closure_basis(parse("[]q -> p"))
    assert basis.variables() == ("q", "p")


@pytest.mark.parametrize("text, expected", [
    ("[]<>[]<>p", True),
    ("[]p", False),
    ("p", True),
    ("<>[]<>p", True),
    ("<>[]<>[]<>p", True),
    ("[]<>p & p", False),
])
def test_in_sigma(text, expected):
    basis = closure_basis(parse("<>p"))
    assert in_sigma(basis, parse(text)) is expected


@pytest.mark.parametrize("text, expected", [
    ("<>[]<>p", "<>p"),
    ("[]<>[]p", "[]p"),
    ("p & q", "p & q"),
    ("<>[]<>[]<>q", "<>q"),
    ("[]<>[]<>[]q", "[]q"),
    ("[]<>p", "[]<>p"),
])
def test_normalize(text, expected):
    assert str(normalize(parse(text))) == expected


def test_star():
    basis = closure_basis(parse("[]p -> p"))
    assert str(star(basis, parse("<>[]<>[]p"))) == "<>[]p"
    basis = closure_basis(parse("<>p"))
    assert str(star(basis, parse("[]<>p"))) == "[]<>p"
    with pytest.raises(NotInSigma):
        star(basis, parse("q"))


def test_star_case_table():
    basis = closure_basis(parse("[]p -> p"))
    assert star_case(basis, parse("p")) == ("i", Var("p"))
    assert star_case(basis, parse("[]<>[]p")) == ("ii", Down(Var("p")))
    assert star_case(basis, parse("<>[]<>[]p")) == ("iv", Up(Down(Var("p"))))


def test_star_case_agrees_with_rewriting():
    rng = np.random.default_rng(5)
    for _ in range(30):
        basis = closure_basis(random_formula(rng, 3))
        for b in sigma_members(basis, 2):
            case = star_case(basis, b)
            if case is not None and case[0] in ("ii", "iv"):
                assert case[1] == normalize(b)


def test_sigma_members_normalize_into_gamma():
    rng = np.random.default_rng(3)
    for _ in range(50):
        basis = closure_basis(random_formula(rng, 3))
        for b in sigma_members(basis, 3):
            assert in_sigma(basis, b)
            assert basis.in_gamma(star(basis, b))


def test_formula_helpers():
    f = parse("[]p -> q & p")
    assert f.variables() == frozenset({"p", "q"})
    assert f.size() == 6
    assert f.depth() == 3
    assert from_dict(f.to_dict()) == f
    assert parse("true").variables() == frozenset()


def test_to_dict_shape():
    assert parse("p -> <>q").to_dict() == {
        "op": "imp",
        "left": {"var": "p"},
        "right": {"op": "up", "child": {"var": "q"}},
    }


def test_scheme_instances_and_corpus():
    p, q = Var("p"), Var("q")
    instances = scheme_instances(p, q)
    assert len(instances) == 9
    assert Imp(p, Down(Up(p))) in instances
    assert And(Imp(Down(And(p, q)), And(Down(p), Down(q))), Imp(And(Down(p), Down(q)), Down(And(p, q)))) in instances
    corpus = agreement_corpus()
    assert len(corpus) == 20
    assert str(corpus[0]) == "[]p -> p"


def test_sigma_members_keep_normal_forms_and_lemma_closure():
    rng = np.random.default_rng(17)
    for _ in range(40):
        basis = closure_basis(random_formula(rng, 3))
        for b in sigma_members(basis, 3):
            once = normalize(b)
            assert normalize(once) == once
            # ▽ 开头的成员前加 ▲、▲ 开头的成员前加 ▽，仍在 Σ 中
            if isinstance(b, Down):
                assert in_sigma(basis, Up(b)), (str(basis.root), str(b))
            if isinstance(b, Up):
                assert in_sigma(basis, Down(b)), (str(basis.root), str(b))


def nested(n, wrap):
    f = Var("p")
    for _ in range(n):
        f = wrap(f)
    return f


def test_deep_formulas_need_no_recursion():
    deep = nested(5000, Not)
    again = nested(5000, Not)
    assert deep == again and hash(deep) == hash(again)
    assert deep != nested(4999, Not)
    assert deep.size() == 5001 and deep.depth() == 5001
    assert sum(1 for _ in deep.walk()) == 5001
    assert str(deep) == "!" * 5000 + "p"
    assert from_dict(deep.to_dict()) == deep
    assert len(closure_basis(deep).gamma) == 5001

    frame = KripkeFrame.from_pairs(["a"], [("a", "a")], [("a", "a")])
    assert extension_mask(frame, {"p": 1}, deep) == 1
    alg = complex_algebra(frame)
    assert eval_formula(alg, {"p": alg.lattice.top}, deep) == alg.lattice.top

    chain = nested(5000, lambda f: And(f, Up(Var("q"))))
    assert chain.depth() == 5002
    assert len(subformulas(chain)) == 5003
    assert extension_mask(frame, {"p": 1, "q": 1}, chain) == 1


def test_var_names_are_checked():
    for name in ("true", "false", "P"):
        with pytest.raises(ValueError):
            Var(name)
    with pytest.raises(ValueError):
        from_dict({"var": "true"})
    with pytest.raises(ValueError):
        from_dict({"op": "xor", "left": {"var": "p"}, "right": {"var": "q"}})


def test_shared_subtrees_are_visited_once():
    # 每层 <-> 都把左操作数复制进两个蕴涵，展开后的树呈指数增长
    f = Var("p")
    for _ in range(60):
        f = iff(f, Var("q"))
    assert f.size() > 2 ** 60
    assert len(subformulas(f)) == 2 + 3 * 60
    assert f.variables() == frozenset({"p", "q"})
    copy = from_dict(f.to_dict())
    assert copy == f and copy is not f
    frame = KripkeFrame.from_pairs(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b")], [])
    # 奇数层为全集，偶数层回到 q 的外延
    assert extension_mask(frame, {"p": 0b10, "q": 0b10}, f) == 0b10
