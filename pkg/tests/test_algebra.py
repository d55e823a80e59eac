import json

import numpy as np
import pytest

from intgc.errors import BudgetExceeded, NotALattice, NotDistributive, UnassignedVariable
from intgc.search import enumerate_frames
from intgc.semantics import (
    GCAlgebra, KripkeFrame, check_gc_operators, complex_algebra, eval_formula, failing_assignment,
    lattice_from_order, load_algebra, valid_in_algebra,
)
from intgc.syntax import Var, parse, scheme_instances


def chain(n):
    return [[i <= j for j in range(n)] for i in range(n)]


M3 = [
    [1, 1, 1, 1, 1],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]


def test_two_chain():
    lat = lattice_from_order(chain(2))
    assert (lat.bottom, lat.top) == (0, 1)
    assert lat.imp[1, 0] == 0
    assert lat.imp[0, 0] == 1 and lat.imp[0, 1] == 1


def test_three_chain_double_negation():
    lat = lattice_from_order(chain(3))
    assert lat.imp[1, 0] == 0
    assert lat.neg(lat.neg(1)) == 2


def test_diamond_not_distributive():
    with pytest.raises(NotDistributive) as info:
        lattice_from_order(M3)
    assert len(info.value.witness) == 3


@pytest.mark.parametrize("leq", [
    [[1, 0], [0, 1]],
    [[1, 1], [1, 1]],
    [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
    [[0]],
])
def test_not_a_lattice(leq):
    with pytest.raises(NotALattice):
        lattice_from_order(leq)


def test_boolean_square_tables():
    # 0 = ⊥, 1、2 为原子, 3 = ⊤
    leq = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    lat = lattice_from_order(leq)
    assert lat.meet[1, 2] == 0 and lat.join[1, 2] == 3
    assert lat.neg(1) == 2 and lat.neg(2) == 1
    assert lat.imp[1, 2] == 2


@pytest.mark.parametrize("f, g, ok", [
    ([0, 1], [0, 1], True),
    ([0, 0], [1, 1], True),
    ([1, 1], [1, 1], False),
])
def test_check_gc_operators(f, g, ok):
    report = check_gc_operators(GCAlgebra.create(chain(2), f, g))
    assert report.ok is ok


def test_normality_failure_is_reported():
    report = check_gc_operators(GCAlgebra.create(chain(2), [1, 1], [1, 1]))
    assert report.normality
    assert report.galois
    assert report.to_dict()["ok"] is False


def test_operator_table_shape_checked():
    with pytest.raises(NotALattice):
        GCAlgebra.create(chain(2), [0, 1, 1], [0, 1])
    with pytest.raises(NotALattice):
        GCAlgebra.create(chain(2), [0, 2], [0, 1])


def test_eval_formula():
    alg = GCAlgebra.create(chain(3), [0, 1, 2], [0, 1, 2])
    assert eval_formula(alg, {"p": 1}, parse("p -> p")) == 2
    assert eval_formula(alg, {}, parse("[]true")) == 2
    assert eval_formula(alg, {"p": 1}, parse("!!p")) == 2
    assert eval_formula(alg, {"p": 1}, parse("p | !p")) == 1
    with pytest.raises(UnassignedVariable):
        eval_formula(alg, {"p": 1}, parse("p & q"))


def test_valid_in_algebra():
    identity = GCAlgebra.create(chain(2), [0, 1], [0, 1])
    assert valid_in_algebra(identity, parse("p -> []<>p"))
    # 单个代数上有效不等于可证
    assert valid_in_algebra(identity, parse("[]p -> p"))
    assert not valid_in_algebra(GCAlgebra.create(chain(3), [0, 1, 2], [0, 1, 2]), parse("p | !p"))
    assert failing_assignment(GCAlgebra.create(chain(3), [0, 1, 2], [0, 1, 2]), parse("p | !p")) == {"p": 1}


def test_valid_in_algebra_budget():
    alg = GCAlgebra.create(chain(3), [0, 1, 2], [0, 1, 2])
    with pytest.raises(BudgetExceeded):
        valid_in_algebra(alg, parse("p & q & r"), budget=20)


def test_complex_algebra_of_worked_frame():
    frame = KripkeFrame.from_pairs(["a", "b"], [("a", "a"), ("b", "b")], [("b", "a")])
    alg = complex_algebra(frame)
    labels = list(alg.labels)
    assert sorted(labels) == ["{a,b}", "{a}", "{b}", "{}"]
    assert labels[alg.f[labels.index("{a}")]] == "{b}"
    assert labels[alg.g[labels.index("{b}")]] == "{a,b}"
    assert check_gc_operators(alg).ok
    assert not valid_in_algebra(alg, parse("[]p -> p"))


def test_complex_algebra_extremes():
    empty = complex_algebra(KripkeFrame.from_pairs(["a", "b"], [("a", "a"), ("b", "b")], []))
    labels = list(empty.labels)
    assert {labels[i] for i in empty.f} == {"{}"}
    assert {labels[i] for i in empty.g} == {"{a,b}"}

    loop = complex_algebra(KripkeFrame.from_pairs(["a"], [("a", "a")], [("a", "a")]))
    assert loop.f.tolist() == [0, 1]
    assert loop.g.tolist() == [0, 1]


def test_complex_algebras_satisfy_gc_laws():
    for n in (1, 2):
        for frame in enumerate_frames(n):
            alg = complex_algebra(frame)
            assert check_gc_operators(alg).ok
            f, g, leq = alg.f, alg.g, alg.lattice.leq
            # f(g(b)) ≤ b 且 a ≤ g(f(a))
            assert all(leq[f[g[b]], b] for b in range(alg.lattice.size))
            assert all(leq[a, g[f[a]]] for a in range(alg.lattice.size))
            for inst in scheme_instances(Var("p"), Var("q")):
                assert valid_in_algebra(alg, inst)


def test_algebra_json_round_trip():
    frame = KripkeFrame.from_pairs(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b")], [("a", "a"), ("b", "a"), ("b", "b")])
    alg = complex_algebra(frame)
    again = load_algebra(json.dumps(alg.to_dict()))
    assert np.array_equal(again.lattice.leq, alg.lattice.leq)
    assert again.f.tolist() == alg.f.tolist()
    assert again.labels == alg.labels
