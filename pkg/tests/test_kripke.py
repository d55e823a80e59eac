import json

import numpy as np
import pytest

from intgc.errors import BudgetExceeded, ModelValidationError, SchemaError, UnknownWorld
from intgc.search import RandomModelParams, random_formula, random_model
from intgc.semantics import (
    KripkeFrame, KripkeModel, check_frame, close_frame, extension, failing_world, gc_rule_holds,
    load_model, model_to_dict, monotonicity_holds, necessitation_holds, satisfies, to_dot,
    valid_in_frame, valid_in_model,
)
from intgc.semantics.dot import covering_pairs
from intgc.syntax import parse

WORKED = """
{
  // a ≤ 只有自反，b R a
  "worlds": ["a", "b"],
  "leq": [],
  "r": [["b", "a"]],
  "val": {"p": ["b"]},
}
"""


@pytest.fixture
def worked():
    return load_model(WORKED)


def test_worked_model_satisfaction(worked):
    assert satisfies(worked, "a", parse("[]p")) is True
    assert satisfies(worked, "a", parse("[]p -> p")) is False
    assert satisfies(worked, "b", parse("<>[]p")) is True
    assert satisfies(worked, "a", parse("<>[]p")) is False


def test_worked_model_validity(worked):
    assert valid_in_model(worked, parse("[]p -> p")) is False
    assert failing_world(worked, parse("[]p -> p")) == "a"
    assert valid_in_model(worked, parse("p -> []<>p")) is True
    assert valid_in_model(worked, parse("true")) is True
    assert failing_world(worked, parse("true")) is None
    assert extension(worked, parse("[]p")) == frozenset({"a", "b"})
    assert extension(worked, parse("false")) == frozenset()


def test_unknown_world(worked):
    with pytest.raises(UnknownWorld):
        satisfies(worked, "z", parse("p"))


def test_check_frame_ok():
    frame = KripkeFrame.from_pairs(["a"], [("a", "a")], [])
    assert check_frame(frame).ok


def test_check_frame_star_violation():
    frame = KripkeFrame.from_pairs(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b")], [("a", "a")])
    report = check_frame(frame)
    assert not report.ok
    assert report.star == [("b", "a", "a", "a")]
    assert report.reflexivity == [] and report.transitivity == []


def test_check_frame_reflexivity_and_transitivity():
    frame = KripkeFrame.from_pairs(["a", "b"], [("a", "a")], [])
    assert check_frame(frame).reflexivity == ["b"]
    frame = KripkeFrame.from_pairs(
        ["a", "b", "c"], [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")], [],
    )
    assert check_frame(frame).transitivity == [("a", "b", "c")]


def test_close_frame():
    frame = close_frame(["a", "b"], [], [("a", "b"), ("b", "b")])
    assert frame.leq_pairs() == [("a", "a"), ("b", "b")]
    assert frame.r_pairs() == [("a", "b"), ("b", "b")]

    frame = close_frame(["a", "b"], [("a", "b")], [("a", "a")])
    assert frame.r_pairs() == [("a", "a"), ("b", "a")]
    assert check_frame(frame).ok

    frame = close_frame(["a", "b", "c"], [("a", "b"), ("b", "c")], [])
    assert ("a", "c") in frame.leq_pairs()


def test_close_frame_is_smallest_star_closed():
    rng = np.random.default_rng(2)
    for _ in range(50):
        model = random_model(RandomModelParams(max_worlds=4), rng)
        frame = model.frame
        assert check_frame(frame).ok
        # 从闭包结果再取闭包不再变化
        again = close_frame(frame.worlds, frame.leq_pairs(), frame.r_pairs())
        assert again.r == frame.r


def test_valid_in_frame():
    single = KripkeFrame.from_pairs(["a"], [("a", "a")], [])
    assert valid_in_frame(single, parse("p -> <>p")) is False
    assert valid_in_frame(single, parse("p -> p")) is True
    two = KripkeFrame.from_pairs(["a", "b"], [("a", "a"), ("b", "b")], [("b", "a")])
    assert valid_in_frame(two, parse("[]p -> p"), ["p"]) is False


def test_valid_in_frame_budget():
    two = KripkeFrame.from_pairs(["a", "b"], [("a", "a"), ("b", "b")], [])
    with pytest.raises(BudgetExceeded) as info:
        valid_in_frame(two, parse("p & q -> p"), budget=10)
    assert info.value.needed == 16


def test_model_create_checks_persistence():
    frame = KripkeFrame.from_pairs(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b")], [])
    with pytest.raises(ModelValidationError):
        KripkeModel.create(frame, {"p": ["a"]})
    model = KripkeModel.create(frame, {"p": ["a"]}, close_valuation=True)
    assert model.value("p") == frozenset({"a", "b"})


def test_persistence_on_random_models():
    rng = np.random.default_rng(7)
    params = RandomModelParams(max_worlds=6)
    for _ in range(100):
        model = random_model(params, rng)
        f = random_formula(rng, 4)
        ext = model.frame.mask_of(extension(model, f))
        assert model.frame.is_upset(ext)


def test_admissible_rules_on_random_models():
    rng = np.random.default_rng(8)
    params = RandomModelParams(max_worlds=5)
    for _ in range(60):
        model = random_model(params, rng)
        for _ in range(10):
            a, b = random_formula(rng, 3), random_formula(rng, 3)
            assert gc_rule_holds(model, a, b)
            assert monotonicity_holds(model, a, b)
            assert necessitation_holds(model, a)


def test_load_model_rejects_star_violation():
    text = json.dumps({"worlds": ["a", "b"], "leq": [["a", "b"]], "r": [["a", "a"]], "val": {}})
    with pytest.raises(ModelValidationError):
        load_model(text)
    model = load_model(text, close_r_flag=True)
    assert model.frame.r_pairs() == [("a", "a"), ("b", "a")]


def test_load_model_errors():
    with pytest.raises(ModelValidationError):
        load_model('{"worlds": ["a"], "val": {"p": ["z"]}}')
    with pytest.raises(ModelValidationError):
        load_model('{"worlds": ["a"], "r": [["a", "z"]]}')
    with pytest.raises(SchemaError):
        load_model('{"worlds": ')
    with pytest.raises(SchemaError):
        load_model('{"leq": []}')


def test_model_json_round_trip(worked):
    data = model_to_dict(worked)
    assert data == {
        "worlds": ["a", "b"],
        "leq": [["a", "a"], ["b", "b"]],
        "r": [["b", "a"]],
        "val": {"p": ["b"]},
    }
    again = load_model(json.dumps(data))
    assert again.frame.leq == worked.frame.leq
    assert again.frame.r == worked.frame.r
    assert again.valuation == worked.valuation


def test_dot_export(worked):
    dot = to_dot(worked)
    assert dot.startswith('digraph "M" {')
    assert '"b" [label="b: p"];' in dot
    assert '"a" [label="a"];' in dot
    assert '"b" -> "a" [style=dashed];' in dot
    assert "style=solid" not in dot


def test_dot_covering_edges():
    model = load_model('{"worlds": ["a", "b", "c"], "leq": [["a", "b"], ["b", "c"]]}')
    assert covering_pairs(model) == [(0, 1, False), (1, 2, False)]
    assert '"a" -> "b" [style=solid];' in to_dot(model)
    model = load_model('{"worlds": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}')
    assert covering_pairs(model) == [(0, 1, True)]
