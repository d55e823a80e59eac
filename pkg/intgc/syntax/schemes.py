"""
可证公式模式与固定语料

(f1)–(f5)、▽⊤、¬▲⊥ 的实例构造，以及 Kripke/代数一致性测试使用的 20 条公式语料。
"""

from .formula import BOT, TOP, And, Down, Formula, Imp, Not, Or, Up, iff
from .parser import parse


def f1(a: Formula) -> list[Formula]:
    """A → ▽▲A，▲▽A → A"""
    return [Imp(a, Down(Up(a))), Imp(Up(Down(a)), a)]


def f2(a: Formula) -> list[Formula]:
    """▲A ↔ ▲▽▲A，▽A ↔ ▽▲▽A"""
    return [iff(Up(a), Up(Down(Up(a)))), iff(Down(a), Down(Up(Down(a))))]


def f3() -> list[Formula]:
    """▽⊤，¬▲⊥"""
    return [Down(TOP), Not(Up(BOT))]


def f4(a: Formula, b: Formula) -> list[Formula]:
    """▽(A∧B) ↔ ▽A∧▽B，▲(A∨B) ↔ ▲A∨▲B"""
    return [
        iff(Down(And(a, b)), And(Down(a), Down(b))),
        iff(Up(Or(a, b)), Or(Up(a), Up(b))),
    ]


def f5(a: Formula, b: Formula) -> list[Formula]:
    """▽(A→B) → (▽A→▽B)"""
    return [Imp(Down(Imp(a, b)), Imp(Down(a), Down(b)))]


def scheme_instances(a: Formula, b: Formula) -> list[Formula]:
    """以 a、b 为体的全部模式实例"""
    return f1(a) + f2(a) + f3() + f4(a, b) + f5(a, b)


# 已知的非定理，search 必须在 3 个世界内找到反模型
NON_THEOREMS = (
    "[]p -> p",
    "p -> <>p",
    "<>p -> p",
    "p -> []p",
    "<>p & <>q -> <>(p & q)",
    "[](p | q) -> []p | []q",
)

_FILLERS = (
    "p | !p",
    "!!p -> p",
    "(p -> q) | (q -> p)",
    "[]!p <-> !<>p",
    "[]<>p -> <>[]p",
)


def agreement_corpus() -> list[Formula]:
    """固定的 20 条公式：6 条非定理、(f1)–(f5) 的 p/q 实例、若干混合公式"""
    p, q = parse("p"), parse("q")
    corpus = [parse(text) for text in NON_THEOREMS]
    corpus += f1(p) + f2(p) + f3() + f4(p, q) + f5(p, q)
    corpus += [parse(text) for text in _FILLERS]
    return corpus
