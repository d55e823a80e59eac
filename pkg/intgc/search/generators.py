"""
随机公式与随机模型

所有随机性都来自 numpy.random.Generator，同一种子总给出同一结果。
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..semantics.kripke import KripkeFrame, KripkeModel, close_r, transitive_closure, world_names
from ..syntax.formula import BOT, TOP, And, Down, Formula, Imp, Not, Or, Up, Var

SeedLike = Union[int, np.random.Generator, None]

# 叶子为常量的概率；其余情况下从 variables 中取
_CONSTANT_LEAF = 0.1
# 未到最大深度时提前停在叶子的概率
_EARLY_LEAF = 0.25

_UNARY = (Not, Up, Down)
_BINARY = (And, Or, Imp)


def random_formula(rng: np.random.Generator, depth: int, variables: Sequence[str] = ("p", "q")) -> Formula:
    """深度不超过 depth 的随机公式，九种构造子都可能出现"""
    if depth <= 0 or rng.random() < _EARLY_LEAF:
        if not variables or rng.random() < _CONSTANT_LEAF:
            return TOP if rng.random() < 0.5 else BOT
        return Var(variables[int(rng.integers(len(variables)))])
    k = int(rng.integers(len(_UNARY) + len(_BINARY)))
    if k < len(_UNARY):
        return _UNARY[k](random_formula(rng, depth - 1, variables))
    op = _BINARY[k - len(_UNARY)]
    return op(random_formula(rng, depth - 1, variables), random_formula(rng, depth - 1, variables))


@dataclass(frozen=True)
class RandomModelParams:
    """random_model 的参数，密度均为每个候选序对/世界独立取中的概率"""
    min_worlds: int = 1
    max_worlds: int = 6
    leq_density: float = 0.3
    r_density: float = 0.3
    val_density: float = 0.4
    variables: tuple[str, ...] = ("p", "q")

    def __post_init__(self):
        if not 1 <= self.min_worlds <= self.max_worlds:
            raise ValueError(f"世界数范围不合法: {self.min_worlds}..{self.max_worlds}")
        for name in ("leq_density", "r_density", "val_density"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} 必须在 0 到 1 之间: {value}")


def random_model(params: RandomModelParams, seed: SeedLike = None) -> KripkeModel:
    """随机生成一个合法的 IntGC 模型

    预序取随机种子边的自反传递闭包，R 取随机种子对的 (★) 闭包，
    赋值取随机子集的上闭包；因此结果总能通过 check_frame 且赋值持久。

    Args:
        params: 参数
        seed: 整数种子或已有的 Generator（直接复用，便于批量生成）
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(params.min_worlds, params.max_worlds + 1))
    worlds = world_names(n)

    leq_seed = [0] * n
    r_seed = [0] * n
    leq_draw = rng.random((n, n)) < params.leq_density
    r_draw = rng.random((n, n)) < params.r_density
    for x in range(n):
        for y in range(n):
            if x != y and leq_draw[x, y]:
                leq_seed[x] |= 1 << y
            if r_draw[x, y]:
                r_seed[x] |= 1 << y
    leq = tuple(transitive_closure(leq_seed))
    frame = KripkeFrame(worlds, leq, close_r(leq, tuple(r_seed)))

    valuation: dict[str, int] = {}
    val_draw = rng.random((len(params.variables), n)) < params.val_density
    for k, name in enumerate(params.variables):
        mask = sum(1 << x for x in range(n) if val_draw[k, x])
        valuation[name] = frame.up_closure(mask)
    return KripkeModel(frame, valuation)
