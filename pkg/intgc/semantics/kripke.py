"""
Kripke 框架与模型

- 框架 (X, ≤, R)：≤ 为预序，R 满足 (★) (≥ ∘ R ∘ ≥) ⊆ R
- 模型：框架加持久（上闭）的赋值
- 满足关系按语义子句自底向上逐节点求值，算子结果按框架缓存

关系以位集行存储：leq[i] 的第 j 位表示 i ≤ j，r[i] 的第 j 位表示 i R j，
即按行压缩的稠密布尔矩阵。外延同样以位集表示。
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

from ..errors import BudgetExceeded, ModelValidationError, UnknownWorld
from ..logger import get_logger
from ..syntax.formula import (
    And, Bot, Down, Formula, Imp, Not, Or, Top, Up, Var,
)

logger = get_logger("IntGC.kripke")

# valid_in_frame 默认允许的赋值组合数
DEFAULT_FRAME_BUDGET = 100_000


def bits(mask: int) -> Iterator[int]:
    """依次给出位集中的下标"""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def world_names(n: int) -> tuple[str, ...]:
    """枚举与随机生成使用的世界名：a, b, c, ...，超过 26 个时用 w26 起"""
    return tuple(chr(ord("a") + i) if i < 26 else f"w{i}" for i in range(n))


def transitive_closure(rows: list[int]) -> list[int]:
    """位集行上的自反传递闭包（Warshall）"""
    rows = [row | (1 << i) for i, row in enumerate(rows)]
    for k in range(len(rows)):
        bit = 1 << k
        row_k = rows[k]
        for i in range(len(rows)):
            if rows[i] & bit:
                rows[i] |= row_k
    return rows


def transpose(rows: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    n = len(rows)
    cols = [0] * n
    for i, row in enumerate(rows):
        for j in bits(row):
            cols[j] |= 1 << i
    return tuple(cols)


def upsets_of(up: tuple[int, ...], down: tuple[int, ...]) -> list[int]:
    """列举预序的全部上集（位集），顺序确定：空集在前

    回溯：依次决定每个未定元素，排除时其下集一并排除，纳入时其上集一并纳入。
    """
    n = len(up)
    result: list[int] = []

    def walk(i: int, inside: int, outside: int) -> None:
        while i < n and ((inside >> i) & 1 or (outside >> i) & 1):
            i += 1
        if i == n:
            result.append(inside)
            return
        walk(i + 1, inside, outside | down[i])
        if not up[i] & outside:
            walk(i + 1, inside | up[i], outside)

    walk(0, 0, 0)
    return result


@dataclass(frozen=True)
class KripkeFrame:
    """有限 Kripke 框架

    worlds 为有序的世界名；leq / r 为位集行。构造不做校验，校验见 check_frame。
    """
    worlds: tuple[str, ...]
    leq: tuple[int, ...]
    r: tuple[int, ...]
    index: dict[str, int] = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            object.__setattr__(self, "index", {w: i for i, w in enumerate(self.worlds)})

    @classmethod
    def from_pairs(
            cls,
            worlds: Iterable[str],
            leq_pairs: Iterable[tuple[str, str]],
            r_pairs: Iterable[tuple[str, str]],
    ) -> "KripkeFrame":
        """由世界名二元组直接构造（不做闭包）"""
        worlds = tuple(worlds)
        index = {w: i for i, w in enumerate(worlds)}
        if len(index) != len(worlds):
            raise ModelValidationError(["世界名重复"])
        leq = [0] * len(worlds)
        r = [0] * len(worlds)
        for rows, pairs, name in ((leq, leq_pairs, "leq"), (r, r_pairs, "r")):
            for x, y in pairs:
                if x not in index or y not in index:
                    raise ModelValidationError([f"{name} 中出现未知世界: ({x}, {y})"])
                rows[index[x]] |= 1 << index[y]
        return cls(worlds, tuple(leq), tuple(r), index)

    @property
    def size(self) -> int:
        return len(self.worlds)

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.worlds)) - 1

    @cached_property
    def leq_down(self) -> tuple[int, ...]:
        """leq_down[j] 的第 i 位表示 i ≤ j"""
        return transpose(self.leq)

    @cached_property
    def r_pred(self) -> tuple[int, ...]:
        """r_pred[j] 的第 i 位表示 i R j"""
        return transpose(self.r)

    def world_index(self, world: str) -> int:
        try:
            return self.index[world]
        except KeyError:
            raise UnknownWorld(world) from None

    def mask_of(self, worlds: Iterable[str]) -> int:
        mask = 0
        for w in worlds:
            mask |= 1 << self.world_index(w)
        return mask

    def worlds_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.worlds[i] for i in bits(mask))

    def leq_pairs(self) -> list[tuple[str, str]]:
        return [(self.worlds[i], self.worlds[j]) for i, row in enumerate(self.leq) for j in bits(row)]

    def r_pairs(self) -> list[tuple[str, str]]:
        return [(self.worlds[i], self.worlds[j]) for i, row in enumerate(self.r) for j in bits(row)]

    def up_closure(self, mask: int) -> int:
        result = 0
        for i in bits(mask):
            result |= self.leq[i]
        return result

    def is_upset(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    @cached_property
    def upsets(self) -> tuple[int, ...]:
        """(X, ≤) 的全部上集，空集在前"""
        return tuple(upsets_of(self.leq, self.leq_down))

    @cached_property
    def _operator_tables(self) -> tuple[dict[int, int], dict[int, int], dict[int, int]]:
        # leq 内部、R 像、R 前驱内部，各自以参数位集为键
        return {}, {}, {}

    @staticmethod
    def _interior(rows: tuple[int, ...], outside: int) -> int:
        result = 0
        for x, row in enumerate(rows):
            if not row & outside:
                result |= 1 << x
        return result

    def leq_interior(self, mask: int) -> int:
        """{x | x 的 ≤ 上集 ⊆ mask}，即 mask 中最大的上集"""
        table = self._operator_tables[0]
        result = table.get(mask)
        if result is None:
            result = table[mask] = self._interior(self.leq, self.full_mask & ~mask)
        return result

    def r_image(self, mask: int) -> int:
        """{x | 存在 y ∈ mask 使 x R y}"""
        table = self._operator_tables[1]
        result = table.get(mask)
        if result is None:
            result = 0
            for x, row in enumerate(self.r):
                if row & mask:
                    result |= 1 << x
            table[mask] = result
        return result

    def pred_interior(self, mask: int) -> int:
        """{x | x 的所有 R 前驱都在 mask 中}"""
        table = self._operator_tables[2]
        result = table.get(mask)
        if result is None:
            result = table[mask] = self._interior(self.r_pred, self.full_mask & ~mask)
        return result


@dataclass
class FrameReport:
    """check_frame 的结果：每类违例都给出见证"""
    reflexivity: list[str] = field(default_factory=list)
    transitivity: list[tuple[str, str, str]] = field(default_factory=list)
    star: list[tuple[str, str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.reflexivity or self.transitivity or self.star)

    def problems(self) -> list[str]:
        lines = [f"自反性不成立: {x} ≰ {x}" for x in self.reflexivity]
        lines += [f"传递性不成立: {x} ≤ {y} ≤ {z} 但 {x} ≰ {z}" for x, y, z in self.transitivity]
        lines += [
            f"(★) 不成立: {x2} ≥ {x}, {x} R {y}, {y} ≥ {y2} 但缺少 {x2} R {y2}"
            for x2, x, y, y2 in self.star
        ]
        return lines

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "reflexivity": self.reflexivity,
            "transitivity": [list(t) for t in self.transitivity],
            "star": [list(t) for t in self.star],
        }


def check_frame(frame: KripkeFrame) -> FrameReport:
    """检查预序与 (★)，列出全部违例

    (★) 的每个缺失二元组 (x', y') 只报告一次，附带首个见证 (x', x, y, y')。
    """
    report = FrameReport()
    w = frame.worlds
    n = frame.size
    for i in range(n):
        if not (frame.leq[i] >> i) & 1:
            report.reflexivity.append(w[i])
    for i in range(n):
        for j in bits(frame.leq[i]):
            missing = frame.leq[j] & ~frame.leq[i]
            for k in bits(missing):
                report.transitivity.append((w[i], w[j], w[k]))
    reported: set[tuple[int, int]] = set()
    leq_down = frame.leq_down
    for x in range(n):
        for y in bits(frame.r[x]):
            for x2 in bits(frame.leq[x]):
                missing = leq_down[y] & ~frame.r[x2]
                for y2 in bits(missing):
                    if (x2, y2) not in reported:
                        reported.add((x2, y2))
                        report.star.append((w[x2], w[x], w[y], w[y2]))
    return report


def close_frame(
        worlds: Iterable[str],
        leq_seed: Iterable[tuple[str, str]],
        r_seed: Iterable[tuple[str, str]],
) -> KripkeFrame:
    """闭包构造框架

    leq 取种子的自反传递闭包；r 取包含种子的最小 (★) 闭关系：
    {(x', y') | (x, y) ∈ r_seed, x' ≥ x, y ≥ y'}。
    """
    seed = KripkeFrame.from_pairs(worlds, leq_seed, r_seed)
    leq = tuple(transitive_closure(list(seed.leq)))
    return KripkeFrame(seed.worlds, leq, close_r(leq, seed.r), seed.index)


def close_r(leq: tuple[int, ...], r_seed: tuple[int, ...]) -> tuple[int, ...]:
    """在已闭合的 leq 上求 r_seed 的 (★) 闭包"""
    leq_down = transpose(leq)
    n = len(leq)
    r = [0] * n
    for x in range(n):
        if not r_seed[x]:
            continue
        targets = 0
        for y in bits(r_seed[x]):
            targets |= leq_down[y]
        for x2 in bits(leq[x]):
            r[x2] |= targets
    return tuple(r)


@dataclass(frozen=True)
class KripkeModel:
    """Kripke 模型：框架加赋值（变量名 → 世界位集）

    未出现在赋值中的变量视为空集。
    """
    frame: KripkeFrame
    valuation: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def create(
            cls,
            frame: KripkeFrame,
            valuation: Mapping[str, Iterable[str]],
            close_valuation: bool = False,
    ) -> "KripkeModel":
        """由世界名集合构造，检查赋值的持久性

        Args:
            frame: 框架
            valuation: 变量名 → 世界名集合
            close_valuation: 为 True 时对赋值取上闭包，否则非上闭的赋值报错

        Raises:
            ModelValidationError: 赋值不是上集
        """
        masks: dict[str, int] = {}
        problems: list[str] = []
        for name in sorted(valuation):
            mask = frame.mask_of(valuation[name])
            closed = frame.up_closure(mask)
            if closed != mask:
                if close_valuation:
                    logger.warning(f"赋值 {name} 已取上闭包: 新增 {list(frame.worlds_of(closed & ~mask))}")
                else:
                    problems.append(f"赋值 {name} 不是上集，缺少 {list(frame.worlds_of(closed & ~mask))}")
            masks[name] = closed
        if problems:
            raise ModelValidationError(problems)
        return cls(frame, masks)

    @property
    def worlds(self) -> tuple[str, ...]:
        return self.frame.worlds

    def value(self, name: str) -> frozenset[str]:
        return frozenset(self.frame.worlds_of(self.valuation.get(name, 0)))

    def persistence_problems(self) -> list[str]:
        problems = []
        for name in sorted(self.valuation):
            mask = self.valuation[name]
            if not self.frame.is_upset(mask):
                problems.append(f"赋值 {name} 不是上集")
        return problems


def extension_mask(
        frame: KripkeFrame,
        valuation: Mapping[str, int],
        f: Formula,
        memo: Optional[dict[Formula, int]] = None,
) -> int:
    """按满足子句计算 f 的外延位集

    memo 以子公式为键，每次调用独立持有；已求值的子公式不再展开。
    求值使用显式栈，公式深度不受递归上限约束。
    """
    if memo is None:
        memo = {}
    cached = memo.get(f)
    if cached is not None:
        return cached
    stack = [f]
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        pending = [child for child in node.children() if child not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        memo[node] = _node_extension(frame, valuation, node, memo)
    return memo[f]


def _node_extension(
        frame: KripkeFrame,
        valuation: Mapping[str, int],
        node: Formula,
        memo: dict[Formula, int],
) -> int:
    """子节点外延均已在 memo 中时，计算 node 本身的外延"""
    kind = type(node)
    full = frame.full_mask
    if kind is Var:
        return valuation.get(node.name, 0) & full
    if kind is Top:
        return full
    if kind is Bot:
        return 0
    if kind is And:
        return memo[node.left] & memo[node.right]
    if kind is Or:
        return memo[node.left] | memo[node.right]
    if kind is Imp:
        # x ⊨ A → B 当且仅当 x 的上集中没有反例
        return frame.leq_interior(full & ~(memo[node.left] & ~memo[node.right]))
    if kind is Not:
        return frame.leq_interior(full & ~memo[node.child])
    if kind is Up:
        # ▲：存在 R 后继满足
        return frame.r_image(memo[node.child])
    if kind is Down:
        # ▽：所有 R 前驱都满足
        return frame.pred_interior(memo[node.child])
    raise TypeError(f"未知的公式类型: {kind.__name__}")


def satisfies(model: KripkeModel, x: str, f: Formula) -> bool:
    """x ⊨ f

    Raises:
        UnknownWorld: x 不是模型中的世界
    """
    i = model.frame.world_index(x)
    return bool((extension_mask(model.frame, model.valuation, f) >> i) & 1)


def extension(model: KripkeModel, f: Formula) -> frozenset[str]:
    """{x | x ⊨ f}，总是上集"""
    return frozenset(model.frame.worlds_of(extension_mask(model.frame, model.valuation, f)))


def failing_world(model: KripkeModel, f: Formula) -> Optional[str]:
    """按世界顺序返回第一个不满足 f 的世界，全部满足时返回 None"""
    ext = extension_mask(model.frame, model.valuation, f)
    missing = model.frame.full_mask & ~ext
    if not missing:
        return None
    return model.frame.worlds[next(bits(missing))]


def valid_in_model(model: KripkeModel, f: Formula) -> bool:
    return extension_mask(model.frame, model.valuation, f) == model.frame.full_mask


def frame_assignments(frame: KripkeFrame, variables: list[str], budget: int) -> Iterator[dict[str, int]]:
    """给 variables 枚举全部上集赋值

    Raises:
        BudgetExceeded: 组合数 (#上集)^|vars| 超过 budget
    """
    needed = len(frame.upsets) ** len(variables)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    for combo in itertools.product(frame.upsets, repeat=len(variables)):
        yield dict(zip(variables, combo))


def valid_in_frame(
        frame: KripkeFrame,
        f: Formula,
        variables: Optional[Iterable[str]] = None,
        budget: int = DEFAULT_FRAME_BUDGET,
) -> bool:
    """f 在框架上的所有模型中都有效

    Args:
        frame: 框架（应已通过 check_frame）
        f: 公式
        variables: 需要枚举的变量，缺省为 f 的全部变量；未列出的变量取空集
        budget: 允许的赋值组合数上限

    Raises:
        BudgetExceeded: 组合数超出预算
    """
    names = sorted(set(variables) if variables is not None else f.variables())
    full = frame.full_mask
    for valuation in frame_assignments(frame, names, budget):
        if extension_mask(frame, valuation, f) != full:
            return False
    return True


def gc_rule_holds(model: KripkeModel, a: Formula, b: Formula) -> bool:
    """GC1/GC2 的模型级双条件：A → ▽B 有效 当且仅当 ▲A → B 有效"""
    return valid_in_model(model, Imp(a, Down(b))) == valid_in_model(model, Imp(Up(a), b))


def monotonicity_holds(model: KripkeModel, a: Formula, b: Formula) -> bool:
    """(r2)：A → B 有效时 ▽A → ▽B 与 ▲A → ▲B 也有效"""
    if not valid_in_model(model, Imp(a, b)):
        return True
    return valid_in_model(model, Imp(Down(a), Down(b))) and valid_in_model(model, Imp(Up(a), Up(b)))


def necessitation_holds(model: KripkeModel, a: Formula) -> bool:
    """(r1)：A 有效时 ▽A 也有效"""
    return not valid_in_model(model, a) or valid_in_model(model, Down(a))
