"""
有限代数语义

- FiniteDistLattice: 有限有界分配格，附 Heyting 蕴涵表
- GCAlgebra: 格上的一对 Galois 连接算子 (f, g)，▲ ↦ f，▽ ↦ g
- complex_algebra: Kripke 框架的复代数（上集格）

所有运算表都是 numpy 数组，构造后不再修改。
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, Optional

import numpy as np

from ..errors import BudgetExceeded, NotALattice, NotDistributive, UnassignedVariable
from ..logger import get_logger
from ..syntax.formula import And, Bot, Down, Formula, Imp, Not, Or, Top, Up, Var
from .kripke import KripkeFrame, bits

logger = get_logger("IntGC.algebra")

DEFAULT_ALGEBRA_BUDGET = 100_000


@dataclass(frozen=True, eq=False)
class FiniteDistLattice:
    """元素为 0..n-1；leq[a, b] 表示 a ≤ b"""
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    imp: np.ndarray
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return int(self.leq.shape[0])

    def neg(self, a: int) -> int:
        return int(self.imp[a, self.bottom])


def _bound(leq: np.ndarray, a: int, b: int, lower: bool) -> Optional[int]:
    """a、b 的最大下界（lower）或最小上界"""
    if lower:
        cands = np.flatnonzero(leq[:, a] & leq[:, b])
        for m in cands:
            if leq[cands, m].all():
                return int(m)
    else:
        cands = np.flatnonzero(leq[a, :] & leq[b, :])
        for m in cands:
            if leq[m, cands].all():
                return int(m)
    return None


def lattice_from_order(leq: Any) -> FiniteDistLattice:
    """由偏序矩阵计算交、并、蕴涵表

    Args:
        leq: n×n 布尔矩阵，leq[a][b] 表示 a ≤ b

    Returns:
        FiniteDistLattice

    Raises:
        NotALattice: 不是偏序，或某对元素缺少交/并，或没有最小/最大元
        NotDistributive: 分配律不成立（给出见证三元组）
    """
    order = np.asarray(leq, dtype=bool)
    n = order.shape[0]
    if order.ndim != 2 or order.shape != (n, n) or n == 0:
        raise NotALattice(0, 0, "合法的方阵")
    for a in range(n):
        if not order[a, a]:
            raise NotALattice(a, a, "自反性")
    sym = np.argwhere(order & order.T & ~np.eye(n, dtype=bool))
    if len(sym):
        a, b = (int(v) for v in sym[0])
        raise NotALattice(a, b, "反对称性")
    # a ≤ b ≤ c 但 a ≰ c
    trans = np.argwhere((order.astype(np.int64) @ order.astype(np.int64) > 0) & ~order)
    if len(trans):
        a, c = (int(v) for v in trans[0])
        raise NotALattice(a, c, "传递性")

    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            m = _bound(order, a, b, lower=True)
            if m is None:
                raise NotALattice(a, b, "最大下界")
            j = _bound(order, a, b, lower=False)
            if j is None:
                raise NotALattice(a, b, "最小上界")
            meet[a, b] = meet[b, a] = m
            join[a, b] = join[b, a] = j

    bottoms = np.flatnonzero(order.all(axis=1))
    tops = np.flatnonzero(order.all(axis=0))
    if not len(bottoms) or not len(tops):
        raise NotALattice(0, 0, "最小元或最大元")

    # a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)
    lhs = meet[np.arange(n)[:, None, None], join[None, :, :]]
    rhs = join[meet[:, :, None], meet[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NotDistributive(a, b, c)

    # imp(a, b) = 满足 a ∧ c ≤ b 的最大 c，即所有这样的 c 的并
    imp = np.zeros((n, n), dtype=np.int64)
    bottom = int(bottoms[0])
    for a in range(n):
        for b in range(n):
            best = bottom
            for c in np.flatnonzero(order[meet[a, :], b]):
                best = int(join[best, c])
            imp[a, b] = best
    return FiniteDistLattice(order, meet, join, imp, bottom, int(tops[0]))


@dataclass(frozen=True, eq=False)
class GCAlgebra:
    """分配格加算子对 (f, g)；labels 为可选的元素说明（复代数中为上集）"""
    lattice: FiniteDistLattice
    f: np.ndarray
    g: np.ndarray
    labels: Optional[tuple[str, ...]] = None

    @classmethod
    def create(cls, leq: Any, f: Any, g: Any, labels: Optional[tuple[str, ...]] = None) -> "GCAlgebra":
        lattice = lattice_from_order(leq)
        f_arr = np.asarray(f, dtype=np.int64)
        g_arr = np.asarray(g, dtype=np.int64)
        n = lattice.size
        for name, table in (("f", f_arr), ("g", g_arr)):
            if table.shape != (n,) or (table < 0).any() or (table >= n).any():
                raise NotALattice(0, 0, f"合法的 {name} 表（长度 {n}，取值 0..{n - 1}）")
        return cls(lattice, f_arr, g_arr, labels)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "leq": self.lattice.leq.astype(int).tolist(),
            "f": self.f.tolist(),
            "g": self.g.tolist(),
        }
        if self.labels is not None:
            data["elements"] = list(self.labels)
        return data


@dataclass
class AlgebraReport:
    """check_gc_operators 的结果"""
    normality: list[str] = field(default_factory=list)
    additivity: list[str] = field(default_factory=list)
    co_normality: list[str] = field(default_factory=list)
    multiplicativity: list[str] = field(default_factory=list)
    galois: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.normality or self.additivity or self.co_normality
                    or self.multiplicativity or self.galois)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "normality": self.normality,
            "additivity": self.additivity,
            "co_normality": self.co_normality,
            "multiplicativity": self.multiplicativity,
            "galois": self.galois,
        }


def check_gc_operators(alg: GCAlgebra) -> AlgebraReport:
    """检查 f 加性且正规、g 乘性且余正规、f ⊣ g

    加性/乘性可由 Galois 性质推出，这里分别报告以便交叉验证。
    """
    lat = alg.lattice
    f, g = alg.f, alg.g
    leq = lat.leq
    report = AlgebraReport()
    if f[lat.bottom] != lat.bottom:
        report.normality.append(f"f({lat.bottom}) = {int(f[lat.bottom])} ≠ {lat.bottom}")
    if g[lat.top] != lat.top:
        report.co_normality.append(f"g({lat.top}) = {int(g[lat.top])} ≠ {lat.top}")
    for a, b in np.argwhere(f[lat.join] != lat.join[f[:, None], f[None, :]]):
        if a <= b:
            report.additivity.append(f"f({a} ∨ {b}) ≠ f({a}) ∨ f({b})")
    for a, b in np.argwhere(g[lat.meet] != lat.meet[g[:, None], g[None, :]]):
        if a <= b:
            report.multiplicativity.append(f"g({a} ∧ {b}) ≠ g({a}) ∧ g({b})")
    # f(a) ≤ b 当且仅当 a ≤ g(b)
    lower = leq[f[:, None], np.arange(lat.size)[None, :]]
    upper = leq[np.arange(lat.size)[:, None], g[None, :]]
    for a, b in np.argwhere(lower != upper):
        report.galois.append(f"a={a}, b={b}: f(a) ≤ b 为 {bool(lower[a, b])}，a ≤ g(b) 为 {bool(upper[a, b])}")
    return report


def eval_formula(alg: GCAlgebra, assignment: Mapping[str, int], f: Formula) -> int:
    """同态求值：⊤ ↦ top，⊥ ↦ bottom，¬a = imp(a, bottom)，▲ ↦ f，▽ ↦ g

    按后序逐节点求值，相同子公式只算一次。

    Raises:
        UnassignedVariable: 变量未赋值
    """
    lat = alg.lattice
    values: dict[Formula, int] = {}
    for node in f.nodes():
        kind = type(node)
        if kind is Var:
            if node.name not in assignment:
                raise UnassignedVariable(node.name)
            value = int(assignment[node.name])
        elif kind is Top:
            value = lat.top
        elif kind is Bot:
            value = lat.bottom
        elif kind is Not:
            value = lat.neg(values[node.child])
        elif kind is Up:
            value = int(alg.f[values[node.child]])
        elif kind is Down:
            value = int(alg.g[values[node.child]])
        elif kind is And:
            value = int(lat.meet[values[node.left], values[node.right]])
        elif kind is Or:
            value = int(lat.join[values[node.left], values[node.right]])
        elif kind is Imp:
            value = int(lat.imp[values[node.left], values[node.right]])
        else:
            raise TypeError(f"未知的公式类型: {kind.__name__}")
        values[node] = value
    return values[f]


def algebra_assignments(alg: GCAlgebra, variables: list[str], budget: int) -> Iterator[dict[str, int]]:
    needed = alg.lattice.size ** len(variables)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    for combo in itertools.product(range(alg.lattice.size), repeat=len(variables)):
        yield dict(zip(variables, combo))


def failing_assignment(alg: GCAlgebra, f: Formula, budget: int = DEFAULT_ALGEBRA_BUDGET) -> Optional[dict[str, int]]:
    """第一个使 f 的值不为 top 的赋值；没有时返回 None"""
    for assignment in algebra_assignments(alg, sorted(f.variables()), budget):
        if eval_formula(alg, assignment, f) != alg.lattice.top:
            return assignment
    return None


def valid_in_algebra(alg: GCAlgebra, f: Formula, budget: int = DEFAULT_ALGEBRA_BUDGET) -> bool:
    """所有赋值下 f 的值都是 top

    Raises:
        BudgetExceeded: |元素|^|变量| 超出预算
    """
    return failing_assignment(alg, f, budget) is None


def complex_algebra(frame: KripkeFrame) -> GCAlgebra:
    """框架的复代数

    元素为 (X, ≤) 的上集，顺序与 frame.upsets 相同，格序为包含；
    f(U) = {x | ∃y ∈ U, x R y}，g(U) = {x | ∀y, y R x ⇒ y ∈ U}。
    由 (★) 两者的像仍是上集。
    """
    ups = list(frame.upsets)
    position = {u: i for i, u in enumerate(ups)}
    n = len(ups)
    leq = np.array([[(u & ~v) == 0 for v in ups] for u in ups], dtype=bool)
    full = frame.full_mask
    pred = frame.r_pred
    f_table = []
    g_table = []
    for u in ups:
        fu = sum(1 << x for x in range(frame.size) if frame.r[x] & u)
        gu = sum(1 << x for x in range(frame.size) if not pred[x] & (full & ~u))
        f_table.append(position[fu])
        g_table.append(position[gu])
    labels = tuple("{" + ",".join(frame.worlds[i] for i in bits(u)) + "}" for u in ups)
    logger.debug(f"复代数: {frame.size} 个世界 → {n} 个上集")
    return GCAlgebra.create(leq, f_table, g_table, labels)
