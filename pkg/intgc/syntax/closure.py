"""
子公式与闭包集

- subformulas: Sub(A)，后序、去重
- closure_basis: Γ = Sub(A) ∪ {▽▲B | ▲B ∈ Sub(A)} ∪ {▲▽B | ▽B ∈ Sub(A)}
- in_sigma: 无穷集 Σ 的成员判定（剥离交替前缀后落到 Γ）
- normalize / star: 头部改写 ▲▽▲X ⇒ ▲X、▽▲▽X ⇒ ▽X 至不动点，得到 Γ 中的代表元
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..errors import NormalFormOutsideGamma, NotInSigma
from .formula import Down, Formula, Up, Var


def _dedupe(items: Iterable[Formula]) -> tuple[Formula, ...]:
    seen: set[Formula] = set()
    result: list[Formula] = []
    for item in items:
        if item not in seen:
            seen.add(item)
            result.append(item)
    return tuple(result)


def subformulas(f: Formula) -> tuple[Formula, ...]:
    """Sub(f)：后序遍历，按首次出现去重，包含 f 本身"""
    return tuple(f.nodes())


@dataclass(frozen=True)
class ClosureBasis:
    """根公式 A 及其 Sub(A)、Γ"""
    root: Formula
    sub: tuple[Formula, ...]
    gamma: tuple[Formula, ...]
    gamma_index: dict[Formula, int] = field(compare=False, repr=False)
    sub_set: frozenset[Formula] = field(compare=False, repr=False, default=frozenset())

    def index(self, f: Formula) -> int:
        """f 在 Γ 中的位置"""
        try:
            return self.gamma_index[f]
        except KeyError:
            raise NormalFormOutsideGamma(f, f) from None

    def in_gamma(self, f: Formula) -> bool:
        return f in self.gamma_index

    def in_sub(self, f: Formula) -> bool:
        return f in self.sub_set

    def variables(self) -> tuple[str, ...]:
        """Γ 中出现的变量，按 Γ 顺序"""
        return tuple(g.name for g in self.gamma if isinstance(g, Var))


def closure_basis(root: Formula) -> ClosureBasis:
    """计算 Sub(A) 与 Γ

    Γ 的顺序：先是 Sub(A) 的后序，再依次追加由 Sub(A) 中模态公式派生的新成员。
    """
    sub = subformulas(root)
    extra: list[Formula] = []
    for b in sub:
        if isinstance(b, Up):
            extra.append(Down(b))
        elif isinstance(b, Down):
            extra.append(Up(b))
    gamma = _dedupe(list(sub) + extra)
    return ClosureBasis(
        root=root,
        sub=sub,
        gamma=gamma,
        gamma_index={g: i for i, g in enumerate(gamma)},
        sub_set=frozenset(sub),
    )


def _box_family(basis: ClosureBasis, b: Formula) -> bool:
    """b = (▽▲)^n ▽C 且 ▽C ∈ Γ"""
    while isinstance(b, Down):
        if basis.in_gamma(b):
            return True
        inner = b.child
        if isinstance(inner, Up) and isinstance(inner.child, Down):
            b = inner.child
        else:
            return False
    return False


def _diamond_family(basis: ClosureBasis, b: Formula) -> bool:
    """b = (▲▽)^n ▲C 且 ▲C ∈ Γ"""
    while isinstance(b, Up):
        if basis.in_gamma(b):
            return True
        inner = b.child
        if isinstance(inner, Down) and isinstance(inner.child, Up):
            b = inner.child
        else:
            return False
    return False


def in_sigma(basis: ClosureBasis, b: Formula) -> bool:
    """Σ 成员判定

    Σ = Sub(A) 再加四个前缀族：
    (▽▲)^n▽C、▲(▽▲)^n▽C（▽C ∈ Γ）以及 (▲▽)^n▲C、▽(▲▽)^n▲C（▲C ∈ Γ）。
    每次剥离都缩短公式，必然终止。
    """
    if basis.in_sub(b):
        return True
    if _box_family(basis, b) or _diamond_family(basis, b):
        return True
    if isinstance(b, Up) and _box_family(basis, b.child):
        return True
    if isinstance(b, Down) and _diamond_family(basis, b.child):
        return True
    return False


def normalize(b: Formula) -> Formula:
    """头部改写至不动点：▲▽▲X ⇒ ▲X，▽▲▽X ⇒ ▽X

    两条规则不会同时作用于同一头部，结果唯一；每步缩短公式，必然终止。
    """
    while True:
        if isinstance(b, Up) and isinstance(b.child, Down) and isinstance(b.child.child, Up):
            b = b.child.child
        elif isinstance(b, Down) and isinstance(b.child, Up) and isinstance(b.child.child, Down):
            b = b.child.child
        else:
            return b


def star(basis: ClosureBasis, b: Formula) -> Formula:
    """B*：Σ 成员在 Γ 中的唯一代表元

    Args:
        basis: 闭包基
        b: Σ 中的公式

    Returns:
        normalize(b)，保证属于 Γ

    Raises:
        NotInSigma: b 不在 Σ 中
        NormalFormOutsideGamma: 范式不在 Γ 中（闭包计算错误，正常不可达）
    """
    if not in_sigma(basis, b):
        raise NotInSigma(b)
    result = normalize(b)
    if not basis.in_gamma(result):
        raise NormalFormOutsideGamma(b, result)
    return result


def star_case(basis: ClosureBasis, b: Formula) -> Optional[tuple[str, Formula]]:
    """按五分情形表给 b 分类，返回 (情形编号, 表中给出的 B*)

    取最长的前缀剥离。情形 (iii)/(v) 要求最内层 Γ 成员形如 ▽▲D / ▲▽D，
    不满足时（例如 ▽▲C 且 C 不以 ▽ 开头）返回 None。
    """
    if basis.in_sub(b) and not isinstance(b, (Up, Down)):
        return "i", b

    def strip_box(x: Formula) -> Optional[Formula]:
        # 剥到最内层仍在 Γ 中的 ▽C
        found = None
        while isinstance(x, Down):
            if basis.in_gamma(x):
                found = x
            inner = x.child
            if isinstance(inner, Up) and isinstance(inner.child, Down):
                x = inner.child
            else:
                break
        return found

    def strip_diamond(x: Formula) -> Optional[Formula]:
        found = None
        while isinstance(x, Up):
            if basis.in_gamma(x):
                found = x
            inner = x.child
            if isinstance(inner, Down) and isinstance(inner.child, Up):
                x = inner.child
            else:
                break
        return found

    core = strip_box(b)
    if core is not None:
        return "ii", core
    core = strip_diamond(b)
    if core is not None:
        return "iv", core
    if isinstance(b, Up):
        core = strip_box(b.child)
        if core is not None and isinstance(core.child, Up) and basis.in_sub(core.child):
            return "iii", core.child
    if isinstance(b, Down):
        core = strip_diamond(b.child)
        if core is not None and isinstance(core.child, Down) and basis.in_sub(core.child):
            return "v", core.child
    return None


def sigma_members(basis: ClosureBasis, layers: int) -> tuple[Formula, ...]:
    """列举 Σ 中前缀层数不超过 layers 的成员（Sub(A) 在前）"""
    members: list[Formula] = list(basis.sub)
    for g in basis.gamma:
        if isinstance(g, Down):
            x = g
            for _ in range(layers + 1):
                members.append(x)
                members.append(Up(x))
                x = Down(Up(x))
        elif isinstance(g, Up):
            x = g
            for _ in range(layers + 1):
                members.append(x)
                members.append(Down(x))
                x = Up(Down(x))
    return _dedupe(members)
