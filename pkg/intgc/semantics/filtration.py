"""
经由 Σ 的过滤

∼、≤ᶠ 在 Γ 上量化，Rᶠ 通过有限的范式对集合 P（或等价的 Q）计算：
每个 Σ 成员在每个世界上都与其 Γ 范式同真假，因此量化范围可以从 Σ 缩到 Γ。
类的运算只读存储的签名，从不依赖任意选取的代表世界。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from ..errors import ModelValidationError
from ..logger import get_logger
from ..syntax.closure import ClosureBasis, closure_basis, normalize
from ..syntax.formula import Down, Formula, Up, Var
from .kripke import (
    KripkeFrame, KripkeModel, check_frame, extension_mask, satisfies,
)

logger = get_logger("IntGC.filtration")

Signature = tuple[bool, ...]
FormulaPair = tuple[Formula, Formula]


def _gamma_extensions(model: KripkeModel, basis: ClosureBasis) -> list[int]:
    memo: dict[Formula, int] = {}
    return [extension_mask(model.frame, model.valuation, g, memo) for g in basis.gamma]


def signature(model: KripkeModel, x: str, basis: ClosureBasis) -> Signature:
    """x 在 Γ 各公式上的真值向量，下标即 gamma_index

    Raises:
        UnknownWorld: x 不在模型中
    """
    i = model.frame.world_index(x)
    return tuple(bool((ext >> i) & 1) for ext in _gamma_extensions(model, basis))


def _pairs(basis: ClosureBasis, raw: Iterable[FormulaPair]) -> tuple[FormulaPair, ...]:
    """规范化、校验属于 Γ、去重（保持首次出现顺序）"""
    result: list[FormulaPair] = []
    seen: set[FormulaPair] = set()
    for a, b in raw:
        pair = (normalize(a), normalize(b))
        basis.index(pair[0])
        basis.index(pair[1])
        if pair not in seen:
            seen.add(pair)
            result.append(pair)
    return tuple(result)


def rf_pair_basis(basis: ClosureBasis) -> tuple[FormulaPair, ...]:
    """Σ 中全部 (▽B, B) 的范式

    (▽▲)^n▽C 族在 n=0 时给出 (▽C, C)，n≥1 时给出 (▽C, ▲▽C)；
    ▽(▲▽)^n▲C 族给出 (▽▲C, ▲C)。
    """
    raw: list[FormulaPair] = []
    for g in basis.gamma:
        if isinstance(g, Down):
            raw.append((g, g.child))
            raw.append((g, Up(g)))
    for g in basis.gamma:
        if isinstance(g, Up):
            raw.append((Down(g), g))
    return _pairs(basis, raw)


def rf_pair_basis_alt(basis: ClosureBasis) -> tuple[FormulaPair, ...]:
    """Σ 中全部 (B, ▲B) 的范式（Rᶠ 的另一刻画）"""
    raw: list[FormulaPair] = []
    for g in basis.gamma:
        if isinstance(g, Up):
            raw.append((g.child, g))
            raw.append((Down(g), g))
    for g in basis.gamma:
        if isinstance(g, Down):
            raw.append((g, Up(g)))
    return _pairs(basis, raw)


def _relation_from_pairs(
        basis: ClosureBasis,
        classes: tuple[Signature, ...],
        pairs: tuple[FormulaPair, ...],
) -> frozenset[tuple[int, int]]:
    """c R d 当且仅当对每个 (φ, ψ)：d ⊨ φ 蕴涵 c ⊨ ψ"""
    idx = [(basis.index(a), basis.index(b)) for a, b in pairs]
    return frozenset(
        (c, d)
        for c, sig_c in enumerate(classes)
        for d, sig_d in enumerate(classes)
        if all(sig_c[j] or not sig_d[i] for i, j in idx)
    )


@dataclass(frozen=True)
class Filtration:
    """模型经由 Σ(A) 的过滤"""
    basis: ClosureBasis
    source: KripkeModel
    classes: tuple[Signature, ...]
    class_of: dict[str, int] = field(compare=False)
    leq_f: frozenset[tuple[int, int]] = frozenset()
    r_f: frozenset[tuple[int, int]] = frozenset()
    v_f: dict[str, frozenset[int]] = field(default_factory=dict, compare=False)

    @staticmethod
    def class_name(c: int) -> str:
        return f"c{c}"

    def class_names(self) -> tuple[str, ...]:
        return tuple(self.class_name(c) for c in range(len(self.classes)))

    def to_model(self) -> KripkeModel:
        """商模型，世界名为 c0, c1, ..."""
        names = self.class_names()
        frame = KripkeFrame.from_pairs(
            names,
            ((names[c], names[d]) for c, d in sorted(self.leq_f)),
            ((names[c], names[d]) for c, d in sorted(self.r_f)),
        )
        valuation = {
            p: frame.mask_of(names[c] for c in sorted(cs)) for p, cs in self.v_f.items()
        }
        return KripkeModel(frame, valuation)

    def to_dict(self) -> dict[str, Any]:
        """与模型 JSON 同构，附带 class_of 与 gamma"""
        names = self.class_names()
        return {
            "worlds": list(names),
            "leq": [[names[c], names[d]] for c, d in sorted(self.leq_f)],
            "r": [[names[c], names[d]] for c, d in sorted(self.r_f)],
            "val": {p: [names[c] for c in sorted(cs)] for p, cs in sorted(self.v_f.items())},
            "class_of": {w: names[c] for w, c in self.class_of.items()},
            "gamma": [str(g) for g in self.basis.gamma],
        }


def _sort_key(sig: Signature) -> int:
    # 按二进制数排序，下标 0 为最高位
    value = 0
    for bit in sig:
        value = (value << 1) | int(bit)
    return value


def build_filtration(model: KripkeModel, root: Formula) -> Filtration:
    """构造 model 经由 Σ(root) 的过滤

    Args:
        model: 通过框架检查且赋值持久的模型
        root: 目标公式 A

    Returns:
        Filtration：类按签名的二进制值排序

    Raises:
        ModelValidationError: 模型不是合法的 IntGC 模型
    """
    problems = check_frame(model.frame).problems() + model.persistence_problems()
    if problems:
        raise ModelValidationError(problems)

    basis = closure_basis(root)
    exts = _gamma_extensions(model, basis)
    world_sigs = {
        w: tuple(bool((ext >> i) & 1) for ext in exts)
        for i, w in enumerate(model.worlds)
    }
    classes = tuple(sorted(set(world_sigs.values()), key=_sort_key))
    position = {sig: c for c, sig in enumerate(classes)}
    class_of = {w: position[sig] for w, sig in world_sigs.items()}

    leq_f = frozenset(
        (c, d)
        for c, sig_c in enumerate(classes)
        for d, sig_d in enumerate(classes)
        if all(sig_d[i] or not sig_c[i] for i in range(len(sig_c)))
    )
    r_f = _relation_from_pairs(basis, classes, rf_pair_basis(basis))
    v_f = {
        p: frozenset(c for c, sig in enumerate(classes) if sig[basis.index(Var(p))])
        for p in basis.variables()
    }
    logger.debug(f"过滤完成: {model.frame.size} 个世界 → {len(classes)} 个类, |Γ|={len(basis.gamma)}")
    return Filtration(basis, model, classes, class_of, leq_f, r_f, v_f)


@dataclass
class FiltrationReport:
    """五项检查的结果，失败时附带见证"""
    preservation: list[str] = field(default_factory=list)
    frame: list[str] = field(default_factory=list)
    agreement: list[str] = field(default_factory=list)
    size_bound: list[str] = field(default_factory=list)
    alt_relation: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.preservation or self.frame or self.agreement or self.size_bound or self.alt_relation)

    def to_dict(self) -> dict[str, Any]:
        checks = {
            "preservation": self.preservation,
            "frame": self.frame,
            "agreement": self.agreement,
            "size_bound": self.size_bound,
            "alt_relation": self.alt_relation,
        }
        return {
            "passed": self.passed,
            "checks": {name: {"ok": not items, "witnesses": items} for name, items in checks.items()},
        }


def verify_filtration(filt: Filtration) -> FiltrationReport:
    """逐项验证过滤的性质

    1. x ≤ y ⇒ [x] ≤ᶠ [y]，x R y ⇒ [x] Rᶠ [y]
    2. 商结构是 Kripke 框架
    3. 对每个 B ∈ Γ 与世界 x：x ⊨ B 当且仅当 [x] ⊨ B
    4. 类数不超过 2^|Γ|
    5. 由 P 与 Q 计算的 Rᶠ 相同
    """
    report = FiltrationReport()
    source = filt.source
    frame = source.frame
    names = filt.class_names()
    cls = filt.class_of

    for x, y in frame.leq_pairs():
        if (cls[x], cls[y]) not in filt.leq_f:
            report.preservation.append(f"{x} ≤ {y} 但 {names[cls[x]]} ≰ᶠ {names[cls[y]]}")
    for x, y in frame.r_pairs():
        if (cls[x], cls[y]) not in filt.r_f:
            report.preservation.append(f"{x} R {y} 但缺少 {names[cls[x]]} Rᶠ {names[cls[y]]}")

    quotient = filt.to_model()
    report.frame.extend(check_frame(quotient.frame).problems())

    for g in filt.basis.gamma:
        for x in source.worlds:
            here = satisfies(source, x, g)
            there = satisfies(quotient, names[cls[x]], g)
            if here != there:
                report.agreement.append(f"{g}: {x} 处为 {here}，{names[cls[x]]} 处为 {there}")

    bound = 2 ** len(filt.basis.gamma)
    if len(filt.classes) > bound:
        report.size_bound.append(f"类数 {len(filt.classes)} 超过 2^|Γ| = {bound}")

    alt = _relation_from_pairs(filt.basis, filt.classes, rf_pair_basis_alt(filt.basis))
    for c, d in sorted(filt.r_f ^ alt):
        side = "仅 P" if (c, d) in filt.r_f else "仅 Q"
        report.alt_relation.append(f"({names[c]}, {names[d]}) {side}")

    if not report.passed:
        logger.warning(f"过滤验证未通过: {report.to_dict()['checks']}")
    return report


def is_isomorphic_quotient(first: Filtration, second: Filtration) -> bool:
    """两次过滤的商结构相同（签名、关系、赋值都一致）"""
    return (
            first.classes == second.classes
            and first.leq_f == second.leq_f
            and first.r_f == second.r_f
            and first.v_f == second.v_f
    )
