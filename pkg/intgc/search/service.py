"""
反模型搜索服务

find_countermodel 按世界数 1..max_worlds、再按 enumerate_frames 的顺序、
再按上集赋值的字典序穷举模型，返回第一个反驳 A 的 (模型, 世界)。
decide_bounded 在找到反模型后附加经过验证的过滤商模型作为证书。

搜索只回答"在 n 个世界内有/没有反模型"，从不声称公式有效：
只有 n ≥ 2^|Γ| 时"没有反模型"才蕴涵有效，而这个界通常不可达。
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from ..logger import get_logger
from ..semantics.filtration import Filtration, FiltrationReport, build_filtration, verify_filtration
from ..semantics.io import model_to_dict
from ..semantics.kripke import KripkeModel, bits, extension_mask, satisfies
from ..syntax.closure import closure_basis
from ..syntax.formula import Formula
from .enumerate import enumerate_frames

logger = get_logger("IntGC.search")


@dataclass(frozen=True)
class SearchBudget:
    """搜索预算；max_millis 只在两个框架之间检查"""
    max_worlds: int = 3
    max_models: int = 1_000_000
    max_millis: int = 60_000
    seed: int = 0

    def __post_init__(self):
        for name in ("max_worlds", "max_models", "max_millis"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} 必须为正: {getattr(self, name)}")
        if self.seed < 0 or self.seed >= 1 << 64:
            raise ValueError(f"seed 必须是 64 位非负整数: {self.seed}")


@dataclass
class SearchStats:
    frames: int = 0
    models: int = 0
    frames_by_size: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "frames": self.frames,
            "models": self.models,
            "frames_by_size": {str(k): v for k, v in sorted(self.frames_by_size.items())},
        }


@dataclass(frozen=True)
class CountermodelFound:
    model: KripkeModel
    world: str


@dataclass(frozen=True)
class NoCountermodelUpTo:
    bound: int


@dataclass(frozen=True)
class BudgetExhausted:
    """progress 记录已完整搜索过的世界数与停止原因"""
    completed_worlds: int
    reason: str


Verdict = Union[CountermodelFound, NoCountermodelUpTo, BudgetExhausted]


@dataclass
class SearchOutcome:
    formula: Formula
    verdict: Verdict
    stats: SearchStats

    @property
    def found(self) -> bool:
        return isinstance(self.verdict, CountermodelFound)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"formula": str(self.formula)}
        verdict = self.verdict
        if isinstance(verdict, CountermodelFound):
            data["verdict"] = "countermodel_found"
            data["world"] = verdict.world
            data["model"] = model_to_dict(verdict.model)
        elif isinstance(verdict, NoCountermodelUpTo):
            data["verdict"] = "no_countermodel_up_to"
            data["bound"] = verdict.bound
        else:
            data["verdict"] = "budget_exhausted"
            data["progress"] = {"completed_worlds": verdict.completed_worlds, "reason": verdict.reason}
        data["stats"] = self.stats.to_dict()
        return data


def find_countermodel(a: Formula, budget: SearchBudget, min_worlds: int = 1) -> SearchOutcome:
    """在 min_worlds..max_worlds 个世界内按确定顺序寻找反模型

    找到的模型会用 satisfies 独立复核后才返回。
    """
    if min_worlds < 1:
        raise ValueError(f"min_worlds 必须为正: {min_worlds}")
    variables = sorted(a.variables())
    stats = SearchStats()
    started = time.monotonic()
    deadline = started + budget.max_millis / 1000

    for n in range(min_worlds, budget.max_worlds + 1):
        stats.frames_by_size[n] = 0
        # 只有 min_worlds 起完整搜完的规模才算已完成
        completed = n - 1 if n > min_worlds else 0
        for frame in enumerate_frames(n):
            if time.monotonic() > deadline:
                logger.info(f"搜索超时: {budget.max_millis} ms，已完成 {completed} 个世界")
                return SearchOutcome(a, BudgetExhausted(completed, "timeout"), stats)
            stats.frames += 1
            stats.frames_by_size[n] += 1
            full = frame.full_mask
            for combo in itertools.product(frame.upsets, repeat=len(variables)):
                if stats.models >= budget.max_models:
                    logger.info(f"模型数达到上限 {budget.max_models}，已完成 {completed} 个世界")
                    return SearchOutcome(a, BudgetExhausted(completed, "max_models"), stats)
                stats.models += 1
                valuation = dict(zip(variables, combo))
                ext = extension_mask(frame, valuation, a)
                if ext == full:
                    continue
                model = KripkeModel(frame, valuation)
                world = frame.worlds[next(bits(full & ~ext))]
                if satisfies(model, world, a):
                    logger.error(f"复核失败，忽略该模型: {model_to_dict(model)} @ {world}")
                    continue
                logger.info(f"找到反模型: {n} 个世界，在 {world} 处反驳 {a}")
                return SearchOutcome(a, CountermodelFound(model, world), stats)
        logger.debug(f"{n} 个世界搜索完毕: {stats.frames_by_size[n]} 个框架，累计 {stats.models} 个模型")

    logger.info(f"{budget.max_worlds} 个世界内没有反模型")
    return SearchOutcome(a, NoCountermodelUpTo(budget.max_worlds), stats)


@dataclass
class Certificate:
    """反模型的过滤商：经过五项验证，并在 refuted_class 处仍反驳公式"""
    filtration: Filtration
    report: FiltrationReport
    refuted_class: str
    still_refutes: bool

    @property
    def verified(self) -> bool:
        return self.report.passed and self.still_refutes

    def to_dict(self, include_quotient: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "verified": self.verified,
            "classes": len(self.filtration.classes),
            "refuted_class": self.refuted_class,
            "still_refutes": self.still_refutes,
        }
        if include_quotient:
            data["quotient"] = self.filtration.to_dict()
            data["report"] = self.report.to_dict()
        return data


@dataclass
class Decision:
    outcome: SearchOutcome
    gamma_size: int
    certificate: Optional[Certificate] = None

    @property
    def class_bound(self) -> int:
        return 2 ** self.gamma_size

    def to_dict(self, emit_filtration: bool = False) -> dict[str, Any]:
        data = self.outcome.to_dict()
        data["gamma_size"] = self.gamma_size
        data["class_bound"] = self.class_bound
        if self.certificate is not None:
            data["certificate"] = self.certificate.to_dict(include_quotient=emit_filtration)
        if not self.outcome.found:
            data["note"] = (
                f"未找到反模型不等于有效：只有搜索到 2^|Γ| = {self.class_bound} 个世界时才能据此判定有效"
            )
        return data


def decide_bounded(a: Formula, budget: SearchBudget, min_worlds: int = 1) -> Decision:
    """有界判定：反模型搜索，找到时附加过滤证书"""
    gamma_size = len(closure_basis(a).gamma)
    outcome = find_countermodel(a, budget, min_worlds)
    if not isinstance(outcome.verdict, CountermodelFound):
        return Decision(outcome, gamma_size)

    found = outcome.verdict
    filt = build_filtration(found.model, a)
    report = verify_filtration(filt)
    cls = filt.class_name(filt.class_of[found.world])
    still_refutes = not satisfies(filt.to_model(), cls, a)
    if not (report.passed and still_refutes):
        logger.error(f"过滤证书验证失败: {report.to_dict()}")
    return Decision(outcome, gamma_size, Certificate(filt, report, cls, still_refutes))
