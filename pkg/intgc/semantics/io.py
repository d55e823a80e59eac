"""
模型与代数的 JSON 格式

读取用 json5（允许注释与尾逗号），结构校验用 pydantic；
输出为键顺序固定的规范 JSON，源模型与商模型共用一种格式。
"""

from typing import Any, Optional

import json5
from pydantic import BaseModel, ValidationError

from ..errors import ModelValidationError, SchemaError
from ..logger import get_logger
from .algebra import GCAlgebra
from .kripke import KripkeFrame, KripkeModel, check_frame, close_r, transitive_closure

logger = get_logger("IntGC.io")


class ModelDocument(BaseModel):
    """{"worlds": [...], "leq": [[x, y], ...], "r": [[x, y], ...], "val": {"p": [...]}}"""
    worlds: list[str]
    leq: list[tuple[str, str]] = []
    r: list[tuple[str, str]] = []
    val: dict[str, list[str]] = {}
    class_of: Optional[dict[str, str]] = None
    gamma: Optional[list[str]] = None


class AlgebraDocument(BaseModel):
    """{"leq": [[...]], "f": [...], "g": [...]}，元素隐式为 0..n-1"""
    leq: list[list[bool]]
    f: list[int]
    g: list[int]
    elements: Optional[list[str]] = None


def _decode(text: str, what: str) -> Any:
    try:
        return json5.loads(text)
    except ValueError as e:
        raise SchemaError(f"{what} 不是合法的 JSON: {e}") from e


def parse_model_document(text: str) -> ModelDocument:
    try:
        return ModelDocument.model_validate(_decode(text, "模型文件"))
    except ValidationError as e:
        raise SchemaError(f"模型文件格式错误: {e}") from e


def parse_algebra_document(text: str) -> AlgebraDocument:
    try:
        return AlgebraDocument.model_validate(_decode(text, "代数文件"))
    except ValidationError as e:
        raise SchemaError(f"代数文件格式错误: {e}") from e


def model_from_document(doc: ModelDocument, close_r_flag: bool = False, close_valuation: bool = False) -> KripkeModel:
    """由文档构造模型

    leq 是种子，载入时取自反传递闭包；r 在闭合后的 leq 上必须满足 (★)，
    除非 close_r_flag 为真（此时取 (★) 闭包）。

    Raises:
        ModelValidationError: 未知世界、(★) 不成立或赋值不持久
    """
    seed = KripkeFrame.from_pairs(doc.worlds, doc.leq, doc.r)
    leq = tuple(transitive_closure(list(seed.leq)))
    if close_r_flag:
        r = close_r(leq, seed.r)
        if r != seed.r:
            logger.warning("已对 r 取 (★) 闭包")
        frame = KripkeFrame(seed.worlds, leq, r, seed.index)
    else:
        frame = KripkeFrame(seed.worlds, leq, seed.r, seed.index)
        report = check_frame(frame)
        if not report.ok:
            raise ModelValidationError(report.problems())
    for name, worlds in doc.val.items():
        unknown = [w for w in worlds if w not in frame.index]
        if unknown:
            raise ModelValidationError([f"赋值 {name} 中出现未知世界: {unknown}"])
    return KripkeModel.create(frame, doc.val, close_valuation=close_valuation)


def load_model(text: str, close_r_flag: bool = False, close_valuation: bool = False) -> KripkeModel:
    return model_from_document(parse_model_document(text), close_r_flag, close_valuation)


def model_to_dict(model: KripkeModel) -> dict[str, Any]:
    """输出完整（已闭合）的关系，按世界顺序排列"""
    frame = model.frame
    return {
        "worlds": list(frame.worlds),
        "leq": [list(p) for p in frame.leq_pairs()],
        "r": [list(p) for p in frame.r_pairs()],
        "val": {name: list(frame.worlds_of(mask)) for name, mask in sorted(model.valuation.items())},
    }


def load_algebra(text: str) -> GCAlgebra:
    """读取代数 JSON 并构造 GCAlgebra

    Raises:
        SchemaError: JSON 或结构错误
        NotALattice / NotDistributive: leq 不是有界分配格
    """
    doc = parse_algebra_document(text)
    labels = tuple(doc.elements) if doc.elements is not None else None
    if labels is not None and len(labels) != len(doc.leq):
        raise SchemaError(f"elements 长度 {len(labels)} 与元素数 {len(doc.leq)} 不一致")
    return GCAlgebra.create(doc.leq, doc.f, doc.g, labels)
