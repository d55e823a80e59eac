"""
IntGC 判定工具包

带 Galois 连接 ▲/▽ 的直觉主义命题逻辑：公式解析、Kripke 模型检查、
经由 Σ 的过滤、有界反模型搜索以及有限代数语义。
"""

from .errors import IntGCError
from .plugin import ConfigField, IntGCToolkit
from .search import SearchBudget, decide_bounded, find_countermodel
from .semantics import KripkeModel, build_filtration, satisfies, verify_filtration
from .syntax import Formula, closure_basis, parse, render

__version__ = "1.0.0"
