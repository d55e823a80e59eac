"""IntGC 共享工具函数

提取 commands 中的重复模式：
- build_search_budget: 由配置与命令行覆盖值构建 SearchBudget
- build_random_params: 由配置构建 RandomModelParams
- read_input: 读取文件或 stdin（路径为 "-"）
- load_model_file / load_algebra_file: 读取并校验模型、代数 JSON
- dump_json: 规范 JSON 输出
"""

import json
from pathlib import Path
from typing import Any, BinaryIO, Callable, Optional, TextIO, Union

from .errors import SchemaError
from .logger import get_logger
from .search import RandomModelParams, SearchBudget
from .semantics import GCAlgebra, KripkeModel, load_algebra, load_model

logger = get_logger("IntGC.helpers")

InputStream = Union[BinaryIO, TextIO, None]


def build_search_budget(
    get_config_fn: Callable,
    max_worlds: Optional[int] = None,
    max_models: Optional[int] = None,
    timeout_ms: Optional[int] = None,
    seed: Optional[int] = None,
) -> SearchBudget:
    """构建搜索预算，命令行给出的值优先于配置

    Args:
        get_config_fn: 配置读取函数，签名 (key, default) -> value
        max_worlds / max_models / timeout_ms / seed: 命令行覆盖值，None 表示使用配置

    Raises:
        ValueError: 预算不是正数
    """

    def pick(override: Optional[int], key: str, default: int) -> int:
        return override if override is not None else get_config_fn(key, default)

    budget = SearchBudget(
        max_worlds=pick(max_worlds, "search.max_worlds", 3),
        max_models=pick(max_models, "search.max_models", 1_000_000),
        max_millis=pick(timeout_ms, "search.timeout_ms", 60_000),
        seed=pick(seed, "search.seed", 0),
    )
    logger.debug(f"搜索预算: {budget}")
    return budget


def build_random_params(get_config_fn: Callable, variables: tuple[str, ...] = ("p", "q")) -> RandomModelParams:
    return RandomModelParams(
        min_worlds=get_config_fn("random.min_worlds", 1),
        max_worlds=get_config_fn("random.max_worlds", 6),
        leq_density=get_config_fn("random.leq_density", 0.3),
        r_density=get_config_fn("random.r_density", 0.3),
        val_density=get_config_fn("random.val_density", 0.4),
        variables=variables,
    )


def read_input(path: str, stdin: InputStream = None) -> str:
    """读取 UTF-8 文本；path 为 "-" 时读取 stdin"""
    if path == "-":
        if stdin is None:
            raise SchemaError("没有可读取的 stdin")
        data = stdin.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    return Path(path).read_text(encoding="utf-8")


def load_model_file(
    path: str,
    stdin: InputStream = None,
    close_r: bool = False,
    close_valuation: bool = False,
) -> KripkeModel:
    model = load_model(read_input(path, stdin), close_r_flag=close_r, close_valuation=close_valuation)
    logger.debug(f"已读取模型 {path}: {model.frame.size} 个世界")
    return model


def load_algebra_file(path: str, stdin: InputStream = None) -> GCAlgebra:
    alg = load_algebra(read_input(path, stdin))
    logger.debug(f"已读取代数 {path}: {alg.lattice.size} 个元素")
    return alg


def dump_json(data: Any) -> str:
    """固定格式的 JSON 文本（以换行结尾）"""
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"
