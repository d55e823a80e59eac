"""IntGC 异常定义

诊断类操作（check_frame / check_gc_operators / verify_filtration）只返回报告，不抛异常；
其余操作出错时抛出 IntGCError 的子类，命令行统一转换为退出码 2。
"""

from typing import Any


class IntGCError(Exception):
    """所有 IntGC 错误的基类"""


class FormulaSyntaxError(IntGCError):
    """公式语法错误，offset 为 UTF-8 输入中的字节偏移"""

    def __init__(self, offset: int, expected: str, found: str = ""):
        self.offset = offset
        self.expected = expected
        self.found = found
        detail = f"，实际为 {found!r}" if found else ""
        super().__init__(f"语法错误: 偏移 {offset} 处期望 {expected}{detail}")


class NotInSigma(IntGCError):
    """公式不属于 Σ(A)"""

    def __init__(self, formula: Any):
        self.formula = formula
        super().__init__(f"公式不在 Σ 中: {formula}")


class NormalFormOutsideGamma(IntGCError):
    """Σ 成员的范式不在 Γ 中，说明闭包计算有误（正常情况下不可达）"""

    def __init__(self, formula: Any, normal_form: Any):
        self.formula = formula
        self.normal_form = normal_form
        super().__init__(f"范式不在 Γ 中: {formula} ⇒ {normal_form}")


class UnknownWorld(IntGCError):
    def __init__(self, world: str):
        self.world = world
        super().__init__(f"未知的世界: {world}")


class BudgetExceeded(IntGCError):
    """枚举规模超出配置的预算"""

    def __init__(self, needed: int, limit: int, what: str = "赋值"):
        self.needed = needed
        self.limit = limit
        super().__init__(f"{what}数量 {needed} 超出预算 {limit}")


class ModelValidationError(IntGCError):
    """模型不满足框架条件或赋值不持久"""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        shown = "; ".join(self.problems[:5])
        more = f" 等共 {len(self.problems)} 处" if len(self.problems) > 5 else ""
        super().__init__(f"模型校验失败: {shown}{more}")


class NotALattice(IntGCError):
    def __init__(self, a: int, b: int, missing: str):
        self.witness = (a, b)
        super().__init__(f"不是格: 元素 {a}, {b} 没有{missing}")


class NotDistributive(IntGCError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"不满足分配律: a={a}, b={b}, c={c}")


class UnassignedVariable(IntGCError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"变量未赋值: {name}")


class SchemaError(IntGCError):
    """JSON 输入不符合约定格式"""


class ConfigError(IntGCError):
    """配置文件无法读取或不是合法的 TOML"""


class UsageError(IntGCError):
    """命令行参数错误"""
