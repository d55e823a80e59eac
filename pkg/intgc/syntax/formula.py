"""
公式抽象语法树

IntGC 语言的九种构造：变量、⊤、⊥、¬、∧、∨、→、▲（<>）、▽（[]）。
所有节点都是不可变的 frozen dataclass，结构相等即集合成员判定。

哈希、大小与深度在构造时由子节点的缓存值算出，遍历、比较与序列化都不递归，
任意深的公式都不会触发递归上限。
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Iterator

# 变量名；true / false 是常量关键字
IDENT_PATTERN = re.compile(r"[a-z][a-zA-Z0-9_]*")
KEYWORDS = frozenset({"true", "false"})


@dataclass(frozen=True, eq=False)
class Formula:
    """公式基类"""

    def __post_init__(self):
        kids = self.children()
        key = (type(self).__name__, getattr(self, "name", None), *(child._hash for child in kids))
        object.__setattr__(self, "_hash", hash(key))
        object.__setattr__(self, "_size", 1 + sum(child._size for child in kids))
        object.__setattr__(self, "_depth", 1 + max((child._depth for child in kids), default=0))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        stack = [(self, other)]
        # 已比较过的节点对，共享子树只比较一次
        compared: set[tuple[int, int]] = set()
        while stack:
            a, b = stack.pop()
            if a is b or (id(a), id(b)) in compared:
                continue
            compared.add((id(a), id(b)))
            if type(a) is not type(b) or a._hash != b._hash or a._size != b._size:
                return False
            if isinstance(a, Var):
                if a.name != b.name:
                    return False
                continue
            stack.extend(zip(a.children(), b.children()))
        return True

    def children(self) -> tuple["Formula", ...]:
        return ()

    def variables(self) -> frozenset[str]:
        """公式中出现的全部变量名"""
        return frozenset(node.name for node in self.nodes() if isinstance(node, Var))

    def walk(self) -> Iterator["Formula"]:
        """后序遍历所有节点（含重复）"""
        stack: list[tuple[Formula, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                yield node
                continue
            stack.append((node, True))
            for child in reversed(node.children()):
                stack.append((child, False))

    def nodes(self) -> Iterator["Formula"]:
        """后序遍历，每个不同的子公式只在首次出现处给出一次

        与按首次出现去重的 walk 顺序相同，但不再展开已见过的子树，
        共享子树（例如 <-> 展开后的两个蕴涵）不会被重复遍历。
        """
        seen: set[Formula] = set()
        stack: list[tuple[Formula, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if node in seen:
                continue
            if expanded:
                seen.add(node)
                yield node
                continue
            stack.append((node, True))
            for child in reversed(node.children()):
                if child not in seen:
                    stack.append((child, False))

    def size(self) -> int:
        return self._size

    def depth(self) -> int:
        return self._depth

    def to_dict(self) -> dict[str, Any]:
        """转换为可 JSON 序列化的嵌套字典（相同子公式共用同一个字典）"""
        built: dict[Formula, dict[str, Any]] = {}
        for node in self.nodes():
            built[node] = node._node_dict(built)
        return built[self]

    def _node_dict(self, built: dict["Formula", dict[str, Any]]) -> dict[str, Any]:
        raise NotImplementedError

    def __str__(self) -> str:
        from .parser import render
        return render(self)


@dataclass(frozen=True, eq=False)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not IDENT_PATTERN.fullmatch(self.name) or self.name in KEYWORDS:
            raise ValueError(f"不合法的变量名: {self.name!r}")
        super().__post_init__()

    def _node_dict(self, built) -> dict[str, Any]:
        return {"var": self.name}


@dataclass(frozen=True, eq=False)
class Top(Formula):
    def _node_dict(self, built) -> dict[str, Any]:
        return {"op": "true"}


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    def _node_dict(self, built) -> dict[str, Any]:
        return {"op": "false"}


@dataclass(frozen=True, eq=False)
class Unary(Formula):
    child: Formula

    op_name = ""

    def children(self) -> tuple[Formula, ...]:
        return (self.child,)

    def _node_dict(self, built) -> dict[str, Any]:
        return {"op": self.op_name, "child": built[self.child]}


@dataclass(frozen=True, eq=False)
class Binary(Formula):
    left: Formula
    right: Formula

    op_name = ""

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)

    def _node_dict(self, built) -> dict[str, Any]:
        return {"op": self.op_name, "left": built[self.left], "right": built[self.right]}


@dataclass(frozen=True, eq=False)
class Not(Unary):
    op_name = "not"


@dataclass(frozen=True, eq=False)
class Up(Unary):
    """▲，具体语法 <>"""
    op_name = "up"


@dataclass(frozen=True, eq=False)
class Down(Unary):
    """▽，具体语法 []"""
    op_name = "down"


@dataclass(frozen=True, eq=False)
class And(Binary):
    op_name = "and"


@dataclass(frozen=True, eq=False)
class Or(Binary):
    op_name = "or"


@dataclass(frozen=True, eq=False)
class Imp(Binary):
    op_name = "imp"


TOP = Top()
BOT = Bot()

_UNARY = {"not": Not, "up": Up, "down": Down}
_BINARY = {"and": And, "or": Or, "imp": Imp}


def iff(left: Formula, right: Formula) -> Formula:
    """A ↔ B 展开为两个蕴涵的合取（AST 中不出现 ↔）"""
    return And(Imp(left, right), Imp(right, left))


def _dict_children(data: dict[str, Any]) -> list[dict[str, Any]]:
    op = data.get("op")
    if op in _UNARY:
        return [data["child"]]
    if op in _BINARY:
        return [data["left"], data["right"]]
    return []


def from_dict(data: dict[str, Any]) -> Formula:
    """to_dict 的逆变换

    Raises:
        ValueError: 未知节点或不合法的变量名
    """
    built: dict[int, Formula] = {}
    stack: list[tuple[dict[str, Any], bool]] = [(data, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in built:
            continue
        if not expanded:
            stack.append((node, True))
            stack.extend((child, False) for child in reversed(_dict_children(node)))
            continue
        op = node.get("op")
        if "var" in node:
            result: Formula = Var(node["var"])
        elif op == "true":
            result = TOP
        elif op == "false":
            result = BOT
        elif op in _UNARY:
            result = _UNARY[op](built[id(node["child"])])
        elif op in _BINARY:
            result = _BINARY[op](built[id(node["left"])], built[id(node["right"])])
        else:
            raise ValueError(f"未知的公式节点: {node}")
        built[id(node)] = result
    return built[id(data)]
