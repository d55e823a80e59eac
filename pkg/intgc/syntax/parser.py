"""
公式的具体语法：解析与渲染

文法（ASCII）:
    iff   := imp ('<->' imp)?          非结合，优先级最低
    imp   := or ('->' imp)?            右结合
    or    := and ('|' and)*            左结合
    and   := unary ('&' unary)*        左结合
    unary := ('!' | '<>' | '[]') unary | atom
    atom  := IDENT | 'true' | 'false' | '(' iff ')'

标识符为 [a-z][a-zA-Z0-9_]*，空白不敏感。错误位置以 UTF-8 字节偏移报告。
解析用显式的运算符栈（优先级归约），渲染按后序逐节点拼接，两者都不递归。
公式深度上限为 MAX_DEPTH，超出时报语法错误。
"""

from dataclasses import dataclass

from ..errors import FormulaSyntaxError
from .formula import (
    BOT, IDENT_PATTERN, KEYWORDS, TOP, And, Binary, Bot, Down, Formula, Imp, Not, Or, Top, Unary, Up,
    Var, iff,
)

# 语法树深度上限（叶子深度为 1）
MAX_DEPTH = 512

# 多字符符号必须先于其前缀匹配
_SYMBOLS = ("<->", "<>", "[]", "->", "!", "&", "|", "(", ")")

_OPERAND = "标识符、常量、一元运算符或 '('"
_PREFIX = {"!": Not, "<>": Up, "[]": Down}
# 二元运算符: (优先级, 是否右结合)
_INFIX = {"&": (3, False), "|": (2, False), "->": (1, True), "<->": (0, False)}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    """切分为记号序列，末尾附加 EOF 记号"""
    tokens: list[Token] = []
    i = 0
    offset = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            offset += len(c.encode("utf-8"))
            i += 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(sym, sym, offset))
                i += len(sym)
                offset += len(sym)
                break
        else:
            m = IDENT_PATTERN.match(text, i)
            if not m:
                raise FormulaSyntaxError(offset, _OPERAND, c)
            word = m.group(0)
            tokens.append(Token(word if word in KEYWORDS else "ident", word, offset))
            i = m.end()
            offset += len(word)
    tokens.append(Token("eof", "", offset))
    return tokens


class _Parser:
    """运算符栈上的优先级归约

    ops 中存放 '('、前缀运算符与二元运算符记号，values 中存放已归约的子公式。
    每得到一个完整的操作数，立即应用栈顶的前缀运算符。
    """

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.values: list[Formula] = []
        self.ops: list[Token] = []

    def _checked(self, f: Formula, tok: Token) -> Formula:
        if f.depth() > MAX_DEPTH:
            raise FormulaSyntaxError(tok.offset, f"深度不超过 {MAX_DEPTH} 的公式", tok.text)
        return f

    def _reduce_binary(self) -> None:
        tok = self.ops.pop()
        right = self.values.pop()
        left = self.values.pop()
        if tok.kind == "&":
            node = And(left, right)
        elif tok.kind == "|":
            node = Or(left, right)
        elif tok.kind == "->":
            node = Imp(left, right)
        else:
            node = iff(left, right)
        self.values.append(self._checked(node, tok))

    def _operand_done(self) -> None:
        while self.ops and self.ops[-1].kind in _PREFIX:
            tok = self.ops.pop()
            self.values.append(self._checked(_PREFIX[tok.kind](self.values.pop()), tok))

    def _open_parens(self) -> bool:
        return any(tok.kind == "(" for tok in self.ops)

    def parse(self) -> Formula:
        expect_operand = True
        for tok in self.tokens:
            kind = tok.kind
            if expect_operand:
                if kind in _PREFIX or kind == "(":
                    self.ops.append(tok)
                    continue
                if kind == "ident":
                    self.values.append(Var(tok.text))
                elif kind == "true":
                    self.values.append(TOP)
                elif kind == "false":
                    self.values.append(BOT)
                else:
                    raise FormulaSyntaxError(tok.offset, _OPERAND, tok.text)
                self._operand_done()
                expect_operand = False
            elif kind in _INFIX:
                prec, right_assoc = _INFIX[kind]
                while self.ops and self.ops[-1].kind in _INFIX:
                    top_prec = _INFIX[self.ops[-1].kind][0]
                    if kind == "<->" and self.ops[-1].kind == "<->":
                        # <-> 不可结合，连用需要括号
                        raise FormulaSyntaxError(tok.offset, "输入结束或 ')'（<-> 不可连用）", tok.text)
                    if top_prec > prec or (top_prec == prec and not right_assoc):
                        self._reduce_binary()
                    else:
                        break
                self.ops.append(tok)
                expect_operand = True
            elif kind == ")" and self._open_parens():
                while self.ops[-1].kind != "(":
                    self._reduce_binary()
                self.ops.pop()
                self._operand_done()
            elif kind == "eof" and not self._open_parens():
                while self.ops:
                    self._reduce_binary()
                return self.values.pop()
            else:
                expected = "')'" if self._open_parens() else "二元运算符或输入结束"
                raise FormulaSyntaxError(tok.offset, expected, tok.text)
        raise AssertionError("记号序列缺少 EOF")


def parse(text: str) -> Formula:
    """解析公式文本

    Args:
        text: 公式的 ASCII 具体语法

    Returns:
        唯一的 AST；<-> 展开为两个蕴涵的合取

    Raises:
        FormulaSyntaxError: 携带字节偏移与期望记号描述；深度超过 MAX_DEPTH 时也报此错
    """
    return _Parser(text).parse()


# 数值越大结合越紧
_PREC = {Imp: 1, Or: 2, And: 3}
_UNARY_PREC = 4
_ATOM_PREC = 5
_BINARY_SYMBOL = {Imp: "->", Or: "|", And: "&"}
_UNARY_SYMBOL = {Not: "!", Up: "<>", Down: "[]"}


def _wrap(rendered: tuple[str, int], context: int) -> str:
    text, prec = rendered
    return f"({text})" if prec < context else text


def render(f: Formula) -> str:
    """最少括号渲染，保证 parse(render(f)) == f"""
    done: dict[Formula, tuple[str, int]] = {}
    for node in f.nodes():
        if isinstance(node, Var):
            done[node] = (node.name, _ATOM_PREC)
        elif isinstance(node, Top):
            done[node] = ("true", _ATOM_PREC)
        elif isinstance(node, Bot):
            done[node] = ("false", _ATOM_PREC)
        elif isinstance(node, Unary):
            done[node] = (_UNARY_SYMBOL[type(node)] + _wrap(done[node.child], _UNARY_PREC), _UNARY_PREC)
        elif isinstance(node, Binary):
            prec = _PREC[type(node)]
            if isinstance(node, Imp):
                left, right = _wrap(done[node.left], prec + 1), _wrap(done[node.right], prec)
            else:
                left, right = _wrap(done[node.left], prec), _wrap(done[node.right], prec + 1)
            done[node] = (f"{left} {_BINARY_SYMBOL[type(node)]} {right}", prec)
        else:
            raise TypeError(f"未知的公式类型: {type(node).__name__}")
    return done[f][0]
