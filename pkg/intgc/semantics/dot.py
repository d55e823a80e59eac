"""
DOT 导出

实线为 ≤ 的覆盖关系（等价世界之间画双向边），虚线为 R，节点标签列出满足的变量。
"""

from .kripke import KripkeModel, bits


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def covering_pairs(model: KripkeModel) -> list[tuple[int, int, bool]]:
    """≤ 的覆盖关系 (x, y, 是否等价)"""
    frame = model.frame
    n = frame.size
    leq = frame.leq

    def below(x: int, y: int) -> bool:
        return bool((leq[x] >> y) & 1)

    def strictly(x: int, y: int) -> bool:
        return below(x, y) and not below(y, x)

    result = []
    for x in range(n):
        for y in bits(leq[x]):
            if x == y:
                continue
            if below(y, x):
                if x < y:
                    result.append((x, y, True))
                continue
            if not any(strictly(x, z) and strictly(z, y) for z in range(n)):
                result.append((x, y, False))
    return result


def to_dot(model: KripkeModel, name: str = "M") -> str:
    frame = model.frame
    w = frame.worlds
    lines = [f"digraph {_quote(name)} {{", "    rankdir=BT;"]
    for i, world in enumerate(w):
        true_vars = [p for p, mask in sorted(model.valuation.items()) if (mask >> i) & 1]
        label = f"{world}: {', '.join(true_vars)}" if true_vars else world
        lines.append(f"    {_quote(world)} [label={_quote(label)}];")
    for x, y, both in covering_pairs(model):
        attrs = "style=solid, dir=both" if both else "style=solid"
        lines.append(f"    {_quote(w[x])} -> {_quote(w[y])} [{attrs}];")
    for x, y in frame.r_pairs():
        lines.append(f"    {_quote(x)} -> {_quote(y)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
