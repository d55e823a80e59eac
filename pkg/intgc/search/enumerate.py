"""
有限结构的穷举

- enumerate_preorders: n 个带标号点上的全部预序
- enumerate_frames: 每个预序上全部满足 (★) 的 R

(★) 闭的 R 恰是序对偏序 (x, y) ⊑ (x', y') ⟺ x ≤ x' 且 y' ≤ y 的上集：
它们正是对种子关系做 close_frame 后可能得到的全部结果，这里直接按上集列举，无需去重。
"""

from typing import Iterator

from ..semantics.kripke import KripkeFrame, transitive_closure, transpose, upsets_of, world_names


def enumerate_preorders(n: int) -> Iterator[tuple[int, ...]]:
    """按非对角位模式的二进制值递增给出预序（位集行），恒等关系在最前

    Raises:
        ValueError: n < 1
    """
    if n < 1:
        raise ValueError(f"世界数必须为正: {n}")
    slots = [(x, y) for x in range(n) for y in range(n) if x != y]
    for pattern in range(1 << len(slots)):
        rows = [1 << i for i in range(n)]
        for k, (x, y) in enumerate(slots):
            if (pattern >> k) & 1:
                rows[x] |= 1 << y
        # 只保留已经传递的模式，每个预序恰好出现一次
        if transitive_closure(rows) == rows:
            yield tuple(rows)


def star_closed_relations(leq: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """leq 上全部 (★) 闭的关系，空关系在前"""
    n = len(leq)
    leq_down = transpose(leq)
    row_mask = (1 << n) - 1
    up: list[int] = []
    down: list[int] = []
    for x in range(n):
        for y in range(n):
            # 序对 (x, y) 的下标为 x*n + y，因此位集的第 x 段就是 r[x]
            above = 0
            below = 0
            for x2 in range(n):
                if (leq[x] >> x2) & 1:
                    above |= leq_down[y] << (x2 * n)
                if (leq_down[x] >> x2) & 1:
                    below |= leq[y] << (x2 * n)
            up.append(above)
            down.append(below)
    for mask in upsets_of(tuple(up), tuple(down)):
        yield tuple((mask >> (x * n)) & row_mask for x in range(n))


def enumerate_frames(n: int) -> Iterator[KripkeFrame]:
    """n 个世界（a, b, ...）上的全部带标号框架，不做同构约减"""
    worlds = world_names(n)
    index = {w: i for i, w in enumerate(worlds)}
    for leq in enumerate_preorders(n):
        for r in star_closed_relations(leq):
            yield KripkeFrame(worlds, leq, r, index)
