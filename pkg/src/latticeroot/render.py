"""Plain-text renderings: DOT and ASCII merge trees, module one-liners."""

from __future__ import annotations

from .lattice import GradedRoot
from .modules import GradedModule, format_grading
from .pin2 import PinModule

__all__ = ["render_dot", "render_ascii", "format_module", "format_pin_module"]


def _children_map(root: GradedRoot) -> dict[tuple[int, int], list[tuple[int, int]]]:
    children: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for child, parent in root.edges:
        children.setdefault(parent, []).append(child)
    return children


def render_dot(root: GradedRoot) -> str:
    """Graphviz digraph of the merge tree, one rank row per level."""
    lines = ["digraph graded_root {"]
    lines.append("  rankdir=BT;")
    lines.append('  node [shape=circle, label="", width=0.12];')
    by_level: dict[int, list[str]] = {}
    for level, count in root.node_counts:
        names = [f"n_{level}_{i}".replace("-", "m") for i in range(count)]
        by_level[level] = names
        for name in names:
            lines.append(f"  {name};")
    for level in sorted(by_level):
        row = "; ".join(by_level[level])
        lines.append(f'  {{ rank=same; {row} }}  // level {level}')
    for (c_lvl, c_idx), (p_lvl, p_idx) in sorted(root.edges):
        child = f"n_{c_lvl}_{c_idx}".replace("-", "m")
        parent = f"n_{p_lvl}_{p_idx}".replace("-", "m")
        lines.append(f"  {child} -> {parent};")
    stem = f"n_{root.stable_level}_0".replace("-", "m")
    lines.append(f'  stem [shape=none, label="..."];')
    lines.append(f"  {stem} -> stem;")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_ascii(root: GradedRoot) -> str:
    """Indented outline of the merge tree, top (stable) level first.

    Each node shows its level; the infinite stem above the stable level is
    elided.
    """
    children = _children_map(root)

    def subtree_key(node: tuple[int, int]) -> tuple:
        subs = tuple(sorted(subtree_key(c) for c in children.get(node, [])))
        return (node[0], subs)

    lines: list[str] = [f"(stem continues upward from level {root.stable_level})"]

    def walk(node: tuple[int, int], prefix: str, tail: bool, top: bool) -> None:
        label = f"({node[0]})"
        if top:
            lines.append(label)
            child_prefix = ""
        else:
            connector = "`-- " if tail else "|-- "
            lines.append(prefix + connector + label)
            child_prefix = prefix + ("    " if tail else "|   ")
        kids = sorted(children.get(node, []), key=subtree_key)
        for i, kid in enumerate(kids):
            walk(kid, child_prefix, i == len(kids) - 1, False)

    walk((root.stable_level, 0), "", True, True)
    return "\n".join(lines) + "\n"


def format_module(module: GradedModule) -> str:
    """One-line summary: U(g) towers and F(g) / F(g, len=n) chains."""
    parts = []
    for bottom, parity in module.towers:
        tag = "U" if parity == "even" else "U_odd"
        parts.append(f"{tag}({format_grading(bottom)})")
    for bottom, length, parity in module.chains:
        tag = "F" if parity == "even" else "F_odd"
        if length == 1:
            parts.append(f"{tag}({format_grading(bottom)})")
        else:
            parts.append(f"{tag}({format_grading(bottom)}, len={length})")
    return " + ".join(parts) if parts else "0"


def format_pin_module(module: PinModule) -> str:
    """One-line summary: three V(g) towers plus finite ranks."""
    parts = [
        f"V({format_grading(module.c_bottom)})",
        f"V({format_grading(module.b_bottom)})",
        f"V({format_grading(module.a_bottom)})",
    ]
    for grading, rank in module.finite:
        for _ in range(rank):
            parts.append(f"F({format_grading(grading)})")
    return " + ".join(parts)
