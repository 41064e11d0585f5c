"""DOT export of vertex sets for figures"""

from __future__ import annotations

from typing import Iterable

from src.tree.lattice import LatticeClass, edges


def _node_id(v: LatticeClass) -> str:
    return f'"{v.a}|{v.b}"'


def to_dot(vertices: Iterable[LatticeClass], highlight: Iterable[LatticeClass] = (), name: str = "hull") -> str:
    members = sorted(set(vertices))
    marked = set(highlight)
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=10];"]
    for v in members:
        style = ", style=filled, fillcolor=lightgray" if v in marked else ""
        lines.append(f'  {_node_id(v)} [label="{v.a}, {v.b}"{style}];')
    for up, down in edges(members):
        lines.append(f"  {_node_id(up)} -- {_node_id(down)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
