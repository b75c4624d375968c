"""DOT output.  Hasse diagrams are drawn with arcs pointing down and one rank per row."""

from __future__ import annotations

from typing import Callable, Sequence

from .digraph import Digraph, Poset, bits, is_acyclic, transitive_closure
from .lattice import Lattice


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _ranks(p: Poset) -> list[int]:
    """Length of the longest chain below each vertex."""
    rank = [0] * p.size
    for v in sorted(range(p.size), key=lambda v: p.down(v).bit_count()):
        below = p.down(v) & ~(1 << v)
        rank[v] = max((rank[u] + 1 for u in bits(below)), default=0)
    return rank


def hasse_dot(p: Poset, names: Sequence[str] | None = None, title: str = "poset") -> str:
    names = list(names) if names is not None else [str(v) for v in range(p.size)]
    lines = [f"digraph {_quote(title)} {{", "  rankdir=TB;", "  node [shape=circle];"]
    for v in range(p.size):
        lines.append(f"  n{v} [label={_quote(names[v])}];")
    rank = _ranks(p)
    for r in sorted(set(rank), reverse=True):
        members = " ".join(f"n{v};" for v in range(p.size) if rank[v] == r)
        lines.append(f"  {{ rank=same; {members} }}")
    for a, b in sorted(p.cover_pairs()):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dot(lat: Lattice, name: Callable[[int], str] | None = None) -> str:
    names = [name(x) if name else str(x) for x in range(lat.size)]
    return hasse_dot(lat.order, names, "lattice")


def digraph_dot(d: Digraph, names: Sequence[str] | None = None) -> str:
    """Acyclic digraphs are drawn as the Hasse diagram of their reachability order.

    Looped vertices are double circles unless every vertex is looped.
    Digraphs with longer cycles are drawn arc by arc, loops left implicit.
    """
    names = list(names) if names is not None else [str(v) for v in d.vertices]
    looped = 0 if d.is_reflexive() else d.looped()
    if is_acyclic(d):
        reach = transitive_closure(d.reflexive_closure())
        body = hasse_dot(Poset(reach), names, "digraph")
    else:
        lines = ['digraph "digraph" {', "  node [shape=circle];"]
        lines += [f"  n{v} [label={_quote(names[v])}];" for v in d.vertices]
        lines += [f"  n{u} -> n{v};" for u, v in d.sorted_arcs() if u != v]
        body = "\n".join(lines + ["}"]) + "\n"
    for v in bits(looped):
        body = body.replace(f"  n{v} [label={_quote(names[v])}];", f"  n{v} [label={_quote(names[v])} shape=doublecircle];")
    return body
