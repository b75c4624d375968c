"""Finite digraphs over dense integer vertex ids.

Arcs follow the order-theoretic convention ``a -> b`` for ``a >= b``, so a
poset is a reflexive, transitive, antisymmetric digraph.  Adjacency is kept
as one bitmask (a Python int) per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ContractError, DomainError


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise DomainError(f"negative vertex count {self.vertex_count}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise DomainError(f"arc ({u}, {v}) has an endpoint outside [0, {self.vertex_count})")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_masks(cls, succ: Iterable[int]) -> Digraph:
        succ = list(succ)
        return cls(len(succ), frozenset((u, v) for u, m in enumerate(succ) for v in bits(m)))

    @cached_property
    def succ(self) -> tuple[int, ...]:
        out = [0] * self.vertex_count
        for u, v in self.arcs:
            out[u] |= 1 << v
        return tuple(out)

    @cached_property
    def pred(self) -> tuple[int, ...]:
        out = [0] * self.vertex_count
        for u, v in self.arcs:
            out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def closure_masks(self) -> tuple[int, ...]:
        """``closure_masks[u]``: vertices reachable from ``u`` by a path with at least one arc."""
        reach = list(self.succ)
        n = self.vertex_count
        for k in range(n):
            kb = 1 << k
            rk = reach[k]
            for i in range(n):
                if reach[i] & kb:
                    reach[i] |= rk
        return tuple(reach)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise DomainError(f"vertex {v} not in [0, {self.vertex_count})")

    def looped(self) -> int:
        return mask_of(v for v in self.vertices if self.succ[v] >> v & 1)

    def is_reflexive(self) -> bool:
        return all(self.succ[v] >> v & 1 for v in self.vertices)

    def is_transitive(self) -> bool:
        return self.closure_masks == self.succ

    def is_antisymmetric(self) -> bool:
        return not any(u != v and self.has_arc(v, u) for u, v in self.arcs)

    def is_preorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def reflexive_closure(self) -> Digraph:
        return Digraph(self.vertex_count, self.arcs | {(v, v) for v in self.vertices})

    def union(self, arcs: Iterable[tuple[int, int]]) -> Digraph:
        return Digraph(self.vertex_count, self.arcs | frozenset(arcs))

    def induced(self, vertices: Iterable[int]) -> tuple[Digraph, list[int]]:
        """Induced subgraph, renumbered in increasing vertex order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        keep = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(keep)}
        arcs = {(new_id[u], new_id[v]) for u, v in self.arcs if u in new_id and v in new_id}
        return Digraph(len(keep), frozenset(arcs)), keep

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class Poset:
    """A partial order carried by a digraph with arcs ``a -> b`` for ``a >= b``."""

    carrier: Digraph

    def __post_init__(self) -> None:
        c = self.carrier
        if not c.is_reflexive():
            raise ContractError("poset carrier must be reflexive")
        if not c.is_transitive():
            raise ContractError("poset carrier must be transitive")
        if not c.is_antisymmetric():
            raise ContractError("poset carrier must be antisymmetric")

    @classmethod
    def from_relations(cls, n: int, greater: Iterable[tuple[int, int]]) -> Poset:
        """Build from pairs ``(a, b)`` meaning ``a >= b``; closure is applied."""
        d = Digraph(n, frozenset(greater)).reflexive_closure()
        return cls(transitive_closure(d))

    @classmethod
    def chain(cls, n: int) -> Poset:
        return cls.from_relations(n, ((i + 1, i) for i in range(n - 1)))

    @classmethod
    def antichain(cls, n: int) -> Poset:
        return cls.from_relations(n, ())

    @property
    def size(self) -> int:
        return self.carrier.vertex_count

    def down(self, v: int) -> int:
        """Mask of the principal downset of ``v``."""
        return self.carrier.succ[v]

    def up(self, v: int) -> int:
        return self.carrier.pred[v]

    def le(self, a: int, b: int) -> bool:
        return bool(self.carrier.succ[b] >> a & 1)

    def is_downset(self, mask: int) -> bool:
        return all(self.carrier.succ[v] & ~mask == 0 for v in bits(mask))

    def is_chain(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.le(a, b) or self.le(b, a) for a in vs for b in vs)

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Hasse arcs ``(a, b)`` with ``a`` covering ``b``."""
        out = []
        for a in self.carrier.vertices:
            below = self.down(a) & ~(1 << a)
            for b in bits(below):
                between = below & self.up(b) & ~(1 << b)
                if not between:
                    out.append((a, b))
        return out


@dataclass(frozen=True)
class QuotientMap:
    source_vertex_count: int
    class_of: tuple[int, ...]
    class_count: int

    def __post_init__(self) -> None:
        if len(self.class_of) != self.source_vertex_count:
            raise DomainError("class_of must be total")
        if set(self.class_of) != set(range(self.class_count)):
            raise DomainError("class_of must be surjective onto [0, class_count)")

    def members(self, c: int) -> list[int]:
        return [v for v, k in enumerate(self.class_of) if k == c]

    def image(self, mask: int) -> int:
        """``[T]``: mask of classes met by the vertex mask ``mask``."""
        return mask_of(self.class_of[v] for v in bits(mask))

    def preimage(self, class_mask: int) -> int:
        """``U S``: union of the classes in ``class_mask``."""
        return mask_of(v for v, k in enumerate(self.class_of) if class_mask >> k & 1)


def reachable(d: Digraph, u: int, v: int, require_nontrivial: bool = False) -> bool:
    d.check_vertex(u)
    d.check_vertex(v)
    if not require_nontrivial and u == v:
        return True
    return bool(d.closure_masks[u] >> v & 1)


def transitive_closure(d: Digraph) -> Digraph:
    return Digraph.from_masks(d.closure_masks)


def is_acyclic(d: Digraph) -> bool:
    """True when the only directed cycles are loops."""
    cl = d.closure_masks
    return not any(cl[v] & (1 << u) for u in d.vertices for v in bits(cl[u]) if v != u)


def is_strongly_acyclic(d: Digraph) -> bool:
    cl = d.closure_masks
    return not any(cl[v] >> v & 1 for v in d.vertices)


def condensation(d: Digraph) -> tuple[Poset, QuotientMap]:
    """Quotient of a preorder by mutual reachability.

    Classes are numbered by their smallest member, and ``[a] >= [b]`` exactly
    when ``a -> b`` in ``d``.
    """
    if not d.is_preorder():
        raise ContractError("condensation needs a reflexive transitive digraph")
    succ, pred = d.succ, d.pred
    class_of = [-1] * d.vertex_count
    reps: list[int] = []
    for v in d.vertices:
        if class_of[v] >= 0:
            continue
        for w in bits(succ[v] & pred[v]):
            class_of[w] = len(reps)
        reps.append(v)
    arcs = {(class_of[a], class_of[b]) for a, b in d.arcs}
    q = QuotientMap(d.vertex_count, tuple(class_of), len(reps))
    return Poset(Digraph(len(reps), frozenset(arcs))), q


def independence_masks(d: Digraph) -> tuple[int, list[int]]:
    """Vertices allowed in independent sets, and for each the vertices it conflicts with.

    A vertex lying on a closed walk (a loop included) is never independent.
    Two distinct vertices conflict when one reaches the other.
    """
    cl = d.closure_masks
    live = mask_of(v for v in d.vertices if not cl[v] >> v & 1)
    conflict = [0] * d.vertex_count
    for u in bits(live):
        for v in bits(cl[u] & live):
            conflict[u] |= 1 << v
            conflict[v] |= 1 << u
    return live, conflict


def is_independent(d: Digraph, mask: int) -> bool:
    cl = d.closure_masks
    return all(cl[v] & mask == 0 for v in bits(mask))


def width(a: Digraph) -> int:
    """Size of a maximum independent set, by exact branch and bound."""
    live, conflict = independence_masks(a)
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        v = (cand & -cand).bit_length() - 1
        grow(cand & ~conflict[v] & ~(1 << v), size + 1)
        grow(cand & ~(1 << v), size)

    grow(live, 0)
    return best
