"""Terminal-set lattices of digraphs and independent-set posets.

Terminal sets generalise downsets: a vertex set closed under following arcs.
Independent sets generalise antichains: no non-trivial path between two
(not necessarily distinct) members.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


from .digraph import Digraph, Poset, QuotientMap, bits, condensation, independence_masks, mask_of, width
from .errors import ContractError, DomainError, EmptyLatticeError, InvariantError
from .intervals import (ChainProduct, Element, IntervalFamily, construct_A, construct_D, remove,
                        tuples_lattice)
from .lattice import Lattice, is_distributive, lattice_from_sets
from .dilworth import dilworth_chains


@dataclass(frozen=True, order=True)
class TerminalSet:
    mask: int
    vertex_count: int

    @property
    def proper(self) -> bool:
        return self.mask != 0 and self.mask != (1 << self.vertex_count) - 1

    def members(self) -> list[int]:
        return list(bits(self.mask))

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True, order=True)
class IndependentSet:
    mask: int

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def members(self) -> list[int]:
        return list(bits(self.mask))

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)


def is_terminal(d: Digraph, members: int | set[int] | frozenset[int]) -> bool:
    mask = members if isinstance(members, int) else mask_of(members)
    return all(d.succ[v] & ~mask == 0 for v in bits(mask))


def terminal_sets(d: Digraph, proper: bool = True) -> list[int]:
    """Terminal sets as masks, ordered by (size, mask).

    Every terminal set is a union of out-closures of single vertices, so the
    family is generated by closing ``{empty}`` under union with those.
    """
    cl = d.closure_masks
    found = {0}
    for v in d.vertices:
        down = cl[v] | (1 << v)
        found |= {s | down for s in found}
    full = (1 << d.vertex_count) - 1
    if proper:
        found -= {0, full}
    return sorted(found, key=lambda m: (m.bit_count(), m))


def terminal_lattice(d: Digraph) -> Lattice:
    """``D(D)``: proper terminal sets under inclusion."""
    masks = terminal_sets(d)
    if not masks:
        raise EmptyLatticeError("digraph has no proper terminal set")
    return lattice_from_sets(masks, [TerminalSet(m, d.vertex_count) for m in masks])


def map_T(p: ChainProduct, x: Element) -> TerminalSet:
    """``T_x = {alpha e_i : alpha <= x_i}`` on ``C^inf``; always contains the global 0."""
    if not p.contains(x):
        raise DomainError(f"{x} is not an element of the product {p.sizes}")
    m = 1 << p.zero
    for i, xi in enumerate(x, 1):
        for a in range(1, xi + 1):
            m |= 1 << p.cinf_vertex(i, a)
    return TerminalSet(m, p.cinf_count)


def map_T_inverse(p: ChainProduct, t: TerminalSet) -> Element:
    """``T -> V T``: coordinatewise maximum level present in ``t``."""
    x = [0] * p.d
    for v in bits(t.mask):
        lev = p.cinf_levels[v]
        if lev is not None:
            i, a = lev
            x[i - 1] = max(x[i - 1], a)
    return tuple(x)


@dataclass(frozen=True, eq=False)
class IndependentFamily:
    """``A_d(A)``: the independent sets of one size, ordered by reachability.

    ``order`` has an arc ``u -> v`` when ``sets[u] >= sets[v]``, i.e. each
    member of ``sets[u]`` reaches (possibly trivially) some member of ``sets[v]``.
    """

    digraph: Digraph
    size: int
    sets: tuple[IndependentSet, ...]

    @cached_property
    def index(self) -> dict[IndependentSet, int]:
        return {s: k for k, s in enumerate(self.sets)}

    @cached_property
    def order(self) -> Poset:
        cl = self.digraph.closure_masks
        reach = [cl[v] | (1 << v) for v in self.digraph.vertices]
        arcs = set()
        for u, big in enumerate(self.sets):
            for v, small in enumerate(self.sets):
                if all(reach[a] & small.mask for a in bits(big.mask)):
                    arcs.add((u, v))
        g = Digraph(len(self.sets), frozenset(arcs))
        if not g.is_antisymmetric():
            raise InvariantError("independent-set order is not antisymmetric")
        return Poset(g)

    def __len__(self) -> int:
        return len(self.sets)


def independent_sets_d(a: Digraph, d: int) -> IndependentFamily:
    live, conflict = independence_masks(a)
    out: list[int] = []

    def grow(chosen: int, cand: int, need: int) -> None:
        if need == 0:
            out.append(chosen)
            return
        if cand.bit_count() < need:
            return
        v = (cand & -cand).bit_length() - 1
        rest = cand & ~(1 << v)
        grow(chosen | (1 << v), rest & ~conflict[v], need - 1)
        grow(chosen, rest, need)

    if d >= 0:
        grow(0, live, d)
    return IndependentFamily(a, d, tuple(IndependentSet(m) for m in sorted(out)))


def independent_set_of(p: ChainProduct, x: Element) -> IndependentSet:
    """``x -> {x_1 e_1, ..., x_d e_d}`` on the vertices of ``C``."""
    return IndependentSet(mask_of(p.c_vertex(i, xi) for i, xi in enumerate(x, 1)))


def element_of(p: ChainProduct, s: IndependentSet) -> Element:
    x = [None] * p.d
    for v in s.members():
        i, a = p.c_levels[v]
        if x[i - 1] is not None:
            raise DomainError("independent set meets a chain twice")
        x[i - 1] = a
    if any(a is None for a in x):
        raise DomainError("independent set misses a chain")
    return tuple(x)


def duality_map(fam: IntervalFamily) -> dict[IndependentSet, TerminalSet]:
    """The isomorphism ``A_d(A_C(I)) -> D(D_C(I))``, ``x -> T_x``, verified."""
    p = fam.product
    remove(p, fam)  # precondition: nonempty sublattice
    indep = independent_sets_d(construct_A(fam), p.d)
    terms = terminal_lattice(construct_D(fam))
    mapping = {s: map_T(p, element_of(p, s)) for s in indep.sets}
    images = [terms.index.get(t) for t in mapping.values()]
    if None in images:
        raise InvariantError("T_x of an independent set is not a proper terminal set")
    if len(set(images)) != len(images) or len(images) != terms.size:
        raise InvariantError("duality map is not a bijection")
    order = indep.order
    for u in range(len(indep)):
        for v in range(len(indep)):
            if order.le(v, u) != terms.le(images[v], images[u]):
                raise InvariantError("duality map does not preserve the order")
    return mapping


def max_independent_lattice(a: Digraph) -> Lattice:
    """``A_M(A)``: maximum independent sets as a distributive lattice.

    Vertices on closed walks never occur in independent sets, so the
    remaining vertices with the reachability order form a poset whose
    maximum antichains are exactly the maximum independent sets.  A Dilworth
    decomposition of that poset embeds the family coordinatewise into a
    product of chains; labels are the independent sets.
    """
    w = width(a)
    if w == 0:
        raise EmptyLatticeError("digraph has no non-empty independent set")
    live, _ = independence_masks(a)
    cl = a.closure_masks
    sub, keep = a.induced(bits(live))
    pos = {v: k for k, v in enumerate(keep)}
    greater = {(pos[u], pos[v]) for u in keep for v in bits(cl[u] & live)}
    poset = Poset.from_relations(len(keep), greater)
    chains = dilworth_chains(poset)
    if len(chains) != w:
        raise InvariantError(f"Dilworth gave {len(chains)} chains for width {w}")
    level = {}
    for c, chain in enumerate(chains):
        for k, v in enumerate(chain):
            level[keep[v]] = (c, k)
    family = independent_sets_d(a, w)
    images = []
    for s in family.sets:
        x = [None] * w
        for v in s.members():
            c, k = level[v]
            x[c] = k
        images.append(tuple(x))
    order = sorted(range(len(family)), key=lambda k: images[k])
    els = [images[k] for k in order]
    sets = [family.sets[k] for k in order]
    try:
        lat = tuples_lattice(els)
    except DomainError as exc:
        raise InvariantError(f"maximum independent sets are not closed under meet and join: {exc}") from None
    lat = Lattice(lat.leq, lat.meet, lat.join, tuple(sets))
    fam_order = family.order
    pos_in = {k: r for r, k in enumerate(order)}
    for u in range(len(family)):
        for v in range(len(family)):
            if fam_order.le(u, v) != lat.le(pos_in[u], pos_in[v]):
                raise InvariantError("embedding order differs from the reachability order")
    if not is_distributive(lat):
        raise InvariantError("maximum independent sets do not form a distributive lattice")
    return lat


def cycle_quotient(a: Digraph) -> tuple[Digraph, QuotientMap]:
    """Quotient of a transitive digraph by "lies on a common directed cycle".

    A class is looped when it holds a looped vertex or more than one vertex.
    """
    if not a.is_transitive():
        raise ContractError("cycle quotient needs a transitive digraph")
    class_of = [-1] * a.vertex_count
    count = 0
    for v in a.vertices:
        if class_of[v] >= 0:
            continue
        for w in bits((a.succ[v] & a.pred[v]) | (1 << v)):
            class_of[w] = count
        count += 1
    q = QuotientMap(a.vertex_count, tuple(class_of), count)
    return Digraph(count, frozenset((class_of[u], class_of[v]) for u, v in a.arcs)), q


def quotient_terminal_map(d: Digraph) -> dict[int, int]:
    """``T -> [T]`` from terminal sets of a preorder to those of its condensation, verified.

    All terminal sets are used, the empty and full ones included: for a
    general preorder the proper ones need not be closed under union.
    """
    poset, q = condensation(d)
    src = terminal_sets(d, proper=False)
    dst = terminal_sets(poset.carrier, proper=False)
    source, target = lattice_from_sets(src), lattice_from_sets(dst)
    where = {m: k for k, m in enumerate(dst)}
    mapping = {m: q.image(m) for m in src}
    _check_iso(source, target, [where.get(s) for s in mapping.values()])
    for m, s in mapping.items():
        if q.preimage(s) != m:
            raise InvariantError("S -> union S does not invert T -> [T]")
    return mapping


def quotient_independent_map(a: Digraph, size: int) -> dict[IndependentSet, IndependentSet]:
    """``I -> {[x] : x in I}`` from ``A_d(A)`` to ``A_d`` of the cycle quotient, verified."""
    quo, q = cycle_quotient(a)
    source = independent_sets_d(a, size)
    target = independent_sets_d(quo, size)
    mapping = {s: IndependentSet(q.image(s.mask)) for s in source.sets}
    images = [target.index.get(t) for t in mapping.values()]
    if None in images or len(set(images)) != len(images) or len(images) != len(target):
        raise InvariantError("I -> [I] is not a bijection")
    so, to = source.order, target.order
    for u in range(len(source)):
        for v in range(len(source)):
            if so.le(u, v) != to.le(images[u], images[v]):
                raise InvariantError("I -> [I] does not preserve the order")
    return mapping


def _check_iso(source: Lattice, target: Lattice, images: list[int | None]) -> None:
    if None in images or len(set(images)) != len(images) or len(images) != target.size:
        raise InvariantError("quotient map is not a bijection")
    for u in range(source.size):
        for v in range(source.size):
            if source.le(u, v) != target.le(images[u], images[v]):
                raise InvariantError("quotient map does not preserve the order")
