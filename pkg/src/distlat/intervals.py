"""Products of chains, irreducible intervals and the digraphs that encode them.

Vertex layouts used throughout:

* ``C`` (levels ``0..n_i`` of every coordinate): coordinate-major, the vertex
  ``alpha e_i`` has id ``sum(n_k + 1 for k < i) + alpha``.
* ``C^inf`` (levels ``1..n_i`` plus a global ``0`` and ``inf``): id 0 is the
  global zero, then the levels coordinate-major, and the last id is ``inf``.
  ``0 e_i`` and ``(n_i + 1) e_i`` alias the global zero and ``inf``.

Coordinates are 1-based everywhere in the public API, levels 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .digraph import Digraph, bits
from .errors import ContractError, DomainError, FormatError, InvariantError
from .lattice import Lattice

Element = tuple[int, ...]


@dataclass(frozen=True)
class ChainProduct:
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(n) for n in self.sizes)
        if not sizes:
            raise DomainError("a product needs at least one chain")
        if any(n < 1 for n in sizes):
            raise DomainError(f"chain sizes must be positive, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @property
    def d(self) -> int:
        return len(self.sizes)

    def n(self, i: int) -> int:
        return self.sizes[i - 1]

    @property
    def height(self) -> int:
        return sum(self.sizes)

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product(*(range(n + 1) for n in self.sizes)))

    @property
    def bottom(self) -> Element:
        return (0,) * self.d

    @property
    def top(self) -> Element:
        return self.sizes

    def __len__(self) -> int:
        return len(self.elements)

    def contains(self, x: Element) -> bool:
        return len(x) == self.d and all(0 <= a <= n for a, n in zip(x, self.sizes))

    def check_coordinate(self, i: int) -> None:
        if not 1 <= i <= self.d:
            raise DomainError(f"coordinate {i} not in [1, {self.d}]")

    def check_level(self, i: int, alpha: int) -> None:
        self.check_coordinate(i)
        if not 0 <= alpha <= self.n(i):
            raise DomainError(f"level {alpha} not in [0, {self.n(i)}] for coordinate {i}")

    # -- layout of C (and T) --------------------------------------------------

    @cached_property
    def _c_offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((n + 1 for n in self.sizes), initial=0))

    @property
    def c_count(self) -> int:
        return self._c_offsets[-1]

    def c_vertex(self, i: int, alpha: int) -> int:
        self.check_level(i, alpha)
        return self._c_offsets[i - 1] + alpha

    @cached_property
    def c_levels(self) -> tuple[tuple[int, int], ...]:
        """``c_levels[v] == (i, alpha)`` for the vertex ``v`` of ``C``."""
        return tuple((i, a) for i, n in enumerate(self.sizes, 1) for a in range(n + 1))

    def c_name(self, v: int) -> str:
        i, a = self.c_levels[v]
        return f"{a}e{i}"

    def tournaments(self) -> Digraph:
        """``T``: a loopless transitive tournament on each chain of ``C``."""
        arcs = {(self.c_vertex(i, a), self.c_vertex(i, b)) for i, n in enumerate(self.sizes, 1)
                for a in range(n + 1) for b in range(a)}
        return Digraph(self.c_count, frozenset(arcs))

    # -- layout of C^inf (and C*) ---------------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def inf(self) -> int:
        return self.height + 1

    @property
    def cinf_count(self) -> int:
        return self.height + 2

    def cinf_vertex(self, i: int, alpha: int) -> int:
        self.check_coordinate(i)
        n = self.n(i)
        if alpha == 0:
            return self.zero
        if alpha == n + 1:
            return self.inf
        if not 1 <= alpha <= n:
            raise DomainError(f"level {alpha} not in [0, {n + 1}] for coordinate {i}")
        return 1 + self._c_offsets[i - 1] - (i - 1) + alpha - 1

    @cached_property
    def cinf_levels(self) -> tuple[tuple[int, int] | None, ...]:
        """``(i, alpha)`` for each level vertex of ``C^inf``; None for ``0`` and ``inf``."""
        inner = [(i, a) for i, n in enumerate(self.sizes, 1) for a in range(1, n + 1)]
        return (None, *inner, None)

    def cinf_name(self, v: int) -> str:
        if v == self.zero:
            return "0"
        if v == self.inf:
            return "inf"
        i, a = self.cinf_levels[v]
        return f"{a}e{i}"

    def pointed_chains(self) -> Digraph:
        """``C^inf`` as a (reflexive, transitive) poset digraph."""
        arcs = {(v, v) for v in range(self.cinf_count)}
        arcs |= {(v, self.zero) for v in range(self.cinf_count)}
        arcs |= {(self.inf, v) for v in range(self.cinf_count)}
        for i, n in enumerate(self.sizes, 1):
            for a in range(1, n + 1):
                for b in range(1, a):
                    arcs.add((self.cinf_vertex(i, a), self.cinf_vertex(i, b)))
        return Digraph(self.cinf_count, frozenset(arcs))

    def name_vertex(self, v: int, layout: str) -> str:
        return self.c_name(v) if layout == "c" else self.cinf_name(v)


@dataclass(frozen=True, order=True)
class Interval:
    """``I_i^j(alpha, beta) = {x : alpha <= x_i and x_j <= beta}``."""

    i: int
    j: int
    alpha: int
    beta: int

    def check(self, p: ChainProduct) -> None:
        p.check_level(self.i, self.alpha)
        p.check_level(self.j, self.beta)

    def contains(self, x: Element) -> bool:
        return self.alpha <= x[self.i - 1] and x[self.j - 1] <= self.beta

    @property
    def is_mandatory_empty(self) -> bool:
        return self.i == self.j and self.beta < self.alpha

    def __str__(self) -> str:
        return f"interval {self.i} {self.j} {self.alpha} {self.beta}"


def all_intervals(p: ChainProduct) -> Iterator[Interval]:
    for i in range(1, p.d + 1):
        for j in range(1, p.d + 1):
            for a in range(p.n(i) + 1):
                for b in range(p.n(j) + 1):
                    yield Interval(i, j, a, b)


def mandatory_intervals(p: ChainProduct) -> frozenset[Interval]:
    return frozenset(Interval(i, i, a, b) for i in range(1, p.d + 1)
                     for a in range(p.n(i) + 1) for b in range(a))


def interval_members(p: ChainProduct, iv: Interval) -> frozenset[Element]:
    iv.check(p)
    return frozenset(x for x in p.elements if iv.contains(x))


@dataclass(frozen=True)
class IntervalFamily:
    """A family of irreducible intervals; the empty intervals ``(i, i, a, b)``, ``b < a``, are always included."""

    product: ChainProduct
    intervals: frozenset[Interval]

    def __post_init__(self) -> None:
        ivs = frozenset(self.intervals)
        for iv in ivs:
            iv.check(self.product)
        object.__setattr__(self, "intervals", ivs | mandatory_intervals(self.product))

    @classmethod
    def of(cls, p: ChainProduct, intervals: Iterable[Interval | tuple[int, int, int, int]] = ()) -> IntervalFamily:
        return cls(p, frozenset(iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals))

    def __contains__(self, iv: Interval) -> bool:
        return iv in self.intervals

    def __len__(self) -> int:
        return len(self.intervals)

    def optional(self) -> list[Interval]:
        """The intervals that are not mandatory empties, sorted."""
        return sorted(iv for iv in self.intervals if not iv.is_mandatory_empty)

    @cached_property
    def removed(self) -> frozenset[Element]:
        return frozenset(x for x in self.product.elements if any(iv.contains(x) for iv in self.intervals))


@dataclass(frozen=True)
class Sublattice:
    product: ChainProduct
    elements: frozenset[Element]

    def __post_init__(self) -> None:
        els = frozenset(tuple(x) for x in self.elements)
        object.__setattr__(self, "elements", els)
        if not els:
            raise DomainError("empty sublattice")
        for x in els:
            if not self.product.contains(x):
                raise DomainError(f"{x} is not an element of the product {self.product.sizes}")
        for x in els:
            for y in els:
                if meet_tuple(x, y) not in els or join_tuple(x, y) not in els:
                    raise ContractError(f"not closed under meet and join: {x}, {y}")

    @cached_property
    def sorted_elements(self) -> tuple[Element, ...]:
        return tuple(sorted(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Element) -> bool:
        return x in self.elements

    def to_lattice(self) -> Lattice:
        """The sublattice as an abstract lattice; labels are the tuples, sorted."""
        return tuples_lattice(self.sorted_elements)


def meet_tuple(x: Element, y: Element) -> Element:
    return tuple(map(min, x, y))


def join_tuple(x: Element, y: Element) -> Element:
    return tuple(map(max, x, y))


def tuples_lattice(elements: Iterable[Element]) -> Lattice:
    els = list(elements)
    arr = np.asarray(els, dtype=np.int64).reshape(len(els), -1)
    index = {x: k for k, x in enumerate(els)}
    leq = (arr[:, None, :] <= arr[None, :, :]).all(axis=2)
    mins = np.minimum(arr[:, None, :], arr[None, :, :])
    maxs = np.maximum(arr[:, None, :], arr[None, :, :])
    n = len(els)
    try:
        meet = np.array([[index[tuple(mins[a, b].tolist())] for b in range(n)] for a in range(n)], dtype=np.int64)
        join = np.array([[index[tuple(maxs[a, b].tolist())] for b in range(n)] for a in range(n)], dtype=np.int64)
    except KeyError as exc:
        raise ContractError(f"tuple set not closed under meet and join: {exc}") from None
    return Lattice(leq, meet, join, tuple(els), check=False)


def remove(p: ChainProduct, fam: IntervalFamily) -> Sublattice:
    """``P - U I``."""
    if fam.product != p:
        raise DomainError("family belongs to a different product")
    elements = frozenset(x for x in p.elements if x not in fam.removed)
    if not elements:
        raise DomainError("empty sublattice: the intervals cover the whole product")
    return Sublattice(p, elements)


def rival_extract(p: ChainProduct, sub: Sublattice) -> IntervalFamily:
    """The closed family of all intervals disjoint from ``sub``."""
    if sub.product != p:
        raise DomainError("sublattice belongs to a different product")
    fam = IntervalFamily(p, frozenset(iv for iv in all_intervals(p)
                                      if not any(iv.contains(x) for x in sub.elements)))
    if remove(p, fam).elements != sub.elements:
        raise InvariantError("removing the extracted intervals does not give back the sublattice")
    return fam


def close_family(fam: IntervalFamily) -> IntervalFamily:
    """Smallest closed superfamily: every interval inside the removed region."""
    gone = fam.removed
    p = fam.product
    return IntervalFamily(p, frozenset(iv for iv in all_intervals(p)
                                       if all(x in gone for x in p.elements if iv.contains(x))))


def is_closed(fam: IntervalFamily) -> bool:
    return close_family(fam).intervals == fam.intervals


def respects_aliasing(fam: IntervalFamily) -> bool:
    """Whether ``(i, j, 0, b)`` and ``(i, j, a, n_j)`` are present for every ``i`` (resp. ``j``) once present for one.

    ``construct_D`` cannot tell such intervals apart, since ``0 e_i`` and
    ``(n_j + 1) e_j`` are the shared vertices ``0`` and ``inf``.
    """
    p = fam.product
    coords = range(1, p.d + 1)
    for iv in fam.intervals:
        if iv.alpha == 0 and any(Interval(k, iv.j, 0, iv.beta) not in fam for k in coords):
            return False
        if iv.beta == p.n(iv.j) and any(Interval(iv.i, k, iv.alpha, p.n(k)) not in fam for k in coords):
            return False
    return True


def construct_A(fam: IntervalFamily) -> Digraph:
    """``A_C(I)``: ``T`` plus ``alpha e_i -> beta e_j`` for each interval."""
    p = fam.product
    arcs = {(p.c_vertex(iv.i, iv.alpha), p.c_vertex(iv.j, iv.beta)) for iv in fam.intervals}
    return p.tournaments().union(arcs)


def construct_D(fam: IntervalFamily) -> Digraph:
    """``D_C(I)``: ``C^inf`` plus ``alpha e_i -> (beta + 1) e_j`` for each interval."""
    p = fam.product
    arcs = {(p.cinf_vertex(iv.i, iv.alpha), p.cinf_vertex(iv.j, iv.beta + 1)) for iv in fam.intervals}
    return p.pointed_chains().union(arcs)


def _require_spanning(d: Digraph, base: Digraph, what: str) -> None:
    if d.vertex_count != base.vertex_count or not base.arcs <= d.arcs:
        raise ContractError(f"digraph must be a spanning supergraph of {what}")


def koh_K(p: ChainProduct, a: Digraph) -> Digraph:
    """Shift every arc target up one level, landing on ``C^inf``."""
    _require_spanning(a, p.tournaments(), "T")
    arcs = set()
    for u, v in a.arcs:
        i, alpha = p.c_levels[u]
        j, beta = p.c_levels[v]
        arcs.add((p.cinf_vertex(i, alpha), p.cinf_vertex(j, beta + 1)))
    return p.pointed_chains().union(arcs)


def koh_K_inverse(p: ChainProduct, d: Digraph) -> Digraph:
    """Shift every arc target down one level, landing on ``C``.

    Arcs out of ``inf`` and into ``0`` have no preimage and are dropped; the
    aliased vertices ``0`` and ``inf`` expand to every coordinate.
    """
    _require_spanning(d, p.pointed_chains(), "C^inf")
    arcs = set()
    coords = range(1, p.d + 1)
    for u, v in d.arcs:
        if u == p.inf or v == p.zero:
            continue
        if u == p.zero:
            sources = [p.c_vertex(i, 0) for i in coords]
        else:
            i, alpha = p.cinf_levels[u]
            sources = [p.c_vertex(i, alpha)]
        if v == p.inf:
            targets = [p.c_vertex(j, p.n(j)) for j in coords]
        else:
            j, gamma = p.cinf_levels[v]
            targets = [p.c_vertex(j, gamma - 1)]
        arcs.update(itertools.product(sources, targets))
    return Digraph(p.c_count, frozenset(arcs))


def intervals_from_A(p: ChainProduct, a: Digraph) -> IntervalFamily:
    """Inverse of :func:`construct_A`: one interval per arc."""
    if a.vertex_count != p.c_count:
        raise FormatError(f"expected a digraph on {p.c_count} vertices, got {a.vertex_count}")
    if not p.tournaments().arcs <= a.arcs:
        raise FormatError("digraph does not contain the tournaments T")
    ivs = set()
    for u, v in a.arcs:
        i, alpha = p.c_levels[u]
        j, beta = p.c_levels[v]
        ivs.add(Interval(i, j, alpha, beta))
    return IntervalFamily(p, frozenset(ivs))


def path_covered(fam: IntervalFamily, i: int, j: int, alpha: int, beta: int) -> tuple[bool, Element | None]:
    """Decide ``I_i^j(alpha, beta) <= U fam`` by a path search in ``D_C(fam)``.

    When the interval is not covered, also return an element ``x`` of the
    sublattice with ``x_i >= alpha`` and ``x_j <= beta``.
    """
    p = fam.product
    p.check_level(i, alpha)
    p.check_level(j, beta)
    d = construct_D(fam)
    src = p.cinf_vertex(i, alpha)
    reach = d.closure_masks[src] | (1 << src)
    if reach >> p.cinf_vertex(j, beta + 1) & 1:
        return True, None
    if reach >> p.inf & 1:
        raise InvariantError("inf reachable but target not reached")
    x = [0] * p.d
    for v in bits(reach):
        lev = p.cinf_levels[v]
        if lev is not None:
            k, a = lev
            x[k - 1] = max(x[k - 1], a)
    witness = tuple(x)
    if witness in fam.removed or witness[i - 1] < alpha or witness[j - 1] > beta:
        raise InvariantError(f"path witness {witness} is not a valid counterexample")
    return False, witness
