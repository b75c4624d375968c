"""Finite lattices given by order, meet and join tables.

Elements are the integers ``0..n-1``; ``labels`` carries whatever the
elements stand for (downsets, tuples, terminal sets, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Sequence

import numpy as np

from .digraph import Digraph, Poset, bits, mask_of
from .errors import ContractError, DomainError, InvariantError, NotALatticeError


@dataclass(frozen=True, eq=False)
class Lattice:
    leq: np.ndarray  # leq[a, b] iff a <= b
    meet: np.ndarray
    join: np.ndarray
    labels: tuple = field(default=())
    check: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        n = self.leq.shape[0]
        if n == 0:
            raise DomainError("a lattice has at least one element")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(n)))
        if len(self.labels) != n:
            raise DomainError("one label per element required")
        for arr in (self.leq, self.meet, self.join):
            arr.setflags(write=False)
        if self.check:
            _check_tables(self.leq, self.meet, self.join)

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def __len__(self) -> int:
        return self.size

    @cached_property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @cached_property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    @cached_property
    def order(self) -> Poset:
        a, b = np.nonzero(self.leq)
        return Poset(Digraph(self.size, frozenset(zip(b.tolist(), a.tolist()))))

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def join_all(self, elements: Sequence[int]) -> int:
        out = self.bottom
        for x in elements:
            out = int(self.join[out, x])
        return out

    def meet_all(self, elements: Sequence[int]) -> int:
        out = self.top
        for x in elements:
            out = int(self.meet[out, x])
        return out

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        lt = self.leq & ~np.eye(self.size, dtype=bool)
        # b is covered by a iff b < a with nothing strictly between
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~between
        return tuple(tuple(np.flatnonzero(cov[:, a]).tolist()) for a in range(self.size))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.size)]
        for a, below in enumerate(self.lower_covers):
            for b in below:
                out[b].append(a)
        return tuple(tuple(x) for x in out)


def _check_tables(leq: np.ndarray, meet: np.ndarray, join: np.ndarray) -> None:
    n = leq.shape[0]
    if leq.shape != (n, n) or meet.shape != (n, n) or join.shape != (n, n):
        raise ContractError("lattice tables must be square and of equal size")
    if not leq.diagonal().all():
        raise ContractError("order is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise ContractError("order is not antisymmetric")
    li = leq.astype(np.int64)
    if ((li @ li > 0) & ~leq).any():
        raise ContractError("order is not transitive")
    rows = np.arange(n)
    # meet[a, b] is a lower bound of both and above every common lower bound
    m = meet
    if not (leq[m, rows[:, None]].all() and leq[m, rows[None, :]].all()):
        raise ContractError("meet table is not a lower bound")
    common_lower = leq[:, :, None] & leq[:, None, :]  # [z, a, b]: z <= a and z <= b
    if (common_lower & ~leq[:, m]).any():
        raise ContractError("meet table is not the greatest lower bound")
    j = join
    if not (leq[rows[:, None], j].all() and leq[rows[None, :], j].all()):
        raise ContractError("join table is not an upper bound")
    common_upper = leq.T[:, :, None] & leq.T[:, None, :]
    if (common_upper & ~leq[j, :].transpose(2, 0, 1)).any():
        raise ContractError("join table is not the least upper bound")


def lattice_from_order(p: Poset, labels: Sequence[Any] | None = None) -> Lattice:
    """Meet and join tables by glb/lub search; raises if some pair lacks one."""
    n = p.size
    if n == 0:
        raise NotALatticeError("the empty order is not a lattice")
    name = (lambda v: labels[v]) if labels is not None else (lambda v: v)
    down = [p.down(v) for v in range(n)]
    up = [p.up(v) for v in range(n)]
    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            lower = down[a] & down[b]
            glb = [g for g in bits(lower) if down[g] == lower]
            if not glb:
                raise NotALatticeError(f"elements {name(a)} and {name(b)} have no greatest lower bound")
            upper = up[a] & up[b]
            lub = [g for g in bits(upper) if up[g] == upper]
            if not lub:
                raise NotALatticeError(f"elements {name(a)} and {name(b)} have no least upper bound")
            meet[a, b] = meet[b, a] = glb[0]
            join[a, b] = join[b, a] = lub[0]
    leq = np.zeros((n, n), dtype=bool)
    for a, b in p.carrier.arcs:
        leq[b, a] = True
    return Lattice(leq, meet, join, tuple(labels) if labels is not None else ())


def lattice_from_sets(masks: Sequence[int], labels: Sequence[Any] | None = None) -> Lattice:
    """Inclusion lattice of a family of bitmask sets closed under union and intersection."""
    arr = np.asarray(masks, dtype=np.int64)
    n = len(arr)
    order = np.argsort(arr, kind="stable")
    srt = arr[order]

    def locate(values: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(srt, values)
        pos = np.minimum(pos, n - 1)
        if not (srt[pos] == values).all():
            raise ContractError("set family is not closed under union and intersection")
        return order[pos]

    meet = locate(arr[:, None] & arr[None, :])
    join = locate(arr[:, None] | arr[None, :])
    leq = (arr[:, None] & ~arr[None, :]) == 0
    return Lattice(leq, meet, join, tuple(labels) if labels is not None else tuple(int(m) for m in masks), check=False)


def is_distributive(lat: Lattice) -> bool:
    m, j = lat.meet, lat.join
    # x ^ (y v z) == (x ^ y) v (x ^ z) for all triples
    lhs = m[:, j]  # [x, y, z]
    rhs = j[m[:, :, None], m[:, None, :]]
    return bool((lhs == rhs).all())


@dataclass(frozen=True)
class IrreduciblePoset:
    """Irreducible elements with the order induced from the parent lattice.

    ``label[v]`` is the parent lattice element carried by vertex ``v``.
    """

    carrier: Poset
    label: tuple[int, ...]

    def vertex_of(self, element: int) -> int:
        return self.label.index(element)


def _induced_order(lat: Lattice, elements: list[int]) -> IrreduciblePoset:
    arcs = {(u, v) for u, a in enumerate(elements) for v, b in enumerate(elements) if lat.leq[b, a]}
    return IrreduciblePoset(Poset(Digraph(len(elements), frozenset(arcs))), tuple(elements))


def join_irreducibles(lat: Lattice) -> IrreduciblePoset:
    """Non-zero join-irreducibles, i.e. elements with exactly one lower cover."""
    return _induced_order(lat, [x for x in range(lat.size) if len(lat.lower_covers[x]) == 1])


def meet_irreducibles(lat: Lattice) -> IrreduciblePoset:
    return _induced_order(lat, [x for x in range(lat.size) if len(lat.upper_covers[x]) == 1])


def downsets(p: Poset) -> list[int]:
    """All downsets of ``p`` as masks, ordered by (size, mask)."""
    found = {0}
    for v in range(p.size):
        d = p.down(v)
        found |= {s | d for s in found}
    return sorted(found, key=lambda m: (m.bit_count(), m))


def downset_lattice(p: Poset) -> Lattice:
    """``D(P)``: downsets under inclusion; labels are frozensets of vertices."""
    masks = downsets(p)
    return lattice_from_sets(masks, [frozenset(bits(m)) for m in masks])


@dataclass(frozen=True, eq=False)
class BirkhoffMap:
    """The isomorphism ``x -> S_x = {a in J_L : a <= x}`` and its inverse ``S -> V S``."""

    lattice: Lattice
    irreducibles: IrreduciblePoset
    downsets: Lattice
    forward: tuple[int, ...]  # element of lattice -> element of downsets

    def __call__(self, x: int) -> frozenset[int]:
        return self.downsets.labels[self.forward[x]]

    def inverse(self, s: frozenset[int]) -> int:
        return self.lattice.join_all([self.irreducibles.label[v] for v in s])


def birkhoff_map(lat: Lattice) -> BirkhoffMap:
    if not is_distributive(lat):
        raise DomainError("Birkhoff's map is an isomorphism only for distributive lattices")
    jp = join_irreducibles(lat)
    dl = downset_lattice(jp.carrier)
    forward = []
    for x in range(lat.size):
        s = mask_of(v for v, a in enumerate(jp.label) if lat.leq[a, x])
        forward.append(dl.index[frozenset(bits(s))])
    bm = BirkhoffMap(lat, jp, dl, tuple(forward))
    f = np.asarray(forward)
    if len(set(forward)) != lat.size or dl.size != lat.size:
        raise InvariantError("Birkhoff map is not bijective")
    if not ((f[lat.meet] == dl.meet[f[:, None], f[None, :]]).all() and (f[lat.join] == dl.join[f[:, None], f[None, :]]).all()):
        raise InvariantError("Birkhoff map does not commute with meet and join")
    for x in range(lat.size):
        if bm.inverse(bm(x)) != x:
            raise InvariantError(f"join of S_x differs from x for element {x}")
    return bm


def _profile(p: Poset) -> list[tuple[int, int, int, int]]:
    covers = p.cover_pairs()
    up_deg = [0] * p.size
    down_deg = [0] * p.size
    for a, b in covers:
        down_deg[a] += 1
        up_deg[b] += 1
    return [(p.down(v).bit_count(), p.up(v).bit_count(), down_deg[v], up_deg[v]) for v in range(p.size)]


def order_isomorphism(p1: Poset, p2: Poset) -> tuple[int, ...] | None:
    """First order isomorphism ``p1 -> p2`` in canonical backtracking order, or None."""
    n = p1.size
    if n != p2.size:
        return None
    prof1, prof2 = _profile(p1), _profile(p2)
    if sorted(prof1) != sorted(prof2):
        return None
    # place vertices with rarer profiles first
    freq: dict[tuple, int] = {}
    for pr in prof1:
        freq[pr] = freq.get(pr, 0) + 1
    seq = sorted(range(n), key=lambda v: (freq[prof1[v]], prof1[v], v))
    cands = [[w for w in range(n) if prof2[w] == prof1[v]] for v in seq]
    image = [-1] * n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        v = seq[k]
        for w in cands[k]:
            if used >> w & 1:
                continue
            ok = True
            for u in seq[:k]:
                x = image[u]
                if p1.le(u, v) != p2.le(x, w) or p1.le(v, u) != p2.le(w, x):
                    ok = False
                    break
            if ok:
                image[v] = w
                used |= 1 << w
                if extend(k + 1):
                    return True
                used &= ~(1 << w)
                image[v] = -1
        return False

    return tuple(image) if extend(0) else None


def are_isomorphic(l1: Lattice, l2: Lattice) -> tuple[int, ...] | None:
    """A bijection preserving meet and join, or None."""
    iso = order_isomorphism(l1.order, l2.order)
    if iso is None:
        return None
    f = np.asarray(iso)
    if not ((f[l1.meet] == l2.meet[f[:, None], f[None, :]]).all() and (f[l1.join] == l2.join[f[:, None], f[None, :]]).all()):
        raise InvariantError("order isomorphism failed to preserve lattice operations")
    return iso


def covers(lat: Lattice) -> list[tuple[int, int]]:
    """Hasse arcs ``(a, b)`` with ``a`` covering ``b``."""
    return [(a, b) for a in range(lat.size) for b in lat.lower_covers[a]]


def height(lat: Lattice) -> int:
    """Length of a longest chain of covers from bottom to top."""
    longest = [0] * lat.size
    by_rank = sorted(range(lat.size), key=lambda x: int(lat.leq[:, x].sum()))
    for a in by_rank:
        longest[a] = max((longest[b] + 1 for b in lat.lower_covers[a]), default=0)
    return longest[lat.top]
