"""Naive reference implementations for cross-checking the fast paths.

Everything here works from the definitions over powersets or permutations,
shares no search code with the rest of the package, and refuses instances
that are too large instead of truncating.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .digraph import Digraph, Poset
from .errors import DomainError, ResourceGuardError
from .intervals import ChainProduct, Sublattice
from .lattice import Lattice

MAX_POSET_VERTICES = 5
MAX_PRODUCT_SIZE = 12
MAX_POWERSET_VERTICES = 20


def _reach(d: Digraph, u: int) -> set[int]:
    """Vertices at the end of a path from ``u`` with at least one arc (BFS)."""
    adj = [[] for _ in d.vertices]
    for a, b in d.arcs:
        adj[a].append(b)
    seen: set[int] = set()
    queue = deque(adj[u])
    while queue:
        v = queue.popleft()
        if v not in seen:
            seen.add(v)
            queue.extend(adj[v])
    return seen


def enumerate_labeled_posets(n: int) -> Iterator[Poset]:
    """All partial orders on ``{0..n-1}``, each exactly once.

    Each unordered pair is either incomparable or ordered one of two ways,
    which builds in reflexivity and antisymmetry; transitivity is filtered.
    """
    if n < 0:
        raise DomainError("vertex count must be non-negative")
    if n > MAX_POSET_VERTICES:
        raise ResourceGuardError(f"labeled poset enumeration is limited to {MAX_POSET_VERTICES} vertices")
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        ge = {(v, v) for v in range(n)}
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                ge.add((a, b))
            elif c == 2:
                ge.add((b, a))
        if all((a, c) in ge for a, b in ge for b2, c in ge if b == b2):
            yield Poset(Digraph(n, frozenset(ge)))


def enumerate_sublattices(p: ChainProduct) -> Iterator[Sublattice]:
    """All non-empty subsets of ``p`` closed under coordinatewise min and max."""
    els = p.elements
    if len(els) > MAX_PRODUCT_SIZE:
        raise ResourceGuardError(f"sublattice enumeration is limited to products of {MAX_PRODUCT_SIZE} elements")
    for r in range(1, len(els) + 1):
        for subset in itertools.combinations(els, r):
            s = set(subset)
            if all(tuple(map(min, x, y)) in s and tuple(map(max, x, y)) in s for x in s for y in s):
                yield Sublattice(p, frozenset(s))


def random_sublattice(p: ChainProduct, rng: random.Random) -> Sublattice:
    """Close a random non-empty subset of ``p`` under min and max."""
    els = list(p.elements)
    s = set(rng.sample(els, rng.randint(1, min(len(els), 6))))
    while True:
        new = {f(x, y) for x in s for y in s for f in (lambda a, b: tuple(map(min, a, b)),
                                                        lambda a, b: tuple(map(max, a, b)))}
        if new <= s:
            return Sublattice(p, frozenset(s))
        s |= new


def brute_terminal_sets(d: Digraph) -> set[frozenset[int]]:
    """Every subset ``T`` such that every path starting in ``T`` stays in ``T``."""
    if d.vertex_count > MAX_POWERSET_VERTICES:
        raise ResourceGuardError(f"powerset search is limited to {MAX_POWERSET_VERTICES} vertices")
    reach = [_reach(d, v) for v in d.vertices]
    out = set()
    for r in range(d.vertex_count + 1):
        for subset in itertools.combinations(d.vertices, r):
            s = frozenset(subset)
            if all(reach[v] <= s for v in s):
                out.add(s)
    return out


def brute_independent_sets(a: Digraph) -> set[frozenset[int]]:
    """Subsets with no path of positive length between two (possibly equal) members."""
    if a.vertex_count > MAX_POWERSET_VERTICES:
        raise ResourceGuardError(f"powerset search is limited to {MAX_POWERSET_VERTICES} vertices")
    reach = [_reach(a, v) for v in a.vertices]
    out = set()
    for r in range(a.vertex_count + 1):
        for subset in itertools.combinations(a.vertices, r):
            s = frozenset(subset)
            if all(not (reach[v] & s) for v in s):
                out.add(s)
    return out


def brute_max_independent_order(a: Digraph) -> tuple[list[frozenset[int]], set[tuple[int, int]]]:
    """Maximum independent sets (sorted) and the pairs ``(u, v)`` with ``sets[u] >= sets[v]``."""
    indep = brute_independent_sets(a)
    top = max(len(s) for s in indep)
    sets = sorted((s for s in indep if len(s) == top), key=sorted)
    reach = [_reach(a, v) | {v} for v in a.vertices]
    ge = {(u, v) for u, big in enumerate(sets) for v, small in enumerate(sets)
          if all(reach[x] & small for x in big)}
    return sets, ge


def brute_width(p: Poset) -> int:
    """Largest antichain, by trying subsets from the largest size down."""
    n = p.size
    for r in range(n, 0, -1):
        for subset in itertools.combinations(range(n), r):
            if all(not p.le(x, y) for x in subset for y in subset if x != y):
                return r
    return 0


def brute_join_irreducibles(lat: Lattice) -> list[int]:
    """Elements other than the bottom that are not the join of two strictly smaller elements."""
    out = []
    for x in range(lat.size):
        if x == lat.bottom:
            continue
        if not any(int(lat.join[a, b]) == x for a in range(lat.size) for b in range(lat.size)
                   if a != x and b != x):
            out.append(x)
    return out


def brute_poset_isomorphic(p1: Poset, p2: Poset) -> bool:
    """Try every bijection."""
    if p1.size != p2.size:
        return False
    n = p1.size
    for perm in itertools.permutations(range(n)):
        if all(p1.le(a, b) == p2.le(perm[a], perm[b]) for a in range(n) for b in range(n)):
            return True
    return False


def brute_is_distributive(lat: Lattice) -> bool:
    n = lat.size
    m, j = lat.meet, lat.join
    return all(m[x, j[y, z]] == j[m[x, y], m[x, z]] for x in range(n) for y in range(n) for z in range(n))


def random_digraph(n: int, density: float, rng: random.Random, loops: bool = True) -> Digraph:
    arcs = {(u, v) for u in range(n) for v in range(n) if (loops or u != v) and rng.random() < density}
    return Digraph(n, frozenset(arcs))


def random_preorder(n: int, rng: random.Random) -> Digraph:
    """Reflexive transitive closure of a random digraph, computed by BFS."""
    d = random_digraph(n, rng.choice((0.1, 0.2, 0.3)), rng, loops=False)
    return Digraph(n, frozenset((u, v) for u in range(n) for v in _reach(d, u) | {u}))


def random_poset(n: int, rng: random.Random) -> Poset:
    """Random order: arcs only from higher to lower labels, closed by BFS, then relabeled."""
    dens = rng.choice((0.2, 0.4, 0.6))
    d = Digraph(n, frozenset((u, v) for u in range(n) for v in range(u) if rng.random() < dens))
    perm = list(range(n))
    rng.shuffle(perm)
    ge = {(perm[u], perm[v]) for u in range(n) for v in _reach(d, u) | {u}}
    return Poset(Digraph(n, frozenset(ge)))


GENERATORS: dict[str, Callable[..., Any]] = {
    "labeled_posets": lambda n: list(enumerate_labeled_posets(n)),
    "sublattices": lambda *sizes: list(enumerate_sublattices(ChainProduct(tuple(sizes)))),
    "random_sublattices": lambda seed, count, *sizes: [
        random_sublattice(ChainProduct(tuple(sizes)), r) for r in [random.Random(seed)] for _ in range(count)],
    "random_posets": lambda seed, count, n: [random_poset(n, r) for r in [random.Random(seed)] for _ in range(count)],
    "random_digraphs": lambda seed, count, max_n: [
        random_digraph(r.randint(1, max_n), r.choice((0.1, 0.2, 0.3, 0.45)), r)
        for r in [random.Random(seed)] for _ in range(count)],
    "random_preorders": lambda seed, count, max_n: [
        random_preorder(r.randint(1, max_n), r) for r in [random.Random(seed)] for _ in range(count)],
}


@dataclass
class Corpus:
    """A named list of generator calls; same parameters, same instances."""

    description: str
    instances: list[tuple[str, tuple[Any, ...]]] = field(default_factory=list)

    def materialize(self) -> Iterator[Any]:
        for name, params in self.instances:
            if name not in GENERATORS:
                raise DomainError(f"unknown generator {name!r}")
            yield from GENERATORS[name](*params)

