"""Minimum chain partitions of posets (Dilworth) via bipartite matching."""

from __future__ import annotations

from .digraph import Digraph, Poset, bits, width


def _max_matching(p: Poset) -> dict[int, int]:
    """Maximum matching on the split graph of the strict order: ``u -> v`` for ``u > v``.

    Kuhn's augmenting paths, vertices tried in increasing id order.
    """
    below = [sorted(bits(p.down(u) & ~(1 << u))) for u in range(p.size)]
    match_up: dict[int, int] = {}  # lower vertex -> upper vertex matched to it

    def augment(u: int, seen: set[int]) -> bool:
        for v in below[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_up or augment(match_up[v], seen):
                match_up[v] = u
                return True
        return False

    for u in range(p.size):
        augment(u, set())
    return {u: v for v, u in match_up.items()}


def dilworth_chains(p: Poset) -> list[list[int]]:
    """Partition into the minimum number of chains.

    Each chain is listed bottom to top; chains are sorted by their least
    vertex id.  By Konig's theorem the number of chains is the width.
    """
    down = _max_matching(p)
    has_upper = set(down.values())
    chains = []
    for top in range(p.size):
        if top in has_upper:
            continue
        chain = [top]
        while chain[-1] in down:
            chain.append(down[chain[-1]])
        chains.append(chain[::-1])
    chains.sort(key=min)
    return chains


def poset_width(p: Poset) -> int:
    """Largest antichain: maximum independent set of the loop-free carrier."""
    strict = Digraph(p.size, frozenset((a, b) for a, b in p.carrier.arcs if a != b))
    return width(strict)
