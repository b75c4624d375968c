import random

import pytest

from distlat.digraph import Digraph
from distlat.errors import ResourceGuardError
from distlat.intervals import ChainProduct
from distlat.oracle import (Corpus, brute_terminal_sets, enumerate_labeled_posets, enumerate_sublattices,
                            random_digraph, random_poset, random_preorder, random_sublattice)


def test_labeled_poset_counts():
    assert [sum(1 for _ in enumerate_labeled_posets(n)) for n in range(6)] == [1, 1, 3, 19, 219, 4231]


def test_labeled_posets_are_distinct():
    seen = {p.carrier.arcs for p in enumerate_labeled_posets(4)}
    assert len(seen) == 219


def test_poset_guard():
    with pytest.raises(ResourceGuardError):
        next(enumerate_labeled_posets(6))


def test_sublattice_counts():
    assert sum(1 for _ in enumerate_sublattices(ChainProduct((1,)))) == 3
    assert sum(1 for _ in enumerate_sublattices(ChainProduct((1, 1)))) == 12
    with pytest.raises(ResourceGuardError):
        next(enumerate_sublattices(ChainProduct((3, 3))))


def test_brute_terminal_sets():
    assert len(brute_terminal_sets(ChainProduct((4, 5)).pointed_chains())) == 32
    assert len(brute_terminal_sets(Digraph(5, frozenset()))) == 32
    with pytest.raises(ResourceGuardError):
        brute_terminal_sets(Digraph(21, frozenset()))


def test_generators_are_deterministic():
    for gen in (lambda r: random_digraph(5, 0.3, r), lambda r: random_preorder(5, r), lambda r: random_poset(5, r),
                lambda r: random_sublattice(ChainProduct((3, 3)), r)):
        assert gen(random.Random(7)) == gen(random.Random(7))


def test_random_preorder_is_preorder():
    rng = random.Random(1)
    for _ in range(20):
        assert random_preorder(rng.randint(1, 7), rng).is_preorder()


def test_corpus_materializes_in_order():
    c = Corpus("mixed", [("labeled_posets", (2,)), ("random_posets", (3, 4, 5))])
    first = list(c.materialize())
    assert len(first) == 3 + 4
    assert [p.carrier for p in first] == [p.carrier for p in c.materialize()]
