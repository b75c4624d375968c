import pytest
from hypothesis import given

from distlat.digraph import (Digraph, Poset, QuotientMap, condensation, is_acyclic, is_independent,
                             is_strongly_acyclic, reachable, transitive_closure, width)
from distlat.errors import ContractError, DomainError
from distlat.intervals import ChainProduct, IntervalFamily, construct_D
from distlat.oracle import brute_independent_sets

from conftest import digraphs, posets


def path(*arcs, n=None):
    n = n if n is not None else 1 + max(max(a) for a in arcs)
    return Digraph(n, frozenset(arcs))


def test_reachable_along_chain():
    d = path((0, 1), (1, 2))
    assert reachable(d, 0, 2)
    assert not reachable(d, 2, 0)


def test_reachable_nontrivial_needs_a_loop():
    assert reachable(path((0, 0)), 0, 0, require_nontrivial=True)
    assert not reachable(Digraph(1, frozenset()), 0, 0, require_nontrivial=True)
    assert reachable(Digraph(1, frozenset()), 0, 0)


def test_reachable_rejects_bad_vertex():
    with pytest.raises(DomainError):
        reachable(Digraph(2, frozenset()), 0, 5)


def test_arc_endpoint_validation():
    with pytest.raises(DomainError):
        Digraph(2, frozenset({(0, 2)}))


def test_transitive_closure_examples():
    assert transitive_closure(path((0, 1), (1, 2))).arcs == {(0, 1), (1, 2), (0, 2)}
    two_cycle = transitive_closure(path((0, 1), (1, 0)))
    assert two_cycle.arcs == {(0, 1), (1, 0), (0, 0), (1, 1)}


@given(digraphs(max_n=8))
def test_closure_idempotent_and_monotone(d):
    c = transitive_closure(d)
    assert d.arcs <= c.arcs
    assert transitive_closure(c) == c
    assert c.is_transitive()


@given(digraphs(max_n=6))
def test_reachable_matches_closure(d):
    c = transitive_closure(d)
    for u in d.vertices:
        for v in d.vertices:
            assert reachable(d, u, v) == (u == v or c.has_arc(u, v))


def test_acyclicity_predicates():
    loops = path((0, 0), (1, 1))
    assert is_acyclic(loops) and not is_strongly_acyclic(loops)
    cyc = path((0, 1), (1, 0))
    assert not is_acyclic(cyc) and not is_strongly_acyclic(cyc)
    dag = path((2, 1), (1, 0), (2, 0))
    assert is_acyclic(dag) and is_strongly_acyclic(dag)


def test_poset_validation():
    with pytest.raises(ContractError):
        Poset(Digraph(2, frozenset({(0, 1)})))  # not reflexive
    with pytest.raises(ContractError):
        Poset(Digraph(2, frozenset({(0, 0), (1, 1), (0, 1), (1, 0)})))
    p = Poset.from_relations(3, {(2, 1), (1, 0)})
    assert p.le(0, 2) and not p.le(2, 0)
    assert p.cover_pairs() == [(1, 0), (2, 1)]


def test_condensation_of_poset_is_identity():
    p = Poset.from_relations(3, {(2, 0), (1, 0)})
    q, m = condensation(p.carrier)
    assert m.class_of == (0, 1, 2)
    assert q == p


def test_condensation_merges_two_cycle_of_subdirect_example():
    p = ChainProduct((2, 2))
    d = transitive_closure(construct_D(IntervalFamily.of(p, [(1, 2, 2, 1), (2, 1, 2, 1)])))
    q, m = condensation(d)
    assert q.size == 5
    assert m.class_of[p.cinf_vertex(1, 2)] == m.class_of[p.cinf_vertex(2, 2)]
    a, b = m.class_of[p.cinf_vertex(1, 1)], m.class_of[p.cinf_vertex(2, 1)]
    assert not q.le(a, b) and not q.le(b, a)


def test_condensation_of_clique():
    n = 4
    q, m = condensation(Digraph(n, frozenset((u, v) for u in range(n) for v in range(n))))
    assert q.size == 1 and m.members(0) == [0, 1, 2, 3]


def test_condensation_requires_preorder():
    with pytest.raises(ContractError):
        condensation(path((0, 1), (1, 2)))


@given(digraphs(max_n=6))
def test_condensation_preserves_reachability(d):
    pre = transitive_closure(d.reflexive_closure())
    q, m = condensation(pre)
    for u in pre.vertices:
        for v in pre.vertices:
            assert pre.has_arc(u, v) == q.le(m.class_of[v], m.class_of[u])


def test_quotient_map_validation():
    with pytest.raises(DomainError):
        QuotientMap(2, (0, 2), 2)


def test_width_examples():
    assert width(Digraph(4, frozenset())) == 4
    assert width(ChainProduct((3,)).tournaments()) == 1
    assert width(ChainProduct((4, 5)).tournaments()) == 2
    assert width(Digraph(3, frozenset({(0, 0), (1, 1), (2, 2)}))) == 0


@given(digraphs(max_n=7))
def test_width_matches_brute_force(d):
    assert width(d) == max(len(s) for s in brute_independent_sets(d))
    assert width(d) == width(transitive_closure(d))


@given(digraphs(max_n=6))
def test_is_independent_matches_brute_force(d):
    brute = brute_independent_sets(d)
    for mask in range(1 << d.vertex_count):
        members = frozenset(v for v in d.vertices if mask >> v & 1)
        assert is_independent(d, mask) == (members in brute)


@given(posets(max_n=6))
def test_poset_strategy_is_valid(p):
    assert p.carrier.is_preorder() and p.carrier.is_antisymmetric()
