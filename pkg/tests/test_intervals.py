import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distlat.digraph import Digraph
from distlat.errors import ContractError, DomainError, FormatError
from distlat.intervals import (ChainProduct, Interval, IntervalFamily, Sublattice, all_intervals, close_family,
                               construct_A, construct_D, interval_members, intervals_from_A, is_closed, koh_K,
                               koh_K_inverse, mandatory_intervals, path_covered, remove, respects_aliasing,
                               rival_extract)
from distlat.lattice import are_isomorphic
from distlat.oracle import enumerate_sublattices
from distlat.representations import terminal_lattice

from conftest import families


def arcs_named(p, d, layout):
    return {f"{p.name_vertex(u, layout)}->{p.name_vertex(v, layout)}" for u, v in d.arcs}


def test_product_layouts(grid45):
    p = grid45
    assert (p.d, p.height, len(p.elements)) == (2, 9, 30)
    assert p.c_count == 11 and p.cinf_count == 11
    assert p.cinf_vertex(1, 0) == p.zero and p.cinf_vertex(2, 6) == p.inf
    assert p.cinf_name(p.cinf_vertex(2, 3)) == "3e2"
    assert p.c_name(p.c_vertex(1, 0)) == "0e1"


def test_product_rejects_bad_sizes():
    with pytest.raises(DomainError):
        ChainProduct(())
    with pytest.raises(DomainError):
        ChainProduct((2, 0))


def test_interval_members_examples(grid45):
    got = interval_members(grid45, Interval(2, 1, 3, 2))
    assert got == {x for x in grid45.elements if x[1] >= 3 and x[0] <= 2}
    assert len(got) == 9
    assert interval_members(grid45, Interval(1, 1, 2, 1)) == frozenset()
    assert interval_members(grid45, Interval(1, 1, 0, 4)) == frozenset(grid45.elements)
    with pytest.raises(DomainError):
        interval_members(grid45, Interval(3, 1, 0, 0))
    with pytest.raises(DomainError):
        interval_members(grid45, Interval(1, 2, 5, 0))


def test_family_always_holds_empty_intervals(grid45):
    fam = IntervalFamily.of(grid45)
    assert fam.intervals == mandatory_intervals(grid45)
    assert fam.optional() == []


def test_remove_examples(grid45, one_interval, grid22, not_tight):
    assert remove(grid45, IntervalFamily.of(grid45)).elements == frozenset(grid45.elements)
    assert len(remove(grid45, one_interval)) == 21
    assert remove(grid22, not_tight).elements == {(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)}


def test_remove_everything_is_an_error(grid22):
    with pytest.raises(DomainError, match="empty sublattice"):
        remove(grid22, IntervalFamily.of(grid22, [(1, 1, 0, 2)]))


def test_sublattice_validation(grid22):
    with pytest.raises(ContractError):
        Sublattice(grid22, frozenset({(1, 0), (0, 1)}))
    with pytest.raises(DomainError):
        Sublattice(grid22, frozenset())


def test_rival_extract_examples(grid45, one_interval, grid22, not_tight):
    assert rival_extract(grid45, Sublattice(grid45, frozenset(grid45.elements))).optional() == []
    fam = rival_extract(grid45, remove(grid45, one_interval))
    assert set(fam.optional()) == {Interval(2, 1, a, b) for a in (3, 4, 5) for b in (0, 1, 2)}
    fam2 = rival_extract(grid22, remove(grid22, not_tight))
    assert Interval(1, 2, 2, 1) in fam2 and Interval(2, 1, 2, 1) in fam2


def test_close_family_examples(grid45, one_interval):
    closed = close_family(one_interval)
    assert len(closed.optional()) == 9
    assert close_family(closed) == closed
    assert is_closed(closed) and not is_closed(one_interval)
    p = ChainProduct((2, 2))
    fam = close_family(IntervalFamily.of(p, [(1, 2, 0, 0)]))
    assert Interval(2, 2, 0, 0) in fam


def test_construct_A_examples(grid45, one_interval, grid22, not_tight):
    assert construct_A(IntervalFamily.of(grid45)) == grid45.tournaments()
    assert "3e2->2e1" in arcs_named(grid45, construct_A(one_interval), "c")
    added = construct_A(not_tight).arcs - grid22.tournaments().arcs
    assert {f"{grid22.c_name(u)}->{grid22.c_name(v)}" for u, v in added} == {"2e1->1e2", "2e2->1e1"}


def test_construct_D_examples(grid45, one_interval, grid22, not_tight):
    assert construct_D(IntervalFamily.of(grid45)) == grid45.pointed_chains()
    assert "3e2->3e1" in arcs_named(grid45, construct_D(one_interval), "cinf")
    added = construct_D(not_tight).arcs - grid22.pointed_chains().arcs
    assert {f"{grid22.cinf_name(u)}->{grid22.cinf_name(v)}" for u, v in added} == {"2e1->2e2", "2e2->2e1"}
    assert construct_D(not_tight).is_reflexive()


def test_koh_examples(grid45, one_interval):
    p = grid45
    assert koh_K(p, p.tournaments()) == p.pointed_chains()
    a = construct_A(one_interval)
    k = koh_K(p, a)
    assert k.has_arc(p.cinf_vertex(2, 3), p.cinf_vertex(1, 3))
    assert koh_K_inverse(p, k) == a
    with pytest.raises(ContractError):
        koh_K(p, Digraph(3, frozenset()))


def test_intervals_from_A_examples(grid45, one_interval):
    p = grid45
    assert intervals_from_A(p, p.tournaments()).optional() == []
    assert intervals_from_A(p, construct_A(one_interval)) == one_interval
    with pytest.raises(FormatError):
        intervals_from_A(p, ChainProduct((1,)).tournaments())


def test_path_covered_examples(grid45, one_interval):
    assert path_covered(one_interval, 2, 1, 4, 1) == (True, None)
    covered, witness = path_covered(one_interval, 2, 1, 3, 3)
    assert not covered and witness == (3, 3)
    assert witness in remove(grid45, one_interval)
    empty = IntervalFamily.of(grid45)
    for a in range(1, 5):
        for b in range(6):
            assert not path_covered(empty, 1, 2, a, b)[0]


def _families_11():
    p = ChainProduct((1, 1))
    optional = sorted(set(all_intervals(p)) - mandatory_intervals(p))
    for r in range(len(optional) + 1):
        for chosen in itertools.combinations(optional, r):
            yield IntervalFamily.of(p, chosen)


def test_exhaustive_families_over_11():
    p = ChainProduct((1, 1))
    count = 0
    for fam in _families_11():
        closed = close_family(fam)
        transitive = construct_D(fam).is_transitive()
        assert transitive == (construct_D(fam) == construct_D(closed))
        if respects_aliasing(fam):
            assert is_closed(fam) == transitive
        if is_closed(fam):
            assert transitive and respects_aliasing(fam)
        assert intervals_from_A(p, construct_A(fam)) == fam
        if closed.removed != frozenset(p.elements):
            assert remove(p, fam) == remove(p, closed)
            assert rival_extract(p, remove(p, fam)) == closed
        if respects_aliasing(fam):
            assert koh_K_inverse(p, koh_K(p, construct_A(fam))) == construct_A(fam)
        if is_closed(fam):
            a = construct_A(fam)
            assert a.is_transitive()
            assert a == koh_K_inverse(p, construct_D(fam))
        count += 1
    assert count == 2 ** 14


@pytest.mark.parametrize("sizes", [(2, 2), (1, 1, 1), (2, 3)])
def test_closed_families_from_sublattices(sizes):
    p = ChainProduct(sizes)
    for sub in enumerate_sublattices(p):
        fam = rival_extract(p, sub)
        assert remove(p, fam) == sub
        assert close_family(fam) == fam
        d = construct_D(fam)
        assert d.is_transitive()
        a = construct_A(fam)
        assert a.is_transitive() and a == koh_K_inverse(p, d)
        assert intervals_from_A(p, a) == fam


@pytest.mark.parametrize("sizes", [(2, 2), (2, 3)])
def test_path_criterion_three_ways(sizes):
    p = ChainProduct(sizes)
    for sub in enumerate_sublattices(p):
        fam = rival_extract(p, sub)
        for iv in all_intervals(p):
            covered, witness = path_covered(fam, iv.i, iv.j, iv.alpha, iv.beta)
            inside = interval_members(p, iv) <= fam.removed
            implication = all(x[iv.j - 1] > iv.beta for x in sub.elements if x[iv.i - 1] >= iv.alpha)
            assert covered == inside == implication
            if not covered:
                assert witness in sub


@settings(max_examples=40)
@given(families(p=ChainProduct((2, 2))) | families(p=ChainProduct((1, 1, 1))))
def test_closure_keeps_sublattice_and_terminal_lattice(fam):
    p = fam.product
    closed = close_family(fam)
    if closed.removed == frozenset(p.elements):
        return
    assert remove(p, fam) == remove(p, closed)
    l1, l2 = terminal_lattice(construct_D(fam)), terminal_lattice(construct_D(closed))
    assert are_isomorphic(l1, l2) is not None


@settings(max_examples=25)
@given(st.sets(st.sampled_from(sorted(all_intervals(ChainProduct((4, 5))))), max_size=3))
def test_closure_random_families_45(ivs):
    p = ChainProduct((4, 5))
    fam = IntervalFamily.of(p, ivs)
    closed = close_family(fam)
    assert closed.removed == fam.removed
    assert construct_D(closed).is_transitive()
    if fam.removed != frozenset(p.elements):
        assert remove(p, fam) == remove(p, closed)


def test_aliased_intervals_give_the_same_arc(grid22):
    lone = IntervalFamily.of(grid22, [(1, 2, 0, 1)])
    both = IntervalFamily.of(grid22, [(1, 2, 0, 1), (2, 2, 0, 1)])
    assert construct_D(lone) == construct_D(both)
    assert not respects_aliasing(lone) and respects_aliasing(both)
    assert koh_K_inverse(grid22, koh_K(grid22, construct_A(lone))) != construct_A(lone)
