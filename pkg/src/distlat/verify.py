"""The acceptance checks, shared by ``distlat verify`` and the test suite.

Each check compares the library against the brute-force oracle or against
the worked examples, and reports pass/fail with a short count summary.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .digraph import Poset, bits
from .dilworth import poset_width
from .embeddings import classify, dilworth_decompose, enumerate_correspondence
from .errors import DistlatError, EmptyLatticeError
from .intervals import (ChainProduct, IntervalFamily, construct_A, construct_D, is_closed, remove,
                        rival_extract)
from .lattice import downset_lattice, is_distributive, join_irreducibles, order_isomorphism
from .digraph import condensation, is_strongly_acyclic
from .representations import (duality_map, map_T, max_independent_lattice, quotient_terminal_map,
                              terminal_lattice)
from . import oracle


class CheckFailed(Exception):
    pass


def require(cond: bool, msg: str) -> None:
    if not cond:
        raise CheckFailed(msg)


@dataclass(frozen=True)
class Settings:
    max_poset: int = 5
    random_posets: int = 200
    random_sublattices: int = 500
    correspondence_poset: int = 4
    correspondence_height: int = 5
    random_digraphs: int = 200
    random_preorders: int = 100
    seed: int = 20240601

    @classmethod
    def for_suite(cls, suite: str, max_n: int | None = None) -> Settings:
        if suite == "small":
            s = cls(max_poset=3, random_posets=20, random_sublattices=50, correspondence_poset=2,
                    correspondence_height=3, random_digraphs=30, random_preorders=20)
        elif suite == "all":
            s = cls()
        else:
            raise ValueError(f"unknown suite {suite!r}")
        if max_n is not None:
            s = cls(**{**s.__dict__, "max_poset": min(s.max_poset, max_n),
                       "correspondence_poset": min(s.correspondence_poset, max_n)})
        return s


@dataclass(frozen=True)
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.2f}s)"


def _labeled_posets(max_n: int) -> list[Poset]:
    return [p for n in range(max_n + 1) for p in oracle.enumerate_labeled_posets(n)]


def check_birkhoff(s: Settings) -> str:
    count = 0
    for p in _labeled_posets(s.max_poset):
        lat = downset_lattice(p)
        require(is_distributive(lat), f"downset lattice of {sorted(p.carrier.arcs)} is not distributive")
        jp = join_irreducibles(lat)
        if lat.size <= 16:
            require(sorted(jp.label) == oracle.brute_join_irreducibles(lat),
                    "join-irreducibles differ from the brute-force ones")
        require(order_isomorphism(jp.carrier, p) is not None, f"J of D(P) is not P for {sorted(p.carrier.arcs)}")
        count += 1
    return f"{count} labeled posets"


def _terminal_iso(p: ChainProduct, sub, fam: IntervalFamily) -> None:
    d = construct_D(fam)
    terms = terminal_lattice(d)
    lat = sub.to_lattice()
    images = [terms.index.get(map_T(p, x)) for x in lat.labels]
    require(None not in images and len(set(images)) == terms.size == lat.size, "T is not a bijection onto D(D)")
    for a in range(lat.size):
        for b in range(lat.size):
            require(lat.le(a, b) == terms.le(images[a], images[b]), "T does not preserve the order")
    brute = {frozenset(t) for t in oracle.brute_terminal_sets(d)} - {frozenset(), frozenset(d.vertices)}
    require(brute == {frozenset(t.members()) for t in terms.labels}, "terminal sets differ from brute force")


def _rival_corpus() -> list[tuple[ChainProduct, object]]:
    out = []
    for sizes in ((1, 1), (2, 2), (1, 1, 1)):
        p = ChainProduct(sizes)
        out.extend((p, sub) for sub in oracle.enumerate_sublattices(p))
    return out


def check_rival(s: Settings) -> str:
    corpus = _rival_corpus()
    for p, sub in corpus:
        fam = rival_extract(p, sub)
        require(remove(p, fam) == sub, f"remove(rival_extract(L)) != L for {sorted(sub.elements)}")
        require(is_closed(fam), "extracted family is not closed")
        require(construct_D(fam).is_transitive(), "D of the extracted family is not transitive")
        _terminal_iso(p, sub, fam)
    return f"{len(corpus)} sublattices of (1,1), (2,2), (1,1,1)"


def check_one_interval_example(s: Settings) -> str:
    p = ChainProduct((4, 5))
    fam = IntervalFamily.of(p, [(2, 1, 3, 2)])
    sub = remove(p, fam)
    require(len(sub) == 21, f"|L| = {len(sub)}, expected 21")
    d, a = construct_D(fam), construct_A(fam)
    require(d.has_arc(p.cinf_vertex(2, 3), p.cinf_vertex(1, 3)), "D lacks 3e2 -> 3e1")
    require(a.has_arc(p.c_vertex(2, 3), p.c_vertex(1, 2)), "A lacks 3e2 -> 2e1")
    extra_d = d.arcs - p.pointed_chains().arcs
    extra_a = a.arcs - p.tournaments().arcs
    require(extra_d == {(p.cinf_vertex(2, 3), p.cinf_vertex(1, 3))}, f"D has extra arcs {sorted(extra_d)}")
    require(extra_a == {(p.c_vertex(2, 3), p.c_vertex(1, 2))}, f"A has extra arcs {sorted(extra_a)}")
    mapping = duality_map(fam)
    require(len(mapping) == 21, f"duality map has {len(mapping)} pairs")
    return "|L| = 21, one added arc in each of D and A, 21 <-> 21"


def check_subdirect_not_tight(s: Settings) -> str:
    p = ChainProduct((2, 2))
    fam = IntervalFamily.of(p, [(1, 2, 2, 1), (2, 1, 2, 1)])
    sub = remove(p, fam)
    require(len(sub) == 5, f"|L| = {len(sub)}, expected 5")
    cls = classify(p, sub)
    require((cls.full, cls.subdirect, cls.tight) == (True, True, False), f"classified as {cls}")
    d = construct_D(fam)
    u, v = p.cinf_vertex(1, 2), p.cinf_vertex(2, 2)
    require(d.has_arc(u, v) and d.has_arc(v, u), "D lacks the 2-cycle 2e1 <-> 2e2")
    require(is_strongly_acyclic(construct_A(fam)), "A is not strongly acyclic")
    return "5 elements, subdirect and not tight"


def check_classification(s: Settings) -> str:
    corpus = _rival_corpus()
    for sizes in ((2, 3),):
        p = ChainProduct(sizes)
        corpus.extend((p, sub) for sub in oracle.enumerate_sublattices(p))
    rng = random.Random(s.seed)
    p33 = ChainProduct((3, 3))
    corpus.extend((p33, oracle.random_sublattice(p33, rng)) for _ in range(s.random_sublattices))
    tally = {"full": 0, "subdirect": 0, "tight": 0}
    for p, sub in corpus:
        cls = classify(p, sub, cross_check=True)
        for k in tally:
            tally[k] += getattr(cls, k)
    return f"{len(corpus)} sublattices; full {tally['full']}, subdirect {tally['subdirect']}, tight {tally['tight']}"


def check_dilworth(s: Settings) -> str:
    posets = _labeled_posets(s.max_poset)
    rng = random.Random(s.seed)
    posets += [oracle.random_poset(6, rng) for _ in range(s.random_posets)]
    for p in posets:
        chains = dilworth_decompose(p)
        w = oracle.brute_width(p)
        require(len(chains) == w == poset_width(p), f"{len(chains)} chains, width {w}")
        require(sorted(v for c in chains for v in c) == list(range(p.size)), "chains do not partition")
        require(all(p.is_chain(c) for c in chains), "a part is not a chain")
    return f"{len(posets)} posets"


def _compositions(total: int):
    if total == 0:
        yield ()
        return
    for k in range(1, total + 1):
        for rest in _compositions(total - k):
            yield (k,) + rest


def check_correspondence(s: Settings) -> str:
    point = enumerate_correspondence(Poset.chain(1), (1, 1))
    require(point.embeddings == point.homomorphisms == 5, f"point into (1,1): {point}")
    reps: list[Poset] = []
    for n in range(s.correspondence_poset + 1):
        for p in oracle.enumerate_labeled_posets(n):
            if not any(q.size == n and order_isomorphism(p, q) is not None for q in reps):
                reps.append(p)
    runs = pairs = tight = 0
    for p in reps:
        for total in range(1, s.correspondence_height + 1):
            for sizes in _compositions(total):
                r = enumerate_correspondence(p, sizes)
                runs += 1
                pairs += r.embeddings
                tight += r.tight
    return f"{len(reps)} posets, {runs} targets, {pairs} embedding/cover pairs, {tight} tight"


def check_max_independent(s: Settings) -> str:
    rng = random.Random(s.seed)
    done = empty = 0
    for _ in range(s.random_digraphs):
        n = rng.randint(1, 7)
        a = oracle.random_digraph(n, rng.choice((0.1, 0.2, 0.3, 0.45)), rng)
        sets, ge = oracle.brute_max_independent_order(a)
        try:
            lat = max_independent_lattice(a)
        except EmptyLatticeError:
            require(sets == [frozenset()], "library found no independent set but brute force did")
            empty += 1
            continue
        require(oracle.brute_is_distributive(lat), "A_M is not distributive")
        labels = [frozenset(x.members()) for x in lat.labels]
        require(sorted(labels, key=sorted) == sets, "maximum independent sets differ from brute force")
        pos = [sets.index(x) for x in labels]
        for u in range(lat.size):
            for v in range(lat.size):
                require(lat.le(v, u) == ((pos[u], pos[v]) in ge), "order differs from brute force")
        done += 1
    return f"{done} digraphs, {empty} without independent vertices"


def check_quotients(s: Settings) -> str:
    rng = random.Random(s.seed)
    for _ in range(s.random_preorders):
        d = oracle.random_preorder(rng.randint(1, 7), rng)
        mapping = quotient_terminal_map(d)
        poset, q = condensation(d)
        brute_d = oracle.brute_terminal_sets(d)
        brute_p = oracle.brute_terminal_sets(poset.carrier)
        images = {frozenset(q.class_of[v] for v in t) for t in brute_d}
        require(images == brute_p, "T -> [T] is not onto the terminal sets of the condensation")
        require({frozenset(bits(m)) for m in mapping} == brute_d, "terminal sets differ from brute force")
    return f"{s.random_preorders} preorders"


CRITERIA: list[tuple[int, str, Callable[[Settings], str]]] = [
    (1, "Birkhoff round trip", check_birkhoff),
    (2, "sublattices from closed interval families", check_rival),
    (3, "interval (2,1,3,2) removed from (4,5)", check_one_interval_example),
    (4, "subdirect but not tight sublattice of (2,2)", check_subdirect_not_tight),
    (5, "classification criteria agree", check_classification),
    (6, "Dilworth decomposition size", check_dilworth),
    (7, "embeddings <-> loose chain covers", check_correspondence),
    (8, "maximum independent sets form a distributive lattice", check_max_independent),
    (9, "condensation quotient of terminal sets", check_quotients),
]


def run_criterion(number: int, settings: Settings) -> Result:
    _, title, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        detail, ok = fn(settings), True
    except (CheckFailed, DistlatError, AssertionError) as exc:
        detail, ok = f"{type(exc).__name__}: {exc}", False
    return Result(number, title, ok, detail, time.perf_counter() - start)


def run_suite(settings: Settings) -> list[Result]:
    return [run_criterion(n, settings) for n, _, _ in CRITERIA]
