"""Embeddings of distributive lattices into products of chains.

Covers sublattice classification (full, subdirect, tight), chain
decompositions, recovery of the join-irreducible poset from a tight
sublattice, and the correspondence between embeddings and loose chain
covers of the join-irreducibles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

import numpy as np

from .digraph import Digraph, Poset, bits, is_acyclic, is_strongly_acyclic, transitive_closure
from .dilworth import dilworth_chains
from .errors import ContractError, DomainError, InvariantError
from .intervals import (ChainProduct, Element, IntervalFamily, Sublattice, construct_A, construct_D,
                        rival_extract)
from .lattice import (Lattice, downset_lattice, height, is_distributive, join_irreducibles,
                      order_isomorphism)


@dataclass(frozen=True)
class Classification:
    full: bool
    subdirect: bool
    tight: bool

    def __post_init__(self) -> None:
        if self.tight and not self.subdirect:
            raise InvariantError("tight but not subdirect")
        if self.subdirect and not self.full:
            raise InvariantError("subdirect but not full")

    def __str__(self) -> str:
        flag = lambda b: "true" if b else "false"  # noqa: E731
        return f"full={flag(self.full)} subdirect={flag(self.subdirect)} tight={flag(self.tight)}"


def _is_cover(x: Element, y: Element) -> bool:
    diff = [a - b for a, b in zip(x, y)]
    return sorted(diff) == [0] * (len(diff) - 1) + [1]


def classify_by_definition(p: ChainProduct, elements: Iterable[Element]) -> Classification:
    els = set(elements)
    full = p.bottom in els and p.top in els
    subdirect = full and all({x[i] for x in els} == set(range(n + 1)) for i, n in enumerate(p.sizes))
    tight = False
    if full:
        lat = Sublattice(p, frozenset(els)).to_lattice()
        tight = all(_is_cover(lat.labels[a], lat.labels[b]) for a in range(lat.size) for b in lat.lower_covers[a])
    return Classification(full, subdirect, tight)


def classify_by_digraphs(fam: IntervalFamily) -> Classification:
    """Read the classification off ``D_C(I)`` and ``A_C(I)`` of a closed family."""
    p = fam.product
    d = construct_D(fam)
    a = construct_A(fam)
    full = not (d.succ[p.zero] & ~(1 << p.zero)) and not (d.pred[p.inf] & ~(1 << p.inf))
    up_edges = any(d.has_arc(p.cinf_vertex(i, al), p.cinf_vertex(i, al + 1))
                   for i in range(1, p.d + 1) for al in range(p.n(i) + 1))
    subdirect = not up_edges
    if (a.looped() == 0) != subdirect or is_strongly_acyclic(a) != subdirect:
        raise InvariantError("A-digraph criteria for subdirectness disagree with D")
    return Classification(full, subdirect, is_acyclic(d))


def classify(p: ChainProduct, sub: Sublattice, cross_check: bool = True) -> Classification:
    """Full / subdirect / tight, from the definitions.

    With ``cross_check`` the result is compared against the digraph criteria
    on the extracted closed family and against the height criterion.
    """
    result = classify_by_definition(p, sub.elements)
    if cross_check:
        via_graphs = classify_by_digraphs(rival_extract(p, sub))
        if via_graphs != result:
            raise InvariantError(f"definitional {result} but digraph criteria give {via_graphs}")
        if (height(sub.to_lattice()) == p.height) != result.tight:
            raise InvariantError("height criterion disagrees with tightness")
    return result


def dilworth_decompose(p: Poset) -> list[list[int]]:
    """Partition into ``width(p)`` chains, each listed bottom to top."""
    return dilworth_chains(p)


@dataclass(frozen=True, eq=False)
class Embedding:
    """A lattice embedding ``source -> product``; ``image[x]`` is the tuple of element ``x``."""

    source: Lattice
    product: ChainProduct
    image: tuple[Element, ...]

    def __post_init__(self) -> None:
        img = tuple(tuple(int(a) for a in x) for x in self.image)
        object.__setattr__(self, "image", img)
        if len(img) != self.source.size:
            raise ContractError("one image per source element required")
        if any(not self.product.contains(x) for x in img):
            raise ContractError("image outside the product")
        if len(set(img)) != len(img):
            raise ContractError("embedding is not injective")
        arr = np.asarray(img, dtype=np.int64).reshape(len(img), self.product.d)
        lat = self.source
        if not (np.array_equal(arr[lat.meet], np.minimum(arr[:, None], arr[None, :]))
                and np.array_equal(arr[lat.join], np.maximum(arr[:, None], arr[None, :]))):
            raise ContractError("map does not preserve meet and join")

    def image_sublattice(self) -> Sublattice:
        return Sublattice(self.product, frozenset(self.image))

    def same_as(self, other: Embedding) -> bool:
        return self.product == other.product and self.image == other.image


def embed_from_decomposition(lat: Lattice, dec: Sequence[Sequence[int]]) -> Embedding:
    """``x -> (|S_x & C_1|, ..., |S_x & C_d|)`` for a chain decomposition of ``J_L``.

    ``dec`` lists chains of vertices of ``join_irreducibles(lat).carrier``.
    """
    if not is_distributive(lat):
        raise ContractError("lattice must be distributive")
    jp = join_irreducibles(lat)
    flat = [v for c in dec for v in c]
    if sorted(flat) != list(range(jp.carrier.size)):
        raise ContractError("decomposition is not a partition of the join-irreducibles")
    if any(not c for c in dec) or not dec:
        raise ContractError("decomposition needs at least one non-empty chain")
    for c in dec:
        if not jp.carrier.is_chain(c):
            raise ContractError(f"{list(c)} is not a chain")
    image = tuple(tuple(sum(1 for v in c if lat.leq[jp.label[v], x]) for c in dec) for x in range(lat.size))
    return Embedding(lat, ChainProduct(tuple(len(c) for c in dec)), image)


def d_star(p: ChainProduct, d: Digraph) -> Digraph:
    """Subgraph induced on ``C* = C^inf - {0, inf}``; vertex ``k`` is ``C^inf`` vertex ``k + 1``."""
    if d.vertex_count != p.cinf_count:
        raise DomainError(f"expected a digraph on {p.cinf_count} vertices")
    sub, _ = d.induced(range(1, p.inf))
    return sub


def recover_J(p: ChainProduct, sub: Sublattice) -> tuple[Poset, tuple[int, ...]]:
    """Join-irreducible poset of a tight sublattice, read from its digraph.

    Returns the poset on ``C*`` (vertex ``k`` is ``C^inf`` vertex ``k + 1``)
    and, per vertex ``alpha e_i``, the index in ``sub.to_lattice()`` of the
    least element with ``x_i >= alpha``.  The map is checked to be an order
    isomorphism onto the join-irreducibles.
    """
    cls = classify(p, sub)
    if not cls.tight:
        raise DomainError("sublattice is not tight; use the condensation of its digraph instead")
    d = transitive_closure(construct_D(rival_extract(p, sub)))
    star = Poset(d_star(p, d))
    lat = sub.to_lattice()
    labels = []
    for k in range(star.size):
        i, alpha = p.cinf_levels[k + 1]
        labels.append(lat.meet_all([e for e, x in enumerate(lat.labels) if x[i - 1] >= alpha]))
    jp = join_irreducibles(lat)
    if sorted(labels) != sorted(jp.label):
        raise InvariantError("recovered vertices are not the join-irreducibles")
    for u in range(star.size):
        for v in range(star.size):
            if star.le(u, v) != lat.le(labels[u], labels[v]):
                raise InvariantError("recovered order differs from the lattice order")
    if order_isomorphism(star, jp.carrier) is None:
        raise InvariantError("recovered poset is not isomorphic to J_L")
    return star, tuple(labels)


class Pointed(Enum):
    """Adjoined minimum and maximum of a pointed poset ``P^inf``."""

    BOTTOM = "bot"
    TOP = "top"


Image = Union[int, Pointed]


def pointed_le(poset: Poset, a: Image, b: Image) -> bool:
    if a is Pointed.BOTTOM or b is Pointed.TOP:
        return True
    if a is Pointed.TOP or b is Pointed.BOTTOM:
        return False
    return poset.le(a, b)


@dataclass(frozen=True)
class LooseChainCover:
    """Chain homomorphisms into a poset whose images cover it.

    ``chains[i][k]`` is the image of level ``k + 1`` of chain ``i + 1``.
    Images may be :class:`Pointed` values; then the cover is the restriction
    of a pointed homomorphism ``C^inf -> P^inf`` that is not full.
    """

    poset: Poset
    chains: tuple[tuple[Image, ...], ...]

    def __post_init__(self) -> None:
        chains = tuple(tuple(c) for c in self.chains)
        object.__setattr__(self, "chains", chains)
        if not chains or any(not c for c in chains):
            raise ContractError("a cover needs at least one chain, each of positive length")
        for c in chains:
            for v in c:
                if isinstance(v, int) and not 0 <= v < self.poset.size:
                    raise ContractError(f"image {v} is not a vertex of the poset")
            for a, b in zip(c, c[1:]):
                if not pointed_le(self.poset, a, b):
                    raise ContractError("chain map is not order preserving")
        hit = {v for c in chains for v in c if isinstance(v, int)}
        if hit != set(range(self.poset.size)):
            raise ContractError("chain maps do not cover every vertex of the poset")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.chains)

    @property
    def is_full(self) -> bool:
        return all(isinstance(v, int) for c in self.chains for v in c)

    @property
    def is_chain_cover(self) -> bool:
        return self.is_full and all(len(set(c)) == len(c) for c in self.chains)

    @property
    def is_decomposition(self) -> bool:
        return self.is_chain_cover and sum(self.sizes) == self.poset.size


def _principal_elements(e: Embedding, base: Poset | None) -> tuple[Poset, list[int], list[int]]:
    """Base poset and, per vertex ``p``, the source elements ``D_p`` and ``D_p - {p}``."""
    lat = e.source
    if base is None:
        if not is_distributive(lat):
            raise ContractError("embedding source must be distributive")
        jp = join_irreducibles(lat)
        principal = list(jp.label)
        lower = []
        for x in principal:
            (y,) = lat.lower_covers[x]
            lower.append(y)
        return jp.carrier, principal, lower
    principal, lower = [], []
    for p in range(base.size):
        down = frozenset(bits(base.down(p)))
        try:
            principal.append(lat.index[down])
            lower.append(lat.index[down - {p}])
        except KeyError:
            raise ContractError("embedding source is not the downset lattice of the base poset") from None
    return base, principal, lower


def embedding_to_cover(e: Embedding, base: Poset | None = None) -> LooseChainCover:
    """``phi_E``: the fibre of ``p`` is ``T_{E(D_p)} - T_{E(D_p - {p})}``.

    Without ``base`` the source is presented through its join-irreducibles;
    with ``base`` the source must be ``downset_lattice(base)``.
    """
    poset, principal, lower = _principal_elements(e, base)
    img = e.image
    lo, hi = img[e.source.bottom], img[e.source.top]
    chains = []
    for i, n in enumerate(e.product.sizes):
        chain: list[Image] = []
        for alpha in range(1, n + 1):
            if alpha <= lo[i]:
                chain.append(Pointed.BOTTOM)
                continue
            if alpha > hi[i]:
                chain.append(Pointed.TOP)
                continue
            owners = [p for p in range(poset.size) if img[lower[p]][i] < alpha <= img[principal[p]][i]]
            if len(owners) != 1:
                raise InvariantError(f"level {alpha}e{i + 1} lies in {len(owners)} fibres")
            chain.append(owners[0])
        chains.append(tuple(chain))
    try:
        return LooseChainCover(poset, tuple(chains))
    except ContractError as exc:
        raise InvariantError(f"phi_E is not a surjective homomorphism: {exc}") from None


def cover_to_embedding(phi: LooseChainCover, source: Lattice | None = None) -> Embedding:
    """``E_phi: S -> V phi^{-1}(S)`` on ``downset_lattice(phi.poset)``."""
    lat = source if source is not None else downset_lattice(phi.poset)
    image = []
    for s in lat.labels:
        x = []
        for chain in phi.chains:
            level = 0
            for k, v in enumerate(chain, 1):
                if v is Pointed.BOTTOM or (isinstance(v, int) and v in s):
                    level = k
            x.append(level)
        image.append(tuple(x))
    return Embedding(lat, ChainProduct(phi.sizes), tuple(image))


def enumerate_embeddings(lat: Lattice, p: ChainProduct) -> list[tuple[Element, ...]]:
    """Every lattice embedding ``lat -> p``, as image tuples in element order.

    Backtracking along a linear extension: an element with several lower
    covers has its image forced to their join; meets with earlier elements
    are checked as each image is placed.
    """
    pel = p.elements
    m = len(pel)
    pidx = {x: k for k, x in enumerate(pel)}
    pmin = [[pidx[tuple(map(min, x, y))] for y in pel] for x in pel]
    pmax = [[pidx[tuple(map(max, x, y))] for y in pel] for x in pel]
    above = [[b for b in range(m) if b != a and pmax[a][b] == b] for a in range(m)]
    n = lat.size
    seq = sorted(range(n), key=lambda x: (int(lat.leq[:, x].sum()), x))
    meet = lat.meet.tolist()
    img = [-1] * n
    out = []

    def place(k: int, used: int) -> None:
        if k == n:
            out.append(tuple(pel[a] for a in img))
            return
        x = seq[k]
        lows = lat.lower_covers[x]
        if not lows:
            cands: Iterable[int] = range(m)
        elif len(lows) == 1:
            cands = above[img[lows[0]]]
        else:
            j = img[lows[0]]
            for y in lows[1:]:
                j = pmax[j][img[y]]
            cands = (j,)
        for c in cands:
            if used >> c & 1:
                continue
            if all(img[meet[x][z]] == pmin[c][img[z]] for z in seq[:k]):
                img[x] = c
                place(k + 1, used | 1 << c)
        img[x] = -1

    place(0, 0)
    join = lat.join
    valid = []
    for emb in out:
        arr = np.asarray(emb)
        if np.array_equal(arr[join], np.maximum(arr[:, None], arr[None, :])):
            valid.append(emb)
    return valid


def enumerate_pointed_homs(poset: Poset, sizes: Sequence[int]) -> list[LooseChainCover]:
    """Surjective pointed homomorphisms ``C^inf -> P^inf``, restricted to ``C*``."""
    values: list[Image] = [Pointed.BOTTOM, *range(poset.size), Pointed.TOP]

    def monotone(length: int) -> list[tuple[Image, ...]]:
        seqs: list[tuple[Image, ...]] = [()]
        for _ in range(length):
            seqs = [s + (v,) for s in seqs for v in values if not s or pointed_le(poset, s[-1], v)]
        return seqs

    per_chain = [monotone(n) for n in sizes]
    out = []
    for chains in itertools.product(*per_chain):
        hit = {v for c in chains for v in c if isinstance(v, int)}
        if len(hit) == poset.size:
            out.append(LooseChainCover(poset, chains))
    return out


def chain_decompositions(poset: Poset, sizes: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """Ordered partitions of the poset into chains of the given sizes, each listed bottom up.

    Brute force over coordinate assignments.
    """
    d = len(sizes)
    out = []
    for assign in itertools.product(range(d), repeat=poset.size):
        parts = [[v for v in range(poset.size) if assign[v] == i] for i in range(d)]
        if [len(c) for c in parts] != list(sizes):
            continue
        if all(poset.is_chain(c) for c in parts):
            out.append(tuple(tuple(sorted(c, key=lambda v: poset.down(v).bit_count())) for c in parts))
    return out


@dataclass(frozen=True)
class CorrespondenceReport:
    poset_size: int
    sizes: tuple[int, ...]
    embeddings: int
    homomorphisms: int
    full: int
    subdirect: int
    tight: int
    decompositions: int


def enumerate_correspondence(poset: Poset, sizes: Sequence[int]) -> CorrespondenceReport:
    """Enumerate both sides of the embedding / loose chain cover correspondence and check it.

    Raises :class:`InvariantError` if any round trip, count or stratum
    alignment fails.
    """
    p = ChainProduct(tuple(sizes))
    lat = downset_lattice(poset)
    embeddings = enumerate_embeddings(lat, p)
    homs = enumerate_pointed_homs(poset, p.sizes)
    if len(embeddings) != len(homs):
        raise InvariantError(f"{len(embeddings)} embeddings but {len(homs)} homomorphisms")
    emb_index = {img: k for k, img in enumerate(embeddings)}
    hom_index = {h.chains: k for k, h in enumerate(homs)}
    forward = []
    for h in homs:
        e = cover_to_embedding(h, lat)
        k = emb_index.get(e.image)
        if k is None:
            raise InvariantError("E_phi is not among the enumerated embeddings")
        forward.append(k)
    if sorted(forward) != list(range(len(embeddings))):
        raise InvariantError("phi -> E_phi is not a bijection")
    lat_covers = [(a, b) for a in range(lat.size) for b in lat.lower_covers[a]]
    counts = {"full": 0, "subdirect": 0, "tight": 0}
    for k, img in enumerate(embeddings):
        e = Embedding(lat, p, img)
        phi = embedding_to_cover(e, base=poset)
        j = hom_index.get(phi.chains)
        if j is None or forward[j] != k:
            raise InvariantError("phi_E does not invert E_phi")
        if cover_to_embedding(phi, lat).image != img:
            raise InvariantError("E_{phi_E} differs from E")
        els = set(img)
        full = p.bottom in els and p.top in els
        subdirect = full and all({x[i] for x in img} == set(range(n + 1)) for i, n in enumerate(p.sizes))
        tight = full and all(_is_cover(img[a], img[b]) for a, b in lat_covers)
        Classification(full, subdirect, tight)
        if (full, subdirect, tight) != (phi.is_full, phi.is_chain_cover, phi.is_decomposition):
            raise InvariantError(f"strata disagree for embedding {img}")
        counts["full"] += full
        counts["subdirect"] += subdirect
        counts["tight"] += tight
    decs = chain_decompositions(poset, p.sizes)
    if len(decs) != counts["tight"]:
        raise InvariantError(f"{counts['tight']} tight embeddings but {len(decs)} chain decompositions")
    if decs:
        jp = join_irreducibles(lat)
        vertex_of = {lat.labels[x]: v for v, x in enumerate(jp.label)}
        tight_images = {img for img in embeddings if hom_index and homs[_inverse(forward)[emb_index[img]]].is_decomposition}
        for dec in decs:
            jdec = [[vertex_of[frozenset(bits(poset.down(v)))] for v in c] for c in dec]
            e = embed_from_decomposition(lat, jdec)
            if e.image not in tight_images:
                raise InvariantError("a chain decomposition does not give a tight embedding")
    return CorrespondenceReport(poset.size, p.sizes, len(embeddings), len(homs), counts["full"],
                                counts["subdirect"], counts["tight"], len(decs))


def _inverse(forward: list[int]) -> list[int]:
    inv = [0] * len(forward)
    for j, k in enumerate(forward):
        inv[k] = j
    return inv
