"""Text formats for digraphs, lattices, products, interval families, sublattices and covers.

All formats are line based: a header line, then one record per line.
Blank lines and anything after ``#`` are ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .digraph import Digraph, Poset, transitive_closure
from .embeddings import LooseChainCover, Pointed
from .errors import FormatError
from .intervals import ChainProduct, Interval, IntervalFamily, Sublattice
from .lattice import Lattice, lattice_from_order


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            yield no, toks


def _ints(no: int, toks: list[str], count: int | None = None) -> list[int]:
    if count is not None and len(toks) != count:
        raise FormatError(f"line {no}: expected {count} numbers, got {len(toks)}")
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise FormatError(f"line {no}: not an integer in {' '.join(toks)!r}") from None


def _header(text: str, keyword: str) -> tuple[list[int], list[tuple[int, list[str]]]]:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != keyword:
        raise FormatError(f"expected a '{keyword}' header line")
    no, toks = lines[0]
    return _ints(no, toks[1:]), lines[1:]


def parse_digraph(text: str) -> Digraph:
    """``digraph n`` then ``arc u v`` lines; no closure is applied."""
    head, body = _header(text, "digraph")
    if len(head) != 1 or head[0] < 0:
        raise FormatError("header must be 'digraph <n>' with n >= 0")
    n = head[0]
    arcs = set()
    for no, toks in body:
        if toks[0] != "arc":
            raise FormatError(f"line {no}: unknown record {toks[0]!r}")
        u, v = _ints(no, toks[1:], 2)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {no}: vertex out of range [0, {n})")
        arcs.add((u, v))
    return Digraph(n, frozenset(arcs))


def parse_poset(text: str, close: bool = False) -> Poset:
    """A digraph file read as a poset; ``close`` adds reflexive and transitive closure first."""
    d = parse_digraph(text)
    if close:
        d = transitive_closure(d.reflexive_closure())
    return Poset(d)


def parse_lattice(text: str) -> Lattice:
    """``lattice n`` then ``le u v`` lines (``u <= v``); the order is closed after validation."""
    head, body = _header(text, "lattice")
    if len(head) != 1 or head[0] < 1:
        raise FormatError("header must be 'lattice <n>' with n >= 1")
    n = head[0]
    greater = set()
    for no, toks in body:
        if toks[0] != "le":
            raise FormatError(f"line {no}: unknown record {toks[0]!r}")
        u, v = _ints(no, toks[1:], 2)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {no}: element out of range [0, {n})")
        greater.add((v, u))
    return lattice_from_order(Poset.from_relations(n, greater))


def _product_line(lines: list[tuple[int, list[str]]]) -> ChainProduct | None:
    found = [(no, toks) for no, toks in lines if toks[0] == "product"]
    if len(found) > 1:
        raise FormatError(f"line {found[1][0]}: second 'product' line")
    if not found:
        return None
    no, toks = found[0]
    sizes = _ints(no, toks[1:])
    if not sizes:
        raise FormatError(f"line {no}: product needs at least one chain")
    return ChainProduct(tuple(sizes))


def parse_product(text: str) -> ChainProduct:
    p = _product_line(list(_lines(text)))
    if p is None:
        raise FormatError("no 'product' line")
    return p


def _resolve_product(lines: list[tuple[int, list[str]]], product: ChainProduct | None) -> ChainProduct:
    in_file = _product_line(lines)
    if in_file is not None and product is not None and in_file != product:
        raise FormatError(f"file declares product {in_file.sizes} but {product.sizes} was given")
    p = in_file or product
    if p is None:
        raise FormatError("no product given: add a 'product' line or pass one explicitly")
    return p


def parse_intervals(text: str, product: ChainProduct | None = None) -> IntervalFamily:
    """Optional ``product n1 .. nd`` line and ``interval i j alpha beta`` lines."""
    lines = list(_lines(text))
    p = _resolve_product(lines, product)
    ivs = []
    for no, toks in lines:
        if toks[0] == "product":
            continue
        if toks[0] != "interval":
            raise FormatError(f"line {no}: unknown record {toks[0]!r}")
        ivs.append(Interval(*_ints(no, toks[1:], 4)))
    return IntervalFamily.of(p, ivs)


def parse_sublattice(text: str, product: ChainProduct | None = None) -> Sublattice:
    """Optional ``product`` line and ``elem x1 .. xd`` lines."""
    lines = list(_lines(text))
    p = _resolve_product(lines, product)
    els = set()
    for no, toks in lines:
        if toks[0] == "product":
            continue
        if toks[0] != "elem":
            raise FormatError(f"line {no}: unknown record {toks[0]!r}")
        x = tuple(_ints(no, toks[1:], p.d))
        if not p.contains(x):
            raise FormatError(f"line {no}: {x} is not in the product {p.sizes}")
        els.add(x)
    return Sublattice(p, frozenset(els))


def parse_cover(text: str, base_dir: Path | str = ".") -> LooseChainCover:
    """``cover <poset-file>`` then ``chain <len> v_1 .. v_len``; images may be ``bot`` or ``top``.

    The poset file path is resolved against ``base_dir`` and read with
    reflexive and transitive closure applied.
    """
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "cover" or len(lines[0][1]) != 2:
        raise FormatError("header must be 'cover <poset-file>'")
    path = Path(base_dir) / lines[0][1][1]
    try:
        poset = parse_poset(path.read_text(), close=True)
    except OSError as exc:
        raise FormatError(f"cannot read poset file {path}: {exc.strerror}") from None
    special = {"bot": Pointed.BOTTOM, "top": Pointed.TOP}
    chains = []
    for no, toks in lines[1:]:
        if toks[0] != "chain":
            raise FormatError(f"line {no}: unknown record {toks[0]!r}")
        (length,) = _ints(no, toks[1:2], 1)
        images = toks[2:]
        if len(images) != length:
            raise FormatError(f"line {no}: chain of length {length} lists {len(images)} images")
        chains.append(tuple(special[t] if t in special else _ints(no, [t])[0] for t in images))
    return LooseChainCover(poset, tuple(chains))


def format_cover(phi: LooseChainCover, poset_file: str) -> str:
    names = {Pointed.BOTTOM: "bot", Pointed.TOP: "top"}
    out = [f"cover {poset_file}"]
    for c in phi.chains:
        out.append(" ".join(["chain", str(len(c))] + [names.get(v, str(v)) for v in c]))
    return "\n".join(out) + "\n"
