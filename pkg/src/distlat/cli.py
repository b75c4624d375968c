"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 malformed input, 3 failed
verification or internal consistency check.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import formats
from .digraph import Poset
from .dilworth import poset_width
from .embeddings import (Embedding, classify, cover_to_embedding, dilworth_decompose, embed_from_decomposition,
                         enumerate_correspondence)
from .errors import DistlatError, FormatError, InvariantError
from .intervals import ChainProduct, IntervalFamily, construct_A, construct_D, is_closed, remove, rival_extract
from .lattice import Lattice, birkhoff_map, covers, downset_lattice, join_irreducibles
from .render import digraph_dot, hasse_dot, lattice_dot
from .verify import Settings, run_suite


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _product(args: argparse.Namespace) -> ChainProduct | None:
    if not args.product:
        return None
    try:
        sizes = tuple(int(t) for t in args.product.replace(",", " ").split())
    except ValueError:
        raise FormatError(f"--product expects integers, got {args.product!r}") from None
    if not sizes:
        raise FormatError("--product needs at least one chain length")
    return ChainProduct(sizes)


def _need(args: argparse.Namespace, *names: str) -> str:
    given = [n for n in names if getattr(args, n, None)]
    if len(given) != 1:
        flags = " or ".join("--" + n for n in names)
        raise FormatError(f"{args.verb} needs exactly one of {flags}")
    return given[0]


def _poset(args: argparse.Namespace) -> Poset:
    return formats.parse_poset(_read(args.poset), close=args.close)


def _family(args: argparse.Namespace) -> IntervalFamily:
    return formats.parse_intervals(_read(args.intervals), _product(args))


def _sublattice(args: argparse.Namespace):
    if _need(args, "sublattice", "intervals") == "intervals":
        fam = _family(args)
        return fam.product, remove(fam.product, fam)
    sub = formats.parse_sublattice(_read(args.sublattice), _product(args))
    return sub.product, sub


def _set_name(s: Any) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


def _lattice_json(lat: Lattice) -> dict[str, Any]:
    return {
        "elements": [sorted(x) for x in lat.labels],
        "covers": [list(c) for c in covers(lat)],
        "join_irreducibles": sorted(join_irreducibles(lat).label),
    }


def cmd_birkhoff(args):
    lat = formats.parse_lattice(_read(args.lattice))
    bm = birkhoff_map(lat)
    jp = bm.irreducibles
    rows = [{"element": x, "downset": sorted(jp.label[v] for v in bm(x))} for x in range(lat.size)]
    out = {
        "join_irreducibles": list(jp.label),
        "order": [[jp.label[a], jp.label[b]] for a, b in sorted(jp.carrier.cover_pairs())],
        "map": rows,
    }
    text = [f"{r['element']} -> {_set_name(r['downset'])}" for r in rows]
    return out, text


def cmd_downsets(args):
    lat = downset_lattice(_poset(args))
    out = _lattice_json(lat)
    text = [f"{k} {_set_name(s)}" for k, s in enumerate(out["elements"])]
    text += [f"cover {a} {b}" for a, b in out["covers"]]
    return out, text


def cmd_extract(args):
    sub = formats.parse_sublattice(_read(args.sublattice), _product(args))
    fam = rival_extract(sub.product, sub)
    ivs = fam.optional()
    out = {
        "product": list(sub.product.sizes),
        "intervals": [[iv.i, iv.j, iv.alpha, iv.beta] for iv in ivs],
        "closed": is_closed(fam),
    }
    text = ["product " + " ".join(map(str, sub.product.sizes))] + [str(iv) for iv in ivs]
    return out, text


def _graph(args, which: str):
    fam = _family(args)
    p = fam.product
    if which == "d":
        d, base, name = construct_D(fam), p.pointed_chains(), p.cinf_name
    else:
        d, base, name = construct_A(fam), p.tournaments(), p.c_name
    arcs = [f"{name(u)} -> {name(v)}" for u, v in d.sorted_arcs()]
    added = [f"{name(u)} -> {name(v)}" for u, v in sorted(d.arcs - base.arcs)]
    if args.added:
        return {"added": added}, added
    out = {"vertices": [name(v) for v in d.vertices], "arcs": arcs, "added": added}
    return out, arcs


def cmd_build_d(args):
    return _graph(args, "d")


def cmd_build_a(args):
    return _graph(args, "a")


def cmd_classify(args):
    p, sub = _sublattice(args)
    cls = classify(p, sub)
    return {"full": cls.full, "subdirect": cls.subdirect, "tight": cls.tight}, [str(cls)]


def cmd_decompose(args):
    p = _poset(args)
    chains = dilworth_decompose(p)
    out = {"width": poset_width(p), "chains": chains}
    return out, [" ".join(map(str, c)) for c in chains]


def _embedding_output(e: Embedding, names: list[str]):
    cls = classify(e.product, e.image_sublattice(), cross_check=False)
    rows = [{"element": names[x], "tuple": list(e.image[x])} for x in range(e.source.size)]
    out = {"product": list(e.product.sizes), "image": rows,
           "classification": {"full": cls.full, "subdirect": cls.subdirect, "tight": cls.tight}}
    text = ["product " + " ".join(map(str, e.product.sizes))]
    text += [f"{r['element']} -> {' '.join(map(str, r['tuple']))}" for r in rows]
    return out, text


def cmd_embed(args):
    which = _need(args, "lattice", "poset", "cover")
    if which == "cover":
        e = cover_to_embedding(formats.parse_cover(_read(args.cover), Path(args.cover).parent))
        return _embedding_output(e, [_set_name(s) for s in e.source.labels])
    if which == "lattice":
        lat = formats.parse_lattice(_read(args.lattice))
        names = [str(x) for x in range(lat.size)]
    else:
        lat = downset_lattice(_poset(args))
        names = [_set_name(s) for s in lat.labels]
    dec = dilworth_decompose(join_irreducibles(lat).carrier)
    return _embedding_output(embed_from_decomposition(lat, dec), names)


def cmd_correspond(args):
    p = _product(args)
    if p is None:
        raise FormatError("correspond needs --product")
    r = enumerate_correspondence(_poset(args), p.sizes)
    keys = ("embeddings", "homomorphisms", "full", "subdirect", "tight", "decompositions")
    out = {k: getattr(r, k) for k in keys}
    return out, [" ".join(f"{k}={out[k]}" for k in keys)]


def cmd_verify(args):
    results = run_suite(Settings.for_suite(args.suite, args.max))
    out = {
        "suite": args.suite,
        "criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
                     for r in results],
        "passed": all(r.passed for r in results),
    }
    text = [f"[{'PASS' if r.passed else 'FAIL'}] criterion {r.number}: {r.title} ({r.detail})" for r in results]
    return out, text


def cmd_render(args):
    which = _need(args, "poset", "lattice", "digraph", "intervals")
    if which == "poset":
        return None, [hasse_dot(_poset(args)).rstrip("\n")]
    if which == "lattice":
        return None, [lattice_dot(formats.parse_lattice(_read(args.lattice))).rstrip("\n")]
    if which == "digraph":
        return None, [digraph_dot(formats.parse_digraph(_read(args.digraph))).rstrip("\n")]
    fam = _family(args)
    p = fam.product
    if args.graph == "a":
        d, names = construct_A(fam), [p.c_name(v) for v in range(p.c_count)]
    else:
        d, names = construct_D(fam), [p.cinf_name(v) for v in range(p.cinf_count)]
    return None, [digraph_dot(d, names).rstrip("\n")]


COMMANDS = {
    "birkhoff": (cmd_birkhoff, "join-irreducibles of a distributive lattice and x -> S_x"),
    "downsets": (cmd_downsets, "downset lattice of a poset"),
    "extract": (cmd_extract, "interval family removing exactly the complement of a sublattice"),
    "build-d": (cmd_build_d, "digraph D on C^inf for an interval family"),
    "build-a": (cmd_build_a, "digraph A on C for an interval family"),
    "classify": (cmd_classify, "full / subdirect / tight"),
    "decompose": (cmd_decompose, "minimum chain decomposition of a poset"),
    "embed": (cmd_embed, "embedding into a product of chains"),
    "correspond": (cmd_correspond, "count embeddings and loose chain covers"),
    "verify": (cmd_verify, "run the acceptance checks"),
    "render": (cmd_render, "DOT drawing"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distlat", description="Finite distributive lattice toolkit.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(verb, help=help_text)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if verb in ("birkhoff", "embed", "render"):
            sp.add_argument("--lattice", metavar="FILE")
        if verb in ("downsets", "decompose", "embed", "correspond", "render"):
            sp.add_argument("--poset", metavar="FILE")
            sp.add_argument("--close", action="store_true",
                            help="apply reflexive and transitive closure to the poset file")
        if verb in ("extract", "build-d", "build-a", "classify", "correspond", "render"):
            sp.add_argument("--product", metavar='"n1 n2 ..."')
        if verb in ("build-d", "build-a", "classify", "render"):
            sp.add_argument("--intervals", metavar="FILE")
        if verb in ("build-d", "build-a"):
            sp.add_argument("--added", action="store_true", help="only arcs beyond C^inf (for D) or T (for A)")
        if verb in ("extract", "classify"):
            sp.add_argument("--sublattice", metavar="FILE")
        if verb == "embed":
            sp.add_argument("--cover", metavar="FILE")
        if verb == "render":
            sp.add_argument("--digraph", metavar="FILE")
            sp.add_argument("--graph", choices=("d", "a"), default="d", help="which digraph to draw for --intervals")
        if verb == "verify":
            sp.add_argument("--suite", choices=("small", "all"), default="small")
            sp.add_argument("--max", type=int, metavar="N", help="largest poset size in enumerated corpora")
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.verb in ("extract",) and not args.sublattice:
            raise FormatError("extract needs --sublattice")
        if args.verb in ("downsets", "decompose", "correspond") and not args.poset:
            raise FormatError(f"{args.verb} needs --poset")
        if args.verb == "birkhoff" and not args.lattice:
            raise FormatError("birkhoff needs --lattice")
        if args.verb in ("build-d", "build-a") and not args.intervals:
            raise FormatError(f"{args.verb} needs --intervals")
        data, text = COMMANDS[args.verb][0](args)
    except FormatError as exc:
        print(f"distlat: format error: {exc}", file=err)
        return 2
    except InvariantError as exc:
        print(f"distlat: internal check failed: {exc}", file=err)
        return 3
    except DistlatError as exc:
        print(f"distlat: error: {exc}", file=err)
        return 1
    if data is None or args.format == "text":
        out.write("\n".join(text) + "\n")
    else:
        out.write(json.dumps(data, indent=2) + "\n")
    if args.verb == "verify" and not data["passed"]:
        return 3
    return 0


def main() -> None:
    sys.exit(run())
