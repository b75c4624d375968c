"""Finite distributive lattices, their digraph representations and chain embeddings."""

from .digraph import Digraph, Poset, condensation, transitive_closure, width
from .errors import (ContractError, DistlatError, DomainError, EmptyLatticeError, FormatError, InvariantError,
                     NotALatticeError, ResourceGuardError)
from .intervals import ChainProduct, Interval, IntervalFamily, Sublattice, construct_A, construct_D, remove, rival_extract
from .lattice import Lattice, birkhoff_map, downset_lattice, is_distributive, join_irreducibles
from .representations import duality_map, map_T, max_independent_lattice, terminal_lattice
from .embeddings import (Classification, Embedding, LooseChainCover, classify, cover_to_embedding,
                         dilworth_decompose, embed_from_decomposition, embedding_to_cover, enumerate_correspondence)

__version__ = "0.1.0"

__all__ = [
    "Digraph", "Poset", "condensation", "transitive_closure", "width",
    "ContractError", "DistlatError", "DomainError", "EmptyLatticeError", "FormatError", "InvariantError",
    "NotALatticeError", "ResourceGuardError",
    "ChainProduct", "Interval", "IntervalFamily", "Sublattice", "construct_A", "construct_D", "remove",
    "rival_extract",
    "Lattice", "birkhoff_map", "downset_lattice", "is_distributive", "join_irreducibles",
    "duality_map", "map_T", "max_independent_lattice", "terminal_lattice",
    "Classification", "Embedding", "LooseChainCover", "classify", "cover_to_embedding",
    "dilworth_decompose", "embed_from_decomposition", "embedding_to_cover", "enumerate_correspondence",
]
