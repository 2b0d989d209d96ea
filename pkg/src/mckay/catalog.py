"""Cached construction pipelines for the verification corpus.

Groups, tables and correspondence data are immutable, so they are built
once per (label, seed) and shared by the CLI, the corpus runner and the
test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import GradedAlgebra
from .chartab import CharacterTable, McKayGraph, character_table, mckay_graph
from .correspondence import CorrespondenceMap, phi_local
from .groups import (
    ADE_SUITE,
    FiniteGroup,
    alternating_group,
    build_binary_polyhedral,
    cyclic_group,
    dihedral_group,
    symmetric_group,
)
from .orbifold import invariant_subalgebra, local_orbifold_algebra
from .resolution import local_resolution_algebra

__all__ = [
    "Bundle",
    "ade_group",
    "ade_bundle",
    "extra_group",
    "extra_table",
    "EXTRA_GROUPS",
    "clear_caches",
]

#: non-ADE groups exercising the character-minor nondegeneracy statement
EXTRA_GROUPS = ("S3", "S4", "A4", "Dih8", "Q8", "Z6")


@dataclass(frozen=True, eq=False)
class Bundle:
    group: FiniteGroup
    table: CharacterTable
    graph: McKayGraph
    resolution: GradedAlgebra
    orbifold: GradedAlgebra
    invariant: GradedAlgebra
    cmap: CorrespondenceMap


@lru_cache(maxsize=None)
def ade_group(label: str) -> FiniteGroup:
    return build_binary_polyhedral(label)


@lru_cache(maxsize=None)
def ade_bundle(label: str, seed: int = 0) -> Bundle:
    group = ade_group(label)
    table = character_table(group, seed=seed)
    graph = mckay_graph(table)
    orb = local_orbifold_algebra(group)
    cmap = phi_local(group, table=table, seed=seed)
    return Bundle(
        group=group,
        table=table,
        graph=graph,
        resolution=local_resolution_algebra(graph),
        orbifold=orb,
        invariant=invariant_subalgebra(orb, group),
        cmap=cmap,
    )


@lru_cache(maxsize=None)
def extra_group(name: str) -> FiniteGroup:
    builders = {
        "S3": lambda: symmetric_group(3),
        "S4": lambda: symmetric_group(4),
        "A4": lambda: alternating_group(4),
        "Dih8": lambda: dihedral_group(4),
        "Q8": lambda: build_binary_polyhedral("D4"),
        "Z6": lambda: cyclic_group(6),
    }
    if name not in builders:
        raise KeyError(f"unknown corpus group {name!r}")
    return builders[name]()


@lru_cache(maxsize=None)
def extra_table(name: str, seed: int = 0) -> CharacterTable:
    return character_table(extra_group(name), seed=seed)


def clear_caches() -> None:
    for fn in (ade_group, ade_bundle, extra_group, extra_table):
        fn.cache_clear()


def full_suite_labels() -> tuple[str, ...]:
    return ADE_SUITE
