"""Orbit lengths of permutation groups on k-subsets and the Siemons-Wagner property."""

from .bsgs import GeneratedGroup, StabilizerChain, build_chain
from .perm import (
    KSubset,
    Permutation,
    compose,
    image_of_subset,
    inverse,
    parse_cycles,
    print_cycles,
)

__all__ = [
    "GeneratedGroup",
    "KSubset",
    "Permutation",
    "StabilizerChain",
    "build_chain",
    "compose",
    "image_of_subset",
    "inverse",
    "parse_cycles",
    "print_cycles",
]
