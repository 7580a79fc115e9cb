"""Commutator length and minimal commutator presentations in free groups."""

from .pairing import NotInCommutatorSubgroup, cl_bardakov, extremal_pairing, pairings, v_statistic
from .present import CommutatorPresentation, Decomposition, expand, lift, peel, verify
from .search import (
    cl_bfs,
    cl_guided,
    decompositions,
    is_commutator,
    minimal_presentation_bfs,
    minimal_presentation_guided,
)
from .words import Alphabet, Word, commutator, conjugate, cyclic_reduce, inverse, multiply, parse, reduce

__all__ = [
    "Alphabet",
    "CommutatorPresentation",
    "Decomposition",
    "NotInCommutatorSubgroup",
    "Word",
    "cl_bardakov",
    "cl_bfs",
    "cl_guided",
    "commutator",
    "conjugate",
    "cyclic_reduce",
    "decompositions",
    "expand",
    "extremal_pairing",
    "inverse",
    "is_commutator",
    "lift",
    "minimal_presentation_bfs",
    "minimal_presentation_guided",
    "multiply",
    "pairings",
    "parse",
    "peel",
    "reduce",
    "v_statistic",
    "verify",
]
