"""Monotone switching networks for directed connectivity at desk scale:
exact cut-space Fourier analysis, lower-bound certificates built from
invariant-function families, reversible-pebble and parity-function network
constructions, and brute-force verification of all of it."""

from .cuts import CutFunction, Permutation, dot, eval_character, edge_crosses, is_edge_invariant
from .graphs import InputGraph, chain_with_lollipops
from .networks import NetEdge, SwitchingNetwork

__all__ = [
    "CutFunction",
    "Permutation",
    "InputGraph",
    "SwitchingNetwork",
    "NetEdge",
    "chain_with_lollipops",
    "dot",
    "eval_character",
    "edge_crosses",
    "is_edge_invariant",
]

__version__ = "0.1.0"
