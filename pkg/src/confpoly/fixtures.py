"""Small named graphs and configurations used in tests, docs and the verify suites."""
from __future__ import annotations

from .config import Configuration
from .graphhom import Multigraph


def cfg1() -> Configuration:
    """W in K^3 spanned by e1 + e2 and 2 e3 - e2."""
    return Configuration.from_rows([[1, 1, 0], [0, -1, 2]])


def cfg1_rescaled() -> Configuration:
    """cfg1 with the first basis vector tripled."""
    return Configuration.from_rows([[3, 3, 0], [0, -1, 2]])


def trivial(n: int) -> Configuration:
    return Configuration.trivial(n)


def banana(k: int, alternating: bool = False) -> Multigraph:
    """Two vertices joined by k parallel edges, all a -> b unless alternating."""
    edges = tuple((1, 0) if alternating and i % 2 else (0, 1) for i in range(k))
    return Multigraph(2, edges, ("a", "b"))


def ban4_chain_configuration() -> Configuration:
    """H_1 of the alternating 4-edge banana in the chain basis e1+e2, e2+e3, e3+e4."""
    return Configuration.from_rows([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]])


def path3() -> Multigraph:
    """a -> b -> c."""
    return Multigraph(3, ((0, 1), (1, 2)), ("a", "b", "c"))


def triangle() -> Multigraph:
    return Multigraph(3, ((0, 1), (1, 2), (2, 0)), ("a", "b", "c"))


def single_loop() -> Multigraph:
    return Multigraph(1, ((0, 0),), ("a",))
